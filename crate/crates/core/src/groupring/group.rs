//! Groups, subgroups, cosets and quotients.

use crate::error::Error;
use crate::lattice::{self, IntMatrix};
use crate::Result;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// A finite abelian group fixed at construction as `prod_i Z/n_i`.
///
/// Elements are exponent vectors reduced componentwise; no isomorphism
/// normalization is ever applied, so the element encoding is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
}

/// An element of a [`FiniteAbelianGroup`], stored as its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupElement(pub(crate) Vec<u64>);

impl GroupElement {
    pub fn exponents(&self) -> &[u64] {
        &self.0
    }
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u64>) -> Self {
        assert!(!orders.is_empty(), "group needs at least one cyclic factor");
        assert!(orders.iter().all(|&n| n >= 1), "cyclic orders must be >= 1");
        FiniteAbelianGroup { orders }
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        FiniteAbelianGroup::new(vec![1])
    }

    pub fn cyclic(n: u64) -> Self {
        FiniteAbelianGroup::new(vec![n])
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn num_factors(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &n| num_integer::lcm(acc, n))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.orders.len()])
    }

    /// Builds an element from (possibly unreduced, possibly negative)
    /// exponents.
    pub fn element(&self, exps: &[i64]) -> GroupElement {
        assert_eq!(exps.len(), self.orders.len(), "exponent arity mismatch");
        GroupElement(
            exps.iter()
                .zip(&self.orders)
                .map(|(&e, &n)| e.rem_euclid(n as i64) as u64)
                .collect(),
        )
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.orders.len() && g.0.iter().zip(&self.orders).all(|(&e, &n)| e < n)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&x, &n)| if x == 0 { 0 } else { n - x })
                .collect(),
        )
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    /// `k * g` in additive notation.
    pub fn scale(&self, k: i64, g: &GroupElement) -> GroupElement {
        GroupElement(
            g.0.iter()
                .zip(&self.orders)
                .map(|(&x, &n)| ((x as i64 * k).rem_euclid(n as i64)) as u64)
                .collect(),
        )
    }

    pub fn element_order(&self, g: &GroupElement) -> u64 {
        g.0.iter().zip(&self.orders).fold(1, |acc, (&e, &n)| {
            let o = n / num_integer::gcd(e, n);
            num_integer::lcm(acc, o)
        })
    }

    /// All elements in lexicographic order of exponent vectors.
    pub fn elements(&self) -> Vec<GroupElement> {
        let total = self.order();
        assert!(total <= 1 << 20, "group too large to enumerate");
        let mut out = Vec::with_capacity(total as usize);
        let mut cur = vec![0u64; self.orders.len()];
        loop {
            out.push(GroupElement(cur.clone()));
            // increment from the least significant (last) coordinate
            let mut i = self.orders.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.orders[i] {
                    break;
                }
                cur[i] = 0;
                if i == 0 {
                    return out;
                }
            }
        }
    }

    /// Index of `g` in the lexicographic enumeration.
    pub fn index_of(&self, g: &GroupElement) -> usize {
        let mut idx = 0usize;
        for (e, n) in g.0.iter().zip(&self.orders) {
            idx = idx * (*n as usize) + *e as usize;
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut exps = vec![0u64; self.orders.len()];
        for i in (0..self.orders.len()).rev() {
            let n = self.orders[i] as usize;
            exps[i] = (idx % n) as u64;
            idx /= n;
        }
        GroupElement(exps)
    }
}

/// A subgroup of a [`FiniteAbelianGroup`], stored with its generator list and
/// its full element closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    group: FiniteAbelianGroup,
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
}

impl Subgroup {
    pub fn from_generators(group: &FiniteAbelianGroup, gens: &[GroupElement]) -> Result<Self> {
        for g in gens {
            if !group.contains(g) {
                return Err(Error::ElementOutsideGroup(format!(
                    "{:?} is not an element of {:?}",
                    g, group
                )));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(group.identity());
        let mut frontier = vec![group.identity()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = group.add(&x, g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(Subgroup {
            group: group.clone(),
            generators: gens.to_vec(),
            elements: seen.into_iter().collect(),
        })
    }

    pub fn trivial(group: &FiniteAbelianGroup) -> Self {
        Subgroup::from_generators(group, &[]).unwrap()
    }

    pub fn full(group: &FiniteAbelianGroup) -> Self {
        let gens: Vec<GroupElement> = (0..group.num_factors())
            .map(|i| {
                let mut e = vec![0i64; group.num_factors()];
                e[i] = 1;
                group.element(&e)
            })
            .collect();
        Subgroup::from_generators(group, &gens).unwrap()
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// All subgroup elements, sorted.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Coset decomposition of the ambient group; the union is a partition.
    pub fn cosets(&self) -> Vec<Vec<GroupElement>> {
        let mut assigned = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for g in self.group.elements() {
            if assigned.contains(&g) {
                continue;
            }
            let coset: Vec<GroupElement> = self
                .elements
                .iter()
                .map(|h| self.group.add(&g, h))
                .collect();
            for c in &coset {
                assigned.insert(c.clone());
            }
            out.push(coset);
        }
        out
    }
}

/// A subgroup `H` of `G` re-presented as an abstract product of cyclic
/// groups together with the embedding of its cyclic generators into `G`.
///
/// This is what makes ideals of `Z[H]` (norm quotients, augmentation powers)
/// computable with the same lattice machinery as ideals of `Z[G]`.
#[derive(Debug, Clone)]
pub struct SubgroupEmbedding {
    subgroup: Subgroup,
    hgroup: FiniteAbelianGroup,
    images: Vec<GroupElement>,
}

impl SubgroupEmbedding {
    /// Finds an invariant-factor presentation of `H` by searching for
    /// elements realizing the factor orders (fine for the small subgroups
    /// used here).
    pub fn new(subgroup: &Subgroup) -> Self {
        let order = subgroup.order() as usize;
        if order == 1 {
            return SubgroupEmbedding {
                subgroup: subgroup.clone(),
                hgroup: FiniteAbelianGroup::trivial(),
                images: vec![subgroup.group().identity()],
            };
        }
        let els = subgroup.elements().to_vec();
        let g = subgroup.group().clone();
        let table = |a: usize, b: usize| -> usize {
            let s = g.add(&els[a], &els[b]);
            els.binary_search(&s).expect("subgroup closed under addition")
        };
        let invariants = crate::fitting::abelian_invariants_from_table(order, table);
        // search for generator tuples with the prescribed orders whose span
        // is all of H with distinct products
        let k = invariants.len();
        let mut chosen: Vec<GroupElement> = Vec::new();
        fn search(
            g: &FiniteAbelianGroup,
            els: &[GroupElement],
            invariants: &[u64],
            chosen: &mut Vec<GroupElement>,
            depth: usize,
        ) -> bool {
            if depth == invariants.len() {
                // check all products distinct
                let mut seen = std::collections::BTreeSet::new();
                let mut stack = vec![(0usize, g.identity())];
                let mut count = 0usize;
                while let Some((i, acc)) = stack.pop() {
                    if i == chosen.len() {
                        if !seen.insert(acc) {
                            return false;
                        }
                        count += 1;
                        continue;
                    }
                    let mut cur = acc;
                    for _ in 0..invariants[i] {
                        stack.push((i + 1, cur.clone()));
                        cur = g.add(&cur, &chosen[i]);
                    }
                }
                return count == els.len();
            }
            for e in els {
                if g.element_order(e) == invariants[depth] {
                    chosen.push(e.clone());
                    if search(g, els, invariants, chosen, depth + 1) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        let found = search(&g, &els, &invariants, &mut chosen, 0);
        assert!(found, "no generator tuple realizes the invariant factors");
        debug_assert_eq!(chosen.len(), k);
        SubgroupEmbedding {
            subgroup: subgroup.clone(),
            hgroup: FiniteAbelianGroup::new(invariants),
            images: chosen,
        }
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// The abstract presentation of `H`.
    pub fn hgroup(&self) -> &FiniteAbelianGroup {
        &self.hgroup
    }

    /// Image in `G` of an abstract element of `H`.
    pub fn embed(&self, h: &GroupElement) -> GroupElement {
        let g = self.subgroup.group();
        let mut acc = g.identity();
        if self.hgroup.is_trivial() {
            return acc;
        }
        for (e, img) in h.exponents().iter().zip(&self.images) {
            acc = g.add(&acc, &g.scale(*e as i64, img));
        }
        acc
    }

    /// Preimage in the abstract `H` of a subgroup element of `G`.
    pub fn preimage(&self, g_el: &GroupElement) -> Option<GroupElement> {
        self.hgroup
            .elements()
            .into_iter()
            .find(|h| &self.embed(h) == g_el)
    }
}

/// The quotient `G/H` presented again as a product of cyclic groups, with the
/// projection map and a fixed section (coset representatives).
#[derive(Debug, Clone)]
pub struct QuotientMap {
    source: FiniteAbelianGroup,
    subgroup: Subgroup,
    quotient: FiniteAbelianGroup,
    // columns of the right SNF transform that survive (d_i > 1), as i64
    transform: Vec<Vec<i64>>,
    moduli: Vec<u64>,
    reps: Vec<GroupElement>,
}

impl QuotientMap {
    /// Builds `G/H` from the Smith normal form of the combined relation
    /// lattice of `G` and the generators of `H`.
    pub fn new(subgroup: &Subgroup) -> Self {
        let group = subgroup.group().clone();
        let k = group.num_factors();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (i, &n) in group.cyclic_orders().iter().enumerate() {
            let mut r = vec![BigInt::zero(); k];
            r[i] = BigInt::from(n);
            rows.push(r);
        }
        for g in subgroup.generators() {
            rows.push(g.exponents().iter().map(|&e| BigInt::from(e)).collect());
        }
        let m = IntMatrix::from_rows(rows, k);
        let snf = lattice::smith_normal_form(&m);
        // Z^k / rowspan(m) = sum Z/d_i via x -> x * V
        let mut keep: Vec<usize> = Vec::new();
        let mut moduli: Vec<u64> = Vec::new();
        for (i, d) in snf.diag.iter().enumerate() {
            let d = d.abs().to_u64().expect("quotient invariant factor overflow");
            assert!(d >= 1, "quotient of finite group must be finite");
            if d > 1 {
                keep.push(i);
                moduli.push(d);
            }
        }
        if moduli.is_empty() {
            keep.clear();
            moduli.push(1);
        }
        let mut transform: Vec<Vec<i64>> = Vec::new();
        for i in 0..k {
            let mut row = Vec::new();
            for &j in &keep {
                row.push(
                    snf.right
                        .get(i, j)
                        .to_i64()
                        .expect("quotient transform overflow"),
                );
            }
            transform.push(row);
        }
        let quotient = FiniteAbelianGroup::new(moduli.clone());
        let mut q = QuotientMap {
            source: group.clone(),
            subgroup: subgroup.clone(),
            quotient: quotient.clone(),
            transform,
            moduli,
            reps: Vec::new(),
        };
        // fixed section: first source element (in enumeration order) hitting
        // each quotient element
        let mut reps: Vec<Option<GroupElement>> = vec![None; quotient.order() as usize];
        for g in group.elements() {
            let idx = quotient.index_of(&q.project(&g));
            if reps[idx].is_none() {
                reps[idx] = Some(g);
            }
        }
        q.reps = reps.into_iter().map(|r| r.expect("projection not surjective")).collect();
        q
    }

    pub fn source(&self) -> &FiniteAbelianGroup {
        &self.source
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn quotient(&self) -> &FiniteAbelianGroup {
        &self.quotient
    }

    pub fn project(&self, g: &GroupElement) -> GroupElement {
        assert!(self.source.contains(g), "element outside source group");
        if self.moduli == [1] && self.transform.iter().all(|r| r.is_empty()) {
            return self.quotient.identity();
        }
        let mut out = vec![0i64; self.moduli.len()];
        for (i, &e) in g.exponents().iter().enumerate() {
            for (j, &t) in self.transform[i].iter().enumerate() {
                out[j] += e as i64 * t;
            }
        }
        self.quotient.element(&out)
    }

    /// The fixed coset representative of a quotient element.
    pub fn lift(&self, q: &GroupElement) -> GroupElement {
        self.reps[self.quotient.index_of(q)].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_arithmetic() {
        let g = FiniteAbelianGroup::new(vec![4, 2]);
        assert_eq!(g.order(), 8);
        let a = g.element(&[3, 1]);
        let b = g.element(&[2, 1]);
        assert_eq!(g.add(&a, &b), g.element(&[1, 0]));
        assert_eq!(g.neg(&a), g.element(&[1, 1]));
        assert_eq!(g.element_order(&a), 4);
        assert_eq!(g.element(&[-1, 3]), g.element(&[3, 1]));
    }

    #[test]
    fn enumeration_and_indexing() {
        let g = FiniteAbelianGroup::new(vec![3, 2]);
        let els = g.elements();
        assert_eq!(els.len(), 6);
        for (i, e) in els.iter().enumerate() {
            assert_eq!(g.index_of(e), i);
            assert_eq!(&g.element_at(i), e);
        }
        // lexicographic: identity first
        assert_eq!(els[0], g.identity());
    }

    #[test]
    fn subgroup_closure_and_cosets() {
        let g = FiniteAbelianGroup::cyclic(4);
        let h = Subgroup::from_generators(&g, &[g.element(&[2])]).unwrap();
        assert_eq!(h.order(), 2);
        let cosets = h.cosets();
        assert_eq!(cosets.len(), 2);
        let mut all: Vec<GroupElement> = cosets.into_iter().flatten().collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 4, "cosets must partition G");
    }

    #[test]
    fn subgroup_rejects_foreign_elements() {
        let g = FiniteAbelianGroup::cyclic(4);
        let g2 = FiniteAbelianGroup::new(vec![2, 2]);
        assert!(Subgroup::from_generators(&g, &[g2.element(&[1, 0])]).is_err());
    }

    #[test]
    fn quotient_of_z4_by_two_torsion() {
        let g = FiniteAbelianGroup::cyclic(4);
        let h = Subgroup::from_generators(&g, &[g.element(&[2])]).unwrap();
        let q = QuotientMap::new(&h);
        assert_eq!(q.quotient().order(), 2);
        assert_eq!(q.project(&g.element(&[1])), q.project(&g.element(&[3])));
        assert_ne!(q.project(&g.element(&[1])), q.project(&g.element(&[2])));
        assert_eq!(q.project(&g.element(&[2])), q.quotient().identity());
    }

    #[test]
    fn quotient_by_full_group_is_trivial() {
        let g = FiniteAbelianGroup::new(vec![2, 3]);
        let h = Subgroup::full(&g);
        let q = QuotientMap::new(&h);
        assert!(q.quotient().is_trivial());
        for e in g.elements() {
            assert_eq!(q.project(&e), q.quotient().identity());
        }
    }

    #[test]
    fn quotient_lift_section() {
        let g = FiniteAbelianGroup::new(vec![4, 2]);
        let h = Subgroup::from_generators(&g, &[g.element(&[2, 0])]).unwrap();
        let q = QuotientMap::new(&h);
        assert_eq!(q.quotient().order(), 4);
        for e in q.quotient().elements() {
            assert_eq!(q.project(&q.lift(&e)), e);
        }
    }
}
