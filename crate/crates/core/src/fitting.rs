//! Finitely presented `Z[G]`-modules, higher Fitting ideals, higher relative
//! Fitting ideals, and the transpose-`#` duality.
//!
//! Determinants over `Z[G]` are computed by cofactor expansion with a
//! memoized subdeterminant cache: the group ring has zero divisors, so
//! division-based elimination is unsound.

use crate::error::Error;
use crate::groupring::{FiniteAbelianGroup, GroupRingElement};
use crate::lattice::{self, GStableIdeal, IntMatrix};
use crate::Result;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Hard cap on presentation size for minor enumeration.
const MINOR_CAP: usize = 12;

/// A finitely presented `Z[G]`-module: `n` generators, `m` relation columns,
/// and optionally a block shape `[[A1, A2], [0, A3]]` marking that the first
/// `n1` generators span a designated submodule `N` presented by `A1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PresentedModule {
    group: FiniteAbelianGroup,
    matrix: Vec<Vec<GroupRingElement<BigInt>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    block: Option<(usize, usize)>,
}

impl PresentedModule {
    pub fn new(
        group: &FiniteAbelianGroup,
        matrix: Vec<Vec<GroupRingElement<BigInt>>>,
        block: Option<(usize, usize)>,
    ) -> Result<Self> {
        let m = matrix.first().map_or(0, |r| r.len());
        for row in &matrix {
            if row.len() != m {
                return Err(Error::BadPresentation("ragged relation matrix".into()));
            }
            for e in row {
                if e.group() != group {
                    return Err(Error::GroupMismatch(
                        "relation entry in wrong group ring".into(),
                    ));
                }
            }
        }
        if let Some((n1, m1)) = block {
            if n1 > matrix.len() || m1 > m {
                return Err(Error::BadPresentation("block exceeds matrix".into()));
            }
            for (i, row) in matrix.iter().enumerate().skip(n1) {
                for e in row.iter().take(m1) {
                    if !e.is_zero() {
                        return Err(Error::BadPresentation(format!(
                            "lower-left block must vanish (row {i})"
                        )));
                    }
                }
            }
        }
        Ok(PresentedModule {
            group: group.clone(),
            matrix,
            block,
        })
    }

    /// Presentation over the trivial group from plain integer relations.
    pub fn over_z(matrix: &IntMatrix, block: Option<(usize, usize)>) -> Result<Self> {
        let g = FiniteAbelianGroup::trivial();
        let rows = (0..matrix.rows())
            .map(|i| {
                (0..matrix.cols())
                    .map(|j| {
                        GroupRingElement::from_terms(
                            &g,
                            vec![(g.identity(), matrix.get(i, j).clone())],
                        )
                    })
                    .collect()
            })
            .collect();
        PresentedModule::new(&g, rows, block)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn generators(&self) -> usize {
        self.matrix.len()
    }

    pub fn relations(&self) -> usize {
        self.matrix.first().map_or(0, |r| r.len())
    }

    pub fn block(&self) -> Option<(usize, usize)> {
        self.block
    }

    pub fn entry(&self, i: usize, j: usize) -> &GroupRingElement<BigInt> {
        &self.matrix[i][j]
    }

    pub fn matrix(&self) -> &Vec<Vec<GroupRingElement<BigInt>>> {
        &self.matrix
    }

    /// The `i`-th Fitting ideal: the ideal of all `(n-i) x (n-i)` minors of
    /// the relation matrix, the full ring for `i >= n`.
    pub fn fitting_ideal(&self, i: usize) -> Result<GStableIdeal> {
        let n = self.generators();
        let m = self.relations();
        if i >= n {
            return Ok(GStableIdeal::full(&self.group));
        }
        if n > MINOR_CAP || m > MINOR_CAP {
            return Err(Error::TooLarge(format!(
                "presentation {n}x{m} exceeds the {MINOR_CAP} cap"
            )));
        }
        let k = n - i;
        if k > m {
            return Ok(GStableIdeal::zero(&self.group));
        }
        let mut cache = MinorCache::new();
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (0..m).collect();
        let mut gens = Vec::new();
        for r in combinations(&rows, k) {
            for c in combinations(&cols, k) {
                let d = self.det_masked(&r, &c, &mut cache);
                if !d.is_zero() {
                    gens.push(d);
                }
            }
        }
        GStableIdeal::from_generators(&self.group, &gens)
    }

    /// Presentation of `M/N` (requires the block shape): the `A3` block.
    pub fn quotient_by_submodule(&self) -> Result<PresentedModule> {
        let (n1, m1) = self
            .block
            .ok_or_else(|| Error::BadPresentation("no submodule block set".into()))?;
        let rows = self.matrix[n1..]
            .iter()
            .map(|r| r[m1..].to_vec())
            .collect();
        PresentedModule::new(&self.group, rows, None)
    }

    /// Presentation of the designated submodule `N`: the `A1` block.
    pub fn submodule_presentation(&self) -> Result<PresentedModule> {
        let (n1, m1) = self
            .block
            .ok_or_else(|| Error::BadPresentation("no submodule block set".into()))?;
        let rows = self.matrix[..n1].iter().map(|r| r[..m1].to_vec()).collect();
        PresentedModule::new(&self.group, rows, None)
    }

    /// Minimal number of generators of the designated submodule `N`, found
    /// by exhaustive search over subsets of the standard generators.
    pub fn min_generators_of_submodule(&self) -> Result<usize> {
        let sub = self.submodule_presentation()?;
        let n1 = sub.generators();
        for k in 0..=n1 {
            let idx: Vec<usize> = (0..n1).collect();
            for keep in combinations(&idx, k) {
                if sub.is_zero_after_killing(&keep) {
                    return Ok(k);
                }
            }
        }
        Ok(n1)
    }

    // Is N / <e_i : i in keep> the zero module?
    fn is_zero_after_killing(&self, keep: &[usize]) -> bool {
        let mut aug = self.matrix.clone();
        for &i in keep {
            for (r, row) in aug.iter_mut().enumerate() {
                let e = if r == i {
                    GroupRingElement::one(&self.group)
                } else {
                    GroupRingElement::zero(&self.group)
                };
                row.push(e);
            }
        }
        if aug.is_empty() {
            return true;
        }
        let pm = PresentedModule {
            group: self.group.clone(),
            matrix: aug,
            block: None,
        };
        let (tors, free) = pm.module_structure();
        tors.is_empty() && free == 0
    }

    /// Higher relative Fitting ideal `Fitt^{(a,b)}(M, N)`: the sum over all
    /// admissible row removals (`b` rows from the `N`-block, then `a` more)
    /// of the ideal of `c x c` minors, `c = n - a - b`.
    pub fn relative_fitting_ideal(&self, a: usize, b: usize) -> Result<GStableIdeal> {
        let (n1, _) = self
            .block
            .ok_or_else(|| Error::BadPresentation("no submodule block set".into()))?;
        let nu = self.min_generators_of_submodule()?;
        if b > nu {
            return self.quotient_by_submodule()?.fitting_ideal(a);
        }
        let n = self.generators();
        let m = self.relations();
        if n <= a + b {
            // c <= 0: the full ring
            return Ok(GStableIdeal::full(&self.group));
        }
        let c = n - a - b;
        if n > MINOR_CAP || m > MINOR_CAP {
            return Err(Error::TooLarge(format!(
                "presentation {n}x{m} exceeds the {MINOR_CAP} cap"
            )));
        }
        let mut cache = MinorCache::new();
        let first: Vec<usize> = (0..n1).collect();
        let cols: Vec<usize> = (0..m).collect();
        let mut acc = GStableIdeal::zero(&self.group);
        for remove_b in combinations(&first, b) {
            let rest: Vec<usize> = (0..n).filter(|i| !remove_b.contains(i)).collect();
            for remove_a in combinations(&rest, a) {
                let rows: Vec<usize> = (0..n)
                    .filter(|i| !remove_b.contains(i) && !remove_a.contains(i))
                    .collect();
                debug_assert_eq!(rows.len(), c);
                if c > m {
                    continue; // no c x c minors: zero contribution
                }
                let mut gens = Vec::new();
                for cc in combinations(&cols, c) {
                    let d = self.det_masked(&rows, &cc, &mut cache);
                    if !d.is_zero() {
                        gens.push(d);
                    }
                }
                let f = GStableIdeal::from_generators(&self.group, &gens)?;
                acc = acc.sum(&f)?;
            }
        }
        Ok(acc)
    }

    /// Characterization of `Fitt^{(a,b)}(M, N)` as the sum of `Fitt^0(M/X)`
    /// over all submodules `X` generated by `a + b` elements with the first
    /// `b` in `N`. Requires `M` finite with at most `bound` elements.
    pub fn relative_fitting_oracle(&self, a: usize, b: usize, bound: u64) -> Result<GStableIdeal> {
        let (n1, _) = self
            .block
            .ok_or_else(|| Error::BadPresentation("no submodule block set".into()))?;
        let fm = FiniteModule::new(self, bound)?;
        let n_gens: Vec<Vec<u64>> = (0..n1).map(|i| fm.generator_image(i)).collect();
        let n_elements: Vec<Vec<u64>> = fm.submodule_closure(&n_gens).into_iter().collect();
        let m_elements = fm.elements();
        let mut seen: BTreeSet<Vec<Vec<u64>>> = BTreeSet::new();
        let mut acc = GStableIdeal::zero(&self.group);
        let full = GStableIdeal::full(&self.group);
        let b_tuples = multisets(n_elements.len(), b);
        let a_tuples = multisets(m_elements.len(), a);
        for bt in &b_tuples {
            for at in &a_tuples {
                let mut gens: Vec<Vec<u64>> = bt.iter().map(|&i| n_elements[i].clone()).collect();
                gens.extend(at.iter().map(|&i| m_elements[i].clone()));
                let closure: Vec<Vec<u64>> = fm.submodule_closure(&gens).into_iter().collect();
                if !seen.insert(closure) {
                    continue;
                }
                let fitt0 = fm.fitting0_of_quotient(&gens)?;
                acc = acc.sum(&fitt0)?;
                if acc == full {
                    return Ok(acc);
                }
            }
        }
        Ok(acc)
    }

    /// The transposed presentation `A^{tr,#}` (pads with zero columns to a
    /// square shape first; errors when there are more relations than
    /// generators).
    pub fn transpose_presentation(&self) -> Result<PresentedModule> {
        let n = self.generators();
        let m = self.relations();
        if m > n {
            return Err(Error::BadPresentation(
                "transpose needs a square-presentable matrix (m <= n)".into(),
            ));
        }
        let zero = GroupRingElement::zero(&self.group);
        let mut t = vec![vec![zero; n]; n];
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                t[j][i] = e.sharp();
            }
        }
        PresentedModule::new(&self.group, t, None)
    }

    /// Invariant factors (> 1) and free rank of the underlying abelian
    /// group, via the `Z`-expansion of the presentation.
    pub fn module_structure(&self) -> (Vec<BigInt>, usize) {
        let expansion = self.z_expansion();
        lattice::quotient_structure(&expansion)
    }

    /// The `Z`-relation matrix: one row per (relation column, group element)
    /// pair, columns indexed by (generator, group element).
    pub fn z_expansion(&self) -> IntMatrix {
        let n = self.generators();
        let m = self.relations();
        let gsize = self.group.order() as usize;
        let els = self.group.elements();
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(m * gsize);
        for j in 0..m {
            for g in &els {
                let mut r = vec![BigInt::zero(); n * gsize];
                for (i, row) in self.matrix.iter().enumerate() {
                    for (h, c) in row[j].terms() {
                        let idx = self.group.index_of(&self.group.add(g, h));
                        r[i * gsize + idx] = &r[i * gsize + idx] + c;
                    }
                }
                rows.push(r);
            }
        }
        IntMatrix::from_rows(rows, n * gsize)
    }

    fn det_masked(
        &self,
        rows: &[usize],
        cols: &[usize],
        cache: &mut MinorCache,
    ) -> GroupRingElement<BigInt> {
        debug_assert_eq!(rows.len(), cols.len());
        if rows.is_empty() {
            return GroupRingElement::one(&self.group);
        }
        let key = (mask(rows), mask(cols));
        if let Some(d) = cache.map.get(&key) {
            return d.clone();
        }
        let r0 = rows[0];
        let rest: Vec<usize> = rows[1..].to_vec();
        let mut acc = GroupRingElement::zero(&self.group);
        for (pos, &cj) in cols.iter().enumerate() {
            let e = &self.matrix[r0][cj];
            if e.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&c| c != cj).collect();
            let minor = self.det_masked(&rest, &sub_cols, cache);
            let term = e.mul(&minor).expect("same group");
            acc = if pos % 2 == 0 {
                acc.add(&term).expect("same group")
            } else {
                acc.sub(&term).expect("same group")
            };
        }
        cache.map.insert(key, acc.clone());
        acc
    }
}

struct MinorCache {
    map: HashMap<(u64, u64), GroupRingElement<BigInt>>,
}

impl MinorCache {
    fn new() -> Self {
        MinorCache {
            map: HashMap::new(),
        }
    }
}

fn mask(idx: &[usize]) -> u64 {
    idx.iter().fold(0u64, |m, &i| m | (1 << i))
}

/// All strictly increasing index tuples of length `k` drawn from `items`.
pub fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

// Non-decreasing index tuples of length `k` drawn from `0..n`.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// A presented module whose underlying abelian group is finite and
/// enumerable, with explicit coordinates, group action, and lifts back to
/// `Z[G]^n`.
struct FiniteModule<'a> {
    base: &'a PresentedModule,
    gsize: usize,
    moduli: Vec<u64>,
    nontrivial: Vec<usize>,
    right: IntMatrix,
    right_inv: IntMatrix,
}

impl<'a> FiniteModule<'a> {
    fn new(base: &'a PresentedModule, bound: u64) -> Result<Self> {
        let expansion = base.z_expansion();
        let ncoords = expansion.cols();
        let snf = lattice::smith_normal_form(&expansion);
        let mut moduli = vec![0u64; ncoords];
        for (i, d) in snf.diag.iter().enumerate() {
            moduli[i] = d
                .to_u64()
                .ok_or_else(|| Error::EnumerationBound("invariant factor overflow".into()))?;
        }
        if moduli.iter().any(|&d| d == 0) {
            return Err(Error::EnumerationBound(
                "module is infinite; oracle needs a finite module".into(),
            ));
        }
        let mut order: u64 = 1;
        for &d in &moduli {
            order = order.saturating_mul(d);
            if order > bound {
                return Err(Error::EnumerationBound(format!(
                    "module order exceeds bound {bound}"
                )));
            }
        }
        let nontrivial: Vec<usize> = (0..ncoords).filter(|&i| moduli[i] > 1).collect();
        let right = snf.right;
        let mut inv_rows = Vec::with_capacity(ncoords);
        for i in 0..ncoords {
            let mut e = vec![BigInt::zero(); ncoords];
            e[i] = BigInt::from(1);
            let x = lattice::solve_left(&right, &e)
                .ok_or_else(|| Error::EnumerationBound("transform not invertible".into()))?;
            inv_rows.push(x);
        }
        let right_inv = IntMatrix::from_rows(inv_rows, ncoords);
        Ok(FiniteModule {
            base,
            gsize: base.group.order() as usize,
            moduli,
            nontrivial,
            right,
            right_inv,
        })
    }

    fn order(&self) -> u64 {
        self.nontrivial.iter().map(|&i| self.moduli[i]).product()
    }

    // Coordinates of the class of an integer vector in Z^{n|G|}.
    fn project(&self, z: &[BigInt]) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.nontrivial.len());
        for &j in &self.nontrivial {
            let mut acc = BigInt::zero();
            for (i, zi) in z.iter().enumerate() {
                if !zi.is_zero() {
                    acc += zi * self.right.get(i, j);
                }
            }
            let d = BigInt::from(self.moduli[j]);
            let r = ((acc % &d) + &d) % &d;
            out.push(r.to_u64().unwrap());
        }
        out
    }

    // An integer representative of a coordinate tuple.
    fn lift(&self, coords: &[u64]) -> Vec<BigInt> {
        let ncoords = self.moduli.len();
        let mut padded = vec![BigInt::zero(); ncoords];
        for (k, &j) in self.nontrivial.iter().enumerate() {
            padded[j] = BigInt::from(coords[k]);
        }
        let mut out = vec![BigInt::zero(); ncoords];
        for (i, p) in padded.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for j in 0..ncoords {
                out[j] = &out[j] + p * self.right_inv.get(i, j);
            }
        }
        out
    }

    fn zero(&self) -> Vec<u64> {
        vec![0; self.nontrivial.len()]
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(self.nontrivial.iter().map(|&i| self.moduli[i]))
            .map(|((&x, &y), d)| (x + y) % d)
            .collect()
    }

    // Image of the i-th module generator.
    fn generator_image(&self, i: usize) -> Vec<u64> {
        let mut z = vec![BigInt::zero(); self.moduli.len()];
        let id_idx = self.base.group.index_of(&self.base.group.identity());
        z[i * self.gsize + id_idx] = BigInt::from(1);
        self.project(&z)
    }

    // Action of a group element.
    fn act(&self, g: &crate::groupring::GroupElement, coords: &[u64]) -> Vec<u64> {
        let z = self.lift(coords);
        let n = z.len() / self.gsize;
        let mut out = vec![BigInt::zero(); z.len()];
        let els = self.base.group.elements();
        for i in 0..n {
            for (k, e) in els.iter().enumerate() {
                let v = &z[i * self.gsize + k];
                if v.is_zero() {
                    continue;
                }
                let target = self.base.group.index_of(&self.base.group.add(g, e));
                out[i * self.gsize + target] = &out[i * self.gsize + target] + v;
            }
        }
        self.project(&out)
    }

    fn elements(&self) -> Vec<Vec<u64>> {
        let dims: Vec<u64> = self.nontrivial.iter().map(|&i| self.moduli[i]).collect();
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut cur = vec![0u64; dims.len()];
        loop {
            out.push(cur.clone());
            let mut i = dims.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < dims[i] {
                    break;
                }
                cur[i] = 0;
                if i == 0 {
                    return out;
                }
            }
        }
    }

    // Closure of a generator list under addition and the group action.
    fn submodule_closure(&self, gens: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
        let mut seen = BTreeSet::new();
        seen.insert(self.zero());
        let mut orbit: Vec<Vec<u64>> = Vec::new();
        for g in gens {
            for e in self.base.group.elements() {
                orbit.push(self.act(&e, g));
            }
        }
        let mut frontier: Vec<Vec<u64>> = vec![self.zero()];
        while let Some(x) = frontier.pop() {
            for o in &orbit {
                let y = self.add(&x, o);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen
    }

    // Fitt^0(M/X) for the submodule X generated by `extra`.
    fn fitting0_of_quotient(&self, extra: &[Vec<u64>]) -> Result<GStableIdeal> {
        let mut matrix = self.base.matrix.clone();
        let els = self.base.group.elements();
        for x in extra {
            let z = self.lift(x);
            for (i, row) in matrix.iter_mut().enumerate() {
                let terms: Vec<_> = (0..self.gsize)
                    .filter(|k| !z[i * self.gsize + k].is_zero())
                    .map(|k| (els[k].clone(), z[i * self.gsize + k].clone()))
                    .collect();
                row.push(GroupRingElement::from_terms(&self.base.group, terms));
            }
        }
        let pm = PresentedModule {
            group: self.base.group.clone(),
            matrix,
            block: None,
        };
        pm.fitting_ideal(0)
    }
}

/// The cokernel of a diagonal integer matrix over `Z`.
pub fn z_module_from_invariants(invariants: &[i64]) -> PresentedModule {
    let n = invariants.len();
    let mut m = IntMatrix::zero(n, n);
    for (i, &d) in invariants.iter().enumerate() {
        m.set(i, i, BigInt::from(d));
    }
    PresentedModule::over_z(&m, None).unwrap()
}

/// A `Z[G]`-module presentation from an abelian-group presentation plus the
/// action of each group generator on the abelian generators.
///
/// `relations` holds integer relation rows among the `k` abelian generators;
/// `action[t]` holds the image of each abelian generator under the `t`-th
/// cyclic generator of `G` (a `k x k` integer matrix acting on column
/// coordinates).
pub fn module_from_abelian_action(
    group: &FiniteAbelianGroup,
    relations: &IntMatrix,
    action: &[IntMatrix],
) -> Result<PresentedModule> {
    let k = relations.cols();
    assert_eq!(action.len(), group.num_factors());
    let zero = GroupRingElement::zero(group);
    let mut cols: Vec<Vec<GroupRingElement<BigInt>>> = Vec::new();
    for r in 0..relations.rows() {
        let col: Vec<GroupRingElement<BigInt>> = (0..k)
            .map(|i| {
                let c = relations.get(r, i);
                if c.is_zero() {
                    zero.clone()
                } else {
                    GroupRingElement::from_terms(group, vec![(group.identity(), c.clone())])
                }
            })
            .collect();
        cols.push(col);
    }
    // action relations: g_t * e_j - sum_i action[t][i][j] e_i = 0
    for (t, mat) in action.iter().enumerate() {
        assert_eq!(mat.rows(), k);
        assert_eq!(mat.cols(), k);
        let mut gexp = vec![0i64; group.num_factors()];
        gexp[t] = 1;
        let g = group.element(&gexp);
        for j in 0..k {
            let mut col = Vec::with_capacity(k);
            for i in 0..k {
                let mut e = GroupRingElement::zero(group);
                if i == j {
                    e = e
                        .add(&GroupRingElement::monomial(group, &g, BigInt::from(1)))
                        .unwrap();
                }
                let c = mat.get(i, j);
                if !c.is_zero() {
                    e = e
                        .sub(&GroupRingElement::from_terms(
                            group,
                            vec![(group.identity(), c.clone())],
                        ))
                        .unwrap();
                }
                col.push(e);
            }
            cols.push(col);
        }
    }
    let m = cols.len();
    let mut matrix = vec![vec![zero; m]; k];
    for (j, col) in cols.into_iter().enumerate() {
        for (i, e) in col.into_iter().enumerate() {
            matrix[i][j] = e;
        }
    }
    PresentedModule::new(group, matrix, None)
}

/// Invariant factors of a finite abelian group given by an addition table on
/// `0..order` with identity `0`.
pub fn abelian_invariants_from_table(
    order: usize,
    add: impl Fn(usize, usize) -> usize,
) -> Vec<u64> {
    if order == 1 {
        return Vec::new();
    }
    // greedy generating set
    let mut gens: Vec<usize> = Vec::new();
    let mut reached: BTreeSet<usize> = BTreeSet::new();
    reached.insert(0);
    while reached.len() < order {
        let g = (0..order).find(|x| !reached.contains(x)).unwrap();
        gens.push(g);
        loop {
            let mut added = false;
            let snapshot: Vec<usize> = reached.iter().copied().collect();
            for &x in &snapshot {
                for &gg in &gens {
                    if reached.insert(add(x, gg)) {
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
    }
    let k = gens.len();
    // discrete logs via a BFS walk; every walk collision yields a relation
    let mut dlog: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
    dlog.insert(0, vec![0; k]);
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        let dx = dlog[&x].clone();
        for (t, &g) in gens.iter().enumerate() {
            let y = add(x, g);
            if !dlog.contains_key(&y) {
                let mut dy = dx.clone();
                dy[t] += 1;
                dlog.insert(y, dy);
                frontier.push(y);
            }
        }
    }
    let mut rel_rows: Vec<Vec<BigInt>> = Vec::new();
    for (t, &g) in gens.iter().enumerate() {
        let mut o = 1usize;
        let mut cur = g;
        while cur != 0 {
            cur = add(cur, g);
            o += 1;
        }
        let mut row = vec![BigInt::zero(); k];
        row[t] = BigInt::from(o as i64);
        rel_rows.push(row);
    }
    for (&x, dx) in &dlog {
        for (t, &g) in gens.iter().enumerate() {
            let y = add(x, g);
            let dy = &dlog[&y];
            let mut row: Vec<BigInt> = (0..k).map(|i| BigInt::from(dx[i] - dy[i])).collect();
            row[t] = &row[t] + 1;
            if row.iter().any(|v| !v.is_zero()) {
                rel_rows.push(row);
            }
        }
    }
    let rel = IntMatrix::from_rows(rel_rows, k);
    let (tors, free) = lattice::quotient_structure(&rel);
    assert_eq!(free, 0, "finite group cannot have a free quotient");
    let mut out: Vec<u64> = tors.iter().map(|d| d.to_u64().unwrap()).collect();
    let check: u64 = out.iter().product();
    assert_eq!(check, order as u64, "invariant factors must multiply to the order");
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::Subgroup;

    fn zmod(n: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n)
    }

    fn gre(group: &FiniteAbelianGroup, terms: &[(i64, i64)]) -> GroupRingElement<BigInt> {
        GroupRingElement::from_terms(
            group,
            terms
                .iter()
                .map(|&(e, c)| (group.element(&[e]), BigInt::from(c)))
                .collect(),
        )
    }

    fn principal(g: &FiniteAbelianGroup, terms: &[(i64, i64)]) -> GStableIdeal {
        GStableIdeal::from_generators(g, &[gre(g, terms)]).unwrap()
    }

    #[test]
    fn fitting_of_z6_over_z() {
        let m = PresentedModule::over_z(&IntMatrix::from_i64(&[&[6]]), None).unwrap();
        let g = m.group().clone();
        assert_eq!(m.fitting_ideal(0).unwrap(), principal(&g, &[(0, 6)]));
        assert!(m.fitting_ideal(1).unwrap().is_full());
    }

    #[test]
    fn fitting_of_diag_2_3() {
        let m = PresentedModule::over_z(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]), None).unwrap();
        let g = m.group().clone();
        assert_eq!(m.fitting_ideal(0).unwrap(), principal(&g, &[(0, 6)]));
        assert!(m.fitting_ideal(1).unwrap().is_full());
        assert!(m.fitting_ideal(2).unwrap().is_full());
    }

    #[test]
    fn fitting_over_group_ring() {
        // Z[Z/2]/(1+s): Fitt^0 = (1+s)
        let g = zmod(2);
        let m = PresentedModule::new(&g, vec![vec![gre(&g, &[(0, 1), (1, 1)])]], None).unwrap();
        assert_eq!(m.fitting_ideal(0).unwrap(), principal(&g, &[(0, 1), (1, 1)]));
    }

    #[test]
    fn fitting_chain_increases() {
        let g = zmod(2);
        let m = PresentedModule::new(
            &g,
            vec![
                vec![gre(&g, &[(0, 2)]), gre(&g, &[(1, 1)])],
                vec![gre(&g, &[(0, 1), (1, -1)]), gre(&g, &[(0, 3)])],
            ],
            None,
        )
        .unwrap();
        let f0 = m.fitting_ideal(0).unwrap();
        let f1 = m.fitting_ideal(1).unwrap();
        let f2 = m.fitting_ideal(2).unwrap();
        assert!(f1.contains_ideal(&f0));
        assert!(f2.contains_ideal(&f1));
        assert!(f2.is_full());
    }

    #[test]
    fn free_module_has_zero_fitt0() {
        let g = zmod(2);
        let m = PresentedModule::new(&g, vec![vec![]], None).unwrap();
        assert!(m.fitting_ideal(0).unwrap().is_zero());
        assert!(m.fitting_ideal(1).unwrap().is_full());
    }

    #[test]
    fn relative_fitting_b0_equals_plain() {
        // Fitt^{(a,0)}(M, N) = Fitt^a(M)
        let g = zmod(2);
        let m = PresentedModule::new(
            &g,
            vec![
                vec![gre(&g, &[(0, 2)]), gre(&g, &[(0, 1)])],
                vec![GroupRingElement::zero(&g), gre(&g, &[(0, 1), (1, 1)])],
            ],
            Some((1, 1)),
        )
        .unwrap();
        for a in 0..3 {
            assert_eq!(
                m.relative_fitting_ideal(a, 0).unwrap(),
                m.fitting_ideal(a).unwrap()
            );
        }
    }

    #[test]
    fn relative_fitting_z4_plus_z2() {
        // M = Z/2 (+) Z/4 over Z with N = the Z/2 summand:
        // Fitt^{(0,1)} removes the N-row, leaving 1x1 minors of (4)
        let m =
            PresentedModule::over_z(&IntMatrix::from_i64(&[&[2, 0], &[0, 4]]), Some((1, 1)))
                .unwrap();
        let g = m.group().clone();
        assert_eq!(
            m.relative_fitting_ideal(0, 1).unwrap(),
            principal(&g, &[(0, 4)])
        );
    }

    #[test]
    fn relative_fitting_oracle_agrees() {
        let m =
            PresentedModule::over_z(&IntMatrix::from_i64(&[&[2, 0], &[0, 4]]), Some((1, 1)))
                .unwrap();
        let direct = m.relative_fitting_ideal(0, 1).unwrap();
        let oracle = m.relative_fitting_oracle(0, 1, 10_000).unwrap();
        assert_eq!(direct, oracle);
        // a = b = 0: both sides are Fitt^0 (X = 0)
        assert_eq!(
            m.relative_fitting_oracle(0, 0, 10_000).unwrap(),
            m.fitting_ideal(0).unwrap()
        );
    }

    #[test]
    fn relative_fitting_b_exceeding_nu() {
        let m =
            PresentedModule::over_z(&IntMatrix::from_i64(&[&[2, 0], &[0, 4]]), Some((1, 1)))
                .unwrap();
        assert_eq!(m.min_generators_of_submodule().unwrap(), 1);
        let expect = m.quotient_by_submodule().unwrap().fitting_ideal(0).unwrap();
        assert_eq!(m.relative_fitting_ideal(0, 2).unwrap(), expect);
        assert_eq!(m.relative_fitting_oracle(0, 2, 10_000).unwrap(), expect);
    }

    #[test]
    fn transpose_self_sharp_element() {
        let g = zmod(2);
        let m = PresentedModule::new(&g, vec![vec![gre(&g, &[(0, 1), (1, 1)])]], None).unwrap();
        let t = m.transpose_presentation().unwrap();
        assert_eq!(t.fitting_ideal(0).unwrap(), m.fitting_ideal(0).unwrap());
    }

    #[test]
    fn transpose_duality_on_diagonal() {
        // A = diag(2, 1 - s) over Z[Z/2]
        let g = zmod(2);
        let m = PresentedModule::new(
            &g,
            vec![
                vec![gre(&g, &[(0, 2)]), GroupRingElement::zero(&g)],
                vec![GroupRingElement::zero(&g), gre(&g, &[(0, 1), (1, -1)])],
            ],
            None,
        )
        .unwrap();
        let t = m.transpose_presentation().unwrap();
        for i in 0..3 {
            assert_eq!(
                t.fitting_ideal(i).unwrap(),
                m.fitting_ideal(i).unwrap().sharp()
            );
        }
    }

    #[test]
    fn module_structure_examples() {
        // Z[Z/2]/(1+s, 2) = Z/2
        let g = zmod(2);
        let m = PresentedModule::new(
            &g,
            vec![vec![gre(&g, &[(0, 1), (1, 1)]), gre(&g, &[(0, 2)])]],
            None,
        )
        .unwrap();
        let (tors, free) = m.module_structure();
        assert_eq!(tors, vec![BigInt::from(2)]);
        assert_eq!(free, 0);
        // free module: empty torsion, rank recorded
        let f = PresentedModule::new(&g, vec![vec![]], None).unwrap();
        let (tors, free) = f.module_structure();
        assert!(tors.is_empty());
        assert_eq!(free, 2);
        // Z/6
        let z6 = z_module_from_invariants(&[6]);
        let (tors, free) = z6.module_structure();
        assert_eq!(tors, vec![BigInt::from(6)]);
        assert_eq!(free, 0);
    }

    #[test]
    fn fitting_invariance_under_elementary_ops() {
        let g = zmod(2);
        let m = PresentedModule::new(
            &g,
            vec![
                vec![gre(&g, &[(0, 2)]), gre(&g, &[(1, 1)])],
                vec![gre(&g, &[(0, 1)]), gre(&g, &[(0, 1), (1, 1)])],
            ],
            None,
        )
        .unwrap();
        // zero column padding
        let mut padded = m.matrix.clone();
        for row in padded.iter_mut() {
            row.push(GroupRingElement::zero(&g));
        }
        let mp = PresentedModule::new(&g, padded, None).unwrap();
        // column swap
        let mut swapped = m.matrix.clone();
        for row in swapped.iter_mut() {
            row.swap(0, 1);
        }
        let ms = PresentedModule::new(&g, swapped, None).unwrap();
        // col_1 += s * col_0
        let s = gre(&g, &[(1, 1)]);
        let mut sheared = m.matrix.clone();
        for row in sheared.iter_mut() {
            let t = row[1].add(&row[0].mul(&s).unwrap()).unwrap();
            row[1] = t;
        }
        let mh = PresentedModule::new(&g, sheared, None).unwrap();
        for i in 0..3 {
            let f = m.fitting_ideal(i).unwrap();
            assert_eq!(mp.fitting_ideal(i).unwrap(), f);
            assert_eq!(ms.fitting_ideal(i).unwrap(), f);
            assert_eq!(mh.fitting_ideal(i).unwrap(), f);
        }
    }

    #[test]
    fn module_from_action_builds_valid_presentation() {
        // Z/3 with the sign action of Z/2
        let g = zmod(2);
        let rel = IntMatrix::from_i64(&[&[3]]);
        let act = vec![IntMatrix::from_i64(&[&[-1]])];
        let m = module_from_abelian_action(&g, &rel, &act).unwrap();
        let (tors, free) = m.module_structure();
        assert_eq!(tors, vec![BigInt::from(3)]);
        assert_eq!(free, 0);
        let f0 = m.fitting_ideal(0).unwrap();
        assert!(f0.contains(&gre(&g, &[(0, 3)])));
    }

    #[test]
    fn abelian_invariants_from_cyclic_table() {
        let inv = abelian_invariants_from_table(6, |a, b| (a + b) % 6);
        assert_eq!(inv, vec![6]);
        let inv = abelian_invariants_from_table(4, |a, b| a ^ b);
        assert_eq!(inv, vec![2, 2]);
    }

    #[test]
    fn trivial_action_module_fitting() {
        // M = Z with trivial Z/2-action = Z[G]/(s-1): Fitt^0 = I(G)
        let g = zmod(2);
        let m = PresentedModule::new(&g, vec![vec![gre(&g, &[(1, 1), (0, -1)])]], None).unwrap();
        let f0 = m.fitting_ideal(0).unwrap();
        let h = Subgroup::full(&g);
        let aug = GStableIdeal::augmentation_ideal(&g, &h).unwrap();
        assert_eq!(f0, aug);
    }
}
