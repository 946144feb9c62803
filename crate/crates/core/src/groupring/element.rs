//! Sparse group-ring arithmetic.

use super::group::{FiniteAbelianGroup, GroupElement, QuotientMap, Subgroup};
use crate::cyclo::CycloNumber;
use crate::error::Error;
use crate::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficient rings usable in `R[G]`: integers, rationals, cyclotomic
/// rationals.
pub trait Coefficient:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    /// Display label used in mismatch errors.
    const RING_NAME: &'static str;

    /// Embeds the coefficient into the cyclotomic rationals.
    fn to_cyclo(&self) -> CycloNumber;
}

impl Coefficient for BigInt {
    const RING_NAME: &'static str = "Z";
    fn to_cyclo(&self) -> CycloNumber {
        CycloNumber::from_bigint(self)
    }
}

impl Coefficient for BigRational {
    const RING_NAME: &'static str = "Q";
    fn to_cyclo(&self) -> CycloNumber {
        CycloNumber::from_rational(self.clone())
    }
}

impl Coefficient for CycloNumber {
    const RING_NAME: &'static str = "Q(zeta)";
    fn to_cyclo(&self) -> CycloNumber {
        self.clone()
    }
}

/// An element of `R[G]` in canonical sparse form: zero coefficients are never
/// stored, so equality is coefficient-wise structural equality.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupRingElement<C: Coefficient> {
    group: FiniteAbelianGroup,
    terms: BTreeMap<GroupElement, C>,
}

/// Dense convolution is used when the group is small enough that the index
/// tables stay trivial.
const DENSE_LIMIT: u64 = 64;

impl<C: Coefficient> GroupRingElement<C> {
    pub fn zero(group: &FiniteAbelianGroup) -> Self {
        GroupRingElement {
            group: group.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(group: &FiniteAbelianGroup) -> Self {
        Self::monomial(group, &group.identity(), C::one())
    }

    /// `c * g` as a one-term element.
    pub fn monomial(group: &FiniteAbelianGroup, g: &GroupElement, c: C) -> Self {
        assert!(group.contains(g), "monomial element outside group");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(g.clone(), c);
        }
        GroupRingElement {
            group: group.clone(),
            terms,
        }
    }

    pub fn from_terms(group: &FiniteAbelianGroup, items: Vec<(GroupElement, C)>) -> Self {
        let mut out = Self::zero(group);
        for (g, c) in items {
            assert!(group.contains(&g), "term element outside group");
            out.add_term(&g, c);
        }
        out
    }

    /// The norm element `N_H`: the sum over a subgroup with unit
    /// coefficients.
    pub fn norm_element(h: &Subgroup) -> Self {
        let mut out = Self::zero(h.group());
        for g in h.elements() {
            out.add_term(g, C::one());
        }
        out
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn terms(&self) -> &BTreeMap<GroupElement, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: &GroupElement) -> C {
        self.terms.get(g).cloned().unwrap_or_else(C::zero)
    }

    fn add_term(&mut self, g: &GroupElement, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(g) {
            Some(existing) => {
                let v = existing.clone() + c;
                if v.is_zero() {
                    self.terms.remove(g);
                } else {
                    *existing = v;
                }
            }
            None => {
                self.terms.insert(g.clone(), c);
            }
        }
    }

    fn check_group(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(format!(
                "{:?} vs {:?}",
                self.group, other.group
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g, -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(g, c)| (g.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(&self.group);
        for (g, x) in &self.terms {
            out.add_term(g, x.clone() * c.clone());
        }
        out
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let n = self.group.order();
        if n <= DENSE_LIMIT
            && self.terms.len() as u64 * other.terms.len() as u64 > n * n / 2
        {
            return Ok(self.mul_dense(other));
        }
        let mut out = Self::zero(&self.group);
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                out.add_term(&self.group.add(g, h), a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    fn mul_dense(&self, other: &Self) -> Self {
        let n = self.group.order() as usize;
        let mut a = vec![C::zero(); n];
        let mut b = vec![C::zero(); n];
        for (g, c) in &self.terms {
            a[self.group.index_of(g)] = c.clone();
        }
        for (g, c) in &other.terms {
            b[self.group.index_of(g)] = c.clone();
        }
        let els = self.group.elements();
        let mut dense = vec![C::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let k = self.group.index_of(&self.group.add(&els[i], &els[j]));
                dense[k] = dense[k].clone() + x.clone() * y.clone();
            }
        }
        let mut out = Self::zero(&self.group);
        for (k, c) in dense.into_iter().enumerate() {
            if !c.is_zero() {
                out.terms.insert(els[k].clone(), c);
            }
        }
        out
    }

    /// `x^k` by repeated squaring (k >= 0).
    pub fn pow(&self, k: u64) -> Result<Self> {
        let mut acc = Self::one(&self.group);
        let mut sq = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// The `#` involution induced by `g -> g^{-1}`.
    pub fn sharp(&self) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (self.group.neg(g), c.clone()))
                .collect(),
        }
    }

    /// Sum of coefficients (a ring homomorphism onto `R`).
    pub fn augmentation(&self) -> C {
        self.terms
            .values()
            .fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// Image under `Z[G] -> Z[G/H]`: the coefficient of a coset is the sum
    /// over its representatives.
    pub fn deflate(&self, q: &QuotientMap) -> GroupRingElement<C> {
        assert_eq!(q.source(), &self.group, "deflation group mismatch");
        let mut out = GroupRingElement::zero(q.quotient());
        for (g, c) in &self.terms {
            out.add_term(&q.project(g), c.clone());
        }
        out
    }

    /// Multiplies the underlying group element of each term by `g`.
    pub fn translate(&self, g: &GroupElement) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            terms: self
                .terms
                .iter()
                .map(|(h, c)| (self.group.add(g, h), c.clone()))
                .collect(),
        }
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> GroupRingElement<D> {
        let mut out = GroupRingElement::zero(&self.group);
        for (g, c) in &self.terms {
            out.add_term(g, f(c));
        }
        out
    }
}

impl GroupRingElement<BigInt> {
    pub fn to_rational_coeffs(&self) -> GroupRingElement<BigRational> {
        self.map_coefficients(|c| BigRational::from(c.clone()))
    }

    /// Coefficient vector indexed by the lexicographic element enumeration.
    pub fn coefficient_vector(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.group.order() as usize];
        for (g, c) in &self.terms {
            v[self.group.index_of(g)] = c.clone();
        }
        v
    }

    pub fn from_coefficient_vector(group: &FiniteAbelianGroup, v: &[BigInt]) -> Self {
        assert_eq!(v.len(), group.order() as usize);
        let els = group.elements();
        GroupRingElement::from_terms(
            group,
            v.iter()
                .enumerate()
                .map(|(i, c)| (els[i].clone(), c.clone()))
                .collect(),
        )
    }
}

impl GroupRingElement<BigRational> {
    /// Exact integer part check: returns the integral element when every
    /// coefficient is an integer.
    pub fn to_integer_coeffs(&self) -> Option<GroupRingElement<BigInt>> {
        let mut out = GroupRingElement::zero(&self.group);
        for (g, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            out.add_term(g, c.to_integer());
        }
        Some(out)
    }
}

impl GroupRingElement<CycloNumber> {
    /// Exact rational part check.
    pub fn to_rational_element(&self) -> Option<GroupRingElement<BigRational>> {
        let mut out = GroupRingElement::zero(&self.group);
        for (g, c) in &self.terms {
            out.add_term(g, c.to_rational()?);
        }
        Some(out)
    }
}

// External interface: {"group":[n1,...],"terms":[{"g":[...],"num":"..","den":".."}]}
// with terms sorted lexicographically by exponent vector.
#[derive(Serialize, Deserialize)]
struct TermRepr {
    g: Vec<u64>,
    num: String,
    den: String,
}

/// Coefficients expressible as exact num/den decimal strings.
pub trait RationalLike: Coefficient {
    fn to_num_den(&self) -> (BigInt, BigInt);
    fn from_num_den(num: BigInt, den: BigInt) -> Option<Self>;
}

impl RationalLike for BigInt {
    fn to_num_den(&self) -> (BigInt, BigInt) {
        (self.clone(), BigInt::one())
    }
    fn from_num_den(num: BigInt, den: BigInt) -> Option<Self> {
        if den == BigInt::one() {
            Some(num)
        } else {
            None
        }
    }
}

impl RationalLike for BigRational {
    fn to_num_den(&self) -> (BigInt, BigInt) {
        (self.numer().clone(), self.denom().clone())
    }
    fn from_num_den(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num, den))
        }
    }
}

impl<C: RationalLike> Serialize for GroupRingElement<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(g, c)| {
                let (num, den) = c.to_num_den();
                TermRepr {
                    g: g.exponents().to_vec(),
                    num: num.to_string(),
                    den: den.to_string(),
                }
            })
            .collect();
        let mut s = serializer.serialize_struct("GroupRingElement", 2)?;
        s.serialize_field("group", self.group.cyclic_orders())?;
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

impl<'de, C: RationalLike> Deserialize<'de> for GroupRingElement<C> {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Repr {
            group: Vec<u64>,
            terms: Vec<TermRepr>,
        }
        let r = Repr::deserialize(deserializer)?;
        let group = FiniteAbelianGroup::new(r.group);
        let mut items = Vec::new();
        for t in r.terms {
            let num: BigInt = t.num.parse().map_err(D::Error::custom)?;
            let den: BigInt = t.den.parse().map_err(D::Error::custom)?;
            let c = C::from_num_den(num, den)
                .ok_or_else(|| D::Error::custom("invalid coefficient for ring"))?;
            let exps: Vec<i64> = t.g.iter().map(|&e| e as i64).collect();
            items.push((group.element(&exps), c));
        }
        Ok(GroupRingElement::from_terms(&group, items))
    }
}
