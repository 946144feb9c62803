//! Linear characters of finite abelian groups, valued in roots of unity.

use super::element::{Coefficient, GroupRingElement};
use super::group::{FiniteAbelianGroup, GroupElement};
use crate::cyclo::CycloNumber;
use num_rational::BigRational;
use num_traits::Zero;

/// A character `chi: G -> C^x`, determined by its value on each cyclic
/// factor: on the `i`-th generator it takes the value `zeta_{n_i}^{k_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterOfG {
    group: FiniteAbelianGroup,
    exponents: Vec<u64>,
}

impl CharacterOfG {
    pub fn new(group: &FiniteAbelianGroup, exponents: Vec<u64>) -> Self {
        assert_eq!(exponents.len(), group.num_factors());
        let exponents = exponents
            .iter()
            .zip(group.cyclic_orders())
            .map(|(&k, &n)| k % n)
            .collect();
        CharacterOfG {
            group: group.clone(),
            exponents,
        }
    }

    pub fn trivial(group: &FiniteAbelianGroup) -> Self {
        CharacterOfG::new(group, vec![0; group.num_factors()])
    }

    /// All `|G|` characters, in the lexicographic order of their exponent
    /// vectors.
    pub fn all(group: &FiniteAbelianGroup) -> Vec<CharacterOfG> {
        group
            .elements()
            .into_iter()
            .map(|e| CharacterOfG::new(group, e.exponents().to_vec()))
            .collect()
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&k| k == 0)
    }

    /// Multiplicative order of the character.
    pub fn order(&self) -> u64 {
        self.exponents
            .iter()
            .zip(self.group.cyclic_orders())
            .fold(1, |acc, (&k, &n)| {
                num_integer::lcm(acc, n / num_integer::gcd(k, n))
            })
    }

    /// The inverse (= conjugate) character.
    pub fn inverse(&self) -> CharacterOfG {
        let exps = self
            .exponents
            .iter()
            .zip(self.group.cyclic_orders())
            .map(|(&k, &n)| if k == 0 { 0 } else { n - k })
            .collect();
        CharacterOfG::new(&self.group, exps)
    }

    pub fn mul(&self, other: &CharacterOfG) -> CharacterOfG {
        assert_eq!(self.group, other.group);
        let exps = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .zip(self.group.cyclic_orders())
            .map(|((&a, &b), &n)| (a + b) % n)
            .collect();
        CharacterOfG::new(&self.group, exps)
    }

    /// `chi(g)` as an exact root of unity in `Q(zeta_exp(G))`.
    pub fn value(&self, g: &GroupElement) -> CycloNumber {
        let n = self.group.exponent();
        let mut e: u64 = 0;
        for ((k, x), ord) in self
            .exponents
            .iter()
            .zip(g.exponents())
            .zip(self.group.cyclic_orders())
        {
            let t = (*k as u128 * *x as u128 % *ord as u128) as u64;
            e = (e + t * (n / ord)) % n;
        }
        CycloNumber::zeta_power(n, e)
    }

    /// `sum_g coeff(g) chi(g)`, a ring homomorphism `R[G] -> Q(zeta)`.
    pub fn apply<C: Coefficient>(&self, x: &GroupRingElement<C>) -> CycloNumber {
        assert_eq!(x.group(), &self.group, "character group mismatch");
        let mut acc = CycloNumber::zero();
        for (g, c) in x.terms() {
            acc = &acc + &(&c.to_cyclo() * &self.value(g));
        }
        acc
    }

    /// The idempotent `e_chi = (1/|G|) sum_g chi(g) g^{-1}` in cyclotomic
    /// coefficients.
    pub fn idempotent(&self) -> GroupRingElement<CycloNumber> {
        let inv_order = CycloNumber::from_rational(BigRational::new(
            1.into(),
            (self.group.order() as i64).into(),
        ));
        let mut terms = Vec::new();
        for g in self.group.elements() {
            terms.push((self.group.neg(&g), &self.value(&g) * &inv_order));
        }
        GroupRingElement::from_terms(&self.group, terms)
    }
}
