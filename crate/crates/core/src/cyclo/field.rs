//! Abelian extensions of `Q` presented as subfields of a cyclotomic field:
//! the Galois group as an explicit quotient of `(Z/f)^x`, decomposition and
//! inertia data, and character pullbacks.

use super::characters::{DirichletChar, UnitGroup};
use crate::error::Error;
use crate::groupring::{CharacterOfG, FiniteAbelianGroup, GroupElement, QuotientMap, Subgroup};
use crate::Result;
use num_traits::One;

/// `K` inside `Q(mu_f)`, cut out by a subgroup of `(Z/f)^x`;
/// `Gal(K/Q) = (Z/f)^x / H_K`.
#[derive(Debug, Clone)]
pub struct AbelianFieldQ {
    units: UnitGroup,
    fixing: Subgroup,
    qmap: QuotientMap,
}

impl AbelianFieldQ {
    pub fn new(units: UnitGroup, fixing: Subgroup) -> Result<Self> {
        if fixing.group() != units.group() {
            return Err(Error::GroupMismatch(
                "fixing subgroup must live in the unit group".into(),
            ));
        }
        let qmap = QuotientMap::new(&fixing);
        Ok(AbelianFieldQ {
            units,
            fixing,
            qmap,
        })
    }

    /// The full cyclotomic field `Q(mu_f)`.
    pub fn full_cyclotomic(f: u64) -> Self {
        let units = UnitGroup::new(f);
        let fixing = Subgroup::trivial(units.group());
        AbelianFieldQ::new(units, fixing).unwrap()
    }

    /// The maximal real subfield `Q(mu_f)^+`.
    pub fn maximal_real(f: u64) -> Self {
        let units = UnitGroup::new(f);
        let minus_one = units.minus_one();
        let fixing = Subgroup::from_generators(units.group(), &[minus_one]).unwrap();
        AbelianFieldQ::new(units, fixing).unwrap()
    }

    /// The quadratic field of fundamental discriminant `d`, inside
    /// `Q(mu_|d|)`; the fixing subgroup is the kernel of the Kronecker
    /// character.
    pub fn quadratic(d: i64) -> Result<Self> {
        crate::quadfield::check_fundamental(d)?;
        let f = d.unsigned_abs();
        let units = UnitGroup::new(f);
        let gens: Vec<GroupElement> = units
            .residues()
            .into_iter()
            .filter(|&a| crate::quadfield::kronecker_symbol(d, a as i64) == 1)
            .map(|a| units.dlog(a).unwrap())
            .collect();
        let fixing = Subgroup::from_generators(units.group(), &gens).unwrap();
        AbelianFieldQ::new(units, fixing)
    }

    /// The compositum of two distinct quadratic fields, inside
    /// `Q(mu_lcm)`; the fixing subgroup is the joint kernel.
    pub fn biquadratic(d1: i64, d2: i64) -> Result<Self> {
        crate::quadfield::check_fundamental(d1)?;
        crate::quadfield::check_fundamental(d2)?;
        if d1 == d2 {
            return Err(Error::BadInstance("fields must be distinct".into()));
        }
        let f = num_integer::lcm(d1.unsigned_abs(), d2.unsigned_abs());
        let units = UnitGroup::new(f);
        let gens: Vec<GroupElement> = units
            .residues()
            .into_iter()
            .filter(|&a| {
                crate::quadfield::kronecker_symbol(d1, a as i64) == 1
                    && crate::quadfield::kronecker_symbol(d2, a as i64) == 1
            })
            .map(|a| units.dlog(a).unwrap())
            .collect();
        let fixing = Subgroup::from_generators(units.group(), &gens).unwrap();
        AbelianFieldQ::new(units, fixing)
    }

    pub fn units(&self) -> &UnitGroup {
        &self.units
    }

    pub fn modulus(&self) -> u64 {
        self.units.modulus()
    }

    pub fn fixing_subgroup(&self) -> &Subgroup {
        &self.fixing
    }

    pub fn qmap(&self) -> &QuotientMap {
        &self.qmap
    }

    /// `Gal(K/Q)`.
    pub fn galois_group(&self) -> &FiniteAbelianGroup {
        self.qmap.quotient()
    }

    pub fn degree(&self) -> u64 {
        self.galois_group().order()
    }

    /// The Galois element `sigma_a` for `gcd(a, f) = 1`.
    pub fn galois_of_residue(&self, a: u64) -> Result<GroupElement> {
        let el = self
            .units
            .dlog(a % self.modulus().max(1))
            .ok_or_else(|| Error::BadInstance(format!("{a} is not coprime to the conductor")))?;
        Ok(self.qmap.project(&el))
    }

    /// A coprime residue representing a Galois element.
    pub fn residue_of_galois(&self, tau: &GroupElement) -> u64 {
        self.units.residue(&self.qmap.lift(tau))
    }

    /// Whether `K` is fixed by complex conjugation.
    pub fn is_totally_real(&self) -> bool {
        self.fixing.contains(&self.units.minus_one())
    }

    /// Conductor of `K`: the lcm of the conductors of its characters.
    pub fn conductor(&self) -> u64 {
        self.characters()
            .iter()
            .fold(1, |acc, chi| num_integer::lcm(acc, chi.conductor()))
    }

    /// Characters of `Gal(K/Q)` pulled back to Dirichlet characters mod `f`.
    pub fn characters(&self) -> Vec<DirichletChar> {
        CharacterOfG::all(self.galois_group())
            .into_iter()
            .map(|chi_q| self.pull_back(&chi_q))
            .collect()
    }

    /// Pullback of a Galois-group character to `(Z/f)^x`.
    pub fn pull_back(&self, chi_q: &CharacterOfG) -> DirichletChar {
        // chi on the unit group: chi(u) = chi_q(project(u)); realize it as a
        // CharacterOfG of the unit group by evaluating on the generators.
        let ug = self.units.group();
        let n = ug.exponent();
        let mut exps = Vec::with_capacity(ug.num_factors());
        for i in 0..ug.num_factors() {
            let mut e = vec![0i64; ug.num_factors()];
            e[i] = 1;
            let gen = ug.element(&e);
            let val = chi_q.value(&self.qmap.project(&gen));
            // val is a root of unity whose order divides this factor's order
            let ord = ug.cyclic_orders()[i];
            let k = (0..ord)
                .find(|&k| super::number::CycloNumber::zeta_power(n, k * (n / ord)) == val)
                .expect("character value is a root of unity of dividing order");
            exps.push(k);
        }
        DirichletChar::from_character(&self.units, CharacterOfG::new(ug, exps))
    }

    /// Inertia subgroup at `ell` in `Gal(K/Q)`: the image of the units
    /// congruent to 1 outside the `ell`-part of `f`.
    pub fn inertia(&self, ell: u64) -> Subgroup {
        let f = self.modulus();
        let mut fpart = 1u64;
        let mut rest = f;
        while rest % ell == 0 {
            rest /= ell;
            fpart *= ell;
        }
        let gens: Vec<GroupElement> = self
            .units
            .residues()
            .into_iter()
            .filter(|&a| rest == 1 || a % rest == 1 % rest.max(1))
            .map(|a| self.units.dlog(a).unwrap())
            .collect();
        let in_units = Subgroup::from_generators(self.units.group(), &gens).unwrap();
        let proj_gens: Vec<GroupElement> = in_units
            .elements()
            .iter()
            .map(|e| self.qmap.project(e))
            .collect();
        let _ = fpart;
        Subgroup::from_generators(self.galois_group(), &proj_gens).unwrap()
    }

    /// Decomposition subgroup at a finite prime `ell` (inertia plus a
    /// Frobenius lift) or at infinity (complex conjugation).
    pub fn decomposition(&self, ell: u64) -> Subgroup {
        let f = self.modulus();
        let mut rest = f;
        while rest % ell == 0 {
            rest /= ell;
        }
        let inertia = self.inertia(ell);
        let mut gens: Vec<GroupElement> = inertia.generators().to_vec();
        // Frobenius lift: any unit congruent to ell mod the prime-to-ell part
        let frob_res = (0..)
            .map(|k| (ell % rest.max(1)) + k * rest.max(1))
            .find(|&a| a > 0 && num_integer::gcd(a % f.max(2), f.max(2)) == 1 && a % f.max(2) != 0)
            .map(|a| a % f.max(1));
        if let Some(a) = frob_res {
            if let Some(el) = self.units.dlog(a) {
                gens.push(self.qmap.project(&el));
            }
        }
        let mut all = inertia.elements().to_vec();
        all.extend(gens);
        Subgroup::from_generators(self.galois_group(), &all).unwrap()
    }

    /// Complex-conjugation subgroup (decomposition at infinity).
    pub fn decomposition_at_infinity(&self) -> Subgroup {
        let c = self.qmap.project(&self.units.minus_one());
        Subgroup::from_generators(self.galois_group(), &[c]).unwrap()
    }

    /// Ramification index of `ell` in `K`.
    pub fn ramification_index(&self, ell: u64) -> u64 {
        self.inertia(ell).order()
    }

    /// Residue degree of `ell` in `K`.
    pub fn residue_degree(&self, ell: u64) -> u64 {
        self.decomposition(ell).order() / self.inertia(ell).order()
    }

    /// Frobenius at an unramified prime `ell` (as a Galois element).
    pub fn frobenius(&self, ell: u64) -> Result<GroupElement> {
        if self.modulus() % ell == 0 && self.ramification_index(ell) > 1 {
            return Err(Error::BadInstance(format!("{ell} is ramified")));
        }
        // for ell | f but unramified in K, the Frobenius is the image of any
        // unit congruent to ell away from ell
        if self.modulus() % ell == 0 {
            let f = self.modulus();
            let mut rest = f;
            while rest % ell == 0 {
                rest /= ell;
            }
            let a = (0..)
                .map(|k| (ell % rest) + k * rest)
                .find(|&a| a > 0 && num_integer::gcd(a % f, f) == 1)
                .unwrap();
            return self.galois_of_residue(a % f);
        }
        self.galois_of_residue(ell % self.modulus())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_field_galois_group() {
        let k = AbelianFieldQ::quadratic(-23).unwrap();
        assert_eq!(k.degree(), 2);
        assert_eq!(k.conductor(), 23);
        assert!(!k.is_totally_real());
        // 2 is inert in Q(sqrt(-23))? chi_{-23}(2) = (-23 | 2) = (1 mod 8 -> +1)
        // -23 = 1 mod 8, so 2 splits: Frobenius trivial
        let fr2 = k.frobenius(2).unwrap();
        assert_eq!(fr2, k.galois_group().identity());
    }

    #[test]
    fn maximal_real_subfield() {
        let k = AbelianFieldQ::maximal_real(5);
        assert_eq!(k.degree(), 2);
        assert!(k.is_totally_real());
        // 5 is totally ramified in Q(sqrt 5)
        assert_eq!(k.ramification_index(5), 2);
        assert_eq!(k.residue_degree(5), 1);
    }

    #[test]
    fn full_cyclotomic_decomposition() {
        let k = AbelianFieldQ::full_cyclotomic(12);
        assert_eq!(k.degree(), 4);
        // 2 ramifies with e = 2 (inertia = units congruent to 1 mod 3)
        assert_eq!(k.ramification_index(2), 2);
        assert_eq!(k.ramification_index(3), 2);
        // 5 unramified: Frobenius = sigma_5 of order 2 (5^2 = 1 mod 12)
        let fr = k.frobenius(5).unwrap();
        assert_eq!(k.galois_group().element_order(&fr), 2);
        // 13 = 1 mod 12 splits completely
        let fr13 = k.frobenius(13).unwrap();
        assert_eq!(fr13, k.galois_group().identity());
    }

    #[test]
    fn biquadratic_structure() {
        // K = Q(sqrt(-3), sqrt(-7)) inside Q(mu_21)
        let k = AbelianFieldQ::biquadratic(-3, -7).unwrap();
        assert_eq!(k.degree(), 4);
        assert_eq!(k.conductor(), 21);
        // 7 splits in Q(sqrt(-3)) (7 = 1 mod 3) and ramifies in Q(sqrt(-7))
        assert_eq!(k.ramification_index(7), 2);
        assert_eq!(k.residue_degree(7), 1);
    }

    #[test]
    fn character_pullback_round_trip() {
        let k = AbelianFieldQ::quadratic(5).unwrap();
        let chars = k.characters();
        assert_eq!(chars.len(), 2);
        let quad = chars.iter().find(|c| !c.is_trivial()).unwrap();
        assert_eq!(quad.conductor(), 5);
        // matches the Kronecker symbol
        for a in 1..5u64 {
            let expect = crate::quadfield::kronecker_symbol(5, a as i64);
            let got = quad.value(k.units(), a);
            assert_eq!(got, super::super::number::CycloNumber::from_int(expect as i64));
        }
    }

    #[test]
    fn rank_formula_counts() {
        // K = Q(mu_5)^+, S = {inf, 5}: the trivial character has r = 1,
        // the quadratic has r = 1 (split archimedean place only)
        let k = AbelianFieldQ::maximal_real(5);
        let g_inf = k.decomposition_at_infinity();
        assert_eq!(g_inf.order(), 1);
        let d5 = k.decomposition(5);
        assert_eq!(d5.order(), 2);
    }
}
