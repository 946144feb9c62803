//! Ideals of `Z[G]` as `G`-stable integer lattices in `Z^{|G|}`.
//!
//! Coordinates are group-ring coefficients indexed by the lexicographic
//! element enumeration. Ideals are always stored via the full `G`-orbit
//! closure of their generators, so membership and equality are decidable
//! lattice questions.

use super::{HnfLattice, IntMatrix};
use crate::error::Error;
use crate::groupring::{FiniteAbelianGroup, GroupRingElement};
use crate::Result;
use num_bigint::BigInt;

/// An ideal of `Z[G]` in canonical HNF-lattice form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GStableIdeal {
    group: FiniteAbelianGroup,
    lattice: HnfLattice,
}

impl GStableIdeal {
    /// The ideal generated by `gens`: the lattice spanned by all `g * gamma`.
    pub fn from_generators(
        group: &FiniteAbelianGroup,
        gens: &[GroupRingElement<BigInt>],
    ) -> Result<Self> {
        let n = group.order() as usize;
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for gamma in gens {
            if gamma.group() != group {
                return Err(Error::GroupMismatch(
                    "ideal generator in wrong group".into(),
                ));
            }
            for g in group.elements() {
                rows.push(gamma.translate(&g).coefficient_vector());
            }
        }
        let lattice = HnfLattice::from_rows(&IntMatrix::from_rows(rows, n));
        Ok(GStableIdeal {
            group: group.clone(),
            lattice,
        })
    }

    /// Zero ideal.
    pub fn zero(group: &FiniteAbelianGroup) -> Self {
        GStableIdeal {
            group: group.clone(),
            lattice: HnfLattice::zero(group.order() as usize),
        }
    }

    /// The unit ideal `Z[G]`.
    pub fn full(group: &FiniteAbelianGroup) -> Self {
        GStableIdeal {
            group: group.clone(),
            lattice: HnfLattice::full(group.order() as usize),
        }
    }

    /// Wraps an existing lattice, checking `G`-stability of the basis.
    pub fn from_lattice(group: &FiniteAbelianGroup, lattice: HnfLattice) -> Result<Self> {
        assert_eq!(lattice.ambient_dim(), group.order() as usize);
        let ideal = GStableIdeal {
            group: group.clone(),
            lattice,
        };
        if !ideal.is_g_stable() {
            return Err(Error::BadPresentation(
                "lattice is not closed under the G-action".into(),
            ));
        }
        Ok(ideal)
    }

    fn is_g_stable(&self) -> bool {
        for i in 0..self.lattice.basis().rows() {
            let b = GroupRingElement::from_coefficient_vector(
                &self.group,
                self.lattice.basis().row(i),
            );
            for gi in 0..self.group.num_factors() {
                let mut e = vec![0i64; self.group.num_factors()];
                e[gi] = 1;
                let shifted = b.translate(&self.group.element(&e));
                if !self.lattice.contains(&shifted.coefficient_vector()) {
                    return false;
                }
            }
        }
        true
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn lattice(&self) -> &HnfLattice {
        &self.lattice
    }

    pub fn is_zero(&self) -> bool {
        self.lattice.is_zero()
    }

    pub fn is_full(&self) -> bool {
        self.lattice.is_full()
    }

    /// Basis rows as group-ring elements.
    pub fn basis_elements(&self) -> Vec<GroupRingElement<BigInt>> {
        (0..self.lattice.basis().rows())
            .map(|i| {
                GroupRingElement::from_coefficient_vector(
                    &self.group,
                    self.lattice.basis().row(i),
                )
            })
            .collect()
    }

    pub fn contains(&self, x: &GroupRingElement<BigInt>) -> bool {
        assert_eq!(x.group(), &self.group, "membership in wrong group ring");
        self.lattice.contains(&x.coefficient_vector())
    }

    pub fn contains_ideal(&self, other: &GStableIdeal) -> bool {
        self.lattice.contains_lattice(&other.lattice)
    }

    pub fn sum(&self, other: &GStableIdeal) -> Result<GStableIdeal> {
        self.check_group(other)?;
        Ok(GStableIdeal {
            group: self.group.clone(),
            lattice: self.lattice.sum(&other.lattice),
        })
    }

    /// Ideal product: HNF of the pairwise products of basis elements.
    pub fn product(&self, other: &GStableIdeal) -> Result<GStableIdeal> {
        self.check_group(other)?;
        let a = self.basis_elements();
        let b = other.basis_elements();
        let n = self.group.order() as usize;
        let mut rows = Vec::with_capacity(a.len() * b.len());
        for x in &a {
            for y in &b {
                rows.push(x.mul(y)?.coefficient_vector());
            }
        }
        Ok(GStableIdeal {
            group: self.group.clone(),
            lattice: HnfLattice::from_rows(&IntMatrix::from_rows(rows, n)),
        })
    }

    pub fn intersect(&self, other: &GStableIdeal) -> Result<GStableIdeal> {
        self.check_group(other)?;
        Ok(GStableIdeal {
            group: self.group.clone(),
            lattice: self.lattice.intersect(&other.lattice),
        })
    }

    /// `I^k` (the unit ideal for `k = 0`).
    pub fn power(&self, k: u64) -> Result<GStableIdeal> {
        let mut acc = GStableIdeal::full(&self.group);
        for _ in 0..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Image under the `#` involution.
    pub fn sharp(&self) -> GStableIdeal {
        let rows: Vec<Vec<BigInt>> = self
            .basis_elements()
            .into_iter()
            .map(|b| b.sharp().coefficient_vector())
            .collect();
        GStableIdeal {
            group: self.group.clone(),
            lattice: HnfLattice::from_rows(&IntMatrix::from_rows(
                rows,
                self.group.order() as usize,
            )),
        }
    }

    /// Augmentation ideal `I(H) Z[G]` of a subgroup, as an ideal of `Z[G]`.
    pub fn augmentation_ideal(
        group: &FiniteAbelianGroup,
        subgroup: &crate::groupring::Subgroup,
    ) -> Result<GStableIdeal> {
        let one = GroupRingElement::one(group);
        let gens: Vec<GroupRingElement<BigInt>> = subgroup
            .elements()
            .iter()
            .map(|h| {
                GroupRingElement::monomial(group, h, BigInt::from(1))
                    .sub(&one)
                    .unwrap()
            })
            .collect();
        GStableIdeal::from_generators(group, &gens)
    }

    fn check_group(&self, other: &GStableIdeal) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch("ideal groups differ".into()));
        }
        Ok(())
    }
}
