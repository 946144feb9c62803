//! Finite abelian groups as explicit products of cyclic groups, subgroup and
//! quotient machinery, and exact arithmetic in `R[G]` for `R` the integers,
//! rationals or cyclotomic rationals.

mod character;
mod element;
mod group;

pub use character::CharacterOfG;
pub use element::{Coefficient, GroupRingElement};
pub use group::{FiniteAbelianGroup, GroupElement, QuotientMap, Subgroup, SubgroupEmbedding};
