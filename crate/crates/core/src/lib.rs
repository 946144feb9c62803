//! starkit-core: exact arithmetic for integral group rings of finite abelian
//! groups and the number theory on top of it.
//!
//! The crate is organised in layers:
//!
//! - [`lattice`]: exact integer matrices, Hermite and Smith normal forms, and
//!   `G`-stable ideals of `Z[G]` represented as canonical integer lattices.
//! - [`groupring`]: finite abelian groups, subgroups and quotients, group-ring
//!   arithmetic over the integers, rationals or cyclotomic rationals, and
//!   characters.
//! - [`fitting`]: finitely presented `Z[G]`-modules, higher Fitting ideals,
//!   higher relative Fitting ideals and the transpose duality.
//! - [`exterior`]: exterior powers of `G`-lattices, Rubin lattices, and the
//!   norm/deflation maps between levels of a subgroup `H`.
//! - [`cyclo`]: cyclotomic fields, Dirichlet characters, exact `L`-values at
//!   `s = 0`, Stickelberger elements and cyclotomic units.
//! - [`quadfield`]: binary quadratic forms, class groups and ray class groups
//!   of quadratic fields, `S`-units, Hilbert symbols and local reciprocity.
//! - [`verify`]: end-to-end verifiers (Brumer-Stark, refined Darmon, Gross
//!   tori, Rubin-Stark recovery) producing structured reports.

pub mod cyclo;
pub mod error;
pub mod exterior;
pub mod fitting;
pub mod groupring;
pub mod lattice;
pub mod numeric;
pub mod quadfield;
pub mod verify;

pub use error::Error;
pub use groupring::{CharacterOfG, FiniteAbelianGroup, GroupElement, GroupRingElement, Subgroup};
pub use lattice::{GStableIdeal, HnfLattice, IntMatrix};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
