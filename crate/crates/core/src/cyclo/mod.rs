//! Cyclotomic fields, Dirichlet characters and exact L-values.

mod number;

pub use number::{cyclotomic_polynomial, euler_phi, CycloNumber, MAX_MODULUS};
