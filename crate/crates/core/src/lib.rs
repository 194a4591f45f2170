//! Computer algebra for canonical surface singularities in positive characteristic.
//!
//! * [`gfpoly`]: prime fields and sparse multivariate polynomials
//! * [`groebner`]: Buchberger's algorithm, normal forms, quotient dimensions
//! * [`catalog`]: ADE Dynkin data, classification by characteristic, equations
//! * [`invariants`]: `mu_n` and binary dihedral invariant rings in two variables
//! * [`tjurina`]: Tjurina dimensions, derivation checks, blow-up chart regularity
//! * [`lattice`]: Smith normal form, forms over `Z/m`, the K3 rank obstruction

pub mod catalog;
pub mod exec;
pub mod gfpoly;
pub mod groebner;
pub mod invariants;
pub mod lattice;
pub mod tjurina;

pub use exec::Exec;
