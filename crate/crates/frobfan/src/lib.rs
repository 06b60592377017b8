//! Exact computational toolkit for characteristic-p singularity theory at
//! desk scale: multivariate polynomial arithmetic over prime fields, Fedder's
//! F-purity test, Frobenius pushforward decompositions of abelian quotient
//! singularities, fractional monomial modules over affine semigroups with
//! their endomorphism-ring tables, McKay-quiver constellations with King-type
//! stability, and the toric fans of G-Hilbert schemes and F-blowups of
//! surface singularities.
//!
//! Everything is exact: coefficients live in prime fields, lattice points are
//! integers (rational rays are stored in a scaled lattice), and every
//! enumeration is finite with a provable bound.

pub mod constellations;
pub mod error;
pub mod exec;
pub mod fblowup;
pub mod fiber;
pub mod fpure;
pub mod ghilb;
pub mod modp;
pub mod modules;
pub mod poly;
pub mod quotients;
pub mod semigroup;

pub use error::Error;

/// Crate result alias.
pub type Result<T> = std::result::Result<T, Error>;
