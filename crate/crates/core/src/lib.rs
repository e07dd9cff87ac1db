//! Exact computer algebra for the Cartan-Weyl bases of the exceptional Lie
//! algebras G2, F4 and E6, their regrouping into irreducible tensor bases
//! built on chains of commuting SO(3) subalgebras, and machine verification
//! of every commutation relation, Hermiticity phase and operator count the
//! construction claims.
//!
//! All arithmetic is exact: coefficients live in the real field of rationals
//! extended by square roots of square-free integers, so every check is a
//! zero-tolerance equality.

pub mod cartanweyl;
pub mod exactnum;
pub mod rootsystem;
pub mod so3;
pub mod tensorbasis;
pub mod verifier;

pub use cartanweyl::{AlgebraElement, CartanWeyl, StructureTable};
pub use exactnum::ExactReal;
pub use rootsystem::{Algebra, Root, RootSystem};
pub use so3::Half;
pub use tensorbasis::{TensorBasis, TensorOperator};
pub use verifier::VerificationReport;

/// Version tag embedded in every machine-readable export.
pub const SCHEMA_VERSION: u32 = 1;
