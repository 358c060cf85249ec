//! Exact computations for Hom-Lie-Yamaguti algebras: axiom checking,
//! Hom-cochain spaces, coboundary operators, cohomology, twisted derivations
//! and truncated one-parameter formal deformations, all over the rationals.

pub mod algebra;
pub mod coboundary;
pub mod cochain;
pub mod cohomology;
pub mod deformation;
pub mod derivations;
pub mod error;
pub mod exactlin;

pub use algebra::{Algebra, AxiomReport};
pub use error::{Error, Result};
pub use exactlin::{Matrix, Rational, Subspace, Vector};
