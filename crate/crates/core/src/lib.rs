//! Exact computation of non-abelian tensor squares, exterior squares, triple
//! tensor products and Schur multipliers of nilpotent Lie algebras over the
//! rationals.

pub mod catalog;
pub mod error;
pub mod exactlin;
pub mod liealg;
pub mod tensorcalc;
pub mod theorems;

pub use error::{Error, Result};
pub use exactlin::{Matrix, Scalar, Subspace};
pub use liealg::{Ideal, LieAlgebra, Morphism, StructureConstants};
