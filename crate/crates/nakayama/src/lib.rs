//! Exact computations with Frobenius algebras over the rationals and finite
//! fields: Nakayama automorphisms, Jacobians of automorphisms, divergences of
//! derivations, Hochschild (co)homology and crossed products.

pub mod algebra;
pub mod calculus;
pub mod crossed;
pub mod field;
pub mod frobenius;
pub mod gallery;
pub mod group;
pub mod io;
pub mod hochschild;
pub mod linalg;
pub mod scalars;
pub mod sparse;
pub mod verify;

pub use field::{Field, FieldSpec, Gf, Q};

pub type RationalAlgebra = algebra::Algebra<Q>;
pub type FiniteAlgebra = algebra::Algebra<Gf>;
pub type RationalMatrix = linalg::Matrix<Q>;
pub type FiniteMatrix = linalg::Matrix<Gf>;
