//! Exact verification of regular weak multiplier bimonoids in braided
//! categories of group-graded vector spaces.

pub mod base;
pub mod dsl;
pub mod field;
pub mod gen;
pub mod graded;
pub mod io;
pub mod linalg;
pub mod modules;
pub mod multiplier;
pub mod report;
pub mod structure;

pub use dsl::{Check, Environment, Equation, Expr, Frame};
pub use field::{Field, FieldSpec, Fp};
pub use graded::{BraidedContext, GradingGroup, Morphism, Obj, Side};
pub use linalg::ExactMatrix;
pub use report::Report;
pub use structure::{Duality, Rwmb, Semigroup};

/// Exact rationals.
pub type Q = num_rational::BigRational;
/// The prime field with seven elements.
pub type F7 = Fp<7>;
pub type QMatrix = ExactMatrix<Q>;
pub type F7Matrix = ExactMatrix<F7>;
