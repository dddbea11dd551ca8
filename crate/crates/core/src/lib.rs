//! Exact determinants of power-composition matrices.
//!
//! The matrices are indexed by compositions of `n` into `p` parts with
//! entries `(x + alpha)^beta = prod_j (x_j + alpha_j)^beta_j`. This crate
//! builds them, computes their determinants with several independent
//! engines, evaluates the closed-form factorizations, and cross-checks the
//! results.

pub mod closedform;
pub mod comb;
pub mod detengine;
pub mod numeric;
pub mod pcmatrix;
pub mod poly;
pub mod verify;

pub use comb::{Composition, CompositionList};
pub use pcmatrix::{IntMatrix, Matrix, PolyMatrix};
pub use poly::{FactoredForm, Monomial, MultiPoly, RationalFn};
