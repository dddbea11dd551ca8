//! Exact polynomial arithmetic: sparse multivariate polynomials over the
//! integers, rational functions, factored products, and their canonical
//! text and JSON forms.

mod factored;
mod json;
mod monomial;
mod multipoly;
mod ratfn;
mod text;

pub use factored::FactoredForm;
pub use json::{FactoredJson, PolyJson};
pub use monomial::Monomial;
pub use multipoly::MultiPoly;
pub use ratfn::RationalFn;
pub use text::{
    format_factored, format_factored_with, format_poly, format_poly_with, parse_factored, parse_poly, ParseError,
    VarStyle,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },
    #[error("evaluation point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not exactly divisible")]
    NotDivisible,
    #[error("factored-form base must be an integer or of total degree 1")]
    NonLinearBase,
    #[error("exponent too large to expand")]
    ExponentTooLarge,
}
