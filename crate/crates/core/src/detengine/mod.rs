//! Determinant engines.
//!
//! * [`det_cofactor`]: Laplace expansion, the brute-force oracle.
//! * [`det_bareiss`]: fraction-free elimination, the scalable engine; for
//!   polynomial matrices it runs modulo several primes and lifts.
//! * [`det_recursive_factored`]: block recursion over the last coordinate,
//!   producing a factored form by exponent bookkeeping.
//! * [`column_reduce`]: the literal column elimination behind that recursion.
//!
//! Plus the two-variable machinery the recursion rests on: the `D_r`
//! matrices with their closed form, and the `f_r` rational-function table.

mod bareiss;
mod cofactor;
mod colreduce;
mod dr;
mod modular;
mod recursive;
mod ring;

pub use bareiss::{det_bareiss, det_bareiss_integral, det_bareiss_with_stats, BareissStats};
pub use cofactor::{det_cofactor, COFACTOR_MAX_DIM};
pub use colreduce::{column_reduce, ColumnReduceReport, RatMatrix, COLUMN_REDUCE_MAX};
pub use dr::{dr_closed, dr_matrix, fr_closed, fr_table, FRTable};
pub use recursive::{det_recursive_factored, det_recursive_factored_proper};
pub use ring::{DetMatrix, DetRing};

use thiserror::Error;

use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetError {
    #[error("cofactor expansion limited to dimension {max}, got {dim}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("requires r <= n, got r = {r}, n = {n}")]
    RExceedsN { r: u32, n: u32 },
    #[error("column reduction limited to n <= {max_n}, p <= {max_p}; got ({n}, {p})")]
    GuardViolation { n: u32, p: usize, max_n: u32, max_p: usize },
    #[error("invariant violation: exact division failed during elimination")]
    NotDivisible,
    #[error("invariant violation: residual denominator base {base} with exponent {exp}")]
    ResidualDenominator { base: String, exp: String },
    #[error("invariant violation: off-diagonal block ({row_block}, {col_block}) is not zero")]
    BlockNotZero { row_block: u32, col_block: u32 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}
