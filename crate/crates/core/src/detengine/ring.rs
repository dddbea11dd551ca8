use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{BareissStats, DetError};
use crate::pcmatrix::{Matrix, PolyMatrix};
use crate::poly::{MultiPoly, PolyError};

/// Integral-domain operations the engines need.
pub trait DetRing: Clone + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / other`, failing if the quotient is not in the ring.
    fn exact_div(&self, other: &Self) -> Result<Self, PolyError>;
    /// Size measure used by benchmarks (term count, or 1 for integers).
    fn size(&self) -> usize;
}

impl DetRing for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn exact_div(&self, other: &Self) -> Result<Self, PolyError> {
        if Zero::is_zero(other) {
            return Err(PolyError::DivisionByZero);
        }
        let (q, r) = self.div_rem(other);
        if !Zero::is_zero(&r) {
            return Err(PolyError::NotDivisible);
        }
        Ok(q)
    }

    fn size(&self) -> usize {
        1
    }
}

impl DetRing for MultiPoly {
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn exact_div(&self, other: &Self) -> Result<Self, PolyError> {
        MultiPoly::exact_div(self, other)
    }

    fn size(&self) -> usize {
        self.num_terms()
    }
}

/// A square matrix the engines can take a determinant of.
pub trait DetMatrix {
    type Value: DetRing;

    fn matrix(&self) -> &Matrix<Self::Value>;

    /// Multiplicative identity, returned for the `0 x 0` matrix.
    fn one(&self) -> Self::Value;

    /// A faster route to the same elimination, if the matrix type has one.
    fn accelerated_bareiss(&self) -> Option<Result<(Self::Value, BareissStats), DetError>> {
        None
    }
}

impl DetMatrix for Matrix<BigInt> {
    type Value = BigInt;

    fn matrix(&self) -> &Matrix<BigInt> {
        self
    }

    fn one(&self) -> BigInt {
        BigInt::from(1)
    }
}

impl DetMatrix for PolyMatrix {
    type Value = MultiPoly;

    fn matrix(&self) -> &Matrix<MultiPoly> {
        self.entries()
    }

    fn one(&self) -> MultiPoly {
        MultiPoly::one(self.nvars())
    }

    fn accelerated_bareiss(&self) -> Option<Result<(MultiPoly, BareissStats), DetError>> {
        super::modular::det_bareiss_modular(self)
    }
}
