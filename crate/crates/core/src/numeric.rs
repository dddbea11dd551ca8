//! Exact integer combinatorics: factorials, binomials (including the
//! `(-1, -1)` corner), multinomials, and checks for the classical
//! summation identities used by the determinant formulas.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("binomial({a}, {b}): upper index must be nonnegative")]
    NegativeUpper { a: i64, b: i64 },
    #[error("binomial_ext({a}, {b}): upper index must be at least -1")]
    UpperBelowMinusOne { a: i64, b: i64 },
    #[error("multinomial: parts sum to {sum}, expected {m}")]
    PartsMismatch { m: u64, sum: u64 },
}

/// Value assigned to `C(-1, -1)`.
///
/// The closed forms for the integer determinants only agree with brute
/// force when this corner is 1. `Zero` exists so the mutation checks in
/// the verification harness can demonstrate that.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CornerConvention {
    #[default]
    One,
    Zero,
}

pub fn factorial(m: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=m {
        acc *= k;
    }
    acc
}

/// `C(a, b)` for `a >= 0`, zero outside `0 <= b <= a`.
pub fn binomial(a: i64, b: i64) -> Result<BigInt, NumericError> {
    if a < 0 {
        return Err(NumericError::NegativeUpper { a, b });
    }
    Ok(binomial_nonneg(a as u64, b))
}

/// Binomial with upper index in `u64`; no error path.
pub(crate) fn binomial_nonneg(a: u64, b: i64) -> BigInt {
    if b < 0 || b as u64 > a {
        return BigInt::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigInt::one();
    // acc stays integral: after step i it equals C(a - b + i, i)
    for i in 1..=b {
        acc *= a - b + i;
        acc /= i;
    }
    acc
}

pub fn binomial_ext(a: i64, b: i64) -> Result<BigInt, NumericError> {
    binomial_ext_with(a, b, CornerConvention::One)
}

pub fn binomial_ext_with(a: i64, b: i64, corner: CornerConvention) -> Result<BigInt, NumericError> {
    match a {
        a if a < -1 => Err(NumericError::UpperBelowMinusOne { a, b }),
        -1 if b == -1 => Ok(match corner {
            CornerConvention::One => BigInt::one(),
            CornerConvention::Zero => BigInt::zero(),
        }),
        -1 => Ok(BigInt::zero()),
        a => Ok(binomial_nonneg(a as u64, b)),
    }
}

pub fn multinomial(m: u64, parts: &[u64]) -> Result<BigInt, NumericError> {
    let sum: u64 = parts.iter().sum();
    if sum != m {
        return Err(NumericError::PartsMismatch { m, sum });
    }
    // product of binomials C(k_1, k_1) C(k_1 + k_2, k_2) ...
    let mut acc = BigInt::one();
    let mut running = 0u64;
    for &k in parts {
        running += k;
        acc *= binomial_nonneg(running, k as i64);
    }
    Ok(acc)
}

fn c(a: u64, b: i64) -> BigInt {
    binomial_nonneg(a, b)
}

/// Vandermonde convolution: `sum_k C(a, c+k) C(b, d-k) = C(a+b, c+d)`.
pub fn check_vandermonde(a: u64, b: u64, c_: u64, d: u64) -> bool {
    let (ci, di) = (c_ as i64, d as i64);
    // C(a, c+k) vanishes unless -c <= k <= a - c
    let lhs: BigInt = (-ci..=(a as i64 - ci)).map(|k| c(a, ci + k) * c(b, di - k)).sum();
    lhs == c(a + b, ci + di)
}

/// Parallel summation: `sum_{k<=n} C(a+k, a) = sum_{k<=n} C(a+k, k) = C(n+a+1, a+1)`.
pub fn check_parallel_sum(a: u64, n: u64) -> bool {
    let by_upper: BigInt = (0..=n).map(|k| c(a + k, a as i64)).sum();
    let by_lower: BigInt = (0..=n).map(|k| c(a + k, k as i64)).sum();
    let rhs = c(n + a + 1, a as i64 + 1);
    by_upper == rhs && by_lower == rhs
}

/// `sum_{r=1..n} r C(n+a-r, a) = C(n+a+1, a+2)`.
pub fn check_weighted_sum(n: u64, a: u64) -> bool {
    let lhs: BigInt = (1..=n).map(|r| c(n + a - r, a as i64) * r).sum();
    lhs == c(n + a + 1, a as i64 + 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), big(1));
        assert_eq!(factorial(5), big(120));
        let iterated: u64 = (1..=20u64).product();
        assert_eq!(iterated, 2432902008176640000);
        assert_eq!(factorial(20), BigInt::from(iterated));
    }

    #[test]
    fn binomial_values_and_out_of_range() {
        assert_eq!(binomial(5, 2).unwrap(), big(10));
        assert_eq!(binomial(3, -1).unwrap(), big(0));
        assert_eq!(binomial(4, 7).unwrap(), big(0));
        assert_eq!(binomial(0, 0).unwrap(), big(1));
        assert!(matches!(binomial(-1, 0), Err(NumericError::NegativeUpper { .. })));
    }

    #[test]
    fn binomial_ext_corner() {
        assert_eq!(binomial_ext(-1, -1).unwrap(), big(1));
        assert_eq!(binomial_ext(-1, 0).unwrap(), big(0));
        assert_eq!(binomial_ext(-1, -2).unwrap(), big(0));
        assert_eq!(binomial_ext(-1, 3).unwrap(), big(0));
        assert_eq!(binomial_ext(2, 1).unwrap(), big(2));
        assert!(binomial_ext(-2, -2).is_err());
        assert_eq!(binomial_ext_with(-1, -1, CornerConvention::Zero).unwrap(), big(0));
    }

    #[test]
    fn binomial_ext_agrees_with_binomial() {
        for a in 0..=20 {
            for b in -3..=23 {
                assert_eq!(binomial_ext(a, b).unwrap(), binomial(a, b).unwrap());
            }
        }
    }

    #[test]
    fn pascal_rule() {
        for a in 1..=30i64 {
            for b in 0..a {
                assert_eq!(binomial(a, b).unwrap() + binomial(a, b + 1).unwrap(), binomial(a + 1, b + 1).unwrap());
            }
        }
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(3, &[2, 1]).unwrap(), big(3));
        assert_eq!(multinomial(0, &[0, 0]).unwrap(), big(1));
        // 4! / (2! 1! 1!)
        assert_eq!(multinomial(4, &[2, 1, 1]).unwrap(), factorial(4) / big(2));
        assert_eq!(multinomial(4, &[2, 1, 1]).unwrap(), big(12));
        assert_eq!(multinomial(3, &[1, 1]), Err(NumericError::PartsMismatch { m: 3, sum: 2 }));
    }

    #[test]
    fn identity_examples() {
        assert!(check_vandermonde(3, 2, 1, 1));
        assert!(check_vandermonde(0, 0, 0, 0));
        assert!(check_vandermonde(5, 5, 0, 5));
        assert_eq!(binomial(10, 5).unwrap(), big(252));

        assert!(check_parallel_sum(2, 3));
        assert!(check_parallel_sum(0, 0));
        assert!(check_parallel_sum(4, 6));
        assert_eq!(binomial(11, 5).unwrap(), big(462));

        assert!(check_weighted_sum(3, 1));
        assert!(check_weighted_sum(1, 0));
        assert!(check_weighted_sum(5, 2));
        assert_eq!(binomial(8, 4).unwrap(), big(70));
    }

    #[test]
    fn identity_grids() {
        for a in 0..=10 {
            for b in 0..=10 {
                for c in 0..=10 {
                    for d in 0..=10 {
                        assert!(check_vandermonde(a, b, c, d), "{a} {b} {c} {d}");
                    }
                }
            }
        }
        for a in 0..=10 {
            for n in 0..=12 {
                assert!(check_parallel_sum(a, n));
            }
        }
        for n in 1..=12 {
            for a in 0..=10 {
                assert!(check_weighted_sum(n, a));
            }
        }
    }
}
