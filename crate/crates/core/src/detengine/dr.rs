//! Two-variable machinery in `(y, z)`, stored as `x1 = y`, `x2 = z`.
//!
//! `D_r(n, y, z) = det_{0<=i,j<=r} ((y - i)^(n-j) (z + i)^j)` and the
//! rational functions `f_r(i, j)` produced by eliminating it column by
//! column:
//!
//! ```text
//! f_0(i, j)     = (z + i)^j
//! f_{r+1}(i, j) = f_r(i, j)                                              j <= r
//! f_{r+1}(i, j) = f_r(i, j) - ((y-i)/(y-r))^(j-r) f_r(i, r) f_r(r, j) / f_r(r, r)   j > r
//! ```

use std::collections::HashMap;

use num_bigint::BigUint;

use super::DetError;
use crate::numeric::{binomial_nonneg, factorial};
use crate::pcmatrix::{Matrix, PolyMatrix};
use crate::poly::{FactoredForm, MultiPoly, RationalFn};

/// `y - i`
fn y_minus(i: u32) -> MultiPoly {
    MultiPoly::linear(2, 0, -(i as i64))
}

/// `z + i`
fn z_plus(i: u32) -> MultiPoly {
    MultiPoly::linear(2, 1, i)
}

fn y_plus_z() -> MultiPoly {
    MultiPoly::sum_of_vars_plus(2, 0)
}

/// The `(r+1) x (r+1)` matrix `((y - i)^(n-j) (z + i)^j)`.
pub fn dr_matrix(r: u32, n: u32) -> Result<PolyMatrix, DetError> {
    if r > n {
        return Err(DetError::RExceedsN { r, n });
    }
    let dim = r as usize + 1;
    let entries = Matrix::from_fn(dim, |i, j| {
        let (i, j) = (i as u32, j as u32);
        &y_minus(i).pow(n - j) * &z_plus(i).pow(j)
    });
    Ok(PolyMatrix::new(2, entries)?)
}

/// `(y+z)^C(r+1,2) * prod_{i=0..r} (y-i)^(n-r) * prod_{i=1..r} i^(r-i+1)`
pub fn dr_closed(r: u32, n: u32) -> Result<FactoredForm, DetError> {
    if r > n {
        return Err(DetError::RExceedsN { r, n });
    }
    let mut f = FactoredForm::one(2);
    let e: BigUint = binomial_nonneg(r as u64 + 1, 2).to_biguint().expect("nonnegative");
    f.mul_base(y_plus_z(), e)?;
    for i in 0..=r {
        f.mul_base(y_minus(i), n - r)?;
    }
    for i in 1..=r {
        f.mul_base(MultiPoly::constant(2, i), r - i + 1)?;
    }
    Ok(f)
}

/// `f_r(r, r) = (y+z)^r r! / prod_{i=0..r-1} (y - i)`
pub fn fr_closed(r: u32) -> RationalFn {
    let num = y_plus_z().pow(r).scale(&factorial(r as u64));
    let den = (0..r).fold(MultiPoly::one(2), |acc, i| &acc * &y_minus(i));
    RationalFn::new(num, den).expect("product of nonzero linear factors")
}

/// Table of `f_r(i, j)` for `0 <= r <= rmax`, `0 <= i <= rmax`, `0 <= j <= jmax`.
#[derive(Clone, Debug)]
pub struct FRTable {
    rmax: u32,
    jmax: u32,
    values: HashMap<(u32, u32, u32), RationalFn>,
}

impl FRTable {
    pub fn rmax(&self) -> u32 {
        self.rmax
    }

    pub fn jmax(&self) -> u32 {
        self.jmax
    }

    /// `f_r(i, j)`
    pub fn get(&self, r: u32, i: u32, j: u32) -> Option<&RationalFn> {
        self.values.get(&(r, i, j))
    }

    /// Denominator factors that may appear: `y - i` and `y + z`.
    pub fn cancel_candidates(rmax: u32) -> Vec<MultiPoly> {
        let mut c: Vec<MultiPoly> = (0..=rmax).map(y_minus).collect();
        c.push(y_plus_z());
        c
    }
}

/// Runs the recurrence literally over rational functions. Common factors
/// `y - i` and `y + z` are cancelled after each step to keep sizes small;
/// this never changes a value.
pub fn fr_table(rmax: u32, jmax: u32) -> FRTable {
    let candidates = FRTable::cancel_candidates(rmax);
    let mut values = HashMap::new();
    for i in 0..=rmax {
        for j in 0..=jmax {
            values.insert((0, i, j), RationalFn::from_poly(z_plus(i).pow(j)));
        }
    }
    for r in 0..rmax {
        let pivot = values[&(r, r, r)].clone();
        for i in 0..=rmax {
            for j in 0..=jmax {
                let current = values[&(r, i, j)].clone();
                let next = if j <= r {
                    current
                } else {
                    let ratio = RationalFn::new(y_minus(i), y_minus(r)).expect("y - r is nonzero").pow(j - r);
                    let prod = values[&(r, i, r)].mul(&values[&(r, r, j)]);
                    let mut correction = ratio.mul(&prod).div(&pivot).expect("f_r(r,r) is nonzero");
                    correction.cancel(&candidates);
                    let mut v = current.sub(&correction);
                    v.cancel(&candidates);
                    v
                };
                values.insert((r + 1, i, j), next);
            }
        }
    }
    FRTable { rmax, jmax, values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detengine::{det_bareiss, det_cofactor};
    use num_bigint::BigInt;

    fn y() -> MultiPoly {
        MultiPoly::var(2, 0)
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn dr_matrix_examples() {
        let m = dr_matrix(1, 1).unwrap();
        let expected = Matrix::from_rows(vec![vec![y(), MultiPoly::var(2, 1)], vec![y_minus(1), z_plus(1)]]);
        assert_eq!(m.entries(), &expected);
        assert!(dr_matrix(0, 0).unwrap().get(0, 0).is_one());
        assert_eq!(dr_matrix(0, 3).unwrap().get(0, 0), &y().pow(3));
        assert_eq!(dr_matrix(2, 1).unwrap_err(), DetError::RExceedsN { r: 2, n: 1 });
    }

    #[test]
    fn dr_closed_examples() {
        assert_eq!(dr_closed(1, 1).unwrap().expand().unwrap(), y_plus_z());
        assert_eq!(det_cofactor(&dr_matrix(1, 1).unwrap()).unwrap(), y_plus_z());
        for n in 0..=4 {
            assert_eq!(dr_closed(0, n).unwrap().expand().unwrap(), y().pow(n));
        }
        let two = dr_closed(2, 2).unwrap();
        assert_eq!(two.to_string(), "2*(x1+x2)^3");
        assert_eq!(two.expand().unwrap(), det_cofactor(&dr_matrix(2, 2).unwrap()).unwrap());
    }

    #[test]
    fn dr_closed_matches_elimination() {
        for n in 0..=5 {
            for r in 0..=n {
                let det = det_bareiss(&dr_matrix(r, n).unwrap()).unwrap();
                assert_eq!(dr_closed(r, n).unwrap().expand().unwrap(), det, "r={r} n={n}");
            }
        }
    }

    #[test]
    fn fr_table_examples() {
        let t = fr_table(2, 4);
        assert!(t.get(0, 2, 1).unwrap().equals_poly(&z_plus(2)));
        let expected = RationalFn::new(y_plus_z(), y()).unwrap();
        assert!(t.get(1, 1, 1).unwrap().equals(&expected));
        for j in 2..=4 {
            assert!(t.get(2, 1, j).unwrap().is_zero());
        }
    }

    #[test]
    fn fr_closed_examples() {
        assert!(fr_closed(0).equals(&RationalFn::one(2)));
        let t = fr_table(2, 2);
        assert!(fr_closed(1).equals(t.get(1, 1, 1).unwrap()));
        let two = RationalFn::new(y_plus_z().pow(2).scale(&big(2)), &y() * &y_minus(1)).unwrap();
        assert!(fr_closed(2).equals(&two));
        assert!(fr_closed(2).equals(t.get(2, 2, 2).unwrap()));
    }

    #[test]
    fn fr_table_invariants() {
        let t = fr_table(4, 6);
        for r in 0..4 {
            for i in 0..=4 {
                for j in 0..=r {
                    let a = t.get(r + 1, i, j).unwrap();
                    let b = t.get(r, i, j).unwrap();
                    assert_eq!(a.num(), b.num());
                    assert_eq!(a.den(), b.den());
                }
            }
        }
        // denominators reduce to products of (y - i)
        for ((_, _, _), v) in t.values.iter() {
            let mut d = v.den().clone();
            for i in 0..=4 {
                while let Ok(q) = d.exact_div(&y_minus(i)) {
                    d = q;
                }
            }
            assert!(d.is_constant(), "denominator {} not a product of (y - i)", v.den());
        }
    }
}
