//! Literal column elimination on the power-composition matrix.
//!
//! Columns are grouped by `beta_p`. At step `r`, every column `beta` with
//! `beta_p = j > r` receives
//!
//! ```text
//! -C(j-r; gamma' - beta') f_r(r,j) / (f_r(r,r) (s(x') + n - r)^(j-r)) * col gamma
//! ```
//!
//! for each `gamma` with `gamma_p = r` and `gamma' >= beta'` componentwise.
//! The row `alpha` of the columns added together sums to
//! `(s(x') + n - alpha_p)^(j-r)` by the multinomial theorem, so block
//! `(i, j)` ends up as `S_ij * f_{r+1}(i, j)`: zero above the diagonal.

use super::{det_bareiss, fr_table, DetError};
use crate::comb::{enumerate_weak, Composition};
use crate::numeric::{binomial_nonneg, multinomial};
use crate::pcmatrix::{build_general, Matrix};
use crate::poly::{MultiPoly, RationalFn};

/// Largest `(n, p)` accepted by [`column_reduce`].
pub const COLUMN_REDUCE_MAX: (u32, usize) = (3, 3);

pub type RatMatrix = Matrix<RationalFn>;

#[derive(Clone, Debug)]
pub struct ColumnReduceReport {
    pub n: u32,
    pub p: usize,
    /// Sizes of the diagonal blocks, `r = 0..=n`.
    pub block_sizes: Vec<usize>,
    pub offdiag_zero: bool,
    /// Every diagonal block equals `S_rr` scaled by `f_r(r, r)`.
    pub diagonal_ok: bool,
    /// `det(M(n-r, p-1)) * f_r(r,r)^size` for each block.
    pub block_dets: Vec<RationalFn>,
    /// Product of `block_dets`.
    pub determinant: RationalFn,
}

/// `S(alpha', beta') = prod_{k<p} (x_k + alpha_k)^beta_k` in `p` variables.
fn head_entry(p: usize, alpha: &Composition, beta: &Composition) -> MultiPoly {
    let mut acc = MultiPoly::one(p);
    for k in 0..p - 1 {
        let e = beta.parts()[k];
        if e > 0 {
            acc = &acc * &MultiPoly::linear(p, k, alpha.parts()[k]).pow(e);
        }
    }
    acc
}

pub fn column_reduce(n: u32, p: usize) -> Result<(RatMatrix, ColumnReduceReport), DetError> {
    let (max_n, max_p) = COLUMN_REDUCE_MAX;
    if n > max_n || p > max_p || p < 2 {
        return Err(DetError::GuardViolation { n, p, max_n, max_p });
    }
    let comps = enumerate_weak(n, p).expect("p >= 2");
    let dim = comps.len();
    let general = build_general(n, p);
    let mut m: RatMatrix = general.entries().map(|e| RationalFn::from_poly(e.clone()));

    // f_r(i, j) at y = s(x') + n, z = x_p.
    let head = MultiPoly::sum_of_vars_plus(p - 1, 0).embed(p);
    let y = &head + &MultiPoly::constant(p, n);
    let z = MultiPoly::var(p, p - 1);
    let table = fr_table(n, n);
    let f = |r: u32, i: u32, j: u32| -> Result<RationalFn, DetError> {
        Ok(table.get(r, i, j).expect("within table").compose(&[y.clone(), z.clone()], p)?)
    };
    let mut candidates: Vec<MultiPoly> =
        (0..=n).map(|i| &head + &MultiPoly::constant(p, n as i64 - i as i64)).collect();
    candidates.push(MultiPoly::sum_of_vars_plus(p, n));

    for r in 0..n {
        let pivot = f(r, r, r)?;
        let gap = RationalFn::from_poly(&head + &MultiPoly::constant(p, (n - r) as i64));
        let gammas: Vec<usize> = (0..dim).filter(|&c| comps.items()[c].last() == r).collect();
        for b in 0..dim {
            let beta = &comps.items()[b];
            let j = beta.last();
            if j <= r {
                continue;
            }
            let base = f(r, r, j)?.div(&pivot)?.div(&gap.pow(j - r))?;
            for &g in &gammas {
                let gamma = &comps.items()[g];
                let diff: Option<Vec<u64>> =
                    gamma.head().iter().zip(beta.head()).map(|(&gk, &bk)| gk.checked_sub(bk).map(u64::from)).collect();
                let Some(diff) = diff else { continue };
                let coeff = multinomial((j - r) as u64, &diff).expect("parts sum to j - r");
                let mut mult = base.mul_poly(&MultiPoly::constant(p, coeff)).neg();
                mult.cancel(&candidates);
                for row in 0..dim {
                    let add = m.get(row, g).mul(&mult);
                    if add.is_zero() {
                        continue;
                    }
                    let mut v = m.get(row, b).add(&add);
                    v.cancel(&candidates);
                    m.set(row, b, v);
                }
            }
        }
    }

    // Block checks.
    let block_of = |i: usize| comps.items()[i].last();
    for row in 0..dim {
        for col in 0..dim {
            let (bi, bj) = (block_of(row), block_of(col));
            if bi < bj && !m.get(row, col).is_zero() {
                return Err(DetError::BlockNotZero { row_block: bi, col_block: bj });
            }
        }
    }
    let mut diagonal_ok = true;
    for row in 0..dim {
        for col in 0..dim {
            let r = block_of(row);
            if r != block_of(col) {
                continue;
            }
            let expected = f(r, r, r)?.mul_poly(&head_entry(p, &comps.items()[row], &comps.items()[col]));
            if !m.get(row, col).equals(&expected) {
                diagonal_ok = false;
            }
        }
    }

    let mut block_sizes = Vec::new();
    let mut block_dets = Vec::new();
    let mut determinant = RationalFn::one(p);
    for r in 0..=n {
        let size = binomial_nonneg((n - r) as u64 + p as u64 - 2, p as i64 - 2);
        let size: usize = size.try_into().expect("small block");
        block_sizes.push(size);
        let sub = det_bareiss(&build_general(n - r, p - 1))?.embed(p);
        let mut d = f(r, r, r)?.pow(size as u32).mul_poly(&sub);
        d.cancel(&candidates);
        determinant = determinant.mul(&d);
        determinant.cancel(&candidates);
        block_dets.push(d);
    }
    let report = ColumnReduceReport { n, p, block_sizes, offdiag_zero: true, diagonal_ok, block_dets, determinant };
    Ok((m, report))
}
