use rayon::prelude::*;

use super::{DetError, DetMatrix, DetRing};
use crate::poly::PolyError;

/// Largest entry size seen during an elimination.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BareissStats {
    pub peak_size: usize,
}

/// Fraction-free (Bareiss) elimination.
///
/// Each step replaces `a[i][j]` by `(a[k][k] a[i][j] - a[i][k] a[k][j]) / prev`
/// where `prev` is the previous pivot; the division is always exact. A
/// zero pivot is replaced by the first nonzero entry below it, flipping
/// the sign.
///
/// Polynomial matrices run the elimination in `Z_q[x]` for enough primes
/// and lift the result; see [`det_bareiss_integral`] for the same
/// recurrence carried out in `Z[x]`.
pub fn det_bareiss<M: DetMatrix>(m: &M) -> Result<M::Value, DetError> {
    det_bareiss_with_stats(m).map(|(d, _)| d)
}

pub fn det_bareiss_with_stats<M: DetMatrix>(m: &M) -> Result<(M::Value, BareissStats), DetError> {
    match m.accelerated_bareiss() {
        Some(result) => result,
        None => eliminate(m),
    }
}

/// Bareiss elimination performed directly over the entry ring.
pub fn det_bareiss_integral<M: DetMatrix>(m: &M) -> Result<M::Value, DetError> {
    eliminate(m).map(|(d, _)| d)
}

fn eliminate<M: DetMatrix>(m: &M) -> Result<(M::Value, BareissStats), DetError> {
    let src = m.matrix();
    let n = src.dim();
    let one = m.one();
    if n == 0 {
        return Ok((one, BareissStats::default()));
    }
    let mut rows: Vec<Vec<M::Value>> = src.rows().map(|r| r.to_vec()).collect();
    let mut stats = BareissStats { peak_size: rows.iter().flatten().map(DetRing::size).max().unwrap_or(0) };
    let mut negate = false;
    let mut prev = one;
    for k in 0..n - 1 {
        if rows[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !rows[i][k].is_zero()) else {
                return Ok((prev.sub(&prev), stats));
            };
            rows.swap(k, swap);
            negate = !negate;
        }
        let (top, rest) = rows.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        let prev_ref = &prev;
        let peak = rest
            .par_iter_mut()
            .map(|row| -> Result<usize, PolyError> {
                let lead = row[k].clone();
                let mut peak = 0;
                for j in k + 1..n {
                    let num = if lead.is_zero() {
                        pivot.mul(&row[j])
                    } else {
                        pivot.mul(&row[j]).sub(&lead.mul(&pivot_row[j]))
                    };
                    row[j] = num.exact_div(prev_ref)?;
                    peak = peak.max(row[j].size());
                }
                row[k] = lead.sub(&lead);
                Ok(peak)
            })
            .try_reduce(|| 0, |a, b| Ok(a.max(b)))
            .map_err(|e| match e {
                PolyError::NotDivisible => DetError::NotDivisible,
                other => DetError::Poly(other),
            })?;
        stats.peak_size = stats.peak_size.max(peak);
        prev = rows[k][k].clone();
    }
    let det = rows[n - 1][n - 1].clone();
    Ok((if negate { det.neg() } else { det }, stats))
}
