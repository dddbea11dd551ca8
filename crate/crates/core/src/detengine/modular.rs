//! Symbolic determinants by Bareiss elimination at points modulo primes.
//!
//! The determinant has degree at most `D_j` in `x_j`, where `D_j` sums the
//! largest degree of `x_j` over the columns. For each prime `q` the matrix
//! is specialized at every point of the grid `prod_j 0..=D_j`, the
//! fraction-free recurrence runs over `Z_q`, and the values are turned
//! back into coefficients by Newton interpolation one variable at a time.
//! Enough primes are taken for their product to exceed twice the Hadamard
//! bound on the coefficients, so the Chinese-remainder lift is exact.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{BareissStats, DetError};
use crate::pcmatrix::PolyMatrix;
use crate::poly::{Monomial, MultiPoly};

/// Upper limit on `points * dim^3`; above it the caller eliminates in
/// `Z[x]` directly.
const MAX_WORK: f64 = 1e11;

/// Primes stay below `2^62` so Montgomery sums cannot overflow.
const PRIME_CEILING: u64 = 1 << 62;

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    a %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, q);
        }
        a = mul_mod(a, a, q);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, q: u64) -> u64 {
    pow_mod(a, q - 2, q)
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below [`PRIME_CEILING`], descending.
fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = PRIME_CEILING - 1;
    while out.len() < count {
        if is_prime(c) {
            out.push(c);
        }
        c -= 2;
    }
    out
}

/// Montgomery arithmetic modulo an odd `q < 2^62`, `R = 2^64`.
#[derive(Clone, Copy, Debug)]
struct Mont {
    q: u64,
    /// `-q^{-1} mod 2^64`
    qneg_inv: u64,
    /// `R^2 mod q`
    r2: u64,
}

impl Mont {
    fn new(q: u64) -> Self {
        let mut inv = 1u64;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(q.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % q as u128) as u64;
        Mont { q, qneg_inv: inv.wrapping_neg(), r2: mul_mod(r, r, q) }
    }

    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.qneg_inv);
        let u = ((t + m as u128 * self.q as u128) >> 64) as u64;
        if u >= self.q {
            u - self.q
        } else {
            u
        }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    /// Into Montgomery form.
    fn enter(&self, a: u64) -> u64 {
        self.mul(a % self.q, self.r2)
    }

    /// Back to a plain residue.
    fn leave(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = self.enter(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.q - 2)
    }
}

/// Evaluation grid `prod_j 0..=D_j`, variable 0 varying fastest.
#[derive(Clone, Debug)]
struct Grid {
    sizes: Vec<usize>,
    points: usize,
}

impl Grid {
    fn for_matrix(m: &PolyMatrix) -> Option<Grid> {
        let dim = m.dim();
        let sizes: Vec<usize> = (0..m.nvars())
            .map(|v| {
                let bound: usize = (0..dim)
                    .map(|col| {
                        (0..dim)
                            .flat_map(|row| m.get(row, col).terms().iter().map(move |(mono, _)| mono.exponents()[v]))
                            .max()
                            .unwrap_or(0) as usize
                    })
                    .sum();
                bound + 1
            })
            .collect();
        let points = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s))?;
        let work = points as f64 * (dim as f64).powi(3);
        (work <= MAX_WORK).then_some(Grid { sizes, points })
    }

    fn coords(&self, mut idx: usize, out: &mut [u64]) {
        for (c, &s) in out.iter_mut().zip(&self.sizes) {
            *c = (idx % s) as u64;
            idx /= s;
        }
    }
}

/// Matrix entries with coefficients in Montgomery form.
struct Entries {
    /// per entry: `(exponents, coefficient)`
    terms: Vec<Vec<(Vec<u32>, u64)>>,
    max_exp: Vec<u32>,
}

impl Entries {
    fn new(m: &PolyMatrix, mont: &Mont) -> Self {
        let qb = BigInt::from(mont.q);
        let mut max_exp = vec![0u32; m.nvars()];
        let terms = m
            .entries()
            .rows()
            .flatten()
            .map(|e| {
                e.terms()
                    .iter()
                    .map(|(mono, c)| {
                        for (mx, &x) in max_exp.iter_mut().zip(mono.exponents()) {
                            *mx = (*mx).max(x);
                        }
                        let r = c.mod_floor(&qb).to_u64().expect("reduced below q");
                        (mono.exponents().to_vec(), mont.enter(r))
                    })
                    .collect()
            })
            .collect();
        Entries { terms, max_exp }
    }
}

/// Bareiss recurrence over `Z_q` on a scratch matrix (Montgomery form).
fn bareiss_scalar(a: &mut [u64], dim: usize, mont: &Mont) -> u64 {
    let one = mont.enter(1);
    let mut prev_inv = one;
    let mut negate = false;
    for k in 0..dim.saturating_sub(1) {
        if a[k * dim + k] == 0 {
            let Some(swap) = (k + 1..dim).find(|&i| a[i * dim + k] != 0) else {
                return 0;
            };
            for j in 0..dim {
                a.swap(k * dim + j, swap * dim + j);
            }
            negate = !negate;
        }
        let pivot = a[k * dim + k];
        for i in k + 1..dim {
            let lead = a[i * dim + k];
            for j in k + 1..dim {
                let num = mont.sub(mont.mul(pivot, a[i * dim + j]), mont.mul(lead, a[k * dim + j]));
                a[i * dim + j] = mont.mul(num, prev_inv);
            }
            a[i * dim + k] = 0;
        }
        prev_inv = mont.inv(pivot);
    }
    let det = if dim == 0 { one } else { a[dim * dim - 1] };
    if negate {
        mont.sub(0, det)
    } else {
        det
    }
}

/// Coefficients of the polynomial of degree `< ys.len()` through the
/// points `(t, ys[t])`, `t = 0, 1, ...`, over `Z_q`; in place.
fn interpolate(ys: &mut [u64], q: u64) {
    let n = ys.len();
    // Newton divided differences on nodes 0..n
    for level in 1..n {
        let inv = inv_mod(level as u64, q);
        for i in (level..n).rev() {
            ys[i] = mul_mod((ys[i] + q - ys[i - 1]) % q, inv, q);
        }
    }
    // expand the Newton form: c(x) = dd[k] + (x - k) c(x), k descending
    let mut coeffs = vec![0u64; n];
    for k in (0..n).rev() {
        for d in (0..n).rev() {
            let shifted = if d > 0 { coeffs[d - 1] } else { 0 };
            let scaled = mul_mod(coeffs[d], k as u64 % q, q);
            coeffs[d] = (shifted + q - scaled) % q;
        }
        coeffs[0] = (coeffs[0] + ys[k]) % q;
    }
    ys.copy_from_slice(&coeffs);
}

/// Coefficients of the determinant modulo `q`, indexed like the grid.
fn det_mod(m: &PolyMatrix, grid: &Grid, q: u64) -> Vec<u64> {
    let mont = Mont::new(q);
    let dim = m.dim();
    let nvars = m.nvars();
    let entries = Entries::new(m, &mont);
    let one = mont.enter(1);
    let mut values = vec![0u64; grid.points];
    values.par_chunks_mut(1024).enumerate().for_each(|(chunk, out)| {
        let mut coords = vec![0u64; nvars];
        let mut powers: Vec<Vec<u64>> = entries.max_exp.iter().map(|&e| vec![0; e as usize + 1]).collect();
        let mut a = vec![0u64; dim * dim];
        for (offset, slot) in out.iter_mut().enumerate() {
            grid.coords(chunk * 1024 + offset, &mut coords);
            for (table, &t) in powers.iter_mut().zip(&coords) {
                let t = mont.enter(t);
                let mut acc = one;
                for p in table.iter_mut() {
                    *p = acc;
                    acc = mont.mul(acc, t);
                }
            }
            for (cell, terms) in a.iter_mut().zip(&entries.terms) {
                let mut v = 0;
                for (exps, c) in terms {
                    let mut term = *c;
                    for (table, &e) in powers.iter().zip(exps) {
                        if e > 0 {
                            term = mont.mul(term, table[e as usize]);
                        }
                    }
                    v = mont.add(v, term);
                }
                *cell = v;
            }
            *slot = mont.leave(bareiss_scalar(&mut a, dim, &mont));
        }
    });
    // one variable at a time, along lines of the grid
    let mut stride = 1;
    for &size in &grid.sizes {
        let block = stride * size;
        let mut line = vec![0u64; size];
        for start in (0..grid.points).step_by(block) {
            for inner in 0..stride {
                for (t, v) in line.iter_mut().enumerate() {
                    *v = values[start + inner + t * stride];
                }
                interpolate(&mut line, q);
                for (t, v) in line.iter().enumerate() {
                    values[start + inner + t * stride] = *v;
                }
            }
        }
        stride = block;
    }
    values
}

/// Square of the Hadamard bound `prod_i sqrt(sum_j |a_ij|_1^2)`, which
/// bounds every coefficient of the determinant: on the torus `|x_j| = 1`
/// each entry is at most its coefficient 1-norm.
fn hadamard_squared(m: &PolyMatrix) -> BigUint {
    let mut acc = BigUint::one();
    for row in m.entries().rows() {
        let mut s = BigUint::zero();
        for e in row {
            let norm: BigUint = e.terms().iter().map(|(_, c)| c.magnitude().clone()).sum();
            s += &norm * &norm;
        }
        acc *= s;
    }
    acc
}

/// Symbolic determinant by modular Bareiss, or `None` when the grid would
/// be too large.
pub(crate) fn det_bareiss_modular(m: &PolyMatrix) -> Option<Result<(MultiPoly, BareissStats), DetError>> {
    let nvars = m.nvars();
    if m.dim() == 0 {
        return Some(Ok((MultiPoly::one(nvars), BareissStats::default())));
    }
    let grid = Grid::for_matrix(m)?;
    // M > 2H  <=>  M^2 > 4 H^2
    let target = hadamard_squared(m) * 4u32;
    let candidates = primes(64);
    let mut count = 0;
    let mut modulus = BigUint::one();
    while &modulus * &modulus <= target {
        if count == candidates.len() {
            return None;
        }
        modulus *= candidates[count];
        count += 1;
    }
    Some(Ok(lift(m, &grid, &candidates[..count])))
}

fn lift(m: &PolyMatrix, grid: &Grid, chosen: &[u64]) -> (MultiPoly, BareissStats) {
    let images: Vec<Vec<u64>> = chosen.iter().map(|&q| det_mod(m, grid, q)).collect();
    let full: BigInt = chosen.iter().map(|&q| BigInt::from(q)).product();
    let half = &full >> 1;
    // Garner constants: inv(q_0 ... q_{k-1}) mod q_k
    let garner: Vec<u64> = chosen
        .iter()
        .enumerate()
        .map(|(k, &q)| {
            let prefix = chosen[..k].iter().fold(1u64, |acc, &p| mul_mod(acc, p % q, q));
            inv_mod(prefix, q)
        })
        .collect();
    let mut coords = vec![0u64; m.nvars()];
    let mut terms = Vec::new();
    for idx in 0..grid.points {
        if images.iter().all(|img| img[idx] == 0) {
            continue;
        }
        // x = r_0 + q_0 (t_1 + q_1 (t_2 + ...))
        let mut x = BigInt::zero();
        let mut modulus = BigInt::one();
        for (k, &q) in chosen.iter().enumerate() {
            let qb = BigInt::from(q);
            let xm = x.mod_floor(&qb).to_u64().expect("below q");
            let t = mul_mod((images[k][idx] + q - xm) % q, garner[k], q);
            x += &modulus * t;
            modulus *= q;
        }
        if x > half {
            x -= &full;
        }
        if !x.is_zero() {
            grid.coords(idx, &mut coords);
            terms.push((Monomial::from_exponents(coords.iter().map(|&c| c as u32)), x));
        }
    }
    let poly = MultiPoly::from_terms(m.nvars(), terms);
    let peak_size = poly.num_terms();
    (poly, BareissStats { peak_size })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detengine::det_bareiss_integral;
    use crate::pcmatrix::{build_general, build_proper, build_univariate, Matrix};

    #[test]
    fn interpolation_recovers_coefficients() {
        let q = 1_000_000_007;
        // 3 + 2t + 5t^3
        let mut ys: Vec<u64> = (0..5u64).map(|t| (3 + 2 * t + 5 * t * t * t) % q).collect();
        interpolate(&mut ys, q);
        assert_eq!(ys, vec![3, 2, 0, 5, 0]);
    }

    #[test]
    fn primes_and_montgomery() {
        let ps = primes(3);
        assert!(ps.iter().all(|&p| p < PRIME_CEILING && is_prime(p)));
        assert!(is_prime(1_000_000_007) && !is_prime(1_000_000_007 * 3));
        let q = ps[0];
        let mont = Mont::new(q);
        let (a, b) = (q - 5, 123_456_789_012_345u64);
        let prod = mont.leave(mont.mul(mont.enter(a), mont.enter(b)));
        assert_eq!(prod, mul_mod(a, b, q));
        let inv = mont.leave(mont.inv(mont.enter(b)));
        assert_eq!(mul_mod(inv, b, q), 1);
    }

    #[test]
    fn agrees_with_integral_elimination() {
        for n in 0..=3u32 {
            for p in 1..=3usize {
                let g = build_general(n, p);
                let (d, _) = det_bareiss_modular(&g).unwrap().unwrap();
                assert_eq!(d, det_bareiss_integral(&g).unwrap(), "({n},{p})");
                let u = build_univariate(n, p);
                assert_eq!(det_bareiss_modular(&u).unwrap().unwrap().0, det_bareiss_integral(&u).unwrap());
                if n >= 1 {
                    let pr = build_proper(n, p);
                    assert_eq!(det_bareiss_modular(&pr).unwrap().unwrap().0, det_bareiss_integral(&pr).unwrap());
                }
            }
        }
    }

    #[test]
    fn signs_zero_pivots_and_singular() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let z = MultiPoly::zero(2);
        let one = MultiPoly::one(2);
        let m = PolyMatrix::new(
            2,
            Matrix::from_rows(vec![
                vec![z.clone(), x.clone(), one.clone()],
                vec![y.clone(), z.clone(), z.clone()],
                vec![z.clone(), one.clone(), &x * &y],
            ]),
        )
        .unwrap();
        assert_eq!(det_bareiss_modular(&m).unwrap().unwrap().0, det_bareiss_integral(&m).unwrap());
        let s = PolyMatrix::new(2, Matrix::from_rows(vec![vec![x.clone(), y.clone()], vec![x.clone(), y.clone()]]))
            .unwrap();
        assert!(det_bareiss_modular(&s).unwrap().unwrap().0.is_zero());
        // large negative coefficients survive the symmetric lift
        let big = MultiPoly::constant(2, BigInt::from(-7).pow(40));
        let d = PolyMatrix::new(2, Matrix::from_rows(vec![vec![big.clone(), z.clone()], vec![z.clone(), x.clone()]]))
            .unwrap();
        assert_eq!(det_bareiss_modular(&d).unwrap().unwrap().0, &big * &x);
    }
}
