//! Closed-form product formulas for the determinants, kept factored.
//!
//! Integer forms (`x = 0`): [`delta_bm`], [`delta_k`], [`delta_star_int`].
//! Symbolic forms: [`delta_bmx`] over `p` variables, [`delta_kx_univariate`]
//! over one, [`delta_star_x`] for proper compositions. Nothing here expands
//! unless asked.

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::Serialize;

use crate::comb::enumerate_weak;
use crate::numeric::{binomial_ext_with, binomial_nonneg, CornerConvention};
use crate::poly::{FactoredForm, MultiPoly};

fn exp(e: BigInt) -> BigUint {
    e.to_biguint().expect("exponents are nonnegative")
}

fn c(a: u64, b: i64) -> BigInt {
    binomial_nonneg(a, b)
}

fn c_ext(a: i64, b: i64, corner: CornerConvention) -> BigInt {
    binomial_ext_with(a, b, corner).expect("upper index >= -1")
}

fn int_base(nvars: usize, i: u32) -> MultiPoly {
    MultiPoly::constant(nvars, i)
}

fn push(f: &mut FactoredForm, base: MultiPoly, e: BigInt) {
    f.mul_base(base, exp(e)).expect("linear or integer base");
}

/// `prod_{k=1..min(n,p)} (n^C(n-1,k) prod_{i=1..n-k+1} i^((n-i+1) C(n-i-1,k-2)))^C(p,k)`
pub fn delta_bm(n: u32, p: usize) -> FactoredForm {
    delta_bm_with(n, p, CornerConvention::One)
}

pub fn delta_bm_with(n: u32, p: usize, corner: CornerConvention) -> FactoredForm {
    let mut f = FactoredForm::one(1);
    let (ni, pi) = (n as i64, p as i64);
    for k in 1..=ni.min(pi) {
        let outer = c(p as u64, k);
        push(&mut f, int_base(1, n), c(n as u64 - 1, k) * &outer);
        for i in 1..=ni - k + 1 {
            let e = (ni - i + 1) * c_ext(ni - i - 1, k - 2, corner) * &outer;
            push(&mut f, int_base(1, i as u32), e);
        }
    }
    f
}

/// `n^C(n+p-1,p) prod_{i=1..n} i^((n-i+1) C(n+p-i-1,p-2))`
pub fn delta_k(n: u32, p: usize) -> FactoredForm {
    let mut f = FactoredForm::one(1);
    let (n64, p64) = (n as u64, p as u64);
    push(&mut f, int_base(1, n), c(n64 + p64 - 1, p as i64));
    for i in 1..=n64 {
        push(&mut f, int_base(1, i as u32), (n64 - i + 1) * c(n64 + p64 - i - 1, p as i64 - 2));
    }
    f
}

/// Constant part shared by the symbolic forms:
/// `prod_{i=1..n} i^((p-1) C(n+p-i-1,p-1))`.
fn integer_tail(f: &mut FactoredForm, nvars: usize, n: u32, p: usize) {
    let (n64, p64) = (n as u64, p as u64);
    for i in 1..=n64 {
        push(f, int_base(nvars, i as u32), (p64 - 1) * c(n64 + p64 - i - 1, p as i64 - 1));
    }
}

/// `(p x + n)^C(n+p-1,p) * integer tail`, in the single variable `x`.
/// The linear base is kept as `p x + n`, without pulling out its content.
pub fn delta_kx_univariate(n: u32, p: usize) -> FactoredForm {
    let mut f = FactoredForm::one(1);
    let base = MultiPoly::from_terms(
        1,
        [
            (crate::poly::Monomial::var_power(1, 0, 1), BigInt::from(p)),
            (crate::poly::Monomial::one(1), BigInt::from(n)),
        ],
    );
    push(&mut f, base, c(n as u64 + p as u64 - 1, p as i64));
    integer_tail(&mut f, 1, n, p);
    f
}

/// `(s(x) + n)^C(n+p-1,p) * integer tail`, `s(x) = x1 + ... + xp`.
pub fn delta_bmx(n: u32, p: usize) -> FactoredForm {
    let mut f = FactoredForm::one(p);
    push(&mut f, MultiPoly::sum_of_vars_plus(p, n), c(n as u64 + p as u64 - 1, p as i64));
    integer_tail(&mut f, p, n, p);
    f
}

/// `n^C(n-1,p) prod_{i=1..n-p+1} i^((n-i+1) C(n-i-1,p-2))`; `1` when `p > n`.
pub fn delta_star_int(n: u32, p: usize) -> FactoredForm {
    delta_star_int_with(n, p, CornerConvention::One)
}

pub fn delta_star_int_with(n: u32, p: usize, corner: CornerConvention) -> FactoredForm {
    let mut f = FactoredForm::one(1);
    if p as u64 > n as u64 || n == 0 {
        return f;
    }
    let (ni, pi) = (n as i64, p as i64);
    push(&mut f, int_base(1, n), c(n as u64 - 1, pi));
    for i in 1..=ni - pi + 1 {
        push(&mut f, int_base(1, i as u32), (ni - i + 1) * c_ext(ni - i - 1, pi - 2, corner));
    }
    f
}

/// ```text
/// (s(x)+n)^C(n-1,p) prod_{i=1..n-p+1} prod_j (x_j+i)^C(n-i-1,p-2)
///                   prod_{i=1..n-p} i^((p-1) C(n-i-1,p-1))
/// ```
/// and `1` when `p > n`.
pub fn delta_star_x(n: u32, p: usize) -> FactoredForm {
    delta_star_x_with(n, p, CornerConvention::One)
}

pub fn delta_star_x_with(n: u32, p: usize, corner: CornerConvention) -> FactoredForm {
    let mut f = FactoredForm::one(p);
    if p as u64 > n as u64 || n == 0 {
        return f;
    }
    let (ni, pi) = (n as i64, p as i64);
    push(&mut f, MultiPoly::sum_of_vars_plus(p, n), c(n as u64 - 1, pi));
    for i in 1..=ni - pi + 1 {
        let e = c_ext(ni - i - 1, pi - 2, corner);
        for j in 0..p {
            push(&mut f, MultiPoly::linear(p, j, i), e.clone());
        }
    }
    for i in 1..=ni - pi {
        push(&mut f, int_base(p, i as u32), (pi - 1) * c((ni - i - 1) as u64, pi - 1));
    }
    f
}

/// `Delta(n-p, p, x+1) * prod_{alpha in C(n-p,p)} prod_j (x_j + 1 + alpha_j)`,
/// with the product enumerated term by term. Equals [`delta_star_x`].
pub fn proper_reduction_rhs(n: u32, p: usize) -> FactoredForm {
    if p as u64 > n as u64 || n == 0 {
        return FactoredForm::one(p);
    }
    let m = n - p as u32;
    let one = BigInt::from(1);
    let mut f = delta_bmx(m, p).map_bases(p, |b| b.shift_all_vars(&one)).expect("shifted linear bases stay linear");
    for alpha in enumerate_weak(m, p).expect("p >= 1").iter() {
        for (j, &a) in alpha.parts().iter().enumerate() {
            push(&mut f, MultiPoly::linear(p, j, a + 1), BigInt::from(1));
        }
    }
    f
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub nmax: u32,
    pub pmax: usize,
    pub checked: usize,
    /// Cells `(n, p)` where the two integer formulas disagree.
    pub mismatches: Vec<(u32, usize)>,
}

impl EquivalenceReport {
    pub fn all_equal(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares [`delta_bm`] with [`delta_k`] for `1 <= n <= nmax`,
/// `1 <= p <= pmax` by exact prime factorization of both values.
pub fn check_equivalence(nmax: u32, pmax: usize) -> EquivalenceReport {
    check_equivalence_with(nmax, pmax, CornerConvention::One)
}

pub fn check_equivalence_with(nmax: u32, pmax: usize, corner: CornerConvention) -> EquivalenceReport {
    let cells: Vec<(u32, usize)> = (1..=nmax).flat_map(|n| (1..=pmax).map(move |p| (n, p))).collect();
    let mismatches: Vec<(u32, usize)> = cells
        .par_iter()
        .filter(|&&(n, p)| {
            let a = delta_bm_with(n, p, corner);
            a.integer_value_eq(&delta_k(n, p)) != Some(true)
        })
        .copied()
        .collect();
    EquivalenceReport { nmax, pmax, checked: cells.len(), mismatches }
}

/// `(n-i+1) C(n+p-i-1, p-2) == (p-1) C(n+p-i-1, p-1)` for `1 <= i <= n`:
/// the integer exponents of `delta_k` and of the tail of `delta_bmx` agree.
pub fn exponent_coherence(n: u32, p: usize) -> bool {
    let (n64, p64) = (n as u64, p as u64);
    (1..=n64).all(|i| {
        let top = n64 + p64 - i - 1;
        (n64 - i + 1) * c(top, p as i64 - 2) == (p64 - 1) * c(top, p as i64 - 1)
    })
}
