//! Block recursion over the last coordinate.
//!
//! Grouping compositions by `alpha_p` and eliminating column blocks leaves
//! a block-triangular matrix, so
//!
//! ```text
//! Delta(n, p, x) = prod_{r=0..n} Delta(n-r, p-1, x') * f_r(r,r)^C(n-r+p-2, p-2)
//! ```
//!
//! with `x'` the first `p - 1` variables and `f_r(r, r)` evaluated at
//! `y = s(x') + n`, `z = x_p`. The product is assembled in an exponent
//! ledger; the denominators `(s(x') + n - i)` must cancel completely.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use super::DetError;
use crate::comb::enumerate_weak;
use crate::numeric::binomial_nonneg;
use crate::poly::{format_poly_with, FactoredForm, MultiPoly, VarStyle};

/// Bases with signed exponents.
#[derive(Clone, Debug, Default)]
struct Ledger {
    nvars: usize,
    exps: HashMap<MultiPoly, BigInt>,
}

impl Ledger {
    fn new(nvars: usize) -> Self {
        Ledger { nvars, exps: HashMap::new() }
    }

    fn add(&mut self, base: MultiPoly, exp: impl Into<BigInt>) {
        let exp = exp.into();
        if exp.is_zero() {
            return;
        }
        if let Some(c) = base.constant_value() {
            if c == BigInt::from(1) {
                return;
            }
        }
        let slot = self.exps.entry(base).or_insert_with(BigInt::zero);
        *slot += exp;
    }

    fn absorb(&mut self, other: &Ledger, times: &BigInt) {
        for (b, e) in &other.exps {
            self.add(b.clone(), e * times);
        }
    }

    fn embed(&self, nvars: usize) -> Ledger {
        let mut out = Ledger::new(nvars);
        for (b, e) in &self.exps {
            out.add(b.embed(nvars), e.clone());
        }
        out
    }

    fn into_factored(self) -> Result<FactoredForm, DetError> {
        let mut f = FactoredForm::one(self.nvars);
        let mut entries: Vec<(MultiPoly, BigInt)> = self.exps.into_iter().filter(|(_, e)| !e.is_zero()).collect();
        entries.sort_by_key(|(b, _)| b.to_string());
        for (b, e) in entries {
            if e.is_negative() {
                return Err(DetError::ResidualDenominator {
                    base: format_poly_with(&b, VarStyle::Indexed, true),
                    exp: e.to_string(),
                });
            }
            let e: BigUint = e.to_biguint().expect("nonnegative");
            f.mul_base(b, e)?;
        }
        Ok(f)
    }
}

/// `f_r(r, r) = (y+z)^r r! / prod_{i<r} (y - i)` with `y = s(x') + n` and
/// `z = x_p`, as a ledger over `p` variables.
fn pivot_ledger(r: u32, n: u32, p: usize) -> Ledger {
    let mut l = Ledger::new(p);
    // y + z = s(x) + n
    l.add(MultiPoly::sum_of_vars_plus(p, n), r);
    for k in 2..=r {
        l.add(MultiPoly::constant(p, k), 1);
    }
    let head = MultiPoly::sum_of_vars_plus(p - 1, 0).embed(p);
    for i in 0..r {
        let base = &head + &MultiPoly::constant(p, n as i64 - i as i64);
        l.add(base, -1);
    }
    l
}

fn ledger(n: u32, p: usize) -> Ledger {
    let mut l = Ledger::new(p);
    match p {
        1 => l.add(MultiPoly::linear(1, 0, n), n),
        2 => {
            l.add(MultiPoly::sum_of_vars_plus(2, n), binomial_nonneg(n as u64 + 1, 2));
            for i in 1..=n {
                l.add(MultiPoly::constant(2, i), n - i + 1);
            }
        }
        _ => {
            let one = BigInt::from(1);
            for r in 0..=n {
                let block = ledger(n - r, p - 1).embed(p);
                l.absorb(&block, &one);
                let mult = binomial_nonneg((n - r) as u64 + p as u64 - 2, p as i64 - 2);
                l.absorb(&pivot_ledger(r, n, p), &mult);
            }
        }
    }
    l
}

/// Factored `Delta(n, p, x)` from the block recursion.
///
/// Fails with `ResidualDenominator` if any `(s(x') + c)` factor keeps a
/// negative exponent after all blocks are multiplied together.
pub fn det_recursive_factored(n: u32, p: usize) -> Result<FactoredForm, DetError> {
    assert!(p >= 1, "p must be positive");
    ledger(n, p).into_factored()
}

/// Proper compositions through the shift `alpha -> alpha - 1` onto weak
/// compositions of `n - p`: the block recursion for `n - p` at `x + 1`,
/// times `x + 1 + alpha` for every weak `alpha`, all in the exponent ledger.
pub fn det_recursive_factored_proper(n: u32, p: usize) -> Result<FactoredForm, DetError> {
    assert!(p >= 1, "p must be positive");
    if p as u64 > n as u64 {
        return Ok(FactoredForm::one(p));
    }
    let m = n - p as u32;
    let mut ledger = ledger(m, p);
    ledger.exps = ledger.exps.into_iter().map(|(b, e)| (b.shift_all_vars(&BigInt::from(1)), e)).collect();
    for alpha in enumerate_weak(m, p).expect("p >= 1").iter() {
        for (j, &a) in alpha.parts().iter().enumerate() {
            ledger.add(MultiPoly::linear(p, j, a + 1), BigInt::from(1));
        }
    }
    ledger.into_factored()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detengine::det_cofactor;
    use crate::numeric::binomial;
    use crate::pcmatrix::build_general;

    #[test]
    fn proper_through_the_shift() {
        use crate::closedform::delta_star_x;
        for n in 1..=6 {
            for p in 1..=n as usize {
                assert_eq!(det_recursive_factored_proper(n, p).unwrap(), delta_star_x(n, p), "({n},{p})");
            }
        }
        assert_eq!(det_recursive_factored_proper(2, 3).unwrap(), FactoredForm::one(3));
    }

    #[test]
    fn base_cases() {
        for n in 0..=5 {
            let f = det_recursive_factored(n, 1).unwrap();
            assert_eq!(f.expand().unwrap(), MultiPoly::linear(1, 0, n).pow(n));
        }
        for p in 1..=5 {
            assert_eq!(det_recursive_factored(0, p).unwrap(), FactoredForm::one(p));
        }
    }

    #[test]
    fn two_two_and_small_cases_against_cofactor() {
        assert_eq!(det_recursive_factored(2, 2).unwrap().to_string(), "2*(x1+x2+2)^3");
        for (n, p) in [(1, 3), (2, 3), (1, 4), (3, 3)] {
            let f = det_recursive_factored(n, p).unwrap();
            assert_eq!(f.expand().unwrap(), det_cofactor(&build_general(n, p)).unwrap(), "({n},{p})");
        }
    }

    #[test]
    fn telescoping_leaves_only_full_sums_and_integers() {
        for n in 0..=6u32 {
            for p in 1..=4usize {
                let f = det_recursive_factored(n, p).unwrap();
                let full = MultiPoly::sum_of_vars_plus(p, n);
                for (b, _) in f.factors() {
                    assert!(b.is_constant() || *b == full, "unexpected base {b} in ({n},{p})");
                }
                let count = binomial(n as i64 + p as i64 - 1, p as i64).unwrap();
                let e = f.exponent_of(&full);
                assert_eq!(BigInt::from(e), count, "({n},{p})");
            }
        }
    }

    #[test]
    fn residual_denominators_are_reported() {
        let mut l = Ledger::new(2);
        l.add(MultiPoly::linear(2, 0, 3), -1);
        match l.into_factored() {
            Err(DetError::ResidualDenominator { base, exp }) => {
                assert_eq!(base, "x1+3");
                assert_eq!(exp, "-1");
            }
            other => panic!("expected residual denominator, got {other:?}"),
        }
    }
}
