use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{MultiPoly, PolyError};

/// `constant * prod base^exp` with integer bases `>= 2` and linear
/// polynomial bases.
///
/// Bases are pairwise distinct and sorted: integer bases ascending first,
/// then linear bases (larger leading monomials first, smaller constants
/// first). The constant is a unit (`1` or `-1`), or `0` for the zero form;
/// integer content is carried by integer bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredForm {
    nvars: usize,
    constant: BigInt,
    factors: Vec<(MultiPoly, BigUint)>,
}

fn base_cmp(a: &MultiPoly, b: &MultiPoly) -> Ordering {
    match (a.constant_value(), b.constant_value()) {
        (Some(x), Some(y)) => return x.cmp(&y),
        (Some(_), None) => return Ordering::Less,
        (None, Some(_)) => return Ordering::Greater,
        (None, None) => {}
    }
    for ((ma, ca), (mb, cb)) in a.terms().iter().zip(b.terms()) {
        // larger monomial first, then smaller coefficient first
        let ord = mb.cmp(ma).then_with(|| ca.cmp(cb));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    a.num_terms().cmp(&b.num_terms())
}

impl FactoredForm {
    pub fn one(nvars: usize) -> Self {
        FactoredForm { nvars, constant: BigInt::one(), factors: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn constant(&self) -> &BigInt {
        &self.constant
    }

    pub fn factors(&self) -> &[(MultiPoly, BigUint)] {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero()
    }

    /// Exponent of `base` in the form (zero when absent).
    pub fn exponent_of(&self, base: &MultiPoly) -> BigUint {
        self.factors.iter().find(|(b, _)| b == base).map(|(_, e)| e.clone()).unwrap_or_default()
    }

    /// Multiplies by `base^exp`, merging with an equal base.
    pub fn mul_base(&mut self, base: MultiPoly, exp: impl Into<BigUint>) -> Result<(), PolyError> {
        let exp = exp.into();
        if base.nvars() != self.nvars {
            return Err(PolyError::VarCountMismatch { left: self.nvars, right: base.nvars() });
        }
        if exp.is_zero() || self.is_zero() {
            return Ok(());
        }
        if let Some(c) = base.constant_value() {
            if c.is_zero() {
                self.constant = BigInt::zero();
                self.factors.clear();
                return Ok(());
            }
            if c.is_negative() && exp.is_odd() {
                self.constant = -std::mem::take(&mut self.constant);
            }
            let mag = c.abs();
            if mag.is_one() {
                return Ok(());
            }
            return self.insert(MultiPoly::constant(self.nvars, mag), exp);
        }
        if base.total_degree() != Some(1) {
            return Err(PolyError::NonLinearBase);
        }
        self.insert(base, exp)
    }

    fn insert(&mut self, base: MultiPoly, exp: BigUint) -> Result<(), PolyError> {
        match self.factors.binary_search_by(|(b, _)| base_cmp(b, &base)) {
            Ok(i) => self.factors[i].1 += exp,
            Err(i) => self.factors.insert(i, (base, exp)),
        }
        Ok(())
    }

    /// Multiplies by an integer, splitting its magnitude into a base.
    pub fn mul_integer(&mut self, c: &BigInt) {
        self.mul_base(MultiPoly::constant(self.nvars, c.clone()), 1u32).expect("constant bases are always accepted");
    }

    pub fn mul(&self, other: &FactoredForm) -> Result<FactoredForm, PolyError> {
        if other.nvars != self.nvars {
            return Err(PolyError::VarCountMismatch { left: self.nvars, right: other.nvars });
        }
        let mut out = self.clone();
        out.constant *= &other.constant;
        if out.constant.is_zero() {
            out.factors.clear();
            return Ok(out);
        }
        for (b, e) in &other.factors {
            out.insert(b.clone(), e.clone())?;
        }
        Ok(out)
    }

    /// Builds a form from `(base, exponent)` pairs.
    pub fn from_factors<I>(nvars: usize, factors: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (MultiPoly, BigUint)>,
    {
        let mut out = Self::one(nvars);
        for (b, e) in factors {
            out.mul_base(b, e)?;
        }
        Ok(out)
    }

    /// Applies `f` to every base and rebuilds the form, so bases that
    /// become equal are merged. `f` must map into `nvars` variables.
    pub fn map_bases<F>(&self, nvars: usize, mut f: F) -> Result<FactoredForm, PolyError>
    where
        F: FnMut(&MultiPoly) -> MultiPoly,
    {
        let mut out = FactoredForm { nvars, constant: self.constant.clone(), factors: Vec::new() };
        for (b, e) in &self.factors {
            out.mul_base(f(b), e.clone())?;
        }
        Ok(out)
    }

    fn exp_u32(e: &BigUint) -> Result<u32, PolyError> {
        e.to_u32().ok_or(PolyError::ExponentTooLarge)
    }

    /// The fully expanded product.
    pub fn expand(&self) -> Result<MultiPoly, PolyError> {
        let mut acc = MultiPoly::constant(self.nvars, self.constant.clone());
        if acc.is_zero() {
            return Ok(acc);
        }
        let mut ints = BigInt::one();
        for (b, e) in &self.factors {
            let e = Self::exp_u32(e)?;
            match b.constant_value() {
                Some(c) => ints *= c.pow(e),
                None => acc = &acc * &b.pow(e),
            }
        }
        Ok(acc.scale(&ints))
    }

    /// Value at an integer point, computed factor by factor.
    pub fn eval(&self, point: &[BigInt]) -> Result<BigInt, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::PointLength { expected: self.nvars, got: point.len() });
        }
        let mut acc = self.constant.clone();
        for (b, e) in &self.factors {
            let v = b.eval(point)?;
            acc *= v.pow(Self::exp_u32(e)?);
        }
        Ok(acc)
    }

    /// Prime factorization of the value of an integer-only form, as
    /// `(sign, prime -> exponent)`. Works without expanding, so it can
    /// compare values far too large to materialize.
    pub fn integer_signature(&self) -> Option<(Sign, BTreeMap<BigUint, BigUint>)> {
        if self.constant.is_zero() {
            return Some((Sign::NoSign, BTreeMap::new()));
        }
        let mut primes: BTreeMap<BigUint, BigUint> = BTreeMap::new();
        for (b, e) in &self.factors {
            let v = b.constant_value()?;
            for (prime, mult) in trial_factor(v.magnitude()) {
                *primes.entry(prime).or_default() += e * mult;
            }
        }
        Some((self.constant.sign(), primes))
    }

    /// Exact integer equality of two integer-only forms.
    pub fn integer_value_eq(&self, other: &FactoredForm) -> Option<bool> {
        Some(self.integer_signature()? == other.integer_signature()?)
    }

    /// Total degree of the expanded product.
    pub fn total_degree(&self) -> BigUint {
        self.factors.iter().filter(|(b, _)| !b.is_constant()).map(|(_, e)| e.clone()).sum()
    }
}

fn trial_factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out = Vec::new();
    let mut n = n.clone();
    let mut d = BigUint::from(2u32);
    while &d * &d <= n {
        let mut k = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            k += 1;
        }
        if k > 0 {
            out.push((d.clone(), k));
        }
        d += 1u32;
    }
    if n > BigUint::one() {
        out.push((n, 1));
    }
    out
}
