use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::{Monomial, PolyError};

/// Sparse multivariate polynomial with exact integer coefficients.
///
/// Terms are kept sorted in descending graded-lexicographic order with no
/// zero coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<(Monomial, BigInt)>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        MultiPoly { nvars, terms: vec![(Monomial::one(nvars), c)] }
    }

    /// The variable `x_{var+1}`.
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable index {var} out of range for {nvars} variables");
        MultiPoly { nvars, terms: vec![(Monomial::var_power(nvars, var, 1), BigInt::one())] }
    }

    /// `x_{var+1} + c`.
    pub fn linear(nvars: usize, var: usize, c: impl Into<BigInt>) -> Self {
        &Self::var(nvars, var) + &Self::constant(nvars, c)
    }

    /// `x1 + ... + x_nvars + c`.
    pub fn sum_of_vars_plus(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut terms: Vec<(Monomial, BigInt)> =
            (0..nvars).map(|j| (Monomial::var_power(nvars, j, 1), BigInt::one())).collect();
        let c = c.into();
        if !c.is_zero() {
            terms.push((Monomial::one(nvars), c));
        }
        Self::from_terms(nvars, terms)
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    ///
    /// Panics if a monomial has the wrong length.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial length does not match nvars");
            *acc.entry(m).or_insert_with(BigInt::zero) += c;
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        MultiPoly { nvars, terms }
    }

    fn from_map(nvars: usize, map: FxHashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<(Monomial, BigInt)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in descending graded-lexicographic order.
    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn leading_term(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    fn check_nvars(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VarCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_nvars(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_nvars(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_nvars(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        let sign = |c: &BigInt| if negate { -c } else { c.clone() };
        loop {
            match (a.peek(), b.peek()) {
                (Some((ma, ca)), Some((mb, cb))) => match ma.cmp(mb) {
                    std::cmp::Ordering::Greater => {
                        out.push((ma.clone(), ca.clone()));
                        a.next();
                    }
                    std::cmp::Ordering::Less => {
                        out.push((mb.clone(), sign(cb)));
                        b.next();
                    }
                    std::cmp::Ordering::Equal => {
                        let c = if negate { ca - cb } else { ca + cb };
                        if !c.is_zero() {
                            out.push((ma.clone(), c));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some((ma, ca)), None) => {
                    out.push((ma.clone(), ca.clone()));
                    a.next();
                }
                (None, Some((mb, cb))) => {
                    out.push((mb.clone(), sign(cb)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        MultiPoly { nvars: self.nvars, terms: out }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        let (small, large) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        acc.reserve(large.terms.len() * 2);
        for (ms, cs) in &small.terms {
            for (ml, cl) in &large.terms {
                let prod = cs * cl;
                match acc.entry(ms.mul(ml)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += prod,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        Self::from_map(self.nvars, acc)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    /// `self^e`, with `f^0 = 1` for every `f` including zero.
    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.nvars);
        if e == 0 {
            return result;
        }
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul_unchecked(&base);
        }
        result
    }

    pub fn eval(&self, point: &[BigInt]) -> Result<BigInt, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::PointLength { expected: self.nvars, got: point.len() });
        }
        // power tables per variable, up to the largest exponent used
        let mut maxe = vec![0u32; self.nvars];
        for (m, _) in &self.terms {
            for (mx, &e) in maxe.iter_mut().zip(m.exponents()) {
                *mx = (*mx).max(e);
            }
        }
        let powers: Vec<Vec<BigInt>> = point
            .iter()
            .zip(&maxe)
            .map(|(v, &mx)| {
                let mut row = Vec::with_capacity(mx as usize + 1);
                row.push(BigInt::one());
                for k in 1..=mx as usize {
                    let next = &row[k - 1] * v;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (j, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= &powers[j][e as usize];
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Quotient `q` with `self = q * divisor`, or `NotDivisible`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        self.check_nvars(divisor)?;
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        if let Some(c) = divisor.constant_value() {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, k) in &self.terms {
                let (q, r) = k.div_rem(&c);
                if !r.is_zero() {
                    return Err(PolyError::NotDivisible);
                }
                terms.push((m.clone(), q));
            }
            return Ok(MultiPoly { nvars: self.nvars, terms });
        }
        let (lm, lc) = divisor.terms[0].clone();
        let mut rem: BTreeMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.checked_div(&lm).ok_or(PolyError::NotDivisible)?;
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            for (dm, dc) in &divisor.terms[1..] {
                let key = qm.mul(dm);
                let delta = &qc * dc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quotient.push((qm, qc));
        }
        // quotient terms were produced in strictly descending order
        Ok(MultiPoly { nvars: self.nvars, terms: quotient })
    }

    /// Substitutes `x_j -> images[j]`. All images must share one variable count.
    pub fn compose(&self, images: &[MultiPoly], target_nvars: usize) -> Result<Self, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::PointLength { expected: self.nvars, got: images.len() });
        }
        for img in images {
            if img.nvars != target_nvars {
                return Err(PolyError::VarCountMismatch { left: target_nvars, right: img.nvars });
            }
        }
        let mut maxe = vec![0u32; self.nvars];
        for (m, _) in &self.terms {
            for (mx, &e) in maxe.iter_mut().zip(m.exponents()) {
                *mx = (*mx).max(e);
            }
        }
        let powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .zip(&maxe)
            .map(|(img, &mx)| {
                let mut row = vec![MultiPoly::one(target_nvars)];
                for k in 1..=mx as usize {
                    let next = row[k - 1].mul_unchecked(img);
                    row.push(next);
                }
                row
            })
            .collect();
        let mut total = MultiPoly::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target_nvars, c.clone());
            for (j, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul_unchecked(&powers[j][e as usize]);
                }
            }
            total = total.merge(&t, false);
        }
        Ok(total)
    }

    /// Replaces every variable `x_j` by `x_j + c`.
    pub fn shift_all_vars(&self, c: &BigInt) -> Self {
        if c.is_zero() || self.is_constant() {
            return self.clone();
        }
        let images: Vec<MultiPoly> = (0..self.nvars).map(|j| Self::linear(self.nvars, j, c.clone())).collect();
        self.compose(&images, self.nvars).expect("shift images are well-formed")
    }

    /// Views the polynomial inside a ring with `nvars >= self.nvars()`
    /// variables; the new variables are appended and unused.
    pub fn embed(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars, "cannot embed into fewer variables");
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps: Vec<u32> = m.exponents().to_vec();
                exps.resize(nvars, 0);
                (Monomial::from_exponents(exps), c.clone())
            })
            .collect::<Vec<_>>();
        // appending zero exponents preserves the order
        MultiPoly { nvars, terms }
    }

    /// Sets every variable equal to a single variable `x`.
    pub fn identify_vars(&self) -> Self {
        Self::from_terms(1, self.terms.iter().map(|(m, c)| (Monomial::from_exponents([m.degree()]), c.clone())))
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    /// Sign of the leading coefficient.
    pub fn leading_sign_negative(&self) -> bool {
        self.terms.first().is_some_and(|(_, c)| c.is_negative())
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    /// Panics on a variable-count mismatch; use `try_add` to handle it.
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("polynomial variable counts differ")
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("polynomial variable counts differ")
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("polynomial variable counts differ")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;

    fn neg(mut self) -> MultiPoly {
        for (_, c) in &mut self.terms {
            *c = -std::mem::take(c);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(nvars: usize, j: usize) -> MultiPoly {
        MultiPoly::var(nvars, j)
    }

    fn k(nvars: usize, c: i64) -> MultiPoly {
        MultiPoly::constant(nvars, c)
    }

    #[test]
    fn add_examples() {
        let x1 = x(1, 0);
        assert!((&x1 + &(-&x1)).is_zero());
        let lhs = &(&x(2, 0) + &k(2, 1)) + &(&x(2, 1) + &k(2, 1));
        assert_eq!(lhs, MultiPoly::sum_of_vars_plus(2, 2));
        let sq = &x1 * &x1;
        let s = &sq + &x1;
        assert_eq!(s.num_terms(), 2);
        assert_eq!(s.terms()[0].0.exponents(), &[2]);
    }

    #[test]
    fn mismatch_is_an_error() {
        assert_eq!(x(1, 0).try_add(&x(2, 0)), Err(PolyError::VarCountMismatch { left: 1, right: 2 }));
        assert!(x(1, 0).try_mul(&x(2, 0)).is_err());
    }

    #[test]
    fn mul_examples() {
        let x1 = x(1, 0);
        let p = &(&x1 + &k(1, 1)) * &(&x1 - &k(1, 1));
        assert_eq!(p, &(&x1 * &x1) - &k(1, 1));
        assert!((&p * &MultiPoly::zero(1)).is_zero());
        let s = &x(2, 0) + &x(2, 1);
        let sq = &s * &s;
        let expected = MultiPoly::from_terms(
            2,
            [
                (Monomial::from_exponents([2, 0]), BigInt::from(1)),
                (Monomial::from_exponents([1, 1]), BigInt::from(2)),
                (Monomial::from_exponents([0, 2]), BigInt::from(1)),
            ],
        );
        assert_eq!(sq, expected);
    }

    #[test]
    fn pow_examples() {
        let base = MultiPoly::linear(1, 0, 2);
        assert!(base.pow(0).is_one());
        assert!(MultiPoly::zero(1).pow(0).is_one());
        assert!(MultiPoly::zero(1).pow(3).is_zero());
        let sq = MultiPoly::linear(1, 0, 1).pow(2);
        let coeffs: Vec<i64> = sq.terms().iter().map(|(_, c)| c.try_into().unwrap()).collect();
        assert_eq!(coeffs, vec![1, 2, 1]);
        let cube = (&x(2, 0) + &x(2, 1)).pow(3);
        let coeffs: Vec<i64> = cube.terms().iter().map(|(_, c)| c.try_into().unwrap()).collect();
        assert_eq!(coeffs, vec![1, 3, 3, 1]);
    }

    #[test]
    fn eval_examples() {
        let f = MultiPoly::sum_of_vars_plus(2, 1);
        assert_eq!(f.eval(&[3.into(), 4.into()]).unwrap(), BigInt::from(8));
        assert_eq!(k(0, 1).eval(&[]).unwrap(), BigInt::from(1));
        let g = &(&x(1, 0) * &x(1, 0)) - &k(1, 1);
        assert_eq!(g.eval(&[(-1).into()]).unwrap(), BigInt::from(0));
        assert!(matches!(g.eval(&[]), Err(PolyError::PointLength { .. })));
    }

    #[test]
    fn exact_div_examples() {
        let x1 = x(1, 0);
        let f = &(&x1 * &x1) - &k(1, 1);
        assert_eq!(f.exact_div(&(&x1 - &k(1, 1))).unwrap(), &x1 + &k(1, 1));
        assert!(MultiPoly::zero(1).exact_div(&x1).unwrap().is_zero());
        let s = &x(2, 0) + &x(2, 1);
        assert_eq!((&s * &s).exact_div(&s).unwrap(), s);
        assert_eq!(f.exact_div(&(&x1 + &k(1, 2))), Err(PolyError::NotDivisible));
        assert_eq!(k(1, 3).exact_div(&k(1, 2)), Err(PolyError::NotDivisible));
        assert_eq!(f.exact_div(&MultiPoly::zero(1)), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn shift_examples() {
        let one = BigInt::from(1);
        let s = &x(2, 0) + &x(2, 1);
        assert_eq!(s.shift_all_vars(&one), MultiPoly::sum_of_vars_plus(2, 2));
        let x1 = x(1, 0);
        assert_eq!((&x1 * &x1).shift_all_vars(&one), MultiPoly::linear(1, 0, 1).pow(2));
        assert_eq!(k(3, 5).shift_all_vars(&BigInt::from(7)), k(3, 5));
    }

    #[test]
    fn identify_and_embed() {
        let s = MultiPoly::sum_of_vars_plus(3, 4);
        let u = s.identify_vars();
        assert_eq!(u, &MultiPoly::var(1, 0).scale(&BigInt::from(3)) + &k(1, 4));
        let e = MultiPoly::sum_of_vars_plus(2, 1).embed(3);
        assert_eq!(e.nvars(), 3);
        assert_eq!(e.eval(&[1.into(), 2.into(), 100.into()]).unwrap(), BigInt::from(4));
    }
}
