use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{MultiPoly, PolyError};

/// Formal quotient of two polynomials.
///
/// No gcd normalization is performed; equality is decided by
/// cross-multiplication. [`RationalFn::cancel`] removes integer content and
/// any caller-supplied factors that divide both sides, which keeps sizes in
/// check for recurrences whose denominators are known products.
#[derive(Clone, Debug)]
pub struct RationalFn {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFn {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if num.nvars() != den.nvars() {
            return Err(PolyError::VarCountMismatch { left: num.nvars(), right: den.nvars() });
        }
        Ok(RationalFn { num, den })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.nvars());
        RationalFn { num: p, den }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::one(nvars))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cross-multiplication equality.
    pub fn equals(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Equality with a polynomial: `num == p * den`.
    pub fn equals_poly(&self, p: &MultiPoly) -> bool {
        self.num == p * &self.den
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let rhs_num = if negate { -&other.num } else { other.num.clone() };
        if self.is_zero() {
            return RationalFn { num: rhs_num, den: other.den.clone() };
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RationalFn { num: &self.num + &rhs_num, den: self.den.clone() };
        }
        // reuse a denominator that is a multiple of the other
        if let Ok(q) = self.den.exact_div(&other.den) {
            return RationalFn { num: &self.num + &(&rhs_num * &q), den: self.den.clone() };
        }
        if let Ok(q) = other.den.exact_div(&self.den) {
            return RationalFn { num: &(&self.num * &q) + &rhs_num, den: other.den.clone() };
        }
        RationalFn { num: &(&self.num * &other.den) + &(&rhs_num * &self.den), den: &self.den * &other.den }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFn { num: &self.num * &other.num, den: &self.den * &other.den }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        RationalFn { num: &self.num * p, den: self.den.clone() }
    }

    pub fn div(&self, other: &Self) -> Result<Self, PolyError> {
        if other.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(RationalFn { num: &self.num * &other.den, den: &self.den * &other.num })
    }

    pub fn neg(&self) -> Self {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFn { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Substitutes every variable by a polynomial image (see [`MultiPoly::compose`]).
    pub fn compose(&self, images: &[MultiPoly], target_nvars: usize) -> Result<Self, PolyError> {
        RationalFn::new(self.num.compose(images, target_nvars)?, self.den.compose(images, target_nvars)?)
    }

    /// Removes common integer content, makes the denominator's leading
    /// coefficient positive, and divides out each candidate factor as long
    /// as it divides both numerator and denominator.
    pub fn cancel(&mut self, candidates: &[MultiPoly]) {
        if self.num.is_zero() {
            self.den = MultiPoly::one(self.den.nvars());
            return;
        }
        for f in candidates {
            loop {
                let (Ok(n), Ok(d)) = (self.num.exact_div(f), self.den.exact_div(f)) else {
                    break;
                };
                self.num = n;
                self.den = d;
            }
        }
        let g = self.num.content().gcd(&self.den.content());
        let g = if self.den.leading_sign_negative() { -g } else { g };
        if !g.is_one() {
            let g = MultiPoly::constant(self.den.nvars(), g);
            self.num = self.num.exact_div(&g).expect("content divides numerator");
            self.den = self.den.exact_div(&g).expect("content divides denominator");
        }
    }

    /// The polynomial value if the denominator divides the numerator.
    pub fn to_poly(&self) -> Option<MultiPoly> {
        self.num.exact_div(&self.den).ok()
    }

    /// Exact value at an integer point, `None` if the denominator vanishes there.
    pub fn eval(&self, point: &[BigInt]) -> Result<Option<(BigInt, BigInt)>, PolyError> {
        let n = self.num.eval(point)?;
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Ok(None);
        }
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / &g, d / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Ok(Some((n, d)))
    }
}
