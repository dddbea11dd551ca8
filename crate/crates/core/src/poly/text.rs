//! Canonical text form.
//!
//! Polynomials print in descending graded-lexicographic order with
//! variables `x1..xv` (`x` in univariate style): `x1^2 + 2*x1*x2 - 3`.
//! Factored forms print as `c*(base)^e*...` without spaces, for example
//! `2*(x1+x2+2)^3`.

use std::fmt::{self, Write as _};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::{FactoredForm, Monomial, MultiPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VarStyle {
    /// `x1, x2, ...`
    #[default]
    Indexed,
    /// `x` for a one-variable polynomial.
    Single,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

fn var_name(style: VarStyle, nvars: usize, j: usize) -> String {
    match style {
        VarStyle::Single if nvars == 1 => "x".to_string(),
        _ => format!("x{}", j + 1),
    }
}

fn write_monomial(out: &mut String, m: &Monomial, style: VarStyle) {
    let mut first = true;
    for (j, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(&var_name(style, m.nvars(), j));
        if e > 1 {
            write!(out, "^{e}").unwrap();
        }
    }
}

pub fn format_poly(p: &MultiPoly) -> String {
    format_poly_with(p, VarStyle::Indexed, false)
}

/// `compact` drops the spaces around `+` and `-`.
pub fn format_poly_with(p: &MultiPoly, style: VarStyle, compact: bool) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let (plus, minus) = if compact { ("+", "-") } else { (" + ", " - ") };
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        match (i, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(minus),
            (_, false) => out.push_str(plus),
        }
        let mag = c.magnitude();
        if m.is_one() {
            write!(out, "{mag}").unwrap();
        } else {
            if !mag.is_one() {
                write!(out, "{mag}*").unwrap();
            }
            write_monomial(&mut out, m, style);
        }
    }
    out
}

pub fn format_factored(f: &FactoredForm) -> String {
    format_factored_with(f, VarStyle::Indexed)
}

pub fn format_factored_with(f: &FactoredForm, style: VarStyle) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let negative = f.constant().is_negative();
    let mut parts: Vec<String> = Vec::with_capacity(f.factors().len());
    for (b, e) in f.factors() {
        let mut s = match b.constant_value() {
            Some(c) => c.to_string(),
            None => format!("({})", format_poly_with(b, style, true)),
        };
        if !e.is_one() {
            write!(s, "^{e}").unwrap();
        }
        parts.push(s);
    }
    let body = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(self))
    }
}

impl fmt::Display for FactoredForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_factored(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigUint),
    /// 1-based variable index; bare `x` is 1.
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, message: message.into() })
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        let start = i;
        match ch {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigUint = text[start..i].parse().expect("digits parse");
                out.push((start, Tok::Int(v)));
                continue;
            }
            b'x' => {
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let idx = if ds == i {
                    1
                } else {
                    match text[ds..i].parse::<usize>() {
                        Ok(0) | Err(_) => return err(start, "variable index must be a positive integer"),
                        Ok(k) => k,
                    }
                };
                out.push((start, Tok::Var(idx)));
                continue;
            }
            _ => return err(start, format!("unexpected character {:?}", ch as char)),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    nvars: usize,
}

impl Parser {
    fn new(text: &str, nvars: Option<usize>) -> Result<Self, ParseError> {
        let toks = tokenize(text)?;
        let max_var =
            toks.iter().filter_map(|(_, t)| if let Tok::Var(k) = t { Some(*k) } else { None }).max().unwrap_or(0);
        let nvars = match nvars {
            Some(v) => {
                if let Some((pos, _)) = toks.iter().find(|(_, t)| matches!(t, Tok::Var(k) if *k > v)) {
                    return err(*pos, format!("variable index exceeds {v} variables"));
                }
                v
            }
            None => max_var,
        };
        Ok(Parser { toks, at: 0, end: text.len(), nvars })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn exponent(&mut self) -> Result<Option<BigUint>, ParseError> {
        if !self.eat(&Tok::Caret) {
            return Ok(None);
        }
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = v.clone();
                self.at += 1;
                Ok(Some(v))
            }
            _ => err(self.pos(), "expected integer exponent"),
        }
    }

    fn small_exponent(&mut self) -> Result<u32, ParseError> {
        let pos = self.pos();
        match self.exponent()? {
            None => Ok(1),
            Some(e) => match e.to_u32() {
                Some(e) => Ok(e),
                None => err(pos, "exponent too large"),
            },
        }
    }

    /// coefficient-and-variables product
    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut coeff = BigInt::one();
        let mut exps = vec![0u32; self.nvars];
        loop {
            let pos = self.pos();
            match self.peek().cloned() {
                Some(Tok::Int(v)) => {
                    self.at += 1;
                    let e = self.small_exponent()?;
                    coeff *= BigInt::from(v).pow(e);
                }
                Some(Tok::Var(k)) => {
                    self.at += 1;
                    let e = self.small_exponent()?;
                    exps[k - 1] += e;
                }
                _ => return err(pos, "expected coefficient or variable"),
            }
            if !self.eat(&Tok::Star) {
                break;
            }
        }
        Ok(MultiPoly::from_terms(self.nvars, [(Monomial::from_exponents(exps), coeff)]))
    }

    fn poly(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = MultiPoly::zero(self.nvars);
        let mut negative = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        loop {
            let t = self.term()?;
            acc = if negative { &acc - &t } else { &acc + &t };
            negative = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.at += 1;
        }
        Ok(acc)
    }

    fn factored(&mut self) -> Result<FactoredForm, ParseError> {
        let mut out = FactoredForm::one(self.nvars);
        if self.eat(&Tok::Minus) {
            out.mul_integer(&BigInt::from(-1));
        }
        loop {
            let pos = self.pos();
            let base = match self.peek().cloned() {
                Some(Tok::Int(v)) => {
                    self.at += 1;
                    MultiPoly::constant(self.nvars, BigInt::from(v))
                }
                Some(Tok::Var(k)) => {
                    self.at += 1;
                    MultiPoly::var(self.nvars, k - 1)
                }
                Some(Tok::LParen) => {
                    self.at += 1;
                    let p = self.poly()?;
                    if !self.eat(&Tok::RParen) {
                        return err(self.pos(), "expected ')'");
                    }
                    p
                }
                _ => return err(pos, "expected factor"),
            };
            let exp = self.exponent()?.unwrap_or_else(BigUint::one);
            if let Err(e) = out.mul_base(base, exp) {
                return err(pos, e.to_string());
            }
            if !self.eat(&Tok::Star) {
                break;
            }
        }
        Ok(out)
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.at < self.toks.len() {
            return err(self.pos(), "unexpected trailing input");
        }
        Ok(())
    }
}

/// Parses canonical polynomial text. With `nvars = None` the variable
/// count is the largest index that appears (`x` counts as `x1`).
pub fn parse_poly(text: &str, nvars: Option<usize>) -> Result<MultiPoly, ParseError> {
    let mut p = Parser::new(text, nvars)?;
    if p.toks.is_empty() {
        return err(0, "empty input");
    }
    let out = p.poly()?;
    p.finish()?;
    Ok(out)
}

pub fn parse_factored(text: &str, nvars: Option<usize>) -> Result<FactoredForm, ParseError> {
    let mut p = Parser::new(text, nvars)?;
    if p.toks.is_empty() {
        return err(0, "empty input");
    }
    let out = p.factored()?;
    p.finish()?;
    if out.is_zero() {
        // normalise any "0*..." to the canonical zero form
        let mut z = FactoredForm::one(out.nvars());
        z.mul_integer(&BigInt::zero());
        return Ok(z);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_examples() {
        assert_eq!(format_poly(&MultiPoly::sum_of_vars_plus(2, 1)), "x1 + x2 + 1");
        assert_eq!(format_poly(&MultiPoly::zero(3)), "0");
        let x1 = MultiPoly::var(2, 0);
        let x2 = MultiPoly::var(2, 1);
        let p = &(&(&x1 * &x1) - &(&x1 * &x2).scale(&BigInt::from(2))) - &MultiPoly::constant(2, 3);
        assert_eq!(format_poly(&p), "x1^2 - 2*x1*x2 - 3");
        assert_eq!(format_poly(&-&x2), "-x2");
        let u = &MultiPoly::var(1, 0).scale(&BigInt::from(2)) + &MultiPoly::constant(1, 1);
        assert_eq!(format_poly_with(&u, VarStyle::Single, false), "2*x + 1");
    }

    #[test]
    fn factored_format_and_parse() {
        let f = parse_factored("2*(x1+x2+2)^3", None).unwrap();
        assert_eq!(f.nvars(), 2);
        assert_eq!(f.factors().len(), 2);
        assert_eq!(f.exponent_of(&MultiPoly::sum_of_vars_plus(2, 2)), BigUint::from(3u32));
        assert_eq!(format_factored(&f), "2*(x1+x2+2)^3");
        let g = parse_factored("(x1+x2+3)*(x1+1)*(x1+2)*(x2+1)*(x2+2)", None).unwrap();
        assert_eq!(format_factored(&g), "(x1+x2+3)*(x1+1)*(x1+2)*(x2+1)*(x2+2)");
        // non-canonical order is normalised
        let h = parse_factored("(x2+2) * (x1+1)^2 * 3 * 2^2", Some(2)).unwrap();
        assert_eq!(format_factored(&h), "2^2*3*(x1+1)^2*(x2+2)");
        assert_eq!(format_factored(&parse_factored("-1", Some(0)).unwrap()), "-1");
        assert_eq!(format_factored(&FactoredForm::one(2)), "1");
    }

    #[test]
    fn parse_examples() {
        let p = parse_poly("x1 + x2 + 1", None).unwrap();
        assert_eq!(p, MultiPoly::sum_of_vars_plus(2, 1));
        assert_eq!(parse_poly("0", Some(2)).unwrap(), MultiPoly::zero(2));
        let q = parse_poly("-3*x1^2*x2 + x2 - 7", None).unwrap();
        assert_eq!(format_poly(&q), "-3*x1^2*x2 + x2 - 7");
        assert_eq!(parse_poly("2*x + 1", None).unwrap().nvars(), 1);
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = parse_poly("x1 + * 2", None).unwrap_err();
        assert_eq!(e.pos, 5);
        let e = parse_poly("x1 + y", None).unwrap_err();
        assert_eq!(e.pos, 5);
        let e = parse_poly("x3", Some(2)).unwrap_err();
        assert_eq!(e.pos, 0);
        let e = parse_factored("(x1+1", None).unwrap_err();
        assert_eq!(e.pos, 5);
        assert!(parse_factored("(x1^2+1)", None).is_err());
        assert!(parse_poly("", None).is_err());
        assert!(parse_poly("x0", None).is_err());
    }
}
