//! JSON forms. Coefficients and the factored constant are decimal strings;
//! factor exponents are JSON numbers, or decimal strings beyond `u64`.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{FactoredForm, Monomial, MultiPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub coeff: String,
}

/// `{"nvars": v, "terms": [{"exps": [...], "coeff": "<decimal>"}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExpJson {
    Small(u64),
    Big(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub base: PolyJson,
    pub exp: ExpJson,
}

/// `{"constant": "<decimal>", "factors": [{"base": <poly>, "exp": e}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredJson {
    pub nvars: usize,
    pub constant: String,
    pub factors: Vec<FactorJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JsonShapeError {
    #[error("invalid decimal {0:?}")]
    BadDecimal(String),
    #[error("term has {got} exponents, expected {expected}")]
    BadExponentCount { expected: usize, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl From<&MultiPoly> for PolyJson {
    fn from(p: &MultiPoly) -> Self {
        PolyJson {
            nvars: p.nvars(),
            terms: p
                .terms()
                .iter()
                .map(|(m, c)| TermJson { exps: m.exponents().to_vec(), coeff: c.to_string() })
                .collect(),
        }
    }
}

impl TryFrom<&PolyJson> for MultiPoly {
    type Error = JsonShapeError;

    fn try_from(j: &PolyJson) -> Result<Self, Self::Error> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.exps.len() != j.nvars {
                return Err(JsonShapeError::BadExponentCount { expected: j.nvars, got: t.exps.len() });
            }
            let c: BigInt = t.coeff.parse().map_err(|_| JsonShapeError::BadDecimal(t.coeff.clone()))?;
            terms.push((Monomial::from_exponents(t.exps.iter().copied()), c));
        }
        Ok(MultiPoly::from_terms(j.nvars, terms))
    }
}

impl From<&FactoredForm> for FactoredJson {
    fn from(f: &FactoredForm) -> Self {
        FactoredJson {
            nvars: f.nvars(),
            constant: f.constant().to_string(),
            factors: f
                .factors()
                .iter()
                .map(|(b, e)| FactorJson {
                    base: PolyJson::from(b),
                    exp: match e.to_u64() {
                        Some(v) => ExpJson::Small(v),
                        None => ExpJson::Big(e.to_string()),
                    },
                })
                .collect(),
        }
    }
}

impl TryFrom<&FactoredJson> for FactoredForm {
    type Error = JsonShapeError;

    fn try_from(j: &FactoredJson) -> Result<Self, Self::Error> {
        let constant: BigInt = j.constant.parse().map_err(|_| JsonShapeError::BadDecimal(j.constant.clone()))?;
        let mut out = FactoredForm::one(j.nvars);
        out.mul_integer(&constant);
        for f in &j.factors {
            let base = MultiPoly::try_from(&f.base)?;
            let exp = match &f.exp {
                ExpJson::Small(v) => BigUint::from(*v),
                ExpJson::Big(s) => s.parse().map_err(|_| JsonShapeError::BadDecimal(s.clone()))?,
            };
            out.mul_base(base, exp)?;
        }
        Ok(out)
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        MultiPoly::try_from(&j).map_err(serde::de::Error::custom)
    }
}

impl Serialize for FactoredForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FactoredJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FactoredForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = FactoredJson::deserialize(d)?;
        FactoredForm::try_from(&j).map_err(serde::de::Error::custom)
    }
}
