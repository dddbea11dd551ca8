//! Determinants by engine, variable mode and composition kind.

use clap::ValueEnum;
use compdet::closedform::{delta_bmx, delta_kx_univariate, delta_star_x};
use compdet::detengine::{det_bareiss_with_stats, det_cofactor, det_recursive_factored, det_recursive_factored_proper};
use compdet::pcmatrix::{build_general, build_proper, build_univariate, origin, specialize, Matrix};
use compdet::poly::{format_factored_with, format_poly_with, FactoredJson, PolyJson, VarStyle};
use compdet::{FactoredForm, MultiPoly, PolyMatrix};
use num_bigint::BigInt;
use serde_json::json;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Cofactor,
    Bareiss,
    Blocktri,
    Formula,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Cofactor => "cofactor",
            Engine::Bareiss => "bareiss",
            Engine::Blocktri => "blocktri",
            Engine::Formula => "formula",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Vars {
    #[default]
    General,
    Univariate,
    Zero,
}

/// What to compute: a matrix family and where (if anywhere) to evaluate it.
#[derive(Clone, Debug)]
pub struct Query {
    pub n: u32,
    pub p: usize,
    pub proper: bool,
    pub vars: Vars,
    pub at: Option<Vec<BigInt>>,
}

impl Query {
    pub fn integer(&self) -> bool {
        self.vars == Vars::Zero || self.at.is_some()
    }

    fn nvars(&self) -> usize {
        if self.vars == Vars::Univariate {
            1
        } else {
            self.p
        }
    }

    fn style(&self) -> VarStyle {
        if self.vars == Vars::Univariate {
            VarStyle::Single
        } else {
            VarStyle::Indexed
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.p == 0 {
            return Err(CliError::Args("p must be at least 1".into()));
        }
        if let Some(at) = &self.at {
            if self.vars == Vars::Zero {
                return Err(CliError::Args("--at cannot be combined with --vars zero".into()));
            }
            if at.len() != self.nvars() {
                return Err(CliError::Args(format!("--at needs {} values, got {}", self.nvars(), at.len())));
            }
        }
        Ok(())
    }

    pub fn matrix(&self) -> PolyMatrix {
        match (self.proper, self.vars) {
            (false, Vars::Univariate) => build_univariate(self.n, self.p),
            (false, _) => build_general(self.n, self.p),
            (true, Vars::Univariate) => identify(&build_proper(self.n, self.p)),
            (true, _) => build_proper(self.n, self.p),
        }
    }

    fn point(&self, m: &PolyMatrix) -> Vec<BigInt> {
        self.at.clone().unwrap_or_else(|| origin(m))
    }
}

fn identify(m: &PolyMatrix) -> PolyMatrix {
    let entries: Matrix<MultiPoly> = m.entries().map(|e| e.identify_vars());
    PolyMatrix::new(1, entries).expect("identified entries share one variable")
}

/// A determinant in whichever shape its engine produces.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Integer(BigInt),
    Poly(MultiPoly),
    Factored(FactoredForm),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Integer(_) => "integer",
            Value::Poly(_) => "polynomial",
            Value::Factored(_) => "factored",
        }
    }

    pub fn text(&self, style: VarStyle) -> String {
        match self {
            Value::Integer(v) => v.to_string(),
            Value::Poly(p) => format_poly_with(p, style, false),
            Value::Factored(f) => format_factored_with(f, style),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Value::Integer(v) => json!(v.to_string()),
            Value::Poly(p) => serde_json::to_value(PolyJson::from(p)).expect("serializable"),
            Value::Factored(f) => serde_json::to_value(FactoredJson::from(f)).expect("serializable"),
        }
    }

    /// Number of terms once fully expanded.
    pub fn term_count(&self) -> Result<usize, CliError> {
        Ok(match self {
            Value::Integer(v) => usize::from(*v != BigInt::from(0)),
            Value::Poly(p) => p.num_terms(),
            Value::Factored(f) => f.expand()?.num_terms(),
        })
    }

    /// The value as an expanded polynomial (integers as constants).
    pub fn expanded(&self, nvars: usize) -> Result<MultiPoly, CliError> {
        Ok(match self {
            Value::Integer(v) => MultiPoly::constant(nvars, v.clone()),
            Value::Poly(p) => p.clone(),
            Value::Factored(f) => f.expand()?,
        })
    }
}

/// Computed value plus the engine's peak intermediate size, when it has one.
pub struct Outcome {
    pub value: Value,
    pub peak: Option<usize>,
}

fn factored(q: &Query, engine: Engine) -> Result<FactoredForm, CliError> {
    let (n, p) = (q.n, q.p);
    let general = match (engine, q.proper) {
        (Engine::Formula, false) if q.vars == Vars::Univariate => return Ok(delta_kx_univariate(n, p)),
        (Engine::Formula, false) => delta_bmx(n, p),
        (Engine::Formula, true) => delta_star_x(n, p),
        (_, false) => det_recursive_factored(n, p)?,
        (_, true) => det_recursive_factored_proper(n, p)?,
    };
    Ok(if q.vars == Vars::Univariate { general.map_bases(1, |b| b.identify_vars())? } else { general })
}

pub fn compute(q: &Query, engine: Engine) -> Result<Outcome, CliError> {
    q.validate()?;
    match engine {
        Engine::Cofactor | Engine::Bareiss => {
            let m = q.matrix();
            if q.integer() {
                let point = q.point(&m);
                let numeric = specialize(&m, &point)?;
                let (v, peak) = match engine {
                    Engine::Cofactor => (det_cofactor(&numeric)?, None),
                    _ => {
                        let (v, stats) = det_bareiss_with_stats(&numeric)?;
                        (v, Some(stats.peak_size))
                    }
                };
                Ok(Outcome { value: Value::Integer(v), peak })
            } else {
                let (v, peak) = match engine {
                    Engine::Cofactor => (det_cofactor(&m)?, None),
                    _ => {
                        let (v, stats) = det_bareiss_with_stats(&m)?;
                        (v, Some(stats.peak_size))
                    }
                };
                Ok(Outcome { value: Value::Poly(v), peak })
            }
        }
        Engine::Blocktri | Engine::Formula => {
            let f = factored(q, engine)?;
            if q.integer() {
                let point = q.at.clone().unwrap_or_else(|| vec![BigInt::from(0); f.nvars()]);
                Ok(Outcome { value: Value::Integer(f.eval(&point)?), peak: None })
            } else {
                Ok(Outcome { value: Value::Factored(f), peak: None })
            }
        }
    }
}

pub fn render(q: &Query, engine: Engine, value: &Value, json_out: bool) -> String {
    if !json_out {
        return value.text(q.style());
    }
    let doc = json!({
        "n": q.n,
        "p": q.p,
        "proper": q.proper,
        "vars": match q.vars {
            Vars::General => "general",
            Vars::Univariate => "univariate",
            Vars::Zero => "zero",
        },
        "at": q.at.as_ref().map(|a| a.iter().map(ToString::to_string).collect::<Vec<_>>()),
        "engine": engine.name(),
        "kind": value.kind(),
        "text": value.text(q.style()),
        "value": value.json(),
    });
    serde_json::to_string_pretty(&doc).expect("serializable")
}
