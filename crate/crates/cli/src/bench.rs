//! Timing table over a grid of `(n, p)`, one row per engine.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::det::{compute, Engine, Query, Vars};
use crate::error::CliError;

#[derive(Debug, Serialize)]
pub struct Row {
    pub n: u32,
    pub p: usize,
    pub dim: usize,
    pub engine: &'static str,
    pub milliseconds: String,
    #[serde(rename = "peak-term-count")]
    pub peak_term_count: usize,
}

pub struct BenchOptions {
    pub nmax: u32,
    pub pmax: usize,
    pub proper: bool,
    pub vars: Vars,
    pub engines: Vec<Engine>,
}

/// Runs cells one at a time so timings are not skewed by each other.
/// Every engine's value in a cell must agree with the first engine's.
pub fn run(opts: &BenchOptions) -> Result<Vec<Row>, CliError> {
    if opts.engines.is_empty() {
        return Err(CliError::Args("no engines selected".into()));
    }
    let mut rows = Vec::new();
    for n in 1..=opts.nmax {
        for p in 1..=opts.pmax {
            if opts.proper && p as u32 > n {
                continue;
            }
            let q = Query { n, p, proper: opts.proper, vars: opts.vars, at: None };
            let dim = q.matrix().dim();
            let nvars = if opts.vars == Vars::Univariate { 1 } else { p };
            let mut reference = None;
            for &engine in &opts.engines {
                let start = Instant::now();
                let out = compute(&q, engine)?;
                let ms = start.elapsed().as_secs_f64() * 1e3;
                let expanded = out.value.expanded(nvars)?;
                match &reference {
                    None => reference = Some(expanded),
                    Some(r) if *r != expanded => {
                        return Err(CliError::Invariant(format!("engines disagree at ({n}, {p}) on {}", engine.name())))
                    }
                    Some(_) => {}
                }
                let peak_term_count = match out.peak {
                    Some(peak) => peak,
                    None => out.value.term_count()?,
                };
                rows.push(Row { n, p, dim, engine: engine.name(), milliseconds: format!("{ms:.3}"), peak_term_count });
            }
        }
    }
    Ok(rows)
}

pub fn write_csv(rows: &[Row], out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(["n", "p", "dim", "engine", "milliseconds", "peak-term-count"])?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
