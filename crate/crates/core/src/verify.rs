//! Cross-checks between engines and closed forms, collected into reports.
//!
//! Every check is exact. Cells are computed independently (in parallel)
//! and sorted by `(n, p, check)`, so a report depends only on its inputs.

use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::closedform::{delta_bm_with, delta_bmx, delta_k, delta_star_int_with, delta_star_x, proper_reduction_rhs};
use crate::detengine::{
    column_reduce, det_bareiss, det_recursive_factored, dr_closed, dr_matrix, fr_closed, fr_table, DetError,
};
use crate::numeric::{check_parallel_sum, check_vandermonde, check_weighted_sum, CornerConvention};
use crate::pcmatrix::{build_general, build_proper, build_proper_integer, specialize, PolyMatrix};
use crate::poly::FactoredForm;

/// Largest matrix dimension accepted by [`grid_symbolic`].
pub const GRID_MAX_DIM: usize = 40;

/// Witness sides longer than this are cut and tagged with a hash.
pub const WITNESS_LIMIT: usize = 4096;

/// Random coordinates are drawn from `-COORD_RANGE..=COORD_RANGE`.
pub const COORD_RANGE: i64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("({n}, {p}) has dimension {dim}, above the symbolic grid limit {max}")]
    Guard { n: u32, p: usize, dim: usize, max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub n: u32,
    pub p: usize,
    pub check: String,
    pub status: Status,
    pub witness: Option<String>,
    pub ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct VerifyReport {
    pub cells: Vec<Cell>,
    pub pass: usize,
    pub fail: usize,
}

impl VerifyReport {
    pub fn from_cells(mut cells: Vec<Cell>) -> Self {
        cells.sort_by(|a, b| (a.n, a.p, &a.check).cmp(&(b.n, b.p, &b.check)));
        let fail = cells.iter().filter(|c| c.status == Status::Fail).count();
        VerifyReport { pass: cells.len() - fail, fail, cells }
    }

    pub fn merge(self, other: VerifyReport) -> Self {
        let mut cells = self.cells;
        cells.extend(other.cells);
        Self::from_cells(cells)
    }

    pub fn total(&self) -> usize {
        self.cells.len()
    }

    pub fn all_pass(&self) -> bool {
        self.fail == 0
    }

    /// `pass X/Y`
    pub fn summary(&self) -> String {
        format!("pass {}/{}", self.pass, self.total())
    }

    /// Drops the per-cell timings, leaving a report that is identical
    /// across runs.
    pub fn without_timings(mut self) -> Self {
        for c in &mut self.cells {
            c.ms = None;
        }
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn clip(side: &str) -> String {
    if side.chars().count() <= WITNESS_LIMIT {
        return side.to_string();
    }
    let head: String = side.chars().take(WITNESS_LIMIT).collect();
    let digest = Sha256::digest(side.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    format!("{head}... [{} chars, sha256 {hex}]", side.chars().count())
}

/// `left != right` witness with both sides in canonical text.
pub fn witness(left: &str, right: &str) -> String {
    format!("{} != {}", clip(left), clip(right))
}

fn timed(n: u32, p: usize, check: &str, f: impl FnOnce() -> Option<String>) -> Cell {
    let start = Instant::now();
    let w = f();
    Cell {
        n,
        p,
        check: check.to_string(),
        status: if w.is_none() { Status::Pass } else { Status::Fail },
        witness: w,
        ms: Some(start.elapsed().as_millis() as u64),
    }
}

fn compare<T: PartialEq + ToString>(left: &T, right: &T) -> Option<String> {
    (left != right).then(|| witness(&left.to_string(), &right.to_string()))
}

fn engine_error(e: DetError) -> Option<String> {
    Some(format!("engine error: {e}"))
}

fn matrix(n: u32, p: usize, proper: bool) -> PolyMatrix {
    if proper {
        build_proper(n, p)
    } else {
        build_general(n, p)
    }
}

fn closed_form(n: u32, p: usize, proper: bool) -> FactoredForm {
    if proper {
        delta_star_x(n, p)
    } else {
        delta_bmx(n, p)
    }
}

/// Dimension of the weak (or proper) matrix, computed without building it.
pub fn matrix_dim(n: u32, p: usize, proper: bool) -> usize {
    let (n, p) = (n as u64, p as u64);
    if proper {
        if p > n || p == 0 {
            return 0;
        }
        crate::numeric::binomial(n as i64 - 1, p as i64 - 1).map_or(0, |c| c.try_into().unwrap_or(usize::MAX))
    } else {
        crate::numeric::binomial((n + p - 1) as i64, p as i64 - 1).map_or(0, |c| c.try_into().unwrap_or(usize::MAX))
    }
}

/// The `(n, p)` pairs a grid covers: `0 <= n <= nmax` (`1 <= p <= n` when
/// proper), `1 <= p <= pmax`.
pub fn grid_cells(nmax: u32, pmax: usize, proper: bool) -> Vec<(u32, usize)> {
    let mut out = Vec::new();
    for n in 0..=nmax {
        for p in 1..=pmax {
            if proper && (n == 0 || p as u32 > n) {
                continue;
            }
            out.push((n, p));
        }
    }
    out
}

/// Symbolic check of one cell: Bareiss against the expanded closed form,
/// and the closed form against its independent derivation (block
/// recursion, or the shift to weak compositions when proper).
pub fn symbolic_cell(n: u32, p: usize, proper: bool) -> Cell {
    timed(n, p, "symbolic", || {
        let closed = closed_form(n, p, proper);
        let derived = if proper {
            proper_reduction_rhs(n, p)
        } else {
            match det_recursive_factored(n, p) {
                Ok(f) => f,
                Err(e) => return engine_error(e),
            }
        };
        if let Some(w) = compare(&derived, &closed) {
            return Some(w);
        }
        let det = match det_bareiss(&matrix(n, p, proper)) {
            Ok(d) => d,
            Err(e) => return engine_error(e),
        };
        match closed.expand() {
            Ok(expanded) => compare(&det, &expanded),
            Err(e) => Some(format!("expansion failed: {e}")),
        }
    })
}

pub fn grid_symbolic(nmax: u32, pmax: usize, proper: bool) -> Result<VerifyReport, VerifyError> {
    let cells = grid_cells(nmax, pmax, proper);
    for &(n, p) in &cells {
        let dim = matrix_dim(n, p, proper);
        if dim > GRID_MAX_DIM {
            return Err(VerifyError::Guard { n, p, dim, max: GRID_MAX_DIM });
        }
    }
    let cells = cells.par_iter().map(|&(n, p)| symbolic_cell(n, p, proper)).collect();
    Ok(VerifyReport::from_cells(cells))
}

/// Options for [`run_verify`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyOptions {
    pub nmax: u32,
    pub pmax: usize,
    pub proper: bool,
    /// Random integer points per cell; 0 disables them.
    pub points: usize,
    pub seed: u64,
}

/// Symbolic cells costing more than this (see [`symbolic_cost`]) are left
/// to random points when points are requested.
pub const SYMBOLIC_BUDGET: f64 = 1e9;

/// Work estimate for the symbolic determinant: interpolation grid size
/// times `dim^3`. Each variable's degree is at most the sum over columns
/// of `beta_j`, which is `n * dim / p` for weak and proper lists alike.
pub fn symbolic_cost(n: u32, p: usize, proper: bool) -> f64 {
    let dim = matrix_dim(n, p, proper) as f64;
    let per_var = n as f64 * dim / p as f64 + 1.0;
    per_var.powi(p as i32) * dim.powi(3)
}

/// The symbolic grid plus, when `points > 0`, random-point cells for every
/// `(n, p)` in range. With random points, cells above the dimension guard
/// or the symbolic budget are covered by points alone instead of being
/// rejected or run symbolically.
pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport, VerifyError> {
    let all = grid_cells(opts.nmax, opts.pmax, opts.proper);
    let mut symbolic = Vec::new();
    for &(n, p) in &all {
        let dim = matrix_dim(n, p, opts.proper);
        let affordable = opts.points == 0 || symbolic_cost(n, p, opts.proper) <= SYMBOLIC_BUDGET;
        if dim <= GRID_MAX_DIM && affordable {
            symbolic.push((n, p));
        } else if opts.points == 0 {
            return Err(VerifyError::Guard { n, p, dim, max: GRID_MAX_DIM });
        }
    }
    let mut cells: Vec<Cell> = symbolic.par_iter().map(|&(n, p)| symbolic_cell(n, p, opts.proper)).collect();
    if opts.points > 0 {
        let random: Vec<Vec<Cell>> =
            all.par_iter().map(|&(n, p)| random_point_check(n, p, opts.points, opts.seed, opts.proper).cells).collect();
        cells.extend(random.into_iter().flatten());
    }
    Ok(VerifyReport::from_cells(cells))
}

/// Points for one `(n, p)`: a ChaCha8 stream keyed by `seed`, with the
/// stream number derived from `(n, p)` so cells are independent.
pub fn random_points(n: u32, p: usize, count: usize, seed: u64) -> Vec<Vec<BigInt>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 32) | p as u64);
    (0..count).map(|_| (0..p).map(|_| BigInt::from(rng.random_range(-COORD_RANGE..=COORD_RANGE))).collect()).collect()
}

/// Compares integer Bareiss on the specialized matrix with the factored
/// closed form evaluated at `count` random points.
pub fn random_point_check(n: u32, p: usize, count: usize, seed: u64, proper: bool) -> VerifyReport {
    let points = random_points(n, p, count, seed);
    let m = matrix(n, p, proper);
    let closed = closed_form(n, p, proper);
    let cells = points
        .par_iter()
        .enumerate()
        .map(|(k, pt)| {
            timed(n, p, &format!("point-{k:02}"), || {
                let at = pt.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
                let numeric = match specialize(&m, pt) {
                    Ok(s) => s,
                    Err(e) => return Some(format!("at ({at}): {e}")),
                };
                let det = match det_bareiss(&numeric) {
                    Ok(d) => d,
                    Err(e) => return engine_error(e),
                };
                let value = match closed.eval(pt) {
                    Ok(v) => v,
                    Err(e) => return Some(format!("at ({at}): {e}")),
                };
                compare(&det, &value).map(|w| format!("at ({at}): {w}"))
            })
        })
        .collect();
    VerifyReport::from_cells(cells)
}

/// The fixed identity suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Vandermonde convolution and the two summation identities.
    Ci,
    /// Two-variable determinants `D_r` against their closed form.
    Xy,
    /// The `f_r` recurrence: vanishing entries and the pivot closed form.
    Rec,
    /// The two integer formulas, and the proper integer formula against
    /// brute force.
    Equiv,
    /// Literal column elimination.
    ColReduce,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Ci, Suite::Xy, Suite::Rec, Suite::Equiv, Suite::ColReduce];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ci => "ci",
            Suite::Xy => "xy",
            Suite::Rec => "rec",
            Suite::Equiv => "equiv",
            Suite::ColReduce => "colreduce",
        }
    }

    pub fn parse(s: &str) -> Option<Vec<Suite>> {
        if s == "all" {
            return Some(Self::ALL.to_vec());
        }
        Self::ALL.iter().copied().find(|x| x.name() == s).map(|x| vec![x])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOptions {
    pub suites: Vec<Suite>,
    /// Value of `C(-1, -1)` used by the integer formulas.
    pub corner: CornerConvention,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { suites: Suite::ALL.to_vec(), corner: CornerConvention::One }
    }
}

fn flag(ok: bool, what: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(what)
}

fn suite_ci() -> Vec<Cell> {
    let mut cells: Vec<Cell> = (0..=10u64)
        .into_par_iter()
        .map(|a| {
            timed(a as u32, 0, "vandermonde", || {
                let bad = (0..=10u64)
                    .flat_map(|b| (0..=10u64).flat_map(move |c| (0..=10u64).map(move |d| (b, c, d))))
                    .find(|&(b, c, d)| !check_vandermonde(a, b, c, d));
                bad.map(|(b, c, d)| format!("fails at a={a} b={b} c={c} d={d}"))
            })
        })
        .collect();
    cells.extend(
        (0..=10u64)
            .into_par_iter()
            .map(|a| {
                timed(a as u32, 0, "parallel-sum", || {
                    (0..=12u64).find(|&n| !check_parallel_sum(a, n)).map(|n| format!("fails at a={a} n={n}"))
                })
            })
            .collect::<Vec<_>>(),
    );
    cells.extend(
        (0..=12u64)
            .into_par_iter()
            .map(|n| {
                timed(n as u32, 0, "weighted-sum", || {
                    (0..=10u64).find(|&a| !check_weighted_sum(n, a)).map(|a| format!("fails at n={n} a={a}"))
                })
            })
            .collect::<Vec<_>>(),
    );
    cells
}

fn suite_xy() -> Vec<Cell> {
    let pairs: Vec<(u32, u32)> = (0..=5u32).flat_map(|n| (0..=n.min(4)).map(move |r| (n, r))).collect();
    pairs
        .par_iter()
        .map(|&(n, r)| {
            timed(n, r as usize, "dr-closed", || {
                let m = match dr_matrix(r, n) {
                    Ok(m) => m,
                    Err(e) => return engine_error(e),
                };
                let det = match det_bareiss(&m) {
                    Ok(d) => d,
                    Err(e) => return engine_error(e),
                };
                let closed = match dr_closed(r, n) {
                    Ok(c) => c,
                    Err(e) => return engine_error(e),
                };
                match closed.expand() {
                    Ok(c) => compare(&det, &c),
                    Err(e) => Some(format!("expansion failed: {e}")),
                }
            })
        })
        .collect()
}

fn suite_rec() -> Vec<Cell> {
    let table = fr_table(6, 8);
    let mut cells = Vec::new();
    for r in 0..=5u32 {
        for j in r + 1..=8 {
            cells.push(timed(r, j as usize, "fr-vanish", || {
                let v = table.get(r + 1, r, j).expect("in table");
                flag(v.is_zero(), || format!("f_{}({r},{j}) = ({}) / ({})", r + 1, v.num(), v.den()))
            }));
        }
    }
    for r in 0..=6u32 {
        cells.push(timed(r, r as usize, "fr-closed", || {
            let v = table.get(r, r, r).expect("in table");
            let c = fr_closed(r);
            flag(v.equals(&c), || {
                witness(&format!("({}) / ({})", v.num(), v.den()), &format!("({}) / ({})", c.num(), c.den()))
            })
        }));
    }
    cells
}

fn suite_equiv(corner: CornerConvention) -> Vec<Cell> {
    let pairs: Vec<(u32, usize)> = (1..=25u32).flat_map(|n| (1..=25usize).map(move |p| (n, p))).collect();
    let mut cells: Vec<Cell> = pairs
        .par_iter()
        .map(|&(n, p)| {
            timed(n, p, "bm-vs-k", || {
                let a = delta_bm_with(n, p, corner);
                let b = delta_k(n, p);
                flag(a.integer_value_eq(&b) == Some(true), || witness(&a.to_string(), &b.to_string()))
            })
        })
        .collect();
    let proper: Vec<(u32, usize)> = (1..=6u32).flat_map(|n| (1..=n as usize).map(move |p| (n, p))).collect();
    cells.extend(
        proper
            .par_iter()
            .map(|&(n, p)| {
                timed(n, p, "star-int", || {
                    let f = delta_star_int_with(n, p, corner);
                    let det = match det_bareiss(&build_proper_integer(n, p)) {
                        Ok(d) => d,
                        Err(e) => return engine_error(e),
                    };
                    match f.expand() {
                        Ok(v) => compare(&v.constant_value().expect("integer form"), &det),
                        Err(e) => Some(format!("expansion failed: {e}")),
                    }
                })
            })
            .collect::<Vec<_>>(),
    );
    cells
}

fn suite_colreduce() -> Vec<Cell> {
    [(1u32, 2usize), (2, 2), (2, 3), (3, 3)]
        .par_iter()
        .map(|&(n, p)| {
            timed(n, p, "colreduce", || {
                let (_, report) = match column_reduce(n, p) {
                    Ok(r) => r,
                    Err(e) => return engine_error(e),
                };
                if !report.offdiag_zero || !report.diagonal_ok {
                    return Some("diagonal blocks differ from S_rr * f_r(r,r)".to_string());
                }
                let det = match det_bareiss(&build_general(n, p)) {
                    Ok(d) => d,
                    Err(e) => return engine_error(e),
                };
                let prod = &report.determinant;
                flag(prod.equals_poly(&det), || {
                    witness(&format!("({}) / ({})", prod.num(), prod.den()), &det.to_string())
                })
            })
        })
        .collect()
}

pub fn identity_suite(options: &SuiteOptions) -> VerifyReport {
    let mut cells = Vec::new();
    for suite in &options.suites {
        cells.extend(match suite {
            Suite::Ci => suite_ci(),
            Suite::Xy => suite_xy(),
            Suite::Rec => suite_rec(),
            Suite::Equiv => suite_equiv(options.corner),
            Suite::ColReduce => suite_colreduce(),
        });
    }
    VerifyReport::from_cells(cells)
}
