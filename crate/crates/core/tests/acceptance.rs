//! Acceptance run: one PASS/FAIL line per criterion, each with its time limit.
//! Built with `harness = false` so the lines always reach stdout.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use compdet::closedform::{
    check_equivalence, delta_bm, delta_bmx, delta_k, delta_kx_univariate, delta_star_int, delta_star_x,
    proper_reduction_rhs,
};
use compdet::detengine::{
    column_reduce, det_bareiss, det_cofactor, det_recursive_factored, dr_closed, dr_matrix, fr_closed, fr_table,
};
use compdet::numeric::{check_parallel_sum, check_vandermonde, check_weighted_sum};
use compdet::pcmatrix::{build_general, build_integer, build_proper, build_univariate};
use compdet::verify::{random_point_check, run_verify, VerifyOptions};
use compdet::{FactoredForm, MultiPoly};
use num_bigint::BigInt;

type Outcome = Result<(), String>;

/// Name, time limit, check.
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn value(f: &FactoredForm) -> BigInt {
    f.expand().expect("expands").constant_value().expect("integer form")
}

fn brute_force_anchor() -> Outcome {
    let m = build_integer(2, 2);
    let sixteen = BigInt::from(16);
    let cof = det_cofactor(&m).map_err(|e| e.to_string())?;
    let bar = det_bareiss(&m).map_err(|e| e.to_string())?;
    let values = [cof, bar, value(&delta_bm(2, 2)), value(&delta_k(2, 2))];
    ensure(values.iter().all(|v| *v == sixteen), || format!("values {values:?}"))
}

fn integer_formulas_agree() -> Outcome {
    let report = check_equivalence(25, 25);
    ensure(report.checked == 625 && report.all_equal(), || format!("mismatches {:?}", report.mismatches))
}

fn general_symbolic() -> Outcome {
    let mut cells: Vec<(u32, usize)> = (0..=4).flat_map(|n| (1..=3).map(move |p| (n, p))).collect();
    cells.push((5, 3));
    for (n, p) in cells {
        let det = det_bareiss(&build_general(n, p)).map_err(|e| e.to_string())?;
        let closed = delta_bmx(n, p).expand().map_err(|e| e.to_string())?;
        ensure(det == closed, || format!("({n},{p}) differs"))?;
    }
    Ok(())
}

fn univariate() -> Outcome {
    for n in 1..=5 {
        for p in 1..=3 {
            let det = det_bareiss(&build_univariate(n, p)).map_err(|e| e.to_string())?;
            let closed = delta_kx_univariate(n, p).expand().map_err(|e| e.to_string())?;
            ensure(det == closed, || format!("elimination ({n},{p}) differs"))?;
        }
    }
    for n in 1..=6 {
        for p in 1..=4 {
            let identified = delta_bmx(n, p).map_bases(1, |b| b.identify_vars()).map_err(|e| e.to_string())?;
            ensure(identified == delta_kx_univariate(n, p), || format!("identified ({n},{p}) differs"))?;
        }
    }
    Ok(())
}

fn binomial_identities() -> Outcome {
    for a in 0..=10 {
        for b in 0..=10 {
            for c in 0..=10 {
                for d in 0..=10 {
                    ensure(check_vandermonde(a, b, c, d), || format!("convolution at {a},{b},{c},{d}"))?;
                }
            }
        }
    }
    for a in 0..=10 {
        for n in 0..=12 {
            ensure(check_parallel_sum(a, n), || format!("parallel sum at a={a} n={n}"))?;
            ensure(check_weighted_sum(n, a), || format!("weighted sum at n={n} a={a}"))?;
        }
    }
    Ok(())
}

fn two_variable_determinants() -> Outcome {
    for n in 0..=5 {
        for r in 0..=n {
            let det = det_bareiss(&dr_matrix(r, n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let closed = dr_closed(r, n).map_err(|e| e.to_string())?.expand().map_err(|e| e.to_string())?;
            ensure(det == closed, || format!("D_{r} at n={n} differs"))?;
        }
    }
    Ok(())
}

fn fr_recurrence() -> Outcome {
    let table = fr_table(6, 8);
    for r in 0..=5 {
        for j in r + 1..=8 {
            ensure(table.get(r + 1, r, j).expect("in table").is_zero(), || format!("f_{}({r},{j}) nonzero", r + 1))?;
        }
    }
    for r in 0..=6 {
        ensure(table.get(r, r, r).expect("in table").equals(&fr_closed(r)), || format!("f_{r}({r},{r}) differs"))?;
    }
    Ok(())
}

fn block_triangulation() -> Outcome {
    for (n, p) in [(1, 2), (2, 2), (2, 3), (3, 3)] {
        let (_, report) = column_reduce(n, p).map_err(|e| format!("({n},{p}): {e}"))?;
        ensure(report.offdiag_zero && report.diagonal_ok, || format!("({n},{p}) blocks"))?;
        let det = det_bareiss(&build_general(n, p)).map_err(|e| e.to_string())?;
        ensure(report.determinant.equals_poly(&det), || format!("({n},{p}) block product"))?;
    }
    Ok(())
}

fn recursion_telescopes() -> Outcome {
    for n in 0..=6 {
        for p in 1..=4 {
            let f = det_recursive_factored(n, p).map_err(|e| format!("({n},{p}): {e}"))?;
            ensure(f == delta_bmx(n, p), || format!("({n},{p}) differs"))?;
            let sum = MultiPoly::sum_of_vars_plus(p, n);
            let leftover = f.factors().iter().any(|(b, _)| !b.is_constant() && *b != sum);
            ensure(!leftover, || format!("({n},{p}) keeps a partial-sum base"))?;
        }
    }
    Ok(())
}

fn proper_compositions() -> Outcome {
    for n in 1..=6 {
        for p in 1..=n as usize {
            let det = det_bareiss(&build_proper(n, p)).map_err(|e| e.to_string())?;
            let closed = delta_star_x(n, p);
            ensure(closed.expand().map_err(|e| e.to_string())? == det, || format!("({n},{p}) elimination"))?;
            ensure(proper_reduction_rhs(n, p) == closed, || format!("({n},{p}) reduction"))?;
        }
    }
    ensure(value(&delta_star_int(3, 2)) == BigInt::from(12), || "delta_star_int(3,2) != 12".into())
}

fn large_random_points() -> Outcome {
    for (n, p) in [(6, 4), (7, 3)] {
        let report = random_point_check(n, p, 3, 42, false);
        ensure(report.total() == 3 && report.all_pass(), || format!("({n},{p}): {}", report.summary()))?;
    }
    Ok(())
}

fn deterministic_reports() -> Outcome {
    let opts = VerifyOptions { nmax: 4, pmax: 3, points: 2, seed: 7, ..Default::default() };
    let a = run_verify(&opts).map_err(|e| e.to_string())?.without_timings().to_json();
    let b = run_verify(&opts).map_err(|e| e.to_string())?.without_timings().to_json();
    ensure(a == b, || "reports differ".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("brute-force 3x3 anchor equals 16", Duration::from_secs(1), brute_force_anchor),
        ("integer formulas agree on 25x25", Duration::from_secs(30), integer_formulas_agree),
        ("symbolic closed form, n<=4 p<=3 and (5,3)", Duration::from_secs(300), general_symbolic),
        ("univariate closed form", Duration::from_secs(120), univariate),
        ("binomial identities", Duration::from_secs(5), binomial_identities),
        ("two-variable determinants D_r", Duration::from_secs(30), two_variable_determinants),
        ("f_r recurrence vanishing and pivots", Duration::from_secs(30), fr_recurrence),
        ("column elimination block structure", Duration::from_secs(180), block_triangulation),
        ("block recursion telescopes", Duration::from_secs(10), recursion_telescopes),
        ("proper compositions", Duration::from_secs(120), proper_compositions),
        ("random points at dim 84 and 36", Duration::from_secs(120), large_random_points),
        ("verify reports are byte-identical", Duration::from_secs(300), deterministic_reports),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let verdict = match (&outcome, elapsed <= *limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => "FAIL (over time limit)".to_string(),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {:>2} {name}: {verdict} [{:.2}s / {}s]", i + 1, elapsed.as_secs_f64(), limit.as_secs());
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
