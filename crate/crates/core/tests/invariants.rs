use compdet::comb::enumerate_weak;
use compdet::detengine::{det_bareiss, dr_matrix, fr_table};
use compdet::pcmatrix::{build_general, build_integer, build_proper};
use compdet::{MultiPoly, PolyMatrix, RationalFn};

/// Permutation taking the display order to plain ascending lexicographic order.
fn lex_order(n: u32, p: usize) -> Vec<usize> {
    let comps = enumerate_weak(n, p).unwrap();
    let mut idx: Vec<usize> = (0..comps.len()).collect();
    idx.sort_by(|&a, &b| comps.items()[a].parts().cmp(comps.items()[b].parts()));
    idx
}

#[test]
fn determinant_ignores_composition_order() {
    for n in 0..=3 {
        for p in 1..=3 {
            let m = build_general(n, p);
            let perm = lex_order(n, p);
            assert_eq!(det_bareiss(&m.permute(&perm)).unwrap(), det_bareiss(&m).unwrap(), "({n},{p})");
            let m = build_integer(n, p);
            assert_eq!(det_bareiss(&m.permute(&perm)).unwrap(), det_bareiss(&m).unwrap(), "integer ({n},{p})");
        }
    }
    // reversal as a second, unrelated ordering
    for n in 1..=4 {
        let m = build_proper(n + 1, 2);
        let rev: Vec<usize> = (0..m.dim()).rev().collect();
        assert_eq!(det_bareiss(&m.permute(&rev)).unwrap(), det_bareiss(&m).unwrap());
    }
}

fn leading_minor(m: &PolyMatrix, k: usize) -> MultiPoly {
    let idx: Vec<usize> = (0..k).collect();
    let sub = PolyMatrix::new(m.nvars(), m.entries().submatrix(&idx, &idx)).unwrap();
    det_bareiss(&sub).unwrap()
}

#[test]
fn consecutive_leading_minors_give_elimination_pivots() {
    for n in 0..=4u32 {
        let m = dr_matrix(n, n).unwrap();
        let table = fr_table(n.min(3), n.min(3));
        for r in 0..=n.min(3) {
            let quotient = RationalFn::new(leading_minor(&m, r as usize + 1), leading_minor(&m, r as usize)).unwrap();
            let y_minus_r = MultiPoly::linear(2, 0, -(r as i64)).pow(n - r);
            let expected = table.get(r, r, r).unwrap().mul_poly(&y_minus_r);
            assert!(quotient.equals(&expected), "r={r} n={n}");
        }
    }
}

#[test]
fn f_next_vanishes_right_of_the_pivot() {
    let table = fr_table(6, 8);
    for r in 0..=5 {
        for j in r + 1..=8 {
            assert!(table.get(r + 1, r, j).unwrap().is_zero(), "f_{}({r},{j})", r + 1);
        }
    }
}
