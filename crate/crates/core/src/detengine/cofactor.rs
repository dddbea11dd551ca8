use std::collections::HashMap;

use super::{DetError, DetMatrix, DetRing};
use crate::pcmatrix::Matrix;

pub const COFACTOR_MAX_DIM: usize = 10;

/// Laplace expansion along the first row, recursively on minors.
///
/// Minors are keyed by their column set, so each is expanded once.
pub fn det_cofactor<M: DetMatrix>(m: &M) -> Result<M::Value, DetError> {
    let a = m.matrix();
    let dim = a.dim();
    if dim > COFACTOR_MAX_DIM {
        return Err(DetError::DimensionTooLarge { dim, max: COFACTOR_MAX_DIM });
    }
    let one = m.one();
    let mut memo: HashMap<u32, M::Value> = HashMap::new();
    let all = if dim == 0 { 0 } else { (1u32 << dim) - 1 };
    Ok(minor(a, all, &one, &mut memo))
}

/// Determinant of the rows `dim - |cols| ..` restricted to `cols`.
fn minor<T: DetRing>(a: &Matrix<T>, cols: u32, one: &T, memo: &mut HashMap<u32, T>) -> T {
    if cols == 0 {
        return one.clone();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let row = a.dim() - cols.count_ones() as usize;
    let mut acc: Option<T> = None;
    for (k, c) in (0..a.dim()).filter(|c| cols & (1 << c) != 0).enumerate() {
        let entry = a.get(row, c);
        if entry.is_zero() {
            continue;
        }
        let term = entry.mul(&minor(a, cols & !(1 << c), one, memo));
        acc = Some(match (acc, k % 2 == 1) {
            (None, false) => term,
            (None, true) => term.neg(),
            (Some(s), false) => s.add(&term),
            (Some(s), true) => s.sub(&term),
        });
    }
    let v = acc.unwrap_or_else(|| one.sub(one));
    memo.insert(cols, v.clone());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcmatrix::{build_general, build_integer, IntMatrix};
    use crate::poly::MultiPoly;
    use num_bigint::BigInt;

    #[test]
    fn integer_two_two() {
        assert_eq!(det_cofactor(&build_integer(2, 2)).unwrap(), BigInt::from(16));
    }

    #[test]
    fn symbolic_one_two() {
        // (x1+1)(x2+1) - x1 x2
        assert_eq!(det_cofactor(&build_general(1, 2)).unwrap(), MultiPoly::sum_of_vars_plus(2, 1));
    }

    #[test]
    fn empty_and_guard() {
        let empty: IntMatrix = Matrix::from_rows(vec![]);
        assert_eq!(det_cofactor(&empty).unwrap(), BigInt::from(1));
        let big: IntMatrix = Matrix::from_fn(11, |i, j| BigInt::from((i == j) as i32));
        assert_eq!(det_cofactor(&big), Err(DetError::DimensionTooLarge { dim: 11, max: 10 }));
    }

    #[test]
    fn permutation_sign() {
        let m: IntMatrix = Matrix::from_rows(vec![
            vec![0.into(), 1.into(), 0.into()],
            vec![0.into(), 0.into(), 1.into()],
            vec![1.into(), 0.into(), 0.into()],
        ]);
        assert_eq!(det_cofactor(&m).unwrap(), BigInt::from(1));
        let m: IntMatrix = Matrix::from_rows(vec![vec![0.into(), 1.into()], vec![1.into(), 0.into()]]);
        assert_eq!(det_cofactor(&m).unwrap(), BigInt::from(-1));
    }
}
