//! Power-composition matrices `((x + alpha)^beta)` indexed by compositions.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::comb::{enumerate_proper, enumerate_weak, Composition, CompositionList};
use crate::poly::{MultiPoly, PolyError};

/// Dense square matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Matrix { dim, data }
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            assert_eq!(r.len(), dim, "matrix rows must have length {dim}");
            data.extend(r);
        }
        Matrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.dim + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.dim + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { dim: self.dim, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U, E>(&self, f: impl FnMut(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        Ok(Matrix { dim: self.dim, data: self.data.iter().map(f).collect::<Result<_, _>>()? })
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }
}

impl<T: Clone> Matrix<T> {
    /// Submatrix on the given rows and columns (same count).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<T> {
        assert_eq!(rows.len(), cols.len());
        Matrix::from_fn(rows.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// `perm[k]` is the old index placed at position `k`, on both axes.
    pub fn permute(&self, perm: &[usize]) -> Matrix<T> {
        self.submatrix(perm, perm)
    }
}

pub type IntMatrix = Matrix<BigInt>;

/// Matrix of polynomial entries sharing one variable count. Rows and
/// columns carry the same composition labels when built from compositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    nvars: usize,
    entries: Matrix<MultiPoly>,
    labels: Option<Arc<CompositionList>>,
}

impl PolyMatrix {
    pub fn new(nvars: usize, entries: Matrix<MultiPoly>) -> Result<Self, PolyError> {
        if let Some(bad) = entries.data.iter().find(|e| e.nvars() != nvars) {
            return Err(PolyError::VarCountMismatch { left: nvars, right: bad.nvars() });
        }
        Ok(PolyMatrix { nvars, entries, labels: None })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }

    pub fn entries(&self) -> &Matrix<MultiPoly> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        self.entries.get(i, j)
    }

    /// Row and column labels (identical lists).
    pub fn labels(&self) -> Option<&Arc<CompositionList>> {
        self.labels.as_ref()
    }

    /// Reorders rows and columns simultaneously; labels are dropped.
    pub fn permute(&self, perm: &[usize]) -> PolyMatrix {
        PolyMatrix { nvars: self.nvars, entries: self.entries.permute(perm), labels: None }
    }
}

/// Which variables appear in the entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EntryVars {
    /// `x_j` in coordinate `j`
    General,
    /// one `x` in every coordinate
    Univariate,
}

/// Caches `(x_j + a)^b`.
struct PowerCache {
    nvars: usize,
    vars: EntryVars,
    table: std::collections::HashMap<(usize, u32, u32), MultiPoly>,
}

impl PowerCache {
    fn new(nvars: usize, vars: EntryVars) -> Self {
        PowerCache { nvars, vars, table: Default::default() }
    }

    fn power(&mut self, coord: usize, a: u32, b: u32) -> MultiPoly {
        let var = match self.vars {
            EntryVars::General => coord,
            EntryVars::Univariate => 0,
        };
        let nvars = self.nvars;
        self.table.entry((var, a, b)).or_insert_with(|| MultiPoly::linear(nvars, var, a).pow(b)).clone()
    }

    fn entry(&mut self, alpha: &Composition, beta: &Composition) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for (j, (&a, &b)) in alpha.parts().iter().zip(beta.parts()).enumerate() {
            if b > 0 {
                acc = &acc * &self.power(j, a, b);
            }
        }
        acc
    }
}

fn build(labels: CompositionList, nvars: usize, vars: EntryVars) -> PolyMatrix {
    let mut cache = PowerCache::new(nvars, vars);
    let items = labels.items();
    let entries = Matrix::from_fn(items.len(), |i, j| cache.entry(&items[i], &items[j]));
    PolyMatrix { nvars, entries, labels: Some(Arc::new(labels)) }
}

/// `M(n, p, x)` over `p` variables, labeled by the weak compositions.
pub fn build_general(n: u32, p: usize) -> PolyMatrix {
    let labels = enumerate_weak(n, p).expect("p >= 1");
    build(labels, p, EntryVars::General)
}

/// The single-variable matrix with entries `prod_j (x + alpha_j)^beta_j`.
pub fn build_univariate(n: u32, p: usize) -> PolyMatrix {
    let labels = enumerate_weak(n, p).expect("p >= 1");
    build(labels, 1, EntryVars::Univariate)
}

/// Proper-composition matrix; `0 x 0` when `p > n`.
pub fn build_proper(n: u32, p: usize) -> PolyMatrix {
    let labels = enumerate_proper(n, p).expect("p >= 1");
    build(labels, p, EntryVars::General)
}

fn int_power(a: u32, b: u32) -> BigInt {
    // 0^0 = 1
    BigInt::from(a).pow(b)
}

/// The `x = 0` specialization `(alpha^beta)`.
pub fn build_integer(n: u32, p: usize) -> IntMatrix {
    let labels = enumerate_weak(n, p).expect("p >= 1");
    integer_matrix(&labels)
}

pub fn build_proper_integer(n: u32, p: usize) -> IntMatrix {
    let labels = enumerate_proper(n, p).expect("p >= 1");
    integer_matrix(&labels)
}

fn integer_matrix(labels: &CompositionList) -> IntMatrix {
    let items = labels.items();
    Matrix::from_fn(items.len(), |i, j| {
        items[i].parts().iter().zip(items[j].parts()).fold(BigInt::one(), |acc, (&a, &b)| {
            if b == 0 {
                acc
            } else {
                acc * int_power(a, b)
            }
        })
    })
}

/// Entrywise evaluation at an integer point.
pub fn specialize(m: &PolyMatrix, point: &[BigInt]) -> Result<IntMatrix, PolyError> {
    if point.len() != m.nvars {
        return Err(PolyError::PointLength { expected: m.nvars, got: point.len() });
    }
    m.entries.try_map(|e| e.eval(point))
}

/// Zero vector of the right length for [`specialize`].
pub fn origin(m: &PolyMatrix) -> Vec<BigInt> {
    vec![BigInt::zero(); m.nvars]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::binomial;

    fn ints(rows: &[&[i64]]) -> IntMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    fn x(nvars: usize, j: usize, c: i64) -> MultiPoly {
        MultiPoly::linear(nvars, j, c)
    }

    #[test]
    fn general_examples() {
        let m = build_general(1, 2);
        let expected =
            Matrix::from_rows(vec![vec![x(2, 0, 1), MultiPoly::var(2, 1)], vec![MultiPoly::var(2, 0), x(2, 1, 1)]]);
        assert_eq!(m.entries(), &expected);

        let m = build_general(0, 3);
        assert_eq!(m.dim(), 1);
        assert!(m.get(0, 0).is_one());

        let m = build_general(2, 2);
        assert_eq!(m.dim(), 3);
        assert_eq!(m.get(0, 0), &x(2, 0, 2).pow(2));
        assert_eq!(m.get(2, 2), &x(2, 1, 2).pow(2));
        assert_eq!(m.labels().unwrap().len(), 3);
    }

    #[test]
    fn univariate_examples() {
        let m = build_univariate(1, 2);
        let xx = MultiPoly::var(1, 0);
        let expected = Matrix::from_rows(vec![vec![x(1, 0, 1), xx.clone()], vec![xx, x(1, 0, 1)]]);
        assert_eq!(m.entries(), &expected);
        assert!(build_univariate(0, 2).get(0, 0).is_one());
        assert_eq!(build_univariate(2, 1).get(0, 0), &x(1, 0, 2).pow(2));
    }

    #[test]
    fn integer_examples() {
        assert_eq!(build_integer(2, 2), ints(&[&[4, 0, 0], &[1, 1, 1], &[0, 0, 4]]));
        assert_eq!(build_integer(0, 1), ints(&[&[1]]));
        assert_eq!(build_integer(1, 3), ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
    }

    #[test]
    fn proper_examples() {
        let m = build_proper(3, 2);
        let e = |a: i64, b: u32, c: i64, d: u32| &x(2, 0, a).pow(b) * &x(2, 1, c).pow(d);
        let expected = Matrix::from_rows(vec![vec![e(2, 2, 1, 1), e(2, 1, 1, 2)], vec![e(1, 2, 2, 1), e(1, 1, 2, 2)]]);
        assert_eq!(m.entries(), &expected);
        assert_eq!(build_proper(2, 3).dim(), 0);
        let m = build_proper(2, 2);
        assert_eq!(m.dim(), 1);
        assert_eq!(m.get(0, 0), &(&x(2, 0, 1) * &x(2, 1, 1)));
    }

    #[test]
    fn specialize_examples() {
        let m = build_general(1, 2);
        assert_eq!(specialize(&m, &origin(&m)).unwrap(), ints(&[&[1, 0], &[0, 1]]));
        let m = build_general(2, 2);
        assert_eq!(specialize(&m, &origin(&m)).unwrap(), build_integer(2, 2));
        let u = build_univariate(1, 2);
        assert_eq!(specialize(&u, &[3.into()]).unwrap(), ints(&[&[4, 3], &[3, 4]]));
        assert!(specialize(&u, &[]).is_err());
    }

    #[test]
    fn specialization_and_identification_consistency() {
        for n in 0..=5u32 {
            for p in 1..=4usize {
                let m = build_general(n, p);
                assert_eq!(specialize(&m, &origin(&m)).unwrap(), build_integer(n, p));
                let dim = binomial(n as i64 + p as i64 - 1, p as i64 - 1).unwrap();
                assert_eq!(BigInt::from(m.dim()), dim);
            }
        }
        for n in 0..=4u32 {
            for p in 1..=3usize {
                let g = build_general(n, p);
                let u = build_univariate(n, p);
                assert_eq!(g.entries().map(|e| e.identify_vars()), *u.entries());
            }
        }
        for n in 1..=6u32 {
            for p in 1..=4usize {
                let m = build_proper(n, p);
                let dim =
                    if p as u32 > n { 0 } else { binomial(n as i64 - 1, p as i64 - 1).unwrap().try_into().unwrap() };
                assert_eq!(m.dim(), dim);
            }
        }
    }

    #[test]
    fn variable_permutation_invariance() {
        // permuting variables and composition coordinates together permutes rows/cols
        let perms: [&[usize]; 3] = [&[1, 0, 2], &[2, 0, 1], &[0, 2, 1]];
        for n in 0..=4u32 {
            let m = build_general(n, 3);
            let labels = m.labels().unwrap().clone();
            for sigma in perms {
                let images: Vec<MultiPoly> = (0..3).map(|j| MultiPoly::var(3, sigma[j])).collect();
                let permuted_vars = m.entries().map(|e| e.compose(&images, 3).unwrap());
                // alpha -> alpha o sigma^{-1}
                let idx: Vec<usize> = labels
                    .iter()
                    .map(|a| {
                        let mut moved = vec![0; 3];
                        for j in 0..3 {
                            moved[sigma[j]] = a.parts()[j];
                        }
                        labels.index_of(&Composition::new(moved)).unwrap()
                    })
                    .collect();
                let relabeled = Matrix::from_fn(m.dim(), |i, j| m.get(idx[i], idx[j]).clone());
                assert_eq!(permuted_vars, relabeled, "n={n} sigma={sigma:?}");
            }
        }
    }
}
