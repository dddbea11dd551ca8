//! Shared inputs for the benchmarks.

/// `(n, p)` cells small enough for every engine that accepts them.
pub const SYMBOLIC_CELLS: [(u32, usize); 5] = [(2, 2), (3, 2), (2, 3), (3, 3), (4, 3)];

/// Cells with integer entries only, up to dimension 84.
pub const INTEGER_CELLS: [(u32, usize); 4] = [(4, 3), (7, 3), (5, 4), (6, 4)];

pub fn label(n: u32, p: usize) -> String {
    format!("n{n}_p{p}")
}
