//! Weak and proper compositions in display order.
//!
//! Display order groups compositions by their last coordinate ascending;
//! inside a group the leading `p - 1` coordinates follow the same rule
//! recursively. Equivalently, ascending lexicographic order of the reversed
//! tuples. For `n = 5, p = 3` this starts `(5,0,0), (4,1,0), (3,2,0)` and
//! ends `(0,0,5)`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombError {
    #[error("compositions need at least one part")]
    NoParts,
    #[error("composition {0} is not proper")]
    NotProper(Composition),
    #[error("composition {0} not found in list")]
    NotFound(Composition),
}

/// A tuple of nonnegative parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Composition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `p`
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `n = s(alpha)`
    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_proper(&self) -> bool {
        self.0.iter().all(|&a| a >= 1)
    }

    pub fn last(&self) -> u32 {
        *self.0.last().expect("nonempty composition")
    }

    /// All coordinates but the last.
    pub fn head(&self) -> &[u32] {
        &self.0[..self.0.len() - 1]
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftDirection {
    ProperToWeak,
    WeakToProper,
}

/// Subtracts (or adds) one from every coordinate.
pub fn shift_bijection(alpha: &Composition, direction: ShiftDirection) -> Result<Composition, CombError> {
    match direction {
        ShiftDirection::ProperToWeak => {
            if !alpha.is_proper() {
                return Err(CombError::NotProper(alpha.clone()));
            }
            Ok(Composition(alpha.0.iter().map(|a| a - 1).collect()))
        }
        ShiftDirection::WeakToProper => Ok(Composition(alpha.0.iter().map(|a| a + 1).collect())),
    }
}

/// Ordered list of distinct compositions with a reverse index.
#[derive(Clone, PartialEq, Eq)]
pub struct CompositionList {
    n: u32,
    p: usize,
    items: Vec<Composition>,
    index: HashMap<Composition, usize>,
}

impl CompositionList {
    fn from_items(n: u32, p: usize, items: Vec<Composition>) -> Self {
        let index = items.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        CompositionList { n, p, items, index }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn items(&self) -> &[Composition] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Composition> {
        self.items.get(i)
    }

    pub fn index_of(&self, alpha: &Composition) -> Result<usize, CombError> {
        self.index.get(alpha).copied().ok_or_else(|| CombError::NotFound(alpha.clone()))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Composition> {
        self.items.iter()
    }
}

impl fmt::Debug for CompositionList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.items).finish()
    }
}

impl Serialize for CompositionList {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.items.serialize(s)
    }
}

fn weak_parts(n: u32, p: usize, out: &mut Vec<Vec<u32>>) {
    if p == 1 {
        out.push(vec![n]);
        return;
    }
    for last in 0..=n {
        let mut group = Vec::new();
        weak_parts(n - last, p - 1, &mut group);
        for mut head in group {
            head.push(last);
            out.push(head);
        }
    }
}

pub fn enumerate_weak(n: u32, p: usize) -> Result<CompositionList, CombError> {
    if p < 1 {
        return Err(CombError::NoParts);
    }
    let mut raw = Vec::new();
    weak_parts(n, p, &mut raw);
    Ok(CompositionList::from_items(n, p, raw.into_iter().map(Composition).collect()))
}

/// Proper compositions, ordered as the image of `enumerate_weak(n - p, p)`
/// under the shift bijection. Empty when `p > n`.
pub fn enumerate_proper(n: u32, p: usize) -> Result<CompositionList, CombError> {
    if p < 1 {
        return Err(CombError::NoParts);
    }
    if p as u64 > n as u64 {
        return Ok(CompositionList::from_items(n, p, Vec::new()));
    }
    let weak = enumerate_weak(n - p as u32, p)?;
    let items = weak.iter().map(|a| shift_bijection(a, ShiftDirection::WeakToProper)).collect::<Result<Vec<_>, _>>()?;
    Ok(CompositionList::from_items(n, p, items))
}
