//! Partitions in a box and their bijection onto configurations of given
//! size and weight.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::{Config, MultiIndex};
use crate::error::{Error, Result};

/// An integer partition, parts weakly decreasing and positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn fits_in_box(&self, rows: usize, cols: usize) -> bool {
        self.parts.len() <= rows && self.parts.first().is_none_or(|&p| p <= cols)
    }

    /// Number of parts equal to `part`.
    pub fn multiplicity(&self, part: usize) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.size(), &self.parts).cmp(&(other.size(), &other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

/// Every partition with at most `rows` parts, each at most `cols`, ordered
/// by size and then lexicographically.
pub fn enumerate_box_partitions(rows: usize, cols: usize) -> Vec<Partition> {
    fn extend(rows: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        out.push(Partition { parts: prefix.clone() });
        if prefix.len() == rows {
            return;
        }
        for p in 1..=max_part {
            prefix.push(p);
            extend(rows, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(rows, cols, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `λ = [1]^{m_1} ... [d-1]^{m_{d-1}}  ↦  g_1^{n - Σ m_i} g_2^{m_1} ... g_d^{m_{d-1}}(0)`.
pub fn partition_to_config(lambda: &Partition, n: usize, d: usize) -> Result<Config> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if !lambda.fits_in_box(n, d - 1) {
        return Err(Error::PartitionOutsideBox {
            parts: lambda.parts.clone(),
            rows: n,
            cols: d - 1,
        });
    }
    let mut a = Vec::with_capacity(d);
    a.push(n - lambda.len());
    a.extend((1..d).map(|part| lambda.multiplicity(part)));
    Config::origin(d)?.act(&MultiIndex::new(a)?)
}

/// Number of size-`w` partitions in the `n x (d-1)` box.
pub fn gaussian_count(n: usize, d: usize, w: usize) -> u128 {
    if d == 0 {
        return 0;
    }
    let mut memo = HashMap::new();
    box_count(n, d - 1, w, &mut memo)
}

// Either no part equals `cols`, or strip one part equal to `cols`.
fn box_count(
    rows: usize,
    cols: usize,
    w: usize,
    memo: &mut HashMap<(usize, usize, usize), u128>,
) -> u128 {
    if w == 0 {
        return 1;
    }
    if rows == 0 || cols == 0 || w > rows * cols {
        return 0;
    }
    if let Some(&v) = memo.get(&(rows, cols, w)) {
        return v;
    }
    let mut v = box_count(rows, cols - 1, w, memo);
    if w >= cols {
        v += box_count(rows - 1, cols, w - cols, memo);
    }
    memo.insert((rows, cols, w), v);
    v
}
