//! Size, distance, weight and content.

use serde::{Deserialize, Serialize};

use crate::config::{Config, MultiIndex, Slot};
use crate::error::{Error, Result};

/// Exponents of the content monomial `t^n q^W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ContentExponents {
    pub t_exp: usize,
    pub q_exp: usize,
}

impl ContentExponents {
    pub fn new(t_exp: usize, q_exp: usize) -> Self {
        ContentExponents { t_exp, q_exp }
    }

    /// Exponents of the product of two content monomials.
    pub fn combine(self, other: ContentExponents) -> ContentExponents {
        ContentExponents {
            t_exp: self.t_exp.checked_add(other.t_exp).expect("content overflow"),
            q_exp: self.q_exp.checked_add(other.q_exp).expect("content overflow"),
        }
    }
}

pub fn size(x: &Config) -> usize {
    x.size()
}

/// `floor(h(b) - h(a))` for `a ≺ b`.
pub fn distance(a: Slot, b: Slot, d: usize) -> Result<usize> {
    if a >= b {
        return Err(Error::SlotOrder);
    }
    Ok((b.index(d) - a.index(d)) / d)
}

/// Sum of pairwise distances over the height-sorted points.
pub fn weight(x: &Config) -> usize {
    let d = x.dim();
    let idx: Vec<usize> = x.sorted_slots().into_iter().map(|s| s.index(d)).collect();
    let mut w = 0usize;
    for (j, &lo) in idx.iter().enumerate() {
        for &hi in &idx[j + 1..] {
            w = w.checked_add((hi - lo) / d).expect("weight overflow");
        }
    }
    w
}

/// The weight as a double sum over ordered seat pairs `i != j` of
/// `max(0, floor(n_j + j/d - n_i - i/d))`, evaluated on `d * height`
/// integers.
pub fn weight_floor_formula(x: &Config) -> usize {
    let d = x.dim();
    let scaled: Vec<i128> = x
        .levels()
        .iter()
        .enumerate()
        .map(|(i, &n)| n as i128 * d as i128 + (i as i128 + 1))
        .collect();
    let mut w = 0i128;
    for (i, &hi_i) in scaled.iter().enumerate() {
        for (j, &hi_j) in scaled.iter().enumerate() {
            if i != j {
                w += (hi_j - hi_i).div_euclid(d as i128).max(0);
            }
        }
    }
    usize::try_from(w).expect("weight overflow")
}

pub fn content(x: &Config) -> ContentExponents {
    ContentExponents::new(size(x), weight(x))
}

/// `Cont(a) = t^{Σ a_i} q^{Σ (i-1) a_i}`.
pub fn content_of_index(a: &MultiIndex) -> ContentExponents {
    let q_exp = a
        .as_slice()
        .iter()
        .enumerate()
        .try_fold(0usize, |acc, (i, &v)| acc.checked_add(i.checked_mul(v)?))
        .expect("content overflow");
    ContentExponents::new(a.total(), q_exp)
}
