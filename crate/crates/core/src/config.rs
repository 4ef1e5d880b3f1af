//! Configurations on the cylinder `[d] x N` and the spiral shifting operators.
//!
//! A configuration `x = (n_1, ..., n_d)` is read as `d` points `(i, n_i)`, one
//! per seat. Points are compared by height `n + i/d`, which is never formed as
//! a fraction: the order is `(level, seat)` lexicographic, or equivalently the
//! integer linear index `level * d + (seat - 1)`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the cylinder: a 1-based `seat` and a `level`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slot {
    pub seat: usize,
    pub level: usize,
}

impl Slot {
    pub fn new(seat: usize, level: usize) -> Self {
        Slot { seat, level }
    }

    /// 0-based position along the spiral. The only place seats and indices
    /// are converted.
    pub fn index(self, d: usize) -> usize {
        debug_assert!((1..=d).contains(&self.seat));
        self.level
            .checked_mul(d)
            .and_then(|v| v.checked_add(self.seat - 1))
            .expect("slot index overflow")
    }

    pub fn from_index(index: usize, d: usize) -> Self {
        Slot {
            seat: index % d + 1,
            level: index / d,
        }
    }

    /// The slot `s` steps further along the spiral (height `h + s/d`).
    pub fn shift(self, s: usize, d: usize) -> Self {
        let index = self.index(d).checked_add(s).expect("slot index overflow");
        Slot::from_index(index, d)
    }
}

impl Ord for Slot {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.level, self.seat).cmp(&(other.level, other.seat))
    }
}

impl PartialOrd for Slot {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.seat, self.level)
    }
}

/// Free function form of [`Slot::shift`].
pub fn slot_shift(slot: Slot, s: usize, d: usize) -> Result<Slot> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if !(1..=d).contains(&slot.seat) {
        return Err(Error::OperatorIndex { j: slot.seat, d });
    }
    Ok(slot.shift(s, d))
}

fn join(f: &mut fmt::Formatter<'_>, xs: &[usize]) -> fmt::Result {
    for (k, v) in xs.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// A point `x = (n_1, ..., n_d)` of `X = N^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Config {
    levels: Vec<usize>,
}

impl Config {
    pub fn new(levels: Vec<usize>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(Config { levels })
    }

    pub fn origin(d: usize) -> Result<Self> {
        Config::new(vec![0; d])
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    /// Level of a 1-based seat.
    pub fn level(&self, seat: usize) -> usize {
        self.levels[seat - 1]
    }

    pub fn is_origin(&self) -> bool {
        self.levels.iter().all(|&n| n == 0)
    }

    /// `Δ(x)` in seat order.
    pub fn slots(&self) -> impl Iterator<Item = Slot> + '_ {
        self.levels
            .iter()
            .enumerate()
            .map(|(i, &n)| Slot::new(i + 1, n))
    }

    /// `δ^1(x) ≺ ... ≺ δ^d(x)`.
    pub fn sorted_slots(&self) -> Vec<Slot> {
        let mut slots: Vec<Slot> = self.slots().collect();
        slots.sort_unstable();
        slots
    }

    fn from_slots(d: usize, slots: impl IntoIterator<Item = Slot>) -> Config {
        let mut levels = vec![0; d];
        for s in slots {
            levels[s.seat - 1] = s.level;
        }
        Config { levels }
    }

    /// `g_1(n_1, ..., n_d) = (n_d + 1, n_1, ..., n_{d-1})`.
    pub fn g1(&self) -> Config {
        let d = self.dim();
        let mut levels = Vec::with_capacity(d);
        levels.push(self.levels[d - 1].checked_add(1).expect("level overflow"));
        levels.extend_from_slice(&self.levels[..d - 1]);
        Config { levels }
    }

    /// `g_1^k`, moving every point `k` steps up the spiral at once.
    pub fn g1_pow(&self, k: usize) -> Config {
        let d = self.dim();
        Config::from_slots(d, self.slots().map(|s| s.shift(k, d)))
    }

    /// The spiral shifting operator `g_j`.
    ///
    /// The lowest `j - 1` points stay put; each remaining point moves to the
    /// next seat, in cyclic seat order, among the seats the remaining points
    /// occupy. The point on the largest such seat wraps to the smallest and
    /// rises one level.
    pub fn apply_g(&self, j: usize) -> Result<Config> {
        let d = self.dim();
        if !(1..=d).contains(&j) {
            return Err(Error::OperatorIndex { j, d });
        }
        let sorted = self.sorted_slots();
        let high = &sorted[j - 1..];
        let mut seats: Vec<usize> = high.iter().map(|s| s.seat).collect();
        seats.sort_unstable();

        let mut levels = self.levels.clone();
        for (pos, &seat) in seats.iter().enumerate() {
            let level = self.levels[seat - 1];
            match seats.get(pos + 1) {
                Some(&next) => levels[next - 1] = level,
                None => levels[seats[0] - 1] = level.checked_add(1).expect("level overflow"),
            }
        }
        Ok(Config { levels })
    }

    /// `g_j^k`.
    pub fn apply_g_pow(&self, j: usize, k: usize) -> Result<Config> {
        if j == 1 {
            return Ok(self.g1_pow(k));
        }
        let mut x = self.clone();
        for _ in 0..k {
            x = x.apply_g(j)?;
        }
        Ok(x)
    }

    /// `a · x = g_1^{a_1} ∘ ... ∘ g_d^{a_d}(x)`.
    pub fn act(&self, a: &MultiIndex) -> Result<Config> {
        let d = self.dim();
        if a.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, got: a.dim() });
        }
        let mut x = self.clone();
        for j in (1..=d).rev() {
            x = x.apply_g_pow(j, a.get(j))?;
        }
        Ok(x)
    }

    /// Whether `δ^r(x)` is the lowest point of `{i(δ^r), ..., i(δ^d)} x N`
    /// strictly above `δ^{r-1}(x)`.
    pub fn is_r_tight(&self, r: usize) -> Result<bool> {
        let d = self.dim();
        if !(2..=d).contains(&r) {
            return Err(Error::TightnessIndex { r, d });
        }
        let sorted = self.sorted_slots();
        let below = sorted[r - 2];
        let lowest = sorted[r - 1..]
            .iter()
            .map(|s| lowest_above(s.seat, below))
            .min()
            .expect("at least one high point");
        Ok(lowest == sorted[r - 1])
    }

    /// The unique `a` with `a · 0 = x`.
    ///
    /// `a_1` is read off the lowest point; then for each `r` the partial
    /// configuration is pushed with `g_r` until its `r`-th point lands on
    /// `δ^r(x)`. Each loop is bounded by the target's linear index.
    pub fn decompose(&self) -> Result<MultiIndex> {
        let d = self.dim();
        let target = self.sorted_slots();
        let mut a = vec![0usize; d];

        a[0] = target[0].index(d);
        let mut cur = Config::origin(d)?.g1_pow(a[0]);

        for r in 2..=d {
            let goal = target[r - 1];
            let bound = goal.index(d);
            loop {
                let at = cur.sorted_slots()[r - 1];
                match at.cmp(&goal) {
                    Ordering::Equal => break,
                    Ordering::Greater => {
                        return Err(Error::Defect(format!(
                            "point {r} of the partial configuration passed {goal} at {at}"
                        )))
                    }
                    Ordering::Less => {}
                }
                if a[r - 1] >= bound {
                    return Err(Error::Defect(format!(
                        "g_{r} applied {} times without reaching {goal}",
                        a[r - 1]
                    )));
                }
                cur = cur.apply_g(r)?;
                a[r - 1] += 1;
            }
        }
        if &cur != self {
            return Err(Error::Defect(format!(
                "decomposition reached {cur} instead of {self}"
            )));
        }
        Ok(MultiIndex(a))
    }

    /// Finds `a` with `a · base = self`, if any, by scanning every multi-index
    /// of the only admissible size `n(self) - n(base)`.
    pub fn find_index_from(&self, base: &Config) -> Result<Option<MultiIndex>> {
        let d = self.dim();
        if base.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, got: base.dim() });
        }
        let (n, n0) = (self.size(), base.size());
        if n < n0 {
            return Ok(None);
        }
        for a in MultiIndex::all_of_size(d, n - n0) {
            if &base.act(&a)? == self {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }

    pub fn size(&self) -> usize {
        self.levels
            .iter()
            .try_fold(0usize, |acc, &n| acc.checked_add(n))
            .expect("size overflow")
    }

    /// All configurations of size `n` in lexicographic order.
    pub fn all_of_size(d: usize, n: usize) -> impl Iterator<Item = Config> {
        Compositions::new(d, n).map(|levels| Config { levels })
    }

    /// All configurations of size at most `n`, grouped by size.
    pub fn all_up_to_size(d: usize, n: usize) -> impl Iterator<Item = Config> {
        (0..=n).flat_map(move |k| Config::all_of_size(d, k))
    }
}

fn lowest_above(seat: usize, below: Slot) -> Slot {
    if seat > below.seat {
        Slot::new(seat, below.level)
    } else {
        Slot::new(seat, below.level + 1)
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        join(f, &self.levels)?;
        f.write_str(")")
    }
}

/// An element `a` of the semigroup `Γ = N^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(a: Vec<usize>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(MultiIndex(a))
    }

    pub fn zero(d: usize) -> Self {
        MultiIndex(vec![0; d])
    }

    /// The unit vector `e_j`, 1-based.
    pub fn unit(d: usize, j: usize) -> Self {
        let mut a = vec![0; d];
        a[j - 1] = 1;
        MultiIndex(a)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Component `a_j`, 1-based.
    pub fn get(&self, j: usize) -> usize {
        self.0[j - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0
            .iter()
            .try_fold(0usize, |acc, &v| acc.checked_add(v))
            .expect("multi-index overflow")
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    pub fn checked_add(&self, other: &MultiIndex) -> Result<MultiIndex> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        Ok(MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("multi-index overflow"))
                .collect(),
        ))
    }

    pub fn all_of_size(d: usize, n: usize) -> impl Iterator<Item = MultiIndex> {
        Compositions::new(d, n).map(MultiIndex)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        join(f, &self.0)?;
        f.write_str(")")
    }
}

/// Weak compositions of `n` into `d` parts in ascending lexicographic order,
/// from `(0, .., 0, n)` to `(n, 0, .., 0)`.
struct Compositions {
    current: Option<Vec<usize>>,
}

impl Compositions {
    fn new(d: usize, n: usize) -> Self {
        if d == 0 {
            return Compositions { current: None };
        }
        let mut first = vec![0; d];
        first[d - 1] = n;
        Compositions { current: Some(first) }
    }
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let d = out.len();
        let mut tail = 0;
        for k in (0..d - 1).rev() {
            tail += out[k + 1];
            if tail > 0 {
                let mut next = out.clone();
                next[k] += 1;
                next[k + 1..].iter_mut().for_each(|v| *v = 0);
                next[d - 1] = tail - 1;
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}
