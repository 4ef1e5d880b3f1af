//! Truncated power series in `t` and `q` with exact integer coefficients, and
//! the generating functions built from them.
//!
//! Truncation is by `t`-degree only. Every series built here from
//! configurations or semigroup contents has `q`-degree at most
//! `(d - 1) * t`-degree, so the `q` direction stays finite on its own.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::{Config, MultiIndex};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::stats::{self, ContentExponents};

/// `Σ c_{n,w} t^n q^w` for `n <= t_cut`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiPoly {
    t_cut: usize,
    coeffs: BTreeMap<(usize, usize), i64>,
}

fn add_coeff(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("series coefficient overflow")
}

impl BiPoly {
    pub fn zero(t_cut: usize) -> Self {
        BiPoly { t_cut, coeffs: BTreeMap::new() }
    }

    pub fn one(t_cut: usize) -> Self {
        BiPoly::monomial(t_cut, 0, 0, 1)
    }

    /// `c t^n q^w`, or zero if `n` is past the truncation.
    pub fn monomial(t_cut: usize, n: usize, w: usize, c: i64) -> Self {
        let mut p = BiPoly::zero(t_cut);
        p.add_term(n, w, c);
        p
    }

    pub fn from_content(t_cut: usize, c: ContentExponents) -> Self {
        BiPoly::monomial(t_cut, c.t_exp, c.q_exp, 1)
    }

    pub fn t_cut(&self) -> usize {
        self.t_cut
    }

    pub fn coeff(&self, n: usize, w: usize) -> i64 {
        self.coeffs.get(&(n, w)).copied().unwrap_or(0)
    }

    /// Nonzero terms `((n, w), c)` in increasing `(n, w)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, n: usize, w: usize, c: i64) {
        if n > self.t_cut || c == 0 {
            return;
        }
        let slot = self.coeffs.entry((n, w)).or_insert(0);
        *slot = add_coeff(*slot, c);
        if *slot == 0 {
            self.coeffs.remove(&(n, w));
        }
    }

    /// Drops terms beyond a smaller truncation.
    pub fn truncate(&self, t_cut: usize) -> BiPoly {
        let t_cut = t_cut.min(self.t_cut);
        BiPoly {
            t_cut,
            coeffs: self.coeffs.range(..(t_cut + 1, 0)).map(|(&k, &c)| (k, c)).collect(),
        }
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let t_cut = self.t_cut.min(other.t_cut);
        let mut out = self.truncate(t_cut);
        for ((n, w), c) in other.terms() {
            out.add_term(n, w, c);
        }
        out
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let t_cut = self.t_cut.min(other.t_cut);
        let mut out = BiPoly::zero(t_cut);
        for ((n1, w1), c1) in self.terms() {
            if n1 > t_cut {
                break;
            }
            for ((n2, w2), c2) in other.terms() {
                if n1 + n2 > t_cut {
                    break;
                }
                let c = c1.checked_mul(c2).expect("series coefficient overflow");
                out.add_term(n1 + n2, w1 + w2, c);
            }
        }
        out
    }

    /// `1 / (1 - p) = Σ_k p^k`. Requires every term of `p` to carry `t`.
    pub fn geom_inverse(&self) -> Result<BiPoly> {
        if self.coeffs.keys().any(|&(n, _)| n == 0) {
            return Err(Error::NonTopologicalNilpotent);
        }
        let mut out = BiPoly::one(self.t_cut);
        let mut power = BiPoly::one(self.t_cut);
        // p^k has t-degree >= k.
        for _ in 0..self.t_cut {
            power = power.mul(self);
            if power.is_empty() {
                break;
            }
            out = out.add(&power);
        }
        Ok(out)
    }

    /// The substitution `t ↦ t q`: key `(n, w)` moves to `(n, w + n)`.
    pub fn subst_tq(&self) -> BiPoly {
        BiPoly {
            t_cut: self.t_cut,
            coeffs: self.coeffs.iter().map(|(&(n, w), &c)| ((n, w + n), c)).collect(),
        }
    }

    /// Coefficients of `t^0, ..., t^{t_cut}` after setting `q` to a number.
    pub fn eval_q(&self, q: u64) -> Vec<i128> {
        let mut out = vec![0i128; self.t_cut + 1];
        for ((n, w), c) in self.terms() {
            let qw = u32::try_from(w)
                .ok()
                .and_then(|w| (q as i128).checked_pow(w))
                .expect("q-power overflow");
            let term = qw.checked_mul(c as i128).expect("evaluation overflow");
            out[n] = out[n].checked_add(term).expect("evaluation overflow");
        }
        out
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|&c| c > 0)
    }

    /// Whether every term satisfies `w <= slope * n`.
    pub fn q_degree_bounded_by(&self, slope: usize) -> bool {
        self.coeffs.keys().all(|&(n, w)| w <= slope * n)
    }
}

/// One `(n,W): c` line per nonzero term, in increasing key order.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((n, w), c) in self.terms() {
            writeln!(f, "({n},{w}): {c}")?;
        }
        Ok(())
    }
}

/// Generators of a subsemigroup of `N^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSet {
    d: usize,
    generators: Vec<MultiIndex>,
}

impl GeneratorSet {
    pub fn new(d: usize, generators: Vec<MultiIndex>) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut seen = BTreeSet::new();
        for g in &generators {
            if g.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, got: g.dim() });
            }
            if g.is_zero() {
                return Err(Error::InvalidGenerators("zero generator".into()));
            }
            if !seen.insert(g.clone()) {
                return Err(Error::InvalidGenerators(format!("duplicate generator {g}")));
            }
        }
        Ok(GeneratorSet { d, generators })
    }

    /// `e_1, ..., e_d`.
    pub fn standard(d: usize) -> Result<Self> {
        GeneratorSet::new(d, (1..=d).map(|j| MultiIndex::unit(d, j)).collect())
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn generators(&self) -> &[MultiIndex] {
        &self.generators
    }

    /// Distinct elements of the generated monoid (including 0) of total at
    /// most `max_total`, breadth-first over sums of generators.
    pub fn elements_up_to(&self, max_total: usize) -> Vec<MultiIndex> {
        let mut seen = BTreeSet::new();
        let zero = MultiIndex::zero(self.d);
        seen.insert(zero.clone());
        let mut frontier = vec![zero];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for a in &frontier {
                for g in &self.generators {
                    let b = a.checked_add(g).expect("same dimension");
                    if b.total() <= max_total && seen.insert(b.clone()) {
                        next.push(b);
                    }
                }
            }
            frontier = next;
        }
        seen.into_iter().collect()
    }
}

/// Rank over the rationals by fraction-free elimination.
fn rational_rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let (top, below) = m.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in below.iter_mut().filter(|row| row[col] != 0) {
            let (a, b) = (pivot[col], row[col]);
            for (v, &pv) in row[col..].iter_mut().zip(&pivot[col..]) {
                *v = a * *v - b * pv;
            }
            let g = row.iter().fold(0i128, |g, &v| gcd(g, v));
            if g > 1 {
                row.iter_mut().for_each(|v| *v /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Linear independence over the rationals, which makes the generated
/// subsemigroup free on the given generators.
pub fn is_free_basis(gens: &GeneratorSet) -> bool {
    let rows: Vec<Vec<i128>> = gens
        .generators
        .iter()
        .map(|g| g.as_slice().iter().map(|&v| v as i128).collect())
        .collect();
    rational_rank(&rows) == rows.len()
}

/// `Π_{i=0}^{d-1} 1 / (1 - t q^i)`.
pub fn product_formula(d: usize, t_cut: usize) -> BiPoly {
    (0..d).fold(BiPoly::one(t_cut), |acc, i| {
        let factor = BiPoly::monomial(t_cut, 1, i, 1)
            .geom_inverse()
            .expect("t q^i has no constant term");
        acc.mul(&factor)
    })
}

/// `Σ t^{n(x)} q^{W(x)}` over every configuration with `n(x) <= t_cut`.
pub fn sum_over_configs(d: usize, t_cut: usize) -> BiPoly {
    sum_over_configs_with(d, t_cut, Exec::default())
}

pub fn sum_over_configs_with(d: usize, t_cut: usize, exec: Exec) -> BiPoly {
    let sizes: Vec<usize> = (0..=t_cut).collect();
    let weights: Vec<Vec<usize>> = exec.map(&sizes, |&n| {
        Config::all_of_size(d, n).map(|x| stats::weight(&x)).collect()
    });
    let mut out = BiPoly::zero(t_cut);
    for (n, ws) in weights.into_iter().enumerate() {
        for w in ws {
            out.add_term(n, w, 1);
        }
    }
    out
}

/// `f_0 = 1`, `f_k(t, q) = f_{k-1}(t q, q) / (1 - t)`.
pub fn recurrence_formula(d: usize, t_cut: usize) -> BiPoly {
    let inv = BiPoly::monomial(t_cut, 1, 0, 1)
        .geom_inverse()
        .expect("t has no constant term");
    (0..d).fold(BiPoly::one(t_cut), |f, _| inv.mul(&f.subst_tq()))
}

/// Brute-force orbit sum: enumerate the monoid elements `a` that can stay
/// within the truncation, act on `x0`, and add the content of each distinct
/// configuration reached.
pub fn orbit_sum_truncated(x0: &Config, gens: &GeneratorSet, t_cut: usize) -> Result<BiPoly> {
    let d = x0.dim();
    if gens.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: gens.dim() });
    }
    let mut out = BiPoly::zero(t_cut);
    let Some(budget) = t_cut.checked_sub(x0.size()) else {
        return Ok(out);
    };
    let mut orbit = BTreeSet::new();
    for a in gens.elements_up_to(budget) {
        orbit.insert(x0.act(&a)?);
    }
    for x in &orbit {
        let c = stats::content(x);
        out.add_term(c.t_exp, c.q_exp, 1);
    }
    Ok(out)
}

/// `Cont(x0) Π_i 1 / (1 - Cont(a^{(i)}))` for a free basis.
pub fn free_orbit_formula(x0: &Config, gens: &GeneratorSet, t_cut: usize) -> Result<BiPoly> {
    let d = x0.dim();
    if gens.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: gens.dim() });
    }
    if !is_free_basis(gens) {
        return Err(Error::NotFree);
    }
    let mut out = BiPoly::from_content(t_cut, stats::content(x0));
    for g in gens.generators() {
        let factor = BiPoly::from_content(t_cut, stats::content_of_index(g)).geom_inverse()?;
        out = out.mul(&factor);
    }
    Ok(out)
}
