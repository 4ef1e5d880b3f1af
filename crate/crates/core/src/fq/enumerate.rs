//! Exhaustive enumeration of `T`-stable subspaces of `(F_q[T]/T^N)^d`.
//!
//! A colength-`n` submodule `M` of `F_q[[T]]^d` contains `T^n F` (the
//! quotient is an `n`-dimensional module on which `T` is nilpotent), so for
//! `n <= N` such submodules correspond exactly to the `T`-stable subspaces of
//! codimension `n` in the truncation at `T^N`.
//!
//! The pruned search builds hlex echelon bases from the largest column down.
//! A row with pivot `c` is supported on columns `>= c`, and `T` times it is
//! supported on columns `>= c + d`, whose rows are already fixed. So each
//! candidate row is accepted or rejected on the spot, and every partial state
//! of the search is itself a `T`-stable subspace: there are no dead branches.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fq::module::{echelonize, Ambient, ModuleVector, MonomialOrder, SubmoduleBasis};

/// `q^{dN} <= 2^20` ambient vectors.
pub const DEFAULT_CAP: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    /// Column-by-column construction with immediate `T`-stability checks.
    Pruned,
    /// Every subspace in echelon form, then filtered. Only for tiny sizes.
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    pub cap: u128,
    pub exec: Exec,
    pub strategy: Strategy,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { cap: DEFAULT_CAP, exec: Exec::default(), strategy: Strategy::Pruned }
    }
}

impl EnumOptions {
    pub fn with_exec(self, exec: Exec) -> Self {
        EnumOptions { exec, ..self }
    }

    pub fn with_cap(self, cap: u128) -> Self {
        EnumOptions { cap, ..self }
    }

    pub fn with_strategy(self, strategy: Strategy) -> Self {
        EnumOptions { strategy, ..self }
    }
}

pub(crate) fn check_cap(amb: &Ambient, cap: u128) -> Result<()> {
    let needed = amb.cardinality().unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    Ok(())
}

/// Every `T`-stable subspace of `(F_q[T]/T^N)^d`, in canonical hlex form,
/// sorted by codimension and then by basis.
pub fn enumerate_submodules(q: u64, d: usize, n_trunc: usize) -> Result<Vec<SubmoduleBasis>> {
    enumerate_submodules_with(q, d, n_trunc, EnumOptions::default())
}

pub fn enumerate_submodules_with(
    q: u64,
    d: usize,
    n_trunc: usize,
    opts: EnumOptions,
) -> Result<Vec<SubmoduleBasis>> {
    let amb = Ambient::new(q, d, n_trunc)?;
    enumerate_codim_range(&amb, 0, amb.dim(), opts)
}

/// `T`-stable subspaces of the given ambient with codimension in
/// `[min_codim, max_codim]`.
pub fn enumerate_codim_range(
    amb: &Ambient,
    min_codim: usize,
    max_codim: usize,
    opts: EnumOptions,
) -> Result<Vec<SubmoduleBasis>> {
    let mut out = match opts.strategy {
        Strategy::Pruned => {
            check_cap(amb, opts.cap)?;
            Search { amb: *amb, min_codim, max_codim }.run(opts.exec)
        }
        Strategy::Exhaustive => {
            let total = galois_number(amb.q(), amb.dim()).unwrap_or(u128::MAX);
            if total > opts.cap {
                return Err(Error::CapExceeded { needed: total, cap: opts.cap });
            }
            all_subspaces(amb, opts.exec)
                .into_iter()
                .filter(|m| (min_codim..=max_codim).contains(&m.codim()) && m.is_t_stable())
                .collect()
        }
    };
    out.sort_by(|a, b| (a.codim(), a).cmp(&(b.codim(), b)));
    Ok(out)
}

/// Submodules of `F_q[[T]]^d` of colength exactly `n`, modelled in the
/// truncation at `T^{max(n,1)}`.
pub fn enumerate_colength(q: u64, d: usize, n: usize, opts: EnumOptions) -> Result<Vec<SubmoduleBasis>> {
    let amb = Ambient::new(q, d, working_truncation(n))?;
    enumerate_codim_range(&amb, n, n, opts)
}

/// Smallest truncation used to model colength-`n` submodules.
pub fn working_truncation(n: usize) -> usize {
    n.max(1)
}

/// Number of submodules of each colength `0..=N`, from the pruned enumeration
/// in the truncation at `T^N`.
pub fn count_by_colength(q: u64, d: usize, n_trunc: usize) -> Result<Vec<u128>> {
    count_by_colength_with(q, d, n_trunc, EnumOptions::default())
}

pub fn count_by_colength_with(q: u64, d: usize, n_trunc: usize, opts: EnumOptions) -> Result<Vec<u128>> {
    let amb = Ambient::new(q, d, n_trunc)?;
    let mut counts = vec![0u128; n_trunc + 1];
    for m in enumerate_codim_range(&amb, 0, n_trunc, opts)? {
        counts[m.codim()] += 1;
    }
    Ok(counts)
}

struct Search {
    amb: Ambient,
    min_codim: usize,
    max_codim: usize,
}

#[derive(Clone)]
struct State {
    /// Rows in the order they were added: decreasing pivot.
    rows: Vec<(usize, ModuleVector)>,
    is_pivot: Vec<bool>,
    /// Columns above the current one that are not pivots, ascending.
    free: Vec<usize>,
}

impl Search {
    fn run(&self, exec: Exec) -> Vec<SubmoduleBasis> {
        let dim = self.amb.dim();
        let start = State { rows: Vec::new(), is_pivot: vec![false; dim], free: Vec::new() };
        if dim == 0 {
            return self.finish(start).into_iter().collect();
        }
        // Walk the top half sequentially, then fan the frontier out.
        let split = dim / 2;
        let mut frontier = Vec::new();
        self.descend(start, dim, split, &mut |s| frontier.push(s));
        exec.flat_map(&frontier, |s| {
            let mut found = Vec::new();
            self.descend(s.clone(), split, 0, &mut |s| found.extend(self.finish(s)));
            found
        })
    }

    /// Decides columns `stop..top` (from the top down) and hands every
    /// surviving state to `emit`.
    fn descend(&self, state: State, top: usize, stop: usize, emit: &mut dyn FnMut(State)) {
        if top == stop {
            emit(state);
            return;
        }
        let c = top - 1;
        let nonpivots = state.free.len();
        // Columns still undecided below `c`, not counting `c` itself.
        let below = c;

        // `c` is not a pivot.
        if nonpivots < self.max_codim && nonpivots + 1 + below >= self.min_codim {
            let mut s = state.clone();
            s.free.insert(0, c);
            self.descend(s, c, stop, emit);
        }

        // `c` is a pivot. `T` times the new row leads at `c + d`, which must
        // already be a pivot unless it falls off the truncation.
        if nonpivots + below < self.min_codim {
            return;
        }
        let shifted = c + self.amb.rank();
        if shifted < self.amb.dim() && !state.is_pivot[shifted] {
            return;
        }
        for row in self.candidate_rows(&state, c) {
            let mut s = state.clone();
            s.is_pivot[c] = true;
            s.rows.push((c, row));
            self.descend(s, c, stop, emit);
        }
    }

    /// Rows `e_c + Σ λ_k e_{free_k}` whose `T`-multiple lies in the span so far.
    fn candidate_rows(&self, state: &State, c: usize) -> Vec<ModuleVector> {
        let f = self.amb.field();
        let q = self.amb.q() as u8;
        let mut digits = vec![0u8; state.free.len()];
        let mut out = Vec::new();
        loop {
            let mut coeffs = vec![0u8; self.amb.dim()];
            coeffs[c] = 1;
            for (&col, &v) in state.free.iter().zip(&digits) {
                coeffs[col] = v;
            }
            let row = ModuleVector::from_coeffs(&self.amb, coeffs).expect("ambient sized");
            let mut image = row.mul_by_t(&self.amb);
            for (p, r) in &state.rows {
                let c = image.coeffs()[*p];
                if c != 0 {
                    image.add_scaled(f, f.neg(c), r);
                }
            }
            if image.is_zero() {
                out.push(row);
            }
            // Odometer over F_q^{free}.
            let mut k = 0;
            loop {
                if k == digits.len() {
                    return out;
                }
                digits[k] += 1;
                if digits[k] < q {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
        }
    }

    fn finish(&self, state: State) -> Option<SubmoduleBasis> {
        let codim = state.free.len();
        if codim < self.min_codim || codim > self.max_codim {
            return None;
        }
        let rows = state.rows.into_iter().rev().map(|(_, r)| r).collect();
        Some(SubmoduleBasis::from_reduced_rows(self.amb, MonomialOrder::Hlex, rows))
    }
}

/// Every subspace of the ambient, one reduced echelon basis each.
pub fn all_subspaces(amb: &Ambient, exec: Exec) -> Vec<SubmoduleBasis> {
    let dim = amb.dim();
    let pivot_sets: Vec<u64> = (0..1u64 << dim).collect();
    exec.flat_map(&pivot_sets, |&mask| {
        let pivots: Vec<usize> = (0..dim).filter(|&c| mask >> c & 1 == 1).collect();
        subspaces_with_pivots(amb, &pivots)
    })
}

fn subspaces_with_pivots(amb: &Ambient, pivots: &[usize]) -> Vec<SubmoduleBasis> {
    let dim = amb.dim();
    let q = amb.q() as u8;
    let is_pivot: Vec<bool> = (0..dim).map(|c| pivots.contains(&c)).collect();
    // Free slots: (row, column) with column a non-pivot after the row's pivot.
    let slots: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(r, &p)| (p + 1..dim).filter(|&c| !is_pivot[c]).map(move |c| (r, c)))
        .collect();
    let mut digits = vec![0u8; slots.len()];
    let mut out = Vec::new();
    loop {
        let mut rows: Vec<Vec<u8>> = pivots
            .iter()
            .map(|&p| {
                let mut v = vec![0u8; dim];
                v[p] = 1;
                v
            })
            .collect();
        for (&(r, c), &v) in slots.iter().zip(&digits) {
            rows[r][c] = v;
        }
        let rows = rows
            .into_iter()
            .map(|v| ModuleVector::from_coeffs(amb, v).expect("ambient sized"))
            .collect();
        out.push(SubmoduleBasis::from_reduced_rows(*amb, MonomialOrder::Hlex, rows));
        let mut k = 0;
        loop {
            if k == digits.len() {
                return out;
            }
            digits[k] += 1;
            if digits[k] < q {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// Gaussian binomial `[m choose k]_q` evaluated at the integer `q`.
pub fn gaussian_binomial(m: usize, k: usize, q: u64) -> Option<u128> {
    if k > m {
        return Some(0);
    }
    // Pascal rule [m,k] = [m-1,k-1] + q^k [m-1,k].
    let mut row = vec![1u128];
    for i in 1..=m {
        let mut next = vec![0u128; i + 1];
        for j in 0..=i {
            let left = if j > 0 { row[j - 1] } else { 0 };
            let right = if j < i {
                (q as u128).checked_pow(j as u32)?.checked_mul(row[j])?
            } else {
                0
            };
            next[j] = left.checked_add(right)?;
        }
        row = next;
    }
    Some(row[k])
}

/// Total number of subspaces of `F_q^m`.
pub fn galois_number(q: u64, m: usize) -> Option<u128> {
    (0..=m).try_fold(0u128, |acc, k| acc.checked_add(gaussian_binomial(m, k, q)?))
}

/// Re-echelonizes a basis from scratch; used to confirm canonical forms.
pub fn canonicalize(m: &SubmoduleBasis) -> SubmoduleBasis {
    echelonize(m.ambient(), m.rows().iter().cloned(), m.order())
}
