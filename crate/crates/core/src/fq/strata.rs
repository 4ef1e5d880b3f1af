//! The two stratifications of colength-`n` submodules: by hlex leading
//! module (reduced Gröbner bases) and by Hermite normal form (the lex order).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::fq::enumerate::{check_cap, enumerate_colength, working_truncation, EnumOptions};
use crate::fq::module::{leading_module, Ambient, ModuleVector, Monomial, MonomialOrder, SubmoduleBasis};
use crate::stats;

/// Monomials allowed as nonleading terms of the reduced Gröbner basis element
/// led by `T^{n_i} u_i`: every `T^a u_j` outside the leading module
/// (`a < n_j`) that is hlex-larger than the leading monomial.
pub fn groebner_free_monomials(x: &Config, seat: usize) -> Vec<Monomial> {
    let d = x.dim();
    let lead = (x.level(seat), seat);
    (1..=d)
        .flat_map(|j| (0..x.level(j)).map(move |a| Monomial::new(j, a)))
        .filter(|m| (m.level, m.seat) > lead)
        .collect()
}

/// Total number of free coefficients over all basis elements.
pub fn groebner_free_count(x: &Config) -> usize {
    (1..=x.dim()).map(|i| groebner_free_monomials(x, i).len()).sum()
}

/// All submodules generated by tuples `(f_1, ..., f_d)` with
/// `LT(f_i) = T^{n_i} u_i` and every other coefficient chosen freely on the
/// allowed monomials, modelled in the truncation at `T^{max(n(x),1)}`.
pub fn enumerate_stratum(x: &Config, q: u64) -> Result<Vec<SubmoduleBasis>> {
    enumerate_stratum_in(x, q, working_truncation(x.size()), EnumOptions::default())
}

pub fn enumerate_stratum_in(
    x: &Config,
    q: u64,
    n_trunc: usize,
    opts: EnumOptions,
) -> Result<Vec<SubmoduleBasis>> {
    let d = x.dim();
    let amb = Ambient::new(q, d, n_trunc)?;
    if x.size() > n_trunc {
        return Err(Error::ColengthExceedsTruncation { codim: x.size(), trunc: n_trunc });
    }
    check_cap(&amb, opts.cap)?;

    let slots: Vec<(usize, Monomial)> = (1..=d)
        .flat_map(|i| groebner_free_monomials(x, i).into_iter().map(move |m| (i, m)))
        .collect();
    let choices = count_choices(q, slots.len(), opts.cap)?;
    let ids: Vec<u128> = (0..choices).collect();
    Ok(opts.exec.map(&ids, |&id| {
        let mut gens: Vec<ModuleVector> = (1..=d)
            .map(|i| ModuleVector::monomial(&amb, Monomial::new(i, x.level(i))))
            .collect();
        for (&(i, m), c) in slots.iter().zip(digits(id, q, slots.len())) {
            gens[i - 1].set(&amb, m, c);
        }
        SubmoduleBasis::generated_by(&amb, gens, MonomialOrder::Hlex)
    }))
}

fn count_choices(q: u64, slots: usize, cap: u128) -> Result<u128> {
    let needed = u32::try_from(slots)
        .ok()
        .and_then(|s| (q as u128).checked_pow(s))
        .unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    Ok(needed)
}

fn digits(mut id: u128, q: u64, len: usize) -> Vec<u8> {
    (0..len)
        .map(|_| {
            let v = (id % q as u128) as u8;
            id /= q as u128;
            v
        })
        .collect()
}

/// Column spans of lower-triangular matrices with diagonal `T^{n_j}` and
/// entries `a_{ij}(T)` of degree `< n_i` below it, over all
/// `n_1 + ... + n_d = n`. Each diagonal contributes `q^{Σ_i (i-1) n_i}`.
pub fn hnf_enumerate(q: u64, d: usize, n: usize) -> Result<Vec<SubmoduleBasis>> {
    hnf_enumerate_with(q, d, n, EnumOptions::default())
}

pub fn hnf_enumerate_with(q: u64, d: usize, n: usize, opts: EnumOptions) -> Result<Vec<SubmoduleBasis>> {
    let amb = Ambient::new(q, d, working_truncation(n))?;
    check_cap(&amb, opts.cap)?;
    let diagonals: Vec<Config> = Config::all_of_size(d, n).collect();
    let per_diagonal: Vec<Result<Vec<SubmoduleBasis>>> =
        opts.exec.map(&diagonals, |diag| hnf_with_diagonal(&amb, diag, opts.cap));
    let mut out = Vec::new();
    for part in per_diagonal {
        out.extend(part?);
    }
    Ok(out)
}

/// HNF submodules with a fixed diagonal `(n_1, ..., n_d)`.
pub fn hnf_with_diagonal(amb: &Ambient, diag: &Config, cap: u128) -> Result<Vec<SubmoduleBasis>> {
    let d = diag.dim();
    let q = amb.q();
    // (column j, monomial T^b u_i) for i > j, b < n_i.
    let slots: Vec<(usize, Monomial)> = (1..=d)
        .flat_map(|j| {
            (j + 1..=d).flat_map(move |i| (0..diag.level(i)).map(move |b| (j, Monomial::new(i, b))))
        })
        .collect();
    let choices = count_choices(q, slots.len(), cap)?;
    Ok((0..choices)
        .map(|id| {
            let mut cols: Vec<ModuleVector> = (1..=d)
                .map(|j| ModuleVector::monomial(amb, Monomial::new(j, diag.level(j))))
                .collect();
            for (&(j, m), c) in slots.iter().zip(digits(id, q, slots.len())) {
                cols[j - 1].set(amb, m, c);
            }
            SubmoduleBasis::generated_by(amb, cols, MonomialOrder::Hlex)
        })
        .collect())
}

/// One line of the stratum table for colength `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRow {
    pub x: Config,
    pub weight: usize,
    /// `q^{W(x)}`.
    pub expected: u128,
    /// Brute-force submodules whose leading module is `x`.
    pub observed: u128,
}

/// Groups the brute-force colength-`n` submodules by hlex leading module.
/// Rows follow the lexicographic order of `x` and include empty strata.
pub fn strata_table(q: u64, d: usize, n: usize, opts: EnumOptions) -> Result<Vec<StratumRow>> {
    let subs = enumerate_colength(q, d, n, opts)?;
    let mut observed: BTreeMap<Config, u128> = Config::all_of_size(d, n).map(|x| (x, 0)).collect();
    for m in &subs {
        let x = leading_module(m)?;
        *observed
            .get_mut(&x)
            .ok_or_else(|| Error::Defect(format!("leading module {x} has the wrong size")))? += 1;
    }
    observed
        .into_iter()
        .map(|(x, observed)| {
            let weight = stats::weight(&x);
            let expected = u32::try_from(weight)
                .ok()
                .and_then(|w| (q as u128).checked_pow(w))
                .ok_or_else(|| Error::Defect("q^W overflow".into()))?;
            Ok(StratumRow { x, weight, expected, observed })
        })
        .collect()
}
