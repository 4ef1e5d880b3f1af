//! Machine checks of the operator theorems and the counting identities.
//!
//! Each check sweeps a finite range exhaustively (or a seeded random sample)
//! and reports pass or fail with a short summary. [`Profile::Full`] uses the
//! ranges of the acceptance suite; [`Profile::Quick`] shrinks them to run in a
//! few seconds.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::{Config, MultiIndex};
use crate::exec::Exec;
use crate::fq::{self, EnumOptions};
use crate::partitions::{enumerate_box_partitions, gaussian_count, partition_to_config};
use crate::series::{self, GeneratorSet};
use crate::stats;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Full,
}

/// Sweep sizes for one profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scale {
    /// `(max d, max n(x))` for the commutation, size/weight and tightness sweeps.
    pub operators: (usize, usize),
    /// `(max d, max n(x))` for free transitivity and the weight definitions.
    pub transitive: (usize, usize),
    /// `(max d, max n(x))` for freeness at arbitrary base points.
    pub free_anywhere: (usize, usize),
    /// `(max d, max t_cut)` for the three generating-function routes.
    pub series: (usize, usize),
    /// `(max d, max n)` for the partition bijection.
    pub bijection: (usize, usize),
    /// `(q, d, N)` triples for submodule counting and strata.
    pub modules: Vec<(u64, usize, usize)>,
    pub orbit_samples: usize,
    pub orbit_t_cut: usize,
}

impl Profile {
    pub fn scale(self) -> Scale {
        match self {
            Profile::Quick => Scale {
                operators: (3, 4),
                transitive: (3, 4),
                free_anywhere: (2, 2),
                series: (4, 6),
                bijection: (3, 4),
                modules: vec![(2, 2, 2), (3, 2, 1)],
                orbit_samples: 20,
                orbit_t_cut: 6,
            },
            Profile::Full => Scale {
                operators: (4, 5),
                transitive: (4, 6),
                free_anywhere: (3, 3),
                series: (5, 8),
                bijection: (4, 6),
                modules: vec![(2, 2, 3), (2, 3, 3), (3, 2, 3), (3, 3, 3)],
                orbit_samples: 50,
                orbit_t_cut: 8,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub statement: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

type CheckFn = fn(&Scale) -> Result<String, String>;

const CHECKS: &[(&str, &str, CheckFn)] = &[
    ("example", "g_3, g_2 on (0,2,1,0,1) and their commuting square", check_example),
    ("commute", "g_j g_j' = g_j' g_j", check_commute),
    ("free_transitive", "a -> a.0 is a bijection N^d -> N^d", check_free_transitive),
    ("free_anywhere", "a.x = b.x implies a = b", check_free_anywhere),
    ("size_weight", "n(g_j x) = n(x) + 1 and W(g_j x) = W(x) + j - 1", check_size_weight),
    ("weight_definitions", "pairwise-distance W equals the floor double sum", check_weight_definitions),
    ("tight", "g_j preserves r-tightness for j < r", check_tight),
    ("full_sum", "configuration sum = product = recurrence, coefficients are box partition counts", check_full_sum),
    ("bijection", "box partitions map bijectively onto {n(x)=n, W(x)=W}", check_bijection),
    ("submodule_count", "T-stable enumeration matches the product formula at numeric q", check_submodule_count),
    ("strata", "|Hilb(x)| = q^W(x); Groebner and HNF enumerations cover the brute-force sets", check_strata),
    ("free_orbit", "orbit sums over free subsemigroups match the closed product", check_free_orbit),
];

/// Runs every check at the profile's scale, in a fixed order.
pub fn run(profile: Profile, exec: Exec) -> Vec<CheckOutcome> {
    let scale = profile.scale();
    exec.map(CHECKS, |&(name, statement, check)| {
        let start = Instant::now();
        let result = check(&scale);
        let elapsed = start.elapsed().as_millis();
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        CheckOutcome {
            name: name.to_string(),
            statement: statement.to_string(),
            passed,
            detail,
            elapsed_ms: Some(elapsed),
        }
    })
}

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.0).collect()
}

fn cfg(v: &[usize]) -> Config {
    Config::new(v.to_vec()).expect("nonempty")
}

fn sweep(max_d: usize, max_n: usize) -> impl Iterator<Item = Config> {
    (1..=max_d).flat_map(move |d| Config::all_up_to_size(d, max_n))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn check_example(_: &Scale) -> Result<String, String> {
    let x = cfg(&[0, 2, 1, 0, 1]);
    let g3 = x.apply_g(3).map_err(e)?;
    let g2 = x.apply_g(2).map_err(e)?;
    let g2g3 = g3.apply_g(2).map_err(e)?;
    let g3g2 = g2.apply_g(3).map_err(e)?;
    ensure(g3 == cfg(&[0, 2, 2, 0, 1]), || format!("g_3 x = {g3}"))?;
    ensure(g2 == cfg(&[0, 2, 2, 1, 0]), || format!("g_2 x = {g2}"))?;
    ensure(g2g3 == cfg(&[0, 2, 2, 2, 0]), || format!("g_2 g_3 x = {g2g3}"))?;
    ensure(g3g2 == g2g3, || format!("g_3 g_2 x = {g3g2}"))?;
    Ok(format!("g_3 x = {g3}, g_2 x = {g2}, g_2 g_3 x = g_3 g_2 x = {g2g3}"))
}

fn check_commute(s: &Scale) -> Result<String, String> {
    let (max_d, max_n) = s.operators;
    let mut pairs = 0usize;
    for x in sweep(max_d, max_n) {
        let d = x.dim();
        for j in 1..=d {
            let gj = x.apply_g(j).map_err(e)?;
            for k in j + 1..=d {
                let a = gj.apply_g(k).map_err(e)?;
                let b = x.apply_g(k).and_then(|y| y.apply_g(j)).map_err(e)?;
                ensure(a == b, || format!("g_{j} g_{k} {x} = {b} but g_{k} g_{j} {x} = {a}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} commuting pairs, d <= {max_d}, n(x) <= {max_n}"))
}

fn check_free_transitive(s: &Scale) -> Result<String, String> {
    let (max_d, max_n) = s.transitive;
    let mut checked = 0usize;
    for d in 1..=max_d {
        let origin = Config::origin(d).map_err(e)?;
        for n in 0..=max_n {
            let mut hits: std::collections::BTreeMap<Config, Vec<MultiIndex>> = Default::default();
            for a in MultiIndex::all_of_size(d, n) {
                hits.entry(origin.act(&a).map_err(e)?).or_default().push(a);
            }
            for x in Config::all_of_size(d, n) {
                let a = x.decompose().map_err(e)?;
                ensure(origin.act(&a).map_err(e)? == x, || format!("decompose({x}) = {a} misses"))?;
                let found = hits.get(&x).map(Vec::as_slice).unwrap_or(&[]);
                ensure(found == [a.clone()], || format!("{x} is hit by {found:?}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} configurations, d <= {max_d}, n(x) <= {max_n}"))
}

fn check_free_anywhere(s: &Scale) -> Result<String, String> {
    let (max_d, max_n) = s.free_anywhere;
    let mut checked = 0usize;
    for x in sweep(max_d, max_n) {
        let d = x.dim();
        let mut seen: BTreeSet<Config> = BTreeSet::new();
        for k in 0..=max_n {
            for a in MultiIndex::all_of_size(d, k) {
                let y = x.act(&a).map_err(e)?;
                ensure(seen.insert(y.clone()), || format!("two indices send {x} to {y}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} images distinct, d <= {max_d}, |a| <= {max_n}"))
}

fn check_size_weight(s: &Scale) -> Result<String, String> {
    let (max_d, max_n) = s.operators;
    let mut checked = 0usize;
    for x in sweep(max_d, max_n) {
        let c = stats::content(&x);
        for j in 1..=x.dim() {
            let y = x.apply_g(j).map_err(e)?;
            let cy = stats::content(&y);
            ensure(cy.t_exp == c.t_exp + 1, || format!("n(g_{j} {x}) = {}", cy.t_exp))?;
            ensure(cy.q_exp == c.q_exp + j - 1, || format!("W(g_{j} {x}) = {}", cy.q_exp))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (x, j) pairs, d <= {max_d}, n(x) <= {max_n}"))
}

fn check_weight_definitions(s: &Scale) -> Result<String, String> {
    let (max_d, max_n) = s.transitive;
    let max_d = max_d.max(5);
    let mut checked = 0usize;
    for x in sweep(max_d, max_n) {
        let (a, b) = (stats::weight(&x), stats::weight_floor_formula(&x));
        ensure(a == b, || format!("W({x}) = {a} but the floor sum gives {b}"))?;
        checked += 1;
    }
    Ok(format!("{checked} configurations, d <= {max_d}, n(x) <= {max_n}"))
}

fn check_tight(s: &Scale) -> Result<String, String> {
    let (max_d, max_n) = s.operators;
    let mut checked = 0usize;
    for x in sweep(max_d, max_n) {
        for r in 2..=x.dim() {
            if !x.is_r_tight(r).map_err(e)? {
                continue;
            }
            for j in 1..r {
                let y = x.apply_g(j).map_err(e)?;
                ensure(y.is_r_tight(r).map_err(e)?, || {
                    format!("{x} is {r}-tight but g_{j} of it, {y}, is not")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (x, r, j) triples, d <= {max_d}, n(x) <= {max_n}"))
}

fn check_full_sum(s: &Scale) -> Result<String, String> {
    let (max_d, max_t) = s.series;
    let mut terms = 0usize;
    for d in 1..=max_d {
        for t_cut in 0..=max_t {
            let configs = series::sum_over_configs(d, t_cut);
            let product = series::product_formula(d, t_cut);
            let recurrence = series::recurrence_formula(d, t_cut);
            ensure(configs == product, || format!("d={d} t_cut={t_cut}: configuration sum != product"))?;
            ensure(recurrence == product, || format!("d={d} t_cut={t_cut}: recurrence != product"))?;
            if t_cut == max_t {
                for ((n, w), c) in product.terms() {
                    let g = gaussian_count(n, d, w);
                    ensure(c as u128 == g, || format!("d={d}: [t^{n} q^{w}] = {c} but box count {g}"))?;
                    terms += 1;
                }
            }
        }
    }
    Ok(format!("d <= {max_d}, t_cut <= {max_t}, {terms} coefficients matched"))
}

fn check_bijection(s: &Scale) -> Result<String, String> {
    let (max_d, max_n) = s.bijection;
    let mut checked = 0usize;
    for d in 1..=max_d {
        for n in 0..=max_n {
            let mut image = BTreeSet::new();
            for lambda in enumerate_box_partitions(n, d - 1) {
                let x = partition_to_config(&lambda, n, d).map_err(e)?;
                let c = stats::content(&x);
                ensure(c.t_exp == n && c.q_exp == lambda.size(), || {
                    format!("{lambda} -> {x} has content ({}, {})", c.t_exp, c.q_exp)
                })?;
                ensure(image.insert(x.clone()), || format!("{x} hit twice"))?;
            }
            let target: BTreeSet<Config> = Config::all_of_size(d, n).collect();
            ensure(image == target, || format!("d={d} n={n}: image is not all of size n"))?;
            checked += target.len();
        }
    }
    Ok(format!("{checked} configurations, d <= {max_d}, n <= {max_n}"))
}

fn check_submodule_count(s: &Scale) -> Result<String, String> {
    let mut lines = Vec::new();
    for &(q, d, n_trunc) in &s.modules {
        let counts = fq::count_by_colength(q, d, n_trunc).map_err(e)?;
        let expected: Vec<u128> = series::product_formula(d, n_trunc)
            .eval_q(q)
            .into_iter()
            .map(|c| c as u128)
            .collect();
        ensure(counts == expected, || format!("q={q} d={d}: counted {counts:?}, formula {expected:?}"))?;
        lines.push(format!("q={q} d={d}: {counts:?}"));
    }
    Ok(lines.join("; "))
}

fn check_strata(s: &Scale) -> Result<String, String> {
    let mut strata = 0usize;
    for &(q, d, max_n) in &s.modules {
        for n in 0..=max_n {
            let brute = fq::enumerate_colength(q, d, n, EnumOptions::default()).map_err(e)?;
            let brute_set: BTreeSet<_> = brute.iter().cloned().collect();
            let n_trunc = fq::working_truncation(n);

            let mut union = BTreeSet::new();
            for x in Config::all_of_size(d, n) {
                let expected = (q as u128).pow(stats::weight(&x) as u32);
                let observed: BTreeSet<_> = brute
                    .iter()
                    .filter(|m| fq::leading_module(m).is_ok_and(|lt| lt == x))
                    .cloned()
                    .collect();
                let built =
                    fq::enumerate_stratum_in(&x, q, n_trunc, EnumOptions::default()).map_err(e)?;
                let built_set: BTreeSet<_> = built.iter().cloned().collect();
                ensure(observed.len() as u128 == expected, || {
                    format!("q={q} x={x}: |Hilb| = {} but q^W = {expected}", observed.len())
                })?;
                ensure(built_set.len() == built.len(), || format!("q={q} x={x}: repeated Groebner bases"))?;
                ensure(built_set == observed, || format!("q={q} x={x}: Groebner enumeration differs"))?;
                union.extend(built_set);
                strata += 1;
            }
            ensure(union == brute_set, || format!("q={q} d={d} n={n}: strata do not cover"))?;

            let hnf = fq::hnf_enumerate(q, d, n).map_err(e)?;
            let hnf_set: BTreeSet<_> = hnf.iter().cloned().collect();
            ensure(hnf_set.len() == hnf.len(), || format!("q={q} d={d} n={n}: repeated HNF"))?;
            ensure(hnf_set == brute_set, || format!("q={q} d={d} n={n}: HNF set differs"))?;
        }
    }
    Ok(format!("{strata} strata over {:?}", s.modules))
}

/// `count` random generator sets that are linearly independent, each with a
/// random base point of size at most 2. Seeded, so runs are reproducible.
pub fn random_free_cases(count: usize, seed: u64) -> Vec<(Config, GeneratorSet)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let d = rng.random_range(1..=4);
        let r = rng.random_range(1..=d.min(3));
        let gens: Vec<MultiIndex> = (0..r)
            .map(|_| MultiIndex::new((0..d).map(|_| rng.random_range(0..=2)).collect()).expect("d >= 1"))
            .collect();
        let Ok(set) = GeneratorSet::new(d, gens) else { continue };
        if !series::is_free_basis(&set) {
            continue;
        }
        let size = rng.random_range(0..=2);
        let x0 = Config::all_of_size(d, size)
            .nth(rng.random_range(0..Config::all_of_size(d, size).count()))
            .expect("in range");
        out.push((x0, set));
    }
    out
}

fn check_free_orbit(s: &Scale) -> Result<String, String> {
    let cases = random_free_cases(s.orbit_samples, 0x5eed);
    for (x0, gens) in &cases {
        let brute = series::orbit_sum_truncated(x0, gens, s.orbit_t_cut).map_err(e)?;
        let closed = series::free_orbit_formula(x0, gens, s.orbit_t_cut).map_err(e)?;
        ensure(brute == closed, || {
            format!("x0={x0} gens={:?}: brute force and closed form differ", gens.generators())
        })?;
    }
    Ok(format!("{} random free generator sets, t_cut = {}", cases.len(), s.orbit_t_cut))
}
