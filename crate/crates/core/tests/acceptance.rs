//! Acceptance criteria 1 to 11. Each checks the library against an oracle
//! written here from the definitions and prints one `criterion N` line. Runs
//! without the libtest harness so the lines always reach the output; any
//! failure makes the process exit nonzero.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spiral_core::fq::{self, EnumOptions};
use spiral_core::partitions::{enumerate_box_partitions, gaussian_count, partition_to_config};
use spiral_core::series::{self, GeneratorSet};
use spiral_core::{stats, Config, MultiIndex};

fn criterion(number: u32, title: &str, budget: Duration, body: impl FnOnce() -> String) -> bool {
    let start = Instant::now();
    let result = panic::catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    match result {
        Ok(summary) if elapsed <= budget => {
            println!("criterion {number}: PASS  {title}  ({summary}; {elapsed:.2?})");
            true
        }
        Ok(_) => {
            println!("criterion {number}: FAIL  {title}  (took {elapsed:.2?}, budget {budget:.0?})");
            false
        }
        Err(_) => {
            println!("criterion {number}: FAIL  {title}");
            false
        }
    }
}

const MINUTE: Duration = Duration::from_secs(60);

// Reference model: a configuration as d points of the cylinder, each stored
// as its scaled height H = d * level + seat, seat in 1..=d.

fn heights(x: &[usize]) -> Vec<usize> {
    let d = x.len();
    let mut h: Vec<usize> = x.iter().enumerate().map(|(i, &l)| d * l + i + 1).collect();
    h.sort_unstable();
    h
}

fn seat_of(h: usize, d: usize) -> usize {
    (h - 1) % d + 1
}

fn from_heights(h: &[usize], d: usize) -> Vec<usize> {
    let mut x = vec![usize::MAX; d];
    for &v in h {
        let seat = seat_of(v, d);
        assert_eq!(x[seat - 1], usize::MAX, "two points on seat {seat}");
        x[seat - 1] = (v - 1) / d;
    }
    x
}

/// g_j by literal search: the lowest j-1 points stay, every other point
/// moves up one step at a time until it lands on an available seat.
fn reference_g(x: &[usize], j: usize) -> Vec<usize> {
    let d = x.len();
    let mut h = heights(x);
    let available: BTreeSet<usize> = h[j - 1..].iter().map(|&v| seat_of(v, d)).collect();
    for v in &mut h[j - 1..] {
        let mut s = *v + 1;
        while !available.contains(&seat_of(s, d)) {
            s += 1;
        }
        *v = s;
    }
    from_heights(&h, d)
}

fn reference_act(a: &[usize], x: &[usize]) -> Vec<usize> {
    let mut y = x.to_vec();
    for j in (1..=a.len()).rev() {
        for _ in 0..a[j - 1] {
            y = reference_g(&y, j);
        }
    }
    y
}

/// Sum over pairs of floor(h' - h), heights sorted.
fn reference_weight(x: &[usize]) -> usize {
    let d = x.len();
    let h = heights(x);
    let mut w = 0;
    for k in 0..d {
        for j in 0..k {
            w += (h[k] - h[j]) / d;
        }
    }
    w
}

fn reference_tight(x: &[usize], r: usize) -> bool {
    let d = x.len();
    let h = heights(x);
    let seats: BTreeSet<usize> = h[r - 1..].iter().map(|&v| seat_of(v, d)).collect();
    let mut s = h[r - 2] + 1;
    while !seats.contains(&seat_of(s, d)) {
        s += 1;
    }
    s == h[r - 1]
}

fn compositions(d: usize, n: usize) -> Vec<Vec<usize>> {
    if d == 1 {
        return vec![vec![n]];
    }
    (0..=n)
        .flat_map(|first| {
            compositions(d - 1, n - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn configs_up_to(d: usize, n: usize) -> Vec<Vec<usize>> {
    (0..=n).flat_map(|k| compositions(d, k)).collect()
}

fn lib(x: &[usize]) -> Config {
    Config::new(x.to_vec()).unwrap()
}

/// Dense truncated series in t with polynomial coefficients in q.
type Dense = BTreeMap<(usize, usize), i64>;

fn dense_mul(a: &Dense, b: &Dense, t_cut: usize) -> Dense {
    let mut out = Dense::new();
    for (&(n1, w1), &c1) in a {
        for (&(n2, w2), &c2) in b {
            if n1 + n2 <= t_cut {
                *out.entry((n1 + n2, w1 + w2)).or_default() += c1 * c2;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// 1 / (1 - t^n q^w), expanded directly as a geometric series.
fn dense_geometric(n: usize, w: usize, t_cut: usize) -> Dense {
    (0..=t_cut / n).map(|k| ((k * n, k * w), 1)).collect()
}

fn lib_terms(p: &spiral_core::BiPoly) -> Dense {
    p.terms().collect()
}

fn criterion_01_worked_example() -> bool {
    criterion(1, "g_3, g_2 on (0,2,1,0,1)", Duration::from_millis(1), || {
        let x = lib(&[0, 2, 1, 0, 1]);
        let g3 = x.apply_g(3).unwrap();
        let g2 = x.apply_g(2).unwrap();
        assert_eq!(g3.levels(), [0, 2, 2, 0, 1]);
        assert_eq!(g2.levels(), [0, 2, 2, 1, 0]);
        assert_eq!(g3.apply_g(2).unwrap().levels(), [0, 2, 2, 2, 0]);
        assert_eq!(g2.apply_g(3).unwrap().levels(), [0, 2, 2, 2, 0]);
        "four values exact".into()
    })
}

fn criterion_02_operators_commute() -> bool {
    criterion(2, "g_j g_j' = g_j' g_j", MINUTE, || {
        let mut pairs = 0;
        for d in 1..=4 {
            for x in configs_up_to(d, 5) {
                let c = lib(&x);
                for j in 1..=d {
                    let gj = c.apply_g(j).unwrap();
                    assert_eq!(gj.levels(), reference_g(&x, j), "g_{j} {x:?}");
                    for k in 1..=d {
                        let lhs = gj.apply_g(k).unwrap();
                        let rhs = c.apply_g(k).unwrap().apply_g(j).unwrap();
                        assert_eq!(lhs, rhs, "g_{k} g_{j} {x:?}");
                        pairs += 1;
                    }
                }
            }
        }
        format!("{pairs} ordered pairs, d <= 4, n(x) <= 5")
    })
}

fn criterion_03_free_transitive() -> bool {
    criterion(3, "a -> a.0 bijective", 2 * MINUTE, || {
        let mut checked = 0;
        for d in 1..=4 {
            let origin = vec![0; d];
            for n in 0..=6 {
                let mut solutions: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
                for a in compositions(d, n) {
                    solutions.entry(reference_act(&a, &origin)).or_default().push(a);
                }
                for x in compositions(d, n) {
                    let a = lib(&x).decompose().unwrap();
                    let back = Config::origin(d).unwrap().act(&a).unwrap();
                    assert_eq!(back.levels(), x.as_slice(), "act(decompose({x:?}))");
                    assert_eq!(solutions.get(&x), Some(&vec![a.as_slice().to_vec()]), "solutions for {x:?}");
                    checked += 1;
                }
            }
        }
        format!("{checked} configurations, d <= 4, n(x) <= 6")
    })
}

fn criterion_04_size_and_weight_lemmas() -> bool {
    criterion(4, "n(g_j x) = n(x)+1, W(g_j x) = W(x)+j-1", MINUTE, || {
        let mut checked = 0;
        for d in 1..=4 {
            for x in configs_up_to(d, 6) {
                let n: usize = x.iter().sum();
                let w = reference_weight(&x);
                for j in 1..=d {
                    let y = lib(&x).apply_g(j).unwrap();
                    let c = stats::content(&y);
                    assert_eq!(c.t_exp, n + 1, "n(g_{j} {x:?})");
                    assert_eq!(c.q_exp, w + j - 1, "W(g_{j} {x:?})");
                    assert_eq!(reference_weight(y.levels()), w + j - 1);
                    checked += 1;
                }
            }
        }
        format!("{checked} (x, j) pairs")
    })
}

fn criterion_05_weight_definitions_agree() -> bool {
    criterion(5, "weight == weight_floor_formula", MINUTE, || {
        let mut checked = 0;
        for d in 1..=5 {
            for x in configs_up_to(d, 6) {
                let c = lib(&x);
                let expected = reference_weight(&x);
                assert_eq!(stats::weight(&c), expected, "W({x:?})");
                assert_eq!(stats::weight_floor_formula(&c), expected, "floor formula at {x:?}");
                checked += 1;
            }
        }
        format!("{checked} configurations, d <= 5, n(x) <= 6")
    })
}

fn box_partitions_count(rows: usize, cols: usize, size: usize) -> u128 {
    fn go(rows: usize, max_part: usize, remaining: usize) -> u128 {
        if remaining == 0 {
            return 1;
        }
        if rows == 0 {
            return 0;
        }
        (1..=max_part.min(remaining)).map(|p| go(rows - 1, p, remaining - p)).sum()
    }
    go(rows, cols, size)
}

fn criterion_06_three_way_series() -> bool {
    criterion(6, "configuration sum = product = recurrence", MINUTE, || {
        let mut keys = 0;
        for d in 1..=5 {
            for t_cut in 0..=8 {
                let mut product = Dense::from([((0, 0), 1)]);
                for i in 0..d {
                    product = dense_mul(&product, &dense_geometric(1, i, t_cut), t_cut);
                }
                let mut direct = Dense::new();
                for x in configs_up_to(d, t_cut) {
                    *direct.entry((x.iter().sum(), reference_weight(&x))).or_default() += 1;
                }
                assert_eq!(direct, product, "d={d} t_cut={t_cut}");
                assert_eq!(lib_terms(&series::sum_over_configs(d, t_cut)), product);
                assert_eq!(lib_terms(&series::product_formula(d, t_cut)), product);
                assert_eq!(lib_terms(&series::recurrence_formula(d, t_cut)), product);
                for (&(n, w), &c) in &product {
                    assert_eq!(gaussian_count(n, d, w), c as u128, "({n},{w}) at d={d}");
                    assert_eq!(box_partitions_count(n, d - 1, w), c as u128);
                    keys += 1;
                }
            }
        }
        format!("{keys} coefficients, d <= 5, t_cut <= 8")
    })
}

fn criterion_07_partition_bijection() -> bool {
    criterion(7, "box partitions onto {n(x)=n, W(x)=W}", MINUTE, || {
        let mut checked = 0;
        for d in 1..=4 {
            for n in 0..=6 {
                let mut by_weight: BTreeMap<usize, BTreeSet<Vec<usize>>> = BTreeMap::new();
                for x in compositions(d, n) {
                    by_weight.entry(reference_weight(&x)).or_default().insert(x);
                }
                let mut images: BTreeMap<usize, BTreeSet<Vec<usize>>> = BTreeMap::new();
                for lambda in enumerate_box_partitions(n, d - 1) {
                    assert!(lambda.parts().iter().all(|&p| p < d) && lambda.len() <= n);
                    let x = partition_to_config(&lambda, n, d).unwrap();
                    let fresh = images.entry(lambda.size()).or_default().insert(x.levels().to_vec());
                    assert!(fresh, "{lambda} collides");
                    checked += 1;
                }
                assert_eq!(images, by_weight, "d={d} n={n}");
            }
        }
        format!("{checked} partitions, d <= 4, n <= 6")
    })
}

/// h_n(1, q, ..., q^{d-1}) by summing over multisets of exponents.
fn complete_homogeneous(q: u128, d: usize, n: usize) -> u128 {
    compositions(d, n)
        .iter()
        .map(|m| m.iter().enumerate().map(|(i, &k)| q.pow((i * k) as u32)).product::<u128>())
        .sum()
}

fn criterion_08_submodule_counts() -> bool {
    criterion(8, "T-stable submodule counts by colength", 5 * MINUTE, || {
        let frozen: [(u64, usize, usize, &[u128]); 3] =
            [(2, 2, 3, &[1, 3, 7, 15]), (2, 3, 2, &[1, 7, 35]), (3, 2, 2, &[1, 4, 13])];
        let mut lines = Vec::new();
        for (q, d, n_trunc, expected) in frozen {
            let oracle: Vec<u128> = (0..=n_trunc).map(|n| complete_homogeneous(q as u128, d, n)).collect();
            assert_eq!(oracle, expected, "oracle at q={q} d={d}");
            let counts = fq::count_by_colength(q, d, n_trunc).unwrap();
            assert_eq!(counts, expected, "enumeration at q={q} d={d}");
            let at_q: Vec<u128> =
                series::product_formula(d, n_trunc).eval_q(q).into_iter().map(|c| c as u128).collect();
            assert_eq!(at_q, expected, "product formula at q={q} d={d}");
            lines.push(format!("q={q} d={d}: {counts:?}"));
        }
        lines.join(", ")
    })
}

fn criterion_09_stratum_law() -> bool {
    criterion(9, "|Hilb(x)| = q^W(x), Groebner and HNF sets", 5 * MINUTE, || {
        let mut strata = 0;
        for q in [2u64, 3] {
            for d in [2usize, 3] {
                for n in 0..=3 {
                    let brute = fq::enumerate_colength(q, d, n, EnumOptions::default()).unwrap();
                    let brute_set: BTreeSet<_> = brute.iter().cloned().collect();
                    assert_eq!(brute_set.len(), brute.len());
                    assert_eq!(brute.len() as u128, complete_homogeneous(q as u128, d, n));
                    for m in &brute {
                        assert!(m.is_t_stable() && m.codim() == n);
                    }

                    let mut union = BTreeSet::new();
                    for x in compositions(d, n) {
                        let x = lib(&x);
                        let stratum: BTreeSet<_> =
                            brute.iter().filter(|m| fq::leading_module(m).unwrap() == x).cloned().collect();
                        let expected = (q as u128).pow(reference_weight(x.levels()) as u32);
                        assert_eq!(stratum.len() as u128, expected, "q={q} x={x}");
                        let built = fq::enumerate_stratum_in(&x, q, fq::working_truncation(n), EnumOptions::default())
                            .unwrap();
                        let built_set: BTreeSet<_> = built.iter().cloned().collect();
                        assert_eq!(built_set.len(), built.len(), "repeated bases at q={q} x={x}");
                        assert_eq!(built_set, stratum, "Groebner stratum q={q} x={x}");
                        union.extend(built_set);
                        strata += 1;
                    }
                    assert_eq!(union, brute_set, "strata cover q={q} d={d} n={n}");

                    let hnf: BTreeSet<_> = fq::hnf_enumerate(q, d, n).unwrap().into_iter().collect();
                    assert_eq!(hnf, brute_set, "HNF q={q} d={d} n={n}");
                }
            }
        }
        format!("{strata} strata, q in {{2,3}}, d in {{2,3}}, n <= 3")
    })
}

/// Rank over Q by fraction-free elimination on small integer rows.
fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        let (top, below) = m.split_at_mut(r + 1);
        for row in below {
            let (a, b) = (top[r][c], row[c]);
            for (v, &pv) in row.iter_mut().zip(&top[r]) {
                *v = *v * a - pv * b;
            }
        }
        r += 1;
    }
    r
}

fn criterion_10_free_orbit_closed_form() -> bool {
    criterion(10, "orbit sums of free subsemigroups", MINUTE, || {
        let t_cut = 8;
        let mut rng = ChaCha8Rng::seed_from_u64(20261016);
        let mut cases = 0;
        let mut attempts = 0;
        while cases < 60 {
            attempts += 1;
            let d = rng.random_range(1..=4usize);
            let r = rng.random_range(1..=d.min(3));
            let gens: Vec<Vec<usize>> = (0..r).map(|_| (0..d).map(|_| rng.random_range(0..=2)).collect()).collect();
            let int_rows: Vec<Vec<i64>> = gens.iter().map(|g| g.iter().map(|&v| v as i64).collect()).collect();
            if rank(&int_rows) < r {
                continue;
            }
            let x0: Vec<usize> = (0..d).map(|_| rng.random_range(0..=1)).collect();

            let n0: usize = x0.iter().sum();
            let mut closed = Dense::new();
            if n0 <= t_cut {
                closed.insert((n0, reference_weight(&x0)), 1);
            }
            for g in &gens {
                let n: usize = g.iter().sum();
                let w: usize = g.iter().enumerate().map(|(i, &v)| i * v).sum();
                closed = dense_mul(&closed, &dense_geometric(n, w, t_cut), t_cut);
            }

            let set =
                GeneratorSet::new(d, gens.iter().map(|g| MultiIndex::new(g.clone()).unwrap()).collect()).unwrap();
            let brute = series::orbit_sum_truncated(&lib(&x0), &set, t_cut).unwrap();
            assert_eq!(lib_terms(&brute), closed, "x0={x0:?} gens={gens:?}");
            let lib_closed = series::free_orbit_formula(&lib(&x0), &set, t_cut).unwrap();
            assert_eq!(lib_terms(&lib_closed), closed, "closed form x0={x0:?} gens={gens:?}");
            cases += 1;
        }
        format!("{cases} generator sets from {attempts} draws, t_cut = {t_cut}")
    })
}

fn criterion_11_tightness_preserved() -> bool {
    criterion(11, "g_j keeps r-tight points r-tight for j < r", MINUTE, || {
        let mut checked = 0;
        for d in 2..=4 {
            for x in configs_up_to(d, 6) {
                for r in 2..=d {
                    let tight = reference_tight(&x, r);
                    assert_eq!(lib(&x).is_r_tight(r).unwrap(), tight, "{x:?} r={r}");
                    if !tight {
                        continue;
                    }
                    for j in 1..r {
                        let y = lib(&x).apply_g(j).unwrap();
                        assert!(reference_tight(y.levels(), r), "g_{j} {x:?} r={r}");
                        assert!(y.is_r_tight(r).unwrap());
                        checked += 1;
                    }
                }
            }
        }
        format!("{checked} (x, r, j) triples")
    })
}

fn main() {
    let checks: [fn() -> bool; 11] = [
        criterion_01_worked_example,
        criterion_02_operators_commute,
        criterion_03_free_transitive,
        criterion_04_size_and_weight_lemmas,
        criterion_05_weight_definitions_agree,
        criterion_06_three_way_series,
        criterion_07_partition_bijection,
        criterion_08_submodule_counts,
        criterion_09_stratum_law,
        criterion_10_free_orbit_closed_form,
        criterion_11_tightness_preserved,
    ];
    let failed = checks.iter().filter(|check| !check()).count();
    println!("acceptance: {} of {} criteria passed", checks.len() - failed, checks.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
