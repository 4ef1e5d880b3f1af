use proptest::prelude::*;
use spiral_core::series::{self, GeneratorSet};
use spiral_core::{stats, Config, MultiIndex};

fn config() -> impl Strategy<Value = Config> {
    (1usize..=6).prop_flat_map(|d| proptest::collection::vec(0usize..=6, d)).prop_map(|v| Config::new(v).unwrap())
}

fn config_and_index() -> impl Strategy<Value = (Config, MultiIndex)> {
    (1usize..=5).prop_flat_map(|d| {
        (proptest::collection::vec(0usize..=4, d), proptest::collection::vec(0usize..=3, d))
            .prop_map(|(x, a)| (Config::new(x).unwrap(), MultiIndex::new(a).unwrap()))
    })
}

proptest! {
    #[test]
    fn operators_commute(x in config(), j in 1usize..=6, k in 1usize..=6) {
        let d = x.dim();
        let (j, k) = ((j - 1) % d + 1, (k - 1) % d + 1);
        prop_assert_eq!(
            x.apply_g(j).unwrap().apply_g(k).unwrap(),
            x.apply_g(k).unwrap().apply_g(j).unwrap()
        );
    }

    #[test]
    fn lowest_points_fixed_and_ranking_kept(x in config(), j in 1usize..=6) {
        let j = (j - 1) % x.dim() + 1;
        let before = x.sorted_slots();
        let after = x.apply_g(j).unwrap().sorted_slots();
        prop_assert_eq!(&before[..j - 1], &after[..j - 1]);
        prop_assert!(after.windows(2).all(|w| w[0] < w[1]));
        for k in j - 1..before.len() {
            prop_assert!(after[k] > before[k]);
        }
    }

    #[test]
    fn g1_matches_general_operator_and_keeps_weight(x in config()) {
        prop_assert_eq!(x.g1(), x.apply_g(1).unwrap());
        prop_assert_eq!(stats::weight(&x.g1()), stats::weight(&x));
    }

    #[test]
    fn content_is_multiplicative((x, a) in config_and_index()) {
        let y = x.act(&a).unwrap();
        let expected = stats::content(&x).combine(stats::content_of_index(&a));
        prop_assert_eq!(stats::content(&y), expected);
    }

    #[test]
    fn weight_is_box_bounded(x in config()) {
        prop_assert!(stats::weight(&x) <= (x.dim() - 1) * x.size());
        prop_assert_eq!(stats::weight(&x), stats::weight_floor_formula(&x));
    }

    #[test]
    fn decompose_inverts_action(x in config()) {
        let a = x.decompose().unwrap();
        prop_assert_eq!(a.total(), x.size());
        prop_assert_eq!(Config::origin(x.dim()).unwrap().act(&a).unwrap(), x);
    }

    #[test]
    fn action_is_free_at_any_base((x, a) in config_and_index(), b in proptest::collection::vec(0usize..=3, 5)) {
        let b = MultiIndex::new(b[..x.dim()].to_vec()).unwrap();
        let (ya, yb) = (x.act(&a).unwrap(), x.act(&b).unwrap());
        prop_assert_eq!(ya == yb, a == b);
        prop_assert_eq!(ya.find_index_from(&x).unwrap(), Some(a));
    }

    #[test]
    fn orbit_series_are_nonnegative(
        gens in proptest::collection::vec(proptest::collection::vec(0usize..=2, 3), 1..=3),
        t_cut in 0usize..=6,
    ) {
        let gens: Vec<MultiIndex> = gens.into_iter().map(|g| MultiIndex::new(g).unwrap()).collect();
        if let Ok(set) = GeneratorSet::new(3, gens) {
            let p = series::orbit_sum_truncated(&Config::origin(3).unwrap(), &set, t_cut).unwrap();
            prop_assert!(p.is_nonnegative());
            prop_assert!(p.q_degree_bounded_by(2));
        }
    }
}
