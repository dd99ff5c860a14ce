use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stgames::additivity::{
    additive_fast_metrics, coadditive_fast_metrics, export_graph, fast_metrics, is_additive,
    is_biadditive, is_coadditive, BiAdditiveMatrix,
};
use stgames::cobb_douglas::{
    cd_fully_cooperative, payoff, CobbDouglasConfig, CobbDouglasGame, ContributionProfile,
    PayoffScheme, ValueFunction,
};
use stgames::game_core::{
    in_core, is_convex, is_convex_nested, shapley_value, shapley_value_stratified, TuGame,
};
use stgames::random;
use stgames::st_game::{
    altruistic_contribution, competitive_contribution, from_ntu, is_fully_cooperative, is_sensible,
    total_marginal, Consequence, OutcomeId, StGame, SubsetUtility,
};
use stgames::PlayerSet;

const TOL: f64 = 1e-9;

fn pairs(n: usize) -> impl Iterator<Item = (PlayerSet, PlayerSet)> {
    let team = PlayerSet::full(n);
    team.nonempty_subsets()
        .flat_map(move |a| team.difference(a).nonempty_subsets().map(move |b| (a, b)))
}

fn tu_strategy(max_n: usize) -> impl Strategy<Value = TuGame> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-10.0f64..10.0, (1usize << n) - 1).prop_map(move |v| {
            let mut values = vec![0.0];
            values.extend(v);
            TuGame::new(n, values).unwrap()
        })
    })
}

fn matrix_strategy(max_n: usize, lo: f64) -> impl Strategy<Value = BiAdditiveMatrix> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(lo..1.0f64, n * n)
            .prop_map(move |e| BiAdditiveMatrix::new(n, e).unwrap())
    })
}

fn scheme_strategy() -> impl Strategy<Value = PayoffScheme> {
    prop_oneof![
        Just(PayoffScheme::Proportional),
        Just(PayoffScheme::Equal),
        (0.0f64..=1.0).prop_map(PayoffScheme::Hybrid),
    ]
}

/// `(config, profile)` with `n` players and a power value function.
fn cd_strategy() -> impl Strategy<Value = (CobbDouglasConfig, ContributionProfile)> {
    (2usize..=5).prop_flat_map(|n| {
        (
            0.0f64..=1.0,
            0.1f64..3.0,
            1.0f64..3.0,
            prop::collection::vec((0.1f64..2.0, 0.0f64..=1.0), n),
        )
            .prop_map(|(theta, alpha, beta, rx)| {
                let resources: Vec<f64> = rx.iter().map(|p| p.0).collect();
                let x = rx.iter().map(|&(cap, f)| cap * f).collect();
                let cfg = CobbDouglasConfig::new(
                    theta,
                    ValueFunction::power(alpha, beta).unwrap(),
                    resources,
                )
                .unwrap();
                (cfg, ContributionProfile(x))
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shapley_is_efficient_and_forms_agree(g in tu_strategy(7)) {
        let phi = shapley_value(&g);
        prop_assert!((phi.total() - g.value(g.grand_coalition())).abs() < 1e-9);
        let other = shapley_value_stratified(&g);
        for (x, y) in phi.as_slice().iter().zip(other.as_slice()) {
            prop_assert!((x - y).abs() < 1e-9);
        }
        prop_assert_eq!(is_convex(&g, TOL), is_convex_nested(&g, TOL));
    }

    #[test]
    fn convex_games_keep_shapley_in_core(seed in any::<u64>(), n in 1usize..=7) {
        let g = random::convex_game(&mut ChaCha8Rng::seed_from_u64(seed), n, 0.5).unwrap();
        prop_assert!(is_convex(&g, TOL));
        prop_assert!(in_core(&g, &shapley_value(&g), TOL).unwrap());
    }

    #[test]
    fn decomposition_on_tabulated_games(seed in any::<u64>(), n in 1usize..=5) {
        let g = random::st_game(&mut ChaCha8Rng::seed_from_u64(seed), n, -5.0, 5.0).unwrap();
        for (a, b) in pairs(n) {
            let m = total_marginal(&g, a, b).unwrap();
            let c = competitive_contribution(&g, a, b).unwrap();
            let alt = altruistic_contribution(&g, a, b).unwrap();
            prop_assert!((m - alt - c).abs() <= 1e-9);
        }
    }

    #[test]
    fn matrix_fast_path_and_graph(m in matrix_strategy(6, -1.0)) {
        let n = m.size();
        let g = m.to_game().unwrap();
        prop_assert!(is_biadditive(&g, TOL).unwrap());
        let graph = export_graph(&m);
        for (a, b) in pairs(n) {
            let f = fast_metrics(&m, a, b).unwrap();
            prop_assert!((f.competitive - competitive_contribution(&g, a, b).unwrap()).abs() < 1e-9);
            prop_assert!((f.altruism - altruistic_contribution(&g, a, b).unwrap()).abs() < 1e-9);
            prop_assert!((f.competitive - graph.incoming_weight(a, a.union(b))).abs() < 1e-9);
            // the reconstruction identity: c = u_A(A∪B), a = u_B(A)
            prop_assert!((f.competitive - m.utility(a, a.union(b))).abs() < 1e-9);
            prop_assert!((f.altruism - m.utility(b, a)).abs() < 1e-9);
        }
    }

    #[test]
    fn altruism_leaves_a_when_b_is_the_complement(m in matrix_strategy(6, -1.0)) {
        let n = m.size();
        let graph = export_graph(&m);
        let team = PlayerSet::full(n);
        for a in team.nonempty_subsets().filter(|&a| a != team) {
            let f = fast_metrics(&m, a, team.difference(a)).unwrap();
            prop_assert!((f.altruism - graph.outgoing_weight(a)).abs() < 1e-9);
        }
    }

    #[test]
    fn composite_matrix_condition_gives_sensibility(m in matrix_strategy(5, 0.0)) {
        // nonnegative entries satisfy the hypothesis outright
        let g = m.to_game().unwrap();
        prop_assert!(is_fully_cooperative(&g, TOL).unwrap());
        prop_assert!(is_sensible(&g, TOL).unwrap());
    }

    #[test]
    fn structured_fast_paths(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let add = random::additive_game(&mut rng, n, random::IndividualShape::Arbitrary).unwrap();
        let co = random::coadditive_game(&mut rng, n, -1.0, 1.0).unwrap();
        for (a, b) in pairs(n) {
            let f = additive_fast_metrics(&add, a, b).unwrap();
            prop_assert!((f.altruism - altruistic_contribution(&add, a, b).unwrap()).abs() < 1e-9);
            prop_assert!((f.competitive - competitive_contribution(&add, a, b).unwrap()).abs() < 1e-9);
            let f = coadditive_fast_metrics(&co, a, b).unwrap();
            prop_assert!((f.altruism - altruistic_contribution(&co, a, b).unwrap()).abs() < 1e-9);
            prop_assert!((f.competitive - competitive_contribution(&co, a, b).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn detectors_are_monotone_in_tolerance(seed in any::<u64>(), n in 1usize..=4, noise in 0.0f64..1e-3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random::biadditive_matrix(&mut rng, n, -1.0, 1.0).unwrap();
        let mut flip = false;
        let g = StGame::from_fn(n, |a, s| {
            flip = !flip;
            m.utility(a, s) + if flip { noise } else { -noise }
        })
        .unwrap();
        for tol in [1e-6, 1e-4, 1e-2, 1.0] {
            if is_additive(&g, tol).unwrap() {
                prop_assert!(is_additive(&g, tol * 10.0).unwrap());
            }
            if is_coadditive(&g, tol).unwrap() {
                prop_assert!(is_coadditive(&g, tol * 10.0).unwrap());
            }
        }
    }

    #[test]
    fn ntu_competitive_is_member_sum(seed in any::<u64>(), n in 1usize..=4) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.random_range(1..=4);
        let outcomes: Vec<String> = (0..k).map(|i| format!("o{i}")).collect();
        let mut v = Consequence::unassigned(n);
        for s in PlayerSet::full(n).nonempty_subsets() {
            v.set(s, OutcomeId(rng.random_range(0..k) as u32));
        }
        let individual: Vec<Vec<f64>> =
            (0..n).map(|_| (0..k).map(|_| rng.random_range(-1.0..1.0)).collect()).collect();
        let g = from_ntu(n, outcomes, v.clone(), &individual).unwrap();
        let team = PlayerSet::full(n);
        for a in team.nonempty_subsets() {
            for b in team.difference(a).subsets() {
                let x = v.get(a.union(b)).index();
                let sum: f64 = a.players().map(|p| individual[p][x]).sum();
                prop_assert!((competitive_contribution(&g, a, b).unwrap() - sum).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn payoffs_partition_the_value((cfg, x) in cd_strategy(), scheme in scheme_strategy(), split in any::<u64>()) {
        let g = CobbDouglasGame::new(cfg, scheme, x).unwrap();
        let team = g.team();
        // random two-block partition of every coalition
        for s in team.nonempty_subsets() {
            let a = PlayerSet::from_bits(s.bits() & split);
            let b = s.difference(a);
            let total = payoff(scheme, &g, a, s).unwrap() + payoff(scheme, &g, b, s).unwrap();
            let value = g.coalition_value(s);
            prop_assert!((total - value).abs() <= 1e-9 * value.max(1.0));
        }
    }

    #[test]
    fn hybrid_payoff_is_affine_in_gamma((cfg, x) in cd_strategy(), gamma in 0.0f64..=1.0) {
        let g = CobbDouglasGame::new(cfg, PayoffScheme::Hybrid(gamma), x).unwrap();
        let team = g.team();
        for s in team.nonempty_subsets() {
            for a in s.subsets() {
                let h = payoff(PayoffScheme::Hybrid(gamma), &g, a, s).unwrap();
                let blend = gamma * payoff(PayoffScheme::Proportional, &g, a, s).unwrap()
                    + (1.0 - gamma) * payoff(PayoffScheme::Equal, &g, a, s).unwrap();
                prop_assert!((h - blend).abs() <= 1e-9 * h.abs().max(1.0));
            }
        }
    }

    #[test]
    fn proportional_with_increasing_returns_cooperates((cfg, x) in cd_strategy()) {
        let g = CobbDouglasGame::new(cfg, PayoffScheme::Proportional, x).unwrap();
        for (a, b) in pairs(g.players()) {
            prop_assert!(altruistic_contribution(&g, a, b).unwrap() >= -1e-9);
            prop_assert!(cd_fully_cooperative(&g, a, b, 1e-9).unwrap());
        }
    }
}

#[test]
fn zero_altruism_degeneracy() {
    // u_B does not depend on the coalition beyond B's own view
    let g = StGame::from_fn(4, |a, _| a.len() as f64 * 0.5).unwrap();
    for (a, b) in pairs(4) {
        assert_eq!(altruistic_contribution(&g, a, b).unwrap(), 0.0);
        assert_eq!(g.utility(b, a.union(b)), g.utility(b, b));
    }
    assert!(is_fully_cooperative(&g, 0.0).unwrap());
}

#[test]
fn equal_pay_eventually_loses_a_strong_player() {
    // A's total contribution stays fixed while A grows; B = {b} contributes the same
    let (x_a, x_b) = (1.0, 1.0);
    let mut first_negative = None;
    for k in 1..=40usize {
        let n = k + 1;
        let cfg =
            CobbDouglasConfig::new(0.75, ValueFunction::power(1.0, 1.5).unwrap(), vec![2.0; n])
                .unwrap();
        let mut x = vec![x_a / k as f64; n];
        x[k] = x_b;
        let g = CobbDouglasGame::new(cfg, PayoffScheme::Equal, ContributionProfile(x)).unwrap();
        let b = PlayerSet::singleton(k);
        let a = g.team().difference(b);
        if altruistic_contribution(&g, a, b).unwrap() < 0.0 {
            first_negative = Some(k);
            break;
        }
    }
    // 2^1.5 / (k + 1) < 1 first at k = 2
    assert_eq!(first_negative, Some(2));
}
