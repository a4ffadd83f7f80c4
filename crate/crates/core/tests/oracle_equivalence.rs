use biasgraph::agent::{AgentConfig, Competition, Simulator, TieRule, TraversalState};
use biasgraph::graph::{fan_path, make_fan, FanSpec, PathRecord, TaskGraph};
use biasgraph::oracle::{brute_perceived_min, enumerate_paths, random_layered_dag, Race};
use biasgraph::pure_eq::{check_symmetric_ne, fan_ne_thresholds, feasible_rewards};
use biasgraph::rational::{int, ratio, Rational};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64) -> (TaskGraph, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (random_layered_dag(&mut rng, 8), rng)
}

fn random_reward(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(0..=400), rng.gen_range(1..=8))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // membership in the computed set is exactly the simulated equilibrium test
    #[test]
    fn feasible_set_matches_simulation(seed in any::<u64>()) {
        let (g, mut rng) = instance(seed);
        for q in enumerate_paths(&g).unwrap() {
            for b in [ratio(3, 2), int(2), int(5), int(10)] {
                let set = feasible_rewards(&g, &q, &b).unwrap();
                let mut probes = set.breakpoints.clone();
                for w in set.breakpoints.windows(2) {
                    probes.push((&w[0] + &w[1]) / int(2));
                }
                probes.extend((0..50).map(|_| random_reward(&mut rng)));
                for r in probes {
                    let sim = check_symmetric_ne(&g, &q, &r, &b).unwrap().is_equilibrium;
                    prop_assert_eq!(set.contains(&r), sim, "path {} b={} r={}", g.describe(q.vertices()), b, r);
                }
            }
        }
    }

    // the hop-table shortcut equals the literal minimum over continuations
    #[test]
    fn perceived_cost_matches_enumeration(seed in any::<u64>()) {
        let (g, mut rng) = instance(seed);
        let sim = Simulator::new(&g);
        let paths = enumerate_paths(&g).unwrap();
        let opponent = &paths[rng.gen_range(0..paths.len())];
        let walk = &paths[rng.gen_range(0..paths.len())];
        let bias = ratio(rng.gen_range(2..=20), 2);
        let reward = random_reward(&mut rng);
        let tie_rule = [TieRule::Split, TieRule::BothFull, TieRule::Nothing][rng.gen_range(0..3)];
        let config = AgentConfig::new(bias.clone()).unwrap().with_tie_rule(tie_rule);
        let comp = Competition::against(opponent, reward.clone()).unwrap();
        let race = Race { opponent_length: opponent.len(), reward, tie_rule };
        for cut in 1..walk.vertices().len() {
            let prefix: PathRecord = g.path(walk.vertices()[..cut].to_vec()).unwrap();
            let state = TraversalState::after(prefix.clone());
            for e in g.out_edges(prefix.last()) {
                let fast = sim.perceived_cost(&state, e.to, &config, Some(&comp)).unwrap();
                let slow = brute_perceived_min(&g, &prefix, e.to, &bias, Some(&race)).unwrap();
                prop_assert_eq!(&fast, &slow);
                let alone = sim.perceived_cost(&state, e.to, &config, None).unwrap();
                prop_assert_eq!(alone, brute_perceived_min(&g, &prefix, e.to, &bias, None).unwrap());
            }
        }
    }

    // on the fan: P0 iff r >= 2(b-c), Pn iff r <= 2(b-c)c^(n-1), nothing in between
    #[test]
    fn fan_thresholds_are_exact(n in 1usize..7, c4 in 5i64..16, extra in 1i64..12, r8 in 0i64..400) {
        let c = ratio(c4, 4);
        let b = &c + ratio(extra, 4);
        let spec = FanSpec::new(n, c).unwrap();
        let g = make_fan(&spec);
        let t = fan_ne_thresholds(&spec, &b).unwrap();
        let r = ratio(r8, 8);
        let ne = |i| check_symmetric_ne(&g, &fan_path(&g, i).unwrap(), &r, &b).unwrap().is_equilibrium;
        prop_assert_eq!(ne(0), r >= t.optimal_min_reward);
        if n > 1 {
            prop_assert_eq!(ne(n), r <= t.longest_max_reward);
        }
        for i in 1..n {
            prop_assert!(!ne(i));
        }
    }
}
