use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use locc_rates::functionals::{check_additivity, check_chain_rule};
use locc_rates::monoid::{
    achievable_rate_lower_bound, majorization_geq, BipartitePureMonoid, NaturalsMonoid,
    SearchParams,
};
use locc_rates::state::random::{random_dims, random_mixed, random_pure};
use locc_rates::state::{parse_state, Cut, LocalDims};
use locc_rates::{Execution, Functional, PureState, SchmidtSpectrum};

fn probabilities(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..1.0, 1..=max_len).prop_map(|v| {
        let total: f64 = v.iter().sum();
        v.into_iter().map(|x| x / total).collect()
    })
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(0x10cc),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn state(seed: u64, k: usize, max_dim: usize) -> PureState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims = random_dims(&mut rng, k, max_dim).unwrap();
    random_pure(&mut rng, &dims).unwrap()
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn spectrum_power_scales_entropy(ps in probabilities(5), n in 1u64..40) {
        let s = SchmidtSpectrum::from_probabilities(&ps).unwrap();
        let pw = s.power(n);
        prop_assert!((pw.total_mass() - 1.0).abs() < 1e-9);
        prop_assert!((pw.entropy() - n as f64 * s.entropy()).abs() < 1e-9 * n as f64);
    }

    #[test]
    fn spectrum_power_agrees_with_repeated_tensor(ps in probabilities(4), n in 1u64..7) {
        let s = SchmidtSpectrum::from_probabilities(&ps).unwrap();
        let mut acc = SchmidtSpectrum::trivial();
        for _ in 0..n {
            acc = acc.tensor(&s);
        }
        prop_assert!(s.power(n).approx_eq(&acc, 1e-9));
    }

    #[test]
    fn schmidt_spectrum_symmetric_under_complement(seed in any::<u64>(), k in 2usize..=4) {
        let phi = state(seed, k, 3);
        for cut in Cut::all(k) {
            let a = phi.schmidt_spectrum(&cut).unwrap();
            let b = phi.schmidt_spectrum(&cut.complement()).unwrap();
            prop_assert!(a.approx_eq(&b, 1e-8), "{cut}");
        }
    }

    #[test]
    fn majorization_reflexive_and_transitive(
        a in probabilities(5),
        b in probabilities(5),
        c in probabilities(5),
    ) {
        let s: Vec<SchmidtSpectrum> = [a, b, c]
            .iter()
            .map(|p| SchmidtSpectrum::from_probabilities(p).unwrap())
            .collect();
        for x in &s {
            prop_assert!(majorization_geq(x, x, 0.0));
        }
        for x in &s {
            for y in &s {
                for z in &s {
                    if majorization_geq(x, y, 0.0) && majorization_geq(y, z, 0.0) {
                        prop_assert!(majorization_geq(x, z, 0.0));
                    }
                }
            }
        }
    }

    #[test]
    fn majorization_monotone_in_eps(a in probabilities(4), b in probabilities(4), n in 1u64..12) {
        let x = SchmidtSpectrum::from_probabilities(&a).unwrap().power(n);
        let y = SchmidtSpectrum::from_probabilities(&b).unwrap().power(n);
        let mut prev = false;
        for eps in [0.0, 0.01, 0.05, 0.2, 0.6] {
            let cur = majorization_geq(&x, &y, eps);
            prop_assert!(cur || !prev, "lost at eps = {eps}");
            prev = cur;
        }
    }

    #[test]
    fn toy_search_matches_closed_form(x in 1u64..20, y in 1u64..20, n_max in 1u64..30) {
        let toy = NaturalsMonoid::new(1);
        let p = SearchParams { delta: 0.0, eps: 0.0, n_max };
        let r = achievable_rate_lower_bound(&toy, &x, &y, p, Execution::Sequential).unwrap();
        let best = (1..=n_max).map(|n| (n * x / y) as f64 / n as f64).fold(0.0, f64::max);
        prop_assert_eq!(r.best_ratio, best);
        prop_assert!(r.best_ratio <= x as f64 / y as f64);
        prop_assert_eq!(r.witness.m, r.witness.n * x / y);
    }

    #[test]
    fn additivity_and_chain_rule(seed in any::<u64>(), k in 2usize..=3, p in 0.05f64..0.95) {
        let phi = state(seed, k, 3);
        let psi = state(seed.wrapping_add(1), k, 3);
        for f in Functional::all_cut_entropies(k) {
            prop_assert!(check_additivity(&f, &phi, &psi, 1e-9).unwrap().pass);
            prop_assert!(check_chain_rule(&f, &phi, &psi, p, 1e-8).unwrap().pass);
        }
    }

    #[test]
    fn pure_distance_is_a_metric(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims = random_dims(&mut rng, 2, 3).unwrap();
        let s: Vec<PureState> = (0..3).map(|_| random_pure(&mut rng, &dims).unwrap()).collect();
        let d = |i: usize, j: usize| s[i].purified_distance(&s[j]).unwrap();
        prop_assert!(d(0, 2) <= d(0, 1) + d(1, 2) + 1e-12);
        prop_assert!((d(0, 1) - d(1, 0)).abs() < 1e-12);
        prop_assert!(d(0, 0) < 1e-12);
        let mixed = s[0].density().purified_distance(&s[1].density()).unwrap();
        prop_assert!((mixed - d(0, 1)).abs() < 1e-6);
    }

    #[test]
    fn mixed_distance_axioms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims = LocalDims::new(vec![2, 2]).unwrap();
        let r = random_mixed(&mut rng, &dims, 2).unwrap();
        let s = random_mixed(&mut rng, &dims, 3).unwrap();
        let keep = Cut::new(vec![1], 2).unwrap();
        let full = r.purified_distance(&s).unwrap();
        let part = r.partial_trace(&keep).unwrap().purified_distance(&s.partial_trace(&keep).unwrap()).unwrap();
        prop_assert!(part <= full + 1e-9);
    }

    #[test]
    fn json_literal_round_trip(seed in any::<u64>(), k in 1usize..=3) {
        let phi = state(seed, k, 3);
        let amps: Vec<String> = phi
            .amplitudes()
            .iter()
            .map(|a| format!("[{:?},{:?}]", a.re, a.im))
            .collect();
        let lit = format!("{{\"dims\":{:?},\"amps\":[{}]}}", phi.dims().as_slice(), amps.join(","));
        prop_assert_eq!(parse_state(&lit).unwrap(), phi);
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn bipartite_search_monotone_and_sandwiched(p in 0.5f64..0.95, q in 0.5f64..0.95) {
        let x = SchmidtSpectrum::from_probabilities(&[p, 1.0 - p]).unwrap();
        let y = SchmidtSpectrum::from_probabilities(&[q, 1.0 - q]).unwrap();
        let m = BipartitePureMonoid;
        let run = |delta, eps| {
            let params = SearchParams { delta, eps, n_max: 24 };
            achievable_rate_lower_bound(&m, &x, &y, params, Execution::Parallel).unwrap().best_ratio
        };
        let base = run(0.05, 0.02);
        prop_assert!(run(0.05, 0.05) >= base);
        prop_assert!(run(0.1, 0.02) >= base);
        prop_assert!(run(0.0, 0.02) <= base);
        let cap = (x.entropy() + 0.05) / y.entropy();
        prop_assert!(run(0.05, 0.0) <= cap + 1e-6);
        prop_assert!(run(0.05, 0.05) <= cap + 1e-6);
    }
}

#[test]
fn ghz_literal_matches_constructor() {
    let parsed = parse_state("ghz:r=3,k=3").unwrap();
    assert_eq!(parsed, PureState::ghz(3, 3).unwrap());
    for f in Functional::all_cut_entropies(3) {
        assert_abs_diff_eq!(f.evaluate(&parsed).unwrap(), 3f64.log2(), epsilon = 1e-12);
    }
}
