//! Property tests. Classes are drawn through the seeded sampler so every
//! failure shrinks to a reproducible seed.

use branchmod::{
    derive_invariants, exponent_ladder, format_class_literal, next_exponent, parse_class_literal,
    prev_exponent, random_class, semimodule, sigma, suitabilize, trajectory, PairClass,
    TruncatedSeries,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn class_from_seed(seed: u64) -> PairClass {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_class(&mut rng, 16, 3)
}

/// Polynomial with the i-th entry as the `t^i` coefficient.
fn series(coeffs: &[i64]) -> TruncatedSeries {
    let terms: Vec<(i64, u64)> = coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i as u64))
        .collect();
    TruncatedSeries::from_terms(&terms, coeffs.len() as u64 - 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ladder_steps_invert(seed in any::<u64>()) {
        let pair = class_from_seed(seed);
        let ladder = exponent_ladder(&pair);
        let top = pair.betas().last().unwrap() + 2 * pair.n();
        let members = ladder.members_upto(top);
        for &m in &members {
            let next = next_exponent(&ladder, m).unwrap();
            prop_assert_eq!(prev_exponent(&ladder, next).unwrap(), m);
            match prev_exponent(&ladder, m) {
                Ok(prev) => prop_assert_eq!(next_exponent(&ladder, prev).unwrap(), m),
                Err(_) => prop_assert_eq!(m, pair.beta0()),
            }
        }
        for m in 1..=top {
            prop_assert_eq!(ladder.contains(m), members.binary_search(&m).is_ok());
        }
    }

    #[test]
    fn conductor_is_sharp(seed in any::<u64>()) {
        let pair = class_from_seed(seed);
        let sgd = derive_invariants(&pair);
        let c = sgd.conductor();
        prop_assert!(c >= 2);
        prop_assert!(!sgd.contains(c - 1));
        for m in c..c + 2 * pair.n() {
            prop_assert!(sgd.contains(m));
        }
    }

    #[test]
    fn multiplicity_drops_account_for_the_conductor(seed in any::<u64>()) {
        let pair = class_from_seed(seed);
        let traj = trajectory(&suitabilize(&pair)).unwrap();
        prop_assert!(traj.mults().windows(2).all(|w| w[0] >= w[1]));
        let weighted: u64 = traj.mults().iter().map(|&m| m * (m - 1)).sum();
        prop_assert_eq!(weighted, derive_invariants(&pair).conductor());
    }

    #[test]
    fn semimodule_values_are_minimal_module_generators(seed in any::<u64>()) {
        let pair = class_from_seed(seed);
        let s = semimodule(&pair).unwrap();
        let sgd = derive_invariants(&pair);
        for &v in s.values() {
            prop_assert!(v >= pair.n());
            prop_assert!(!s.contains(v - pair.n()));
            for g in sgd.generators() {
                prop_assert!(s.contains(v + g));
            }
        }
    }

    #[test]
    fn class_literals_round_trip(seed in any::<u64>()) {
        let pair = class_from_seed(seed);
        let text = format_class_literal(&pair);
        prop_assert_eq!(parse_class_literal(&text).unwrap(), pair.clone());
        let json = branchmod::literal::class_to_json(&pair).to_string();
        prop_assert_eq!(parse_class_literal(&json).unwrap(), pair);
    }

    #[test]
    fn series_arithmetic_is_ring_like(
        a in prop::collection::vec(-9i64..=9, 13),
        b in prop::collection::vec(-9i64..=9, 13),
        c in prop::collection::vec(-9i64..=9, 13),
    ) {
        let (a, b, c) = (series(&a), series(&b), series(&c));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&b), a.add(&b.neg()));
        if let (Some(oa), Some(ob)) = (a.order(), b.order()) {
            if oa + ob <= a.precision() {
                prop_assert_eq!(a.mul(&b).order(), Some(oa + ob));
            }
        }
        prop_assert_eq!(
            a.mul(&b).derivative(),
            a.derivative().mul(&b).add(&a.mul(&b.derivative()))
        );
        prop_assert_eq!(a.t_derivative(), a.derivative().shift(1));
    }

    #[test]
    fn sigma_satisfies_its_step_recurrence(m in 2u64..200) {
        prop_assert_eq!(sigma(m + 2), sigma(m) + m - 2);
    }
}
