//! Acceptance suite: one test per external contract, each ending in a
//! single `acceptance <name>: pass` line.
//!
//! The frozen fixtures in `fixture_identities` were traced by hand; every
//! other test checks a law on a deterministic or seeded family of classes.

use branchmod::{
    apery_orders, apery_orders_with_sweep, blow_up_fixed_x, blowup_step_difference_state,
    derive_invariants, dimension_report, exponent_ladder, fanning_exponent, format_class_literal,
    module_apery, module_apery_with_order, parallel_shift_semimodule, random_class, semimodule,
    sigma, singular_semimodule, sliding_divisors, specialize, specialize_with_coefficients,
    suitabilize, theta_increments, trajectory, validate_pair, variation_exponents, verify_class,
    BlowupError, PairClass, ReductionOrder, SweepOrder,
};
use branchmod::oracle::{combination_order, Differential, MonomialForm};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn pair(n: u64, betas: &[u64], beta0: u64, dx: bool, dy: bool) -> PairClass {
    validate_pair(n, betas, beta0, dx, dy).unwrap()
}

fn plain(n: u64, betas: &[u64]) -> PairClass {
    pair(n, betas, betas[0], false, false)
}

/// Every valid axis-marking variant of a characteristic sequence: both
/// plain-contact flag settings plus each admissible contact order for
/// `dy = 1` (multiples of the multiplicity below `beta_1`; the transverse
/// one only together with `dx = 1`).
fn variants(n: u64, betas: &[u64]) -> Vec<PairClass> {
    let beta1 = betas[0];
    let mut out = vec![
        pair(n, betas, beta1, false, false),
        pair(n, betas, beta1, true, false),
    ];
    for dx in [false, true] {
        let floor = if dx { n } else { 2 * n };
        let mut b0s: Vec<u64> = (1..)
            .map(|k| k * n)
            .skip_while(|&m| m < floor)
            .take_while(|&m| m < beta1)
            .collect();
        b0s.push(beta1);
        for b0 in b0s {
            out.push(pair(n, betas, b0, dx, true));
        }
    }
    out
}

const BASES: [(u64, &[u64]); 7] = [
    (2, &[3]),
    (2, &[5]),
    (4, &[6, 7]),
    (4, &[6, 9]),
    (6, &[9, 10]),
    (6, &[8, 9]),
    (4, &[9]),
];

fn all_variants() -> Vec<PairClass> {
    BASES.iter().flat_map(|&(n, b)| variants(n, b)).collect()
}

fn rat(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

fn form(x_pow: u64, y_pow: u64, differential: Differential) -> MonomialForm {
    MonomialForm {
        x_pow,
        y_pow,
        differential,
    }
}

#[test]
fn fixture_identities() {
    // semigroup invariants
    let sgd = derive_invariants(&plain(6, &[9, 10]));
    assert_eq!(sgd.e(), &[6, 3, 1]);
    assert_eq!(sgd.bar_betas(), &[9, 19]);
    assert_eq!(sgd.conductor(), 42);
    assert_eq!(derive_invariants(&plain(4, &[6, 7])).conductor(), 16);
    assert_eq!(derive_invariants(&plain(12, &[18, 22, 29])).conductor(), 214);

    // the conductor is the total of m(m-1) over the multiplicity trajectory
    let traj = trajectory(&suitabilize(&plain(12, &[18, 22, 29]))).unwrap();
    let weighted: u64 = traj.mults().iter().map(|&m| m * (m - 1)).sum();
    assert_eq!(weighted, 214);

    // exponent ladders
    assert_eq!(
        exponent_ladder(&plain(4, &[6, 9])).members_upto(12),
        vec![6, 8, 9, 10, 11, 12]
    );

    // Apery tables, plain and flagged
    let t = apery_orders(&plain(2, &[3])).unwrap();
    assert_eq!(t.a(), &[2, 3, 6, 7]);
    assert_eq!(t.b(), &[2, 3, 4, 4]);
    let t = apery_orders(&plain(4, &[6, 7])).unwrap();
    assert_eq!(t.a(), &[4, 6, 11, 13, 18, 20, 25, 27]);
    assert_eq!(t.b(), &[4, 6, 7, 7, 8, 8, 8, 8]);
    assert_eq!(apery_orders(&plain(6, &[9, 10])).unwrap().apery(), &[6, 9, 16, 19, 26, 29]);
    assert_eq!(apery_orders(&plain(4, &[6, 9])).unwrap().apery(), &[4, 6, 13, 15]);
    assert_eq!(apery_orders(&plain(4, &[9])).unwrap().apery(), &[4, 9, 14, 19]);
    let flagged: [(u64, &[u64], u64, bool, bool, &[u64]); 7] = [
        (2, &[3], 3, true, false, &[2, 5]),
        (2, &[5], 4, false, true, &[4, 7]),
        (2, &[5], 5, false, true, &[5, 8]),
        (2, &[5], 5, true, true, &[7, 8]),
        (2, &[5], 2, true, true, &[4, 7]),
        (4, &[9], 8, false, true, &[8, 13, 18, 23]),
        (4, &[5], 4, true, true, &[8, 9, 14, 15]),
    ];
    for (n, betas, b0, dx, dy, expected) in flagged {
        let t = apery_orders(&pair(n, betas, b0, dx, dy)).unwrap();
        assert_eq!(t.apery(), expected, "({n};{betas:?};b0={b0};{dx},{dy})");
    }

    // singular semimodules
    assert_eq!(
        singular_semimodule(&plain(6, &[9, 10])).unwrap().values(),
        &[12, 15, 16, 19, 26, 29]
    );
    assert_eq!(
        singular_semimodule(&pair(2, &[3], 3, true, false)).unwrap().values(),
        &[4, 5]
    );

    // blow-up and arrangement
    let b = blow_up_fixed_x(&plain(4, &[6, 7]));
    assert_eq!((b.n(), b.betas(), b.beta0()), (4, &[2, 3][..], 2));
    assert!(b.delta_x() && !b.delta_y());
    let s = suitabilize(&b);
    assert_eq!((s.n(), s.betas(), s.beta0()), (2, &[5][..], 4));
    assert!(!s.delta_x() && s.delta_y());
    let b = blow_up_fixed_x(&plain(2, &[5]));
    assert_eq!((b.n(), b.betas(), b.beta0()), (2, &[3][..], 3));
    let b = blow_up_fixed_x(&pair(3, &[7], 6, false, true));
    assert_eq!((b.n(), b.betas(), b.beta0()), (3, &[4][..], 3));
    assert!(b.delta_x() && b.delta_y());

    // trajectories: multiplicities and marked-axis counts
    let traj = trajectory(&suitabilize(&plain(6, &[9, 10]))).unwrap();
    assert_eq!(traj.mults(), &[6, 3, 3, 1]);
    assert_eq!(traj.deltas(), &[0, 1, 2, 1]);
    let s1 = &traj.states()[1];
    assert_eq!((s1.n(), s1.betas(), s1.beta0()), (3, &[7][..], 6));
    let traj = trajectory(&suitabilize(&plain(4, &[6, 7]))).unwrap();
    assert_eq!(traj.mults(), &[4, 2, 2, 1]);
    assert_eq!(traj.deltas(), &[0, 1, 2, 1]);
    let traj = trajectory(&suitabilize(&plain(4, &[9]))).unwrap();
    assert_eq!(traj.mults(), &[4, 4, 1]);
    assert_eq!(traj.deltas(), &[0, 1, 1]);

    // sliding divisors and fanning exponents
    let state = suitabilize(&plain(4, &[6, 7]));
    assert_eq!(sliding_divisors(&state, 3), vec![1, 3]);
    assert_eq!(fanning_exponent(&state, 1), Ok(4));
    assert_eq!(fanning_exponent(&state, 3), Ok(6));
    assert_eq!(fanning_exponent(&state, 5), Ok(7));
    let state = suitabilize(&plain(2, &[5]));
    assert_eq!(sliding_divisors(&state, 4), vec![1, 2, 4]);
    assert_eq!(fanning_exponent(&state, 2), Ok(4));
    assert_eq!(
        fanning_exponent(&state, 3),
        Err(BlowupError::NotASlidingDivisor { iota: 3 })
    );
    assert_eq!(variation_exponents(&state, 8), vec![2, 4, 5, 6, 7, 8]);
    let state = suitabilize(&plain(4, &[6, 7]));
    assert_eq!(variation_exponents(&state, 9), vec![4, 6, 7, 8, 9]);

    // parallel shift of the Apery table across one blow-up
    assert_eq!(
        parallel_shift_semimodule(&plain(2, &[3])).unwrap().values(),
        &[2, 3]
    );
    assert_eq!(
        parallel_shift_semimodule(&pair(2, &[5], 4, false, true)).unwrap().values(),
        &[4, 5]
    );
    assert_eq!(
        parallel_shift_semimodule(&pair(4, &[9], 8, false, true)).unwrap().values(),
        &[8, 9, 14, 15]
    );

    // per-blow-up differences and moduli dimensions
    assert_eq!(blowup_step_difference_state(&suitabilize(&plain(6, &[9, 10]))), Ok(2));
    assert_eq!(blowup_step_difference_state(&suitabilize(&plain(2, &[3]))), Ok(0));
    assert_eq!(theta_increments(&suitabilize(&plain(2, &[5]))).unwrap(), vec![0, 0]);
    assert_eq!(theta_increments(&suitabilize(&plain(6, &[9, 10]))).unwrap(), vec![2, 0, 1]);
    assert_eq!(theta_increments(&suitabilize(&plain(4, &[9]))).unwrap(), vec![0, 1]);
    let report = dimension_report(&plain(6, &[9, 10])).unwrap();
    assert_eq!((report.trajectory_sum, report.geometric), (3, Some(3)));
    assert_eq!(report.per_step_sigma, vec![2, 0, 1]);
    let report = dimension_report(&plain(2, &[3])).unwrap();
    assert_eq!((report.trajectory_sum, report.geometric), (0, Some(0)));
    let report = dimension_report(&plain(4, &[9])).unwrap();
    assert_eq!((report.trajectory_sum, report.geometric), (1, Some(1)));
    assert_eq!([sigma(2), sigma(3), sigma(4), sigma(5), sigma(6)], [0, 0, 0, 1, 2]);

    // series oracle on explicit hand-checked curves
    let curve = specialize_with_coefficients(
        &plain(4, &[6, 7]),
        &[(6, rat(1)), (7, rat(1))],
        None,
    )
    .unwrap();
    assert_eq!(
        combination_order(&curve, &[(rat(1), form(0, 0, Differential::Dx))]),
        Ok(4)
    );
    assert_eq!(
        combination_order(&curve, &[(rat(1), form(0, 1, Differential::Dx))]),
        Ok(10)
    );
    let balanced = [
        (rat(3), form(0, 1, Differential::Dx)),
        (rat(-2), form(1, 0, Differential::Dy)),
    ];
    assert_eq!(combination_order(&curve, &balanced), Ok(11));
    let differential_of_equation = [
        (rat(2), form(0, 1, Differential::Dy)),
        (rat(-3), form(2, 0, Differential::Dx)),
    ];
    assert_eq!(combination_order(&curve, &differential_of_equation), Ok(13));
    let values: Vec<u64> = module_apery(&curve).unwrap().iter().map(|c| c.order).collect();
    assert_eq!(values, vec![4, 6, 11, 13]);
    let cusp = specialize_with_coefficients(&plain(2, &[3]), &[(3, rat(1))], None).unwrap();
    let values: Vec<u64> = module_apery(&cusp).unwrap().iter().map(|c| c.order).collect();
    assert_eq!(values, vec![2, 3]);

    println!("acceptance fixture_identities: pass");
}

#[test]
fn oracle_equivalence() {
    let t0 = Instant::now();
    let mut runs = 0;
    for pair in all_variants() {
        let report = verify_class(&pair, &[0, 1, 2], None).unwrap();
        for run in &report.runs {
            assert!(
                run.matches && run.stable,
                "{}: seed {} gave {:?}, expected {:?} (stable: {})",
                format_class_literal(&pair),
                run.seed,
                run.apery,
                report.expected,
                run.stable,
            );
        }
        runs += report.runs.len();
    }
    let elapsed = t0.elapsed();
    assert!(
        elapsed.as_secs() < 10,
        "oracle equivalence took {elapsed:?}, budget is 10s"
    );
    println!("acceptance oracle_equivalence: pass ({runs} runs in {elapsed:?})");
}

#[test]
fn cross_method_dimension_equality() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x2026_0823);
    let mut plain_count = 0;
    for i in 0..200 {
        let pair = random_class(&mut rng, 24, 3);
        let report = dimension_report(&pair).unwrap();
        assert!(
            report.agree,
            "class {i} = {} disagrees: {report:?}",
            format_class_literal(&pair)
        );
        assert_eq!(report.trajectory_sum, report.per_step_theta.iter().sum::<u64>());
        if pair.delta_sum() == 0 {
            assert_eq!(report.geometric, Some(report.trajectory_sum));
            plain_count += 1;
        }
    }
    assert!(plain_count >= 50, "only {plain_count} plain classes drawn");
    let elapsed = t0.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "dimension suite took {elapsed:?}, budget is 60s"
    );
    println!(
        "acceptance cross_method_dimension_equality: pass (200 classes, {plain_count} plain, in {elapsed:?})"
    );
}

#[test]
fn per_step_difference_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2026_0823);
    let mut steps = 0;
    for _ in 0..200 {
        let pair = random_class(&mut rng, 24, 3);
        let traj = trajectory(&suitabilize(&pair)).unwrap();
        for i in 0..traj.stop() {
            let state = &traj.states()[i];
            // the call itself checks inclusion and the sigma prediction
            let count = blowup_step_difference_state(state).unwrap_or_else(|e| {
                panic!(
                    "{} step {i}: {e}",
                    format_class_literal(&pair)
                )
            });
            assert_eq!(count, sigma(traj.mults()[i] + traj.deltas()[i]));
            steps += 1;
        }
    }
    println!("acceptance per_step_difference_law: pass ({steps} steps)");
}

#[test]
fn blowup_intrinsicness() {
    let mut classes = all_variants();
    let mut rng = ChaCha8Rng::seed_from_u64(0xB10);
    classes.extend((0..60).map(|_| random_class(&mut rng, 18, 3)));
    for pair in &classes {
        let shifted = parallel_shift_semimodule(pair).unwrap();
        let state = suitabilize(&blow_up_fixed_x(pair));
        let direct = state.semimodule().unwrap();
        let bound = derive_invariants(pair).conductor() + 4 * pair.n();
        assert!(
            shifted.equals_up_to(&direct, bound),
            "{}: shifted {:?} vs direct {:?} below {bound}",
            format_class_literal(pair),
            shifted.values(),
            direct.values(),
        );
    }
    println!("acceptance blowup_intrinsicness: pass ({} classes)", classes.len());
}

#[test]
fn apery_structural_invariants() {
    let mut classes = all_variants();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA9E);
    classes.extend((0..150).map(|_| random_class(&mut rng, 24, 3)));
    for pair in &classes {
        let label = format_class_literal(pair);
        let table = apery_orders(pair).unwrap();
        let n = pair.n();
        let mut seen = vec![false; n as usize];
        for &v in table.apery() {
            assert!(!seen[(v % n) as usize], "{label}: repeated residue in {:?}", table.apery());
            seen[(v % n) as usize] = true;
        }
        assert!(
            table.apery().windows(2).all(|w| w[0] <= w[1]),
            "{label}: apery not sorted: {:?}",
            table.apery()
        );
        let sgd = derive_invariants(pair);
        if pair.delta_sum() == 0 {
            // position 2 nu_l carries the generator bar_beta_{l+1}
            for l in 0..pair.betas().len() {
                let idx = 2 * sgd.nu()[l] as usize - 1;
                assert_eq!(
                    table.a()[idx],
                    sgd.bar_betas()[l],
                    "{label}: level {l}"
                );
            }
            // the unmarked module contains every d(monomial), hence all
            // nonzero semigroup values; marked modules legitimately miss some
            let s = semimodule(pair).unwrap();
            for m in 1..=sgd.conductor() + 2 * n {
                if sgd.contains(m) {
                    assert!(s.contains(m), "{label}: semigroup member {m} missing");
                }
            }
        }
    }
    println!(
        "acceptance apery_structural_invariants: pass ({} classes)",
        classes.len()
    );
}

#[test]
fn fanning_bijection() {
    let mut classes = vec![plain(2, &[5]), plain(4, &[6, 7]), plain(4, &[9])];
    let mut rng = ChaCha8Rng::seed_from_u64(0xFA2);
    classes.extend((0..50).map(|_| random_class(&mut rng, 16, 2)));
    for pair in &classes {
        let label = format_class_literal(pair);
        let state = suitabilize(pair);
        let traj = trajectory(&state).unwrap();
        // past smoothness a doubly-marked state sheds one contact order per
        // step, so this horizon always reaches a singly-marked state
        let smooth = &traj.states()[traj.stop()];
        let bound = traj.stop() as u64 + smooth.beta0() + 5;
        let sliding = sliding_divisors(&state, bound);
        assert!(!sliding.is_empty(), "{label}: no sliding divisors");
        let thetas: Vec<u64> = sliding
            .iter()
            .map(|&i| fanning_exponent(&state, i).unwrap())
            .collect();
        assert!(
            thetas.windows(2).all(|w| w[0] < w[1]),
            "{label}: fanning exponents not strictly increasing: {thetas:?}"
        );
        let variation = variation_exponents(&state, *thetas.last().unwrap());
        assert_eq!(thetas, variation, "{label}");
        for i in 1..=bound {
            if !sliding.contains(&i) {
                assert!(fanning_exponent(&state, i).is_err(), "{label}: iota {i}");
            }
        }
    }
    println!("acceptance fanning_bijection: pass ({} classes)", classes.len());
}

#[test]
fn determinism_under_shuffle() {
    let mut classes = all_variants();
    let mut rng = ChaCha8Rng::seed_from_u64(0xD57);
    classes.extend((0..25).map(|_| random_class(&mut rng, 16, 3)));
    for pair in &classes {
        let mut base = apery_orders(pair).unwrap().apery().to_vec();
        base.sort_unstable();
        for seed in [1, 7, 1234] {
            let mut shuffled = apery_orders_with_sweep(pair, SweepOrder::Shuffled(seed))
                .unwrap()
                .apery()
                .to_vec();
            shuffled.sort_unstable();
            assert_eq!(
                shuffled,
                base,
                "{} seed {seed}",
                format_class_literal(pair)
            );
        }
    }
    for (n, betas) in [(2u64, &[3u64][..]), (4, &[6, 7]), (4, &[6, 9])] {
        let curve = specialize(&plain(n, betas), 0, None);
        let base: Vec<u64> = module_apery(&curve).unwrap().iter().map(|c| c.order).collect();
        for seed in [1, 7] {
            let shuffled: Vec<u64> =
                module_apery_with_order(&curve, ReductionOrder::Shuffled(seed))
                    .unwrap()
                    .iter()
                    .map(|c| c.order)
                    .collect();
            assert_eq!(shuffled, base, "({n};{betas:?}) oracle seed {seed}");
        }
    }
    println!(
        "acceptance determinism_under_shuffle: pass ({} classes)",
        classes.len()
    );
}
