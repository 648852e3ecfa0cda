//! Random valid pair classes for batch verification.
//!
//! A draw picks the multiplicity, splits its prime factors into blocks to
//! fix the gcd chain `e_0 > e_1 > ... > e_g = 1`, then picks each
//! characteristic exponent `beta_j = e_j * m` with `m` coprime to
//! `e_{j-1}/e_j` inside a window that keeps `beta_g <= 6n`. Axis markings
//! are drawn afterwards; a contact order below `beta_1` is only possible
//! for `dy = 1`, and the transverse case `beta_0 = n` additionally needs
//! `dx = 1` to describe a valid pair.

use crate::branch::{validate_pair, PairClass};
use rand::seq::SliceRandom;
use rand::Rng;

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Draws a class with `4 <= n <= max_n`, at most `max_g` characteristic
/// exponents (capped by the factor count of `n`), `beta_g <= 6n`, and
/// random axis markings.
pub fn random_class<R: Rng + ?Sized>(rng: &mut R, max_n: u64, max_g: usize) -> PairClass {
    assert!(max_n >= 4, "need room for a multiplicity of at least 4");
    assert!(max_g >= 1);
    loop {
        let n = rng.gen_range(4..=max_n);
        let mut primes = prime_factors(n);
        let g = rng.gen_range(1..=max_g.min(primes.len()));
        primes.shuffle(rng);
        // every block nonempty so each quotient n_j is at least 2
        let mut blocks = vec![1u64; g];
        for (i, p) in primes.iter().enumerate() {
            let b = if i < g { i } else { rng.gen_range(0..g) };
            blocks[b] *= p;
        }
        blocks.shuffle(rng);

        let mut e = n;
        let mut betas = Vec::with_capacity(g);
        let mut lo = n + 1;
        let mut ok = true;
        for (j, &nj) in blocks.iter().enumerate() {
            let e_next = e / nj;
            let mut hi = (4 + j as u64) * n;
            let mut candidates: Vec<u64> = Vec::new();
            for attempt in 0..2 {
                if attempt == 1 {
                    hi = 6 * n;
                }
                candidates = (lo..=hi)
                    .filter(|&b| b % e_next == 0 && gcd(b / e_next, nj) == 1)
                    .collect();
                if !candidates.is_empty() {
                    break;
                }
            }
            let Some(&beta) = candidates.choose(rng) else {
                ok = false;
                break;
            };
            betas.push(beta);
            lo = beta + 1;
            e = e_next;
        }
        if !ok {
            continue;
        }

        let (dx, dy) = match rng.gen_range(0..6) {
            0..=2 => (false, false),
            3 => (true, false),
            4 => (false, true),
            _ => (true, true),
        };
        let beta0 = if dy {
            let floor = if dx { n } else { 2 * n };
            let mut choices: Vec<u64> = (1..)
                .map(|k| k * n)
                .take_while(|&m| m < betas[0])
                .filter(|&m| m >= floor)
                .collect();
            choices.push(betas[0]);
            *choices.choose(rng).expect("beta_1 itself is always valid")
        } else {
            betas[0]
        };
        return validate_pair(n, &betas, beta0, dx, dy).expect("sampler draws valid data");
    }
}

/// Like [`random_class`] but with no marked axes and `beta_0 = beta_1`.
pub fn random_plain_class<R: Rng + ?Sized>(rng: &mut R, max_n: u64, max_g: usize) -> PairClass {
    loop {
        let pair = random_class(rng, max_n, max_g);
        if pair.delta_sum() == 0 {
            return pair;
        }
    }
}
