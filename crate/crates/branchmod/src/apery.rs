//! Apery table of differential values for a generic curve of a pair class.
//!
//! The engine maintains an ordered family of `2n` candidate values `a(s)`
//! with bookkeeping exponents `b(s)`. After seeding two values per level it
//! resolves congruence conflicts: whenever two positions `k < s` satisfy
//!
//! ```text
//! a(s) = a(k)  (mod n)   and   max(b(s), b(k)) = d
//! ```
//!
//! position `s` slides up by `next(d) - d` where `next` is the ladder
//! successor, and `b(s)` becomes `next(d)`. The scan parameter `d` walks the
//! ladder from `beta_{l+1}`; intermediate levels stop at the next
//! characteristic exponent, the last level stops after the first `d` whose
//! fixpoint triggered no update among positions `1..=n`. The surviving
//! `a(1..n)` are pairwise distinct mod `n` and generate the semimodule of
//! differential values.
//!
//! Initial seeds depend on which axes are marked:
//!
//! ```text
//! dy = 0:  a(1) = n             a(2) = n*dx + beta_1
//! dy = 1:  a(1) = n*dx + beta_0 a(2) = n + beta_1
//! ```
//!
//! (for smooth states, which have no characteristic exponents, `beta_1`
//! reads as `beta_0` and the level loop is empty).

use crate::branch::{derive_invariants_view, ClassView, PairClass};
use crate::blowup::SuitableState;
use crate::ladder::exponent_ladder_view;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AperyError {
    #[error("presentation unsuitable: beta_0 = {beta0} below multiplicity {n}")]
    UnsuitablePresentation { beta0: u64, n: u64 },
    #[error("conflict resolution at level {level} exceeded {cap} ladder steps")]
    NonTermination { level: usize, cap: u64 },
    #[error("final table is not a transversal mod n")]
    PostconditionViolation,
}

/// Sweep order for conflict resolution. `Sorted` is the production order
/// (positions ascending); `Shuffled` randomizes the examination order of
/// pairs to demonstrate the result does not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepOrder {
    Sorted,
    Shuffled(u64),
}

/// Final state of the engine: `a` holds the `2n` values, `b` the exponent
/// bookkeeping; the Apery set of the semimodule is `a(1..n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AperyTable {
    n: u64,
    a: Vec<u64>,
    b: Vec<u64>,
}

impl AperyTable {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    /// The minimal value in each residue class: `a(1..n)`.
    pub fn apery(&self) -> &[u64] {
        &self.a[..self.n as usize]
    }

    pub fn apery_max(&self) -> u64 {
        *self.apery().iter().max().expect("n >= 1")
    }
}

/// Runs the engine on a pair class (production sweep order).
pub fn apery_orders(pair: &PairClass) -> Result<AperyTable, AperyError> {
    apery_orders_view(pair.view(), SweepOrder::Sorted)
}

/// Runs the engine with an explicit sweep order; used to check order
/// independence.
pub fn apery_orders_with_sweep(
    pair: &PairClass,
    order: SweepOrder,
) -> Result<AperyTable, AperyError> {
    apery_orders_view(pair.view(), order)
}

pub(crate) fn apery_orders_view(
    view: ClassView<'_>,
    order: SweepOrder,
) -> Result<AperyTable, AperyError> {
    let n = view.n;
    if view.beta0 < n {
        return Err(AperyError::UnsuitablePresentation {
            beta0: view.beta0,
            n,
        });
    }
    let lead = view.leading_beta();
    let mut a: Vec<u64> = Vec::with_capacity(2 * n as usize);
    let mut b: Vec<u64> = Vec::with_capacity(2 * n as usize);
    let dx = u64::from(view.delta_x);
    if view.delta_y {
        a.extend([n * dx + view.beta0, n + lead]);
        b.extend([view.beta0, lead]);
    } else {
        a.extend([n, n * dx + lead]);
        b.extend([n, lead]);
    }
    if view.betas.is_empty() {
        // smooth state: no conflict levels, table is the two seeds
        return finish(n, a, b);
    }

    let sgd = derive_invariants_view(view);
    let ladder = exponent_ladder_view(view);
    let g = view.betas.len();
    let cap = 4 * (view.betas[g - 1] + sgd.conductor());
    let mut rng = match order {
        SweepOrder::Sorted => None,
        SweepOrder::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };

    for level in 0..g {
        let nu_l = sgd.nu()[level] as usize;
        let n_next = sgd.n_seq()[level];
        let beta_next = view.betas[level];
        let bar_next = sgd.bar_betas()[level];
        // seed the copies shifted by multiples of the next generator
        for k in 1..n_next {
            for s in 0..2 * nu_l {
                a.push(k * bar_next + a[s]);
                b.push(beta_next);
            }
        }
        debug_assert_eq!(a.len(), 2 * (sgd.nu()[level + 1] as usize));

        let final_level = level + 1 == g;
        let stop = if final_level {
            None
        } else {
            Some(view.betas[level + 1])
        };
        let mut d = beta_next;
        let mut steps = 0u64;
        loop {
            if let Some(stop) = stop {
                if d >= stop {
                    break;
                }
            }
            let next_d = ladder
                .strata()
                .iter()
                .map(|s| {
                    let from = (d + 1).max(s.start);
                    from.div_ceil(s.modulus) * s.modulus
                })
                .min()
                .expect("ladder nonempty");
            let updates_low = resolve_at(&mut a, &mut b, n, d, next_d, &mut rng);
            if final_level && updates_low == 0 {
                break;
            }
            d = next_d;
            steps += 1;
            if steps > cap {
                return Err(AperyError::NonTermination { level, cap });
            }
        }
    }
    finish(n, a, b)
}

/// Resolves every conflict at scan value `d`; returns how many updates hit
/// positions `1..=n`.
fn resolve_at(
    a: &mut [u64],
    b: &mut [u64],
    n: u64,
    d: u64,
    next_d: u64,
    rng: &mut Option<ChaCha8Rng>,
) -> u64 {
    let len = a.len();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    if rng.is_some() {
        for s in 1..len {
            for k in 0..s {
                pairs.push((k, s));
            }
        }
    }
    let mut low = 0u64;
    loop {
        let mut changed = false;
        if let Some(rng) = rng.as_mut() {
            pairs.shuffle(rng);
        }
        let mut apply = |k: usize, s: usize, a: &mut [u64], b: &mut [u64]| {
            if a[s] % n == a[k] % n && b[s].max(b[k]) == d {
                a[s] += next_d - d;
                b[s] = next_d;
                if s < n as usize {
                    low += 1;
                }
                true
            } else {
                false
            }
        };
        if rng.is_some() {
            for &(k, s) in &pairs {
                changed |= apply(k, s, a, b);
            }
        } else {
            for s in 1..len {
                for k in 0..s {
                    if apply(k, s, a, b) {
                        changed = true;
                        break;
                    }
                }
            }
        }
        if !changed {
            return low;
        }
    }
}

fn finish(n: u64, a: Vec<u64>, b: Vec<u64>) -> Result<AperyTable, AperyError> {
    let mut seen = vec![false; n as usize];
    for &v in &a[..n as usize] {
        let r = (v % n) as usize;
        if seen[r] {
            return Err(AperyError::PostconditionViolation);
        }
        seen[r] = true;
    }
    Ok(AperyTable { n, a, b })
}

/// A set of nonnegative integers closed under adding the modulus, described
/// by the minimal member of each inhabited residue class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semimodule {
    n: u64,
    values: Vec<u64>,
}

impl Semimodule {
    pub(crate) fn from_values(n: u64, mut values: Vec<u64>) -> Self {
        values.sort_unstable();
        debug_assert!(values.len() <= n as usize);
        debug_assert!({
            let mut res: Vec<u64> = values.iter().map(|v| v % n).collect();
            res.sort_unstable();
            res.dedup();
            res.len() == values.len()
        });
        Semimodule { n, values }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Minimal members per residue class, ascending.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn max_value(&self) -> u64 {
        *self.values.iter().max().expect("nonempty")
    }

    pub fn contains(&self, m: u64) -> bool {
        self.values
            .iter()
            .any(|&v| m >= v && (m - v) % self.n == 0)
    }

    /// The translate `k + self`.
    pub fn shifted(&self, k: u64) -> Semimodule {
        Semimodule {
            n: self.n,
            values: self.values.iter().map(|v| v + k).collect(),
        }
    }

    /// The translate `self - k`; every value must stay nonnegative.
    pub fn shifted_down(&self, k: u64) -> Semimodule {
        Semimodule {
            n: self.n,
            values: self
                .values
                .iter()
                .map(|v| v.checked_sub(k).expect("shift below zero"))
                .collect(),
        }
    }

    /// Membership-equality of two sets (moduli may differ) on `[0, bound]`.
    pub fn equals_up_to(&self, other: &Semimodule, bound: u64) -> bool {
        (0..=bound).all(|m| self.contains(m) == other.contains(m))
    }

    /// Explicit finite description with tail threshold `threshold`
    /// (requires `threshold > max_value` so the tail is full).
    pub fn to_cofinite(&self, threshold: u64) -> CofiniteSet {
        assert!(threshold > self.max_value());
        let below = (0..threshold).filter(|&m| self.contains(m)).collect();
        CofiniteSet { below, threshold }
    }
}

/// Apery set of the generic semimodule of the class.
pub fn semimodule(pair: &PairClass) -> Result<Semimodule, AperyError> {
    semimodule_view(pair.view())
}

pub(crate) fn semimodule_view(view: ClassView<'_>) -> Result<Semimodule, AperyError> {
    let table = apery_orders_view(view, SweepOrder::Sorted)?;
    Ok(Semimodule::from_values(table.n, table.apery().to_vec()))
}

/// Semimodule of the singular-locus restriction: the first one or two values
/// move up by `n` depending on how many axes are unmarked.
///
/// ```text
/// E empty:    (a(1)+n, a(2)+n, a(3), ..., a(n))
/// one axis:   (a(1)+n, a(2),   ..., a(n))
/// both axes:  unchanged
/// ```
pub fn singular_semimodule(pair: &PairClass) -> Result<Semimodule, AperyError> {
    singular_semimodule_view(pair.view())
}

pub(crate) fn singular_semimodule_view(view: ClassView<'_>) -> Result<Semimodule, AperyError> {
    let table = apery_orders_view(view, SweepOrder::Sorted)?;
    let mut values = table.apery().to_vec();
    let bump = match view.delta_sum() {
        0 => 2.min(values.len()),
        1 => 1,
        _ => 0,
    };
    for v in values.iter_mut().take(bump) {
        *v += view.n;
    }
    Ok(Semimodule::from_values(table.n, values))
}

impl SuitableState {
    /// Apery table of a blow-up state (multiplicity 1 allowed).
    pub fn apery_orders(&self) -> Result<AperyTable, AperyError> {
        apery_orders_view(self.view(), SweepOrder::Sorted)
    }

    pub fn semimodule(&self) -> Result<Semimodule, AperyError> {
        semimodule_view(self.view())
    }

    pub fn singular_semimodule(&self) -> Result<Semimodule, AperyError> {
        singular_semimodule_view(self.view())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffError {
    #[error("difference is not finite within the window: {missing} escapes the second operand")]
    InfiniteDifference { missing: u64 },
}

/// A set containing every integer from `threshold` on, plus the listed
/// members below it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CofiniteSet {
    below: Vec<u64>,
    threshold: u64,
}

impl CofiniteSet {
    pub fn new(below: Vec<u64>, threshold: u64) -> Self {
        debug_assert!(below.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(below.last().map_or(true, |&m| m < threshold));
        CofiniteSet { below, threshold }
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn below(&self) -> &[u64] {
        &self.below
    }

    pub fn contains(&self, m: u64) -> bool {
        m >= self.threshold || self.below.binary_search(&m).is_ok()
    }
}

/// Exact size of `a \ b` for cofinite sets.
///
/// Precondition (checked): the tail region of `a`, up to where `b` also
/// becomes full, lies inside `b`; otherwise the difference cannot be read
/// off from the explicit members and [`DiffError::InfiniteDifference`] is
/// returned.
pub fn cofinite_diff_count(a: &CofiniteSet, b: &CofiniteSet) -> Result<u64, DiffError> {
    for m in a.threshold..b.threshold.max(a.threshold) {
        if !b.contains(m) {
            return Err(DiffError::InfiniteDifference { missing: m });
        }
    }
    Ok(a.below.iter().filter(|&&m| !b.contains(m)).count() as u64)
}
