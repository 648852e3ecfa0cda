//! Blow-up transforms of pair classes and resolution trajectories.
//!
//! Blowing up the origin acts on exponent sets in the chart where the
//! curve stays transverse: every admissible exponent drops by `n`,
//!
//! ```text
//! new exponents = { m - n : m ladder member, m > n }
//! ```
//!
//! and the exceptional line joins the marked divisor (`dx' = 1`). When the
//! resulting contact order falls below the multiplicity the presentation is
//! unsuitable and the coordinates must be swapped: the curve is
//! reparametrized so the old smallest exponent `b0` becomes the new
//! multiplicity and the old multiplicity `m` the new contact order, with
//! exponent set `{m} u { m + (e - b0) : e old exponent, e > b0 }` and the
//! axis flags exchanged. Iterating blow-up + swap yields the multiplicity
//! sequence of the resolution.

use crate::branch::{
    derive_invariants_view, CharacteristicSequence, ClassView, PairClass,
};
use crate::ladder::exponent_ladder_view;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowupError {
    #[error("trajectory exceeded {cap} blow-ups without reaching multiplicity 1")]
    IterationCap { cap: u64 },
    #[error("index {iota} is not a sliding divisor (its center meets two marked components)")]
    NotASlidingDivisor { iota: u64 },
}

/// Class data in a suitable presentation: `beta_0 >= n`, and `n = 1` (smooth
/// states, no characteristic exponents) is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuitableState {
    n: u64,
    betas: Vec<u64>,
    beta0: u64,
    delta_x: bool,
    delta_y: bool,
}

impl SuitableState {
    fn new(n: u64, betas: Vec<u64>, beta0: u64, delta_x: bool, delta_y: bool) -> Self {
        debug_assert!(n >= 1 && beta0 >= n);
        debug_assert_eq!(betas.is_empty(), n == 1);
        debug_assert!(betas.first().map_or(true, |&b1| beta0 <= b1));
        SuitableState {
            n,
            betas,
            beta0,
            delta_x,
            delta_y,
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn betas(&self) -> &[u64] {
        &self.betas
    }

    pub fn beta0(&self) -> u64 {
        self.beta0
    }

    pub fn delta_x(&self) -> bool {
        self.delta_x
    }

    pub fn delta_y(&self) -> bool {
        self.delta_y
    }

    pub fn delta_sum(&self) -> u64 {
        u64::from(self.delta_x) + u64::from(self.delta_y)
    }

    pub fn is_smooth(&self) -> bool {
        self.n == 1
    }

    /// The same data as a [`PairClass`] when the state is singular.
    pub fn to_pair_class(&self) -> Option<PairClass> {
        if self.n < 2 {
            return None;
        }
        let chars = CharacteristicSequence::new(self.n, self.betas.clone())
            .expect("state data is a valid sequence");
        Some(PairClass::from_presentation(
            chars,
            self.beta0,
            self.delta_x,
            self.delta_y,
        ))
    }

    pub(crate) fn view(&self) -> ClassView<'_> {
        ClassView {
            n: self.n,
            betas: &self.betas,
            beta0: self.beta0,
            delta_x: self.delta_x,
            delta_y: self.delta_y,
        }
    }
}

/// Presentation class after a transform, possibly unsuitable.
#[derive(Debug, Clone)]
struct RawClass {
    n: u64,
    betas: Vec<u64>,
    beta0: u64,
    delta_x: bool,
    delta_y: bool,
}

impl RawClass {
    fn view(&self) -> ClassView<'_> {
        ClassView {
            n: self.n,
            betas: &self.betas,
            beta0: self.beta0,
            delta_x: self.delta_x,
            delta_y: self.delta_y,
        }
    }
}

/// How far the explicit exponent list must reach so that every gcd drop of
/// any transform output is visible.
fn regeneration_bound(view: ClassView<'_>) -> u64 {
    if view.betas.is_empty() {
        return view.beta0 + view.n + 2;
    }
    let sgd = derive_invariants_view(view);
    let g = view.betas.len();
    view.betas[g - 1] + sgd.bar_betas()[g - 1] + view.n
}

/// Sorted explicit exponent list of the class up to its regeneration bound.
fn explicit_exponents(view: ClassView<'_>) -> Vec<u64> {
    let bound = regeneration_bound(view);
    if view.betas.is_empty() {
        return (view.beta0..=bound).collect();
    }
    exponent_ladder_view(view).members_upto(bound)
}

/// Characteristic exponents of a sorted exponent list: the positions where
/// the running gcd with `n` strictly drops.
fn gcd_drops(n: u64, exponents: &[u64]) -> Vec<u64> {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let mut out = Vec::new();
    let mut g = n;
    for &m in exponents {
        if g == 1 {
            break;
        }
        let next = gcd(g, m);
        if next < g {
            out.push(m);
            g = next;
        }
    }
    assert!(g == 1, "exponent list too short to reach gcd 1");
    out
}

fn blow_up_raw(view: ClassView<'_>) -> RawClass {
    let n = view.n;
    let shifted: Vec<u64> = explicit_exponents(view)
        .into_iter()
        .filter(|&m| m > n)
        .map(|m| m - n)
        .collect();
    assert!(!shifted.is_empty());
    let keeps_y_contact = view.delta_y && view.beta0 > n;
    let beta0 = if keeps_y_contact {
        view.beta0 - n
    } else {
        shifted[0]
    };
    let betas = gcd_drops(n, &shifted);
    RawClass {
        n,
        betas,
        beta0,
        delta_x: true,
        delta_y: keeps_y_contact,
    }
}

fn suitabilize_raw(raw: RawClass) -> SuitableState {
    if raw.beta0 >= raw.n {
        return SuitableState::new(raw.n, raw.betas, raw.beta0, raw.delta_x, raw.delta_y);
    }
    // swap the roles of the coordinates; beta_0 is the smallest exponent
    let m = raw.n;
    let b0 = raw.beta0;
    let old = explicit_exponents(raw.view());
    debug_assert_eq!(old.first(), Some(&b0));
    let mut new_set = vec![m];
    new_set.extend(old.iter().filter(|&&e| e > b0).map(|&e| m + e - b0));
    new_set.sort_unstable();
    new_set.dedup();
    let betas = gcd_drops(b0, &new_set);
    SuitableState::new(b0, betas, m, raw.delta_y, raw.delta_x)
}

/// One blow-up in the chart fixing `x`; the multiplicity is kept and the
/// exceptional line becomes a marked axis.
///
/// The output records the presentation contact order: when the strict
/// transform leaves `{y = 0}` (so `dy' = 0`), `beta_0'` is the smallest new
/// exponent, which can be a multiple of `n` strictly below `beta_1'`.
pub fn blow_up_fixed_x(pair: &PairClass) -> PairClass {
    let raw = blow_up_raw(pair.view());
    let chars = CharacteristicSequence::new(raw.n, raw.betas)
        .expect("blow-up of a singular class stays singular");
    PairClass::from_presentation(chars, raw.beta0, raw.delta_x, raw.delta_y)
}

/// Rewrites a class in a suitable presentation, swapping coordinates if the
/// contact order lies below the multiplicity; the identity otherwise.
pub fn suitabilize(pair: &PairClass) -> SuitableState {
    let v = pair.view();
    suitabilize_raw(RawClass {
        n: v.n,
        betas: v.betas.to_vec(),
        beta0: v.beta0,
        delta_x: v.delta_x,
        delta_y: v.delta_y,
    })
}

fn step(state: &SuitableState) -> SuitableState {
    suitabilize_raw(blow_up_raw(state.view()))
}

/// Blow-up trajectory down to the first smooth state.
#[derive(Debug, Clone)]
pub struct Trajectory {
    states: Vec<SuitableState>,
    mults: Vec<u64>,
    deltas: Vec<u64>,
}

impl Trajectory {
    /// Suitabilized states `P_0, ..., P_r` with `P_r` the first smooth one.
    pub fn states(&self) -> &[SuitableState] {
        &self.states
    }

    /// Multiplicity at each state.
    pub fn mults(&self) -> &[u64] {
        &self.mults
    }

    /// Number of marked components through each state.
    pub fn deltas(&self) -> &[u64] {
        &self.deltas
    }

    /// Index of the first smooth state (= number of singular steps).
    pub fn stop(&self) -> usize {
        self.states.len() - 1
    }
}

/// Iterates blow-up + suitabilize until the multiplicity reaches 1.
pub fn trajectory(state: &SuitableState) -> Result<Trajectory, BlowupError> {
    let cap = trajectory_cap(state);
    let mut states = vec![state.clone()];
    while !states.last().expect("nonempty").is_smooth() {
        if states.len() as u64 > cap {
            return Err(BlowupError::IterationCap { cap });
        }
        let next = step(states.last().expect("nonempty"));
        states.push(next);
    }
    let mults = states.iter().map(|s| s.n()).collect();
    let deltas = states.iter().map(|s| s.delta_sum()).collect();
    Ok(Trajectory {
        states,
        mults,
        deltas,
    })
}

fn trajectory_cap(state: &SuitableState) -> u64 {
    if state.is_smooth() {
        return 2;
    }
    let sgd = derive_invariants_view(state.view());
    let g = state.betas.len();
    // resolution length is dominated by the Euclid quotient sums, far below
    // conductor + exponents; generous defensive cap
    sgd.conductor() + 2 * state.betas[g - 1] + 2 * state.n + 8
}

/// States `P_0, ..., P_bound` of the trajectory continued past smoothness.
fn states_upto(state: &SuitableState, bound: u64) -> Vec<SuitableState> {
    let mut states = vec![state.clone()];
    for _ in 0..bound {
        let next = step(states.last().expect("nonempty"));
        states.push(next);
    }
    states
}

/// Indices `1 <= iota <= bound` whose center lies on exactly one marked
/// component.
pub fn sliding_divisors(state: &SuitableState, bound: u64) -> Vec<u64> {
    states_upto(state, bound)
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, s)| s.delta_sum() == 1)
        .map(|(i, _)| i as u64)
        .collect()
}

/// Fanning exponent of a sliding divisor:
///
/// ```text
/// theta(iota) = mult(P_{iota-1}) + sum_{j=1..iota-1} mult(P_j)
/// ```
pub fn fanning_exponent(state: &SuitableState, iota: u64) -> Result<u64, BlowupError> {
    let states = states_upto(state, iota);
    let last = states.last().expect("nonempty");
    if iota == 0 || last.delta_sum() != 1 {
        return Err(BlowupError::NotASlidingDivisor { iota });
    }
    let i = iota as usize;
    let tail: u64 = states[1..i].iter().map(|s| s.n()).sum();
    Ok(states[i - 1].n() + tail)
}

/// Exponents at which the generic curve of the class can vary: the ladder,
/// padded below the contact order with the multiples of `n` when `{y = 0}`
/// is unmarked; restricted to `[1, bound]`.
pub fn variation_exponents(state: &SuitableState, bound: u64) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    if !state.delta_y() {
        let mut m = state.n();
        while m < state.beta0() && m <= bound {
            out.push(m);
            m += state.n();
        }
    }
    if state.is_smooth() {
        out.extend(state.beta0()..=bound);
    } else {
        out.extend(exponent_ladder_view(state.view()).members_upto(bound));
    }
    out.sort_unstable();
    out.dedup();
    out
}
