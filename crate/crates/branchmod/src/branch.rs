//! Topological class data and value-semigroup invariants.
//!
//! A branch of multiplicity `n` with characteristic exponents
//! `beta_1 < ... < beta_g` determines the gcd chain and the derived data
//!
//! ```text
//! e_0 = n,   e_m = gcd(e_{m-1}, beta_m),   e_g = 1
//! n_m = e_{m-1} / e_m,   nu_m = n / e_m
//! bar_beta_1 = beta_1,
//! bar_beta_j = n_{j-1} * bar_beta_{j-1} - beta_{j-1} + beta_j
//! ```
//!
//! The value semigroup is generated by `n, bar_beta_1, ..., bar_beta_g`; its
//! conductor is `sum_j (n_j - 1) * bar_beta_j - n + 1`.
//!
//! A [`PairClass`] fixes in addition the contact order `beta_0` with the
//! curve `{y = 0}` and two flags telling which coordinate axes belong to the
//! marked divisor `E`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Validation failures for class data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("multiplicity must be at least 2, got {0}")]
    MultiplicityTooSmall(u64),
    #[error("characteristic exponents must be positive and strictly increasing")]
    NonIncreasingExponents,
    #[error("gcd chain stalls at beta_{index} = {beta}: gcd stays {gcd}")]
    GcdChainStall { index: usize, beta: u64, gcd: u64 },
    #[error("gcd chain ends at {0} instead of 1")]
    GcdNotOne(u64),
    #[error("beta_0 = {beta0} must divide-align with n = {n} or equal beta_1 = {beta1}, and not exceed beta_1")]
    BadBeta0 { beta0: u64, n: u64, beta1: u64 },
    #[error("with dy = 0 the contact order must equal beta_1 (got beta_0 = {beta0}, beta_1 = {beta1})")]
    DeltaYZeroBeta0 { beta0: u64, beta1: u64 },
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Multiplicity plus strictly increasing characteristic exponents with a
/// strictly dropping gcd chain ending at 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharacteristicSequence {
    n: u64,
    betas: Vec<u64>,
}

impl CharacteristicSequence {
    pub fn new(n: u64, betas: Vec<u64>) -> Result<Self, ClassError> {
        if n < 2 {
            return Err(ClassError::MultiplicityTooSmall(n));
        }
        if betas.is_empty() {
            return Err(ClassError::GcdNotOne(n));
        }
        let mut prev = 0u64;
        for &b in &betas {
            if b == 0 || b <= prev {
                return Err(ClassError::NonIncreasingExponents);
            }
            prev = b;
        }
        let mut e = n;
        for (i, &b) in betas.iter().enumerate() {
            let next = gcd(e, b);
            if next == e {
                return Err(ClassError::GcdChainStall {
                    index: i + 1,
                    beta: b,
                    gcd: e,
                });
            }
            e = next;
        }
        if e != 1 {
            return Err(ClassError::GcdNotOne(e));
        }
        Ok(CharacteristicSequence { n, betas })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn betas(&self) -> &[u64] {
        &self.betas
    }

    /// Number of characteristic exponents.
    pub fn genus(&self) -> usize {
        self.betas.len()
    }

    /// The chain `e_0 = n, e_1, ..., e_g = 1`.
    pub fn gcd_chain(&self) -> Vec<u64> {
        let mut chain = Vec::with_capacity(self.betas.len() + 1);
        let mut e = self.n;
        chain.push(e);
        for &b in &self.betas {
            e = gcd(e, b);
            chain.push(e);
        }
        chain
    }
}

/// A branch class together with the marked divisor data.
///
/// Struct-level invariants (kept by every constructor in this crate):
/// `1 <= beta_0 <= beta_1` and `beta_0` is a multiple of `n` or equals
/// `beta_1`. [`validate_pair`] additionally enforces the arranged-form rule
/// that `dy = 0` forces `beta_0 = beta_1`; blow-up transforms may return
/// classes where a multiple of `n` below `beta_1` is recorded as the contact
/// order (see `blow_up_fixed_x`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairClass {
    chars: CharacteristicSequence,
    beta0: u64,
    delta_x: bool,
    delta_y: bool,
}

impl PairClass {
    pub fn n(&self) -> u64 {
        self.chars.n
    }

    pub fn betas(&self) -> &[u64] {
        &self.chars.betas
    }

    pub fn beta0(&self) -> u64 {
        self.beta0
    }

    pub fn genus(&self) -> usize {
        self.chars.genus()
    }

    pub fn chars(&self) -> &CharacteristicSequence {
        &self.chars
    }

    pub fn delta_x(&self) -> bool {
        self.delta_x
    }

    pub fn delta_y(&self) -> bool {
        self.delta_y
    }

    /// Number of marked axes through the point, `0..=2`.
    pub fn delta_sum(&self) -> u64 {
        u64::from(self.delta_x) + u64::from(self.delta_y)
    }

    /// Whether the class is already a suitable presentation (`beta_0 >= n`).
    pub fn is_suitable(&self) -> bool {
        self.beta0 >= self.chars.n
    }

    pub(crate) fn view(&self) -> ClassView<'_> {
        ClassView {
            n: self.chars.n,
            betas: &self.chars.betas,
            beta0: self.beta0,
            delta_x: self.delta_x,
            delta_y: self.delta_y,
        }
    }

    /// Presentation-level constructor for transform outputs; checks only the
    /// struct invariants, not the arranged `dy = 0` rule.
    pub(crate) fn from_presentation(
        chars: CharacteristicSequence,
        beta0: u64,
        delta_x: bool,
        delta_y: bool,
    ) -> Self {
        debug_assert!(beta0 >= 1 && beta0 <= chars.betas[0]);
        debug_assert!(beta0 % chars.n == 0 || beta0 == chars.betas[0]);
        PairClass {
            chars,
            beta0,
            delta_x,
            delta_y,
        }
    }
}

/// Borrowed view of class data; the shape shared by [`PairClass`] and
/// blow-up states (where `n = 1` with no characteristic exponents occurs).
#[derive(Debug, Copy, Clone)]
pub(crate) struct ClassView<'a> {
    pub n: u64,
    pub betas: &'a [u64],
    pub beta0: u64,
    pub delta_x: bool,
    pub delta_y: bool,
}

impl ClassView<'_> {
    pub fn delta_sum(&self) -> u64 {
        u64::from(self.delta_x) + u64::from(self.delta_y)
    }

    /// Leading exponent of the y-part: `beta_1`, or `beta_0` for smooth data.
    pub fn leading_beta(&self) -> u64 {
        self.betas.first().copied().unwrap_or(self.beta0)
    }
}

/// Checks arranged class data and builds a [`PairClass`].
///
/// Rules, in error order: multiplicity at least 2; exponents strictly
/// increasing with a strictly dropping gcd chain reaching 1;
/// `1 <= beta_0 <= beta_1` with `beta_0` a multiple of `n` or equal to
/// `beta_1`; and when `dy = 0` the contact order must be `beta_1` itself.
pub fn validate_pair(
    n: u64,
    betas: &[u64],
    beta0: u64,
    delta_x: bool,
    delta_y: bool,
) -> Result<PairClass, ClassError> {
    let chars = CharacteristicSequence::new(n, betas.to_vec())?;
    let beta1 = chars.betas[0];
    if beta0 == 0 || beta0 > beta1 || (beta0 % n != 0 && beta0 != beta1) {
        return Err(ClassError::BadBeta0 { beta0, n, beta1 });
    }
    if !delta_y && beta0 != beta1 {
        return Err(ClassError::DeltaYZeroBeta0 { beta0, beta1 });
    }
    Ok(PairClass {
        chars,
        beta0,
        delta_x,
        delta_y,
    })
}

/// Derived numerical invariants of the value semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SemigroupData {
    e: Vec<u64>,
    n_seq: Vec<u64>,
    nu: Vec<u64>,
    bar_betas: Vec<u64>,
    conductor: u64,
}

impl SemigroupData {
    pub fn n(&self) -> u64 {
        self.e[0]
    }

    /// `e_0, ..., e_g`.
    pub fn e(&self) -> &[u64] {
        &self.e
    }

    /// `n_1, ..., n_g` with `n_j = e_{j-1} / e_j`.
    pub fn n_seq(&self) -> &[u64] {
        &self.n_seq
    }

    /// `nu_0, ..., nu_g` with `nu_j = n / e_j`; so `nu_0 = 1`, `nu_g = n`.
    pub fn nu(&self) -> &[u64] {
        &self.nu
    }

    pub fn bar_betas(&self) -> &[u64] {
        &self.bar_betas
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Minimal generators `n, bar_beta_1, ..., bar_beta_g`.
    pub fn generators(&self) -> Vec<u64> {
        let mut g = Vec::with_capacity(self.bar_betas.len() + 1);
        g.push(self.n());
        g.extend_from_slice(&self.bar_betas);
        g
    }

    pub fn contains(&self, m: u64) -> bool {
        semigroup_contains(self, m)
    }
}

/// Computes gcd chain, quotients, and the `bar_beta` generators of a pair.
pub fn derive_invariants(pair: &PairClass) -> SemigroupData {
    derive_invariants_view(pair.view())
}

pub(crate) fn derive_invariants_view(view: ClassView<'_>) -> SemigroupData {
    assert!(
        !view.betas.is_empty() && view.n >= 2,
        "semigroup invariants need a singular class"
    );
    let n = view.n;
    let g = view.betas.len();
    let mut e = Vec::with_capacity(g + 1);
    e.push(n);
    for &b in view.betas {
        let prev = *e.last().expect("nonempty");
        e.push(gcd(prev, b));
    }
    let n_seq: Vec<u64> = (1..=g).map(|j| e[j - 1] / e[j]).collect();
    let nu: Vec<u64> = (0..=g).map(|j| n / e[j]).collect();
    let mut bar_betas = Vec::with_capacity(g);
    bar_betas.push(view.betas[0]);
    for j in 1..g {
        // bar_beta_{j+1} = n_j * bar_beta_j - beta_j + beta_{j+1}
        let v = n_seq[j - 1] * bar_betas[j - 1] - view.betas[j - 1] + view.betas[j];
        bar_betas.push(v);
    }
    let weighted: u64 = (0..g).map(|j| (n_seq[j] - 1) * bar_betas[j]).sum();
    // evaluate as `weighted + 1 - n`: the conductor is nonnegative but the
    // intermediate `weighted - n` can dip below zero on blow-up outputs
    let conductor = weighted + 1 - n;
    SemigroupData {
        e,
        n_seq,
        nu,
        bar_betas,
        conductor,
    }
}

/// Membership in the numerical semigroup `<n, bar_beta_1, ..., bar_beta_g>`.
///
/// Every `m >= conductor` is a member; below that a coin-problem DP decides.
pub fn semigroup_contains(sgd: &SemigroupData, m: u64) -> bool {
    if m == 0 {
        return true;
    }
    if m >= sgd.conductor {
        return true;
    }
    let limit = m as usize;
    let gens = sgd.generators();
    let mut reach = vec![false; limit + 1];
    reach[0] = true;
    for v in 1..=limit {
        reach[v] = gens
            .iter()
            .filter(|&&g| g as usize <= v)
            .any(|&g| reach[v - g as usize]);
    }
    reach[limit]
}
