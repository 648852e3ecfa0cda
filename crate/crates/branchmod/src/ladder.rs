//! Exponent ladder: which parametrization exponents a generic curve of a
//! pair class can carry.
//!
//! For a class with contact order `beta_0` and exponents `beta_1 < ... <
//! beta_g` the ladder is the union of arithmetic strata
//!
//! ```text
//! stratum j:  { m : m = 0 mod gcd(n, beta_0, ..., beta_j),  m >= beta_j }
//! ```
//!
//! with `beta_0` starting stratum 0. The last modulus is 1, so the ladder is
//! cofinite. Successor and predecessor within the ladder drive the conflict
//! resolution of the Apery engine.

use crate::branch::{ClassView, PairClass};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LadderError {
    #[error("{0} is not an exponent ladder member")]
    NotAMember(u64),
    #[error("{0} is the smallest ladder member; no predecessor")]
    AtMinimum(u64),
}

/// One arithmetic stratum; members are the multiples of `modulus` from
/// `start` on (`modulus` divides `start`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LadderStratum {
    pub start: u64,
    pub modulus: u64,
}

/// Finite description of the (cofinite) exponent set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentLadder {
    strata: Vec<LadderStratum>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Builds the ladder of a pair class.
pub fn exponent_ladder(pair: &PairClass) -> ExponentLadder {
    exponent_ladder_view(pair.view())
}

pub(crate) fn exponent_ladder_view(view: ClassView<'_>) -> ExponentLadder {
    let mut strata = Vec::with_capacity(view.betas.len() + 1);
    let mut g = gcd(view.n, view.beta0);
    strata.push(LadderStratum {
        start: view.beta0,
        modulus: g,
    });
    for &b in view.betas {
        g = gcd(g, b);
        strata.push(LadderStratum {
            start: b,
            modulus: g,
        });
    }
    let last = strata.last().expect("at least one stratum");
    assert_eq!(last.modulus, 1, "ladder must be cofinite");
    ExponentLadder { strata }
}

impl ExponentLadder {
    pub fn strata(&self) -> &[LadderStratum] {
        &self.strata
    }

    /// Smallest member; always `beta_0` since strata starts are increasing.
    pub fn min_member(&self) -> u64 {
        self.strata[0].start
    }

    pub fn contains(&self, m: u64) -> bool {
        self.strata
            .iter()
            .any(|s| m >= s.start && m % s.modulus == 0)
    }

    /// Smallest member strictly above `m` (no membership requirement on `m`).
    fn successor_above(&self, m: u64) -> u64 {
        self.strata
            .iter()
            .map(|s| {
                let from = (m + 1).max(s.start);
                // round up to the stratum's arithmetic progression
                from.div_ceil(s.modulus) * s.modulus
            })
            .min()
            .expect("at least one stratum")
    }

    /// Largest member strictly below `m`, if any.
    fn predecessor_below(&self, m: u64) -> Option<u64> {
        self.strata
            .iter()
            .filter(|s| m > s.start)
            .map(|s| ((m - 1) / s.modulus * s.modulus).max(s.start))
            .max()
    }

    /// All members in `[1, bound]`, ascending.
    pub fn members_upto(&self, bound: u64) -> Vec<u64> {
        let mut out = Vec::new();
        if bound < self.min_member() {
            return out;
        }
        let mut m = self.min_member();
        while m <= bound {
            out.push(m);
            m = self.successor_above(m);
        }
        out
    }
}

/// Ladder successor of a member.
pub fn next_exponent(ladder: &ExponentLadder, m: u64) -> Result<u64, LadderError> {
    if !ladder.contains(m) {
        return Err(LadderError::NotAMember(m));
    }
    Ok(ladder.successor_above(m))
}

/// Ladder predecessor of a member; errors on the minimum.
pub fn prev_exponent(ladder: &ExponentLadder, m: u64) -> Result<u64, LadderError> {
    if !ladder.contains(m) {
        return Err(LadderError::NotAMember(m));
    }
    ladder.predecessor_below(m).ok_or(LadderError::AtMinimum(m))
}
