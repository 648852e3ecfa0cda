//! Dimension of the generic moduli stratum, by two routes that must agree.
//!
//! Route one sums a closed-form local contribution over the blow-up
//! trajectory: with `m = nu + delta` (multiplicity plus marked components
//! at the infinitely near point)
//!
//! ```text
//! sigma(m) = (m-2)(m-4)/4   m even
//! sigma(m) = (m-3)^2/4      m odd
//! ```
//!
//! Route two counts exponents: for a plain branch the dimension is the
//! number of ladder members that survive in no differential value, i.e.
//! `# ( ladder \ (singular semimodule - n) )`.
//!
//! The per-step counterpart compares the semimodule across one blow-up:
//! `# ( (nu + next semimodule) \ singular semimodule )` must equal
//! `sigma(nu + delta)` at every step, and the next semimodule can be read
//! off combinatorially from the current Apery table by the parallel shift
//! `a(j) -> a(j) - n * floor((j - 1 + dx + dy) / 2)`.

use crate::apery::{
    apery_orders_view, cofinite_diff_count, semimodule_view, singular_semimodule_view, AperyError,
    CofiniteSet, DiffError, Semimodule, SweepOrder,
};
use crate::blowup::{trajectory, suitabilize, BlowupError, SuitableState};
use crate::branch::{derive_invariants_view, ClassView, PairClass};
use crate::ladder::exponent_ladder_view;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuliError {
    #[error(transparent)]
    Apery(#[from] AperyError),
    #[error(transparent)]
    Blowup(#[from] BlowupError),
    #[error(transparent)]
    Diff(#[from] DiffError),
    #[error("semimodule inclusion fails across the blow-up: {member} is lost")]
    InclusionViolated { member: u64 },
    #[error("blow-up step count {count} disagrees with sigma = {expected}")]
    SigmaMismatch { count: u64, expected: u64 },
    #[error("step {step}: counted {count} new values, sigma predicts {expected}")]
    CrossCheckFailure { step: usize, count: u64, expected: u64 },
    #[error("geometric count needs a plain suitable branch (no marked axes, beta_0 = beta_1)")]
    PlainClassRequired,
}

/// Local moduli contribution of a point of multiplicity + marked-component
/// count `m`; zero exactly for `m` in `{2, 3, 4}`.
pub fn sigma(m: u64) -> u64 {
    let m = m as i64;
    let v = if m % 2 == 0 {
        (m - 2) * (m - 4) / 4
    } else {
        (m - 3) * (m - 3) / 4
    };
    debug_assert!(v >= 0);
    v as u64
}

/// Trajectory-summed dimension: total plus the per-step contributions
/// `sigma(nu_j + delta_j)` over the singular states.
pub fn trajectory_dimension(state: &SuitableState) -> Result<(u64, Vec<u64>), ModuliError> {
    let traj = trajectory(state)?;
    let per_step: Vec<u64> = (0..traj.stop())
        .map(|j| sigma(traj.mults()[j] + traj.deltas()[j]))
        .collect();
    Ok((per_step.iter().sum(), per_step))
}

/// Exponent-count dimension for a plain branch (`E` empty, arranged,
/// singular): `# ( ladder \ (singular semimodule - n) )`.
pub fn geometric_dimension(pair: &PairClass) -> Result<u64, ModuliError> {
    if pair.delta_sum() != 0 || pair.beta0() != pair.betas()[0] || !pair.is_suitable() {
        return Err(ModuliError::PlainClassRequired);
    }
    let view = pair.view();
    let n = view.n;
    let sing = singular_semimodule_view(view)?;
    // values sit at n + (differential value), so the shift back stays positive
    let dropped = sing.shifted_down(n);
    let sgd = derive_invariants_view(view);
    let beta_g = view.betas[view.betas.len() - 1];
    let w = beta_g.max(dropped.max_value()).max(sgd.conductor()) + 2 * n;
    let ladder = CofiniteSet::new(exponent_ladder_view(view).members_upto(w - 1), w);
    let count = cofinite_diff_count(&ladder, &dropped.to_cofinite(w))?;
    Ok(count)
}

/// Apery set of the blown-up class, read off combinatorially from the
/// current table by undoing the exceptional multiple carried by each
/// position: `a(j) - n * floor((j - 1 + dx + dy) / 2)`, j = 1..n.
pub fn parallel_shift_semimodule(pair: &PairClass) -> Result<Semimodule, ModuliError> {
    parallel_shift_view(pair.view())
}

pub(crate) fn parallel_shift_view(view: ClassView<'_>) -> Result<Semimodule, ModuliError> {
    let table = apery_orders_view(view, SweepOrder::Sorted)?;
    let n = view.n;
    let delta = view.delta_sum();
    let values: Vec<u64> = table
        .apery()
        .iter()
        .enumerate()
        .map(|(j, &a)| a - n * ((j as u64 + delta) / 2))
        .collect();
    Ok(Semimodule::from_values(n, values))
}

/// Window wide enough that both operands are full beyond it.
fn diff_window(a: &Semimodule, b: &Semimodule, conductors: &[u64]) -> u64 {
    let base = a
        .max_value()
        .max(b.max_value())
        .max(conductors.iter().copied().max().unwrap_or(0));
    base + 2 * (a.n() + b.n())
}

/// Counts `# ( (n + shifted semimodule) \ singular semimodule )` for one
/// blow-up of the class, checking the inclusion and the sigma prediction.
pub fn blowup_step_difference(pair: &PairClass) -> Result<u64, ModuliError> {
    blowup_step_view(pair.view())
}

/// Same check anchored at a trajectory state.
pub fn blowup_step_difference_state(state: &SuitableState) -> Result<u64, ModuliError> {
    blowup_step_view(state.view())
}

fn blowup_step_view(view: ClassView<'_>) -> Result<u64, ModuliError> {
    let n = view.n;
    let after = parallel_shift_view(view)?.shifted(n);
    let sing = singular_semimodule_view(view)?;
    let conductor = if view.betas.is_empty() {
        0
    } else {
        derive_invariants_view(view).conductor()
    };
    let w = diff_window(&after, &sing, &[conductor]);
    for m in 0..w {
        if sing.contains(m) && !after.contains(m) {
            return Err(ModuliError::InclusionViolated { member: m });
        }
    }
    let count = cofinite_diff_count(&after.to_cofinite(w), &sing.to_cofinite(w))?;
    let expected = sigma(n + view.delta_sum());
    if count != expected {
        return Err(ModuliError::SigmaMismatch { count, expected });
    }
    Ok(count)
}

/// Per-step gains of the trajectory, computed from the honest semimodules
/// of consecutive suitabilized states:
/// `# ( (nu_i + semimodule(P_{i+1})) \ singular semimodule(P_i) )`,
/// cross-checked against `sigma(nu_i + delta_i)` step by step.
pub fn theta_increments(state: &SuitableState) -> Result<Vec<u64>, ModuliError> {
    let traj = trajectory(state)?;
    let mut out = Vec::with_capacity(traj.stop());
    for i in 0..traj.stop() {
        let src = &traj.states()[i];
        let tgt = &traj.states()[i + 1];
        let after = semimodule_view(tgt.view())?.shifted(traj.mults()[i]);
        let sing = singular_semimodule_view(src.view())?;
        let mut conductors = Vec::new();
        for s in [src, tgt] {
            if !s.is_smooth() {
                conductors.push(derive_invariants_view(s.view()).conductor());
            }
        }
        let w = diff_window(&after, &sing, &conductors);
        let count = cofinite_diff_count(&after.to_cofinite(w), &sing.to_cofinite(w))?;
        let expected = sigma(traj.mults()[i] + traj.deltas()[i]);
        if count != expected {
            return Err(ModuliError::CrossCheckFailure {
                step: i,
                count,
                expected,
            });
        }
        out.push(count);
    }
    Ok(out)
}

/// Both dimension computations side by side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DimensionReport {
    pub trajectory_sum: u64,
    /// Exponent count; only defined for plain branches.
    pub geometric: Option<u64>,
    pub per_step_sigma: Vec<u64>,
    pub per_step_theta: Vec<u64>,
    pub agree: bool,
}

/// Runs every dimension route on the class and compares them.
pub fn dimension_report(pair: &PairClass) -> Result<DimensionReport, ModuliError> {
    let state = suitabilize(pair);
    let (trajectory_sum, per_step_sigma) = trajectory_dimension(&state)?;
    let per_step_theta = theta_increments(&state)?;
    let geometric = if pair.delta_sum() == 0 && pair.beta0() == pair.betas()[0] && pair.is_suitable()
    {
        Some(geometric_dimension(pair)?)
    } else {
        None
    };
    let theta_total: u64 = per_step_theta.iter().sum();
    let agree = trajectory_sum == theta_total && geometric.map_or(true, |g| g == trajectory_sum);
    Ok(DimensionReport {
        trajectory_sum,
        geometric,
        per_step_sigma,
        per_step_theta,
        agree,
    })
}
