//! Differential values on plane curve branches.
//!
//! A branch is described by its multiplicity `n` and characteristic exponents
//! `beta_1 < ... < beta_g`; a pair additionally marks a normal-crossing
//! divisor `E` built from the coordinate axes (flags `dx`, `dy`) and records
//! the contact order `beta_0` with `{y = 0}`. From that data the crate
//! computes, for a generic curve in the equisingularity class:
//!
//! * the value semigroup and its standard invariants ([`branch`]),
//! * the exponent ladder of admissible parametrization terms ([`ladder`]),
//! * the semimodule of values of Kahler differentials via an Apery-table
//!   fixpoint computation ([`apery`]),
//! * the behaviour of all of the above under blow-up ([`blowup`]),
//! * the dimension of the generic moduli stratum by two independent methods
//!   that must agree ([`moduli`]),
//! * an exact rational power-series oracle that recomputes the semimodule
//!   from an explicit parametrization and cross-checks the combinatorics
//!   ([`series`], [`oracle`]).
//!
//! [`sampling`] builds random valid classes for batch verification and
//! [`literal`] parses the textual / JSON class notation used by the CLI.

pub mod apery;
pub mod blowup;
pub mod branch;
pub mod ladder;
pub mod literal;
pub mod moduli;
pub mod oracle;
pub mod sampling;
pub mod series;

pub use apery::{
    apery_orders, apery_orders_with_sweep, cofinite_diff_count, semimodule, singular_semimodule,
    AperyError, AperyTable, CofiniteSet, DiffError, Semimodule, SweepOrder,
};
pub use blowup::{
    blow_up_fixed_x, fanning_exponent, sliding_divisors, suitabilize, trajectory,
    variation_exponents, BlowupError, SuitableState, Trajectory,
};
pub use branch::{
    derive_invariants, semigroup_contains, validate_pair, CharacteristicSequence, ClassError,
    PairClass, SemigroupData,
};
pub use ladder::{exponent_ladder, next_exponent, prev_exponent, ExponentLadder, LadderError};
pub use literal::{format_class_literal, parse_class_literal, LiteralError};
pub use moduli::{
    blowup_step_difference, blowup_step_difference_state, dimension_report, trajectory_dimension,
    geometric_dimension, parallel_shift_semimodule, sigma, theta_increments, DimensionReport,
    ModuliError,
};
pub use oracle::{
    combination_order, module_apery, module_apery_with_order, pullback_order, specialize,
    specialize_with_coefficients, verify_class, Differential, FormCombination, MonomialForm,
    OracleError, ReductionOrder, SeedRun, SpecializedCurve, VerifyReport,
};
pub use sampling::{random_class, random_plain_class};
pub use series::TruncatedSeries;
