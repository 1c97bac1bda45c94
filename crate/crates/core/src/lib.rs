//! Hardy nonlocality under noise.
//!
//! This crate builds Hardy states (bipartite pure states with two distinct
//! strictly positive leading Schmidt weights), mixes them with white or
//! colored noise, computes the exact joint probabilities of the X/Y
//! measurement observables, and decides local explicability two independent
//! ways: closed-form inequalities in the noise parameters and a linear
//! program over deterministic local strategies. On top of that sit the
//! closed-form noise thresholds for each criterion, the CHSH/Horodecki
//! comparison on two qubits, the trace-distance criterion, and threshold
//! curve sweeps.
//!
//! Modules:
//!
//! * [`linalg`] — dense complex kets, operators, tensor products, a Jacobi
//!   Hermitian eigensolver, trace distance, density-operator validation;
//! * [`hardy`] — Schmidt specs, Hardy states, the X/Y bases and observables;
//! * [`noise`] — white and colored noise mixtures;
//! * [`jointprob`] — Born-rule joint probabilities and their closed forms;
//! * [`lhv`] — deterministic-strategy enumeration, LP feasibility of
//!   behavior constraints, set-measure constraints, derived inequalities;
//! * [`thresholds`] — noise thresholds, Horodecki M, threshold orderings;
//! * [`sweep`] — threshold-curve sweeps over the leading Schmidt weight.

pub mod hardy;
pub mod jointprob;
pub mod lhv;
pub mod linalg;
pub mod noise;
pub mod sweep;
pub mod thresholds;

pub use hardy::{
    hardy_state, observable, x_basis, y_basis, Observable, Outcome, Party, SchmidtSpec, Setting,
    SpecError, TwoQubitSpec,
};
pub use jointprob::{
    born_joint, quartet_colored_2x2, quartet_white_2x2, sextet_white_highdim, HardyQuartet,
    OutcomePair, ProbError, WhiteSextet,
};
pub use lhv::{
    check_quartet, enumerate_strategies, hardy_inequality, lhv_feasible, measure_constraints,
    quartet_constraints, BehaviorConstraints, DeterministicStrategy, InequalityCheck,
    LhvFeasibility, MeasureConstraintSet,
};
pub use linalg::{
    projector, tensor, trace_distance, validate_density, CMatrix, DensityOperator, Ket, LinalgError,
};
pub use noise::{mix_colored, mix_white, NoiseError, NoiseKind, NoisyHardyState};
pub use thresholds::{
    horodecki_m, report, threshold_chsh_white, threshold_colored, threshold_white_2x2,
    threshold_white_highdim, tracedist_criterion, ThresholdReport, TraceDistCriterion,
};
