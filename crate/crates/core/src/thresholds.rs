//! Closed-form noise thresholds for the Hardy argument, the CHSH/Horodecki
//! comparison on two qubits, and the trace-distance criterion.
//!
//! Every threshold is the purity above which the corresponding criterion
//! excludes local deterministic models:
//!
//! * white noise on two qubits: 1 / (1 + 2 a0) with
//!   a0 = p1^2 p2^2 (p1 - p2)^2 / (1 - p1 p2)^2;
//! * colored noise on two qubits: 1 / (2 (1 - 2 p1^2 p2^2));
//! * white noise on C^{d1} (x) C^{d2}:
//!   1 / (1 + d1 d2 p1^2 p2^2 (p1 - p2)^2 / (4 (p1^2 + p2^2 - p1 p2)^2));
//! * CHSH violability (two qubits): 1 / sqrt(1 + 4 p1^2 p2^2);
//! * trace-distance neighbourhood: mixtures closer than
//!   a0' / 6 (with the general denominator) to the pure state are nonlocal,
//!   which converts to a purity via D = (1 - p)(d1 d2 - 1)/(d1 d2).

use nalgebra::Matrix3;
use num_complex::Complex64;
use thiserror::Error;

use crate::hardy::{SchmidtSpec, SpecError, TwoQubitSpec};
use crate::jointprob::{pure_hardy_probability, pure_hardy_probability_2x2};
use crate::linalg::{hermitian_eigenvalues, tensor, trace, CMatrix, DensityOperator};

/// Orderings between thresholds are recorded only when strict beyond this.
pub const ORDERING_STRICT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ThresholdError {
    #[error("the CHSH criterion needs a two-qubit state, got dimension {dim}")]
    NotTwoQubitState { dim: usize },
}

fn white_2x2_bound(p1: f64, p2: f64) -> f64 {
    1.0 / (1.0 + 2.0 * pure_hardy_probability_2x2(p1, p2))
}

fn colored_bound(p1: f64, p2: f64) -> f64 {
    let x2 = p1 * p1 * p2 * p2;
    1.0 / (2.0 * (1.0 - 2.0 * x2))
}

fn chsh_white_bound(p1: f64, p2: f64) -> f64 {
    let x2 = p1 * p1 * p2 * p2;
    1.0 / (1.0 + 4.0 * x2).sqrt()
}

/// White-noise bound for arbitrary dimension product, as a raw formula in
/// the two leading weights. Exposed for sweep evaluation, where only
/// (p1, p2, d1 d2) are fixed and no full spec exists.
pub fn white_highdim_bound(p1: f64, p2: f64, dim_product: usize) -> f64 {
    1.0 / (1.0 + dim_product as f64 * pure_hardy_probability(p1, p2) / 4.0)
}

/// The trace-distance criterion expressed as a bound on 1 - p:
/// d1 d2 / (6 (d1 d2 - 1)) * p1^2 p2^2 (p1 - p2)^2 / (p1^2+p2^2-p1 p2)^2.
pub fn tracedist_one_minus_p(p1: f64, p2: f64, dim_product: usize) -> f64 {
    let d = dim_product as f64;
    d / (6.0 * (d - 1.0)) * pure_hardy_probability(p1, p2)
}

/// Purity bound for white noise on two qubits; noise levels with p strictly
/// above it admit no local deterministic model.
pub fn threshold_white_2x2(p1: f64, p2: f64) -> Result<f64, SpecError> {
    let spec = TwoQubitSpec::new(p1, p2)?;
    Ok(white_2x2_bound(spec.p1(), spec.p2()))
}

/// Purity bound for colored noise on two qubits.
pub fn threshold_colored(p1: f64, p2: f64) -> Result<f64, SpecError> {
    let spec = TwoQubitSpec::new(p1, p2)?;
    Ok(colored_bound(spec.p1(), spec.p2()))
}

/// Purity above which some CHSH inequality is violated by the white-noise
/// mixture (the Horodecki criterion evaluated in closed form).
pub fn threshold_chsh_white(p1: f64, p2: f64) -> Result<f64, SpecError> {
    let spec = TwoQubitSpec::new(p1, p2)?;
    Ok(chsh_white_bound(spec.p1(), spec.p2()))
}

/// Purity bound for white noise on arbitrary local dimensions.
pub fn threshold_white_highdim(spec: &SchmidtSpec) -> f64 {
    white_highdim_bound(spec.p1(), spec.p2(), spec.dim())
}

/// The trace-distance nonlocality criterion for a spec: mixtures within
/// `eta_bound` of the pure state in trace distance are nonlocal, which for
/// white noise means purities above `p_equivalent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceDistCriterion {
    pub eta_bound: f64,
    pub p_equivalent: f64,
}

pub fn tracedist_criterion(spec: &SchmidtSpec) -> TraceDistCriterion {
    TraceDistCriterion {
        eta_bound: pure_hardy_probability(spec.p1(), spec.p2()) / 6.0,
        p_equivalent: 1.0 - tracedist_one_minus_p(spec.p1(), spec.p2(), spec.dim()),
    }
}

fn pauli_matrices() -> [CMatrix; 3] {
    let z = Complex64::default;
    let r = |v: f64| Complex64::new(v, 0.0);
    let i = |v: f64| Complex64::new(0.0, v);
    [
        CMatrix::from_row_slice(2, 2, &[z(), r(1.0), r(1.0), z()]),
        CMatrix::from_row_slice(2, 2, &[z(), i(-1.0), i(1.0), z()]),
        CMatrix::from_row_slice(2, 2, &[r(1.0), z(), z(), r(-1.0)]),
    ]
}

/// Horodecki CHSH indicator for a two-qubit state: the sum of the two
/// largest eigenvalues of T^T T, where T_ij = Tr[rho sigma_i (x) sigma_j].
/// Some CHSH inequality is violated exactly when M > 1.
pub fn horodecki_m(rho: &DensityOperator) -> Result<f64, ThresholdError> {
    if rho.dim() != 4 {
        return Err(ThresholdError::NotTwoQubitState { dim: rho.dim() });
    }
    let sigma = pauli_matrices();
    let t = Matrix3::from_fn(|i, j| trace(&(tensor(&sigma[i], &sigma[j]) * rho.matrix())).re);
    let tt = t.transpose() * t;
    let tt = CMatrix::from_fn(3, 3, |i, j| Complex64::new(tt[(i, j)], 0.0));
    let vals = hermitian_eigenvalues(&tt).expect("T^T T is symmetric");
    Ok((vals[1] + vals[2]).max(0.0))
}

/// A numerically verified strict ordering between two thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderingKind {
    /// colored-noise bound < white-noise bound (two qubits)
    ColoredBelowWhite,
    /// CHSH bound < white-noise bound (two qubits)
    ChshBelowWhite,
    /// general white-noise bound < trace-distance equivalent purity
    HighdimBelowTracedist,
}

impl OrderingKind {
    pub fn label(self) -> &'static str {
        match self {
            OrderingKind::ColoredBelowWhite => "colored < white (2x2)",
            OrderingKind::ChshBelowWhite => "chsh < white (2x2)",
            OrderingKind::HighdimBelowTracedist => "white (general) < trace-distance",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifiedOrdering {
    pub kind: OrderingKind,
    pub lesser: f64,
    pub greater: f64,
}

/// All closed-form noise thresholds for a spec, with the pairwise orderings
/// that held strictly (margin above [`ORDERING_STRICT_TOL`]).
///
/// `t_white` always carries the two-qubit formula evaluated at the two
/// leading weights; `t_colored` and `t_chsh` exist only for 2x2 specs.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    pub spec: SchmidtSpec,
    pub t_white: f64,
    pub t_colored: Option<f64>,
    pub t_chsh: Option<f64>,
    pub t_highdim: f64,
    pub t_tracedist: f64,
    pub eta_bound: f64,
    pub orderings: Vec<VerifiedOrdering>,
}

pub fn report(spec: &SchmidtSpec) -> ThresholdReport {
    let (p1, p2) = (spec.p1(), spec.p2());
    let two_qubit = spec.is_two_qubit();
    let t_white = white_2x2_bound(p1, p2);
    let t_colored = two_qubit.then(|| colored_bound(p1, p2));
    let t_chsh = two_qubit.then(|| chsh_white_bound(p1, p2));
    let t_highdim = threshold_white_highdim(spec);
    let crit = tracedist_criterion(spec);

    let mut orderings = Vec::new();
    let mut record = |kind: OrderingKind, lesser: f64, greater: f64| {
        if greater - lesser > ORDERING_STRICT_TOL {
            orderings.push(VerifiedOrdering {
                kind,
                lesser,
                greater,
            });
        }
    };
    if let Some(tc) = t_colored {
        record(OrderingKind::ColoredBelowWhite, tc, t_white);
    }
    if let Some(tch) = t_chsh {
        record(OrderingKind::ChshBelowWhite, tch, t_white);
    }
    record(
        OrderingKind::HighdimBelowTracedist,
        t_highdim,
        crit.p_equivalent,
    );

    ThresholdReport {
        spec: spec.clone(),
        t_white,
        t_colored,
        t_chsh,
        t_highdim,
        t_tracedist: crit.p_equivalent,
        eta_bound: crit.eta_bound,
        orderings,
    }
}
