//! Local-hidden-variable analysis for the two-party, two-setting scenario.
//!
//! A deterministic local strategy assigns one outcome to each setting of
//! each party. A behavior is locally explicable exactly when a probability
//! distribution over these strategies reproduces every constrained joint
//! probability. Membership is decided by linear programming over the
//! strategy weights; the derived closed-form inequalities (one per noise
//! family) are checked independently, and the LP serves as the oracle that
//! validates them.

use std::collections::HashSet;

use microlp::{ComparisonOp, OptimizationDirection, Problem};
use thiserror::Error;

use crate::hardy::{Outcome, Setting};
use crate::jointprob::{HardyQuartet, OutcomePair};

/// Residual tolerance for LP feasibility decisions.
pub const LHV_TOL: f64 = 1e-9;
/// Slack magnitudes at or below this are "satisfied" for the closed-form
/// inequalities; floating LP cannot certify exact-zero slack anyway.
pub const SLACK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstraintError {
    #[error("constraint probability {value} for {pair} lies outside [0, 1]")]
    ProbabilityOutOfRange { pair: OutcomePair, value: f64 },
    #[error("duplicated constraint for {pair}")]
    DuplicatePair { pair: OutcomePair },
}

/// What one party answers to each of its two settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartyAssignment {
    pub x: Outcome,
    pub y: Outcome,
}

impl PartyAssignment {
    pub fn outcome(&self, setting: Setting) -> Outcome {
        match setting {
            Setting::X => self.x,
            Setting::Y => self.y,
        }
    }
}

/// A deterministic local strategy for both parties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DeterministicStrategy {
    pub party1: PartyAssignment,
    pub party2: PartyAssignment,
}

impl DeterministicStrategy {
    /// Whether this strategy produces the given joint event with certainty.
    pub fn matches(&self, pair: &OutcomePair) -> bool {
        self.party1.outcome(pair.setting_a) == pair.outcome_a
            && self.party2.outcome(pair.setting_b) == pair.outcome_b
    }
}

/// Enumerates all deterministic strategies, lexicographic in
/// (party-1 X, party-1 Y, party-2 X, party-2 Y) with outcomes in the order
/// the sets list them. |outcomes1|^2 * |outcomes2|^2 strategies in total.
pub fn enumerate_strategies(
    outcomes1: &[Outcome],
    outcomes2: &[Outcome],
) -> Vec<DeterministicStrategy> {
    let mut strategies = Vec::with_capacity(outcomes1.len().pow(2) * outcomes2.len().pow(2));
    for &x1 in outcomes1 {
        for &y1 in outcomes1 {
            for &x2 in outcomes2 {
                for &y2 in outcomes2 {
                    strategies.push(DeterministicStrategy {
                        party1: PartyAssignment { x: x1, y: y1 },
                        party2: PartyAssignment { x: x2, y: y2 },
                    });
                }
            }
        }
    }
    strategies
}

/// Equality constraints on joint probabilities, to be tested for local
/// explicability. `full_behavior` marks sets that constrain every
/// setting/outcome combination of the scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct BehaviorConstraints {
    entries: Vec<(OutcomePair, f64)>,
    full_behavior: bool,
}

impl BehaviorConstraints {
    pub fn new(entries: Vec<(OutcomePair, f64)>) -> Result<Self, ConstraintError> {
        let mut seen = HashSet::new();
        for &(pair, value) in &entries {
            if !value.is_finite() || !(0.0..=1.0).contains(&value) {
                return Err(ConstraintError::ProbabilityOutOfRange { pair, value });
            }
            if !seen.insert(pair) {
                return Err(ConstraintError::DuplicatePair { pair });
            }
        }
        Ok(Self {
            entries,
            full_behavior: false,
        })
    }

    /// Marks the set as a full behavior after verifying every combination of
    /// settings and outcomes appears.
    pub fn full(
        entries: Vec<(OutcomePair, f64)>,
        outcomes1: &[Outcome],
        outcomes2: &[Outcome],
    ) -> Result<Self, ConstraintError> {
        let mut constraints = Self::new(entries)?;
        let expected = 4 * outcomes1.len() * outcomes2.len();
        assert_eq!(
            constraints.entries.len(),
            expected,
            "full behavior needs {expected} entries"
        );
        constraints.full_behavior = true;
        Ok(constraints)
    }

    pub fn entries(&self) -> &[(OutcomePair, f64)] {
        &self.entries
    }

    pub fn is_full_behavior(&self) -> bool {
        self.full_behavior
    }
}

/// Outcome of an LHV feasibility test.
///
/// `max_violation` is the smallest achievable worst-case residual over all
/// strategy mixtures; `weights` (aligned with [`enumerate_strategies`]
/// order) certify feasibility when it is within [`LHV_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct LhvFeasibility {
    pub feasible: bool,
    pub weights: Option<Vec<f64>>,
    pub max_violation: f64,
}

/// Decides whether some distribution over deterministic local strategies
/// reproduces every constraint.
///
/// Solves min t over { w >= 0, sum w = 1, |A w - b| <= t } and reports
/// feasibility as t <= [`LHV_TOL`]. Infeasibility is a result, not an error.
pub fn lhv_feasible(
    constraints: &BehaviorConstraints,
    outcomes1: &[Outcome],
    outcomes2: &[Outcome],
) -> LhvFeasibility {
    let strategies = enumerate_strategies(outcomes1, outcomes2);
    let rows: Vec<(Vec<usize>, f64)> = constraints
        .entries()
        .iter()
        .map(|(pair, b)| {
            let cols = strategies
                .iter()
                .enumerate()
                .filter(|(_, s)| s.matches(pair))
                .map(|(j, _)| j)
                .collect();
            (cols, *b)
        })
        .collect();

    let mut problem = Problem::new(OptimizationDirection::Minimize);
    let w: Vec<_> = strategies
        .iter()
        .map(|_| problem.add_var(0.0, (0.0, 1.0)))
        .collect();
    let t = problem.add_var(1.0, (0.0, 2.0));

    let ones: Vec<_> = w.iter().map(|&v| (v, 1.0)).collect();
    problem.add_constraint(&ones, ComparisonOp::Eq, 1.0);
    for (cols, b) in &rows {
        let mut le: Vec<_> = cols.iter().map(|&j| (w[j], 1.0)).collect();
        le.push((t, -1.0));
        problem.add_constraint(&le, ComparisonOp::Le, *b);
        let mut ge: Vec<_> = cols.iter().map(|&j| (w[j], 1.0)).collect();
        ge.push((t, 1.0));
        problem.add_constraint(&ge, ComparisonOp::Ge, *b);
    }

    let outcome = problem
        .solve()
        .expect("the residual-minimization problem is always feasible and bounded");
    let solution = outcome
        .solution()
        .expect("no solve limits are set, so the solve runs to completion");

    let weights: Vec<f64> = w.iter().map(|&v| solution.var_value(v).max(0.0)).collect();
    // Certify with recomputed residuals rather than trusting the objective.
    let mut max_violation: f64 = 0.0;
    for (cols, b) in &rows {
        let achieved: f64 = cols.iter().map(|&j| weights[j]).sum();
        max_violation = max_violation.max((achieved - b).abs());
    }
    let feasible = max_violation <= LHV_TOL;
    LhvFeasibility {
        feasible,
        weights: feasible.then_some(weights),
        max_violation,
    }
}

/// The constrained measures of the hidden-variable subsets
/// A = {X1 = +1}, B = {X2 = +1}, C = {Y1 = +1}, D = {Y2 = +1} that a local
/// deterministic model must satisfy to reproduce a quartet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureConstraintSet {
    /// mu[A and B]
    pub a_and_b: f64,
    /// mu[C] - mu[B and C]
    pub c_minus_b_and_c: f64,
    /// mu[D] - mu[A and D]
    pub d_minus_a_and_d: f64,
    /// mu[C and D]
    pub c_and_d: f64,
}

/// Translates a quartet into its set-measure constraints. The doubled
/// right-hand sides of the high-dimensional family come from the 0-outcome
/// bookkeeping of three-outcome observables.
pub fn measure_constraints(quartet: &HardyQuartet) -> MeasureConstraintSet {
    match *quartet {
        HardyQuartet::White2x2 { eps, a } => MeasureConstraintSet {
            a_and_b: eps,
            c_minus_b_and_c: eps,
            d_minus_a_and_d: eps,
            c_and_d: a + eps,
        },
        HardyQuartet::WhiteHighDim { eps, a } => MeasureConstraintSet {
            a_and_b: eps,
            c_minus_b_and_c: 2.0 * eps,
            d_minus_a_and_d: 2.0 * eps,
            c_and_d: a + eps,
        },
        HardyQuartet::Colored2x2 { eps1, eps2, eps3 } => MeasureConstraintSet {
            a_and_b: eps1,
            c_minus_b_and_c: eps2,
            d_minus_a_and_d: eps2,
            c_and_d: eps3,
        },
    }
}

/// Result of evaluating the closed-form local-explicability inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityCheck {
    pub slack: f64,
    pub satisfied: bool,
}

/// Evaluates the derived inequality for the quartet's family:
/// 2 eps - a (white 2x2), eps1 + 2 eps2 - eps3 (colored),
/// 4 eps - a (white, higher dimensions). A negative slack rules out any
/// local deterministic model reproducing the quartet.
pub fn hardy_inequality(quartet: &HardyQuartet) -> InequalityCheck {
    let slack = match *quartet {
        HardyQuartet::White2x2 { eps, a } => 2.0 * eps - a,
        HardyQuartet::Colored2x2 { eps1, eps2, eps3 } => eps1 + 2.0 * eps2 - eps3,
        HardyQuartet::WhiteHighDim { eps, a } => 4.0 * eps - a,
    };
    InequalityCheck {
        slack,
        satisfied: slack >= -SLACK_TOL,
    }
}

/// The behavior constraints a quartet pins down, in the fixed order
/// (X+X+), (Y+X-), (X-Y+), [0-outcome rows for the high-dimensional
/// family], (Y+Y+).
pub fn quartet_constraints(quartet: &HardyQuartet) -> BehaviorConstraints {
    use Outcome::{Minus, Plus, Zero};
    use Setting::{X, Y};
    let entries = match *quartet {
        HardyQuartet::White2x2 { eps, a } => vec![
            (OutcomePair::new(X, Plus, X, Plus), eps),
            (OutcomePair::new(Y, Plus, X, Minus), eps),
            (OutcomePair::new(X, Minus, Y, Plus), eps),
            (OutcomePair::new(Y, Plus, Y, Plus), a + eps),
        ],
        HardyQuartet::Colored2x2 { eps1, eps2, eps3 } => vec![
            (OutcomePair::new(X, Plus, X, Plus), eps1),
            (OutcomePair::new(Y, Plus, X, Minus), eps2),
            (OutcomePair::new(X, Minus, Y, Plus), eps2),
            (OutcomePair::new(Y, Plus, Y, Plus), eps3),
        ],
        HardyQuartet::WhiteHighDim { eps, a } => vec![
            (OutcomePair::new(X, Plus, X, Plus), eps),
            (OutcomePair::new(Y, Plus, X, Minus), eps),
            (OutcomePair::new(X, Minus, Y, Plus), eps),
            (OutcomePair::new(Y, Plus, X, Zero), eps),
            (OutcomePair::new(X, Zero, Y, Plus), eps),
            (OutcomePair::new(Y, Plus, Y, Plus), a + eps),
        ],
    };
    BehaviorConstraints::new(entries).expect("quartet probabilities are in range")
}

/// The per-party outcome sets matching a quartet's family: two outcomes for
/// the two-qubit families, three for the high-dimensional one.
pub fn quartet_outcome_sets(quartet: &HardyQuartet) -> (&'static [Outcome], &'static [Outcome]) {
    match quartet {
        HardyQuartet::White2x2 { .. } | HardyQuartet::Colored2x2 { .. } => {
            (Outcome::set_for_dim(2), Outcome::set_for_dim(2))
        }
        HardyQuartet::WhiteHighDim { .. } => (Outcome::set_for_dim(3), Outcome::set_for_dim(3)),
    }
}

/// Convenience: LP feasibility of exactly the constraints a quartet fixes.
pub fn check_quartet(quartet: &HardyQuartet) -> LhvFeasibility {
    let constraints = quartet_constraints(quartet);
    let (o1, o2) = quartet_outcome_sets(quartet);
    lhv_feasible(&constraints, o1, o2)
}
