//! Joint outcome probabilities for pairs of X/Y observables.
//!
//! Two routes are provided and kept deliberately independent:
//!
//! * [`born_joint`] computes Tr[rho (P_A (x) P_B)] from the assembled
//!   density operator and projectors — the ground truth;
//! * the closed forms ([`quartet_white_2x2`], [`quartet_colored_2x2`],
//!   [`sextet_white_highdim`]) evaluate the analytic expressions for the
//!   joint probabilities that drive the Hardy argument.
//!
//! Tests regression-check every closed form against the Born-rule route,
//! which catches transcription slips in the algebra on either side.

use thiserror::Error;

use crate::hardy::{observable, Outcome, Party, SchmidtSpec, Setting, TwoQubitSpec};
use crate::linalg::{tensor, trace};
use crate::noise::{NoiseError, NoisyHardyState};

/// Probabilities in [-PROB_CLAMP_TOL, 0) clamp to 0 (and symmetrically at 1);
/// anything farther outside [0, 1] is an internal-consistency error.
pub const PROB_CLAMP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProbError {
    #[error("outcome {outcome} is not valid for party {party} (local dimension {dim})")]
    InvalidOutcome { party: u8, outcome: i8, dim: usize },
    #[error("computed probability {value} lies outside [0, 1] beyond tolerance")]
    OutOfRange { value: f64 },
}

/// One joint measurement event: a setting and an outcome for each party.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OutcomePair {
    pub setting_a: Setting,
    pub outcome_a: Outcome,
    pub setting_b: Setting,
    pub outcome_b: Outcome,
}

impl OutcomePair {
    pub fn new(
        setting_a: Setting,
        outcome_a: Outcome,
        setting_b: Setting,
        outcome_b: Outcome,
    ) -> Self {
        Self {
            setting_a,
            outcome_a,
            setting_b,
            outcome_b,
        }
    }
}

impl std::fmt::Display for OutcomePair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "P({}1={}, {}2={})",
            self.setting_a, self.outcome_a, self.setting_b, self.outcome_b
        )
    }
}

fn check_outcome(outcome: Outcome, dim: usize, party: Party) -> Result<(), ProbError> {
    if outcome == Outcome::Zero && dim <= 2 {
        return Err(ProbError::InvalidOutcome {
            party: party.index(),
            outcome: outcome.value(),
            dim,
        });
    }
    Ok(())
}

fn clamp_probability(raw: f64) -> Result<f64, ProbError> {
    if !raw.is_finite() || !(-PROB_CLAMP_TOL..=1.0 + PROB_CLAMP_TOL).contains(&raw) {
        return Err(ProbError::OutOfRange { value: raw });
    }
    Ok(raw.clamp(0.0, 1.0))
}

/// Born-rule joint probability Tr[rho (P_A (x) P_B)].
pub fn born_joint(state: &NoisyHardyState, pair: OutcomePair) -> Result<f64, ProbError> {
    let spec = state.spec();
    check_outcome(pair.outcome_a, spec.d1(), Party::One)?;
    check_outcome(pair.outcome_b, spec.d2(), Party::Two)?;
    let obs_a = observable(Party::One, pair.setting_a, spec);
    let obs_b = observable(Party::Two, pair.setting_b, spec);
    let op = tensor(
        obs_a.projector(pair.outcome_a).expect("outcome checked"),
        obs_b.projector(pair.outcome_b).expect("outcome checked"),
    );
    let raw = trace(&(op * state.rho().matrix())).re;
    clamp_probability(raw)
}

/// The closed-form joint probabilities that feed the Hardy argument, one
/// variant per noise family.
///
/// For the white families `eps` is the common value of the three (or five)
/// "forbidden" joint probabilities and `a` the noise-free part of
/// P(Y1=+1, Y2=+1). The colored family carries three distinct epsilons, the
/// last being the whole P(Y1=+1, Y2=+1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HardyQuartet {
    White2x2 { eps: f64, a: f64 },
    Colored2x2 { eps1: f64, eps2: f64, eps3: f64 },
    WhiteHighDim { eps: f64, a: f64 },
}

impl HardyQuartet {
    /// All carried probability entries, used for range checks and display.
    pub fn entries(&self) -> Vec<(&'static str, f64)> {
        match *self {
            HardyQuartet::White2x2 { eps, a } | HardyQuartet::WhiteHighDim { eps, a } => {
                vec![("eps", eps), ("a", a)]
            }
            HardyQuartet::Colored2x2 { eps1, eps2, eps3 } => {
                vec![("eps1", eps1), ("eps2", eps2), ("eps3", eps3)]
            }
        }
    }
}

/// Pure-state Hardy probability with the two-qubit denominator:
/// p1^2 p2^2 (p1 - p2)^2 / (1 - p1 p2)^2. Valid when p1^2 + p2^2 = 1.
pub fn pure_hardy_probability_2x2(p1: f64, p2: f64) -> f64 {
    let x = p1 * p2;
    let num = x * x * (p1 - p2) * (p1 - p2);
    num / ((1.0 - x) * (1.0 - x))
}

/// Pure-state Hardy probability in the form valid for any positive weights:
/// p1^2 p2^2 (p1 - p2)^2 / (p1^2 + p2^2 - p1 p2)^2.
pub fn pure_hardy_probability(p1: f64, p2: f64) -> f64 {
    let x = p1 * p2;
    let s = p1 * p1 + p2 * p2;
    let num = x * x * (p1 - p2) * (p1 - p2);
    num / ((s - x) * (s - x))
}

fn check_purity(purity: f64) -> Result<(), NoiseError> {
    if !purity.is_finite() || !(0.0..=1.0).contains(&purity) {
        return Err(NoiseError::PurityOutOfRange { purity });
    }
    Ok(())
}

/// Closed forms for the white-noise two-qubit mixture:
/// eps = (1 - p) / 4, a = p * p1^2 p2^2 (p1 - p2)^2 / (1 - p1 p2)^2.
pub fn quartet_white_2x2(spec: &TwoQubitSpec, purity: f64) -> Result<HardyQuartet, NoiseError> {
    check_purity(purity)?;
    Ok(HardyQuartet::White2x2 {
        eps: (1.0 - purity) / 4.0,
        a: purity * pure_hardy_probability_2x2(spec.p1(), spec.p2()),
    })
}

/// Closed forms for the colored-noise two-qubit mixture.
pub fn quartet_colored_2x2(spec: &TwoQubitSpec, purity: f64) -> Result<HardyQuartet, NoiseError> {
    check_purity(purity)?;
    let (p1, p2) = (spec.p1(), spec.p2());
    let x = p1 * p2;
    let sum_sq = (p1 + p2) * (p1 + p2);
    let eps1 = (1.0 - purity) / (2.0 * sum_sq);
    let eps2 = (1.0 - purity) * x / (2.0 * sum_sq * (1.0 - x));
    let x2 = x * x;
    let eps3 = (1.0 - 3.0 * x2 + purity * (-8.0 * x2 * x2 + 5.0 * x2 - 1.0))
        / (2.0 * sum_sq * (1.0 - x) * (1.0 - x));
    Ok(HardyQuartet::Colored2x2 { eps1, eps2, eps3 })
}

/// The six closed-form joint probabilities for the white-noise mixture on
/// C^{d1} (x) C^{d2}: the quartet entries plus the two probabilities
/// involving the degenerate 0 outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WhiteSextet {
    pub eps: f64,
    pub a: f64,
    /// P(Y1=+1, X2=0); absent when d2 = 2 has no 0 outcome.
    pub y1_plus_x2_zero: Option<f64>,
    /// P(X1=0, Y2=+1); absent when d1 = 2 has no 0 outcome.
    pub x1_zero_y2_plus: Option<f64>,
}

impl WhiteSextet {
    pub fn quartet(&self) -> HardyQuartet {
        HardyQuartet::WhiteHighDim {
            eps: self.eps,
            a: self.a,
        }
    }
}

/// Closed forms for white noise on arbitrary local dimensions:
/// eps = (1 - p) / (d1 d2) for every "forbidden" probability and
/// a = p * p1^2 p2^2 (p1 - p2)^2 / (p1^2 + p2^2 - p1 p2)^2.
pub fn sextet_white_highdim(spec: &SchmidtSpec, purity: f64) -> Result<WhiteSextet, NoiseError> {
    check_purity(purity)?;
    let eps = (1.0 - purity) / spec.dim() as f64;
    let a = purity * pure_hardy_probability(spec.p1(), spec.p2());
    Ok(WhiteSextet {
        eps,
        a,
        y1_plus_x2_zero: (spec.d2() > 2).then_some(eps),
        x1_zero_y2_plus: (spec.d1() > 2).then_some(eps),
    })
}

/// The four setting combinations of the two-setting scenario.
pub const SETTING_PAIRS: [(Setting, Setting); 4] = [
    (Setting::X, Setting::X),
    (Setting::X, Setting::Y),
    (Setting::Y, Setting::X),
    (Setting::Y, Setting::Y),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardy::SchmidtSpec;
    use crate::noise::{mix_colored, mix_white};

    fn pair(sa: Setting, oa: Outcome, sb: Setting, ob: Outcome) -> OutcomePair {
        OutcomePair::new(sa, oa, sb, ob)
    }

    #[test]
    fn pure_hardy_xx_plus_plus_vanishes() {
        let spec = TwoQubitSpec::hardy_max();
        let state = mix_white(spec.spec(), 1.0).unwrap();
        let p = born_joint(
            &state,
            pair(Setting::X, Outcome::Plus, Setting::X, Outcome::Plus),
        )
        .unwrap();
        assert!(p < 1e-14);
    }

    #[test]
    fn maximally_mixed_gives_quarter_for_all_sign_outcomes() {
        let spec = TwoQubitSpec::new(0.9, 0.19_f64.sqrt()).unwrap();
        let state = mix_white(spec.spec(), 0.0).unwrap();
        for (sa, sb) in SETTING_PAIRS {
            for oa in [Outcome::Plus, Outcome::Minus] {
                for ob in [Outcome::Plus, Outcome::Minus] {
                    let p = born_joint(&state, pair(sa, oa, sb, ob)).unwrap();
                    assert!((p - 0.25).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn pure_hardy_max_yy_probability_is_about_009() {
        let spec = TwoQubitSpec::hardy_max();
        let state = mix_white(spec.spec(), 1.0).unwrap();
        let p = born_joint(
            &state,
            pair(Setting::Y, Outcome::Plus, Setting::Y, Outcome::Plus),
        )
        .unwrap();
        assert!((p - 0.090).abs() < 0.001, "got {p}");
    }

    #[test]
    fn zero_outcome_invalid_on_two_qubits() {
        let spec = TwoQubitSpec::hardy_max();
        let state = mix_white(spec.spec(), 0.5).unwrap();
        let err = born_joint(
            &state,
            pair(Setting::X, Outcome::Zero, Setting::X, Outcome::Plus),
        )
        .unwrap_err();
        assert!(matches!(err, ProbError::InvalidOutcome { party: 1, .. }));
    }

    #[test]
    fn white_quartet_endpoints() {
        let spec = TwoQubitSpec::hardy_max();
        match quartet_white_2x2(&spec, 1.0).unwrap() {
            HardyQuartet::White2x2 { eps, a } => {
                assert_eq!(eps, 0.0);
                assert!((a - pure_hardy_probability_2x2(spec.p1(), spec.p2())).abs() < 1e-15);
                assert!((a - 0.090).abs() < 0.001);
            }
            other => panic!("wrong variant {other:?}"),
        }
        match quartet_white_2x2(&spec, 0.0).unwrap() {
            HardyQuartet::White2x2 { eps, a } => {
                assert_eq!(eps, 0.25);
                assert_eq!(a, 0.0);
            }
            other => panic!("wrong variant {other:?}"),
        }
    }

    #[test]
    fn colored_quartet_pure_limit_matches_hardy_probability() {
        let spec = TwoQubitSpec::new(0.9, 0.19_f64.sqrt()).unwrap();
        match quartet_colored_2x2(&spec, 1.0).unwrap() {
            HardyQuartet::Colored2x2 { eps1, eps2, eps3 } => {
                assert!(eps1.abs() < 1e-15);
                assert!(eps2.abs() < 1e-15);
                let a = pure_hardy_probability_2x2(spec.p1(), spec.p2());
                assert!((eps3 - a).abs() < 1e-14, "eps3={eps3} a={a}");
            }
            other => panic!("wrong variant {other:?}"),
        }
    }

    #[test]
    fn colored_quartet_noise_limit() {
        // at p = 0, eps1 = 1 / (2 (1 + 2 x)) with x = p1 p2
        let spec = TwoQubitSpec::new(0.8, 0.6).unwrap();
        let x = 0.48;
        match quartet_colored_2x2(&spec, 0.0).unwrap() {
            HardyQuartet::Colored2x2 { eps1, .. } => {
                assert!((eps1 - 1.0 / (2.0 * (1.0 + 2.0 * x))).abs() < 1e-14);
            }
            other => panic!("wrong variant {other:?}"),
        }
    }

    #[test]
    fn sextet_reduces_to_white_quartet_on_two_qubits() {
        let spec = TwoQubitSpec::new(0.8, 0.6).unwrap();
        for purity in [0.0, 0.4, 0.85, 1.0] {
            let sextet = sextet_white_highdim(spec.spec(), purity).unwrap();
            let quartet = quartet_white_2x2(&spec, purity).unwrap();
            match quartet {
                HardyQuartet::White2x2 { eps, a } => {
                    assert!((sextet.eps - eps).abs() < 1e-15);
                    // p1^2 + p2^2 = 1 makes the two a-denominators equal
                    assert!((sextet.a - a).abs() < 1e-14);
                }
                other => panic!("wrong variant {other:?}"),
            }
            assert_eq!(sextet.y1_plus_x2_zero, None);
            assert_eq!(sextet.x1_zero_y2_plus, None);
        }
    }

    #[test]
    fn sextet_zero_outcome_probabilities_vanish_on_pure_state() {
        let spec = SchmidtSpec::new(3, 3, vec![0.8, 0.6]).unwrap();
        let sextet = sextet_white_highdim(&spec, 1.0).unwrap();
        assert_eq!(sextet.y1_plus_x2_zero, Some(0.0));
        assert_eq!(sextet.x1_zero_y2_plus, Some(0.0));
        let state = mix_white(&spec, 1.0).unwrap();
        let p = born_joint(
            &state,
            pair(Setting::Y, Outcome::Plus, Setting::X, Outcome::Zero),
        )
        .unwrap();
        assert!(p < 1e-14);
        let p = born_joint(
            &state,
            pair(Setting::X, Outcome::Zero, Setting::Y, Outcome::Plus),
        )
        .unwrap();
        assert!(p < 1e-14);
    }

    #[test]
    fn sextet_fully_mixed_on_2x3() {
        let spec = SchmidtSpec::new(2, 3, vec![0.8, 0.6]).unwrap();
        let sextet = sextet_white_highdim(&spec, 0.0).unwrap();
        assert!((sextet.eps - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(sextet.a, 0.0);
        assert_eq!(sextet.y1_plus_x2_zero, Some(sextet.eps));
        assert_eq!(sextet.x1_zero_y2_plus, None);
    }

    /// Born-rule values for the quartet's four outcome pairs, in the fixed
    /// order (X+X+), (Y+X-), (X-Y+), (Y+Y+).
    fn born_quartet(state: &NoisyHardyState) -> [f64; 4] {
        [
            born_joint(
                state,
                pair(Setting::X, Outcome::Plus, Setting::X, Outcome::Plus),
            )
            .unwrap(),
            born_joint(
                state,
                pair(Setting::Y, Outcome::Plus, Setting::X, Outcome::Minus),
            )
            .unwrap(),
            born_joint(
                state,
                pair(Setting::X, Outcome::Minus, Setting::Y, Outcome::Plus),
            )
            .unwrap(),
            born_joint(
                state,
                pair(Setting::Y, Outcome::Plus, Setting::Y, Outcome::Plus),
            )
            .unwrap(),
        ]
    }

    #[test]
    fn white_closed_forms_match_born_rule_on_grid() {
        let mut worst: f64 = 0.0;
        for i in 0..20 {
            let p1sq = 0.03 + 0.02 * i as f64;
            let spec = TwoQubitSpec::new(p1sq.sqrt(), (1.0 - p1sq).sqrt()).unwrap();
            for j in 0..=20 {
                let purity = j as f64 / 20.0;
                let state = mix_white(spec.spec(), purity).unwrap();
                let born = born_quartet(&state);
                let (eps, a) = match quartet_white_2x2(&spec, purity).unwrap() {
                    HardyQuartet::White2x2 { eps, a } => (eps, a),
                    other => panic!("wrong variant {other:?}"),
                };
                let closed = [eps, eps, eps, a + eps];
                for (b, c) in born.iter().zip(closed.iter()) {
                    worst = worst.max((b - c).abs());
                }
            }
        }
        assert!(worst < 1e-12, "worst deviation {worst}");
    }

    #[test]
    fn colored_closed_forms_match_born_rule_on_grid() {
        let mut worst: f64 = 0.0;
        for i in 0..20 {
            let p1sq = 0.03 + 0.02 * i as f64;
            let spec = TwoQubitSpec::new(p1sq.sqrt(), (1.0 - p1sq).sqrt()).unwrap();
            for j in 0..=20 {
                let purity = j as f64 / 20.0;
                let state = mix_colored(&spec, purity).unwrap();
                let born = born_quartet(&state);
                let closed = match quartet_colored_2x2(&spec, purity).unwrap() {
                    HardyQuartet::Colored2x2 { eps1, eps2, eps3 } => [eps1, eps2, eps2, eps3],
                    other => panic!("wrong variant {other:?}"),
                };
                for (b, c) in born.iter().zip(closed.iter()) {
                    worst = worst.max((b - c).abs());
                }
            }
        }
        assert!(worst < 1e-12, "worst deviation {worst}");
    }

    #[test]
    fn highdim_closed_forms_match_born_rule_on_3x3_grid() {
        let mut worst: f64 = 0.0;
        for i in 0..20 {
            let p1sq = 0.03 + 0.02 * i as f64;
            let spec = SchmidtSpec::new(3, 3, vec![p1sq.sqrt(), (1.0 - p1sq).sqrt()]).unwrap();
            for j in 0..=20 {
                let purity = j as f64 / 20.0;
                let state = mix_white(&spec, purity).unwrap();
                let sextet = sextet_white_highdim(&spec, purity).unwrap();
                let born = [
                    born_quartet(&state),
                    [
                        born_joint(
                            &state,
                            pair(Setting::Y, Outcome::Plus, Setting::X, Outcome::Zero),
                        )
                        .unwrap(),
                        born_joint(
                            &state,
                            pair(Setting::X, Outcome::Zero, Setting::Y, Outcome::Plus),
                        )
                        .unwrap(),
                        0.0,
                        0.0,
                    ],
                ];
                let closed = [
                    [sextet.eps, sextet.eps, sextet.eps, sextet.a + sextet.eps],
                    [
                        sextet.y1_plus_x2_zero.unwrap(),
                        sextet.x1_zero_y2_plus.unwrap(),
                        0.0,
                        0.0,
                    ],
                ];
                for (brow, crow) in born.iter().zip(closed.iter()) {
                    for (b, c) in brow.iter().zip(crow.iter()) {
                        worst = worst.max((b - c).abs());
                    }
                }
            }
        }
        assert!(worst < 1e-12, "worst deviation {worst}");
    }

    #[test]
    fn highdim_closed_form_with_three_weights() {
        // r = 3 weights: only p1, p2 enter the closed forms; Born agrees.
        let w3 = (1.0_f64 - 0.5 - 0.3).sqrt();
        let spec = SchmidtSpec::new(3, 3, vec![0.5_f64.sqrt(), 0.3_f64.sqrt(), w3]).unwrap();
        for purity in [0.0, 0.5, 1.0] {
            let state = mix_white(&spec, purity).unwrap();
            let sextet = sextet_white_highdim(&spec, purity).unwrap();
            let born = born_quartet(&state);
            let closed = [sextet.eps, sextet.eps, sextet.eps, sextet.a + sextet.eps];
            for (b, c) in born.iter().zip(closed.iter()) {
                assert!((b - c).abs() < 1e-12, "born {b} vs closed {c}");
            }
        }
    }

    #[test]
    fn zero_outcome_born_probability_scales_with_degenerate_rank() {
        // On local dimension d the 0 eigenspace has rank d - 2, so the
        // noise part contributes (d2 - 2) * (1 - p) / (d1 d2).
        let spec = SchmidtSpec::new(2, 4, vec![0.8, 0.6]).unwrap();
        let purity = 0.4;
        let state = mix_white(&spec, purity).unwrap();
        let p = born_joint(
            &state,
            pair(Setting::Y, Outcome::Plus, Setting::X, Outcome::Zero),
        )
        .unwrap();
        let expected = 2.0 * (1.0 - purity) / 8.0;
        assert!((p - expected).abs() < 1e-13, "got {p}, expected {expected}");
    }

    #[test]
    fn hardy_probability_positive_for_valid_specs() {
        for i in 1..40 {
            let p1sq = i as f64 / 41.0;
            let p1 = p1sq.sqrt();
            let p2 = (1.0 - p1sq).sqrt();
            if (p1 - p2).abs() < 1e-6 {
                continue;
            }
            assert!(pure_hardy_probability_2x2(p1, p2) > 0.0);
            assert!(pure_hardy_probability(p1, p2) > 0.0);
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn outcomes_for(dim: usize) -> &'static [Outcome] {
            Outcome::set_for_dim(dim)
        }

        proptest! {
            #[test]
            fn completeness_and_no_signaling(
                p1sq in 0.05f64..0.45,
                purity in 0.0f64..1.0,
                d1 in 2usize..4,
                d2 in 2usize..4,
                colored in proptest::bool::ANY,
            ) {
                let p1 = p1sq.sqrt();
                let p2 = (1.0 - p1sq).sqrt();
                let spec = SchmidtSpec::new(d1, d2, vec![p1, p2]).unwrap();
                let state = if colored && d1 == 2 && d2 == 2 {
                    crate::noise::mix_colored(&TwoQubitSpec::new(p1, p2).unwrap(), purity).unwrap()
                } else {
                    crate::noise::mix_white(&spec, purity).unwrap()
                };

                // completeness: outcomes of any fixed setting pair sum to 1
                for (sa, sb) in SETTING_PAIRS {
                    let mut total = 0.0;
                    for &oa in outcomes_for(d1) {
                        for &ob in outcomes_for(d2) {
                            total += born_joint(&state, OutcomePair::new(sa, oa, sb, ob)).unwrap();
                        }
                    }
                    prop_assert!((total - 1.0).abs() < 1e-10, "sum {total}");
                }

                // no-signaling: party-1 marginals ignore party-2's setting
                for sa in [Setting::X, Setting::Y] {
                    for &oa in outcomes_for(d1) {
                        let marginal = |sb: Setting| -> f64 {
                            outcomes_for(d2).iter().map(|&ob| {
                                born_joint(&state, OutcomePair::new(sa, oa, sb, ob)).unwrap()
                            }).sum()
                        };
                        prop_assert!((marginal(Setting::X) - marginal(Setting::Y)).abs() < 1e-10);
                    }
                }
                for sb in [Setting::X, Setting::Y] {
                    for &ob in outcomes_for(d2) {
                        let marginal = |sa: Setting| -> f64 {
                            outcomes_for(d1).iter().map(|&oa| {
                                born_joint(&state, OutcomePair::new(sa, oa, sb, ob)).unwrap()
                            }).sum()
                        };
                        prop_assert!((marginal(Setting::X) - marginal(Setting::Y)).abs() < 1e-10);
                    }
                }
            }
        }
    }
}
