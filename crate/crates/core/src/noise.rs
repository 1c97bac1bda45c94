//! Noisy Hardy states: convex mixtures of a pure Hardy state with either
//! white (completely chaotic) noise or colored noise.
//!
//! White noise is the maximally mixed state I / (d1 d2) and is defined on
//! any local dimensions. Colored noise is the rank-2 operator
//! (|00><00| + |11><11|) / 2 modeling imperfect parametric down-conversion
//! sources and is defined only on two qubits; that restriction is carried
//! by [`TwoQubitSpec`] in the signature of [`mix_colored`].

use thiserror::Error;

use crate::hardy::{hardy_state, SchmidtSpec, TwoQubitSpec};
use crate::linalg::{identity, projector, tensor, validate_density, DensityOperator, Ket};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NoiseError {
    #[error("purity must lie in [0, 1], got {purity}")]
    PurityOutOfRange { purity: f64 },
}

/// The two noise families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseKind {
    White,
    Colored,
}

impl NoiseKind {
    pub fn label(self) -> &'static str {
        match self {
            NoiseKind::White => "white",
            NoiseKind::Colored => "colored",
        }
    }
}

/// A Hardy state mixed with noise: rho = p |psi><psi| + (1 - p) * noise,
/// where the purity p lies in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct NoisyHardyState {
    spec: SchmidtSpec,
    noise: NoiseKind,
    purity: f64,
    rho: DensityOperator,
}

impl NoisyHardyState {
    pub fn spec(&self) -> &SchmidtSpec {
        &self.spec
    }

    pub fn noise(&self) -> NoiseKind {
        self.noise
    }

    pub fn purity(&self) -> f64 {
        self.purity
    }

    pub fn rho(&self) -> &DensityOperator {
        &self.rho
    }
}

fn check_purity(purity: f64) -> Result<(), NoiseError> {
    if !purity.is_finite() || !(0.0..=1.0).contains(&purity) {
        return Err(NoiseError::PurityOutOfRange { purity });
    }
    Ok(())
}

/// Mixes the spec's Hardy state with white noise:
/// rho = p |psi><psi| + (1 - p) / (d1 d2) * I.
pub fn mix_white(spec: &SchmidtSpec, purity: f64) -> Result<NoisyHardyState, NoiseError> {
    check_purity(purity)?;
    let dim = spec.dim();
    let pure = projector(&hardy_state(spec));
    let matrix = pure.scale(purity) + identity(dim).scale((1.0 - purity) / dim as f64);
    let rho = validate_density(matrix).expect("white-noise mixture is a valid density operator");
    Ok(NoisyHardyState {
        spec: spec.clone(),
        noise: NoiseKind::White,
        purity,
        rho,
    })
}

/// Mixes the spec's Hardy state with colored noise:
/// rho = p |psi><psi| + (1 - p) / 2 * (|00><00| + |11><11|).
pub fn mix_colored(spec: &TwoQubitSpec, purity: f64) -> Result<NoisyHardyState, NoiseError> {
    check_purity(purity)?;
    let pure = projector(&hardy_state(spec.spec()));
    let p0 = projector(&Ket::basis_state(2, 0));
    let p1 = projector(&Ket::basis_state(2, 1));
    let noise = tensor(&p0, &p0) + tensor(&p1, &p1);
    let matrix = pure.scale(purity) + noise.scale((1.0 - purity) / 2.0);
    let rho = validate_density(matrix).expect("colored-noise mixture is a valid density operator");
    Ok(NoisyHardyState {
        spec: spec.spec().clone(),
        noise: NoiseKind::Colored,
        purity,
        rho,
    })
}
