//! Hardy states and the measurement bases built from their Schmidt weights.
//!
//! A Hardy state is a bipartite pure state whose Schmidt decomposition has at
//! least two distinct strictly positive weights, i.e. entangled but not
//! maximally entangled. The two leading weights (p1, p2) fix a pair of local
//! orthonormal bases, denoted x and y:
//!
//! ```text
//! |x+> = ( sqrt(p2) |0> - i sqrt(p1) |1> ) / sqrt(p1 + p2)
//! |x-> = ( -i sqrt(p1) |0> + sqrt(p2) |1> ) / sqrt(p1 + p2)
//!
//! |y+> = ( -i p2 sqrt(p2) |0> + p1 sqrt(p1) |1> ) / N
//! |y-> = (  p1 sqrt(p1) |0> - i p2 sqrt(p2) |1> ) / N
//! N = sqrt( (p1^2 + p2^2 - p1 p2) (p1 + p2) )
//! ```
//!
//! The observables X and Y assign the eigenvalue +1 to the "+" vector and -1
//! to the "-" vector of the corresponding basis. On local dimension d > 2
//! they additionally carry the degenerate eigenvalue 0 on the orthogonal
//! complement span{|2>, ..., |d-1>}.
//!
//! The complex amplitudes above are stored exactly as written: no global
//! phase is stripped, so projectors are reproducible across implementations
//! up to floating rounding.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{projector, CMatrix, Ket};

/// Guard against nearly equal leading weights, where the Hardy probability
/// vanishes quadratically and the nonlocality argument degenerates.
pub const WEIGHT_DEGENERACY_TOL: f64 = 1e-9;
/// Tolerance on the weight normalization sum(p_i^2) = 1.
pub const WEIGHT_NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("local dimension must be >= 2, got d{party} = {dim}")]
    DimensionTooSmall { party: u8, dim: usize },
    #[error("at least two Schmidt weights are required, got {count}")]
    TooFewWeights { count: usize },
    #[error("{count} Schmidt weights exceed min(d1, d2) = {max}")]
    TooManyWeights { count: usize, max: usize },
    #[error("Schmidt weight {index} must be strictly positive, got {value}")]
    NonPositiveWeight { index: usize, value: f64 },
    #[error("Schmidt weights must satisfy sum(p_i^2) = 1, got {sum_sq}")]
    WeightsNotNormalized { sum_sq: f64 },
    #[error("p1 = p2 (leading weights {p1} and {p2} differ by less than {WEIGHT_DEGENERACY_TOL:e}; a maximally entangled pair admits no Hardy argument)")]
    EqualLeadingWeights { p1: f64, p2: f64 },
    #[error("Schmidt weight {index} is not finite")]
    NonFiniteWeight { index: usize },
    #[error("colored noise and the CHSH criterion require two qubits, got {d1}x{d2}")]
    NotTwoQubit { d1: usize, d2: usize },
}

/// Schmidt weights and local dimensions defining a Hardy state.
///
/// Invariants, enforced at construction: d1, d2 >= 2; between 2 and
/// min(d1, d2) strictly positive weights; sum(p_i^2) = 1 within
/// [`WEIGHT_NORM_TOL`]; |p1 - p2| >= [`WEIGHT_DEGENERACY_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpec {
    d1: usize,
    d2: usize,
    weights: Vec<f64>,
}

impl SchmidtSpec {
    pub fn new(d1: usize, d2: usize, weights: Vec<f64>) -> Result<Self, SpecError> {
        if d1 < 2 {
            return Err(SpecError::DimensionTooSmall { party: 1, dim: d1 });
        }
        if d2 < 2 {
            return Err(SpecError::DimensionTooSmall { party: 2, dim: d2 });
        }
        if weights.len() < 2 {
            return Err(SpecError::TooFewWeights {
                count: weights.len(),
            });
        }
        let max = d1.min(d2);
        if weights.len() > max {
            return Err(SpecError::TooManyWeights {
                count: weights.len(),
                max,
            });
        }
        let mut sum_sq = 0.0;
        for (index, &w) in weights.iter().enumerate() {
            if !w.is_finite() {
                return Err(SpecError::NonFiniteWeight { index });
            }
            if w <= 0.0 {
                return Err(SpecError::NonPositiveWeight { index, value: w });
            }
            sum_sq += w * w;
        }
        if (sum_sq - 1.0).abs() > WEIGHT_NORM_TOL {
            return Err(SpecError::WeightsNotNormalized { sum_sq });
        }
        if (weights[0] - weights[1]).abs() < WEIGHT_DEGENERACY_TOL {
            return Err(SpecError::EqualLeadingWeights {
                p1: weights[0],
                p2: weights[1],
            });
        }
        Ok(Self { d1, d2, weights })
    }

    /// Two-qubit spec from the weight pair (p1, p2).
    pub fn two_qubit(p1: f64, p2: f64) -> Result<Self, SpecError> {
        Self::new(2, 2, vec![p1, p2])
    }

    /// The two-qubit weights maximizing the pure-state Hardy probability:
    /// p1 p2 = (3 - sqrt(5)) / 2 with p1^2 + p2^2 = 1 and p1 > p2.
    pub fn hardy_max() -> Self {
        let x = (3.0 - 5.0_f64.sqrt()) / 2.0;
        let disc = (1.0 - 4.0 * x * x).sqrt();
        let p1 = ((1.0 + disc) / 2.0).sqrt();
        let p2 = ((1.0 - disc) / 2.0).sqrt();
        Self::two_qubit(p1, p2).expect("preset weights are valid")
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    pub fn dim_of(&self, party: Party) -> usize {
        match party {
            Party::One => self.d1,
            Party::Two => self.d2,
        }
    }

    /// Product of the local dimensions, the total Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.d1 * self.d2
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn p1(&self) -> f64 {
        self.weights[0]
    }

    pub fn p2(&self) -> f64 {
        self.weights[1]
    }

    pub fn is_two_qubit(&self) -> bool {
        self.d1 == 2 && self.d2 == 2
    }
}

/// A [`SchmidtSpec`] proven to live on two qubits. Operations defined only
/// for 2x2 systems (colored noise, the CHSH criterion) take this type, so
/// the restriction is carried by the type system rather than checked at
/// every call site.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitSpec {
    spec: SchmidtSpec,
}

impl TwoQubitSpec {
    pub fn new(p1: f64, p2: f64) -> Result<Self, SpecError> {
        Ok(Self {
            spec: SchmidtSpec::two_qubit(p1, p2)?,
        })
    }

    pub fn from_spec(spec: &SchmidtSpec) -> Result<Self, SpecError> {
        if !spec.is_two_qubit() {
            return Err(SpecError::NotTwoQubit {
                d1: spec.d1,
                d2: spec.d2,
            });
        }
        Ok(Self { spec: spec.clone() })
    }

    pub fn hardy_max() -> Self {
        Self {
            spec: SchmidtSpec::hardy_max(),
        }
    }

    pub fn spec(&self) -> &SchmidtSpec {
        &self.spec
    }

    pub fn p1(&self) -> f64 {
        self.spec.p1()
    }

    pub fn p2(&self) -> f64 {
        self.spec.p2()
    }
}

/// Which party a local observable acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Party {
    One,
    Two,
}

impl Party {
    pub fn index(self) -> u8 {
        match self {
            Party::One => 1,
            Party::Two => 2,
        }
    }
}

/// Measurement setting label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Setting {
    X,
    Y,
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Setting::X => write!(f, "X"),
            Setting::Y => write!(f, "Y"),
        }
    }
}

/// Measurement outcome. `Zero` exists only on local dimension > 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Plus,
    Minus,
    Zero,
}

impl Outcome {
    pub fn value(self) -> i8 {
        match self {
            Outcome::Plus => 1,
            Outcome::Minus => -1,
            Outcome::Zero => 0,
        }
    }

    /// Outcome set of a local observable on dimension `dim`.
    pub fn set_for_dim(dim: usize) -> &'static [Outcome] {
        if dim > 2 {
            &[Outcome::Plus, Outcome::Minus, Outcome::Zero]
        } else {
            &[Outcome::Plus, Outcome::Minus]
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Plus => write!(f, "+1"),
            Outcome::Minus => write!(f, "-1"),
            Outcome::Zero => write!(f, "0"),
        }
    }
}

fn check_basis_weights(p1: f64, p2: f64) -> Result<(), SpecError> {
    for (index, w) in [(0usize, p1), (1usize, p2)] {
        if !w.is_finite() {
            return Err(SpecError::NonFiniteWeight { index });
        }
        if w <= 0.0 {
            return Err(SpecError::NonPositiveWeight { index, value: w });
        }
    }
    Ok(())
}

/// The x measurement basis (|x+>, |x->) for leading weights (p1, p2).
pub fn x_basis(p1: f64, p2: f64) -> Result<(Ket, Ket), SpecError> {
    check_basis_weights(p1, p2)?;
    let norm = (p1 + p2).sqrt();
    let sp1 = p1.sqrt();
    let sp2 = p2.sqrt();
    let plus = Ket::normalized(vec![
        Complex64::new(sp2 / norm, 0.0),
        Complex64::new(0.0, -sp1 / norm),
    ])
    .expect("x+ amplitudes are finite and nonzero");
    let minus = Ket::normalized(vec![
        Complex64::new(0.0, -sp1 / norm),
        Complex64::new(sp2 / norm, 0.0),
    ])
    .expect("x- amplitudes are finite and nonzero");
    Ok((plus, minus))
}

/// The y measurement basis (|y+>, |y->) for leading weights (p1, p2).
///
/// Normalization holds for any positive weights because
/// p1^3 + p2^3 = (p1 + p2)(p1^2 - p1 p2 + p2^2).
pub fn y_basis(p1: f64, p2: f64) -> Result<(Ket, Ket), SpecError> {
    check_basis_weights(p1, p2)?;
    let norm = ((p1 * p1 + p2 * p2 - p1 * p2) * (p1 + p2)).sqrt();
    let a = p1 * p1.sqrt() / norm; // p1^(3/2) / N
    let b = p2 * p2.sqrt() / norm; // p2^(3/2) / N
    let plus = Ket::normalized(vec![Complex64::new(0.0, -b), Complex64::new(a, 0.0)])
        .expect("y+ amplitudes are finite and nonzero");
    let minus = Ket::normalized(vec![Complex64::new(a, 0.0), Complex64::new(0.0, -b)])
        .expect("y- amplitudes are finite and nonzero");
    Ok((plus, minus))
}

/// The Hardy state sum_i p_i |i-1> (x) |i-1> in the computational basis.
pub fn hardy_state(spec: &SchmidtSpec) -> Ket {
    let dim = spec.dim();
    let mut amps = vec![Complex64::default(); dim];
    for (i, &w) in spec.weights().iter().enumerate() {
        amps[i * spec.d2() + i] = Complex64::new(w, 0.0);
    }
    Ket::normalized(amps).expect("Schmidt weights are normalized")
}

/// A named local measurement with its eigenvalue -> projector map.
///
/// The projectors are mutually orthogonal, idempotent, and sum to the local
/// identity; the 0 eigenvalue is present exactly when the local dimension
/// exceeds 2 and projects onto span{|2>, ..., |d-1>}.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    party: Party,
    setting: Setting,
    dim: usize,
    projectors: Vec<(Outcome, CMatrix)>,
}

impl Observable {
    pub fn party(&self) -> Party {
        self.party
    }

    pub fn setting(&self) -> Setting {
        self.setting
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn outcomes(&self) -> impl Iterator<Item = Outcome> + '_ {
        self.projectors.iter().map(|(o, _)| *o)
    }

    pub fn projector(&self, outcome: Outcome) -> Option<&CMatrix> {
        self.projectors
            .iter()
            .find(|(o, _)| *o == outcome)
            .map(|(_, p)| p)
    }
}

/// Embeds a 2-dimensional ket into the span{|0>, |1>} plane of dimension `dim`.
fn embed(v: &Ket, dim: usize) -> Ket {
    let mut amps = vec![Complex64::default(); dim];
    amps[0] = v.amplitude(0);
    amps[1] = v.amplitude(1);
    Ket::normalized(amps).expect("embedded ket keeps its norm")
}

/// Builds the X or Y observable of one party for the given spec.
///
/// Only the two leading Schmidt weights enter the basis vectors, even when
/// the spec carries more; the remaining directions form the 0 eigenspace.
pub fn observable(party: Party, setting: Setting, spec: &SchmidtSpec) -> Observable {
    let dim = spec.dim_of(party);
    let (plus, minus) = match setting {
        Setting::X => x_basis(spec.p1(), spec.p2()),
        Setting::Y => y_basis(spec.p1(), spec.p2()),
    }
    .expect("spec weights are strictly positive");
    let mut projectors = vec![
        (Outcome::Plus, projector(&embed(&plus, dim))),
        (Outcome::Minus, projector(&embed(&minus, dim))),
    ];
    if dim > 2 {
        let mut zero = CMatrix::zeros(dim, dim);
        for k in 2..dim {
            zero[(k, k)] = Complex64::new(1.0, 0.0);
        }
        projectors.push((Outcome::Zero, zero));
    }
    Observable {
        party,
        setting,
        dim,
        projectors,
    }
}
