//! Dense complex linear algebra for small Hilbert spaces.
//!
//! Everything runs on `nalgebra` dense matrices over `Complex64`. All
//! dimensions involved are products of local dimensions up to ~16, so dense
//! storage and direct Hermitian eigendecomposition are used throughout.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

/// Dense complex matrix, the substrate for states, observables and projectors.
pub type CMatrix = DMatrix<Complex64>;
/// Dense complex column vector.
pub type CVector = DVector<Complex64>;

/// Tolerance for physicality checks (Hermiticity, unit trace, positivity).
pub const PHYSICALITY_TOL: f64 = 1e-10;
/// Tolerance for state-vector normalization.
pub const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("not Hermitian: max |m - m^dag| entry = {deviation:.3e}")]
    NotHermitian { deviation: f64 },
    #[error("trace is not one: trace = {trace}, deviation = {deviation:.3e}")]
    TraceNotOne { trace: f64, deviation: f64 },
    #[error("not positive semidefinite: min eigenvalue = {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },
    #[error("non-finite entry encountered")]
    NonFinite,
    #[error("cannot normalize a (near-)zero vector, norm = {norm:.3e}")]
    ZeroVector { norm: f64 },
}

/// A normalized state vector. The squared norm is 1 within [`NORM_TOL`]
/// after construction; amplitudes keep the phases they were given.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    amplitudes: CVector,
}

impl Ket {
    /// Builds a ket from raw amplitudes, rescaling to unit norm.
    ///
    /// Only the overall real scale is touched; relative phases are preserved.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self, LinalgError> {
        Self::from_vector(CVector::from_vec(amplitudes))
    }

    pub fn from_vector(v: CVector) -> Result<Self, LinalgError> {
        if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        let norm = v.norm();
        if norm < 1e-300 {
            return Err(LinalgError::ZeroVector { norm });
        }
        Ok(Self {
            amplitudes: v / Complex64::new(norm, 0.0),
        })
    }

    /// Computational basis state |k> in dimension `dim`.
    pub fn basis_state(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index {k} out of range for dim {dim}");
        let mut v = CVector::zeros(dim);
        v[k] = Complex64::new(1.0, 0.0);
        Self { amplitudes: v }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn amplitude(&self, i: usize) -> Complex64 {
        self.amplitudes[i]
    }

    /// Inner product <self|other>.
    pub fn inner(&self, other: &Ket) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// Tensor product; `self` is the slow (major) factor.
    pub fn tensor(&self, other: &Ket) -> Ket {
        Ket {
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        }
    }
}

/// A validated density operator: Hermitian, unit trace, positive
/// semidefinite, all within [`PHYSICALITY_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: CMatrix,
}

impl DensityOperator {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Pure-state density operator |v><v|, valid by construction.
    pub fn from_ket(v: &Ket) -> Self {
        Self {
            matrix: projector(v),
        }
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix).expect("density operator is Hermitian")
    }
}

/// Kronecker product with the left factor as the slow (major) index:
/// entry ((i*rb + k), (j*cb + l)) = a(i, j) * b(k, l).
pub fn tensor(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Rank-1 projector |v><v|.
pub fn projector(v: &Ket) -> CMatrix {
    let amps = v.amplitudes();
    CMatrix::from_fn(v.dim(), v.dim(), |i, j| amps[i] * amps[j].conj())
}

/// Complex identity matrix of the given dimension.
pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

fn all_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Largest entry modulus, used for entrywise comparisons.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Max entrywise deviation from Hermiticity, max_ij |m_ij - conj(m_ji)|.
pub fn hermiticity_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Hermitian eigendecomposition with eigenvalues sorted ascending and
/// eigenvector columns permuted to match.
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

const JACOBI_MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi diagonalization for a Hermitian matrix. Returns the
/// rotated copy's diagonal (unsorted eigenvalues) and the accumulated
/// unitary.
///
/// Jacobi is quadratically convergent, handles degenerate eigenvalues
/// without any special casing, and at the dimensions used here (<= 16)
/// costs nothing. Each (p, q) step first rephases the off-diagonal entry
/// to be real, then applies the standard real rotation angle.
fn jacobi_hermitian(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    let mut a = m.clone();
    let mut v = CMatrix::identity(n, n);
    let scale = m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let target = (1e-15 * scale).max(1e-300);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let b = a[(p, q)];
                let beta = b.norm();
                if beta <= 1e-300 {
                    continue;
                }
                let phase = b / beta; // e^{i phi}
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // real rotation for [[app, beta], [beta, aqq]]
                let tau = (aqq - app) / (2.0 * beta);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * cs;
                // block unitary: U[p,p] = cs, U[p,q] = sn,
                // U[q,p] = -sn e^{-i phi}, U[q,q] = cs e^{-i phi}
                let upp = Complex64::new(cs, 0.0);
                let upq = Complex64::new(sn, 0.0);
                let uqp = -sn * phase.conj();
                let uqq = cs * phase.conj();
                // columns: A <- A U, V <- V U
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * upp + aiq * uqp;
                    a[(i, q)] = aip * upq + aiq * uqq;
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * upp + viq * uqp;
                    v[(i, q)] = vip * upq + viq * uqq;
                }
                // rows: A <- U^dag A
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = upp.conj() * apj + uqp.conj() * aqj;
                    a[(q, j)] = upq.conj() * apj + uqq.conj() * aqj;
                }
                a[(p, q)] = Complex64::default();
                a[(q, p)] = Complex64::default();
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
            }
        }
    }
    let eigenvalues = (0..n).map(|i| a[(i, i)].re).collect();
    (eigenvalues, v)
}

/// Eigendecomposition of a Hermitian matrix.
///
/// The input is checked to be square, finite and Hermitian (a loose 1e-8
/// guard; callers that need the strict physicality tolerance check first).
pub fn hermitian_eigen(m: &CMatrix) -> Result<HermitianEigen, LinalgError> {
    if m.nrows() != m.ncols() {
        return Err(LinalgError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if !all_finite(m) {
        return Err(LinalgError::NonFinite);
    }
    let dev = hermiticity_deviation(m);
    if dev > 1e-8 {
        return Err(LinalgError::NotHermitian { deviation: dev });
    }
    let (raw_values, raw_vectors) = jacobi_hermitian(m);
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| raw_values[i].partial_cmp(&raw_values[j]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| raw_values[i]).collect();
    let mut eigenvectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &raw_vectors.column(src));
    }
    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>, LinalgError> {
    Ok(hermitian_eigen(m)?.eigenvalues)
}

/// Trace distance D(a, b) = (1/2) sum |eigenvalues of a - b|, in [0, 1].
pub fn trace_distance(a: &DensityOperator, b: &DensityOperator) -> Result<f64, LinalgError> {
    if a.dim() != b.dim() {
        return Err(LinalgError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let diff = a.matrix() - b.matrix();
    let vals = hermitian_eigenvalues(&diff)?;
    let d = 0.5 * vals.iter().map(|v| v.abs()).sum::<f64>();
    Ok(d.clamp(0.0, 1.0))
}

/// Checks the density-operator invariants and wraps the matrix on success.
///
/// Errors name the violated invariant together with the measured deviation.
pub fn validate_density(m: CMatrix) -> Result<DensityOperator, LinalgError> {
    if m.nrows() != m.ncols() {
        return Err(LinalgError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if !all_finite(&m) {
        return Err(LinalgError::NonFinite);
    }
    let dev = hermiticity_deviation(&m);
    if dev > PHYSICALITY_TOL {
        return Err(LinalgError::NotHermitian { deviation: dev });
    }
    let tr = trace(&m);
    let tr_dev = (tr - Complex64::new(1.0, 0.0)).norm();
    if tr_dev > PHYSICALITY_TOL {
        return Err(LinalgError::TraceNotOne {
            trace: tr.re,
            deviation: tr_dev,
        });
    }
    let vals = hermitian_eigenvalues(&m)?;
    let min = vals.first().copied().unwrap_or(0.0);
    if min < -PHYSICALITY_TOL {
        return Err(LinalgError::NotPositive {
            min_eigenvalue: min,
        });
    }
    Ok(DensityOperator { matrix: m })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn r(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn reconstruction_deviation(m: &CMatrix) -> f64 {
        let eig = hermitian_eigen(m).unwrap();
        let n = m.nrows();
        let diag = CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(eig.eigenvalues[i], 0.0)
            } else {
                Complex64::default()
            }
        });
        let recon = &eig.eigenvectors * diag * eig.eigenvectors.adjoint();
        max_abs(&(&recon - m))
    }

    #[test]
    fn eigen_of_simple_hermitian_matrix() {
        // [[1, i], [-i, 1]] has eigenvalues {0, 2}.
        let m = CMatrix::from_row_slice(2, 2, &[r(1.0), c(0.0, 1.0), c(0.0, -1.0), r(1.0)]);
        let vals = hermitian_eigenvalues(&m).unwrap();
        assert!(vals[0].abs() < 1e-14);
        assert!((vals[1] - 2.0).abs() < 1e-14);
        assert!(reconstruction_deviation(&m) < 1e-14);
    }

    #[test]
    fn eigen_handles_degenerate_spectra() {
        // Tensor squares have doubly degenerate eigenvalues; the vectors
        // must still span the right eigenspaces.
        let g = CMatrix::from_row_slice(
            3,
            3,
            &[
                c(0.3, 0.1),
                c(-0.2, 0.8),
                c(0.0, -0.4),
                c(0.5, 0.0),
                c(0.1, -0.6),
                c(0.9, 0.2),
                c(-0.7, 0.3),
                c(0.2, 0.2),
                c(0.4, -0.1),
            ],
        );
        let h = &g * g.adjoint();
        let tr = trace(&h).re;
        let h = h.scale(1.0 / tr);
        let hh = tensor(&h, &h);
        assert!(reconstruction_deviation(&hh) < 1e-12);
        // eigenvalues of h (x) h are all pairwise products
        let base = hermitian_eigenvalues(&h).unwrap();
        let mut expected: Vec<f64> = base
            .iter()
            .flat_map(|x| base.iter().map(move |y| x * y))
            .collect();
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let got = hermitian_eigenvalues(&hh).unwrap();
        for (g, e) in got.iter().zip(expected.iter()) {
            assert!((g - e).abs() < 1e-12);
        }
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let i2 = identity(2);
        assert_eq!(tensor(&i2, &i2), identity(4));
    }

    #[test]
    fn tensor_of_diagonal_projectors() {
        let p = CMatrix::from_diagonal(&CVector::from_vec(vec![r(1.0), r(0.0)]));
        let t = tensor(&p, &p);
        let expected =
            CMatrix::from_diagonal(&CVector::from_vec(vec![r(1.0), r(0.0), r(0.0), r(0.0)]));
        assert_eq!(t, expected);
    }

    #[test]
    fn tensor_index_ordering_is_left_major() {
        // |0><0| (x) |1><1| must put the 1 at index 0*2+1 = 1, not 2.
        let p0 = projector(&Ket::basis_state(2, 0));
        let p1 = projector(&Ket::basis_state(2, 1));
        let t = tensor(&p0, &p1);
        assert_eq!(t[(1, 1)], r(1.0));
        assert_eq!(t[(2, 2)], r(0.0));
    }

    #[test]
    fn colored_noise_operator_eigenvalues() {
        // (|00><00| + |11><11|) / 2 assembled from tensor products.
        let p0 = projector(&Ket::basis_state(2, 0));
        let p1 = projector(&Ket::basis_state(2, 1));
        let op = (tensor(&p0, &p0) + tensor(&p1, &p1)).scale(0.5);
        let vals = hermitian_eigenvalues(&op).unwrap();
        let expected = [0.0, 0.0, 0.5, 0.5];
        for (v, e) in vals.iter().zip(expected.iter()) {
            assert!((v - e).abs() < 1e-14, "eigenvalues {vals:?}");
        }
    }

    #[test]
    fn projector_of_basis_state() {
        let p = projector(&Ket::basis_state(2, 0));
        assert_eq!(p[(0, 0)], r(1.0));
        assert_eq!(p[(1, 1)], r(0.0));
        assert_eq!(p[(0, 1)], r(0.0));
    }

    #[test]
    fn projector_of_uniform_superposition() {
        let k = Ket::normalized(vec![r(1.0), r(1.0)]).unwrap();
        let p = projector(&k);
        for i in 0..2 {
            for j in 0..2 {
                assert!((p[(i, j)] - r(0.5)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn projector_is_hermitian_idempotent_trace_one() {
        let k = Ket::normalized(vec![c(0.3, 0.4), c(-0.2, 0.7), c(0.1, -0.5)]).unwrap();
        let p = projector(&k);
        assert!(hermiticity_deviation(&p) < 1e-15);
        let p2 = &p * &p;
        assert!((&p2 - &p).norm() < 1e-12);
        assert!((trace(&p) - r(1.0)).norm() < 1e-12);
    }

    #[test]
    fn trace_distance_of_identical_states_is_zero() {
        let rho = validate_density(identity(2).scale(0.5)).unwrap();
        assert_eq!(trace_distance(&rho, &rho).unwrap(), 0.0);
    }

    #[test]
    fn trace_distance_of_orthogonal_pure_states_is_one() {
        let a = DensityOperator::from_ket(&Ket::basis_state(2, 0));
        let b = DensityOperator::from_ket(&Ket::basis_state(2, 1));
        assert!((trace_distance(&a, &b).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn trace_distance_white_mix_to_pure() {
        // p |psi><psi| + (1-p)/4 I vs |psi><psi| at p = 0.5 gives
        // 0.5 * (4 - 1) / 4 = 0.375, independent of the pure state used.
        let psi = Ket::normalized(vec![r(0.8), r(0.0), r(0.0), r(0.6)]).unwrap();
        let pure = DensityOperator::from_ket(&psi);
        let mixed =
            validate_density(projector(&psi).scale(0.5) + identity(4).scale(0.5 / 4.0)).unwrap();
        assert!((trace_distance(&mixed, &pure).unwrap() - 0.375).abs() < 1e-12);
    }

    #[test]
    fn trace_distance_dimension_mismatch() {
        let a = validate_density(identity(2).scale(0.5)).unwrap();
        let b = validate_density(identity(4).scale(0.25)).unwrap();
        assert!(matches!(
            trace_distance(&a, &b),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn validate_density_accepts_maximally_mixed() {
        assert!(validate_density(identity(2).scale(0.5)).is_ok());
    }

    #[test]
    fn validate_density_rejects_wrong_trace() {
        let err = validate_density(identity(2)).unwrap_err();
        assert!(matches!(err, LinalgError::TraceNotOne { .. }));
    }

    #[test]
    fn validate_density_rejects_negative_eigenvalue() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![r(1.5), r(-0.5)]));
        let err = validate_density(m).unwrap_err();
        match err {
            LinalgError::NotPositive { min_eigenvalue } => {
                assert!((min_eigenvalue + 0.5).abs() < 1e-12)
            }
            other => panic!("expected NotPositive, got {other:?}"),
        }
    }

    #[test]
    fn validate_density_rejects_non_hermitian() {
        let m = CMatrix::from_row_slice(2, 2, &[r(0.5), r(0.3), r(0.1), r(0.5)]);
        let err = validate_density(m).unwrap_err();
        assert!(matches!(err, LinalgError::NotHermitian { .. }));
    }

    #[test]
    fn validate_density_rejects_nan() {
        let m = CMatrix::from_row_slice(2, 2, &[c(f64::NAN, 0.0), r(0.0), r(0.0), r(1.0)]);
        assert!(matches!(validate_density(m), Err(LinalgError::NonFinite)));
    }

    #[test]
    fn ket_normalization_and_zero_rejection() {
        let k = Ket::normalized(vec![r(3.0), r(4.0)]).unwrap();
        assert!((k.amplitudes().norm() - 1.0).abs() < NORM_TOL);
        assert!(matches!(
            Ket::normalized(vec![r(0.0), r(0.0)]),
            Err(LinalgError::ZeroVector { .. })
        ));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_complex() -> impl Strategy<Value = Complex64> {
            (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
        }

        fn arb_matrix(max_dim: usize) -> impl Strategy<Value = CMatrix> {
            (1..=max_dim).prop_flat_map(move |n| {
                proptest::collection::vec(arb_complex(), n * n)
                    .prop_map(move |v| CMatrix::from_vec(n, n, v))
            })
        }

        fn arb_density(dim: usize) -> impl Strategy<Value = DensityOperator> {
            proptest::collection::vec(arb_complex(), dim * dim).prop_filter_map(
                "Gram matrix must have nonzero trace",
                move |v| {
                    let g = CMatrix::from_vec(dim, dim, v);
                    let gram = &g * g.adjoint();
                    let tr = trace(&gram).re;
                    if tr < 1e-6 {
                        return None;
                    }
                    validate_density(gram.scale(1.0 / tr)).ok()
                },
            )
        }

        proptest! {
            #[test]
            fn tensor_is_associative(
                a in arb_matrix(3),
                b in arb_matrix(3),
                c in arb_matrix(3),
            ) {
                let left = tensor(&tensor(&a, &b), &c);
                let right = tensor(&a, &tensor(&b, &c));
                let dev = max_abs(&(&left - &right));
                prop_assert!(dev < 1e-14, "deviation {dev}");
            }

            #[test]
            fn hermitian_eigen_reconstructs(g in arb_matrix(4)) {
                // g g^dag is Hermitian; normalize to unit trace so entries
                // stay at physical scale, then tensor up to dim <= 16.
                let h = &g * g.adjoint();
                let tr = trace(&h).re;
                prop_assume!(tr > 1e-3);
                let h = h.scale(1.0 / tr);
                let h = tensor(&h, &h);
                let eig = hermitian_eigen(&h).unwrap();
                let n = h.nrows();
                let diag = CMatrix::from_fn(n, n, |i, j| {
                    if i == j { Complex64::new(eig.eigenvalues[i], 0.0) } else { Complex64::default() }
                });
                let recon = &eig.eigenvectors * diag * eig.eigenvectors.adjoint();
                let dev = max_abs(&(&recon - &h));
                prop_assert!(dev < 1e-10, "reconstruction deviation {dev}");
            }

            #[test]
            fn trace_distance_triangle_inequality(
                a in arb_density(3),
                b in arb_density(3),
                c in arb_density(3),
            ) {
                let ab = trace_distance(&a, &b).unwrap();
                let bc = trace_distance(&b, &c).unwrap();
                let ac = trace_distance(&a, &c).unwrap();
                prop_assert!(ac <= ab + bc + 1e-10, "ac={ac} ab={ab} bc={bc}");
                // symmetry comes along for free
                prop_assert!((ab - trace_distance(&b, &a).unwrap()).abs() < 1e-12);
            }

            #[test]
            fn density_eigenvalues_sum_to_one(rho in arb_density(4)) {
                let sum: f64 = rho.eigenvalues().iter().sum();
                prop_assert!((sum - 1.0).abs() < 1e-10, "sum {sum}");
            }
        }
    }
}
