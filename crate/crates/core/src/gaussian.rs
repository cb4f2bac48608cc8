//! Phase-space conventions and the Gaussian state representation.
//!
//! Quadratures are interleaved as `(q₁, p₁, …, q_s, p_s)` with ħ = 1, so the
//! vacuum has covariance `I/2` and the uncertainty relation reads
//! `cov + (i/2)Δ ⪰ 0`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{all_finite, complex_hermitian_eigenvalues, hermitian_eigen, max_abs, symmetric_function, symmetrize};
use crate::tolerance;

/// The block-diagonal commutation matrix Δ with blocks `[[0, 1], [-1, 0]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    modes: usize,
    matrix: DMatrix<f64>,
}

impl SymplecticForm {
    pub fn new(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::InvalidModes);
        }
        let mut matrix = DMatrix::zeros(2 * modes, 2 * modes);
        for j in 0..modes {
            matrix[(2 * j, 2 * j + 1)] = 1.0;
            matrix[(2 * j + 1, 2 * j)] = -1.0;
        }
        Ok(Self { modes, matrix })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Δ⁻¹ = −Δ = Δᵀ.
    pub fn inverse(&self) -> DMatrix<f64> {
        -&self.matrix
    }
}

/// Shorthand for [`SymplecticForm::new`].
pub fn make_symplectic_form(modes: usize) -> Result<SymplecticForm> {
    SymplecticForm::new(modes)
}

/// A valid Gaussian state ρ_{m,α}: mean vector and symmetric covariance.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    modes: usize,
    mean: DVector<f64>,
    cov: DMatrix<f64>,
}

impl GaussianState {
    /// Validates and symmetrizes the moments. See [`validate_state`].
    pub fn new(mean: DVector<f64>, cov: DMatrix<f64>) -> Result<Self> {
        validate_state(mean, cov)
    }

    pub fn vacuum(modes: usize) -> Result<Self> {
        let form = SymplecticForm::new(modes)?;
        let n = 2 * form.modes();
        Ok(Self { modes, mean: DVector::zeros(n), cov: DMatrix::identity(n, n) * 0.5 })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    pub fn form(&self) -> SymplecticForm {
        SymplecticForm::new(self.modes).expect("modes validated at construction")
    }

    pub fn williamson(&self) -> Result<SymplecticSpectrum> {
        williamson(&self.cov)
    }

    pub fn classify(&self) -> Result<Classification> {
        classify(self)
    }

    /// Whether this is the vacuum: zero mean and covariance `I/2`.
    pub fn is_vacuum(&self) -> bool {
        let n = self.cov.nrows();
        self.mean.amax() <= tolerance::COMM
            && max_abs(&(&self.cov - DMatrix::identity(n, n) * 0.5)) <= tolerance::PURE
    }
}

/// Checks dimensions, symmetry and the uncertainty relation, returning a
/// state whose covariance is the symmetrization `(cov + covᵀ)/2`.
pub fn validate_state(mean: DVector<f64>, cov: DMatrix<f64>) -> Result<GaussianState> {
    let n = cov.nrows();
    if cov.ncols() != n {
        return Err(Error::DimensionMismatch(format!("covariance is {}x{}", n, cov.ncols())));
    }
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::DimensionMismatch(format!("covariance dimension {n} is not a positive even number")));
    }
    if mean.len() != n {
        return Err(Error::DimensionMismatch(format!("mean has length {} but covariance is {n}x{n}", mean.len())));
    }
    if !mean.iter().all(|x| x.is_finite()) {
        return Err(Error::NonFinite("mean"));
    }
    if !all_finite(&cov) {
        return Err(Error::NonFinite("covariance"));
    }
    let asymmetry = max_abs(&(&cov - cov.transpose())) / 2.0;
    let allowed = tolerance::SYM * max_abs(&cov).max(1.0);
    if asymmetry > allowed {
        return Err(Error::AsymmetryBeyondTolerance { asymmetry, tolerance: allowed });
    }
    let cov = symmetrize(&cov);
    let form = SymplecticForm::new(n / 2)?;
    let min_eigenvalue = min_uncertainty_eigenvalue(&cov, &form)?;
    if !(min_eigenvalue >= -tolerance::PSD) {
        return Err(Error::UncertaintyViolation { min_eigenvalue });
    }
    Ok(GaussianState { modes: n / 2, mean, cov })
}

/// Smallest eigenvalue of the Hermitian matrix `cov + (i/2)Δ`.
pub fn min_uncertainty_eigenvalue(cov: &DMatrix<f64>, form: &SymplecticForm) -> Result<f64> {
    let delta = form.matrix();
    let h = DMatrix::from_fn(cov.nrows(), cov.ncols(), |i, j| C64::new(cov[(i, j)], 0.5 * delta[(i, j)]));
    let values = complex_hermitian_eigenvalues(&h)?;
    Ok(values.into_iter().fold(f64::INFINITY, f64::min))
}

/// Williamson normal form `cov = S D Sᵀ`, `S Δ Sᵀ = Δ`, `D = diag(ν₁, ν₁, …)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticSpectrum {
    /// Symplectic eigenvalues, ascending.
    pub nu: Vec<f64>,
    pub transform: DMatrix<f64>,
    pub diagonal: DMatrix<f64>,
}

impl SymplecticSpectrum {
    /// `‖S Δ Sᵀ − Δ‖₂ / max(1, ‖S‖₂²)`.
    pub fn symplectic_residual(&self) -> f64 {
        let form = SymplecticForm::new(self.nu.len()).expect("non-empty spectrum");
        let s = &self.transform;
        let lhs = s * form.matrix() * s.transpose();
        (lhs - form.matrix()).norm() / s.norm_squared().max(1.0)
    }

    /// `‖S D Sᵀ − cov‖₂ / max(1, ‖cov‖₂)`.
    pub fn reconstruction_residual(&self, cov: &DMatrix<f64>) -> f64 {
        let s = &self.transform;
        (s * &self.diagonal * s.transpose() - cov).norm() / cov.norm().max(1.0)
    }

    /// Inverse transform via `S⁻¹ = Δ⁻¹ Sᵀ Δ`.
    pub fn inverse_transform(&self) -> DMatrix<f64> {
        let form = SymplecticForm::new(self.nu.len()).expect("non-empty spectrum");
        form.inverse() * self.transform.transpose() * form.matrix()
    }
}

/// Williamson decomposition of a positive definite covariance matrix.
///
/// The antisymmetric matrix `K = cov^{-1/2} Δ cov^{-1/2}` is brought to real
/// canonical form `Oᵀ K O = ⊕ κ_j J` with an orthogonal `O`; then `ν_j = 1/κ_j`
/// and `S = cov^{1/2} O D^{-1/2}`. Degenerate eigenspaces of `KᵀK` are split
/// by greedy Gram-Schmidt, so any orthonormal basis of them is accepted.
pub fn williamson(cov: &DMatrix<f64>) -> Result<SymplecticSpectrum> {
    let n = cov.nrows();
    if n == 0 || !n.is_multiple_of(2) || cov.ncols() != n {
        return Err(Error::DimensionMismatch(format!("covariance is {}x{}", n, cov.ncols())));
    }
    if !all_finite(cov) {
        return Err(Error::NonFinite("covariance"));
    }
    let modes = n / 2;
    let form = SymplecticForm::new(modes)?;
    let eig = hermitian_eigen(&symmetrize(cov))?;
    if !(eig.eigenvalues.min() > 0.0) {
        return Err(Error::NotPositiveDefinite("covariance"));
    }
    let sqrt_cov = symmetric_function(cov, |x| x.max(0.0).sqrt())?;
    let inv_sqrt = symmetric_function(cov, |x| 1.0 / x.sqrt())?;
    let k = &inv_sqrt * form.matrix() * &inv_sqrt;
    let ktk = symmetrize(&(k.transpose() * &k));
    let candidates = hermitian_eigen(&ktk)?.eigenvectors;

    let mut basis: Vec<DVector<f64>> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut pairs: Vec<(f64, DVector<f64>, DVector<f64>)> = Vec::with_capacity(modes);
    for _ in 0..modes {
        let (idx, residual) = (0..n)
            .filter(|&i| !used[i])
            .map(|i| (i, orthogonalize(candidates.column(i).into_owned(), &basis)))
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .expect("fewer pairs than modes");
        used[idx] = true;
        let u = residual.normalize();
        let mut v = orthogonalize(&k * &u, &basis);
        v -= &u * u.dot(&v);
        let v = v.normalize();
        let kappa = v.dot(&(&k * &u));
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::ConvergenceFailure(format!("degenerate canonical block, kappa = {kappa}")));
        }
        basis.push(v.clone());
        basis.push(u.clone());
        pairs.push((kappa, v, u));
    }
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut orthogonal = DMatrix::zeros(n, n);
    let mut nu = Vec::with_capacity(modes);
    for (j, (kappa, v, u)) in pairs.iter().enumerate() {
        let value = 1.0 / kappa;
        orthogonal.set_column(2 * j, &(v / value.sqrt()));
        orthogonal.set_column(2 * j + 1, &(u / value.sqrt()));
        nu.push(value);
    }
    let transform = sqrt_cov * orthogonal;
    let diagonal = DMatrix::from_diagonal(&DVector::from_iterator(n, nu.iter().flat_map(|&v| [v, v])));
    let spectrum = SymplecticSpectrum { nu, transform, diagonal };

    let symp = spectrum.symplectic_residual();
    let recon = spectrum.reconstruction_residual(cov);
    if !(symp <= tolerance::SYMP && recon <= tolerance::RECON) {
        return Err(Error::ConvergenceFailure(format!(
            "Williamson residuals too large: symplectic {symp:e}, reconstruction {recon:e}"
        )));
    }
    Ok(spectrum)
}

fn orthogonalize(mut x: DVector<f64>, basis: &[DVector<f64>]) -> DVector<f64> {
    // two passes of classical Gram-Schmidt
    for _ in 0..2 {
        for b in basis {
            let c = b.dot(&x);
            x.axpy(-c, b, 1.0);
        }
    }
    x
}

/// Trace, Hilbert-Schmidt and operator norms of a real matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormTriple {
    pub trace_norm: f64,
    pub hs_norm: f64,
    pub op_norm: f64,
}

pub fn norms(a: &DMatrix<f64>) -> Result<NormTriple> {
    if !all_finite(a) {
        return Err(Error::NonFinite("matrix"));
    }
    if a.is_empty() {
        return Ok(NormTriple { trace_norm: 0.0, hs_norm: 0.0, op_norm: 0.0 });
    }
    let singular = a.clone().singular_values();
    Ok(NormTriple { trace_norm: singular.sum(), hs_norm: a.norm(), op_norm: singular.max() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub pure: bool,
    pub gauge_invariant: bool,
}

pub fn classify(state: &GaussianState) -> Result<Classification> {
    let spectrum = state.williamson()?;
    let pure = spectrum.nu.iter().all(|&v| (v - 0.5).abs() <= tolerance::PURE);
    let gauge_invariant = state.mean.amax() <= tolerance::COMM * state.mean.len() as f64
        && commutator_norm(state.cov(), &state.form()) <= tolerance::COMM * state.cov().norm().max(1.0);
    Ok(Classification { pure, gauge_invariant })
}

/// `‖αΔ − Δα‖₂`.
pub fn commutator_norm(cov: &DMatrix<f64>, form: &SymplecticForm) -> f64 {
    let delta = form.matrix();
    (cov * delta - delta * cov).norm()
}
