//! The hat transform `α̂ = α(I + Υ_α)`, `Υ_α = √(I + (2Δ⁻¹α)⁻²)`.
//!
//! Matrix functions of `Δ⁻¹α` are evaluated in the Williamson frame, where
//! `(2Δ⁻¹α)⁻²` becomes `−1/(4ν_j²)` on each mode. The principal square root
//! is then diagonal with entries `√(1 − 1/(4ν_j²))`, which gives
//!
//! ```text
//! α Υ_α = S diag(√(ν_j² − 1/4)) Sᵀ,    α̂ = S diag(ν_j + √(ν_j² − 1/4)) Sᵀ.
//! ```

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::gaussian::{commutator_norm, williamson, SymplecticForm, SymplecticSpectrum};
use crate::linalg::{hermitian_eigen, inverse_spd, symmetric_function, symmetrize};
use crate::tolerance;

#[derive(Debug, Clone, PartialEq)]
pub struct HatDecomposition {
    pub upsilon: DMatrix<f64>,
    /// `α Υ_α`, symmetric positive semidefinite.
    pub cov_upsilon: DMatrix<f64>,
    pub hat: DMatrix<f64>,
    /// Symplectic eigenvalues of the hat matrix, `a_j = ν_j + √(ν_j² − 1/4)`.
    pub hat_spectrum: Vec<f64>,
    pub spectrum: SymplecticSpectrum,
}

/// `√(ν² − 1/4)`, clamped to zero for ν within `tolerance::PURE` of 1/2.
fn excess(nu: f64) -> f64 {
    if nu - 0.5 <= tolerance::PURE {
        0.0
    } else {
        (nu * nu - 0.25).sqrt()
    }
}

pub fn hat(cov: &DMatrix<f64>) -> Result<HatDecomposition> {
    let spectrum = williamson(cov)?;
    let n = cov.nrows();
    let s = &spectrum.transform;
    let excesses: Vec<f64> = spectrum.nu.iter().map(|&v| excess(v)).collect();
    let doubled = |values: &[f64]| DVector::from_iterator(n, values.iter().flat_map(|&v| [v, v]));

    let cov_upsilon = symmetrize(&(s * DMatrix::from_diagonal(&doubled(&excesses)) * s.transpose()));
    let hat = symmetrize(&(cov + &cov_upsilon));
    let ratios: Vec<f64> = spectrum.nu.iter().zip(&excesses).map(|(v, e)| e / v).collect();
    // S⁻ᵀ = Δ⁻¹ S Δ for symplectic S
    let form = SymplecticForm::new(spectrum.nu.len())?;
    let s_inv_t = form.inverse() * s * form.matrix();
    let upsilon = s_inv_t * DMatrix::from_diagonal(&doubled(&ratios)) * s.transpose();
    let hat_spectrum = spectrum.nu.iter().zip(&excesses).map(|(v, e)| v + e).collect();
    Ok(HatDecomposition { upsilon, cov_upsilon, hat, hat_spectrum, spectrum })
}

impl HatDecomposition {
    /// `‖α̂ − α(I + Υ)‖₂ / ‖α̂‖₂`.
    pub fn hat_residual(&self, cov: &DMatrix<f64>) -> f64 {
        let n = cov.nrows();
        (&self.hat - cov * (DMatrix::identity(n, n) + &self.upsilon)).norm() / self.hat.norm()
    }

    /// `‖Υ² − (I + (2Δ⁻¹α)⁻²)‖₂ / max(1, ‖I + (2Δ⁻¹α)⁻²‖₂)`, with the right-hand
    /// side formed directly from `α⁻¹` as `I + (1/4) α⁻¹Δ α⁻¹Δ`.
    pub fn square_residual(&self, cov: &DMatrix<f64>) -> Result<f64> {
        let n = cov.nrows();
        let form = SymplecticForm::new(n / 2)?;
        let inv = inverse_spd(cov).ok_or(Error::NotPositiveDefinite("covariance"))?;
        let half_inv = &inv * form.matrix() * 0.5;
        let target = DMatrix::identity(n, n) + &half_inv * &half_inv;
        Ok((&self.upsilon * &self.upsilon - &target).norm() / target.norm().max(1.0))
    }
}

/// `√(α² − I/4)` for a covariance commuting with Δ; equals `α Υ_α` there.
pub fn hat_gauge_invariant(cov: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = cov.nrows();
    if n == 0 || !n.is_multiple_of(2) || cov.ncols() != n {
        return Err(Error::DimensionMismatch(format!("covariance is {}x{}", n, cov.ncols())));
    }
    let form = SymplecticForm::new(n / 2)?;
    let comm = commutator_norm(cov, &form);
    if comm > tolerance::COMM * cov.norm().max(1.0) {
        return Err(Error::CommutatorTooLarge(comm));
    }
    let eig = hermitian_eigen(&symmetrize(cov))?;
    // a covariance is positive, so the smallest eigenvalue of α² − I/4 comes from the smallest of α
    let lambda_min = eig.eigenvalues.min();
    let lowest = if lambda_min < 0.0 { lambda_min } else { lambda_min * lambda_min - 0.25 };
    if !(lowest >= -tolerance::PSD) {
        return Err(Error::NegativeOperand(lowest));
    }
    symmetric_function(cov, |x| (x * x - 0.25).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::E;

    fn diag(v: &[f64]) -> DMatrix<f64> {
        DMatrix::from_diagonal(&DVector::from_row_slice(v))
    }

    #[test]
    fn vacuum_is_fixed_point() {
        let vac = diag(&[0.5, 0.5]);
        let h = hat(&vac).unwrap();
        assert_eq!(h.upsilon.amax(), 0.0);
        assert_relative_eq!(h.hat, vac, epsilon = 1e-15);
    }

    #[test]
    fn thermal_scalar_case() {
        let h = hat(&diag(&[2.5, 2.5])).unwrap();
        let up = (24.0f64 / 25.0).sqrt();
        assert_relative_eq!(h.upsilon, diag(&[up, up]), epsilon = 1e-13);
        let a = 2.5 + 6f64.sqrt();
        assert_relative_eq!(h.hat, diag(&[a, a]), epsilon = 1e-13);
        assert_relative_eq!(a, 4.949490, epsilon = 1e-6);
        assert_relative_eq!(h.hat_spectrum[0], a, epsilon = 1e-13);
    }

    #[test]
    fn squeezed_pure_state_unchanged() {
        let sq = diag(&[E / 2.0, 1.0 / (2.0 * E)]);
        let h = hat(&sq).unwrap();
        assert_eq!(h.upsilon.amax(), 0.0);
        assert_relative_eq!(h.hat, sq, epsilon = 1e-14);
    }

    #[test]
    fn defining_equations_hold() {
        let cov = DMatrix::from_row_slice(4, 4, &[
            2.0, 0.3, 0.1, 0.0, //
            0.3, 1.5, 0.0, 0.2, //
            0.1, 0.0, 1.1, -0.1, //
            0.0, 0.2, -0.1, 0.9,
        ]);
        let h = hat(&cov).unwrap();
        assert!(h.hat_residual(&cov) < 1e-12);
        assert!(h.square_residual(&cov).unwrap() < 1e-12);
        assert!(crate::linalg::min_eigenvalue(&h.cov_upsilon).unwrap() > -1e-12);
        let hat_nu = williamson(&h.hat).unwrap().nu;
        for (got, want) in hat_nu.iter().zip(&h.hat_spectrum) {
            assert_relative_eq!(got, want, epsilon = 1e-10);
        }
    }

    #[test]
    fn gauge_invariant_examples() {
        assert_eq!(hat_gauge_invariant(&diag(&[0.5, 0.5])).unwrap().amax(), 0.0);
        let r6 = 6f64.sqrt();
        assert_relative_eq!(hat_gauge_invariant(&diag(&[2.5, 2.5])).unwrap(), diag(&[r6, r6]), epsilon = 1e-13);
        let r2 = 2f64.sqrt();
        assert_relative_eq!(
            hat_gauge_invariant(&diag(&[2.5, 2.5, 1.5, 1.5])).unwrap(),
            diag(&[r6, r6, r2, r2]),
            epsilon = 1e-13
        );
        let general = hat(&diag(&[2.5, 2.5, 1.5, 1.5])).unwrap();
        assert_relative_eq!(general.cov_upsilon, diag(&[r6, r6, r2, r2]), epsilon = 1e-12);
    }

    #[test]
    fn gauge_invariant_errors() {
        let sq = diag(&[E / 2.0, 1.0 / (2.0 * E)]);
        assert!(matches!(hat_gauge_invariant(&sq), Err(Error::CommutatorTooLarge(_))));
        assert!(matches!(hat_gauge_invariant(&diag(&[0.4, 0.4])), Err(Error::NegativeOperand(_))));
    }
}
