use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::density::FockDensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{
    complex_hermitian_eigen, complex_hermitian_eigenvalues, complex_product, complex_singular_values, hermitize,
    orthonormal_basis, unitary_congruence,
};
use crate::tolerance;

/// Eigenpairs of a density matrix above its noise floor.
///
/// Eigenvalues in `[−tolerance::CLAMP, n·ε·λ_max]` are treated as zero, so that
/// eigensolver round-off is not amplified by square roots; more negative
/// eigenvalues are an error. Rows that are exactly zero are split off before
/// diagonalizing.
#[derive(Debug, Clone)]
pub struct PsdFactor {
    /// Retained eigenvectors as columns, in the full basis.
    pub vectors: DMatrix<C64>,
    pub values: Vec<f64>,
    pub lambda_max: f64,
}

impl PsdFactor {
    pub fn rank(&self) -> usize {
        self.values.len()
    }

    fn with_scale(&self, f: impl Fn(f64) -> f64) -> DMatrix<C64> {
        let mut v = self.vectors.clone();
        for (j, &lambda) in self.values.iter().enumerate() {
            v.column_mut(j).scale_mut(f(lambda));
        }
        v
    }
}

pub fn psd_factor(rho: &DMatrix<C64>) -> Result<PsdFactor> {
    let n = rho.nrows();
    let support = joint_support(rho, rho);
    let block = rho.select_rows(&support).select_columns(&support);
    let (values, vectors) = complex_hermitian_eigen(&hermitize(&block))?;
    let lambda_max = values.iter().copied().fold(0.0, f64::max);
    let lambda_min = values.iter().copied().fold(0.0, f64::min);
    if lambda_min < -tolerance::CLAMP {
        return Err(Error::NotPsd(lambda_min));
    }
    let floor = n as f64 * f64::EPSILON * lambda_max;
    let keep: Vec<usize> = (0..values.len()).filter(|&j| values[j] > floor).collect();
    let mut full = DMatrix::zeros(n, keep.len());
    for (col, &j) in keep.iter().enumerate() {
        for (bi, &i) in support.iter().enumerate() {
            full[(i, col)] = vectors[(bi, j)];
        }
    }
    Ok(PsdFactor { vectors: full, values: keep.iter().map(|&j| values[j]).collect(), lambda_max })
}

/// Functional-calculus square root of a Hermitian PSD matrix, with the
/// clamping of [`psd_factor`].
pub fn psd_sqrt(rho: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let f = psd_factor(rho)?;
    let roots: Vec<C64> = f.values.iter().map(|&l| C64::new(l.sqrt(), 0.0)).collect();
    Ok(hermitize(&unitary_congruence(&f.vectors, &roots)))
}

/// Exact distinguishability measures between two density matrices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactMetrics {
    /// `Tr√ρ₁√ρ₂`.
    pub overlap: f64,
    /// `Tr|√ρ₁√ρ₂|`, the root fidelity.
    pub fidelity_root: f64,
    /// `‖ρ₁ − ρ₂‖₁`.
    pub trace_distance: f64,
    /// `√(2(1 − Tr|√ρ₁√ρ₂|))`.
    pub bures: f64,
    /// Largest eigenvalue of ρ₁.
    pub lambda_max: f64,
    /// Largest eigenvalue of ρ₂.
    pub lambda_max_second: f64,
}

/// Indices of basis states on which either matrix has a nonzero row.
fn joint_support(a: &DMatrix<C64>, b: &DMatrix<C64>) -> Vec<usize> {
    let zero = C64::new(0.0, 0.0);
    (0..a.nrows())
        .filter(|&i| a.row(i).iter().chain(b.row(i).iter()).any(|&x| x != zero))
        .collect()
}

/// With `ρᵢ = Vᵢ Λᵢ Vᵢ†`, `√ρ₁√ρ₂ = V₁ C V₂†` for the small core
/// `C = Λ₁^{1/2} (V₁†V₂) Λ₂^{1/2}`, whose singular values and trace pairing
/// give the fidelity and the overlap. The trace distance is evaluated on an
/// orthonormal basis of the joint range.
pub fn exact_metrics(rho1: &FockDensityMatrix, rho2: &FockDensityMatrix) -> Result<ExactMetrics> {
    if rho1.matrix.shape() != rho2.matrix.shape() {
        return Err(Error::DimensionMismatch(format!(
            "density matrices of dimension {} and {}",
            rho1.dim(),
            rho2.dim()
        )));
    }
    let f1 = psd_factor(&rho1.matrix)?;
    let f2 = psd_factor(&rho2.matrix)?;

    let gram = complex_product(&f1.vectors.adjoint(), &f2.vectors);
    let core = DMatrix::from_fn(f1.rank(), f2.rank(), |i, j| gram[(i, j)] * (f1.values[i] * f2.values[j]).sqrt());
    // Tr(V₁ C V₂†) = Σ C_ij conj(G_ij)
    let overlap = core.iter().zip(gram.iter()).map(|(c, g)| (c * g.conj()).re).sum::<f64>();
    let fidelity_root = complex_singular_values(&core)?.iter().sum::<f64>().min(1.0);

    let n = rho1.dim();
    let diff_eigenvalues = if f1.rank() + f2.rank() < n {
        let mut joined = DMatrix::zeros(n, f1.rank() + f2.rank());
        joined.columns_mut(0, f1.rank()).copy_from(&f1.vectors);
        joined.columns_mut(f1.rank(), f2.rank()).copy_from(&f2.vectors);
        let q = orthonormal_basis(&joined);
        let p1 = complex_product(&q.adjoint(), &f1.with_scale(|l| l.sqrt()));
        let p2 = complex_product(&q.adjoint(), &f2.with_scale(|l| l.sqrt()));
        let projected = complex_product(&p1, &p1.adjoint()) - complex_product(&p2, &p2.adjoint());
        complex_hermitian_eigenvalues(&hermitize(&projected))?
    } else {
        complex_hermitian_eigenvalues(&hermitize(&(&rho1.matrix - &rho2.matrix)))?
    };
    let trace_distance = diff_eigenvalues.iter().map(|x| x.abs()).sum::<f64>().min(2.0);

    Ok(ExactMetrics {
        overlap,
        fidelity_root,
        trace_distance,
        bures: (2.0 * (1.0 - fidelity_root)).max(0.0).sqrt(),
        lambda_max: f1.lambda_max,
        lambda_max_second: f2.lambda_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{build, StateBuilder};
    use approx::assert_relative_eq;
    use nalgebra::DVector;

    fn diag(v: &[f64]) -> DMatrix<C64> {
        DMatrix::from_diagonal(&DVector::from_iterator(v.len(), v.iter().map(|&x| C64::new(x, 0.0))))
    }

    #[test]
    fn sqrt_examples() {
        assert!((psd_sqrt(&diag(&[1.0, 0.0])).unwrap() - diag(&[1.0, 0.0])).norm() < 1e-15);
        assert!((psd_sqrt(&diag(&[0.25, 0.75])).unwrap() - diag(&[0.5, 3f64.sqrt() / 2.0])).norm() < 1e-15);
        let rho = build(&StateBuilder::Thermal { nbar: 2.0 }, 60).unwrap();
        let root = psd_sqrt(&rho.matrix).unwrap();
        for n in [0, 1, 10, 40] {
            assert_relative_eq!(root[(n, n)].re, rho.matrix[(n, n)].re.sqrt(), epsilon = 1e-12);
        }
        assert!((&root * &root - &rho.matrix).norm() < 1e-9);
        assert!(matches!(psd_sqrt(&diag(&[1.0, -0.1])), Err(Error::NotPsd(_))));
    }

    #[test]
    fn identical_states() {
        let rho = build(&StateBuilder::Squeezed { r: 0.3, phi: 0.4 }, 40).unwrap();
        let m = exact_metrics(&rho, &rho).unwrap();
        assert_relative_eq!(m.overlap, 1.0, epsilon = 1e-9);
        assert_relative_eq!(m.fidelity_root, 1.0, epsilon = 1e-9);
        assert!(m.trace_distance < 1e-12);
        assert!(m.bures < 1e-4);
    }

    #[test]
    fn thermal_vs_vacuum() {
        let t = build(&StateBuilder::Thermal { nbar: 2.0 }, 60).unwrap();
        let v = build(&StateBuilder::Vacuum, 60).unwrap();
        let m = exact_metrics(&t, &v).unwrap();
        let root3 = 1.0 / 3f64.sqrt();
        assert_relative_eq!(m.overlap, root3, epsilon = 1e-10);
        assert_relative_eq!(m.fidelity_root, root3, epsilon = 1e-10);
        assert_relative_eq!(m.trace_distance, 4.0 / 3.0, epsilon = 1e-10);
        assert_relative_eq!(m.lambda_max, 1.0 / 3.0, epsilon = 1e-10);
    }

    #[test]
    fn coherent_vs_vacuum() {
        let c = build(&StateBuilder::Coherent { z: C64::new(1.0, 0.0) }, 40).unwrap();
        let v = build(&StateBuilder::Vacuum, 40).unwrap();
        let m = exact_metrics(&c, &v).unwrap();
        assert_relative_eq!(m.overlap, (-1.0f64).exp(), epsilon = 1e-9);
        assert_relative_eq!(m.fidelity_root, (-0.5f64).exp(), epsilon = 1e-9);
        assert_relative_eq!(m.trace_distance, 2.0 * (1.0 - (-1.0f64).exp()).sqrt(), epsilon = 1e-9);
        assert_relative_eq!(m.trace_distance, 1.590121, epsilon = 1e-6);
    }

    #[test]
    fn dimension_mismatch() {
        let a = build(&StateBuilder::Vacuum, 10).unwrap();
        let b = build(&StateBuilder::Vacuum, 12).unwrap();
        assert!(matches!(exact_metrics(&a, &b), Err(Error::DimensionMismatch(_))));
    }
}
