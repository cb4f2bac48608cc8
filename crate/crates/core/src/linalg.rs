//! Dense helpers on top of nalgebra for the small real matrices of the
//! phase-space side and the complex Hermitian matrices of the Fock side.

use nalgebra::{DMatrix, DVector, Dyn, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Eigendecomposition of a real symmetric matrix, eigenvalues ascending.
pub fn hermitian_eigen(m: &DMatrix<f64>) -> Result<SymmetricEigen<f64, Dyn>> {
    let n = m.nrows();
    let eig = faer::Mat::from_fn(n, n, |i, j| m[(i, j)])
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|e| Error::ConvergenceFailure(format!("symmetric eigensolver: {e:?}")))?;
    let s = eig.S();
    let eigenvalues = DVector::from_fn(n, |i, _| s[i]);
    if eigenvalues.iter().any(|v| !v.is_finite()) {
        return Err(Error::ConvergenceFailure("non-finite eigenvalue".into()));
    }
    let u = eig.U();
    let eigenvectors = DMatrix::from_fn(n, n, |i, j| u[(i, j)]);
    Ok(SymmetricEigen { eigenvectors, eigenvalues })
}

fn to_faer(m: &DMatrix<C64>) -> faer::Mat<C64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn from_faer(m: faer::MatRef<'_, C64>) -> DMatrix<C64> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Eigenvalues (ascending) and eigenvectors of a complex Hermitian matrix,
/// using faer's blocked solver for the large Fock-space matrices.
pub fn complex_hermitian_eigen(m: &DMatrix<C64>) -> Result<(Vec<f64>, DMatrix<C64>)> {
    let eig = to_faer(m)
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|e| Error::ConvergenceFailure(format!("Hermitian eigensolver: {e:?}")))?;
    let values: Vec<f64> = eig.S().column_vector().iter().map(|z| z.re).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::ConvergenceFailure("non-finite eigenvalue".into()));
    }
    Ok((values, from_faer(eig.U())))
}

/// Eigenvalues only, ascending.
pub fn complex_hermitian_eigenvalues(m: &DMatrix<C64>) -> Result<Vec<f64>> {
    let values = to_faer(m)
        .self_adjoint_eigenvalues(faer::Side::Lower)
        .map_err(|e| Error::ConvergenceFailure(format!("Hermitian eigensolver: {e:?}")))?;
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::ConvergenceFailure("non-finite eigenvalue".into()));
    }
    Ok(values)
}

/// Singular values of a complex matrix.
pub fn complex_singular_values(m: &DMatrix<C64>) -> Result<Vec<f64>> {
    if m.is_empty() {
        return Ok(Vec::new());
    }
    to_faer(m).singular_values().map_err(|e| Error::ConvergenceFailure(format!("SVD: {e:?}")))
}

/// Orthonormal columns spanning at least the column space of `m` (thin QR).
pub fn orthonormal_basis(m: &DMatrix<C64>) -> DMatrix<C64> {
    let q = to_faer(m).qr().compute_thin_Q();
    from_faer(q.as_ref())
}

/// `V diag(d) V†`.
pub fn unitary_congruence(vectors: &DMatrix<C64>, d: &[C64]) -> DMatrix<C64> {
    let v = to_faer(vectors);
    let scaled = faer::Mat::from_fn(v.nrows(), v.ncols(), |i, j| v[(i, j)] * d[j]);
    let out = &scaled * v.adjoint();
    from_faer(out.as_ref())
}

/// `V f(Λ) V†` for a complex Hermitian matrix.
pub fn hermitian_function(m: &DMatrix<C64>, f: impl Fn(f64) -> C64) -> Result<DMatrix<C64>> {
    let (values, vectors) = complex_hermitian_eigen(m)?;
    let d: Vec<C64> = values.iter().map(|&x| f(x)).collect();
    Ok(unitary_congruence(&vectors, &d))
}

/// Product of complex matrices.
pub fn complex_product(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    let out = to_faer(a) * to_faer(b);
    from_faer(out.as_ref())
}

/// `V f(Λ) Vᵀ` for a real symmetric matrix.
pub fn symmetric_function(m: &DMatrix<f64>, f: impl Fn(f64) -> f64) -> Result<DMatrix<f64>> {
    let eig = hermitian_eigen(m)?;
    let v = &eig.eigenvectors;
    let mut scaled = v.clone();
    for (j, &lambda) in eig.eigenvalues.iter().enumerate() {
        scaled.column_mut(j).scale_mut(f(lambda));
    }
    Ok(symmetrize(&(scaled * v.transpose())))
}

pub fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

pub fn hermitize(m: &DMatrix<C64>) -> DMatrix<C64> {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

pub fn min_eigenvalue(m: &DMatrix<f64>) -> Result<f64> {
    Ok(hermitian_eigen(m)?.eigenvalues.min())
}

/// Log-determinant of a symmetric positive definite matrix via Cholesky.
pub fn logdet_spd(m: &DMatrix<f64>) -> Option<f64> {
    let chol = m.clone().cholesky()?;
    Some(2.0 * chol.l_dirty().diagonal().iter().map(|d| d.ln()).sum::<f64>())
}

pub fn inverse_spd(m: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    Some(symmetrize(&m.clone().cholesky()?.inverse()))
}

/// Largest absolute entry; zero for an empty matrix.
pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

pub fn all_finite(m: &DMatrix<f64>) -> bool {
    m.iter().all(|x| x.is_finite())
}

/// `Tr(A B)` without forming the product.
pub fn trace_of_product(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.component_mul(&b.transpose()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn symmetric_function_square_root() {
        let m = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let root = symmetric_function(&m, f64::sqrt).unwrap();
        assert_relative_eq!(&root * &root, m, epsilon = 1e-13);
    }

    #[test]
    fn logdet_matches_product_of_eigenvalues() {
        let m = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        assert_relative_eq!(logdet_spd(&m).unwrap(), 3f64.ln(), epsilon = 1e-14);
        let indefinite = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert!(logdet_spd(&indefinite).is_none());
    }

    #[test]
    fn trace_of_product_matches_dense() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let b = DMatrix::from_row_slice(2, 2, &[0.5, -1.0, 2.0, 0.25]);
        assert_relative_eq!(trace_of_product(&a, &b), (&a * &b).trace(), epsilon = 1e-14);
    }
}
