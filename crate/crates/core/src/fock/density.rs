use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use super::builder::{SingleMode, StateBuilder};
use crate::error::{Error, Result};
use crate::linalg::{complex_product, hermitian_function, hermitize};

/// Default bound on the total Fock dimension `N^s`.
pub const DIM_CAP: usize = 4096;

const ZERO: C64 = C64::new(0.0, 0.0);

/// A density matrix on the number basis truncated at `cutoff` per mode.
///
/// Multimode basis states `|n₁, …, n_s⟩` are indexed with mode 1 most
/// significant. The matrix has unit trace; `trace_deficit` is the weight that
/// fell outside the truncation before renormalization.
#[derive(Debug, Clone, PartialEq)]
pub struct FockDensityMatrix {
    pub modes: usize,
    pub cutoff: usize,
    pub matrix: DMatrix<C64>,
    pub trace_deficit: f64,
}

impl FockDensityMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// Lowering operator on a single mode truncated at `dim`.
pub fn annihilation(dim: usize) -> DMatrix<C64> {
    DMatrix::from_fn(dim, dim, |i, j| if j == i + 1 { C64::new((j as f64).sqrt(), 0.0) } else { ZERO })
}

/// `exp(G)` for an anti-Hermitian `G`, through the eigenbasis of `iG`.
pub fn unitary_exp(generator: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let hermitian = hermitize(&(generator * C64::i()));
    hermitian_function(&hermitian, |lambda| C64::from_polar(1.0, -lambda))
}

/// Displacement `D(z) = exp(z a† − z̄ a)` on a truncated mode.
pub fn displacement(z: C64, dim: usize) -> Result<DMatrix<C64>> {
    let a = annihilation(dim);
    unitary_exp(&(a.adjoint() * z - a * z.conj()))
}

/// Squeezer `exp((ζ̄ a² − ζ a†²)/2)` with `ζ = −r e^{iφ}`, so that positive
/// `r` at `φ = 0` anti-squeezes `q`.
pub fn squeezer(r: f64, phi: f64, dim: usize) -> Result<DMatrix<C64>> {
    let a = annihilation(dim);
    let zeta = C64::from_polar(-r, phi);
    let a2 = &a * &a;
    unitary_exp(&((&a2 * zeta.conj() - a2.adjoint() * zeta) * C64::new(0.5, 0.0)))
}

/// Truncated single-mode state before renormalization.
fn single_mode(p: SingleMode, cutoff: usize) -> Result<DMatrix<C64>> {
    let q = p.nbar / (p.nbar + 1.0);
    if p.r == 0.0 && p.z == ZERO {
        let mut weight = 1.0 / (p.nbar + 1.0);
        let mut diag = DVector::zeros(cutoff);
        for n in 0..cutoff {
            diag[n] = C64::new(weight, 0.0);
            weight *= q;
        }
        return Ok(DMatrix::from_diagonal(&diag));
    }
    // evolve on a padded space, then truncate
    let padded = 2 * cutoff.max(16);
    let mut unitary = DMatrix::identity(padded, padded);
    if p.r != 0.0 {
        unitary = squeezer(p.r, p.phi, padded)?;
    }
    if p.z != ZERO {
        unitary = complex_product(&displacement(p.z, padded)?, &unitary);
    }
    // ρ = W W† with W = U diag(√p_n), keeping columns with non-negligible weight
    let mut columns = Vec::new();
    let mut weight = 1.0 / (p.nbar + 1.0);
    for n in 0..padded {
        if weight < 1e-300 {
            break;
        }
        columns.push(unitary.column(n).rows(0, cutoff) * C64::new(weight.sqrt(), 0.0));
        weight *= q;
    }
    let w = DMatrix::from_columns(&columns);
    Ok(hermitize(&complex_product(&w, &w.adjoint())))
}

fn two_mode_squeezed(r: f64, cutoff: usize) -> DMatrix<C64> {
    let t = r.tanh();
    let mut psi = DVector::zeros(cutoff * cutoff);
    let mut amp = 1.0 / r.cosh();
    for n in 0..cutoff {
        psi[n * cutoff + n] = C64::new(amp, 0.0);
        amp *= t;
    }
    &psi * psi.adjoint()
}

fn unnormalized(builder: &StateBuilder, cutoff: usize) -> Result<DMatrix<C64>> {
    if let Some(p) = builder.single_mode() {
        return single_mode(p, cutoff);
    }
    match builder {
        StateBuilder::TwoModeSqueezed { r } => Ok(two_mode_squeezed(*r, cutoff)),
        StateBuilder::Product { factors } => {
            let mut acc: Option<DMatrix<C64>> = None;
            for f in factors {
                let part = unnormalized(f, cutoff)?;
                acc = Some(match acc {
                    None => part,
                    Some(prev) => prev.kronecker(&part),
                });
            }
            Ok(acc.expect("validated non-empty product"))
        }
        _ => unreachable!("single-mode builders handled above"),
    }
}

pub fn build(builder: &StateBuilder, cutoff: usize) -> Result<FockDensityMatrix> {
    build_with_cap(builder, cutoff, DIM_CAP)
}

pub fn build_with_cap(builder: &StateBuilder, cutoff: usize, cap: usize) -> Result<FockDensityMatrix> {
    builder.validate()?;
    if cutoff < 2 {
        return Err(Error::InvalidBuilder(format!("cutoff must be at least 2, got {cutoff}")));
    }
    let modes = builder.modes();
    let dim = u32::try_from(modes)
        .ok()
        .and_then(|m| cutoff.checked_pow(m))
        .filter(|&d| d <= cap)
        .ok_or(Error::DimCapExceeded { dim: cutoff.saturating_pow(modes.min(64) as u32), cap })?;
    let matrix = unnormalized(builder, cutoff)?;
    debug_assert_eq!(matrix.nrows(), dim);
    let trace = matrix.trace().re;
    let trace_deficit = (1.0 - trace).max(0.0);
    let budget = builder.deficit_budget();
    if !(trace_deficit <= budget) {
        return Err(Error::CutoffTooSmall { cutoff, deficit: trace_deficit, budget });
    }
    Ok(FockDensityMatrix { modes, cutoff, matrix: matrix / C64::new(trace, 0.0), trace_deficit })
}

/// Action of ladder operators on the multimode number basis.
struct Ladder {
    modes: usize,
    cutoff: usize,
}

impl Ladder {
    fn stride(&self, mode: usize) -> usize {
        self.cutoff.pow((self.modes - 1 - mode) as u32)
    }

    fn occupation(&self, index: usize, mode: usize) -> usize {
        (index / self.stride(mode)) % self.cutoff
    }

    fn lower(&self, index: usize, mode: usize) -> Option<(f64, usize)> {
        let n = self.occupation(index, mode);
        (n > 0).then(|| ((n as f64).sqrt(), index - self.stride(mode)))
    }

    fn raise(&self, index: usize, mode: usize) -> Option<(f64, usize)> {
        let n = self.occupation(index, mode);
        (n + 1 < self.cutoff).then(|| (((n + 1) as f64).sqrt(), index + self.stride(mode)))
    }

    /// `Tr(ρ O)` for `O` given by its action `O|i⟩ = c|j⟩`, as `Σᵢ c ρ_{i j}`.
    fn expectation(&self, rho: &DMatrix<C64>, op: impl Fn(usize) -> Option<(f64, usize)>) -> C64 {
        (0..rho.nrows()).filter_map(|i| op(i).map(|(c, j)| rho[(i, j)] * c)).sum()
    }
}

/// Mean and covariance `(1/2)Tr(ρ{R_i − m_i, R_j − m_j})` with
/// `q = (a + a†)/√2`, `p = (a − a†)/(i√2)`.
pub fn extract_moments(rho: &FockDensityMatrix) -> (DVector<f64>, DMatrix<f64>) {
    let s = rho.modes;
    let ladder = Ladder { modes: s, cutoff: rho.cutoff };
    let m = &rho.matrix;
    let first: Vec<C64> = (0..s).map(|k| ladder.expectation(m, |i| ladder.lower(i, k))).collect();
    // A_kl = ⟨a_k a_l⟩, B_kl = ⟨a_k† a_l⟩
    let mut pair = DMatrix::<C64>::zeros(s, s);
    let mut number = DMatrix::<C64>::zeros(s, s);
    for k in 0..s {
        for l in 0..s {
            pair[(k, l)] = ladder.expectation(m, |i| {
                let (c1, j1) = ladder.lower(i, l)?;
                let (c2, j2) = ladder.lower(j1, k)?;
                Some((c1 * c2, j2))
            });
            number[(k, l)] = ladder.expectation(m, |i| {
                let (c1, j1) = ladder.lower(i, l)?;
                let (c2, j2) = ladder.raise(j1, k)?;
                Some((c1 * c2, j2))
            });
        }
    }
    // R_i = u_i a_k + ū_i a_k†, u = 1/√2 for q and −i/√2 for p
    let root_half = 0.5f64.sqrt();
    let coeff = |i: usize| if i.is_multiple_of(2) { C64::new(root_half, 0.0) } else { C64::new(0.0, -root_half) };
    let n = 2 * s;
    let mean = DVector::from_fn(n, |i, _| 2.0 * (coeff(i) * first[i / 2]).re);
    let cov = DMatrix::from_fn(n, n, |i, j| {
        let (k, l) = (i / 2, j / 2);
        let (ui, uj) = (coeff(i), coeff(j));
        let delta = if k == l { 1.0 } else { 0.0 };
        let second = ui * uj * pair[(k, l)]
            + ui * uj.conj() * (number[(l, k)] + delta)
            + ui.conj() * uj * number[(k, l)]
            + ui.conj() * uj.conj() * pair[(k, l)].conj();
        second.re - mean[i] * mean[j]
    });
    (mean, (&cov + cov.transpose()) * 0.5)
}
