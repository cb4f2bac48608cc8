//! Seeded random covariances, states and Fock-buildable builder pairs.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fock::StateBuilder;
use crate::gaussian::GaussianState;
use crate::linalg::symmetrize;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Haar-random unitary on `n` modes, from the QR factorization of a complex
/// Ginibre matrix with the phases of `R` absorbed.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<C64> {
    let g = DMatrix::from_fn(n, n, |_, _| C64::new(normal(rng), normal(rng)));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        q.column_mut(j).apply(|x| *x *= phase);
    }
    q
}

/// Orthogonal symplectic matrix of the passive transformation `a → U a`.
pub fn passive_from_unitary(u: &DMatrix<C64>) -> DMatrix<f64> {
    let n = u.nrows();
    let mut o = DMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        for k in 0..n {
            let (re, im) = (u[(j, k)].re, u[(j, k)].im);
            o[(2 * j, 2 * k)] = re;
            o[(2 * j, 2 * k + 1)] = -im;
            o[(2 * j + 1, 2 * k)] = im;
            o[(2 * j + 1, 2 * k + 1)] = re;
        }
    }
    o
}

pub fn random_passive<R: Rng + ?Sized>(modes: usize, rng: &mut R) -> DMatrix<f64> {
    passive_from_unitary(&random_unitary(modes, rng))
}

/// `O₁ Z O₂` with passive `Oᵢ` and per-mode squeezers `diag(e^{r}, e^{−r})`,
/// `r` uniform in `[0, max_squeeze]`.
pub fn random_symplectic<R: Rng + ?Sized>(modes: usize, max_squeeze: f64, rng: &mut R) -> DMatrix<f64> {
    let o1 = random_passive(modes, rng);
    let o2 = random_passive(modes, rng);
    let z = DVector::from_iterator(
        2 * modes,
        (0..modes).flat_map(|_| {
            let r = rng.random_range(0.0..=max_squeeze);
            [r.exp(), (-r).exp()]
        }).collect::<Vec<_>>(),
    );
    o1 * DMatrix::from_diagonal(&z) * o2
}

/// Sampling ranges for random covariances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceRange {
    pub nu_max: f64,
    pub max_squeeze: f64,
}

impl Default for CovarianceRange {
    fn default() -> Self {
        Self { nu_max: 4.0, max_squeeze: 0.75 }
    }
}

fn random_nu<R: Rng + ?Sized>(modes: usize, nu_max: f64, rng: &mut R) -> DVector<f64> {
    DVector::from_iterator(
        2 * modes,
        (0..modes).flat_map(|_| {
            let nu = rng.random_range(0.5..=nu_max);
            [nu, nu]
        }).collect::<Vec<_>>(),
    )
}

/// `S diag(ν) Sᵀ` with ν uniform in `[1/2, nu_max]` and random symplectic `S`.
pub fn random_covariance<R: Rng + ?Sized>(modes: usize, range: CovarianceRange, rng: &mut R) -> DMatrix<f64> {
    let s = random_symplectic(modes, range.max_squeeze, rng);
    let d = DMatrix::from_diagonal(&random_nu(modes, range.nu_max, rng));
    symmetrize(&(&s * d * s.transpose()))
}

/// A pure covariance `S Sᵀ / 2`.
pub fn random_pure_covariance<R: Rng + ?Sized>(modes: usize, max_squeeze: f64, rng: &mut R) -> DMatrix<f64> {
    let s = random_symplectic(modes, max_squeeze, rng);
    symmetrize(&(&s * s.transpose() * 0.5))
}

/// `O diag(ν) Oᵀ` with passive `O`; commutes with Δ.
pub fn random_gauge_invariant_covariance<R: Rng + ?Sized>(modes: usize, nu_max: f64, rng: &mut R) -> DMatrix<f64> {
    let o = random_passive(modes, rng);
    let d = DMatrix::from_diagonal(&random_nu(modes, nu_max, rng));
    symmetrize(&(&o * d * o.transpose()))
}

/// Standard normal mean vector, shrunk onto the ball of radius 4.
pub fn random_mean<R: Rng + ?Sized>(modes: usize, rng: &mut R) -> DVector<f64> {
    let m = DVector::from_fn(2 * modes, |_, _| normal(rng));
    let norm = m.norm();
    if norm > 4.0 {
        m * (4.0 / norm)
    } else {
        m
    }
}

pub fn random_state<R: Rng + ?Sized>(modes: usize, range: CovarianceRange, rng: &mut R) -> Result<GaussianState> {
    let cov = random_covariance(modes, range, rng);
    GaussianState::new(random_mean(modes, rng), cov)
}

/// Families of random builder pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    General,
    Pure,
    GaugeInvariant,
    ThermalVacuum,
}

impl PairKind {
    pub const ALL: [PairKind; 4] = [PairKind::General, PairKind::Pure, PairKind::GaugeInvariant, PairKind::ThermalVacuum];
}

/// Parameter limits of one random single-mode factor.
#[derive(Debug, Clone, Copy)]
struct FactorRange {
    displacement: f64,
    squeeze: f64,
    nbar: f64,
}

const ONE_MODE: FactorRange = FactorRange { displacement: 1.2, squeeze: 0.5, nbar: 1.0 };
const TWO_MODE: FactorRange = FactorRange { displacement: 0.5, squeeze: 0.3, nbar: 0.5 };

fn random_factor<R: Rng + ?Sized>(kind: PairKind, range: FactorRange, rng: &mut R) -> StateBuilder {
    let angle = |rng: &mut R| rng.random_range(0.0..std::f64::consts::TAU);
    match kind {
        PairKind::General => StateBuilder::DisplacedSqueezedThermal {
            z: C64::from_polar(rng.random_range(0.0..=range.displacement), angle(rng)),
            r: rng.random_range(0.0..=range.squeeze),
            phi: angle(rng),
            nbar: rng.random_range(0.0..=range.nbar),
        },
        PairKind::Pure => StateBuilder::DisplacedSqueezedThermal {
            z: C64::from_polar(rng.random_range(0.0..=range.displacement), angle(rng)),
            r: rng.random_range(0.0..=range.squeeze),
            phi: angle(rng),
            nbar: 0.0,
        },
        PairKind::GaugeInvariant | PairKind::ThermalVacuum => {
            StateBuilder::Thermal { nbar: rng.random_range(0.0..=range.nbar) }
        }
    }
}

fn random_builder<R: Rng + ?Sized>(kind: PairKind, modes: usize, rng: &mut R) -> StateBuilder {
    if modes == 1 {
        return random_factor(kind, ONE_MODE, rng);
    }
    if kind == PairKind::Pure && rng.random_bool(0.5) {
        return StateBuilder::TwoModeSqueezed { r: rng.random_range(0.0..=0.4) };
    }
    StateBuilder::Product { factors: (0..modes).map(|_| random_factor(kind, TWO_MODE, rng)).collect() }
}

/// A random pair of 1- or 2-mode builders of the given family, within the
/// oracle's default truncation budgets.
pub fn random_builder_pair<R: Rng + ?Sized>(kind: PairKind, modes: usize, rng: &mut R) -> (StateBuilder, StateBuilder) {
    let first = random_builder(kind, modes, rng);
    let second = match kind {
        PairKind::ThermalVacuum => StateBuilder::vacuum_of(modes),
        _ => random_builder(kind, modes, rng),
    };
    (first, second)
}

/// `count` pairs cycling through every family, alternating one and two modes.
pub fn random_builder_pairs(seed: u64, count: usize) -> Vec<(StateBuilder, StateBuilder)> {
    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|i| {
            let kind = PairKind::ALL[i % PairKind::ALL.len()];
            let modes = 1 + (i / PairKind::ALL.len()) % 2;
            random_builder_pair(kind, modes, &mut rng)
        })
        .collect()
}
