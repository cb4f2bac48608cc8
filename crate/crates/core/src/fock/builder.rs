use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::GaussianState;

/// Concrete Gaussian states with a known Fock-space construction.
///
/// Single-mode states are `D(z) S(r, φ) ρ_th(n̄) S† D†`; with this crate's
/// sign convention `S(r, 0)` anti-squeezes `q`, giving covariance
/// `(n̄ + 1/2) diag(e^{2r}, e^{−2r})`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateBuilder {
    Vacuum,
    Coherent {
        z: C64,
    },
    Thermal {
        nbar: f64,
    },
    Squeezed {
        r: f64,
        #[serde(default)]
        phi: f64,
    },
    DisplacedSqueezedThermal {
        #[serde(default)]
        z: C64,
        #[serde(default)]
        r: f64,
        #[serde(default)]
        phi: f64,
        #[serde(default)]
        nbar: f64,
    },
    TwoModeSqueezed {
        r: f64,
    },
    Product {
        factors: Vec<StateBuilder>,
    },
}

/// Parameters `(z, r, φ, n̄)` of a single-mode state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct SingleMode {
    pub z: C64,
    pub r: f64,
    pub phi: f64,
    pub nbar: f64,
}

pub const BUDGET_UNSQUEEZED: f64 = 1e-9;
pub const BUDGET_SQUEEZED: f64 = 1e-7;

impl StateBuilder {
    pub(crate) fn single_mode(&self) -> Option<SingleMode> {
        let zero = C64::new(0.0, 0.0);
        Some(match *self {
            StateBuilder::Vacuum => SingleMode { z: zero, r: 0.0, phi: 0.0, nbar: 0.0 },
            StateBuilder::Coherent { z } => SingleMode { z, r: 0.0, phi: 0.0, nbar: 0.0 },
            StateBuilder::Thermal { nbar } => SingleMode { z: zero, r: 0.0, phi: 0.0, nbar },
            StateBuilder::Squeezed { r, phi } => SingleMode { z: zero, r, phi, nbar: 0.0 },
            StateBuilder::DisplacedSqueezedThermal { z, r, phi, nbar } => SingleMode { z, r, phi, nbar },
            _ => return None,
        })
    }

    pub fn modes(&self) -> usize {
        match self {
            StateBuilder::TwoModeSqueezed { .. } => 2,
            StateBuilder::Product { factors } => factors.iter().map(|f| f.modes()).sum(),
            _ => 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(p) = self.single_mode() {
            if !(p.z.re.is_finite() && p.z.im.is_finite() && p.r.is_finite() && p.phi.is_finite()) {
                return Err(Error::InvalidBuilder("non-finite parameter".into()));
            }
            if !(p.nbar >= 0.0 && p.nbar.is_finite()) {
                return Err(Error::InvalidBuilder(format!("nbar must be finite and >= 0, got {}", p.nbar)));
            }
            return Ok(());
        }
        match self {
            StateBuilder::TwoModeSqueezed { r } if !r.is_finite() => {
                Err(Error::InvalidBuilder("non-finite squeezing".into()))
            }
            StateBuilder::Product { factors } if factors.is_empty() => {
                Err(Error::InvalidBuilder("product needs at least one factor".into()))
            }
            StateBuilder::Product { factors } => factors.iter().try_for_each(|f| f.validate()),
            _ => Ok(()),
        }
    }

    pub fn is_squeezed(&self) -> bool {
        match self {
            StateBuilder::TwoModeSqueezed { r } => *r != 0.0,
            StateBuilder::Product { factors } => factors.iter().any(|f| f.is_squeezed()),
            other => other.single_mode().is_some_and(|p| p.r != 0.0),
        }
    }

    /// Largest truncation deficit accepted when building this state.
    pub fn deficit_budget(&self) -> f64 {
        if self.is_squeezed() {
            BUDGET_SQUEEZED
        } else {
            BUDGET_UNSQUEEZED
        }
    }

    /// Mean and covariance of the exact (untruncated) state.
    pub fn target_moments(&self) -> Result<(DVector<f64>, DMatrix<f64>)> {
        self.validate()?;
        Ok(self.moments_unchecked())
    }

    fn moments_unchecked(&self) -> (DVector<f64>, DMatrix<f64>) {
        if let Some(p) = self.single_mode() {
            let mean = DVector::from_vec(vec![2f64.sqrt() * p.z.re, 2f64.sqrt() * p.z.im]);
            let (c, s) = ((2.0 * p.r).cosh(), (2.0 * p.r).sinh());
            let (cp, sp) = (p.phi.cos(), p.phi.sin());
            let scale = p.nbar + 0.5;
            let cov = DMatrix::from_row_slice(2, 2, &[c + s * cp, s * sp, s * sp, c - s * cp]) * scale;
            return (mean, cov);
        }
        match self {
            StateBuilder::TwoModeSqueezed { r } => {
                let c = (2.0 * r).cosh() / 2.0;
                let s = (2.0 * r).sinh() / 2.0;
                #[rustfmt::skip]
                let cov = DMatrix::from_row_slice(4, 4, &[
                    c, 0.0, s, 0.0,
                    0.0, c, 0.0, -s,
                    s, 0.0, c, 0.0,
                    0.0, -s, 0.0, c,
                ]);
                (DVector::zeros(4), cov)
            }
            StateBuilder::Product { factors } => {
                let n = 2 * self.modes();
                let mut mean = DVector::zeros(n);
                let mut cov = DMatrix::zeros(n, n);
                let mut offset = 0;
                for f in factors {
                    let (m, c) = f.moments_unchecked();
                    let k = m.len();
                    mean.rows_mut(offset, k).copy_from(&m);
                    cov.view_mut((offset, offset), (k, k)).copy_from(&c);
                    offset += k;
                }
                (mean, cov)
            }
            _ => unreachable!("single-mode builders handled above"),
        }
    }

    /// The target moments as a validated Gaussian state.
    pub fn target_state(&self) -> Result<GaussianState> {
        let (mean, cov) = self.target_moments()?;
        GaussianState::new(mean, cov)
    }

    pub fn vacuum_of(modes: usize) -> StateBuilder {
        if modes == 1 {
            StateBuilder::Vacuum
        } else {
            StateBuilder::Product { factors: vec![StateBuilder::Vacuum; modes] }
        }
    }
}
