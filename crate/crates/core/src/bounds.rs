//! Closed-form overlap, `Tr δ`, mean term and the distance bounds built on them.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{norms, GaussianState, SymplecticForm};
use crate::hat::{hat, hat_gauge_invariant, HatDecomposition};
use crate::inequality::InequalityCheck;
use crate::linalg::{inverse_spd, logdet_spd, min_eigenvalue, trace_of_product};
use crate::tolerance;

/// `Tr√ρ₁√ρ₂` for two Gaussian states together with its factors.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapResult {
    pub overlap: f64,
    /// `(1/4)(log det α̂ + log det β̂) − (1/2) log det σ`.
    pub log_prefactor: f64,
    /// `(1/4) mᵗσ⁻¹m`.
    pub exponent_term: f64,
    /// `σ = (α̂ + β̂)/2`.
    pub sigma: DMatrix<f64>,
}

fn check_modes(s1: &GaussianState, s2: &GaussianState) -> Result<()> {
    if s1.modes() != s2.modes() {
        return Err(Error::ModeMismatch(s1.modes(), s2.modes()));
    }
    Ok(())
}

fn check_covs(cov1: &DMatrix<f64>, cov2: &DMatrix<f64>) -> Result<()> {
    if cov1.shape() != cov2.shape() {
        return Err(Error::ModeMismatch(cov1.nrows() / 2, cov2.nrows() / 2));
    }
    Ok(())
}

/// Hatted σ and its Cholesky-based inverse.
fn sigma_of(h1: &HatDecomposition, h2: &HatDecomposition) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let sigma = (&h1.hat + &h2.hat) * 0.5;
    let inv = inverse_spd(&sigma).ok_or(Error::SigmaNotPd)?;
    Ok((sigma, inv))
}

fn overlap_from_hats(m: &DVector<f64>, h1: &HatDecomposition, h2: &HatDecomposition) -> Result<OverlapResult> {
    let (sigma, sigma_inv) = sigma_of(h1, h2)?;
    let logdet = |a: &DMatrix<f64>| logdet_spd(a).ok_or(Error::SigmaNotPd);
    let log_prefactor = 0.25 * (logdet(&h1.hat)? + logdet(&h2.hat)?) - 0.5 * logdet(&sigma)?;
    let exponent_term = 0.25 * m.dot(&(&sigma_inv * m));
    // the prefactor is at most 1 by the determinant AM-GM inequality; clip rounding
    let overlap = (log_prefactor.min(0.0) - exponent_term).exp();
    Ok(OverlapResult { overlap, log_prefactor, exponent_term, sigma })
}

/// Closed-form overlap of two Gaussian states, evaluated in log space.
pub fn overlap(s1: &GaussianState, s2: &GaussianState) -> Result<OverlapResult> {
    check_modes(s1, s2)?;
    let m = s1.mean() - s2.mean();
    overlap_from_hats(&m, &hat(s1.cov())?, &hat(s2.cov())?)
}

/// `Tr δ(α, β)` by its definition and by the commutation-matrix identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceDelta {
    pub value: f64,
    /// `(1/4) Tr (α̂ − β̂)(β̂⁻¹ − α̂⁻¹)`.
    pub via_definition: f64,
    /// `Tr[(α − β)Δ⁻¹]² − Tr[(αΥ_α − βΥ_β)Δ⁻¹]²`.
    pub via_identity: f64,
}

impl TraceDelta {
    /// `|via_definition − via_identity| / max(1, |value|)`.
    pub fn identity_gap(&self) -> f64 {
        (self.via_definition - self.via_identity).abs() / self.value.abs().max(1.0)
    }
}

fn trace_delta_from_hats(
    cov1: &DMatrix<f64>,
    h1: &HatDecomposition,
    cov2: &DMatrix<f64>,
    h2: &HatDecomposition,
) -> Result<TraceDelta> {
    let inv1 = inverse_spd(&h1.hat).ok_or(Error::NotPositiveDefinite("hat matrix"))?;
    let inv2 = inverse_spd(&h2.hat).ok_or(Error::NotPositiveDefinite("hat matrix"))?;
    let via_definition = 0.25 * trace_of_product(&(&h1.hat - &h2.hat), &(inv2 - inv1));

    let form = SymplecticForm::new(cov1.nrows() / 2)?;
    let delta_inv = form.inverse();
    let linear = (cov1 - cov2) * &delta_inv;
    let nonlinear = (&h1.cov_upsilon - &h2.cov_upsilon) * &delta_inv;
    let via_identity = trace_of_product(&linear, &linear) - trace_of_product(&nonlinear, &nonlinear);
    Ok(TraceDelta { value: via_definition, via_definition, via_identity })
}

pub fn trace_delta(cov1: &DMatrix<f64>, cov2: &DMatrix<f64>) -> Result<TraceDelta> {
    check_covs(cov1, cov2)?;
    trace_delta_from_hats(cov1, &hat(cov1)?, cov2, &hat(cov2)?)
}

fn trace_delta_upper_from_hats(
    cov1: &DMatrix<f64>,
    h1: &HatDecomposition,
    cov2: &DMatrix<f64>,
    h2: &HatDecomposition,
) -> f64 {
    (cov1 - cov2).norm_squared() + (&h1.cov_upsilon - &h2.cov_upsilon).norm_squared()
}

/// `‖α − β‖₂² + ‖αΥ_α − βΥ_β‖₂²`, an upper bound on `Tr δ`.
pub fn trace_delta_upper(cov1: &DMatrix<f64>, cov2: &DMatrix<f64>) -> Result<f64> {
    check_covs(cov1, cov2)?;
    Ok(trace_delta_upper_from_hats(cov1, &hat(cov1)?, cov2, &hat(cov2)?))
}

/// `Tr δ` for covariances commuting with Δ:
/// `−‖α − β‖₂² + ‖√(α² − I/4) − √(β² − I/4)‖₂²`.
pub fn trace_delta_gauge_invariant(cov1: &DMatrix<f64>, cov2: &DMatrix<f64>) -> Result<f64> {
    check_covs(cov1, cov2)?;
    let roots = hat_gauge_invariant(cov1)? - hat_gauge_invariant(cov2)?;
    Ok(roots.norm_squared() - (cov1 - cov2).norm_squared())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanTerm {
    /// `mᵗσ⁻¹m` with `σ = (α̂ + β̂)/2`.
    pub value: f64,
    /// `2(‖α‖ + ‖β‖)‖m‖₂²`.
    pub bound: f64,
    /// `mᵗ[(α + β)/2]⁻¹m`, the literal un-hatted reading.
    pub unhatted: f64,
}

fn mean_term_from_hats(
    m: &DVector<f64>,
    cov1: &DMatrix<f64>,
    h1: &HatDecomposition,
    cov2: &DMatrix<f64>,
    h2: &HatDecomposition,
) -> Result<MeanTerm> {
    let (_, sigma_inv) = sigma_of(h1, h2)?;
    let value = m.dot(&(sigma_inv * m));
    let plain_inv = inverse_spd(&((cov1 + cov2) * 0.5)).ok_or(Error::NotPositiveDefinite("(α + β)/2"))?;
    let unhatted = m.dot(&(plain_inv * m));
    let bound = 2.0 * (norms(cov1)?.op_norm + norms(cov2)?.op_norm) * m.norm_squared();
    Ok(MeanTerm { value, bound, unhatted })
}

pub fn mean_term(m: &DVector<f64>, cov1: &DMatrix<f64>, cov2: &DMatrix<f64>) -> Result<MeanTerm> {
    check_covs(cov1, cov2)?;
    if m.len() != cov1.nrows() {
        return Err(Error::DimensionMismatch(format!("mean difference has length {}", m.len())));
    }
    mean_term_from_hats(m, cov1, &hat(cov1)?, cov2, &hat(cov2)?)
}

/// Which special-case bound applies to a pair of states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Specialization {
    /// Both states pure.
    Pure,
    /// Both states gauge invariant.
    GaugeInvariant,
    /// A gauge-invariant thermal-like state against the vacuum.
    ThermalVacuum,
}

impl Specialization {
    pub fn tag(self) -> &'static str {
        match self {
            Specialization::Pure => "E1",
            Specialization::GaugeInvariant => "E2",
            Specialization::ThermalVacuum => "three",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpecializedBound {
    pub kind: Specialization,
    /// Upper bound on `2 d_B`.
    pub value: f64,
}

/// Every term of the general bound, plus whichever specializations apply.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub overlap: f64,
    pub log_prefactor: f64,
    pub exponent_term: f64,
    pub trace_delta: TraceDelta,
    pub trace_delta_upper: f64,
    pub mean_term: MeanTerm,
    /// `(1/4)[mᵗσ⁻¹m + Tr δ]`, an upper bound on `1 − overlap`.
    pub one_minus_overlap_bound: f64,
    /// `√((1/2)[mᵗσ⁻¹m + Tr δ])`, an upper bound on `d_B`.
    pub bures_bound: f64,
    /// `2 · bures_bound`, an upper bound on `‖ρ₁ − ρ₂‖₁`.
    pub trace_norm_bound: f64,
    /// Applicable specializations, most specific first.
    pub specializations: Vec<SpecializedBound>,
}

impl BoundReport {
    /// The most specific applicable specialization.
    pub fn specialized_bound(&self) -> Option<SpecializedBound> {
        self.specializations.first().copied()
    }

    pub fn which_specialization(&self) -> Option<Specialization> {
        self.specialized_bound().map(|b| b.kind)
    }

    pub fn specialization(&self, kind: Specialization) -> Option<f64> {
        self.specializations.iter().find(|b| b.kind == kind).map(|b| b.value)
    }

    /// Internal consistency rows that need no exact reference values.
    pub fn closed_form_checks(&self) -> Vec<InequalityCheck> {
        let td = &self.trace_delta;
        let mt = &self.mean_term;
        vec![
            InequalityCheck::agrees(
                "ea-eb",
                "Tr delta by definition = Tr delta by identity",
                td.via_definition,
                td.via_identity,
                tolerance::IDENTITY * td.value.abs().max(1.0),
            ),
            InequalityCheck::at_most("ec", "Tr delta <= |a-b|_2^2 + |aU_a - bU_b|_2^2", td.value, self.trace_delta_upper, tolerance::REL * self.trace_delta_upper.max(1.0)),
            InequalityCheck::at_most("ea", "0 <= Tr delta", 0.0, td.value, tolerance::PSD),
            InequalityCheck::at_most("mean", "m' sigma^-1 m <= 2(|a|+|b|)|m|^2", mt.value, mt.bound, tolerance::REL * mt.bound.max(1.0)),
            InequalityCheck::at_most("mean", "m' sigma(hat)^-1 m <= m' sigma^-1 m", mt.value, mt.unhatted, tolerance::REL * mt.unhatted.max(1.0)),
            InequalityCheck::at_most("ineq6", "1 - overlap <= (1/4)[mean + Tr delta]", 1.0 - self.overlap, self.one_minus_overlap_bound, tolerance::REL),
        ]
    }
}

fn operator_norm(cov: &DMatrix<f64>) -> Result<f64> {
    Ok(norms(cov)?.op_norm)
}

fn pure_bound_unchecked(s1: &GaussianState, s2: &GaussianState) -> Result<f64> {
    let m = s1.mean() - s2.mean();
    let value = 2.0 * (operator_norm(s1.cov())? + operator_norm(s2.cov())?) * m.norm_squared()
        + (s1.cov() - s2.cov()).norm_squared();
    Ok(value.sqrt())
}

fn gauge_invariant_bound_unchecked(s1: &GaussianState, s2: &GaussianState) -> Result<f64> {
    let diff = norms(&(s1.cov() - s2.cov()))?;
    let operand = 2.0
        * ((operator_norm(s1.cov())? + operator_norm(s2.cov())?) * diff.trace_norm - diff.hs_norm * diff.hs_norm);
    Ok(operand.max(0.0).sqrt())
}

/// The general bound with every intermediate term.
pub fn proposition_bound(s1: &GaussianState, s2: &GaussianState) -> Result<BoundReport> {
    check_modes(s1, s2)?;
    let (h1, h2) = (hat(s1.cov())?, hat(s2.cov())?);
    let m = s1.mean() - s2.mean();
    let ov = overlap_from_hats(&m, &h1, &h2)?;
    let trace_delta = trace_delta_from_hats(s1.cov(), &h1, s2.cov(), &h2)?;
    let trace_delta_upper = trace_delta_upper_from_hats(s1.cov(), &h1, s2.cov(), &h2);
    let mean_term = mean_term_from_hats(&m, s1.cov(), &h1, s2.cov(), &h2)?;
    let total = mean_term.value + trace_delta.value;
    let bures_bound = (0.5 * total).max(0.0).sqrt();

    let (c1, c2) = (s1.classify()?, s2.classify()?);
    let mut specializations = Vec::new();
    let thermal_partner = match (s1.is_vacuum(), s2.is_vacuum()) {
        (_, true) => Some(s1),
        (true, false) => Some(s2),
        _ => None,
    };
    if let Some(other) = thermal_partner {
        if let Ok(tv) = thermal_vacuum_bound(other) {
            specializations.push(SpecializedBound { kind: Specialization::ThermalVacuum, value: tv.bound });
        }
    }
    if c1.gauge_invariant && c2.gauge_invariant {
        specializations.push(SpecializedBound {
            kind: Specialization::GaugeInvariant,
            value: gauge_invariant_bound_unchecked(s1, s2)?,
        });
    }
    if c1.pure && c2.pure {
        specializations.push(SpecializedBound { kind: Specialization::Pure, value: pure_bound_unchecked(s1, s2)? });
    }

    Ok(BoundReport {
        overlap: ov.overlap,
        log_prefactor: ov.log_prefactor,
        exponent_term: ov.exponent_term,
        trace_delta,
        trace_delta_upper,
        mean_term,
        one_minus_overlap_bound: 0.25 * total,
        bures_bound,
        trace_norm_bound: 2.0 * bures_bound,
        specializations,
    })
}

/// Bound on `2 d_B` for two pure states:
/// `√(2(‖α‖ + ‖β‖)‖m₁ − m₂‖₂² + ‖α − β‖₂²)`.
pub fn pure_bound(s1: &GaussianState, s2: &GaussianState) -> Result<f64> {
    check_modes(s1, s2)?;
    for (i, s) in [s1, s2].into_iter().enumerate() {
        if !s.classify()?.pure {
            return Err(Error::NotPure(i + 1));
        }
    }
    pure_bound_unchecked(s1, s2)
}

/// Bound on `2 d_B` for two gauge-invariant states:
/// `√(2[(‖α‖ + ‖β‖)‖α − β‖₁ − ‖α − β‖₂²])`.
pub fn gauge_invariant_bound(s1: &GaussianState, s2: &GaussianState) -> Result<f64> {
    check_modes(s1, s2)?;
    for (i, s) in [s1, s2].into_iter().enumerate() {
        if !s.classify()?.gauge_invariant {
            return Err(Error::NotGaugeInvariant(i + 1));
        }
    }
    gauge_invariant_bound_unchecked(s1, s2)
}

/// A thermal-like state against the vacuum: the bound and the exact values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalVacuumBound {
    /// `‖α − I/2‖₁ = Tr(α − I/2)`.
    pub cov_trace_distance: f64,
    /// `√(2‖α − β‖₁)`, an upper bound on `2 d_B`.
    pub bound: f64,
    /// Largest eigenvalue of the state, `det(α + I/2)^{-1/2}`.
    pub lambda0: f64,
    /// `2(1 − λ₀)`.
    pub exact_trace_norm: f64,
    /// `√(2(1 − √λ₀))`.
    pub exact_bures: f64,
}

pub fn thermal_vacuum_bound(state: &GaussianState) -> Result<ThermalVacuumBound> {
    if !state.classify()?.gauge_invariant {
        return Err(Error::NotGaugeInvariant(1));
    }
    let n = state.cov().nrows();
    let excess = state.cov() - DMatrix::identity(n, n) * 0.5;
    let lowest = min_eigenvalue(&excess)?;
    if !(lowest >= -tolerance::PSD) {
        return Err(Error::NotThermalLike(lowest));
    }
    let cov_trace_distance = excess.trace().max(0.0);
    let shifted = state.cov() + DMatrix::identity(n, n) * 0.5;
    let logdet = logdet_spd(&shifted).ok_or(Error::NotPositiveDefinite("α + I/2"))?;
    let lambda0 = (-0.5 * logdet).exp().min(1.0);
    Ok(ThermalVacuumBound {
        cov_trace_distance,
        bound: (2.0 * cov_trace_distance).sqrt(),
        lambda0,
        exact_trace_norm: 2.0 * (1.0 - lambda0),
        exact_bures: (2.0 * (1.0 - lambda0.sqrt())).max(0.0).sqrt(),
    })
}

/// Exact reference values, when known, to test the overlap chains against.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ExactDistances {
    pub trace_norm: Option<f64>,
    pub fidelity_root: Option<f64>,
}

/// Distances implied by an overlap value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceChain {
    pub overlap: f64,
    /// `Tr|√ρ₁√ρ₂|`: supplied, or `√overlap` for pure states.
    pub fidelity_root: Option<f64>,
    /// `d_B = √(2(1 − Tr|√ρ₁√ρ₂|))` when the fidelity root is known.
    pub bures: Option<f64>,
    /// `√(2(1 − overlap))`, an upper bound on `d_B`.
    pub bures_upper: f64,
    /// `2(1 − overlap)`.
    pub trace_lower: f64,
    /// `2√(1 − overlap²)`.
    pub trace_upper: f64,
    /// Exact pure-state trace norm `2√(1 − overlap)`.
    pub pure_trace_norm: Option<f64>,
    /// Exact pure-state Bures distance `√(2(1 − √overlap))`.
    pub pure_bures: Option<f64>,
    pub checks: Vec<InequalityCheck>,
}

/// Chains overlap → trace-norm and Bures bounds; checks them against any
/// exact values supplied, with `tolerance::TRUNCATION` slack.
pub fn chain(overlap: f64, exact: ExactDistances, pure: bool) -> Result<DistanceChain> {
    if !(overlap > 0.0 && overlap <= 1.0 + tolerance::REL) {
        return Err(Error::OverlapOutOfRange(overlap));
    }
    let ov = overlap.min(1.0);
    let tol = tolerance::TRUNCATION;
    let trace_lower = 2.0 * (1.0 - ov);
    let trace_upper = 2.0 * (1.0 - ov * ov).sqrt();
    let bures_upper = (2.0 * (1.0 - ov)).sqrt();
    let pure_trace_norm = pure.then(|| 2.0 * (1.0 - ov).sqrt());
    let pure_bures = pure.then(|| (2.0 * (1.0 - ov.sqrt())).max(0.0).sqrt());
    let fidelity_root = exact.fidelity_root.or(pure.then(|| ov.sqrt()));
    let bures = fidelity_root.map(|f| (2.0 * (1.0 - f)).max(0.0).sqrt());

    let mut checks = Vec::new();
    if let Some(t) = exact.trace_norm {
        checks.push(InequalityCheck::at_most("basic", "2(1 - overlap) <= |r1-r2|_1", trace_lower, t, tol));
        checks.push(InequalityCheck::at_most("basic", "|r1-r2|_1 <= 2 sqrt(1 - overlap^2)", t, trace_upper, tol));
        if let Some(p) = pure_trace_norm {
            checks.push(InequalityCheck::agrees("basic3", "|r1-r2|_1 = 2 sqrt(1 - overlap)", t, p, tol));
        }
    }
    if let Some(f) = exact.fidelity_root {
        let d = (2.0 * (1.0 - f)).max(0.0).sqrt();
        checks.push(InequalityCheck::at_most("abs", "overlap <= Tr|sqrt(r1) sqrt(r2)|", ov, f, tol));
        checks.push(InequalityCheck::at_most("bur", "d_B <= sqrt(2(1 - overlap))", d, bures_upper, tol));
        if let Some(p) = pure_bures {
            checks.push(InequalityCheck::agrees("basic5", "d_B = sqrt(2(1 - sqrt(overlap)))", d, p, tol));
        }
        if let Some(t) = exact.trace_norm {
            checks.push(InequalityCheck::at_most("fdg", "2(1 - F) <= |r1-r2|_1", 2.0 * (1.0 - f), t, tol));
            checks.push(InequalityCheck::at_most("fdg", "|r1-r2|_1 <= 2 sqrt(1 - F^2)", t, 2.0 * (1.0 - f * f).max(0.0).sqrt(), tol));
            checks.push(InequalityCheck::at_most("tnb", "d_B^2 <= |r1-r2|_1", d * d, t, tol));
            checks.push(InequalityCheck::at_most("tnb", "|r1-r2|_1 <= 2 d_B", t, 2.0 * d, tol));
        }
    }
    Ok(DistanceChain {
        overlap: ov,
        fidelity_root,
        bures,
        bures_upper,
        trace_lower,
        trace_upper,
        pure_trace_norm,
        pure_bures,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{E, SQRT_2};

    fn state(mean: &[f64], diag: &[f64]) -> GaussianState {
        GaussianState::new(DVector::from_row_slice(mean), DMatrix::from_diagonal(&DVector::from_row_slice(diag))).unwrap()
    }

    fn vacuum() -> GaussianState {
        GaussianState::vacuum(1).unwrap()
    }

    fn thermal() -> GaussianState {
        state(&[0.0, 0.0], &[2.5, 2.5])
    }

    fn coherent() -> GaussianState {
        state(&[SQRT_2, 0.0], &[0.5, 0.5])
    }

    fn squeezed(mean: &[f64]) -> GaussianState {
        state(mean, &[E / 2.0, 1.0 / (2.0 * E)])
    }

    #[test]
    fn overlap_examples() {
        assert_relative_eq!(overlap(&thermal(), &thermal()).unwrap().overlap, 1.0, epsilon = 1e-14);
        assert_relative_eq!(overlap(&coherent(), &vacuum()).unwrap().overlap, (-1.0f64).exp(), epsilon = 1e-14);
        // √λ₀ with λ₀ = det(3 I)^{-1/2} = 1/3
        assert_relative_eq!(overlap(&thermal(), &vacuum()).unwrap().overlap, 1.0 / 3f64.sqrt(), epsilon = 1e-14);
        assert_relative_eq!(overlap(&squeezed(&[0.0, 0.0]), &vacuum()).unwrap().overlap, 1.0 / 0.5f64.cosh(), epsilon = 1e-14);
        assert!(matches!(overlap(&vacuum(), &GaussianState::vacuum(2).unwrap()), Err(Error::ModeMismatch(1, 2))));
    }

    #[test]
    fn coherent_exponent_convention() {
        for z in [0.5f64, 1.0, 2.0] {
            let c = state(&[SQRT_2 * z, 0.0], &[0.5, 0.5]);
            assert_relative_eq!(overlap(&c, &vacuum()).unwrap().overlap, (-z * z).exp(), epsilon = 1e-10);
        }
    }

    #[test]
    fn trace_delta_examples() {
        assert_eq!(trace_delta(thermal().cov(), thermal().cov()).unwrap().value.abs(), 0.0);
        let tv = trace_delta(thermal().cov(), vacuum().cov()).unwrap();
        assert_relative_eq!(tv.value, 4.0, epsilon = 1e-12);
        assert_relative_eq!(tv.via_identity, 4.0, epsilon = 1e-12);
        // both pure: (1/4) Σ (a_i − b_i)² / (a_i b_i) over the diagonal
        let expected: f64 = [E / 2.0, 1.0 / (2.0 * E)].iter().map(|a| (a - 0.5).powi(2) / (a * 0.5)).sum::<f64>() / 4.0;
        let sv = trace_delta(squeezed(&[0.0, 0.0]).cov(), vacuum().cov()).unwrap();
        assert_relative_eq!(sv.value, expected, epsilon = 1e-13);
        assert_relative_eq!(sv.value, 0.543081, epsilon = 1e-6);
        assert!(sv.identity_gap() < 1e-13);
    }

    #[test]
    fn trace_delta_upper_examples() {
        assert_eq!(trace_delta_upper(thermal().cov(), thermal().cov()).unwrap(), 0.0);
        let sq = squeezed(&[0.0, 0.0]);
        assert_relative_eq!(
            trace_delta_upper(sq.cov(), vacuum().cov()).unwrap(),
            (sq.cov() - vacuum().cov()).norm_squared(),
            epsilon = 1e-14
        );
        assert_relative_eq!(trace_delta_upper(thermal().cov(), vacuum().cov()).unwrap(), 20.0, epsilon = 1e-12);
    }

    #[test]
    fn gauge_invariant_trace_delta_matches_identity() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![2.5, 2.5, 1.5, 1.5]));
        let b = DMatrix::from_diagonal(&DVector::from_vec(vec![0.7, 0.7, 3.0, 3.0]));
        let td = trace_delta(&a, &b).unwrap();
        assert_relative_eq!(trace_delta_gauge_invariant(&a, &b).unwrap(), td.via_identity, epsilon = 1e-12);
    }

    #[test]
    fn mean_term_examples() {
        let z = mean_term(&DVector::zeros(2), thermal().cov(), vacuum().cov()).unwrap();
        assert_eq!((z.value, z.bound), (0.0, 0.0));
        let c = mean_term(&DVector::from_vec(vec![SQRT_2, 0.0]), vacuum().cov(), vacuum().cov()).unwrap();
        assert_relative_eq!(c.value, 4.0, epsilon = 1e-13);
        assert_relative_eq!(c.bound, 4.0, epsilon = 1e-13);
        let sq = squeezed(&[0.0, 0.0]);
        let s = mean_term(&DVector::from_vec(vec![0.0, 1.0]), sq.cov(), sq.cov()).unwrap();
        assert_relative_eq!(s.value, 2.0 * E, epsilon = 1e-12);
        assert_relative_eq!(s.bound, 2.0 * E, epsilon = 1e-12);
    }

    #[test]
    fn proposition_examples() {
        let same = proposition_bound(&thermal(), &thermal()).unwrap();
        assert!(same.bures_bound.abs() < 1e-7 && same.trace_norm_bound.abs() < 2e-7);
        assert!(same.one_minus_overlap_bound.abs() < 1e-14);

        let tv = proposition_bound(&thermal(), &vacuum()).unwrap();
        assert_relative_eq!(tv.bures_bound, SQRT_2, epsilon = 1e-12);
        assert_relative_eq!(tv.trace_norm_bound, 2.0 * SQRT_2, epsilon = 1e-12);
        assert_eq!(tv.which_specialization(), Some(Specialization::ThermalVacuum));
        assert_relative_eq!(tv.specialized_bound().unwrap().value, 8f64.sqrt(), epsilon = 1e-12);
        assert_relative_eq!(tv.specialization(Specialization::GaugeInvariant).unwrap(), 8f64.sqrt(), epsilon = 1e-12);
        // exact 2 d_B from λ₀ = 1/3 and the pure-partner expression
        let exact = 2.0 * (2.0 * (1.0 - (1.0f64 / 3.0).sqrt())).sqrt();
        assert_relative_eq!(exact, 1.838803, epsilon = 1e-6);
        assert!(exact <= tv.trace_norm_bound);

        let cv = proposition_bound(&coherent(), &vacuum()).unwrap();
        assert_relative_eq!(cv.bures_bound, SQRT_2, epsilon = 1e-12);
        assert_relative_eq!(cv.mean_term.value, 4.0, epsilon = 1e-12);
        assert!(cv.trace_delta.value.abs() < 1e-14);
        assert_eq!(cv.which_specialization(), Some(Specialization::Pure));
        let exact = 2.0 * (2.0 * (1.0 - (-0.5f64).exp())).sqrt();
        assert_relative_eq!(exact, 1.774191, epsilon = 1e-6);
        assert!(cv.closed_form_checks().iter().all(|c| c.passed));
    }

    #[test]
    fn pure_bound_examples() {
        assert_eq!(pure_bound(&coherent(), &coherent()).unwrap(), 0.0);
        assert_relative_eq!(pure_bound(&coherent(), &vacuum()).unwrap(), 2.0, epsilon = 1e-13);
        let sq = pure_bound(&squeezed(&[0.0, 0.0]), &vacuum()).unwrap();
        let diff2 = (E / 2.0 - 0.5).powi(2) + (1.0 / (2.0 * E) - 0.5).powi(2);
        assert_relative_eq!(sq, diff2.sqrt(), epsilon = 1e-13);
        assert_relative_eq!(sq, 0.915433, epsilon = 1e-6);
        assert_eq!(pure_bound(&thermal(), &vacuum()), Err(Error::NotPure(1)));
    }

    #[test]
    fn gauge_invariant_bound_examples() {
        assert_eq!(gauge_invariant_bound(&thermal(), &thermal()).unwrap(), 0.0);
        assert_relative_eq!(gauge_invariant_bound(&thermal(), &vacuum()).unwrap(), 8f64.sqrt(), epsilon = 1e-12);
        let two = state(&[0.0; 4], &[2.5, 2.5, 1.5, 1.5]);
        let vac2 = GaussianState::vacuum(2).unwrap();
        // ‖α − β‖₁ = 6, ‖α − β‖₂² = 10, ‖α‖ + ‖β‖ = 3
        assert_relative_eq!(gauge_invariant_bound(&two, &vac2).unwrap(), 4.0, epsilon = 1e-12);
        assert_eq!(gauge_invariant_bound(&coherent(), &vacuum()), Err(Error::NotGaugeInvariant(1)));
    }

    #[test]
    fn thermal_vacuum_examples() {
        let v = thermal_vacuum_bound(&vacuum()).unwrap();
        assert_eq!((v.bound, v.lambda0), (0.0, 1.0));
        let t = thermal_vacuum_bound(&thermal()).unwrap();
        assert_relative_eq!(t.lambda0, 1.0 / 3.0, epsilon = 1e-14);
        assert_relative_eq!(t.bound, 8f64.sqrt(), epsilon = 1e-14);
        assert_relative_eq!(t.exact_trace_norm, 4.0 / 3.0, epsilon = 1e-14);
        assert_relative_eq!(2.0 * t.exact_bures, 1.838803, epsilon = 1e-6);
        assert!(t.exact_trace_norm <= 2.0 * t.exact_bures && 2.0 * t.exact_bures <= t.bound);

        let eps = 1e-3;
        let near = state(&[0.0, 0.0], &[0.5 + eps, 0.5 + eps]);
        let n = thermal_vacuum_bound(&near).unwrap();
        // λ₀ = 1/(1 + t) exactly, so the ratio is √(2(1 − (1+t)^{-1/2}) / t)
        let exact_ratio = (2.0 * (1.0 - (1.0 + eps).powf(-0.5)) / eps).sqrt();
        assert_relative_eq!(2.0 * n.exact_bures / n.bound, exact_ratio, epsilon = 1e-9);
        assert_relative_eq!(exact_ratio, 1.0 - 3.0 * eps / 8.0, epsilon = 1e-6);

        assert!(matches!(thermal_vacuum_bound(&squeezed(&[0.0, 0.0])), Err(Error::NotGaugeInvariant(1))));
        let two_mode = state(&[0.0, 0.0, 0.0, 0.0], &[0.5, 0.5, 0.6, 0.6]);
        assert!(thermal_vacuum_bound(&two_mode).is_ok());
    }

    #[test]
    fn chain_examples() {
        let one = chain(1.0, ExactDistances::default(), true).unwrap();
        assert_eq!((one.trace_lower, one.trace_upper, one.bures_upper), (0.0, 0.0, 0.0));
        assert_eq!(one.pure_bures, Some(0.0));

        let e = (-1.0f64).exp();
        let pure = chain(e, ExactDistances::default(), true).unwrap();
        assert_relative_eq!(pure.pure_trace_norm.unwrap(), 1.590121, epsilon = 1e-6);
        assert_relative_eq!(pure.pure_bures.unwrap(), 0.887096, epsilon = 1e-6);

        let ov = 1.0 / 3f64.sqrt();
        let exact = ExactDistances { trace_norm: Some(4.0 / 3.0), fidelity_root: Some(ov) };
        let mixed = chain(ov, exact, false).unwrap();
        assert_relative_eq!(mixed.trace_lower, 0.845299, epsilon = 1e-6);
        assert_relative_eq!(mixed.trace_upper, 1.632993, epsilon = 1e-6);
        assert!(!mixed.checks.is_empty() && mixed.checks.iter().all(|c| c.passed));

        assert!(matches!(chain(0.0, ExactDistances::default(), false), Err(Error::OverlapOutOfRange(_))));
        assert!(matches!(chain(1.5, ExactDistances::default(), false), Err(Error::OverlapOutOfRange(_))));
    }

    #[test]
    fn chain_flags_violations() {
        let bad = ExactDistances { trace_norm: Some(1.99), fidelity_root: None };
        let c = chain(0.99, bad, false).unwrap();
        assert!(c.checks.iter().any(|c| !c.passed));
    }
}
