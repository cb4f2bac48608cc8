use serde::{Deserialize, Serialize};

use super::builder::StateBuilder;
use super::density::{build, extract_moments, FockDensityMatrix};
use super::metrics::{exact_metrics, ExactMetrics};
use crate::bounds::{chain, proposition_bound, thermal_vacuum_bound, BoundReport, ExactDistances, ThermalVacuumBound};
use crate::error::{Error, Result};
use crate::inequality::InequalityCheck;
use crate::tolerance;

/// Largest deviation of the extracted moments from a builder's targets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentError {
    pub mean: f64,
    pub cov: f64,
}

/// Formula values, oracle values and every inequality checked between them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub builders: [StateBuilder; 2],
    pub cutoff: usize,
    pub trace_deficits: [f64; 2],
    pub moment_errors: [MomentError; 2],
    pub bounds: BoundReport,
    pub exact: ExactMetrics,
    pub thermal_vacuum: Option<ThermalVacuumBound>,
    pub checks: Vec<InequalityCheck>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&InequalityCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn ensure_passed(&self) -> Result<()> {
        match self.first_failure() {
            Some(c) => Err(Error::CertificationFailure { tag: c.tag.clone(), margin: c.margin }),
            None => Ok(()),
        }
    }
}

/// Per-mode cutoff used when none is given.
pub fn default_cutoff(modes: usize) -> usize {
    if modes <= 1 {
        60
    } else {
        24
    }
}

/// Cutoffs tried in turn by [`certify_auto`].
pub fn cutoff_ladder(modes: usize) -> &'static [usize] {
    if modes <= 1 {
        &[60, 90, 120]
    } else {
        &[24, 32]
    }
}

fn moment_error(builder: &StateBuilder, rho: &FockDensityMatrix) -> Result<MomentError> {
    let (mean, cov) = builder.target_moments()?;
    let (got_mean, got_cov) = extract_moments(rho);
    Ok(MomentError { mean: (got_mean - mean).norm(), cov: (got_cov - cov).norm() })
}

/// Builds both states, evaluates every closed-form quantity on the target
/// moments and compares against the oracle. Failed rows are reported, not raised.
pub fn certify_report(b1: &StateBuilder, b2: &StateBuilder, cutoff: usize) -> Result<CertificateReport> {
    if b1.modes() != b2.modes() {
        return Err(Error::ModeMismatch(b1.modes(), b2.modes()));
    }
    let (s1, s2) = (b1.target_state()?, b2.target_state()?);
    let (rho1, rho2) = (build(b1, cutoff)?, build(b2, cutoff)?);
    let exact = exact_metrics(&rho1, &rho2)?;
    let bounds = proposition_bound(&s1, &s2)?;
    let pure = s1.classify()?.pure && s2.classify()?.pure;
    let tol = tolerance::TRUNCATION;

    let mut checks = vec![InequalityCheck::agrees(
        "overl",
        "closed-form overlap = Tr sqrt(r1) sqrt(r2)",
        bounds.overlap,
        exact.overlap,
        tol,
    )];
    let exact_distances =
        ExactDistances { trace_norm: Some(exact.trace_distance), fidelity_root: Some(exact.fidelity_root) };
    checks.extend(chain(bounds.overlap, exact_distances, pure)?.checks);
    checks.push(InequalityCheck::at_most("abs", "oracle overlap <= Tr|sqrt(r1) sqrt(r2)|", exact.overlap, exact.fidelity_root, tol));
    checks.push(InequalityCheck::at_most(
        "ineq6",
        "1 - oracle overlap <= (1/4)[mean + Tr delta]",
        1.0 - exact.overlap,
        bounds.one_minus_overlap_bound,
        tol,
    ));
    checks.extend(bounds.closed_form_checks());
    let twice_bures = 2.0 * exact.bures;
    checks.push(InequalityCheck::at_most("basic2", "2 d_B <= 2 sqrt((1/2)[mean + Tr delta])", twice_bures, bounds.trace_norm_bound, tol));
    checks.push(InequalityCheck::at_most(
        "basic2",
        "|r1-r2|_1 <= 2 sqrt((1/2)[mean + Tr delta])",
        exact.trace_distance,
        bounds.trace_norm_bound,
        tol,
    ));
    for special in &bounds.specializations {
        let tag = special.kind.tag();
        checks.push(InequalityCheck::at_most(tag, &format!("2 d_B <= {tag} bound"), twice_bures, special.value, tol));
    }

    let thermal_vacuum = match (s1.is_vacuum(), s2.is_vacuum()) {
        (_, true) => thermal_vacuum_bound(&s1).ok().map(|tv| (tv, exact.lambda_max)),
        (true, false) => thermal_vacuum_bound(&s2).ok().map(|tv| (tv, exact.lambda_max_second)),
        _ => None,
    }
    .map(|(tv, top)| {
        checks.push(InequalityCheck::agrees("three", "det(a + I/2)^(-1/2) = top eigenvalue", tv.lambda0, top, tol));
        checks.push(InequalityCheck::agrees("three", "2(1 - lambda0) = |r1-r2|_1", tv.exact_trace_norm, exact.trace_distance, tol));
        tv
    });

    Ok(CertificateReport {
        builders: [b1.clone(), b2.clone()],
        cutoff,
        trace_deficits: [rho1.trace_deficit, rho2.trace_deficit],
        moment_errors: [moment_error(b1, &rho1)?, moment_error(b2, &rho2)?],
        bounds,
        exact,
        thermal_vacuum,
        checks,
    })
}

/// [`certify_report`], raising the first violated row as an error.
pub fn certify(b1: &StateBuilder, b2: &StateBuilder, cutoff: usize) -> Result<CertificateReport> {
    let report = certify_report(b1, b2, cutoff)?;
    report.ensure_passed()?;
    Ok(report)
}

/// [`certify_report`] at the first cutoff of the ladder that holds both states
/// within their deficit budgets.
pub fn certify_auto(b1: &StateBuilder, b2: &StateBuilder) -> Result<CertificateReport> {
    let ladder = cutoff_ladder(b1.modes());
    let mut last = None;
    for &cutoff in ladder {
        match certify_report(b1, b2, cutoff) {
            Err(e @ Error::CutoffTooSmall { .. }) => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("ladder is non-empty"))
}
