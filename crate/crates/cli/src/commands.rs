//! The four subcommands. Each returns a finished [`Report`] or a [`CliError`].

use std::path::Path;

use gaussdist::bounds::proposition_bound;
use gaussdist::document::{parse_document_bytes, StateDocument, StateSpec};
use gaussdist::fock::{build, certify_auto, certify_report, default_cutoff, exact_metrics, CertificateReport, StateBuilder};
use gaussdist::inequality::InequalityCheck;
use rayon::prelude::*;

use crate::error::CliError;
use crate::report::{BoundSection, CaseReport, ExactSection, Report};
use crate::suites::{canonical_pairs, random_pairs, LabeledPair, ASYMPTOTIC_GRID};
use crate::sweep::{sweep, sweep_row, Family};

pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_COUNT: usize = 50;

/// Reads a state document from a path, or from stdin when the path is `-`.
pub fn read_document(path: &Path) -> Result<StateDocument, CliError> {
    let bytes = if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::Read::read_to_end(&mut std::io::stdin(), &mut buf)?;
        buf
    } else {
        std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
    };
    Ok(parse_document_bytes(&bytes)?)
}

pub fn cmd_bounds(doc: &StateDocument) -> Result<Report, CliError> {
    let (s1, s2) = doc.to_states()?;
    let breakdown = proposition_bound(&s1, &s2)?;
    let mut report = Report::new("bounds");
    report.inputs = doc.states.to_vec();
    report.checks = breakdown.closed_form_checks();
    report.bounds = Some(BoundSection::new([s1.classify()?, s2.classify()?], breakdown));
    report.update_passed();
    Ok(report)
}

fn builders(doc: &StateDocument) -> Result<[&StateBuilder; 2], CliError> {
    let pick = |i: usize| match &doc.states[i] {
        StateSpec::Builder(b) => Ok(b),
        StateSpec::Explicit(_) => Err(CliError::ExplicitState(i + 1)),
    };
    Ok([pick(0)?, pick(1)?])
}

pub fn cmd_exact(doc: &StateDocument, cutoff: Option<usize>) -> Result<Report, CliError> {
    let [b1, b2] = builders(doc)?;
    // validates both states and the mode match before any Fock build
    doc.to_states()?;
    let cutoff = cutoff.unwrap_or_else(|| default_cutoff(b1.modes()));
    let rho1 = build(b1, cutoff)?;
    let rho2 = build(b2, cutoff)?;
    let metrics = exact_metrics(&rho1, &rho2)?;
    let mut report = Report::new("exact");
    report.inputs = doc.states.to_vec();
    report.exact = Some(ExactSection { cutoff, trace_deficits: [rho1.trace_deficit, rho2.trace_deficit], metrics });
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Canonical,
    Random { seed: u64, count: usize },
    Asymptotic,
}

impl Suite {
    pub fn parse(name: &str, seed: Option<u64>, count: Option<usize>) -> Result<Self, CliError> {
        match name {
            "canonical" => Ok(Suite::Canonical),
            "random" => Ok(Suite::Random { seed: seed.unwrap_or(DEFAULT_SEED), count: count.unwrap_or(DEFAULT_COUNT) }),
            "asymptotic" => Ok(Suite::Asymptotic),
            other => Err(CliError::Parse(format!("unknown suite \"{other}\" (expected canonical, random or asymptotic)"))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Suite::Canonical => "canonical",
            Suite::Random { .. } => "random",
            Suite::Asymptotic => "asymptotic",
        }
    }
}

fn certify_pair(pair: &LabeledPair, cutoff: Option<usize>) -> Result<CertificateReport, CliError> {
    let result = match cutoff {
        Some(n) => certify_report(&pair.first, &pair.second, n),
        None => certify_auto(&pair.first, &pair.second),
    };
    result.map_err(|e| match CliError::from(e) {
        CliError::Cutoff(e) => CliError::Cutoff(e),
        other => CliError::Verification(format!("{}: {other}", pair.label)),
    })
}

fn replay_document(certificate: &CertificateReport) -> String {
    let [a, b] = certificate.builders.clone();
    let doc = StateDocument { states: [StateSpec::Builder(a), StateSpec::Builder(b)] };
    serde_json::to_string(&doc).expect("document serializes")
}

/// Checks of the thermal-against-vacuum limit at one grid point `t`.
fn asymptotic_checks(t: f64) -> Result<(crate::report::SweepRow, Vec<InequalityCheck>), CliError> {
    let row = sweep_row(Family::ThermalVacuum, t)?;
    let checks = vec![
        InequalityCheck::at_most("three", "|2d_B / bound - 1| <= 0.4 t", (row.ratio_2db_bound - 1.0).abs(), 0.4 * t, 0.0),
        InequalityCheck::at_most(
            "three",
            "|trace distance / |a-b|_1 - 1| <= t",
            (row.ratio_trace_norm_cov_diff - 1.0).abs(),
            t,
            0.0,
        ),
        InequalityCheck::at_most("three", "2d_B <= sqrt(2 |a-b|_1)", row.exact_2db, row.bound, 1e-6),
    ];
    Ok((row, checks))
}

/// Runs a suite. On a violated row the report is still returned alongside
/// the error so that callers can print both.
pub fn cmd_verify(suite: Suite, cutoff: Option<usize>) -> (Report, Option<CliError>) {
    let mut report = Report::new(&format!("verify {}", suite.name()));
    let pairs = match suite {
        Suite::Canonical => canonical_pairs(),
        Suite::Random { seed, count } => random_pairs(seed, count),
        Suite::Asymptotic => {
            for &t in &ASYMPTOTIC_GRID {
                match asymptotic_checks(t) {
                    Ok((row, checks)) => {
                        report.sweep.push(row);
                        report.checks.extend(checks);
                    }
                    Err(e) => return (report, Some(e)),
                }
            }
            report.update_passed();
            let err = report.checks.iter().find(|c| !c.passed).map(|c| {
                CliError::Verification(format!("{} violated ({}) with margin {:e}", c.tag, c.relation, c.margin))
            });
            return (report, err);
        }
    };
    let results: Vec<_> = pairs.par_iter().map(|p| certify_pair(p, cutoff)).collect();
    let mut error = None;
    for (pair, result) in pairs.iter().zip(results) {
        match result {
            Ok(certificate) => {
                if error.is_none() {
                    if let Some(c) = certificate.first_failure() {
                        error = Some(CliError::Verification(format!(
                            "{}: {} violated ({}) with margin {:e}\nreplay: {}",
                            pair.label,
                            c.tag,
                            c.relation,
                            c.margin,
                            replay_document(&certificate)
                        )));
                    }
                }
                report.cases.push(CaseReport { label: pair.label.clone(), certificate });
            }
            Err(e) => {
                if error.is_none() {
                    error = Some(e);
                }
            }
        }
    }
    report.update_passed();
    if error.is_some() {
        report.passed = false;
    }
    (report, error)
}

pub fn parse_family(name: &str) -> Result<Family, CliError> {
    match name {
        "thermal_vacuum" => Ok(Family::ThermalVacuum),
        "squeeze" => Ok(Family::Squeeze),
        other => Err(CliError::Parse(format!("unknown family \"{other}\" (expected thermal_vacuum or squeeze)"))),
    }
}

pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| CliError::Parse(format!("grid value \"{s}\": {e}"))))
        .collect()
}

pub fn cmd_sweep(family: Family, grid: &[f64]) -> Result<Report, CliError> {
    let mut report = Report::new("sweep");
    report.sweep = sweep(family, grid)?;
    Ok(report)
}
