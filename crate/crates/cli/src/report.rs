//! The machine-readable output document and its text rendering.

use std::fmt::Write;

use gaussdist::bounds::BoundReport;
use gaussdist::document::StateSpec;
use gaussdist::fock::{CertificateReport, ExactMetrics};
use gaussdist::gaussian::Classification;
use gaussdist::inequality::InequalityCheck;
use serde::{Deserialize, Serialize};

use crate::format::sig;

/// A named value with the equation tag it comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaggedValue {
    pub tag: String,
    pub name: String,
    pub value: f64,
}

impl TaggedValue {
    fn new(tag: &str, name: &str, value: f64) -> Self {
        Self { tag: tag.into(), name: name.into(), value }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundSection {
    pub classification: [Classification; 2],
    pub breakdown: BoundReport,
    pub tagged: Vec<TaggedValue>,
}

impl BoundSection {
    pub fn new(classification: [Classification; 2], breakdown: BoundReport) -> Self {
        let b = &breakdown;
        let mut tagged = vec![
            TaggedValue::new("overl", "overlap", b.overlap),
            TaggedValue::new("overl", "log_prefactor", b.log_prefactor),
            TaggedValue::new("overl", "exponent_term", b.exponent_term),
            TaggedValue::new("ea", "trace_delta_via_definition", b.trace_delta.via_definition),
            TaggedValue::new("eb", "trace_delta_via_identity", b.trace_delta.via_identity),
            TaggedValue::new("ec", "trace_delta_upper", b.trace_delta_upper),
            TaggedValue::new("mean", "mean_term", b.mean_term.value),
            TaggedValue::new("mean", "mean_term_unhatted", b.mean_term.unhatted),
            TaggedValue::new("mean", "mean_term_bound", b.mean_term.bound),
            TaggedValue::new("ineq6", "one_minus_overlap_bound", b.one_minus_overlap_bound),
            TaggedValue::new("basic2", "bures_bound", b.bures_bound),
            TaggedValue::new("basic2", "trace_norm_bound", b.trace_norm_bound),
        ];
        for s in &b.specializations {
            tagged.push(TaggedValue::new(s.kind.tag(), "two_bures_bound", s.value));
        }
        Self { classification, breakdown, tagged }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactSection {
    pub cutoff: usize,
    pub trace_deficits: [f64; 2],
    pub metrics: ExactMetrics,
}

/// One certified pair of a verification suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub label: String,
    pub certificate: CertificateReport,
}

/// One row of an asymptotic sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub parameter: f64,
    pub trace_norm_cov_diff: f64,
    pub bound: f64,
    pub exact_2db: f64,
    pub exact_trace_norm: f64,
    pub ratio_2db_bound: f64,
    pub ratio_trace_norm_cov_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(default)]
    pub inputs: Vec<StateSpec>,
    #[serde(default)]
    pub bounds: Option<BoundSection>,
    #[serde(default)]
    pub exact: Option<ExactSection>,
    #[serde(default)]
    pub cases: Vec<CaseReport>,
    #[serde(default)]
    pub sweep: Vec<SweepRow>,
    #[serde(default)]
    pub checks: Vec<InequalityCheck>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.into(),
            inputs: Vec::new(),
            bounds: None,
            exact: None,
            cases: Vec::new(),
            sweep: Vec::new(),
            checks: Vec::new(),
            passed: true,
        }
    }

    /// Every check, top-level first, then per case.
    pub fn all_checks(&self) -> impl Iterator<Item = &InequalityCheck> {
        self.checks.iter().chain(self.cases.iter().flat_map(|c| c.certificate.checks.iter()))
    }

    pub fn update_passed(&mut self) {
        let passed = self.all_checks().all(|c| c.passed);
        self.passed = passed;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        if let Some(b) = &self.bounds {
            let _ = writeln!(out, "bounds");
            for t in &b.tagged {
                let _ = writeln!(out, "  {:<7} {:<28} {}", t.tag, t.name, sig(t.value));
            }
            if let Some(best) = b.breakdown.specialized_bound() {
                let _ = writeln!(out, "  specialization: {} = {}", best.kind.tag(), sig(best.value));
            }
        }
        if let Some(e) = &self.exact {
            let m = &e.metrics;
            let _ = writeln!(out, "exact (cutoff {})", e.cutoff);
            for (name, value) in [
                ("overlap", m.overlap),
                ("fidelity_root", m.fidelity_root),
                ("bures", m.bures),
                ("trace_distance", m.trace_distance),
                ("lambda_max", m.lambda_max),
                ("trace_deficit_1", e.trace_deficits[0]),
                ("trace_deficit_2", e.trace_deficits[1]),
            ] {
                let _ = writeln!(out, "  {name:<20} {}", sig(value));
            }
        }
        for case in &self.cases {
            let c = &case.certificate;
            let status = if c.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{status} {} (cutoff {}): overlap {} vs oracle {}, 2d_B {} <= {}",
                case.label,
                c.cutoff,
                sig(c.bounds.overlap),
                sig(c.exact.overlap),
                sig(2.0 * c.exact.bures),
                sig(c.bounds.trace_norm_bound),
            );
        }
        if !self.sweep.is_empty() {
            let _ = writeln!(out, "parameter, |a-b|_1, bound, 2d_B, |r1-r2|_1, 2d_B/bound, |r1-r2|_1/|a-b|_1");
            for r in &self.sweep {
                let _ = writeln!(
                    out,
                    "{}, {}, {}, {}, {}, {}, {}",
                    sig(r.parameter),
                    sig(r.trace_norm_cov_diff),
                    sig(r.bound),
                    sig(r.exact_2db),
                    sig(r.exact_trace_norm),
                    sig(r.ratio_2db_bound),
                    sig(r.ratio_trace_norm_cov_diff)
                );
            }
        }
        let checks: Vec<&InequalityCheck> = self.all_checks().collect();
        if !checks.is_empty() {
            let mut tags: Vec<&str> = Vec::new();
            for c in &checks {
                if !tags.contains(&c.tag.as_str()) {
                    tags.push(&c.tag);
                }
            }
            let _ = writeln!(out, "checks");
            for tag in tags {
                let rows: Vec<_> = checks.iter().filter(|c| c.tag == tag).collect();
                let failed = rows.iter().filter(|c| !c.passed).count();
                let worst = rows.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min);
                let status = if failed == 0 { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "  {status} {tag:<7} {} rows, {failed} failed, min margin {}", rows.len(), sig(worst));
            }
            let _ = writeln!(out, "{}", if self.passed { "all checks passed" } else { "some checks FAILED" });
        }
        out
    }
}
