//! Parameter sweeps comparing specialized bounds with exact distances.

use std::io::Write;

use gaussdist::bounds::{proposition_bound, Specialization};
use gaussdist::fock::{build, cutoff_ladder, exact_metrics, ExactMetrics, StateBuilder};
use gaussdist::gaussian::norms;
use gaussdist::Error;

use crate::error::CliError;
use crate::format::sig;
use crate::report::SweepRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `α = (1/2 + t) I` against the vacuum; bound `√(2‖α − β‖₁)`.
    ThermalVacuum,
    /// Squeezed vacuum `S(r)` against the vacuum; pure-state bound.
    Squeeze,
}

impl Family {
    pub fn default_grid(self) -> Vec<f64> {
        match self {
            Family::ThermalVacuum => vec![0.0, 1e-3, 1e-2, 1e-1, 0.5, 1.0],
            Family::Squeeze => vec![0.1, 0.2, 0.3, 0.4, 0.5],
        }
    }

    fn builder(self, parameter: f64) -> StateBuilder {
        match self {
            Family::ThermalVacuum => StateBuilder::Thermal { nbar: parameter },
            Family::Squeeze => StateBuilder::Squeezed { r: parameter, phi: 0.0 },
        }
    }

    fn specialization(self) -> Specialization {
        match self {
            Family::ThermalVacuum => Specialization::ThermalVacuum,
            Family::Squeeze => Specialization::Pure,
        }
    }
}

/// Oracle metrics against the vacuum at the first cutoff of the ladder that fits the budget.
fn exact_against_vacuum(builder: &StateBuilder) -> Result<ExactMetrics, Error> {
    let mut last = None;
    for &cutoff in cutoff_ladder(1) {
        match build(builder, cutoff) {
            Ok(rho) => return exact_metrics(&rho, &build(&StateBuilder::Vacuum, cutoff)?),
            Err(e @ Error::CutoffTooSmall { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("ladder is non-empty"))
}

fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

pub fn sweep_row(family: Family, parameter: f64) -> Result<SweepRow, CliError> {
    if !parameter.is_finite() || parameter < 0.0 {
        return Err(CliError::InvalidState(Error::InvalidBuilder(format!("grid value {parameter} must be finite and >= 0"))));
    }
    let builder = family.builder(parameter);
    let state = builder.target_state()?;
    let vacuum = StateBuilder::Vacuum.target_state()?;
    let report = proposition_bound(&state, &vacuum)?;
    let bound = report
        .specialization(family.specialization())
        .ok_or(CliError::Numerical(Error::NotThermalLike(parameter)))?;
    let trace_norm_cov_diff = norms(&(state.cov() - vacuum.cov()))?.trace_norm;
    let exact = exact_against_vacuum(&builder)?;
    let exact_2db = 2.0 * exact.bures;
    Ok(SweepRow {
        parameter,
        trace_norm_cov_diff,
        bound,
        exact_2db,
        exact_trace_norm: exact.trace_distance,
        ratio_2db_bound: ratio(exact_2db, bound),
        ratio_trace_norm_cov_diff: ratio(exact.trace_distance, trace_norm_cov_diff),
    })
}

pub fn sweep(family: Family, grid: &[f64]) -> Result<Vec<SweepRow>, CliError> {
    grid.iter().map(|&p| sweep_row(family, p)).collect()
}

pub const CSV_HEADER: [&str; 7] = [
    "parameter",
    "trace_norm_cov_diff",
    "bound",
    "exact_2db",
    "exact_trace_norm",
    "ratio_2db_bound",
    "ratio_trace_norm_cov_diff",
];

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.parameter,
            r.trace_norm_cov_diff,
            r.bound,
            r.exact_2db,
            r.exact_trace_norm,
            r.ratio_2db_bound,
            r.ratio_trace_norm_cov_diff,
        ]
        .map(sig))?;
    }
    w.flush()?;
    Ok(())
}
