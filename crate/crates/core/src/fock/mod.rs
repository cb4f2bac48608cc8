//! Exact reference values from density matrices on a truncated number basis.

mod builder;
mod certify;
mod density;
mod metrics;

pub use builder::{StateBuilder, BUDGET_SQUEEZED, BUDGET_UNSQUEEZED};
pub use certify::{
    certify, certify_auto, certify_report, cutoff_ladder, default_cutoff, CertificateReport, MomentError,
};
pub use density::{
    annihilation, build, build_with_cap, displacement, extract_moments, squeezer, unitary_exp, FockDensityMatrix,
    DIM_CAP,
};
pub use metrics::{exact_metrics, psd_factor, psd_sqrt, ExactMetrics, PsdFactor};
