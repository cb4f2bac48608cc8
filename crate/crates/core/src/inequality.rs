use serde::{Deserialize, Serialize};

/// One evaluated inequality or identity, tagged with the equation it checks.
///
/// `margin` is `rhs − lhs` for an upper bound and `−|lhs − rhs|` for an
/// agreement check; the row passes iff `margin ≥ −tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub tag: String,
    pub relation: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl InequalityCheck {
    /// `lhs ≤ rhs` up to `tolerance`.
    pub fn at_most(tag: &str, relation: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::finish(tag, relation, lhs, rhs, rhs - lhs, tolerance)
    }

    /// `|lhs − rhs| ≤ tolerance`.
    pub fn agrees(tag: &str, relation: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::finish(tag, relation, lhs, rhs, -(lhs - rhs).abs(), tolerance)
    }

    fn finish(tag: &str, relation: &str, lhs: f64, rhs: f64, margin: f64, tolerance: f64) -> Self {
        Self {
            tag: tag.to_owned(),
            relation: relation.to_owned(),
            lhs,
            rhs,
            margin,
            tolerance,
            passed: margin >= -tolerance,
        }
    }
}
