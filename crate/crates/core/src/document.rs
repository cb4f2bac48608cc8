//! The JSON input document: one or two states, each either explicit moments or
//! a Fock-buildable builder.
//!
//! ```json
//! {"states": [
//!   {"modes": 1, "mean": [0, 0], "cov": [[2.5, 0], [0, 2.5]]},
//!   {"kind": "vacuum"}
//! ]}
//! ```

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fock::StateBuilder;
use crate::gaussian::GaussianState;

/// Explicit moments; `cov` is row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitState {
    pub modes: usize,
    pub mean: Vec<f64>,
    pub cov: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum StateSpec {
    Explicit(ExplicitState),
    Builder(StateBuilder),
}

const EXPLICIT_KEYS: [&str; 3] = ["modes", "mean", "cov"];

impl StateSpec {
    pub fn from_value(value: Value) -> Result<Self> {
        let Value::Object(map) = &value else {
            return Err(Error::Parse("state must be a JSON object".into()));
        };
        let builder = map.contains_key("kind");
        let explicit = EXPLICIT_KEYS.iter().any(|k| map.contains_key(*k));
        match (builder, explicit) {
            (true, true) => Err(Error::Parse("state mixes builder (kind) and explicit (modes/mean/cov) forms".into())),
            (false, false) => Err(Error::Parse("state needs either kind or modes/mean/cov".into())),
            (true, false) => serde_json::from_value(value)
                .map(StateSpec::Builder)
                .map_err(|e| Error::Parse(format!("builder state: {e}"))),
            (false, true) => serde_json::from_value(value)
                .map(StateSpec::Explicit)
                .map_err(|e| Error::Parse(format!("explicit state: {e}"))),
        }
    }

    pub fn modes(&self) -> usize {
        match self {
            StateSpec::Explicit(e) => e.modes,
            StateSpec::Builder(b) => b.modes(),
        }
    }

    pub fn builder(&self) -> Option<&StateBuilder> {
        match self {
            StateSpec::Builder(b) => Some(b),
            StateSpec::Explicit(_) => None,
        }
    }

    /// The validated Gaussian state this spec describes.
    pub fn to_state(&self) -> Result<GaussianState> {
        match self {
            StateSpec::Builder(b) => b.target_state(),
            StateSpec::Explicit(e) => {
                if e.modes == 0 {
                    return Err(Error::InvalidModes);
                }
                let n = 2 * e.modes;
                if e.mean.len() != n {
                    return Err(Error::DimensionMismatch(format!("{} modes need a mean of length {n}, got {}", e.modes, e.mean.len())));
                }
                if e.cov.len() != n || e.cov.iter().any(|row| row.len() != n) {
                    return Err(Error::DimensionMismatch(format!("{} modes need a {n}x{n} covariance", e.modes)));
                }
                let cov = DMatrix::from_fn(n, n, |i, j| e.cov[i][j]);
                GaussianState::new(DVector::from_vec(e.mean.clone()), cov)
            }
        }
    }
}

impl From<StateBuilder> for StateSpec {
    fn from(b: StateBuilder) -> Self {
        StateSpec::Builder(b)
    }
}

impl From<&GaussianState> for StateSpec {
    fn from(s: &GaussianState) -> Self {
        let cov = s.cov();
        StateSpec::Explicit(ExplicitState {
            modes: s.modes(),
            mean: s.mean().iter().copied().collect(),
            cov: cov.row_iter().map(|r| r.iter().copied().collect()).collect(),
        })
    }
}

impl<'de> Deserialize<'de> for StateSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let value = Value::deserialize(deserializer)?;
        StateSpec::from_value(value).map_err(serde::de::Error::custom)
    }
}

/// A parsed input document, always holding exactly two states.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateDocument {
    pub states: [StateSpec; 2],
}

impl StateDocument {
    /// Both states, validated. Fails on the first invalid state or a mode mismatch.
    pub fn to_states(&self) -> Result<(GaussianState, GaussianState)> {
        let s1 = self.states[0].to_state()?;
        let s2 = self.states[1].to_state()?;
        if s1.modes() != s2.modes() {
            return Err(Error::ModeMismatch(s1.modes(), s2.modes()));
        }
        Ok((s1, s2))
    }
}

/// Parses a document with one or two states; a lone state is paired with the
/// vacuum on the same number of modes.
pub fn parse_document(text: &str) -> Result<StateDocument> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let Value::Object(mut map) = value else {
        return Err(Error::Parse("document must be a JSON object".into()));
    };
    let states = map.remove("states").ok_or_else(|| Error::Parse("missing \"states\"".into()))?;
    if let Some(key) = map.keys().next() {
        return Err(Error::Parse(format!("unknown field \"{key}\"")));
    }
    let Value::Array(items) = states else {
        return Err(Error::Parse("\"states\" must be an array".into()));
    };
    let mut specs = items.into_iter().map(StateSpec::from_value).collect::<Result<Vec<_>>>()?;
    match specs.len() {
        1 => {
            let modes = specs[0].modes().max(1);
            specs.push(StateSpec::Builder(StateBuilder::vacuum_of(modes)));
        }
        2 => {}
        n => return Err(Error::Parse(format!("expected one or two states, got {n}"))),
    }
    let second = specs.pop().expect("two states");
    let first = specs.pop().expect("two states");
    Ok(StateDocument { states: [first, second] })
}

pub fn parse_document_bytes(bytes: &[u8]) -> Result<StateDocument> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))?;
    parse_document(text)
}
