//! Text form of a piecewise solution.

use ksradial::assembler::{Family, ModelParams, PiecewiseRadialSolution, Segment};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Descriptor {
    pub schema_version: u32,
    pub family: Family,
    pub params: ModelParams,
    pub inner: f64,
    /// Interior segment boundaries, redundant with `segments`.
    pub knots: Vec<f64>,
    pub segments: Vec<Segment>,
}

impl From<&PiecewiseRadialSolution> for Descriptor {
    fn from(s: &PiecewiseRadialSolution) -> Self {
        Descriptor {
            schema_version: SCHEMA_VERSION,
            family: s.family,
            params: s.params,
            inner: s.inner,
            knots: s.knots(),
            segments: s.segments.clone(),
        }
    }
}

pub fn to_text(s: &PiecewiseRadialSolution) -> String {
    let mut text = serde_json::to_string_pretty(&Descriptor::from(s)).expect("descriptor serializes");
    text.push('\n');
    text
}

pub fn parse(text: &str) -> Result<PiecewiseRadialSolution, CliError> {
    let d: Descriptor = serde_json::from_str(text).map_err(|e| {
        CliError::Parse(format!("descriptor line {}, column {}: {e}", e.line(), e.column()))
    })?;
    if d.schema_version != SCHEMA_VERSION {
        return Err(CliError::Parse(format!(
            "field schema_version: expected {SCHEMA_VERSION}, got {}",
            d.schema_version
        )));
    }
    if d.segments.is_empty() {
        return Err(CliError::Parse("field segments: empty".into()));
    }
    let sol = PiecewiseRadialSolution {
        params: d.params,
        family: d.family,
        inner: d.inner,
        segments: d.segments,
    };
    if sol.knots() != d.knots {
        return Err(CliError::Parse(
            "field knots: does not match the segment boundaries".into(),
        ));
    }
    Ok(sol)
}
