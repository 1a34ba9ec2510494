//! Canonical JSON formats: the configuration file consumed by the CLI and
//! the serialized form of plumbed arrangements and combinatorics.
//!
//! Scalars travel as `"p/q"` strings (rational fields) or two-element string
//! arrays `["p/q","r/s"]` meaning `p/q + (r/s)·√d`.  Unknown keys are
//! rejected.  Round-trips are bit-exact.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::configuration::Configuration;
use crate::dual::PlumbedArrangement;
use crate::field::{FieldError, FieldScalar, FieldSpec, ScalarRepr};
use crate::projective::{GeometryError, ProjectiveLine, ProjectivePoint};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("scalar error: {0}")]
    Field(#[from] FieldError),
    #[error("geometry error: {0}")]
    Geometry(#[from] GeometryError),
    #[error("plumbing value {0} is not below the modulus {1}")]
    PlumbingRange(u64, u64),
    #[error("modulus {0} is below 2")]
    BadModulus(u64),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    field: FieldSpec,
    m: u64,
    vertices: Vec<[ScalarRepr; 3]>,
    surrounding: Vec<SurroundingEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurroundingEntry {
    coords: [ScalarRepr; 3],
    plumbing: u64,
}

fn decode_point(spec: FieldSpec, repr: &[ScalarRepr; 3]) -> Result<ProjectivePoint, IoError> {
    let coords = [
        FieldScalar::decode(spec, &repr[0])?,
        FieldScalar::decode(spec, &repr[1])?,
        FieldScalar::decode(spec, &repr[2])?,
    ];
    Ok(ProjectivePoint::new(coords)?)
}

fn encode_point(p: &ProjectivePoint) -> [ScalarRepr; 3] {
    let c = p.coords();
    [c[0].encode(), c[1].encode(), c[2].encode()]
}

/// Parse a configuration from its canonical JSON.
pub fn configuration_from_json(text: &str) -> Result<Configuration, IoError> {
    let file: ConfigFile = serde_json::from_str(text)?;
    if file.m < 2 {
        return Err(IoError::BadModulus(file.m));
    }
    let mut vertices = Vec::with_capacity(file.vertices.len());
    for v in &file.vertices {
        vertices.push(decode_point(file.field, v)?);
    }
    let mut surrounding = Vec::with_capacity(file.surrounding.len());
    for s in &file.surrounding {
        if s.plumbing >= file.m {
            return Err(IoError::PlumbingRange(s.plumbing, file.m));
        }
        surrounding.push((decode_point(file.field, &s.coords)?, s.plumbing));
    }
    Ok(Configuration::new(
        file.field,
        file.m,
        vertices,
        surrounding,
    ))
}

/// Serialize a configuration to its canonical JSON.
pub fn configuration_to_json(c: &Configuration) -> String {
    let file = ConfigFile {
        field: c.field,
        m: c.modulus,
        vertices: c.vertices.iter().map(encode_point).collect(),
        surrounding: c
            .surrounding
            .iter()
            .map(|s| SurroundingEntry {
                coords: encode_point(&s.point),
                plumbing: s.plumbing % c.modulus,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrangementFile {
    field: FieldSpec,
    m: u64,
    lines: Vec<[ScalarRepr; 3]>,
    exponents: Vec<u64>,
    support: [usize; 3],
}

/// Serialize a plumbed arrangement: ordered line list, exponent list and
/// support indices.
pub fn arrangement_to_json(a: &PlumbedArrangement) -> String {
    let file = ArrangementFile {
        field: a.spec(),
        m: a.modulus,
        lines: a
            .lines
            .iter()
            .map(|l| {
                let c = l.coeffs();
                [c[0].encode(), c[1].encode(), c[2].encode()]
            })
            .collect(),
        exponents: a.exponents.clone(),
        support: a.support,
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

pub fn arrangement_from_json(text: &str) -> Result<PlumbedArrangement, IoError> {
    let file: ArrangementFile = serde_json::from_str(text)?;
    if file.m < 2 {
        return Err(IoError::BadModulus(file.m));
    }
    let mut lines = Vec::with_capacity(file.lines.len());
    for l in &file.lines {
        let coeffs = [
            FieldScalar::decode(file.field, &l[0])?,
            FieldScalar::decode(file.field, &l[1])?,
            FieldScalar::decode(file.field, &l[2])?,
        ];
        lines.push(ProjectiveLine::new(coeffs)?);
    }
    Ok(PlumbedArrangement {
        lines,
        modulus: file.m,
        exponents: file.exponents,
        support: file.support,
    })
}
