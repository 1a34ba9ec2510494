//! The quasi-projective depth of a dual-arrangement character, computed as
//! the corank of an exact 3×3 matrix built from the per-vertex line counts
//! and a sign determined by the chamber weight.

use serde::Serialize;

use crate::configuration::{ConfigError, Configuration};
use crate::field::{FieldScalar, FieldSpec};
use crate::linalg;

/// Corank (3 - rank) of an exact 3×3 matrix.
pub fn corank3(m: &[[FieldScalar; 3]; 3]) -> usize {
    let rows: Vec<Vec<FieldScalar>> = m.iter().map(|r| r.to_vec()).collect();
    3 - linalg::rank(&rows)
}

/// Number of distinct configuration lines through each of the three vertices.
pub fn line_counts(c: &Configuration) -> Result<[usize; 3], ConfigError> {
    if c.t() != 3 {
        return Err(ConfigError::NeedsThreeVertices(c.t()));
    }
    let lines = c.config_lines()?;
    let mut counts = [0usize; 3];
    for l in &lines {
        counts[l.vertex] += 1;
    }
    Ok(counts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    pub l: [usize; 3],
    pub tau: u64,
    pub j: i64,
    pub matrix: [[i64; 3]; 3],
    pub rank: usize,
    pub depth: usize,
}

/// Depth of the character carried by the dual plumbed arrangement.
///
/// `j` is derived from the chamber weight at call time, never supplied by the
/// caller: `j = -1` when τ = 0 and `j = +1` when τ = m/2.  (With this
/// orientation the configuration with three lines per vertex and trivial
/// weight gets the full-rank matrix, matching the known depth values of the
/// two (9_3) realizations; for odd m the weight is always 0, forcing j = -1.)
/// When every lᵢ ≥ 4 the matrix is strictly diagonally dominant and the depth
/// vanishes regardless of j.
pub fn depth(c: &Configuration) -> Result<DepthReport, ConfigError> {
    let l = line_counts(c)?;
    let tau = c.chamber_weight()?.value;
    let j: i64 = if tau == 0 { -1 } else { 1 };
    let matrix = [
        [1 - l[0] as i64, 1, 1],
        [1, 1 - l[1] as i64, j],
        [1, j, 1 - l[2] as i64],
    ];
    let spec = FieldSpec::Rational;
    let exact = matrix.map(|row| row.map(|e| FieldScalar::from_int(spec, e)));
    let corank = corank3(&exact);
    Ok(DepthReport {
        l,
        tau,
        j,
        matrix,
        rank: 3 - corank,
        depth: corank,
    })
}
