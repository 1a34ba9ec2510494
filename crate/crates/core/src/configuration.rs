//! Plumbed point configurations: t marked vertices plus n surrounding points
//! carrying ℤ_m weights, subject to two incidence conditions — no surrounding
//! point on a vertex-pair line, and weight sums vanishing mod m along every
//! line joining a vertex to surrounding points.
//!
//! For three vertices the vertex-pair lines cut the real projective plane
//! into four chambers; the chamber weight τ is the weight sum inside one of
//! them, and it is chamber-independent for any valid planar configuration.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldScalar, FieldSpec};
use crate::linalg;
use crate::projective::{join, ProjectiveLine, ProjectivePoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("invalid configuration: {0}")]
    Invalid(ValidationReport),
    #[error("operation requires exactly 3 vertices, found {0}")]
    NeedsThreeVertices(usize),
    #[error("operation requires a planar configuration")]
    NotPlanar,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// A surrounding point together with its weight in ℤ_m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurroundingPoint {
    pub point: ProjectivePoint,
    pub plumbing: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub field: FieldSpec,
    pub modulus: u64,
    pub vertices: Vec<ProjectivePoint>,
    pub surrounding: Vec<SurroundingPoint>,
}

/// Which point of the configuration an index refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "index")]
pub enum PointRef {
    Vertex(usize),
    Surrounding(usize),
}

impl fmt::Display for PointRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointRef::Vertex(i) => write!(f, "V{}", i + 1),
            PointRef::Surrounding(i) => write!(f, "S{}", i + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Two configuration points coincide.
    DuplicatePoint(PointRef, PointRef),
    /// A surrounding point lies on the line through two vertices.
    SurroundingOnVertexLine {
        surrounding: usize,
        v1: usize,
        v2: usize,
    },
    /// A configuration line whose plumbing sum is nonzero mod m.
    LineSumNonzero {
        vertex: usize,
        surrounding: Vec<usize>,
        sum: u64,
    },
    /// A surrounding point with weight ≡ 0; only vertices carry weight zero.
    ZeroPlumbing { surrounding: usize },
    /// Modulus below 2.
    BadModulus(u64),
    /// A point whose scalars disagree with the declared field.
    ForeignField(PointRef),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicatePoint(a, b) => write!(f, "duplicate point: {a} = {b}"),
            Violation::SurroundingOnVertexLine {
                surrounding,
                v1,
                v2,
            } => write!(
                f,
                "S{} lies on the vertex-pair line (V{}, V{})",
                surrounding + 1,
                v1 + 1,
                v2 + 1
            ),
            Violation::LineSumNonzero {
                vertex,
                surrounding,
                sum,
            } => {
                let pts: Vec<String> = surrounding.iter().map(|i| format!("S{}", i + 1)).collect();
                write!(
                    f,
                    "line through V{} and {{{}}} has plumbing sum {} != 0",
                    vertex + 1,
                    pts.join(", "),
                    sum
                )
            }
            Violation::ZeroPlumbing { surrounding } => {
                write!(
                    f,
                    "S{} has plumbing 0 (reserved for vertices)",
                    surrounding + 1
                )
            }
            Violation::BadModulus(m) => write!(f, "modulus {m} < 2"),
            Violation::ForeignField(p) => write!(f, "{p} has scalars outside the declared field"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            write!(f, "valid")
        } else {
            let lines: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", lines.join("; "))
        }
    }
}

/// One line of the configuration: a vertex together with every surrounding
/// point collinear with it on that line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigLine {
    pub vertex: usize,
    pub surrounding: Vec<usize>,
    pub line: ProjectiveLine,
}

/// Chamber labels for the surrounding points of a 3-vertex configuration.
///
/// Chambers are identified by the sign vector of the three vertex-pair forms
/// modulo global negation; ids are assigned in lexicographic order of the
/// sign-normalized vectors, so reports are deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberAssignment {
    pub chamber: Vec<u8>,
    pub lines: [ProjectiveLine; 3],
    pub counts: [usize; 4],
}

/// The chamber weight together with the four per-chamber sums it was
/// cross-checked against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberWeight {
    pub value: u64,
    pub modulus: u64,
    pub sums: [u64; 4],
}

impl Configuration {
    pub fn new(
        field: FieldSpec,
        modulus: u64,
        vertices: Vec<ProjectivePoint>,
        surrounding: Vec<(ProjectivePoint, u64)>,
    ) -> Self {
        let surrounding = surrounding
            .into_iter()
            .map(|(point, pl)| SurroundingPoint {
                point,
                plumbing: pl % modulus.max(1),
            })
            .collect();
        Configuration {
            field,
            modulus,
            vertices,
            surrounding,
        }
    }

    pub fn t(&self) -> usize {
        self.vertices.len()
    }

    pub fn n(&self) -> usize {
        self.surrounding.len()
    }

    /// All configuration points in ground-set order: vertices first.
    pub fn all_points(&self) -> Vec<ProjectivePoint> {
        self.vertices
            .iter()
            .cloned()
            .chain(self.surrounding.iter().map(|s| s.point.clone()))
            .collect()
    }

    pub fn labels(&self) -> Vec<String> {
        (1..=self.t())
            .map(|i| format!("V{i}"))
            .chain((1..=self.n()).map(|i| format!("S{i}")))
            .collect()
    }

    /// Check every defining condition; an empty report means valid.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.modulus < 2 {
            violations.push(Violation::BadModulus(self.modulus));
        }
        let refs: Vec<(PointRef, &ProjectivePoint)> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, p)| (PointRef::Vertex(i), p))
            .chain(
                self.surrounding
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (PointRef::Surrounding(i), &s.point)),
            )
            .collect();
        for (r, p) in &refs {
            if p.spec() != self.field {
                violations.push(Violation::ForeignField(*r));
            }
        }
        if violations
            .iter()
            .any(|v| matches!(v, Violation::ForeignField(_)))
        {
            // scalar comparisons below would panic across fields
            return ValidationReport { violations };
        }
        for i in 0..refs.len() {
            for j in (i + 1)..refs.len() {
                if refs[i].1 == refs[j].1 {
                    violations.push(Violation::DuplicatePoint(refs[i].0, refs[j].0));
                }
            }
        }
        for (k, s) in self.surrounding.iter().enumerate() {
            if s.plumbing % self.modulus == 0 {
                violations.push(Violation::ZeroPlumbing { surrounding: k });
            }
        }
        // condition 1: no surrounding point on a vertex-pair line
        for i in 0..self.t() {
            for j in (i + 1)..self.t() {
                let Ok(l) = join(&self.vertices[i], &self.vertices[j]) else {
                    continue; // duplicate vertices already reported
                };
                for (k, s) in self.surrounding.iter().enumerate() {
                    if s.point.on_line(&l) {
                        violations.push(Violation::SurroundingOnVertexLine {
                            surrounding: k,
                            v1: i,
                            v2: j,
                        });
                    }
                }
            }
        }
        // condition 2: plumbing sums vanish mod m along every line
        for cl in self.raw_config_lines() {
            let sum: u64 = cl
                .surrounding
                .iter()
                .map(|&k| self.surrounding[k].plumbing)
                .sum();
            if !sum.is_multiple_of(self.modulus) {
                violations.push(Violation::LineSumNonzero {
                    vertex: cl.vertex,
                    surrounding: cl.surrounding,
                    sum: sum % self.modulus,
                });
            }
        }
        ValidationReport { violations }
    }

    pub fn ensure_valid(&self) -> Result<(), ConfigError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(ConfigError::Invalid(report))
        }
    }

    /// Group surrounding points by the line joining them to each vertex.
    /// Entries are ordered by vertex index, then by line.
    fn raw_config_lines(&self) -> Vec<ConfigLine> {
        let mut out = Vec::new();
        for (v, vp) in self.vertices.iter().enumerate() {
            let mut by_line: BTreeMap<ProjectiveLine, Vec<usize>> = BTreeMap::new();
            for (k, s) in self.surrounding.iter().enumerate() {
                let Ok(line) = join(vp, &s.point) else {
                    continue;
                };
                by_line.entry(line).or_default().push(k);
            }
            for (line, surrounding) in by_line {
                out.push(ConfigLine {
                    vertex: v,
                    surrounding,
                    line,
                });
            }
        }
        out
    }

    /// The configuration's lines; requires a valid configuration.
    pub fn config_lines(&self) -> Result<Vec<ConfigLine>, ConfigError> {
        self.ensure_valid()?;
        Ok(self.raw_config_lines())
    }

    /// Planar iff the vertices span the whole plane.
    pub fn is_planar(&self) -> bool {
        let rows: Vec<Vec<FieldScalar>> =
            self.vertices.iter().map(|p| p.coords().to_vec()).collect();
        linalg::rank(&rows) == 3
    }

    /// The constant plumbing value, when one exists.
    pub fn uniform_value(&self) -> Option<u64> {
        let mut values = self.surrounding.iter().map(|s| s.plumbing % self.modulus);
        let first = values.next()?;
        values.all(|v| v == first).then_some(first)
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform_value().is_some()
    }

    fn vertex_pair_lines(&self) -> Result<[ProjectiveLine; 3], ConfigError> {
        if self.t() != 3 {
            return Err(ConfigError::NeedsThreeVertices(self.t()));
        }
        if !self.is_planar() {
            return Err(ConfigError::NotPlanar);
        }
        let l12 = join(&self.vertices[0], &self.vertices[1]).expect("distinct vertices");
        let l23 = join(&self.vertices[1], &self.vertices[2]).expect("distinct vertices");
        let l31 = join(&self.vertices[2], &self.vertices[0]).expect("distinct vertices");
        Ok([l12, l23, l31])
    }

    /// Assign each surrounding point to one of the four chambers cut out by
    /// the vertex-pair lines.
    pub fn chamber_partition(&self) -> Result<ChamberAssignment, ConfigError> {
        self.ensure_valid()?;
        let lines = self.vertex_pair_lines()?;
        let mut chamber = Vec::with_capacity(self.n());
        let mut counts = [0usize; 4];
        for (k, s) in self.surrounding.iter().enumerate() {
            let mut signs = [0i32; 3];
            for (i, l) in lines.iter().enumerate() {
                signs[i] = l.eval(&s.point).sign();
                if signs[i] == 0 {
                    return Err(ConfigError::Internal(format!(
                        "S{} evaluates to zero on a vertex-pair line despite validation",
                        k + 1
                    )));
                }
            }
            // normalize the class {v, -v} so the first sign is positive
            if signs[0] < 0 {
                for s in &mut signs {
                    *s = -*s;
                }
            }
            let id = (((1 - signs[1]) / 2) * 2 + (1 - signs[2]) / 2) as u8;
            chamber.push(id);
            counts[id as usize] += 1;
        }
        Ok(ChamberAssignment {
            chamber,
            lines,
            counts,
        })
    }

    /// The chamber weight τ: the per-chamber plumbing sum, computed on all
    /// four chambers and cross-checked for equality, as a value of ℤ_m.
    pub fn chamber_weight(&self) -> Result<ChamberWeight, ConfigError> {
        let assignment = self.chamber_partition()?;
        let mut sums = [0u64; 4];
        for (k, s) in self.surrounding.iter().enumerate() {
            let c = assignment.chamber[k] as usize;
            sums[c] = (sums[c] + s.plumbing) % self.modulus;
        }
        let value = sums[0];
        if sums.iter().any(|&s| s != value) {
            return Err(ConfigError::Internal(format!(
                "chamber sums disagree: {sums:?} (validation bug)"
            )));
        }
        let ok_range = if self.modulus.is_multiple_of(2) {
            value == 0 || value == self.modulus / 2
        } else {
            value == 0
        };
        if !ok_range {
            return Err(ConfigError::Internal(format!(
                "chamber weight {value} outside {{0, m/2}} for m = {}",
                self.modulus
            )));
        }
        Ok(ChamberWeight {
            value,
            modulus: self.modulus,
            sums,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rational;

    fn pt(x: i64, y: i64, z: i64) -> ProjectivePoint {
        ProjectivePoint::from_ints(Q, x, y, z)
    }

    /// Complete quadrilateral: four surrounding points, one per chamber.
    /// Realization read off from the dual picture with support normalized.
    pub(crate) fn quadrilateral() -> Configuration {
        Configuration::new(
            Q,
            2,
            vec![pt(0, 0, 1), pt(1, 1, 0), pt(1, -1, 0)],
            vec![
                (pt(8, 1, -8), 1),
                (pt(8, 1, 8), 1),
                (pt(1, 8, -8), 1),
                (pt(1, 8, 8), 1),
            ],
        )
    }

    /// Non-planar configuration with collinear vertices (three vertical
    /// fibres over a line, alternating weights mod 4).
    fn collinear_vertices_config() -> Configuration {
        Configuration::new(
            Q,
            4,
            vec![pt(0, 0, 1), pt(1, 0, 1), pt(2, 0, 1)],
            vec![
                (pt(0, 2, 1), 1),
                (pt(1, 1, 1), 3),
                (pt(2, 2, 1), 1),
                (pt(0, -2, 1), 3),
                (pt(1, -1, 1), 1),
                (pt(2, -2, 1), 3),
            ],
        )
    }

    #[test]
    fn quadrilateral_is_valid_planar_uniform() {
        let c = quadrilateral();
        assert!(c.validate().is_valid());
        assert!(c.is_planar());
        assert_eq!(c.uniform_value(), Some(1));
        let lines = c.config_lines().unwrap();
        assert_eq!(lines.len(), 6);
        for l in &lines {
            assert_eq!(l.surrounding.len(), 2);
        }
    }

    #[test]
    fn quadrilateral_one_point_per_chamber_weight_one() {
        let c = quadrilateral();
        let part = c.chamber_partition().unwrap();
        assert_eq!(part.counts, [1, 1, 1, 1]);
        let w = c.chamber_weight().unwrap();
        assert_eq!(w.value, 1);
        assert_eq!(w.sums, [1, 1, 1, 1]);
    }

    #[test]
    fn collinear_vertices_valid_but_not_planar() {
        let c = collinear_vertices_config();
        assert!(c.validate().is_valid(), "{}", c.validate());
        assert!(!c.is_planar());
        assert!(!c.is_uniform());
        assert!(matches!(c.chamber_weight(), Err(ConfigError::NotPlanar)));
    }

    #[test]
    fn condition_one_violation_detected() {
        let mut c = quadrilateral();
        // place S1 on the line (V1, V2): y = x passes through (1:1:1)
        c.surrounding[0].point = pt(1, 1, 1);
        let report = c.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::SurroundingOnVertexLine { surrounding: 0, .. })));
    }

    #[test]
    fn condition_two_violation_detected() {
        let mut c = quadrilateral();
        c.modulus = 4; // sums of 1+1 = 2 are nonzero mod 4
        let report = c.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::LineSumNonzero { .. })));
    }

    #[test]
    fn zero_plumbing_detected() {
        let mut c = quadrilateral();
        c.surrounding[2].plumbing = 0;
        let report = c.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::ZeroPlumbing { surrounding: 2 })));
    }

    #[test]
    fn duplicate_point_detected() {
        let mut c = quadrilateral();
        c.surrounding[1].point = c.surrounding[0].point.clone();
        let report = c.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::DuplicatePoint(_, _))));
    }

    #[test]
    fn chamber_ops_require_three_vertices() {
        let c = Configuration::new(
            Q,
            2,
            vec![pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(1, 1, 1)],
            vec![],
        );
        assert!(matches!(
            c.chamber_partition(),
            Err(ConfigError::NeedsThreeVertices(4))
        ));
    }
}
