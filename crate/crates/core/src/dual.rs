//! Dual plumbed arrangements and the wiring-set invariant.
//!
//! Dualizing a plumbed configuration yields a complexified real line
//! arrangement whose support (the three vertex duals) is a generic triangle,
//! together with a torsion character stored as additive ℤ_m exponents.  After
//! normalizing the support to `{z = 0, x + y = 0, x - y = 0}`, the invariant
//! is read off the slope/half-plane sets D₁, D₂, D₃ of the real picture.

use std::collections::HashMap;

use thiserror::Error;

use crate::configuration::{ConfigError, Configuration};
use crate::field::{FieldScalar, FieldSpec};
use crate::projective::{
    concurrent, meet, transform_three_points, GeometryError, ProjectiveLine, ProjectivePoint,
    ProjectiveTransform,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("arrangement is not triangular inner-cyclic: {0}")]
    NotInnerCyclic(String),
    #[error("support normalization exhausted the retry sequence: {0}")]
    NormalizeExhausted(String),
    #[error("arrangement not in normalized position: {0}")]
    NotNormalized(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// An ordered line arrangement with a ℤ_m character given by one exponent
/// per line and a distinguished three-line support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbedArrangement {
    pub lines: Vec<ProjectiveLine>,
    pub modulus: u64,
    pub exponents: Vec<u64>,
    pub support: [usize; 3],
}

/// The dual plumbed arrangement of a configuration: every point dualized in
/// order (vertices first), exponent 0 on vertex duals and the plumbing value
/// on surrounding duals.
pub fn build_dpa(c: &Configuration) -> Result<PlumbedArrangement, DualError> {
    c.ensure_valid()?;
    if c.t() != 3 {
        return Err(ConfigError::NeedsThreeVertices(c.t()).into());
    }
    let mut lines = Vec::with_capacity(c.t() + c.n());
    let mut exponents = Vec::with_capacity(c.t() + c.n());
    for v in &c.vertices {
        lines.push(v.dualize());
        exponents.push(0);
    }
    for s in &c.surrounding {
        lines.push(s.point.dualize());
        exponents.push(s.plumbing % c.modulus);
    }
    Ok(PlumbedArrangement {
        lines,
        modulus: c.modulus,
        exponents,
        support: [0, 1, 2],
    })
}

impl PlumbedArrangement {
    pub fn spec(&self) -> FieldSpec {
        self.lines[0].spec()
    }

    pub fn support_lines(&self) -> [&ProjectiveLine; 3] {
        [
            &self.lines[self.support[0]],
            &self.lines[self.support[1]],
            &self.lines[self.support[2]],
        ]
    }

    pub fn non_support_indices(&self) -> Vec<usize> {
        (0..self.lines.len())
            .filter(|i| !self.support.contains(i))
            .collect()
    }

    /// Same arrangement with the support roles cycled `k` steps.
    pub fn rotate_support(&self, k: usize) -> PlumbedArrangement {
        let mut a = self.clone();
        let s = self.support;
        a.support = [s[k % 3], s[(k + 1) % 3], s[(k + 2) % 3]];
        a
    }

    pub fn transform(&self, t: &ProjectiveTransform) -> PlumbedArrangement {
        let mapper = t.line_mapper();
        PlumbedArrangement {
            lines: self
                .lines
                .iter()
                .map(|l| ProjectiveLine::new(mapper.apply(l.coeffs())).expect("invertible image"))
                .collect(),
            modulus: self.modulus,
            exponents: self.exponents.clone(),
            support: self.support,
        }
    }

    /// Singular points with the indices of all lines through each, ordered
    /// deterministically.
    pub fn singular_points(&self) -> Vec<(ProjectivePoint, Vec<usize>)> {
        let mut through: HashMap<ProjectivePoint, Vec<usize>> = HashMap::new();
        for i in 0..self.lines.len() {
            for j in (i + 1)..self.lines.len() {
                let p = meet(&self.lines[i], &self.lines[j]).expect("distinct lines");
                let entry = through.entry(p).or_default();
                for k in [i, j] {
                    if !entry.contains(&k) {
                        entry.push(k);
                    }
                }
            }
        }
        let mut out: Vec<(ProjectivePoint, Vec<usize>)> = through.into_iter().collect();
        out.sort_by(|(_, a), (_, b)| a.cmp(b));
        out
    }
}

/// Outcome of the triangular inner-cyclic check, with failure reasons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TicReport {
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Check that the support is a generic triangle whose corners are double
/// points, that the character is nontrivial off the support, and that the
/// exponent sum vanishes mod m at every singular point on the support.
pub fn triangular_inner_cyclic(a: &PlumbedArrangement) -> TicReport {
    let mut failures = Vec::new();
    for i in 0..a.lines.len() {
        for j in (i + 1)..a.lines.len() {
            if a.lines[i] == a.lines[j] {
                failures.push(format!("lines {i} and {j} coincide"));
            }
        }
    }
    let [d1, d2, d3] = a.support_lines();
    if d1 == d2 || d1 == d3 || d2 == d3 {
        // already reported above; the triangle checks below assume distinctness
    } else if concurrent(d1, d2, d3) {
        failures.push("support lines are concurrent, not a triangle".into());
    }
    for (i, &s) in a.support.iter().enumerate() {
        if !a.exponents[s].is_multiple_of(a.modulus) {
            failures.push(format!("support line {} carries a nonzero exponent", i + 1));
        }
    }
    for &i in a.non_support_indices().iter() {
        if a.exponents[i].is_multiple_of(a.modulus) {
            failures.push(format!("non-support line {i} has trivial character value"));
        }
    }
    if !failures.is_empty() {
        return TicReport {
            passed: false,
            failures,
        };
    }
    let corner_points: Vec<ProjectivePoint> = [(d1, d2), (d1, d3), (d2, d3)]
        .iter()
        .map(|(x, y)| meet(x, y).expect("distinct support lines"))
        .collect();
    for (p, through) in a.singular_points() {
        let on_support = through.iter().any(|i| a.support.contains(i));
        if !on_support {
            continue;
        }
        if corner_points.contains(&p) {
            if through.len() > 2 {
                failures.push(format!(
                    "support corner {p} has multiplicity {}",
                    through.len()
                ));
            }
            continue;
        }
        let sum: u64 = through.iter().map(|&i| a.exponents[i]).sum();
        if !sum.is_multiple_of(a.modulus) {
            failures.push(format!(
                "singular point {p} on the support has exponent sum {} mod {}",
                sum % a.modulus,
                a.modulus
            ));
        }
    }
    TicReport {
        passed: failures.is_empty(),
        failures,
    }
}

fn scalar(spec: FieldSpec, n: i64) -> FieldScalar {
    FieldScalar::from_int(spec, n)
}

fn target_corners(spec: FieldSpec) -> [ProjectivePoint; 3] {
    // q1 = D2∩D3, q2 = D1∩D2, q3 = D1∩D3 for the target triangle
    [
        ProjectivePoint::from_ints(spec, 0, 0, 1),
        ProjectivePoint::from_ints(spec, 1, -1, 0),
        ProjectivePoint::from_ints(spec, 1, 1, 0),
    ]
}

fn target_support(spec: FieldSpec) -> [ProjectiveLine; 3] {
    [
        ProjectiveLine::from_ints(spec, 0, 0, 1),
        ProjectiveLine::from_ints(spec, 1, 1, 0),
        ProjectiveLine::from_ints(spec, 1, -1, 0),
    ]
}

/// Torus element fixing the target triangle corners, with eigenvalues
/// `lam` at (1:-1:0), `mu` at (1:1:0) and 1 at (0:0:1).
fn torus_element(spec: FieldSpec, lam: i64, mu: i64) -> ProjectiveTransform {
    let half = FieldScalar::from_ratio(spec, 1, 2);
    let l = scalar(spec, lam);
    let m = scalar(spec, mu);
    let sum = (&l + &m) * &half;
    let diff = (&m - &l) * &half;
    let mat = crate::linalg::Mat3::new([
        [sum.clone(), diff.clone(), FieldScalar::zero(spec)],
        [diff, sum, FieldScalar::zero(spec)],
        [
            FieldScalar::zero(spec),
            FieldScalar::zero(spec),
            FieldScalar::one(spec),
        ],
    ]);
    ProjectiveTransform::new(mat).expect("positive eigenvalues")
}

const TORUS_SEQ: [i64; 10] = [1, 2, 3, 5, 7, 11, 13, 17, 19, 23];

fn torus_pairs() -> Vec<(i64, i64)> {
    let mut pairs = Vec::new();
    let mut seen_ratios: Vec<(i64, i64)> = Vec::new();
    for (n, &outer) in TORUS_SEQ.iter().enumerate() {
        for &inner in &TORUS_SEQ[..=n] {
            for (a, b) in [(inner, outer), (outer, inner)] {
                let reduced = (a * b.signum(), b * b.signum());
                let g = gcd(reduced.0.unsigned_abs(), reduced.1.unsigned_abs()) as i64;
                let key = (reduced.0 / g, reduced.1 / g);
                if !seen_ratios.contains(&key) {
                    seen_ratios.push(key);
                    pairs.push((a, b));
                }
            }
        }
    }
    pairs
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// Map the support onto `{z = 0, x + y = 0, x - y = 0}` and retry torus
/// elements fixing that triangle until every non-support line is generic for
/// the wiring computation: finite nonzero slope distinct from ±1 and not of
/// the form `y + az = 0`.
pub fn normalize_support(
    a: &PlumbedArrangement,
) -> Result<(PlumbedArrangement, ProjectiveTransform), DualError> {
    normalize_support_from(a, 0)
}

/// Like [`normalize_support`] but skipping the first `start` admissible torus
/// parameters; the invariant must not depend on the choice.
pub fn normalize_support_from(
    a: &PlumbedArrangement,
    start: usize,
) -> Result<(PlumbedArrangement, ProjectiveTransform), DualError> {
    let spec = a.spec();
    let [d1, d2, d3] = a.support_lines();
    let corners = [
        meet(d2, d3).map_err(|_| DualError::NotInnerCyclic("support lines coincide".into()))?,
        meet(d1, d2).map_err(|_| DualError::NotInnerCyclic("support lines coincide".into()))?,
        meet(d1, d3).map_err(|_| DualError::NotInnerCyclic("support lines coincide".into()))?,
    ];
    let targets = target_corners(spec);
    let base = transform_three_points(
        [&corners[0], &corners[1], &corners[2]],
        [&targets[0], &targets[1], &targets[2]],
    )
    .map_err(|_| DualError::NotInnerCyclic("support is not a generic triangle".into()))?;
    let based = a.transform(&base);
    {
        let expected = target_support(spec);
        let got = based.support_lines();
        if *got[0] != expected[0] || *got[1] != expected[1] || *got[2] != expected[2] {
            return Err(DualError::Internal(
                "support did not land on the target triangle".into(),
            ));
        }
    }
    let mut skipped = 0usize;
    for (lam, mu) in torus_pairs() {
        let torus = torus_element(spec, lam, mu);
        let candidate = based.transform(&torus);
        if candidate.non_support_indices().iter().all(|&i| {
            let [alpha, beta, _gamma] = candidate.lines[i].coeffs();
            !alpha.is_zero() && !beta.is_zero()
        }) {
            if skipped < start {
                skipped += 1;
                continue;
            }
            let total = base.compose(&torus);
            return Ok((candidate, total));
        }
    }
    Err(DualError::NormalizeExhausted(format!(
        "no torus parameter in {TORUS_SEQ:?} made all lines generic"
    )))
}

/// The three wiring sets of a normalized arrangement (non-support indices):
/// D₁ collects slopes strictly inside (-1, 1); D₂ and D₃ collect lines whose
/// intersection with `x + y = 0` resp. `x - y = 0` lies in the half-plane
/// `x < 0` with slope below -1 resp. 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WiringSets {
    pub d1: Vec<usize>,
    pub d2: Vec<usize>,
    pub d3: Vec<usize>,
}

pub fn wiring_sets(a: &PlumbedArrangement) -> Result<WiringSets, DualError> {
    let spec = a.spec();
    {
        let expected = target_support(spec);
        let got = a.support_lines();
        if *got[0] != expected[0] || *got[1] != expected[1] || *got[2] != expected[2] {
            return Err(DualError::NotNormalized(format!(
                "support is [{}, {}, {}]",
                got[0], got[1], got[2]
            )));
        }
    }
    let one = FieldScalar::one(spec);
    let minus_one = -&one;
    let mut d1 = Vec::new();
    let mut d2 = Vec::new();
    let mut d3 = Vec::new();
    for &i in &a.non_support_indices() {
        let [alpha, beta, gamma] = a.lines[i].coeffs();
        if beta.is_zero() || alpha.is_zero() {
            return Err(DualError::NotNormalized(format!(
                "line {i} is vertical or horizontal after normalization"
            )));
        }
        let slope = -&(alpha / beta);
        if slope == one || slope == minus_one {
            return Err(DualError::Internal(format!(
                "line {i} has slope ±1; its dual point lies on a vertex-pair line"
            )));
        }
        if slope > minus_one && slope < one {
            d1.push(i);
        }
        // x-coordinates of the crossings with x+y = 0 and x-y = 0
        let x2 = gamma.try_div(&(beta - alpha)).map_err(|_| {
            DualError::Internal(format!("line {i} is parallel to the support line x+y=0"))
        })?;
        let x3 = (-gamma).try_div(&(alpha + beta)).map_err(|_| {
            DualError::Internal(format!("line {i} is parallel to the support line x-y=0"))
        })?;
        if x2.is_zero() || x3.is_zero() {
            return Err(DualError::Internal(format!(
                "line {i} meets a support line on the half-plane boundary x = 0"
            )));
        }
        if x2.sign() < 0 && slope < minus_one {
            d2.push(i);
        }
        if x3.sign() < 0 && slope < one {
            d3.push(i);
        }
    }
    // structural invariants of the construction
    if !d2.iter().all(|i| d3.contains(i)) {
        return Err(DualError::Internal("D2 is not contained in D3".into()));
    }
    let diff: Vec<usize> = d3.iter().copied().filter(|i| !d2.contains(i)).collect();
    let inter: Vec<usize> = d1.iter().copied().filter(|i| d3.contains(i)).collect();
    if diff != inter {
        return Err(DualError::Internal("D3 \\ D2 differs from D1 ∩ D3".into()));
    }
    Ok(WiringSets { d1, d2, d3 })
}

/// The invariant exponent `k` with value `exp(2πik/m)`: minus the exponent
/// sum over D₁ ∩ D₃, reduced to 0..m-1.  Requires the inner-cyclic check.
pub fn i_invariant(a: &PlumbedArrangement) -> Result<u64, DualError> {
    i_invariant_detail(a, 0).map(|d| d.exponent)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantDetail {
    pub exponent: u64,
    pub wiring: WiringSets,
    pub normalized: PlumbedArrangement,
}

pub fn i_invariant_detail(
    a: &PlumbedArrangement,
    torus_start: usize,
) -> Result<InvariantDetail, DualError> {
    let tic = triangular_inner_cyclic(a);
    if !tic.passed {
        return Err(DualError::NotInnerCyclic(tic.failures.join("; ")));
    }
    let (normalized, _t) = normalize_support_from(a, torus_start)?;
    let wiring = wiring_sets(&normalized)?;
    let m = a.modulus;
    let sum: u64 = wiring
        .d1
        .iter()
        .filter(|i| wiring.d3.contains(i))
        .map(|&i| normalized.exponents[i] % m)
        .sum();
    let exponent = (m - sum % m) % m;
    Ok(InvariantDetail {
        exponent,
        wiring,
        normalized,
    })
}

/// Both routes to the invariant: the chamber weight of the configuration and
/// the wiring exponent of its dual arrangement must agree (τ ∈ {0, m/2} is
/// its own negative mod m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub tau: u64,
    pub i_exponent: u64,
    pub holds: bool,
}

pub fn verify_relation(c: &Configuration) -> Result<RelationReport, DualError> {
    let tau = c.chamber_weight()?.value;
    let i_exponent = i_invariant(&build_dpa(c)?)?;
    let m = c.modulus;
    Ok(RelationReport {
        tau,
        i_exponent,
        holds: (m - tau) % m == i_exponent,
    })
}

/// Classification of an arrangement by how few lines cover its points of
/// multiplicity ≥ 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CxClass {
    NotCLeq3,
    CLeq3SimpleType,
    CLeq3NonSimple,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyReport {
    pub class: CxClass,
    /// number of points of multiplicity ≥ 3
    pub multiple_points: usize,
    /// a minimum covering line set, when one of size ≤ 3 exists
    pub cover: Option<Vec<usize>>,
    /// per cover line, how many multiple points it carries
    pub cover_counts: Vec<usize>,
}

/// Compute the points of multiplicity ≥ 3 and the smallest set of lines
/// covering them.  The arrangement is `C≤3` when three lines suffice, and of
/// simple type when some admissible cover is concurrent, has size ≤ 2, or has
/// exactly one line carrying a unique multiple point.
pub fn classify_c_leq_3(lines: &[ProjectiveLine]) -> Result<ClassifyReport, DualError> {
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            if lines[i] == lines[j] {
                return Err(DualError::Internal(format!("duplicate lines {i} and {j}")));
            }
        }
    }
    let mut through: HashMap<ProjectivePoint, Vec<usize>> = HashMap::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            let p = meet(&lines[i], &lines[j]).expect("distinct lines");
            let entry = through.entry(p).or_default();
            for k in [i, j] {
                if !entry.contains(&k) {
                    entry.push(k);
                }
            }
        }
    }
    let mut multiple: Vec<(&ProjectivePoint, &Vec<usize>)> =
        through.iter().filter(|(_, ls)| ls.len() >= 3).collect();
    multiple.sort_by_key(|(_, a)| *a);
    if multiple.is_empty() {
        return Ok(ClassifyReport {
            class: CxClass::CLeq3SimpleType,
            multiple_points: 0,
            cover: Some(vec![]),
            cover_counts: vec![],
        });
    }
    let n = lines.len();
    let covers_all = |subset: &[usize]| {
        multiple
            .iter()
            .all(|(_, ls)| ls.iter().any(|l| subset.contains(l)))
    };
    let count_on = |l: usize| multiple.iter().filter(|(_, ls)| ls.contains(&l)).count();
    let mut best: Option<Vec<usize>> = None;
    let mut simple = false;
    'outer: for size in 1..=3usize {
        let mut found_any = false;
        for subset in subsets(n, size) {
            if !covers_all(&subset) {
                continue;
            }
            found_any = true;
            if best.is_none() {
                best = Some(subset.clone());
            }
            match subset.len() {
                1 | 2 => {
                    simple = true;
                    break 'outer;
                }
                3 => {
                    let con = concurrent(&lines[subset[0]], &lines[subset[1]], &lines[subset[2]]);
                    let unique_count = subset.iter().filter(|&&l| count_on(l) == 1).count();
                    if con || unique_count == 1 {
                        simple = true;
                        best = Some(subset.clone());
                        break 'outer;
                    }
                }
                _ => unreachable!(),
            }
        }
        if found_any {
            break;
        }
    }
    let class = match (&best, simple) {
        (None, _) => CxClass::NotCLeq3,
        (Some(_), true) => CxClass::CLeq3SimpleType,
        (Some(_), false) => CxClass::CLeq3NonSimple,
    };
    let cover_counts = best
        .as_ref()
        .map(|c| c.iter().map(|&l| count_on(l)).collect())
        .unwrap_or_default();
    Ok(ClassifyReport {
        class,
        multiple_points: multiple.len(),
        cover: best,
        cover_counts,
    })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::field::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rational;

    fn ln(a: i64, b: i64, c: i64) -> ProjectiveLine {
        ProjectiveLine::from_ints(Q, a, b, c)
    }

    /// The reference example: dual of the complete quadrilateral with
    /// support already in normalized position.
    fn reference_arrangement() -> PlumbedArrangement {
        PlumbedArrangement {
            lines: vec![
                ln(0, 0, 1),
                ln(1, 1, 0),
                ln(1, -1, 0),
                ln(8, 1, -8),
                ln(8, 1, 8),
                ln(1, 8, -8),
                ln(1, 8, 8),
            ],
            modulus: 2,
            exponents: vec![0, 0, 0, 1, 1, 1, 1],
            support: [0, 1, 2],
        }
    }

    #[test]
    fn reference_is_inner_cyclic() {
        let report = triangular_inner_cyclic(&reference_arrangement());
        assert!(report.passed, "{:?}", report.failures);
    }

    #[test]
    fn reference_wiring_sets_and_invariant() {
        let a = reference_arrangement();
        let detail = i_invariant_detail(&a, 0).unwrap();
        // normalization is the identity here (support already in place)
        assert_eq!(detail.wiring.d1, vec![5, 6]);
        assert_eq!(detail.wiring.d2, vec![4]);
        assert_eq!(detail.wiring.d3, vec![4, 6]);
        assert_eq!(detail.exponent, 1);
    }

    #[test]
    fn quadrilateral_dpa_equals_reference() {
        let c = catalog::quadrilateral();
        let a = build_dpa(&c).unwrap();
        assert_eq!(a, reference_arrangement());
        // vertex duals carry exponent zero by construction
        for &s in &a.support {
            assert_eq!(a.exponents[s], 0);
        }
    }

    #[test]
    fn dpa_line_count_and_character() {
        let c = catalog::get("C", &[1, 1]).unwrap();
        let a = build_dpa(&c).unwrap();
        assert_eq!(a.lines.len(), 13);
        assert_eq!(&a.exponents[..3], &[0, 0, 0]);
        assert!(a.exponents[3..].iter().all(|&e| e == 1));
        assert!(triangular_inner_cyclic(&a).passed);
    }

    #[test]
    fn broken_plumbing_fails_inner_cyclic() {
        let c = catalog::get("C", &[1, 1]).unwrap();
        let mut a = build_dpa(&c).unwrap();
        a.exponents[3] = (a.exponents[3] + 1) % a.modulus;
        let report = triangular_inner_cyclic(&a);
        assert!(!report.passed);
        // the bumped line now has exponent 0 and its support points sum to 1
        assert!(report
            .failures
            .iter()
            .any(|f| f.contains("trivial character")));
    }

    #[test]
    fn duplicate_lines_fail_inner_cyclic_without_panicking() {
        let a = PlumbedArrangement {
            lines: vec![
                ln(0, 0, 1),
                ln(1, 1, 0),
                ln(1, -1, 0),
                ln(8, 1, -8),
                ln(8, 1, -8),
            ],
            modulus: 2,
            exponents: vec![0, 0, 0, 1, 1],
            support: [0, 1, 2],
        };
        let report = triangular_inner_cyclic(&a);
        assert!(!report.passed);
        assert!(report.failures.iter().any(|f| f.contains("coincide")));
    }

    #[test]
    fn non_planar_dual_fails_inner_cyclic() {
        // collinear vertices dualize to concurrent support lines
        let a = PlumbedArrangement {
            lines: vec![
                ln(0, 0, 1),
                ln(1, 0, 1),
                ln(2, 0, 1),
                ln(1, 1, 1),
                ln(1, -1, 3),
            ],
            modulus: 2,
            exponents: vec![0, 0, 0, 1, 1],
            support: [0, 1, 2],
        };
        let report = triangular_inner_cyclic(&a);
        assert!(!report.passed);
        assert!(report.failures.iter().any(|f| f.contains("concurrent")));
    }

    #[test]
    fn normalization_reaches_target_support() {
        let c = catalog::get("C", &[1, 1]).unwrap();
        let a = build_dpa(&c).unwrap();
        let (norm, t) = normalize_support(&a).unwrap();
        let expected = target_support(Q);
        assert_eq!(*norm.support_lines()[0], expected[0]);
        assert_eq!(*norm.support_lines()[1], expected[1]);
        assert_eq!(*norm.support_lines()[2], expected[2]);
        // the returned transform reproduces the normalized lines
        let again = a.transform(&t);
        assert_eq!(again.lines, norm.lines);
        // slopes of non-support lines avoid ±1 and are finite nonzero
        for &i in &norm.non_support_indices() {
            let [alpha, beta, _] = norm.lines[i].coeffs();
            assert!(!alpha.is_zero() && !beta.is_zero());
            let slope = -&(alpha / beta);
            assert!(slope != FieldScalar::one(Q) && slope != -FieldScalar::one(Q));
        }
    }

    #[test]
    fn invariant_independent_of_torus_choice() {
        let c = catalog::get("C", &[1, -1]).unwrap();
        let a = build_dpa(&c).unwrap();
        let d0 = i_invariant_detail(&a, 0).unwrap();
        let d1 = i_invariant_detail(&a, 1).unwrap();
        let d2 = i_invariant_detail(&a, 2).unwrap();
        assert_eq!(d0.exponent, d1.exponent);
        assert_eq!(d0.exponent, d2.exponent);
        // different torus parameters genuinely moved the lines
        assert_ne!(d0.normalized.lines, d1.normalized.lines);
    }

    #[test]
    fn invariant_independent_of_support_rotation() {
        let c = catalog::get("C", &[1, -1]).unwrap();
        let a = build_dpa(&c).unwrap();
        let base = i_invariant(&a).unwrap();
        for k in 1..3 {
            assert_eq!(i_invariant(&a.rotate_support(k)).unwrap(), base);
        }
    }

    #[test]
    fn relation_on_first_family() {
        for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let c = catalog::get("C", &[a, b]).unwrap();
            let rel = verify_relation(&c).unwrap();
            assert!(
                rel.holds,
                "C({a},{b}): tau={} i={}",
                rel.tau, rel.i_exponent
            );
            let expected = if a * b == 1 { 0 } else { 1 };
            assert_eq!(rel.tau, expected, "C({a},{b})");
        }
    }

    #[test]
    fn all_slopes_above_one_gives_empty_d1() {
        // valid weight-2 configuration whose surrounding points all dualize
        // to lines of slope > 1 in the already-normalized frame
        let mk = |x: (i64, i64), y: (i64, i64)| {
            ProjectivePoint::new([
                FieldScalar::from_ratio(Q, x.0, x.1),
                FieldScalar::from_ratio(Q, y.0, y.1),
                FieldScalar::one(Q),
            ])
            .unwrap()
        };
        let c = Configuration::new(
            Q,
            2,
            vec![
                ProjectivePoint::from_ints(Q, 0, 0, 1),
                ProjectivePoint::from_ints(Q, 1, 1, 0),
                ProjectivePoint::from_ints(Q, 1, -1, 0),
            ],
            vec![
                (mk((-9, 16), (7, 16)), 1),
                (mk((-5, 4), (3, 4)), 1),
                (mk((-17, 8), (15, 8)), 1),
                (mk((-5, 8), (3, 8)), 1),
                (mk((-17, 16), (15, 16)), 1),
                (mk((-9, 4), (7, 4)), 1),
            ],
        );
        assert!(c.validate().is_valid(), "{}", c.validate());
        let a = build_dpa(&c).unwrap();
        let detail = i_invariant_detail(&a, 0).unwrap();
        for &i in &detail.normalized.non_support_indices() {
            let [alpha, beta, _] = detail.normalized.lines[i].coeffs();
            let slope = -&(alpha / beta);
            assert!(slope > FieldScalar::one(Q), "slope of line {i} not > 1");
        }
        assert!(detail.wiring.d1.is_empty());
        assert_eq!(detail.exponent, 0);
        assert_eq!(c.chamber_weight().unwrap().value, 0);
    }

    #[test]
    fn classify_generic_arrangement_is_vacuously_simple() {
        let lines = vec![ln(1, 0, 0), ln(0, 1, 0), ln(0, 0, 1), ln(1, 2, 3)];
        let r = classify_c_leq_3(&lines).unwrap();
        assert_eq!(r.class, CxClass::CLeq3SimpleType);
        assert_eq!(r.multiple_points, 0);
    }

    #[test]
    fn classify_first_family_non_simple() {
        let c = catalog::get("C", &[1, 1]).unwrap();
        let a = build_dpa(&c).unwrap();
        let r = classify_c_leq_3(&a.lines).unwrap();
        assert_eq!(r.class, CxClass::CLeq3NonSimple);
        assert_eq!(r.cover, Some(vec![0, 1, 2]));
        assert_eq!(r.cover_counts, vec![5, 5, 5]);
    }

    #[test]
    fn classify_double_degeneration_non_simple() {
        let c = catalog::get("C2", &[1, 1]).unwrap();
        let a = build_dpa(&c).unwrap();
        let r = classify_c_leq_3(&a.lines).unwrap();
        assert_eq!(r.class, CxClass::CLeq3NonSimple);
        assert_eq!(r.cover, Some(vec![0, 1, 2]));
        let mut counts = r.cover_counts.clone();
        counts.sort_unstable();
        assert_eq!(counts, vec![4, 4, 5]);
    }

    #[test]
    fn classify_pencil_plus_line_simple() {
        // three concurrent lines cover the single triple point
        let lines = vec![ln(1, 0, 0), ln(0, 1, 0), ln(1, 1, 0), ln(1, 2, 3)];
        let r = classify_c_leq_3(&lines).unwrap();
        assert_eq!(r.class, CxClass::CLeq3SimpleType);
        assert_eq!(r.multiple_points, 1);
    }
}
