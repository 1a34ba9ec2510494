//! Built-in exact coordinate data for the configuration families used by the
//! test corpus and the CLI, parameterized by signs in {-1, 1}.
//!
//! Families `C*` are 13-point rational configurations (with a ℚ(√2) variant
//! of the twice-degenerated one), `D*` 15-point and `E*` 17-point families
//! over ℚ(√2).  `Pappus`, `NonPappus` and `Quadrilateral` are rational
//! realizations derived from the classical constructions and machine-checked
//! against their expected incidence structure.

use thiserror::Error;

use crate::configuration::Configuration;
use crate::field::{FieldScalar, FieldSpec};
use crate::projective::ProjectivePoint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),
    #[error("{name} takes {expected} parameters, got {got}")]
    WrongArity {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("parameters must be 1 or -1, got {0}")]
    BadSign(i64),
    #[error("{0} is only defined for gamma = 1")]
    UnsupportedParam(String),
    #[error("plumbing value must be nonzero mod m")]
    BadPlumbing,
}

/// Static description of one catalog entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryInfo {
    pub name: &'static str,
    pub arity: usize,
    /// number of lines of the dual arrangement (= number of points)
    pub dual_lines: usize,
    /// expected chamber weight as a rule on the sign parameters
    pub tau_rule: &'static str,
    pub description: &'static str,
}

pub fn entries() -> Vec<EntryInfo> {
    vec![
        EntryInfo {
            name: "C",
            arity: 2,
            dual_lines: 13,
            tau_rule: "tau = 0 iff a*b = 1",
            description: "13-line family, double and triple points only",
        },
        EntryInfo {
            name: "C1",
            arity: 2,
            dual_lines: 13,
            tau_rule: "tau = 0 iff a*b = 1",
            description: "degeneration of C with one quintuple point",
        },
        EntryInfo {
            name: "C2",
            arity: 2,
            dual_lines: 13,
            tau_rule: "tau = 0 iff a*b = 1",
            description: "degeneration of C with two quintuple points",
        },
        EntryInfo {
            name: "C2_sqrt2",
            arity: 2,
            dual_lines: 13,
            tau_rule: "tau = 0 iff a*b = 1",
            description: "Q(sqrt 2) realization of the C2 combinatorics",
        },
        EntryInfo {
            name: "D",
            arity: 2,
            dual_lines: 15,
            tau_rule: "tau = 0 iff a*b = 1",
            description: "15-line family over Q(sqrt 2)",
        },
        EntryInfo {
            name: "D1",
            arity: 2,
            dual_lines: 15,
            tau_rule: "tau = 0 iff a*b = 1",
            description: "degeneration of D with one quintuple point",
        },
        EntryInfo {
            name: "D2",
            arity: 2,
            dual_lines: 15,
            tau_rule: "tau = 0 iff a*b = 1",
            description: "degeneration of D with two quintuple points",
        },
        EntryInfo {
            name: "E",
            arity: 3,
            dual_lines: 17,
            tau_rule: "tau = 0 iff a*b*c = 1",
            description: "17-line family over Q(sqrt 2)",
        },
        EntryInfo {
            name: "E1",
            arity: 3,
            dual_lines: 17,
            tau_rule: "tau = 0 iff a*b*c = 1",
            description: "degeneration of E with one quintuple point",
        },
        EntryInfo {
            name: "E2",
            arity: 3,
            dual_lines: 17,
            tau_rule: "tau = 0 iff a*b = 1 (c = 1 only)",
            description: "degeneration of E with two quintuple points",
        },
        EntryInfo {
            name: "E3",
            arity: 3,
            dual_lines: 17,
            tau_rule: "tau = 0 iff a*b*c = 1",
            description: "degeneration of E with two quintuple points on one vertex",
        },
        EntryInfo {
            name: "Pappus",
            arity: 0,
            dual_lines: 9,
            tau_rule: expect_tau_pappus(),
            description: "Pappus configuration, alternating weights",
        },
        EntryInfo {
            name: "NonPappus",
            arity: 0,
            dual_lines: 9,
            tau_rule: "tau = 1",
            description: "non-Pappus configuration, uniform Z2 weights",
        },
        EntryInfo {
            name: "Quadrilateral",
            arity: 0,
            dual_lines: 7,
            tau_rule: "tau = 1",
            description: "complete quadrilateral, one point per chamber",
        },
    ]
}

const fn expect_tau_pappus() -> &'static str {
    "tau = 0"
}

pub fn names() -> Vec<&'static str> {
    entries().iter().map(|e| e.name).collect()
}

/// Build a catalog configuration from sign parameters.
pub fn get(name: &str, params: &[i64]) -> Result<Configuration, CatalogError> {
    let info = entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
    if params.len() != info.arity {
        return Err(CatalogError::WrongArity {
            name: name.to_string(),
            expected: info.arity,
            got: params.len(),
        });
    }
    for &p in params {
        if p != 1 && p != -1 {
            return Err(CatalogError::BadSign(p));
        }
    }
    let c = match (name, params) {
        ("C", [a, b]) => family_c(*a, *b),
        ("C1", [a, b]) => family_c1(*a, *b),
        ("C2", [a, b]) => family_c2(*a, *b),
        ("C2_sqrt2", [a, b]) => family_c2_sqrt2(*a, *b),
        ("D", [a, b]) => family_d(*a, *b),
        ("D1", [a, b]) => family_d1(*a, *b),
        ("D2", [a, b]) => family_d2(*a, *b),
        ("E", [a, b, g]) => family_e(*a, *b, *g),
        ("E1", [a, b, g]) => family_e1(*a, *b, *g),
        ("E2", [a, b, g]) => {
            if *g != 1 {
                return Err(CatalogError::UnsupportedParam("E2".into()));
            }
            family_e2(*a, *b)
        }
        ("E3", [a, b, g]) => family_e3(*a, *b, *g),
        ("Pappus", []) => pappus(2, 1).expect("valid default"),
        ("NonPappus", []) => non_pappus(),
        ("Quadrilateral", []) => quadrilateral(),
        _ => unreachable!("arity checked above"),
    };
    Ok(c)
}

/// Every member of every family, for exhaustive sweeps.
pub fn all_members() -> Vec<(String, Vec<i64>, Configuration)> {
    let signs = [1i64, -1];
    let mut out = Vec::new();
    for e in entries() {
        match e.arity {
            0 => out.push((e.name.to_string(), vec![], get(e.name, &[]).unwrap())),
            2 => {
                for a in signs {
                    for b in signs {
                        out.push((
                            e.name.to_string(),
                            vec![a, b],
                            get(e.name, &[a, b]).unwrap(),
                        ));
                    }
                }
            }
            3 => {
                for a in signs {
                    for b in signs {
                        for g in signs {
                            if e.name == "E2" && g != 1 {
                                continue;
                            }
                            out.push((
                                e.name.to_string(),
                                vec![a, b, g],
                                get(e.name, &[a, b, g]).unwrap(),
                            ));
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
    }
    out
}

const Q: FieldSpec = FieldSpec::Rational;

fn q2() -> FieldSpec {
    FieldSpec::quadratic(2).expect("2 is square-free")
}

fn pr(x: i64, y: i64, z: i64) -> ProjectivePoint {
    ProjectivePoint::from_ints(Q, x, y, z)
}

/// Point over ℚ(√2) with entries `a + b·√2` given as pairs.
fn p2(x: (i64, i64), y: (i64, i64), z: (i64, i64)) -> ProjectivePoint {
    let spec = q2();
    let s = |(a, b): (i64, i64)| FieldScalar::quad(spec, a, b, 1).expect("quadratic spec");
    ProjectivePoint::new([s(x), s(y), s(z)]).expect("nonzero triple")
}

fn uniform(
    vertices: [ProjectivePoint; 3],
    surrounding: Vec<ProjectivePoint>,
    field: FieldSpec,
) -> Configuration {
    Configuration::new(
        field,
        2,
        vertices.to_vec(),
        surrounding.into_iter().map(|p| (p, 1)).collect(),
    )
}

fn c_vertices() -> [ProjectivePoint; 3] {
    [pr(0, 1, 0), pr(1, 0, 0), pr(0, 0, 1)]
}

fn de_vertices_q2() -> [ProjectivePoint; 3] {
    [
        p2((0, 0), (0, 0), (1, 0)),
        p2((1, 0), (0, 0), (0, 0)),
        p2((0, 0), (1, 0), (0, 0)),
    ]
}

fn c_vertices_q2() -> [ProjectivePoint; 3] {
    [
        p2((0, 0), (1, 0), (0, 0)),
        p2((1, 0), (0, 0), (0, 0)),
        p2((0, 0), (0, 0), (1, 0)),
    ]
}

fn family_c(a: i64, b: i64) -> Configuration {
    uniform(
        c_vertices(),
        vec![
            pr(1, 1, 1),
            pr(4, 4, 1),
            pr(-1, 8, 2),
            pr(8, -1, 2),
            pr(-1, 8, 4 * a),
            pr(-1, 4 * a, 2),
            pr(-a, 4, 4),
            pr(8, -1, 4 * b),
            pr(4 * b, -1, 2),
            pr(4, -b, 4),
        ],
        Q,
    )
}

fn family_c1(a: i64, b: i64) -> Configuration {
    uniform(
        c_vertices(),
        vec![
            pr(1, 1, 1),
            pr(4, 4, 1),
            pr(1, 4, 1),
            pr(8, -1, 2),
            pr(1, 4, 2 * a),
            pr(1, 2 * a, 1),
            pr(a, 2, 2),
            pr(8, -1, 4 * b),
            pr(4 * b, -1, 2),
            pr(4, -b, 4),
        ],
        Q,
    )
}

fn family_c2(a: i64, b: i64) -> Configuration {
    uniform(
        c_vertices(),
        vec![
            pr(1, 1, 1),
            pr(4, 4, 1),
            pr(1, 4, 1),
            pr(4, 1, 1),
            pr(1, 4, 2 * a),
            pr(1, 2 * a, 1),
            pr(a, 2, 2),
            pr(4, 1, 2 * b),
            pr(2 * b, 1, 1),
            pr(2, b, 2),
        ],
        Q,
    )
}

fn family_c2_sqrt2(a: i64, b: i64) -> Configuration {
    uniform(
        c_vertices_q2(),
        vec![
            p2((1, 0), (1, 0), (1, 0)),
            p2((2, 0), (2, 0), (1, 0)),
            p2((1, 0), (2, 0), (1, 0)),
            p2((2, 0), (1, 0), (1, 0)),
            p2((1, 0), (2, 0), (0, a)),
            p2((1, 0), (0, a), (1, 0)),
            p2((0, a), (2, 0), (2, 0)),
            p2((2, 0), (1, 0), (0, b)),
            p2((0, b), (1, 0), (1, 0)),
            p2((2, 0), (0, b), (2, 0)),
        ],
        q2(),
    )
}

fn family_d(a: i64, b: i64) -> Configuration {
    uniform(
        de_vertices_q2(),
        vec![
            p2((1, 0), (1, 0), (1, 0)),
            p2((4, 0), (1, 0), (1, 0)),
            p2((4, 0), (1, 0), (4, 0)),
            p2((2, 0), (2, 0), (1, 0)),
            p2((4, 0), (-2, 0), (1, 0)),
            p2((-1, 0), (1, 0), (4, 0)),
            p2((4, 0), (-2, 0), (0, a)),
            p2((0, 2 * a), (-2, 0), (1, 0)),
            p2((2, 0), (0, -a), (1, 0)),
            p2((-1, 0), (1, 0), (0, b)),
            p2((-1, 0), (0, 2 * b), (4, 0)),
            p2((0, -b), (4, 0), (2, 0)),
        ],
        q2(),
    )
}

fn family_d1(a: i64, b: i64) -> Configuration {
    let mut c = family_d(a, b);
    c.surrounding[4].point = p2((4, 0), (2, 0), (1, 0));
    c.surrounding[6].point = p2((4, 0), (2, 0), (0, a));
    c.surrounding[7].point = p2((0, 2 * a), (2, 0), (1, 0));
    c.surrounding[8].point = p2((2, 0), (0, a), (1, 0));
    c
}

fn family_d2(a: i64, b: i64) -> Configuration {
    let mut c = family_d1(a, b);
    c.surrounding[5].point = p2((8, 0), (1, 0), (4, 0));
    c.surrounding[9].point = p2((8, 0), (1, 0), (0, b));
    c.surrounding[10].point = p2((4, 0), (0, b), (2, 0));
    c.surrounding[11].point = p2((0, 4 * b), (2, 0), (1, 0));
    c
}

fn family_e(a: i64, b: i64, g: i64) -> Configuration {
    uniform(
        de_vertices_q2(),
        vec![
            p2((1, 0), (2, 0), (1, 0)),
            p2((2, 0), (1, 0), (1, 0)),
            p2((2, 0), (-4, 0), (1, 0)),
            p2((-4, 0), (2, 0), (1, 0)),
            p2((5, 0), (10, 0), (-2, 0)),
            p2((2, 0), (-4, 0), (0, a)),
            p2((0, a), (-4, 0), (1, 0)),
            p2((1, 0), (0, -2 * a), (1, 0)),
            p2((-4, 0), (2, 0), (0, b)),
            p2((-4, 0), (0, b), (1, 0)),
            p2((0, -2 * b), (1, 0), (1, 0)),
            p2((5, 0), (5 * g, 0), (-2, 0)),
            p2((5 * g, 0), (5, 0), (-1, 0)),
            p2((10, 0), (5, 0), (-2 * g, 0)),
        ],
        q2(),
    )
}

fn family_e1(a: i64, b: i64, g: i64) -> Configuration {
    let mut c = family_e(a, b, g);
    c.surrounding[2].point = p2((2, 0), (-5, 0), (1, 0));
    c.surrounding[5].point = p2((2, 0), (-5, 0), (0, a));
    c.surrounding[6].point = p2((0, a), (-5, 0), (1, 0));
    c.surrounding[7].point = p2((2, 0), (0, -5 * a), (2, 0));
    c
}

fn family_e2(a: i64, b: i64) -> Configuration {
    let mut c = family_e1(a, b, 1);
    c.surrounding[3].point = p2((-5, 0), (2, 0), (1, 0));
    c.surrounding[8].point = p2((-5, 0), (2, 0), (0, b));
    c.surrounding[9].point = p2((-5, 0), (0, b), (1, 0));
    c.surrounding[10].point = p2((0, -5 * b), (2, 0), (2, 0));
    c
}

fn family_e3(a: i64, b: i64, g: i64) -> Configuration {
    let mut c = family_e(a, b, g);
    c.surrounding[2].point = p2((2, 0), (4, 0), (1, 0));
    c.surrounding[3].point = p2((4, 0), (2, 0), (1, 0));
    c.surrounding[5].point = p2((2, 0), (4, 0), (0, a));
    c.surrounding[6].point = p2((0, a), (4, 0), (1, 0));
    c.surrounding[7].point = p2((1, 0), (0, 2 * a), (1, 0));
    c.surrounding[8].point = p2((4, 0), (2, 0), (0, b));
    c.surrounding[9].point = p2((4, 0), (0, b), (1, 0));
    c.surrounding[10].point = p2((0, 2 * b), (1, 0), (1, 0));
    c
}

/// Rational realization of the Pappus configuration with alternating weights
/// `(z, -z, z, -z, z, -z)` mod m.  Derived from the classical two-transversal
/// construction; the vertex triple is mutually non-collinear in the incidence
/// structure.
pub fn pappus(m: u64, zeta: u64) -> Result<Configuration, CatalogError> {
    let z = zeta % m;
    if m < 2 || z == 0 {
        return Err(CatalogError::BadPlumbing);
    }
    let neg = (m - z) % m;
    if neg == 0 {
        return Err(CatalogError::BadPlumbing);
    }
    Ok(Configuration::new(
        Q,
        m,
        vec![pr(0, 0, 1), pr(5, 1, 1), pr(19, 2, 7)],
        vec![
            (pr(1, 0, 1), z),
            (pr(3, 0, 1), neg),
            (pr(2, 1, 1), z),
            (pr(7, 1, 1), neg),
            (pr(21, 3, 5), z),
            (pr(2, 1, -2), neg),
        ],
    ))
}

/// Rational realization of the non-Pappus (9_3) configuration; only the
/// uniform weight m/2 satisfies the line-sum condition, so m must be even.
pub fn non_pappus() -> Configuration {
    Configuration::new(
        Q,
        2,
        vec![pr(0, 0, 1), pr(0, 1, 0), pr(1, 0, 0)],
        vec![
            (pr(1, 1, 1), 1),
            (pr(2, 2, 1), 1),
            (pr(2, 1, 1), 1),
            (pr(-2, 2, 1), 1),
            (pr(1, -1, 1), 1),
            (pr(-2, -1, 1), 1),
        ],
    )
}

/// Complete quadrilateral: the four surrounding points span the frame, the
/// vertices are its diagonal points.  The realization is chosen so that the
/// dual arrangement is already support-normalized.
pub fn quadrilateral() -> Configuration {
    Configuration::new(
        Q,
        2,
        vec![pr(0, 0, 1), pr(1, 1, 0), pr(1, -1, 0)],
        vec![
            (pr(8, 1, -8), 1),
            (pr(8, 1, 8), 1),
            (pr(1, 8, -8), 1),
            (pr(1, 8, 8), 1),
        ],
    )
}

/// The printed maximal-set listings for the five families that have one,
/// 0-based over the ground order V1, V2, V3, S1, ...
pub fn printed_combinatorics(name: &str) -> Option<Vec<Vec<usize>>> {
    let sets: Vec<Vec<usize>> = match name {
        "C" => vec![
            vec![0, 3, 12],
            vec![0, 4, 6],
            vec![0, 5, 8],
            vec![0, 7, 9],
            vec![0, 10, 11],
            vec![1, 3, 9],
            vec![1, 4, 5],
            vec![1, 6, 11],
            vec![1, 7, 8],
            vec![1, 10, 12],
            vec![2, 3, 4],
            vec![2, 5, 7],
            vec![2, 6, 10],
            vec![2, 8, 9],
            vec![2, 11, 12],
        ],
        "C1" => vec![
            vec![0, 3, 5, 8, 12],
            vec![0, 4, 6],
            vec![0, 7, 9],
            vec![0, 10, 11],
            vec![1, 3, 9],
            vec![1, 4, 5],
            vec![1, 6, 11],
            vec![1, 7, 8],
            vec![1, 10, 12],
            vec![2, 3, 4],
            vec![2, 5, 7],
            vec![2, 6, 10],
            vec![2, 8, 9],
            vec![2, 11, 12],
        ],
        "C2" | "C2_sqrt2" => vec![
            vec![0, 3, 5, 8, 12],
            vec![0, 4, 6],
            vec![0, 7, 9],
            vec![0, 10, 11],
            vec![1, 3, 6, 9, 11],
            vec![1, 4, 5],
            vec![1, 7, 8],
            vec![1, 10, 12],
            vec![2, 3, 4],
            vec![2, 5, 7],
            vec![2, 6, 10],
            vec![2, 8, 9],
            vec![2, 11, 12],
        ],
        "D" => vec![
            vec![0, 3, 6],
            vec![0, 4, 5],
            vec![0, 7, 9],
            vec![0, 8, 12],
            vec![0, 10, 11],
            vec![0, 13, 14],
            vec![1, 3, 4],
            vec![1, 5, 8],
            vec![1, 6, 14],
            vec![1, 7, 10],
            vec![1, 9, 11],
            vec![1, 12, 13],
            vec![2, 3, 5],
            vec![2, 4, 7],
            vec![2, 6, 11],
            vec![2, 8, 13],
            vec![2, 9, 10],
            vec![2, 12, 14],
        ],
        "E" => vec![
            vec![0, 3, 7],
            vec![0, 4, 16],
            vec![0, 5, 8],
            vec![0, 6, 11],
            vec![0, 9, 10],
            vec![0, 12, 13],
            vec![0, 14, 15],
            vec![1, 3, 6],
            vec![1, 4, 13],
            vec![1, 5, 9],
            vec![1, 7, 15],
            vec![1, 8, 10],
            vec![1, 11, 12],
            vec![1, 14, 16],
            vec![2, 3, 10],
            vec![2, 4, 5],
            vec![2, 6, 12],
            vec![2, 7, 14],
            vec![2, 8, 9],
            vec![2, 11, 13],
            vec![2, 15, 16],
        ],
        _ => return None,
    };
    let mut sorted = sets;
    for s in &mut sorted {
        s.sort_unstable();
    }
    sorted.sort();
    Some(sorted)
}

/// The two printed generators of the automorphism group of the C family,
/// 0-based images over the ground order V1, V2, V3, S1, ..., S10.
pub fn c_family_printed_automorphisms() -> [Vec<usize>; 2] {
    [
        vec![1, 0, 2, 4, 3, 12, 9, 11, 10, 6, 8, 7, 5],
        vec![1, 0, 2, 3, 4, 6, 5, 10, 11, 12, 7, 8, 9],
    ]
}

/// Expected chamber weight of a sign-parameterized member: 0 when the
/// product of the signs is +1, otherwise m/2 = 1.
pub fn expected_tau(params: &[i64]) -> u64 {
    if params.iter().product::<i64>() == 1 {
        0
    } else {
        1
    }
}
