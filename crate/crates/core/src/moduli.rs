//! The explicit 13-line moduli family M(κ₁, κ₂; γ) with γ = κ₁² = κ₂²:
//! membership conditions, the two connected components, their geometric
//! characterizations, the ℚ(√2) gluing construction, and pair certification
//! by chamber weight.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::catalog;
use crate::combinatorics::{Combinatorics, Permutation};
use crate::configuration::{ConfigError, Configuration};
use crate::dual::{build_dpa, DualError};
use crate::field::{FieldError, FieldScalar, FieldSpec};
use crate::projective::{
    collinear, concurrent, conic_through_five, join, meet, GeometryError, ProjectiveLine,
    ProjectivePoint,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuliError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Dual(#[from] DualError),
    #[error("parameters rejected: {0}")]
    Rejected(String),
    #[error("lines {0}, {1}, {2} are not concurrent")]
    NotConcurrent(usize, usize, usize),
    #[error("configuration is not a member of the expected family")]
    NotInFamily,
}

/// Parameters of the family; γ is derived as κ₁².
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliParams {
    pub kappa1: FieldScalar,
    pub kappa2: FieldScalar,
    pub gamma: FieldScalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Component {
    Sigma0,
    Sigma1,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Sigma0 => write!(f, "Sigma0"),
            Component::Sigma1 => write!(f, "Sigma1"),
        }
    }
}

/// One violated membership condition, named after the alignment or collapse
/// it would create.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuliViolation {
    pub name: String,
    pub condition: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliVerdict {
    pub accepted: bool,
    pub component: Option<Component>,
    pub violations: Vec<ModuliViolation>,
}

impl ModuliParams {
    /// Build parameters from the two κ values; γ is κ₁².
    pub fn new(kappa1: FieldScalar, kappa2: FieldScalar) -> Self {
        let gamma = &kappa1 * &kappa1;
        ModuliParams {
            kappa1,
            kappa2,
            gamma,
        }
    }

    fn spec(&self) -> FieldSpec {
        self.kappa1.spec()
    }

    /// Evaluate every membership condition; the verdict names each violated
    /// condition after the alignment set or collapse it corresponds to.
    pub fn membership(&self) -> ModuliVerdict {
        let spec = self.spec();
        let one = FieldScalar::one(spec);
        let zero = FieldScalar::zero(spec);
        let k1 = &self.kappa1;
        let k2 = &self.kappa2;
        let mut violations = Vec::new();
        let mut push = |name: &str, condition: String| {
            violations.push(ModuliViolation {
                name: name.into(),
                condition,
            });
        };
        if (k2 * k2) != self.gamma {
            push("gamma", "kappa2^2 != gamma (= kappa1^2)".into());
        }
        if self.gamma == zero || self.gamma == one {
            push("gamma", "gamma in {0, 1} collapses base points".into());
        }
        let k1_cubed = k1 * k1 * k1;
        let k2_cubed = k2 * k2 * k2;
        if k1_cubed == one {
            push("S4 = S7", "kappa1^3 = 1".into());
        }
        if k2_cubed == one {
            push("S3 = S10", "kappa2^3 = 1".into());
        }
        if (k1 * k2) == one {
            push("S5 = S8, S6 = S10, S7 = S9", "kappa1 * kappa2 = 1".into());
        }
        let same = k1 == k2;
        let opposite = *k1 == -k2;
        if same {
            let k = k1;
            let k_sq = k * k;
            let k_cb = &k_sq * k;
            let two = FieldScalar::from_int(spec, 2);
            let three = FieldScalar::from_int(spec, 3);
            let checks: [(&str, FieldScalar); 5] = [
                ("{S2,S5,S8}", &(&two * &k_sq) + k + &one),
                (
                    "{S2,S5,S9}, {S2,S6,S8}, {S2,S7,S10}",
                    &(&two * &k_sq) + &(&two * k) + &one,
                ),
                ("{S2,S6,S9}", &(&two * k) + &one),
                (
                    "{S2,S5,S10}, {S2,S7,S8}",
                    &(&k_cb + &(&three * &k_sq)) + &(&two * k) + &one,
                ),
                (
                    "{S3,S7,S8}, {S4,S5,S10}",
                    &(&k_cb + &(&two * &k_sq)) + k + &one,
                ),
            ];
            for (name, value) in checks {
                if value.is_zero() {
                    push(
                        name,
                        format!("vanishing alignment polynomial at kappa = {k}"),
                    );
                }
            }
        } else if opposite {
            let k = k1;
            let k_sq = k * k;
            let k_cb = &k_sq * k;
            let two = FieldScalar::from_int(spec, 2);
            let checks: [(&str, FieldScalar); 5] = [
                ("{S2,S5,S10}", &(&k_cb + &k_sq) + &one),
                ("{S2,S7,S8}", &(&k_cb - &k_sq) - &one),
                ("{S2,S7,S10}", &(&two * &k_sq) + &one),
                ("{S3,S7,S8}", &(&k_cb + k) - &one),
                ("{S4,S5,S10}", &(&k_cb + k) + &one),
            ];
            for (name, value) in checks {
                if value.is_zero() {
                    push(
                        name,
                        format!("vanishing alignment polynomial at kappa = {k}"),
                    );
                }
            }
        }
        let component = if violations.is_empty() {
            if same {
                Some(Component::Sigma0)
            } else if opposite {
                Some(Component::Sigma1)
            } else {
                unreachable!("kappa1^2 = kappa2^2 forces kappa1 = ±kappa2")
            }
        } else {
            None
        };
        ModuliVerdict {
            accepted: violations.is_empty(),
            component,
            violations,
        }
    }

    /// The 13 lines of the family member, in the reference order.
    pub fn build_arrangement(&self) -> Result<Vec<ProjectiveLine>, ModuliError> {
        let spec = self.spec();
        let one = FieldScalar::one(spec);
        let zero = FieldScalar::zero(spec);
        if (&self.kappa2 * &self.kappa2) != self.gamma {
            return Err(ModuliError::Rejected("kappa2^2 != kappa1^2".into()));
        }
        if self.kappa1.is_zero() || self.kappa2.is_zero() || self.gamma == one {
            return Err(ModuliError::Rejected("gamma in {0, 1}".into()));
        }
        let g = &self.gamma;
        let k1 = &self.kappa1;
        let k2 = &self.kappa2;
        let k1_inv = k1.inv()?;
        let k2_inv = k2.inv()?;
        let line = |a: &FieldScalar, b: &FieldScalar, c: &FieldScalar| {
            ProjectiveLine::new([a.clone(), b.clone(), c.clone()]).expect("nonzero coefficients")
        };
        Ok(vec![
            line(&zero, &one, &zero),  // L1: y = 0
            line(&one, &zero, &zero),  // L2: x = 0
            line(&zero, &zero, &one),  // L3: z = 0
            line(&one, &one, &one),    // L4
            line(g, g, &one),          // L5
            line(&one, g, &one),       // L6
            line(g, &one, &one),       // L7
            line(&k1_inv, k1, &one),   // L8
            line(&one, k1, &one),      // L9
            line(&k1_inv, &one, &one), // L10
            line(k2, &k2_inv, &one),   // L11
            line(k2, &one, &one),      // L12
            line(&one, &k2_inv, &one), // L13
        ])
    }

    /// The dual configuration of the arrangement: vertices are the duals of
    /// the first three lines, the rest carry the uniform weight 1 mod 2.
    pub fn dual_configuration(&self) -> Result<Configuration, ModuliError> {
        let lines = self.build_arrangement()?;
        let points: Vec<ProjectivePoint> = lines.iter().map(|l| l.dualize()).collect();
        Ok(Configuration::new(
            self.spec(),
            2,
            points[..3].to_vec(),
            points[3..].iter().map(|p| (p.clone(), 1)).collect(),
        ))
    }

    /// The three geometric characterizations of the Σ⁰ component:
    /// tangency of six lines to a smooth conic (checked dually: their six
    /// dual points on a smooth conic), six triple points on a smooth conic,
    /// and collinearity of three distinguished triple points.
    pub fn characterizations(&self) -> Result<(bool, bool, bool), ModuliError> {
        let verdict = self.membership();
        if !verdict.accepted {
            return Err(ModuliError::Rejected(
                verdict
                    .violations
                    .iter()
                    .map(|v| format!("{}: {}", v.name, v.condition))
                    .collect::<Vec<_>>()
                    .join("; "),
            ));
        }
        let lines = self.build_arrangement()?;
        // (a) duals of L6, L7, L8, L10, L11 span a conic; is L13* on it?
        let dual_pt = |i: usize| lines[i - 1].dualize();
        let five = [dual_pt(6), dual_pt(7), dual_pt(8), dual_pt(10), dual_pt(11)];
        let conic_a = conic_through_five(&five)?;
        let tangent_conic = conic_a.is_smooth() && conic_a.contains(&dual_pt(13));
        // (b) six triple points on a smooth conic
        let tp = |a: usize, b: usize, c: usize| triple_point(&lines, a, b, c);
        let six = [
            tp(1, 8, 10)?,
            tp(1, 11, 12)?,
            tp(2, 8, 9)?,
            tp(2, 11, 13)?,
            tp(3, 9, 10)?,
            tp(3, 12, 13)?,
        ];
        let conic_b = conic_through_five(&[
            six[0].clone(),
            six[1].clone(),
            six[2].clone(),
            six[3].clone(),
            six[4].clone(),
        ])?;
        let six_points_conic = conic_b.is_smooth() && conic_b.contains(&six[5]);
        // (c) three triple points aligned
        let aligned = collinear(&tp(1, 11, 12)?, &tp(2, 8, 9)?, &tp(3, 4, 5)?);
        Ok((tangent_conic, six_points_conic, aligned))
    }
}

/// The common point of three concurrent lines, 1-based indices.
pub fn triple_point(
    lines: &[ProjectiveLine],
    i: usize,
    j: usize,
    k: usize,
) -> Result<ProjectivePoint, ModuliError> {
    let (a, b, c) = (&lines[i - 1], &lines[j - 1], &lines[k - 1]);
    if !concurrent(a, b, c) {
        return Err(ModuliError::NotConcurrent(i, j, k));
    }
    Ok(meet(a, b)?)
}

/// Concurrence characterization for members of the 13-point families:
/// the lines through S1S2, S5S6 and S8S9 are concurrent iff τ = 0.
pub fn concurrence_characterization(c: &Configuration) -> Result<bool, ModuliError> {
    c.ensure_valid()?;
    if c.n() < 9 {
        return Err(ModuliError::NotInFamily);
    }
    let s = |i: usize| &c.surrounding[i - 1].point;
    let l12 = join(s(1), s(2))?;
    let l56 = join(s(5), s(6))?;
    let l89 = join(s(8), s(9))?;
    Ok(concurrent(&l12, &l56, &l89))
}

/// Galois/symmetry gluing over ℚ(√2): the arrangement of the (α, β) member
/// equals `σ^((1-α)/2)(A) ∪ s∘σ^((1-β)/2)(A)` where `A` is the dual of the
/// 10-point block at α = +1, σ conjugates √2 and `s` swaps x and y.
pub fn rybnikov_gluing_check(alpha: i64, beta: i64) -> Result<bool, ModuliError> {
    assert!(alpha.abs() == 1 && beta.abs() == 1, "signs must be ±1");
    let base = catalog::get("C2_sqrt2", &[1, 1]).expect("catalog entry");
    // duals of V1..V3, S1..S4 and the three α-block points
    let mut block = Vec::new();
    for p in base.all_points().iter().take(10) {
        block.push(p.dualize());
    }
    let conj = |l: &ProjectiveLine| {
        ProjectiveLine::new([
            l.coeffs()[0].galois_conjugate(),
            l.coeffs()[1].galois_conjugate(),
            l.coeffs()[2].galois_conjugate(),
        ])
        .expect("conjugate of nonzero triple")
    };
    let swap = |l: &ProjectiveLine| {
        ProjectiveLine::new([
            l.coeffs()[1].clone(),
            l.coeffs()[0].clone(),
            l.coeffs()[2].clone(),
        ])
        .expect("swap of nonzero triple")
    };
    let phi = |l: &ProjectiveLine| if alpha == 1 { l.clone() } else { conj(l) };
    let psi = |l: &ProjectiveLine| {
        let g = if beta == 1 { l.clone() } else { conj(l) };
        swap(&g)
    };
    let mut glued: Vec<ProjectiveLine> =
        block.iter().map(phi).chain(block.iter().map(psi)).collect();
    glued.sort();
    glued.dedup();
    let target_config = catalog::get("C2_sqrt2", &[alpha, beta]).expect("catalog entry");
    let mut target: Vec<ProjectiveLine> = target_config
        .all_points()
        .iter()
        .map(|p| p.dualize())
        .collect();
    target.sort();
    target.dedup();
    Ok(glued == target)
}

/// Mirror symmetry x↔y maps the α-block dual onto the β-block dual.
pub fn swap_symmetry_check() -> Result<bool, ModuliError> {
    let base = catalog::get("C2_sqrt2", &[1, 1]).expect("catalog entry");
    let pts = base.all_points();
    let swap_pt = |p: &ProjectivePoint| {
        ProjectivePoint::new([
            p.coords()[1].clone(),
            p.coords()[0].clone(),
            p.coords()[2].clone(),
        ])
        .expect("nonzero")
    };
    // α-block points S5, S6, S7 are ground indices 7, 8, 9; β-block 10, 11, 12
    let alpha_block: Vec<ProjectivePoint> = (7..10).map(|i| swap_pt(&pts[i])).collect();
    let mut beta_block: Vec<ProjectivePoint> = (10..13).map(|i| pts[i].clone()).collect();
    let mut mapped = alpha_block;
    mapped.sort();
    beta_block.sort();
    Ok(mapped == beta_block)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "ZARISKI PAIR")]
    ZariskiPair,
    #[serde(rename = "INDISTINGUISHABLE BY TAU")]
    IndistinguishableByTau,
    #[serde(rename = "DIFFERENT COMBINATORICS")]
    DifferentCombinatorics,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::ZariskiPair => write!(f, "ZARISKI PAIR"),
            Verdict::IndistinguishableByTau => write!(f, "INDISTINGUISHABLE BY TAU"),
            Verdict::DifferentCombinatorics => write!(f, "DIFFERENT COMBINATORICS"),
            Verdict::Inconclusive => write!(f, "INCONCLUSIVE"),
        }
    }
}

/// Everything the pair certificate reports: the isomorphism witness (if
/// any), stability and uniformity of both sides, both weights, and the
/// verdict.  A certified pair needs isomorphic combinatorics, stability and
/// uniformity on both sides, and distinct weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub isomorphism: Option<Permutation>,
    pub stable: [bool; 2],
    pub uniform: [bool; 2],
    pub tau: [u64; 2],
    pub modulus: [u64; 2],
    pub verdict: Verdict,
}

pub fn zariski_certificate(
    c1: &Configuration,
    c2: &Configuration,
) -> Result<Certificate, ModuliError> {
    c1.ensure_valid()?;
    c2.ensure_valid()?;
    let k1 = Combinatorics::of_configuration(c1).map_err(|_| ModuliError::NotInFamily)?;
    let k2 = Combinatorics::of_configuration(c2).map_err(|_| ModuliError::NotInFamily)?;
    let isomorphism = k1.isomorphism(&k2);
    let vertex_preserving = |k: &Combinatorics, t: usize| {
        k.automorphisms()
            .iter()
            .all(|perm| perm.iter().take(t).all(|&img| img < t))
    };
    let stable = [vertex_preserving(&k1, c1.t()), vertex_preserving(&k2, c2.t())];
    let uniform = [c1.is_uniform(), c2.is_uniform()];
    let w1 = c1.chamber_weight()?;
    let w2 = c2.chamber_weight()?;
    // compare weights as exact fractions of the modulus (both lie in {0, m/2})
    let tau_differs = w1.value * w2.modulus != w2.value * w1.modulus;
    let verdict = match (&isomorphism, tau_differs) {
        (None, _) => Verdict::DifferentCombinatorics,
        (Some(_), false) => Verdict::IndistinguishableByTau,
        (Some(_), true) => {
            if stable[0] && stable[1] && uniform[0] && uniform[1] {
                Verdict::ZariskiPair
            } else {
                Verdict::Inconclusive
            }
        }
    };
    Ok(Certificate {
        isomorphism,
        stable,
        uniform,
        tau: [w1.value, w2.value],
        modulus: [w1.modulus, w2.modulus],
        verdict,
    })
}

/// Cross-check used by the verdict tests: the invariant exponent of the dual
/// arrangement agrees with the chamber weight on both sides.
pub fn certificate_cross_check(c: &Configuration) -> Result<bool, ModuliError> {
    let rel = crate::dual::verify_relation(c)?;
    let _ = build_dpa(c)?;
    Ok(rel.holds)
}
