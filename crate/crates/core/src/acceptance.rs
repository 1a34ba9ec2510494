//! The full verification suite behind `selftest` and the acceptance test
//! target: one check per claim the library is expected to reproduce, each
//! returning a pass/fail outcome with a short summary.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog;
use crate::combinatorics::{is_stable, Combinatorics, WeakCombinatorics};
use crate::configuration::Configuration;
use crate::depth::{depth, line_counts};
use crate::dual::{build_dpa, classify_c_leq_3, i_invariant_detail, CxClass};
use crate::field::{FieldScalar, FieldSpec};
use crate::moduli::{
    concurrence_characterization, rybnikov_gluing_check, swap_symmetry_check, triple_point,
    zariski_certificate, Component, ModuliParams, Verdict,
};
use crate::projective::{collinear, join, meet, ProjectivePoint, ProjectiveTransform};

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

type Outcome = Result<String, String>;

/// One acceptance check.
pub type Check = fn() -> Outcome;

fn outcome(id: usize, name: &'static str, r: Outcome) -> CriterionResult {
    match r {
        Ok(details) => CriterionResult {
            id,
            name,
            passed: true,
            details,
        },
        Err(details) => CriterionResult {
            id,
            name,
            passed: false,
            details,
        },
    }
}

/// The criterion table: id, display name and the check itself.
pub fn criteria() -> Vec<(usize, &'static str, Check)> {
    vec![
        (1, "chamber weights across all families", chamber_weights),
        (
            2,
            "combinatorics match printed listings",
            combinatorics_listings,
        ),
        (
            3,
            "automorphism groups and stability",
            automorphisms_and_stability,
        ),
        (4, "pair certificates (10 positive)", pair_certificates),
        (
            5,
            "wiring invariant equals chamber weight",
            invariant_relation,
        ),
        (
            6,
            "wiring set containments and exponent range",
            wiring_invariants,
        ),
        (7, "moduli membership and characterizations", moduli_checks),
        (8, "Galois/symmetry gluing identity", gluing_identity),
        (
            9,
            "covering classification of the 13-line family",
            c_leq_3_classification,
        ),
        (10, "character depth separates the (9_3) pair", depth_checks),
        (
            11,
            "property suites on random exact inputs",
            property_suites,
        ),
    ]
}

/// Run every criterion; failures are reported, never panicked.
pub fn run_all() -> Vec<CriterionResult> {
    criteria()
        .into_iter()
        .map(|(id, name, f)| outcome(id, name, f()))
        .collect()
}

/// Run one criterion by id.
pub fn run_one(id: usize) -> Option<CriterionResult> {
    criteria()
        .into_iter()
        .find(|(i, _, _)| *i == id)
        .map(|(id, name, f)| outcome(id, name, f()))
}

fn sign_families() -> Vec<(&'static str, Vec<Vec<i64>>)> {
    let two: Vec<Vec<i64>> = vec![vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]];
    let three: Vec<Vec<i64>> = {
        let mut v = Vec::new();
        for a in [1i64, -1] {
            for b in [1i64, -1] {
                for g in [1i64, -1] {
                    v.push(vec![a, b, g]);
                }
            }
        }
        v
    };
    let e2: Vec<Vec<i64>> = vec![
        vec![1, 1, 1],
        vec![1, -1, 1],
        vec![-1, 1, 1],
        vec![-1, -1, 1],
    ];
    vec![
        ("C", two.clone()),
        ("C1", two.clone()),
        ("C2", two.clone()),
        ("C2_sqrt2", two.clone()),
        ("D", two.clone()),
        ("D1", two.clone()),
        ("D2", two),
        ("E", three.clone()),
        ("E1", three.clone()),
        ("E2", e2),
        ("E3", three),
    ]
}

fn chamber_weights() -> Outcome {
    let mut checked = 0;
    for (name, members) in sign_families() {
        for params in members {
            let c = catalog::get(name, &params).map_err(|e| e.to_string())?;
            let tau = c
                .chamber_weight()
                .map_err(|e| format!("{name}{params:?}: {e}"))?;
            let expected = catalog::expected_tau(&params);
            if tau.value != expected {
                return Err(format!(
                    "{name}{params:?}: tau = {} expected {expected}",
                    tau.value
                ));
            }
            checked += 1;
        }
    }
    // the two fixed reference entries
    let quad = catalog::quadrilateral();
    let tau = quad.chamber_weight().map_err(|e| e.to_string())?;
    if tau.value != 1 {
        return Err(format!("quadrilateral: tau = {} expected 1", tau.value));
    }
    for m in [3u64, 5] {
        let p = catalog::pappus(m, 1).map_err(|e| e.to_string())?;
        let tau = p.chamber_weight().map_err(|e| e.to_string())?;
        if tau.value != 0 {
            return Err(format!(
                "pappus mod {m}: tau = {} expected 0 (odd modulus)",
                tau.value
            ));
        }
    }
    Ok(format!(
        "{checked} parameterized members have the expected weight"
    ))
}

fn combinatorics_listings() -> Outcome {
    for name in ["C", "C1", "C2", "C2_sqrt2", "D", "E"] {
        let arity = if name == "E" { 3 } else { 2 };
        let params: Vec<i64> = vec![1; arity];
        let c = catalog::get(name, &params).map_err(|e| e.to_string())?;
        let k = Combinatorics::of_configuration(&c).map_err(|e| e.to_string())?;
        let printed = catalog::printed_combinatorics(name).expect("listing exists");
        if k.sets != printed {
            return Err(format!(
                "{name}: computed maximal sets differ from the listing"
            ));
        }
    }
    let mut pairs = 0;
    for (name, members) in sign_families() {
        let ks: Vec<Combinatorics> = members
            .iter()
            .map(|p| {
                Combinatorics::of_configuration(&catalog::get(name, p).expect("member"))
                    .expect("distinct points")
            })
            .collect();
        for i in 0..ks.len() {
            for j in (i + 1)..ks.len() {
                if !ks[i].is_isomorphic(&ks[j]) {
                    return Err(format!(
                        "{name}: members {:?} and {:?} are not isomorphic",
                        members[i], members[j]
                    ));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "5 printed listings matched; {pairs} intra-family isomorphisms found"
    ))
}

fn automorphisms_and_stability() -> Outcome {
    let [sigma1, sigma2] = catalog::c_family_printed_automorphisms();
    for (a, b) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
        let c = catalog::get("C", &[a, b]).map_err(|e| e.to_string())?;
        let k = Combinatorics::of_configuration(&c).map_err(|e| e.to_string())?;
        let aut = k.automorphisms();
        if aut.len() != 4 {
            return Err(format!(
                "Aut(C({a},{b})) has order {}, expected 4",
                aut.len()
            ));
        }
        for (label, sigma) in [("sigma1", &sigma1), ("sigma2", &sigma2)] {
            if !aut.contains(sigma) {
                return Err(format!("Aut(C({a},{b})) is missing {label}"));
            }
        }
    }
    for (name, members) in sign_families() {
        for params in members {
            let c = catalog::get(name, &params).map_err(|e| e.to_string())?;
            if !is_stable(&c).map_err(|e| e.to_string())? {
                return Err(format!("{name}{params:?} is not stable"));
            }
        }
    }
    let pappus = catalog::pappus(2, 1).map_err(|e| e.to_string())?;
    if is_stable(&pappus).map_err(|e| e.to_string())? {
        return Err("Pappus configuration came out stable".into());
    }
    let quad = catalog::quadrilateral();
    if !is_stable(&quad).map_err(|e| e.to_string())? {
        return Err("quadrilateral came out unstable".into());
    }
    let k = Combinatorics::of_configuration(&quad).map_err(|e| e.to_string())?;
    if k.automorphisms().len() != 24 {
        return Err(format!(
            "Aut(quadrilateral) has order {}",
            k.automorphisms().len()
        ));
    }
    Ok("order-4 groups with both printed generators; stability as expected".into())
}

fn pair_certificates() -> Outcome {
    let mut family_positives = 0;
    let mut pairs_checked = 0;
    for (name, members) in sign_families() {
        if name == "C2_sqrt2" {
            continue; // same combinatorial family as C2; 10 families in total
        }
        // within a family the verdict is ZARISKI PAIR exactly when the
        // products of the sign parameters differ
        let configs: Vec<Configuration> = members
            .iter()
            .map(|p| catalog::get(name, p))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let mut saw_positive = false;
        for i in 0..configs.len() {
            for j in (i + 1)..configs.len() {
                let expected = if members[i].iter().product::<i64>()
                    != members[j].iter().product::<i64>()
                {
                    Verdict::ZariskiPair
                } else {
                    Verdict::IndistinguishableByTau
                };
                let cert =
                    zariski_certificate(&configs[i], &configs[j]).map_err(|e| e.to_string())?;
                if cert.verdict != expected {
                    return Err(format!(
                        "{name}: {:?} vs {:?} gave {:?}, expected {expected:?}",
                        members[i], members[j], cert.verdict
                    ));
                }
                saw_positive |= cert.verdict == Verdict::ZariskiPair;
                pairs_checked += 1;
            }
        }
        if saw_positive {
            family_positives += 1;
        }
    }
    if family_positives != 10 {
        return Err(format!(
            "expected a certified pair in each of 10 families, found {family_positives}"
        ));
    }
    let c11 = catalog::get("C", &[1, 1]).map_err(|e| e.to_string())?;
    let c1deg = catalog::get("C1", &[1, 1]).map_err(|e| e.to_string())?;
    let cert = zariski_certificate(&c11, &c1deg).map_err(|e| e.to_string())?;
    if cert.verdict != Verdict::DifferentCombinatorics {
        return Err(format!("C vs C1 gave {:?}", cert.verdict));
    }
    Ok(format!(
        "{pairs_checked} intra-family verdicts correct; a certified pair in each of 10 families"
    ))
}

fn catalog_with_extras() -> Vec<(String, Configuration)> {
    let mut all: Vec<(String, Configuration)> = catalog::all_members()
        .into_iter()
        .map(|(name, params, c)| (format!("{name}{params:?}"), c))
        .collect();
    for (m, zeta) in [(3u64, 1u64), (4, 1), (4, 2), (5, 2), (6, 1)] {
        all.push((
            format!("Pappus(m={m},z={zeta})"),
            catalog::pappus(m, zeta).expect("valid"),
        ));
    }
    all
}

fn invariant_relation() -> Outcome {
    // the reference dual-quadrilateral picture pins the wiring sets exactly
    let quad = catalog::quadrilateral();
    let detail = i_invariant_detail(&build_dpa(&quad).map_err(|e| e.to_string())?, 0)
        .map_err(|e| e.to_string())?;
    if detail.wiring.d1 != vec![5, 6]
        || detail.wiring.d2 != vec![4]
        || detail.wiring.d3 != vec![4, 6]
    {
        return Err(format!(
            "reference wiring sets off: D1={:?} D2={:?} D3={:?}",
            detail.wiring.d1, detail.wiring.d2, detail.wiring.d3
        ));
    }
    if detail.exponent != 1 {
        return Err(format!("reference exponent {} != 1", detail.exponent));
    }
    let mut runs = 0;
    for (label, c) in catalog_with_extras() {
        let tau = c
            .chamber_weight()
            .map_err(|e| format!("{label}: {e}"))?
            .value;
        let m = c.modulus;
        let a = build_dpa(&c).map_err(|e| format!("{label}: {e}"))?;
        let tic = crate::dual::triangular_inner_cyclic(&a);
        if !tic.passed {
            return Err(format!("{label}: {:?}", tic.failures));
        }
        for rotation in 0..3 {
            let rotated = a.rotate_support(rotation);
            for torus_start in 0..2 {
                let (normalized, _) = crate::dual::normalize_support_from(&rotated, torus_start)
                    .map_err(|e| format!("{label} rot {rotation} torus {torus_start}: {e}"))?;
                let w = crate::dual::wiring_sets(&normalized)
                    .map_err(|e| format!("{label} rot {rotation} torus {torus_start}: {e}"))?;
                let sum: u64 =
                    w.d1.iter()
                        .filter(|i| w.d3.contains(i))
                        .map(|&i| normalized.exponents[i] % m)
                        .sum();
                let exponent = (m - sum % m) % m;
                if exponent != (m - tau) % m {
                    return Err(format!(
                        "{label} rot {rotation} torus {torus_start}: exponent {exponent} vs tau {tau}"
                    ));
                }
                runs += 1;
            }
        }
    }
    Ok(format!("relation holds over {runs} pipeline runs"))
}

fn wiring_invariants() -> Outcome {
    let mut checked = 0;
    for (label, c) in catalog_with_extras() {
        let a = build_dpa(&c).map_err(|e| format!("{label}: {e}"))?;
        let detail = i_invariant_detail(&a, 0).map_err(|e| format!("{label}: {e}"))?;
        let w = &detail.wiring;
        if !w.d2.iter().all(|i| w.d3.contains(i)) {
            return Err(format!("{label}: D2 not inside D3"));
        }
        let diff: Vec<usize> = w.d3.iter().copied().filter(|i| !w.d2.contains(i)).collect();
        let inter: Vec<usize> = w.d1.iter().copied().filter(|i| w.d3.contains(i)).collect();
        if diff != inter {
            return Err(format!("{label}: D3 \\ D2 != D1 ∩ D3"));
        }
        let m = c.modulus;
        if !(detail.exponent == 0 || (m % 2 == 0 && detail.exponent == m / 2)) {
            return Err(format!(
                "{label}: exponent {} outside {{0, m/2}}",
                detail.exponent
            ));
        }
        checked += 1;
    }
    Ok(format!(
        "containments and exponent range hold on {checked} arrangements"
    ))
}

fn moduli_checks() -> Outcome {
    let spec = FieldSpec::Rational;
    let rat = |n: i64| FieldScalar::from_int(spec, n);
    let c2 = catalog::get("C2", &[1, 1]).map_err(|e| e.to_string())?;
    let reference = Combinatorics::of_configuration(&c2).map_err(|e| e.to_string())?;
    let mut per_component = [0usize; 2];
    for kappa in 2i64..=21 {
        for (side, k2) in [(0usize, kappa), (1, -kappa)] {
            let p = ModuliParams::new(rat(kappa), rat(k2));
            let verdict = p.membership();
            if !verdict.accepted {
                return Err(format!(
                    "kappa = ({kappa}, {k2}) rejected: {:?}",
                    verdict.violations
                ));
            }
            let expected_component = if side == 0 {
                Component::Sigma0
            } else {
                Component::Sigma1
            };
            if verdict.component != Some(expected_component) {
                return Err(format!("kappa = ({kappa}, {k2}): wrong component"));
            }
            let lines = p.build_arrangement().map_err(|e| e.to_string())?;
            let labels = (1..=13).map(|i| format!("L{i}")).collect();
            let k = Combinatorics::of_arrangement(&lines, labels).map_err(|e| e.to_string())?;
            if !k.is_isomorphic(&reference) {
                return Err(format!(
                    "kappa = ({kappa}, {k2}): combinatorics differ from C2"
                ));
            }
            let (a, b, c) = p.characterizations().map_err(|e| e.to_string())?;
            let expect = side == 0;
            if a != expect || b != expect || c != expect {
                return Err(format!(
                    "kappa = ({kappa}, {k2}): characterizations ({a}, {b}, {c})"
                ));
            }
            let p1 = triple_point(&lines, 1, 11, 12).map_err(|e| e.to_string())?;
            let p2 = triple_point(&lines, 2, 8, 9).map_err(|e| e.to_string())?;
            let p3 = triple_point(&lines, 3, 4, 5).map_err(|e| e.to_string())?;
            let want1 = ProjectivePoint::new([rat(1), rat(0), -rat(k2)]).expect("nonzero");
            let want2 = ProjectivePoint::new([rat(0), rat(1), -rat(kappa)]).expect("nonzero");
            let want3 = ProjectivePoint::from_ints(spec, 1, -1, 0);
            if p1 != want1 || p2 != want2 || p3 != want3 {
                return Err(format!("kappa = ({kappa}, {k2}): triple points off"));
            }
            per_component[side] += 1;
        }
    }
    // a rejected value with a real witness: the {S2,S6,S9} alignment
    let half = FieldScalar::from_ratio(spec, -1, 2);
    let p = ModuliParams::new(half.clone(), half);
    let verdict = p.membership();
    if verdict.accepted || !verdict.violations.iter().any(|v| v.name == "{S2,S6,S9}") {
        return Err("kappa = -1/2 was not rejected by the {S2,S6,S9} alignment".into());
    }
    let lines = p.build_arrangement().map_err(|e| e.to_string())?;
    let labels = (1..=13).map(|i| format!("L{i}")).collect();
    let k = Combinatorics::of_arrangement(&lines, labels).map_err(|e| e.to_string())?;
    if k.is_isomorphic(&reference) {
        return Err("rejected parameters still produced the reference combinatorics".into());
    }
    // the √2 member reproduces the catalog realization line for line
    let qspec = FieldSpec::quadratic(2).map_err(|e| e.to_string())?;
    let r2 = FieldScalar::sqrt_term(qspec).map_err(|e| e.to_string())?;
    let built = ModuliParams::new(r2.clone(), r2)
        .build_arrangement()
        .map_err(|e| e.to_string())?;
    let cat = catalog::get("C2_sqrt2", &[1, 1]).map_err(|e| e.to_string())?;
    let dual: Vec<_> = cat.all_points().iter().map(|p| p.dualize()).collect();
    if built != dual {
        return Err("√2 member differs from the catalog realization".into());
    }
    // concurrence characterization across the 13-point families
    for name in ["C", "C2"] {
        for (a, b) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
            let c = catalog::get(name, &[a, b]).map_err(|e| e.to_string())?;
            let conc = concurrence_characterization(&c).map_err(|e| e.to_string())?;
            let tau = c.chamber_weight().map_err(|e| e.to_string())?.value;
            if conc != (tau == 0) {
                return Err(format!("{name}({a},{b}): concurrence {conc} but tau {tau}"));
            }
        }
    }
    Ok(format!(
        "{} + {} accepted parameters verified per component",
        per_component[0], per_component[1]
    ))
}

fn gluing_identity() -> Outcome {
    for a in [1i64, -1] {
        for b in [1i64, -1] {
            if !rybnikov_gluing_check(a, b).map_err(|e| e.to_string())? {
                return Err(format!("gluing identity fails at ({a}, {b})"));
            }
        }
    }
    if !swap_symmetry_check().map_err(|e| e.to_string())? {
        return Err("x↔y symmetry does not swap the two point blocks".into());
    }
    Ok("gluing identity holds for all four sign choices".into())
}

fn c_leq_3_classification() -> Outcome {
    for (a, b) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
        let c = catalog::get("C", &[a, b]).map_err(|e| e.to_string())?;
        let arr = build_dpa(&c).map_err(|e| e.to_string())?;
        let r = classify_c_leq_3(&arr.lines).map_err(|e| e.to_string())?;
        if r.class != CxClass::CLeq3NonSimple {
            return Err(format!("C({a},{b}) dual classified as {:?}", r.class));
        }
        if r.cover != Some(vec![0, 1, 2]) || r.cover_counts != vec![5, 5, 5] {
            return Err(format!(
                "C({a},{b}) cover {:?} counts {:?}",
                r.cover, r.cover_counts
            ));
        }
        let w = WeakCombinatorics::of_lines(&arr.lines).map_err(|e| e.to_string())?;
        if w.global.get(&3) != Some(&15) || w.global.keys().any(|&mult| mult > 3) {
            return Err(format!(
                "C({a},{b}) has unexpected multiplicities {:?}",
                w.global
            ));
        }
    }
    Ok("13-line duals: three covering lines with 5 triple points each".into())
}

fn depth_checks() -> Outcome {
    for m in 2u64..=6 {
        for zeta in 1..m {
            let c = match catalog::pappus(m, zeta) {
                Ok(c) => c,
                Err(_) => continue,
            };
            if !c.validate().is_valid() {
                continue;
            }
            let r = depth(&c).map_err(|e| e.to_string())?;
            if r.depth != 0 {
                return Err(format!("Pappus m={m} zeta={zeta}: depth {}", r.depth));
            }
        }
    }
    let r = depth(&catalog::non_pappus()).map_err(|e| e.to_string())?;
    if r.depth == 0 {
        return Err("non-Pappus depth is 0".into());
    }
    // equal weak data, distinct depth
    let pap =
        build_dpa(&catalog::pappus(2, 1).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let non = build_dpa(&catalog::non_pappus()).map_err(|e| e.to_string())?;
    let wp = WeakCombinatorics::of_lines(&pap.lines).map_err(|e| e.to_string())?;
    let wn = WeakCombinatorics::of_lines(&non.lines).map_err(|e| e.to_string())?;
    if wp != wn {
        return Err("the two (9_3) duals have different weak combinatorics".into());
    }
    if wp.lines != 9 || wp.global.get(&3) != Some(&9) {
        return Err(format!("unexpected weak data: {:?}", wp.global));
    }
    for (name, _params, c) in catalog::all_members() {
        let l = line_counts(&c).map_err(|e| e.to_string())?;
        if l.iter().all(|&x| x >= 4) {
            let r = depth(&c).map_err(|e| e.to_string())?;
            if r.depth != 0 {
                return Err(format!(
                    "{name}: depth {} despite line counts {l:?}",
                    r.depth
                ));
            }
        }
    }
    Ok("depth 0 on one (9_3) realization, positive on the other".into())
}

/// Certified sign of `a + b·√d` from integer square-root bounds, the oracle
/// the exact sign predicate is tested against.
pub fn sign_oracle(x: &FieldScalar) -> i32 {
    let b = x.irrational_part();
    if b.is_zero() {
        let a = x.rational_part();
        return if a.is_zero() {
            0
        } else if a.is_positive() {
            1
        } else {
            -1
        };
    }
    let d = BigInt::from(x.spec().radicand().expect("quadratic"));
    let scale = BigInt::from(10u32).pow(40);
    let floor_root = (d * &scale * &scale).sqrt();
    let lower = BigRational::new(floor_root.clone(), scale.clone());
    let upper = BigRational::new(floor_root + BigInt::one(), scale);
    let a = x.rational_part();
    let (lo, hi) = if b.is_positive() {
        (a + b * &lower, a + b * &upper)
    } else {
        (a + b * &upper, a + b * &lower)
    };
    if lo.is_positive() {
        1
    } else if hi.is_negative() {
        -1
    } else {
        panic!("oracle interval straddles zero; raise the precision");
    }
}

fn random_scalar(rng: &mut ChaCha8Rng, spec: FieldSpec) -> FieldScalar {
    let mut part = |allow_zero: bool| {
        let num = loop {
            let n = rng.gen_range(-30i64..=30);
            if allow_zero || n != 0 {
                break n;
            }
        };
        let den = rng.gen_range(1i64..=8);
        (num, den)
    };
    match spec {
        FieldSpec::Rational => {
            let (p, q) = part(true);
            FieldScalar::from_ratio(spec, p, q)
        }
        FieldSpec::Quadratic { .. } => {
            let (p, q) = part(true);
            let (r, s) = part(true);
            let a = FieldScalar::from_ratio(spec, p, q);
            let b = FieldScalar::from_ratio(spec, r, s);
            a + b * FieldScalar::sqrt_term(spec).expect("quadratic")
        }
    }
}

fn random_point(rng: &mut ChaCha8Rng, spec: FieldSpec) -> ProjectivePoint {
    loop {
        let coords = [
            random_scalar(rng, spec),
            random_scalar(rng, spec),
            random_scalar(rng, spec),
        ];
        if let Ok(p) = ProjectivePoint::new(coords) {
            return p;
        }
    }
}

fn random_transform(rng: &mut ChaCha8Rng, spec: FieldSpec) -> ProjectiveTransform {
    loop {
        let m = crate::linalg::Mat3::new(std::array::from_fn(|_| {
            std::array::from_fn(|_| random_scalar(rng, spec))
        }));
        if let Ok(t) = ProjectiveTransform::new(m) {
            return t;
        }
    }
}

fn property_suites() -> Outcome {
    // weight constancy and range over the catalog and sampled moduli duals
    for (label, c) in catalog_with_extras() {
        c.chamber_weight().map_err(|e| format!("{label}: {e}"))?;
    }
    let rat = |n: i64| FieldScalar::from_int(FieldSpec::Rational, n);
    for kappa in 2i64..=21 {
        for k2 in [kappa, -kappa] {
            let c = ModuliParams::new(rat(kappa), rat(k2))
                .dual_configuration()
                .map_err(|e| e.to_string())?;
            c.chamber_weight()
                .map_err(|e| format!("moduli dual ({kappa}, {k2}): {e}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    let q2 = FieldSpec::quadratic(2).map_err(|e| e.to_string())?;
    let mut cases = 0usize;
    for spec in [FieldSpec::Rational, q2] {
        for _ in 0..500 {
            // duality involution and incidence duality
            let p = random_point(&mut rng, spec);
            let q = random_point(&mut rng, spec);
            if p.dualize().dualize() != p {
                return Err(format!("dualize² moved {p}"));
            }
            if p != q {
                let l = join(&p, &q).map_err(|e| e.to_string())?;
                if l.dualize() != meet(&p.dualize(), &q.dualize()).map_err(|e| e.to_string())? {
                    return Err(format!("join/meet duality fails on {p}, {q}"));
                }
                if p.on_line(&l) != l.dualize().on_line(&p.dualize()) {
                    return Err(format!("incidence duality fails on {p}"));
                }
            }
            // collinearity is a projective invariant
            let r = random_point(&mut rng, spec);
            let t = random_transform(&mut rng, spec);
            let before = p != q && q != r && p != r && collinear(&p, &q, &r);
            let (tp, tq, tr) = (t.apply_point(&p), t.apply_point(&q), t.apply_point(&r));
            let after = tp != tq && tq != tr && tp != tr && collinear(&tp, &tq, &tr);
            if p != q && q != r && p != r && before != after {
                return Err("collinearity not preserved by a projective transform".into());
            }
            // field axioms and the certified sign oracle
            let x = random_scalar(&mut rng, spec);
            let y = random_scalar(&mut rng, spec);
            if x.sign() != sign_oracle(&x) {
                return Err(format!("sign({x}) disagrees with the interval oracle"));
            }
            if (&x * &y).sign() != x.sign() * y.sign() {
                return Err(format!("sign is not multiplicative on {x}, {y}"));
            }
            if !x.is_zero() {
                let inv = x.inv().map_err(|e| e.to_string())?;
                if !(&x * &inv).is_one() {
                    return Err(format!("x * (1/x) != 1 for {x}"));
                }
            }
            let lhs = (&x + &y).galois_conjugate();
            let rhs = x.galois_conjugate() + y.galois_conjugate();
            if lhs != rhs {
                return Err("conjugation is not additive".into());
            }
            let lhs = (&x * &y).galois_conjugate();
            let rhs = x.galois_conjugate() * y.galois_conjugate();
            if lhs != rhs {
                return Err("conjugation is not multiplicative".into());
            }
            cases += 1;
        }
    }
    // combinatorics duality on random exact point sets
    for round in 0..40 {
        let spec = if round % 2 == 0 {
            FieldSpec::Rational
        } else {
            q2
        };
        let mut pts: Vec<ProjectivePoint> = Vec::new();
        while pts.len() < 7 {
            let p = random_point(&mut rng, spec);
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let labels: Vec<String> = (0..7).map(|i| format!("P{i}")).collect();
        let kp = Combinatorics::of_points(&pts, labels.clone()).map_err(|e| e.to_string())?;
        let duals: Vec<_> = pts.iter().map(|p| p.dualize()).collect();
        let kl = Combinatorics::of_arrangement(&duals, labels).map_err(|e| e.to_string())?;
        if kp.sets != kl.sets {
            return Err("point and dual-arrangement combinatorics differ".into());
        }
        cases += 1;
    }
    Ok(format!("{cases} random property cases passed"))
}
