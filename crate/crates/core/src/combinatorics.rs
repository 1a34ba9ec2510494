//! Incidence combinatorics of point sets and line arrangements: maximal
//! collinear (dually, concurrent) subsets, combinatorial isomorphism,
//! automorphism groups, stability, and weak combinatorics.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use thiserror::Error;

use crate::configuration::{ConfigError, Configuration};
use crate::projective::{join, meet, ProjectiveLine, ProjectivePoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombError {
    #[error("duplicate element at indices {0} and {1}")]
    Duplicate(usize, usize),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

pub type Permutation = Vec<usize>;

/// Maximal incident subsets of size ≥ 3 over a labeled ground set.
///
/// Invariants: no stored subset contains another, and two subsets meet in at
/// most one element.  Subsets and the subset list are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combinatorics {
    pub size: usize,
    pub labels: Vec<String>,
    pub sets: Vec<Vec<usize>>,
}

fn collect_maximal_sets<K: Hash + Eq>(pairs: Vec<(K, usize)>) -> Vec<Vec<usize>> {
    let mut by_key: HashMap<K, Vec<usize>> = HashMap::new();
    for (k, i) in pairs {
        let entry = by_key.entry(k).or_default();
        if !entry.contains(&i) {
            entry.push(i);
        }
    }
    let mut sets: Vec<Vec<usize>> = by_key
        .into_values()
        .filter(|s| s.len() >= 3)
        .map(|mut s| {
            s.sort_unstable();
            s
        })
        .collect();
    sets.sort();
    sets.dedup();
    sets
}

impl Combinatorics {
    /// Maximal collinear subsets of a point set, by grouping pair joins.
    pub fn of_points(points: &[ProjectivePoint], labels: Vec<String>) -> Result<Self, CombError> {
        check_distinct(points)?;
        let mut pairs = Vec::new();
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                let line = join(&points[i], &points[j]).expect("distinct points");
                pairs.push((line.clone(), i));
                pairs.push((line, j));
            }
        }
        Ok(Combinatorics {
            size: points.len(),
            labels,
            sets: collect_maximal_sets(pairs),
        })
    }

    /// Maximal concurrent subsets of a line arrangement.
    pub fn of_arrangement(
        lines: &[ProjectiveLine],
        labels: Vec<String>,
    ) -> Result<Self, CombError> {
        check_distinct(lines)?;
        let mut pairs = Vec::new();
        for i in 0..lines.len() {
            for j in (i + 1)..lines.len() {
                let p = meet(&lines[i], &lines[j]).expect("distinct lines");
                pairs.push((p.clone(), i));
                pairs.push((p, j));
            }
        }
        Ok(Combinatorics {
            size: lines.len(),
            labels,
            sets: collect_maximal_sets(pairs),
        })
    }

    pub fn of_configuration(c: &Configuration) -> Result<Self, CombError> {
        Combinatorics::of_points(&c.all_points(), c.labels())
    }

    /// Multiset of sizes of the maximal subsets through each element; the
    /// basic invariant used to prune the isomorphism search.
    fn profiles(&self) -> Vec<Vec<usize>> {
        let mut prof = vec![Vec::new(); self.size];
        for s in &self.sets {
            for &i in s {
                prof[i].push(s.len());
            }
        }
        for p in &mut prof {
            p.sort_unstable();
        }
        prof
    }

    /// Size of the maximal subset through each pair (0 when the pair is in
    /// none), as a flat matrix.
    fn pair_matrix(&self) -> Vec<usize> {
        let n = self.size;
        let mut m = vec![0usize; n * n];
        for s in &self.sets {
            for &i in s {
                for &j in s {
                    if i != j {
                        m[i * n + j] = s.len();
                    }
                }
            }
        }
        m
    }

    /// Find a bijection sending maximal subsets onto maximal subsets, or
    /// report that none exists.  Exhaustive backtracking ordered by rarest
    /// incidence profile first.
    pub fn isomorphism(&self, other: &Combinatorics) -> Option<Permutation> {
        let mut out = None;
        self.search(other, &mut |perm| {
            out = Some(perm.to_vec());
            true
        });
        out
    }

    pub fn is_isomorphic(&self, other: &Combinatorics) -> bool {
        self.isomorphism(other).is_some()
    }

    /// The full automorphism group as an explicit permutation list.
    pub fn automorphisms(&self) -> Vec<Permutation> {
        let mut all = Vec::new();
        self.search(self, &mut |perm| {
            all.push(perm.to_vec());
            false
        });
        all.sort();
        all
    }

    /// Backtracking search for profile- and incidence-compatible bijections;
    /// `emit` returns true to stop at the first witness.
    fn search(&self, other: &Combinatorics, emit: &mut dyn FnMut(&[usize]) -> bool) {
        let n = self.size;
        if n != other.size || self.sets.len() != other.sets.len() {
            return;
        }
        let my_sizes: Vec<usize> = self.sets.iter().map(|s| s.len()).collect();
        let their_sizes: Vec<usize> = other.sets.iter().map(|s| s.len()).collect();
        {
            let mut a = my_sizes.clone();
            let mut b = their_sizes.clone();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return;
            }
        }
        let prof_a = self.profiles();
        let prof_b = other.profiles();
        // order source elements: rarest profile first, constrained ones early
        let mut freq: HashMap<&Vec<usize>, usize> = HashMap::new();
        for p in &prof_a {
            *freq.entry(p).or_insert(0) += 1;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (freq[&prof_a[i]], std::cmp::Reverse(prof_a[i].len()), i));
        let pm_a = self.pair_matrix();
        let pm_b = other.pair_matrix();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_search(
            other, &order, 0, &mut image, &mut used, &prof_a, &prof_b, &pm_a, &pm_b, emit,
        );
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_search(
        &self,
        other: &Combinatorics,
        order: &[usize],
        depth: usize,
        image: &mut [usize],
        used: &mut [bool],
        prof_a: &[Vec<usize>],
        prof_b: &[Vec<usize>],
        pm_a: &[usize],
        pm_b: &[usize],
        emit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let n = self.size;
        if depth == order.len() {
            // pair compatibility held throughout; confirm sets map onto sets
            let mapped_ok = self.sets.iter().all(|s| {
                let mut img: Vec<usize> = s.iter().map(|&i| image[i]).collect();
                img.sort_unstable();
                other.sets.binary_search(&img).is_ok()
            });
            if mapped_ok {
                return emit(image);
            }
            return false;
        }
        let src = order[depth];
        for cand in 0..n {
            if used[cand] || prof_a[src] != prof_b[cand] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&prev| pm_a[src * n + prev] == pm_b[cand * n + image[prev]]);
            if !consistent {
                continue;
            }
            image[src] = cand;
            used[cand] = true;
            if self.extend_search(
                other,
                order,
                depth + 1,
                image,
                used,
                prof_a,
                prof_b,
                pm_a,
                pm_b,
                emit,
            ) {
                return true;
            }
            used[cand] = false;
            image[src] = usize::MAX;
        }
        false
    }
}

fn check_distinct<T: PartialEq>(items: &[T]) -> Result<(), CombError> {
    for i in 0..items.len() {
        for j in (i + 1)..items.len() {
            if items[i] == items[j] {
                return Err(CombError::Duplicate(i, j));
            }
        }
    }
    Ok(())
}

/// Stable iff every combinatorial automorphism maps vertices to vertices.
pub fn is_stable(c: &Configuration) -> Result<bool, CombError> {
    c.ensure_valid()?;
    let k = Combinatorics::of_configuration(c)?;
    let t = c.t();
    Ok(k.automorphisms()
        .iter()
        .all(|perm| perm.iter().take(t).all(|&img| img < t)))
}

/// Compose permutations: `(f ∘ g)(i) = f(g(i))`.
pub fn compose(f: &[usize], g: &[usize]) -> Permutation {
    g.iter().map(|&i| f[i]).collect()
}

pub fn invert(f: &[usize]) -> Permutation {
    let mut inv = vec![0; f.len()];
    for (i, &fi) in f.iter().enumerate() {
        inv[fi] = i;
    }
    inv
}

/// Line count plus singular-point multiplicities, globally and per line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakCombinatorics {
    pub lines: usize,
    /// multiplicity -> number of singular points of that multiplicity
    pub global: BTreeMap<usize, usize>,
    /// per-line multiplicity multisets, sorted so comparison ignores labels
    pub per_line: Vec<BTreeMap<usize, usize>>,
}

impl WeakCombinatorics {
    pub fn of_lines(lines: &[ProjectiveLine]) -> Result<Self, CombError> {
        check_distinct(lines)?;
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
        let mut global = BTreeMap::new();
        let mut per_line_raw = vec![BTreeMap::new(); lines.len()];
        for members in through.values() {
            let mult = members.len();
            *global.entry(mult).or_insert(0) += 1;
            for &l in members {
                *per_line_raw[l].entry(mult).or_insert(0) += 1;
            }
        }
        let mut per_line = per_line_raw;
        per_line.sort();
        Ok(WeakCombinatorics {
            lines: lines.len(),
            global,
            per_line,
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

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("P{i}")).collect()
    }

    /// All collinear triples by brute force, the oracle the maximal-set
    /// representation is checked against.
    fn brute_force_triples(points: &[ProjectivePoint]) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                for k in (j + 1)..points.len() {
                    if crate::projective::collinear(&points[i], &points[j], &points[k]) {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    }

    fn triples_of_sets(sets: &[Vec<usize>]) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for s in sets {
            for a in 0..s.len() {
                for b in (a + 1)..s.len() {
                    for c in (b + 1)..s.len() {
                        out.push([s[a], s[b], s[c]]);
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn maximal_sets_equal_triple_closure() {
        // frame + unit point + an extra point on x = y
        let pts = vec![
            pt(1, 0, 0),
            pt(0, 1, 0),
            pt(0, 0, 1),
            pt(1, 1, 1),
            pt(1, 1, 2),
            pt(2, 1, 1),
        ];
        let k = Combinatorics::of_points(&pts, labels(6)).unwrap();
        let mut brute = brute_force_triples(&pts);
        brute.sort();
        assert_eq!(triples_of_sets(&k.sets), brute);
    }

    #[test]
    fn generic_lines_have_empty_combinatorics() {
        let lines = vec![
            ProjectiveLine::from_ints(Q, 1, 0, 0),
            ProjectiveLine::from_ints(Q, 0, 1, 0),
            ProjectiveLine::from_ints(Q, 1, 1, 1),
        ];
        let k = Combinatorics::of_arrangement(&lines, labels(3)).unwrap();
        assert!(k.sets.is_empty());
        let aut = k.automorphisms();
        // no incidence constraints at all: every permutation is allowed
        assert_eq!(aut.len(), 6);
    }

    #[test]
    fn duplicates_rejected() {
        let pts = vec![pt(1, 0, 0), pt(2, 0, 0)];
        assert_eq!(
            Combinatorics::of_points(&pts, labels(2)).unwrap_err(),
            CombError::Duplicate(0, 1)
        );
    }

    #[test]
    fn identity_isomorphism_on_self() {
        let pts = vec![
            pt(1, 0, 0),
            pt(0, 1, 0),
            pt(0, 0, 1),
            pt(1, 1, 1),
            pt(1, 2, 3),
        ];
        let k = Combinatorics::of_points(&pts, labels(5)).unwrap();
        let iso = k.isomorphism(&k).unwrap();
        // the witness maps sets onto sets; verify explicitly
        for s in &k.sets {
            let mut img: Vec<usize> = s.iter().map(|&i| iso[i]).collect();
            img.sort_unstable();
            assert!(k.sets.binary_search(&img).is_ok());
        }
    }

    #[test]
    fn point_line_duality_preserves_combinatorics() {
        let pts = vec![
            pt(1, 0, 0),
            pt(0, 1, 0),
            pt(0, 0, 1),
            pt(1, 1, 1),
            pt(1, 1, 2),
            pt(2, 1, 1),
        ];
        let lines: Vec<ProjectiveLine> = pts.iter().map(|p| p.dualize()).collect();
        let kp = Combinatorics::of_points(&pts, labels(6)).unwrap();
        let kl = Combinatorics::of_arrangement(&lines, labels(6)).unwrap();
        // the index-preserving map is an isomorphism: the sets coincide
        assert_eq!(kp.sets, kl.sets);
    }

    #[test]
    fn permutation_helpers() {
        let f = vec![2, 0, 1];
        let g = vec![1, 2, 0];
        assert_eq!(compose(&f, &g), vec![0, 1, 2]);
        assert_eq!(invert(&f), vec![1, 2, 0]);
    }

    /// Brute-force oracle: all permutations of a small ground set that map
    /// the set system onto itself.
    fn brute_force_automorphisms(k: &Combinatorics) -> Vec<Permutation> {
        fn heap(perm: &mut Vec<usize>, n: usize, out: &mut Vec<Permutation>, k: &Combinatorics) {
            if n == 1 {
                let ok = k.sets.iter().all(|s| {
                    let mut img: Vec<usize> = s.iter().map(|&i| perm[i]).collect();
                    img.sort_unstable();
                    k.sets.binary_search(&img).is_ok()
                });
                if ok {
                    out.push(perm.clone());
                }
                return;
            }
            for i in 0..n {
                heap(perm, n - 1, out, k);
                if n.is_multiple_of(2) {
                    perm.swap(i, n - 1);
                } else {
                    perm.swap(0, n - 1);
                }
            }
        }
        let mut perm: Vec<usize> = (0..k.size).collect();
        let mut out = Vec::new();
        heap(&mut perm, k.size, &mut out, k);
        out.sort();
        out
    }

    #[test]
    fn quadrilateral_automorphisms_match_brute_force() {
        let c = crate::catalog::quadrilateral();
        let k = Combinatorics::of_configuration(&c).unwrap();
        let fast = k.automorphisms();
        let slow = brute_force_automorphisms(&k);
        assert_eq!(slow.len(), 24);
        assert_eq!(fast, slow);
    }

    #[test]
    fn automorphisms_form_a_group() {
        let c = crate::catalog::get("C", &[1, 1]).unwrap();
        let k = Combinatorics::of_configuration(&c).unwrap();
        let aut = k.automorphisms();
        let identity: Permutation = (0..k.size).collect();
        assert!(aut.contains(&identity));
        for f in &aut {
            assert!(aut.contains(&invert(f)));
            for g in &aut {
                assert!(aut.contains(&compose(f, g)));
            }
        }
    }

    #[test]
    fn isomorphism_witnesses_compose_and_invert() {
        let members = [[1i64, 1], [1, -1], [-1, -1]];
        let ks: Vec<Combinatorics> = members
            .iter()
            .map(|p| {
                Combinatorics::of_configuration(&crate::catalog::get("C", p).unwrap()).unwrap()
            })
            .collect();
        let check = |f: &Permutation, from: &Combinatorics, to: &Combinatorics| {
            from.sets.iter().all(|s| {
                let mut img: Vec<usize> = s.iter().map(|&i| f[i]).collect();
                img.sort_unstable();
                to.sets.binary_search(&img).is_ok()
            })
        };
        let f01 = ks[0].isomorphism(&ks[1]).unwrap();
        let f12 = ks[1].isomorphism(&ks[2]).unwrap();
        // symmetric: the inverse witnesses the reverse direction
        assert!(check(&invert(&f01), &ks[1], &ks[0]));
        // transitive: the composite witnesses the long way around
        assert!(check(&compose(&f12, &f01), &ks[0], &ks[2]));
    }

    #[test]
    fn weak_combinatorics_of_triangle() {
        let lines = vec![
            ProjectiveLine::from_ints(Q, 1, 0, 0),
            ProjectiveLine::from_ints(Q, 0, 1, 0),
            ProjectiveLine::from_ints(Q, 1, 1, 1),
        ];
        let w = WeakCombinatorics::of_lines(&lines).unwrap();
        assert_eq!(w.lines, 3);
        assert_eq!(w.global.get(&2), Some(&3));
        // consistency: sum over lines of multiplicity-k counts = k * global
        for (&mult, &count) in &w.global {
            let total: usize = w
                .per_line
                .iter()
                .map(|m| m.get(&mult).copied().unwrap_or(0))
                .sum();
            assert_eq!(total, mult * count);
        }
    }
}
