//! The order on associative quasitrivial operations, containment of biclosed
//! sets, Hasse diagrams and lattice operations.
//!
//! On two points the four operations are ordered with `π_1` at the bottom,
//! `π_2` at the top and `max`, `min` incomparable in between. Two operations
//! compare when all their two-point restrictions do.

use std::fmt::Write as _;

use itertools::Itertools;

use crate::bijection::{biclosed_to_semigroup, classify};
use crate::error::{Error, Result};
use crate::root_system::RootSet;
use crate::semigroup::{QuasitrivialOp, TwoPointOp};

impl TwoPointOp {
    /// The order on the four operations of a two-element set.
    pub fn leq(self, other: TwoPointOp) -> bool {
        self == other || self == TwoPointOp::First || other == TwoPointOp::Second
    }
}

pub fn leq_restriction(f: &QuasitrivialOp, g: &QuasitrivialOp, a: usize, b: usize) -> Result<bool> {
    if f.size() != g.size() {
        return Err(Error::SizeMismatch { left: f.size(), right: g.size() });
    }
    Ok(f.restriction(a, b)?.leq(g.restriction(a, b)?))
}

/// `F ≤ G` iff `F|{a,b} ≤ G|{a,b}` for every pair `a ≠ b`.
pub fn leq_op(f: &QuasitrivialOp, g: &QuasitrivialOp) -> Result<bool> {
    if f.size() != g.size() {
        return Err(Error::SizeMismatch { left: f.size(), right: g.size() });
    }
    for (a, b) in (1..=f.size()).tuple_combinations() {
        if !leq_restriction(f, g, a, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn leq_set(c: &RootSet, d: &RootSet) -> bool {
    c.is_subset(d)
}

/// Covering pairs `(i, j)` (`i` covered by `j`) of the order `leq` on `elements`,
/// sorted.
pub fn hasse<T>(elements: &[T], leq: impl Fn(&T, &T) -> bool) -> Vec<(usize, usize)> {
    let k = elements.len();
    let rel: Vec<Vec<bool>> =
        (0..k).map(|i| (0..k).map(|j| i != j && leq(&elements[i], &elements[j])).collect()).collect();
    hasse_from_matrix(&rel)
}

fn hasse_from_matrix(rel: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let k = rel.len();
    let words = k.div_ceil(64).max(1);
    let rows: Vec<Vec<u64>> = rel
        .iter()
        .map(|row| {
            let mut bits = vec![0u64; words];
            for j in (0..k).filter(|&j| row[j]) {
                bits[j / 64] |= 1 << (j % 64);
            }
            bits
        })
        .collect();
    let mut edges = Vec::new();
    for (i, row) in rel.iter().enumerate() {
        // everything reachable in two strict steps is not a cover
        let mut far = vec![0u64; words];
        for l in (0..k).filter(|&l| row[l]) {
            for (f, r) in far.iter_mut().zip(&rows[l]) {
                *f |= r;
            }
        }
        edges.extend((0..k).filter(|&j| row[j] && !bit(&far, j)).map(|j| (i, j)));
    }
    edges
}

/// Biclosed sets paired with their operations, with both order relations.
#[derive(Clone, Debug)]
pub struct PosetView {
    elements: Vec<(RootSet, QuasitrivialOp)>,
    /// `subset[i][j]`: `C_i ⊆ C_j`.
    subset: Vec<Vec<bool>>,
}

/// Outcome of comparing containment with the operation order over all pairs.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct IsomorphismReport {
    pub elements: usize,
    pub pairs: usize,
    pub agree: usize,
    pub comparable: usize,
    pub mismatches: Vec<(usize, usize)>,
}

impl IsomorphismReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.agree == self.pairs
    }
}

impl PosetView {
    /// Pairs every set with its operation. Elements are sorted lexicographically.
    pub fn new(mut sets: Vec<RootSet>) -> Result<Self> {
        sets.sort();
        sets.dedup();
        let elements = sets.into_iter().map(|c| Ok((c, biclosed_to_semigroup(&c)?))).collect::<Result<Vec<_>>>()?;
        let subset = elements.iter().map(|(c, _)| elements.iter().map(|(d, _)| leq_set(c, d)).collect()).collect();
        Ok(PosetView { elements, subset })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[(RootSet, QuasitrivialOp)] {
        &self.elements
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.subset[i][j]
    }

    /// Compares `C ⊆ C'` with `F_C ≤ F_{C'}` on every ordered pair.
    pub fn check_isomorphism(&self) -> Result<IsomorphismReport> {
        let k = self.len();
        let mut report =
            IsomorphismReport { elements: k, pairs: k * k, agree: 0, comparable: 0, mismatches: Vec::new() };
        for i in 0..k {
            for j in 0..k {
                let by_op = leq_op(&self.elements[i].1, &self.elements[j].1)?;
                if by_op == self.subset[i][j] {
                    report.agree += 1;
                } else {
                    report.mismatches.push((i, j));
                }
                report.comparable += usize::from(by_op);
            }
        }
        Ok(report)
    }

    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let strict: Vec<Vec<bool>> =
            (0..self.len()).map(|i| (0..self.len()).map(|j| i != j && self.subset[i][j]).collect()).collect();
        hasse_from_matrix(&strict)
    }

    /// Graphviz rendering of the Hasse diagram. Node ids are the lexicographic
    /// ranks of the sets; labels show the canonical form and the block structure.
    pub fn to_dot(&self) -> Result<String> {
        let mut out = String::new();
        let n = self.elements.first().map_or(0, |(c, _)| c.rank());
        writeln!(out, "digraph biclosed_A{n} {{").unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
        for (i, (c, f)) in self.elements.iter().enumerate() {
            let canon = classify(c)?;
            let blocks = f.to_preorder()?;
            writeln!(out, "  n{i} [label=\"{}\\n{}\"];", escape(&canon.to_string()), escape(&blocks.to_string()))
                .unwrap();
        }
        for (i, j) in self.hasse_edges() {
            writeln!(out, "  n{i} -> n{j};").unwrap();
        }
        out.push_str("}\n");
        Ok(out)
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// A finite poset given by its elements, with meets and joins found by scanning.
///
/// Down-sets and up-sets are kept as bitsets so that the greatest lower bound
/// of `i, j` is the element whose down-set equals `down(i) ∩ down(j)`.
#[derive(Clone, Debug)]
pub struct FiniteLattice {
    sets: Vec<RootSet>,
    down: Vec<Vec<u64>>,
    up: Vec<Vec<u64>>,
}

fn bit(v: &[u64], i: usize) -> bool {
    v[i / 64] >> (i % 64) & 1 == 1
}

fn popcount(v: &[u64]) -> u32 {
    v.iter().map(|w| w.count_ones()).sum()
}

impl FiniteLattice {
    pub fn new(mut sets: Vec<RootSet>) -> Self {
        sets.sort();
        sets.dedup();
        let k = sets.len();
        let words = k.div_ceil(64).max(1);
        let mut down = vec![vec![0u64; words]; k];
        let mut up = vec![vec![0u64; words]; k];
        for i in 0..k {
            for j in 0..k {
                if sets[i].is_subset(&sets[j]) {
                    down[j][i / 64] |= 1 << (i % 64);
                    up[i][j / 64] |= 1 << (j % 64);
                }
            }
        }
        FiniteLattice { sets, down, up }
    }

    pub fn sets(&self) -> &[RootSet] {
        &self.sets
    }

    pub fn index_of(&self, c: &RootSet) -> Option<usize> {
        self.sets.binary_search(c).ok()
    }

    fn bound(&self, cones: &[Vec<u64>], i: usize, j: usize, what: &str) -> Result<usize> {
        let common: Vec<u64> = cones[i].iter().zip(&cones[j]).map(|(a, b)| a & b).collect();
        let size = popcount(&common);
        let mut found = None;
        for g in (0..self.sets.len()).filter(|&g| bit(&common, g)) {
            if popcount(&cones[g]) == size {
                if found.is_some() {
                    return Err(Error::LatticeViolation(format!(
                        "{what} of {} and {} is not unique",
                        self.sets[i].pairs_string(),
                        self.sets[j].pairs_string()
                    )));
                }
                found = Some(g);
            }
        }
        found.ok_or_else(|| {
            Error::LatticeViolation(format!(
                "{} and {} have no {what}",
                self.sets[i].pairs_string(),
                self.sets[j].pairs_string()
            ))
        })
    }

    pub fn meet_index(&self, i: usize, j: usize) -> Result<usize> {
        self.bound(&self.down, i, j, "meet")
    }

    pub fn join_index(&self, i: usize, j: usize) -> Result<usize> {
        self.bound(&self.up, i, j, "join")
    }

    fn locate(&self, c: &RootSet) -> Result<usize> {
        self.index_of(c).ok_or_else(|| Error::LatticeViolation(format!("{} is not an element", c.pairs_string())))
    }

    pub fn meet(&self, c: &RootSet, d: &RootSet) -> Result<RootSet> {
        Ok(self.sets[self.meet_index(self.locate(c)?, self.locate(d)?)?])
    }

    pub fn join(&self, c: &RootSet, d: &RootSet) -> Result<RootSet> {
        Ok(self.sets[self.join_index(self.locate(c)?, self.locate(d)?)?])
    }

    /// Checks every pair; returns the number of pairs whose meet is not the
    /// plain intersection and whose join is not the plain union.
    pub fn check(&self) -> Result<LatticeReport> {
        let k = self.sets.len();
        let mut report = LatticeReport { elements: k, pairs: k * k, meet_not_intersection: 0, join_not_union: 0 };
        for i in 0..k {
            for j in 0..k {
                let m = self.meet_index(i, j)?;
                let jn = self.join_index(i, j)?;
                report.meet_not_intersection += usize::from(self.sets[m] != self.sets[i].intersection(&self.sets[j]));
                report.join_not_union += usize::from(self.sets[jn] != self.sets[i].union(&self.sets[j]));
            }
        }
        Ok(report)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LatticeReport {
    pub elements: usize,
    pub pairs: usize,
    pub meet_not_intersection: usize,
    pub join_not_union: usize,
}

/// Meet of two biclosed sets of the same rank inside the lattice of all of them.
pub fn meet(c: &RootSet, d: &RootSet) -> Result<RootSet> {
    lattice_for(c, d)?.meet(c, d)
}

/// Join of two biclosed sets of the same rank inside the lattice of all of them.
pub fn join(c: &RootSet, d: &RootSet) -> Result<RootSet> {
    lattice_for(c, d)?.join(c, d)
}

fn lattice_for(c: &RootSet, d: &RootSet) -> Result<FiniteLattice> {
    if c.rank() != d.rank() {
        return Err(Error::SizeMismatch { left: c.rank(), right: d.rank() });
    }
    crate::root_system::require_biclosed(c)?;
    crate::root_system::require_biclosed(d)?;
    Ok(FiniteLattice::new(crate::enumeration::enum_biclosed_bruteforce(c.rank(), false)?))
}

/// Whether `(elements, ⊆)` is a lattice.
pub fn is_lattice(elements: &[RootSet]) -> bool {
    FiniteLattice::new(elements.to_vec()).check().is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{enum_biclosed_bruteforce, enum_semigroups};
    use crate::root_system::standard_positive_system;

    #[test]
    fn two_point_order() {
        let max = QuasitrivialOp::natural_max(2);
        let min = QuasitrivialOp::natural_min(2);
        let p1 = QuasitrivialOp::first_projection(2);
        assert!(leq_restriction(&p1, &max, 1, 2).unwrap());
        assert!(!leq_restriction(&max, &min, 1, 2).unwrap());
        assert!(!leq_restriction(&min, &max, 1, 2).unwrap());
        assert!(leq_restriction(&max, &max, 2, 1).unwrap());
        assert!(leq_restriction(&max, &max, 1, 1).is_err());
    }

    #[test]
    fn operation_order() {
        let all = enum_semigroups(3);
        let p1 = QuasitrivialOp::first_projection(3);
        let p2 = QuasitrivialOp::second_projection(3);
        for f in &all {
            assert!(leq_op(&p1, f).unwrap());
            assert!(leq_op(f, &p2).unwrap());
        }
        let (max, min) = (QuasitrivialOp::natural_max(3), QuasitrivialOp::natural_min(3));
        assert!(!leq_op(&max, &min).unwrap() && !leq_op(&min, &max).unwrap());
        assert!(leq_op(&max, &QuasitrivialOp::natural_max(2)).is_err());
    }

    #[test]
    fn containment() {
        let pos = standard_positive_system(2).unwrap();
        assert!(leq_set(&RootSet::empty(2).unwrap(), &pos));
        assert!(leq_set(&pos, &RootSet::full(2).unwrap()));
        let swapped = crate::root_system::act_set(&crate::Permutation::transposition(1, 2, 3).unwrap(), &pos);
        assert!(!leq_set(&pos, &swapped));
    }

    #[test]
    fn hasse_of_two_point_operations() {
        let ops = enum_semigroups(2);
        let edges = hasse(&ops, |f, g| leq_op(f, g).unwrap());
        assert_eq!(edges.len(), 4);
        let strict =
            (0..4).cartesian_product(0..4).filter(|&(i, j)| i != j && leq_op(&ops[i], &ops[j]).unwrap()).count();
        assert_eq!(strict, 5);
        assert!(hasse(&ops[..1], |f, g| leq_op(f, g).unwrap()).is_empty());
    }

    #[test]
    fn lattice_bounds() {
        let sets = enum_biclosed_bruteforce(2, false).unwrap();
        let lat = FiniteLattice::new(sets.clone());
        let bottom = RootSet::empty(2).unwrap();
        let top = RootSet::full(2).unwrap();
        for c in &sets {
            assert_eq!(lat.meet(c, c).unwrap(), *c);
            assert_eq!(lat.join(c, c).unwrap(), *c);
            assert_eq!(lat.meet(&bottom, c).unwrap(), bottom);
            assert_eq!(lat.join(&top, c).unwrap(), top);
        }
        let report = lat.check().unwrap();
        assert_eq!(report.pairs, 400);
        assert!(is_lattice(&sets));
    }

    #[test]
    fn non_lattice_is_detected() {
        // two incomparable maximal elements: no join
        let a = RootSet::from_pairs(1, [(1, 2)]).unwrap();
        let b = RootSet::from_pairs(1, [(2, 1)]).unwrap();
        let lat = FiniteLattice::new(vec![a, b]);
        assert!(matches!(lat.join(&a, &b), Err(Error::LatticeViolation(_))));
        assert!(!is_lattice(&[a, b]));
    }

    #[test]
    fn dot_for_rank_one() {
        let view = PosetView::new(enum_biclosed_bruteforce(1, false).unwrap()).unwrap();
        let dot = view.to_dot().unwrap();
        assert_eq!(dot.matches("->").count(), 4);
        assert_eq!(dot.matches("[label=").count(), 4);
        assert!(dot.contains("{1,2}^1"));
    }
}
