//! Quasitrivial operations and their total-preorder description.
//!
//! An associative quasitrivial operation on `{1..m}` is the same thing as a
//! total preorder on `{1..m}` together with a choice of projection on every
//! equivalence class with at least two elements: across classes the
//! operation returns the larger argument, inside a class it is `π_1` or `π_2`.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{AssociativityWitness, Error, Result};
use crate::permutation::Permutation;

/// An `m × m` table with `F(a,b) ∈ {a,b}`, stored row-major with 1-based entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "OpRepr", into = "OpRepr")]
pub struct QuasitrivialOp {
    m: usize,
    table: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct OpRepr {
    m: usize,
    table: Vec<Vec<usize>>,
}

impl TryFrom<OpRepr> for QuasitrivialOp {
    type Error = Error;

    fn try_from(repr: OpRepr) -> Result<Self> {
        if repr.table.len() != repr.m {
            return Err(Error::InvalidTable(format!("m = {} but the table has {} rows", repr.m, repr.table.len())));
        }
        QuasitrivialOp::from_rows(repr.table)
    }
}

impl From<QuasitrivialOp> for OpRepr {
    fn from(op: QuasitrivialOp) -> Self {
        OpRepr { m: op.m, table: op.rows() }
    }
}

/// True iff the square table has every entry equal to one of its coordinates.
pub fn is_quasitrivial(rows: &[Vec<usize>]) -> bool {
    rows.iter()
        .enumerate()
        .all(|(i, row)| row.len() == rows.len() && row.iter().enumerate().all(|(j, &v)| v == i + 1 || v == j + 1))
}

/// Restriction of an operation to a two-element set `{a < b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoPointOp {
    First,
    Max,
    Min,
    Second,
}

impl fmt::Display for TwoPointOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwoPointOp::First => "π_1",
            TwoPointOp::Max => "max",
            TwoPointOp::Min => "min",
            TwoPointOp::Second => "π_2",
        })
    }
}

impl QuasitrivialOp {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut table = Vec::with_capacity(m * m);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidTable(format!("row {} has length {}", i + 1, row.len())));
            }
            for (j, v) in row.into_iter().enumerate() {
                if v != i + 1 && v != j + 1 {
                    return Err(Error::NotQuasitrivial { a: i + 1, b: j + 1, value: v });
                }
                table.push(v);
            }
        }
        Ok(QuasitrivialOp { m, table })
    }

    /// Builds the table of `f`, which must return one of its arguments.
    pub fn from_fn(m: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        Self::from_rows((1..=m).map(|a| (1..=m).map(|b| f(a, b)).collect()).collect())
    }

    pub fn first_projection(m: usize) -> Self {
        Self::from_fn(m, |a, _| a).expect("π_1 is quasitrivial")
    }

    pub fn second_projection(m: usize) -> Self {
        Self::from_fn(m, |_, b| b).expect("π_2 is quasitrivial")
    }

    pub fn natural_max(m: usize) -> Self {
        Self::from_fn(m, usize::max).expect("max is quasitrivial")
    }

    pub fn natural_min(m: usize) -> Self {
        Self::from_fn(m, usize::min).expect("min is quasitrivial")
    }

    /// Every quasitrivial table on `{1..m}`, indexed by the `2^{m(m-1)}` choices
    /// of `(F(a,b), F(b,a))` over pairs `a < b`.
    pub fn all_quasitrivial(m: usize) -> impl Iterator<Item = QuasitrivialOp> {
        assert!((1..=6).contains(&m), "too many quasitrivial tables for m = {m}");
        let pairs: Vec<(usize, usize)> = (1..=m).tuple_combinations().collect();
        let count = 1u64 << (2 * pairs.len());
        (0..count).map(move |code| {
            let mut table: Vec<usize> = (0..m * m).map(|k| k / m + 1).collect();
            for (p, &(a, b)) in pairs.iter().enumerate() {
                let bits = code >> (2 * p) & 3;
                table[(a - 1) * m + b - 1] = if bits & 1 == 0 { a } else { b };
                table[(b - 1) * m + a - 1] = if bits & 2 == 0 { b } else { a };
            }
            QuasitrivialOp { m, table }
        })
    }

    pub fn size(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.table[(a - 1) * self.m + b - 1]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.m).map(<[usize]>::to_vec).collect()
    }

    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let m = self.m;
        (1..=m)
            .cartesian_product(1..=m)
            .cartesian_product(1..=m)
            .map(|((a, b), c)| (a, b, c))
            .find(|&(a, b, c)| self.get(self.get(a, b), c) != self.get(a, self.get(b, c)))
    }

    /// Checks all `m³` triples.
    pub fn is_associative(&self) -> bool {
        self.associativity_violation().is_none()
    }

    pub fn is_commutative(&self) -> bool {
        (1..=self.m).tuple_combinations().all(|(a, b)| self.get(a, b) == self.get(b, a))
    }

    /// `F(a,b) = F(b,a)` only when `a = b`.
    pub fn is_anticommutative(&self) -> bool {
        (1..=self.m).tuple_combinations().all(|(a, b)| self.get(a, b) != self.get(b, a))
    }

    pub fn identity_element(&self) -> Option<usize> {
        (1..=self.m).find(|&e| (1..=self.m).all(|x| self.get(e, x) == x && self.get(x, e) == x))
    }

    pub fn zero_element(&self) -> Option<usize> {
        (1..=self.m).find(|&z| (1..=self.m).all(|x| self.get(z, x) == z && self.get(x, z) == z))
    }

    /// Restriction to `{a, b}`, read relative to the natural order of `a` and `b`.
    pub fn restriction(&self, a: usize, b: usize) -> Result<TwoPointOp> {
        if a == b {
            return Err(Error::InvalidTable(format!("restriction needs two distinct points, got {a},{a}")));
        }
        let (lo, hi) = (a.min(b), a.max(b));
        Ok(match (self.get(lo, hi) == lo, self.get(hi, lo) == lo) {
            (true, false) => TwoPointOp::First,
            (false, false) => TwoPointOp::Max,
            (true, true) => TwoPointOp::Min,
            (false, true) => TwoPointOp::Second,
        })
    }

    /// `σ(F)(a,b) = σ(F(σ⁻¹(a), σ⁻¹(b)))`.
    pub fn act(&self, sigma: &Permutation) -> Self {
        assert_eq!(sigma.size(), self.m, "permutation size does not match the table");
        let inv = sigma.inverse();
        let m = self.m;
        let table = (0..m * m).map(|k| sigma.apply(self.get(inv.apply(k / m + 1), inv.apply(k % m + 1)))).collect();
        QuasitrivialOp { m, table }
    }

    /// Extracts the total preorder and projection labels; see [`PreorderDecomposition::from_op`].
    pub fn to_preorder(&self) -> Result<PreorderDecomposition> {
        PreorderDecomposition::from_op(self)
    }
}

pub fn act_op(sigma: &Permutation, f: &QuasitrivialOp) -> QuasitrivialOp {
    f.act(sigma)
}

/// Which projection governs a class with at least two elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Projection {
    First,
    Second,
}

impl Projection {
    pub fn label(self) -> u8 {
        match self {
            Projection::First => 1,
            Projection::Second => 2,
        }
    }

    pub fn from_label(label: u8) -> Option<Self> {
        match label {
            1 => Some(Projection::First),
            2 => Some(Projection::Second),
            _ => None,
        }
    }
}

impl Serialize for Projection {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.label())
    }
}

impl<'de> Deserialize<'de> for Projection {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = u8::deserialize(d)?;
        Projection::from_label(v).ok_or_else(|| serde::de::Error::custom(format!("projection must be 1 or 2, got {v}")))
    }
}

/// One equivalence class of the preorder.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    pub elements: Vec<usize>,
    pub projection: Option<Projection>,
}

/// Ordered equivalence classes (least first) with projection labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DecompositionRepr", into = "DecompositionRepr")]
pub struct PreorderDecomposition {
    m: usize,
    blocks: Vec<Block>,
}

#[derive(Serialize, Deserialize)]
struct DecompositionRepr {
    m: usize,
    blocks: Vec<Block>,
}

impl TryFrom<DecompositionRepr> for PreorderDecomposition {
    type Error = Error;

    fn try_from(repr: DecompositionRepr) -> Result<Self> {
        PreorderDecomposition::new(repr.m, repr.blocks)
    }
}

impl From<PreorderDecomposition> for DecompositionRepr {
    fn from(d: PreorderDecomposition) -> Self {
        DecompositionRepr { m: d.m, blocks: d.blocks }
    }
}

impl PreorderDecomposition {
    /// Validates the blocks; elements inside each block are sorted.
    pub fn new(m: usize, mut blocks: Vec<Block>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidDecomposition("m must be at least 1".into()));
        }
        let mut seen = vec![false; m + 1];
        for block in &mut blocks {
            block.elements.sort_unstable();
            if block.elements.is_empty() {
                return Err(Error::InvalidDecomposition("empty block".into()));
            }
            for &x in &block.elements {
                if x == 0 || x > m {
                    return Err(Error::InvalidDecomposition(format!("element {x} outside 1..={m}")));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidDecomposition(format!("element {x} in two blocks")));
                }
            }
            match (block.elements.len(), block.projection) {
                (1, Some(_)) => {
                    return Err(Error::InvalidDecomposition(format!(
                        "singleton block {{{}}} carries a projection label",
                        block.elements[0]
                    )))
                }
                (k, None) if k > 1 => {
                    return Err(Error::InvalidDecomposition(format!(
                        "block {:?} needs a projection label",
                        block.elements
                    )))
                }
                _ => {}
            }
        }
        if let Some(x) = (1..=m).find(|&x| !seen[x]) {
            return Err(Error::InvalidDecomposition(format!("element {x} is not covered")));
        }
        Ok(PreorderDecomposition { m, blocks })
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Number of classes with at least two elements.
    pub fn multi_blocks(&self) -> usize {
        self.blocks.iter().filter(|b| b.elements.len() > 1).count()
    }

    pub fn singletons(&self) -> usize {
        self.blocks.len() - self.multi_blocks()
    }

    /// Reads the preorder off an associative quasitrivial table.
    ///
    /// `x ∼ y` iff `F(x,y) ≠ F(y,x)`; `x` lies strictly below `y` iff
    /// `F(x,y) = F(y,x) = y`. Every consequence of associativity used here is
    /// validated, so a non-associative table is reported with a witness.
    pub fn from_op(f: &QuasitrivialOp) -> Result<Self> {
        let m = f.size();
        let equiv = |x: usize, y: usize| x == y || f.get(x, y) != f.get(y, x);
        let mut class_of = vec![usize::MAX; m + 1];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 1..=m {
            if class_of[x] != usize::MAX {
                continue;
            }
            let members: Vec<usize> = (1..=m).filter(|&y| equiv(x, y)).collect();
            for &y in &members {
                if class_of[y] != usize::MAX {
                    // y was claimed by an earlier class, so ∼ is not transitive.
                    let z = classes[class_of[y]][0];
                    return Err(Error::NotAssociative(triple_among(f, &[x, y, z])));
                }
                class_of[y] = classes.len();
            }
            classes.push(members);
        }
        for class in &classes {
            for &x in class {
                for &y in class {
                    if equiv(x, y) {
                        continue;
                    }
                    return Err(Error::NotAssociative(triple_among(f, &[x, class[0], y])));
                }
            }
        }

        let mut projections = Vec::with_capacity(classes.len());
        for class in &classes {
            if class.len() < 2 {
                projections.push(None);
                continue;
            }
            let first = f.get(class[0], class[1]) == class[0];
            for (&x, &y) in class.iter().tuple_combinations() {
                if (f.get(x, y) == x) != first {
                    return Err(Error::NotAssociative(AssociativityWitness::MixedProjection(class[0], y)));
                }
            }
            projections.push(Some(if first { Projection::First } else { Projection::Second }));
        }

        // below[i][j]: class i lies under class j. The relation must not depend
        // on the representatives and must be a transitive tournament.
        let k = classes.len();
        let mut below = vec![vec![false; k]; k];
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                let (x0, y0) = (classes[i][0], classes[j][0]);
                let up = f.get(x0, y0) == y0;
                for &x in &classes[i] {
                    for &y in &classes[j] {
                        if (f.get(x, y) == y) != up {
                            return Err(Error::NotAssociative(triple_among(f, &[x0, x, y0, y])));
                        }
                    }
                }
                below[i][j] = up;
            }
        }
        for (i, j, l) in (0..k).tuple_combinations() {
            for (a, b, c) in [(i, j, l), (i, l, j), (j, i, l), (j, l, i), (l, i, j), (l, j, i)] {
                if below[a][b] && below[b][c] && !below[a][c] {
                    let (x, y, z) = (classes[a][0], classes[b][0], classes[c][0]);
                    return Err(Error::NotAssociative(triple_among(f, &[x, y, z])));
                }
            }
        }
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&i| below.iter().filter(|row| row[i]).count());

        let blocks =
            order.into_iter().map(|i| Block { elements: classes[i].clone(), projection: projections[i] }).collect();
        Ok(PreorderDecomposition { m, blocks })
    }

    /// The operation of the decomposition: larger argument across blocks,
    /// the labelled projection inside a block.
    pub fn to_op(&self) -> QuasitrivialOp {
        let mut level = vec![0; self.m + 1];
        let mut proj = vec![None; self.m + 1];
        for (i, block) in self.blocks.iter().enumerate() {
            for &x in &block.elements {
                level[x] = i;
                proj[x] = block.projection;
            }
        }
        QuasitrivialOp::from_fn(self.m, |a, b| match level[a].cmp(&level[b]) {
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Equal => match proj[a] {
                Some(Projection::Second) => b,
                _ => a,
            },
        })
        .expect("decomposition operations are quasitrivial")
    }
}

/// Finds a failing triple among the given points; falls back to scanning the table.
fn triple_among(f: &QuasitrivialOp, pts: &[usize]) -> AssociativityWitness {
    for &a in pts {
        for &b in pts {
            for &c in pts {
                if f.get(f.get(a, b), c) != f.get(a, f.get(b, c)) {
                    return AssociativityWitness::Triple(a, b, c);
                }
            }
        }
    }
    match f.associativity_violation() {
        Some((a, b, c)) => AssociativityWitness::Triple(a, b, c),
        None => unreachable!("decomposition failed on an associative table"),
    }
}

/// `{1,2}^2≺3`, `1≺2≺3`, `{1,2,3}^1`.
impl fmt::Display for PreorderDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.blocks.iter().map(|b| match b.projection {
            None => b.elements[0].to_string(),
            Some(p) => format!("{{{}}}^{}", b.elements.iter().join(","), p.label()),
        });
        write!(f, "{}", parts.format("≺"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(rows: &[&[usize]]) -> QuasitrivialOp {
        QuasitrivialOp::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    /// F(1,2)=2, F(2,1)=1, F(1,3)=F(3,1)=1, F(2,3)=F(3,2)=3.
    fn non_associative() -> QuasitrivialOp {
        table(&[&[1, 2, 1], &[1, 2, 3], &[1, 3, 3]])
    }

    #[test]
    fn quasitriviality() {
        assert!(is_quasitrivial(&QuasitrivialOp::first_projection(3).rows()));
        assert!(is_quasitrivial(&QuasitrivialOp::natural_max(3).rows()));
        assert!(!is_quasitrivial(&[vec![1, 3, 1], vec![2, 2, 2], vec![3, 3, 3]]));
        assert!(!is_quasitrivial(&[vec![1, 2], vec![1]]));
        assert_eq!(
            QuasitrivialOp::from_rows(vec![vec![1, 3, 1], vec![2, 2, 2], vec![3, 3, 3]]),
            Err(Error::NotQuasitrivial { a: 1, b: 2, value: 3 })
        );
    }

    #[test]
    fn associativity() {
        assert!(QuasitrivialOp::natural_max(3).is_associative());
        assert!(QuasitrivialOp::second_projection(4).is_associative());
        let bad = non_associative();
        assert!(!bad.is_associative());
        assert_eq!(bad.get(bad.get(1, 2), 3), 3);
        assert_eq!(bad.get(1, bad.get(2, 3)), 1);
        assert!(matches!(bad.to_preorder(), Err(Error::NotAssociative(_))));
    }

    #[test]
    fn every_non_associative_table_is_rejected_by_extraction() {
        for m in 1..=4 {
            for f in QuasitrivialOp::all_quasitrivial(m) {
                assert_eq!(f.to_preorder().is_ok(), f.is_associative(), "{:?}", f.rows());
            }
        }
    }

    #[test]
    fn preorder_examples() {
        let max = QuasitrivialOp::natural_max(3).to_preorder().unwrap();
        assert_eq!(max.to_string(), "1≺2≺3");
        assert_eq!(max.multi_blocks(), 0);

        let f = table(&[&[1, 2, 3], &[1, 2, 3], &[3, 3, 3]]);
        let d = f.to_preorder().unwrap();
        assert_eq!(d.to_string(), "{1,2}^2≺3");
        assert_eq!(d.blocks()[0].projection, Some(Projection::Second));

        assert_eq!(QuasitrivialOp::first_projection(3).to_preorder().unwrap().to_string(), "{1,2,3}^1");
    }

    #[test]
    fn from_preorder_examples() {
        let d = PreorderDecomposition::new(
            3,
            vec![
                Block { elements: vec![2], projection: None },
                Block { elements: vec![3, 1], projection: Some(Projection::First) },
            ],
        )
        .unwrap();
        let f = d.to_op();
        assert_eq!(f.get(2, 1), 1);
        assert_eq!(f.get(3, 2), 3);
        assert_eq!(f.get(1, 3), 1);
        assert_eq!(f.get(3, 1), 3);
        assert_eq!(d.to_string(), "2≺{1,3}^1");
        assert_eq!(f.to_preorder().unwrap(), d);

        let single = PreorderDecomposition::new(
            4,
            vec![Block { elements: vec![1, 2, 3, 4], projection: Some(Projection::First) }],
        )
        .unwrap();
        assert_eq!(single.to_op(), QuasitrivialOp::first_projection(4));
    }

    #[test]
    fn decomposition_validation() {
        let b = |e: &[usize], p: Option<Projection>| Block { elements: e.to_vec(), projection: p };
        assert!(PreorderDecomposition::new(2, vec![b(&[1], Some(Projection::First)), b(&[2], None)]).is_err());
        assert!(PreorderDecomposition::new(2, vec![b(&[1, 2], None)]).is_err());
        assert!(PreorderDecomposition::new(3, vec![b(&[1, 2], Some(Projection::First))]).is_err());
        assert!(PreorderDecomposition::new(2, vec![b(&[1], None), b(&[1, 2], Some(Projection::First))]).is_err());
        assert!(PreorderDecomposition::new(2, vec![b(&[], None), b(&[1, 2], Some(Projection::First))]).is_err());
    }

    #[test]
    fn structural_predicates() {
        let max = QuasitrivialOp::natural_max(3);
        assert!(max.is_commutative());
        assert_eq!(max.identity_element(), Some(1));
        assert_eq!(max.zero_element(), Some(3));

        let p1 = QuasitrivialOp::first_projection(3);
        assert!(p1.is_anticommutative());
        assert_eq!(p1.identity_element(), None);

        let f = table(&[&[1, 2, 3], &[1, 2, 3], &[3, 3, 3]]);
        assert!(!f.is_commutative());
        assert_eq!(f.identity_element(), None);
        assert_eq!(f.zero_element(), Some(3));

        let one = QuasitrivialOp::first_projection(1);
        assert_eq!(one, QuasitrivialOp::second_projection(1));
        assert!(one.is_commutative() && one.is_anticommutative());
        assert_eq!((one.identity_element(), one.zero_element()), (Some(1), Some(1)));
    }

    #[test]
    fn restrictions() {
        assert_eq!(QuasitrivialOp::natural_max(3).restriction(3, 1).unwrap(), TwoPointOp::Max);
        assert_eq!(QuasitrivialOp::natural_min(3).restriction(1, 2).unwrap(), TwoPointOp::Min);
        assert_eq!(QuasitrivialOp::first_projection(3).restriction(2, 3).unwrap(), TwoPointOp::First);
        assert_eq!(QuasitrivialOp::second_projection(3).restriction(2, 3).unwrap(), TwoPointOp::Second);
        assert!(QuasitrivialOp::natural_max(3).restriction(2, 2).is_err());
    }

    #[test]
    fn action_examples() {
        let id = Permutation::identity(3);
        let max = QuasitrivialOp::natural_max(3);
        assert_eq!(max.act(&id), max);
        let swapped = max.act(&Permutation::from_cycles("(1,2)", 3).unwrap());
        assert_eq!(swapped.to_preorder().unwrap().to_string(), "2≺1≺3");
        let p1 = QuasitrivialOp::first_projection(3);
        assert_eq!(p1.act(&Permutation::from_cycles("(1,3)", 3).unwrap()), p1);
    }

    #[test]
    fn quasitrivial_counts() {
        for m in 1..=4 {
            let all: Vec<_> = QuasitrivialOp::all_quasitrivial(m).collect();
            assert_eq!(all.len(), 1 << (m * (m - 1)));
            assert!(all.iter().all(|f| is_quasitrivial(&f.rows())));
            let mut sorted = all.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), all.len());
        }
    }

    #[test]
    fn json_schema() {
        let f = table(&[&[1, 2], &[1, 2]]);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"m":2,"table":[[1,2],[1,2]]}"#);
        assert_eq!(serde_json::from_str::<QuasitrivialOp>(&json).unwrap(), f);
        assert!(serde_json::from_str::<QuasitrivialOp>(r#"{"m":2,"table":[[1,3],[1,2]]}"#).is_err());
        assert!(serde_json::from_str::<QuasitrivialOp>(r#"{"m":3,"table":[[1,2],[1,2]]}"#).is_err());

        let d = f.to_preorder().unwrap();
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"m":2,"blocks":[{"elements":[1,2],"projection":2}]}"#);
        assert_eq!(serde_json::from_str::<PreorderDecomposition>(&json).unwrap(), d);
        let max = QuasitrivialOp::natural_max(2).to_preorder().unwrap();
        assert_eq!(
            serde_json::to_string(&max).unwrap(),
            r#"{"m":2,"blocks":[{"elements":[1],"projection":null},{"elements":[2],"projection":null}]}"#
        );
    }
}
