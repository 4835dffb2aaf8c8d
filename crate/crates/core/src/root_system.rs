//! The root system of type `A_n` in the transposition model.
//!
//! A root is an ordered pair `(a, b)` of distinct points of `{1, ..., n+1}`.
//! With `a < b` it stands for the positive root `α_a + α_{a+1} + ... + α_{b-1}`,
//! with `a > b` for its negative. The permutation action is then just
//! `w(a, b) = (w(a), w(b))`, and closedness of a set of roots is transitivity
//! of the corresponding relation.
//!
//! Root sets are bitsets over the `n(n+1)` ordered pairs. Bit `k` belongs to
//! the `k`-th pair in lexicographic order, i.e. for `m = n + 1` points
//!
//! ```text
//! index(a, b) = (a - 1)(m - 1) + (b - 1) - [b > a]
//! ```
//!
//! so iterating bits upwards lists roots in the serialized order.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::bijection;
use crate::error::{ClosureWitness, Error, Result};
use crate::permutation::Permutation;

/// Largest supported rank: `n(n+1)` must fit in the 128-bit membership mask.
pub const MAX_RANK: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    a: usize,
    b: usize,
}

impl Root {
    pub fn new(a: usize, b: usize, n: usize) -> Result<Self> {
        if a == b || a == 0 || b == 0 || a > n + 1 || b > n + 1 {
            return Err(Error::InvalidRoot { a, b, n });
        }
        Ok(Root { a, b })
    }

    /// The simple root `α_i = (i, i+1)`.
    pub fn simple(i: usize) -> Self {
        assert!(i >= 1);
        Root { a: i, b: i + 1 }
    }

    pub(crate) fn pair(a: usize, b: usize) -> Self {
        debug_assert!(a != b && a > 0 && b > 0);
        Root { a, b }
    }

    pub fn source(self) -> usize {
        self.a
    }

    pub fn target(self) -> usize {
        self.b
    }

    pub fn is_positive(self) -> bool {
        self.a < self.b
    }

    pub fn negate(self) -> Self {
        Root { a: self.b, b: self.a }
    }

    /// Bit position of this root for a system on `points` points.
    #[inline]
    pub fn index(self, points: usize) -> usize {
        (self.a - 1) * (points - 1) + (self.b - 1) - usize::from(self.b > self.a)
    }

    #[inline]
    pub fn from_index(index: usize, points: usize) -> Self {
        let a = index / (points - 1) + 1;
        let r = index % (points - 1);
        let b = if r + 1 < a { r + 1 } else { r + 2 };
        Root { a, b }
    }

    /// Coefficients over the simple roots, e.g. `(3,1)` is `[-1, -1, 0, ...]`.
    pub fn coefficients(self, n: usize) -> Vec<i32> {
        let mut v = vec![0; n];
        let (lo, hi, sign) = if self.a < self.b { (self.a, self.b, 1) } else { (self.b, self.a, -1) };
        for c in &mut v[lo - 1..hi - 1] {
            *c = sign;
        }
        v
    }

    pub fn pair_string(self) -> String {
        format!("({},{})", self.a, self.b)
    }
}

/// Renders the root in simple-root notation: `α_1+α_2`, `-α_2`.
impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi, neg) = if self.a < self.b { (self.a, self.b, false) } else { (self.b, self.a, true) };
        for i in lo..hi {
            if neg {
                f.write_str("-")?;
            } else if i > lo {
                f.write_str("+")?;
            }
            write!(f, "α_{i}")?;
        }
        Ok(())
    }
}

/// Sum of two roots when it is again a root.
pub fn root_sum(x: Root, y: Root) -> Option<Root> {
    if x.b == y.a && x.a != y.b {
        Some(Root { a: x.a, b: y.b })
    } else if y.b == x.a && y.a != x.b {
        Some(Root { a: y.a, b: x.b })
    } else {
        None
    }
}

pub fn act_root(w: &Permutation, x: Root) -> Root {
    Root { a: w.apply(x.a), b: w.apply(x.b) }
}

/// A subset of the root system of rank `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RootSetRepr", into = "RootSetRepr")]
pub struct RootSet {
    n: usize,
    bits: u128,
}

#[derive(Serialize, Deserialize)]
struct RootSetRepr {
    n: usize,
    roots: Vec<[usize; 2]>,
}

impl TryFrom<RootSetRepr> for RootSet {
    type Error = Error;

    fn try_from(repr: RootSetRepr) -> Result<Self> {
        RootSet::from_pairs(repr.n, repr.roots.iter().map(|&[a, b]| (a, b)))
    }
}

impl From<RootSet> for RootSetRepr {
    fn from(s: RootSet) -> Self {
        RootSetRepr { n: s.n, roots: s.iter().map(|r| [r.a, r.b]).collect() }
    }
}

fn check_rank(n: usize) -> Result<()> {
    if n > MAX_RANK {
        Err(Error::RankTooLarge { n, limit: MAX_RANK })
    } else {
        Ok(())
    }
}

impl RootSet {
    pub fn empty(n: usize) -> Result<Self> {
        check_rank(n)?;
        Ok(RootSet { n, bits: 0 })
    }

    /// The whole root system Φ.
    pub fn full(n: usize) -> Result<Self> {
        check_rank(n)?;
        Ok(RootSet { n, bits: Self::full_mask(n) })
    }

    fn full_mask(n: usize) -> u128 {
        let len = n * (n + 1);
        if len == 128 {
            u128::MAX
        } else {
            (1u128 << len) - 1
        }
    }

    pub fn from_roots<I: IntoIterator<Item = Root>>(n: usize, roots: I) -> Result<Self> {
        let mut s = Self::empty(n)?;
        for r in roots {
            Root::new(r.a, r.b, n)?;
            s.bits |= 1 << r.index(n + 1);
        }
        Ok(s)
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Result<Self> {
        let roots = pairs.into_iter().map(|(a, b)| Root::new(a, b, n)).collect::<Result<Vec<_>>>()?;
        Self::from_roots(n, roots)
    }

    /// Builds a set from its raw membership mask.
    pub fn from_bits(n: usize, bits: u128) -> Result<Self> {
        check_rank(n)?;
        if bits & !Self::full_mask(n) != 0 {
            return Err(Error::InvalidRoot { a: 0, b: 0, n });
        }
        Ok(RootSet { n, bits })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> usize {
        self.n + 1
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == Self::full_mask(self.n)
    }

    #[inline]
    pub fn contains(&self, r: Root) -> bool {
        r.a <= self.points() && r.b <= self.points() && self.bits >> r.index(self.points()) & 1 == 1
    }

    #[inline]
    pub(crate) fn has_pair(&self, a: usize, b: usize) -> bool {
        self.bits >> Root::pair(a, b).index(self.points()) & 1 == 1
    }

    pub fn insert(&mut self, r: Root) -> Result<()> {
        Root::new(r.a, r.b, self.n)?;
        self.bits |= 1 << r.index(self.points());
        Ok(())
    }

    /// Roots in lexicographic pair order.
    pub fn iter(&self) -> impl Iterator<Item = Root> + '_ {
        let points = self.points();
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(Root::from_index(k, points))
        })
    }

    pub fn complement(&self) -> Self {
        RootSet { n: self.n, bits: !self.bits & Self::full_mask(self.n) }
    }

    /// `-C`.
    pub fn negated(&self) -> Self {
        let mut out = RootSet { n: self.n, bits: 0 };
        for r in self.iter() {
            out.bits |= 1 << r.negate().index(self.points());
        }
        out
    }

    pub fn union(&self, other: &RootSet) -> Self {
        assert_eq!(self.n, other.n);
        RootSet { n: self.n, bits: self.bits | other.bits }
    }

    pub fn intersection(&self, other: &RootSet) -> Self {
        assert_eq!(self.n, other.n);
        RootSet { n: self.n, bits: self.bits & other.bits }
    }

    pub fn difference(&self, other: &RootSet) -> Self {
        assert_eq!(self.n, other.n);
        RootSet { n: self.n, bits: self.bits & !other.bits }
    }

    /// Containment; sets of different rank are never comparable.
    pub fn is_subset(&self, other: &RootSet) -> bool {
        self.n == other.n && self.bits & !other.bits == 0
    }

    /// Adjacency rows: bit `b` of `rows[a]` is set when `(a,b)` is a member.
    fn rows(&self) -> Vec<u32> {
        let mut rows = vec![0u32; self.points() + 1];
        for r in self.iter() {
            rows[r.a] |= 1 << r.b;
        }
        rows
    }

    pub fn pairs_string(&self) -> String {
        format!("{{{}}}", self.iter().map(Root::pair_string).join(","))
    }
}

/// `{α_1,-α_2}`: simple-root notation, lexicographic pair order; `∅` when empty.
impl fmt::Display for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "{{{}}}", self.iter().join(","))
    }
}

/// Orders by rank, then lexicographically by the sorted member list.
impl Ord for RootSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            let diff = self.bits ^ other.bits;
            if diff == 0 {
                return Ordering::Equal;
            }
            // Both lists agree below the lowest differing index d. The list
            // containing d is smaller unless the other one stops right there.
            let d = diff.trailing_zeros();
            let (with_d, without_d) =
                if self.bits >> d & 1 == 1 { (Ordering::Less, other.bits) } else { (Ordering::Greater, self.bits) };
            let without_continues = d < 127 && without_d >> (d + 1) != 0;
            if without_continues {
                with_d
            } else {
                with_d.reverse()
            }
        })
    }
}

impl PartialOrd for RootSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A set of simple roots `{α_i : i ∈ indices}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SimpleSubset {
    indices: Vec<usize>,
}

impl SimpleSubset {
    pub fn new<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        SimpleSubset { indices }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The full simple system `{1..n}`.
    pub fn full(n: usize) -> Self {
        SimpleSubset { indices: (1..=n).collect() }
    }

    pub(crate) fn from_mask(mask: u32) -> Self {
        SimpleSubset { indices: (1..32).filter(|i| mask >> i & 1 == 1).collect() }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn union(&self, other: &SimpleSubset) -> Self {
        Self::new(self.indices.iter().chain(&other.indices).copied())
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match self.indices.iter().find(|&&i| i == 0 || i > n) {
            Some(i) => Err(Error::InvalidSimpleSubset(format!("α_{i} is not a simple root of rank {n}"))),
            None => Ok(()),
        }
    }

    /// Maximal runs of consecutive indices as `(start, length)`.
    pub fn components(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &i in &self.indices {
            match out.last_mut() {
                Some((start, len)) if *start + *len == i => *len += 1,
                _ => out.push((i, 1)),
            }
        }
        out
    }
}

impl fmt::Display for SimpleSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.indices.is_empty() {
            f.write_str("∅")
        } else {
            write!(f, "{{{}}}", self.indices.iter().map(|i| format!("α_{i}")).join(","))
        }
    }
}

fn closure_violation(set: &RootSet, in_complement: bool) -> Option<ClosureWitness> {
    let rows = set.rows();
    for a in 1..=set.points() {
        let mut succ = rows[a];
        while succ != 0 {
            let b = succ.trailing_zeros() as usize;
            succ &= succ - 1;
            let missing = rows[b] & !rows[a] & !(1 << a);
            if missing != 0 {
                let c = missing.trailing_zeros() as usize;
                return Some(ClosureWitness {
                    first: Root::pair(a, b),
                    second: Root::pair(b, c),
                    sum: Root::pair(a, c),
                    in_complement,
                });
            }
        }
    }
    None
}

pub fn is_closed(c: &RootSet) -> bool {
    closure_violation(c, false).is_none()
}

/// First failure of closedness in `C` or `Φ \ C`, if any.
pub fn biclosed_violation(c: &RootSet) -> Option<ClosureWitness> {
    closure_violation(c, false).or_else(|| closure_violation(&c.complement(), true))
}

pub fn is_biclosed(c: &RootSet) -> bool {
    biclosed_violation(c).is_none()
}

pub(crate) fn require_biclosed(c: &RootSet) -> Result<()> {
    match biclosed_violation(c) {
        Some(w) => Err(Error::NotBiclosed(w)),
        None => Ok(()),
    }
}

/// `Φ⁺`: all `(a,b)` with `a < b`.
pub fn standard_positive_system(n: usize) -> Result<RootSet> {
    let m = n + 1;
    RootSet::from_pairs(n, (1..=m).flat_map(|a| (a + 1..=m).map(move |b| (a, b))))
}

/// `Φ_D = span(D) ∩ Φ`.
pub fn span_subsystem(d: &SimpleSubset, n: usize) -> Result<RootSet> {
    d.validate(n)?;
    let mut out = RootSet::empty(n)?;
    for (start, len) in d.components() {
        for a in start..=start + len {
            for b in start..=start + len {
                if a != b {
                    out.bits |= 1 << Root::pair(a, b).index(n + 1);
                }
            }
        }
    }
    Ok(out)
}

/// The first non-orthogonal pair `(i, j)`, `i ∈ D1`, `j ∈ D2`.
pub(crate) fn orthogonality_violation(d1: &SimpleSubset, d2: &SimpleSubset) -> Option<(usize, usize)> {
    d1.indices.iter().cartesian_product(&d2.indices).find(|(&i, &j)| i.abs_diff(j) < 2).map(|(&i, &j)| (i, j))
}

/// `(α_i, α_j) = 0` for all `i ∈ D1`, `j ∈ D2`; disjointness included.
pub fn orthogonal(d1: &SimpleSubset, d2: &SimpleSubset) -> bool {
    orthogonality_violation(d1, d2).is_none()
}

pub fn act_set(w: &Permutation, c: &RootSet) -> RootSet {
    assert_eq!(w.size(), c.points(), "permutation size does not match the rank");
    let mut out = RootSet { n: c.n, bits: 0 };
    for r in c.iter() {
        out.bits |= 1 << act_root(w, r).index(c.points());
    }
    out
}

/// `w(Φ⁺_{D1,D2}) = w((Φ⁺ \ Φ_{D1}) ∪ Φ_{D2})`.
pub fn build_psi(w: &Permutation, d1: &SimpleSubset, d2: &SimpleSubset, n: usize) -> Result<RootSet> {
    if w.size() != n + 1 {
        return Err(Error::SizeMismatch { left: w.size(), right: n + 1 });
    }
    if let Some((i, j)) = orthogonality_violation(d1, d2) {
        return Err(Error::NotOrthogonal { i, j });
    }
    let base = standard_positive_system(n)?.difference(&span_subsystem(d1, n)?).union(&span_subsystem(d2, n)?);
    Ok(act_set(w, &base))
}

pub fn is_positive_system(c: &RootSet) -> bool {
    let neg = c.negated();
    c.intersection(&neg).is_empty() && c.union(&neg).is_full() && is_biclosed(c)
}

/// `w(Φ⁺_{∅,D2})`.
pub fn is_parabolic(c: &RootSet) -> Result<bool> {
    Ok(bijection::classify(c)?.delta1.is_empty())
}

/// `w(Φ⁺_{D1,∅})`.
pub fn is_horocyclic(c: &RootSet) -> Result<bool> {
    Ok(bijection::classify(c)?.delta2.is_empty())
}

/// All `σ` with `σ(C) = C`, by exhaustive search over `S_{n+1}`.
pub fn stabilizer(c: &RootSet) -> Result<Vec<Permutation>> {
    require_biclosed(c)?;
    if c.rank() > 7 {
        return Err(Error::RankTooLarge { n: c.rank(), limit: 7 });
    }
    Ok(Permutation::all(c.points()).into_iter().filter(|w| act_set(w, c) == *c).collect())
}

/// The subgroup generated by a set of permutations, sorted.
pub fn generated_subgroup(generators: &[Permutation], size: usize) -> Vec<Permutation> {
    let mut seen = std::collections::BTreeSet::new();
    let mut frontier = vec![Permutation::identity(size)];
    seen.insert(Permutation::identity(size));
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q = g.compose(&p);
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.into_iter().collect()
}

/// `wUw⁻¹` for the canonical form `w(Φ⁺_{D1,D2})` of `C`, where `U` is
/// generated by the Coxeter generators `s_i`, `α_i ∈ D1 ∪ D2`.
///
/// Reported next to [`stabilizer`] for comparison only.
pub fn parabolic_conjugate_stabilizer(c: &RootSet) -> Result<Vec<Permutation>> {
    let canon = bijection::classify(c)?;
    let size = c.points();
    let w = &canon.w;
    let w_inv = w.inverse();
    let generators = canon
        .delta1
        .union(&canon.delta2)
        .indices()
        .iter()
        .map(|&i| {
            let s = Permutation::transposition(i, i + 1, size)?;
            Ok(w.compose(&s).compose(&w_inv))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(generated_subgroup(&generators, size))
}
