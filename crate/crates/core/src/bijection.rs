//! The correspondence between biclosed sets of `A_n` and associative
//! quasitrivial operations on `{1..n+1}`.
//!
//! Two independent routes are provided:
//!
//! * the pairwise dictionary ([`pairs_to_op`] / [`op_to_pairs`]), which reads
//!   `F(j,k)` and `F(k,j)` off the membership of `±α_{j,k}`;
//! * the block construction ([`semigroup_from_canonical`] /
//!   [`semigroup_to_biclosed`]), which goes through the canonical form
//!   `w(Φ⁺_{Δ₁,Δ₂})` and the interleaving of classes and singletons.
//!
//! The canonical `w` lists every equivalence class in ascending order, i.e.
//! `w(u)` is the `u`-th element of the chain obtained by sorting each class.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::root_system::{self, build_psi, require_biclosed, RootSet, SimpleSubset, MAX_RANK};
use crate::semigroup::{Block, PreorderDecomposition, Projection, QuasitrivialOp};

/// Start positions `(i_1, ..., i_t)` of `t` separated intervals of sizes
/// `(k_1, ..., k_t)` inside `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositionVector {
    n: usize,
    sizes: Vec<usize>,
    positions: Vec<usize>,
}

/// An element of `{A_1..A_t, B_1..B_p}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    A(usize),
    B(usize),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::A(j) => write!(f, "A_{j}"),
            Label::B(j) => write!(f, "B_{j}"),
        }
    }
}

/// `A_1<B_1<B_2<A_2`.
pub fn order_string(order: &[Label]) -> String {
    order.iter().join("<")
}

impl PositionVector {
    pub fn new(n: usize, sizes: Vec<usize>, positions: Vec<usize>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidPositionVector(msg));
        if sizes.len() != positions.len() {
            return bad(format!("{} sizes but {} positions", sizes.len(), positions.len()));
        }
        if sizes.contains(&0) {
            return bad("interval sizes must be positive".into());
        }
        if let Some(&first) = positions.first() {
            if first < 1 {
                return bad("i_1 must be at least 1".into());
            }
        }
        for j in 1..positions.len() {
            if positions[j - 1] + sizes[j - 1] + 1 > positions[j] {
                return bad(format!("i_{} + k_{} + 1 > i_{}", j, j, j + 1));
            }
        }
        if let (Some(&i), Some(&k)) = (positions.last(), sizes.last()) {
            if i + k - 1 > n {
                return bad(format!("i_t + k_t - 1 = {} exceeds n = {n}", i + k - 1));
            }
        }
        Ok(PositionVector { n, sizes, positions })
    }

    /// Every valid position vector for the given `n` and sizes, in lexicographic order.
    pub fn all(n: usize, sizes: &[usize]) -> Vec<PositionVector> {
        fn rec(n: usize, sizes: &[usize], from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let j = cur.len();
            if j == sizes.len() {
                out.push(cur.clone());
                return;
            }
            // room needed by the remaining intervals, gaps included
            let tail: usize = sizes[j..].iter().sum::<usize>() + (sizes.len() - j - 1);
            if n + 1 < tail + from {
                return;
            }
            for i in from..=n + 1 - tail {
                cur.push(i);
                rec(n, sizes, i + sizes[j] + 1, cur, out);
                cur.pop();
            }
        }
        if sizes.contains(&0) {
            return Vec::new();
        }
        let mut out = Vec::new();
        rec(n, sizes, 1, &mut Vec::new(), &mut out);
        out.into_iter().map(|positions| PositionVector { n, sizes: sizes.to_vec(), positions }).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn t(&self) -> usize {
        self.sizes.len()
    }

    /// `p = n + 1 - Σk - t`, the number of singleton labels.
    pub fn p(&self) -> usize {
        self.n + 1 - self.sizes.iter().sum::<usize>() - self.t()
    }

    /// The total order on `{A_j} ∪ {B_r}` that places `A_j` after exactly
    /// `i_j - 1 - Σ_{l<j} (k_l + 1)` of the `B`'s.
    pub fn interleave(&self) -> Vec<Label> {
        let mut out = Vec::with_capacity(self.t() + self.p());
        let mut b = 0;
        let mut covered = 0;
        for (j, (&i, &k)) in self.positions.iter().zip(&self.sizes).enumerate() {
            let before = i - 1 - covered;
            while b < before {
                b += 1;
                out.push(Label::B(b));
            }
            out.push(Label::A(j + 1));
            covered += k + 1;
        }
        while b < self.p() {
            b += 1;
            out.push(Label::B(b));
        }
        out
    }

    /// Inverse of [`PositionVector::interleave`].
    pub fn deinterleave(order: &[Label], sizes: &[usize], n: usize) -> Result<Self> {
        let t = sizes.len();
        let used = sizes.iter().sum::<usize>() + t;
        if used > n + 1 {
            return Err(Error::InvalidOrder(format!("intervals {sizes:?} do not fit in n = {n}")));
        }
        let p = n + 1 - used;
        let (mut next_a, mut next_b) = (1, 1);
        let mut positions = Vec::with_capacity(t);
        let mut covered = 0;
        for &label in order {
            match label {
                Label::A(j) => {
                    if j != next_a || j > t {
                        return Err(Error::InvalidOrder(format!("{label} out of order")));
                    }
                    positions.push(1 + (next_b - 1) + covered);
                    covered += sizes[j - 1] + 1;
                    next_a += 1;
                }
                Label::B(r) => {
                    if r != next_b || r > p {
                        return Err(Error::InvalidOrder(format!("{label} out of order")));
                    }
                    next_b += 1;
                }
            }
        }
        if next_a != t + 1 || next_b != p + 1 {
            return Err(Error::InvalidOrder(format!(
                "expected {t} A-labels and {p} B-labels, got {} and {}",
                next_a - 1,
                next_b - 1
            )));
        }
        PositionVector::new(n, sizes.to_vec(), positions)
    }
}

/// `C = w(Φ⁺_{Δ₁,Δ₂})` with `w` the ascending-within-class representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CanonicalRepr", into = "CanonicalRepr")]
pub struct CanonicalBiclosed {
    pub w: Permutation,
    pub delta1: SimpleSubset,
    pub delta2: SimpleSubset,
}

#[derive(Serialize, Deserialize)]
struct PermRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cycles: Option<String>,
    images: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct CanonicalRepr {
    w: PermRepr,
    delta1: Vec<usize>,
    delta2: Vec<usize>,
}

impl TryFrom<CanonicalRepr> for CanonicalBiclosed {
    type Error = Error;

    fn try_from(repr: CanonicalRepr) -> Result<Self> {
        let w = Permutation::from_images(repr.w.images)?;
        if let Some(cycles) = repr.w.cycles {
            if Permutation::from_cycles(&cycles, w.size())? != w {
                return Err(Error::InvalidPermutation(format!("cycles {cycles:?} disagree with images")));
            }
        }
        let canon =
            CanonicalBiclosed { w, delta1: SimpleSubset::new(repr.delta1), delta2: SimpleSubset::new(repr.delta2) };
        canon.to_root_set()?;
        Ok(canon)
    }
}

impl From<CanonicalBiclosed> for CanonicalRepr {
    fn from(c: CanonicalBiclosed) -> Self {
        CanonicalRepr {
            w: PermRepr { cycles: Some(c.w.cycle_string()), images: c.w.images().to_vec() },
            delta1: c.delta1.indices().to_vec(),
            delta2: c.delta2.indices().to_vec(),
        }
    }
}

impl CanonicalBiclosed {
    pub fn rank(&self) -> usize {
        self.w.size() - 1
    }

    pub fn to_root_set(&self) -> Result<RootSet> {
        build_psi(&self.w, &self.delta1, &self.delta2, self.rank())
    }

    /// Intervals of `Δ₁ ∪ Δ₂` as a position vector, with the projection of each interval.
    pub fn position_vector(&self) -> Result<(PositionVector, Vec<Projection>)> {
        let n = self.rank();
        self.delta1.validate(n)?;
        self.delta2.validate(n)?;
        if let Some((i, j)) = root_system::orthogonality_violation(&self.delta1, &self.delta2) {
            return Err(Error::NotOrthogonal { i, j });
        }
        let comps = self.delta1.union(&self.delta2).components();
        let eps = comps
            .iter()
            .map(|&(start, _)| if self.delta1.contains(start) { Projection::First } else { Projection::Second })
            .collect();
        let (positions, sizes) = comps.into_iter().unzip();
        Ok((PositionVector::new(n, sizes, positions)?, eps))
    }
}

/// `(2,3)Φ⁺_{{α_1},∅}`; the identity prefix is omitted.
impl fmt::Display for CanonicalBiclosed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.w.is_identity() {
            write!(f, "{}", self.w)?;
        }
        write!(f, "Φ⁺_{{{},{}}}", self.delta1, self.delta2)
    }
}

/// Reading of a root set as an operation table, pair by pair:
///
/// | members of `C` among `±α_{j,k}` | `F(j,k)` | `F(k,j)` |
/// |---|---|---|
/// | none          | `j` | `k` |
/// | `α_{j,k}` only  | `k` | `k` |
/// | `-α_{j,k}` only | `j` | `j` |
/// | both          | `k` | `j` |
///
/// Defined for every subset of Φ.
pub fn pairs_to_op(c: &RootSet) -> QuasitrivialOp {
    QuasitrivialOp::from_fn(c.points(), |a, b| {
        if a == b {
            return a;
        }
        let (j, k) = (a.min(b), a.max(b));
        let (fjk, fkj) = match (c.has_pair(j, k), c.has_pair(k, j)) {
            (false, false) => (j, k),
            (true, false) => (k, k),
            (false, true) => (j, j),
            (true, true) => (k, j),
        };
        if a == j {
            fjk
        } else {
            fkj
        }
    })
    .expect("pairwise tables are quasitrivial")
}

/// Inverse of [`pairs_to_op`]; associativity is not required.
pub fn op_to_pairs(f: &QuasitrivialOp) -> Result<RootSet> {
    let n = f.size() - 1;
    let mut pairs = Vec::new();
    for (j, k) in (1..=f.size()).tuple_combinations() {
        let (fjk, fkj) = (f.get(j, k), f.get(k, j));
        if fjk == k {
            pairs.push((j, k));
            if fkj == j {
                pairs.push((k, j));
            }
        } else if fkj == j {
            pairs.push((k, j));
        }
    }
    if n > MAX_RANK {
        return Err(Error::RankTooLarge { n, limit: MAX_RANK });
    }
    RootSet::from_pairs(n, pairs)
}

/// `F_C` for a biclosed `C`, via the pairwise dictionary.
pub fn biclosed_to_semigroup(c: &RootSet) -> Result<QuasitrivialOp> {
    require_biclosed(c)?;
    let f = pairs_to_op(c);
    if let Err(e) = f.to_preorder() {
        return Err(Error::CrossCheckFailure(format!(
            "pairwise table of biclosed {} is not associative: {e}",
            c.pairs_string()
        )));
    }
    Ok(f)
}

/// The operation attached to `w(Φ⁺_{Δ₁,Δ₂})` by the block construction:
/// the classes are `A_j = {w(i_j), ..., w(i_j + k_j)}` for the intervals of
/// `Δ₁ ∪ Δ₂`, the remaining points are singletons `B_r = {w(l_r)}` with
/// `l_1 < l_2 < ...`, and the classes are ordered by the interleaving of the
/// position vector.
pub fn semigroup_from_canonical(canon: &CanonicalBiclosed) -> Result<QuasitrivialOp> {
    let (pv, eps) = canon.position_vector()?;
    let w = &canon.w;
    let m = canon.rank() + 1;
    let mut in_class = vec![false; m + 1];
    let classes: Vec<Vec<usize>> = pv
        .positions()
        .iter()
        .zip(pv.sizes())
        .map(|(&i, &k)| {
            (i..=i + k)
                .map(|u| {
                    in_class[u] = true;
                    w.apply(u)
                })
                .collect()
        })
        .collect();
    let singles: Vec<usize> = (1..=m).filter(|&u| !in_class[u]).map(|u| w.apply(u)).collect();
    let blocks = pv
        .interleave()
        .into_iter()
        .map(|label| match label {
            Label::A(j) => Block { elements: classes[j - 1].clone(), projection: Some(eps[j - 1]) },
            Label::B(r) => Block { elements: vec![singles[r - 1]], projection: None },
        })
        .collect();
    Ok(PreorderDecomposition::new(m, blocks)?.to_op())
}

/// `F_C` through the canonical form and the interleaving construction.
pub fn biclosed_to_semigroup_interleaved(c: &RootSet) -> Result<QuasitrivialOp> {
    semigroup_from_canonical(&classify(c)?)
}

/// The canonical `(w, Δ₁, Δ₂)` of a preorder decomposition: interval
/// positions come from de-interleaving the block order, `w` lists the
/// blocks in order with each block sorted.
pub fn canonical_from_preorder(d: &PreorderDecomposition) -> CanonicalBiclosed {
    let n = d.size() - 1;
    let mut labels = Vec::with_capacity(d.blocks().len());
    let mut sizes = Vec::new();
    let mut eps = Vec::new();
    let mut singles = 0;
    for block in d.blocks() {
        match block.projection {
            Some(p) => {
                sizes.push(block.elements.len() - 1);
                eps.push(p);
                labels.push(Label::A(sizes.len()));
            }
            None => {
                singles += 1;
                labels.push(Label::B(singles));
            }
        }
    }
    let pv = PositionVector::deinterleave(&labels, &sizes, n)
        .expect("block orders of a decomposition are valid label orders");
    let (mut d1, mut d2) = (Vec::new(), Vec::new());
    for ((&i, &k), p) in pv.positions().iter().zip(pv.sizes()).zip(eps) {
        let target = if p == Projection::First { &mut d1 } else { &mut d2 };
        target.extend(i..i + k);
    }
    let images = d.blocks().iter().flat_map(|b| b.elements.iter().copied()).collect();
    CanonicalBiclosed {
        w: Permutation::from_images(images).expect("blocks partition the points"),
        delta1: SimpleSubset::new(d1),
        delta2: SimpleSubset::new(d2),
    }
}

/// The biclosed set of an associative quasitrivial operation.
pub fn semigroup_to_biclosed(f: &QuasitrivialOp) -> Result<RootSet> {
    if f.size() - 1 > MAX_RANK {
        return Err(Error::RankTooLarge { n: f.size() - 1, limit: MAX_RANK });
    }
    canonical_from_preorder(&f.to_preorder()?).to_root_set()
}

/// Canonical form of a biclosed set.
pub fn classify(c: &RootSet) -> Result<CanonicalBiclosed> {
    require_biclosed(c)?;
    let d = pairs_to_op(c)
        .to_preorder()
        .map_err(|e| Error::CrossCheckFailure(format!("biclosed {} gave {e}", c.pairs_string())))?;
    let canon = canonical_from_preorder(&d);
    if canon.to_root_set()? != *c {
        return Err(Error::CrossCheckFailure(format!("canonical form {canon} does not rebuild {}", c.pairs_string())));
    }
    Ok(canon)
}

/// Associativity decided through the root system: `F` is associative iff the
/// set read off pairwise is biclosed.
pub fn associative_via_biclosed(f: &QuasitrivialOp) -> Result<bool> {
    Ok(root_system::is_biclosed(&op_to_pairs(f)?))
}
