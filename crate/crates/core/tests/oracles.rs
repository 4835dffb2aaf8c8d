//! Cross-checks against a model that stores roots as integer vectors in the
//! `ε` basis and knows nothing about pair indices or bitsets.

use std::collections::{BTreeMap, BTreeSet};

use biclosed_core::bijection::{biclosed_to_semigroup, classify};
use biclosed_core::enumeration::{enum_biclosed_bruteforce, enum_semigroups};
use biclosed_core::order::{hasse, join, leq_op, meet, FiniteLattice, PosetView};
use biclosed_core::root_system::{build_psi, is_biclosed, root_sum, Root, RootSet, SimpleSubset};
use biclosed_core::{Permutation, QuasitrivialOp};

type Vector = Vec<i32>;
/// Orthogonal pairs `(Δ₁, Δ₂)` as index lists.
type DeltaPairs = BTreeSet<(Vec<usize>, Vec<usize>)>;

/// `ε_a - ε_b` on `m` coordinates.
fn eps(a: usize, b: usize, m: usize) -> Vector {
    let mut v = vec![0; m];
    v[a - 1] = 1;
    v[b - 1] = -1;
    v
}

fn all_roots(m: usize) -> Vec<Vector> {
    let mut out = Vec::new();
    for a in 1..=m {
        for b in 1..=m {
            if a != b {
                out.push(eps(a, b, m));
            }
        }
    }
    out
}

fn add(x: &Vector, y: &Vector) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn is_root(v: &Vector) -> bool {
    v.iter().filter(|&&c| c == 1).count() == 1
        && v.iter().filter(|&&c| c == -1).count() == 1
        && v.iter().all(|c| c.abs() <= 1)
}

/// Simple-root coordinates: the `i`-th is the partial sum of the first `i` entries.
fn alpha_coords(v: &Vector) -> Vec<i32> {
    v.iter()
        .take(v.len() - 1)
        .scan(0, |s, c| {
            *s += c;
            Some(*s)
        })
        .collect()
}

fn closed(set: &BTreeSet<Vector>) -> bool {
    set.iter().all(|x| {
        set.iter().all(|y| {
            let s = add(x, y);
            !is_root(&s) || set.contains(&s)
        })
    })
}

fn oracle_biclosed(set: &BTreeSet<Vector>, m: usize) -> bool {
    let rest: BTreeSet<Vector> = all_roots(m).into_iter().filter(|r| !set.contains(r)).collect();
    closed(set) && closed(&rest)
}

fn to_vectors(c: &RootSet) -> BTreeSet<Vector> {
    let m = c.points();
    c.iter().map(|r| eps(r.source(), r.target(), m)).collect()
}

fn from_vectors(n: usize, set: &BTreeSet<Vector>) -> RootSet {
    let pairs = set.iter().map(|v| {
        let a = v.iter().position(|&c| c == 1).unwrap() + 1;
        let b = v.iter().position(|&c| c == -1).unwrap() + 1;
        (a, b)
    });
    RootSet::from_pairs(n, pairs).unwrap()
}

fn permute(w: &Permutation, v: &Vector) -> Vector {
    let mut out = vec![0; v.len()];
    for (i, &c) in v.iter().enumerate() {
        out[w.apply(i + 1) - 1] = c;
    }
    out
}

/// `w((Φ⁺ \ Φ_{D1}) ∪ Φ_{D2})` with supports read off simple-root coordinates.
fn oracle_psi(w: &Permutation, d1: &[usize], d2: &[usize], m: usize) -> BTreeSet<Vector> {
    let supported =
        |v: &Vector, d: &[usize]| alpha_coords(v).iter().enumerate().all(|(i, &c)| c == 0 || d.contains(&(i + 1)));
    all_roots(m)
        .into_iter()
        .filter(|v| {
            let positive = alpha_coords(v).iter().all(|&c| c >= 0);
            (positive && !supported(v, d1)) || supported(v, d2)
        })
        .map(|v| permute(w, &v))
        .collect()
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).map(|mask| (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect()).collect()
}

/// Orthogonal in the `ε` inner product: no two members are adjacent or equal.
fn oracle_orthogonal(d1: &[usize], d2: &[usize], m: usize) -> bool {
    d1.iter().all(|&i| {
        d2.iter().all(|&j| {
            let (x, y) = (eps(i, i + 1, m), eps(j, j + 1, m));
            x.iter().zip(&y).map(|(a, b)| a * b).sum::<i32>() == 0
        })
    })
}

#[test]
fn root_sum_matches_vectors() {
    for n in 1..=3 {
        let m = n + 1;
        for x in all_roots(m) {
            for y in all_roots(m) {
                let rx = from_vectors(n, &[x.clone()].into()).iter().next().unwrap();
                let ry = from_vectors(n, &[y.clone()].into()).iter().next().unwrap();
                let s = add(&x, &y);
                let expected = is_root(&s).then(|| from_vectors(n, &[s.clone()].into()).iter().next().unwrap());
                assert_eq!(root_sum(rx, ry), expected);
                assert_eq!(rx.coefficients(n), alpha_coords(&x));
            }
        }
    }
}

#[test]
fn simple_roots_have_unit_coordinates() {
    for i in 1..=4 {
        let coords = Root::simple(i).coefficients(4);
        assert_eq!(coords, alpha_coords(&eps(i, i + 1, 5)));
    }
}

#[test]
fn biclosedness_matches_vectors() {
    for n in 0..=3 {
        let m = n + 1;
        let roots = all_roots(m);
        let mut count = 0;
        for mask in 0u64..1 << roots.len() {
            let set: BTreeSet<Vector> =
                roots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, r)| r.clone()).collect();
            let expected = oracle_biclosed(&set, m);
            count += usize::from(expected);
            assert_eq!(is_biclosed(&from_vectors(n, &set)), expected);
        }
        assert_eq!(enum_biclosed_bruteforce(n, false).unwrap().len(), count);
    }
}

#[test]
fn build_psi_matches_vectors() {
    for n in 1..=3 {
        let m = n + 1;
        for w in Permutation::all(m) {
            for d1 in subsets(n) {
                for d2 in subsets(n) {
                    let got = build_psi(&w, &SimpleSubset::new(d1.clone()), &SimpleSubset::new(d2.clone()), n);
                    if oracle_orthogonal(&d1, &d2, m) {
                        assert_eq!(got.unwrap(), from_vectors(n, &oracle_psi(&w, &d1, &d2, m)));
                    } else {
                        assert!(got.is_err());
                    }
                }
            }
        }
    }
}

/// Every biclosed set arises from exactly one orthogonal pair, and the
/// classification finds it together with a valid `w`.
#[test]
fn classification_is_unique_and_found() {
    for n in 0..=3 {
        let m = n + 1;
        let mut reps: BTreeMap<RootSet, DeltaPairs> = BTreeMap::new();
        for w in Permutation::all(m) {
            for d1 in subsets(n) {
                for d2 in subsets(n) {
                    if oracle_orthogonal(&d1, &d2, m) {
                        let set = oracle_psi(&w, &d1, &d2, m);
                        assert!(oracle_biclosed(&set, m));
                        reps.entry(from_vectors(n, &set)).or_default().insert((d1.clone(), d2.clone()));
                    }
                }
            }
        }
        let sets = enum_biclosed_bruteforce(n, false).unwrap();
        assert_eq!(reps.keys().copied().collect::<Vec<_>>(), sets);
        for (c, pairs) in &reps {
            assert_eq!(pairs.len(), 1, "{} has several orthogonal pairs", c.pairs_string());
            let canon = classify(c).unwrap();
            let (d1, d2) = pairs.iter().next().unwrap();
            assert_eq!((canon.delta1.indices(), canon.delta2.indices()), (d1.as_slice(), d2.as_slice()));
            assert_eq!(from_vectors(n, &oracle_psi(&canon.w, d1, d2, m)), *c);
        }
    }
}

/// The pairwise dictionary read directly off `ε_j - ε_k` membership.
fn oracle_op(set: &BTreeSet<Vector>, m: usize) -> Vec<Vec<usize>> {
    let mut t = vec![vec![0; m]; m];
    for j in 1..=m {
        t[j - 1][j - 1] = j;
        for k in j + 1..=m {
            let (up, down) = (set.contains(&eps(j, k, m)), set.contains(&eps(k, j, m)));
            let (fjk, fkj) = match (up, down) {
                (false, false) => (j, k),
                (true, false) => (k, k),
                (false, true) => (j, j),
                (true, true) => (k, j),
            };
            t[j - 1][k - 1] = fjk;
            t[k - 1][j - 1] = fkj;
        }
    }
    t
}

fn naive_associative(t: &[Vec<usize>]) -> bool {
    let m = t.len();
    let f = |a: usize, b: usize| t[a - 1][b - 1];
    (1..=m).all(|a| (1..=m).all(|b| (1..=m).all(|c| f(f(a, b), c) == f(a, f(b, c)))))
}

#[test]
fn bijection_matches_dictionary_and_naive_associativity() {
    for n in 0..=3 {
        let m = n + 1;
        let sets = enum_biclosed_bruteforce(n, false).unwrap();
        let mut images = BTreeSet::new();
        for c in &sets {
            let rows = oracle_op(&to_vectors(c), m);
            assert!(naive_associative(&rows));
            assert_eq!(biclosed_to_semigroup(c).unwrap().rows(), rows);
            images.insert(rows);
        }
        // injective, and onto the naively associative quasitrivial tables
        let assoc: BTreeSet<Vec<Vec<usize>>> =
            QuasitrivialOp::all_quasitrivial(m).map(|f| f.rows()).filter(|r| naive_associative(r)).collect();
        assert_eq!(images, assoc);
        assert_eq!(enum_semigroups(m).iter().map(|f| f.rows()).collect::<BTreeSet<_>>(), assoc);
    }
}

#[test]
fn equivariance_in_vector_model() {
    for n in 1..=3 {
        let m = n + 1;
        for c in enum_biclosed_bruteforce(n, false).unwrap() {
            let vs = to_vectors(&c);
            let f = biclosed_to_semigroup(&c).unwrap();
            for sigma in Permutation::all(m) {
                let moved: BTreeSet<Vector> = vs.iter().map(|v| permute(&sigma, v)).collect();
                let expected: Vec<Vec<usize>> = (1..=m)
                    .map(|x| {
                        (1..=m)
                            .map(|y| sigma.apply(f.get(sigma.inverse().apply(x), sigma.inverse().apply(y))))
                            .collect()
                    })
                    .collect();
                assert_eq!(oracle_op(&moved, m), expected);
            }
        }
    }
}

/// Cover relations by removing every relation implied through a third element.
fn naive_covers(k: usize, leq: impl Fn(usize, usize) -> bool) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for i in 0..k {
        for j in 0..k {
            if i != j && leq(i, j) && !(0..k).any(|z| z != i && z != j && leq(i, z) && leq(z, j)) {
                out.insert((i, j));
            }
        }
    }
    out
}

#[test]
fn hasse_matches_naive_reduction() {
    for n in 0..=3 {
        let view = PosetView::new(enum_biclosed_bruteforce(n, false).unwrap()).unwrap();
        let els = view.elements();
        let naive = naive_covers(els.len(), |i, j| leq_op(&els[i].1, &els[j].1).unwrap());
        let edges: BTreeSet<_> = view.hasse_edges().into_iter().collect();
        assert_eq!(edges, naive);
        let generic: BTreeSet<_> = hasse(els, |x, y| x.0.is_subset(&y.0)).into_iter().collect();
        assert_eq!(generic, naive);
    }
}

#[test]
fn meets_and_joins_match_naive_bounds() {
    for n in 0..=3 {
        let sets = enum_biclosed_bruteforce(n, false).unwrap();
        let lattice = FiniteLattice::new(sets.clone());
        for c in &sets {
            for d in &sets {
                let lower: Vec<&RootSet> = sets.iter().filter(|x| x.is_subset(c) && x.is_subset(d)).collect();
                let greatest: Vec<&&RootSet> = lower.iter().filter(|x| lower.iter().all(|y| y.is_subset(x))).collect();
                assert_eq!(greatest.len(), 1);
                assert_eq!(lattice.meet(c, d).unwrap(), **greatest[0]);
                let upper: Vec<&RootSet> = sets.iter().filter(|x| c.is_subset(x) && d.is_subset(x)).collect();
                let least: Vec<&&RootSet> = upper.iter().filter(|x| upper.iter().all(|y| x.is_subset(y))).collect();
                assert_eq!(least.len(), 1);
                assert_eq!(lattice.join(c, d).unwrap(), **least[0]);
            }
        }
    }
    let c = RootSet::from_pairs(2, [(1, 2), (1, 3)]).unwrap();
    let d = RootSet::from_pairs(2, [(2, 3), (1, 3)]).unwrap();
    assert_eq!(meet(&c, &d).unwrap(), RootSet::empty(2).unwrap());
    assert_eq!(join(&c, &d).unwrap(), RootSet::from_pairs(2, [(1, 2), (2, 3), (1, 3)]).unwrap());
}

#[test]
fn semigroups_of_five_points_by_filtering() {
    // 2^20 quasitrivial tables; the associative ones must be exactly the generated list
    let assoc: BTreeSet<Vec<Vec<usize>>> =
        QuasitrivialOp::all_quasitrivial(5).filter(|f| f.is_associative()).map(|f| f.rows()).collect();
    assert_eq!(assoc.len(), 1182);
    assert_eq!(enum_semigroups(5).iter().map(|f| f.rows()).collect::<BTreeSet<_>>(), assoc);
}
