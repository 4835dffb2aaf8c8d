//! Exhaustive verification runs, one per acceptance criterion.
//!
//! Each check returns a [`CriterionOutcome`] carrying its verdict, a short
//! detail line, and the elapsed time against its time budget.

use std::collections::BTreeSet;
use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bijection::{
    biclosed_to_semigroup, biclosed_to_semigroup_interleaved, classify, op_to_pairs, order_string,
    semigroup_to_biclosed, Label, PositionVector,
};
use crate::enumeration::{
    classify_all, correspondence_failure, enum_biclosed_bruteforce, enum_biclosed_classified, enum_semigroups,
    semigroup_count_formula,
};
use crate::error::{Error, Result};
use crate::order::{leq_op, FiniteLattice, PosetView};
use crate::permutation::Permutation;
use crate::root_system::{act_set, build_psi, is_biclosed, is_positive_system, RootSet, SimpleSubset};
use crate::semigroup::QuasitrivialOp;

/// Quasitrivial semigroup counts for `m = 1..=5`.
pub const SEMIGROUP_COUNTS: [usize; 5] = [1, 4, 20, 138, 1182];

/// Largest rank `verify` accepts without and with the override.
pub const VERIFY_LIMIT: usize = 3;
pub const VERIFY_FORCED_LIMIT: usize = 4;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: f64,
    pub limit_ms: Option<f64>,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        let budget = self.limit_ms.map_or(String::new(), |l| format!(" / {l:.0} ms"));
        format!(
            "[{}] {:>2}. {} ({:.1} ms{}): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_ms,
            budget,
            self.detail
        )
    }
}

/// Time budgets are stated for ranks up to [`VERIFY_LIMIT`]; larger forced
/// runs are reported without one.
fn budget(rank: usize, ms: f64) -> Option<f64> {
    (rank <= VERIFY_LIMIT).then_some(ms)
}

fn run(id: u8, name: &str, limit_ms: Option<f64>, body: impl FnOnce() -> Result<(bool, String)>) -> CriterionOutcome {
    let start = Instant::now();
    let (ok, detail) = body().unwrap_or_else(|e| (false, format!("error: {e}")));
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let in_time = limit_ms.is_none_or(|l| elapsed_ms <= l);
    let detail = if ok && !in_time { format!("{detail}; over time budget") } else { detail };
    CriterionOutcome { id, name: name.to_string(), passed: ok && in_time, detail, elapsed_ms, limit_ms }
}

/// One row of the worked `A_2` example: a representative `w`, the simple
/// subsets, the listed roots and the block structure of the semigroup.
#[derive(Clone, Debug, Deserialize)]
pub struct GoldenRow {
    pub w: String,
    pub delta1: Vec<usize>,
    pub delta2: Vec<usize>,
    pub roots: Vec<[usize; 2]>,
    pub structure: String,
}

pub fn golden_a2_rows() -> Vec<GoldenRow> {
    serde_json::from_str(include_str!("../data/a2_example.json")).expect("golden table parses")
}

/// Checks one golden row; returns whether the printed `w` is already canonical.
fn check_golden_row(row: &GoldenRow) -> Result<std::result::Result<bool, String>> {
    let n = 2;
    let listed = RootSet::from_pairs(n, row.roots.iter().map(|&[a, b]| (a, b)))?;
    let w = Permutation::from_cycles(&row.w, n + 1)?;
    let (d1, d2) = (SimpleSubset::new(row.delta1.clone()), SimpleSubset::new(row.delta2.clone()));
    if build_psi(&w, &d1, &d2, n)? != listed {
        return Ok(Err(format!("{}Φ⁺ does not give the listed roots", row.w)));
    }
    let canon = classify(&listed)?;
    if canon.delta1 != d1 || canon.delta2 != d2 {
        return Ok(Err(format!("classification of {} gives {canon}", listed.pairs_string())));
    }
    let f = biclosed_to_semigroup(&listed)?;
    let structure = f.to_preorder()?.to_string();
    if structure != row.structure {
        return Ok(Err(format!("{} maps to {structure}, expected {}", listed.pairs_string(), row.structure)));
    }
    if biclosed_to_semigroup_interleaved(&listed)? != f || semigroup_to_biclosed(&f)? != listed {
        return Ok(Err(format!("round trip through {structure} fails")));
    }
    Ok(Ok(canon.w == w))
}

/// The worked `A_2` example, row for row.
pub fn criterion_golden_a2() -> CriterionOutcome {
    run(1, "A_2 golden table", Some(1_000.0), || {
        let rows = golden_a2_rows();
        let sets = enum_biclosed_bruteforce(2, false)?;
        let listed: BTreeSet<RootSet> =
            rows.iter().map(|r| RootSet::from_pairs(2, r.roots.iter().map(|&[a, b]| (a, b)))).collect::<Result<_>>()?;
        if sets.len() != 20 || rows.len() != 20 || listed != sets.iter().copied().collect() {
            return Ok((false, format!("{} enumerated sets vs {} rows", sets.len(), listed.len())));
        }
        let mut recoset = 0;
        for row in &rows {
            match check_golden_row(row)? {
                Ok(true) => {}
                Ok(false) => recoset += 1,
                Err(msg) => return Ok((false, msg)),
            }
        }
        Ok((true, format!("20/20 rows match; {recoset} rows print another representative of the canonical coset")))
    })
}

/// The four operations on two points and their five strict relations.
pub fn criterion_f2_poset() -> CriterionOutcome {
    run(2, "F_2 poset", Some(100.0), || {
        let named = [
            ("F_(1)", QuasitrivialOp::first_projection(2)),
            ("F_(2)", QuasitrivialOp::natural_max(2)),
            ("F_(3)", QuasitrivialOp::natural_min(2)),
            ("F_(4)", QuasitrivialOp::second_projection(2)),
        ];
        let all = enum_semigroups(2);
        if all.len() != 4 || !named.iter().all(|(_, f)| all.contains(f)) {
            return Ok((false, format!("F_2 has {} elements", all.len())));
        }
        let mut strict = BTreeSet::new();
        for ((x, f), (y, g)) in named.iter().cartesian_product(&named) {
            if x != y && leq_op(f, g)? {
                strict.insert((*x, *y));
            }
        }
        let expected: BTreeSet<_> =
            [("F_(1)", "F_(2)"), ("F_(1)", "F_(3)"), ("F_(1)", "F_(4)"), ("F_(2)", "F_(4)"), ("F_(3)", "F_(4)")]
                .into_iter()
                .collect();
        let listing = strict.iter().map(|(a, b)| format!("{a}<{b}")).join(", ");
        Ok((strict == expected, format!("4 elements; {listing}")))
    })
}

/// `is_associative(F) = is_biclosed(op_to_pairs(F))` over every quasitrivial table.
pub fn criterion_associativity(max_m: usize) -> CriterionOutcome {
    run(3, "associativity ⇔ biclosedness", budget(max_m.saturating_sub(1), 1_000.0), || {
        let mut parts = Vec::new();
        let mut ok = true;
        for m in 1..=max_m {
            let (total, assoc, bad) = QuasitrivialOp::all_quasitrivial(m)
                .par_bridge()
                .map(|f| {
                    let direct = f.is_associative();
                    let via_sets = is_biclosed(&op_to_pairs(&f)?);
                    Ok((1, usize::from(direct), usize::from(direct != via_sets)))
                })
                .try_reduce(|| (0, 0, 0), |x, y| Ok((x.0 + y.0, x.1 + y.1, x.2 + y.2)))?;
            ok &= bad == 0 && assoc == SEMIGROUP_COUNTS[m - 1];
            parts.push(format!("m={m}: {total} tables, {assoc} associative, {bad} exceptions"));
        }
        Ok((ok, parts.join("; ")))
    })
}

/// Round trips in both directions, and agreement of the two constructions.
pub fn criterion_round_trips(max_n: usize) -> CriterionOutcome {
    run(4, "bijection round trips", budget(max_n, 5_000.0), || {
        let mut parts = Vec::new();
        let mut bad = 0;
        for n in 0..=max_n {
            let sets = enum_biclosed_bruteforce(n, false)?;
            for c in &sets {
                let f = biclosed_to_semigroup(c)?;
                bad += usize::from(semigroup_to_biclosed(&f)? != *c);
                bad += usize::from(biclosed_to_semigroup_interleaved(c)? != f);
            }
            let ops = enum_semigroups(n + 1);
            for f in &ops {
                let c = semigroup_to_biclosed(f)?;
                bad += usize::from(biclosed_to_semigroup(&c)? != *f);
                bad += usize::from(op_to_pairs(f)? != c);
            }
            parts.push(format!("n={n}: {} sets, {} tables", sets.len(), ops.len()));
        }
        Ok((bad == 0, format!("{}; {bad} mismatches", parts.join(", "))))
    })
}

/// `σ(F_C) = F_{σ(C)}` for all `σ` and all biclosed `C`.
pub fn criterion_equivariance(max_m: usize) -> CriterionOutcome {
    run(5, "equivariance", budget(max_m.saturating_sub(1), 10_000.0), || {
        let (mut checks, mut bad) = (0, 0);
        for m in 1..=max_m {
            let sets = enum_biclosed_bruteforce(m - 1, false)?;
            let perms = Permutation::all(m);
            for c in &sets {
                let f = biclosed_to_semigroup(c)?;
                for sigma in &perms {
                    checks += 1;
                    bad += usize::from(f.act(sigma) != biclosed_to_semigroup(&act_set(sigma, c))?);
                }
            }
        }
        Ok((bad == 0, format!("{checks} checks for m ≤ {max_m}; {bad} mismatches")))
    })
}

/// `C ⊆ C'` iff `F_C ≤ F_{C'}` on all ordered pairs.
pub fn criterion_order_isomorphism(max_n: usize) -> CriterionOutcome {
    run(6, "order isomorphism", budget(max_n, 10_000.0), || {
        let mut parts = Vec::new();
        let mut ok = true;
        for n in 1..=max_n {
            let view = PosetView::new(enum_biclosed_bruteforce(n, false)?)?;
            let r = view.check_isomorphism()?;
            ok &= r.passed();
            parts.push(format!("n={n}: {}/{} pairs agree", r.agree, r.pairs));
        }
        Ok((ok, parts.join("; ")))
    })
}

/// Unique meets and joins for every pair of biclosed sets.
pub fn criterion_lattice(max_n: usize) -> CriterionOutcome {
    run(7, "lattice property", budget(max_n, 30_000.0), || {
        let mut parts = Vec::new();
        for n in 0..=max_n {
            let lattice = FiniteLattice::new(enum_biclosed_bruteforce(n, false)?);
            match lattice.check() {
                Ok(r) => parts.push(format!(
                    "n={n}: {} pairs ok ({} meets ≠ ∩, {} joins ≠ ∪)",
                    r.pairs, r.meet_not_intersection, r.join_not_union
                )),
                Err(e) => return Ok((false, format!("n={n}: {e}"))),
            }
        }
        Ok((true, parts.join("; ")))
    })
}

/// Set-side and operation-side classes correspond, with the expected counts.
pub fn criterion_tallies(max_n: usize) -> CriterionOutcome {
    run(8, "class tallies", budget(max_n, 5_000.0), || {
        let mut parts = Vec::new();
        for n in 0..=max_n {
            let sets = enum_biclosed_bruteforce(n, false)?;
            let items = classify_all(&sets)?;
            if let Some(msg) = correspondence_failure(&items, n) {
                return Ok((false, format!("n={n}: {msg}")));
            }
            let positive = sets.iter().filter(|c| is_positive_system(c)).count();
            let commutative = items.iter().filter(|it| it.op.is_commutative()).count();
            let anti: BTreeSet<RootSet> =
                items.iter().filter(|it| it.op.is_anticommutative()).map(|it| it.set).collect();
            let extremes: BTreeSet<RootSet> = [RootSet::empty(n)?, RootSet::full(n)?].into_iter().collect();
            let factorial: usize = (1..=n + 1).product();
            if positive != factorial || commutative != factorial || anti != extremes {
                return Ok((
                    false,
                    format!(
                        "n={n}: {positive} positive systems, {commutative} commutative, {} anticommutative",
                        anti.len()
                    ),
                ));
            }
            parts.push(format!("n={n}: {commutative} commutative, {} anticommutative", anti.len()));
        }
        Ok((true, parts.join("; ")))
    })
}

/// Three enumeration methods agree on 1, 4, 20, 138, 1182.
pub fn criterion_counts() -> CriterionOutcome {
    run(9, "count cross-validation", None, || {
        let mut brute = Vec::new();
        let mut brute4_ms = 0.0;
        for n in 0..=4 {
            let start = Instant::now();
            brute.push(enum_biclosed_bruteforce(n, false)?);
            if n == 4 {
                brute4_ms = start.elapsed().as_secs_f64() * 1e3;
            }
        }
        let mut ok = brute4_ms < 5_000.0;
        for (n, sets) in brute.iter().enumerate() {
            let classified = enum_biclosed_classified(n)?;
            let images: BTreeSet<RootSet> =
                enum_semigroups(n + 1).iter().map(semigroup_to_biclosed).collect::<Result<_>>()?;
            ok &= classified == *sets && images == sets.iter().copied().collect();
            ok &= sets.len() == SEMIGROUP_COUNTS[n];
        }
        let semigroups: Vec<usize> = (1..=5).map(|m| enum_semigroups(m).len()).collect();
        let formula: Vec<usize> = (1..=5).map(|m| semigroup_count_formula(m) as usize).collect();
        ok &= semigroups == SEMIGROUP_COUNTS && formula == SEMIGROUP_COUNTS;
        let counts = brute.iter().map(Vec::len).join(", ");
        let budget = if brute4_ms < 5_000.0 { "within" } else { "over" };
        Ok((
            ok,
            format!("biclosed {counts} for n = 0..4 (n = 4 brute force {budget} 5000 ms); semigroups {semigroups:?}"),
        ))
    })
}

/// All orders of `t` A-labels among `p` B-labels with both chains kept in order.
pub fn shuffles(t: usize, p: usize) -> Vec<Vec<Label>> {
    (0..t + p)
        .combinations(t)
        .map(|slots| {
            let (mut a, mut b) = (0, 0);
            (0..t + p)
                .map(|s| {
                    if slots.contains(&s) {
                        a += 1;
                        Label::A(a)
                    } else {
                        b += 1;
                        Label::B(b)
                    }
                })
                .collect()
        })
        .collect()
}

/// Compositions with `t` positive parts and at most `max_sum` in total.
fn size_vectors(t: usize, max_sum: usize) -> Vec<Vec<usize>> {
    if t == 0 {
        return vec![Vec::new()];
    }
    (1..=max_sum)
        .flat_map(|k| {
            size_vectors(t - 1, max_sum.saturating_sub(k)).into_iter().map(move |mut rest| {
                rest.insert(0, k);
                rest
            })
        })
        .filter(|v| v.len() == t)
        .collect()
}

/// The `n = 8`, `(k_1,k_2) = (2,3)` table and exhaustive round trips.
pub fn criterion_interleaving() -> CriterionOutcome {
    run(10, "interleaving instance", None, || {
        let expected = [
            ([1, 4], "A_1<A_2<B_1<B_2"),
            ([1, 5], "A_1<B_1<A_2<B_2"),
            ([1, 6], "A_1<B_1<B_2<A_2"),
            ([2, 5], "B_1<A_1<A_2<B_2"),
            ([2, 6], "B_1<A_1<B_2<A_2"),
            ([3, 6], "B_1<B_2<A_1<A_2"),
        ];
        let all = PositionVector::all(8, &[2, 3]);
        let got: Vec<([usize; 2], String)> =
            all.iter().map(|pv| ([pv.positions()[0], pv.positions()[1]], order_string(&pv.interleave()))).collect();
        let table_ok = got.len() == 6 && got.iter().zip(&expected).all(|((p, s), (q, t))| p == q && s == t);
        if !table_ok {
            return Ok((false, format!("table mismatch: {got:?}")));
        }
        let (mut vectors, mut bad) = (0, 0);
        for n in 0..=8 {
            for t in 0..=3 {
                if t > n {
                    continue;
                }
                for sizes in size_vectors(t, n + 1 - t) {
                    let pvs = PositionVector::all(n, &sizes);
                    let p = n + 1 - sizes.iter().sum::<usize>() - t;
                    let orders = shuffles(t, p);
                    bad += usize::from(pvs.len() != orders.len());
                    for pv in &pvs {
                        vectors += 1;
                        bad += usize::from(PositionVector::deinterleave(&pv.interleave(), &sizes, n)? != *pv);
                    }
                    for order in &orders {
                        bad += usize::from(PositionVector::deinterleave(order, &sizes, n)?.interleave() != *order);
                    }
                }
            }
        }
        Ok((bad == 0, format!("6/6 rows; {vectors} position vectors (n ≤ 8, t ≤ 3), {bad} round-trip failures")))
    })
}

/// Runs every criterion with the rank-dependent ones capped at `max_rank`.
pub fn run_all(max_rank: usize, force: bool) -> Result<Vec<CriterionOutcome>> {
    let limit = if force { VERIFY_FORCED_LIMIT } else { VERIFY_LIMIT };
    if max_rank > limit {
        return Err(Error::RankTooLarge { n: max_rank, limit });
    }
    Ok(vec![
        criterion_golden_a2(),
        criterion_f2_poset(),
        criterion_associativity(max_rank + 1),
        criterion_round_trips(max_rank),
        criterion_equivariance(max_rank + 1),
        criterion_order_isomorphism(max_rank),
        criterion_lattice(max_rank),
        criterion_tallies(max_rank),
        criterion_counts(),
        criterion_interleaving(),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shuffle_counts() {
        assert_eq!(shuffles(2, 2).len(), 6);
        assert_eq!(shuffles(0, 3).len(), 1);
        assert_eq!(size_vectors(2, 3), vec![vec![1, 1], vec![1, 2], vec![2, 1]]);
    }

    #[test]
    fn golden_rows_parse() {
        let rows = golden_a2_rows();
        assert_eq!(rows.len(), 20);
        assert!(rows.iter().all(|r| check_golden_row(r).unwrap().is_ok()));
    }

    #[test]
    fn rank_guard() {
        assert!(matches!(run_all(9, false), Err(Error::RankTooLarge { n: 9, .. })));
        assert!(matches!(run_all(4, false), Err(Error::RankTooLarge { n: 4, .. })));
    }
}
