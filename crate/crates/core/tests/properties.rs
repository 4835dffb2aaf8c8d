use proptest::prelude::*;

use biclosed_core::bijection::{
    biclosed_to_semigroup, biclosed_to_semigroup_interleaved, classify, op_to_pairs, pairs_to_op, semigroup_to_biclosed,
};
use biclosed_core::enumeration::enum_biclosed_bruteforce;
use biclosed_core::order::leq_op;
use biclosed_core::root_system::{act_root, act_set, is_biclosed, root_sum, Root};
use biclosed_core::semigroup::act_op;
use biclosed_core::{Permutation, RootSet};

fn perm(size: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=size).collect::<Vec<_>>()).prop_shuffle().prop_map(|images| Permutation::from_images(images).unwrap())
}

fn root_set() -> impl Strategy<Value = RootSet> {
    (1usize..=6).prop_flat_map(|n| {
        let m = n + 1;
        let width = m * (m - 1);
        (Just(n), proptest::collection::vec(any::<bool>(), width)).prop_map(|(n, bits)| {
            let mask = bits.iter().enumerate().fold(0u128, |acc, (i, &b)| acc | (u128::from(b) << i));
            RootSet::from_bits(n, mask).unwrap()
        })
    })
}

fn set_and_two_perms() -> impl Strategy<Value = (RootSet, Permutation, Permutation)> {
    root_set().prop_flat_map(|c| {
        let m = c.points();
        (Just(c), perm(m), perm(m))
    })
}

/// A biclosed set of rank ≤ 3 picked from the full list.
fn biclosed() -> impl Strategy<Value = RootSet> {
    (1usize..=3).prop_flat_map(|n| {
        let sets = enum_biclosed_bruteforce(n, false).unwrap();
        proptest::sample::select(sets)
    })
}

proptest! {
    #[test]
    fn action_is_a_group_action((c, s, t) in set_and_two_perms()) {
        let m = c.points();
        prop_assert_eq!(act_set(&Permutation::identity(m), &c), c);
        prop_assert_eq!(act_set(&s.compose(&t), &c), act_set(&s, &act_set(&t, &c)));
        prop_assert_eq!(act_set(&s.inverse(), &act_set(&s, &c)), c);
        prop_assert_eq!(act_set(&s, &c).len(), c.len());
        prop_assert_eq!(act_set(&s, &c.complement()), act_set(&s, &c).complement());
    }

    #[test]
    fn dictionary_round_trip((c, s, _t) in set_and_two_perms()) {
        let f = pairs_to_op(&c);
        prop_assert_eq!(op_to_pairs(&f).unwrap(), c);
        prop_assert_eq!(f.is_associative(), is_biclosed(&c));
        // the dictionary itself commutes with the action, biclosed or not
        prop_assert_eq!(pairs_to_op(&act_set(&s, &c)), act_op(&s, &f));
    }

    #[test]
    fn negation_and_complement((c, _s, _t) in set_and_two_perms()) {
        prop_assert_eq!(c.negated().negated(), c);
        prop_assert_eq!(c.complement().complement(), c);
        prop_assert_eq!(c.union(&c.complement()), RootSet::full(c.rank()).unwrap());
        // closedness of C and of -C are the same property
        prop_assert_eq!(is_biclosed(&c), is_biclosed(&c.negated()));
        prop_assert_eq!(is_biclosed(&c), is_biclosed(&c.complement()));
    }

    #[test]
    fn root_action_respects_sums(a in 1usize..=5, b in 1usize..=5, c in 1usize..=5, s in perm(5)) {
        prop_assume!(a != b && b != c && a != c);
        let (x, y) = (Root::new(a, b, 4).unwrap(), Root::new(b, c, 4).unwrap());
        let sum = root_sum(x, y).unwrap();
        prop_assert_eq!(root_sum(act_root(&s, x), act_root(&s, y)), Some(act_root(&s, sum)));
        prop_assert_eq!(root_sum(x, x.negate()), None);
    }

    #[test]
    fn bijection_properties(c in biclosed(), seed in any::<u64>()) {
        let f = biclosed_to_semigroup(&c).unwrap();
        prop_assert!(f.is_associative());
        prop_assert_eq!(&biclosed_to_semigroup_interleaved(&c).unwrap(), &f);
        prop_assert_eq!(semigroup_to_biclosed(&f).unwrap(), c);
        let canon = classify(&c).unwrap();
        prop_assert_eq!(canon.to_root_set().unwrap(), c);
        let sets = enum_biclosed_bruteforce(c.rank(), false).unwrap();
        let d = sets[(seed as usize) % sets.len()];
        let g = biclosed_to_semigroup(&d).unwrap();
        prop_assert_eq!(c.is_subset(&d), leq_op(&f, &g).unwrap());
    }
}
