use std::collections::BTreeSet;

use proptest::prelude::*;
use ybe::catalog::group_by_name;
use ybe::enum_solutions::{brute_force_solution_keys, enumerate_cycle_sets, enumerate_solutions, EnumerationTask, Filter};
use ybe::perm::all_permutations;
use ybe::solution::Injectivity;
use ybe::{CycleSet, Error, Permutation, SkewBrace, Solution};

fn involutive(n: usize) -> Vec<Solution> {
    enumerate_cycle_sets(&EnumerationTask::cycle_sets(n))
        .unwrap()
        .items
        .iter()
        .map(|c| c.to_solution().unwrap())
        .collect()
}

fn perm(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

#[test]
fn braid_failure_example() {
    let s01 = perm(&[1, 0, 2]);
    let s02 = perm(&[2, 1, 0]);
    let err = Solution::new(vec![s01; 3], vec![s02; 3]).unwrap_err();
    let Error::BraidFails(x, y, z) = err else { panic!("expected a braid witness, got {err:?}") };
    // r(a,b) = (f(b), g(a)) with non-commuting f and g; evaluate both sides directly
    let (f, g) = ([1, 0, 2], [2, 1, 0]);
    let r = |a: usize, b: usize| (f[b], g[a]);
    let lhs = {
        let (a, b) = r(x, y);
        let (b, c) = r(b, z);
        let (a, b) = r(a, b);
        (a, b, c)
    };
    let rhs = {
        let (b, c) = r(y, z);
        let (a, b) = r(x, b);
        let (b, c) = r(b, c);
        (a, b, c)
    };
    assert_ne!(lhs, rhs);
}

#[test]
fn conjugation_solution_of_s3() {
    let s = SkewBrace::trivial(group_by_name("S3").unwrap()).solution();
    assert!(s.verify_braid());
    assert!(!s.is_involutive());
    assert_eq!(s.injectivity_status(), Injectivity::Unknown);
    assert!(matches!(s.is_simple(), Err(Error::NotInvolutive)));
    assert_eq!(Solution::flip(1).injectivity_status(), Injectivity::Injective);
}

#[test]
fn permutation_solutions() {
    let g = perm(&[1, 2, 0]);
    let s = Solution::permutation_solution(&g, &g.inverse()).unwrap();
    assert!(s.is_involutive() && !s.is_square_free() && s.is_indecomposable());
    assert!(!Solution::flip(2).is_indecomposable());
    assert_eq!(Solution::flip(2).apply_r(0, 1), (1, 0));
}

#[test]
fn five_distinct_keys_at_three() {
    let sols = involutive(3);
    let keys: BTreeSet<_> = sols.iter().map(Solution::canonical_key).collect();
    assert_eq!(keys.len(), 5);
    for a in &sols {
        for b in &sols {
            assert_eq!(a.is_isomorphic(b), a == b);
        }
    }
}

#[test]
fn general_solutions_match_brute_force_at_three() {
    let fast: BTreeSet<_> = enumerate_solutions(&EnumerationTask::solutions(3))
        .unwrap()
        .items
        .iter()
        .map(Solution::canonical_key)
        .collect();
    assert_eq!(fast, brute_force_solution_keys(3));
    let inv = enumerate_solutions(&EnumerationTask::solutions(3).with_filter(Filter::Involutive)).unwrap();
    assert_eq!(inv.items.len(), 5);
}

#[test]
fn general_solutions_of_size_two() {
    let all = enumerate_solutions(&EnumerationTask::solutions(2)).unwrap();
    assert!(all.items.len() >= 2);
    assert_eq!(all.items.iter().filter(|s| s.is_involutive()).count(), 2);
    assert!(matches!(enumerate_solutions(&EnumerationTask::solutions(5)), Err(Error::UnsupportedOrder(5))));
}

#[test]
fn indecomposable_counts_at_primes() {
    for n in [2, 3, 5, 7] {
        let task = EnumerationTask::cycle_sets(n).with_filter(Filter::Indecomposable);
        assert_eq!(enumerate_cycle_sets(&task).unwrap().items.len(), 1, "n={n}");
    }
}

#[test]
fn coverings_give_valid_quotients() {
    for s in involutive(4).iter().chain(&involutive(6)) {
        for c in s.coverings() {
            let q = &c.quotient;
            let rebuilt = Solution::from_tables(q.size(), &q.sigma_table(), &q.tau_table()).unwrap();
            assert!(rebuilt.is_involutive());
            let block = c.partition[0].len();
            assert!(c.partition.iter().all(|b| b.len() == block));
        }
    }
    let flip4 = Solution::flip(4);
    let c = flip4.coverings().into_iter().find(|c| c.quotient.size() == 2).unwrap();
    assert!(c.quotient.is_isomorphic(&Solution::flip(2)));
    assert!(!flip4.is_simple().unwrap());
}

#[test]
fn involutive_implies_injective() {
    for s in involutive(5) {
        assert_eq!(s.injectivity_status(), Injectivity::Injective);
    }
}

#[test]
fn canonical_key_matches_brute_force_on_enumerated_classes() {
    for n in 1..=5 {
        for s in involutive(n) {
            assert_eq!(s.canonical_key(), s.canonical_key_brute_force());
        }
    }
    for s in enumerate_solutions(&EnumerationTask::solutions(3)).unwrap().items {
        assert_eq!(s.canonical_key(), s.canonical_key_brute_force());
    }
}

fn pick<T: Clone>(items: &[T], seed: u64) -> T {
    items[(seed as usize) % items.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn key_is_relabeling_invariant(seed in any::<u64>(), p in any::<u64>()) {
        let sols = involutive(5);
        let s = pick(&sols, seed);
        let pi = pick(&all_permutations(5), p);
        let t = s.relabel(&pi);
        prop_assert_eq!(s.canonical_key(), t.canonical_key());
        prop_assert!(s.isomorphism(&t).is_some_and(|q| s.relabel(&q) == t));
    }

    #[test]
    fn general_key_is_relabeling_invariant(seed in any::<u64>(), p in any::<u64>()) {
        let sols = enumerate_solutions(&EnumerationTask::solutions(3)).unwrap().items;
        let s = pick(&sols, seed);
        let t = s.relabel(&pick(&all_permutations(3), p));
        prop_assert_eq!(s.canonical_key(), t.canonical_key());
    }

    #[test]
    fn cycle_set_key_is_relabeling_invariant(seed in any::<u64>(), p in any::<u64>()) {
        let sets = enumerate_cycle_sets(&EnumerationTask::cycle_sets(6)).unwrap().items;
        let c: CycleSet = pick(&sets, seed);
        let d = c.relabel(&pick(&all_permutations(6), p));
        prop_assert_eq!(c.canonical_key(), d.canonical_key());
        prop_assert!(c.is_isomorphic(&d));
    }
}
