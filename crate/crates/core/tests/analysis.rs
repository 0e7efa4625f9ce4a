use std::collections::BTreeSet;

use ybe::enum_solutions::{enumerate_cycle_sets, EnumerationTask};
use ybe::retraction::{gi_scan, is_gi_counterexample, is_irretractable, multipermutation_level, retract, retraction_chain};
use ybe::{CycleSet, Error, Solution};

fn cycle_sets(n: usize) -> Vec<CycleSet> {
    enumerate_cycle_sets(&EnumerationTask::cycle_sets(n)).unwrap().items
}

fn solutions(n: usize) -> Vec<Solution> {
    cycle_sets(n).iter().map(|c| c.to_solution().unwrap()).collect()
}

#[test]
fn cycle_set_correspondence_from_tau() {
    for n in 1..=5 {
        for c in cycle_sets(n) {
            let s = c.to_solution().unwrap();
            assert!(s.is_involutive());
            // x·y is the y' with τ_x(y') = y
            for x in 0..n {
                for y in 0..n {
                    let dot = (0..n).find(|&z| s.tau(x).apply(z) == y).unwrap();
                    assert_eq!(c.dot(x, y), dot);
                }
            }
            assert_eq!(CycleSet::from_solution(&s).unwrap(), c);
            assert!(c.is_nondegenerate());
        }
    }
}

#[test]
fn retraction_basics() {
    for n in 1..=6 {
        for s in solutions(n) {
            let r = retract(&s).unwrap();
            let distinct: BTreeSet<_> = (0..n).map(|x| s.sigma(x).clone()).collect();
            assert_eq!(r.size(), distinct.len());
            assert!(r.is_involutive());
            if s.is_square_free() {
                assert!(r.is_square_free());
            }
            let irretractable = is_irretractable(&s).unwrap();
            if irretractable {
                assert!(retract(&s).unwrap().is_isomorphic(&s));
                assert_eq!(multipermutation_level(&s).unwrap(), None);
            }
            if multipermutation_level(&s).unwrap().is_some() && n > 1 {
                assert!(!irretractable);
            }
            let chain = retraction_chain(&s).unwrap();
            assert!(chain.stages.windows(2).all(|w| w[1].size() < w[0].size()));
        }
    }
}

#[test]
fn trivial_solution_has_level_one() {
    for n in 1..=5 {
        assert_eq!(multipermutation_level(&Solution::flip(n)).unwrap(), Some(1));
    }
    let levels: BTreeSet<_> = solutions(4).iter().map(|s| multipermutation_level(s).unwrap()).collect();
    assert!(levels.contains(&Some(2)));
}

#[test]
fn non_involutive_inputs_are_refused() {
    let s = ybe::SkewBrace::trivial(ybe::catalog::group_by_name("S3").unwrap()).solution();
    assert!(matches!(retract(&s), Err(Error::NotInvolutive)));
    assert!(matches!(multipermutation_level(&s), Err(Error::NotInvolutive)));
    assert!(!is_gi_counterexample(&s));
    assert!(matches!(CycleSet::from_solution(&s), Err(Error::NotInvolutive)));
}

#[test]
fn the_size_eight_counterexample() {
    let found = gi_scan(8).unwrap();
    assert_eq!(found.len(), 1);
    let s = &found[0];
    assert_eq!(s.size(), 8);
    assert!(s.is_square_free() && s.is_involutive());
    assert!(is_irretractable(s).unwrap());
    assert_eq!(multipermutation_level(s).unwrap(), None);
    assert!(retract(s).unwrap().is_isomorphic(s));
    let sigmas: BTreeSet<_> = (0..8).map(|x| s.sigma(x).clone()).collect();
    assert_eq!(sigmas.len(), 8);
}
