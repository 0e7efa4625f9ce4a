use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use ybe::catalog::{abelian, group_by_name, small_group_catalog};
use ybe::group::FiniteGroup;
use ybe::{Error, PermGroup, Permutation};

/// Number of groups of each order 1..=15.
const GROUP_COUNTS: [usize; 15] = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1];

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn random_relabeling(n: usize, rng: &mut StdRng) -> Vec<usize> {
    let mut rest: Vec<usize> = (1..n).collect();
    rest.shuffle(rng);
    let mut map = vec![0];
    map.extend(rest);
    map
}

#[test]
fn catalog_sizes_and_invariants() {
    for n in 1..=15 {
        let cat = small_group_catalog(n).unwrap();
        assert_eq!(cat.len(), GROUP_COUNTS[n - 1], "order {n}");
        for (i, c) in cat.iter().enumerate() {
            assert_eq!(c.id, format!("{n}.{}", i + 1));
            assert_eq!(c.group.order(), n);
            assert!(group_by_name(&c.name).unwrap().is_isomorphic(&c.group));
            assert!(group_by_name(&c.id).unwrap().is_isomorphic(&c.group));
            let aut = c.group.automorphisms();
            assert_eq!(factorial(n - 1) % aut.order(), 0, "{}", c.name);
            for phi in aut.elements() {
                assert!(c.group.is_isomorphism(&c.group, phi.images()));
            }
        }
    }
    assert!(matches!(small_group_catalog(16), Err(Error::UnsupportedOrder(16))));
}

#[test]
fn isomorphism_is_an_equivalence() {
    let mut rng = StdRng::seed_from_u64(7);
    for n in [4, 6, 8, 12] {
        let cat = small_group_catalog(n).unwrap();
        for c in &cat {
            let g = &c.group;
            assert!(g.is_isomorphic(g));
            let h = g.relabel(&random_relabeling(n, &mut rng));
            let k = h.relabel(&random_relabeling(n, &mut rng));
            let f = g.isomorphism(&h).expect("relabeled copy is isomorphic");
            assert!(g.is_isomorphism(&h, &f));
            assert!(h.is_isomorphic(g) && g.is_isomorphic(&k) && h.is_isomorphic(&k));
            for d in cat.iter().filter(|d| d.id != c.id) {
                assert!(!d.group.is_isomorphic(&h) && !h.is_isomorphic(&d.group));
            }
        }
    }
}

/// The `k`-th permutation of `0..N` in lexicographic order.
fn nth_permutation<const N: usize>(mut k: usize) -> [usize; N] {
    let mut pool: Vec<usize> = (0..N).collect();
    let mut out = [0; N];
    for (i, slot) in out.iter_mut().enumerate() {
        let base = factorial(N - 1 - i);
        *slot = pool.remove(k / base);
        k %= base;
    }
    out
}

#[test]
fn quaternion_automorphisms_by_exhaustion() {
    let q8 = group_by_name("Q8").unwrap();
    let count = (0..factorial(8))
        .map(nth_permutation::<8>)
        .filter(|map| (0..8).all(|a| (0..8).all(|b| map[q8.op(a, b)] == q8.op(map[a], map[b]))))
        .count();
    assert_eq!(count, 24);
    assert_eq!(q8.automorphisms().order(), 24);
    assert_eq!(q8.automorphisms_backtrack().order(), 24);
    assert_eq!(q8.automorphisms_brute_force().order(), 24);
}

#[test]
fn automorphism_counts_of_small_groups() {
    let cases = [("C2^2", 6), ("C8", 4), ("C4xC2", 8), ("C2^3", 168), ("D4", 8), ("S3", 6), ("A4", 24), ("C15", 8)];
    for (name, aut) in cases {
        assert_eq!(group_by_name(name).unwrap().automorphisms().order(), aut, "{name}");
    }
    assert_eq!(FiniteGroup::dicyclic(3).automorphisms().order(), 12);
}

#[test]
fn malformed_tables_are_rejected() {
    // Z/4 with the (3,3) entry changed from 2 to 3
    let mut t: Vec<usize> = (0..16).map(|i| (i / 4 + i % 4) % 4).collect();
    assert!(FiniteGroup::from_table(4, t.clone()).is_ok());
    t[15] = 3;
    assert!(FiniteGroup::from_table(4, t).is_err());

    // a Latin square with identity 0 that is not associative
    let loop5: Vec<usize> = vec![
        0, 1, 2, 3, 4, //
        1, 0, 3, 4, 2, //
        2, 4, 0, 1, 3, //
        3, 2, 4, 0, 1, //
        4, 3, 1, 2, 0,
    ];
    assert!(matches!(FiniteGroup::from_table(5, loop5), Err(Error::NotAssociative(..))));
    assert!(matches!(FiniteGroup::from_table(2, vec![1, 0, 0, 1]), Err(Error::IdentityNotZero { found: 1 })));
    assert!(FiniteGroup::normalized(2, vec![1, 0, 0, 1]).is_ok());
    assert!(matches!(FiniteGroup::from_table(2, vec![0, 1, 1]), Err(Error::BadShape { .. })));
}

#[test]
fn structural_queries() {
    let d4 = group_by_name("D4").unwrap();
    assert!(!d4.is_abelian() && d4.is_nilpotent());
    assert_eq!(d4.subgroups().len(), 10);
    assert!(!group_by_name("S3").unwrap().is_nilpotent());
    assert_eq!(group_by_name("A4").unwrap().subgroups().len(), 10);
    let c6 = abelian(&[6]);
    assert!(c6.is_isomorphic(&abelian(&[2, 3])));
    assert!(!abelian(&[4]).is_isomorphic(&abelian(&[2, 2])));
    assert_eq!(group_by_name("C2^3").unwrap().order_profile(), abelian(&[2, 2, 2]).order_profile());
    let direct = FiniteGroup::direct_product(&FiniteGroup::cyclic(3), &FiniteGroup::cyclic(5));
    assert!(direct.is_isomorphic(&FiniteGroup::cyclic(15)));
}

#[test]
fn permutation_groups() {
    let s3 = PermGroup::generated(
        3,
        vec![Permutation::from_cycles(3, &[&[0, 1]]).unwrap(), Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap()],
    );
    assert_eq!(s3.order(), 6);
    assert!(s3.is_transitive());
    let as_group = FiniteGroup::from_perm_group(&s3);
    assert!(as_group.is_isomorphic(&group_by_name("S3").unwrap()));

    let two_orbits = PermGroup::generated(4, vec![Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap()]);
    assert_eq!(two_orbits.order(), 2);
    assert!(!two_orbits.is_transitive());
    assert_eq!(two_orbits.orbit(2).into_iter().collect::<Vec<_>>(), vec![2, 3]);

    let p = Permutation::new(vec![1, 2, 0, 4, 3]).unwrap();
    assert_eq!(p.order(), 6);
    assert_eq!(p.compose(&p.inverse()), Permutation::identity(5));
    assert!(Permutation::new(vec![0, 0, 1]).is_err());
}
