//! Representatives of every isomorphism class of groups of order at most 15.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub const CATALOG_VERSION: u32 = 1;
pub const MAX_CATALOG_ORDER: usize = 15;

#[derive(Clone, Debug)]
pub struct CatalogGroup {
    /// `"<order>.<index>"`, index starting at 1.
    pub id: String,
    pub name: String,
    pub group: FiniteGroup,
}

fn factorizations(n: usize, min: usize) -> Vec<Vec<usize>> {
    // ordered chains d1 | d2 | ... with product n (invariant factors), each > 1
    if n == 1 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for d in min.max(2)..=n {
        if n.is_multiple_of(d) {
            for rest in factorizations(n / d, d) {
                if rest.iter().all(|&r| r % d == 0) {
                    let mut v = vec![d];
                    v.extend(rest);
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Product of cyclic groups with the given orders.
pub fn abelian(factors: &[usize]) -> FiniteGroup {
    factors
        .iter()
        .fold(FiniteGroup::trivial(), |acc, &k| FiniteGroup::direct_product(&acc, &FiniteGroup::cyclic(k)))
}

fn abelian_name(factors: &[usize]) -> String {
    if factors.is_empty() {
        return "C1".into();
    }
    let mut f = factors.to_vec();
    f.reverse();
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < f.len() {
        let j = f[i..].iter().take_while(|&&x| x == f[i]).count();
        parts.push(if j == 1 { format!("C{}", f[i]) } else { format!("C{}^{}", f[i], j) });
        i += j;
    }
    parts.join("x")
}

fn candidates(n: usize) -> Vec<(String, FiniteGroup)> {
    let mut out = Vec::new();
    let mut abelian_types = factorizations(n, 2);
    abelian_types.sort_by_key(Vec::len);
    for f in abelian_types {
        out.push((abelian_name(&f), abelian(&f)));
    }
    if n.is_multiple_of(2) && n >= 6 {
        let m = n / 2;
        let name = if m == 3 { "S3".to_string() } else { format!("D{m}") };
        out.push((name, FiniteGroup::dihedral(m)));
    }
    if n.is_multiple_of(4) && n >= 8 {
        let m = n / 4;
        let name = if m == 2 { "Q8".to_string() } else { format!("Dic{m}") };
        out.push((name, FiniteGroup::dicyclic(m)));
    }
    if n == 12 {
        out.push(("A4".into(), FiniteGroup::alternating4()));
        // isomorphic to D6; kept so the isomorphism dedup has something to remove
        out.push((
            "C2xS3".into(),
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::dihedral(3)),
        ));
    }
    out
}

/// One group per isomorphism class of order `n`, `1 <= n <= 15`.
pub fn small_group_catalog(n: usize) -> Result<Vec<CatalogGroup>> {
    if n == 0 || n > MAX_CATALOG_ORDER {
        return Err(Error::UnsupportedOrder(n));
    }
    let mut kept: Vec<(String, FiniteGroup)> = Vec::new();
    for (name, g) in candidates(n) {
        if !kept.iter().any(|(_, h)| h.is_isomorphic(&g)) {
            kept.push((name, g));
        }
    }
    Ok(kept
        .into_iter()
        .enumerate()
        .map(|(i, (name, group))| CatalogGroup { id: format!("{n}.{}", i + 1), name, group })
        .collect())
}

/// Resolves a group by catalog id (`"8.4"`), catalog name (`"Q8"`), or a
/// product of cyclic groups of any order (`"C32"`, `"C8xC4"`, `"C2^3"`).
pub fn group_by_name(spec: &str) -> Result<FiniteGroup> {
    let unknown = || Error::UnknownGroup(spec.to_string());
    if let Some((order, idx)) = spec.split_once('.') {
        let order: usize = order.parse().map_err(|_| unknown())?;
        let idx: usize = idx.parse().map_err(|_| unknown())?;
        let cat = small_group_catalog(order)?;
        return cat.get(idx.wrapping_sub(1)).map(|c| c.group.clone()).ok_or_else(unknown);
    }
    for n in 1..=MAX_CATALOG_ORDER {
        for c in candidates(n) {
            if c.0.eq_ignore_ascii_case(spec) {
                return Ok(c.1);
            }
        }
    }
    let aliases = [("Q12", "Dic3"), ("D3", "S3"), ("V4", "C2^2"), ("K4", "C2^2")];
    if let Some((_, target)) = aliases.iter().find(|(a, _)| a.eq_ignore_ascii_case(spec)) {
        return group_by_name(target);
    }
    let mut factors = Vec::new();
    for part in spec.split(['x', 'X', '*']) {
        let part = part.trim();
        let body = part.strip_prefix(['C', 'c']).ok_or_else(unknown)?;
        let (base, exp) = match body.split_once('^') {
            Some((b, e)) => (b, e.parse::<usize>().map_err(|_| unknown())?),
            None => (body, 1),
        };
        let base: usize = base.parse().map_err(|_| unknown())?;
        if base == 0 {
            return Err(unknown());
        }
        factors.extend(std::iter::repeat_n(base, exp));
    }
    Ok(abelian(&factors))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let expected = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1];
        for (i, &e) in expected.iter().enumerate() {
            let cat = small_group_catalog(i + 1).unwrap();
            assert_eq!(cat.len(), e, "order {}", i + 1);
        }
    }

    #[test]
    fn order_eight_members() {
        let names: Vec<String> = small_group_catalog(8).unwrap().into_iter().map(|c| c.name).collect();
        assert_eq!(names, ["C8", "C4xC2", "C2^3", "D4", "Q8"]);
    }

    #[test]
    fn unsupported() {
        assert_eq!(small_group_catalog(16).unwrap_err(), Error::UnsupportedOrder(16));
        assert!(small_group_catalog(0).is_err());
    }

    #[test]
    fn members_are_valid_and_pairwise_distinct() {
        for n in 1..=MAX_CATALOG_ORDER {
            let cat = small_group_catalog(n).unwrap();
            for (i, a) in cat.iter().enumerate() {
                let g = &a.group;
                assert!(FiniteGroup::from_table(n, g.table().to_vec()).is_ok());
                assert!(g.is_isomorphic(g));
                let auts = g.automorphisms();
                let fact: usize = (1..n).product();
                assert_eq!(fact % auts.order(), 0);
                for p in auts.elements() {
                    assert!(g.is_isomorphism(g, p.images()));
                }
                for b in &cat[i + 1..] {
                    assert!(!a.group.is_isomorphic(&b.group));
                    assert!(!b.group.is_isomorphic(&a.group));
                }
            }
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(group_by_name("Q8").unwrap().order_profile(), FiniteGroup::dicyclic(2).order_profile());
        assert!(group_by_name("8.5").unwrap().is_isomorphic(&FiniteGroup::dicyclic(2)));
        assert_eq!(group_by_name("C32").unwrap().order(), 32);
        assert!(group_by_name("C8xC4").unwrap().is_isomorphic(&abelian(&[4, 8])));
        assert_eq!(group_by_name("C2^3").unwrap().order(), 8);
        assert!(group_by_name("S3").unwrap().is_isomorphic(&FiniteGroup::dihedral(3)));
        assert!(group_by_name("bogus").is_err());
    }
}
