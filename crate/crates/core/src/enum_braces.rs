//! Skew braces with a prescribed additive group `N`, found as regular
//! subgroups `{(x, f_x)}` of the holomorph `N ⋊ Aut(N)`.
//!
//! The search grows a subgroup one generator at a time. The next generator
//! always covers the least element not yet covered, so every regular subgroup
//! is reached along exactly one branch. Classes are then the orbits under
//! conjugation by `Aut(N)`, which on tables is plain relabeling.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::brace::SkewBrace;
use crate::catalog::{small_group_catalog, MAX_CATALOG_ORDER};
use crate::enum_solutions::{Budget, Limits};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

const UNSET: u32 = u32::MAX;
const TABLE_LIMIT: usize = 4096;

/// `Aut(N)` as a list with the identity at index 0 and a composition lookup.
struct AutList {
    perms: Vec<Permutation>,
    index: HashMap<Vec<usize>, u32>,
    table: Option<Vec<u32>>,
}

impl AutList {
    fn new(group: &FiniteGroup) -> Self {
        let perms: Vec<Permutation> = group.automorphisms().elements().cloned().collect();
        debug_assert!(perms[0].is_identity());
        let index = perms.iter().enumerate().map(|(i, p)| (p.images().to_vec(), i as u32)).collect();
        let mut list = AutList { perms, index, table: None };
        let k = list.perms.len();
        if k <= TABLE_LIMIT {
            let table = (0..k * k).map(|i| list.compose_slow((i / k) as u32, (i % k) as u32)).collect();
            list.table = Some(table);
        }
        list
    }

    fn len(&self) -> usize {
        self.perms.len()
    }

    fn compose_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.perms[a as usize].compose(&self.perms[b as usize]);
        self.index[p.images()]
    }

    /// Index of `a ∘ b` (apply `b` first).
    #[inline]
    fn compose(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.len() + b as usize],
            None => self.compose_slow(a, b),
        }
    }
}

/// Partial map `x ↦ f_x` whose graph is closed under the holomorph product
/// `(x, f_x)(y, f_y) = (x + f_x(y), f_x f_y)`.
#[derive(Clone)]
struct LambdaAssignment {
    f: Vec<u32>,
    covered: Vec<usize>,
}

impl LambdaAssignment {
    fn identity(n: usize) -> Self {
        let mut f = vec![UNSET; n];
        f[0] = 0;
        LambdaAssignment { f, covered: vec![0] }
    }

    /// Adds `(x, f_x = a)` and closes; `false` when two products land on the
    /// same element with different automorphisms.
    fn extend(&mut self, n_group: &FiniteGroup, auts: &AutList, x: usize, a: u32) -> bool {
        self.f[x] = a;
        self.covered.push(x);
        let mut next = self.covered.len() - 1;
        while next < self.covered.len() {
            let g = self.covered[next];
            next += 1;
            let mut i = 0;
            while i < self.covered.len() {
                let h = self.covered[i];
                i += 1;
                for (u, v) in [(g, h), (h, g)] {
                    let fu = self.f[u];
                    let z = n_group.op(u, auts.perms[fu as usize].apply(v));
                    let fz = auts.compose(fu, self.f[v]);
                    match self.f[z] {
                        UNSET => {
                            self.f[z] = fz;
                            self.covered.push(z);
                        }
                        old if old != fz => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    fn first_uncovered(&self) -> Option<usize> {
        self.f.iter().position(|&a| a == UNSET)
    }
}

fn dfs(
    state: LambdaAssignment,
    group: &FiniteGroup,
    auts: &AutList,
    limits: &Limits,
    out: &mut Vec<Vec<u32>>,
) {
    let Some(x) = state.first_uncovered() else {
        out.push(state.f);
        return;
    };
    for a in 0..auts.len() as u32 {
        if !limits.tick() {
            return;
        }
        let mut child = state.clone();
        if child.extend(group, auts, x, a) {
            dfs(child, group, auts, limits, out);
        }
    }
}

/// Raw output of the lambda-map search.
#[derive(Clone, Debug)]
pub struct LambdaSearch {
    /// Every total map `f` found, as `f[x] = f_x`.
    pub maps: Vec<Vec<Permutation>>,
    pub exhaustive: bool,
    pub nodes: u64,
}

fn search(group: &FiniteGroup, auts: &AutList, budget: Budget) -> (Vec<Vec<u32>>, bool, u64) {
    let n = group.order();
    let limits = Limits::new(budget);
    let root = LambdaAssignment::identity(n);
    let raw: Vec<Vec<u32>> = match root.first_uncovered() {
        None => vec![root.f],
        Some(x) => (0..auts.len() as u32)
            .into_par_iter()
            .map(|a| {
                let mut out = Vec::new();
                let mut child = root.clone();
                if limits.tick() && child.extend(group, auts, x, a) {
                    dfs(child, group, auts, &limits, &mut out);
                }
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect(),
    };
    (raw, !limits.stopped(), limits.nodes())
}

/// Every `f: N → Aut(N)` with `f_0 = id` and `f_{x + f_x(y)} = f_x f_y`.
pub fn complete_lambda_maps_with_budget(group: &FiniteGroup, budget: Budget) -> LambdaSearch {
    let auts = AutList::new(group);
    let (raw, exhaustive, nodes) = search(group, &auts, budget);
    let maps = raw
        .into_iter()
        .map(|f| f.into_iter().map(|a| auts.perms[a as usize].clone()).collect())
        .collect();
    LambdaSearch { maps, exhaustive, nodes }
}

pub fn complete_lambda_maps(group: &FiniteGroup) -> Vec<Vec<Permutation>> {
    complete_lambda_maps_with_budget(group, Budget::unlimited()).maps
}

/// Class representatives for one additive group, sorted by canonical key.
#[derive(Clone, Debug)]
pub struct AdditiveSearch {
    pub braces: Vec<SkewBrace>,
    pub keys: Vec<Vec<u16>>,
    /// Number of lambda maps before deduplication.
    pub raw: usize,
    pub exhaustive: bool,
    pub nodes: u64,
}

pub fn braces_with_additive_budget(group: &FiniteGroup, budget: Budget) -> AdditiveSearch {
    let auts = AutList::new(group);
    let (raw, exhaustive, nodes) = search(group, &auts, budget);
    let count = raw.len();
    let classes: BTreeMap<Vec<u16>, SkewBrace> = raw
        .into_par_iter()
        .map(|f| {
            let lambda: Vec<Permutation> = f.iter().map(|&a| auts.perms[a as usize].clone()).collect();
            let brace = SkewBrace::from_lambda(group.clone(), &lambda)
                .expect("a closed lambda map always defines a skew brace");
            (brace.circ_key_under(&auts.perms), brace)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let (keys, braces) = classes.into_iter().unzip();
    AdditiveSearch { braces, keys, raw: count, exhaustive, nodes }
}

/// Isomorphism-class representatives of skew braces with additive group `group`.
pub fn braces_with_additive(group: &FiniteGroup) -> Vec<SkewBrace> {
    braces_with_additive_budget(group, Budget::unlimited()).braces
}

/// A brace tagged with the catalog entry of its additive group.
#[derive(Clone, Debug)]
pub struct CatalogBrace {
    pub additive_id: String,
    pub additive_name: String,
    pub brace: SkewBrace,
}

#[derive(Clone, Debug)]
pub struct OrderSearch {
    /// Sorted by additive catalog index, then canonical key.
    pub items: Vec<CatalogBrace>,
    pub exhaustive: bool,
    pub nodes: u64,
}

impl OrderSearch {
    pub fn left_brace_count(&self) -> usize {
        self.items.iter().filter(|b| b.brace.is_abelian_type()).count()
    }
}

/// Skew braces of order `n` over every catalog group (abelian ones only if
/// `abelian_only`).
pub fn braces_of_order(n: usize, abelian_only: bool, budget: Budget) -> Result<OrderSearch> {
    let groups = small_group_catalog(n)?;
    let mut items = Vec::new();
    let mut exhaustive = true;
    let mut nodes = 0;
    for g in groups.into_iter().filter(|g| !abelian_only || g.group.is_abelian()) {
        let res = braces_with_additive_budget(&g.group, budget);
        exhaustive &= res.exhaustive;
        nodes += res.nodes;
        items.extend(res.braces.into_iter().map(|brace| CatalogBrace {
            additive_id: g.id.clone(),
            additive_name: g.name.clone(),
            brace,
        }));
    }
    Ok(OrderSearch { items, exhaustive, nodes })
}

fn exhaustive_count(n: usize, abelian_only: bool) -> Result<usize> {
    let res = braces_of_order(n, abelian_only, Budget::unlimited())?;
    if !res.exhaustive {
        return Err(Error::BudgetExceeded);
    }
    Ok(res.items.len())
}

/// Number of skew braces of order `n` up to isomorphism.
pub fn count_s(n: usize) -> Result<usize> {
    exhaustive_count(n, false)
}

/// Number of left braces (abelian additive group) of order `n`.
pub fn count_b(n: usize) -> Result<usize> {
    exhaustive_count(n, true)
}

/// Braces of order `n` whose multiplicative group is isomorphic to `g`; with
/// `left_only` the additive group must be abelian.
pub fn braces_with_multiplicative(n: usize, g: &FiniteGroup, left_only: bool) -> Result<Vec<CatalogBrace>> {
    if g.order() != n {
        return Err(Error::OrderMismatch(n, g.order()));
    }
    let res = braces_of_order(n, left_only, Budget::unlimited())?;
    if !res.exhaustive {
        return Err(Error::BudgetExceeded);
    }
    Ok(res.items.into_iter().filter(|b| b.brace.multiplicative().is_isomorphic(g)).collect())
}

/// Whether `g` is the multiplicative group of some finite left brace.
pub fn iyb_check(g: &FiniteGroup) -> Result<bool> {
    Ok(!braces_with_multiplicative(g.order(), g, true)?.is_empty())
}

/// Catalog names of the additive groups of left braces with multiplicative
/// group the generalized quaternion group of order `n = 4m`.
pub fn quaternion_additive_profile(n: usize) -> Result<Vec<String>> {
    if !n.is_multiple_of(4) || !(8..=MAX_CATALOG_ORDER).contains(&n) {
        return Err(Error::UnsupportedOrder(n));
    }
    let q = FiniteGroup::dicyclic(n / 4);
    let mut names: Vec<String> = braces_with_multiplicative(n, &q, true)?
        .into_iter()
        .map(|b| b.additive_name)
        .collect();
    names.sort();
    names.dedup();
    Ok(names)
}

/// Braces of every order up to `max_order`, in order then catalog sequence.
pub fn brace_database(max_order: usize, abelian_only: bool) -> Result<Vec<CatalogBrace>> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.extend(braces_of_order(n, abelian_only, Budget::unlimited())?.items);
    }
    Ok(out)
}
