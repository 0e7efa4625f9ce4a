//! Isomorph-free enumeration of cycle sets (equivalently, involutive
//! solutions) and of small general solutions.
//!
//! Cycle sets are generated in orderly fashion. Since relabeling conjugates the
//! diagonal `x ↦ x·x`, a canonical table has as diagonal the least permutation
//! of its cycle type, and the remaining symmetry is the centralizer of that
//! permutation. The table is filled row-major with axiom propagation; a partial
//! table is abandoned as soon as some centralizer element maps its determined
//! prefix to something strictly smaller.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::cycle_set::{CycleSet, CycleSetKey};
use crate::error::{Error, Result};
use crate::perm::{all_permutations, conjugators, min_perm_of_type, Permutation};
use crate::retraction;
use crate::solution::{Solution, SolutionClassKey};

/// Largest size accepted by the general-solution search without an override.
pub const DEFAULT_MAX_GENERAL_SIZE: usize = 4;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Filter {
    SquareFree,
    Indecomposable,
    Irretractable,
    Involutive,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EnumerationKind {
    CycleSets,
    GeneralSolutions,
}

#[derive(Clone, Copy, Default, Debug)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationTask {
    pub n: usize,
    pub kind: EnumerationKind,
    pub filters: BTreeSet<Filter>,
    pub budget: Budget,
    /// Lets the general-solution search run above [`DEFAULT_MAX_GENERAL_SIZE`].
    pub allow_large: bool,
}

impl EnumerationTask {
    pub fn cycle_sets(n: usize) -> Self {
        EnumerationTask {
            n,
            kind: EnumerationKind::CycleSets,
            filters: BTreeSet::new(),
            budget: Budget::unlimited(),
            allow_large: false,
        }
    }

    pub fn solutions(n: usize) -> Self {
        EnumerationTask { kind: EnumerationKind::GeneralSolutions, ..Self::cycle_sets(n) }
    }

    pub fn with_filter(mut self, f: Filter) -> Self {
        self.filters.insert(f);
        self
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }
}

/// Representatives in ascending key order, with `exhaustive = false` when a
/// budget cut the search short.
#[derive(Clone, Debug)]
pub struct Enumeration<T> {
    pub items: Vec<T>,
    pub exhaustive: bool,
    pub nodes: u64,
}

pub(crate) struct Limits {
    nodes: AtomicU64,
    max_nodes: u64,
    deadline: Option<Instant>,
    stopped: AtomicBool,
}

impl Limits {
    pub(crate) fn new(b: Budget) -> Self {
        Limits {
            nodes: AtomicU64::new(0),
            max_nodes: b.max_nodes.unwrap_or(u64::MAX),
            deadline: b.max_time.map(|d| Instant::now() + d),
            stopped: AtomicBool::new(false),
        }
    }

    pub(crate) fn stopped(&self) -> bool {
        self.stopped.load(Ordering::Relaxed)
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    /// Counts a node; false once the budget is gone.
    #[inline]
    pub(crate) fn tick(&self) -> bool {
        if self.stopped.load(Ordering::Relaxed) {
            return false;
        }
        let k = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over = k > self.max_nodes || (k.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() > d));
        if over {
            self.stopped.store(true, Ordering::Relaxed);
        }
        !over
    }
}

fn passes_filters(s: &Solution, filters: &BTreeSet<Filter>) -> bool {
    filters.iter().all(|f| match f {
        Filter::SquareFree => s.is_square_free(),
        Filter::Indecomposable => s.is_indecomposable(),
        Filter::Involutive => s.is_involutive(),
        Filter::Irretractable => s.is_involutive() && retraction::is_irretractable(s).unwrap_or(false),
    })
}

/// Integer partitions of `n` as ascending part lists.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in min..=rest {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out
}

const UNSET: u8 = u8::MAX;

/// Partial cycle-set table with propagation and an undo trail.
#[derive(Clone)]
struct CsState {
    n: usize,
    t: Vec<u8>,
    inv: Vec<u8>,
    filled: Vec<u8>,
    trail: Vec<u16>,
    queue: Vec<u16>,
}

impl CsState {
    fn new(n: usize) -> Self {
        CsState {
            n,
            t: vec![UNSET; n * n],
            inv: vec![UNSET; n * n],
            filled: vec![0; n],
            trail: Vec::new(),
            queue: Vec::new(),
        }
    }

    #[inline]
    fn get(&self, x: usize, y: usize) -> u8 {
        self.t[x * self.n + y]
    }

    fn assign(&mut self, x: usize, y: usize, v: u8) -> bool {
        let n = self.n;
        let cur = self.t[x * n + y];
        if cur != UNSET {
            return cur == v;
        }
        if self.inv[x * n + v as usize] != UNSET {
            return false;
        }
        self.t[x * n + y] = v;
        self.inv[x * n + v as usize] = y as u8;
        self.filled[x] += 1;
        self.trail.push((x * n + y) as u16);
        self.queue.push((x * n + y) as u16);
        true
    }

    fn undo_to(&mut self, mark: usize) {
        let n = self.n;
        while self.trail.len() > mark {
            let c = self.trail.pop().unwrap() as usize;
            let (x, v) = (c / n, self.t[c]);
            self.inv[x * n + v as usize] = UNSET;
            self.t[c] = UNSET;
            self.filled[x] -= 1;
        }
        self.queue.clear();
    }

    /// `(x·y)·(x·z) = (y·x)·(y·z)`, deducing one side from the other when possible.
    #[inline]
    fn check(&mut self, x: usize, y: usize, z: usize) -> bool {
        if x == y {
            return true;
        }
        let n = self.n;
        let (p, q, r, s) = (self.get(x, y), self.get(x, z), self.get(y, x), self.get(y, z));
        if p == UNSET || q == UNSET || r == UNSET || s == UNSET {
            return true;
        }
        let lc = p as usize * n + q as usize;
        let rc = r as usize * n + s as usize;
        let (lv, rv) = (self.t[lc], self.t[rc]);
        match (lv == UNSET, rv == UNSET) {
            (false, false) => lv == rv,
            (false, true) => self.assign(r as usize, s as usize, lv),
            (true, false) => self.assign(p as usize, q as usize, rv),
            (true, true) => true,
        }
    }

    fn propagate(&mut self) -> bool {
        let n = self.n;
        while let Some(c) = self.queue.pop() {
            let (a, b) = (c as usize / n, c as usize % n);
            for k in 0..n {
                if !self.check(a, b, k) || !self.check(a, k, b) {
                    return false;
                }
            }
            for x in 0..n {
                let y = self.inv[x * n + a];
                let z = self.inv[x * n + b];
                if y != UNSET && z != UNSET && !self.check(x, y as usize, z as usize) {
                    return false;
                }
            }
            if self.filled[a] as usize == n - 1 {
                let y = (0..n).find(|&y| self.get(a, y) == UNSET).unwrap();
                let v = (0..n).find(|&v| self.inv[a * n + v] == UNSET).unwrap();
                if !self.assign(a, y, v as u8) {
                    return false;
                }
            }
        }
        true
    }
}

/// Pruning data for one diagonal: the non-identity centralizer elements.
struct Symmetry {
    perms: Vec<Vec<u8>>,
    invs: Vec<Vec<u8>>,
}

/// Compares `π·T` with `T` from `pos` on; `Err(())` means `π·T < T` on the
/// determined prefix, `Ok(None)` means resolved (greater or automorphism),
/// `Ok(Some(p))` means still tied up to the first undetermined cell `p`.
#[inline]
fn lex_status(st: &CsState, pi: &[u8], inv: &[u8], mut pos: usize) -> std::result::Result<Option<usize>, ()> {
    let n = st.n;
    while pos < n * n {
        let tv = st.t[pos];
        if tv == UNSET {
            return Ok(Some(pos));
        }
        let (i, j) = (pos / n, pos % n);
        let src = st.get(inv[i] as usize, inv[j] as usize);
        if src == UNSET {
            return Ok(Some(pos));
        }
        let pv = pi[src as usize];
        if pv < tv {
            return Err(());
        }
        if pv > tv {
            return Ok(None);
        }
        pos += 1;
    }
    Ok(None)
}

fn filter_lex(st: &CsState, sym: &Symmetry, open: &[(u32, u16)]) -> Option<Vec<(u32, u16)>> {
    let mut next = Vec::with_capacity(open.len());
    for &(k, pos) in open {
        let k = k as usize;
        match lex_status(st, &sym.perms[k], &sym.invs[k], pos as usize) {
            Err(()) => return None,
            Ok(None) => {}
            Ok(Some(p)) => next.push((k as u32, p as u16)),
        }
    }
    Some(next)
}

struct Node {
    st: CsState,
    open: Vec<(u32, u16)>,
}

fn cs_dfs(node: &mut Node, sym: &Symmetry, limits: &Limits, out: &mut Vec<Vec<u8>>) {
    if !limits.tick() {
        return;
    }
    let n = node.st.n;
    let Some(cell) = node.st.t.iter().position(|&v| v == UNSET) else {
        out.push(node.st.t.clone());
        return;
    };
    let (x, y) = (cell / n, cell % n);
    for v in 0..n as u8 {
        if node.st.inv[x * n + v as usize] != UNSET {
            continue;
        }
        let mark = node.st.trail.len();
        if node.st.assign(x, y, v) && node.st.propagate() {
            if let Some(open) = filter_lex(&node.st, sym, &node.open) {
                let saved = std::mem::replace(&mut node.open, open);
                cs_dfs(node, sym, limits, out);
                node.open = saved;
            }
        }
        node.st.undo_to(mark);
        if limits.stopped.load(Ordering::Relaxed) {
            return;
        }
    }
}

/// Expands nodes breadth-first until there are enough independent subtrees.
fn split_frontier(root: Node, sym: &Symmetry, limits: &Limits, target: usize, leaves: &mut Vec<Vec<u8>>) -> Vec<Node> {
    let mut frontier = vec![root];
    while frontier.len() < target {
        let mut next = Vec::new();
        let mut grew = false;
        for node in frontier {
            let n = node.st.n;
            let Some(cell) = node.st.t.iter().position(|&v| v == UNSET) else {
                leaves.push(node.st.t.clone());
                continue;
            };
            grew = true;
            limits.tick();
            let (x, y) = (cell / n, cell % n);
            for v in 0..n as u8 {
                if node.st.inv[x * n + v as usize] != UNSET {
                    continue;
                }
                let mut st = node.st.clone();
                st.trail.clear();
                if st.assign(x, y, v) && st.propagate() {
                    if let Some(open) = filter_lex(&st, sym, &node.open) {
                        st.trail.clear();
                        next.push(Node { st, open });
                    }
                }
            }
        }
        frontier = next;
        if !grew {
            break;
        }
    }
    frontier
}

fn enumerate_diagonal(n: usize, cycle_type: &[usize], limits: &Limits) -> Vec<Vec<u8>> {
    let d = min_perm_of_type(cycle_type);
    let centralizer: Vec<Permutation> = conjugators(&d, &d).into_iter().filter(|p| !p.is_identity()).collect();
    let sym = Symmetry {
        perms: centralizer.iter().map(|p| p.images().iter().map(|&v| v as u8).collect()).collect(),
        invs: centralizer.iter().map(|p| p.inverse().images().iter().map(|&v| v as u8).collect()).collect(),
    };
    let mut st = CsState::new(n);
    for x in 0..n {
        if !st.assign(x, x, d.apply(x) as u8) {
            return Vec::new();
        }
    }
    if !st.propagate() {
        return Vec::new();
    }
    st.trail.clear();
    let open: Vec<(u32, u16)> = (0..sym.perms.len() as u32).map(|k| (k, 0)).collect();
    let Some(open) = filter_lex(&st, &sym, &open) else {
        return Vec::new();
    };
    let mut leaves = Vec::new();
    let frontier = split_frontier(Node { st, open }, &sym, limits, 64, &mut leaves);
    let found: Vec<Vec<Vec<u8>>> = frontier
        .into_par_iter()
        .map(|mut node| {
            let mut out = Vec::new();
            cs_dfs(&mut node, &sym, limits, &mut out);
            out
        })
        .collect();
    leaves.extend(found.into_iter().flatten());
    leaves
}

/// One canonical cycle set per isomorphism class of size `task.n`, sorted by
/// canonical key. `SquareFree` restricts the search to the identity diagonal;
/// other filters are applied to the associated involutive solution.
pub fn enumerate_cycle_sets(task: &EnumerationTask) -> Result<Enumeration<CycleSet>> {
    let n = task.n;
    if n == 0 || n > 16 {
        return Err(Error::UnsupportedOrder(n));
    }
    let limits = Limits::new(task.budget);
    let types: Vec<Vec<usize>> = if task.filters.contains(&Filter::SquareFree) {
        vec![vec![1; n]]
    } else {
        partitions(n)
    };
    let mut tables: Vec<Vec<u8>> = types.iter().flat_map(|t| enumerate_diagonal(n, t, &limits)).collect();
    let exhaustive = !limits.stopped.load(Ordering::Relaxed);
    // key = diagonal followed by the table; the diagonal is a prefix of the key
    tables.sort_by_cached_key(|t| (0..n).map(|x| t[x * n + x]).chain(t.iter().copied()).collect::<Vec<u8>>());
    let other_filters: BTreeSet<Filter> = task.filters.iter().copied().filter(|f| *f != Filter::SquareFree).collect();
    let items: Vec<CycleSet> = tables
        .into_iter()
        .map(|t| CycleSet::from_table_unchecked(n, t.into_iter().map(usize::from).collect()))
        .filter(|cs| {
            other_filters.is_empty() || passes_filters(&cs.to_solution().expect("valid cycle set"), &other_filters)
        })
        .collect();
    Ok(Enumeration { items, exhaustive, nodes: limits.nodes.load(Ordering::Relaxed) })
}

/// Number of cycle-set classes of size `n` passing all `filters`.
pub fn count_with_filters(n: usize, filters: &[Filter]) -> Result<usize> {
    let mut task = EnumerationTask::cycle_sets(n);
    task.filters.extend(filters.iter().copied());
    let e = enumerate_cycle_sets(&task)?;
    if !e.exhaustive {
        return Err(Error::BudgetExceeded);
    }
    Ok(e.items.len())
}

/// The involutive solution of each enumerated cycle-set class of size `n`.
pub fn involutive_solutions(n: usize) -> Result<Vec<Solution>> {
    let e = enumerate_cycle_sets(&EnumerationTask::cycle_sets(n))?;
    if !e.exhaustive {
        return Err(Error::BudgetExceeded);
    }
    Ok(e.items.iter().map(|cs| cs.to_solution().expect("valid cycle set")).collect())
}

/// Partial `(σ, τ)` families; `None` rows are not chosen yet.
struct GeneralState<'a> {
    n: usize,
    perms: &'a [Permutation],
    sigma: Vec<Option<usize>>,
    tau: Vec<Option<usize>>,
}

impl GeneralState<'_> {
    fn s(&self, x: usize, y: usize) -> Option<usize> {
        self.sigma[x].map(|p| self.perms[p].apply(y))
    }

    fn t(&self, y: usize, x: usize) -> Option<usize> {
        self.tau[y].map(|p| self.perms[p].apply(x))
    }

    fn r(&self, x: usize, y: usize) -> (Option<usize>, Option<usize>) {
        (self.s(x, y), self.t(y, x))
    }

    fn consistent(&self) -> bool {
        let n = self.n;
        let mut seen = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                if let (Some(u), Some(v)) = self.r(x, y) {
                    if std::mem::replace(&mut seen[u * n + v], true) {
                        return false;
                    }
                }
            }
        }
        let r = |a: Option<usize>, b: Option<usize>| match (a, b) {
            (Some(a), Some(b)) => self.r(a, b),
            _ => (None, None),
        };
        let differ = |a: Option<usize>, b: Option<usize>| matches!((a, b), (Some(a), Some(b)) if a != b);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    // r12 r23 r12
                    let (a, b) = self.r(x, y);
                    let (c, d) = r(b, Some(z));
                    let (e, f) = r(a, c);
                    // r23 r12 r23
                    let (g, h) = self.r(y, z);
                    let (i, j) = r(Some(x), g);
                    let (k, l) = r(j, h);
                    if differ(e, i) || differ(f, k) || differ(d, l) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn general_dfs(st: &mut GeneralState, depth: usize, limits: &Limits, out: &mut BTreeSet<SolutionClassKey>) {
    if !limits.tick() {
        return;
    }
    let n = st.n;
    if depth == 2 * n {
        let sigma = st.sigma.iter().map(|p| st.perms[p.unwrap()].clone()).collect();
        let tau = st.tau.iter().map(|p| st.perms[p.unwrap()].clone()).collect();
        let s = Solution::from_parts_unchecked(sigma, tau);
        out.insert(s.canonical_key());
        return;
    }
    let x = depth / 2;
    for p in 0..st.perms.len() {
        if depth.is_multiple_of(2) {
            st.sigma[x] = Some(p);
        } else {
            st.tau[x] = Some(p);
        }
        if st.consistent() {
            general_dfs(st, depth + 1, limits, out);
        }
        if limits.stopped.load(Ordering::Relaxed) {
            break;
        }
    }
    if depth.is_multiple_of(2) {
        st.sigma[x] = None;
    } else {
        st.tau[x] = None;
    }
}

/// All solutions of size `task.n` (involutive or not) up to isomorphism,
/// sorted by canonical key. Sizes above [`DEFAULT_MAX_GENERAL_SIZE`] need
/// `allow_large`.
pub fn enumerate_solutions(task: &EnumerationTask) -> Result<Enumeration<Solution>> {
    let n = task.n;
    if n == 0 || (n > DEFAULT_MAX_GENERAL_SIZE && !task.allow_large) || n > 8 {
        return Err(Error::UnsupportedOrder(n));
    }
    let limits = Limits::new(task.budget);
    let perms = all_permutations(n);
    // branch on σ_0 in parallel; each branch is independent
    let keys: Vec<BTreeSet<SolutionClassKey>> = (0..perms.len())
        .into_par_iter()
        .map(|p0| {
            let mut st = GeneralState { n, perms: &perms, sigma: vec![None; n], tau: vec![None; n] };
            st.sigma[0] = Some(p0);
            let mut out = BTreeSet::new();
            if st.consistent() {
                general_dfs(&mut st, 1, &limits, &mut out);
            }
            out
        })
        .collect();
    let keys: BTreeSet<SolutionClassKey> = keys.into_iter().flatten().collect();
    let exhaustive = !limits.stopped.load(Ordering::Relaxed);
    let items = keys
        .iter()
        .map(|k| Solution::from_key(k).expect("enumerated solution"))
        .filter(|s| passes_filters(s, &task.filters))
        .collect();
    Ok(Enumeration { items, exhaustive, nodes: limits.nodes.load(Ordering::Relaxed) })
}

/// Brute-force cycle-set classes: every table with permutation rows, validated
/// and deduplicated by scanning all relabelings. Only for very small `n`.
pub fn brute_force_cycle_set_keys(n: usize) -> BTreeSet<CycleSetKey> {
    let perms = all_permutations(n);
    let mut idx = vec![0usize; n];
    let mut out = BTreeSet::new();
    loop {
        let dot: Vec<usize> = idx.iter().flat_map(|&i| perms[i].images().to_vec()).collect();
        if let Ok(cs) = CycleSet::new(n, dot) {
            out.insert(cs.canonical_key_brute_force());
        }
        let mut k = 0;
        while k < n {
            idx[k] += 1;
            if idx[k] < perms.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            return out;
        }
    }
}

/// Brute-force solution classes over all `(σ, τ)` families.
pub fn brute_force_solution_keys(n: usize) -> BTreeSet<SolutionClassKey> {
    let perms = all_permutations(n);
    let m = 2 * n;
    let mut idx = vec![0usize; m];
    let mut out = BTreeSet::new();
    loop {
        let sigma: Vec<Permutation> = idx[..n].iter().map(|&i| perms[i].clone()).collect();
        let tau: Vec<Permutation> = idx[n..].iter().map(|&i| perms[i].clone()).collect();
        if let Ok(s) = Solution::new(sigma, tau) {
            out.insert(s.canonical_key_brute_force());
        }
        let mut k = 0;
        while k < m {
            idx[k] += 1;
            if idx[k] < perms.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == m {
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_small_numbers() {
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(8).len(), 22);
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_with_filters(1, &[]).unwrap(), 1);
        assert_eq!(count_with_filters(2, &[]).unwrap(), 2);
        assert_eq!(count_with_filters(3, &[]).unwrap(), 5);
        assert_eq!(count_with_filters(4, &[]).unwrap(), 23);
    }

    #[test]
    fn matches_brute_force_up_to_three() {
        for n in 1..=3 {
            let fast: BTreeSet<CycleSetKey> = enumerate_cycle_sets(&EnumerationTask::cycle_sets(n))
                .unwrap()
                .items
                .iter()
                .map(CycleSet::canonical_key)
                .collect();
            assert_eq!(fast, brute_force_cycle_set_keys(n), "n = {n}");
        }
    }

    #[test]
    fn output_is_canonical_and_sorted() {
        let e = enumerate_cycle_sets(&EnumerationTask::cycle_sets(4)).unwrap();
        let keys: Vec<CycleSetKey> = e.items.iter().map(CycleSet::canonical_key).collect();
        for (cs, k) in e.items.iter().zip(&keys) {
            assert_eq!(cs.canonical_form(), *cs);
            assert_eq!(*k, cs.canonical_key_brute_force());
        }
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn node_budget_marks_non_exhaustive() {
        let task = EnumerationTask::cycle_sets(5).with_budget(Budget { max_nodes: Some(10), max_time: None });
        let e = enumerate_cycle_sets(&task).unwrap();
        assert!(!e.exhaustive);
        assert!(matches!(
            enumerate_solutions(&EnumerationTask::solutions(3).with_budget(Budget { max_nodes: Some(5), max_time: None })),
            Ok(Enumeration { exhaustive: false, .. })
        ));
    }

    #[test]
    fn general_solutions_small() {
        assert_eq!(enumerate_solutions(&EnumerationTask::solutions(1)).unwrap().items.len(), 1);
        let inv = enumerate_solutions(&EnumerationTask::solutions(2).with_filter(Filter::Involutive)).unwrap();
        assert_eq!(inv.items.len(), 2);
        assert!(matches!(enumerate_solutions(&EnumerationTask::solutions(5)), Err(Error::UnsupportedOrder(5))));
    }

    #[test]
    fn general_matches_brute_force_at_two() {
        let fast: BTreeSet<SolutionClassKey> = enumerate_solutions(&EnumerationTask::solutions(2))
            .unwrap()
            .items
            .iter()
            .map(Solution::canonical_key)
            .collect();
        let brute = brute_force_solution_keys(2);
        assert_eq!(fast, brute);
        assert!(brute.len() >= 2);
    }
}
