//! Finite non-degenerate set-theoretic solutions of the Yang–Baxter equation.
//!
//! A solution on `X = {0..n-1}` is stored as the two families of permutations
//! `σ_x` and `τ_y`, with `r(x, y) = (σ_x(y), τ_y(x))`. Degenerate maps cannot be
//! represented at all.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::perm::{conjugators_pinned, PermGroup, Permutation};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Solution {
    n: usize,
    sigma: Vec<Permutation>,
    tau: Vec<Permutation>,
}

/// Flattened lexicographically least `(sigma, tau)` encoding over all relabelings.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SolutionClassKey(pub Vec<u16>);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Injectivity {
    Injective,
    Unknown,
}

/// A covering `X → Y`: the partition into fibers and the quotient solution on
/// the blocks (block `i` is `partition[i]`).
#[derive(Clone, Debug)]
pub struct Covering {
    pub partition: Vec<Vec<usize>>,
    pub quotient: Solution,
}

impl Solution {
    /// Validates `r(x,y) = (σ_x(y), τ_y(x))`: bijectivity of `r` and the braid
    /// relation on all `n³` triples.
    pub fn new(sigma: Vec<Permutation>, tau: Vec<Permutation>) -> Result<Self> {
        let n = sigma.len();
        if n == 0 || tau.len() != n {
            return Err(Error::BadShape { len: tau.len(), expected: n });
        }
        if let Some(p) = sigma.iter().chain(&tau).find(|p| p.degree() != n) {
            return Err(Error::BadShape { len: p.degree(), expected: n });
        }
        let s = Solution { n, sigma, tau };
        let mut preimage = vec![usize::MAX; n * n];
        for x in 0..n {
            for y in 0..n {
                let (u, v) = s.apply_r(x, y);
                let slot = &mut preimage[u * n + v];
                if *slot != usize::MAX {
                    return Err(Error::RNotBijective(*slot / n, *slot % n, x, y));
                }
                *slot = x * n + y;
            }
        }
        if let Some((x, y, z)) = s.braid_witness() {
            return Err(Error::BraidFails(x, y, z));
        }
        Ok(s)
    }

    /// From row-major tables: `sigma[x*n + y] = σ_x(y)`, `tau[y*n + x] = τ_y(x)`.
    pub fn from_tables(n: usize, sigma: &[usize], tau: &[usize]) -> Result<Self> {
        for t in [sigma, tau] {
            if t.len() != n * n {
                return Err(Error::BadShape { len: t.len(), expected: n * n });
            }
        }
        let rows = |t: &[usize]| -> Result<Vec<Permutation>> {
            t.chunks(n.max(1)).map(|r| Permutation::new(r.to_vec())).collect()
        };
        Self::new(rows(sigma)?, rows(tau)?)
    }

    pub(crate) fn from_parts_unchecked(sigma: Vec<Permutation>, tau: Vec<Permutation>) -> Self {
        Solution { n: sigma.len(), sigma, tau }
    }

    /// The flip `r(x, y) = (y, x)`.
    pub fn flip(n: usize) -> Self {
        let id = Permutation::identity(n);
        Solution { n, sigma: vec![id.clone(); n], tau: vec![id; n] }
    }

    /// `r(x, y) = (f(y), g(x))`; a solution exactly when `f` and `g` commute.
    pub fn permutation_solution(f: &Permutation, g: &Permutation) -> Result<Self> {
        let n = f.degree();
        Self::new(vec![f.clone(); n], vec![g.clone(); n])
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn sigma(&self, x: usize) -> &Permutation {
        &self.sigma[x]
    }

    pub fn tau(&self, y: usize) -> &Permutation {
        &self.tau[y]
    }

    #[inline]
    pub fn apply_r(&self, x: usize, y: usize) -> (usize, usize) {
        (self.sigma[x].apply(y), self.tau[y].apply(x))
    }

    /// First triple where `r₁₂ r₂₃ r₁₂ ≠ r₂₃ r₁₂ r₂₃`, if any.
    pub fn braid_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.braid_lhs(x, y, z) != self.braid_rhs(x, y, z) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn verify_braid(&self) -> bool {
        self.braid_witness().is_none()
    }

    fn braid_lhs(&self, x: usize, y: usize, z: usize) -> (usize, usize, usize) {
        let (a, b) = self.apply_r(x, y);
        let (c, d) = self.apply_r(b, z);
        let (e, f) = self.apply_r(a, c);
        (e, f, d)
    }

    fn braid_rhs(&self, x: usize, y: usize, z: usize) -> (usize, usize, usize) {
        let (a, b) = self.apply_r(y, z);
        let (c, d) = self.apply_r(x, a);
        let (e, f) = self.apply_r(d, b);
        (c, e, f)
    }

    pub fn is_involutive(&self) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|y| {
                let (u, v) = self.apply_r(x, y);
                self.apply_r(u, v) == (x, y)
            })
        })
    }

    pub fn is_square_free(&self) -> bool {
        (0..self.n).all(|x| self.apply_r(x, x) == (x, x))
    }

    /// The permutation group generated by all `σ_x`.
    pub fn derived_permutation_group(&self) -> PermGroup {
        PermGroup::generated(self.n, self.sigma.clone())
    }

    pub fn is_indecomposable(&self) -> bool {
        self.derived_permutation_group().is_transitive()
    }

    /// Involutive solutions are injective; nothing is claimed otherwise.
    pub fn injectivity_status(&self) -> Injectivity {
        if self.is_involutive() {
            Injectivity::Injective
        } else {
            Injectivity::Unknown
        }
    }

    pub fn sigma_table(&self) -> Vec<usize> {
        self.sigma.iter().flat_map(|p| p.images().iter().copied()).collect()
    }

    pub fn tau_table(&self) -> Vec<usize> {
        self.tau.iter().flat_map(|p| p.images().iter().copied()).collect()
    }

    /// Transports the solution along the bijection `pi` (`x ↦ pi(x)`).
    pub fn relabel(&self, pi: &Permutation) -> Solution {
        let mut sigma = vec![Permutation::identity(self.n); self.n];
        let mut tau = sigma.clone();
        for x in 0..self.n {
            sigma[pi.apply(x)] = pi.conjugate(&self.sigma[x]);
            tau[pi.apply(x)] = pi.conjugate(&self.tau[x]);
        }
        Solution { n: self.n, sigma, tau }
    }

    /// Lexicographically least relabeled `(sigma, tau)` encoding.
    ///
    /// Row 0 of `π·self` is `π σ_x π⁻¹` with `x = π⁻¹(0)`, so the least
    /// encoding starts with the least such conjugate `m` over all `x`; only `π`
    /// with `π(x) = 0` and `π σ_x π⁻¹ = m` are compared.
    pub fn canonical_key(&self) -> SolutionClassKey {
        let n = self.n;
        let mins: Vec<Permutation> = (0..n).map(|x| self.sigma[x].min_conjugate_pinned(x)).collect();
        let m = mins.iter().min().unwrap().clone();
        let mut best: Option<Vec<u16>> = None;
        let mut buf = vec![0u16; 2 * n * n];
        for x in (0..n).filter(|&x| mins[x] == m) {
            for pi in conjugators_pinned(&self.sigma[x], &m, Some((x, 0))) {
                if self.encode_under(&pi, best.as_deref(), &mut buf) {
                    best = Some(buf.clone());
                }
            }
        }
        SolutionClassKey(best.unwrap())
    }

    /// Writes the encoding of `π·self` into `buf`, stopping early once it is
    /// known not to beat `best`. Returns true if it is strictly smaller.
    fn encode_under(&self, pi: &Permutation, best: Option<&[u16]>, buf: &mut [u16]) -> bool {
        let n = self.n;
        let inv = pi.inverse();
        let mut decided = best.is_none();
        let mut idx = 0;
        for fam in [&self.sigma, &self.tau] {
            for i in 0..n {
                let row = &fam[inv.apply(i)];
                for j in 0..n {
                    let v = pi.apply(row.apply(inv.apply(j))) as u16;
                    if !decided {
                        match v.cmp(&best.unwrap()[idx]) {
                            Ordering::Less => decided = true,
                            Ordering::Greater => return false,
                            Ordering::Equal => {}
                        }
                    }
                    buf[idx] = v;
                    idx += 1;
                }
            }
        }
        decided
    }

    /// Canonical key by scanning every relabeling; only for small `n`.
    pub fn canonical_key_brute_force(&self) -> SolutionClassKey {
        crate::perm::all_permutations(self.n)
            .iter()
            .map(|pi| {
                let t = self.relabel(pi);
                SolutionClassKey(t.sigma_table().into_iter().chain(t.tau_table()).map(|v| v as u16).collect())
            })
            .min()
            .unwrap()
    }

    pub fn is_isomorphic(&self, other: &Solution) -> bool {
        self.n == other.n && self.canonical_key() == other.canonical_key()
    }

    /// Some `π` with `relabel(π) == other`.
    pub fn isomorphism(&self, other: &Solution) -> Option<Permutation> {
        if self.n != other.n {
            return None;
        }
        let m = self.sigma[0].clone();
        (0..self.n)
            .flat_map(|y| conjugators_pinned(&m, &other.sigma[y], Some((0, y))))
            .find(|pi| self.relabel(pi) == *other)
    }

    /// Rebuilds a solution from a class key.
    pub fn from_key(key: &SolutionClassKey) -> Result<Self> {
        let n = ((key.0.len() / 2) as f64).sqrt().round() as usize;
        let v: Vec<usize> = key.0.iter().map(|&x| x as usize).collect();
        Self::from_tables(n, &v[..n * n], &v[n * n..])
    }

    /// Every map `p: X → Y` with `(p×p) ∘ r_self = r_other ∘ (p×p)`.
    ///
    /// Backtracking with forced values: once `p(x)` and `p(y)` are known,
    /// `p(σ_x(y))` and `p(τ_y(x))` are determined.
    pub fn homomorphisms(&self, other: &Solution) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut map = vec![usize::MAX; self.n];
        self.hom_rec(other, &mut map, &mut out);
        out
    }

    fn hom_rec(&self, other: &Solution, map: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(x) = map.iter().position(|&v| v == usize::MAX) else {
            out.push(map.clone());
            return;
        };
        for y in 0..other.n {
            let saved = map.clone();
            map[x] = y;
            if self.propagate_hom(other, map) {
                self.hom_rec(other, map, out);
            }
            *map = saved;
        }
    }

    fn propagate_hom(&self, other: &Solution, map: &mut [usize]) -> bool {
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..self.n {
                if map[x] == usize::MAX {
                    continue;
                }
                for y in 0..self.n {
                    if map[y] == usize::MAX {
                        continue;
                    }
                    let (u, v) = self.apply_r(x, y);
                    let (pu, pv) = other.apply_r(map[x], map[y]);
                    for (a, b) in [(u, pu), (v, pv)] {
                        if map[a] == usize::MAX {
                            map[a] = b;
                            changed = true;
                        } else if map[a] != b {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Coverings by equal-size fibers, including the two trivial ones.
    pub fn coverings(&self) -> Vec<Covering> {
        let n = self.n;
        let mut out = Vec::new();
        for block in (1..=n).filter(|b| n.is_multiple_of(*b)) {
            for partition in equal_partitions(n, block) {
                if let Some(quotient) = self.quotient(&partition) {
                    out.push(Covering { partition, quotient });
                }
            }
        }
        out
    }

    /// Quotient by a partition, if `r` induces a well-defined solution on blocks.
    pub fn quotient(&self, partition: &[Vec<usize>]) -> Option<Solution> {
        let n = self.n;
        let k = partition.len();
        let mut block = vec![0; n];
        for (i, b) in partition.iter().enumerate() {
            for &x in b {
                block[x] = i;
            }
        }
        let mut qs = vec![usize::MAX; k * k];
        let mut qt = vec![usize::MAX; k * k];
        for x in 0..n {
            for y in 0..n {
                let (u, v) = self.apply_r(x, y);
                let (bx, by) = (block[x], block[y]);
                for (cell, val) in [(&mut qs[bx * k + by], block[u]), (&mut qt[by * k + bx], block[v])] {
                    if *cell == usize::MAX {
                        *cell = val;
                    } else if *cell != val {
                        return None;
                    }
                }
            }
        }
        Solution::from_tables(k, &qs, &qt).ok()
    }

    /// Simple: `|X| > 1` and every covering is `|Y| = 1` or `|Y| = |X|`.
    pub fn is_simple(&self) -> Result<bool> {
        if !self.is_involutive() {
            return Err(Error::NotInvolutive);
        }
        if self.n <= 1 {
            return Ok(false);
        }
        Ok(self
            .coverings()
            .iter()
            .all(|c| c.quotient.size() == 1 || c.quotient.size() == self.n))
    }
}

/// All partitions of `{0..n-1}` into blocks of size `block`.
pub fn equal_partitions(n: usize, block: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut used = vec![false; n];
    let mut cur = Vec::new();
    part_rec(n, block, &mut used, &mut cur, &mut out);
    out
}

fn part_rec(n: usize, block: usize, used: &mut [bool], cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
    let Some(first) = used.iter().position(|u| !u) else {
        out.push(cur.clone());
        return;
    };
    used[first] = true;
    let rest: Vec<usize> = (first + 1..n).filter(|&i| !used[i]).collect();
    choose(&rest, block - 1, 0, &mut vec![first], &mut |b| {
        for &i in b {
            used[i] = true;
        }
        cur.push(b.to_vec());
        part_rec(n, block, used, cur, out);
        cur.pop();
        for &i in &b[1..] {
            used[i] = false;
        }
    });
    used[first] = false;
}

fn choose(items: &[usize], k: usize, start: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if k == 0 {
        f(acc);
        return;
    }
    for i in start..items.len() {
        acc.push(items[i]);
        choose(items, k - 1, i + 1, acc, f);
        acc.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[usize]) -> Permutation {
        Permutation::from_cycles(n, &[c]).unwrap()
    }

    #[test]
    fn flip_is_involutive_and_square_free() {
        let f = Solution::flip(3);
        assert_eq!(f.apply_r(0, 1), (1, 0));
        assert!(f.is_involutive());
        assert!(f.is_square_free());
        assert!(!Solution::flip(2).is_indecomposable());
        assert!(Solution::flip(1).is_indecomposable());
    }

    #[test]
    fn permutation_solution_with_inverse() {
        let g = cyc(3, &[0, 1, 2]);
        let s = Solution::permutation_solution(&g, &g.inverse()).unwrap();
        assert!(s.is_involutive());
        assert!(!s.is_square_free());
        assert!(s.is_indecomposable());
        assert_eq!(s.injectivity_status(), Injectivity::Injective);
    }

    #[test]
    fn braid_failure_has_witness() {
        let a = cyc(3, &[0, 1]);
        let b = cyc(3, &[0, 2]);
        let err = Solution::new(vec![a; 3], vec![b; 3]).unwrap_err();
        let Error::BraidFails(x, y, z) = err else { panic!("{err:?}") };
        // recheck the witness directly
        let s = Solution::from_parts_unchecked(vec![cyc(3, &[0, 1]); 3], vec![cyc(3, &[0, 2]); 3]);
        assert_ne!(s.braid_lhs(x, y, z), s.braid_rhs(x, y, z));
    }

    #[test]
    fn r_collision_detected() {
        // σ_0 = (0 1), σ_1 = id, τ_0 = (0 1), τ_1 = id: r(0,1) = r(1,0) = (0,0)
        let err = Solution::from_tables(2, &[1, 0, 0, 1], &[1, 0, 0, 1]).unwrap_err();
        assert_eq!(err, Error::RNotBijective(0, 1, 1, 0));
    }

    #[test]
    fn relabel_invariance_of_key() {
        let g = cyc(4, &[0, 1, 2, 3]);
        let s = Solution::permutation_solution(&g, &g.inverse()).unwrap();
        let key = s.canonical_key();
        assert_eq!(key, s.canonical_key_brute_force());
        for pi in crate::perm::all_permutations(4) {
            let t = s.relabel(&pi);
            assert!(t.verify_braid());
            assert_eq!(t.canonical_key(), key);
            assert!(s.isomorphism(&t).is_some_and(|w| s.relabel(&w) == t));
        }
        assert_eq!(Solution::from_key(&key).unwrap().canonical_key(), key);
    }

    #[test]
    fn two_involutive_solutions_of_size_two_differ() {
        let flip = Solution::flip(2);
        let t = cyc(2, &[0, 1]);
        let other = Solution::permutation_solution(&t, &t).unwrap();
        assert!(other.is_involutive());
        assert!(!flip.is_isomorphic(&other));
    }

    #[test]
    fn prime_size_involutive_solutions_are_simple() {
        let g = cyc(5, &[0, 1, 2, 3, 4]);
        let s = Solution::permutation_solution(&g, &g.inverse()).unwrap();
        assert!(s.is_simple().unwrap());
        assert!(Solution::flip(3).is_simple().unwrap());
    }

    #[test]
    fn flip_on_four_has_nontrivial_covering() {
        let f = Solution::flip(4);
        let covers = f.coverings();
        let halves: Vec<_> = covers.iter().filter(|c| c.quotient.size() == 2).collect();
        assert_eq!(halves.len(), 3);
        for c in halves {
            assert_eq!(c.quotient, Solution::flip(2));
        }
        assert!(!f.is_simple().unwrap());
    }

    #[test]
    fn simplicity_needs_involutive() {
        let a = cyc(3, &[0, 1, 2]);
        let s = Solution::permutation_solution(&a, &a).unwrap();
        assert!(!s.is_involutive());
        assert_eq!(s.is_simple(), Err(Error::NotInvolutive));
        assert_eq!(s.injectivity_status(), Injectivity::Unknown);
    }

    #[test]
    fn homomorphisms_to_singleton_and_self() {
        let f = Solution::flip(3);
        assert_eq!(f.homomorphisms(&Solution::flip(1)).len(), 1);
        // every map X → X commutes with the flip
        assert_eq!(f.homomorphisms(&f).len(), 27);
        let g = cyc(3, &[0, 1, 2]);
        let s = Solution::permutation_solution(&g, &g.inverse()).unwrap();
        let homs = s.homomorphisms(&s);
        for h in &homs {
            for x in 0..3 {
                for y in 0..3 {
                    let (u, v) = s.apply_r(x, y);
                    assert_eq!((h[u], h[v]), s.apply_r(h[x], h[y]));
                }
            }
        }
    }

    #[test]
    fn partitions_count() {
        assert_eq!(equal_partitions(4, 2).len(), 3);
        assert_eq!(equal_partitions(6, 2).len(), 15);
        assert_eq!(equal_partitions(6, 3).len(), 10);
        assert_eq!(equal_partitions(8, 4).len(), 35);
        assert_eq!(equal_partitions(5, 1).len(), 1);
    }
}
