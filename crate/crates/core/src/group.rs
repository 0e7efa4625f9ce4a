//! Finite groups stored as Cayley tables on `{0..n-1}` with identity `0`.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::perm::{all_permutations, PermGroup, Permutation};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a row-major Cayley table. Element `0` must be the identity.
    pub fn from_table(n: usize, table: Vec<usize>) -> Result<Self> {
        if n == 0 || table.len() != n * n {
            return Err(Error::BadShape { len: table.len(), expected: n * n });
        }
        if let Some(&value) = table.iter().find(|&&v| v >= n) {
            return Err(Error::OutOfRange { value, n });
        }
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                if std::mem::replace(&mut row[table[a * n + b]], true)
                    || std::mem::replace(&mut col[table[b * n + a]], true)
                {
                    return Err(Error::NotLatin { element: a });
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e * n + a] == a && table[a * n + e] == a))
            .ok_or(Error::NoIdentity)?;
        if identity != 0 {
            return Err(Error::IdentityNotZero { found: identity });
        }
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a * n + b] == 0 && table[b * n + a] == 0)
                .ok_or(Error::NoInverse { element: a })?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup { n, table, inverse })
    }

    /// Like [`from_table`](Self::from_table), but first swaps labels so that
    /// the identity becomes `0`.
    pub fn normalized(n: usize, table: Vec<usize>) -> Result<Self> {
        if n == 0 || table.len() != n * n {
            return Err(Error::BadShape { len: table.len(), expected: n * n });
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table.get(e * n + a) == Some(&a) && table[a * n + e] == a))
            .ok_or(Error::NoIdentity)?;
        let swap = |x: usize| {
            if x == 0 {
                identity
            } else if x == identity {
                0
            } else {
                x
            }
        };
        let mut t = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                t[swap(a) * n + swap(b)] = swap(table[a * n + b]);
            }
        }
        Self::from_table(n, t)
    }

    /// Builds a group from an operation closure on `{0..n-1}`.
    pub fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(op(a, b));
            }
        }
        Self::normalized(n, table)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + b) % n).expect("cyclic group")
    }

    /// Dihedral group of order `2m`: `r^i s^j` is stored as `i + m*j`.
    pub fn dihedral(m: usize) -> Self {
        Self::from_fn(2 * m, |a, b| {
            let (i, j) = (a % m, a / m);
            let (k, l) = (b % m, b / m);
            // r^i s^j r^k s^l = r^{i ± k} s^{j+l}
            let e = if j == 0 { (i + k) % m } else { (i + m - k) % m };
            e + m * ((j + l) % 2)
        })
        .expect("dihedral group")
    }

    /// Dicyclic group of order `4m`: `⟨a, x | a^{2m}, x² = a^m, x a x⁻¹ = a⁻¹⟩`,
    /// `a^i x^j` stored as `i + 2m*j`. `m = 2` gives the quaternion group.
    pub fn dicyclic(m: usize) -> Self {
        let k = 2 * m;
        Self::from_fn(2 * k, |a, b| {
            let (i, j) = (a % k, a / k);
            let (p, q) = (b % k, b / k);
            if j == 0 {
                (i + p) % k + k * q
            } else if q == 0 {
                // a^i x a^p = a^{i-p} x
                (i + k - p) % k + k
            } else {
                // a^i x a^p x = a^{i-p} x² = a^{i-p+m}
                (i + k - p + m) % k
            }
        })
        .expect("dicyclic group")
    }

    /// Regular representation of a permutation group; element `0` is the identity.
    pub fn from_perm_group(g: &PermGroup) -> Self {
        let id = Permutation::identity(g.degree());
        let mut elems: Vec<Permutation> = vec![id.clone()];
        elems.extend(g.elements().filter(|p| **p != id).cloned());
        let index = |p: &Permutation| elems.binary_search_by(|q| cmp_with_id_first(q, p, &id)).unwrap();
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                table.push(index(&a.compose(b)));
            }
        }
        Self::from_table(n, table).expect("permutation group table")
    }

    /// Alternating group on four points (order 12).
    pub fn alternating4() -> Self {
        let gens = vec![
            Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap(),
            Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
        ];
        Self::from_perm_group(&PermGroup::generated(4, gens))
    }

    /// `(a, b)` stored as `a * |h| + b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let m = h.n;
        Self::from_fn(g.n * m, |x, y| g.op(x / m, y / m) * m + h.op(x % m, y % m)).expect("direct product")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.n).map(|a| self.element_order(a)).collect();
        p.sort_unstable();
        p
    }

    /// Subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: impl IntoIterator<Item = usize>) -> ElementSet {
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut set = ElementSet::empty(self.n);
        set.insert(0);
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.op(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    pub fn is_subgroup(&self, s: &ElementSet) -> bool {
        s.contains(0) && s.iter().all(|a| s.iter().all(|b| s.contains(self.op(a, self.inv(b)))))
    }

    /// Subgroup generated by all commutators `a⁻¹ b⁻¹ a b`, `a ∈ h`, `b ∈ k`.
    pub fn commutator_subgroup(&self, h: &ElementSet, k: &ElementSet) -> ElementSet {
        let mut comms = ElementSet::empty(self.n);
        for a in h.iter() {
            for b in k.iter() {
                let c = self.op(self.op(self.inv(a), self.inv(b)), self.op(a, b));
                comms.insert(c);
            }
        }
        self.subgroup_generated(comms.iter())
    }

    /// `γ₁ = G, γ_{k+1} = [γ_k, G]`, until the series stabilises.
    pub fn lower_central_series(&self) -> Vec<ElementSet> {
        let full = ElementSet::full(self.n);
        let mut series = vec![full.clone()];
        loop {
            let next = self.commutator_subgroup(series.last().unwrap(), &full);
            if &next == series.last().unwrap() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().len() == 1
    }

    /// All subgroups, found by adjoining one element at a time to known subgroups.
    pub fn subgroups(&self) -> Vec<ElementSet> {
        let trivial = self.subgroup_generated([]);
        let mut all = std::collections::BTreeSet::from([trivial.clone()]);
        let mut frontier = vec![trivial];
        while let Some(h) = frontier.pop() {
            for g in 0..self.n {
                if h.contains(g) {
                    continue;
                }
                let k = self.subgroup_generated(h.iter().chain([g]));
                if all.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        all.into_iter().collect()
    }

    /// A small generating set chosen greedily by element order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (1..self.n).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span = self.subgroup_generated([]);
        for a in by_order {
            if span.len() == self.n {
                break;
            }
            if !span.contains(a) {
                gens.push(a);
                span = self.subgroup_generated(gens.iter().copied());
            }
        }
        gens
    }

    /// Calls `f` with every isomorphism `self → other` (as an image vector).
    pub fn for_each_isomorphism<F>(&self, other: &FiniteGroup, mut f: F)
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if self.n != other.n || self.order_profile() != other.order_profile() {
            return;
        }
        let gens = self.generating_set();
        let orders: Vec<usize> = (0..other.n).map(|a| other.element_order(a)).collect();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let o = self.element_order(g);
                (0..other.n).filter(|&b| orders[b] == o).collect()
            })
            .collect();
        // BFS layers for the subgroups generated by the first k generators.
        let layers: Vec<Vec<(usize, usize, usize)>> = (1..=gens.len())
            .map(|k| self.spanning_tree(&gens[..k]))
            .collect();
        let mut images = vec![0; gens.len()];
        let mut map = vec![usize::MAX; self.n];
        let _ = self.iso_rec(other, &gens, &candidates, &layers, 0, &mut images, &mut map, &mut f);
        if gens.is_empty() {
            let _ = f(&[0]);
        }
    }

    /// `(element, parent, generator index)` in BFS order from the identity.
    fn spanning_tree(&self, gens: &[usize]) -> Vec<(usize, usize, usize)> {
        let mut seen = ElementSet::empty(self.n);
        seen.insert(0);
        let mut out = Vec::new();
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for (i, &g) in gens.iter().enumerate() {
                let y = self.op(x, g);
                if seen.insert(y) {
                    out.push((y, x, i));
                    queue.push_back(y);
                }
            }
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn iso_rec<F>(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        layers: &[Vec<(usize, usize, usize)>],
        depth: usize,
        images: &mut [usize],
        map: &mut [usize],
        f: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if depth == gens.len() {
            return if gens.is_empty() { ControlFlow::Continue(()) } else { f(map) };
        }
        for &img in &candidates[depth] {
            images[depth] = img;
            if self.extend_map(other, gens, &layers[depth], &images[..=depth], map) {
                self.iso_rec(other, gens, candidates, layers, depth + 1, images, map, f)?;
            }
        }
        ControlFlow::Continue(())
    }

    /// Defines `map` on the subgroup spanned by `layer`, checking that it is an
    /// injective homomorphism there.
    fn extend_map(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        layer: &[(usize, usize, usize)],
        images: &[usize],
        map: &mut [usize],
    ) -> bool {
        map.iter_mut().for_each(|m| *m = usize::MAX);
        map[0] = 0;
        let mut used = ElementSet::empty(self.n);
        used.insert(0);
        for &(y, parent, i) in layer {
            let v = other.op(map[parent], images[i]);
            if !used.insert(v) {
                return false;
            }
            map[y] = v;
        }
        for &(y, _, _) in layer.iter().chain(std::iter::once(&(0, 0, 0))) {
            for (i, &g) in gens[..images.len()].iter().enumerate() {
                if map[self.op(y, g)] != other.op(map[y], images[i]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn isomorphism(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        let mut found = None;
        self.for_each_isomorphism(other, |m| {
            found = Some(m.to_vec());
            ControlFlow::Break(())
        });
        found
    }

    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        self.isomorphism(other).is_some()
    }

    /// True if `map` is a bijection `self → other` preserving the tables.
    pub fn is_isomorphism(&self, other: &FiniteGroup, map: &[usize]) -> bool {
        map.len() == self.n
            && Permutation::new(map.to_vec()).is_ok()
            && (0..self.n).all(|a| (0..self.n).all(|b| map[self.op(a, b)] == other.op(map[a], map[b])))
    }

    /// Full automorphism group. Orders up to 6 use a scan over all bijections
    /// fixing `0`; larger groups use generator-image backtracking.
    pub fn automorphisms(&self) -> PermGroup {
        if self.n <= 6 {
            self.automorphisms_brute_force()
        } else {
            self.automorphisms_backtrack()
        }
    }

    pub fn automorphisms_backtrack(&self) -> PermGroup {
        let mut auts = Vec::new();
        self.for_each_isomorphism(self, |m| {
            auts.push(Permutation::from_vec_unchecked(m.to_vec()));
            ControlFlow::Continue(())
        });
        PermGroup::from_elements(self.n, auts)
    }

    pub fn automorphisms_brute_force(&self) -> PermGroup {
        let auts = all_permutations(self.n)
            .into_iter()
            .filter(|p| p.apply(0) == 0 && self.is_isomorphism(self, p.images()))
            .collect();
        PermGroup::from_elements(self.n, auts)
    }

    /// Relabels the group along a bijection `map` (new label of `a` is `map[a]`).
    pub fn relabel(&self, map: &[usize]) -> FiniteGroup {
        let mut table = vec![0; self.n * self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                table[map[a] * self.n + map[b]] = map[self.op(a, b)];
            }
        }
        FiniteGroup::from_table(self.n, table).expect("relabelled group")
    }
}

fn cmp_with_id_first(a: &Permutation, b: &Permutation, id: &Permutation) -> std::cmp::Ordering {
    (a != id).cmp(&(b != id)).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_table() -> Vec<usize> {
        (0..16).map(|i| (i / 4 + i % 4) % 4).collect()
    }

    #[test]
    fn trivial_and_cyclic() {
        let g = FiniteGroup::from_table(1, vec![0]).unwrap();
        assert_eq!(g.order(), 1);
        let c4 = FiniteGroup::from_table(4, z4_table()).unwrap();
        assert_eq!(c4, FiniteGroup::cyclic(4));
        assert_eq!(c4.element_order(1), 4);
    }

    #[test]
    fn corrupted_z4_is_rejected() {
        let mut t = z4_table();
        t[15] = 3;
        let err = FiniteGroup::from_table(4, t).unwrap_err();
        assert!(matches!(err, Error::NotLatin { .. } | Error::NotAssociative(..)), "{err:?}");
    }

    #[test]
    fn non_associative_latin_square() {
        // a loop of order 5 that is not a group
        let t = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        assert!(matches!(FiniteGroup::from_table(5, t), Err(Error::NotAssociative(..))));
    }

    #[test]
    fn identity_must_be_zero() {
        // Z/2 with labels swapped
        let t = vec![1, 0, 0, 1];
        assert_eq!(FiniteGroup::from_table(2, t.clone()), Err(Error::IdentityNotZero { found: 1 }));
        assert_eq!(FiniteGroup::normalized(2, t).unwrap(), FiniteGroup::cyclic(2));
    }

    #[test]
    fn families_have_expected_shape() {
        let q8 = FiniteGroup::dicyclic(2);
        assert_eq!(q8.order_profile(), vec![1, 2, 4, 4, 4, 4, 4, 4]);
        let d4 = FiniteGroup::dihedral(4);
        assert_eq!(d4.order_profile(), vec![1, 2, 2, 2, 2, 2, 4, 4]);
        let a4 = FiniteGroup::alternating4();
        assert_eq!(a4.order(), 12);
        assert!(!a4.is_abelian());
        assert_eq!(a4.order_profile(), vec![1, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3]);
    }

    #[test]
    fn abelian_and_nilpotent() {
        let c6 = FiniteGroup::cyclic(6);
        assert!(c6.is_abelian() && c6.is_nilpotent());
        let s3 = FiniteGroup::dihedral(3);
        assert!(!s3.is_abelian());
        assert!(!s3.is_nilpotent());
        let lcs = s3.lower_central_series();
        assert_eq!(lcs.last().unwrap().len(), 3);
        let q8 = FiniteGroup::dicyclic(2);
        assert!(!q8.is_abelian() && q8.is_nilpotent());
        assert_eq!(q8.lower_central_series().len(), 3);
    }

    #[test]
    fn automorphism_orders() {
        assert_eq!(FiniteGroup::cyclic(2).automorphisms().order(), 1);
        let v4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert_eq!(v4.automorphisms_brute_force().order(), 6);
        assert_eq!(v4.automorphisms_backtrack().order(), 6);
        // |Aut(Q8)| = 24, oracle: scan of all 8! bijections
        let q8 = FiniteGroup::dicyclic(2);
        assert_eq!(q8.automorphisms_brute_force().order(), 24);
        assert_eq!(q8.automorphisms().order(), 24);
    }

    #[test]
    fn backtracker_agrees_with_scan_up_to_six() {
        for g in [
            FiniteGroup::cyclic(5),
            FiniteGroup::cyclic(6),
            FiniteGroup::dihedral(3),
            FiniteGroup::cyclic(4),
        ] {
            let a: Vec<_> = g.automorphisms_backtrack().elements().cloned().collect();
            let b: Vec<_> = g.automorphisms_brute_force().elements().cloned().collect();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn isomorphism_tests() {
        let c2 = FiniteGroup::cyclic(2);
        let c3 = FiniteGroup::cyclic(3);
        assert!(!FiniteGroup::cyclic(4).is_isomorphic(&FiniteGroup::direct_product(&c2, &c2)));
        let c6 = FiniteGroup::cyclic(6);
        let c2c3 = FiniteGroup::direct_product(&c2, &c3);
        let w = c6.isomorphism(&c2c3).unwrap();
        assert!(c6.is_isomorphism(&c2c3, &w));
        assert!(!FiniteGroup::dihedral(4).is_isomorphic(&FiniteGroup::dicyclic(2)));
        assert!(FiniteGroup::trivial().is_isomorphic(&FiniteGroup::trivial()));
    }

    #[test]
    fn subgroup_lattice() {
        let v4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert_eq!(v4.subgroups().len(), 5);
        assert_eq!(FiniteGroup::dihedral(4).subgroups().len(), 10);
        assert_eq!(FiniteGroup::dicyclic(2).subgroups().len(), 6);
        let c2 = FiniteGroup::cyclic(2);
        let e8 = FiniteGroup::direct_product(&v4, &c2);
        assert_eq!(e8.subgroups().len(), 16);
        assert_eq!(e8.generating_set().len(), 3);
    }
}
