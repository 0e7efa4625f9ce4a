//! Skew left braces: two group structures `(A, +)` and `(A, ∘)` on the same
//! index set with `a∘(b+c) = a∘b − a + a∘c`.

use std::ops::ControlFlow;

use crate::bitset::ElementSet;
use crate::cycle_set::{LinearCycleSet, LinearKind};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::{PermGroup, Permutation};
use crate::solution::Solution;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewBrace {
    add: FiniteGroup,
    circ: FiniteGroup,
    lambda: Vec<Permutation>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AdditiveType {
    Abelian,
    Nilpotent,
    Other,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SubsetKind {
    Subgroup,
    LeftIdeal,
    Ideal,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BraceSubset {
    pub elements: ElementSet,
    pub kind: SubsetKind,
}

fn find_identity(n: usize, t: &[usize]) -> Option<usize> {
    (0..n).find(|&e| (0..n).all(|a| t[e * n + a] == a && t[a * n + e] == a))
}

impl SkewBrace {
    pub fn new(add: FiniteGroup, circ: FiniteGroup) -> Result<Self> {
        let n = add.order();
        if circ.order() != n {
            return Err(Error::OrderMismatch(n, circ.order()));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = circ.op(a, b);
                let minus_a = add.inv(a);
                for c in 0..n {
                    let lhs = circ.op(a, add.op(b, c));
                    let rhs = add.op(add.op(ab, minus_a), circ.op(a, c));
                    if lhs != rhs {
                        return Err(Error::AxiomFails(a, b, c));
                    }
                }
            }
        }
        let lambda = (0..n)
            .map(|a| Permutation::from_vec_unchecked((0..n).map(|b| add.op(add.inv(a), circ.op(a, b))).collect()))
            .collect();
        let brace = SkewBrace { add, circ, lambda };
        debug_assert!(brace.lambda_is_action());
        Ok(brace)
    }

    /// From raw row-major tables. Both identities must coincide and be `0`.
    pub fn from_tables(n: usize, add: Vec<usize>, circ: Vec<usize>) -> Result<Self> {
        if add.len() == n * n && circ.len() == n * n && add.iter().chain(&circ).all(|&v| v < n) {
            if let (Some(e), Some(f)) = (find_identity(n, &add), find_identity(n, &circ)) {
                if e != f {
                    return Err(Error::IdentityMismatch);
                }
            }
        }
        Self::new(FiniteGroup::from_table(n, add)?, FiniteGroup::from_table(n, circ)?)
    }

    /// `a∘b = a + f_a(b)`; valid exactly when `f_{a∘b} = f_a f_b`.
    pub fn from_lambda(add: FiniteGroup, lambda: &[Permutation]) -> Result<Self> {
        let n = add.order();
        let circ = FiniteGroup::from_table(
            n,
            (0..n * n).map(|i| add.op(i / n, lambda[i / n].apply(i % n))).collect(),
        )?;
        Self::new(add, circ)
    }

    /// `a∘b = a + b`.
    pub fn trivial(g: FiniteGroup) -> Self {
        Self::new(g.clone(), g).expect("trivial brace")
    }

    /// `a∘b = a + b + ab` on `{0, 2, 4, 6} ⊂ ℤ/8`, element `k` standing for `2k`.
    pub fn radical_ring_2z8() -> Self {
        let add = FiniteGroup::cyclic(4);
        let circ = FiniteGroup::from_fn(4, |a, b| {
            let (x, y) = (2 * a, 2 * b);
            ((x + y + x * y) % 8) / 2
        })
        .unwrap();
        Self::new(add, circ).expect("radical ring brace")
    }

    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn additive(&self) -> &FiniteGroup {
        &self.add
    }

    pub fn multiplicative(&self) -> &FiniteGroup {
        &self.circ
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.op(a, b)
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.add.inv(a)
    }

    #[inline]
    pub fn circ(&self, a: usize, b: usize) -> usize {
        self.circ.op(a, b)
    }

    /// `a'`, the inverse in `(A, ∘)`.
    #[inline]
    pub fn circ_inv(&self, a: usize) -> usize {
        self.circ.inv(a)
    }

    /// `λ_a(b) = −a + a∘b`.
    pub fn lambda(&self, a: usize) -> &Permutation {
        &self.lambda[a]
    }

    /// `λ_{a∘b} = λ_a λ_b` and `λ_0 = id`.
    pub fn lambda_is_action(&self) -> bool {
        let n = self.order();
        self.lambda[0].is_identity()
            && (0..n).all(|a| (0..n).all(|b| self.lambda[self.circ(a, b)] == self.lambda[a].compose(&self.lambda[b])))
    }

    /// `a*b = −a + a∘b − b`.
    #[inline]
    pub fn star(&self, a: usize, b: usize) -> usize {
        self.add(self.add(self.neg(a), self.circ(a, b)), self.neg(b))
    }

    pub fn is_right_brace(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.add(a, b);
                (0..n).all(|c| {
                    self.circ(ab, c) == self.add(self.add(self.circ(a, c), self.neg(c)), self.circ(b, c))
                })
            })
        })
    }

    pub fn is_two_sided(&self) -> bool {
        self.is_right_brace()
    }

    pub fn additive_type(&self) -> AdditiveType {
        if self.add.is_abelian() {
            AdditiveType::Abelian
        } else if self.add.is_nilpotent() {
            AdditiveType::Nilpotent
        } else {
            AdditiveType::Other
        }
    }

    pub fn is_abelian_type(&self) -> bool {
        self.add.is_abelian()
    }

    /// `r_A(a, b) = (−a + a∘b, (−a + a∘b)' ∘ a ∘ b)`.
    pub fn solution(&self) -> Solution {
        let n = self.order();
        let mut sigma = vec![0; n * n];
        let mut tau = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let u = self.lambda[a].apply(b);
                sigma[a * n + b] = u;
                tau[b * n + a] = self.circ(self.circ(self.circ_inv(u), a), b);
            }
        }
        Solution::from_tables(n, &sigma, &tau).expect("r_A is a solution")
    }

    pub fn is_star_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.star(a, b);
                (0..n).all(|c| self.star(ab, c) == self.star(a, self.star(b, c)))
            })
        })
    }

    /// Subgroup of `(A, +)` generated by `{u*v : u ∈ s, v ∈ t}`.
    pub fn star_product(&self, s: &ElementSet, t: &ElementSet) -> ElementSet {
        let gens: Vec<usize> = s.iter().flat_map(|u| t.iter().map(move |v| (u, v))).map(|(u, v)| self.star(u, v)).collect();
        self.add.subgroup_generated(gens)
    }

    fn is_left_ideal(&self, l: &ElementSet) -> bool {
        (0..self.order()).all(|a| l.iter().all(|x| l.contains(self.star(a, x))))
    }

    fn is_ideal(&self, l: &ElementSet) -> bool {
        let n = self.order();
        self.is_left_ideal(l)
            && (0..n).all(|a| {
                l.iter().all(|i| l.contains(self.add(self.add(a, i), self.neg(a))))
                    && ElementSet::from_iter(n, l.iter().map(|i| self.circ(a, i)))
                        == ElementSet::from_iter(n, l.iter().map(|i| self.circ(i, a)))
            })
    }

    pub fn left_ideals(&self) -> Vec<BraceSubset> {
        self.add
            .subgroups()
            .into_iter()
            .filter(|s| self.is_left_ideal(s))
            .map(|elements| BraceSubset { elements, kind: SubsetKind::LeftIdeal })
            .collect()
    }

    pub fn ideals(&self) -> Vec<BraceSubset> {
        self.add
            .subgroups()
            .into_iter()
            .filter(|s| self.is_ideal(s))
            .map(|elements| BraceSubset { elements, kind: SubsetKind::Ideal })
            .collect()
    }

    /// No ideals besides `{0}` and `A`; the one-element brace is not simple.
    pub fn is_simple(&self) -> bool {
        self.order() > 1 && self.ideals().len() == 2
    }

    /// `I*J ≠ 0` for every pair of non-zero ideals.
    pub fn is_prime(&self) -> bool {
        let nonzero: Vec<ElementSet> = self.ideals().into_iter().map(|i| i.elements).filter(|s| s.len() > 1).collect();
        nonzero.iter().all(|i| nonzero.iter().all(|j| self.star_product(i, j).len() > 1))
    }

    fn series(&self, left: bool) -> Vec<ElementSet> {
        let full = ElementSet::full(self.order());
        let mut s = vec![full.clone()];
        loop {
            let last = s.last().unwrap();
            let next = if left { self.star_product(&full, last) } else { self.star_product(last, &full) };
            if &next == last {
                return s;
            }
            s.push(next);
        }
    }

    /// `A¹ = A`, `A^{k+1} = A * A^k`, listed until it stabilises.
    pub fn left_series(&self) -> Vec<ElementSet> {
        self.series(true)
    }

    /// `A⁽¹⁾ = A`, `A⁽ᵏ⁺¹⁾ = A⁽ᵏ⁾ * A`, listed until it stabilises.
    pub fn right_series(&self) -> Vec<ElementSet> {
        self.series(false)
    }

    pub fn is_left_nilpotent(&self) -> bool {
        self.left_series().last().unwrap().len() == 1
    }

    pub fn is_right_nilpotent(&self) -> bool {
        self.right_series().last().unwrap().len() == 1
    }

    pub fn is_strongly_nilpotent(&self) -> bool {
        self.is_left_nilpotent() && self.is_right_nilpotent()
    }

    /// Every element has some length `k ≤ bound` at which all bracketed
    /// `*`-products of `k` copies of it vanish.
    pub fn is_strongly_nil_with_bound(&self, bound: usize) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            let mut products: Vec<ElementSet> = vec![ElementSet::empty(n), ElementSet::from_iter(n, [a])];
            if a == 0 {
                return true;
            }
            for k in 2..=bound {
                let mut pk = ElementSet::empty(n);
                for i in 1..k {
                    for u in products[i].iter() {
                        for v in products[k - i].iter() {
                            pk.insert(self.star(u, v));
                        }
                    }
                }
                if pk.len() == 1 && pk.contains(0) {
                    return true;
                }
                products.push(pk);
            }
            false
        })
    }

    /// Strong nil test with products of up to `n² + 1` factors.
    pub fn is_strongly_nil(&self) -> bool {
        let n = self.order();
        self.is_strongly_nil_with_bound(n * n + 1)
    }

    /// `ρ₁(a) = a`, `ρ_{k+1}(a) = ρ_k(a) * a` reaches `0` for every `a`.
    pub fn is_right_nil(&self) -> bool {
        let n = self.order();
        // the sequence is eventually periodic within n steps, and 0 is absorbing
        (0..n).all(|a| {
            let mut x = a;
            for _ in 0..=n {
                if x == 0 {
                    return true;
                }
                x = self.star(x, a);
            }
            false
        })
    }

    /// Calls `f` with each bijection preserving both operations.
    pub fn for_each_isomorphism<F>(&self, other: &SkewBrace, mut f: F)
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if self.order() != other.order() || self.circ.order_profile() != other.circ.order_profile() {
            return;
        }
        let n = self.order();
        self.add.for_each_isomorphism(&other.add, |m| {
            if (0..n).all(|a| (0..n).all(|b| m[self.circ(a, b)] == other.circ(m[a], m[b]))) {
                f(m)
            } else {
                ControlFlow::Continue(())
            }
        });
    }

    pub fn isomorphism(&self, other: &SkewBrace) -> Option<Vec<usize>> {
        let mut found = None;
        self.for_each_isomorphism(other, |m| {
            found = Some(m.to_vec());
            ControlFlow::Break(())
        });
        found
    }

    pub fn is_isomorphic(&self, other: &SkewBrace) -> bool {
        self.isomorphism(other).is_some()
    }

    pub fn automorphisms(&self) -> PermGroup {
        let mut auts = Vec::new();
        self.for_each_isomorphism(self, |m| {
            auts.push(Permutation::from_vec_unchecked(m.to_vec()));
            ControlFlow::Continue(())
        });
        PermGroup::from_elements(self.order(), auts)
    }

    /// Relabels along `map` (new label of `a` is `map[a]`, with `map[0] = 0`).
    pub fn relabel(&self, map: &[usize]) -> SkewBrace {
        SkewBrace::new(self.add.relabel(map), self.circ.relabel(map)).expect("relabelled brace")
    }

    /// Least relabeled `∘` table over the given additive automorphisms.
    pub fn circ_key_under(&self, auts: &[Permutation]) -> Vec<u16> {
        let n = self.order();
        let mut best: Option<Vec<u16>> = None;
        let mut buf = vec![0u16; n * n];
        for phi in auts {
            for a in 0..n {
                for b in 0..n {
                    buf[phi.apply(a) * n + phi.apply(b)] = phi.apply(self.circ(a, b)) as u16;
                }
            }
            if best.as_ref().is_none_or(|b| buf < *b) {
                best = Some(buf.clone());
            }
        }
        best.unwrap()
    }

    /// `r_A` restricted to `subset × subset`, if both coordinates stay inside.
    /// Elements are renumbered in increasing order.
    pub fn restrict_solution(&self, subset: &[usize]) -> Option<Solution> {
        let n = self.order();
        let mut xs = subset.to_vec();
        xs.sort_unstable();
        xs.dedup();
        if xs.is_empty() {
            return None;
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &x) in xs.iter().enumerate() {
            pos[x] = i;
        }
        let m = xs.len();
        let mut sigma = vec![0; m * m];
        let mut tau = vec![0; m * m];
        for (i, &a) in xs.iter().enumerate() {
            for (j, &b) in xs.iter().enumerate() {
                let u = self.lambda[a].apply(b);
                let v = self.circ(self.circ(self.circ_inv(u), a), b);
                if pos[u] == usize::MAX || pos[v] == usize::MAX {
                    return None;
                }
                sigma[i * m + j] = pos[u];
                tau[j * m + i] = pos[v];
            }
        }
        Solution::from_tables(m, &sigma, &tau).ok()
    }

    /// The restriction exists and is a Gateva–Ivanova counterexample.
    pub fn is_gi_pair(&self, subset: &[usize]) -> bool {
        self.restrict_solution(subset)
            .is_some_and(|s| crate::retraction::is_gi_counterexample(&s))
    }

    /// `{a*x + x : a ∈ A}`. Reads the juxtaposition `ax` as `a*x`.
    pub fn one_generator_orbit(&self, x: usize) -> ElementSet {
        let n = self.order();
        ElementSet::from_iter(n, (0..n).map(|a| self.add(self.star(a, x), x)))
    }

    /// Smallest subset containing `gens` closed under `+`, `−`, `∘` and `∘`-inverse.
    pub fn generated_subbrace(&self, gens: &[usize]) -> BraceSubset {
        let n = self.order();
        let mut set = ElementSet::from_iter(n, gens.iter().copied().chain([0]));
        loop {
            let cur = set.to_vec();
            let mut grew = false;
            for &a in &cur {
                grew |= set.insert(self.neg(a));
                grew |= set.insert(self.circ_inv(a));
                for &b in &cur {
                    grew |= set.insert(self.add(a, b));
                    grew |= set.insert(self.circ(a, b));
                }
            }
            if !grew {
                return BraceSubset { elements: set, kind: SubsetKind::Subgroup };
            }
        }
    }

    pub fn is_one_generator(&self) -> bool {
        (0..self.order()).any(|x| self.generated_subbrace(&[x]).elements.len() == self.order())
    }

    /// `a·b = λ_a⁻¹(b)`; linear when `(A, +)` is abelian, skew otherwise.
    pub fn to_linear_cycle_set(&self) -> Result<LinearCycleSet> {
        let n = self.order();
        let dot = (0..n).flat_map(|a| self.lambda[a].inverse().images().to_vec()).collect();
        let kind = if self.is_abelian_type() { LinearKind::Linear } else { LinearKind::Skew };
        LinearCycleSet::new(self.add.clone(), dot, kind)
    }
}

/// Checks the skew brace axioms for the integer-exponent brace
/// `g^k + g^l = g^{k + (−1)^k l}`, `g^k ∘ g^l = g^{k+l}` on a window of
/// exponents; returns the first failing triple.
pub fn verify_dihedral_z_brace(bound: i64) -> std::result::Result<(), (i64, i64, i64)> {
    let add = |k: i64, l: i64| if k % 2 == 0 { k + l } else { k - l };
    verify_exponent_brace(bound, add, |k, l| k + l)
}

/// Generic window check for a brace on `{g^k : k ∈ ℤ}` given both operations
/// on exponents: group laws of both operations and the left brace identity.
pub fn verify_exponent_brace(
    bound: i64,
    add: impl Fn(i64, i64) -> i64,
    circ: impl Fn(i64, i64) -> i64,
) -> std::result::Result<(), (i64, i64, i64)> {
    let range = -bound..=bound;
    // additive inverse: the unique m with k + m = 0, searched near ±k
    let neg = |k: i64| [-k, k].into_iter().find(|&m| add(k, m) == 0 && add(m, k) == 0);
    for k in range.clone() {
        if add(0, k) != k || add(k, 0) != k || circ(0, k) != k || circ(k, 0) != k {
            return Err((k, 0, 0));
        }
        if neg(k).is_none() || circ(k, -k) != 0 {
            return Err((k, k, k));
        }
    }
    for a in range.clone() {
        let minus_a = neg(a).ok_or((a, a, a))?;
        for b in range.clone() {
            for c in range.clone() {
                if add(add(a, b), c) != add(a, add(b, c)) || circ(circ(a, b), c) != circ(a, circ(b, c)) {
                    return Err((a, b, c));
                }
                let lhs = circ(a, add(b, c));
                let rhs = add(add(circ(a, b), minus_a), circ(a, c));
                if lhs != rhs {
                    return Err((a, b, c));
                }
            }
        }
    }
    Ok(())
}
