//! Cycle sets and their linear and skew refinements.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::{conjugators, Permutation};
use crate::solution::Solution;

/// `(X, ·)` with bijective left translations `φ_x = (y ↦ x·y)` and
/// `(x·y)·(x·z) = (y·x)·(y·z)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycleSet {
    n: usize,
    dot: Vec<usize>,
}

/// Diagonal followed by the row-major table, minimised over all relabelings.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CycleSetKey(pub Vec<u8>);

impl CycleSet {
    pub fn new(n: usize, dot: Vec<usize>) -> Result<Self> {
        if n == 0 || dot.len() != n * n {
            return Err(Error::BadShape { len: dot.len(), expected: n * n });
        }
        if let Some(&value) = dot.iter().find(|&&v| v >= n) {
            return Err(Error::OutOfRange { value, n });
        }
        for x in 0..n {
            if Permutation::new(dot[x * n..(x + 1) * n].to_vec()).is_err() {
                return Err(Error::RowNotPermutation { row: x });
            }
        }
        let cs = CycleSet { n, dot };
        if let Some((x, y, z)) = cs.axiom_witness() {
            return Err(Error::AxiomFails(x, y, z));
        }
        Ok(cs)
    }

    pub(crate) fn from_table_unchecked(n: usize, dot: Vec<usize>) -> Self {
        CycleSet { n, dot }
    }

    /// `x·y = y`.
    pub fn trivial(n: usize) -> Self {
        CycleSet { n, dot: (0..n * n).map(|i| i % n).collect() }
    }

    fn axiom_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let l = self.dot(self.dot(x, y), self.dot(x, z));
                    let r = self.dot(self.dot(y, x), self.dot(y, z));
                    if l != r {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dot(&self, x: usize, y: usize) -> usize {
        self.dot[x * self.n + y]
    }

    pub fn table(&self) -> &[usize] {
        &self.dot
    }

    pub fn diagonal(&self) -> Vec<usize> {
        (0..self.n).map(|x| self.dot(x, x)).collect()
    }

    /// True when `x ↦ x·x` is bijective.
    pub fn is_nondegenerate(&self) -> bool {
        Permutation::new(self.diagonal()).is_ok()
    }

    /// `x * y`: the unique `z` with `x·z = y`.
    pub fn star_inverse(&self, x: usize, y: usize) -> usize {
        (0..self.n).find(|&z| self.dot(x, z) == y).expect("rows are permutations")
    }

    /// `r(x, y) = ((y*x)·y, y*x)`.
    pub fn to_solution(&self) -> Result<Solution> {
        if !self.is_nondegenerate() {
            return Err(Error::Degenerate);
        }
        let n = self.n;
        let mut sigma = vec![0; n * n];
        let mut tau = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let t = self.star_inverse(y, x);
                sigma[x * n + y] = self.dot(t, y);
                tau[y * n + x] = t;
            }
        }
        Solution::from_tables(n, &sigma, &tau)
    }

    /// Inverse of [`to_solution`](Self::to_solution): `x·y = τ_x⁻¹(y)`.
    pub fn from_solution(s: &Solution) -> Result<Self> {
        if !s.is_involutive() {
            return Err(Error::NotInvolutive);
        }
        let n = s.size();
        let mut dot = vec![0; n * n];
        for x in 0..n {
            let inv = s.tau(x).inverse();
            dot[x * n..(x + 1) * n].copy_from_slice(inv.images());
        }
        CycleSet::new(n, dot)
    }

    /// Transports along `pi`: `(π·C)(πx, πy) = π(x·y)`.
    pub fn relabel(&self, pi: &Permutation) -> CycleSet {
        let n = self.n;
        let mut dot = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                dot[pi.apply(x) * n + pi.apply(y)] = pi.apply(self.dot(x, y));
            }
        }
        CycleSet { n, dot }
    }

    fn encode(&self) -> Vec<u8> {
        self.diagonal().into_iter().chain(self.dot.iter().copied()).map(|v| v as u8).collect()
    }

    /// The least encoding is reached only by relabelings that send the
    /// diagonal to its least conjugate, so only those are scanned.
    pub fn canonical_key(&self) -> CycleSetKey {
        assert!(self.n <= u8::MAX as usize);
        let d = Permutation::new(self.diagonal()).expect("finite cycle sets are non-degenerate");
        conjugators(&d, &d.min_conjugate())
            .iter()
            .map(|pi| self.relabel(pi).encode())
            .min()
            .map(CycleSetKey)
            .unwrap()
    }

    pub fn canonical_key_brute_force(&self) -> CycleSetKey {
        crate::perm::all_permutations(self.n)
            .iter()
            .map(|pi| self.relabel(pi).encode())
            .min()
            .map(CycleSetKey)
            .unwrap()
    }

    pub fn canonical_form(&self) -> CycleSet {
        let key = self.canonical_key();
        CycleSet { n: self.n, dot: key.0[self.n..].iter().map(|&v| v as usize).collect() }
    }

    pub fn is_isomorphic(&self, other: &CycleSet) -> bool {
        self.n == other.n && self.canonical_key() == other.canonical_key()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LinearKind {
    /// Abelian group.
    Linear,
    /// Any group.
    Skew,
}

/// A cycle set on the elements of a group with
/// `a·(b+c) = (a·b)+(a·c)` and `(a+b)·c = (a·b)·(a·c)`.
#[derive(Clone, Debug)]
pub struct LinearCycleSet {
    group: FiniteGroup,
    cycle_set: CycleSet,
    kind: LinearKind,
}

impl LinearCycleSet {
    pub fn new(group: FiniteGroup, dot: Vec<usize>, kind: LinearKind) -> Result<Self> {
        let n = group.order();
        let cycle_set = CycleSet::new(n, dot)?;
        if kind == LinearKind::Linear && !group.is_abelian() {
            return Err(Error::NotAbelian);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let d = |x, y| cycle_set.dot(x, y);
                    if d(a, group.op(b, c)) != group.op(d(a, b), d(a, c))
                        || d(group.op(a, b), c) != d(d(a, b), d(a, c))
                    {
                        return Err(Error::AxiomFails(a, b, c));
                    }
                }
            }
        }
        Ok(LinearCycleSet { group, cycle_set, kind })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn cycle_set(&self) -> &CycleSet {
        &self.cycle_set
    }

    pub fn kind(&self) -> LinearKind {
        self.kind
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_and_trivial() {
        let one = CycleSet::new(1, vec![0]).unwrap();
        assert!(one.is_nondegenerate());
        let t = CycleSet::new(3, CycleSet::trivial(3).table().to_vec()).unwrap();
        assert_eq!(t.star_inverse(1, 2), 2);
        let s = t.to_solution().unwrap();
        assert_eq!(s, Solution::flip(3));
        assert_eq!(CycleSet::from_solution(&s).unwrap(), t);
    }

    #[test]
    fn star_inverse_of_transposition() {
        let cs = CycleSet::new(2, vec![1, 0, 1, 0]).unwrap();
        assert_eq!(cs.star_inverse(0, 0), 1);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(cs.dot(x, cs.star_inverse(x, y)), y);
            }
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(CycleSet::new(2, vec![0, 0, 0, 1]), Err(Error::RowNotPermutation { row: 0 }));
        // φ_0 = (0 1), φ_1 = id, φ_2 = id on three points breaks the axiom
        let err = CycleSet::new(3, vec![1, 0, 2, 0, 1, 2, 0, 1, 2]).unwrap_err();
        assert!(matches!(err, Error::AxiomFails(..)));
    }

    #[test]
    fn permutation_cycle_set_gives_permutation_solution() {
        // φ_x = g for all x gives σ_x = g, τ_y = g⁻¹
        let g = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let dot: Vec<usize> = (0..3).flat_map(|_| g.images().to_vec()).collect();
        let cs = CycleSet::new(3, dot).unwrap();
        let s = cs.to_solution().unwrap();
        assert_eq!(s, Solution::permutation_solution(&g, &g.inverse()).unwrap());
        assert!(s.is_involutive());
    }

    #[test]
    fn non_involutive_rejected() {
        let g = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let s = Solution::permutation_solution(&g, &g).unwrap();
        assert_eq!(CycleSet::from_solution(&s), Err(Error::NotInvolutive));
    }

    #[test]
    fn canonical_key_matches_brute_force() {
        let g = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap();
        let dot: Vec<usize> = (0..4).flat_map(|_| g.images().to_vec()).collect();
        let cs = CycleSet::new(4, dot).unwrap();
        assert_eq!(cs.canonical_key(), cs.canonical_key_brute_force());
        let pi = Permutation::new(vec![2, 0, 3, 1]).unwrap();
        assert_eq!(cs.relabel(&pi).canonical_key(), cs.canonical_key());
    }

    #[test]
    fn linear_requires_abelian() {
        let s3 = FiniteGroup::dihedral(3);
        let dot = CycleSet::trivial(6).table().to_vec();
        assert_eq!(LinearCycleSet::new(s3.clone(), dot.clone(), LinearKind::Linear).unwrap_err(), Error::NotAbelian);
        assert!(LinearCycleSet::new(s3, dot, LinearKind::Skew).is_ok());
    }
}
