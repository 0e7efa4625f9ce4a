//! Permutations of `{0..n-1}` and the permutation groups they generate.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0..n-1}` stored as its image sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n {
                return Err(Error::OutOfRange { value: v, n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotPermutation { value: v });
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_vec_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// Builds a permutation from disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= n {
                    return Err(Error::OutOfRange { value: a, n });
                }
                if std::mem::replace(&mut touched[a], true) {
                    return Err(Error::NotPermutation { value: a });
                }
                images[a] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    /// `self ∘ p ∘ self⁻¹`.
    pub fn conjugate(&self, p: &Permutation) -> Self {
        let mut images = vec![0; p.degree()];
        for x in 0..p.degree() {
            images[self.images[x]] = self.images[p.images[x]];
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Cycles, each starting at its least point, listed by least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths in ascending order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().map(Vec::len).fold(1, lcm)
    }

    /// Lexicographically least image sequence among all conjugates of `self`.
    pub fn min_conjugate(&self) -> Self {
        min_perm_of_type(&self.cycle_type())
    }

    /// Least conjugate `π ∘ self ∘ π⁻¹` among those with `π(x) = 0`: the cycle
    /// through `x` becomes `(0 1 … L−1)` and the rest is least on `L..n`.
    pub fn min_conjugate_pinned(&self, x: usize) -> Self {
        let cycles = self.cycles();
        let at = cycles.iter().position(|c| c.contains(&x)).expect("x in range");
        let len = cycles[at].len();
        let mut rest: Vec<usize> =
            cycles.iter().enumerate().filter(|&(i, _)| i != at).map(|(_, c)| c.len()).collect();
        rest.sort_unstable();
        let mut images: Vec<usize> = (0..len).map(|i| (i + 1) % len).collect();
        images.extend(min_perm_of_type(&rest).images.into_iter().map(|v| v + len));
        Permutation { images }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// The least image sequence with the given cycle type: cycles by ascending
/// length on consecutive blocks, each block `k -> k+1 -> ... -> k`.
pub fn min_perm_of_type(cycle_type: &[usize]) -> Permutation {
    let mut lengths = cycle_type.to_vec();
    lengths.sort_unstable();
    let n: usize = lengths.iter().sum();
    let mut images = Vec::with_capacity(n);
    let mut start = 0;
    for len in lengths {
        for i in 0..len {
            images.push(start + (i + 1) % len);
        }
        start += len;
    }
    Permutation { images }
}

/// All `π` with `π ∘ from ∘ π⁻¹ = to`. Empty when the cycle types differ.
pub fn conjugators(from: &Permutation, to: &Permutation) -> Vec<Permutation> {
    conjugators_pinned(from, to, None)
}

/// Like [`conjugators`], restricted to `π` with `π(pin.0) = pin.1`.
pub fn conjugators_pinned(from: &Permutation, to: &Permutation, pin: Option<(usize, usize)>) -> Vec<Permutation> {
    assert_eq!(from.degree(), to.degree());
    if from.cycle_type() != to.cycle_type() {
        return Vec::new();
    }
    let mut src = from.cycles();
    if let Some((x, _)) = pin {
        // the pinned point's cycle goes first so the pin prunes at the top level
        let i = src.iter().position(|c| c.contains(&x)).unwrap();
        src.swap(0, i);
    }
    let dst = to.cycles();
    let mut used = vec![false; dst.len()];
    let mut images = vec![usize::MAX; from.degree()];
    let mut out = Vec::new();
    conj_rec(&src, &dst, 0, pin, &mut used, &mut images, &mut out);
    out
}

fn conj_rec(
    src: &[Vec<usize>],
    dst: &[Vec<usize>],
    i: usize,
    pin: Option<(usize, usize)>,
    used: &mut [bool],
    images: &mut [usize],
    out: &mut Vec<Permutation>,
) {
    if i == src.len() {
        out.push(Permutation { images: images.to_vec() });
        return;
    }
    let c = &src[i];
    let len = c.len();
    for j in 0..dst.len() {
        if used[j] || dst[j].len() != len {
            continue;
        }
        used[j] = true;
        for rot in 0..len {
            for (t, &p) in c.iter().enumerate() {
                images[p] = dst[j][(t + rot) % len];
            }
            if i == 0 && pin.is_some_and(|(x, y)| images[x] != y) {
                continue;
            }
            conj_rec(src, dst, i + 1, pin, used, images, out);
        }
        used[j] = false;
    }
}

/// All permutations of degree `n` in lexicographic order (Heap's algorithm would
/// not give a stable order; this is only meant for small `n`).
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation { images: cur.clone() });
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// A finite permutation group given by generators together with its full element set.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: BTreeSet<Permutation>,
}

impl PermGroup {
    /// Closure of `generators` under composition.
    pub fn generated(degree: usize, generators: Vec<Permutation>) -> Self {
        assert!(generators.iter().all(|g| g.degree() == degree));
        let id = Permutation::identity(degree);
        let mut elements = BTreeSet::new();
        elements.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = g.compose(&x);
                if !elements.contains(&y) {
                    elements.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        PermGroup { degree, generators, elements }
    }

    /// Wraps an element set already known to be a group (closed, with identity).
    pub(crate) fn from_elements(degree: usize, elements: Vec<Permutation>) -> Self {
        let elements: BTreeSet<_> = elements.into_iter().collect();
        debug_assert!(elements.contains(&Permutation::identity(degree)));
        let generators = elements.iter().filter(|p| !p.is_identity()).cloned().collect();
        PermGroup { degree, generators, elements }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = &Permutation> {
        self.elements.iter()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.contains(p)
    }

    /// Orbit of `x` under the natural action.
    pub fn orbit(&self, x: usize) -> BTreeSet<usize> {
        let mut orbit = BTreeSet::from([x]);
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            for g in &self.generators {
                let z = g.apply(y);
                if orbit.insert(z) {
                    stack.push(z);
                }
            }
        }
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbit(0).len() == self.degree
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.elements.iter().all(|p| other.contains(p))
    }
}
