//! Retraction of involutive solutions, multipermutation level and
//! Gateva–Ivanova counterexample scanning.

use std::time::Instant;

use crate::enum_solutions::{enumerate_cycle_sets, Budget, Enumeration, EnumerationTask, Filter};
use crate::error::{Error, Result};
use crate::solution::Solution;

/// Classes of `x ~ y ⟺ σ_x = σ_y`, numbered by least member.
pub fn sigma_classes(s: &Solution) -> Vec<usize> {
    let n = s.size();
    let mut class = vec![usize::MAX; n];
    let mut k = 0;
    for x in 0..n {
        if class[x] != usize::MAX {
            continue;
        }
        for y in x..n {
            if class[y] == usize::MAX && s.sigma(y) == s.sigma(x) {
                class[y] = k;
            }
        }
        k += 1;
    }
    class
}

/// `Ret(X, r)`: the solution induced on σ-classes.
pub fn retract(s: &Solution) -> Result<Solution> {
    if !s.is_involutive() {
        return Err(Error::NotInvolutive);
    }
    let class = sigma_classes(s);
    let k = class.iter().max().map_or(0, |m| m + 1);
    let mut partition = vec![Vec::new(); k];
    for (x, &c) in class.iter().enumerate() {
        partition[c].push(x);
    }
    let quotient = s.quotient(&partition).ok_or(Error::QuotientNotWellDefined)?;
    debug_assert!(quotient.is_involutive());
    Ok(quotient)
}

/// `[s, Ret(s), Ret²(s), …]` until a singleton or a fixed size is reached.
#[derive(Clone, Debug)]
pub struct RetractionChain {
    pub stages: Vec<Solution>,
    /// Least `m ≥ 1` with `|Ret^m(s)| = 1`; `None` when the chain stalls.
    pub level: Option<usize>,
}

pub fn retraction_chain(s: &Solution) -> Result<RetractionChain> {
    let mut stages = vec![s.clone()];
    loop {
        let cur = stages.last().unwrap();
        if cur.size() == 1 {
            let level = (stages.len() - 1).max(1);
            return Ok(RetractionChain { stages, level: Some(level) });
        }
        let next = retract(cur)?;
        if next.size() == cur.size() {
            return Ok(RetractionChain { stages, level: None });
        }
        stages.push(next);
    }
}

/// Multipermutation level; a singleton has level 1.
pub fn multipermutation_level(s: &Solution) -> Result<Option<usize>> {
    Ok(retraction_chain(s)?.level)
}

/// `Ret(s) = s`, i.e. all `σ_x` are distinct.
pub fn is_irretractable(s: &Solution) -> Result<bool> {
    if !s.is_involutive() {
        return Err(Error::NotInvolutive);
    }
    Ok(s.size() > 1 && sigma_classes(s).iter().enumerate().all(|(x, &c)| c == x))
}

/// Square-free, involutive, `|X| > 1` and all `σ_x` distinct.
pub fn is_gi_counterexample(s: &Solution) -> bool {
    s.size() > 1 && s.is_involutive() && s.is_square_free() && is_irretractable(s).unwrap_or(false)
}

/// All Gateva–Ivanova counterexamples of size at most `max_n`.
pub fn gi_scan(max_n: usize) -> Result<Vec<Solution>> {
    let e = gi_scan_with_budget(max_n, Budget::unlimited())?;
    if !e.exhaustive {
        return Err(Error::BudgetExceeded);
    }
    Ok(e.items)
}

/// As [`gi_scan`], sharing one budget across every size; stops at the first
/// size that runs out.
pub fn gi_scan_with_budget(max_n: usize, budget: Budget) -> Result<Enumeration<Solution>> {
    let start = Instant::now();
    let mut items = Vec::new();
    let mut nodes = 0;
    for n in 2..=max_n {
        let left = Budget {
            max_nodes: budget.max_nodes.map(|k| k.saturating_sub(nodes)),
            max_time: budget.max_time.map(|t| t.saturating_sub(start.elapsed())),
        };
        let task = EnumerationTask::cycle_sets(n).with_filter(Filter::SquareFree).with_budget(left);
        let e = enumerate_cycle_sets(&task)?;
        nodes += e.nodes;
        for cs in e.items {
            let s = cs.to_solution()?;
            if is_gi_counterexample(&s) {
                items.push(s);
            }
        }
        if !e.exhaustive {
            return Ok(Enumeration { items, exhaustive: false, nodes });
        }
    }
    Ok(Enumeration { items, exhaustive: true, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    #[test]
    fn flip_retracts_to_point() {
        let r = retract(&Solution::flip(4)).unwrap();
        assert_eq!(r.size(), 1);
        assert_eq!(multipermutation_level(&Solution::flip(2)).unwrap(), Some(1));
        assert_eq!(multipermutation_level(&Solution::flip(1)).unwrap(), Some(1));
        assert!(!is_irretractable(&Solution::flip(1)).unwrap());
    }

    #[test]
    fn permutation_solution_retracts_to_point() {
        let g = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let s = Solution::permutation_solution(&g, &g.inverse()).unwrap();
        assert_eq!(retract(&s).unwrap().size(), 1);
    }

    #[test]
    fn retraction_map_is_a_homomorphism() {
        let g = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap();
        let s = Solution::permutation_solution(&g, &g.inverse()).unwrap();
        let classes = sigma_classes(&s);
        let ret = retract(&s).unwrap();
        let homs = s.homomorphisms(&ret);
        assert!(homs.contains(&classes));
    }

    #[test]
    fn requires_involutive() {
        let g = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let s = Solution::permutation_solution(&g, &g).unwrap();
        assert_eq!(retract(&s).unwrap_err(), Error::NotInvolutive);
        assert_eq!(multipermutation_level(&s).unwrap_err(), Error::NotInvolutive);
    }

    #[test]
    fn no_counterexamples_below_five() {
        assert!(gi_scan(1).unwrap().is_empty());
        assert!(gi_scan(5).unwrap().is_empty());
    }
}
