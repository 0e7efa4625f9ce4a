//! Verification, analysis and isomorph-free enumeration of finite
//! set-theoretic solutions of the Yang–Baxter equation, cycle sets and skew
//! braces.

pub mod bitset;
pub mod brace;
pub mod catalog;
pub mod cycle_set;
pub mod enum_braces;
pub mod enum_solutions;
pub mod error;
pub mod group;
pub mod perm;
pub mod records;
pub mod retraction;
pub mod solution;

pub use brace::SkewBrace;
pub use cycle_set::{CycleSet, LinearCycleSet};
pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use perm::{PermGroup, Permutation};
pub use solution::Solution;
