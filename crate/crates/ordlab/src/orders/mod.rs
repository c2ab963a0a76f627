//! Linear orders on finite universes: permutation utilities, exact and
//! empirical order distributions, and the consistency checker for random
//! ordering families.

pub mod consistency;
pub mod dist;
pub mod perm;

pub use consistency::{
    check_consistency, CheckMode, ConsistencyReport, FamilyLaw, OrderingFamily, Violation,
};
pub use dist::{factorial, OrderDistribution, MAX_EXACT_N};
pub use perm::{
    all_perms, is_perm, parse_perm_key, perm_key, position_of, pushforward_perm, restrict_perm,
    Perm,
};
