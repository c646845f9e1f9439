//! Finite permutation groups with every element enumerated, their subgroup
//! lattices and conjugacy data.

pub mod group;
pub mod lattice;
pub mod named;
pub mod perm;

pub use group::{Elem, PermGroup, DEFAULT_ORDER_CAP};
pub use lattice::{is_prime, Subgroup, SubgroupClass, SubgroupLattice};
pub use named::named_group;
pub use perm::Permutation;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order exceeds the cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("generator has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("malformed permutation `{0}`")]
    MalformedPermutation(String),
    #[error("not a subgroup of the ambient group")]
    NotSubgroup,
    #[error("{0} is not prime")]
    NotPrime(u64),
}
