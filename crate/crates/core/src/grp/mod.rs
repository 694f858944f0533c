//! Finite groups given by multiplication tables, their homomorphisms,
//! subgroups, quotients, actions and semidirect products.

mod action;
mod group;
mod hom;
mod iso;

pub use action::{direct_product, semidirect_product, GroupAction, Semidirect};
pub use group::{make_group, FiniteGroup, GroupSpec, DERIVED_ORDER_CAP, INPUT_ORDER_CAP};
pub use hom::{commutator_data, kernel_image, quotient_group, GroupHom, Subgroup};
pub use iso::{abelian_invariants, are_isomorphic, ISO_SEARCH_CAP};

use serde::Serialize;
use thiserror::Error;

/// Element-level group operations with identity `0`.
///
/// Implemented by materialized [`FiniteGroup`]s and by nerve levels, whose
/// products are computed on the fly.
pub trait GroupOps: Sync {
    fn order(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;

    fn identity(&self) -> usize {
        0
    }

    /// `a b a^-1`
    fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }
}

/// One failed axiom with the elements that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: String,
    pub witness: Vec<usize>,
}

impl Violation {
    pub fn new(rule: impl Into<String>, witness: Vec<usize>) -> Self {
        Violation { rule: rule.into(), witness }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (witness {:?})", self.rule, self.witness)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrpError {
    #[error("multiplication table is not square")]
    NotSquare,
    #[error("table entry out of range at ({0}, {1})")]
    OutOfRange(usize, usize),
    #[error("element 0 is not a two-sided identity")]
    IdentityMissing,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("permutation {0} is not a bijection")]
    NotBijective(usize),
    #[error("permutations have different degrees")]
    DegreeMismatch,
    #[error("group of order {order} exceeds the cap {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("not a homomorphism: f({0}*{1}) != f({0})*f({1})")]
    NotAHomomorphism(usize, usize),
    #[error("generator images do not extend to a homomorphism")]
    NoExtension,
    #[error("subgroup is not normal: conjugating {1} by {0} leaves it")]
    NotNormal(usize, usize),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("invalid action: {0}")]
    InvalidAction(Violation),
    #[error("shape mismatch: {0}")]
    Shape(String),
}
