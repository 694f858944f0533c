//! Simplicial groups: the nerve of a crossed module, its Moore complex and
//! homotopy groups, and the simplicial abelian groups with actions used as
//! coefficients.

mod abelian;
mod action;
mod nerve;

pub use abelian::{abelian_nerve, SimplicialAbelian};
pub use action::{nerve_action, NerveAction};
pub use nerve::{MooreComplex, NerveLevel, SimplicialGroup, MAX_DIM, NERVE_LEVEL_CAP};

use thiserror::Error;

use crate::grp::{GrpError, Violation};
use crate::xmod::XModError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimpError {
    #[error("nerve level {level} is too large (cap {cap})")]
    TooLarge { level: usize, order: usize, cap: usize },
    #[error("degree {degree} needs a nerve through {}, built through {bound}", degree + 1)]
    Bound { degree: usize, bound: usize },
    #[error("Moore complex is not closed in degree {0}")]
    NotAComplex(usize),
    #[error(transparent)]
    Group(#[from] GrpError),
    #[error(transparent)]
    XMod(#[from] XModError),
    #[error("identity fails: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}
