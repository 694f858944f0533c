//! Bar resolutions over nerve levels, the bicomplex `B(G_*, A_*)` and the
//! homology of a crossed module with coefficients.

mod closed;
mod column;
mod les;
mod total;

pub use closed::{h0_closed_form, h1_closed_form};
pub use column::{bar_boundary, classical_group_homology, TensoredBarColumn};
pub use les::{coefficient_les, LesPosition, LesReport};
pub use total::{
    build_bicomplex, entry_sizes, module_chain_map, morphism_chain_map, xmod_homology, BarOptions, EntrySize,
    XModHomology, DEFAULT_MAX_ENTRY,
};

use thiserror::Error;

use crate::abgrp::AbError;
use crate::simp::SimpError;
use crate::xmod::{XModAction, XModError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BarError {
    #[error("bicomplex entry ({p},{q}) has {} generators, cap is {cap}", .generators.map_or("too many".to_string(), |g| g.to_string()))]
    TooLarge { p: usize, q: usize, generators: Option<usize>, cap: usize },
    #[error(transparent)]
    Ab(#[from] AbError),
    #[error(transparent)]
    Simp(#[from] SimpError),
    #[error(transparent)]
    XMod(#[from] XModError),
    #[error("{0}")]
    Mismatch(String),
}

/// Constant `Z` with trivial action, or a module over the crossed module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientSystem {
    IntegralTrivial,
    Module(XModAction),
}
