//! Exact linear algebra over the integers: Smith normal form, presented
//! abelian groups, chain complexes, bicomplexes and their homology.

pub mod bicomplex;
pub mod complex;
pub mod fgab;
pub mod int;
pub mod lattice;
pub mod matrix;
pub mod snf;

pub use bicomplex::BiComplexAb;
pub use complex::{
    check_exactness_at, connecting_homomorphism, induced_map_on_homology, map_cokernel, map_kernel,
    ChainComplex, Homology, ShortExactChains,
};
pub use fgab::{FgAbelian, PresentedAb};
pub use int::Int;
pub use lattice::{kernel_basis, Lattice};
pub use matrix::{IntMatrix, SparseVec};
pub use snf::{elementary_divisors, smith_normal_form, Smith};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbError {
    #[error("invalid invariant factors: {0}")]
    BadInvariants(String),
    #[error("cannot parse abelian group {0:?}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("not a chain complex: {0}")]
    NotAComplex(String),
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("not a homomorphism of presented groups: {0}")]
    NotAHomomorphism(String),
    #[error("composite is not zero: {0}")]
    NonzeroComposite(String),
    #[error("vector is not a cycle in degree {0}")]
    NotACycle(usize),
    #[error("lifting failed: {0}")]
    LiftFailed(String),
    #[error("sign convention failure: {0}")]
    SignConvention(String),
    #[error("degree {degree} out of range 0..={top}")]
    DegreeOutOfRange { degree: usize, top: usize },
}
