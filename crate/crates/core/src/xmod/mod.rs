//! Crossed modules, their morphisms, abelian crossed modules and actions
//! of crossed modules on abelian ones.

mod abelian;
mod action;
mod morphism;

pub use abelian::{abelianise, AbelianView, AbelianXMod};
pub use action::{
    derived_boundary_actions, semidirect_xmod, DerivedActions, ModuleMorphism, ShortExactModules,
    SplitExtension, XModAction,
};
pub use morphism::{
    image_factor, is_weak_equivalence, kernel_sequence, validate_ses, ShortExactXMod, XModMorphism,
};

use std::sync::Arc;

use thiserror::Error;

use crate::grp::{FiniteGroup, GroupAction, GroupHom, GroupOps, GrpError, Subgroup, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum XModError {
    #[error(transparent)]
    Group(#[from] GrpError),
    #[error("axiom fails: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("group is not abelian: {0} and {1} do not commute")]
    NotAbelian(usize, usize),
    #[error("action is not trivial at ({0}, {1})")]
    NontrivialAction(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

pub fn check(report: Vec<Violation>) -> Result<(), XModError> {
    if report.is_empty() {
        Ok(())
    } else {
        Err(XModError::Invalid(report))
    }
}

/// A crossed module `mu: H -> G` with an action of `G` on `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    mu: GroupHom,
    act: GroupAction,
}

impl CrossedModule {
    pub fn new(mu: GroupHom, act: GroupAction) -> Result<Self, XModError> {
        let x = Self::new_unchecked(mu, act)?;
        check(x.validate())?;
        Ok(x)
    }

    /// Checks only that the pieces fit together.
    pub fn new_unchecked(mu: GroupHom, act: GroupAction) -> Result<Self, XModError> {
        if **act.actor() != **mu.cod() || **act.target() != **mu.dom() {
            return Err(XModError::Shape("action must be of the codomain on the domain".into()));
        }
        Ok(CrossedModule { mu, act })
    }

    /// `(0, G, 0)`
    pub fn of_group(g: Arc<FiniteGroup>) -> Self {
        let h = Arc::new(FiniteGroup::trivial());
        let mu = GroupHom::zero(h.clone(), g.clone());
        CrossedModule { mu, act: GroupAction::trivial(g, h) }
    }

    /// `(G, G, id)` with conjugation.
    pub fn identity(g: Arc<FiniteGroup>) -> Self {
        CrossedModule { mu: GroupHom::identity(g.clone()), act: GroupAction::conjugation(g) }
    }

    /// `(0, 0, 0)`
    pub fn trivial() -> Self {
        Self::of_group(Arc::new(FiniteGroup::trivial()))
    }

    pub fn h(&self) -> &Arc<FiniteGroup> {
        self.mu.dom()
    }

    pub fn g(&self) -> &Arc<FiniteGroup> {
        self.mu.cod()
    }

    pub fn mu(&self) -> &GroupHom {
        &self.mu
    }

    pub fn act(&self) -> &GroupAction {
        &self.act
    }

    #[inline]
    pub fn apply(&self, g: usize, h: usize) -> usize {
        self.act.apply(g, h)
    }

    pub fn is_abelian(&self) -> bool {
        self.h().is_abelian() && self.g().is_abelian() && self.act.is_trivial()
    }

    pub fn kernel(&self) -> Subgroup {
        crate::grp::kernel_image(&self.mu).0
    }

    pub fn image(&self) -> Subgroup {
        crate::grp::kernel_image(&self.mu).1
    }

    /// `G / mu(H)` with its projection.
    pub fn cokernel(&self) -> (Arc<FiniteGroup>, GroupHom) {
        crate::grp::quotient_group(&self.image()).expect("image of a crossed module is normal")
    }

    /// Action axioms, the precrossed identity and the Peiffer identity.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = self.act.validate();
        let (h, g) = (&**self.h(), &**self.g());
        'pre: for a in g.elements() {
            for x in h.elements() {
                if self.mu.apply(self.apply(a, x)) != g.conj(a, self.mu.apply(x)) {
                    out.push(Violation::new("mu(g.h) = g mu(h) g^-1", vec![a, x]));
                    break 'pre;
                }
            }
        }
        'peiffer: for x in h.elements() {
            for y in h.elements() {
                if self.apply(self.mu.apply(x), y) != h.conj(x, y) {
                    out.push(Violation::new("mu(h).h' = h h' h^-1", vec![x, y]));
                    break 'peiffer;
                }
            }
        }
        out
    }
}

pub fn validate_xmod(x: &CrossedModule) -> Vec<Violation> {
    x.validate()
}

/// `N ◁ G` with inclusion and conjugation.
pub fn inclusion_xmod(n: &Subgroup) -> Result<CrossedModule, XModError> {
    let (act, incl) = GroupAction::conjugation_on(n)?;
    CrossedModule::new(incl, act)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n))
    }

    #[test]
    fn validation() {
        let s3 = Arc::new(FiniteGroup::symmetric3());
        let a3 = crate::grp::commutator_data(&s3, None).unwrap();
        assert!(inclusion_xmod(&a3).unwrap().validate().is_empty());

        let zero = CrossedModule::new(GroupHom::zero(c(2), c(2)), GroupAction::trivial(c(2), c(2))).unwrap();
        assert!(zero.validate().is_empty());

        let t = (1..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let mu = GroupHom::new(c(2), s3.clone(), vec![0, t]).unwrap();
        let bad = CrossedModule::new_unchecked(mu, GroupAction::trivial(s3, c(2))).unwrap();
        let report = bad.validate();
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].rule, "mu(g.h) = g mu(h) g^-1");
    }

    #[test]
    fn inclusions() {
        let c4 = c(4);
        let x = inclusion_xmod(&Subgroup::trivial(c4.clone())).unwrap();
        assert_eq!((x.h().order(), x.g().order()), (1, 4));
        let x = inclusion_xmod(&Subgroup::whole(c4.clone())).unwrap();
        assert!(x.mu().is_bijective());
        let x = inclusion_xmod(&Subgroup::new(c4, vec![0, 2]).unwrap()).unwrap();
        assert_eq!((x.h().order(), x.g().order()), (2, 4));
        assert!(x.act().is_trivial());
    }
}
