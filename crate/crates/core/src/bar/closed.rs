use crate::abgrp::{FgAbelian, IntMatrix, PresentedAb};
use crate::grp::{abelian_invariants, commutator_data, quotient_group};
use crate::xmod::CrossedModule;

use super::{BarError, CoefficientSystem};

/// `A / (nu(C) + <G, A>)`, with `<G, A>` generated by `g.a - a`.
pub fn h0_closed_form(x: &CrossedModule, coeffs: &CoefficientSystem) -> Result<FgAbelian, BarError> {
    let a = match coeffs {
        CoefficientSystem::IntegralTrivial => return Ok(FgAbelian::free(1)),
        CoefficientSystem::Module(a) => a,
    };
    if a.actor() != x {
        return Err(BarError::Mismatch("coefficients are over a different crossed module".into()));
    }
    let m = a.module();
    let view = m.a();
    let mut rels: Vec<_> = view.presented().relations().columns().to_vec();
    rels.extend(m.nu().columns().iter().cloned());
    for g in x.g().generating_set() {
        for (j, &s) in view.generators().iter().enumerate() {
            rels.push(view.coords(a.act_a().apply(g, s)).sub(&crate::abgrp::SparseVec::unit(j)));
        }
    }
    let k = view.generators().len();
    Ok(PresentedAb::new(k, IntMatrix::from_columns(k, rels)).canonical_form())
}

/// `G / (mu(H) [G, G])`.
pub fn h1_closed_form(x: &CrossedModule) -> Result<FgAbelian, BarError> {
    let comm = commutator_data(x.g(), None).map_err(crate::xmod::XModError::from)?;
    let n = x.image().join_normal(&comm);
    let (q, _) = quotient_group(&n).map_err(crate::xmod::XModError::from)?;
    Ok(abelian_invariants(&*q))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::grp::{FiniteGroup, GroupAction, GroupHom, Subgroup};
    use crate::xmod::{inclusion_xmod, AbelianXMod, XModAction};

    fn c(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n))
    }

    #[test]
    fn h1_examples() {
        assert_eq!(h1_closed_form(&CrossedModule::identity(c(4))).unwrap(), FgAbelian::trivial());
        let zero = CrossedModule::new(GroupHom::zero(c(2), c(2)), GroupAction::trivial(c(2), c(2))).unwrap();
        assert_eq!(h1_closed_form(&zero).unwrap(), FgAbelian::cyclic(2));
        let incl = inclusion_xmod(&Subgroup::new(c(4), vec![0, 2]).unwrap()).unwrap();
        assert_eq!(h1_closed_form(&incl).unwrap(), FgAbelian::cyclic(2));
        let s3 = Arc::new(FiniteGroup::symmetric3());
        assert_eq!(h1_closed_form(&CrossedModule::of_group(s3)).unwrap(), FgAbelian::cyclic(2));
    }

    #[test]
    fn h0_examples() {
        let x = CrossedModule::identity(c(3));
        assert_eq!(h0_closed_form(&x, &CoefficientSystem::IntegralTrivial).unwrap(), FgAbelian::free(1));
        let onto = AbelianXMod::from_hom(GroupHom::identity(c(2))).unwrap();
        let a = XModAction::trivial(x.clone(), onto);
        assert_eq!(h0_closed_form(&x, &CoefficientSystem::Module(a)).unwrap(), FgAbelian::trivial());
        let m = AbelianXMod::of_group(c(2)).unwrap();
        let a = XModAction::trivial(x.clone(), m);
        assert_eq!(h0_closed_form(&x, &CoefficientSystem::Module(a)).unwrap(), FgAbelian::cyclic(2));
    }
}
