//! Checkers for the computable statements about crossed-module homology.
//! Each returns a report with a witness on failure.

mod five;

pub use five::check_five_term;

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::abgrp::{map_cokernel, map_kernel, AbError, FgAbelian, PresentedAb};
use crate::bar::{
    classical_group_homology, coefficient_les, h0_closed_form, h1_closed_form, morphism_chain_map, xmod_homology,
    BarError, BarOptions, CoefficientSystem, XModHomology,
};
use crate::grp::{quotient_group, FiniteGroup, GroupOps, Subgroup};
use crate::xmod::{image_factor, inclusion_xmod, is_weak_equivalence, CrossedModule, ShortExactModules, XModError, XModMorphism};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LawError {
    #[error(transparent)]
    Bar(#[from] BarError),
    #[error("precondition fails: {0}")]
    Precondition(String),
}

impl From<AbError> for LawError {
    fn from(e: AbError) -> Self {
        LawError::Bar(e.into())
    }
}

impl From<XModError> for LawError {
    fn from(e: XModError) -> Self {
        LawError::Bar(e.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law: String,
    pub subject: String,
    pub pass: bool,
    pub lines: Vec<String>,
    pub witness: Option<String>,
    pub unverified: Vec<String>,
}

impl LawReport {
    fn new(law: &str, subject: impl Into<String>) -> Self {
        LawReport {
            law: law.into(),
            subject: subject.into(),
            pass: true,
            lines: Vec::new(),
            witness: None,
            unverified: Vec::new(),
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// Records a failure; the first one becomes the witness.
    fn fail(&mut self, witness: impl Into<String>) {
        let w = witness.into();
        self.lines.push(format!("FAIL {w}"));
        if self.pass {
            self.witness = Some(w);
        }
        self.pass = false;
    }

    /// Compares two lists of groups degree by degree.
    fn compare(&mut self, left: &str, right: &str, a: &[FgAbelian], b: &[FgAbelian]) {
        for (k, (x, y)) in a.iter().zip(b).enumerate() {
            if x == y {
                self.line(format!("H_{k}: {left} = {x}, {right} = {y}"));
            } else {
                self.fail(format!("degree {k}: {left} = {x}, {right} = {y}"));
            }
        }
    }
}

fn integral(x: &CrossedModule, n: usize, opts: BarOptions) -> Result<XModHomology, BarError> {
    xmod_homology(x, &CoefficientSystem::IntegralTrivial, n, opts)
}

fn classical_integral(g: &FiniteGroup, maxdeg: usize, opts: BarOptions) -> Result<Vec<FgAbelian>, BarError> {
    (0..=maxdeg)
        .map(|k| classical_group_homology(g, &PresentedAb::free(1), None, k, opts.normalized, opts.max_entry))
        .collect()
}

/// `H_k(N ◁ G, Z)` against `H_k(G/N, Z)`.
pub fn check_inclusion_reduction(n: &Subgroup, maxdeg: usize, opts: BarOptions) -> Result<LawReport, LawError> {
    let x = inclusion_xmod(n)?;
    let (q, _) = quotient_group(n).map_err(XModError::from)?;
    let mut r = LawReport::new("inclusion-reduction", format!("N of order {} in G of order {}", n.order(), x.g().order()));
    let lhs = integral(&x, maxdeg, opts)?.groups();
    let rhs = classical_integral(&q, maxdeg, opts)?;
    r.compare("crossed module", "quotient group", &lhs, &rhs);
    Ok(r)
}

/// `H_k((0, G, 0), coeffs)` against classical `H_k(G, A)`; for integral
/// coefficients `A = Z`.
pub fn check_classical_agreement(
    g: Arc<FiniteGroup>,
    coeffs: &CoefficientSystem,
    maxdeg: usize,
    opts: BarOptions,
) -> Result<LawReport, LawError> {
    let x = CrossedModule::of_group(g.clone());
    let (lhs, rhs) = match coeffs {
        CoefficientSystem::IntegralTrivial => (integral(&x, maxdeg, opts)?.groups(), classical_integral(&g, maxdeg, opts)?),
        CoefficientSystem::Module(a) => {
            if a.actor() != &x || a.module().xmod().h().order() != 1 {
                return Err(LawError::Precondition("coefficients must be (0, A, 0) over (0, G, 0)".into()));
            }
            let view = a.module().a();
            let action: Vec<_> = g.elements().map(|e| view.matrix_of(view, |v| a.act_a().apply(e, v))).collect();
            let lhs = xmod_homology(&x, coeffs, maxdeg, opts)?.groups();
            let rhs = (0..=maxdeg)
                .map(|k| classical_group_homology(&*g, view.presented(), Some(&action), k, opts.normalized, opts.max_entry))
                .collect::<Result<Vec<_>, _>>()?;
            (lhs, rhs)
        }
    };
    let mut r = LawReport::new("classical-agreement", format!("G of order {}", g.order()));
    r.compare("crossed module", "classical", &lhs, &rhs);
    Ok(r)
}

/// Whether an induced map of homology groups is an isomorphism.
fn is_iso(f: &crate::abgrp::IntMatrix, a: &FgAbelian, b: &FgAbelian) -> Result<bool, AbError> {
    let (pa, pb) = (a.presentation(), b.presentation());
    Ok(map_kernel(f, &pa, &pb)?.is_trivial() && map_cokernel(f, &pa, &pb)?.is_trivial())
}

/// Invariant factors agree and the induced maps are isomorphisms.
pub fn check_weak_invariance(m: &XModMorphism, maxdeg: usize, opts: BarOptions) -> Result<LawReport, LawError> {
    if !is_weak_equivalence(m) {
        return Err(LawError::Precondition("morphism is not a weak equivalence".into()));
    }
    let hs = integral(m.source(), maxdeg, opts)?;
    let ht = integral(m.target(), maxdeg, opts)?;
    let f = morphism_chain_map(m, &hs, &ht)?;
    let mut r = LawReport::new("weak-invariance", "morphism");
    r.compare("source", "target", &hs.groups(), &ht.groups());
    for (k, fk) in f.iter().enumerate().take(maxdeg + 1) {
        let map = hs.homology[k].induced_to(&ht.homology[k], fk)?;
        if !is_iso(&map, hs.group(k), ht.group(k))? {
            r.fail(format!("degree {k}: induced map is not an isomorphism"));
        }
    }
    Ok(r)
}

/// `H_2(x) -> H_2(H/Ker mu, G, mu)` is onto, and the target is `H_2(G/mu(H))`.
pub fn check_h2_epimorphism(x: &CrossedModule, opts: BarOptions) -> Result<LawReport, LawError> {
    let (m, xbar) = image_factor(x, &x.kernel())?;
    let hs = integral(x, 2, opts)?;
    let ht = integral(&xbar, 2, opts)?;
    let f = morphism_chain_map(&m, &hs, &ht)?;
    let map = hs.homology[2].induced_to(&ht.homology[2], &f[2])?;
    let coker = map_cokernel(&map, &hs.group(2).presentation(), &ht.group(2).presentation())?;
    let (q, _) = x.cokernel();
    let classical = classical_group_homology(&*q, &PresentedAb::free(1), None, 2, opts.normalized, opts.max_entry)?;

    let mut r = LawReport::new("h2-epi", "crossed module");
    r.line(format!("H_2(x) = {}", hs.group(2)));
    r.line(format!("H_2(H/Ker mu, G, mu) = {}", ht.group(2)));
    r.line(format!("H_2(G/mu(H)) = {classical}"));
    if coker.is_trivial() {
        r.line("induced map is onto");
    } else {
        r.fail(format!("cokernel of the induced map is {coker}"));
    }
    if ht.group(2) != &classical {
        r.fail(format!("H_2 of the image factor is {}, of the quotient group {classical}", ht.group(2)));
    }
    Ok(r)
}

pub fn check_h0_closed_form(x: &CrossedModule, coeffs: &CoefficientSystem, opts: BarOptions) -> Result<LawReport, LawError> {
    let h = xmod_homology(x, coeffs, 0, opts)?;
    let closed = h0_closed_form(x, coeffs)?;
    let mut r = LawReport::new("h0-closed-form", "crossed module");
    r.compare("bicomplex", "closed form", &h.groups(), &[closed]);
    Ok(r)
}

pub fn check_h1_closed_form(x: &CrossedModule, opts: BarOptions) -> Result<LawReport, LawError> {
    let h = integral(x, 1, opts)?;
    let closed = h1_closed_form(x)?;
    let mut r = LawReport::new("h1-closed-form", "crossed module");
    r.compare("bicomplex", "closed form", &h.groups()[1..], &[closed]);
    if let Some(l) = r.lines.first_mut() {
        *l = l.replacen("H_0", "H_1", 1);
    }
    if let Some(w) = r.witness.as_mut() {
        *w = w.replacen("degree 0", "degree 1", 1);
    }
    Ok(r)
}

pub fn check_coefficient_les(
    x: &CrossedModule,
    ses: &ShortExactModules,
    maxdeg: usize,
    opts: BarOptions,
) -> Result<LawReport, LawError> {
    let les = coefficient_les(x, ses, maxdeg, opts)?;
    let mut r = LawReport::new("coefficient-les", "module sequence");
    for k in 0..=maxdeg {
        r.line(format!("H_{k}: {} -> {} -> {}", les.sub[k], les.mid[k], les.quot[k]));
    }
    for (k, z) in les.connecting_zero.iter().enumerate() {
        r.line(format!("connecting map H_{}(quot) -> H_{k}(sub) is {}", k + 1, if *z { "zero" } else { "nonzero" }));
    }
    for p in &les.positions {
        if p.exact {
            r.line(format!("exact at {}", p.label));
        } else {
            r.fail(format!("not exact at {}", p.label));
        }
    }
    r.unverified.push(format!("H_{maxdeg}(sub)"));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{GroupAction, GroupHom};

    fn c(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n))
    }

    #[test]
    fn inclusion_reduction_examples() {
        let opts = BarOptions { normalized: true, ..Default::default() };
        let r = check_inclusion_reduction(&Subgroup::new(c(4), vec![0, 2]).unwrap(), 3, opts).unwrap();
        assert!(r.pass, "{r:?}");
        let r = check_inclusion_reduction(&Subgroup::whole(c(3)), 2, opts).unwrap();
        assert!(r.pass);
        assert_eq!(r.lines[1], "H_1: crossed module = 0, quotient group = 0");
    }

    #[test]
    fn weak_invariance_examples() {
        let opts = BarOptions::default();
        let id = CrossedModule::identity(c(2));
        assert!(check_weak_invariance(&XModMorphism::to_trivial(&id), 3, opts).unwrap().pass);
        let zero = CrossedModule::new(GroupHom::zero(c(2), c(2)), GroupAction::trivial(c(2), c(2))).unwrap();
        assert!(check_weak_invariance(&XModMorphism::identity(&zero), 2, opts).unwrap().pass);
        let bad = XModMorphism::to_trivial(&zero);
        assert!(matches!(check_weak_invariance(&bad, 1, opts), Err(LawError::Precondition(_))));
    }

    #[test]
    fn h2_epi_examples() {
        let opts = BarOptions { normalized: true, ..Default::default() };
        assert!(check_h2_epimorphism(&CrossedModule::identity(c(3)), opts).unwrap().pass);
        let incl = inclusion_xmod(&Subgroup::new(c(4), vec![0, 2]).unwrap()).unwrap();
        assert!(check_h2_epimorphism(&incl, opts).unwrap().pass);
        let k4 = Arc::new(FiniteGroup::klein_four());
        let mu = GroupHom::new(c(2), k4.clone(), vec![0, 1]).unwrap();
        let x = CrossedModule::new(mu, GroupAction::trivial(k4, c(2))).unwrap();
        let r = check_h2_epimorphism(&x, opts).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn closed_form_checks() {
        let opts = BarOptions::default();
        let zero = CrossedModule::new(GroupHom::zero(c(2), c(2)), GroupAction::trivial(c(2), c(2))).unwrap();
        let r = check_h1_closed_form(&zero, opts).unwrap();
        assert!(r.pass);
        assert_eq!(r.lines, vec!["H_1: bicomplex = Z/2, closed form = Z/2"]);
        assert!(check_h0_closed_form(&zero, &CoefficientSystem::IntegralTrivial, opts).unwrap().pass);
    }
}
