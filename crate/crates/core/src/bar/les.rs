use serde::Serialize;

use crate::abgrp::{check_exactness_at, connecting_homomorphism, FgAbelian, IntMatrix, PresentedAb, ShortExactChains};
use crate::xmod::{CrossedModule, ShortExactModules};

use super::{module_chain_map, xmod_homology, BarError, BarOptions, CoefficientSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesPosition {
    pub label: String,
    pub exact: bool,
}

/// The long exact sequence in coefficients through degree `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesReport {
    pub sub: Vec<FgAbelian>,
    pub mid: Vec<FgAbelian>,
    pub quot: Vec<FgAbelian>,
    /// `connecting_zero[k - 1]` for `H_k(quot) -> H_{k-1}(sub)`.
    pub connecting_zero: Vec<bool>,
    pub positions: Vec<LesPosition>,
}

impl LesReport {
    pub fn exact(&self) -> bool {
        self.positions.iter().all(|p| p.exact)
    }
}

/// Builds the three homologies, the induced and connecting maps, and checks
/// exactness at every position except `H_n(sub)`, which needs degree `n + 1`.
pub fn coefficient_les(
    x: &CrossedModule,
    ses: &ShortExactModules,
    n: usize,
    opts: BarOptions,
) -> Result<LesReport, BarError> {
    crate::xmod::check(ses.validate())?;
    let coeff = |a: &crate::xmod::XModAction| CoefficientSystem::Module(a.clone());
    let hs = xmod_homology(x, &coeff(ses.left.source()), n, opts)?;
    let hm = xmod_homology(x, &coeff(ses.left.target()), n, opts)?;
    let hq = xmod_homology(x, &coeff(ses.right.target()), n, opts)?;
    let incl = module_chain_map(&ses.left, &hs, &hm)?;
    let proj = module_chain_map(&ses.right, &hm, &hq)?;
    let chains = ShortExactChains { sub: &hs.total, mid: &hm.total, quot: &hq.total, incl: &incl, proj: &proj };
    chains.verify()?;

    let i: Vec<IntMatrix> = (0..=n).map(|k| hs.homology[k].induced_to(&hm.homology[k], &incl[k])).collect::<Result<_, _>>()?;
    let p: Vec<IntMatrix> = (0..=n).map(|k| hm.homology[k].induced_to(&hq.homology[k], &proj[k])).collect::<Result<_, _>>()?;
    let delta: Vec<IntMatrix> = (1..=n)
        .map(|k| connecting_homomorphism(&chains, k, &hq.homology[k], &hs.homology[k - 1]))
        .collect::<Result<_, _>>()?;

    let pres = |h: &crate::bar::XModHomology, k: usize| h.group(k).presentation();
    let mut positions = Vec::new();
    let mut check = |label: String, f: &IntMatrix, g: &IntMatrix, abc: (&PresentedAb, &PresentedAb, &PresentedAb)| {
        let exact = check_exactness_at(f, g, abc)?;
        positions.push(LesPosition { label, exact });
        Ok::<_, BarError>(())
    };
    for k in (0..=n).rev() {
        let (s, m, q) = (pres(&hs, k), pres(&hm, k), pres(&hq, k));
        check(format!("H_{k}(mid)"), &i[k], &p[k], (&s, &m, &q))?;
        if k >= 1 {
            let s1 = pres(&hs, k - 1);
            check(format!("H_{k}(quot)"), &p[k], &delta[k - 1], (&m, &q, &s1))?;
            let m1 = pres(&hm, k - 1);
            check(format!("H_{}(sub)", k - 1), &delta[k - 1], &i[k - 1], (&q, &s1, &m1))?;
        } else {
            let zero = PresentedAb::zero();
            let out = IntMatrix::zeros(0, q.generators());
            check("H_0(quot)".to_string(), &p[0], &out, (&m, &q, &zero))?;
        }
    }
    Ok(LesReport {
        sub: hs.groups(),
        mid: hm.groups(),
        quot: hq.groups(),
        connecting_zero: delta.iter().map(IntMatrix::is_zero).collect(),
        positions,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::grp::{FiniteGroup, GroupHom};
    use crate::xmod::{AbelianXMod, ModuleMorphism, XModAction};

    fn c(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n))
    }

    #[test]
    fn c2_c4_c2_over_c2() {
        let actor = CrossedModule::of_group(c(2));
        let m = |n| XModAction::trivial(actor.clone(), AbelianXMod::of_group(c(n)).unwrap());
        let one = Arc::new(FiniteGroup::trivial());
        let left = ModuleMorphism::new(m(2), m(4), GroupHom::identity(one.clone()), GroupHom::new(c(2), c(4), vec![0, 2]).unwrap()).unwrap();
        let right = ModuleMorphism::new(m(4), m(2), GroupHom::identity(one), GroupHom::new(c(4), c(2), vec![0, 1, 0, 1]).unwrap()).unwrap();
        let ses = ShortExactModules::new(left, right).unwrap();
        let r = coefficient_les(&actor, &ses, 2, BarOptions::default()).unwrap();
        assert!(r.exact(), "{:?}", r.positions);
        assert_eq!(r.positions.len(), 8);
        assert_eq!(r.mid[0], FgAbelian::cyclic(4));
        // H_1(C2, Z/2) -> H_0(C2, Z/2) vanishes since Z/2 -> Z/4 is injective on H_0
        assert_eq!(r.connecting_zero, vec![true, false]);
    }
}
