use std::sync::Arc;

use crate::grp::{kernel_image, GroupHom, GroupOps, Subgroup, Violation};

use super::{check, CrossedModule, XModError};

/// `(rho, nu): (H, G, mu) -> (H', G', mu')`, with `rho` on the top groups
/// and `nu` on the bottom groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XModMorphism {
    source: CrossedModule,
    target: CrossedModule,
    rho: GroupHom,
    nu: GroupHom,
}

impl XModMorphism {
    pub fn new(source: CrossedModule, target: CrossedModule, rho: GroupHom, nu: GroupHom) -> Result<Self, XModError> {
        let m = Self::new_unchecked(source, target, rho, nu)?;
        check(m.validate())?;
        Ok(m)
    }

    pub fn new_unchecked(
        source: CrossedModule,
        target: CrossedModule,
        rho: GroupHom,
        nu: GroupHom,
    ) -> Result<Self, XModError> {
        if **rho.dom() != **source.h()
            || **rho.cod() != **target.h()
            || **nu.dom() != **source.g()
            || **nu.cod() != **target.g()
        {
            return Err(XModError::Shape("morphism components do not match the crossed modules".into()));
        }
        Ok(XModMorphism { source, target, rho, nu })
    }

    pub fn identity(x: &CrossedModule) -> Self {
        XModMorphism {
            source: x.clone(),
            target: x.clone(),
            rho: GroupHom::identity(x.h().clone()),
            nu: GroupHom::identity(x.g().clone()),
        }
    }

    /// The unique morphism to `(0, 0, 0)`.
    pub fn to_trivial(x: &CrossedModule) -> Self {
        let t = CrossedModule::trivial();
        XModMorphism {
            rho: GroupHom::zero(x.h().clone(), t.h().clone()),
            nu: GroupHom::zero(x.g().clone(), t.g().clone()),
            source: x.clone(),
            target: t,
        }
    }

    pub fn source(&self) -> &CrossedModule {
        &self.source
    }

    pub fn target(&self) -> &CrossedModule {
        &self.target
    }

    pub fn rho(&self) -> &GroupHom {
        &self.rho
    }

    pub fn nu(&self) -> &GroupHom {
        &self.nu
    }

    /// `other ∘ self`
    pub fn then(&self, other: &XModMorphism) -> Result<XModMorphism, XModError> {
        if self.target != other.source {
            return Err(XModError::Shape("morphisms are not composable".into()));
        }
        Ok(XModMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            rho: self.rho.then(&other.rho),
            nu: self.nu.then(&other.nu),
        })
    }

    /// Commuting square and equivariance.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let (mu, mu2) = (self.source.mu(), self.target.mu());
        if let Some(x) = self.source.h().elements().find(|&x| self.nu.apply(mu.apply(x)) != mu2.apply(self.rho.apply(x))) {
            out.push(Violation::new("nu mu = mu' rho", vec![x]));
        }
        'eq: for g in self.source.g().elements() {
            for x in self.source.h().elements() {
                if self.rho.apply(self.source.apply(g, x)) != self.target.apply(self.nu.apply(g), self.rho.apply(x)) {
                    out.push(Violation::new("rho(g.h) = nu(g).rho(h)", vec![g, x]));
                    break 'eq;
                }
            }
        }
        out
    }

    /// Induced map `Ker mu -> Ker mu'` on subgroup carriers.
    pub fn on_kernels(&self) -> GroupHom {
        self.rho.restrict(&self.source.kernel(), &self.target.kernel()).expect("rho maps kernel to kernel")
    }

    /// Induced map `G/mu(H) -> G'/mu'(H')`.
    pub fn on_cokernels(&self) -> GroupHom {
        let (q, p) = self.source.cokernel();
        let (q2, p2) = self.target.cokernel();
        let mut image = vec![usize::MAX; q.order()];
        for g in self.source.g().elements() {
            image[p.apply(g)] = p2.apply(self.nu.apply(g));
        }
        GroupHom::new(q, q2, image).expect("induced map on cokernels")
    }
}

/// Whether the morphism induces isomorphisms on `Ker mu` and `G/mu(H)`.
pub fn is_weak_equivalence(m: &XModMorphism) -> bool {
    m.on_kernels().is_bijective() && m.on_cokernels().is_bijective()
}

/// `0 -> x' --left--> x --right--> x'' -> 0`
#[derive(Clone, Debug)]
pub struct ShortExactXMod {
    pub left: XModMorphism,
    pub right: XModMorphism,
}

impl ShortExactXMod {
    pub fn new(left: XModMorphism, right: XModMorphism) -> Result<Self, XModError> {
        let s = ShortExactXMod { left, right };
        check(validate_ses(&s))?;
        Ok(s)
    }

    pub fn sub(&self) -> &CrossedModule {
        self.left.source()
    }

    pub fn mid(&self) -> &CrossedModule {
        self.left.target()
    }

    pub fn quot(&self) -> &CrossedModule {
        self.right.target()
    }
}

pub(crate) fn level_exactness(f: &GroupHom, g: &GroupHom, level: &str, out: &mut Vec<Violation>) {
    if let Some(x) = (1..f.dom().order()).find(|&x| f.apply(x) == 0) {
        out.push(Violation::new(format!("{level}: left map is injective"), vec![x]));
    }
    if !g.is_surjective() {
        let (_, im) = kernel_image(g);
        let missing = g.cod().elements().find(|&y| !im.contains(y)).expect("not surjective");
        out.push(Violation::new(format!("{level}: right map is surjective"), vec![missing]));
    }
    let (_, im_f) = kernel_image(f);
    let (ker_g, _) = kernel_image(g);
    if let Some(y) = f.cod().elements().find(|&y| im_f.contains(y) != ker_g.contains(y)) {
        out.push(Violation::new(format!("{level}: image of left = kernel of right"), vec![y]));
    }
}

/// Exactness on both levels plus validity of both morphisms.
pub fn validate_ses(s: &ShortExactXMod) -> Vec<Violation> {
    let mut out = s.left.validate();
    out.extend(s.right.validate());
    if s.left.target() != s.right.source() {
        out.push(Violation::new("middle crossed modules agree", vec![]));
        return out;
    }
    level_exactness(&s.left.rho, &s.right.rho, "top", &mut out);
    level_exactness(&s.left.nu, &s.right.nu, "bottom", &mut out);
    out
}

/// The inclusion of `(Ker mu, 0, 0)` and the projection onto `(H/Ker mu, G, mu)`.
pub fn kernel_sequence(x: &CrossedModule) -> Result<ShortExactXMod, XModError> {
    let ker = x.kernel();
    let (kg, incl) = ker.to_group();
    let kg = Arc::new(kg);
    let trivial = Arc::new(crate::grp::FiniteGroup::trivial());
    let sub = CrossedModule::new(
        GroupHom::zero(kg.clone(), trivial.clone()),
        crate::grp::GroupAction::trivial(trivial.clone(), kg.clone()),
    )?;
    let rho = GroupHom::new(kg, x.h().clone(), incl.images())?;
    let left = XModMorphism::new(sub, x.clone(), rho, GroupHom::zero(trivial, x.g().clone()))?;
    let (right, _) = image_factor(x, &ker)?;
    ShortExactXMod::new(left, right)
}

/// `(H, G, mu) -> (H/K, G, mu bar)` for `K ⊆ Ker mu` normal and `G`-stable.
pub fn image_factor(x: &CrossedModule, k: &Subgroup) -> Result<(XModMorphism, CrossedModule), XModError> {
    let (q, p) = crate::grp::quotient_group(k)?;
    let g = x.g().clone();
    let mut mu_bar = vec![usize::MAX; q.order()];
    for h in x.h().elements() {
        mu_bar[p.apply(h)] = x.mu().apply(h);
    }
    let mu_bar = GroupHom::new(q.clone(), g.clone(), mu_bar)?;
    let mut rows = vec![vec![usize::MAX; q.order()]; g.order()];
    for a in g.elements() {
        for h in x.h().elements() {
            rows[a][p.apply(h)] = p.apply(x.apply(a, h));
        }
    }
    let act = crate::grp::GroupAction::new(g.clone(), q, &rows)?;
    let xbar = CrossedModule::new(mu_bar, act)?;
    let m = XModMorphism::new(x.clone(), xbar.clone(), p, GroupHom::identity(g))?;
    Ok((m, xbar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{FiniteGroup, GroupAction};

    fn c(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n))
    }

    fn zero_xmod(n: usize) -> CrossedModule {
        CrossedModule::new(GroupHom::zero(c(n), c(n)), GroupAction::trivial(c(n), c(n))).unwrap()
    }

    #[test]
    fn weak_equivalences() {
        let x = zero_xmod(2);
        assert!(is_weak_equivalence(&XModMorphism::identity(&x)));
        let id4 = CrossedModule::identity(c(4));
        assert!(is_weak_equivalence(&XModMorphism::to_trivial(&id4)));
        let target = CrossedModule::of_group(c(2));
        let m = XModMorphism::new(
            x.clone(),
            target.clone(),
            GroupHom::zero(c(2), target.h().clone()),
            GroupHom::identity(c(2)),
        )
        .unwrap();
        assert!(!is_weak_equivalence(&m));
    }

    #[test]
    fn short_exact_sequences() {
        let x = zero_xmod(3);
        let id = XModMorphism::identity(&x);
        let ses = ShortExactXMod { left: id.clone(), right: XModMorphism::to_trivial(&x) };
        assert!(validate_ses(&ses).is_empty());

        let (a, b, q) = (CrossedModule::of_group(c(2)), CrossedModule::of_group(c(4)), CrossedModule::of_group(c(2)));
        let one = Arc::new(FiniteGroup::trivial());
        let left = XModMorphism::new(
            a.clone(),
            b.clone(),
            GroupHom::identity(one.clone()),
            GroupHom::new(c(2), c(4), vec![0, 2]).unwrap(),
        )
        .unwrap();
        let right = XModMorphism::new(
            b.clone(),
            q.clone(),
            GroupHom::identity(one.clone()),
            GroupHom::new(c(4), c(2), vec![0, 1, 0, 1]).unwrap(),
        )
        .unwrap();
        assert!(ShortExactXMod::new(left.clone(), right).is_ok());

        let not_onto = XModMorphism::new(b, CrossedModule::of_group(c(2)), GroupHom::identity(one), GroupHom::zero(c(4), c(2))).unwrap();
        let report = validate_ses(&ShortExactXMod { left, right: not_onto });
        assert!(report.iter().any(|v| v.rule == "bottom: right map is surjective"));
    }

    #[test]
    fn kernel_sequence_of_zero_map() {
        let s = kernel_sequence(&zero_xmod(2)).unwrap();
        assert_eq!(s.sub().h().order(), 2);
        assert_eq!(s.quot().h().order(), 1);
    }
}
