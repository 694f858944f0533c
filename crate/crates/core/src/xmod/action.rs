use std::sync::Arc;

use crate::abgrp::IntMatrix;
use crate::grp::{
    quotient_group, semidirect_product, FiniteGroup, GroupAction, GroupHom, GroupOps, Semidirect, Violation,
};

use super::morphism::level_exactness;
use super::{check, AbelianXMod, CrossedModule, ShortExactXMod, XModError, XModMorphism};

/// An action of a crossed module `(H, G, mu)` on an abelian crossed module
/// `(C, A, nu)`: actions of `G` on `C` and on `A` and a pairing
/// `xi: H x A -> C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XModAction {
    actor: CrossedModule,
    module: AbelianXMod,
    act_c: GroupAction,
    act_a: GroupAction,
    xi: Vec<u32>,
}

impl XModAction {
    pub fn new(
        actor: CrossedModule,
        module: AbelianXMod,
        act_c: GroupAction,
        act_a: GroupAction,
        xi: Vec<Vec<usize>>,
    ) -> Result<Self, XModError> {
        let a = Self::new_unchecked(actor, module, act_c, act_a, xi)?;
        check(a.validate())?;
        Ok(a)
    }

    /// Checks shapes and ranges only.
    pub fn new_unchecked(
        actor: CrossedModule,
        module: AbelianXMod,
        act_c: GroupAction,
        act_a: GroupAction,
        xi: Vec<Vec<usize>>,
    ) -> Result<Self, XModError> {
        let (c, a) = (module.xmod().h().clone(), module.xmod().g().clone());
        if **act_c.actor() != **actor.g() || **act_c.target() != *c {
            return Err(XModError::Shape("action on C must be by G".into()));
        }
        if **act_a.actor() != **actor.g() || **act_a.target() != *a {
            return Err(XModError::Shape("action on A must be by G".into()));
        }
        if xi.len() != actor.h().order() || xi.iter().any(|r| r.len() != a.order()) {
            return Err(XModError::Shape("xi table must be |H| x |A|".into()));
        }
        if xi.iter().flatten().any(|&x| x >= c.order()) {
            return Err(XModError::Shape("xi value out of range".into()));
        }
        let xi = xi.into_iter().flatten().map(|x| x as u32).collect();
        Ok(XModAction { actor, module, act_c, act_a, xi })
    }

    /// Trivial actions with `xi` constantly zero.
    pub fn trivial(actor: CrossedModule, module: AbelianXMod) -> Self {
        let (c, a) = (module.xmod().h().clone(), module.xmod().g().clone());
        let xi = vec![0; actor.h().order() * a.order()];
        XModAction {
            act_c: GroupAction::trivial(actor.g().clone(), c),
            act_a: GroupAction::trivial(actor.g().clone(), a),
            actor,
            module,
            xi,
        }
    }

    pub fn actor(&self) -> &CrossedModule {
        &self.actor
    }

    pub fn module(&self) -> &AbelianXMod {
        &self.module
    }

    pub fn act_c(&self) -> &GroupAction {
        &self.act_c
    }

    pub fn act_a(&self) -> &GroupAction {
        &self.act_a
    }

    #[inline]
    pub fn xi(&self, h: usize, p: usize) -> usize {
        self.xi[h * self.module.xmod().g().order() + p] as usize
    }

    pub fn xi_rows(&self) -> Vec<Vec<usize>> {
        let na = self.module.xmod().g().order();
        self.xi.chunks(na).map(|r| r.iter().map(|&x| x as usize).collect()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.act_c.is_trivial() && self.act_a.is_trivial() && self.xi.iter().all(|&x| x == 0)
    }

    /// Both actions, then the seven identities relating them to `xi`.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out: Vec<Violation> = self.act_c.validate().into_iter().map(|v| tagged("G on C", v)).collect();
        out.extend(self.act_a.validate().into_iter().map(|v| tagged("G on A", v)));
        let x = &self.actor;
        let m = self.module.xmod();
        let (hg, gg) = (&**x.h(), &**x.g());
        let (cg, ag) = (&**m.h(), &**m.g());
        let (mu, nu) = (x.mu(), m.mu());
        let gc = |g, c| self.act_c.apply(g, c);
        let ga = |g, a| self.act_a.apply(g, a);
        let pm = |p, c| m.apply(p, c);

        let mut first = |rule: &str, found: Option<Vec<usize>>| {
            if let Some(w) = found {
                out.push(Violation::new(rule, w));
            }
        };
        let pairs = |n1: usize, n2: usize| (0..n1).flat_map(move |i| (0..n2).map(move |j| (i, j)));
        let triples = |n1: usize, n2: usize, n3: usize| {
            (0..n1).flat_map(move |i| (0..n2).flat_map(move |j| (0..n3).map(move |k| (i, j, k))))
        };

        first(
            "nu(g.m) = g.nu(m)",
            pairs(gg.order(), cg.order()).find(|&(g, c)| nu.apply(gc(g, c)) != ga(g, nu.apply(c))).map(|(g, c)| vec![g, c]),
        );
        first(
            "g.(p.m) = (g.p).m",
            triples(gg.order(), ag.order(), cg.order())
                .find(|&(g, p, c)| gc(g, pm(p, c)) != pm(ga(g, p), gc(g, c)))
                .map(|(g, p, c)| vec![g, p, c]),
        );
        first(
            "nu xi(h,p) = (mu(h).p) p^-1",
            pairs(hg.order(), ag.order())
                .find(|&(h, p)| nu.apply(self.xi(h, p)) != ag.mul(ga(mu.apply(h), p), ag.inv(p)))
                .map(|(h, p)| vec![h, p]),
        );
        first(
            "xi(h,nu(m)) = (mu(h).m) m^-1",
            pairs(hg.order(), cg.order())
                .find(|&(h, c)| self.xi(h, nu.apply(c)) != cg.mul(gc(mu.apply(h), c), cg.inv(c)))
                .map(|(h, c)| vec![h, c]),
        );
        first(
            "g.xi(h,p) = xi(g.h, g.p)",
            triples(gg.order(), hg.order(), ag.order())
                .find(|&(g, h, p)| gc(g, self.xi(h, p)) != self.xi(x.apply(g, h), ga(g, p)))
                .map(|(g, h, p)| vec![g, h, p]),
        );
        first(
            "xi(hh',p) = (mu(h).xi(h',p)) xi(h,p)",
            triples(hg.order(), hg.order(), ag.order())
                .find(|&(h, h2, p)| {
                    self.xi(hg.mul(h, h2), p) != cg.mul(gc(mu.apply(h), self.xi(h2, p)), self.xi(h, p))
                })
                .map(|(h, h2, p)| vec![h, h2, p]),
        );
        first(
            "xi(h,pp') = xi(h,p) (p.xi(h,p'))",
            triples(hg.order(), ag.order(), ag.order())
                .find(|&(h, p, p2)| self.xi(h, ag.mul(p, p2)) != cg.mul(self.xi(h, p), pm(p, self.xi(h, p2))))
                .map(|(h, p, p2)| vec![h, p, p2]),
        );
        out
    }

    /// The action pulled back along `m: x bar -> actor`.
    pub fn restrict(&self, m: &XModMorphism) -> Result<XModAction, XModError> {
        if *m.target() != self.actor {
            return Err(XModError::Shape("morphism does not land in the actor".into()));
        }
        let xi = m
            .source()
            .h()
            .elements()
            .map(|h| self.module.xmod().g().elements().map(|p| self.xi(m.rho().apply(h), p)).collect())
            .collect();
        XModAction::new(
            m.source().clone(),
            self.module.clone(),
            self.act_c.pullback(m.nu()),
            self.act_a.pullback(m.nu()),
            xi,
        )
    }
}

fn tagged(prefix: &str, v: Violation) -> Violation {
    Violation::new(format!("{prefix}: {}", v.rule), v.witness)
}

/// The crossed module `(C ⋊ H, A ⋊ G)` of an action, with the split
/// sequence `module -> semidirect <-> actor`.
#[derive(Clone, Debug)]
pub struct SplitExtension {
    pub xmod: CrossedModule,
    pub top: Semidirect,
    pub bottom: Semidirect,
    pub kernel: XModMorphism,
    pub section: XModMorphism,
    pub retraction: XModMorphism,
}

/// Builds `(C ⋊ H, A ⋊ G, (nu, mu))` with action
/// `(a,g).(c,h) = ((g.c) - xi(g.h, a), g.h)` and validates every axiom and
/// the split exact sequence.
pub fn semidirect_xmod(a: &XModAction) -> Result<SplitExtension, XModError> {
    let x = &a.actor;
    let m = a.module.xmod();
    let hg = x.h().clone();
    let cg = m.h().clone();

    let mu_x = x.mu().clone();
    let act_c = a.act_c.clone();
    let h_on_c = GroupAction::from_fn(hg.clone(), cg.clone(), |h, c| act_c.apply(mu_x.apply(h), c));
    let top = semidirect_product(&h_on_c)?;
    let bottom = semidirect_product(&a.act_a)?;

    let boundary: Vec<usize> = top
        .group
        .elements()
        .map(|t| {
            let (c, h) = top.decode(t);
            bottom.encode(m.mu().apply(c), x.mu().apply(h))
        })
        .collect();
    let boundary = GroupHom::new(top.group.clone(), bottom.group.clone(), boundary)?;
    let act = GroupAction::from_fn(bottom.group.clone(), top.group.clone(), |b, t| {
        let (p, g) = bottom.decode(b);
        let (c, h) = top.decode(t);
        let gh = x.apply(g, h);
        let c2 = cg.mul(a.act_c.apply(g, c), cg.inv(a.xi(gh, p)));
        top.encode(c2, gh)
    });
    let xmod = CrossedModule::new(boundary, act)?;

    let kernel = XModMorphism::new(m.clone(), xmod.clone(), top.inj_target.clone(), bottom.inj_target.clone())?;
    let section = XModMorphism::new(x.clone(), xmod.clone(), top.inj_actor.clone(), bottom.inj_actor.clone())?;
    let retraction = XModMorphism::new(xmod.clone(), x.clone(), top.proj.clone(), bottom.proj.clone())?;
    if section.then(&retraction)? != XModMorphism::identity(x) {
        return Err(XModError::Invalid(vec![Violation::new("retraction after section is the identity", vec![])]));
    }
    check(super::validate_ses(&ShortExactXMod { left: kernel.clone(), right: retraction.clone() }))?;
    Ok(SplitExtension { xmod, top, bottom, kernel, section, retraction })
}

/// Actions of `G/Im mu` on `Ker nu` and on `A/Im nu`.
#[derive(Clone, Debug)]
pub struct DerivedActions {
    pub quotient: Arc<FiniteGroup>,
    pub on_kernel: GroupAction,
    pub kernel_incl: GroupHom,
    pub on_cokernel: GroupAction,
    pub cokernel_proj: GroupHom,
}

pub fn derived_boundary_actions(a: &XModAction) -> Result<DerivedActions, XModError> {
    let x = &a.actor;
    let m = a.module.xmod();
    let (q, pq) = x.cokernel();
    let (kg, kernel_incl) = m.kernel().to_group();
    let kg = Arc::new(kg);
    let kernel_incl = GroupHom::new(kg.clone(), m.h().clone(), kernel_incl.images())?;
    let (coker, cokernel_proj) = quotient_group(&m.image())?;

    let mut on_k = vec![vec![usize::MAX; kg.order()]; q.order()];
    let mut on_c = vec![vec![usize::MAX; coker.order()]; q.order()];
    for g in x.g().elements() {
        let row = pq.apply(g);
        for k in kg.elements() {
            let y = a.act_c.apply(g, kernel_incl.apply(k));
            let Some(pos) = m.kernel().position(y) else {
                return Err(XModError::Invalid(vec![Violation::new("G preserves Ker nu", vec![g, k])]));
            };
            let slot = &mut on_k[row][k];
            if *slot != usize::MAX && *slot != pos {
                return Err(XModError::Invalid(vec![Violation::new("Im mu acts trivially on Ker nu", vec![g, k])]));
            }
            *slot = pos;
        }
        for p in m.g().elements() {
            let y = cokernel_proj.apply(a.act_a.apply(g, p));
            let slot = &mut on_c[row][cokernel_proj.apply(p)];
            if *slot != usize::MAX && *slot != y {
                return Err(XModError::Invalid(vec![Violation::new("action on A/Im nu is well defined", vec![g, p])]));
            }
            *slot = y;
        }
    }
    let on_kernel = GroupAction::new(q.clone(), kg, &on_k)?;
    let on_cokernel = GroupAction::new(q.clone(), coker, &on_c)?;
    Ok(DerivedActions { quotient: q, on_kernel, kernel_incl, on_cokernel, cokernel_proj })
}

/// A map of modules over the same actor: homomorphisms on `C` and on `A`
/// commuting with `nu`, the `G`-actions and `xi`.
#[derive(Clone, Debug)]
pub struct ModuleMorphism {
    source: XModAction,
    target: XModAction,
    on_c: GroupHom,
    on_a: GroupHom,
}

impl ModuleMorphism {
    pub fn new(source: XModAction, target: XModAction, on_c: GroupHom, on_a: GroupHom) -> Result<Self, XModError> {
        if source.actor != target.actor {
            return Err(XModError::Shape("module morphism must be over a single actor".into()));
        }
        let (sm, tm) = (source.module.xmod(), target.module.xmod());
        if **on_c.dom() != **sm.h() || **on_c.cod() != **tm.h() || **on_a.dom() != **sm.g() || **on_a.cod() != **tm.g() {
            return Err(XModError::Shape("module morphism components do not match".into()));
        }
        let f = ModuleMorphism { source, target, on_c, on_a };
        check(f.validate())?;
        Ok(f)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let (s, t) = (&self.source, &self.target);
        let (sm, tm) = (s.module.xmod(), t.module.xmod());
        if let Some(c) = sm.h().elements().find(|&c| tm.mu().apply(self.on_c.apply(c)) != self.on_a.apply(sm.mu().apply(c))) {
            out.push(Violation::new("nu' f_C = f_A nu", vec![c]));
        }
        let g_elems = s.actor.g().elements();
        'c: for g in g_elems.clone() {
            for c in sm.h().elements() {
                if self.on_c.apply(s.act_c.apply(g, c)) != t.act_c.apply(g, self.on_c.apply(c)) {
                    out.push(Violation::new("f_C(g.c) = g.f_C(c)", vec![g, c]));
                    break 'c;
                }
            }
        }
        'a: for g in g_elems {
            for p in sm.g().elements() {
                if self.on_a.apply(s.act_a.apply(g, p)) != t.act_a.apply(g, self.on_a.apply(p)) {
                    out.push(Violation::new("f_A(g.p) = g.f_A(p)", vec![g, p]));
                    break 'a;
                }
            }
        }
        'xi: for h in s.actor.h().elements() {
            for p in sm.g().elements() {
                if self.on_c.apply(s.xi(h, p)) != t.xi(h, self.on_a.apply(p)) {
                    out.push(Violation::new("f_C xi(h,p) = xi'(h, f_A(p))", vec![h, p]));
                    break 'xi;
                }
            }
        }
        out
    }

    pub fn source(&self) -> &XModAction {
        &self.source
    }

    pub fn target(&self) -> &XModAction {
        &self.target
    }

    pub fn on_c(&self) -> &GroupHom {
        &self.on_c
    }

    pub fn on_a(&self) -> &GroupHom {
        &self.on_a
    }

    /// Matrices of the two components on the generators of the views.
    pub fn matrices(&self) -> (IntMatrix, IntMatrix) {
        let (s, t) = (&self.source.module, &self.target.module);
        (s.c().hom_matrix(t.c(), &self.on_c), s.a().hom_matrix(t.a(), &self.on_a))
    }
}

/// `0 -> M' -> M -> M'' -> 0` over a fixed actor.
#[derive(Clone, Debug)]
pub struct ShortExactModules {
    pub left: ModuleMorphism,
    pub right: ModuleMorphism,
}

impl ShortExactModules {
    pub fn new(left: ModuleMorphism, right: ModuleMorphism) -> Result<Self, XModError> {
        let s = ShortExactModules { left, right };
        check(s.validate())?;
        Ok(s)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.left.target.module != self.right.source.module {
            out.push(Violation::new("middle modules agree", vec![]));
            return out;
        }
        level_exactness(&self.left.on_c, &self.right.on_c, "C", &mut out);
        level_exactness(&self.left.on_a, &self.right.on_a, "A", &mut out);
        out
    }
}
