use std::sync::Arc;

use super::group::{FiniteGroup, DERIVED_ORDER_CAP};
use super::hom::{GroupHom, Subgroup};
use super::{GroupOps, GrpError, Violation};

/// An action of `actor` on `target` by automorphisms, as a table with
/// entry `(g, h)` holding `g.h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    actor: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    table: Vec<u32>,
}

impl GroupAction {
    /// Builds from a table, rejecting it if any axiom fails.
    pub fn new(actor: Arc<FiniteGroup>, target: Arc<FiniteGroup>, rows: &[Vec<usize>]) -> Result<Self, GrpError> {
        let act = Self::from_rows_unvalidated(actor, target, rows)?;
        match act.validate().into_iter().next() {
            Some(v) => Err(GrpError::InvalidAction(v)),
            None => Ok(act),
        }
    }

    /// Builds from a table checking only shape and range.
    pub fn from_rows_unvalidated(
        actor: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        rows: &[Vec<usize>],
    ) -> Result<Self, GrpError> {
        if rows.len() != actor.order() || rows.iter().any(|r| r.len() != target.order()) {
            return Err(GrpError::Shape("action table must be |actor| x |target|".into()));
        }
        let mut table = Vec::with_capacity(actor.order() * target.order());
        for (g, r) in rows.iter().enumerate() {
            for (h, &x) in r.iter().enumerate() {
                if x >= target.order() {
                    return Err(GrpError::OutOfRange(g, h));
                }
                table.push(x as u32);
            }
        }
        Ok(GroupAction { actor, target, table })
    }

    pub(crate) fn from_fn(
        actor: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        f: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let table = actor
            .elements()
            .flat_map(|g| target.elements().map(move |h| (g, h)))
            .map(|(g, h)| f(g, h) as u32)
            .collect();
        GroupAction { actor, target, table }
    }

    pub fn trivial(actor: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Self {
        Self::from_fn(actor, target, |_, h| h)
    }

    /// `G` acting on itself by conjugation.
    pub fn conjugation(g: Arc<FiniteGroup>) -> Self {
        let g2 = g.clone();
        Self::from_fn(g.clone(), g, move |a, b| g2.conj(a, b))
    }

    /// `G` acting by conjugation on a normal subgroup, carried by
    /// [`Subgroup::to_group`].
    pub fn conjugation_on(n: &Subgroup) -> Result<(Self, GroupHom), GrpError> {
        if let Some((g, x)) = n.normality_witness() {
            return Err(GrpError::NotNormal(g, x));
        }
        let (ng, incl) = n.to_group();
        let ng = Arc::new(ng);
        let incl = GroupHom::new_unchecked(ng.clone(), incl.cod().clone(), incl.images());
        let parent = n.parent().clone();
        let act = Self::from_fn(parent.clone(), ng, |g, h| {
            let y = parent.conj(g, incl.apply(h));
            n.position(y).expect("normal")
        });
        Ok((act, incl))
    }

    /// Pulls the action back along `f: K -> actor`.
    pub fn pullback(&self, f: &GroupHom) -> Self {
        assert_eq!(**f.cod(), *self.actor);
        Self::from_fn(f.dom().clone(), self.target.clone(), |k, h| self.apply(f.apply(k), h))
    }

    pub fn actor(&self) -> &Arc<FiniteGroup> {
        &self.actor
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, g: usize, h: usize) -> usize {
        self.table[g * self.target.order() + h] as usize
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.actor
            .elements()
            .map(|g| self.target.elements().map(|h| self.apply(g, h)).collect())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.actor.elements().all(|g| self.target.elements().all(|h| self.apply(g, h) == h))
    }

    /// Every violated axiom, each with its first witness.
    pub fn validate(&self) -> Vec<Violation> {
        let (a, t) = (&*self.actor, &*self.target);
        let mut out = Vec::new();
        if let Some(h) = t.elements().find(|&h| self.apply(0, h) != h) {
            out.push(Violation::new("identity acts trivially", vec![0, h]));
        }
        'hom: for g in a.elements() {
            for h in t.elements() {
                for k in t.elements() {
                    if self.apply(g, t.mul(h, k)) != t.mul(self.apply(g, h), self.apply(g, k)) {
                        out.push(Violation::new("g.(hk) = (g.h)(g.k)", vec![g, h, k]));
                        break 'hom;
                    }
                }
            }
        }
        'comp: for g in a.elements() {
            for g2 in a.elements() {
                for h in t.elements() {
                    if self.apply(g2, self.apply(g, h)) != self.apply(a.mul(g2, g), h) {
                        out.push(Violation::new("g'.(g.h) = (g'g).h", vec![g2, g, h]));
                        break 'comp;
                    }
                }
            }
        }
        out
    }
}

/// A semidirect product `H ⋊ G` with its structure maps. Elements `(h, g)`
/// are encoded as `h * |G| + g`.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub group: Arc<FiniteGroup>,
    pub inj_target: GroupHom,
    pub inj_actor: GroupHom,
    pub proj: GroupHom,
}

impl Semidirect {
    pub fn encode(&self, h: usize, g: usize) -> usize {
        h * self.proj.cod().order() + g
    }

    pub fn decode(&self, x: usize) -> (usize, usize) {
        let n = self.proj.cod().order();
        (x / n, x % n)
    }
}

/// `H ⋊ G` with `(h, g)(h', g') = (h (g.h'), g g')`.
pub fn semidirect_product(act: &GroupAction) -> Result<Semidirect, GrpError> {
    let (h, g) = (act.target.clone(), act.actor.clone());
    let (nh, ng) = (h.order(), g.order());
    let n = nh * ng;
    if n > DERIVED_ORDER_CAP {
        return Err(GrpError::TooLarge { order: n, cap: DERIVED_ORDER_CAP });
    }
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (h1, g1) = (x / ng, x % ng);
        for y in 0..n {
            let (h2, g2) = (y / ng, y % ng);
            let hh = h.mul(h1, act.apply(g1, h2));
            table.push((hh * ng + g.mul(g1, g2)) as u32);
        }
    }
    let group = Arc::new(FiniteGroup::from_flat_unchecked(n, table));
    let inj_target = GroupHom::new_unchecked(h.clone(), group.clone(), h.elements().map(|a| a * ng).collect());
    let inj_actor = GroupHom::new_unchecked(g.clone(), group.clone(), g.elements().collect());
    let proj = GroupHom::new_unchecked(group.clone(), g.clone(), (0..n).map(|x| x % ng).collect());
    Ok(Semidirect { group, inj_target, inj_actor, proj })
}

/// `A x B` as a semidirect product with trivial action.
pub fn direct_product(a: Arc<FiniteGroup>, b: Arc<FiniteGroup>) -> Result<Semidirect, GrpError> {
    semidirect_product(&GroupAction::trivial(b, a))
}
