use std::sync::Arc;

use crate::abgrp::{IntMatrix, SparseVec};
use crate::grp::{GroupOps, Violation};
use crate::par;
use crate::xmod::{semidirect_xmod, SplitExtension, XModAction};

use super::{abelian_nerve, NerveLevel, SimpError, SimplicialAbelian, SimplicialGroup};

/// The levelwise action of the nerve of the actor on the nerve of the
/// module, by conjugation inside the nerve of the semidirect crossed module.
#[derive(Clone, Debug)]
pub struct NerveAction {
    split: SplitExtension,
    actor: SimplicialGroup,
    module: SimplicialAbelian,
    /// `tables[p][x]` is the matrix of `x` on level `p` of the module.
    tables: Vec<Vec<IntMatrix>>,
}

pub fn nerve_action(a: &XModAction, bound: usize) -> Result<NerveAction, SimpError> {
    let split = semidirect_xmod(a)?;
    let actor = SimplicialGroup::nerve(Arc::new(a.actor().clone()), bound)?;
    let module = abelian_nerve(a.module(), bound);
    let big = Arc::new(split.xmod.clone());
    let tables = (0..=bound)
        .map(|p| -> Result<Vec<IntMatrix>, SimpError> {
            let lv = NerveLevel::new(big.clone(), p)?;
            let order = actor.level(p).order();
            Ok(par::map_range(order, |x| action_matrix(a, &split, actor.level(p), &lv, x)))
        })
        .collect::<Result<_, _>>()?;
    Ok(NerveAction { split, actor, module, tables })
}

fn action_matrix(a: &XModAction, split: &SplitExtension, small: &NerveLevel, big: &NerveLevel, x: usize) -> IntMatrix {
    let p = small.dim();
    let (cv, av) = (a.module().c(), a.module().a());
    let (kc, ka) = (cv.generators().len(), av.generators().len());
    let (hs, g) = small.decode(x);
    let lift_x = big.encode(
        &hs.iter().map(|&h| split.top.encode(0, h)).collect::<Vec<_>>(),
        split.bottom.encode(0, g),
    );
    let lift_inv = big.inv(lift_x);
    let conj = |slots: &[usize], bottom: usize| -> SparseVec {
        let y = big.mul(big.mul(lift_x, big.encode(slots, bottom)), lift_inv);
        let (ts, b) = big.decode(y);
        let mut v = SparseVec::new();
        for (s, &t) in ts.iter().enumerate() {
            let (c, h) = split.top.decode(t);
            debug_assert_eq!(h, 0);
            v = v.add(&cv.coords(c).shifted(s * kc));
        }
        let (q, h) = split.bottom.decode(b);
        debug_assert_eq!(h, 0);
        v.add(&av.coords(q).shifted(p * kc))
    };
    let mut cols = Vec::with_capacity(p * kc + ka);
    for s in 0..p {
        for &c in cv.generators() {
            let mut slots = vec![0; p];
            slots[s] = split.top.encode(c, 0);
            cols.push(conj(&slots, 0));
        }
    }
    for &q in av.generators() {
        cols.push(conj(&vec![0; p], split.bottom.encode(q, 0)));
    }
    IntMatrix::from_columns(p * kc + ka, cols)
}

impl NerveAction {
    pub fn actor(&self) -> &SimplicialGroup {
        &self.actor
    }

    pub fn module(&self) -> &SimplicialAbelian {
        &self.module
    }

    pub fn split(&self) -> &SplitExtension {
        &self.split
    }

    /// Matrix of element `x` of the actor's level `p`.
    pub fn matrix(&self, p: usize, x: usize) -> &IntMatrix {
        &self.tables[p][x]
    }

    /// All matrices of level `p`, indexed by element.
    pub fn matrices(&self, p: usize) -> &[IntMatrix] {
        &self.tables[p]
    }

    /// Levelwise action axioms on generators and equivariance of every face
    /// and degeneracy, all modulo relations.
    pub fn validate(&self) -> Vec<Violation> {
        let per_level = par::map_range(self.tables.len(), |p| {
            let mut out = Vec::new();
            let lv = self.actor.level(p);
            let m = self.module.level(p);
            let same = |tgt: &crate::abgrp::PresentedAb, f: &IntMatrix, g: &IntMatrix| {
                (0..f.cols()).all(|j| tgt.is_zero_element(&f.column(j).sub(g.column(j))))
            };
            if !same(m, self.matrix(p, 0), &IntMatrix::identity(m.generators())) {
                out.push(Violation::new("identity acts trivially", vec![p]));
            }
            let gens = lv.slot_generators();
            'hom: for x in 0..lv.order() {
                for &s in &gens {
                    let lhs = self.matrix(p, lv.mul(x, s));
                    if !same(m, lhs, &self.matrix(p, x).mul(self.matrix(p, s))) {
                        out.push(Violation::new("(xy).m = x.(y.m)", vec![p, x, s]));
                        break 'hom;
                    }
                }
            }
            'eq: for x in 0..lv.order() {
                if p >= 1 {
                    for i in 0..=p {
                        let d = self.module.face(p, i);
                        let lhs = d.mul(self.matrix(p, x));
                        let rhs = self.matrix(p - 1, lv.face(i, x)).mul(d);
                        if !same(self.module.level(p - 1), &lhs, &rhs) {
                            out.push(Violation::new("d_i(x.m) = d_i(x).d_i(m)", vec![p, i, x]));
                            break 'eq;
                        }
                    }
                }
                if p < self.module.bound() {
                    for i in 0..=p {
                        let s = self.module.degeneracy(p, i);
                        let lhs = s.mul(self.matrix(p, x));
                        let rhs = self.matrix(p + 1, lv.degeneracy(i, x)).mul(s);
                        if !same(self.module.level(p + 1), &lhs, &rhs) {
                            out.push(Violation::new("s_i(x.m) = s_i(x).s_i(m)", vec![p, i, x]));
                            break 'eq;
                        }
                    }
                }
            }
            out
        });
        per_level.into_iter().flatten().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{FiniteGroup, GroupAction, GroupHom};
    use crate::xmod::{AbelianXMod, CrossedModule};

    fn c(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n))
    }

    #[test]
    fn trivial_action_is_identity() {
        let actor = CrossedModule::identity(c(3));
        let m = AbelianXMod::from_hom(GroupHom::identity(c(2))).unwrap();
        let na = nerve_action(&XModAction::trivial(actor, m), 2).unwrap();
        assert!(na.validate().is_empty());
        for x in 0..na.actor().level(2).order() {
            assert_eq!(na.matrix(2, x), &IntMatrix::identity(3));
        }
    }

    #[test]
    fn sign_action_on_c3() {
        // C2 acting on C3 by inversion, as (0, C3, 0) over (0, C2, 0)
        let actor = CrossedModule::of_group(c(2));
        let m = AbelianXMod::of_group(c(3)).unwrap();
        let one = m.xmod().h().clone();
        let act_a = GroupAction::new(c(2), c(3), &[vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        let act = XModAction::new(actor.clone(), m, GroupAction::trivial(c(2), one), act_a, vec![vec![0; 3]]).unwrap();
        let na = nerve_action(&act, 2).unwrap();
        assert!(na.validate().is_empty());
        let neg = na.matrix(1, 1);
        assert!(na.module().level(1).is_zero_element(&neg.column(0).add(&SparseVec::unit(0))));
    }

    #[test]
    fn action_with_pairing() {
        // (C2, C2, id) acting on (C2, C2, 0) with xi(h, a) = h a
        let actor = CrossedModule::identity(c(2));
        let m = AbelianXMod::from_hom(GroupHom::zero(c(2), c(2))).unwrap();
        let triv = GroupAction::trivial(c(2), c(2));
        let act = XModAction::new(actor, m, triv.clone(), triv, vec![vec![0, 0], vec![0, 1]]).unwrap();
        let na = nerve_action(&act, 3).unwrap();
        assert_eq!(na.validate(), vec![]);
        // (h) in level 1 sends the A generator to -xi(h, a) in the C slot plus a
        let x = na.actor().level(1).encode(&[1], 0);
        let col = na.matrix(1, x).column(1).clone();
        assert!(na.module().level(1).is_zero_element(&col.sub(&SparseVec::from_i64(&[1, 1]))));
        assert!(na.matrix(1, x) != &IntMatrix::identity(2));
    }
}
