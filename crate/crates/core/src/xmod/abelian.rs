use std::sync::Arc;

use crate::abgrp::{Int, IntMatrix, PresentedAb, SparseVec};
use crate::grp::{commutator_data, quotient_group, FiniteGroup, GroupAction, GroupHom, GroupOps};

use super::{CrossedModule, XModError, XModMorphism};

/// A finite abelian group together with a presentation on a greedy
/// generating set and the coordinates of every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianView {
    group: Arc<FiniteGroup>,
    gens: Vec<usize>,
    coords: Vec<SparseVec>,
    presented: PresentedAb,
}

impl AbelianView {
    /// Relations are the non-tree edges of a breadth-first spanning tree of
    /// the Cayley graph, `coords(x) + e_j - coords(x + s_j)`.
    pub fn new(group: Arc<FiniteGroup>) -> Result<Self, XModError> {
        let g = &*group;
        for a in g.elements() {
            for b in 0..a {
                if g.mul(a, b) != g.mul(b, a) {
                    return Err(XModError::NotAbelian(a, b));
                }
            }
        }
        let gens = g.generating_set();
        let k = gens.len();
        let mut coords: Vec<Option<SparseVec>> = vec![None; g.order()];
        coords[0] = Some(SparseVec::new());
        let mut queue = vec![0usize];
        let mut relations = Vec::new();
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            let cx = coords[x].clone().expect("queued");
            for (j, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                let cy = cx.add(&SparseVec::unit(j));
                match &coords[y] {
                    None => {
                        coords[y] = Some(cy);
                        queue.push(y);
                    }
                    Some(existing) => {
                        let r = cy.sub(existing);
                        if !r.is_zero() {
                            relations.push(r);
                        }
                    }
                }
            }
            head += 1;
        }
        let coords = coords.into_iter().map(|c| c.expect("generating set")).collect();
        let presented = PresentedAb::new(k, IntMatrix::from_columns(k, relations));
        Ok(AbelianView { group, gens, coords, presented })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn presented(&self) -> &PresentedAb {
        &self.presented
    }

    pub fn coords(&self, x: usize) -> &SparseVec {
        &self.coords[x]
    }

    /// The element represented by a coordinate vector.
    pub fn element_of(&self, v: &SparseVec) -> usize {
        let g = &*self.group;
        let mut acc = 0;
        for (j, c) in v.iter() {
            let s = self.gens[j];
            let ord = Int::from(g.element_order(s));
            let e = c.div_rem_euclid(&ord).1.to_i64().expect("small") as usize;
            acc = g.mul(acc, g.pow(s, e));
        }
        acc
    }

    /// Matrix of an element map `f` into `target`, on the chosen generators.
    pub fn matrix_of(&self, target: &AbelianView, f: impl Fn(usize) -> usize) -> IntMatrix {
        let cols = self.gens.iter().map(|&s| target.coords(f(s)).clone()).collect();
        IntMatrix::from_columns(target.gens.len(), cols)
    }

    pub fn hom_matrix(&self, target: &AbelianView, f: &GroupHom) -> IntMatrix {
        self.matrix_of(target, |x| f.apply(x))
    }
}

/// An abelian crossed module `(C, A, nu)` with trivial action, with
/// presentations of both groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianXMod {
    xmod: CrossedModule,
    c: AbelianView,
    a: AbelianView,
    nu: IntMatrix,
}

impl AbelianXMod {
    pub fn new(xmod: CrossedModule) -> Result<Self, XModError> {
        let c = AbelianView::new(xmod.h().clone())?;
        let a = AbelianView::new(xmod.g().clone())?;
        for g in xmod.g().elements() {
            if let Some(h) = xmod.h().elements().find(|&h| xmod.apply(g, h) != h) {
                return Err(XModError::NontrivialAction(g, h));
            }
        }
        let nu = c.hom_matrix(&a, xmod.mu());
        Ok(AbelianXMod { xmod, c, a, nu })
    }

    /// `nu: C -> A` with trivial action.
    pub fn from_hom(nu: GroupHom) -> Result<Self, XModError> {
        let act = GroupAction::trivial(nu.cod().clone(), nu.dom().clone());
        Self::new(CrossedModule::new(nu, act)?)
    }

    /// `(0, A, 0)`
    pub fn of_group(a: Arc<FiniteGroup>) -> Result<Self, XModError> {
        Self::new(CrossedModule::of_group(a))
    }

    pub fn xmod(&self) -> &CrossedModule {
        &self.xmod
    }

    pub fn c(&self) -> &AbelianView {
        &self.c
    }

    pub fn a(&self) -> &AbelianView {
        &self.a
    }

    pub fn nu(&self) -> &IntMatrix {
        &self.nu
    }
}

/// `(H/[G,H], G/[G,G], mu)` with the quotient morphism.
pub fn abelianise(x: &CrossedModule) -> Result<(AbelianXMod, XModMorphism), XModError> {
    let gh = commutator_data(x.h(), Some(x.act()))?;
    let gg = commutator_data(x.g(), None)?;
    let (hq, ph) = quotient_group(&gh)?;
    let (gq, pg) = quotient_group(&gg)?;
    let mut mu = vec![usize::MAX; hq.order()];
    for h in x.h().elements() {
        mu[ph.apply(h)] = pg.apply(x.mu().apply(h));
    }
    let ab = AbelianXMod::from_hom(GroupHom::new(hq, gq, mu)?)?;
    let m = XModMorphism::new(x.clone(), ab.xmod().clone(), ph, pg)?;
    Ok((ab, m))
}
