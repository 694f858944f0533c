use crate::abgrp::{IntMatrix, PresentedAb, SparseVec};
use crate::grp::Violation;
use crate::xmod::AbelianXMod;

/// A simplicial abelian group through a bound, levels given by presentations
/// and faces and degeneracies by matrices on their generators.
#[derive(Clone, Debug)]
pub struct SimplicialAbelian {
    levels: Vec<PresentedAb>,
    faces: Vec<Vec<IntMatrix>>,
    degeneracies: Vec<Vec<IntMatrix>>,
}

impl SimplicialAbelian {
    /// Constant on `m`, all structure maps the identity.
    pub fn constant(m: PresentedAb, bound: usize) -> Self {
        let id = IntMatrix::identity(m.generators());
        SimplicialAbelian {
            levels: vec![m; bound + 1],
            faces: (0..=bound).map(|p| if p == 0 { vec![] } else { vec![id.clone(); p + 1] }).collect(),
            degeneracies: (0..=bound).map(|p| if p == bound { vec![] } else { vec![id.clone(); p + 1] }).collect(),
        }
    }

    pub fn bound(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, p: usize) -> &PresentedAb {
        &self.levels[p]
    }

    /// `d_i` from level `p` to level `p - 1`.
    pub fn face(&self, p: usize, i: usize) -> &IntMatrix {
        &self.faces[p][i]
    }

    /// `s_i` from level `p` to level `p + 1`.
    pub fn degeneracy(&self, p: usize, i: usize) -> &IntMatrix {
        &self.degeneracies[p][i]
    }

    /// Relations map to relations, and the simplicial identities hold
    /// modulo relations.
    pub fn check_identities(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let same = |tgt: &PresentedAb, f: &IntMatrix, g: &IntMatrix| {
            (0..f.cols()).all(|j| tgt.is_zero_element(&f.column(j).sub(g.column(j))))
        };
        let well_defined = |src: &PresentedAb, tgt: &PresentedAb, f: &IntMatrix| {
            let r = src.relations();
            (0..r.cols()).all(|j| tgt.is_zero_element(&f.mul_vec(r.column(j))))
        };
        let top = self.bound();
        for p in 0..=top {
            for i in 0..self.faces[p].len() {
                if !well_defined(&self.levels[p], &self.levels[p - 1], &self.faces[p][i]) {
                    out.push(Violation::new("face respects relations", vec![p, i]));
                }
            }
            for i in 0..self.degeneracies[p].len() {
                if !well_defined(&self.levels[p], &self.levels[p + 1], &self.degeneracies[p][i]) {
                    out.push(Violation::new("degeneracy respects relations", vec![p, i]));
                }
            }
            if p >= 2 {
                for j in 1..=p {
                    for i in 0..j {
                        let lhs = self.faces[p - 1][i].mul(&self.faces[p][j]);
                        let rhs = self.faces[p - 1][j - 1].mul(&self.faces[p][i]);
                        if !same(&self.levels[p - 2], &lhs, &rhs) {
                            out.push(Violation::new("d_i d_j = d_{j-1} d_i (i < j)", vec![p, i, j]));
                        }
                    }
                }
            }
            if p < top {
                let id = IntMatrix::identity(self.levels[p].generators());
                for j in 0..=p {
                    let s = &self.degeneracies[p][j];
                    for i in 0..=p + 1 {
                        let lhs = self.faces[p + 1][i].mul(s);
                        let rhs = if i < j {
                            self.degeneracies[p - 1][j - 1].mul(&self.faces[p][i])
                        } else if i == j || i == j + 1 {
                            id.clone()
                        } else {
                            self.degeneracies[p - 1][j].mul(&self.faces[p][i - 1])
                        };
                        if !same(&self.levels[p], &lhs, &rhs) {
                            out.push(Violation::new("d_i s_j identities", vec![p, i, j]));
                        }
                    }
                    if p + 1 < top {
                        for i in 0..=j {
                            let lhs = self.degeneracies[p + 1][i].mul(s);
                            let rhs = self.degeneracies[p + 1][j + 1].mul(&self.degeneracies[p][i]);
                            if !same(&self.levels[p + 2], &lhs, &rhs) {
                                out.push(Violation::new("s_i s_j = s_{j+1} s_i (i <= j)", vec![p, i, j]));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Nerve of `(C, A, nu)`: level `p` is `C^p ⊕ A` with the `C` blocks first.
pub fn abelian_nerve(m: &AbelianXMod, bound: usize) -> SimplicialAbelian {
    let (pc, pa) = (m.c().presented(), m.a().presented());
    let (kc, ka) = (pc.generators(), pa.generators());
    let levels: Vec<PresentedAb> = (0..=bound)
        .map(|p| {
            let mut parts = vec![pc; p];
            parts.push(pa);
            PresentedAb::direct_sum(&parts)
        })
        .collect();

    // column for C generator `j` in slot `s` (1-based) sent to slot `t`
    let slot = |t: usize, j: usize| SparseVec::unit((t - 1) * kc + j);
    let a_block = |p: usize, j: usize| SparseVec::unit(p * kc + j);

    let face = |p: usize, i: usize| {
        let mut cols = Vec::with_capacity(p * kc + ka);
        for s in 1..=p {
            for j in 0..kc {
                cols.push(if i == 0 {
                    if s == 1 { SparseVec::new() } else { slot(s - 1, j) }
                } else if i < p {
                    if s <= i { slot(s, j) } else { slot(s - 1, j) }
                } else if s < p {
                    slot(s, j)
                } else {
                    m.nu().column(j).shifted((p - 1) * kc)
                });
            }
        }
        cols.extend((0..ka).map(|j| a_block(p - 1, j)));
        IntMatrix::from_columns((p - 1) * kc + ka, cols)
    };
    let degeneracy = |p: usize, i: usize| {
        let mut cols = Vec::with_capacity(p * kc + ka);
        for s in 1..=p {
            for j in 0..kc {
                cols.push(if s <= i { slot(s, j) } else { slot(s + 1, j) });
            }
        }
        cols.extend((0..ka).map(|j| a_block(p + 1, j)));
        IntMatrix::from_columns((p + 1) * kc + ka, cols)
    };

    SimplicialAbelian {
        faces: (0..=bound).map(|p| if p == 0 { vec![] } else { (0..=p).map(|i| face(p, i)).collect() }).collect(),
        degeneracies: (0..=bound)
            .map(|p| if p == bound { vec![] } else { (0..=p).map(|i| degeneracy(p, i)).collect() })
            .collect(),
        levels,
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::abgrp::FgAbelian;
    use crate::grp::{FiniteGroup, GroupHom};

    fn c(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n))
    }

    #[test]
    fn constant_is_simplicial() {
        let s = SimplicialAbelian::constant(PresentedAb::free(1), 4);
        assert!(s.check_identities().is_empty());
    }

    #[test]
    fn nerve_of_abelian_xmod() {
        let m = AbelianXMod::from_hom(GroupHom::new(c(2), c(4), vec![0, 2]).unwrap()).unwrap();
        let s = abelian_nerve(&m, 4);
        assert_eq!(s.check_identities(), vec![]);
        assert_eq!(s.level(2).canonical_form(), FgAbelian::from_cyclic_orders(&[2, 2, 4]));
        // last face sends (c_1, c_2, a) to (c_1, nu(c_2) + a)
        let v = SparseVec::from_i64(&[0, 1, 1]);
        let image = s.face(2, 2).mul_vec(&v);
        assert!(s.level(1).is_zero_element(&image.sub(&SparseVec::from_i64(&[0, 3]))));

        let m = AbelianXMod::from_hom(GroupHom::identity(c(3))).unwrap();
        assert!(abelian_nerve(&m, 3).check_identities().is_empty());
    }
}
