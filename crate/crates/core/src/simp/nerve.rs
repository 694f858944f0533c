use std::sync::Arc;

use crate::grp::{FiniteGroup, GroupOps, GrpError, Subgroup, Violation, DERIVED_ORDER_CAP};
use crate::par;
use crate::xmod::{CrossedModule, XModMorphism};

use super::SimpError;

/// Largest simplicial dimension handled.
pub const MAX_DIM: usize = 12;
/// Largest nerve-level order; levels are never materialized, this only
/// keeps ids inside a machine word with room to spare.
pub const NERVE_LEVEL_CAP: usize = 1 << 40;

/// Level `n` of the nerve of `(H, G, mu)`: tuples `(h_1, ..., h_n, g)`,
/// encoded in mixed radix with `g` least significant, then `h_n`, and so on.
///
/// With `g_n = g` and `g_i = mu(h_{i+1}) g_{i+1}`, the product is
/// `(h_i)(h'_i) = (h_i . g_i.h'_i)` and `g g'` on the last slot.
#[derive(Clone, Debug)]
pub struct NerveLevel {
    x: Arc<CrossedModule>,
    n: usize,
    nh: usize,
    ng: usize,
    order: usize,
}

type Digits = [usize; MAX_DIM + 1];

impl NerveLevel {
    pub fn new(x: Arc<CrossedModule>, n: usize) -> Result<Self, SimpError> {
        if n > MAX_DIM {
            return Err(SimpError::TooLarge { level: n, order: usize::MAX, cap: NERVE_LEVEL_CAP });
        }
        let (nh, ng) = (x.h().order(), x.g().order());
        let order = (0..n)
            .try_fold(ng, |acc, _| acc.checked_mul(nh))
            .filter(|&o| o <= NERVE_LEVEL_CAP)
            .ok_or(SimpError::TooLarge { level: n, order: usize::MAX, cap: NERVE_LEVEL_CAP })?;
        Ok(NerveLevel { x, n, nh, ng, order })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn xmod(&self) -> &Arc<CrossedModule> {
        &self.x
    }

    /// Slots `h_1..h_n` in positions `0..n`, `g` in position `n`.
    #[inline]
    fn digits(&self, mut id: usize) -> Digits {
        let mut d = [0; MAX_DIM + 1];
        d[self.n] = id % self.ng;
        id /= self.ng;
        for i in (0..self.n).rev() {
            d[i] = id % self.nh;
            id /= self.nh;
        }
        d
    }

    #[inline]
    fn pack(&self, d: &Digits, n: usize) -> usize {
        let mut id = 0;
        for &h in &d[..n] {
            id = id * self.nh + h;
        }
        id * self.ng + d[n]
    }

    pub fn decode(&self, id: usize) -> (Vec<usize>, usize) {
        let d = self.digits(id);
        (d[..self.n].to_vec(), d[self.n])
    }

    pub fn encode(&self, hs: &[usize], g: usize) -> usize {
        assert_eq!(hs.len(), self.n);
        let mut d = [0; MAX_DIM + 1];
        d[..self.n].copy_from_slice(hs);
        d[self.n] = g;
        self.pack(&d, self.n)
    }

    /// Face `d_i`: level `n` to level `n - 1`.
    pub fn face(&self, i: usize, id: usize) -> usize {
        let n = self.n;
        assert!(i <= n && n >= 1);
        let mut d = self.digits(id);
        let (h, mu) = (&**self.x.h(), self.x.mu());
        if i == 0 {
            d.copy_within(1..=n, 0);
        } else if i < n {
            d[i - 1] = h.mul(d[i - 1], d[i]);
            d.copy_within(i + 1..=n, i);
        } else {
            let g = self.x.g().mul(mu.apply(d[n - 1]), d[n]);
            d[n - 1] = g;
        }
        self.pack(&d, n - 1)
    }

    /// Degeneracy `s_i`: level `n` to level `n + 1`, inserting `1` after `h_i`.
    pub fn degeneracy(&self, i: usize, id: usize) -> usize {
        let n = self.n;
        assert!(i <= n && n < MAX_DIM);
        let mut d = self.digits(id);
        d.copy_within(i..=n, i + 1);
        d[i] = 0;
        self.pack(&d, n + 1)
    }

    /// Image under the levelwise map induced by a morphism, encoded in `target`.
    pub fn map_element(&self, m: &XModMorphism, target: &NerveLevel, id: usize) -> usize {
        let mut d = self.digits(id);
        for h in &mut d[..self.n] {
            *h = m.rho().apply(*h);
        }
        d[self.n] = m.nu().apply(d[self.n]);
        target.pack(&d, self.n)
    }

    /// `(1, .., h, .., 1, 1)` with `h` in slot `i` and `(1, .., 1, g)`:
    /// these generate the level.
    pub fn slot_generators(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for h in 1..self.nh {
                let mut d = [0; MAX_DIM + 1];
                d[i] = h;
                out.push(self.pack(&d, self.n));
            }
        }
        out.extend(1..self.ng);
        out
    }
}

impl GroupOps for NerveLevel {
    fn order(&self) -> usize {
        self.order
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.digits(a), self.digits(b));
        let (h, g, mu) = (&**self.x.h(), &**self.x.g(), self.x.mu());
        let mut out = [0; MAX_DIM + 1];
        let mut gi = x[self.n];
        out[self.n] = g.mul(gi, y[self.n]);
        for i in (0..self.n).rev() {
            out[i] = h.mul(x[i], self.x.apply(gi, y[i]));
            gi = g.mul(mu.apply(x[i]), gi);
        }
        self.pack(&out, self.n)
    }

    fn inv(&self, a: usize) -> usize {
        let x = self.digits(a);
        let (h, g, mu) = (&**self.x.h(), &**self.x.g(), self.x.mu());
        let mut out = [0; MAX_DIM + 1];
        let mut gi = x[self.n];
        out[self.n] = g.inv(gi);
        for i in (0..self.n).rev() {
            out[i] = self.x.apply(g.inv(gi), h.inv(x[i]));
            gi = g.mul(mu.apply(x[i]), gi);
        }
        self.pack(&out, self.n)
    }
}

/// The nerve of a crossed module through dimension `bound`.
#[derive(Clone, Debug)]
pub struct SimplicialGroup {
    x: Arc<CrossedModule>,
    levels: Vec<NerveLevel>,
}

/// Moore complex: member ids of `M_n` inside level `n`, and `d_n` on them.
#[derive(Clone, Debug)]
pub struct MooreComplex {
    pub members: Vec<Vec<usize>>,
}

impl SimplicialGroup {
    pub fn nerve(x: Arc<CrossedModule>, bound: usize) -> Result<Self, SimpError> {
        let levels = (0..=bound).map(|n| NerveLevel::new(x.clone(), n)).collect::<Result<_, _>>()?;
        Ok(SimplicialGroup { x, levels })
    }

    pub fn xmod(&self) -> &Arc<CrossedModule> {
        &self.x
    }

    pub fn bound(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &NerveLevel {
        &self.levels[n]
    }

    pub fn face(&self, n: usize, i: usize, id: usize) -> usize {
        self.levels[n].face(i, id)
    }

    pub fn degeneracy(&self, n: usize, i: usize, id: usize) -> usize {
        self.levels[n].degeneracy(i, id)
    }

    /// Checks every simplicial identity on every element, that each level
    /// is a group (on generators) and that faces and degeneracies are
    /// homomorphisms (on generators, which suffices).
    pub fn check_identities(&self) -> Vec<Violation> {
        let per_level = par::map_range(self.levels.len(), |n| self.check_level(n));
        per_level.into_iter().flatten().collect()
    }

    fn check_level(&self, n: usize) -> Vec<Violation> {
        let lv = &self.levels[n];
        let top = self.bound();
        let mut out = Vec::new();
        let gens = lv.slot_generators();
        let elems = 0..lv.order();

        // group axioms: associativity against generators, inverses
        let assoc = elems.clone().find_map(|a| {
            gens.iter().find_map(|&s| {
                gens.iter()
                    .find(|&&t| lv.mul(lv.mul(a, s), t) != lv.mul(a, lv.mul(s, t)))
                    .map(|&t| vec![n, a, s, t])
            })
        });
        if let Some(w) = assoc {
            out.push(Violation::new("nerve product is associative", w));
        }
        if let Some(a) = elems.clone().find(|&a| lv.mul(a, lv.inv(a)) != 0 || lv.mul(0, a) != a) {
            out.push(Violation::new("nerve identity and inverses", vec![n, a]));
        }

        let hom = |f: &dyn Fn(usize) -> usize, tgt: &NerveLevel| {
            f(0) == 0 && elems.clone().all(|a| gens.iter().all(|&s| f(lv.mul(a, s)) == tgt.mul(f(a), f(s))))
        };
        if n >= 1 {
            let below = &self.levels[n - 1];
            for i in 0..=n {
                if !hom(&|a| lv.face(i, a), below) {
                    out.push(Violation::new("face is a homomorphism", vec![n, i]));
                }
            }
        }
        if n < top {
            let above = &self.levels[n + 1];
            for i in 0..=n {
                if !hom(&|a| lv.degeneracy(i, a), above) {
                    out.push(Violation::new("degeneracy is a homomorphism", vec![n, i]));
                }
            }
        }

        for a in elems {
            if n >= 2 {
                let below = &self.levels[n - 1];
                for j in 1..=n {
                    for i in 0..j {
                        if below.face(i, lv.face(j, a)) != below.face(j - 1, lv.face(i, a)) {
                            out.push(Violation::new("d_i d_j = d_{j-1} d_i (i < j)", vec![n, i, j, a]));
                        }
                    }
                }
            }
            if n < top {
                let above = &self.levels[n + 1];
                for j in 0..=n {
                    let s = lv.degeneracy(j, a);
                    for i in 0..=n + 1 {
                        let lhs = above.face(i, s);
                        let rhs = if i < j {
                            self.levels[n - 1].degeneracy(j - 1, lv.face(i, a))
                        } else if i == j || i == j + 1 {
                            a
                        } else {
                            self.levels[n - 1].degeneracy(j, lv.face(i - 1, a))
                        };
                        if lhs != rhs {
                            out.push(Violation::new("d_i s_j identities", vec![n, i, j, a]));
                        }
                    }
                    if n + 1 < top {
                        let above2 = &self.levels[n + 1];
                        for i in 0..=j {
                            if above2.degeneracy(i, s) != above2.degeneracy(j + 1, lv.degeneracy(i, a)) {
                                out.push(Violation::new("s_i s_j = s_{j+1} s_i (i <= j)", vec![n, i, j, a]));
                            }
                        }
                    }
                }
            }
            if out.len() > 16 {
                break;
            }
        }
        out
    }

    /// `M_n = ∩_{i<n} Ker d_i` for `n <= bound`.
    pub fn moore_complex(&self) -> MooreComplex {
        let members = par::map_range(self.levels.len(), |n| {
            let lv = &self.levels[n];
            (0..lv.order()).filter(|&a| (0..n).all(|i| lv.face(i, a) == 0)).collect()
        });
        MooreComplex { members }
    }

    /// `pi_n = Ker d_n / Im d_{n+1}` on the Moore complex, for `n < bound`;
    /// `pi_0` is level 0 modulo the image of `d_1`.
    pub fn homotopy_group(&self, n: usize) -> Result<Arc<FiniteGroup>, SimpError> {
        if n >= self.bound() {
            return Err(SimpError::Bound { degree: n, bound: self.bound() });
        }
        let moore = self.moore_complex();
        let lv = &self.levels[n];
        let cycles: Vec<usize> = if n == 0 {
            moore.members[0].clone()
        } else {
            moore.members[n].iter().copied().filter(|&a| lv.face(n, a) == 0).collect()
        };
        let ambient = Arc::new(materialize(lv, &cycles)?);
        let up = &self.levels[n + 1];
        let mut bounds: Vec<usize> = moore.members[n + 1]
            .iter()
            .map(|&b| up.face(n + 1, b))
            .map(|y| cycles.binary_search(&y).map_err(|_| SimpError::NotAComplex(n)))
            .collect::<Result<_, _>>()?;
        bounds.sort_unstable();
        bounds.dedup();
        let sub = Subgroup::new(ambient, bounds).map_err(SimpError::Group)?;
        let (q, _) = crate::grp::quotient_group(&sub).map_err(SimpError::Group)?;
        Ok(q)
    }
}

/// The subset `members` (sorted, closed) of a level as a group, ids by position.
fn materialize(lv: &NerveLevel, members: &[usize]) -> Result<FiniteGroup, SimpError> {
    let n = members.len();
    if n > DERIVED_ORDER_CAP {
        return Err(SimpError::Group(GrpError::TooLarge { order: n, cap: DERIVED_ORDER_CAP }));
    }
    let mut rows = Vec::with_capacity(n);
    for &a in members {
        let mut row: Vec<u32> = Vec::with_capacity(n);
        for &b in members {
            let p = members.binary_search(&lv.mul(a, b)).map_err(|_| SimpError::NotAComplex(lv.dim()))?;
            row.push(p as u32);
        }
        rows.push(row);
    }
    let table = rows.concat();
    Ok(FiniteGroup::from_flat_unchecked(n, table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{are_isomorphic, GroupAction, GroupHom};

    fn c(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n))
    }

    fn zero_xmod(n: usize) -> Arc<CrossedModule> {
        Arc::new(CrossedModule::new(GroupHom::zero(c(n), c(n)), GroupAction::trivial(c(n), c(n))).unwrap())
    }

    #[test]
    fn constant_nerve() {
        let s = SimplicialGroup::nerve(Arc::new(CrossedModule::of_group(c(3))), 3).unwrap();
        for n in 0..=3 {
            assert_eq!(s.level(n).order(), 3);
        }
        assert_eq!(s.face(2, 1, 2), 2);
        assert!(s.check_identities().is_empty());
    }

    #[test]
    fn level_two_middle_face() {
        let s3 = Arc::new(FiniteGroup::symmetric3());
        let x = Arc::new(CrossedModule::identity(s3.clone()));
        let s = SimplicialGroup::nerve(x, 2).unwrap();
        let lv = s.level(2);
        for (h1, h2, g) in [(1, 2, 3), (4, 5, 0), (2, 2, 5)] {
            let id = lv.encode(&[h1, h2], g);
            assert_eq!(s.level(1).decode(lv.face(1, id)), (vec![s3.mul(h1, h2)], g));
        }
        assert_eq!(s.level(1).order(), 36);
    }

    #[test]
    fn identities_hold() {
        let s3 = Arc::new(FiniteGroup::symmetric3());
        let a3 = crate::grp::commutator_data(&s3, None).unwrap();
        for x in [
            zero_xmod(2),
            Arc::new(CrossedModule::identity(s3.clone())),
            Arc::new(crate::xmod::inclusion_xmod(&a3).unwrap()),
        ] {
            let s = SimplicialGroup::nerve(x, 3).unwrap();
            assert_eq!(s.check_identities(), vec![]);
        }
    }

    #[test]
    fn moore_complex_and_homotopy() {
        let x = zero_xmod(2);
        let s = SimplicialGroup::nerve(x, 3).unwrap();
        let m = s.moore_complex();
        assert_eq!(m.members[0].len(), 2);
        assert_eq!(m.members[1].len(), 2);
        assert_eq!(m.members[2], vec![0]);
        assert_eq!(s.homotopy_group(0).unwrap().order(), 2);
        assert_eq!(s.homotopy_group(1).unwrap().order(), 2);
        assert_eq!(s.homotopy_group(2).unwrap().order(), 1);

        let s3 = Arc::new(FiniteGroup::symmetric3());
        let a3 = crate::grp::commutator_data(&s3, None).unwrap();
        let x = Arc::new(crate::xmod::inclusion_xmod(&a3).unwrap());
        let s = SimplicialGroup::nerve(x, 3).unwrap();
        let pi0 = s.homotopy_group(0).unwrap();
        assert_eq!(are_isomorphic(&pi0, &FiniteGroup::cyclic(2)), Some(true));
        assert_eq!(s.homotopy_group(1).unwrap().order(), 1);
    }

    #[test]
    fn functorial() {
        let x = CrossedModule::identity(c(4));
        let p = GroupHom::new(c(4), c(2), vec![0, 1, 0, 1]).unwrap();
        let y = CrossedModule::identity(c(2));
        let m = XModMorphism::new(x.clone(), y.clone(), p.clone(), p).unwrap();
        let (sx, sy) = (
            SimplicialGroup::nerve(Arc::new(x), 2).unwrap(),
            SimplicialGroup::nerve(Arc::new(y), 2).unwrap(),
        );
        for n in 1..=2 {
            let (a, b) = (sx.level(n), sy.level(n));
            for e in 0..a.order() {
                for i in 0..=n {
                    let lhs = sy.level(n - 1).clone();
                    assert_eq!(
                        b.face(i, a.map_element(&m, b, e)),
                        sx.level(n - 1).map_element(&m, &lhs, a.face(i, e))
                    );
                }
            }
        }
    }
}
