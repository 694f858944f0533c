//! Chain complexes of presented abelian groups and their homology.
//!
//! Degree-n cycles are the vectors of the free cover of term n whose
//! boundary lies in the relation span of term n-1. Homology is presented by
//! a basis of that cycle lattice modulo boundaries plus the relations of
//! term n, then diagonalized. Every canonical summand keeps a representative
//! cycle, which is what makes induced and connecting maps computable.

use super::fgab::{FgAbelian, PresentedAb};
use super::int::Int;
use super::lattice::Lattice;
use super::matrix::{IntMatrix, SparseVec};
use super::snf::{dense_snf, Track};
use super::AbError;
use crate::par;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    terms: Vec<PresentedAb>,
    /// `boundaries[n - 1]` is `d_n : terms[n] -> terms[n - 1]`.
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(terms: Vec<PresentedAb>, boundaries: Vec<IntMatrix>) -> Result<Self, AbError> {
        if terms.is_empty() {
            return Err(AbError::Shape("a complex needs at least one term".into()));
        }
        if boundaries.len() + 1 != terms.len() {
            return Err(AbError::Shape(format!(
                "{} terms need {} boundaries, got {}",
                terms.len(),
                terms.len() - 1,
                boundaries.len()
            )));
        }
        for (i, d) in boundaries.iter().enumerate() {
            let n = i + 1;
            if d.cols() != terms[n].generators() || d.rows() != terms[n - 1].generators() {
                return Err(AbError::Shape(format!(
                    "d_{n} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    terms[n - 1].generators(),
                    terms[n].generators()
                )));
            }
        }
        Ok(ChainComplex { terms, boundaries })
    }

    /// Builds and verifies the complex axioms.
    pub fn checked(terms: Vec<PresentedAb>, boundaries: Vec<IntMatrix>) -> Result<Self, AbError> {
        let c = ChainComplex::new(terms, boundaries)?;
        c.verify()?;
        Ok(c)
    }

    /// Highest degree carried.
    pub fn top(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, n: usize) -> &PresentedAb {
        &self.terms[n]
    }

    pub fn terms(&self) -> &[PresentedAb] {
        &self.terms
    }

    /// `d_n`, with `d_0` the zero map to the zero group and `d_{top+1}` the
    /// zero map from the zero group.
    pub fn boundary(&self, n: usize) -> IntMatrix {
        if n == 0 {
            IntMatrix::zeros(0, self.terms[0].generators())
        } else if n > self.top() {
            IntMatrix::zeros(self.terms[self.top()].generators(), 0)
        } else {
            self.boundaries[n - 1].clone()
        }
    }

    fn boundary_ref(&self, n: usize) -> Option<&IntMatrix> {
        if n == 0 || n > self.top() {
            None
        } else {
            Some(&self.boundaries[n - 1])
        }
    }

    /// Checks that each `d_n` respects relations and that `d_{n-1} d_n`
    /// lands in the relation span of degree `n-2`.
    pub fn verify(&self) -> Result<(), AbError> {
        for n in 1..=self.top() {
            let d = &self.boundaries[n - 1];
            let target = self.terms[n - 1].relation_lattice();
            if !self.terms[n - 1].is_free() || !self.terms[n].is_free() {
                for (j, r) in self.terms[n].relations().columns().iter().enumerate() {
                    if !target.contains(&d.mul_vec(r)) {
                        return Err(AbError::NotAComplex(format!(
                            "d_{n} sends relation {j} outside the relations of degree {}",
                            n - 1
                        )));
                    }
                }
            }
            if n >= 2 {
                let dd = &self.boundaries[n - 2];
                let rel = self.terms[n - 2].relation_lattice();
                let bad = par::map_range(d.cols(), |j| {
                    let v = dd.mul_vec(d.column(j));
                    !(v.is_zero() || rel.contains(&v))
                });
                if let Some(j) = bad.iter().position(|b| *b) {
                    return Err(AbError::NotAComplex(format!(
                        "d_{} d_{n} is nonzero on generator {j}",
                        n - 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Homology in degree `n` with cycle representatives.
    pub fn homology(&self, n: usize) -> Result<Homology, AbError> {
        if n > self.top() {
            return Err(AbError::DegreeOutOfRange { degree: n, top: self.top() });
        }
        let k = self.terms[n].generators();
        let (cycles, boundaries) = par::join(
            || self.cycle_lattice(n),
            || {
                let mut b = Lattice::new(k);
                if let Some(d) = self.boundary_ref(n + 1) {
                    for c in d.columns() {
                        b.insert(c.clone());
                    }
                }
                for r in self.terms[n].relations().columns() {
                    b.insert(r.clone());
                }
                b
            },
        );
        Homology::from_lattices(n, cycles, &boundaries)
    }

    /// Lattice of degree-n cycles in the free cover of term n.
    fn cycle_lattice(&self, n: usize) -> Lattice {
        let k = self.terms[n].generators();
        let mut z = Lattice::new(k);
        let Some(d) = self.boundary_ref(n) else {
            for j in 0..k {
                z.insert(SparseVec::unit(j));
            }
            return z;
        };
        let prev = &self.terms[n - 1];
        let mut lat = Lattice::with_history(prev.generators());
        let mut kernel = Vec::new();
        for (j, c) in d.columns().iter().enumerate() {
            if let Some(h) = lat.insert_tracked(c.clone(), SparseVec::unit(j)) {
                kernel.push(h);
            }
        }
        for (j, r) in prev.relations().columns().iter().enumerate() {
            if let Some(h) = lat.insert_tracked(r.clone(), SparseVec::unit(k + j)) {
                kernel.push(h);
            }
        }
        for h in kernel {
            let x = if prev.is_free() { h } else { h.slice(0, k) };
            if !x.is_zero() {
                z.insert(x);
            }
        }
        z
    }
}

/// One homology group with enough data to evaluate maps into and out of it.
#[derive(Clone, Debug)]
pub struct Homology {
    degree: usize,
    group: FgAbelian,
    cycles: Lattice,
    /// Per canonical summand: row of the diagonalizing transform, applied to
    /// cycle-basis coordinates.
    coord_rows: Vec<Vec<Int>>,
    representatives: Vec<SparseVec>,
}

impl Homology {
    fn from_lattices(degree: usize, cycles: Lattice, boundaries: &Lattice) -> Result<Self, AbError> {
        let z = cycles.rank();
        let coords = par::map_slice(boundaries.basis(), |b| cycles.coordinates(b));
        let mut q = vec![vec![Int::ZERO; coords.len()]; z];
        for (j, c) in coords.into_iter().enumerate() {
            let c = c.ok_or_else(|| {
                AbError::NotAComplex(format!("a boundary in degree {degree} is not a cycle"))
            })?;
            for (i, v) in c.iter() {
                q[i][j] = v.clone();
            }
        }
        let ncols = q.first().map_or(0, |r| r.len());
        let res = dense_snf(z, ncols, q, Track { u: true, u_inv: true, v: false });
        let u = res.u.expect("tracked");
        let u_inv = res.u_inv.expect("tracked");

        // canonical order: free summands, then torsion in divisibility order
        let mut order: Vec<usize> = (res.rank..z).collect();
        let mut divisors = Vec::new();
        for i in 0..res.rank {
            let d = &res.a[i][i];
            if !d.is_one() {
                order.push(i);
                divisors.push(d.clone());
            }
        }
        let group = FgAbelian::new(z - res.rank, divisors)?;
        let basis = cycles.basis();
        let representatives = order
            .iter()
            .map(|&i| {
                let mut v = SparseVec::new();
                for (r, row) in u_inv.iter().enumerate() {
                    if !row[i].is_zero() {
                        v = v.axpy(&row[i], &basis[r]);
                    }
                }
                v
            })
            .collect();
        let coord_rows = order.iter().map(|&i| u[i].clone()).collect();
        Ok(Homology { degree, group, cycles, coord_rows, representatives })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &FgAbelian {
        &self.group
    }

    /// Representative cycles of the canonical generators, in canonical order.
    pub fn representatives(&self) -> &[SparseVec] {
        &self.representatives
    }

    /// Rank of the cycle lattice.
    pub fn cycle_rank(&self) -> usize {
        self.cycles.rank()
    }

    /// Canonical coordinates of the class of `cycle`, reduced modulo the
    /// summand orders.
    pub fn classify(&self, cycle: &SparseVec) -> Result<Vec<Int>, AbError> {
        let c = self.cycles.coordinates(cycle).ok_or(AbError::NotACycle(self.degree))?;
        let raw: Vec<Int> = self.coord_rows.iter().map(|row| c.dot_dense(row)).collect();
        Ok(self.group.reduce(&raw))
    }

    /// Matrix on canonical generators of the map induced by `f` (term-level
    /// matrix in this degree) into `target`.
    pub fn induced_to(&self, target: &Homology, f: &IntMatrix) -> Result<IntMatrix, AbError> {
        let cols = par::map_slice(&self.representatives, |r| {
            target.classify(&f.mul_vec(r)).map(|c| SparseVec::from_dense(&c))
        });
        let cols = cols.into_iter().collect::<Result<Vec<_>, _>>()?;
        Ok(IntMatrix::from_columns(target.group.num_summands(), cols))
    }
}

/// Checks the chain-map condition `f_{m-1} d_m = d'_m f_m` (modulo target
/// relations) for `m` in `degrees`, and that each `f_m` respects relations.
pub fn check_chain_map(
    src: &ChainComplex,
    tgt: &ChainComplex,
    f: &[IntMatrix],
    degrees: std::ops::RangeInclusive<usize>,
) -> Result<(), AbError> {
    for m in degrees {
        if m > src.top() || m > tgt.top() || m >= f.len() {
            continue;
        }
        let fm = &f[m];
        if fm.cols() != src.term(m).generators() || fm.rows() != tgt.term(m).generators() {
            return Err(AbError::Shape(format!("f_{m} has the wrong shape")));
        }
        let rel = tgt.term(m).relation_lattice();
        for r in src.term(m).relations().columns() {
            if !rel.contains(&fm.mul_vec(r)) {
                return Err(AbError::NotAChainMap(format!("f_{m} does not respect relations")));
            }
        }
        if m == 0 {
            continue;
        }
        let (d, dt) = (src.boundary(m), tgt.boundary(m));
        let fprev = &f[m - 1];
        let rel = tgt.term(m - 1).relation_lattice();
        for j in 0..d.cols() {
            let lhs = fprev.mul_vec(d.column(j));
            let rhs = dt.mul_vec(fm.column(j));
            let diff = lhs.sub(&rhs);
            if !(diff.is_zero() || rel.contains(&diff)) {
                return Err(AbError::NotAChainMap(format!(
                    "square at degree {m} fails on generator {j}"
                )));
            }
        }
    }
    Ok(())
}

/// Map induced on `H_n` by the chain map `f` (one matrix per degree).
pub fn induced_map_on_homology(
    src: &ChainComplex,
    tgt: &ChainComplex,
    f: &[IntMatrix],
    n: usize,
) -> Result<(Homology, Homology, IntMatrix), AbError> {
    check_chain_map(src, tgt, f, n..=n + 1)?;
    let hs = src.homology(n)?;
    let ht = tgt.homology(n)?;
    let m = hs.induced_to(&ht, &f[n])?;
    Ok((hs, ht, m))
}

/// Levelwise short exact sequence of complexes `0 -> sub -> mid -> quot -> 0`.
pub struct ShortExactChains<'a> {
    pub sub: &'a ChainComplex,
    pub mid: &'a ChainComplex,
    pub quot: &'a ChainComplex,
    pub incl: &'a [IntMatrix],
    pub proj: &'a [IntMatrix],
}

impl ShortExactChains<'_> {
    /// Verifies exactness at every level and the chain-map conditions.
    pub fn verify(&self) -> Result<(), AbError> {
        let top = self.mid.top();
        check_chain_map(self.sub, self.mid, self.incl, 0..=top)?;
        check_chain_map(self.mid, self.quot, self.proj, 0..=top)?;
        for n in 0..=top {
            let zero = PresentedAb::zero();
            let (a, b, c) = (self.sub.term(n), self.mid.term(n), self.quot.term(n));
            let z_in = IntMatrix::zeros(a.generators(), 0);
            let z_out = IntMatrix::zeros(0, c.generators());
            let checks = [
                check_exactness_at(&z_in, &self.incl[n], (&zero, a, b))?,
                check_exactness_at(&self.incl[n], &self.proj[n], (a, b, c))?,
                check_exactness_at(&self.proj[n], &z_out, (b, c, &zero))?,
            ];
            if let Some(pos) = checks.iter().position(|ok| !ok) {
                return Err(AbError::LiftFailed(format!(
                    "sequence of complexes is not exact at degree {n} (position {pos})"
                )));
            }
        }
        Ok(())
    }
}

/// The connecting map `H_n(quot) -> H_{n-1}(sub)` by zig-zag lifting.
pub fn connecting_homomorphism(
    ses: &ShortExactChains<'_>,
    n: usize,
    h_quot: &Homology,
    h_sub: &Homology,
) -> Result<IntMatrix, AbError> {
    if n == 0 {
        return Ok(IntMatrix::zeros(0, h_quot.group().num_summands()));
    }
    let k_mid = ses.mid.term(n).generators();
    let mut lift = Lattice::with_history(ses.quot.term(n).generators());
    for (j, c) in ses.proj[n].columns().iter().enumerate() {
        lift.insert_tracked(c.clone(), SparseVec::unit(j));
    }
    for (j, r) in ses.quot.term(n).relations().columns().iter().enumerate() {
        lift.insert_tracked(r.clone(), SparseVec::unit(k_mid + j));
    }
    let k_sub = ses.sub.term(n - 1).generators();
    let mut back = Lattice::with_history(ses.mid.term(n - 1).generators());
    for (j, c) in ses.incl[n - 1].columns().iter().enumerate() {
        back.insert_tracked(c.clone(), SparseVec::unit(j));
    }
    for (j, r) in ses.mid.term(n - 1).relations().columns().iter().enumerate() {
        back.insert_tracked(r.clone(), SparseVec::unit(k_sub + j));
    }
    let d = ses.mid.boundary(n);
    let mut cols = Vec::new();
    for (i, z) in h_quot.representatives().iter().enumerate() {
        let w = lift
            .preimage(z)
            .ok_or_else(|| AbError::LiftFailed(format!("generator {i} has no preimage in the middle")))?;
        let y = w.slice(0, k_mid);
        let dy = d.mul_vec(&y);
        let w = back.preimage(&dy).ok_or_else(|| {
            AbError::LiftFailed(format!("boundary of lift {i} is not in the image of the inclusion"))
        })?;
        let x = w.slice(0, k_sub);
        cols.push(SparseVec::from_dense(&h_sub.classify(&x)?));
    }
    Ok(IntMatrix::from_columns(h_sub.group().num_summands(), cols))
}

/// Whether `A --f--> B --g--> C` is exact at `B`, for presented groups.
pub fn check_exactness_at(
    f: &IntMatrix,
    g: &IntMatrix,
    carriers: (&PresentedAb, &PresentedAb, &PresentedAb),
) -> Result<bool, AbError> {
    let (a, b, c) = carriers;
    if f.cols() != a.generators() || f.rows() != b.generators() {
        return Err(AbError::Shape("f does not map A to B".into()));
    }
    if g.cols() != b.generators() || g.rows() != c.generators() {
        return Err(AbError::Shape("g does not map B to C".into()));
    }
    let rel_b = b.relation_lattice();
    let rel_c = c.relation_lattice();
    for r in a.relations().columns() {
        if !rel_b.contains(&f.mul_vec(r)) {
            return Err(AbError::NotAHomomorphism("f does not respect relations".into()));
        }
    }
    for r in b.relations().columns() {
        if !rel_c.contains(&g.mul_vec(r)) {
            return Err(AbError::NotAHomomorphism("g does not respect relations".into()));
        }
    }
    for (j, col) in f.columns().iter().enumerate() {
        if !rel_c.contains(&g.mul_vec(col)) {
            return Err(AbError::NonzeroComposite(format!("g(f(e_{j})) is nonzero")));
        }
    }
    let complex = ChainComplex::new(vec![c.clone(), b.clone()], vec![g.clone()])?;
    let kernel = complex.cycle_lattice(1);
    let mut image = Lattice::new(b.generators());
    for col in f.columns().iter().chain(b.relations().columns()) {
        image.insert(col.clone());
    }
    Ok(image.contains_lattice(&kernel))
}

/// Kernel of a homomorphism of presented groups, in invariant-factor form.
pub fn map_kernel(f: &IntMatrix, src: &PresentedAb, tgt: &PresentedAb) -> Result<FgAbelian, AbError> {
    let c = ChainComplex::new(vec![tgt.clone(), src.clone()], vec![f.clone()])?;
    c.verify()?;
    Ok(c.homology(1)?.group().clone())
}

/// Cokernel of a homomorphism of presented groups, in invariant-factor form.
pub fn map_cokernel(f: &IntMatrix, src: &PresentedAb, tgt: &PresentedAb) -> Result<FgAbelian, AbError> {
    let c = ChainComplex::new(vec![tgt.clone(), src.clone()], vec![f.clone()])?;
    c.verify()?;
    Ok(c.homology(0)?.group().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> PresentedAb {
        PresentedAb::free(1)
    }

    fn scalar(x: i64) -> IntMatrix {
        IntMatrix::from_rows(&[vec![x]])
    }

    #[test]
    fn times_two() {
        let c = ChainComplex::checked(vec![z(), z()], vec![scalar(2)]).unwrap();
        assert_eq!(c.homology(0).unwrap().group().to_string(), "Z/2");
        assert_eq!(c.homology(1).unwrap().group().to_string(), "0");
    }

    #[test]
    fn zero_boundaries_give_terms() {
        let terms = vec![PresentedAb::cyclic(3), PresentedAb::free(2)];
        let c = ChainComplex::checked(terms.clone(), vec![IntMatrix::zeros(1, 2)]).unwrap();
        assert_eq!(c.homology(0).unwrap().group(), &terms[0].canonical_form());
        assert_eq!(c.homology(1).unwrap().group(), &terms[1].canonical_form());
    }

    #[test]
    fn periodic_cyclic_resolution() {
        // Z <-0- Z <-2- Z <-0- Z <-2- Z : homology Z, Z/2, 0, Z/2 of C2.
        let c = ChainComplex::checked(
            vec![z(), z(), z(), z(), z()],
            vec![scalar(0), scalar(2), scalar(0), scalar(2)],
        )
        .unwrap();
        let got: Vec<String> = (0..4).map(|n| c.homology(n).unwrap().group().to_string()).collect();
        assert_eq!(got, ["Z", "Z/2", "0", "Z/2"]);
    }

    #[test]
    fn presented_terms() {
        // Z/4 <-2- Z/4: kernel of x2 on Z/4 is {0,2}; image is {0,2}.
        let c = ChainComplex::checked(
            vec![PresentedAb::cyclic(4), PresentedAb::cyclic(4)],
            vec![scalar(2)],
        )
        .unwrap();
        assert_eq!(c.homology(0).unwrap().group().to_string(), "Z/2");
        assert_eq!(c.homology(1).unwrap().group().to_string(), "Z/2");
    }

    #[test]
    fn rejects_non_complex() {
        let c = ChainComplex::new(vec![z(), z(), z()], vec![scalar(1), scalar(1)]).unwrap();
        assert!(matches!(c.verify(), Err(AbError::NotAComplex(_))));
    }

    #[test]
    fn induced_maps() {
        let c = ChainComplex::checked(vec![z()], vec![]).unwrap();
        let (_, _, m) = induced_map_on_homology(&c, &c, &[scalar(2)], 0).unwrap();
        assert_eq!(m, scalar(2));
        let (_, _, m) = induced_map_on_homology(&c, &c, &[scalar(1)], 0).unwrap();
        assert_eq!(m, IntMatrix::identity(1));
        let (_, _, m) = induced_map_on_homology(&c, &c, &[scalar(0)], 0).unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn connecting_map_across_acyclic_middle() {
        // sub = Z in degree 0, mid = (Z <-1- Z), quot = Z in degree 1.
        let sub = ChainComplex::checked(vec![z(), PresentedAb::zero()], vec![IntMatrix::zeros(1, 0)]).unwrap();
        let mid = ChainComplex::checked(vec![z(), z()], vec![scalar(1)]).unwrap();
        let quot = ChainComplex::checked(vec![PresentedAb::zero(), z()], vec![IntMatrix::zeros(0, 1)]).unwrap();
        let incl = vec![scalar(1), IntMatrix::zeros(1, 0)];
        let proj = vec![IntMatrix::zeros(0, 1), scalar(1)];
        let ses = ShortExactChains { sub: &sub, mid: &mid, quot: &quot, incl: &incl, proj: &proj };
        ses.verify().unwrap();
        let hq = quot.homology(1).unwrap();
        let hs = sub.homology(0).unwrap();
        let delta = connecting_homomorphism(&ses, 1, &hq, &hs).unwrap();
        // mid is acyclic, so the connecting map Z -> Z is an isomorphism
        assert_eq!(delta.rows(), 1);
        assert!(delta.get(0, 0).is_unit());
    }

    #[test]
    fn connecting_map_vanishes_when_concentrated() {
        // 0 -> (0 <- Z) -x2-> (0 <- Z) -> (0 <- Z/2) -> 0
        let c = |t: PresentedAb| {
            ChainComplex::checked(vec![PresentedAb::zero(), t], vec![IntMatrix::zeros(0, 1)]).unwrap()
        };
        let (sub, mid, quot) = (c(z()), c(z()), c(PresentedAb::cyclic(2)));
        let incl = vec![IntMatrix::zeros(0, 0), scalar(2)];
        let proj = vec![IntMatrix::zeros(0, 0), scalar(1)];
        let ses = ShortExactChains { sub: &sub, mid: &mid, quot: &quot, incl: &incl, proj: &proj };
        ses.verify().unwrap();
        let hq = quot.homology(1).unwrap();
        let hs = sub.homology(0).unwrap();
        assert_eq!(hq.group().to_string(), "Z/2");
        let delta = connecting_homomorphism(&ses, 1, &hq, &hs).unwrap();
        assert_eq!((delta.rows(), delta.cols()), (0, 1));
    }

    #[test]
    fn split_sequence_has_zero_connecting_map() {
        // sub = (Z <-0- Z), quot = same, mid = direct sum
        let one = ChainComplex::checked(vec![z(), z()], vec![scalar(0)]).unwrap();
        let two = ChainComplex::checked(vec![PresentedAb::free(2), PresentedAb::free(2)], vec![IntMatrix::zeros(2, 2)]).unwrap();
        let incl = vec![IntMatrix::from_rows(&[vec![1], vec![0]]); 2];
        let proj = vec![IntMatrix::from_rows(&[vec![0, 1]]); 2];
        let ses = ShortExactChains { sub: &one, mid: &two, quot: &one, incl: &incl, proj: &proj };
        ses.verify().unwrap();
        let delta =
            connecting_homomorphism(&ses, 1, &one.homology(1).unwrap(), &one.homology(0).unwrap()).unwrap();
        assert!(delta.is_zero());
    }

    #[test]
    fn exactness_examples() {
        let (zz, zero) = (z(), PresentedAb::zero());
        let c2 = PresentedAb::cyclic(2);
        // Z -2-> Z -> Z/2
        assert!(check_exactness_at(&scalar(2), &scalar(1), (&zz, &zz, &c2)).unwrap());
        // A = 0: exact iff injective
        assert!(check_exactness_at(&IntMatrix::zeros(1, 0), &scalar(2), (&zero, &zz, &zz)).unwrap());
        assert!(!check_exactness_at(&IntMatrix::zeros(1, 0), &scalar(1), (&zero, &zz, &c2)).unwrap());
        // C = 0: exact iff surjective
        assert!(!check_exactness_at(&scalar(2), &IntMatrix::zeros(0, 1), (&zz, &zz, &zero)).unwrap());
        assert!(check_exactness_at(&scalar(3), &IntMatrix::zeros(0, 1), (&zz, &c2, &zero)).unwrap());
        // nonzero composite is an error
        assert!(matches!(
            check_exactness_at(&scalar(1), &scalar(1), (&zz, &zz, &zz)),
            Err(AbError::NonzeroComposite(_))
        ));
    }
}
