//! Integer lattices in column echelon form.
//!
//! Vectors are inserted one at a time and reduced against the basis vector
//! owning their highest nonzero index (the pivot). When the pivot entries
//! do not divide, the pair is replaced by a unimodular combination carrying
//! their gcd, so the span is preserved exactly. Optionally every basis
//! vector carries a history: its expression in terms of the inserted
//! vectors. A vector that reduces to zero then yields a kernel element, and
//! the kernel elements found this way span the full kernel lattice.

use super::int::Int;
use super::matrix::{IntMatrix, SparseVec};

#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    pivot_of: Vec<u32>,
    basis: Vec<SparseVec>,
    history: Option<Vec<SparseVec>>,
}

const NO_PIVOT: u32 = u32::MAX;

impl Lattice {
    pub fn new(dim: usize) -> Self {
        Lattice { dim, pivot_of: vec![NO_PIVOT; dim], basis: Vec::new(), history: None }
    }

    pub fn with_history(dim: usize) -> Self {
        Lattice { history: Some(Vec::new()), ..Lattice::new(dim) }
    }

    /// Lattice spanned by the columns of `m`.
    pub fn from_columns(m: &IntMatrix) -> Self {
        let mut lat = Lattice::new(m.rows());
        for c in m.columns() {
            lat.insert(c.clone());
        }
        lat
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn history(&self, i: usize) -> Option<&SparseVec> {
        self.history.as_ref().map(|h| &h[i])
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, self.basis.clone())
    }

    /// Inserts `v` with no history tracking.
    pub fn insert(&mut self, v: SparseVec) {
        self.insert_tracked(v, SparseVec::new());
    }

    /// Inserts `v` whose history is `hist`; returns the history of the zero
    /// vector it reduced to, if it became dependent.
    pub fn insert_tracked(&mut self, mut v: SparseVec, mut hist: SparseVec) -> Option<SparseVec> {
        let tracked = self.history.is_some();
        loop {
            let Some((p, vp)) = v.last() else {
                return tracked.then_some(hist);
            };
            let vp = vp.clone();
            let slot = self.pivot_of[p];
            if slot == NO_PIVOT {
                if vp.is_negative() {
                    v = v.neg();
                    hist = hist.neg();
                }
                self.pivot_of[p] = self.basis.len() as u32;
                self.basis.push(v);
                if let Some(h) = self.history.as_mut() {
                    h.push(hist);
                }
                return None;
            }
            let bi = slot as usize;
            let bp = self.basis[bi].last().expect("basis vector is nonzero").1.clone();
            if let Some(q) = vp.div_exact(&bp) {
                let mq = -&q;
                v = v.axpy(&mq, &self.basis[bi]);
                if let Some(h) = self.history.as_ref() {
                    hist = hist.axpy(&mq, &h[bi]);
                }
                continue;
            }
            // s*bp + t*vp = g; keep the pair's span with a determinant -1 change.
            let (g, s, t) = bp.ext_gcd(&vp);
            let vq = vp.div_exact(&g).expect("gcd divides");
            let bq = bp.div_exact(&g).expect("gcd divides");
            let b = &self.basis[bi];
            let new_b = b.combine(&s, &t, &v);
            let new_v = b.combine(&vq, &(-&bq), &v);
            if let Some(h) = self.history.as_mut() {
                let hb = &h[bi];
                let new_hb = hb.combine(&s, &t, &hist);
                hist = hb.combine(&vq, &(-&bq), &hist);
                h[bi] = new_hb;
            }
            self.basis[bi] = new_b;
            v = new_v;
        }
    }

    /// Expresses `v` as an integer combination of basis vectors. Returns the
    /// coefficients as `(basis index, coefficient)` pairs, or `None` when `v`
    /// is outside the lattice.
    pub fn solve(&self, v: &SparseVec) -> Option<Vec<(usize, Int)>> {
        let mut v = v.clone();
        let mut coeffs = Vec::new();
        while let Some((p, vp)) = v.last() {
            let slot = self.pivot_of[p];
            if slot == NO_PIVOT {
                return None;
            }
            let bi = slot as usize;
            let b = &self.basis[bi];
            let q = vp.div_exact(b.last().expect("nonzero").1)?;
            v = v.axpy(&(-&q), b);
            coeffs.push((bi, q));
        }
        Some(coeffs)
    }

    /// Coordinates of `v` as a sparse vector indexed by basis position.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        self.solve(v).map(SparseVec::from_pairs)
    }

    /// A preimage of `v` under the tracked insertion sequence: a vector `w`
    /// of history coordinates with `sum_j w_j * inserted_j = v`.
    pub fn preimage(&self, v: &SparseVec) -> Option<SparseVec> {
        let h = self.history.as_ref().expect("lattice built without history");
        let coeffs = self.solve(v)?;
        let mut out = SparseVec::new();
        for (bi, q) in coeffs {
            out = out.axpy(&q, &h[bi]);
        }
        Some(out)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.solve(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }
}

/// Integer kernel of `m`: a basis of `{x : m x = 0}`.
pub fn kernel_basis(m: &IntMatrix) -> Vec<SparseVec> {
    let mut lat = Lattice::with_history(m.rows());
    let mut kernel = Vec::new();
    for (j, c) in m.columns().iter().enumerate() {
        if let Some(k) = lat.insert_tracked(c.clone(), SparseVec::unit(j)) {
            kernel.push(k);
        }
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_step_keeps_span() {
        let m = IntMatrix::from_rows(&[vec![4, 6]]);
        let lat = Lattice::from_columns(&m);
        assert_eq!(lat.rank(), 1);
        assert!(lat.contains(&SparseVec::from_i64(&[2])));
        assert!(!lat.contains(&SparseVec::from_i64(&[1])));
    }

    #[test]
    fn kernel_is_annihilated_and_saturated() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 6], vec![1, 3, 5]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).is_zero());
        // (1,-2,1) generates the kernel; any basis is +-(1,-2,1).
        let d = k[0].to_dense(3);
        assert!(d == [1.into(), (-2).into(), 1.into()] || d == [(-1).into(), 2.into(), (-1).into()]);
    }

    #[test]
    fn preimage_round_trip() {
        let m = IntMatrix::from_rows(&[vec![3, 5], vec![0, 2]]);
        let mut lat = Lattice::with_history(2);
        for (j, c) in m.columns().iter().enumerate() {
            lat.insert_tracked(c.clone(), SparseVec::unit(j));
        }
        let target = SparseVec::from_i64(&[4, 4]);
        let w = lat.preimage(&target).unwrap();
        assert_eq!(m.mul_vec(&w), target);
    }
}
