//! First-quadrant bicomplexes and their total complexes.
//!
//! Squares are stored commuting. The total differential on entry `(p, q)`
//! is `h + (-1)^p v`, where `h` is the horizontal map to `(p-1, q)` and `v`
//! the vertical map to `(p, q-1)`; this makes it square to zero.

use std::collections::BTreeMap;

use super::complex::ChainComplex;
use super::fgab::PresentedAb;
use super::matrix::{IntMatrix, SparseVec};
use super::AbError;
use crate::par;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiComplexAb {
    entries: BTreeMap<(usize, usize), PresentedAb>,
    vertical: BTreeMap<(usize, usize), IntMatrix>,
    horizontal: BTreeMap<(usize, usize), IntMatrix>,
}

impl BiComplexAb {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_entry(&mut self, p: usize, q: usize, a: PresentedAb) {
        self.entries.insert((p, q), a);
    }

    /// Vertical map out of `(p, q)`, into `(p, q - 1)`.
    pub fn set_vertical(&mut self, p: usize, q: usize, m: IntMatrix) {
        assert!(q >= 1);
        self.vertical.insert((p, q), m);
    }

    /// Horizontal map out of `(p, q)`, into `(p - 1, q)`.
    pub fn set_horizontal(&mut self, p: usize, q: usize, m: IntMatrix) {
        assert!(p >= 1);
        self.horizontal.insert((p, q), m);
    }

    pub fn entry(&self, p: usize, q: usize) -> Option<&PresentedAb> {
        self.entries.get(&(p, q))
    }

    pub fn vertical(&self, p: usize, q: usize) -> Option<&IntMatrix> {
        self.vertical.get(&(p, q))
    }

    pub fn horizontal(&self, p: usize, q: usize) -> Option<&IntMatrix> {
        self.horizontal.get(&(p, q))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &PresentedAb)> {
        self.entries.iter()
    }

    /// Largest `n` with every entry of total degree `<= n` present.
    pub fn complete_degree(&self) -> Option<usize> {
        let mut n = 0;
        loop {
            if (0..=n).any(|p| !self.entries.contains_key(&(p, n - p))) {
                return n.checked_sub(1);
            }
            n += 1;
        }
    }

    fn map_or_zero(&self, m: Option<&IntMatrix>, src: (usize, usize), dst: (usize, usize)) -> IntMatrix {
        match m {
            Some(m) => m.clone(),
            None => {
                let rows = self.entries.get(&dst).map_or(0, PresentedAb::generators);
                let cols = self.entries.get(&src).map_or(0, PresentedAb::generators);
                IntMatrix::zeros(rows, cols)
            }
        }
    }

    /// Checks that every row and column is a complex and every square commutes.
    pub fn verify(&self) -> Result<(), AbError> {
        for &(p, q) in self.entries.keys() {
            let rel = |pp: usize, qq: usize| self.entries[&(pp, qq)].relation_lattice();
            if q >= 2 && self.entries.contains_key(&(p, q - 2)) {
                let vv = self
                    .map_or_zero(self.vertical.get(&(p, q - 1)), (p, q - 1), (p, q - 2))
                    .mul(&self.map_or_zero(self.vertical.get(&(p, q)), (p, q), (p, q - 1)));
                let r = rel(p, q - 2);
                if vv.columns().iter().any(|c| !r.contains(c)) {
                    return Err(AbError::NotAComplex(format!("column {p} fails v*v = 0 at q = {q}")));
                }
            }
            if p >= 2 && self.entries.contains_key(&(p - 2, q)) {
                let hh = self
                    .map_or_zero(self.horizontal.get(&(p - 1, q)), (p - 1, q), (p - 2, q))
                    .mul(&self.map_or_zero(self.horizontal.get(&(p, q)), (p, q), (p - 1, q)));
                let r = rel(p - 2, q);
                if hh.columns().iter().any(|c| !r.contains(c)) {
                    return Err(AbError::NotAComplex(format!("row {q} fails h*h = 0 at p = {p}")));
                }
            }
            if p >= 1 && q >= 1 && self.entries.contains_key(&(p - 1, q - 1)) {
                let vh = self
                    .map_or_zero(self.vertical.get(&(p - 1, q)), (p - 1, q), (p - 1, q - 1))
                    .mul(&self.map_or_zero(self.horizontal.get(&(p, q)), (p, q), (p - 1, q)));
                let hv = self
                    .map_or_zero(self.horizontal.get(&(p, q - 1)), (p, q - 1), (p - 1, q - 1))
                    .mul(&self.map_or_zero(self.vertical.get(&(p, q)), (p, q), (p, q - 1)));
                let r = rel(p - 1, q - 1);
                if vh.sub_cols(&hv).columns().iter().any(|c| !r.contains(c)) {
                    return Err(AbError::NotAComplex(format!("square at ({p},{q}) does not commute")));
                }
            }
        }
        Ok(())
    }

    /// Offsets of each `(p, n - p)` block inside total degree `n`.
    pub fn total_offsets(&self, n: usize) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(n + 2);
        let mut acc = 0;
        for p in 0..=n {
            offsets.push(acc);
            acc += self.entries.get(&(p, n - p)).map_or(0, PresentedAb::generators);
        }
        offsets.push(acc);
        offsets
    }

    /// Total complex through degree `max_degree`; every entry of total
    /// degree at most `max_degree` must be present.
    pub fn total_complex(&self, max_degree: usize) -> Result<ChainComplex, AbError> {
        if self.complete_degree().is_none_or(|d| d < max_degree) {
            return Err(AbError::Shape(format!(
                "bicomplex is not complete through total degree {max_degree}"
            )));
        }
        let terms: Vec<PresentedAb> = (0..=max_degree)
            .map(|n| {
                let parts: Vec<&PresentedAb> = (0..=n).map(|p| &self.entries[&(p, n - p)]).collect();
                PresentedAb::direct_sum(&parts)
            })
            .collect();
        let boundaries = par::map_range(max_degree, |i| self.total_boundary(i + 1));
        let tot = ChainComplex::new(terms, boundaries)?;
        tot.verify().map_err(|e| AbError::SignConvention(e.to_string()))?;
        Ok(tot)
    }

    /// Total differential out of degree `n`, without verification.
    pub fn total_boundary(&self, n: usize) -> IntMatrix {
        let src = self.total_offsets(n);
        let dst = self.total_offsets(n - 1);
        let mut cols: Vec<SparseVec> = Vec::with_capacity(src[n + 1]);
        for p in 0..=n {
            let q = n - p;
            let size = src[p + 1] - src[p];
            let h = (p >= 1).then(|| self.horizontal.get(&(p, q))).flatten();
            let v = (q >= 1).then(|| self.vertical.get(&(p, q))).flatten();
            let sign = if p % 2 == 0 { 1i64 } else { -1 };
            for j in 0..size {
                let mut col = SparseVec::new();
                if let Some(h) = h {
                    col = col.add(&h.column(j).shifted(dst[p - 1]));
                }
                if let Some(v) = v {
                    col = col.axpy(&sign.into(), &v.column(j).shifted(dst[p]));
                }
                cols.push(col);
            }
        }
        IntMatrix::from_columns(dst[n], cols)
    }
}

impl IntMatrix {
    pub(crate) fn sub_cols(&self, rhs: &IntMatrix) -> IntMatrix {
        self.add(&rhs.neg())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(x: i64) -> IntMatrix {
        IntMatrix::from_rows(&[vec![x]])
    }

    #[test]
    fn single_column_and_row() {
        let mut col = BiComplexAb::new();
        for q in 0..3 {
            col.set_entry(0, q, PresentedAb::free(1));
        }
        for p in 1..3 {
            for q in 0..3 - p {
                col.set_entry(p, q, PresentedAb::zero());
            }
        }
        col.set_vertical(0, 1, scalar(0));
        col.set_vertical(0, 2, scalar(2));
        let tot = col.total_complex(2).unwrap();
        assert_eq!(tot.boundary(2), scalar(2));
        assert_eq!(tot.homology(1).unwrap().group().to_string(), "Z/2");

        let mut row = BiComplexAb::new();
        for p in 0..3 {
            row.set_entry(p, 0, PresentedAb::free(1));
        }
        for q in 1..3 {
            for p in 0..3 - q {
                row.set_entry(p, q, PresentedAb::zero());
            }
        }
        row.set_horizontal(1, 0, scalar(3));
        row.set_horizontal(2, 0, scalar(0));
        let tot = row.total_complex(2).unwrap();
        assert_eq!(tot.boundary(1), scalar(3));
        assert_eq!(tot.homology(0).unwrap().group().to_string(), "Z/3");
    }

    #[test]
    fn commuting_square_needs_sign_twist() {
        // Z(1,1) -> Z(0,1), Z(1,1) -> Z(1,0), both to Z(0,0); all maps 1.
        let mut b = BiComplexAb::new();
        for (p, q) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            b.set_entry(p, q, PresentedAb::free(1));
        }
        for (p, q) in [(2, 0), (0, 2)] {
            b.set_entry(p, q, PresentedAb::zero());
        }
        b.set_vertical(0, 1, scalar(1));
        b.set_vertical(1, 1, scalar(1));
        b.set_horizontal(1, 0, scalar(1));
        b.set_horizontal(1, 1, scalar(1));
        b.verify().unwrap();
        let d1 = b.total_boundary(1);
        let d2 = b.total_boundary(2);
        assert!(d1.mul(&d2).is_zero());
        let tot = b.total_complex(2).unwrap();
        // the square is the cellular complex of a contractible square
        assert_eq!(tot.homology(0).unwrap().group().to_string(), "0");
        assert_eq!(tot.homology(1).unwrap().group().to_string(), "0");
    }
}
