//! Sparse integer vectors and column-major sparse integer matrices.

use std::collections::BTreeMap;
use std::fmt;

use super::int::Int;

/// A sparse integer vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(u32, Int)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i as u32, Int::ONE)] }
    }

    /// Builds a vector from unordered pairs, summing repeated indices.
    pub fn from_pairs<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, Int)>,
    {
        let mut acc: BTreeMap<u32, Int> = BTreeMap::new();
        for (i, v) in pairs {
            if v.is_zero() {
                continue;
            }
            let slot = acc.entry(i as u32).or_insert(Int::ZERO);
            *slot += &v;
        }
        SparseVec {
            entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    /// Builds from pairs already sorted by strictly increasing index.
    pub(crate) fn from_sorted(entries: Vec<(u32, Int)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SparseVec { entries }
    }

    pub fn from_dense(values: &[Int]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i as u32, v.clone()))
                .collect(),
        }
    }

    pub fn from_i64(values: &[i64]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != 0)
                .map(|(i, v)| (i as u32, Int::from(*v)))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Int> {
        let mut out = vec![Int::ZERO; len];
        for (i, v) in &self.entries {
            out[*i as usize] = v.clone();
        }
        out
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Int)> + '_ {
        self.entries.iter().map(|(i, v)| (*i as usize, v))
    }

    /// Highest index carrying a nonzero entry.
    #[inline]
    pub fn last(&self) -> Option<(usize, &Int)> {
        self.entries.last().map(|(i, v)| (*i as usize, v))
    }

    pub fn get(&self, i: usize) -> Int {
        match self.entries.binary_search_by_key(&(i as u32), |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.last().map(|(i, _)| i)
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Int, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                out.push((b[j].0, c * &b[j].1));
                j += 1;
            } else {
                let v = a[i].1.add_mul(c, &b[j].1);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: &Int, b: &Int, other: &SparseVec) -> SparseVec {
        self.scale(a).axpy(b, other)
    }

    pub fn scale(&self, c: &Int) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        if c.is_one() {
            return self.clone();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect(),
        }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Int::ONE, other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Int::from(-1), other)
    }

    /// Re-indexes entries by `offset`, as when placing a block inside a direct sum.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (*i + offset as u32, v.clone()))
                .collect(),
        }
    }

    /// Keeps entries with index in `range`, re-based to start at zero.
    pub fn slice(&self, start: usize, end: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| (*i as usize) >= start && (*i as usize) < end)
                .map(|(i, v)| (*i - start as u32, v.clone()))
                .collect(),
        }
    }

    pub fn dot_dense(&self, dense: &[Int]) -> Int {
        let mut acc = Int::ZERO;
        for (i, v) in &self.entries {
            acc = acc.add_mul(v, &dense[*i as usize]);
        }
        acc
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(i, v)| (i, v))).finish()
    }
}

/// Column-major sparse integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols: vec![SparseVec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix { rows: n, cols: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.max_index().is_none_or(|i| i < rows)));
        IntMatrix { rows, cols }
    }

    /// Row-major literal, convenient in tests and fixtures.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        Self::from_rows_with_width(rows, nrows, ncols)
    }

    pub fn from_rows_with_width(rows: &[Vec<i64>], nrows: usize, ncols: usize) -> Self {
        let cols = (0..ncols)
            .map(|j| {
                SparseVec::from_sorted(
                    (0..nrows)
                        .filter(|&i| rows[i][j] != 0)
                        .map(|i| (i as u32, Int::from(rows[i][j])))
                        .collect(),
                )
            })
            .collect();
        IntMatrix { rows: nrows, cols }
    }

    pub fn from_dense(rows: usize, cols: usize, data: &[Vec<Int>]) -> Self {
        let cols = (0..cols)
            .map(|j| {
                SparseVec::from_sorted(
                    (0..rows)
                        .filter(|&i| !data[i][j].is_zero())
                        .map(|i| (i as u32, data[i][j].clone()))
                        .collect(),
                )
            })
            .collect();
        IntMatrix { rows, cols }
    }

    pub fn to_dense(&self) -> Vec<Vec<Int>> {
        let mut out = vec![vec![Int::ZERO; self.cols.len()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col.iter() {
                out[i][j] = v.clone();
            }
        }
        out
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        self.to_dense()
            .into_iter()
            .map(|r| r.iter().map(Int::to_i64).collect())
            .collect()
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<SparseVec> {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Int {
        self.cols[j].get(i)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    /// `self * v` for a sparse column vector `v`.
    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<u32, Int> = BTreeMap::new();
        for (k, c) in v.iter() {
            for (i, a) in self.cols[k].iter() {
                let slot = acc.entry(i as u32).or_insert(Int::ZERO);
                *slot = slot.add_mul(a, c);
            }
        }
        SparseVec::from_sorted(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols(), rhs.rows, "dimension mismatch in product");
        IntMatrix {
            rows: self.rows,
            cols: rhs.cols.iter().map(|c| self.mul_vec(c)).collect(),
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut rows: Vec<Vec<(u32, Int)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col.iter() {
                rows[i].push((j as u32, v.clone()));
            }
        }
        IntMatrix {
            rows: self.cols.len(),
            cols: rows.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols.iter().map(SparseVec::neg).collect() }
    }

    pub fn add(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols()), (rhs.rows, rhs.cols()));
        IntMatrix {
            rows: self.rows,
            cols: self.cols.iter().zip(&rhs.cols).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Int) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols.iter().map(|v| v.scale(c)).collect() }
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, rhs.rows, "row mismatch in hstack");
        let mut cols = self.cols.clone();
        cols.extend(rhs.cols.iter().cloned());
        IntMatrix { rows: self.rows, cols }
    }

    pub fn block_diag(blocks: &[&IntMatrix]) -> IntMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut cols = Vec::new();
        let mut offset = 0;
        for b in blocks {
            cols.extend(b.cols.iter().map(|c| c.shifted(offset)));
            offset += b.rows;
        }
        IntMatrix { rows, cols }
    }

    /// `n` diagonal copies of `self`.
    pub fn repeat_diag(&self, n: usize) -> IntMatrix {
        let mut cols = Vec::with_capacity(self.cols.len() * n);
        for k in 0..n {
            cols.extend(self.cols.iter().map(|c| c.shifted(k * self.rows)));
        }
        IntMatrix { rows: self.rows * n, cols }
    }

    pub fn push_column(&mut self, c: SparseVec) {
        debug_assert!(c.max_index().is_none_or(|i| i < self.rows));
        self.cols.push(c);
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols())?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
