//! Smith normal form over the integers.
//!
//! Elimination always pivots on an entry of minimal nonzero absolute value,
//! ties going to the lowest `(row, col)`. Row transforms are recorded in
//! `u` (and its inverse when requested), column transforms in `v`, so that
//! `u * m * v = d`.

use super::int::Int;
use super::lattice::Lattice;
use super::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries, in divisibility order.
    pub fn diagonal(&self) -> Vec<Int> {
        diagonal_of(&self.d)
    }
}

fn diagonal_of(d: &IntMatrix) -> Vec<Int> {
    (0..d.rows().min(d.cols()))
        .map(|i| d.get(i, i))
        .take_while(|x| !x.is_zero())
        .collect()
}

#[derive(Clone, Copy, Default)]
pub(crate) struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
}

pub(crate) struct DenseSnf {
    pub a: Vec<Vec<Int>>,
    pub u: Option<Vec<Vec<Int>>>,
    pub u_inv: Option<Vec<Vec<Int>>>,
    pub v: Option<Vec<Vec<Int>>>,
    pub rank: usize,
}

fn identity(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::ONE } else { Int::ZERO }).collect())
        .collect()
}

struct Work {
    a: Vec<Vec<Int>>,
    u: Option<Vec<Vec<Int>>>,
    u_inv: Option<Vec<Vec<Int>>>,
    v: Option<Vec<Vec<Int>>>,
    rows: usize,
    cols: usize,
}

impl Work {
    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        self.a.swap(i, k);
        if let Some(u) = self.u.as_mut() {
            u.swap(i, k);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            for row in ui.iter_mut() {
                row.swap(i, k);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(j, k);
        }
        if let Some(v) = self.v.as_mut() {
            for row in v.iter_mut() {
                row.swap(j, k);
            }
        }
    }

    /// row_i += c * row_t
    fn add_row(&mut self, i: usize, t: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        let (src, dst) = pair_mut(&mut self.a, t, i);
        for (d, s) in dst.iter_mut().zip(src.iter()) {
            if !s.is_zero() {
                *d = d.add_mul(c, s);
            }
        }
        if let Some(u) = self.u.as_mut() {
            let (src, dst) = pair_mut(u, t, i);
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d = d.add_mul(c, s);
                }
            }
        }
        if let Some(ui) = self.u_inv.as_mut() {
            // inverse op on the right: col_t -= c * col_i
            let mc = -c;
            for row in ui.iter_mut() {
                if !row[i].is_zero() {
                    row[t] = row[t].add_mul(&mc, &row[i]);
                }
            }
        }
    }

    /// col_j += c * col_t
    fn add_col(&mut self, j: usize, t: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for row in self.a.iter_mut() {
            if !row[t].is_zero() {
                row[j] = row[j].add_mul(c, &row[t]);
            }
        }
        if let Some(v) = self.v.as_mut() {
            for row in v.iter_mut() {
                if !row[t].is_zero() {
                    row[j] = row[j].add_mul(c, &row[t]);
                }
            }
        }
    }

    fn negate_row(&mut self, t: usize) {
        for x in self.a[t].iter_mut() {
            *x = -&*x;
        }
        if let Some(u) = self.u.as_mut() {
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        if let Some(ui) = self.u_inv.as_mut() {
            for row in ui.iter_mut() {
                row[t] = -&row[t];
            }
        }
    }

    fn min_in_submatrix(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if x.cmp_abs(&self.a[bi][bj]).is_lt() {
                            best = Some((i, j));
                        }
                    }
                }
                if x.is_unit() {
                    // nothing smaller exists and this is the lowest (row, col) unit
                    if best == Some((i, j)) {
                        return best;
                    }
                }
            }
        }
        best
    }

    /// Minimal nonzero entry of row t or column t outside (t,t), lowest index first.
    fn min_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let consider = |i: usize, j: usize, best: &mut Option<(usize, usize)>| {
            let x = &self.a[i][j];
            if x.is_zero() {
                return;
            }
            match *best {
                None => *best = Some((i, j)),
                Some((bi, bj)) => {
                    let c = x.cmp_abs(&self.a[bi][bj]);
                    if c.is_lt() || (c.is_eq() && (i, j) < (bi, bj)) {
                        *best = Some((i, j));
                    }
                }
            }
        };
        for i in t + 1..self.rows {
            consider(i, t, &mut best);
        }
        for j in t + 1..self.cols {
            consider(t, j, &mut best);
        }
        best
    }

    fn run(&mut self) -> usize {
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.min_in_submatrix(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.a[t][t].clone();
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let (q, _) = self.a[i][t].div_rem_euclid(&p);
                    self.add_row(i, t, &(-&q));
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let (q, _) = self.a[t][j].div_rem_euclid(&p);
                    self.add_col(j, t, &(-&q));
                }
                if let Some((i, j)) = self.min_in_cross(t) {
                    // a remainder smaller than the pivot survived
                    if i != t {
                        self.swap_rows(t, i);
                    } else {
                        self.swap_cols(t, j);
                    }
                    continue;
                }
                let p = self.a[t][t].clone();
                let bad = (t + 1..self.rows).find(|&i| {
                    (t + 1..self.cols).any(|j| !p.divides(&self.a[i][j]))
                });
                match bad {
                    Some(i) => self.add_row(t, i, &Int::ONE),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }
}

fn pair_mut<T>(v: &mut [T], src: usize, dst: usize) -> (&T, &mut T) {
    assert_ne!(src, dst);
    if src < dst {
        let (lo, hi) = v.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    }
}

pub(crate) fn dense_snf(rows: usize, cols: usize, a: Vec<Vec<Int>>, track: Track) -> DenseSnf {
    let mut w = Work {
        a,
        u: track.u.then(|| identity(rows)),
        u_inv: track.u_inv.then(|| identity(rows)),
        v: track.v.then(|| identity(cols)),
        rows,
        cols,
    };
    let rank = w.run();
    DenseSnf { a: w.a, u: w.u, u_inv: w.u_inv, v: w.v, rank }
}

/// Full Smith decomposition `u * m * v = d`.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (r, c) = (m.rows(), m.cols());
    let res = dense_snf(r, c, m.to_dense(), Track { u: true, u_inv: false, v: true });
    Smith {
        d: IntMatrix::from_dense(r, c, &res.a),
        u: IntMatrix::from_dense(r, r, &res.u.expect("tracked")),
        v: IntMatrix::from_dense(c, c, &res.v.expect("tracked")),
    }
}

/// Nonzero invariant factors of `m` (the Smith diagonal), without transforms.
///
/// Columns are first reduced to a lattice basis of their span, which leaves
/// the invariant factors unchanged and keeps the dense stage small.
pub fn elementary_divisors(m: &IntMatrix) -> Vec<Int> {
    let lat = Lattice::from_columns(m);
    let basis = lat.basis_matrix();
    let res = dense_snf(basis.rows(), basis.cols(), basis.to_dense(), Track::default());
    (0..res.rank).map(|i| res.a[i][i].clone()).collect()
}

/// Rank of an integer matrix.
pub fn rank(m: &IntMatrix) -> usize {
    Lattice::from_columns(m).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_example() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal(), vec![Int::from(2), Int::from(4)]);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    }

    #[test]
    fn identity_and_zero() {
        let id = IntMatrix::identity(3);
        let s = smith_normal_form(&id);
        assert_eq!(s.d, id);
        assert_eq!(s.u, id);
        assert_eq!(s.v, id);
        let z = IntMatrix::zeros(2, 3);
        let s = smith_normal_form(&z);
        assert!(s.d.is_zero());
        assert!(s.diagonal().is_empty());
    }

    #[test]
    fn divisibility_repair() {
        // diag(2,3) is not in Smith form; the answer is diag(1,6).
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal(), vec![Int::from(1), Int::from(6)]);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(elementary_divisors(&m), vec![Int::from(1), Int::from(6)]);
    }

    #[test]
    fn inverse_tracking() {
        let m = IntMatrix::from_rows(&[vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5]]);
        let res = dense_snf(3, 3, m.to_dense(), Track { u: true, u_inv: true, v: false });
        let u = IntMatrix::from_dense(3, 3, &res.u.unwrap());
        let ui = IntMatrix::from_dense(3, 3, &res.u_inv.unwrap());
        assert_eq!(u.mul(&ui), IntMatrix::identity(3));
    }
}
