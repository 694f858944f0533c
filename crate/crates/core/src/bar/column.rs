use crate::abgrp::{ChainComplex, FgAbelian, IntMatrix, PresentedAb, SparseVec};
use crate::grp::GroupOps;
use crate::par;

use super::BarError;

/// Enumeration of `q`-tuples over a group, all elements or (normalized)
/// non-identity ones only, in mixed radix with the last slot least
/// significant.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Tuples {
    base: usize,
    shift: usize,
}

impl Tuples {
    pub(crate) fn new(order: usize, normalized: bool) -> Self {
        if normalized {
            Tuples { base: order - 1, shift: 1 }
        } else {
            Tuples { base: order, shift: 0 }
        }
    }

    pub(crate) fn count(&self, q: usize) -> Option<usize> {
        (0..q).try_fold(1usize, |acc, _| acc.checked_mul(self.base))
    }

    pub(crate) fn decode(&self, mut idx: usize, q: usize, out: &mut Vec<usize>) {
        out.clear();
        out.resize(q, 0);
        for slot in out.iter_mut().rev() {
            *slot = idx % self.base + self.shift;
            idx /= self.base;
        }
    }

    /// `None` for a tuple outside the basis (an identity in normalized mode).
    pub(crate) fn encode(&self, elems: &[usize]) -> Option<usize> {
        let mut idx = 0;
        for &g in elems {
            if g < self.shift {
                return None;
            }
            idx = idx * self.base + (g - self.shift);
        }
        Some(idx)
    }
}

/// One column `B_*(G) ⊗_G A` of the bicomplex, on the basis
/// `1 ⊗ g_1 ⊗ ... ⊗ g_q ⊗ a_j`, generator index `tuple * gens(A) + j`.
///
/// `action[g]` is the matrix of `g` on the generators of `A`; `None` means
/// the trivial action.
#[derive(Clone, Copy)]
pub struct TensoredBarColumn<'a, G: GroupOps> {
    group: &'a G,
    module: &'a PresentedAb,
    action: Option<&'a [IntMatrix]>,
    normalized: bool,
}

impl<'a, G: GroupOps> TensoredBarColumn<'a, G> {
    pub fn new(group: &'a G, module: &'a PresentedAb, action: Option<&'a [IntMatrix]>, normalized: bool) -> Self {
        if let Some(a) = action {
            assert_eq!(a.len(), group.order(), "one action matrix per group element");
        }
        TensoredBarColumn { group, module, action, normalized }
    }

    pub fn normalized(&self) -> bool {
        self.normalized
    }

    pub(crate) fn tuples(&self) -> Tuples {
        Tuples::new(self.group.order(), self.normalized)
    }

    /// Generator count of the degree-`q` term, `None` on overflow.
    pub fn generators(&self, q: usize) -> Option<usize> {
        self.tuples().count(q)?.checked_mul(self.module.generators())
    }

    pub fn term(&self, q: usize) -> PresentedAb {
        self.module.power(self.tuples().count(q).expect("size checked"))
    }

    /// `∂: degree q -> degree q - 1`.
    pub fn boundary(&self, q: usize) -> IntMatrix {
        assert!(q >= 1);
        let k = self.module.generators();
        let tuples = self.tuples();
        let n = tuples.count(q).expect("size checked");
        let g = self.group;
        let blocks = par::map_range(n, |t| {
            let mut elems = Vec::with_capacity(q);
            tuples.decode(t, q, &mut elems);
            let mut scratch = Vec::with_capacity(q);
            let mut cols = vec![SparseVec::new(); k];

            // g_1 moves into the coefficient as g_1^{-1}
            let rest = tuples.encode(&elems[1..]).expect("basis tuple");
            for (j, col) in cols.iter_mut().enumerate() {
                let v = match self.action {
                    Some(a) => a[g.inv(elems[0])].column(j).clone(),
                    None => SparseVec::unit(j),
                };
                *col = col.add(&v.shifted(rest * k));
            }
            for i in 1..q {
                let m = g.mul(elems[i - 1], elems[i]);
                scratch.clear();
                scratch.extend_from_slice(&elems[..i - 1]);
                scratch.push(m);
                scratch.extend_from_slice(&elems[i + 1..]);
                if let Some(idx) = tuples.encode(&scratch) {
                    let sign = if i % 2 == 0 { 1i64 } else { -1 };
                    for (j, col) in cols.iter_mut().enumerate() {
                        *col = col.axpy(&sign.into(), &SparseVec::unit(idx * k + j));
                    }
                }
            }
            let last = tuples.encode(&elems[..q - 1]).expect("basis tuple");
            let sign = if q % 2 == 0 { 1i64 } else { -1 };
            for (j, col) in cols.iter_mut().enumerate() {
                *col = col.axpy(&sign.into(), &SparseVec::unit(last * k + j));
            }
            cols
        });
        let rows = self.generators(q - 1).expect("size checked");
        IntMatrix::from_columns(rows, blocks.into_iter().flatten().collect())
    }

    /// Degrees `0..=top`.
    pub fn complex(&self, top: usize) -> Result<ChainComplex, BarError> {
        let terms = (0..=top).map(|q| self.term(q)).collect();
        let boundaries = (1..=top).map(|q| self.boundary(q)).collect();
        Ok(ChainComplex::new(terms, boundaries)?)
    }
}

pub fn bar_boundary<G: GroupOps>(col: &TensoredBarColumn<'_, G>, q: usize) -> IntMatrix {
    col.boundary(q)
}

/// `H_n(G, A)` through `B_*(G) ⊗_G A`.
pub fn classical_group_homology<G: GroupOps>(
    g: &G,
    module: &PresentedAb,
    action: Option<&[IntMatrix]>,
    n: usize,
    normalized: bool,
    max_entry: usize,
) -> Result<FgAbelian, BarError> {
    let col = TensoredBarColumn::new(g, module, action, normalized);
    for q in 0..=n + 1 {
        let size = col.generators(q);
        if size.is_none_or(|s| s > max_entry) {
            return Err(BarError::TooLarge { p: 0, q, generators: size, cap: max_entry });
        }
    }
    let c = col.complex(n + 1)?;
    c.verify()?;
    Ok(c.homology(n)?.group().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::FiniteGroup;

    fn zh(g: &FiniteGroup, n: usize, normalized: bool) -> FgAbelian {
        classical_group_homology(g, &PresentedAb::free(1), None, n, normalized, 1 << 20).unwrap()
    }

    /// Periodic resolution of `C_m`: Z, then Z/m in odd degrees, 0 in even.
    fn cyclic_oracle(m: i64, n: usize) -> FgAbelian {
        match n {
            0 => FgAbelian::free(1),
            n if n % 2 == 1 => FgAbelian::cyclic(m),
            _ => FgAbelian::trivial(),
        }
    }

    #[test]
    fn degree_one_boundary_trivial_coefficients() {
        let g = FiniteGroup::cyclic(3);
        let z = PresentedAb::free(1);
        let col = TensoredBarColumn::new(&g, &z, None, false);
        let d1 = bar_boundary(&col, 1);
        assert!(d1.is_zero());
        assert_eq!((d1.rows(), d1.cols()), (1, 3));
    }

    #[test]
    fn boundaries_square_to_zero() {
        let g = FiniteGroup::symmetric3();
        let z = PresentedAb::free(1);
        for normalized in [false, true] {
            let col = TensoredBarColumn::new(&g, &z, None, normalized);
            assert!(col.complex(3).unwrap().verify().is_ok());
        }
        // sign action of C2 on Z
        let c2 = FiniteGroup::cyclic(2);
        let act = vec![IntMatrix::identity(1), IntMatrix::from_rows(&[vec![-1]])];
        let col = TensoredBarColumn::new(&c2, &z, Some(&act), false);
        assert!(col.complex(4).unwrap().verify().is_ok());
    }

    #[test]
    fn cyclic_groups() {
        for m in [2usize, 3, 4] {
            let g = FiniteGroup::cyclic(m);
            for n in 0..=3 {
                assert_eq!(zh(&g, n, false), cyclic_oracle(m as i64, n), "C{m} H{n}");
                assert_eq!(zh(&g, n, true), cyclic_oracle(m as i64, n), "C{m} H{n} normalized");
            }
        }
    }

    #[test]
    fn klein_four() {
        let g = FiniteGroup::klein_four();
        assert_eq!(zh(&g, 1, false), FgAbelian::from_cyclic_orders(&[2, 2]));
        assert_eq!(zh(&g, 2, false), FgAbelian::cyclic(2));
        assert_eq!(zh(&g, 3, true), FgAbelian::from_cyclic_orders(&[2, 2, 2]));
    }

    #[test]
    fn twisted_coefficients() {
        // C2 acting on Z by sign: H_0 = Z/2, H_1 = 0, H_2 = Z/2
        let c2 = FiniteGroup::cyclic(2);
        let z = PresentedAb::free(1);
        let act = vec![IntMatrix::identity(1), IntMatrix::from_rows(&[vec![-1]])];
        let h = |n| classical_group_homology(&c2, &z, Some(&act), n, false, 1 << 20).unwrap();
        assert_eq!(h(0), FgAbelian::cyclic(2));
        assert_eq!(h(1), FgAbelian::trivial());
        assert_eq!(h(2), FgAbelian::cyclic(2));
    }

    #[test]
    fn cap_is_checked_first() {
        let g = FiniteGroup::cyclic(4);
        let err = classical_group_homology(&g, &PresentedAb::free(1), None, 5, false, 100).unwrap_err();
        assert!(matches!(err, BarError::TooLarge { q: 4, .. }));
    }
}
