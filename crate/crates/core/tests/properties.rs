use std::sync::Arc;

use proptest::prelude::*;
use xmod_homology::abgrp::{kernel_basis, smith_normal_form, ChainComplex, FgAbelian, Int, IntMatrix, PresentedAb};
use xmod_homology::bar::{classical_group_homology, xmod_homology, BarOptions, CoefficientSystem};
use xmod_homology::grp::{FiniteGroup, GroupAction, GroupHom, Subgroup};
use xmod_homology::simp::SimplicialGroup;
use xmod_homology::xmod::{inclusion_xmod, CrossedModule};

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
}

/// Products of elementary row operations applied to the identity.
fn unimodular(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((0..n, 0..n, -2i64..=2, any::<bool>()), 0..8).prop_map(move |ops| {
        let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for (i, j, k, swap) in ops {
            if i == j {
                m[i].iter_mut().for_each(|x| *x = -*x);
            } else if swap {
                m.swap(i, j);
            } else {
                let row = m[j].clone();
                m[i].iter_mut().zip(row).for_each(|(x, y)| *x += k * y);
            }
        }
        m
    })
}

fn mat(rows: &[Vec<i64>], r: usize, c: usize) -> IntMatrix {
    IntMatrix::from_rows_with_width(rows, r, c)
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn c(n: usize) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(n))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_decomposition(r in 1usize..5, c in 1usize..5, seed in matrix(4, 4)) {
        let rows: Vec<Vec<i64>> = seed.iter().take(r).map(|row| row[..c].to_vec()).collect();
        let m = mat(&rows, r, c);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        let diag = s.diagonal();
        for i in 0..r {
            for j in 0..c {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            prop_assert!(w[0].divides(&w[1]));
        }
    }

    #[test]
    fn canonical_form_ignores_basis_change(rows in matrix(3, 3), u in unimodular(3), v in unimodular(3)) {
        let m = mat(&rows, 3, 3);
        let changed = mat(&u, 3, 3).mul(&m).mul(&mat(&v, 3, 3));
        prop_assert_eq!(
            PresentedAb::new(3, m).canonical_form(),
            PresentedAb::new(3, changed).canonical_form()
        );
    }

    #[test]
    fn order_is_determinant(rows in matrix(3, 3)) {
        let g = PresentedAb::new(3, mat(&rows, 3, 3)).canonical_form();
        let d = det(&rows).abs();
        if d == 0 {
            prop_assert!(g.rank() > 0);
        } else {
            prop_assert_eq!(g.order(), Some(Int::from(d)));
        }
    }

    #[test]
    fn euler_characteristic(a in 1usize..4, b in 1usize..5, cc in 1usize..4, d1 in matrix(3, 4), r in matrix(4, 3)) {
        let d1: Vec<Vec<i64>> = d1.iter().take(a).map(|row| row[..b].to_vec()).collect();
        let d1 = mat(&d1, a, b);
        let kernel = kernel_basis(&d1);
        let k = kernel.len();
        let r: Vec<Vec<i64>> = r.iter().take(k).map(|row| row[..cc].to_vec()).collect();
        let d2 = IntMatrix::from_columns(b, kernel).mul(&mat(&r, k, cc));
        let complex = ChainComplex::checked(
            vec![PresentedAb::free(a), PresentedAb::free(b), PresentedAb::free(cc)],
            vec![d1, d2],
        ).unwrap();
        let chi: i64 = (0..=2)
            .map(|n| complex.homology(n).unwrap().group().rank() as i64 * if n % 2 == 0 { 1 } else { -1 })
            .sum();
        prop_assert_eq!(chi, a as i64 - b as i64 + cc as i64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cyclic_with_finite_coefficients(m in 2usize..6, k in 2i64..5, n in 0usize..4, normalized in any::<bool>()) {
        let got = classical_group_homology(&*c(m), &PresentedAb::cyclic(k), None, n, normalized, 1 << 20).unwrap();
        let want = if n == 0 { FgAbelian::cyclic(k) } else { FgAbelian::cyclic(gcd(m as i64, k)) };
        prop_assert_eq!(got, want);
    }

    #[test]
    fn nerve_identities(n in 1usize..5, m in 1usize..5, kind in 0u8..3) {
        let x = match kind {
            0 => CrossedModule::new(GroupHom::zero(c(m), c(n)), GroupAction::trivial(c(n), c(m))).unwrap(),
            1 => CrossedModule::identity(c(n)),
            _ => {
                let d = (1..=n).find(|d| n % d == 0 && *d >= m.min(n)).unwrap_or(n);
                inclusion_xmod(&Subgroup::generated_by(c(n), &[d % n])).unwrap()
            }
        };
        let s = SimplicialGroup::nerve(Arc::new(x), 3).unwrap();
        prop_assert!(s.check_identities().is_empty());
    }

    #[test]
    fn bar_modes_agree(n in 1usize..4, m in 1usize..4, identity in any::<bool>()) {
        let x = if identity {
            CrossedModule::identity(c(n))
        } else {
            CrossedModule::new(GroupHom::zero(c(m), c(n)), GroupAction::trivial(c(n), c(m))).unwrap()
        };
        let run = |normalized| {
            xmod_homology(&x, &CoefficientSystem::IntegralTrivial, 2, BarOptions { normalized, ..Default::default() })
                .unwrap()
                .groups()
        };
        prop_assert_eq!(run(false), run(true));
    }
}
