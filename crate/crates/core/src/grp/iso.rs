use crate::abgrp::{FgAbelian, IntMatrix, PresentedAb, SparseVec};

use super::group::FiniteGroup;
use super::hom::extend_on_generators;
use super::GroupOps;

/// Largest order at which non-abelian isomorphism is decided by search.
pub const ISO_SEARCH_CAP: usize = 16;

/// Invariant factors of the abelianization `G/[G,G]`, from the presentation
/// on all elements with relations `e_x + e_y - e_xy`.
pub fn abelian_invariants<G: GroupOps>(g: &G) -> FgAbelian {
    let n = g.order();
    let mut cols = Vec::with_capacity(n * n);
    for x in 1..n {
        for y in 1..n {
            let xy = g.mul(x, y);
            let mut pairs = vec![(x - 1, 1i64), (y - 1, 1)];
            if xy != 0 {
                pairs.push((xy - 1, -1));
            }
            cols.push(SparseVec::from_pairs(pairs.into_iter().map(|(i, c)| (i, c.into()))));
        }
    }
    PresentedAb::new(n - 1, IntMatrix::from_columns(n - 1, cols)).canonical_form()
}

/// Decides isomorphism for abelian pairs and for pairs of order at most
/// [`ISO_SEARCH_CAP`]; `None` outside those cases.
pub fn are_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> Option<bool> {
    if a.order() != b.order() {
        return Some(false);
    }
    match (a.is_abelian(), b.is_abelian()) {
        (true, true) => return Some(abelian_invariants(a) == abelian_invariants(b)),
        (true, false) | (false, true) => return Some(false),
        _ => {}
    }
    if a.order() > ISO_SEARCH_CAP {
        return None;
    }
    let mut oa: Vec<usize> = a.elements().map(|x| a.element_order(x)).collect();
    let ob: Vec<usize> = b.elements().map(|x| b.element_order(x)).collect();
    let gens = a.generating_set();
    let gen_orders: Vec<usize> = gens.iter().map(|&s| oa[s]).collect();
    oa.sort_unstable();
    let ob_sorted = {
        let mut v = ob.clone();
        v.sort_unstable();
        v
    };
    if oa != ob_sorted {
        return Some(false);
    }
    let mut images = Vec::with_capacity(gens.len());
    Some(search(a, b, &gens, &gen_orders, &ob, &mut images))
}

fn search(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    gen_orders: &[usize],
    ob: &[usize],
    images: &mut Vec<usize>,
) -> bool {
    let k = images.len();
    if k == gens.len() {
        return match extend_on_generators(a, b, gens, images) {
            Some(img) => {
                let mut hit = vec![false; b.order()];
                img.iter().all(|x| x.is_some_and(|y| !std::mem::replace(&mut hit[y], true)))
            }
            None => false,
        };
    }
    for y in b.elements() {
        if ob[y] == gen_orders[k] {
            images.push(y);
            if search(a, b, gens, gen_orders, ob, images) {
                return true;
            }
            images.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{semidirect_product, GroupAction};
    use std::sync::Arc;

    #[test]
    fn abelianizations() {
        assert_eq!(abelian_invariants(&FiniteGroup::cyclic(6)).to_string(), "Z/6");
        assert_eq!(abelian_invariants(&FiniteGroup::klein_four()).to_string(), "Z/2 + Z/2");
        assert_eq!(abelian_invariants(&FiniteGroup::symmetric3()).to_string(), "Z/2");
        assert_eq!(abelian_invariants(&FiniteGroup::trivial()).to_string(), "0");
    }

    #[test]
    fn isomorphism_tests() {
        assert_eq!(are_isomorphic(&FiniteGroup::cyclic(4), &FiniteGroup::klein_four()), Some(false));
        assert_eq!(are_isomorphic(&FiniteGroup::cyclic(6), &FiniteGroup::abelian(&[2, 3])), Some(true));
        assert_eq!(are_isomorphic(&FiniteGroup::cyclic(6), &FiniteGroup::symmetric3()), Some(false));
        // S3 as C3 ⋊ C2
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let inv = GroupAction::new(c2, c3, &[vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        let sd = semidirect_product(&inv).unwrap();
        assert_eq!(are_isomorphic(&sd.group, &FiniteGroup::symmetric3()), Some(true));
    }
}
