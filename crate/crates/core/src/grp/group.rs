use std::collections::HashMap;
use std::fmt;

use super::{GroupOps, GrpError};

/// Cap on groups read from input.
pub const INPUT_ORDER_CAP: usize = 64;
/// Cap on groups materialized by constructions such as semidirect products.
pub const DERIVED_ORDER_CAP: usize = 4096;

/// A finite group as a dense multiplication table on ids `0..order`, with
/// `0` the identity.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    labels: Option<Vec<String>>,
}

/// Raw group input.
#[derive(Clone, Debug)]
pub enum GroupSpec {
    Table(Vec<Vec<usize>>),
    Permutations(Vec<Vec<usize>>),
}

pub fn make_group(spec: &GroupSpec) -> Result<FiniteGroup, GrpError> {
    match spec {
        GroupSpec::Table(t) => FiniteGroup::from_table(t),
        GroupSpec::Permutations(p) => FiniteGroup::from_permutations(p),
    }
}

impl FiniteGroup {
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, GrpError> {
        let n = rows.len();
        if n > INPUT_ORDER_CAP {
            return Err(GrpError::TooLarge { order: n, cap: INPUT_ORDER_CAP });
        }
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(GrpError::NotSquare);
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                if x >= n {
                    return Err(GrpError::OutOfRange(i, j));
                }
                table.push(x as u32);
            }
        }
        Self::from_flat(n, table, DERIVED_ORDER_CAP)
    }

    /// Validates a flat row-major table.
    pub(crate) fn from_flat(n: usize, table: Vec<u32>, cap: usize) -> Result<Self, GrpError> {
        if n > cap {
            return Err(GrpError::TooLarge { order: n, cap });
        }
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        if (0..n).any(|a| at(0, a) != a || at(a, 0) != a) {
            return Err(GrpError::IdentityMissing);
        }
        let mut inverses = vec![u32::MAX; n];
        for a in 0..n {
            let Some(b) = (0..n).find(|&b| at(a, b) == 0) else {
                return Err(GrpError::NoInverse(a));
            };
            if at(b, a) != 0 {
                return Err(GrpError::NoInverse(a));
            }
            inverses[a] = b as u32;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GrpError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup { order: n, table, inverses, labels: None })
    }

    /// Trusted construction for tables produced by verified constructions.
    pub(crate) fn from_flat_unchecked(n: usize, table: Vec<u32>) -> Self {
        let mut inverses = vec![0u32; n];
        for a in 0..n {
            inverses[a] = (0..n).find(|&b| table[a * n + b] == 0).expect("group table") as u32;
        }
        FiniteGroup { order: n, table, inverses, labels: None }
    }

    /// Group generated by permutations given as image arrays, under
    /// composition `(p q)(i) = p(q(i))`. Elements are numbered by first
    /// appearance in a breadth-first closure in generator order.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Self, GrpError> {
        let degree = gens.first().map_or(0, Vec::len);
        for (k, p) in gens.iter().enumerate() {
            if p.len() != degree {
                return Err(GrpError::DegreeMismatch);
            }
            let mut seen = vec![false; degree];
            for &x in p {
                if x >= degree || std::mem::replace(&mut seen[x], true) {
                    return Err(GrpError::NotBijective(k));
                }
            }
        }
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&i| p[i]).collect() };
        let mut elems: Vec<Vec<usize>> = vec![(0..degree).collect()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(elems[0].clone(), 0)]);
        let mut head = 0;
        while head < elems.len() {
            for s in gens {
                let y = compose(&elems[head], s);
                if !index.contains_key(&y) {
                    if elems.len() >= INPUT_ORDER_CAP {
                        return Err(GrpError::TooLarge { order: elems.len() + 1, cap: INPUT_ORDER_CAP });
                    }
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                }
            }
            head += 1;
        }
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                table.push(index[&compose(a, b)] as u32);
            }
        }
        let labels = elems.iter().map(|p| format!("{p:?}")).collect();
        let mut g = Self::from_flat_unchecked(n, table);
        g.labels = Some(labels);
        Ok(g)
    }

    pub fn trivial() -> Self {
        Self::from_flat_unchecked(1, vec![0])
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32)).collect();
        Self::from_flat_unchecked(n, table)
    }

    /// `Z/m1 x ... x Z/mk`, mixed radix with the last factor least significant.
    pub fn abelian(orders: &[usize]) -> Self {
        let n: usize = orders.iter().product();
        let digits = |mut x: usize| {
            let mut d = vec![0; orders.len()];
            for i in (0..orders.len()).rev() {
                d[i] = x % orders[i];
                x /= orders[i];
            }
            d
        };
        let encode = |d: &[usize]| d.iter().zip(orders).fold(0, |acc, (x, m)| acc * m + x);
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            let da = digits(a);
            for b in 0..n {
                let s: Vec<usize> = digits(b).iter().zip(&da).zip(orders).map(|((x, y), m)| (x + y) % m).collect();
                table.push(encode(&s) as u32);
            }
        }
        Self::from_flat_unchecked(n, table)
    }

    pub fn klein_four() -> Self {
        Self::abelian(&[2, 2])
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations(&[vec![1, 2, 0], vec![1, 0, 2]]).expect("S3")
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    pub fn label(&self, a: usize) -> String {
        self.labels.as_ref().map_or_else(|| a.to_string(), |l| l[a].clone())
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    /// Closure of `gens` under multiplication, as a membership mask.
    pub fn closure_mask(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut members = vec![0usize];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            for &s in gens {
                let y = self.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
            head += 1;
        }
        mask
    }

    /// Greedy generating set: repeatedly adds an element of largest order
    /// (smallest id on ties) outside the subgroup generated so far.
    pub fn generating_set(&self) -> Vec<usize> {
        let orders: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        let mut gens = Vec::new();
        let mut mask = self.closure_mask(&gens);
        while let Some(a) = self
            .elements()
            .filter(|&a| !mask[a])
            .max_by(|&x, &y| orders[x].cmp(&orders[y]).then(y.cmp(&x)))
        {
            gens.push(a);
            mask = self.closure_mask(&gens);
        }
        gens
    }
}

impl GroupOps for FiniteGroup {
    fn order(&self) -> usize {
        self.order
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_table() {
        let g = make_group(&GroupSpec::Table(vec![vec![0]])).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn transposition_closure() {
        let g = make_group(&GroupSpec::Permutations(vec![vec![1, 0]])).unwrap();
        assert_eq!(g.table_rows(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn s3_from_two_generators() {
        let g = FiniteGroup::symmetric3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        // re-validate the compiled table from scratch
        assert!(FiniteGroup::from_table(&g.table_rows()).is_ok());
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(FiniteGroup::from_table(&[vec![0, 1]]), Err(GrpError::NotSquare));
        assert_eq!(FiniteGroup::from_table(&[vec![0, 2], vec![1, 0]]), Err(GrpError::OutOfRange(0, 1)));
        assert_eq!(FiniteGroup::from_table(&[vec![1, 0], vec![0, 1]]), Err(GrpError::IdentityMissing));
        assert_eq!(
            FiniteGroup::from_permutations(&[vec![0, 0]]),
            Err(GrpError::NotBijective(0))
        );
        assert_eq!(
            FiniteGroup::from_permutations(&[vec![0, 1], vec![0]]),
            Err(GrpError::DegreeMismatch)
        );
        // a loop that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(&t), Err(GrpError::NotAssociative(..))));
    }

    #[test]
    fn generating_sets() {
        assert_eq!(FiniteGroup::cyclic(6).generating_set().len(), 1);
        assert_eq!(FiniteGroup::klein_four().generating_set().len(), 2);
        assert_eq!(FiniteGroup::symmetric3().generating_set().len(), 2);
        assert_eq!(FiniteGroup::trivial().generating_set(), Vec::<usize>::new());
    }
}
