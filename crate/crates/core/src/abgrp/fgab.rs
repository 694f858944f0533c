//! Finitely generated abelian groups: invariant-factor form and presentations.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::int::Int;
use super::lattice::Lattice;
use super::matrix::{IntMatrix, SparseVec};
use super::snf::{dense_snf, Track};
use super::AbError;

/// `Z^rank + Z/d1 + ... + Z/dk` with `2 <= d1 | d2 | ... | dk`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FgAbelian {
    rank: usize,
    divisors: Vec<Int>,
}

impl FgAbelian {
    pub fn new(rank: usize, divisors: Vec<Int>) -> Result<Self, AbError> {
        for d in &divisors {
            if d < &Int::from(2) {
                return Err(AbError::BadInvariants(format!("divisor {d} < 2")));
            }
        }
        for w in divisors.windows(2) {
            if !w[0].divides(&w[1]) {
                return Err(AbError::BadInvariants(format!("{} does not divide {}", w[0], w[1])));
            }
        }
        Ok(FgAbelian { rank, divisors })
    }

    pub fn trivial() -> Self {
        FgAbelian { rank: 0, divisors: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelian { rank, divisors: Vec::new() }
    }

    pub fn cyclic(n: i64) -> Self {
        match n {
            0 => FgAbelian::free(1),
            1 => FgAbelian::trivial(),
            _ => FgAbelian { rank: 0, divisors: vec![Int::from(n.abs())] },
        }
    }

    /// Invariant-factor form of an arbitrary list of cyclic orders
    /// (0 meaning infinite cyclic).
    pub fn from_cyclic_orders(orders: &[i64]) -> Self {
        let n = orders.len();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { orders[i] } else { 0 }).collect())
            .collect();
        PresentedAb::new(n, IntMatrix::from_rows_with_width(&rows, n, n)).canonical_form()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn divisors(&self) -> &[Int] {
        &self.divisors
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.divisors.is_empty()
    }

    /// Number of cyclic summands in canonical order (free first, then torsion).
    pub fn num_summands(&self) -> usize {
        self.rank + self.divisors.len()
    }

    /// Order of the summand at canonical position `i`, 0 for free summands.
    pub fn summand_order(&self, i: usize) -> Int {
        if i < self.rank {
            Int::ZERO
        } else {
            self.divisors[i - self.rank].clone()
        }
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        if self.rank > 0 {
            return None;
        }
        Some(self.divisors.iter().fold(Int::ONE, |acc, d| &acc * d))
    }

    /// Presentation on the canonical generators: one relation `d_i e_i` per torsion summand.
    pub fn presentation(&self) -> PresentedAb {
        let k = self.num_summands();
        let cols = self
            .divisors
            .iter()
            .enumerate()
            .map(|(i, d)| SparseVec::from_pairs([(self.rank + i, d.clone())]))
            .collect();
        PresentedAb::new(k, IntMatrix::from_columns(k, cols))
    }

    /// Reduces a coordinate vector on canonical generators into normal form.
    pub fn reduce(&self, coords: &[Int]) -> Vec<Int> {
        coords
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let d = self.summand_order(i);
                if d.is_zero() {
                    c.clone()
                } else {
                    c.div_rem_euclid(&d).1
                }
            })
            .collect()
    }
}

impl fmt::Display for FgAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        match self.rank {
            0 => {}
            1 => terms.push("Z".to_string()),
            r => terms.push(format!("Z^{r}")),
        }
        terms.extend(self.divisors.iter().map(|d| format!("Z/{d}")));
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for FgAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for FgAbelian {
    type Err = AbError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(FgAbelian::trivial());
        }
        let mut rank = 0;
        let mut divisors = Vec::new();
        let bad = || AbError::Parse(s.to_string());
        for term in s.split(" + ") {
            if term == "Z" {
                rank = 1;
            } else if let Some(r) = term.strip_prefix("Z^") {
                rank = r.parse().map_err(|_| bad())?;
            } else if let Some(d) = term.strip_prefix("Z/") {
                divisors.push(Int::from(d.parse::<i64>().map_err(|_| bad())?));
            } else {
                return Err(bad());
            }
        }
        FgAbelian::new(rank, divisors)
    }
}

/// `Z^generators / span(columns of relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedAb {
    generators: usize,
    relations: IntMatrix,
}

impl PresentedAb {
    pub fn new(generators: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.rows(), generators, "relation matrix must have one row per generator");
        PresentedAb { generators, relations }
    }

    pub fn free(generators: usize) -> Self {
        PresentedAb { generators, relations: IntMatrix::zeros(generators, 0) }
    }

    pub fn zero() -> Self {
        PresentedAb::free(0)
    }

    /// Cyclic group of order `n` on one generator (`n = 0` gives Z).
    pub fn cyclic(n: i64) -> Self {
        if n == 0 {
            return PresentedAb::free(1);
        }
        PresentedAb::new(1, IntMatrix::from_rows(&[vec![n]]))
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_zero()
    }

    /// Direct sum of `n` copies.
    pub fn power(&self, n: usize) -> PresentedAb {
        PresentedAb { generators: self.generators * n, relations: self.relations.repeat_diag(n) }
    }

    pub fn direct_sum(parts: &[&PresentedAb]) -> PresentedAb {
        let gens = parts.iter().map(|p| p.generators).sum();
        let rels: Vec<&IntMatrix> = parts.iter().map(|p| &p.relations).collect();
        PresentedAb { generators: gens, relations: IntMatrix::block_diag(&rels) }
    }

    pub fn relation_lattice(&self) -> Lattice {
        Lattice::from_columns(&self.relations)
    }

    /// Whether `v` represents zero.
    pub fn is_zero_element(&self, v: &SparseVec) -> bool {
        v.is_zero() || self.relation_lattice().contains(v)
    }

    /// Invariant factors of the cokernel of the relation matrix.
    pub fn canonical_form(&self) -> FgAbelian {
        let lat = self.relation_lattice();
        let basis = lat.basis_matrix();
        let res = dense_snf(basis.rows(), basis.cols(), basis.to_dense(), Track::default());
        let divisors: Vec<Int> = (0..res.rank)
            .map(|i| res.a[i][i].clone())
            .filter(|d| !d.is_one())
            .collect();
        FgAbelian { rank: self.generators - res.rank, divisors }
    }
}
