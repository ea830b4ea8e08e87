//! Exact rank of sparse rational matrices.
//!
//! Rows are scaled to primitive integer vectors and inserted one at a time
//! into an echelon basis keyed by leading column. Reduction is fraction-free:
//! a row is combined with a pivot by cross-multiplying the two leading
//! entries and then divided by the content of the result, so no rational
//! normalization happens in the inner loop. The rank does not depend on the
//! order in which rows arrive or on how columns are numbered; both only
//! affect fill-in and therefore speed.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Sparse row of `(column, value)` pairs, sorted by column, no zeros.
pub type RationalRow = Vec<(usize, Rational)>;

type IntRow = Vec<(usize, BigInt)>;

fn primitive(row: &mut IntRow) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.abs();
    for (_, v) in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(v);
    }
    let flip = first.1.is_negative();
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
    if flip {
        for (_, v) in row.iter_mut() {
            *v = -&*v;
        }
    }
}

fn to_integer_row(row: &[(usize, Rational)]) -> IntRow {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut out: IntRow = row
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .collect();
    out.sort_by_key(|(c, _)| *c);
    primitive(&mut out);
    out
}

/// `a * x - b * y` for sorted sparse rows, dropping cancellations.
fn combine(x: &IntRow, a: &BigInt, y: &IntRow, b: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let cx = x.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cy = y.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if cx < cy {
            out.push((cx, a * &x[i].1));
            i += 1;
        } else if cy < cx {
            out.push((cy, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((cx, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally built row echelon basis over the rationals.
#[derive(Debug, Default, Clone)]
pub struct EchelonBasis {
    pivots: HashMap<usize, IntRow>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a row; returns `true` if it was independent of the basis.
    pub fn insert(&mut self, row: &[(usize, Rational)]) -> bool {
        let mut row = to_integer_row(row);
        loop {
            let Some((lead, lead_value)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                None => {
                    self.pivots.insert(lead, row);
                    return true;
                }
                Some(pivot) => {
                    let pivot_value = &pivot[0].1;
                    let g = pivot_value.gcd(&lead_value);
                    let a = pivot_value / &g;
                    let b = &lead_value / &g;
                    row = combine(&row, &a, pivot, &b);
                    primitive(&mut row);
                }
            }
        }
    }
}

/// Rank of the matrix whose rows are given.
pub fn rank<'a>(rows: impl IntoIterator<Item = &'a RationalRow>) -> usize {
    let mut basis = EchelonBasis::new();
    for row in rows {
        basis.insert(row);
    }
    basis.rank()
}

/// Rank of a dense rational matrix by textbook Gauss-Jordan elimination.
/// Slow; kept as an independent cross-check of [`EchelonBasis`].
pub fn dense_rank(mut matrix: Vec<Vec<Rational>>) -> usize {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(rank, pivot);
        let lead = matrix[rank][col].clone();
        let pivot_row: Vec<Rational> = matrix[rank].iter().map(|v| v / &lead).collect();
        for (r, row) in matrix.iter_mut().enumerate() {
            let factor = row[col].clone();
            if r == rank || factor.is_zero() {
                continue;
            }
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= &factor * p;
            }
        }
        matrix[rank] = pivot_row;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    fn sparse(dense: &[Rational]) -> RationalRow {
        dense
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect()
    }

    #[test]
    fn small_ranks() {
        let m = vec![
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
            vec![frac(1, 2), int(0), int(1)],
        ];
        let rows: Vec<_> = m.iter().map(|r| sparse(r)).collect();
        assert_eq!(rank(&rows), 2);
        assert_eq!(dense_rank(m), 2);
        assert_eq!(rank(&Vec::<RationalRow>::new()), 0);
        assert_eq!(rank(&vec![Vec::new()]), 0);
    }

    #[test]
    fn insert_reports_dependence() {
        let mut basis = EchelonBasis::new();
        assert!(basis.insert(&[(0, int(2)), (3, frac(1, 3))]));
        assert!(basis.insert(&[(3, int(1))]));
        assert!(!basis.insert(&[(0, int(-5))]));
        assert_eq!(basis.rank(), 2);
    }

    proptest! {
        #[test]
        fn sparse_rank_matches_dense(
            entries in proptest::collection::vec(-3i64..=3, 30),
            dens in proptest::collection::vec(1i64..=4, 30),
            order in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(),
        ) {
            let m: Vec<Vec<Rational>> = (0..6)
                .map(|r| (0..5).map(|c| frac(entries[r * 5 + c], dens[r * 5 + c])).collect())
                .collect();
            let rows: Vec<_> = order.iter().map(|&r| sparse(&m[r])).collect();
            prop_assert_eq!(rank(&rows), dense_rank(m));
        }
    }
}
