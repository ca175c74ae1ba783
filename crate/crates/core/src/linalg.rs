//! Exact Gaussian elimination over the rationals.

use num::{One, Zero};

use crate::rational::Q;

/// Outcome of reducing an augmented system `A x = b`.
#[derive(Debug, Clone, PartialEq)]
pub enum LinearSolution {
    Unique(Vec<Q>),
    Underdetermined { rank: usize, unknowns: usize },
    Inconsistent { rank: usize, unknowns: usize },
}

/// Solve `A x = b` exactly, where `A` has `unknowns` columns and any number of rows.
pub fn solve(a: &[Vec<Q>], b: &[Q], unknowns: usize) -> LinearSolution {
    let rows = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..unknowns {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Q::one() / &m[row][col];
        for v in m[row].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot = m[row].clone();
                for (dst, p) in m[r][col..=unknowns].iter_mut().zip(&pivot[col..=unknowns]) {
                    *dst -= &f * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let rank = pivots.len();
    if m[rank..].iter().any(|r| !r[unknowns].is_zero()) {
        return LinearSolution::Inconsistent { rank, unknowns };
    }
    if rank < unknowns {
        return LinearSolution::Underdetermined { rank, unknowns };
    }
    LinearSolution::Unique((0..unknowns).map(|i| m[i][unknowns].clone()).collect())
}

/// Inverse of a square rational matrix, or `None` if singular.
pub fn inverse(a: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Q> = (0..n)
            .map(|i| if i == j { Q::one() } else { Q::zero() })
            .collect();
        match solve(a, &e, n) {
            LinearSolution::Unique(x) => cols.push(x),
            _ => return None,
        }
    }
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect(),
    )
}
