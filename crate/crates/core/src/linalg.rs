//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Row-reduced echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Nonzero rows, each with a unit pivot.
    pub rows: Vec<Vec<Rational>>,
    /// Pivot column of each row.
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Reduce `rows` to RREF, choosing pivots by scanning columns in
/// `column_order` (every column index must appear once).
pub fn rref_ordered(mut rows: Vec<Vec<Rational>>, column_order: &[usize]) -> Echelon {
    let mut pivots = Vec::new();
    let mut next = 0;
    for &col in column_order {
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = Rational::one() / &rows[next][col];
        for x in rows[next].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    Echelon { rows, pivots }
}

pub fn rref(rows: Vec<Vec<Rational>>) -> Echelon {
    let width = rows.first().map_or(0, Vec::len);
    let order: Vec<usize> = (0..width).collect();
    rref_ordered(rows, &order)
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    rref(rows.to_vec()).rank()
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..n {
                let sub = &f * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}
