//! Chirotopes of explicit vector configurations, computed exactly.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::Chirotope;
use crate::combinatorics::subsets;
use crate::{Error, Result};

/// Prepend a 1 to each affine point, giving vectors in dimension d+1.
pub fn homogenize(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    points
        .iter()
        .map(|p| std::iter::once(1).chain(p.iter().copied()).collect())
        .collect()
}

/// Sign of the determinant of the square matrix with the given columns,
/// by fraction-free (Bareiss) elimination.
pub fn determinant_sign(columns: &[&[i64]]) -> i8 {
    let k = columns.len();
    let mut m: Vec<Vec<BigInt>> = (0..k)
        .map(|row| columns.iter().map(|c| BigInt::from(c[row])).collect())
        .collect();
    let mut sign = 1i8;
    let mut prev = BigInt::from(1);
    for p in 0..k {
        let Some(pivot) = (p..k).find(|&i| !m[i][p].is_zero()) else {
            return 0;
        };
        if pivot != p {
            m.swap(pivot, p);
            sign = -sign;
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let v = &m[i][j] * &m[p][p] - &m[i][p] * &m[p][j];
                m[i][j] = v / &prev;
            }
            m[i][p] = BigInt::zero();
        }
        prev = m[p][p].clone();
    }
    let last = &m[k - 1][k - 1];
    if last.is_zero() {
        0
    } else if last.is_positive() {
        sign
    } else {
        -sign
    }
}

/// χ(b) = sign det(columns b); `points` are n vectors of length r.
pub fn chirotope_from_points(points: &[Vec<i64>]) -> Result<Chirotope> {
    let n = points.len();
    let r = points.first().map_or(0, Vec::len);
    if let Some(bad) = points.iter().find(|p| p.len() != r) {
        return Err(Error::TupleLength { got: bad.len(), expected: r });
    }
    let mut signs = Vec::new();
    for b in subsets(n, r) {
        let cols: Vec<&[i64]> = b.iter().map(|&i| points[i as usize - 1].as_slice()).collect();
        match determinant_sign(&cols) {
            0 => return Err(Error::NotGeneralPosition(b)),
            s => signs.push(s),
        }
    }
    Chirotope::new(n, r, signs)
}
