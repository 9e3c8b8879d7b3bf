//! Exact integer matrix routines over arbitrary-precision integers.
//!
//! Matrices are small and dense (reduced Laplacians of desk-scale graphs), so
//! everything here is a plain `Vec<Vec<BigInt>>` with cubic algorithms.
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

pub fn from_i64(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Fraction-free (Bareiss) determinant. The empty matrix has determinant 1.
pub fn determinant(matrix: &Matrix) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = matrix.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Adjugate of a nonsingular square matrix, together with its determinant.
/// Returns `None` for singular input.
pub fn adjugate(matrix: &Matrix) -> Option<(Matrix, BigInt)> {
    let n = matrix.len();
    let det = determinant(matrix);
    if det.is_zero() {
        return None;
    }
    if n == 0 {
        return Some((Vec::new(), det));
    }
    // Gauss-Jordan over the rationals on [A | I].
    let mut aug: Vec<Vec<BigRational>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> =
                row.iter().cloned().map(BigRational::from_integer).collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !aug[i][col].is_zero())?;
        aug.swap(pivot, col);
        let inv = aug[col][col].recip();
        for x in aug[col].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != col && !aug[i][col].is_zero() {
                let factor = aug[i][col].clone();
                for j in 0..2 * n {
                    let delta = &factor * &aug[col][j];
                    aug[i][j] -= delta;
                }
            }
        }
    }
    let det_q = BigRational::from_integer(det.clone());
    let adj = aug
        .into_iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| {
                    let v = x * &det_q;
                    debug_assert!(v.is_integer());
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    Some((adj, det))
}

/// Diagonal of the Smith normal form (absolute values, in divisibility
/// order). Zero diagonal entries are reported as zero.
pub fn smith_diagonal(matrix: &Matrix) -> Vec<BigInt> {
    let rows = matrix.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = matrix[0].len();
    let mut a = matrix.clone();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                // trailing block is zero
                diag.extend((t..rows.min(cols)).map(|_| BigInt::zero()));
                return diag;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let delta = &q * &a[t][j];
                        a[i][j] -= delta;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for i in t..rows {
                        let delta = &q * &a[i][t];
                        a[i][j] -= delta;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // Pivot must divide the whole trailing block.
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
            match offender {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&m(&[&[2, -1], &[-1, 2]])), BigInt::from(3));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(determinant(&Vec::new()), BigInt::one());
    }

    #[test]
    fn adjugate_inverts() {
        let a = m(&[&[3, -1, -1], &[-1, 3, -1], &[-1, -1, 4]]);
        let (adj, det) = adjugate(&a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: BigInt = (0..3).map(|k| &a[i][k] * &adj[k][j]).sum();
                let expect = if i == j { det.clone() } else { BigInt::zero() };
                assert_eq!(s, expect);
            }
        }
    }

    #[test]
    fn smith_of_klein_four() {
        let a = m(&[&[2, 0], &[0, 2]]);
        assert_eq!(smith_diagonal(&a), vec![BigInt::from(2), BigInt::from(2)]);
        let b = m(&[&[2, 0], &[0, 3]]);
        assert_eq!(smith_diagonal(&b), vec![BigInt::from(1), BigInt::from(6)]);
        let c = m(&[&[4, 6], &[6, 4]]);
        // det = -20, gcd of entries = 2
        assert_eq!(smith_diagonal(&c), vec![BigInt::from(2), BigInt::from(10)]);
    }
}
