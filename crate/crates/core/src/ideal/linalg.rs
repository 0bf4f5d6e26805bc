//! Small dense linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::algebra::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let k = b.len();
    let mut out = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

pub fn mat_pow(a: &Matrix, mut e: usize) -> Matrix {
    let mut base = a.clone();
    let mut acc = identity(a.len());
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base);
        }
    }
    acc
}

/// Rank by Gaussian elimination.
pub fn rank(mut rows: Matrix) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            for j in c..ncols {
                let d = &f * &rows[r][j];
                rows[i][j] -= d;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn rank_and_powers() {
        let m = vec![vec![rat(0), rat(1)], vec![rat(0), rat(0)]];
        assert_eq!(rank(m.clone()), 1);
        assert_eq!(rank(mat_pow(&m, 2)), 0);
        assert_eq!(rank(identity(3)), 3);
        let m = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)], vec![rat(0), rat(1)]];
        assert_eq!(rank(m), 2);
    }
}
