use std::sync::Arc;

use super::{AlgebraError, Polynomial, Ring};

/// Determinant of a square matrix of polynomials by fraction-free Bareiss
/// elimination. Every division performed is exact. The empty matrix has
/// determinant 1.
pub fn determinant(matrix: &[Vec<Polynomial>], ring: &Arc<Ring>) -> Polynomial {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "matrix is not square");
    if n == 0 {
        return Polynomial::one(ring);
    }
    let mut m: Vec<Vec<Polynomial>> = matrix.to_vec();
    let mut prev = Polynomial::one(ring);
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Polynomial::zero(ring);
            };
            m.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .divide_exact(&prev)
                    .expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Coefficients of `p` as a polynomial in variable `idx`, lowest first,
/// moved into `target` (the ring without that variable).
fn coefficients_in(p: &Polynomial, idx: usize, target: &Arc<Ring>) -> Vec<Polynomial> {
    let deg = p.degree_in(idx).unwrap_or(0) as usize;
    let mut out = vec![Polynomial::zero(target); deg + 1];
    for (m, c) in p.terms() {
        let e = m.exps()[idx] as usize;
        let mut exps = m.exps().to_vec();
        exps.remove(idx);
        let t = Polynomial::monomial(target, super::Monomial::new(exps), c.clone());
        out[e] = &out[e] + &t;
    }
    out
}

/// Sylvester resultant of `a` and `b` with respect to `var`, as a polynomial
/// in the remaining variables. A zero argument gives the zero resultant.
pub fn resultant(a: &Polynomial, b: &Polynomial, var: &str) -> Result<Polynomial, AlgebraError> {
    if a.ring() != b.ring() {
        return Err(AlgebraError::RingMismatch {
            left: a.ring().to_string(),
            right: b.ring().to_string(),
        });
    }
    let ring = a.ring();
    let idx = ring.require(var)?;
    let target = ring.without(&[var]);
    if a.is_zero() || b.is_zero() {
        return Ok(Polynomial::zero(&target));
    }
    let ca = coefficients_in(a, idx, &target);
    let cb = coefficients_in(b, idx, &target);
    let (m, n) = (ca.len() - 1, cb.len() - 1);
    if m == 0 && n == 0 {
        return Err(AlgebraError::BothConstantInVar { var: var.to_string() });
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    // n shifted copies of a, then m shifted copies of b; highest power first
    for shift in 0..n {
        let mut row = vec![Polynomial::zero(&target); size];
        for (i, c) in ca.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![Polynomial::zero(&target); size];
        for (i, c) in cb.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    Ok(determinant(&rows, &target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;

    fn p(s: &str, r: &Arc<Ring>) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn c5_resultant() {
        let r = Ring::new(["x", "y", "y'"]);
        let a = p("y + y'", &r);
        let b = p("x*(y^2 + y*y' + y'^2) - x^5", &r);
        let res = resultant(&a, &b, "y'").unwrap();
        let xy = Ring::new(["x", "y"]);
        let l = p("x*y^2 - x^5", &xy);
        assert!(res == l || res == -l.clone(), "got {res}");
    }

    #[test]
    fn small_cases() {
        let r = Ring::new(["x", "y", "y'"]);
        let xy = Ring::new(["x", "y"]);
        assert_eq!(resultant(&p("y + y'", &r), &p("x", &r), "y'").unwrap(), p("x", &xy));
        assert!(resultant(&p("y'", &r), &p("y'", &r), "y'").unwrap().is_zero());
        assert!(matches!(
            resultant(&p("x", &r), &p("y", &r), "y'"),
            Err(AlgebraError::BothConstantInVar { .. })
        ));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let r = Ring::new(["a"]);
        let m = vec![
            vec![p("0", &r), p("1", &r), p("a", &r)],
            vec![p("a", &r), p("0", &r), p("2", &r)],
            vec![p("1", &r), p("a^2", &r), p("0", &r)],
        ];
        // 0*(0-2a^2) - 1*(0-2) + a*(a^3-0)
        assert_eq!(determinant(&m, &r), p("a^4 + 2", &r));
    }
}
