//! Dense univariate polynomials over the rationals, used for branch spectra.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Coefficients lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::new(vec![Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading();
        UniPoly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Distinct rational roots in increasing order, by the rational root
    /// theorem applied to the primitive integer form.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        if deg == 0 {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let mut work = self.clone();
        if work.coeffs[0].is_zero() {
            roots.push(Rational::zero());
            let k = work.coeffs.iter().position(|c| !c.is_zero()).unwrap();
            work = UniPoly::new(work.coeffs[k..].to_vec());
        }
        let ints = integer_coefficients(&work);
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        if work.degree().unwrap_or(0) > 0 {
            let ps = divisors(&a0);
            let qs = divisors(&an);
            for pnum in &ps {
                for q in &qs {
                    if !pnum.gcd(q).is_one() {
                        continue;
                    }
                    for sign in [1, -1] {
                        let r = Rational::new(pnum * BigInt::from(sign), q.clone());
                        if work.eval(&r).is_zero() && !roots.contains(&r) {
                            roots.push(r);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// Divides out `(s - r)` once for each given root.
    pub fn deflate(&self, roots: &[Rational]) -> UniPoly {
        let mut p = self.clone();
        for r in roots {
            let lin = UniPoly::new(vec![-r.clone(), Rational::one()]);
            let (q, rem) = p.div_rem(&lin);
            assert!(rem.is_zero(), "{r} is not a root");
            p = q;
        }
        p
    }
}

fn integer_coefficients(p: &UniPoly) -> Vec<BigInt> {
    let l = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= *n {
        if (n % &i).is_zero() {
            out.push(i.clone());
            let other = n / &i;
            if other != i {
                out.push(other);
            }
        }
        i += 1;
    }
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let coef = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("{}/{}", a.numer(), a.denom())
            };
            match i {
                0 => write!(f, "{coef}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{coef}*")?;
                    }
                    if i == 1 {
                        write!(f, "s")?;
                    } else {
                        write!(f, "s^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
