//! Presentation matrices of `f_* O_2` over `O_3` for corank-1 germs, the
//! Fitting ladder `F0 ⊆ F1 ⊆ F2`, and the counts `T(f)`, `C(f)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{determinant, AlgebraError, Monomial, Polynomial, Rational, Ring};
use crate::double_point::target_ring;
use crate::germ::{Corank1Form, GermError, MapGerm};
use crate::ideal::{elimination_ideal, local_length, Ideal, IdealError};

/// Truncation order for local lengths in this module.
pub const LENGTH_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("f is not finite at the origin")]
    NotFinite,
    #[error("presentation did not close: {0}")]
    ClosureFailure(String),
    #[error("the quotient is not supported at the origin with finite length")]
    NotZeroDimensional,
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl PresentationError {
    pub fn code(&self) -> &'static str {
        match self {
            PresentationError::NotFinite => "NotFinite",
            PresentationError::ClosureFailure(_) => "ClosureFailure",
            PresentationError::NotZeroDimensional => "NotZeroDimensional",
            PresentationError::Germ(e) => e.code(),
            PresentationError::Ideal(e) => e.code(),
            PresentationError::Algebra(e) => e.code(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PresentationConfig {
    /// Bound on the total degree of matrix entries; `None` uses
    /// `4 * max(deg p, deg q)`.
    pub degree_cap: Option<u64>,
}

/// `M = V*I - T` over `[X, Y, Z]` on the generators `1, y, ..., y^(k-1)`,
/// where `V` is the target coordinate not used to span the module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationMatrix {
    pub k: usize,
    pub entries: Vec<Vec<Polynomial>>,
    /// `"Y"` when `p` spans the module over `[x, p]`, else `"Z"`.
    pub monic_coordinate: &'static str,
}

impl PresentationMatrix {
    pub fn determinant(&self) -> Polynomial {
        determinant(&self.entries, &target_ring())
    }

    /// Ideal of `r x r` minors; `r = 0` gives the unit ideal.
    pub fn minors_ideal(&self, r: usize) -> Result<Ideal, PresentationError> {
        let ring = target_ring();
        if r == 0 {
            return Ok(Ideal::new(&ring, vec![Polynomial::one(&ring)])?);
        }
        let mut gens = Vec::new();
        for rows in subsets(self.k, r) {
            for cols in subsets(self.k, r) {
                let sub: Vec<Vec<Polynomial>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect())
                    .collect();
                let m = determinant(&sub, &ring);
                if !m.is_zero() && !gens.contains(&m) {
                    gens.push(m);
                }
            }
        }
        Ok(Ideal::new(&ring, gens)?)
    }
}

impl fmt::Display for PresentationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[ {} ]", cells.join(" , "))?;
        }
        Ok(())
    }
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Order in `y` of `h(0, y)`, or `None` if it vanishes.
fn order_on_axis(h: &Polynomial) -> Option<u32> {
    h.evaluate_var(0, &Rational::zero()).min_degree_in(1)
}

/// `k = dim O_2 / <x, p, q>` at the origin.
pub fn sheet_number(f: &Corank1Form) -> Result<usize, PresentationError> {
    match [order_on_axis(&f.p), order_on_axis(&f.q)].into_iter().flatten().min() {
        Some(k) => Ok(k as usize),
        None => Err(PresentationError::NotFinite),
    }
}

/// Part of `h` of `y`-degree `e`, as a polynomial in `x` alone (still in `[x, y]`).
fn y_coefficient(h: &Polynomial, e: u32) -> Polynomial {
    Polynomial::from_terms(
        h.ring(),
        h.terms()
            .filter(|(m, _)| m.exps()[1] == e)
            .map(|(m, c)| (Monomial::new(vec![m.exps()[0], 0]), c.clone())),
    )
}

/// Writes `h = sum_{m, j < k} c_{m,j}(x) g^m y^j` for `g` monic of `y`-degree `k`.
/// Returns, for each `j`, the polynomial `sum_m c_{m,j}(X) V^m` in `[X, Y, Z]`.
fn expand_over(h: &Polynomial, g: &Polynomial, k: u32, v_index: usize) -> Vec<Polynomial> {
    let tr = target_ring();
    let lc = g.coeff(&Monomial::new(vec![0, k]));
    let mut out = vec![Polynomial::zero(&tr); k as usize];
    let mut level = h.clone();
    let mut m = 0u32;
    while !level.is_zero() {
        let mut rem = level;
        let mut quo = Polynomial::zero(h.ring());
        while let Some(e) = rem.degree_in(1).filter(|&e| e >= k) {
            let c = y_coefficient(&rem, e).scale(&lc.recip());
            let step = c.mul_monomial(&Monomial::new(vec![0, e - k]), &Rational::one());
            rem = &rem - &(&step * g);
            quo = &quo + &step;
        }
        for j in 0..k {
            let c = y_coefficient(&rem, j);
            let lifted = Polynomial::from_terms(
                &tr,
                c.terms().map(|(mono, coef)| {
                    let mut e = vec![mono.exps()[0], 0, 0];
                    e[v_index] += m;
                    (Monomial::new(e), coef.clone())
                }),
            );
            out[j as usize] = &out[j as usize] + &lifted;
        }
        level = quo;
        m += 1;
    }
    out
}

/// `Polynomial` in `[X, Y, Z]` evaluated at `(x, p, q)`.
pub fn compose_with(h: &Polynomial, f: &MapGerm) -> Result<Polynomial, PresentationError> {
    let mut b = HashMap::new();
    for (name, c) in ["X", "Y", "Z"].iter().zip(f.components()) {
        b.insert(name.to_string(), c.clone());
    }
    Ok(h.substitute(&b, f.ring())?)
}

pub fn presentation_matrix(f: &Corank1Form) -> Result<PresentationMatrix, PresentationError> {
    presentation_matrix_with(f, &PresentationConfig::default())
}

pub fn presentation_matrix_with(f: &Corank1Form, config: &PresentationConfig) -> Result<PresentationMatrix, PresentationError> {
    let k = sheet_number(f)? as u32;
    let monic = |h: &Polynomial| {
        h.degree_in(1) == Some(k) && {
            let top = y_coefficient(h, k);
            top.is_constant() && !top.is_zero()
        }
    };
    let (g, h, v_index, h_index, name) = if monic(&f.p) {
        (&f.p, &f.q, 1usize, 2usize, "Y")
    } else if monic(&f.q) {
        (&f.q, &f.p, 2, 1, "Z")
    } else {
        return Err(PresentationError::ClosureFailure(format!(
            "neither {} nor {} is monic of degree {k} in y",
            f.p, f.q
        )));
    };
    let cap = config.degree_cap.unwrap_or_else(|| {
        4 * f.p.total_degree().unwrap_or(0).max(f.q.total_degree().unwrap_or(0))
    });
    let tr = target_ring();
    let y = Polynomial::var_index(f.ring(), 1);
    let mut t = vec![vec![Polynomial::zero(&tr); k as usize]; k as usize];
    let mut basis = Polynomial::one(f.ring());
    for i in 0..k as usize {
        let column = expand_over(&(h * &basis), g, k, v_index);
        for (j, c) in column.into_iter().enumerate() {
            if c.total_degree().unwrap_or(0) > cap {
                return Err(PresentationError::ClosureFailure(format!(
                    "entry of degree above the cap {cap}"
                )));
            }
            t[j][i] = c;
        }
        basis = &basis * &y;
    }
    let v = Polynomial::var_index(&tr, h_index);
    let entries: Vec<Vec<Polynomial>> = (0..k as usize)
        .map(|i| {
            (0..k as usize)
                .map(|j| {
                    let d = if i == j { v.clone() } else { Polynomial::zero(&tr) };
                    &d - &t[i][j]
                })
                .collect()
        })
        .collect();
    let m = PresentationMatrix {
        k: k as usize,
        entries,
        monic_coordinate: name,
    };
    if !compose_with(&m.determinant(), &f.to_germ(""))?.is_zero() {
        return Err(PresentationError::ClosureFailure("det(M) does not vanish on the image".into()));
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FittingLadder {
    pub f0: Ideal,
    pub f1: Ideal,
    pub f2: Ideal,
}

pub fn fitting_ladder(m: &PresentationMatrix) -> Result<FittingLadder, PresentationError> {
    let tr = target_ring();
    let unit = || Ideal::new(&tr, vec![Polynomial::one(&tr)]);
    Ok(FittingLadder {
        f0: Ideal::new(&tr, vec![m.determinant()])?,
        f1: if m.k >= 1 { m.minors_ideal(m.k - 1)? } else { unit()? },
        f2: if m.k >= 3 { m.minors_ideal(m.k - 2)? } else { unit()? },
    })
}

/// Zariski closure of the image: `<X - x, Y - p, Z - q>` with `x, y` eliminated.
pub fn graph_image_ideal(f: &MapGerm) -> Result<Ideal, PresentationError> {
    let src = f.ring();
    let big = Ring::new(src.vars().iter().cloned().chain(["X", "Y", "Z"].map(String::from)));
    let mut gens = Vec::new();
    for (name, c) in ["X", "Y", "Z"].iter().zip(f.components()) {
        gens.push(&Polynomial::var(&big, name)? - &c.to_ring(&big)?);
    }
    let names: Vec<&str> = src.vars().iter().map(String::as_str).collect();
    let e = elimination_ideal(&Ideal::new(&big, gens)?, &names)?;
    Ok(e.to_ring(&target_ring())?)
}

fn finite_length(i: &Ideal) -> Result<usize, PresentationError> {
    match local_length(i, LENGTH_CAP) {
        Ok(n) => Ok(n),
        Err(IdealError::NotFiniteLocally { .. }) => Err(PresentationError::NotZeroDimensional),
        Err(e) => Err(e.into()),
    }
}

/// `T(f) = dim O_3 / F2` at the origin.
pub fn triple_point_number(f: &Corank1Form) -> Result<usize, PresentationError> {
    let ladder = fitting_ladder(&presentation_matrix(f)?)?;
    finite_length(&ladder.f2)
}

/// `C(f) = dim O_2 / J(f)` with `J(f)` the 2x2 minors of the Jacobian.
pub fn cross_cap_number(f: &Corank1Form) -> Result<usize, PresentationError> {
    ramification_length(&f.to_germ(""))
}

pub fn ramification_length(f: &MapGerm) -> Result<usize, PresentationError> {
    let minors: Vec<Polynomial> = f.jacobian_minors().into_iter().filter(|m| !m.is_zero()).collect();
    let ring: Arc<Ring> = f.ring().clone();
    finite_length(&Ideal::new(&ring, minors)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use crate::ideal::{ideal_equal, same_variety};

    fn xyz(s: &str) -> Polynomial {
        parse_polynomial(s, &target_ring()).unwrap()
    }

    #[test]
    fn crosscap_presentation() {
        let f = Corank1Form::parse("y^2", "x*y").unwrap();
        let m = presentation_matrix(&f).unwrap();
        assert_eq!(m.k, 2);
        assert_eq!(m.determinant(), xyz("Z^2 - X^2*Y"));
        assert_eq!(triple_point_number(&f).unwrap(), 0);
        assert_eq!(cross_cap_number(&f).unwrap(), 1);
        let ladder = fitting_ladder(&m).unwrap();
        let line = Ideal::new(&target_ring(), vec![xyz("X"), xyz("Z")]).unwrap();
        assert!(same_variety(&ladder.f1, &line).unwrap());
    }

    #[test]
    fn c5_presentation() {
        let f = Corank1Form::parse("y^2", "x*y^3 - x^5*y").unwrap();
        let m = presentation_matrix(&f).unwrap();
        assert_eq!(m.determinant(), xyz("Z^2 - X^2*Y*(Y - X^4)^2"));
        let img = graph_image_ideal(&f.to_germ("C5")).unwrap();
        let f0 = Ideal::new(&target_ring(), vec![m.determinant()]).unwrap();
        assert!(ideal_equal(&img, &f0).unwrap());
        assert_eq!(cross_cap_number(&f).unwrap(), 5);
    }

    #[test]
    fn immersion_and_swapped() {
        let f = Corank1Form::parse("y", "x*y^2").unwrap();
        let m = presentation_matrix(&f).unwrap();
        assert_eq!(m.k, 1);
        assert_eq!(m.determinant(), xyz("Z - X*Y^2"));
        let f = Corank1Form::parse("x*y^3 - x^5*y", "y^2").unwrap();
        let m = presentation_matrix(&f).unwrap();
        assert_eq!(m.monic_coordinate, "Z");
        assert_eq!(m.determinant(), xyz("Y^2 - X^2*Z*(Z - X^4)^2"));
    }
}
