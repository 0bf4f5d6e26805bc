//! Map germs from the plane to 3-space, their weights, and 1-parameter
//! unfoldings.

mod catalog;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{AlgebraError, Monomial, Polynomial, Rational, Ring, WeightVector};

pub use catalog::{bundled_catalog, load_catalog, parse_catalog, Catalog, CatalogEntry, CatalogError, BUNDLED_CATALOG};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error("not quasihomogeneous: {0}")]
    NotQuasihomogeneous(String),
    #[error("invalid quasihomogeneous type: {0}")]
    InvalidType(String),
    #[error("first component is not the variable x")]
    NotPrenormal,
    #[error("component {component} does not vanish along the parameter axis")]
    OriginNotPreserved { component: usize },
    #[error("component {component} at t = 0 differs from the base germ")]
    BaseMismatch { component: usize },
    #[error("first component of the unfolding is not x")]
    FirstComponentNotX,
    #[error("component {component} does not vanish at the origin")]
    NonzeroAtOrigin { component: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl GermError {
    pub fn code(&self) -> &'static str {
        match self {
            GermError::NotQuasihomogeneous(_) => "NotQuasihomogeneous",
            GermError::InvalidType(_) => "InvalidType",
            GermError::NotPrenormal => "NotPrenormal",
            GermError::OriginNotPreserved { .. } => "OriginNotPreserved",
            GermError::BaseMismatch { .. } => "BaseMismatch",
            GermError::FirstComponentNotX => "FirstComponentNotX",
            GermError::NonzeroAtOrigin { .. } => "NonzeroAtOrigin",
            GermError::Algebra(e) => e.code(),
        }
    }
}

/// The source ring `[x, y]`.
pub fn source_ring() -> Arc<Ring> {
    Ring::new(["x", "y"])
}

/// The family ring `[x, y, t]`.
pub fn family_ring() -> Arc<Ring> {
    Ring::new(["x", "y", "t"])
}

/// A polynomial map germ `(x, y) -> (f1, f2, f3)` with `f(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapGerm {
    name: String,
    components: [Polynomial; 3],
}

impl MapGerm {
    /// Components must live in [`source_ring`] and vanish at the origin.
    pub fn new(name: impl Into<String>, components: [Polynomial; 3]) -> Result<Self, GermError> {
        let ring = source_ring();
        for (i, c) in components.iter().enumerate() {
            if c.ring() != &ring {
                return Err(AlgebraError::RingMismatch {
                    left: c.ring().to_string(),
                    right: ring.to_string(),
                }
                .into());
            }
            if !c.constant_term().is_zero() {
                return Err(GermError::NonzeroAtOrigin { component: i });
            }
        }
        Ok(MapGerm {
            name: name.into(),
            components,
        })
    }

    /// Parses three components in `[x, y]`.
    pub fn parse(name: impl Into<String>, components: [&str; 3]) -> Result<Self, GermError> {
        let ring = source_ring();
        let [a, b, c] = components.map(|s| crate::algebra::parse_polynomial(s, &ring));
        MapGerm::new(name, [a?, b?, c?])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn components(&self) -> &[Polynomial; 3] {
        &self.components
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.components[0].ring()
    }

    /// The prenormal form `(x, p, q)`, if the first component is literally `x`.
    pub fn corank1_form(&self) -> Result<Corank1Form, GermError> {
        let x = Polynomial::var_index(self.ring(), 0);
        if self.components[0] != x {
            return Err(GermError::NotPrenormal);
        }
        Ok(Corank1Form {
            p: self.components[1].clone(),
            q: self.components[2].clone(),
        })
    }

    /// 2×2 minors of the Jacobian matrix; they generate the ramification ideal.
    pub fn jacobian_minors(&self) -> Vec<Polynomial> {
        let d: Vec<[Polynomial; 2]> = self
            .components
            .iter()
            .map(|c| [c.derivative(0), c.derivative(1)])
            .collect();
        let mut out = Vec::new();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            out.push(&(&d[i][0] * &d[j][1]) - &(&d[i][1] * &d[j][0]));
        }
        out
    }
}

impl fmt::Display for MapGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            self.components[0], self.components[1], self.components[2]
        )
    }
}

/// `2 - rank` of the Jacobian matrix at the origin.
pub fn corank_at_origin(f: &MapGerm) -> u8 {
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for c in f.components() {
        let n = f.ring().len();
        rows.push(
            (0..n)
                .map(|v| c.coeff(&Monomial::var(n, v, 1)))
                .collect(),
        );
    }
    2 - crate::ideal::linalg::rank(rows) as u8
}

/// A germ in prenormal form `(x, p, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corank1Form {
    pub p: Polynomial,
    pub q: Polynomial,
}

impl Corank1Form {
    pub fn new(p: Polynomial, q: Polynomial) -> Result<Self, GermError> {
        MapGerm::new("", [Polynomial::var_index(&source_ring(), 0), p.clone(), q.clone()])?;
        Ok(Corank1Form { p, q })
    }

    pub fn parse(p: &str, q: &str) -> Result<Self, GermError> {
        let g = MapGerm::parse("", ["x", p, q])?;
        g.corank1_form()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.p.ring()
    }

    pub fn to_germ(&self, name: impl Into<String>) -> MapGerm {
        MapGerm {
            name: name.into(),
            components: [Polynomial::var_index(self.ring(), 0), self.p.clone(), self.q.clone()],
        }
    }
}

/// Weights `w(x) = 1`, `w(y) = b` with weighted degrees `d2`, `d3` of the
/// second and third components, and `d = d2*d3/b - d2 - d3 + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuasihomogeneousType {
    pub b: u32,
    pub d2: u32,
    pub d3: u32,
    pub d: i64,
}

impl QuasihomogeneousType {
    pub fn new(b: u32, d2: u32, d3: u32) -> Result<Self, GermError> {
        if b == 0 || d2 == 0 || d3 == 0 {
            return Err(GermError::InvalidType(format!(
                "weights and degrees must be positive, got b={b}, d2={d2}, d3={d3}"
            )));
        }
        if !d2.is_multiple_of(b) && !d3.is_multiple_of(b) {
            return Err(GermError::InvalidType(format!(
                "b={b} divides neither d2={d2} nor d3={d3}"
            )));
        }
        let (b64, d2, d3) = (b as i64, d2 as i64, d3 as i64);
        let d = d2 * d3 / b64 - d2 - d3 + b64;
        Ok(QuasihomogeneousType {
            b,
            d2: d2 as u32,
            d3: d3 as u32,
            d,
        })
    }

    pub fn weights(&self) -> WeightVector {
        WeightVector::xy(self.b)
    }
}

impl fmt::Display for QuasihomogeneousType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(b={}, d2={}, d3={}, d={})", self.b, self.d2, self.d3, self.d)
    }
}

/// The values `b >= 1` for which both `p` and `q` are weighted homogeneous
/// with weights `(1, b)`, in increasing order. Any fitting `b` is at most the
/// largest `x`-exponent unless every `b` fits, in which case `[1, 2, ...]` is
/// returned up to one past that bound, so a length above one always signals
/// an ambiguous type.
pub fn quasihomogeneous_weights(f: &Corank1Form) -> Vec<u32> {
    if f.p.is_zero() || f.q.is_zero() {
        return Vec::new();
    }
    let max_x = [&f.p, &f.q]
        .iter()
        .filter_map(|c| c.degree_in(0))
        .max()
        .unwrap_or(0);
    (1..=max_x + 2)
        .filter(|&b| {
            let w = WeightVector::xy(b);
            [&f.p, &f.q]
                .iter()
                .all(|c| c.weighted_degree(&w).map(|d| d.quasihomogeneous).unwrap_or(false))
        })
        .collect()
}

/// The quasihomogeneous type of `(x, p, q)`. When several `b` fit, the
/// smallest is used (see [`quasihomogeneous_weights`]).
pub fn infer_quasihomogeneous_type(f: &Corank1Form) -> Result<QuasihomogeneousType, GermError> {
    if f.p.is_zero() || f.q.is_zero() {
        return Err(GermError::NotQuasihomogeneous("a component is zero".into()));
    }
    let bs = quasihomogeneous_weights(f);
    let Some(&b) = bs.first() else {
        return Err(GermError::NotQuasihomogeneous(format!(
            "no weights (1, b) make both {} and {} weighted homogeneous",
            f.p, f.q
        )));
    };
    let w = WeightVector::xy(b);
    let d2 = f.p.weighted_degree(&w)?.max;
    let d3 = f.q.weighted_degree(&w)?.max;
    QuasihomogeneousType::new(b, d2 as u32, d3 as u32)
}

/// A 1-parameter unfolding `F(x, y, t) = (f_t(x, y), t)` with `f_0` the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unfolding {
    name: String,
    base: MapGerm,
    components: [Polynomial; 3],
    prenormal: bool,
}

impl Unfolding {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &MapGerm {
        &self.base
    }

    pub fn components(&self) -> &[Polynomial; 3] {
        &self.components
    }

    /// False when the first component is not `x`; only accepted for a
    /// corank-2 base.
    pub fn is_prenormal(&self) -> bool {
        self.prenormal
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.components[0].ring()
    }

    /// `F - f_0` for each component, in `[x, y, t]`.
    pub fn perturbations(&self) -> Result<[Polynomial; 3], GermError> {
        let ring = self.ring().clone();
        let mut out = Vec::new();
        for (c, b) in self.components.iter().zip(self.base.components()) {
            out.push(c.checked_sub(&b.to_ring(&ring)?)?);
        }
        Ok(out.try_into().expect("three components"))
    }

    /// The trivial unfolding of `f`.
    pub fn trivial(name: impl Into<String>, base: &MapGerm) -> Unfolding {
        let ring = family_ring();
        let comps = base
            .components()
            .clone()
            .map(|c| c.to_ring(&ring).expect("source ring embeds"));
        validate_unfolding(name, base, comps).expect("trivial unfolding is valid")
    }

    pub fn parse(name: impl Into<String>, base: &MapGerm, components: [&str; 3]) -> Result<Unfolding, GermError> {
        let ring = family_ring();
        let [a, b, c] = components.map(|s| crate::algebra::parse_polynomial(s, &ring));
        validate_unfolding(name, base, [a?, b?, c?])
    }
}

/// Checks the unfolding invariants: components vanish along the `t`-axis,
/// `t = 0` recovers `base`, and the first component is `x`. The last check
/// is waived (with [`Unfolding::is_prenormal`] false) when `base` has corank 2.
pub fn validate_unfolding(
    name: impl Into<String>,
    base: &MapGerm,
    components: [Polynomial; 3],
) -> Result<Unfolding, GermError> {
    let ring = family_ring();
    for c in &components {
        if c.ring() != &ring {
            return Err(AlgebraError::RingMismatch {
                left: c.ring().to_string(),
                right: ring.to_string(),
            }
            .into());
        }
    }
    let zero = Rational::zero();
    for (i, c) in components.iter().enumerate() {
        let on_axis = c.evaluate_var(0, &zero).evaluate_var(1, &zero);
        if !on_axis.is_zero() {
            return Err(GermError::OriginNotPreserved { component: i });
        }
    }
    for (i, (c, b)) in components.iter().zip(base.components()).enumerate() {
        let at0 = c.evaluate_var(2, &zero).to_ring(&source_ring())?;
        if &at0 != b {
            return Err(GermError::BaseMismatch { component: i });
        }
    }
    let x = Polynomial::var_index(&ring, 0);
    let prenormal = components[0] == x;
    if !prenormal && corank_at_origin(base) != 2 {
        return Err(GermError::FirstComponentNotX);
    }
    Ok(Unfolding {
        name: name.into(),
        base: base.clone(),
        components,
        prenormal,
    })
}

/// Every perturbation monomial `x^i y^j t^k` of the second (third) component
/// has `i + b*j >= d2` (`>= d3`).
pub fn is_non_decreasing_weights(f: &Unfolding, ty: &QuasihomogeneousType) -> bool {
    let Ok(pert) = f.perturbations() else {
        return false;
    };
    if !pert[0].is_zero() {
        return false;
    }
    let ok = |h: &Polynomial, bound: u32| {
        h.terms()
            .all(|(m, _)| m.exps()[0] as u64 + ty.b as u64 * m.exps()[1] as u64 >= bound as u64)
    };
    ok(&pert[1], ty.d2) && ok(&pert[2], ty.d3)
}

/// `f_{t0}` as a germ in `[x, y]`.
pub fn specialize(f: &Unfolding, t0: &Rational) -> MapGerm {
    let src = source_ring();
    let comps = f
        .components
        .clone()
        .map(|c| c.evaluate_var(2, t0).to_ring(&src).expect("t eliminated"));
    MapGerm {
        name: format!("{}@t={}", f.name, t0),
        components: comps,
    }
}

/// Renames variables positionally: the `i`-th variable of `p` becomes the
/// `i`-th variable of `target`.
pub(crate) fn rename_positional(p: &Polynomial, target: &Arc<Ring>) -> Polynomial {
    assert_eq!(p.ring().len(), target.len());
    Polynomial::from_terms(target, p.terms().map(|(m, c)| (m.clone(), c.clone())))
}

pub(crate) fn bindings(pairs: &[(&str, Polynomial)]) -> HashMap<String, Polynomial> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, ratio};

    #[test]
    fn coranks() {
        assert_eq!(corank_at_origin(&MapGerm::parse("cc", ["x", "y^2", "x*y"]).unwrap()), 1);
        assert_eq!(corank_at_origin(&MapGerm::parse("imm", ["x", "y", "0"]).unwrap()), 0);
        assert_eq!(
            corank_at_origin(&MapGerm::parse("c2", ["x^2", "y^2", "x^3 + y^3 + x*y"]).unwrap()),
            2
        );
    }

    #[test]
    fn types() {
        let t = infer_quasihomogeneous_type(&Corank1Form::parse("y^2", "x*y^3 - x^5*y").unwrap()).unwrap();
        assert_eq!((t.b, t.d2, t.d3, t.d), (2, 4, 7, 5));
        let t = infer_quasihomogeneous_type(&Corank1Form::parse("y^2", "x*y").unwrap()).unwrap();
        assert_eq!((t.b, t.d2, t.d3, t.d), (1, 2, 2, 1));
        let t = infer_quasihomogeneous_type(&Corank1Form::parse("y^2 + x*y", "y^3").unwrap()).unwrap();
        assert_eq!((t.b, t.d2, t.d3), (1, 2, 3));
        assert!(matches!(
            infer_quasihomogeneous_type(&Corank1Form::parse("y^3", "y^4 + x*y").unwrap()),
            Err(GermError::NotQuasihomogeneous(_))
        ));
        // pure powers fit every b; the smallest is chosen
        let f = Corank1Form::parse("y^2", "y^3").unwrap();
        assert_eq!(quasihomogeneous_weights(&f), vec![1, 2]);
        assert_eq!(infer_quasihomogeneous_type(&f).unwrap().b, 1);
    }

    #[test]
    fn type_validation() {
        assert!(QuasihomogeneousType::new(3, 4, 5).is_err());
        assert_eq!(QuasihomogeneousType::new(3, 6, 9).unwrap().d, 6);
    }

    fn c5() -> MapGerm {
        MapGerm::parse("C5", ["x", "y^2", "x*y^3 - x^5*y"]).unwrap()
    }

    #[test]
    fn unfolding_validation() {
        let base = c5();
        let triv = Unfolding::trivial("C5-triv", &base);
        assert!(triv.is_prenormal());
        assert_eq!(
            Unfolding::parse("bad", &base, ["x + t", "y^2", "x*y^3 - x^5*y"]).unwrap_err(),
            GermError::OriginNotPreserved { component: 0 }
        );
        assert_eq!(
            Unfolding::parse("bad", &base, ["x", "y^2 + x", "x*y^3 - x^5*y"]).unwrap_err(),
            GermError::BaseMismatch { component: 1 }
        );
        assert_eq!(
            Unfolding::parse("bad", &base, ["x + t*y", "y^2", "x*y^3 - x^5*y"]).unwrap_err(),
            GermError::FirstComponentNotX
        );
        let c2 = MapGerm::parse("c2", ["x^2", "y^2", "x^3 + y^3 + x*y"]).unwrap();
        let fam = Unfolding::parse("c2t", &c2, ["x^2", "y^2", "x^3 + y^3 + x*y + t*x^3*y + t*x*y^3"]).unwrap();
        assert!(!fam.is_prenormal());
        let s = specialize(&fam, &ratio(1, 1));
        let r = source_ring();
        assert_eq!(
            s.components()[2],
            parse_polynomial("x^3 + y^3 + x*y + x^3*y + x*y^3", &r).unwrap()
        );
    }

    #[test]
    fn non_decreasing_weights() {
        let base = c5();
        let ty = infer_quasihomogeneous_type(&base.corank1_form().unwrap()).unwrap();
        let f = Unfolding::parse("y7", &base, ["x", "y^2", "x*y^3 - x^5*y + t*y^7"]).unwrap();
        assert!(is_non_decreasing_weights(&f, &ty));
        let f = Unfolding::parse("y", &base, ["x", "y^2", "x*y^3 - x^5*y + t*y"]).unwrap();
        assert!(!is_non_decreasing_weights(&f, &ty));
        assert!(is_non_decreasing_weights(&Unfolding::trivial("t", &base), &ty));
        assert_eq!(specialize(&Unfolding::trivial("t", &base), &ratio(1, 2)).components(), base.components());
    }
}
