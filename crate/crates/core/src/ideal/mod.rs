//! Polynomial ideals over the rationals: Gröbner bases, normal forms,
//! elimination, quotients and lengths of zero-dimensional quotients.

mod groebner;
pub mod linalg;

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::algebra::{AlgebraError, Monomial, MonomialOrder, Polynomial, Rational, Ring};

pub use groebner::GroebnerConfig;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("the quotient ring is not finite dimensional")]
    NotZeroDimensional,
    #[error("ideal quotient by the zero polynomial")]
    ZeroDivisorArgument,
    #[error("resource limit exceeded: {0}")]
    ResourceExceeded(String),
    #[error("the zero polynomial is not a curve")]
    ZeroPolynomial,
    #[error("a unit does not define a curve")]
    UnitPolynomial,
    #[error("local length did not stabilise below truncation order {cap}")]
    NotFiniteLocally { cap: u32 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl IdealError {
    pub fn code(&self) -> &'static str {
        match self {
            IdealError::NotZeroDimensional => "NotZeroDimensional",
            IdealError::ZeroDivisorArgument => "ZeroDivisorArgument",
            IdealError::ResourceExceeded(_) => "ResourceExceeded",
            IdealError::ZeroPolynomial => "ZeroPolynomial",
            IdealError::UnitPolynomial => "UnitPolynomial",
            IdealError::NotFiniteLocally { .. } => "NotFiniteLocally",
            IdealError::Algebra(e) => e.code(),
        }
    }
}

/// A finitely generated ideal. Zero generators are dropped; an empty
/// generator list is the zero ideal. The grevlex basis is computed at most
/// once and shared by clones made afterwards.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
    grevlex: OnceLock<GroebnerBasis>,
}

impl PartialEq for Ideal {
    /// Equality of generator lists; use [`ideal_equal`] for equality of ideals.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.generators == other.generators
    }
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, generators: Vec<Polynomial>) -> Result<Self, IdealError> {
        for g in &generators {
            if g.ring() != ring {
                return Err(AlgebraError::RingMismatch {
                    left: g.ring().to_string(),
                    right: ring.to_string(),
                }
                .into());
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            grevlex: OnceLock::new(),
        })
    }

    /// Parses each string as a generator.
    pub fn parse(ring: &Arc<Ring>, generators: &[&str]) -> Result<Self, IdealError> {
        let gens = generators
            .iter()
            .map(|s| crate::algebra::parse_polynomial(s, ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(ring, gens)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// The ideal generated by `self` and `extra`.
    pub fn with(&self, extra: &[Polynomial]) -> Result<Ideal, IdealError> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.with(&other.generators)
    }

    /// Reduced grevlex basis, cached.
    pub fn basis(&self) -> Result<&GroebnerBasis, IdealError> {
        if let Some(b) = self.grevlex.get() {
            return Ok(b);
        }
        let b = groebner(self, &MonomialOrder::GrevLex)?;
        let _ = self.grevlex.set(b);
        Ok(self.grevlex.get().expect("just filled"))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool, IdealError> {
        membership(p, self)
    }

    /// True iff every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool, IdealError> {
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool, IdealError> {
        Ok(self.basis()?.is_unit())
    }

    /// Moves every generator into `target` by variable name.
    pub fn to_ring(&self, target: &Arc<Ring>) -> Result<Ideal, IdealError> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.to_ring(target))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(target, gens)
    }
}

/// A reduced Gröbner basis: monic, sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    ring: Arc<Ring>,
    basis: Vec<Polynomial>,
    source: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn polynomials(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn source(&self) -> &[Polynomial] {
        &self.source
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_term(&self.order).expect("nonzero").0.clone())
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    /// Every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        let leads = self.leading_monomials();
        if leads.iter().any(Monomial::is_one) {
            return true;
        }
        (0..self.ring.len()).all(|v| leads.iter().any(|m| matches!(m.pure_power(), Some((i, _)) if i == v)))
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial, IdealError> {
        if p.ring() != &self.ring {
            return Err(AlgebraError::RingMismatch {
                left: p.ring().to_string(),
                right: self.ring.to_string(),
            }
            .into());
        }
        Ok(groebner::normal_form_rational(p, &self.basis, &self.order))
    }

    /// Monomials outside the leading-term ideal, when there are finitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        if !self.is_zero_dimensional() {
            return None;
        }
        let leads = self.leading_monomials();
        let n = self.ring.len();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        collect_standard(&leads, &mut exps, 0, &mut out);
        out.sort_by(|a, b| self.order.cmp(a.exps(), b.exps()));
        Some(out)
    }
}

fn collect_standard(leads: &[Monomial], exps: &mut Vec<u32>, level: usize, out: &mut Vec<Monomial>) {
    if level == exps.len() {
        out.push(Monomial::new(exps.clone()));
        return;
    }
    loop {
        let m = Monomial::new(exps.clone());
        if leads.iter().any(|l| l.divides(&m)) {
            break;
        }
        collect_standard(leads, exps, level + 1, out);
        exps[level] += 1;
    }
    exps[level] = 0;
}

/// Standard monomials of a zero-dimensional ideal and their count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    pub standard_monomials: Vec<Monomial>,
    pub dimension: usize,
}

pub fn groebner(ideal: &Ideal, order: &MonomialOrder) -> Result<GroebnerBasis, IdealError> {
    groebner_with(ideal, order, &GroebnerConfig::default())
}

pub fn groebner_with(
    ideal: &Ideal,
    order: &MonomialOrder,
    config: &GroebnerConfig,
) -> Result<GroebnerBasis, IdealError> {
    order.check_arity(ideal.ring.len())?;
    let basis = groebner::buchberger(&ideal.generators, &ideal.ring, order, config)?;
    Ok(GroebnerBasis {
        order: order.clone(),
        ring: ideal.ring.clone(),
        basis,
        source: ideal.generators.clone(),
    })
}

pub fn normal_form(p: &Polynomial, g: &GroebnerBasis) -> Result<Polynomial, IdealError> {
    g.normal_form(p)
}

pub fn membership(p: &Polynomial, ideal: &Ideal) -> Result<bool, IdealError> {
    Ok(ideal.basis()?.normal_form(p)?.is_zero())
}

/// `I ∩ k[remaining variables]`, returned in the ring without `drop`.
pub fn elimination_ideal(ideal: &Ideal, drop: &[&str]) -> Result<Ideal, IdealError> {
    for v in drop {
        ideal.ring.require(v)?;
    }
    if drop.is_empty() {
        return Ok(ideal.clone());
    }
    let kept = ideal.ring.without(drop);
    let perm = Ring::new(drop.iter().map(|s| s.to_string()).chain(kept.vars().iter().cloned()));
    let moved = ideal.to_ring(&perm)?;
    let gb = groebner(&moved, &MonomialOrder::elimination(drop.len()))?;
    let gens = gb
        .basis
        .iter()
        .filter(|g| (0..drop.len()).all(|i| !g.involves(i)))
        .map(|g| g.to_ring(&kept))
        .collect::<Result<Vec<_>, _>>()?;
    Ideal::new(&kept, gens)
}

fn with_fresh_front(ideal: &Ideal) -> (Arc<Ring>, String) {
    let big = ideal.ring.with_front("w");
    let w = big.vars()[0].clone();
    (big, w)
}

pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal, IdealError> {
    if a.ring != b.ring {
        return Err(AlgebraError::RingMismatch {
            left: a.ring.to_string(),
            right: b.ring.to_string(),
        }
        .into());
    }
    let (big, w) = with_fresh_front(a);
    let wp = Polynomial::var(&big, &w)?;
    let one_minus_w = &Polynomial::one(&big) - &wp;
    let mut gens = Vec::new();
    for g in &a.generators {
        gens.push(&wp * &g.to_ring(&big)?);
    }
    for g in &b.generators {
        gens.push(&one_minus_w * &g.to_ring(&big)?);
    }
    let joined = Ideal::new(&big, gens)?;
    let out = elimination_ideal(&joined, &[&w])?;
    out.to_ring(&a.ring)
}

/// `(I : g) = { h : h*g ∈ I }`.
pub fn ideal_quotient(ideal: &Ideal, g: &Polynomial) -> Result<Ideal, IdealError> {
    if g.is_zero() {
        return Err(IdealError::ZeroDivisorArgument);
    }
    let principal = Ideal::new(&ideal.ring, vec![g.clone()])?;
    let inter = intersect(ideal, &principal)?;
    let gens = inter
        .generators
        .iter()
        .map(|h| h.divide_exact(g))
        .collect::<Result<Vec<_>, _>>()?;
    Ideal::new(&ideal.ring, gens)
}

/// `(I : g^∞)`.
pub fn saturation(ideal: &Ideal, g: &Polynomial) -> Result<Ideal, IdealError> {
    if g.is_zero() {
        return Err(IdealError::ZeroDivisorArgument);
    }
    let (big, w) = with_fresh_front(ideal);
    let wp = Polynomial::var(&big, &w)?;
    let mut gens: Vec<Polynomial> = ideal
        .generators
        .iter()
        .map(|h| h.to_ring(&big))
        .collect::<Result<_, _>>()?;
    gens.push(&Polynomial::one(&big) - &(&wp * &g.to_ring(&big)?));
    let out = elimination_ideal(&Ideal::new(&big, gens)?, &[&w])?;
    out.to_ring(&ideal.ring)
}

/// `p ∈ √I`, by the Rabinowitsch trick.
pub fn radical_membership(p: &Polynomial, ideal: &Ideal) -> Result<bool, IdealError> {
    if p.ring() != &ideal.ring {
        return Err(AlgebraError::RingMismatch {
            left: p.ring().to_string(),
            right: ideal.ring.to_string(),
        }
        .into());
    }
    if p.is_zero() {
        return Ok(true);
    }
    let (big, w) = with_fresh_front(ideal);
    let wp = Polynomial::var(&big, &w)?;
    let mut gens: Vec<Polynomial> = ideal
        .generators
        .iter()
        .map(|h| h.to_ring(&big))
        .collect::<Result<_, _>>()?;
    gens.push(&Polynomial::one(&big) - &(&wp * &p.to_ring(&big)?));
    Ideal::new(&big, gens)?.is_unit()
}

/// Same zero set: every generator of each ideal is in the radical of the other.
pub fn same_variety(a: &Ideal, b: &Ideal) -> Result<bool, IdealError> {
    for g in &a.generators {
        if !radical_membership(g, b)? {
            return Ok(false);
        }
    }
    for g in &b.generators {
        if !radical_membership(g, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool, IdealError> {
    if a.ring != b.ring {
        return Err(AlgebraError::RingMismatch {
            left: a.ring.to_string(),
            right: b.ring.to_string(),
        }
        .into());
    }
    Ok(a.basis()?.basis == b.basis()?.basis)
}

pub fn quotient_dimension(ideal: &Ideal, order: &MonomialOrder) -> Result<QuotientBasis, IdealError> {
    let gb;
    let basis = if *order == MonomialOrder::GrevLex {
        ideal.basis()?
    } else {
        gb = groebner(ideal, order)?;
        &gb
    };
    let standard = basis.standard_monomials().ok_or(IdealError::NotZeroDimensional)?;
    Ok(QuotientBasis {
        dimension: standard.len(),
        standard_monomials: standard,
    })
}

/// For a zero-dimensional ideal: true iff every variable to the power
/// `dim R/I` lies in `I`, i.e. the origin is the only point of `V(I)`.
pub fn supported_only_at_origin(ideal: &Ideal) -> Result<bool, IdealError> {
    let dim = quotient_dimension(ideal, &MonomialOrder::GrevLex)?.dimension;
    for v in 0..ideal.ring.len() {
        let p = Polynomial::var_index(&ideal.ring, v).pow(dim as u32);
        if !membership(&p, ideal)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Length of the localisation of `R/I` at the origin, for zero-dimensional `I`.
pub fn local_dimension_at_origin(ideal: &Ideal) -> Result<usize, IdealError> {
    let qb = quotient_dimension(ideal, &MonomialOrder::GrevLex)?;
    if supported_only_at_origin(ideal)? {
        return Ok(qb.dimension);
    }
    let basis = ideal.basis()?;
    let dim = qb.dimension;
    let index: std::collections::HashMap<&Monomial, usize> =
        qb.standard_monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut stacked: linalg::Matrix = Vec::new();
    for v in 0..ideal.ring.len() {
        let xv = Polynomial::var_index(&ideal.ring, v);
        let mut mat = vec![vec![Rational::default(); dim]; dim];
        for (col, m) in qb.standard_monomials.iter().enumerate() {
            let image = basis.normal_form(&(&xv * &Polynomial::monomial(&ideal.ring, m.clone(), crate::algebra::rat(1))))?;
            for (t, c) in image.terms() {
                mat[index[t]][col] = c.clone();
            }
        }
        stacked.extend(linalg::mat_pow(&mat, dim));
    }
    Ok(dim - linalg::rank(stacked))
}

/// Local length at the origin of `R/I` for any ideal, via the truncations
/// `I + <v^N : v a variable>`, which stabilise exactly when the local ring
/// has finite length. Gives up past `N = cap`.
pub fn truncated_local_length(ideal: &Ideal, cap: u32) -> Result<usize, IdealError> {
    let mut prev: Option<usize> = None;
    for n in 1..=cap {
        let powers: Vec<Polynomial> = (0..ideal.ring.len())
            .map(|v| Polynomial::var_index(&ideal.ring, v).pow(n))
            .collect();
        let len = quotient_dimension(&ideal.with(&powers)?, &MonomialOrder::GrevLex)?.dimension;
        if prev == Some(len) {
            return Ok(len);
        }
        prev = Some(len);
    }
    Err(IdealError::NotFiniteLocally { cap })
}

/// Local length at the origin: exact eigenspace method when `R/I` is finite
/// dimensional, truncation otherwise.
pub fn local_length(ideal: &Ideal, cap: u32) -> Result<usize, IdealError> {
    match local_dimension_at_origin(ideal) {
        Err(IdealError::NotZeroDimensional) => truncated_local_length(ideal, cap),
        other => other,
    }
}

/// A plane curve `V(λ)` is reduced iff `<λ, ∂λ>` is zero dimensional.
pub fn is_reduced_curve(lambda: &Polynomial) -> Result<bool, IdealError> {
    if lambda.is_zero() {
        return Err(IdealError::ZeroPolynomial);
    }
    if lambda.is_constant() {
        return Err(IdealError::UnitPolynomial);
    }
    let ring = lambda.ring();
    let mut gens = vec![lambda.clone()];
    for v in 0..ring.len() {
        gens.push(lambda.derivative(v));
    }
    Ok(Ideal::new(ring, gens)?.basis()?.is_zero_dimensional())
}
