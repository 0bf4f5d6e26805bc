//! Lengths, Hilbert-Samuel multiplicity and Cohen-Macaulay tests for
//! 1-parameter unfoldings, μ-constancy sampling, Whitney and
//! equimultiplicity verdicts, and the hypothesis checkers built on them.

use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{rat, ratio, resultant, AlgebraError, Polynomial, Rational, Ring};
use crate::double_point::{
    compute_lambda, extract_branches, image_branch_data, milnor_number, normalize_lambda, DoublePointError,
};
use crate::germ::{
    corank_at_origin, infer_quasihomogeneous_type, is_non_decreasing_weights, specialize, GermError, MapGerm,
    QuasihomogeneousType, Unfolding,
};
use crate::ideal::{ideal_equal, ideal_quotient, local_length, saturation, Ideal, IdealError};

pub const LENGTH_CAP: u32 = 64;
pub const DEFAULT_DEPTH: usize = 6;
pub const STABILIZATION_WINDOW: usize = 3;

/// Samples for the direct multiplicity cross-check.
pub fn default_equimultiplicity_samples() -> Vec<Rational> {
    vec![rat(1), rat(-1), ratio(1, 2)]
}

/// Samples for μ-constancy.
pub fn default_mu_samples() -> Vec<Rational> {
    vec![rat(1), rat(-1), ratio(1, 2), rat(2)]
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquisingularityError {
    #[error("the fiber over the t-axis is larger than the t-axis")]
    FiberConditionFailed,
    #[error("length differences did not stabilise: lengths {lengths:?}")]
    NotStabilized { lengths: Vec<usize> },
    #[error("Cohen-Macaulay routes disagree: length route {length_route}, quotient route {quotient_route}")]
    CertificateMismatch { length_route: bool, quotient_route: bool },
    #[error("sample t = {t0}: fiber length {length}, expected {expected}")]
    SampleDisagreement { t0: String, length: usize, expected: usize },
    #[error("specialisation at t = {t0} is not finitely determined")]
    SpecializationNotFD { t0: String },
    #[error("the base germ has corank 2")]
    CorankTooHigh,
    #[error("cross-validation failed: {0}")]
    CrossValidationFailure(String),
    #[error(transparent)]
    DoublePoint(#[from] DoublePointError),
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl EquisingularityError {
    pub fn code(&self) -> &'static str {
        match self {
            EquisingularityError::FiberConditionFailed => "FiberConditionFailed",
            EquisingularityError::NotStabilized { .. } => "NotStabilized",
            EquisingularityError::CertificateMismatch { .. } => "CertificateMismatch",
            EquisingularityError::SampleDisagreement { .. } => "SampleDisagreement",
            EquisingularityError::SpecializationNotFD { .. } => "SpecializationNotFD",
            EquisingularityError::CorankTooHigh => "CorankTooHigh",
            EquisingularityError::CrossValidationFailure(_) => "CrossValidationFailure",
            EquisingularityError::DoublePoint(e) => e.code(),
            EquisingularityError::Germ(e) => e.code(),
            EquisingularityError::Ideal(e) => e.code(),
            EquisingularityError::Algebra(e) => e.code(),
        }
    }
}

type Result<T> = std::result::Result<T, EquisingularityError>;

/// `<F*(X), F*(Y), F*(Z)>` in `[x, y, t]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PullbackIdeal {
    pub ideal: Ideal,
}

pub fn pullback_ideal(f: &Unfolding) -> Result<PullbackIdeal> {
    let zero = Rational::zero();
    for (i, c) in f.components().iter().enumerate() {
        if !c.evaluate_var(0, &zero).evaluate_var(1, &zero).is_zero() {
            return Err(GermError::OriginNotPreserved { component: i }.into());
        }
    }
    Ok(PullbackIdeal {
        ideal: Ideal::new(f.ring(), f.components().to_vec())?,
    })
}

fn t_var(f: &Unfolding) -> Polynomial {
    Polynomial::var_index(f.ring(), 2)
}

fn vanishes_at_origin(i: &Ideal) -> bool {
    i.generators().iter().all(|g| g.constant_term().is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberCondition {
    pub holds: bool,
    pub reason: Option<String>,
}

/// Near the origin, `F^{-1}(0 x T)` is the `t`-axis: the fiber over `t = 0`
/// has finite length, and no component of `V(pullback)` through the origin
/// leaves `x = 0` or `y = 0`.
pub fn fiber_condition(f: &Unfolding) -> Result<FiberCondition> {
    let i = pullback_ideal(f)?.ideal;
    match local_length(&i.with(&[t_var(f)])?, LENGTH_CAP) {
        Ok(_) => {}
        Err(IdealError::NotFiniteLocally { .. }) => {
            return Ok(FiberCondition {
                holds: false,
                reason: Some("the fiber of f_0 over the origin is not finite".into()),
            })
        }
        Err(e) => return Err(e.into()),
    }
    for (v, name) in [(0, "x"), (1, "y")] {
        let sat = saturation(&i, &Polynomial::var_index(f.ring(), v))?;
        if vanishes_at_origin(&sat) {
            return Ok(FiberCondition {
                holds: false,
                reason: Some(format!(
                    "a component of the zero set through the origin is not contained in {name} = 0"
                )),
            });
        }
    }
    Ok(FiberCondition { holds: true, reason: None })
}

fn require_fiber_condition(f: &Unfolding) -> Result<()> {
    if fiber_condition(f)?.holds {
        Ok(())
    } else {
        Err(EquisingularityError::FiberConditionFailed)
    }
}

fn finite_length(i: &Ideal) -> Result<usize> {
    match local_length(i, LENGTH_CAP) {
        Ok(n) => Ok(n),
        Err(IdealError::NotFiniteLocally { .. }) => Err(EquisingularityError::FiberConditionFailed),
        Err(e) => Err(e.into()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LengthValue {
    pub value: usize,
    /// The base has corank 2, so the value is a raw length and not the
    /// multiplicity of the image.
    pub corank_caveat: bool,
}

/// Local length of `O_3 / (pullback + <t>)`.
pub fn multiplicity_via_length(f: &Unfolding) -> Result<LengthValue> {
    let i = pullback_ideal(f)?.ideal;
    let value = finite_length(&i.with(&[t_var(f)])?)?;
    Ok(LengthValue {
        value,
        corank_caveat: corank_at_origin(f.base()) >= 2,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthSequence {
    /// `l_s` for `s = 1..=S`.
    pub lengths: Vec<usize>,
    /// `l_s - l_{s-1}` with `l_0 = 0`.
    pub differences: Vec<i64>,
    pub e: usize,
}

/// `l_s = length O_3 / (pullback + <t^s>)` and `e(<t>)`, the common value of
/// the last [`STABILIZATION_WINDOW`] differences.
pub fn hilbert_samuel_t(f: &Unfolding, depth: usize) -> Result<LengthSequence> {
    let i = pullback_ideal(f)?.ideal;
    let t = t_var(f);
    let mut lengths = Vec::new();
    for s in 1..=depth {
        lengths.push(finite_length(&i.with(&[t.pow(s as u32)])?)?);
    }
    let differences: Vec<i64> = lengths
        .iter()
        .scan(0i64, |prev, &l| {
            let d = l as i64 - *prev;
            *prev = l as i64;
            Some(d)
        })
        .collect();
    let tail = &differences[differences.len().saturating_sub(STABILIZATION_WINDOW)..];
    if depth < STABILIZATION_WINDOW || tail.iter().any(|d| *d != tail[0]) || tail[0] < 0 {
        return Err(EquisingularityError::NotStabilized { lengths });
    }
    let e = tail[0] as usize;
    Ok(LengthSequence { lengths, differences, e })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmCertificate {
    pub l1: usize,
    pub e: usize,
    /// `l_1 = e`.
    pub length_route: bool,
    /// `(I : t) = I` as ideals of the polynomial ring.
    pub quotient_route_global: bool,
    /// `(I : t) = I` after localising at the origin.
    pub quotient_route: bool,
    pub cohen_macaulay: bool,
}

/// `(I : t) = I` locally at the origin: every `g` in `I : t` has `I : g`
/// not contained in the maximal ideal.
fn t_regular_locally(i: &Ideal, t: &Polynomial) -> Result<(bool, bool)> {
    let q = ideal_quotient(i, t)?;
    if ideal_equal(&q, i)? {
        return Ok((true, true));
    }
    for g in q.generators() {
        if i.contains(g)? {
            continue;
        }
        if vanishes_at_origin(&ideal_quotient(i, g)?) {
            return Ok((false, false));
        }
    }
    Ok((false, true))
}

pub fn cohen_macaulay_test(f: &Unfolding) -> Result<CmCertificate> {
    cohen_macaulay_test_with(f, DEFAULT_DEPTH)
}

pub fn cohen_macaulay_test_with(f: &Unfolding, depth: usize) -> Result<CmCertificate> {
    require_fiber_condition(f)?;
    let seq = hilbert_samuel_t(f, depth)?;
    let i = pullback_ideal(f)?.ideal;
    let (global, local) = t_regular_locally(&i, &t_var(f))?;
    let length_route = seq.lengths[0] == seq.e;
    if length_route != local {
        return Err(EquisingularityError::CertificateMismatch {
            length_route,
            quotient_route: local,
        });
    }
    Ok(CmCertificate {
        l1: seq.lengths[0],
        e: seq.e,
        length_route,
        quotient_route_global: global,
        quotient_route: local,
        cohen_macaulay: length_route,
    })
}

/// Multiplicity of the image surface `f(C^2)` at the origin: the length of
/// `O_2 / <l1∘f, l2∘f>` for generic linear forms `l1, l2`, taken as the
/// minimum over a few seeded random choices.
pub fn image_multiplicity(f: &MapGerm) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let ring = f.ring().clone();
    let mut best: Option<usize> = None;
    for _ in 0..4 {
        let mut forms = Vec::new();
        for _ in 0..2 {
            let mut g = Polynomial::zero(&ring);
            for c in f.components() {
                let a: i64 = rng.gen_range(-20..=20);
                g = &g + &c.scale(&rat(a));
            }
            forms.push(g);
        }
        let len = finite_length(&Ideal::new(&ring, forms)?)?;
        best = Some(best.map_or(len, |b| b.min(len)));
    }
    Ok(best.expect("at least one draw"))
}

/// Local length of `O_2 / <f_t0>`.
pub fn fiber_length(g: &MapGerm) -> Result<usize> {
    finite_length(&Ideal::new(g.ring(), g.components().to_vec())?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquimultiplicityVerdict {
    pub equimultiple: bool,
    pub cm: CmCertificate,
    pub sample_lengths: Vec<(Rational, usize)>,
}

pub fn equimultiplicity_verdict(f: &Unfolding, samples: &[Rational]) -> Result<EquimultiplicityVerdict> {
    if corank_at_origin(f.base()) >= 2 {
        return Err(EquisingularityError::CorankTooHigh);
    }
    let cm = cohen_macaulay_test(f)?;
    let mut sample_lengths = Vec::new();
    for t0 in samples {
        let len = fiber_length(&specialize(f, t0))?;
        if cm.cohen_macaulay && len != cm.l1 {
            return Err(EquisingularityError::SampleDisagreement {
                t0: t0.to_string(),
                length: len,
                expected: cm.l1,
            });
        }
        sample_lengths.push((t0.clone(), len));
    }
    Ok(EquimultiplicityVerdict {
        equimultiple: cm.cohen_macaulay,
        cm,
        sample_lengths,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MuCertificate {
    /// `λ` of the whole family does not involve `t`.
    LambdaIndependentOfT,
    /// The unfolding has non-decreasing weights over a quasihomogeneous base.
    NonDecreasingWeights,
    /// Equal values at the samples only.
    SamplingEvidence,
    /// The value at this sample differs from the value at `t = 0`.
    Witness(Rational),
}

impl fmt::Display for MuCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MuCertificate::LambdaIndependentOfT => write!(f, "structural: λ of the family is independent of t"),
            MuCertificate::NonDecreasingWeights => write!(f, "structural: non-decreasing weights"),
            MuCertificate::SamplingEvidence => write!(f, "evidence: equal values at the samples"),
            MuCertificate::Witness(t) => write!(f, "witness: value changes at t = {t}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuConstancy {
    /// `μ(D(f_t0))` at the origin for `t0 = 0` and each sample; `None` when
    /// `D(f_t0)` misses the origin.
    pub values: Vec<(Rational, Option<usize>)>,
    pub constant: bool,
    pub certificate: MuCertificate,
}

/// `λ` of the family, in `[x, y, t]`.
pub fn family_lambda(f: &Unfolding) -> Result<Polynomial> {
    let fam = f.ring().clone();
    let big = Ring::new(["x", "y", "y'", "t"]);
    let yp = Polynomial::var_index(&big, 2);
    let den = &Polynomial::var_index(&big, 1) - &yp;
    let dd = |h: &Polynomial| -> Result<Polynomial> {
        let lifted = h.to_ring(&big)?;
        let mut b = std::collections::HashMap::new();
        b.insert("y".to_string(), yp.clone());
        let swapped = h.substitute(&b, &big)?;
        Ok((&lifted - &swapped).divide_exact(&den)?)
    };
    let c = f.components();
    let r = match resultant(&dd(&c[1])?, &dd(&c[2])?, "y'") {
        Ok(r) => r,
        Err(AlgebraError::BothConstantInVar { .. }) => Polynomial::one(&big),
        Err(e) => return Err(e.into()),
    };
    Ok(normalize_lambda(&r.to_ring(&fam)?))
}

fn require_corank1(f: &Unfolding) -> Result<()> {
    if corank_at_origin(f.base()) >= 2 || !f.is_prenormal() {
        Err(EquisingularityError::CorankTooHigh)
    } else {
        Ok(())
    }
}

fn mu_at(f: &Unfolding, t0: &Rational) -> Result<Option<usize>> {
    let g = specialize(f, t0).corank1_form()?;
    let c = match compute_lambda(&g) {
        Ok(c) => c,
        Err(DoublePointError::NotFinite) => {
            return Err(EquisingularityError::SpecializationNotFD { t0: t0.to_string() })
        }
        Err(e) => return Err(e.into()),
    };
    if !c.reduced {
        return Err(EquisingularityError::SpecializationNotFD { t0: t0.to_string() });
    }
    match milnor_number(&c.lambda) {
        Ok(m) => Ok(Some(m)),
        Err(DoublePointError::NotThroughOrigin) => Ok(None),
        Err(DoublePointError::NotReduced) => Err(EquisingularityError::SpecializationNotFD { t0: t0.to_string() }),
        Err(e) => Err(e.into()),
    }
}

pub fn mu_constancy(f: &Unfolding, samples: &[Rational]) -> Result<MuConstancy> {
    require_corank1(f)?;
    let mut values = vec![(Rational::zero(), mu_at(f, &Rational::zero())?)];
    for t0 in samples {
        values.push((t0.clone(), mu_at(f, t0)?));
    }
    let base_value = values[0].1;
    if let Some((t0, _)) = values.iter().find(|(_, v)| *v != base_value || v.is_none()) {
        return Ok(MuConstancy {
            certificate: MuCertificate::Witness(t0.clone()),
            values,
            constant: false,
        });
    }
    let lambda = family_lambda(f)?;
    let certificate = if !lambda.involves(2) {
        MuCertificate::LambdaIndependentOfT
    } else if base_type(f).is_some_and(|t| is_non_decreasing_weights(f, &t)) {
        MuCertificate::NonDecreasingWeights
    } else {
        MuCertificate::SamplingEvidence
    };
    Ok(MuConstancy {
        values,
        constant: true,
        certificate,
    })
}

fn base_type(f: &Unfolding) -> Option<QuasihomogeneousType> {
    f.base().corank1_form().ok().and_then(|g| infer_quasihomogeneous_type(&g).ok())
}

/// `m(f(D(f)))` when `f` is quasihomogeneous with weights `(1, b)`.
fn image_double_multiplicity(g: &MapGerm, b: Option<u32>) -> Option<u32> {
    let c1 = g.corank1_form().ok()?;
    let t = infer_quasihomogeneous_type(&c1).ok()?;
    if b.is_some_and(|b| b != t.b) {
        return None;
    }
    let curve = compute_lambda(&c1).ok()?;
    let s = extract_branches(&curve).ok()?;
    Some(image_branch_data(&c1, &s).ok()?.multiplicity)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhitneyStatus {
    Equisingular,
    NotEquisingular,
    Undetermined,
}

impl fmt::Display for WhitneyStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WhitneyStatus::Equisingular => "true",
            WhitneyStatus::NotEquisingular => "false",
            WhitneyStatus::Undetermined => "undetermined",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhitneyVerdict {
    pub status: WhitneyStatus,
    pub reason: String,
    pub mu: MuConstancy,
    /// `m(f_t0(D(f_t0)))` at `t0 = 0` and the samples, when computable.
    pub m_values: Vec<(Rational, Option<u32>)>,
}

pub fn whitney_check(f: &Unfolding, samples: &[Rational]) -> Result<WhitneyVerdict> {
    require_corank1(f)?;
    let mu = mu_constancy(f, samples)?;
    let b = base_type(f).map(|t| t.b);
    let m_values: Vec<(Rational, Option<u32>)> = mu
        .values
        .iter()
        .map(|(t0, _)| (t0.clone(), image_double_multiplicity(&specialize(f, t0), b)))
        .collect();
    if !mu.constant {
        return Ok(WhitneyVerdict {
            status: WhitneyStatus::NotEquisingular,
            reason: format!("μ(D(f_t)) is not constant ({})", mu.certificate),
            mu,
            m_values,
        });
    }
    if let Some(orders) = smooth_image_certificate(f.base())? {
        if orders.iter().all(|&o| o == 1) && b.is_some_and(|b| b >= 2) {
            return Ok(WhitneyVerdict {
                status: WhitneyStatus::Equisingular,
                reason: "quasihomogeneous base with b >= 2, μ constant and every image branch of f(D(f)) smooth"
                    .into(),
                mu,
                m_values,
            });
        }
    }
    let (status, reason) = if m_values.iter().all(|(_, m)| m.is_some()) {
        if m_values.iter().all(|(_, m)| *m == m_values[0].1) {
            (WhitneyStatus::Equisingular, "μ and m(f_t(D(f_t))) equal at the samples".to_string())
        } else {
            (WhitneyStatus::NotEquisingular, "m(f_t(D(f_t))) changes at a sample".to_string())
        }
    } else {
        (
            WhitneyStatus::Undetermined,
            "m(f_t(D(f_t))) is only computed for specialisations quasihomogeneous with the base weights".to_string(),
        )
    };
    Ok(WhitneyVerdict {
        status,
        reason,
        mu,
        m_values,
    })
}

/// Orders of the image branches of `f(D(f))`, when `f` is quasihomogeneous
/// of corank 1 with a reduced double point curve.
pub fn smooth_image_certificate(f: &MapGerm) -> Result<Option<Vec<u32>>> {
    let Ok(c1) = f.corank1_form() else {
        return Ok(None);
    };
    let curve = compute_lambda(&c1)?;
    if curve.germ_type.is_none() || !curve.reduced {
        return Ok(None);
    }
    let s = extract_branches(&curve)?;
    let data = image_branch_data(&c1, &s)?;
    Ok(Some(data.branches.iter().map(|b| b.order).collect()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub hypotheses: Vec<Hypothesis>,
    pub confirmed: bool,
    pub conclusions: Vec<String>,
    pub certificates: Vec<String>,
}

impl TheoremReport {
    pub fn failed_hypotheses(&self) -> Vec<&str> {
        self.hypotheses.iter().filter(|h| !h.holds).map(|h| h.name.as_str()).collect()
    }
}

struct Checks(Vec<Hypothesis>);

impl Checks {
    fn push(&mut self, name: &str, holds: bool, detail: impl Into<String>) -> bool {
        self.0.push(Hypothesis {
            name: name.into(),
            holds,
            detail: detail.into(),
        });
        holds
    }

    fn failed(self) -> TheoremReport {
        TheoremReport {
            hypotheses: self.0,
            confirmed: false,
            conclusions: Vec::new(),
            certificates: Vec::new(),
        }
    }
}

/// Shared hypotheses: corank 1, prenormal, quasihomogeneous, finitely
/// determined. Returns the base type when all hold.
fn common_hypotheses(f: &Unfolding, checks: &mut Checks) -> Result<Option<QuasihomogeneousType>> {
    let corank = corank_at_origin(f.base());
    if !checks.push("corank 1", corank <= 1, format!("corank {corank}")) {
        return Ok(None);
    }
    if !checks.push("prenormal form", f.is_prenormal(), "first component x") {
        return Ok(None);
    }
    let c1 = f.base().corank1_form()?;
    let ty = match infer_quasihomogeneous_type(&c1) {
        Ok(t) => t,
        Err(e) => {
            checks.push("quasihomogeneous base", false, e.to_string());
            return Ok(None);
        }
    };
    checks.push("quasihomogeneous base", true, ty.to_string());
    let curve = match compute_lambda(&c1) {
        Ok(c) => c,
        Err(DoublePointError::NotFinite) => {
            checks.push("finitely determined", false, "not finite");
            return Ok(None);
        }
        Err(e) => return Err(e.into()),
    };
    if !checks.push("finitely determined", curve.reduced, format!("λ = {}", curve.lambda)) {
        return Ok(None);
    }
    Ok(Some(ty))
}

fn mu_hypothesis(f: &Unfolding, samples: &[Rational], checks: &mut Checks) -> Result<bool> {
    match mu_constancy(f, samples) {
        Ok(mu) => Ok(checks.push(
            "topologically trivial",
            mu.constant,
            format!("μ(D(f_t)) constancy, {}", mu.certificate),
        )),
        Err(EquisingularityError::SpecializationNotFD { t0 }) => Ok(checks.push(
            "topologically trivial",
            false,
            format!("f_t not finitely determined at t = {t0}"),
        )),
        Err(e) => Err(e),
    }
}

/// Quasihomogeneous corank-1 base with `b >= 2`, finitely determined, and a
/// topologically trivial unfolding: Whitney equisingular and equimultiple.
pub fn theorem_a_checker(f: &Unfolding, samples: &[Rational]) -> Result<TheoremReport> {
    let mut checks = Checks(Vec::new());
    let Some(ty) = common_hypotheses(f, &mut checks)? else {
        return Ok(checks.failed());
    };
    if !checks.push("b >= 2", ty.b >= 2, format!("b = {} (b = 1 is the homogeneous case)", ty.b)) {
        return Ok(checks.failed());
    }
    if !mu_hypothesis(f, samples, &mut checks)? {
        return Ok(checks.failed());
    }
    let orders = smooth_image_certificate(f.base())?
        .ok_or_else(|| EquisingularityError::CrossValidationFailure("image branches unavailable".into()))?;
    if orders.iter().any(|&o| o != 1) {
        return Err(EquisingularityError::CrossValidationFailure(format!(
            "image branch orders {orders:?} are not all 1"
        )));
    }
    let mut certificates = vec![format!("all {} image branches of f(D(f)) have order 1", orders.len())];
    if fiber_condition(f)?.holds {
        let eq = equimultiplicity_verdict(f, &default_equimultiplicity_samples())?;
        if !eq.equimultiple {
            return Err(EquisingularityError::CrossValidationFailure(
                "equimultiple by hypothesis but the Cohen-Macaulay test is false".into(),
            ));
        }
        certificates.push(format!("Cohen-Macaulay: l_1 = e = {}", eq.cm.e));
    }
    Ok(TheoremReport {
        hypotheses: checks.0,
        confirmed: true,
        conclusions: vec!["Whitney equisingular".into(), "equimultiple".into()],
        certificates,
    })
}

/// Unfolding of non-decreasing weights of a quasihomogeneous finitely
/// determined corank-1 germ: equimultiple, cross-checked by the
/// Cohen-Macaulay test.
pub fn theorem_b_checker(f: &Unfolding, samples: &[Rational]) -> Result<TheoremReport> {
    let mut checks = Checks(Vec::new());
    let Some(ty) = common_hypotheses(f, &mut checks)? else {
        return Ok(checks.failed());
    };
    if !checks.push("non-decreasing weights", is_non_decreasing_weights(f, &ty), format!("weights (1, {})", ty.b)) {
        return Ok(checks.failed());
    }
    if !mu_hypothesis(f, samples, &mut checks)? {
        return Ok(checks.failed());
    }
    let cm = match cohen_macaulay_test(f) {
        Ok(cm) => cm,
        Err(e @ EquisingularityError::FiberConditionFailed) => {
            return Err(EquisingularityError::CrossValidationFailure(e.to_string()))
        }
        Err(e) => return Err(e),
    };
    if !cm.cohen_macaulay {
        return Err(EquisingularityError::CrossValidationFailure(
            "equimultiple by hypothesis but the Cohen-Macaulay test is false".into(),
        ));
    }
    let eq = equimultiplicity_verdict(f, &default_equimultiplicity_samples())?;
    let lens: Vec<String> = eq.sample_lengths.iter().map(|(t, l)| format!("t={t}: {l}")).collect();
    Ok(TheoremReport {
        hypotheses: checks.0,
        confirmed: true,
        conclusions: vec!["equimultiple".into()],
        certificates: vec![
            format!("Cohen-Macaulay by both routes: l_1 = e = {}", cm.e),
            format!("fiber lengths {}", lens.join(", ")),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::bundled_catalog;

    #[test]
    fn corank2_remark() {
        let cat = bundled_catalog();
        let f = cat.unfolding("corank2-remark").unwrap();
        assert!(fiber_condition(f).unwrap().holds);
        let raw = multiplicity_via_length(f).unwrap();
        assert_eq!(raw.value, 3);
        assert!(raw.corank_caveat);
        assert_eq!(hilbert_samuel_t(f, DEFAULT_DEPTH).unwrap().e, 3);
        let cm = cohen_macaulay_test(f).unwrap();
        assert!(cm.cohen_macaulay && cm.quotient_route);
        assert_eq!(image_multiplicity(f.base()).unwrap(), 4);
    }

    #[test]
    fn c5_trivial() {
        let cat = bundled_catalog();
        let f = cat.unfolding("C5-triv").unwrap();
        let seq = hilbert_samuel_t(f, DEFAULT_DEPTH).unwrap();
        assert_eq!(seq.lengths, vec![2, 4, 6, 8, 10, 12]);
        assert_eq!(seq.e, 2);
        let mu = mu_constancy(f, &default_mu_samples()).unwrap();
        assert!(mu.constant);
        assert_eq!(mu.certificate, MuCertificate::LambdaIndependentOfT);
        assert_eq!(whitney_check(f, &default_mu_samples()).unwrap().status, WhitneyStatus::Equisingular);
        assert!(theorem_a_checker(f, &default_mu_samples()).unwrap().confirmed);
        assert!(theorem_b_checker(f, &default_mu_samples()).unwrap().confirmed);
    }

    #[test]
    fn non_cm_and_fiber() {
        let cat = bundled_catalog();
        let f = cat.unfolding("crosscap-nonCM").unwrap();
        let cm = cohen_macaulay_test(f).unwrap();
        assert_eq!((cm.l1, cm.e, cm.cohen_macaulay), (2, 1, false));
        let g = cat.unfolding("crosscap-split").unwrap();
        assert!(!fiber_condition(g).unwrap().holds);
    }

    #[test]
    fn theorem_b_on_perturbations() {
        let cat = bundled_catalog();
        let f = cat.unfolding("C5-y7").unwrap();
        let r = theorem_b_checker(f, &default_mu_samples()).unwrap();
        assert!(r.confirmed, "{r:?}");
        let low = cat.unfolding("C5-low").unwrap();
        let r = theorem_b_checker(low, &default_mu_samples()).unwrap();
        assert_eq!(r.failed_hypotheses(), vec!["non-decreasing weights"]);
        let crosscap = cat.unfolding("crosscap-triv").unwrap();
        let r = theorem_a_checker(crosscap, &default_mu_samples()).unwrap();
        assert_eq!(r.failed_hypotheses(), vec!["b >= 2"]);
    }
}
