//! Double point curves of corank-1 germs `(x, p, q)`: the divided
//! differences, the curve `D(f) = V(λ)`, its branches, the identification /
//! fold classification and the image branches in the target.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::univariate::UniPoly;
use crate::algebra::{resultant, AlgebraError, Monomial, Polynomial, Rational, Ring, WeightVector};
use crate::germ::{bindings, infer_quasihomogeneous_type, source_ring, Corank1Form, GermError, QuasihomogeneousType};
use crate::ideal::{elimination_ideal, local_length, same_variety, Ideal, IdealError};

/// Truncation order used for local lengths of ideals that are not zero
/// dimensional globally.
pub const LOCAL_LENGTH_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DoublePointError {
    #[error("the resultant vanishes identically: f is not finite or not generically 1-to-1")]
    NotFinite,
    #[error("the double point curve is not reduced")]
    NotReduced,
    #[error("the double point curve does not pass through the origin")]
    NotThroughOrigin,
    #[error("not quasihomogeneous: {0}")]
    NotQuasihomogeneous(String),
    #[error("invalid type: {0}")]
    InvalidType(String),
    #[error("unpaired identification branch: {0}")]
    UnpairedBranch(String),
    #[error("unsupported fold shape: {0}")]
    UnsupportedFoldShape(String),
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl DoublePointError {
    pub fn code(&self) -> &'static str {
        match self {
            DoublePointError::NotFinite => "NotFinite",
            DoublePointError::NotReduced => "NotReduced",
            DoublePointError::NotThroughOrigin => "NotThroughOrigin",
            DoublePointError::NotQuasihomogeneous(_) => "NotQuasihomogeneous",
            DoublePointError::InvalidType(_) => "InvalidType",
            DoublePointError::UnpairedBranch(_) => "UnpairedBranch",
            DoublePointError::UnsupportedFoldShape(_) => "UnsupportedFoldShape",
            DoublePointError::Germ(e) => e.code(),
            DoublePointError::Ideal(e) => e.code(),
            DoublePointError::Algebra(e) => e.code(),
        }
    }
}

/// `P = (p(x,y) - p(x,y')) / (y - y')` and likewise `Q`, in `[x, y, y']`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DividedDifferences {
    pub p: Polynomial,
    pub q: Polynomial,
}

impl DividedDifferences {
    pub fn ring(&self) -> &Arc<Ring> {
        self.p.ring()
    }
}

pub fn lifted_ring() -> Arc<Ring> {
    Ring::new(["x", "y", "y'"])
}

fn divided_difference(h: &Polynomial) -> Polynomial {
    let r = lifted_ring();
    let lifted = h.to_ring(&r).expect("source ring embeds");
    let yp = Polynomial::var_index(&r, 2);
    let swapped = h.substitute(&bindings(&[("y", yp.clone())]), &r).expect("bindings live in the lifted ring");
    let den = &Polynomial::var_index(&r, 1) - &yp;
    (&lifted - &swapped).divide_exact(&den).expect("y - y' divides h(y) - h(y')")
}

pub fn divided_differences(f: &Corank1Form) -> DividedDifferences {
    DividedDifferences {
        p: divided_difference(&f.p),
        q: divided_difference(&f.q),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LambdaForm {
    /// `x` does not divide `λ`.
    I,
    /// `x` divides `λ` and `λ ≠ x`.
    II,
    /// `λ = x`.
    III,
}

impl fmt::Display for LambdaForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaForm::I => write!(f, "I"),
            LambdaForm::II => write!(f, "II"),
            LambdaForm::III => write!(f, "III"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublePointCurve {
    /// Normalised defining equation of `D(f)` in `[x, y]`.
    pub lambda: Polynomial,
    /// Type of the germ, when `(x, p, q)` is quasihomogeneous.
    pub germ_type: Option<QuasihomogeneousType>,
    /// Weighted degree of `λ` for weights `(1, b)`, when `λ` is weighted
    /// homogeneous for the germ's `b`.
    pub weighted_degree: Option<u64>,
    pub form: LambdaForm,
    /// Reduced as a germ at the origin.
    pub reduced: bool,
}

impl DoublePointCurve {
    pub fn passes_through_origin(&self) -> bool {
        self.lambda.constant_term().is_zero()
    }
}

/// Scales `λ` so that its term with the largest `y`-exponent (then the largest
/// `x`-exponent) has coefficient 1.
pub fn normalize_lambda(lambda: &Polynomial) -> Polynomial {
    let lead = lambda
        .terms()
        .max_by(|a, b| (a.0.exps()[1], a.0.exps()[0]).cmp(&(b.0.exps()[1], b.0.exps()[0])))
        .map(|(_, c)| c.clone());
    match lead {
        Some(c) => lambda.scale(&c.recip()),
        None => lambda.clone(),
    }
}

/// True iff the plane curve `V(λ)` is reduced at the origin (vacuously when
/// it does not pass through it).
pub fn reduced_at_origin(lambda: &Polynomial) -> Result<bool, DoublePointError> {
    if lambda.is_zero() {
        return Ok(false);
    }
    if !lambda.constant_term().is_zero() {
        return Ok(true);
    }
    let ring = lambda.ring();
    let mut gens = vec![lambda.clone()];
    for v in 0..ring.len() {
        gens.push(lambda.derivative(v));
    }
    match local_length(&Ideal::new(ring, gens)?, LOCAL_LENGTH_CAP) {
        Ok(_) => Ok(true),
        Err(IdealError::NotFiniteLocally { .. }) => Ok(false),
        Err(e) => Err(e.into()),
    }
}

fn form_of(lambda: &Polynomial) -> LambdaForm {
    let x = Polynomial::var_index(lambda.ring(), 0);
    if *lambda == x {
        LambdaForm::III
    } else if lambda.divisible_by_var(0) {
        LambdaForm::II
    } else {
        LambdaForm::I
    }
}

/// `λ = Res_{y'}(P, Q)`, normalised.
pub fn compute_lambda(f: &Corank1Form) -> Result<DoublePointCurve, DoublePointError> {
    let dd = divided_differences(f);
    let res = match resultant(&dd.p, &dd.q, "y'") {
        Ok(r) => r,
        // both divided differences free of y': the resultant is 1 by convention
        Err(AlgebraError::BothConstantInVar { .. }) => {
            if dd.p.is_zero() || dd.q.is_zero() {
                Polynomial::zero(&source_ring())
            } else {
                Polynomial::one(&source_ring())
            }
        }
        Err(e) => return Err(e.into()),
    };
    if res.is_zero() {
        return Err(DoublePointError::NotFinite);
    }
    let lambda = normalize_lambda(&res.to_ring(&source_ring())?);
    let germ_type = infer_quasihomogeneous_type(f).ok();
    let weighted_degree = germ_type.and_then(|t| {
        lambda
            .weighted_degree(&WeightVector::xy(t.b))
            .ok()
            .filter(|w| w.quasihomogeneous)
            .map(|w| w.max)
    });
    let reduced = reduced_at_origin(&lambda)?;
    Ok(DoublePointCurve {
        form: form_of(&lambda),
        lambda,
        germ_type,
        weighted_degree,
        reduced,
    })
}

/// `V(λ)` via elimination of `y'` from `<P, Q>`, as an ideal of `[x, y]`.
pub fn lambda_by_elimination(f: &Corank1Form) -> Result<Ideal, DoublePointError> {
    let dd = divided_differences(f);
    let ring = dd.ring().clone();
    let i = Ideal::new(&ring, vec![dd.p, dd.q])?;
    Ok(elimination_ideal(&i, &["y'"])?)
}

/// True iff the resultant and elimination routes cut the same curve.
pub fn lambda_routes_agree(f: &Corank1Form) -> Result<bool, DoublePointError> {
    let c = compute_lambda(f)?;
    let elim = lambda_by_elimination(f)?;
    let principal = Ideal::new(&source_ring(), vec![c.lambda])?;
    Ok(same_variety(&principal, &elim)?)
}

/// Weighted degree of `λ` is `d2*d3/b - d2 - d3 + b`, and `b` divides `d2` or `d3`.
pub fn check_degree_formula(c: &DoublePointCurve, t: &QuasihomogeneousType) -> bool {
    let Ok(w) = c.lambda.weighted_degree(&WeightVector::xy(t.b)) else {
        return false;
    };
    w.quasihomogeneous && w.max as i64 == t.d && (t.d2.is_multiple_of(t.b) || t.d3.is_multiple_of(t.b))
}

/// Finitely determined iff `D(f)` is reduced.
pub fn is_finitely_determined(f: &Corank1Form) -> Result<bool, DoublePointError> {
    Ok(compute_lambda(f)?.reduced)
}

/// Milnor number of `V(λ)` at the origin: the local length of `<λ_x, λ_y>`.
pub fn milnor_number_of_lambda(c: &DoublePointCurve) -> Result<usize, DoublePointError> {
    milnor_number(&c.lambda)
}

pub fn milnor_number(lambda: &Polynomial) -> Result<usize, DoublePointError> {
    if !lambda.constant_term().is_zero() {
        return Err(DoublePointError::NotThroughOrigin);
    }
    let ring = lambda.ring();
    let jac = Ideal::new(ring, (0..ring.len()).map(|v| lambda.derivative(v)).collect())?;
    match local_length(&jac, LOCAL_LENGTH_CAP) {
        Ok(m) => Ok(m),
        Err(IdealError::NotFiniteLocally { .. }) => Err(DoublePointError::NotReduced),
        Err(e) => Err(e.into()),
    }
}

/// Branches `y = α x^b` of a quasihomogeneous `D(f)` and the fold line `x = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchSpectrum {
    pub b: u32,
    pub fold_present: bool,
    /// `λ(1, s)` with the factor `x` removed, made monic.
    pub spectrum_poly: UniPoly,
    pub rational_roots: Vec<Rational>,
    /// Factor of the spectrum polynomial without rational roots, and its degree.
    pub irrational_orbits: Vec<(UniPoly, usize)>,
}

impl BranchSpectrum {
    pub fn identification_branch_count(&self) -> usize {
        self.spectrum_poly.degree().unwrap_or(0)
    }
}

pub fn extract_branches(c: &DoublePointCurve) -> Result<BranchSpectrum, DoublePointError> {
    if !c.reduced {
        return Err(DoublePointError::NotReduced);
    }
    let Some(t) = c.germ_type else {
        return Err(DoublePointError::NotQuasihomogeneous("the germ has no weights (1, b)".into()));
    };
    if c.weighted_degree.is_none() {
        return Err(DoublePointError::NotQuasihomogeneous(format!(
            "{} is not weighted homogeneous for (1, {})",
            c.lambda, t.b
        )));
    }
    let fold_present = c.lambda.divisible_by_var(0);
    let mut coeffs: BTreeMap<u32, Rational> = BTreeMap::new();
    for (m, coef) in c.lambda.terms() {
        *coeffs.entry(m.exps()[1]).or_insert_with(Rational::zero) += coef;
    }
    let deg = coeffs.keys().max().copied().unwrap_or(0) as usize;
    let mut dense = vec![Rational::zero(); deg + 1];
    for (j, v) in coeffs {
        dense[j as usize] = v;
    }
    let spectrum_poly = UniPoly::new(dense).monic();
    if !spectrum_poly.is_squarefree() {
        return Err(DoublePointError::NotReduced);
    }
    let rational_roots = spectrum_poly.rational_roots();
    let rest = spectrum_poly.deflate(&rational_roots);
    let irrational_orbits = match rest.degree() {
        Some(d) if d > 0 => vec![(rest.monic(), d)],
        _ => Vec::new(),
    };
    Ok(BranchSpectrum {
        b: t.b,
        fold_present,
        spectrum_poly,
        rational_roots,
        irrational_orbits,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentClass {
    Identification,
    Fold,
}

/// A branch of `D(f)`: the curve `y = α x^b`, a block of conjugate
/// branches given by an irreducible factor over the rationals, or `x = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Branch {
    Rational(Rational),
    Orbit(UniPoly),
    Fold,
}

impl Branch {
    pub fn label(&self, b: u32) -> String {
        let xb = if b == 1 { "x".to_string() } else { format!("x^{b}") };
        match self {
            Branch::Rational(a) if a.is_zero() => "y".to_string(),
            Branch::Rational(a) => {
                let r = source_ring();
                let p = &Polynomial::var_index(&r, 1)
                    - &Polynomial::monomial(&r, Monomial::new(vec![b, 0]), a.clone());
                p.to_string()
            }
            Branch::Orbit(w) => format!("y = a*{xb} with {} = 0 at s = a", w),
            Branch::Fold => "x".to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPairing {
    pub orbit: UniPoly,
    pub degree: usize,
    /// Number of image curves contributed by the orbit.
    pub image_count: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pairing {
    /// Rational branches sharing an image, smaller `α` first, sorted.
    pub pairs: Vec<(Rational, Rational)>,
    pub orbits: Vec<OrbitPairing>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentClassification {
    pub identification_count: usize,
    pub fold_count: usize,
    pub branches: Vec<(Branch, ComponentClass, usize)>,
    pub pairing: Pairing,
}

pub fn classify_components(f: &Corank1Form, s: &BranchSpectrum) -> Result<ComponentClassification, DoublePointError> {
    let mut branches = Vec::new();
    for a in &s.rational_roots {
        branches.push((Branch::Rational(a.clone()), ComponentClass::Identification, 1));
    }
    for (w, d) in &s.irrational_orbits {
        branches.push((Branch::Orbit(w.clone()), ComponentClass::Identification, *d));
    }
    if s.fold_present {
        branches.push((Branch::Fold, ComponentClass::Fold, 1));
    }
    let pairing = pair_identifications(f, s)?;
    Ok(ComponentClassification {
        identification_count: s.identification_branch_count(),
        fold_count: usize::from(s.fold_present),
        branches,
        pairing,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PredictionCase {
    /// `d = 1`: the cross-cap.
    Stable,
    B1,
    B2,
    C1,
    C2,
    /// `b` even, `d_i` even with `d_i / b` odd and the other degree odd:
    /// no finitely determined germ has this type.
    Impossible,
}

impl fmt::Display for PredictionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PredictionCase::Stable => "a",
            PredictionCase::B1 => "b.1",
            PredictionCase::B2 => "b.2",
            PredictionCase::C1 => "c.1",
            PredictionCase::C2 => "c.2",
            PredictionCase::Impossible => "impossible",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub case: PredictionCase,
    pub form: Option<LambdaForm>,
    pub identification_count: usize,
    pub fold_count: usize,
}

/// Identification and fold counts forced by the parity of `(b, d2, d3)`.
pub fn predict_counts(t: &QuasihomogeneousType) -> Result<Prediction, DoublePointError> {
    let (b, d2, d3, d) = (t.b as i64, t.d2 as i64, t.d3 as i64, t.d);
    if b < 1 || (d2 % b != 0 && d3 % b != 0) {
        return Err(DoublePointError::InvalidType(format!("{t}: b divides neither degree")));
    }
    if d < 1 {
        return Err(DoublePointError::InvalidType(format!("{t}: d = {d} < 1")));
    }
    let counts = |form: LambdaForm, case: PredictionCase| -> Result<Prediction, DoublePointError> {
        let (num, fold) = match form {
            LambdaForm::I => (d, 0),
            _ => (d - 1, 1),
        };
        if num % b != 0 {
            return Err(DoublePointError::InvalidType(format!("{t}: b does not divide {num}")));
        }
        Ok(Prediction {
            case,
            form: Some(form),
            identification_count: (num / b) as usize,
            fold_count: fold,
        })
    };
    if d == 1 {
        return Ok(Prediction {
            case: PredictionCase::Stable,
            form: Some(LambdaForm::III),
            identification_count: 0,
            fold_count: 1,
        });
    }
    if b.is_odd() {
        if d2.is_odd() || d3.is_odd() {
            counts(LambdaForm::I, PredictionCase::B1)
        } else {
            counts(LambdaForm::II, PredictionCase::B2)
        }
    } else if d2.is_even() && d3.is_even() {
        counts(LambdaForm::I, PredictionCase::C1)
    } else if d2.is_odd() && d3.is_odd() {
        Err(DoublePointError::InvalidType(format!("{t}: b even but both degrees odd")))
    } else {
        let even = if d2.is_even() { d2 } else { d3 };
        if (even / b).is_odd() {
            Ok(Prediction {
                case: PredictionCase::Impossible,
                form: None,
                identification_count: 0,
                fold_count: 0,
            })
        } else {
            counts(LambdaForm::II, PredictionCase::C2)
        }
    }
}

/// `(p(1, α), q(1, α))`: the coefficients of the image of `u ↦ (u, α u^b)`.
fn branch_key(f: &Corank1Form, a: &Rational) -> (Rational, Rational) {
    let one = Rational::one();
    let ev = |h: &Polynomial| h.evaluate_var(0, &one).evaluate_var(1, a).constant_term();
    (ev(&f.p), ev(&f.q))
}

/// Matches identification branches with equal images. Rational branches are
/// paired exactly; irrational branches only at the level of their orbit.
pub fn pair_identifications(f: &Corank1Form, s: &BranchSpectrum) -> Result<Pairing, DoublePointError> {
    let mut groups: BTreeMap<(Rational, Rational), Vec<Rational>> = BTreeMap::new();
    for a in &s.rational_roots {
        groups.entry(branch_key(f, a)).or_default().push(a.clone());
    }
    let mut pairs = Vec::new();
    for (key, mut members) in groups {
        if members.len() != 2 {
            return Err(DoublePointError::UnpairedBranch(format!(
                "branches {:?} share the image coefficients ({}, {})",
                members.iter().map(ToString::to_string).collect::<Vec<_>>(),
                key.0,
                key.1
            )));
        }
        members.sort();
        pairs.push((members[0].clone(), members[1].clone()));
    }
    pairs.sort();
    let mut orbits = Vec::new();
    for (w, d) in &s.irrational_orbits {
        if d % 2 != 0 {
            return Err(DoublePointError::UnpairedBranch(format!(
                "orbit {w} has odd degree {d}"
            )));
        }
        orbits.push(OrbitPairing {
            orbit: w.clone(),
            degree: *d,
            image_count: d / 2,
        });
    }
    Ok(Pairing { pairs, orbits })
}

pub fn target_ring() -> Arc<Ring> {
    Ring::new(["X", "Y", "Z"])
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImageBranch {
    /// Source branches mapping onto this image curve.
    pub sources: Vec<Branch>,
    /// `(X(u), Y(u), Z(u))` as polynomials in `u` (for an orbit, in `s, u`).
    pub parametrization: [Polynomial; 3],
    pub order: u32,
    pub smooth: bool,
    /// Number of image curves this entry stands for.
    pub count: usize,
    /// Equations of the image in `[X, Y, Z]`.
    pub equations: Ideal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImageData {
    pub branches: Vec<ImageBranch>,
    /// `m(f(D(f)))`: the sum of the orders of the distinct image branches.
    pub multiplicity: u32,
}

fn monomial_u(ring: &Arc<Ring>, coef: Rational, e: u32) -> Polynomial {
    let n = ring.len();
    Polynomial::monomial(ring, Monomial::var(n, n - 1, e), coef)
}

fn image_equations(param: &[Polynomial; 3], extra: &[Polynomial], drop: &[&str]) -> Result<Ideal, DoublePointError> {
    let pring = param[0].ring().clone();
    let big = Ring::new(pring.vars().iter().cloned().chain(["X", "Y", "Z"].map(String::from)));
    let mut gens = Vec::new();
    for (i, name) in ["X", "Y", "Z"].iter().enumerate() {
        let v = Polynomial::var(&big, name)?;
        gens.push(&v - &param[i].to_ring(&big)?);
    }
    for e in extra {
        gens.push(e.to_ring(&big)?);
    }
    let elim = elimination_ideal(&Ideal::new(&big, gens)?, drop)?;
    Ok(elim.to_ring(&target_ring())?)
}

/// Image curves of the branches of `D(f)` with their orders, and `m(f(D(f)))`.
pub fn image_branch_data(f: &Corank1Form, s: &BranchSpectrum) -> Result<ImageData, DoublePointError> {
    let t = infer_quasihomogeneous_type(f)?;
    let pairing = pair_identifications(f, s)?;
    let uring = Ring::new(["u"]);
    let mut branches = Vec::new();
    for (a1, a2) in &pairing.pairs {
        let (pc, qc) = branch_key(f, a1);
        let param = [
            monomial_u(&uring, Rational::one(), 1),
            monomial_u(&uring, pc, t.d2),
            monomial_u(&uring, qc, t.d3),
        ];
        let equations = image_equations(&param, &[], &["u"])?;
        branches.push(ImageBranch {
            sources: vec![Branch::Rational(a1.clone()), Branch::Rational(a2.clone())],
            parametrization: param,
            order: 1,
            smooth: true,
            count: 1,
            equations,
        });
    }
    for o in &pairing.orbits {
        let sring = Ring::new(["s", "u"]);
        let w = Polynomial::from_terms(
            &sring,
            o.orbit
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::new(vec![i as u32, 0]), c.clone())),
        );
        let lift = |h: &Polynomial| -> Polynomial {
            let mut acc = Polynomial::zero(&sring);
            for (m, c) in h.terms() {
                acc = &acc + &Polynomial::monomial(&sring, Monomial::new(vec![m.exps()[1], 0]), c.clone());
            }
            acc
        };
        let param = [
            monomial_u(&sring, Rational::one(), 1),
            &lift(&f.p) * &monomial_u(&sring, Rational::one(), t.d2),
            &lift(&f.q) * &monomial_u(&sring, Rational::one(), t.d3),
        ];
        let equations = image_equations(&param, &[w], &["s", "u"])?;
        branches.push(ImageBranch {
            sources: vec![Branch::Orbit(o.orbit.clone())],
            parametrization: param,
            order: 1,
            smooth: true,
            count: o.image_count,
            equations,
        });
    }
    if s.fold_present {
        let zero = Rational::zero();
        let restrict = |h: &Polynomial| -> Polynomial {
            let r = h.evaluate_var(0, &zero);
            Polynomial::from_terms(
                &uring,
                r.terms().map(|(m, c)| (Monomial::new(vec![m.exps()[1]]), c.clone())),
            )
        };
        let (pu, qu) = (restrict(&f.p), restrict(&f.q));
        let mut exps = Vec::new();
        for h in [&pu, &qu] {
            match h.num_terms() {
                0 => {}
                1 => exps.push(h.degree_in(0).unwrap()),
                _ => {
                    return Err(DoublePointError::UnsupportedFoldShape(format!(
                        "{h} is not a monomial"
                    )))
                }
            }
        }
        if exps.len() == 2 && t.b >= 2 {
            return Err(DoublePointError::UnsupportedFoldShape(
                "both coordinates survive on the fold line with b >= 2".into(),
            ));
        }
        let g = exps.iter().fold(0u32, |g, &e| g.gcd(&e));
        if g != 2 {
            return Err(DoublePointError::UnsupportedFoldShape(format!(
                "surviving exponents {exps:?} have gcd {g}, expected 2"
            )));
        }
        let order = exps.iter().min().unwrap() / 2;
        let param = [Polynomial::zero(&uring), pu, qu];
        let equations = image_equations(&param, &[], &["u"])?;
        branches.push(ImageBranch {
            sources: vec![Branch::Fold],
            parametrization: param,
            order,
            smooth: order == 1,
            count: 1,
            equations,
        });
    }
    let multiplicity = branches.iter().map(|b| b.order * b.count as u32).sum();
    Ok(ImageData { branches, multiplicity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, rat};

    fn c5() -> Corank1Form {
        Corank1Form::parse("y^2", "x*y^3 - x^5*y").unwrap()
    }

    fn xy(s: &str) -> Polynomial {
        parse_polynomial(s, &source_ring()).unwrap()
    }

    #[test]
    fn c5_divided_differences() {
        let dd = divided_differences(&c5());
        let r = lifted_ring();
        assert_eq!(dd.p, parse_polynomial("y + y'", &r).unwrap());
        assert_eq!(dd.q, parse_polynomial("x*(y^2 + y*y' + y'^2) - x^5", &r).unwrap());
    }

    #[test]
    fn c5_lambda() {
        let c = compute_lambda(&c5()).unwrap();
        assert_eq!(c.lambda, xy("x*y^2 - x^5"));
        assert_eq!(c.form, LambdaForm::II);
        assert!(c.reduced);
        assert_eq!(c.weighted_degree, Some(5));
        assert_eq!(milnor_number_of_lambda(&c).unwrap(), 6);
    }

    #[test]
    fn crosscap_lambda() {
        let f = Corank1Form::parse("y^2", "x*y").unwrap();
        let c = compute_lambda(&f).unwrap();
        assert_eq!(c.lambda, xy("x"));
        assert_eq!(c.form, LambdaForm::III);
        assert_eq!(milnor_number_of_lambda(&c).unwrap(), 0);
    }

    #[test]
    fn non_reduced_lambda() {
        let f = Corank1Form::parse("y^2", "x^2*y").unwrap();
        let c = compute_lambda(&f).unwrap();
        assert_eq!(c.lambda, xy("x^2"));
        assert!(!is_finitely_determined(&f).unwrap());
        assert_eq!(milnor_number_of_lambda(&c), Err(DoublePointError::NotReduced));
    }

    #[test]
    fn not_finite() {
        let f = Corank1Form::parse("y^2", "y^4").unwrap();
        assert_eq!(compute_lambda(&f).unwrap_err(), DoublePointError::NotFinite);
    }

    #[test]
    fn c5_spectrum_and_pairing() {
        let f = c5();
        let c = compute_lambda(&f).unwrap();
        let s = extract_branches(&c).unwrap();
        assert!(s.fold_present);
        assert_eq!(s.rational_roots, vec![rat(-1), rat(1)]);
        let cl = classify_components(&f, &s).unwrap();
        assert_eq!((cl.identification_count, cl.fold_count), (2, 1));
        assert_eq!(cl.pairing.pairs, vec![(rat(-1), rat(1))]);
        let img = image_branch_data(&f, &s).unwrap();
        assert_eq!(img.multiplicity, 2);
        assert!(img.branches.iter().all(|b| b.order == 1));
    }

    #[test]
    fn predictor_cases() {
        let p = predict_counts(&QuasihomogeneousType::new(2, 4, 7).unwrap()).unwrap();
        assert_eq!((p.case, p.identification_count, p.fold_count), (PredictionCase::C2, 2, 1));
        let p = predict_counts(&QuasihomogeneousType::new(1, 2, 2).unwrap()).unwrap();
        assert_eq!(p.case, PredictionCase::Stable);
        let p = predict_counts(&QuasihomogeneousType::new(3, 6, 9).unwrap()).unwrap();
        assert_eq!((p.case, p.identification_count, p.fold_count), (PredictionCase::B1, 2, 0));
        // b = 2, d2 = 6 (n = 3 odd), d3 = 5 odd
        let p = predict_counts(&QuasihomogeneousType::new(2, 6, 5).unwrap()).unwrap();
        assert_eq!(p.case, PredictionCase::Impossible);
    }

    #[test]
    fn irrational_orbit() {
        let f = Corank1Form::parse("y^2", "y^3 + x^2*y").unwrap();
        let c = compute_lambda(&f).unwrap();
        let s = extract_branches(&c).unwrap();
        assert!(s.rational_roots.is_empty());
        assert_eq!(s.irrational_orbits.len(), 1);
        let img = image_branch_data(&f, &s).unwrap();
        assert_eq!(img.multiplicity, 1);
    }
}
