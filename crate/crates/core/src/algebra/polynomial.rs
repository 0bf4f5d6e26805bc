use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, Monomial, MonomialOrder, Rational, Ring, WeightVector};

/// Sparse polynomial over the rationals. Zero coefficients are never stored,
/// so structural equality is mathematical equality.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Result of [`Polynomial::weighted_degree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightedDegree {
    pub min: u64,
    pub max: u64,
    pub quasihomogeneous: bool,
}

/// Exact `a op b`; both operands must share a ring.
pub fn arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial, AlgebraError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.len()), c);
        }
        p
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Polynomial::constant(ring, Rational::one())
    }

    pub fn var(ring: &Arc<Ring>, name: &str) -> Result<Self, AlgebraError> {
        let idx = ring.require(name)?;
        Ok(Polynomial::var_index(ring, idx))
    }

    pub fn var_index(ring: &Arc<Ring>, idx: usize) -> Self {
        Polynomial::monomial(ring, Monomial::var(ring.len(), idx, 1), Rational::one())
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.len(), ring.len(), "monomial arity differs from ring");
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms<I>(ring: &Arc<Ring>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.len(), ring.len(), "monomial arity differs from ring");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Terms in canonical (lexicographic exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.ring.len()))
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Largest exponent of variable `idx`, `None` for the zero polynomial.
    pub fn degree_in(&self, idx: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exps()[idx]).max()
    }

    pub fn min_degree_in(&self, idx: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exps()[idx]).min()
    }

    pub fn involves(&self, idx: usize) -> bool {
        self.terms.keys().any(|m| m.exps()[idx] > 0)
    }

    fn same_ring(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.same_ring(other)?;
        let mut out = Polynomial::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Leading term under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0.exps(), b.0.exps()))
    }

    /// Scales so the leading coefficient under `order` is 1.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Terms sorted by `order`, largest first.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0.exps(), a.0.exps()));
        v
    }

    /// `self / den`, failing unless the division is exact.
    pub fn divide_exact(&self, den: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.same_ring(den)?;
        if den.is_zero() {
            return Err(AlgebraError::NotDivisible);
        }
        let order = MonomialOrder::GrevLex;
        let (dm, dc) = den.leading_term(&order).expect("nonzero");
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ring);
        while let Some((rm, rc)) = rem.leading_term(&order) {
            let Some(qm) = dm.quotient_of(rm) else {
                return Err(AlgebraError::NotDivisible);
            };
            let qc = rc / &dc;
            rem = &rem - &den.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Polynomial, AlgebraError> {
        let idx = self.ring.require(var)?;
        Ok(self.derivative(idx))
    }

    pub fn derivative(&self, idx: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exps()[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[idx] -= 1;
            out.add_term(Monomial::new(exps), c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Composes with `bindings` (variable name to polynomial in `target`).
    /// Unbound variables map to the same-named variable of `target`.
    pub fn substitute(
        &self,
        bindings: &HashMap<String, Polynomial>,
        target: &Arc<Ring>,
    ) -> Result<Polynomial, AlgebraError> {
        let mut images = Vec::with_capacity(self.ring.len());
        for name in self.ring.vars() {
            let image = match bindings.get(name) {
                Some(p) => {
                    if p.ring != *target {
                        return Err(AlgebraError::RingMismatch {
                            left: p.ring.to_string(),
                            right: target.to_string(),
                        });
                    }
                    Some(p.clone())
                }
                None => target.index_of(name).map(|i| Polynomial::var_index(target, i)),
            };
            images.push(image);
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![Vec::new(); images.len()];
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let Some(img) = &images[i] else {
                    return Err(AlgebraError::RingMismatch {
                        left: self.ring.to_string(),
                        right: target.to_string(),
                    });
                };
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Polynomial::one(target));
                }
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * img;
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Sets variable `idx` to `value`, staying in the same ring.
    pub fn evaluate_var(&self, idx: usize, value: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exps()[idx];
            let mut exps = m.exps().to_vec();
            exps[idx] = 0;
            let factor = num_traits::pow(value.clone(), e as usize);
            out.add_term(Monomial::new(exps), c * factor);
        }
        out
    }

    /// Moves the polynomial into `target` by variable name. Variables that
    /// occur with positive exponent must exist in `target`.
    pub fn to_ring(&self, target: &Arc<Ring>) -> Result<Polynomial, AlgebraError> {
        if self.ring == *target {
            return Ok(Polynomial {
                ring: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let map: Vec<Option<usize>> = self.ring.vars().iter().map(|v| target.index_of(v)).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps[j] = e,
                    None => {
                        return Err(AlgebraError::RingMismatch {
                            left: self.ring.to_string(),
                            right: target.to_string(),
                        })
                    }
                }
            }
            out.add_term(Monomial::new(exps), c.clone());
        }
        Ok(out)
    }

    pub fn weighted_degree(&self, w: &WeightVector) -> Result<WeightedDegree, AlgebraError> {
        if w.weights().len() != self.ring.len() {
            return Err(AlgebraError::InvalidWeights(format!(
                "{} weights for ring [{}]",
                w.weights().len(),
                self.ring
            )));
        }
        let degs = self.terms.keys().map(|m| m.weighted_degree(w.weights()));
        let (mut lo, mut hi) = (u64::MAX, 0u64);
        let mut any = false;
        for d in degs {
            any = true;
            lo = lo.min(d);
            hi = hi.max(d);
        }
        if !any {
            return Err(AlgebraError::ZeroPolynomial);
        }
        Ok(WeightedDegree {
            min: lo,
            max: hi,
            quasihomogeneous: lo == hi,
        })
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Integer coefficients with content 1 and positive leading coefficient
    /// under `order`; the result is a nonzero rational multiple of `self`.
    pub fn primitive_integer(&self, order: &MonomialOrder) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.denominator_lcm();
        let scaled = self.scale(&Rational::from_integer(l));
        let g = scaled
            .terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c.numer()));
        let mut out = scaled.scale(&Rational::new(BigInt::one(), g));
        if out.leading_term(order).map(|(_, c)| c.is_negative()) == Some(true) {
            out = -out;
        }
        out
    }

    /// True iff every monomial of `self` is divisible by the variable `idx`.
    pub fn divisible_by_var(&self, idx: usize) -> bool {
        !self.is_zero() && self.terms.keys().all(|m| m.exps()[idx] > 0)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics on ring mismatch; use [`Polynomial::checked_add`] otherwise.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in *")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -self.clone()
    }
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Prints terms by descending grevlex, e.g. `-x^5 + x*y^2`. The output
/// re-parses to the same polynomial.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms(&MonomialOrder::GrevLex).into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if m.is_one() || !abs.is_one() {
                factors.push(fmt_rational(&abs));
            }
            for (v, &e) in self.ring.vars().iter().zip(m.exps()) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, rat, ratio};

    fn xy() -> Arc<Ring> {
        Ring::new(["x", "y"])
    }

    fn p(s: &str, r: &Arc<Ring>) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = Ring::new(["y", "y'"]);
        let a = p("y - y'", &r);
        let b = p("y + y'", &r);
        assert_eq!(&a * &b, p("y^2 - y'^2", &r));
        let r2 = xy();
        assert_eq!(&p("x+y", &r2) * &p("x-y", &r2), p("x^2-y^2", &r2));
    }

    #[test]
    fn add_zero_is_identity() {
        let r = xy();
        let a = p("x*y^3 - x^5*y", &r);
        assert_eq!(&a + &Polynomial::zero(&r), a);
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = p("x", &xy());
        let b = p("x", &Ring::new(["x", "t"]));
        assert!(matches!(arith(&a, &b, ArithOp::Add), Err(AlgebraError::RingMismatch { .. })));
    }

    #[test]
    fn exact_division_examples() {
        let r = Ring::new(["x", "y", "y'"]);
        let num = p("y^2 - y'^2", &r);
        let den = p("y - y'", &r);
        let q = num.divide_exact(&den).unwrap();
        assert_eq!(q, p("y + y'", &r));
        assert_eq!(&q * &den, num);

        assert!(Polynomial::zero(&r).divide_exact(&den).unwrap().is_zero());

        let num = p("x*y^3 - x^5*y - x*y'^3 + x^5*y'", &r);
        let q = num.divide_exact(&den).unwrap();
        assert_eq!(q, p("x*(y^2 + y*y' + y'^2) - x^5", &r));
        assert_eq!(&q * &den, num);

        assert_eq!(p("x + 1", &r).divide_exact(&den), Err(AlgebraError::NotDivisible));
    }

    #[test]
    fn derivatives() {
        let r = xy();
        let l = p("x*y^2 - x^5", &r);
        assert_eq!(l.partial_derivative("x").unwrap(), p("y^2 - 5*x^4", &r));
        assert_eq!(l.partial_derivative("y").unwrap(), p("2*x*y", &r));
        let rt = Ring::new(["x", "y", "t"]);
        assert!(p("x*y^2", &rt).partial_derivative("t").unwrap().is_zero());
        assert!(matches!(l.partial_derivative("t"), Err(AlgebraError::UnknownVariable { .. })));
    }

    #[test]
    fn substitution_examples() {
        let r = xy();
        let l = p("x*y^2 - x^5", &r);
        let target = Ring::new(["u", "a"]);
        let mut b = HashMap::new();
        b.insert("x".to_string(), p("u", &target));
        b.insert("y".to_string(), p("a*u^2", &target));
        assert_eq!(l.substitute(&b, &target).unwrap(), p("a^2*u^5 - u^5", &target));

        assert_eq!(l.substitute(&HashMap::new(), &r).unwrap(), l);

        let s = Ring::new(["s"]);
        let mut b = HashMap::new();
        b.insert("x".to_string(), Polynomial::one(&s));
        b.insert("y".to_string(), p("s", &s));
        assert_eq!(l.substitute(&b, &s).unwrap(), p("s^2 - 1", &s));
    }

    #[test]
    fn weighted_degree_examples() {
        let r = xy();
        let wd = p("x*y^2 - x^5", &r).weighted_degree(&WeightVector::xy(2)).unwrap();
        assert_eq!((wd.min, wd.max, wd.quasihomogeneous), (5, 5, true));
        let wd = p("x + y^2", &r).weighted_degree(&WeightVector::xy(1)).unwrap();
        assert_eq!((wd.min, wd.max, wd.quasihomogeneous), (1, 2, false));
        let wd = p("3", &r).weighted_degree(&WeightVector::xy(1)).unwrap();
        assert_eq!((wd.min, wd.max, wd.quasihomogeneous), (0, 0, true));
        assert_eq!(
            Polynomial::zero(&r).weighted_degree(&WeightVector::xy(1)),
            Err(AlgebraError::ZeroPolynomial)
        );
    }

    #[test]
    fn display_round_trips() {
        let r = Ring::new(["x", "y", "y'"]);
        for s in ["x*y^2 - x^5", "1/2*y^2 + x", "-3/7", "0", "y'^3 - 2*x*y*y' + 1"] {
            let a = p(s, &r);
            assert_eq!(p(&a.to_string(), &r), a, "{s} printed as {a}");
        }
        assert_eq!(p("x*y^2 - x^5", &r).to_string(), "-x^5 + x*y^2");
    }

    #[test]
    fn primitive_integer_form() {
        let r = xy();
        let a = p("-1/2*x + 3/4*y^2", &r);
        assert_eq!(a.primitive_integer(&MonomialOrder::GrevLex), p("3*y^2 - 2*x", &r));
        assert_eq!(a.evaluate_var(1, &rat(2)), p("-1/2*x + 3", &r));
        assert_eq!(a.evaluate_var(0, &ratio(1, 2)), p("-1/4 + 3/4*y^2", &r));
    }
}
