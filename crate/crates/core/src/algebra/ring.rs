use std::fmt;
use std::sync::Arc;

use super::AlgebraError;

/// An ordered list of variable names. Polynomials only combine when their
/// rings are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
}

impl Ring {
    /// Panics if a name repeats.
    pub fn new<I, S>(vars: I) -> Arc<Ring>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            assert!(!vars[..i].contains(v), "duplicate variable `{v}` in ring");
        }
        Arc::new(Ring { vars })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, AlgebraError> {
        self.index_of(name).ok_or_else(|| AlgebraError::UnknownVariable {
            name: name.to_string(),
        })
    }

    /// The ring with the given variable names removed (order preserved).
    pub fn without(&self, drop: &[&str]) -> Arc<Ring> {
        Ring::new(self.vars.iter().filter(|v| !drop.contains(&v.as_str())).cloned())
    }

    /// The ring with `name` appended. If `name` is taken, primes are added
    /// until it is fresh.
    pub fn with_extra(&self, name: &str) -> Arc<Ring> {
        let fresh = self.fresh_name(name);
        let mut vars = self.vars.clone();
        vars.push(fresh);
        Arc::new(Ring { vars })
    }

    /// The ring with `name` prepended (made fresh the same way).
    pub fn with_front(&self, name: &str) -> Arc<Ring> {
        let fresh = self.fresh_name(name);
        let mut vars = vec![fresh];
        vars.extend(self.vars.iter().cloned());
        Arc::new(Ring { vars })
    }

    pub fn fresh_name(&self, name: &str) -> String {
        let mut fresh = name.to_string();
        while self.vars.contains(&fresh) {
            fresh.push('\'');
        }
        fresh
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vars.join(","))
    }
}

/// Exponent vector, one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = exp;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// The single variable index if this is a pure power `v^e` with `e > 0`.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }
}
