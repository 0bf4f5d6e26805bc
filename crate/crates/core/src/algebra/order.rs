use std::cmp::Ordering;

use num_integer::Integer;

use super::AlgebraError;

/// Positive integer weights with no common factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    pub fn new(weights: Vec<u32>) -> Result<Self, AlgebraError> {
        if weights.is_empty() {
            return Err(AlgebraError::InvalidWeights("empty".into()));
        }
        if weights.contains(&0) {
            return Err(AlgebraError::InvalidWeights(format!(
                "weights must be positive, got {weights:?}"
            )));
        }
        let g = weights.iter().fold(0u32, |g, &w| g.gcd(&w));
        if g != 1 {
            return Err(AlgebraError::InvalidWeights(format!(
                "weights {weights:?} share the factor {g}"
            )));
        }
        Ok(WeightVector(weights))
    }

    /// Weights `(1, b)` for the source variables `(x, y)`.
    pub fn xy(b: u32) -> Self {
        WeightVector::new(vec![1, b]).expect("weight of x is 1")
    }

    pub fn weights(&self) -> &[u32] {
        &self.0
    }
}

/// Total, multiplicative well-orders on exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[derive(Default)]
pub enum MonomialOrder {
    /// First variable most significant.
    Lex,
    /// Total degree, ties broken reverse-lexicographically.
    #[default]
    GrevLex,
    /// Weighted degree, ties broken by grevlex.
    Weighted(WeightVector),
    /// Variables `[0, split)` compared by `high`; ties broken on the
    /// remaining variables by `low`.
    Block {
        split: usize,
        high: Box<MonomialOrder>,
        low: Box<MonomialOrder>,
    },
}


impl MonomialOrder {
    /// Grevlex blocks eliminating the first `split` variables.
    pub fn elimination(split: usize) -> Self {
        MonomialOrder::Block {
            split,
            high: Box::new(MonomialOrder::GrevLex),
            low: Box::new(MonomialOrder::GrevLex),
        }
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Weighted(w) => {
                let wa: u64 = a.iter().zip(w.weights()).map(|(&e, &w)| e as u64 * w as u64).sum();
                let wb: u64 = b.iter().zip(w.weights()).map(|(&e, &w)| e as u64 * w as u64).sum();
                wa.cmp(&wb).then_with(|| grevlex(a, b))
            }
            MonomialOrder::Block { split, high, low } => high
                .cmp(&a[..*split], &b[..*split])
                .then_with(|| low.cmp(&a[*split..], &b[*split..])),
        }
    }

    /// Checks that the order is usable on a ring with `nvars` variables.
    pub fn check_arity(&self, nvars: usize) -> Result<(), AlgebraError> {
        match self {
            MonomialOrder::Lex | MonomialOrder::GrevLex => Ok(()),
            MonomialOrder::Weighted(w) if w.weights().len() == nvars => Ok(()),
            MonomialOrder::Weighted(w) => Err(AlgebraError::InvalidWeights(format!(
                "{} weights for {} variables",
                w.weights().len(),
                nvars
            ))),
            MonomialOrder::Block { split, high, low } => {
                if *split > nvars {
                    return Err(AlgebraError::InvalidWeights(format!(
                        "block split {split} exceeds {nvars} variables"
                    )));
                }
                high.check_arity(*split)?;
                low.check_arity(nvars - split)
            }
        }
    }

    /// Degree used for the sugar strategy.
    pub(crate) fn sugar_degree(&self, exps: &[u32]) -> u64 {
        match self {
            MonomialOrder::Weighted(w) => exps
                .iter()
                .zip(w.weights())
                .map(|(&e, &w)| e as u64 * w as u64)
                .sum(),
            _ => exps.iter().map(|&e| e as u64).sum(),
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (ea, eb) in a.iter().zip(b).rev() {
            if ea != eb {
                // smaller exponent in the last differing variable wins
                return eb.cmp(ea);
            }
        }
        Ordering::Equal
    })
}
