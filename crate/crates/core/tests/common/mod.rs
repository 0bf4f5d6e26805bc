//! Oracles that do not go through the Gröbner engine.
#![allow(dead_code)]

use std::collections::HashMap;

use germlab_core::algebra::{Polynomial, Rational};
use num_traits::Zero;

/// Seed for all randomised suites.
pub const SEED: u64 = 0x6e71_2024;

/// Rank over the rationals by plain Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                for j in 0..cols {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

fn monomials_below(nvars: usize, n: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..nvars {
        let mut next = Vec::new();
        for m in &out {
            let used: u32 = m.iter().sum();
            for e in 0..n.saturating_sub(used) {
                let mut v = m.clone();
                v.push(e);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// `dim O / (I + m^n)` by linear algebra on polynomials of degree below `n`.
pub fn length_mod_power(gens: &[Polynomial], n: u32) -> usize {
    let nvars = gens[0].ring().len();
    let basis = monomials_below(nvars, n);
    let index: HashMap<Vec<u32>, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        for m in &basis {
            let mut row = vec![Rational::zero(); basis.len()];
            let mut any = false;
            for (gm, c) in g.terms() {
                let e: Vec<u32> = gm.exps().iter().zip(m).map(|(a, b)| a + b).collect();
                if let Some(&i) = index.get(&e) {
                    row[i] += c;
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    basis.len() - rank(rows)
}

/// Local length at the origin via `I + m^n`, stopping at the first `n` with
/// equal consecutive values. `None` if no stabilisation up to `max_n`.
pub fn local_length_oracle(gens: &[Polynomial], max_n: u32) -> Option<usize> {
    let mut prev = None;
    for n in 1..=max_n {
        let l = length_mod_power(gens, n);
        if prev == Some(l) {
            return Some(l);
        }
        prev = Some(l);
    }
    None
}

/// `μ = (d - 1)(d - b)/b` for a reduced curve weighted homogeneous of
/// degree `d` with weights `(1, b)`.
pub fn milnor_formula(d: i64, b: i64) -> Option<i64> {
    let n = (d - 1) * (d - b);
    (n % b == 0).then_some(n / b)
}

/// Evaluates `h(X, Y, Z)` at a parametrisation by direct substitution.
pub fn compose(h: &Polynomial, comps: &[Polynomial; 3]) -> Polynomial {
    let ring = comps[0].ring();
    let mut acc = Polynomial::zero(ring);
    for (m, c) in h.terms() {
        let mut term = Polynomial::constant(ring, c.clone());
        for (i, e) in m.exps().iter().enumerate() {
            term = &term * &comps[i].pow(*e);
        }
        acc = &acc + &term;
    }
    acc
}

pub fn jacobian(lambda: &Polynomial) -> Vec<Polynomial> {
    (0..lambda.ring().len()).map(|v| lambda.derivative(v)).filter(|p| !p.is_zero()).collect()
}

