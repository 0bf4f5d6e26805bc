//! Seeded random quasihomogeneous germs and unfoldings of non-decreasing weights.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rat, Monomial, Polynomial};
use crate::double_point::compute_lambda;
use crate::germ::{
    family_ring, infer_quasihomogeneous_type, is_non_decreasing_weights, source_ring, validate_unfolding, Corank1Form,
    MapGerm, QuasihomogeneousType, Unfolding,
};

/// Types `(b, d2, d3)` drawn from; each has `b | d2`.
pub const TYPE_TEMPLATES: &[(u32, u32, u32)] = &[
    (1, 2, 3),
    (1, 2, 4),
    (1, 2, 5),
    (1, 3, 4),
    (2, 4, 5),
    (2, 4, 6),
    (2, 4, 7),
    (2, 4, 9),
    (2, 6, 7),
    (3, 6, 7),
    (3, 6, 8),
    (3, 6, 9),
    (3, 6, 10),
];

/// Monomials `x^i y^j` with `i + b*j = deg` and total degree at least 2.
fn weighted_monomials(b: u32, deg: u32) -> Vec<Monomial> {
    (0..=deg / b)
        .map(|j| Monomial::new(vec![deg - b * j, j]))
        .filter(|m| m.degree() >= 2)
        .collect()
}

fn nonzero_coefficient(rng: &mut ChaCha8Rng) -> i64 {
    let c: i64 = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        -c
    } else {
        c
    }
}

fn random_component(rng: &mut ChaCha8Rng, b: u32, deg: u32, pure_power: bool) -> Polynomial {
    let ring = source_ring();
    let mut p = Polynomial::zero(&ring);
    for m in weighted_monomials(b, deg) {
        let forced = pure_power && m.exps()[0] == 0;
        if forced {
            p = &p + &Polynomial::monomial(&ring, m, rat(1));
        } else if rng.gen_bool(0.5) {
            p = &p + &Polynomial::monomial(&ring, m, rat(nonzero_coefficient(rng)));
        }
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledGerm {
    pub germ: Corank1Form,
    pub ty: QuasihomogeneousType,
}

/// `count` distinct finitely determined quasihomogeneous corank-1 germs.
pub fn random_quasihomogeneous_germs(seed: u64, count: usize) -> Vec<SampledGerm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<SampledGerm> = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 400 * count.max(1) {
        attempts += 1;
        let &(b, d2, d3) = TYPE_TEMPLATES.choose(&mut rng).expect("nonempty");
        let p = random_component(&mut rng, b, d2, true);
        let q = random_component(&mut rng, b, d3, false);
        let Ok(germ) = Corank1Form::new(p, q) else {
            continue;
        };
        let Ok(ty) = infer_quasihomogeneous_type(&germ) else {
            continue;
        };
        if out.iter().any(|s| s.germ == germ) {
            continue;
        }
        match compute_lambda(&germ) {
            Ok(c) if c.reduced && c.passes_through_origin() => out.push(SampledGerm { germ, ty }),
            _ => {}
        }
    }
    out
}

/// Adds one or two terms `t^k * m` with `m` of weighted degree at least
/// that of the component it perturbs.
pub fn random_non_decreasing_unfolding(
    rng: &mut ChaCha8Rng,
    name: impl Into<String>,
    base: &MapGerm,
    ty: &QuasihomogeneousType,
) -> Option<Unfolding> {
    let fam = family_ring();
    let mut comps: Vec<Polynomial> = base
        .components()
        .iter()
        .map(|c| c.to_ring(&fam).expect("source ring embeds"))
        .collect();
    let terms = rng.gen_range(1..=2);
    for _ in 0..terms {
        let slot = rng.gen_range(1..=2);
        let bound = if slot == 1 { ty.d2 } else { ty.d3 };
        let deg = bound + rng.gen_range(0..=ty.b + 2);
        let monos = weighted_monomials(ty.b, deg);
        let m = monos.choose(rng)?;
        let tpow = rng.gen_range(1..=2);
        let mono = Monomial::new(vec![m.exps()[0], m.exps()[1], tpow]);
        comps[slot] = &comps[slot] + &Polynomial::monomial(&fam, mono, rat(nonzero_coefficient(rng)));
    }
    let u = validate_unfolding(name, base, comps.try_into().ok()?).ok()?;
    is_non_decreasing_weights(&u, ty).then_some(u)
}

/// `count` unfoldings of non-decreasing weights, spread round-robin over `bases`.
pub fn seeded_perturbations(bases: &[(MapGerm, QuasihomogeneousType)], seed: u64, count: usize) -> Vec<Unfolding> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    if bases.is_empty() {
        return out;
    }
    let mut i = 0;
    while out.len() < count && i < 100 * count {
        let (base, ty) = &bases[i % bases.len()];
        i += 1;
        let name = format!("{}-nd{}", base.name(), out.len());
        if let Some(u) = random_non_decreasing_unfolding(&mut rng, name, base, ty) {
            if u.perturbations().map(|p| p.iter().any(|c| !c.is_zero())).unwrap_or(false) {
                out.push(u);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a = random_quasihomogeneous_germs(7, 5);
        let b = random_quasihomogeneous_germs(7, 5);
        assert_eq!(a.len(), 5);
        assert_eq!(a, b);
    }

    #[test]
    fn perturbations_are_non_decreasing() {
        let g = Corank1Form::parse("y^2", "x*y^3 - x^5*y").unwrap().to_germ("C5");
        let ty = QuasihomogeneousType::new(2, 4, 7).unwrap();
        let us = seeded_perturbations(&[(g, ty)], 3, 4);
        assert_eq!(us.len(), 4);
        assert!(us.iter().all(|u| is_non_decreasing_weights(u, &ty)));
    }
}
