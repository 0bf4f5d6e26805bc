//! Buchberger's algorithm with the sugar strategy and Gebauer–Möller pair
//! pruning. Arithmetic is fraction free on primitive integer polynomials;
//! the final basis is converted back to monic rational form.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Monomial, MonomialOrder, Polynomial, Rational, Ring};

use super::IdealError;

/// Termination guard for Buchberger runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerConfig {
    /// Maximum number of S-pairs reduced before giving up.
    pub max_pairs: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig { max_pairs: 10_000 }
    }
}

type Term = (Vec<u32>, BigInt);

/// Integer polynomial, terms sorted descending in the working order.
#[derive(Clone, Debug)]
struct IPoly {
    terms: Vec<Term>,
    sugar: u64,
}

impl IPoly {
    fn lm(&self) -> &[u32] {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x == 0 || y == 0)
}

fn sub_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn content(terms: &[Term]) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in terms {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn make_primitive(terms: &mut [Term]) {
    if terms.is_empty() {
        return;
    }
    let mut g = content(terms);
    if terms[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, c) in terms.iter_mut() {
            *c /= &g;
        }
    }
}

/// `a*p - b*m*g`, both inputs sorted descending.
fn lin_comb(a: &BigInt, p: &[Term], b: &BigInt, m: &[u32], g: &[Term], order: &MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let mut gj: Option<Vec<u32>> = g.first().map(|t| add_exps(&t.0, m));
    while i < p.len() || j < g.len() {
        let ord = match (p.get(i), &gj) {
            (Some(pt), Some(ge)) => order.cmp(&pt.0, ge),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push((p[i].0.clone(), a * &p[i].1));
                i += 1;
            }
            Ordering::Less => {
                out.push((gj.take().unwrap(), -(b * &g[j].1)));
                j += 1;
                gj = g.get(j).map(|t| add_exps(&t.0, m));
            }
            Ordering::Equal => {
                let c = a * &p[i].1 - b * &g[j].1;
                if !c.is_zero() {
                    out.push((p[i].0.clone(), c));
                }
                i += 1;
                j += 1;
                gj = g.get(j).map(|t| add_exps(&t.0, m));
            }
        }
    }
    out
}

/// Full reduction of `f` by `basis`; the result is a nonzero rational
/// multiple of the normal form, made primitive.
fn reduce(f: &IPoly, basis: &[&IPoly], order: &MonomialOrder) -> IPoly {
    let mut p = f.terms.clone();
    let mut r: Vec<Term> = Vec::new();
    let mut steps = 0usize;
    while !p.is_empty() {
        let lm = &p[0].0;
        let divisor = basis.iter().find(|g| divides(g.lm(), lm));
        match divisor {
            Some(g) => {
                let m = sub_exps(lm, g.lm());
                let gc = p[0].1.gcd(g.lc());
                let a = g.lc() / &gc;
                let b = &p[0].1 / &gc;
                p = lin_comb(&a, &p, &b, &m, &g.terms, order);
                if !a.is_one() {
                    for (_, c) in r.iter_mut() {
                        *c *= &a;
                    }
                }
                steps += 1;
                if steps.is_multiple_of(16) {
                    let g = content(&p).gcd(&content(&r));
                    if !g.is_zero() && !g.is_one() {
                        for (_, c) in p.iter_mut().chain(r.iter_mut()) {
                            *c /= &g;
                        }
                    }
                }
            }
            None => {
                let t = p.remove(0);
                r.push(t);
            }
        }
    }
    make_primitive(&mut r);
    IPoly {
        terms: r,
        sugar: f.sugar,
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Vec<u32>,
    sugar: u64,
}

fn to_ipoly(p: &Polynomial, order: &MonomialOrder) -> IPoly {
    let prim = p.primitive_integer(order);
    let mut terms: Vec<Term> = prim
        .terms()
        .map(|(m, c)| (m.exps().to_vec(), c.numer().clone()))
        .collect();
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    let sugar = terms.iter().map(|t| order.sugar_degree(&t.0)).max().unwrap_or(0);
    IPoly { terms, sugar }
}

fn to_monic(p: &IPoly, ring: &Arc<Ring>) -> Polynomial {
    let lc = Rational::from_integer(p.lc().clone());
    Polynomial::from_terms(
        ring,
        p.terms
            .iter()
            .map(|(e, c)| (Monomial::new(e.clone()), Rational::from_integer(c.clone()) / &lc)),
    )
}

/// Reduced Gröbner basis of the polynomials in `gens`, monic and sorted by
/// increasing leading monomial.
pub(crate) fn buchberger(
    gens: &[Polynomial],
    ring: &Arc<Ring>,
    order: &MonomialOrder,
    config: &GroebnerConfig,
) -> Result<Vec<Polynomial>, IdealError> {
    let mut polys: Vec<IPoly> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let inputs: Vec<IPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| to_ipoly(g, order))
        .collect();

    for h in inputs {
        let basis: Vec<&IPoly> = active.iter().map(|&i| &polys[i]).collect();
        let h = reduce(&h, &basis, order);
        if h.is_zero() {
            continue;
        }
        if h.lm().iter().all(|&e| e == 0) {
            return Ok(vec![Polynomial::one(ring)]);
        }
        polys.push(h);
        update(&polys, &mut active, &mut pairs, polys.len() - 1, order);
    }

    let mut processed = 0usize;
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a]
                    .sugar
                    .cmp(&pairs[b].sugar)
                    .then_with(|| order.cmp(&pairs[a].lcm, &pairs[b].lcm))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        processed += 1;
        if processed > config.max_pairs {
            return Err(IdealError::ResourceExceeded(format!(
                "more than {} S-pairs",
                config.max_pairs
            )));
        }
        let s = spoly(&polys[pair.i], &polys[pair.j], &pair, order);
        if s.is_zero() {
            continue;
        }
        let basis: Vec<&IPoly> = active.iter().map(|&i| &polys[i]).collect();
        let h = reduce(&s, &basis, order);
        if h.is_zero() {
            continue;
        }
        if h.lm().iter().all(|&e| e == 0) {
            return Ok(vec![Polynomial::one(ring)]);
        }
        polys.push(h);
        update(&polys, &mut active, &mut pairs, polys.len() - 1, order);
    }

    // interreduce the minimal basis
    let mut minimal: Vec<usize> = Vec::new();
    for &i in &active {
        let redundant = active
            .iter()
            .any(|&j| j != i && divides(polys[j].lm(), polys[i].lm()) && (polys[j].lm() != polys[i].lm() || j < i));
        if !redundant {
            minimal.push(i);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for &i in &minimal {
        let others: Vec<&IPoly> = minimal.iter().filter(|&&j| j != i).map(|&j| &polys[j]).collect();
        let full = reduce_tail(&polys[i], &others, order);
        out.push(to_monic(&full, ring));
    }
    out.sort_by(|a, b| {
        let la = a.leading_term(order).unwrap().0.exps().to_vec();
        let lb = b.leading_term(order).unwrap().0.exps().to_vec();
        order.cmp(&la, &lb)
    });
    Ok(out)
}

/// Reduces every non-leading term of `f` by `basis`, keeping the leading term.
fn reduce_tail(f: &IPoly, basis: &[&IPoly], order: &MonomialOrder) -> IPoly {
    let mut done: Vec<Term> = vec![f.terms[0].clone()];
    let mut p: Vec<Term> = f.terms[1..].to_vec();
    while !p.is_empty() {
        let lm = &p[0].0;
        match basis.iter().find(|g| divides(g.lm(), lm)) {
            Some(g) => {
                let m = sub_exps(lm, g.lm());
                let gc = p[0].1.gcd(g.lc());
                let a = g.lc() / &gc;
                let b = &p[0].1 / &gc;
                p = lin_comb(&a, &p, &b, &m, &g.terms, order);
                if !a.is_one() {
                    for (_, c) in done.iter_mut() {
                        *c *= &a;
                    }
                }
            }
            None => {
                let t = p.remove(0);
                done.push(t);
            }
        }
    }
    make_primitive(&mut done);
    IPoly {
        terms: done,
        sugar: f.sugar,
    }
}

fn spoly(f: &IPoly, g: &IPoly, pair: &Pair, order: &MonomialOrder) -> IPoly {
    let mf = sub_exps(&pair.lcm, f.lm());
    let mg = sub_exps(&pair.lcm, g.lm());
    let gc = f.lc().gcd(g.lc());
    let a = g.lc() / &gc;
    let b = f.lc() / &gc;
    let fs: Vec<Term> = f.terms.iter().map(|(e, c)| (add_exps(e, &mf), c.clone())).collect();
    let mut terms = lin_comb(&a, &fs, &b, &mg, &g.terms, order);
    make_primitive(&mut terms);
    IPoly {
        terms,
        sugar: pair.sugar,
    }
}

/// Gebauer–Möller installation of the new element `h` (an index into `polys`).
fn update(polys: &[IPoly], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize, order: &MonomialOrder) {
    let hp = &polys[h];
    let hlm = hp.lm().to_vec();
    let make = |g: usize| {
        let gp = &polys[g];
        let l = lcm(&hlm, gp.lm());
        let sh = hp.sugar + order.sugar_degree(&sub_exps(&l, &hlm));
        let sg = gp.sugar + order.sugar_degree(&sub_exps(&l, gp.lm()));
        Pair {
            i: h,
            j: g,
            lcm: l,
            sugar: sh.max(sg),
        }
    };
    let mut c: Vec<Pair> = active.iter().map(|&g| make(g)).collect();
    let mut d: Vec<Pair> = Vec::new();
    while let Some(p) = c.pop() {
        let keep = coprime(&hlm, polys[p.j].lm())
            || !c.iter().chain(d.iter()).any(|q| divides(&q.lcm, &p.lcm));
        if keep {
            d.push(p);
        }
    }
    let e: Vec<Pair> = d
        .into_iter()
        .filter(|p| !coprime(&hlm, polys[p.j].lm()))
        .collect();
    pairs.retain(|p| {
        !(divides(&hlm, &p.lcm)
            && lcm(polys[p.i].lm(), &hlm) != p.lcm
            && lcm(&hlm, polys[p.j].lm()) != p.lcm)
    });
    pairs.extend(e);
    active.retain(|&g| !divides(&hlm, polys[g].lm()));
    active.push(h);
}

/// Rational normal form of `p` modulo a reduced basis.
pub(crate) fn normal_form_rational(p: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let ring = p.ring().clone();
    let leads: Vec<(Monomial, Rational)> = basis
        .iter()
        .map(|g| {
            let (m, c) = g.leading_term(order).expect("nonzero basis element");
            (m.clone(), c.clone())
        })
        .collect();
    let mut rem = p.clone();
    let mut out = Polynomial::zero(&ring);
    while let Some((m, c)) = rem.leading_term(order) {
        let (m, c) = (m.clone(), c.clone());
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(k) => {
                let q = leads[k].0.quotient_of(&m).unwrap();
                let coef = &c / &leads[k].1;
                rem = &rem - &basis[k].mul_monomial(&q, &coef);
            }
            None => {
                let t = Polynomial::monomial(&ring, m, c);
                rem = &rem - &t;
                out = &out + &t;
            }
        }
    }
    out
}
