mod common;

use std::sync::Arc;

use germlab_core::algebra::univariate::UniPoly;
use germlab_core::algebra::{
    determinant, parse_polynomial, rat, ratio, resultant, Monomial, MonomialOrder, Polynomial, Rational, Ring,
};
use germlab_core::double_point::{check_degree_formula, compute_lambda, milnor_number_of_lambda};
use germlab_core::germ::{infer_quasihomogeneous_type, source_ring};
use germlab_core::ideal::{groebner, ideal_equal, ideal_quotient, intersect, membership, normal_form, Ideal};
use germlab_core::sampling::random_quasihomogeneous_germs;
use proptest::prelude::*;

use common::milnor_formula;

fn ring2() -> Arc<Ring> {
    source_ring()
}

fn poly_strategy(ring: Arc<Ring>, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    let n = ring.len();
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, n), -5i64..=5, 1i64..=3),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        Polynomial::from_terms(
            &ring,
            terms.into_iter().map(|(e, a, b)| (Monomial::new(e), ratio(a, b))),
        )
    })
}

fn small_poly() -> impl Strategy<Value = Polynomial> {
    poly_strategy(ring2(), 4, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn display_parse_round_trip(a in small_poly()) {
        let text = a.to_string();
        prop_assert_eq!(parse_polynomial(&text, &ring2()).unwrap(), a);
    }

    #[test]
    fn exact_division(a in small_poly(), b in small_poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).divide_exact(&b).unwrap(), a);
    }

    #[test]
    fn resultant_is_in_the_ideal(a in small_poly(), b in small_poly()) {
        prop_assume!(a.degree_in(1).unwrap_or(0) + b.degree_in(1).unwrap_or(0) > 0);
        let r = resultant(&a, &b, "y").unwrap().to_ring(&ring2()).unwrap();
        let i = Ideal::new(&ring2(), vec![a, b]).unwrap();
        prop_assert!(membership(&r, &i).unwrap());
    }

    #[test]
    fn resultant_is_multiplicative(a in poly_strategy(ring2(), 3, 2), c in poly_strategy(ring2(), 3, 2), b in poly_strategy(ring2(), 3, 2)) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        prop_assume!(a.degree_in(1).unwrap() > 0 && b.degree_in(1).unwrap() > 0 && c.degree_in(1).unwrap() > 0);
        let lhs = resultant(&(&a * &c), &b, "y").unwrap();
        let rhs = &resultant(&a, &b, "y").unwrap() * &resultant(&c, &b, "y").unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn determinant_is_multiplicative(a in prop::collection::vec(-4i64..=4, 9), b in prop::collection::vec(-4i64..=4, 9)) {
        let r = ring2();
        let m = |v: &[i64]| -> Vec<Vec<Polynomial>> {
            v.chunks(3).map(|row| row.iter().map(|&c| Polynomial::constant(&r, rat(c))).collect()).collect()
        };
        let (ma, mb) = (m(&a), m(&b));
        let prod: Vec<Vec<Polynomial>> = (0..3)
            .map(|i| (0..3).map(|j| (0..3).fold(Polynomial::zero(&r), |acc, k| &acc + &(&ma[i][k] * &mb[k][j]))).collect())
            .collect();
        prop_assert_eq!(determinant(&prod, &r), &determinant(&ma, &r) * &determinant(&mb, &r));
    }

    #[test]
    fn groebner_basis_generates_the_ideal(gens in prop::collection::vec(poly_strategy(ring2(), 3, 3), 1..=3)) {
        let i = Ideal::new(&ring2(), gens.clone()).unwrap();
        for order in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
            let gb = groebner(&i, &order).unwrap();
            for g in &gens {
                prop_assert!(normal_form(g, &gb).unwrap().is_zero());
            }
            let back = Ideal::new(&ring2(), gb.polynomials().to_vec()).unwrap();
            prop_assert!(ideal_equal(&back, &i).unwrap());
        }
    }

    #[test]
    fn normal_form_is_idempotent(gens in prop::collection::vec(small_poly(), 1..=2), p in small_poly()) {
        let i = Ideal::new(&ring2(), gens).unwrap();
        let gb = groebner(&i, &MonomialOrder::GrevLex).unwrap();
        let r = normal_form(&p, &gb).unwrap();
        prop_assert_eq!(normal_form(&r, &gb).unwrap(), r.clone());
        prop_assert!(membership(&(&p - &r), &i).unwrap());
    }

    #[test]
    fn intersection_and_quotient(a in poly_strategy(ring2(), 2, 2), b in poly_strategy(ring2(), 2, 2), g in poly_strategy(ring2(), 2, 2)) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !g.is_zero());
        let ia = Ideal::new(&ring2(), vec![a.clone()]).unwrap();
        let ib = Ideal::new(&ring2(), vec![b.clone()]).unwrap();
        let both = intersect(&ia, &ib).unwrap();
        prop_assert!(membership(&(&a * &b), &both).unwrap());
        prop_assert!(ia.contains_ideal(&both).unwrap() && ib.contains_ideal(&both).unwrap());
        let q = ideal_quotient(&ia, &g).unwrap();
        prop_assert!(q.contains_ideal(&ia).unwrap());
        for h in q.generators() {
            prop_assert!(membership(&(h * &g), &ia).unwrap());
        }
    }

    #[test]
    fn rational_roots_are_recovered(roots in prop::collection::btree_set((-6i64..=6, 1i64..=3), 0..=4)) {
        let roots: std::collections::BTreeSet<Rational> = roots.into_iter().map(|(a, b)| ratio(a, b)).collect();
        let mut p = UniPoly::one();
        for r in &roots {
            p = p.mul(&UniPoly::new(vec![-r.clone(), rat(1)]));
        }
        // an irreducible quadratic factor stays behind
        let q = p.mul(&UniPoly::new(vec![rat(2), rat(0), rat(1)]));
        let found = q.rational_roots();
        prop_assert_eq!(found.clone(), roots.into_iter().collect::<Vec<_>>());
        prop_assert_eq!(q.deflate(&found).monic(), UniPoly::new(vec![rat(2), rat(0), rat(1)]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn degree_formula_and_milnor_number(seed in any::<u64>()) {
        for s in random_quasihomogeneous_germs(seed, 1) {
            let c = compute_lambda(&s.germ).unwrap();
            let t = infer_quasihomogeneous_type(&s.germ).unwrap();
            prop_assert!(check_degree_formula(&c, &t), "{} {}", s.germ.p, s.germ.q);
            let mu = milnor_number_of_lambda(&c).unwrap() as i64;
            prop_assert_eq!(Some(mu), milnor_formula(t.d, t.b as i64));
            if c.lambda.divisible_by_var(0) {
                let rest = c.lambda.divide_exact(&Polynomial::var_index(&ring2(), 0)).unwrap();
                prop_assert!(!rest.divisible_by_var(0));
            }
        }
    }
}
