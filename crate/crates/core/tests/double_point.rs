mod common;

use germlab_core::algebra::{parse_polynomial, rat, Polynomial};
use germlab_core::double_point::{
    classify_components, compute_lambda, divided_differences, extract_branches, image_branch_data,
    lambda_routes_agree, lifted_ring, milnor_number_of_lambda, pair_identifications, predict_counts, Branch,
    DoublePointError, LambdaForm, PredictionCase,
};
use germlab_core::germ::{bundled_catalog, infer_quasihomogeneous_type, Corank1Form, QuasihomogeneousType};
use germlab_core::sampling::random_quasihomogeneous_germs;

use common::SEED;

fn xy(s: &str) -> Polynomial {
    parse_polynomial(s, &germlab_core::germ::source_ring()).unwrap()
}

fn qh_fd_germs() -> Vec<(String, Corank1Form)> {
    let mut out: Vec<(String, Corank1Form)> = bundled_catalog()
        .germs()
        .filter_map(|g| Some((g.name().to_string(), g.corank1_form().ok()?)))
        .filter(|(_, c)| infer_quasihomogeneous_type(c).is_ok())
        .collect();
    for (i, s) in random_quasihomogeneous_germs(SEED, 50).into_iter().enumerate() {
        out.push((format!("random#{i}"), s.germ));
    }
    out
}

#[test]
fn divided_differences_multiply_back() {
    let r = lifted_ring();
    for (_, f) in qh_fd_germs() {
        let dd = divided_differences(&f);
        let y = Polynomial::var(&r, "y").unwrap();
        let yp = Polynomial::var(&r, "y'").unwrap();
        for (h, quotient) in [(&f.p, &dd.p), (&f.q, &dd.q)] {
            let lifted = h.to_ring(&r).unwrap();
            let mut b = std::collections::HashMap::new();
            b.insert("y".to_string(), yp.clone());
            let swapped = h.substitute(&b, &r).unwrap();
            assert_eq!(quotient * &(&y - &yp), &lifted - &swapped);
        }
    }
}

#[test]
fn crosscap_and_immersion_differences() {
    let dd = divided_differences(&Corank1Form::parse("y^2", "x*y").unwrap());
    assert_eq!(dd.q, Polynomial::var(&lifted_ring(), "x").unwrap());
    let dd = divided_differences(&Corank1Form::parse("y", "x*y^2").unwrap());
    assert!(dd.p.is_constant());
}

#[test]
fn predictor_matches_classification() {
    let mut cases = std::collections::BTreeSet::new();
    for (name, f) in qh_fd_germs() {
        let c = compute_lambda(&f).unwrap();
        if !c.reduced {
            continue;
        }
        let t = infer_quasihomogeneous_type(&f).unwrap();
        let p = predict_counts(&t).unwrap();
        assert_ne!(p.case, PredictionCase::Impossible, "{name}: finitely determined germ of impossible type {t}");
        let s = extract_branches(&c).unwrap();
        let cl = classify_components(&f, &s).unwrap();
        assert_eq!(
            (cl.identification_count, cl.fold_count),
            (p.identification_count, p.fold_count),
            "{name}: {t}"
        );
        assert_eq!(Some(c.form), p.form, "{name}");
        assert_eq!(cl.identification_count % 2, 0, "{name}");
        assert!(cl.fold_count <= 1);
        let stable = p.case == PredictionCase::Stable;
        assert_eq!(c.form == LambdaForm::III, stable, "{name}");
        assert_eq!(milnor_number_of_lambda(&c).unwrap() == 0, stable, "{name}");
        let paired: usize = 2 * cl.pairing.pairs.len() + cl.pairing.orbits.iter().map(|o| o.degree).sum::<usize>();
        assert_eq!(paired, cl.identification_count, "{name}: pairing is not perfect");
        cases.insert(p.case.to_string());
    }
    assert!(cases.len() >= 4, "cases covered: {cases:?}");
}

#[test]
fn worked_examples_of_lambda() {
    let c = compute_lambda(&Corank1Form::parse("y^2", "x*y^3 - x^5*y").unwrap()).unwrap();
    assert_eq!(c.lambda, xy("x*y^2 - x^5"));
    assert_eq!(c.form, LambdaForm::II);
    // y^4: the sheets y' = ωy and y' = ω²y meet over x = -y^3, so λ is a square
    let f = Corank1Form::parse("y^3", "y^4 + x*y").unwrap();
    let c = compute_lambda(&f).unwrap();
    assert_eq!(c.lambda, xy("(y^3 + x)^2"));
    assert!(!c.reduced);
    assert!(c.germ_type.is_none());
    assert!(lambda_routes_agree(&f).unwrap());
    let f = Corank1Form::parse("y^3", "y^5 + x*y").unwrap();
    let c = compute_lambda(&f).unwrap();
    assert_eq!(c.lambda, xy("y^8 + x*y^4 + x^2"));
    assert!(c.reduced);
    assert!(lambda_routes_agree(&f).unwrap());
}

#[test]
fn spectrum_is_unit_invariant() {
    let f = Corank1Form::parse("y^2", "x*y^3 - x^5*y").unwrap();
    let mut c = compute_lambda(&f).unwrap();
    let a = extract_branches(&c).unwrap();
    c.lambda = c.lambda.scale(&rat(3));
    let b = extract_branches(&c).unwrap();
    assert_eq!(a, b);
}

#[test]
fn crosscap_spectrum_and_images() {
    let f = Corank1Form::parse("y^2", "x*y").unwrap();
    let c = compute_lambda(&f).unwrap();
    let s = extract_branches(&c).unwrap();
    assert!(s.fold_present);
    assert!(s.rational_roots.is_empty());
    assert_eq!(s.spectrum_poly.degree(), Some(0));
    assert!(pair_identifications(&f, &s).unwrap().pairs.is_empty());
    let img = image_branch_data(&f, &s).unwrap();
    assert_eq!(img.multiplicity, 1);
    assert_eq!(img.branches[0].sources, vec![Branch::Fold]);
}

#[test]
fn b_orbit_has_irrational_pairs() {
    let cat = bundled_catalog();
    let f = cat.germ("B-orbit").unwrap().corank1_form().unwrap();
    let c = compute_lambda(&f).unwrap();
    let s = extract_branches(&c).unwrap();
    assert!(s.rational_roots.is_empty());
    assert_eq!(s.irrational_orbits.iter().map(|o| o.1).sum::<usize>(), 2);
    let img = image_branch_data(&f, &s).unwrap();
    assert!(img.branches.iter().all(|b| b.order == 1));
}

#[test]
fn non_fd_inputs() {
    let f = Corank1Form::parse("y^2", "x^2*y").unwrap();
    let c = compute_lambda(&f).unwrap();
    assert!(!c.reduced);
    assert_eq!(extract_branches(&c).unwrap_err(), DoublePointError::NotReduced);
    assert_eq!(
        compute_lambda(&Corank1Form::parse("y^2", "y^4").unwrap()).unwrap_err(),
        DoublePointError::NotFinite
    );
}

#[test]
fn predictor_table() {
    let case = |b, d2, d3| predict_counts(&QuasihomogeneousType::new(b, d2, d3).unwrap()).unwrap();
    let p = case(2, 4, 7);
    assert_eq!((p.case, p.identification_count, p.fold_count), (PredictionCase::C2, 2, 1));
    assert_eq!(case(1, 2, 2).case, PredictionCase::Stable);
    let p = case(3, 6, 9);
    assert_eq!((p.case, p.identification_count, p.fold_count), (PredictionCase::B1, 2, 0));
    let p = case(1, 2, 4);
    assert_eq!((p.case, p.identification_count, p.fold_count), (PredictionCase::B2, 2, 1));
    let p = case(2, 4, 6);
    assert_eq!((p.case, p.identification_count, p.fold_count), (PredictionCase::C1, 2, 0));
    assert_eq!(case(2, 6, 5).case, PredictionCase::Impossible);
    assert_eq!(case(2, 5, 6).case, PredictionCase::Impossible);
    assert_eq!(case(2, 10, 3).case, PredictionCase::Impossible);
}
