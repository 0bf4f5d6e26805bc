mod common;

use germlab_core::algebra::rat;
use germlab_core::equisingularity::{
    cohen_macaulay_test, default_mu_samples, equimultiplicity_verdict, fiber_condition, hilbert_samuel_t,
    image_multiplicity, mu_constancy, multiplicity_via_length, pullback_ideal, theorem_a_checker, theorem_b_checker,
    whitney_check, EquisingularityError, MuCertificate, WhitneyStatus, DEFAULT_DEPTH,
};
use germlab_core::germ::{
    bundled_catalog, corank_at_origin, infer_quasihomogeneous_type, MapGerm, QuasihomogeneousType, Unfolding,
};
use germlab_core::presentation::presentation_matrix;
use germlab_core::sampling::seeded_perturbations;

use common::SEED;

fn qh_bases() -> Vec<(MapGerm, QuasihomogeneousType)> {
    bundled_catalog()
        .germs()
        .filter(|g| corank_at_origin(g) == 1)
        .filter_map(|g| {
            let c = g.corank1_form().ok()?;
            let t = infer_quasihomogeneous_type(&c).ok()?;
            germlab_core::double_point::compute_lambda(&c).ok().filter(|l| l.reduced)?;
            Some((g.clone(), t))
        })
        .collect()
}

#[test]
fn pullback_of_corank2_family() {
    let cat = bundled_catalog();
    let f = cat.unfolding("corank2-remark").unwrap();
    let i = pullback_ideal(f).unwrap();
    assert_eq!(i.ideal.generators().len(), 3);
    assert!(!f.is_prenormal());
}

#[test]
fn trivial_unfoldings_have_e_equal_l1_equal_k() {
    for (g, _) in qh_bases() {
        let triv = Unfolding::trivial(format!("{}-triv", g.name()), &g);
        let seq = hilbert_samuel_t(&triv, DEFAULT_DEPTH).unwrap();
        let k = presentation_matrix(&g.corank1_form().unwrap()).unwrap().k;
        assert_eq!(seq.e, seq.lengths[0], "{}", g.name());
        assert_eq!(seq.e, k, "{}", g.name());
        assert_eq!(multiplicity_via_length(&triv).unwrap().value, k);
        let expected: Vec<usize> = (1..=DEFAULT_DEPTH).map(|s| s * k).collect();
        assert_eq!(seq.lengths, expected);
    }
}

#[test]
fn route_agreement_and_theorem_b_property() {
    let us = seeded_perturbations(&qh_bases(), SEED ^ 0xb, 25);
    assert_eq!(us.len(), 25);
    for u in &us {
        assert!(fiber_condition(u).unwrap().holds, "{}", u.name());
        let cm = cohen_macaulay_test(u).unwrap();
        assert_eq!(cm.length_route, cm.quotient_route, "{}", u.name());
        assert!(cm.cohen_macaulay, "{}", u.name());
    }
}

#[test]
fn catalog_unfolding_verdicts() {
    let cat = bundled_catalog();
    let samples = default_mu_samples();
    let y7 = cat.unfolding("C5-y7").unwrap();
    assert!(equimultiplicity_verdict(y7, &[rat(1), rat(-1)]).unwrap().equimultiple);
    let r = theorem_b_checker(y7, &samples).unwrap();
    assert!(r.confirmed);
    let r = theorem_a_checker(y7, &samples).unwrap();
    assert!(r.confirmed, "{r:?}");
    let mixed = cat.unfolding("C5-x3y2").unwrap();
    assert!(theorem_b_checker(mixed, &samples).unwrap().confirmed);
    let s3 = cat.unfolding("S3-xy3").unwrap();
    assert!(theorem_b_checker(s3, &samples).unwrap().confirmed);
}

#[test]
fn low_order_perturbations() {
    let cat = bundled_catalog();
    let samples = default_mu_samples();
    let low = cat.unfolding("C5-low").unwrap();
    let r = theorem_b_checker(low, &samples).unwrap();
    assert!(!r.confirmed);
    assert_eq!(r.failed_hypotheses(), vec!["non-decreasing weights"]);
    // t*x*y smooths the double point curve for t != 0
    let lowxy = cat.unfolding("C5-lowxy").unwrap();
    let mu = mu_constancy(lowxy, &samples).unwrap();
    assert!(!mu.constant);
    assert!(matches!(mu.certificate, MuCertificate::Witness(_)));
    assert_eq!(mu.values[0].1, Some(6));
    assert_eq!(whitney_check(lowxy, &samples).unwrap().status, WhitneyStatus::NotEquisingular);
}

#[test]
fn non_cohen_macaulay_family() {
    let cat = bundled_catalog();
    let f = cat.unfolding("crosscap-nonCM").unwrap();
    let seq = hilbert_samuel_t(f, DEFAULT_DEPTH).unwrap();
    assert_eq!(seq.lengths, vec![2, 3, 4, 5, 6, 7]);
    let cm = cohen_macaulay_test(f).unwrap();
    assert!(!cm.cohen_macaulay && !cm.quotient_route && !cm.quotient_route_global);
    let v = equimultiplicity_verdict(f, &[rat(1), rat(-1)]).unwrap();
    assert!(!v.equimultiple);
    assert!(v.sample_lengths.iter().all(|(_, l)| *l == 1));
}

#[test]
fn fiber_condition_counter_family() {
    let cat = bundled_catalog();
    let f = cat.unfolding("crosscap-split").unwrap();
    let fc = fiber_condition(f).unwrap();
    assert!(!fc.holds);
    // (x, y) = (0, t) lies in the fiber over the origin
    let t = rat(3);
    let g = germlab_core::germ::specialize(f, &t);
    let zero = rat(0);
    assert!(g.components().iter().all(|c| c.evaluate_var(0, &zero).evaluate_var(1, &t).is_zero()));
    assert_eq!(cohen_macaulay_test(f).unwrap_err(), EquisingularityError::FiberConditionFailed);
}

#[test]
fn corank2_caveats() {
    let cat = bundled_catalog();
    let f = cat.unfolding("corank2-remark").unwrap();
    assert_eq!(equimultiplicity_verdict(f, &[rat(1)]).unwrap_err(), EquisingularityError::CorankTooHigh);
    assert_eq!(mu_constancy(f, &[rat(1)]).unwrap_err(), EquisingularityError::CorankTooHigh);
    let r = theorem_a_checker(f, &[rat(1)]).unwrap();
    assert_eq!(r.failed_hypotheses(), vec!["corank 1"]);
    assert_eq!(image_multiplicity(f.base()).unwrap(), 4);
    assert_eq!(multiplicity_via_length(f).unwrap().value, 3);
}

#[test]
fn whitney_on_trivial_and_b1() {
    let cat = bundled_catalog();
    let samples = default_mu_samples();
    let w = whitney_check(cat.unfolding("crosscap-triv").unwrap(), &samples).unwrap();
    assert_eq!(w.status, WhitneyStatus::Equisingular);
    let y7 = cat.unfolding("C5-y7").unwrap();
    let w = whitney_check(y7, &samples).unwrap();
    assert_eq!(w.status, WhitneyStatus::Equisingular);
    assert!(w.m_values[1].1.is_none());
}
