//! `catalog verify`: invariant checks over a catalog and seeded random germs.

use serde::{Deserialize, Serialize};

use germlab_core::double_point::{
    check_degree_formula, classify_components, compute_lambda, extract_branches, image_branch_data,
    lambda_routes_agree, milnor_number_of_lambda, predict_counts,
};
use germlab_core::equisingularity::{
    cohen_macaulay_test, default_equimultiplicity_samples, equimultiplicity_verdict, fiber_condition,
    fiber_length,
};
use germlab_core::germ::{
    corank_at_origin, infer_quasihomogeneous_type, Catalog, Corank1Form, MapGerm, QuasihomogeneousType,
};
use germlab_core::ideal::{ideal_equal, Ideal};
use germlab_core::presentation::{compose_with, fitting_ladder, graph_image_ideal, presentation_matrix};
use germlab_core::sampling::{random_quasihomogeneous_germs, seeded_perturbations};
use germlab_core::Error;

use crate::report::{analyze_germ, analyze_unfolding, AnalysisReport};

pub const DEFAULT_SEED: u64 = 0x6e71_2024;
pub const DEFAULT_RANDOM_GERMS: usize = 50;
pub const DEFAULT_RANDOM_UNFOLDINGS: usize = 25;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub name: String,
    pub checked: usize,
    /// One entry per failing germ or family, "name: detail".
    pub failures: Vec<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub seed: u64,
    pub random_germs: usize,
    pub random_unfoldings: usize,
    pub properties: Vec<PropertyResult>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyResult::passed)
    }

    pub fn render_human(&self) -> String {
        let mut out = format!(
            "seed {:#x}, {} random germs, {} random unfoldings\n",
            self.seed, self.random_germs, self.random_unfoldings
        );
        for p in &self.properties {
            let tag = if p.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {} ({} checked)\n", p.name, p.checked));
            for f in &p.failures {
                out.push_str(&format!("    {f}\n"));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub random_germs: usize,
    pub random_unfoldings: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: DEFAULT_SEED,
            random_germs: DEFAULT_RANDOM_GERMS,
            random_unfoldings: DEFAULT_RANDOM_UNFOLDINGS,
        }
    }
}

struct Property {
    result: PropertyResult,
}

impl Property {
    fn new(name: &str) -> Self {
        Property {
            result: PropertyResult {
                name: name.to_string(),
                checked: 0,
                failures: Vec::new(),
            },
        }
    }

    /// `Ok(None)` passes; `Ok(Some(detail))` and `Err` fail.
    fn check(&mut self, item: &str, f: impl FnOnce() -> Result<Option<String>, Error>) {
        self.result.checked += 1;
        match f() {
            Ok(None) => {}
            Ok(Some(detail)) => self.result.failures.push(format!("{item}: {detail}")),
            Err(e) => self.result.failures.push(format!("{item}: {} {e}", e.code())),
        }
    }
}

fn fail_unless(ok: bool, detail: impl FnOnce() -> String) -> Option<String> {
    if ok {
        None
    } else {
        Some(detail())
    }
}

#[derive(Clone)]
struct QhGerm {
    name: String,
    germ: MapGerm,
    form: Corank1Form,
    ty: QuasihomogeneousType,
}

/// Corank-1 catalog germs with a quasihomogeneous type and reduced λ.
fn qh_fd_catalog(cat: &Catalog) -> Vec<QhGerm> {
    cat.germs()
        .filter(|g| corank_at_origin(g) == 1)
        .filter_map(|g| {
            let form = g.corank1_form().ok()?;
            let ty = infer_quasihomogeneous_type(&form).ok()?;
            compute_lambda(&form).ok().filter(|c| c.reduced)?;
            Some(QhGerm {
                name: g.name().to_string(),
                germ: g.clone(),
                form,
                ty,
            })
        })
        .collect()
}

fn round_trips(r: &AnalysisReport) -> Result<Option<String>, Error> {
    let back = serde_json::to_string(r).and_then(|text| serde_json::from_str::<AnalysisReport>(&text));
    Ok(match back {
        Ok(back) => fail_unless(&back == r, || "JSON report does not re-parse to the same value".into()),
        Err(e) => Some(format!("json: {e}")),
    })
}

pub fn verify_catalog(cat: &Catalog, opts: &VerifyOptions) -> VerifySummary {
    let catalog_qh = qh_fd_catalog(cat);
    let mut qh = catalog_qh.clone();
    for (i, s) in random_quasihomogeneous_germs(opts.seed, opts.random_germs).into_iter().enumerate() {
        let name = format!("random#{i}");
        qh.push(QhGerm {
            germ: s.germ.to_germ(name.as_str()),
            name,
            form: s.germ,
            ty: s.ty,
        });
    }
    let corank1: Vec<(String, Corank1Form, MapGerm)> = cat
        .germs()
        .filter(|g| corank_at_origin(g) <= 1)
        .filter_map(|g| Some((g.name().to_string(), g.corank1_form().ok()?, g.clone())))
        .collect();

    let mut props = Vec::new();

    let mut p = Property::new("degree formula");
    for g in &qh {
        p.check(&g.name, || {
            let c = compute_lambda(&g.form)?;
            Ok(fail_unless(check_degree_formula(&c, &g.ty), || {
                format!("weighted degree {:?} for type {}", c.weighted_degree, g.ty)
            }))
        });
    }
    props.push(p.result);

    let mut p = Property::new("milnor number (d-1)(d-b)/b");
    for g in &qh {
        p.check(&g.name, || {
            let c = compute_lambda(&g.form)?;
            let mu = milnor_number_of_lambda(&c)? as i64;
            let (d, b) = (g.ty.d, g.ty.b as i64);
            let expected = (d - 1) * (d - b) / b;
            Ok(fail_unless(mu == expected, || format!("μ = {mu}, expected {expected}")))
        });
    }
    props.push(p.result);

    let mut p = Property::new("predicted counts match the components");
    for g in &qh {
        p.check(&g.name, || {
            let c = compute_lambda(&g.form)?;
            let pred = predict_counts(&g.ty)?;
            let cl = classify_components(&g.form, &extract_branches(&c)?)?;
            let actual = (cl.identification_count, cl.fold_count);
            let predicted = (pred.identification_count, pred.fold_count);
            Ok(fail_unless(actual == predicted, || {
                format!("case {} predicts {predicted:?}, found {actual:?}", pred.case)
            }))
        });
    }
    props.push(p.result);

    let mut p = Property::new("resultant and elimination routes agree");
    for (name, form) in corank1
        .iter()
        .map(|(n, f, _)| (n, f))
        .chain(qh.iter().skip(catalog_qh.len()).map(|g| (&g.name, &g.form)))
    {
        p.check(name, || Ok(fail_unless(lambda_routes_agree(form)?, || "varieties differ".into())));
    }
    props.push(p.result);

    let mut p = Property::new("image equation vanishes on f and matches elimination");
    for (name, form, germ) in &corank1 {
        p.check(name, || {
            let m = presentation_matrix(form)?;
            let det = m.determinant();
            if !compose_with(&det, germ)?.is_zero() {
                return Ok(Some("det(M) o f != 0".into()));
            }
            let graph = graph_image_ideal(germ)?;
            let f0 = Ideal::new(graph.ring(), vec![det])?;
            Ok(fail_unless(ideal_equal(&graph, &f0)?, || "F0 differs from the graph image".into()))
        });
    }
    props.push(p.result);

    let mut p = Property::new("fitting ladder F0 ⊆ F1 ⊆ F2");
    for (name, form, _) in &corank1 {
        p.check(name, || {
            let l = fitting_ladder(&presentation_matrix(form)?)?;
            Ok(fail_unless(l.f1.contains_ideal(&l.f0)? && l.f2.contains_ideal(&l.f1)?, || {
                "containment fails".into()
            }))
        });
    }
    props.push(p.result);

    let mut p = Property::new("image branches are smooth when b >= 2");
    for g in catalog_qh.iter().filter(|g| g.ty.b >= 2) {
        p.check(&g.name, || {
            let c = compute_lambda(&g.form)?;
            let img = image_branch_data(&g.form, &extract_branches(&c)?)?;
            let orders: Vec<u32> = img.branches.iter().map(|b| b.order).collect();
            Ok(fail_unless(orders.iter().all(|&o| o == 1), || format!("orders {orders:?}")))
        });
    }
    props.push(p.result);

    let bases: Vec<(MapGerm, QuasihomogeneousType)> = catalog_qh.iter().map(|g| (g.germ.clone(), g.ty)).collect();
    let perturbations = seeded_perturbations(&bases, opts.seed, opts.random_unfoldings);
    let mut p = Property::new("Cohen-Macaulay routes agree");
    for u in cat.unfoldings().chain(perturbations.iter()) {
        if !fiber_condition(u).is_ok_and(|fc| fc.holds) {
            continue;
        }
        p.check(u.name(), || {
            let cm = cohen_macaulay_test(u)?;
            Ok(fail_unless(cm.length_route == cm.quotient_route, || {
                format!("ℓ_1 = {}, e = {}, quotient route {}", cm.l1, cm.e, cm.quotient_route)
            }))
        });
    }
    props.push(p.result);

    let mut p = Property::new("non-decreasing weights give equimultiple families");
    let samples = default_equimultiplicity_samples();
    for u in &perturbations {
        p.check(u.name(), || {
            let v = equimultiplicity_verdict(u, &samples)?;
            let k = fiber_length(u.base())?;
            let off: Vec<String> = v
                .sample_lengths
                .iter()
                .filter(|(_, l)| *l != k)
                .map(|(t, l)| format!("length {l} at t = {t}"))
                .collect();
            Ok(fail_unless(v.equimultiple && off.is_empty(), || {
                format!("verdict {}, base length {k}, {}", v.equimultiple, off.join(", "))
            }))
        });
    }
    props.push(p.result);

    let mut p = Property::new("reports round-trip through JSON");
    for g in cat.germs() {
        p.check(g.name(), || round_trips(&analyze_germ(g)));
    }
    for u in cat.unfoldings() {
        p.check(u.name(), || {
            round_trips(&analyze_unfolding(u, &samples, germlab_core::equisingularity::DEFAULT_DEPTH))
        });
    }
    props.push(p.result);

    VerifySummary {
        seed: opts.seed,
        random_germs: opts.random_germs,
        random_unfoldings: opts.random_unfoldings,
        properties: props,
    }
}
