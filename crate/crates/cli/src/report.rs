//! Report types shared by the human and JSON renderers.

use serde::{Deserialize, Serialize};

use germlab_core::algebra::{Polynomial, Rational};
use germlab_core::double_point::{
    classify_components, compute_lambda, extract_branches, image_branch_data, lambda_routes_agree,
    milnor_number_of_lambda, predict_counts, ComponentClass, DoublePointCurve,
};
use germlab_core::equisingularity::{
    cohen_macaulay_test_with, equimultiplicity_verdict, fiber_condition, hilbert_samuel_t, image_multiplicity,
    multiplicity_via_length, mu_constancy, theorem_a_checker, theorem_b_checker, whitney_check, TheoremReport,
};
use germlab_core::germ::{corank_at_origin, infer_quasihomogeneous_type, Corank1Form, MapGerm, Unfolding};
use germlab_core::ideal::{ideal_equal, Ideal};
use germlab_core::presentation::{
    cross_cap_number, graph_image_ideal, presentation_matrix, triple_point_number,
};
use germlab_core::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub name: String,
    pub germ: GermReport,
    pub unfolding: Option<UnfoldingReport>,
    /// Hypotheses of the analyses that do not hold, as "scope: hypothesis".
    pub hypothesis_failures: Vec<String>,
    pub errors: Vec<ErrorEntry>,
}

impl AnalysisReport {
    /// 1 on errors, 2 on hypothesis failures, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        if !self.errors.is_empty() {
            1
        } else if !self.hypothesis_failures.is_empty() {
            2
        } else {
            0
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorEntry {
    pub section: String,
    pub code: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeEntry {
    pub b: u32,
    pub d2: u32,
    pub d3: u32,
    pub d: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermReport {
    pub name: String,
    pub components: [String; 3],
    pub corank: u8,
    pub quasihomogeneous_type: Option<TypeEntry>,
    pub double_point: Option<DoublePointReport>,
    pub presentation: Option<PresentationReport>,
    /// `m(f(C^2))` from generic linear projections.
    pub image_multiplicity: Option<usize>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublePointReport {
    pub lambda: String,
    pub form: String,
    pub reduced: bool,
    pub weighted_degree: Option<u64>,
    pub milnor_number: Option<usize>,
    /// Resultant and elimination routes cut the same curve.
    pub routes_agree: bool,
    pub classification: Option<ClassificationReport>,
    pub prediction: Option<PredictionReport>,
    /// `None` exactly when `prediction` is `None`; see `notes`.
    pub prediction_match: Option<bool>,
    pub image: Option<ImageReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchEntry {
    pub branch: String,
    pub class: String,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitEntry {
    pub orbit: String,
    pub degree: usize,
    pub image_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub identification_count: usize,
    pub fold_count: usize,
    pub branches: Vec<BranchEntry>,
    pub pairs: Vec<[String; 2]>,
    pub orbits: Vec<OrbitEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionReport {
    pub case: String,
    pub form: Option<String>,
    pub identification_count: usize,
    pub fold_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageBranchEntry {
    pub sources: Vec<String>,
    pub parametrization: [String; 3],
    pub order: u32,
    pub smooth: bool,
    pub count: usize,
    pub equations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageReport {
    pub branches: Vec<ImageBranchEntry>,
    /// `m(f(D(f)))`.
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationReport {
    pub k: usize,
    pub monic_coordinate: String,
    pub matrix: Vec<Vec<String>>,
    pub image_equation: String,
    /// The determinant generates the elimination ideal of the graph.
    pub image_equation_agrees: bool,
    pub triple_points: Option<usize>,
    pub cross_caps: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthSequenceReport {
    pub lengths: Vec<usize>,
    pub differences: Vec<i64>,
    pub e: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmReport {
    pub l1: usize,
    pub e: usize,
    pub length_route: bool,
    pub quotient_route_global: bool,
    pub quotient_route: bool,
    pub cohen_macaulay: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleValue<T> {
    pub t: String,
    pub value: T,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquimultiplicityReport {
    pub equimultiple: bool,
    pub sample_lengths: Vec<SampleValue<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuReport {
    /// `μ(D(f_t))` at `t = 0` and the samples; `None` when `D(f_t)` misses the origin.
    pub values: Vec<SampleValue<Option<usize>>>,
    pub constant: bool,
    pub certificate: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhitneyReport {
    pub status: String,
    pub reason: String,
    pub m_values: Vec<SampleValue<Option<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisEntry {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremEntry {
    pub hypotheses: Vec<HypothesisEntry>,
    pub confirmed: bool,
    pub conclusions: Vec<String>,
    pub certificates: Vec<String>,
}

impl From<&TheoremReport> for TheoremEntry {
    fn from(r: &TheoremReport) -> Self {
        TheoremEntry {
            hypotheses: r
                .hypotheses
                .iter()
                .map(|h| HypothesisEntry {
                    name: h.name.clone(),
                    holds: h.holds,
                    detail: h.detail.clone(),
                })
                .collect(),
            confirmed: r.confirmed,
            conclusions: r.conclusions.clone(),
            certificates: r.certificates.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnfoldingReport {
    pub name: String,
    pub base: String,
    pub components: [String; 3],
    pub prenormal: bool,
    pub samples: Vec<String>,
    pub depth: usize,
    pub fiber_condition: bool,
    pub fiber_condition_reason: Option<String>,
    /// Length of `O_{n+1} / (I + <t>)`.
    pub length: Option<usize>,
    pub hilbert_samuel: Option<LengthSequenceReport>,
    pub cm: Option<CmReport>,
    /// Set when length and `e` are not the multiplicity of the image (corank 2).
    pub corank_caveat: bool,
    pub equimultiplicity: Option<EquimultiplicityReport>,
    pub mu: Option<MuReport>,
    pub whitney: Option<WhitneyReport>,
    pub theorem_a: Option<TheoremEntry>,
    pub theorem_b: Option<TheoremEntry>,
    pub notes: Vec<String>,
}

struct Collector {
    errors: Vec<ErrorEntry>,
}

impl Collector {
    fn run<T>(&mut self, section: &str, f: impl FnOnce() -> Result<T, Error>) -> Option<T> {
        match f() {
            Ok(v) => Some(v),
            Err(e) => {
                self.errors.push(ErrorEntry {
                    section: section.to_string(),
                    code: e.code(),
                    message: e.to_string(),
                });
                None
            }
        }
    }
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn triple(ps: &[Polynomial; 3]) -> [String; 3] {
    [ps[0].to_string(), ps[1].to_string(), ps[2].to_string()]
}

fn samples_of<T: Clone>(values: &[(Rational, T)]) -> Vec<SampleValue<T>> {
    values
        .iter()
        .map(|(t, v)| SampleValue {
            t: t.to_string(),
            value: v.clone(),
        })
        .collect()
}

fn classification(
    f: &Corank1Form,
    curve: &DoublePointCurve,
    out: &mut DoublePointReport,
) -> Result<(), Error> {
    let Some(ty) = curve.germ_type else {
        return Ok(());
    };
    let spectrum = extract_branches(curve)?;
    let cl = classify_components(f, &spectrum)?;
    out.classification = Some(ClassificationReport {
        identification_count: cl.identification_count,
        fold_count: cl.fold_count,
        branches: cl
            .branches
            .iter()
            .map(|(b, class, degree)| BranchEntry {
                branch: b.label(ty.b),
                class: match class {
                    ComponentClass::Identification => "identification".into(),
                    ComponentClass::Fold => "fold".into(),
                },
                degree: *degree,
            })
            .collect(),
        pairs: cl.pairing.pairs.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
        orbits: cl
            .pairing
            .orbits
            .iter()
            .map(|o| OrbitEntry {
                orbit: o.orbit.to_string(),
                degree: o.degree,
                image_count: o.image_count,
            })
            .collect(),
    });
    let p = predict_counts(&ty)?;
    out.prediction_match = Some(
        (p.identification_count, p.fold_count) == (cl.identification_count, cl.fold_count)
            && p.form.is_none_or(|form| form == curve.form),
    );
    out.prediction = Some(PredictionReport {
        case: p.case.to_string(),
        form: p.form.map(|f| f.to_string()),
        identification_count: p.identification_count,
        fold_count: p.fold_count,
    });
    let img = image_branch_data(f, &spectrum)?;
    out.image = Some(ImageReport {
        branches: img
            .branches
            .iter()
            .map(|b| ImageBranchEntry {
                sources: b.sources.iter().map(|s| s.label(ty.b)).collect(),
                parametrization: triple(&b.parametrization),
                order: b.order,
                smooth: b.smooth,
                count: b.count,
                equations: strings(b.equations.generators()),
            })
            .collect(),
        multiplicity: img.multiplicity,
    });
    Ok(())
}

fn presentation(f: &Corank1Form, g: &MapGerm, fd: bool) -> Result<PresentationReport, Error> {
    let m = presentation_matrix(f)?;
    let det = m.determinant();
    let graph = graph_image_ideal(g)?;
    let agrees = ideal_equal(&graph, &Ideal::new(graph.ring(), vec![det.clone()])?)?;
    let (triple_points, cross_caps) = if fd {
        (Some(triple_point_number(f)?), Some(cross_cap_number(f)?))
    } else {
        (None, None)
    };
    Ok(PresentationReport {
        k: m.k,
        monic_coordinate: m.monic_coordinate.to_string(),
        matrix: m.entries.iter().map(|row| strings(row)).collect(),
        image_equation: det.to_string(),
        image_equation_agrees: agrees,
        triple_points,
        cross_caps,
    })
}

fn germ_report(g: &MapGerm, c: &mut Collector, failures: &mut Vec<String>) -> GermReport {
    let corank = corank_at_origin(g);
    let mut report = GermReport {
        name: g.name().to_string(),
        components: triple(g.components()),
        corank,
        quasihomogeneous_type: None,
        double_point: None,
        presentation: None,
        image_multiplicity: c.run("image multiplicity", || Ok(image_multiplicity(g)?)),
        notes: Vec::new(),
    };
    if corank >= 2 {
        failures.push("analysis: corank 1".into());
        report
            .notes
            .push("corank 2: double point curve and presentation need a corank-1 germ".into());
        return report;
    }
    let Some(f) = c.run("germ", || Ok(g.corank1_form()?)) else {
        return report;
    };
    match infer_quasihomogeneous_type(&f) {
        Ok(t) => {
            report.quasihomogeneous_type = Some(TypeEntry {
                b: t.b,
                d2: t.d2,
                d3: t.d3,
                d: t.d,
            })
        }
        Err(e) => report.notes.push(format!("not quasihomogeneous: {e}")),
    }
    let curve = c.run("double point", || Ok(compute_lambda(&f)?));
    let fd = curve.as_ref().is_some_and(|cv| cv.reduced);
    if let Some(curve) = curve {
        if !curve.reduced {
            failures.push("analysis: finitely determined".into());
            report.notes.push("λ is not reduced: the germ is not finitely determined".into());
        }
        let mut dp = DoublePointReport {
            lambda: curve.lambda.to_string(),
            form: curve.form.to_string(),
            reduced: curve.reduced,
            weighted_degree: curve.weighted_degree,
            milnor_number: None,
            routes_agree: c.run("double point", || Ok(lambda_routes_agree(&f)?)).unwrap_or(false),
            classification: None,
            prediction: None,
            prediction_match: None,
            image: None,
        };
        if curve.reduced {
            dp.milnor_number = c.run("double point", || Ok(milnor_number_of_lambda(&curve)?));
            if curve.germ_type.is_some() {
                c.run("double point", || classification(&f, &curve, &mut dp));
            } else {
                report.notes.push("no quasihomogeneous type: classification and prediction skipped".into());
            }
        } else {
            report.notes.push("classification and prediction need a reduced λ".into());
        }
        report.double_point = Some(dp);
    }
    report.presentation = c.run("presentation", || presentation(&f, g, fd));
    report
}

/// Full report for a germ.
pub fn analyze_germ(g: &MapGerm) -> AnalysisReport {
    let mut c = Collector { errors: Vec::new() };
    let mut failures = Vec::new();
    let germ = germ_report(g, &mut c, &mut failures);
    AnalysisReport {
        name: g.name().to_string(),
        germ,
        unfolding: None,
        hypothesis_failures: failures,
        errors: c.errors,
    }
}

/// Full report for a one-parameter unfolding, with its base germ.
pub fn analyze_unfolding(f: &Unfolding, samples: &[Rational], depth: usize) -> AnalysisReport {
    let mut c = Collector { errors: Vec::new() };
    let mut failures = Vec::new();
    let germ = germ_report(f.base(), &mut c, &mut failures);
    let corank1 = germ.corank <= 1 && f.is_prenormal();
    let mut u = UnfoldingReport {
        name: f.name().to_string(),
        base: f.base().name().to_string(),
        components: triple(f.components()),
        prenormal: f.is_prenormal(),
        samples: samples.iter().map(ToString::to_string).collect(),
        depth,
        fiber_condition: false,
        fiber_condition_reason: None,
        length: None,
        hilbert_samuel: None,
        cm: None,
        corank_caveat: false,
        equimultiplicity: None,
        mu: None,
        whitney: None,
        theorem_a: None,
        theorem_b: None,
        notes: Vec::new(),
    };
    if let Some(fc) = c.run("fiber condition", || Ok(fiber_condition(f)?)) {
        u.fiber_condition = fc.holds;
        u.fiber_condition_reason = fc.reason;
    }
    if u.fiber_condition {
        if let Some(l) = c.run("length", || Ok(multiplicity_via_length(f)?)) {
            u.length = Some(l.value);
            u.corank_caveat = l.corank_caveat;
        }
        u.hilbert_samuel = c.run("hilbert-samuel", || {
            let s = hilbert_samuel_t(f, depth)?;
            Ok(LengthSequenceReport {
                lengths: s.lengths,
                differences: s.differences,
                e: s.e,
            })
        });
        u.cm = c.run("cohen-macaulay", || {
            let cm = cohen_macaulay_test_with(f, depth)?;
            Ok(CmReport {
                l1: cm.l1,
                e: cm.e,
                length_route: cm.length_route,
                quotient_route_global: cm.quotient_route_global,
                quotient_route: cm.quotient_route,
                cohen_macaulay: cm.cohen_macaulay,
            })
        });
        if u.corank_caveat {
            let m = germ.image_multiplicity.map_or("unknown".to_string(), |m| m.to_string());
            u.notes.push(format!(
                "corank 2: length and e are not the multiplicity of the image, m(f(C^2)) = {m}"
            ));
        }
    } else {
        u.notes.push("fiber condition fails: length and Cohen-Macaulay tests skipped".into());
    }
    if corank1 {
        if u.fiber_condition {
            u.equimultiplicity = c.run("equimultiplicity", || {
                let v = equimultiplicity_verdict(f, samples)?;
                Ok(EquimultiplicityReport {
                    equimultiple: v.equimultiple,
                    sample_lengths: samples_of(&v.sample_lengths),
                })
            });
        }
        if germ.double_point.as_ref().is_some_and(|d| d.reduced) {
            u.mu = c.run("mu-constancy", || {
                let mu = mu_constancy(f, samples)?;
                Ok(MuReport {
                    values: samples_of(&mu.values),
                    constant: mu.constant,
                    certificate: mu.certificate.to_string(),
                })
            });
            u.whitney = c.run("whitney", || {
                let w = whitney_check(f, samples)?;
                Ok(WhitneyReport {
                    status: w.status.to_string(),
                    reason: w.reason,
                    m_values: samples_of(&w.m_values),
                })
            });
        }
    } else {
        u.notes.push("corank 2: sampled equimultiplicity, μ-constancy and Whitney checks skipped".into());
    }
    for (label, checker) in [
        ("theorem A", theorem_a_checker as fn(&Unfolding, &[Rational]) -> _),
        ("theorem B", theorem_b_checker),
    ] {
        let Some(r) = c.run(label, || Ok(checker(f, samples)?)) else {
            continue;
        };
        failures.extend(r.failed_hypotheses().into_iter().map(|h| format!("{label}: {h}")));
        let entry = Some(TheoremEntry::from(&r));
        if label == "theorem A" {
            u.theorem_a = entry;
        } else {
            u.theorem_b = entry;
        }
    }
    AnalysisReport {
        name: f.name().to_string(),
        germ,
        unfolding: Some(u),
        hypothesis_failures: failures,
        errors: c.errors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use germlab_core::germ::bundled_catalog;

    #[test]
    fn exit_code_priorities() {
        let mut r = analyze_germ(bundled_catalog().germ("C5").unwrap());
        assert_eq!(r.exit_code(), 0);
        r.hypothesis_failures.push("analysis: corank 1".into());
        assert_eq!(r.exit_code(), 2);
        r.errors.push(ErrorEntry {
            section: "presentation".into(),
            code: "presentation::NotFinite".into(),
            message: String::new(),
        });
        assert_eq!(r.exit_code(), 1);
    }
}
