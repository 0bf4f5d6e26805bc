//! Plain-text table view of a report.

use std::fmt::Write;

use crate::report::{AnalysisReport, GermReport, TheoremEntry, UnfoldingReport};

struct Table {
    title: String,
    rows: Vec<(String, String)>,
}

impl Table {
    fn new(title: impl Into<String>) -> Self {
        Table {
            title: title.into(),
            rows: Vec::new(),
        }
    }

    fn row(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.rows.push((key.into(), value.to_string()));
        self
    }

    fn render(&self, out: &mut String) {
        if self.rows.is_empty() {
            return;
        }
        let width = self.rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        let _ = writeln!(out, "== {} ==", self.title);
        for (k, v) in &self.rows {
            let pad = width - k.chars().count();
            let _ = writeln!(out, "  {k}{} | {v}", " ".repeat(pad));
        }
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or("-".to_string(), ToString::to_string)
}

fn germ_tables(g: &GermReport, out: &mut String) {
    let mut t = Table::new(format!("germ {}", g.name));
    t.row("map", format!("({}, {}, {})", g.components[0], g.components[1], g.components[2]))
        .row("corank", g.corank);
    if let Some(ty) = &g.quasihomogeneous_type {
        t.row("type (b, d2, d3, d)", format!("({}, {}, {}, {})", ty.b, ty.d2, ty.d3, ty.d));
    }
    t.row("m(f(C^2))", opt(&g.image_multiplicity));
    t.render(out);

    if let Some(dp) = &g.double_point {
        let mut t = Table::new("double point curve");
        t.row("λ", &dp.lambda)
            .row("form", &dp.form)
            .row("reduced", dp.reduced)
            .row("weighted degree", opt(&dp.weighted_degree))
            .row("μ(D(f))", opt(&dp.milnor_number))
            .row("routes agree", dp.routes_agree);
        if let Some(cl) = &dp.classification {
            t.row("identification components", cl.identification_count)
                .row("fold components", cl.fold_count);
            for b in &cl.branches {
                let deg = if b.degree > 1 { format!(" (degree {})", b.degree) } else { String::new() };
                t.row(format!("  {}", b.class), format!("V({}){deg}", b.branch));
            }
            for [a, b] in &cl.pairs {
                t.row("  pair", format!("{a} <-> {b}"));
            }
            for o in &cl.orbits {
                t.row("  orbit", format!("{} ({} images)", o.orbit, o.image_count));
            }
        }
        if let Some(p) = &dp.prediction {
            t.row(
                "predicted",
                format!(
                    "case {}: {} identification + {} fold, form {}",
                    p.case,
                    p.identification_count,
                    p.fold_count,
                    opt(&p.form)
                ),
            );
        }
        t.row("prediction matches", opt(&dp.prediction_match));
        if let Some(img) = &dp.image {
            t.row("m(f(D(f)))", img.multiplicity);
            for b in &img.branches {
                t.row(
                    format!("  image of {}", b.sources.join(", ")),
                    format!("order {}, V({})", b.order, b.equations.join(", ")),
                );
            }
        }
        t.render(out);
    }

    if let Some(p) = &g.presentation {
        let mut t = Table::new("presentation");
        t.row("k", p.k)
            .row("monic coordinate", &p.monic_coordinate)
            .row("image equation", &p.image_equation)
            .row("agrees with elimination", p.image_equation_agrees)
            .row("T(f)", opt(&p.triple_points))
            .row("C(f)", opt(&p.cross_caps));
        for (i, row) in p.matrix.iter().enumerate() {
            t.row(format!("  row {i}"), format!("[{}]", row.join(", ")));
        }
        t.render(out);
    }
    notes(&g.notes, out);
}

fn notes(notes: &[String], out: &mut String) {
    let mut t = Table::new("notes");
    for n in notes {
        t.row("-", n);
    }
    t.render(out);
}

fn theorem_table(title: &str, r: &TheoremEntry, out: &mut String) {
    let mut t = Table::new(title);
    t.row("confirmed", r.confirmed);
    for h in &r.hypotheses {
        t.row(format!("  {}", h.name), format!("{} ({})", h.holds, h.detail));
    }
    for c in &r.conclusions {
        t.row("  conclusion", c);
    }
    for c in &r.certificates {
        t.row("  certificate", c);
    }
    t.render(out);
}

fn unfolding_tables(u: &UnfoldingReport, out: &mut String) {
    let mut t = Table::new(format!("unfolding {} of {}", u.name, u.base));
    t.row("map", format!("({}, {}, {}, t)", u.components[0], u.components[1], u.components[2]))
        .row("prenormal", u.prenormal)
        .row("samples", u.samples.join(", "))
        .row("fiber condition", u.fiber_condition);
    if let Some(r) = &u.fiber_condition_reason {
        t.row("  reason", r);
    }
    t.row("length", opt(&u.length));
    if let Some(s) = &u.hilbert_samuel {
        let ls: Vec<String> = s.lengths.iter().map(ToString::to_string).collect();
        t.row("ℓ_1..ℓ_S", ls.join(", ")).row("e(<t>)", s.e);
    }
    if let Some(cm) = &u.cm {
        t.row("CM (ℓ_1 = e)", cm.length_route)
            .row("CM ((I:t) = I, global)", cm.quotient_route_global)
            .row("CM ((I:t) = I, local)", cm.quotient_route)
            .row("Cohen-Macaulay", cm.cohen_macaulay);
    }
    t.row("corank caveat", u.corank_caveat);
    if let Some(e) = &u.equimultiplicity {
        t.row("equimultiple", e.equimultiple);
        for s in &e.sample_lengths {
            t.row(format!("  fiber length at t = {}", s.t), s.value);
        }
    }
    t.render(out);

    if let Some(mu) = &u.mu {
        let mut t = Table::new("μ-constancy");
        for v in &mu.values {
            t.row(format!("μ at t = {}", v.t), opt(&v.value));
        }
        t.row("constant", mu.constant).row("certificate", &mu.certificate);
        t.render(out);
    }
    if let Some(w) = &u.whitney {
        let mut t = Table::new("whitney");
        t.row("equisingular", &w.status).row("reason", &w.reason);
        for v in &w.m_values {
            t.row(format!("m at t = {}", v.t), opt(&v.value));
        }
        t.render(out);
    }
    if let Some(r) = &u.theorem_a {
        theorem_table("theorem A", r, out);
    }
    if let Some(r) = &u.theorem_b {
        theorem_table("theorem B", r, out);
    }
    notes(&u.notes, out);
}

pub fn render_human(r: &AnalysisReport) -> String {
    let mut out = String::new();
    germ_tables(&r.germ, &mut out);
    if let Some(u) = &r.unfolding {
        unfolding_tables(u, &mut out);
    }
    let mut t = Table::new("status");
    for h in &r.hypothesis_failures {
        t.row("hypothesis fails", h);
    }
    for e in &r.errors {
        t.row(format!("error in {}", e.section), format!("{}: {}", e.code, e.message));
    }
    t.row("exit code", r.exit_code());
    t.render(&mut out);
    out
}
