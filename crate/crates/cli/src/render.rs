//! Human-readable renderings. JSON is the canonical format; these follow it.

use std::fmt::Write;

use locale_forge::dsl;
use locale_forge::eval::{CoverageReport, ObjectDoc};
use locale_forge::lattice::{OperatorReport, Verdict};
use locale_forge::oracle::SuiteSummary;
use locale_forge::presentation::{KindReport, RelationVerdict, Style};
use locale_forge::toys::{GluingOutcome, SwapOutcome};
use locale_forge::transform::Derivation;

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "FAIL",
    }
}

fn arrow(s: Style) -> &'static str {
    if s == Style::Ascii {
        "->"
    } else {
        "↦"
    }
}

fn witnesses(out: &mut String, r: &OperatorReport) {
    for w in &r.witnesses {
        let _ = writeln!(out, "  {:?}: {}", w.law, w.labels.join("; "));
    }
    for n in &r.notes {
        let _ = writeln!(out, "  note: {n}");
    }
}

pub fn kind_report(r: &KindReport, _s: Style) -> String {
    let mut out = format!("{} presentation: {}\n", r.kind.name(), verdict(r.verdict));
    for c in &r.relations {
        let v = match c.verdict {
            RelationVerdict::SyntacticPass => "stable",
            RelationVerdict::OraclePass => "stable (decided in the presented structure)",
            RelationVerdict::Fail => "NOT stable",
        };
        let _ = writeln!(out, "  [{}] {v}: {}", c.index, c.relation);
        if let Some(w) = &c.witness {
            let _ = writeln!(out, "      at {}, missing {}", w.generator, w.missing);
        }
    }
    for n in &r.notes {
        let _ = writeln!(out, "  note: {n}");
    }
    out
}

pub fn object(d: &ObjectDoc, s: Style) -> String {
    let mut out = format!("{:?} with {} elements\n", d.kind, d.size);
    for [a, b] in &d.covers {
        let _ = writeln!(out, "  {} < {}", d.elements[*a], d.elements[*b]);
    }
    for (g, &i) in &d.interp {
        let _ = writeln!(out, "  {g} {} {}", arrow(s), d.elements[i]);
    }
    out
}

pub fn suite(r: &SuiteSummary) -> String {
    let mut out = format!(
        "{} (seed {}): {}, {} checked, {} nontrivial, {} transforms, {} drawn\n",
        r.suite,
        r.seed,
        verdict(r.verdict()),
        r.checked,
        r.nontrivial,
        r.transforms,
        r.drawn
    );
    for f in &r.failures {
        let _ = writeln!(out, "  instance {}: {}", f.index, f.detail);
    }
    out
}

pub fn coverage(r: &CoverageReport) -> String {
    format!("{} coverage: {} (frame {} elements, other {})\n  {}\n", r.kind.name(), verdict(r.verdict), r.frame_size, r.other_size, r.note)
}

pub fn derivation(d: &Derivation, s: Style) -> String {
    let mut out = format!("operator {:?}: {}\n", d.operator, verdict(d.report.verdict));
    witnesses(&mut out, &d.report);
    if let Some(spec) = &d.spec {
        out.push_str(&dsl::print_quotient_spec(spec, s));
    }
    out
}

pub fn swap(o: &SwapOutcome, s: Style) -> String {
    let mut out = dsl::print(&o.quotient.presentation, s);
    let _ = writeln!(out, "-- presents a frame with {} elements", o.frame.size);
    out
}

pub fn nat(carrier: &[String], r: &OperatorReport) -> String {
    let mut out = format!("coinserter carrier: {{{}}}\nmap to the point: {}\n", carrier.join(", "), verdict(r.verdict));
    witnesses(&mut out, r);
    out
}

pub fn gluing(g: &GluingOutcome) -> String {
    let mut out = format!("interior {:?}: {}, fixed points {{{}}}\n", g.interior, verdict(g.report.verdict), g.fixed.join(", "));
    witnesses(&mut out, &g.report);
    out
}
