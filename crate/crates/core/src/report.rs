//! Machine-readable and human-readable report emission.
//!
//! JSON reports are deterministic: canonical polynomial strings, explicit
//! schema version, and the seed that produced any randomized part. The
//! canonical strings re-parse to equal values.

use crate::domination::{DominationReport, LscReport, LscStatus};
use crate::matrix::{MatrixPoly, PseudoinverseRep};
use crate::probe::ProbeReport;
use crate::scalar_dom::{Outcome, ScalarVerdict};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Serialize)]
pub struct JsonReport {
    pub schema_version: String,
    pub command: String,
    pub inputs: Value,
    pub verdict: Value,
    pub timings_ms: u128,
    pub seed: u64,
}

impl JsonReport {
    pub fn new(command: &str, inputs: Value, verdict: Value, timings_ms: u128, seed: u64) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs,
            verdict,
            timings_ms,
            seed,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

pub fn outcome_str(o: Outcome) -> &'static str {
    match o {
        Outcome::Dominates => "dominates",
        Outcome::NotDominates => "not_dominates",
        Outcome::Unknown => "unknown",
    }
}

pub fn domination_value(report: &DominationReport) -> Value {
    serde_json::to_value(report).expect("domination report serialization")
}

pub fn lsc_value(report: &LscReport) -> Value {
    serde_json::to_value(report).expect("lsc report serialization")
}

pub fn probe_value(report: &ProbeReport) -> Value {
    serde_json::to_value(report).expect("probe report serialization")
}

pub fn pinv_value(p: &MatrixPoly, rep: &PseudoinverseRep) -> Value {
    json!({
        "p": p.to_canonical_string(),
        "a": rep.a.to_canonical_string(),
        "delta": rep.delta.to_canonical_string(),
        "rank": rep.rank,
    })
}

fn render_scalar_verdict(v: &ScalarVerdict) -> String {
    let mut s = format!("{}", outcome_str(v.outcome));
    if let Some(c) = &v.certificate {
        s.push_str(&format!(" [certificate: {}]", certificate_name(c)));
    }
    if let Some(w) = &v.witness {
        s.push_str(&format!(
            " [witness: weights {:?}, coeffs {:?}, t-degrees q~^2 {} vs p~^2 {}]",
            w.weights,
            w.coeffs,
            w.t_degrees.0.map_or("-inf".into(), |d| d.to_string()),
            w.t_degrees.1.map_or("-inf".into(), |d| d.to_string()),
        ));
    }
    if !v.note.is_empty() {
        s.push_str(&format!(" ({})", v.note));
    }
    s
}

pub fn certificate_name(c: &crate::scalar_dom::Certificate) -> String {
    use crate::scalar_dom::Certificate::*;
    match c {
        ZeroNumerator => "zero-numerator".into(),
        UnivariateDegree => "univariate-degree".into(),
        NumeratorSquare { scale } => format!("numerator-square (scale {})", scale),
        EllipticTopForm => "elliptic-top-form".into(),
        EvenCoefficient { constant } => format!("even-coefficient (C = {})", constant),
    }
}

/// Human-readable rendering of a domination report.
pub fn domination_text(p: &MatrixPoly, q: &MatrixPoly, report: &DominationReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("P = {}\n", p.to_canonical_string()));
    out.push_str(&format!("Q = {}\n", q.to_canonical_string()));
    out.push_str(&format!(
        "mode: {}\n",
        match report.mode {
            crate::scalar_dom::Mode::Strict => "domination",
            crate::scalar_dom::Mode::Compact => "compact domination",
        }
    ));
    out.push_str(&format!(
        "kernel inclusion (Q A P = Delta Q): {}\n",
        report.kernel_inclusion
    ));
    for ev in &report.entry_verdicts {
        out.push_str(&format!(
            "  entry ({}, {}): {}\n",
            ev.entry.0,
            ev.entry.1,
            render_scalar_verdict(&ev.verdict)
        ));
    }
    if let Some((l, j)) = report.failing_entry {
        out.push_str(&format!("failing entry: ({}, {})\n", l, j));
    }
    if let Some(w) = &report.witness {
        out.push_str(&format!(
            "witness curve: x_i(t) = c_i t^w_i with w = {:?}, c = {:?}\n",
            w.weights, w.coeffs
        ));
    }
    if !report.notes.is_empty() {
        out.push_str(&format!("notes: {}\n", report.notes));
    }
    out.push_str(&format!("verdict: {}\n", outcome_str(report.overall)));
    out
}

pub fn lsc_text(p: &MatrixPoly, report: &LscReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("P = {}\n", p.to_canonical_string()));
    for e in &report.entries {
        out.push_str(&format!(
            "  alpha = {:?}: {}{}\n",
            e.alpha,
            outcome_str(e.outcome),
            if e.note.is_empty() {
                String::new()
            } else {
                format!(" ({})", e.note)
            }
        ));
    }
    if let Some(a) = &report.failing_alpha {
        out.push_str(&format!("failing alpha: {:?}\n", a));
    }
    out.push_str(&format!(
        "hypothesis: {}\n",
        match report.status {
            LscStatus::Satisfied => "satisfied",
            LscStatus::Fails => "fails",
            LscStatus::Unknown => "unknown",
        }
    ));
    out
}

pub fn pinv_text(p: &MatrixPoly, rep: &PseudoinverseRep) -> String {
    format!(
        "P = {}\nA = {}\nDelta = {}\ngeneric rank r = {}\nP^+ = A / Delta wherever Delta != 0\n",
        p.to_canonical_string(),
        rep.a.to_canonical_string(),
        rep.delta.to_canonical_string(),
        rep.rank
    )
}

pub fn probe_text(report: &ProbeReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "probe kind: {} (n = {}, d = {}, seed = {})\n",
        report.kind, report.n, report.dim, report.seed
    ));
    if let Some(trend) = &report.trend {
        for (t, r) in trend {
            out.push_str(&format!("  t = {:>4}: max ratio = {:.6e}\n", t, r));
        }
    } else {
        for rec in &report.trials {
            match rec.ratio {
                Some(r) => out.push_str(&format!(
                    "  trial {:>3}: ratio = {:.6e} (|Qu| = {:.3e}, |Pu| = {:.3e})\n",
                    rec.trial, r, rec.q_norm, rec.p_norm
                )),
                None => out.push_str(&format!(
                    "  trial {:>3}: degenerate (|Pu| < 1e-12, |Qu| = {:.3e})\n",
                    rec.trial, rec.q_norm
                )),
            }
        }
    }
    if let Some(m) = report.max_ratio {
        out.push_str(&format!("max ratio: {:.6e}\n", m));
    }
    if report.degenerate > 0 {
        out.push_str(&format!("degenerate trials: {}\n", report.degenerate));
    }
    out.push_str(&format!("{}\n", report.note));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::decide_domination;
    use crate::parse::parse_matrix_str;

    #[test]
    fn json_report_shape() {
        let p = parse_matrix_str("[x1, x2]", None).unwrap();
        let q = MatrixPoly::identity(2, 2);
        let report = decide_domination(&p, &q).unwrap();
        let jr = JsonReport::new(
            "dominates",
            json!({"p": p.to_canonical_string(), "q": q.to_canonical_string()}),
            domination_value(&report),
            3,
            0,
        );
        let s = jr.to_json_string();
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["schema_version"], "1");
        assert_eq!(v["verdict"]["overall"], "not_dominates");
        assert_eq!(v["verdict"]["kernel_inclusion"], false);
        // canonical input strings re-parse to equal values
        let back = parse_matrix_str(v["inputs"]["p"].as_str().unwrap(), None).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn witness_weights_in_json() {
        let p = parse_matrix_str("[x1^2+x2^2, x1; x2, 0]", None).unwrap();
        let q = MatrixPoly::identity(2, 2);
        let report = decide_domination(&p, &q).unwrap();
        let v = domination_value(&report);
        assert_eq!(v["overall"], "not_dominates");
        assert_eq!(v["witness"]["weights"][0], 1);
        assert_eq!(v["witness"]["weights"][1], 0);
        let text = domination_text(&p, &q, &report);
        assert!(text.contains("failing entry: (2, 2)"));
    }
}
