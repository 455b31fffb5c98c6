//! JSON and plain-text renderings shared by the CLI and the C interface.
//! Every listing follows vertex order or sorted edge order, so output is
//! byte-identical across runs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::canonical::{CanonicalBasis, ClassTable, PositivityReport, RobustReport, ThetaTable, VerificationReport};
use crate::error::Error;
use crate::exactalg::Polynomial;
use crate::gkmgraph::{GkmGraph, ValidationReport};
use crate::morse::MorseData;
use crate::oracle::{LinearSystem, SolveOutcome};

/// A report in both output formats.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
}

impl Report {
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("reports serialize");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

pub fn validation(report: &ValidationReport) -> Report {
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| json!({"kind": v.kind(), "message": v.to_string()}))
        .collect();
    let mut text = String::new();
    if report.is_valid() {
        text.push_str("valid\n");
    } else {
        for v in &report.violations {
            let _ = writeln!(text, "{}: {v}", v.kind());
        }
    }
    Report { json: json!({"valid": report.is_valid(), "violations": violations}), text }
}

pub fn morse(g: &GkmGraph, md: &MorseData, violations: &[(usize, usize)]) -> Report {
    let mut rows = Vec::new();
    let mut text = format!("xi = {}\n", md.xi);
    for v in md.psi_order() {
        let down: Vec<&str> = md.down[v].iter().map(|(r, _)| g.id(*r)).collect();
        rows.push(json!({
            "id": g.id(v),
            "psi": md.psi[v].to_string(),
            "index": md.lambda[v],
            "lambda_minus": md.lambda_minus[v].to_string(),
            "lambda_plus": md.lambda_plus[v].to_string(),
            "lambda": md.lambda_full[v].to_string(),
            "below": down,
        }));
        let _ = writeln!(
            text,
            "{}  psi {}  index {}  Λ⁻ = {}  Λ⁺ = {}",
            g.id(v),
            md.psi[v],
            md.lambda[v],
            md.lambda_minus[v],
            md.lambda_plus[v]
        );
    }
    let bad: Vec<Value> = violations.iter().map(|&(a, b)| json!([g.id(a), g.id(b)])).collect();
    if violations.is_empty() {
        text.push_str("index increasing\n");
    } else {
        let list: Vec<String> = violations.iter().map(|&(a, b)| format!("({}, {})", g.id(a), g.id(b))).collect();
        let _ = writeln!(text, "index-increasing hypothesis fails on {}", list.join(", "));
    }
    Report {
        json: json!({
            "xi": md.xi.to_string(),
            "vertices": rows,
            "index_increasing": violations.is_empty(),
            "violations": bad,
        }),
        text,
    }
}

/// Θ tables from one or both methods; `agree` is set when both ran.
pub fn thetas(g: &GkmGraph, tables: &[(&str, ThetaTable)]) -> Report {
    let mut obj = serde_json::Map::new();
    let mut text = String::new();
    for (name, t) in tables {
        obj.insert((*name).to_string(), t.to_json(g));
        let _ = writeln!(text, "[{name}]");
        for (&(a, b), th) in &t.values {
            let _ = writeln!(text, "{} -> {}  theta {th}", g.id(a), g.id(b));
        }
    }
    if let [(_, a), (_, b)] = tables {
        let agree = a == b;
        obj.insert("agree".into(), json!(agree));
        let _ = writeln!(text, "methods {}", if agree { "agree" } else { "DISAGREE" });
    }
    Report { json: Value::Object(obj), text }
}

fn class_text(g: &GkmGraph, t: &ClassTable, symbol: &str, text: &mut String) {
    let _ = writeln!(text, "{symbol}_{} (degree {})", g.id(t.owner), t.degree);
    for (q, v) in t.values.iter().enumerate() {
        if !v.is_zero() {
            let _ = writeln!(text, "  {}: {v}", g.id(q));
        }
    }
}

pub fn classes(g: &GkmGraph, tables: &[ClassTable], symbol: &str) -> Report {
    let mut text = String::new();
    for t in tables {
        class_text(g, t, symbol, &mut text);
    }
    let json_tables: Vec<Value> = tables.iter().map(|t| t.to_json(g)).collect();
    Report { json: json!({"classes": json_tables}), text }
}

pub fn canonical(g: &GkmGraph, basis: &CanonicalBasis, positivity: &PositivityReport) -> Report {
    let mut r = classes(g, &basis.classes, "alpha");
    let obj = r.json.as_object_mut().expect("object");
    obj.insert("thetas".into(), basis.thetas.to_json(g));
    obj.insert("canonical_graph".into(), basis.graph.to_json());
    obj.insert("positivity".into(), positivity.to_json(g));
    let negative = positivity.negative();
    if negative.is_empty() {
        r.text.push_str("all one-step values positive\n");
    } else {
        let list: Vec<String> = negative.iter().map(|&(a, b)| format!("({}, {})", g.id(a), g.id(b))).collect();
        let _ = writeln!(r.text, "negative theta on {}", list.join(", "));
    }
    r
}

pub fn structure_constants(g: &GkmGraph, p: usize, q: usize, c: &BTreeMap<usize, Polynomial>) -> Report {
    let mut text = String::new();
    let mut obj = serde_json::Map::new();
    for (&r, v) in c {
        if !v.is_zero() {
            obj.insert(g.id(r).to_string(), json!(v.to_string()));
            let _ = writeln!(text, "c^{}_{{{},{}}} = {v}", g.id(r), g.id(p), g.id(q));
        }
    }
    if obj.is_empty() {
        text.push_str("product is zero\n");
    }
    Report { json: json!({"p": g.id(p), "q": g.id(q), "constants": obj}), text }
}

pub fn solve(g: &GkmGraph, system: &LinearSystem, outcome: &SolveOutcome) -> Report {
    let base = json!({
        "vertex": g.id(system.owner),
        "degree": system.degree,
        "unknowns": system.unknowns.len(),
        "equations": system.equations.len(),
    });
    let mut obj = base.as_object().expect("object").clone();
    let mut text = format!(
        "vertex {}: degree {}, {} unknowns, {} equations\n",
        g.id(system.owner),
        system.degree,
        system.unknowns.len(),
        system.equations.len()
    );
    match outcome {
        SolveOutcome::Unique(t) => {
            obj.insert("status".into(), json!("Unique"));
            obj.insert("class".into(), t.to_json(g));
            text.push_str("Unique\n");
            class_text(g, t, "alpha", &mut text);
        }
        SolveOutcome::Infeasible(cert) => {
            obj.insert("status".into(), json!("Infeasible"));
            obj.insert("certificate".into(), cert.to_json(g, system));
            let _ = writeln!(text, "Infeasible: no canonical class for {}", g.id(system.owner));
            for (i, y) in &cert.multipliers {
                let eq = &system.equations[*i];
                let m = Polynomial::monomial(g.dim(), eq.monomial.clone(), crate::exactalg::Rational::from_integer(1.into()));
                let _ = writeln!(text, "  {y} x [edge ({}, {}), coefficient of {m}]", g.id(eq.edge.0), g.id(eq.edge.1));
            }
            let _ = writeln!(text, "  sums to 0 = {}", cert.constant);
        }
        SolveOutcome::UniquenessViolation { nullity } => {
            obj.insert("status".into(), json!("UndeterminedAtDegreeBound"));
            obj.insert("nullity".into(), json!(nullity));
            let _ = writeln!(text, "undetermined at degree bound: {nullity} free parameters");
        }
    }
    Report { json: Value::Object(obj), text }
}

pub fn billey(sigma: &str, mu: &str, value: &Polynomial) -> Report {
    Report {
        json: json!({"sigma": sigma, "mu": mu, "value": value.to_string()}),
        text: format!("{value}\n"),
    }
}

pub fn robust(g: &GkmGraph, report: &RobustReport) -> Report {
    let mut text = String::new();
    if !report.gkm_compatible {
        text.push_str("class is not GKM compatible\n");
    }
    for e in &report.entries {
        let verdict = if e.passed { "ok" } else { "FAIL" };
        let from = g.ids_of(&e.robust_from).join(", ");
        let mult = e.multiplier.as_ref().map_or("none".to_string(), |m| m.to_string());
        let _ = writeln!(text, "{} {verdict}: zero from [{from}], product {}, multiplier {mult}", g.id(e.vertex), e.product);
    }
    let _ = writeln!(text, "{}", if report.all_passed() { "passed" } else { "failed" });
    Report { json: report.to_json(g), text }
}

pub fn verification(reports: &[VerificationReport]) -> Report {
    let mut text = String::new();
    for r in reports {
        let _ = writeln!(text, "{}: {}", r.owner, if r.all_passed() { "ok" } else { "FAIL" });
        for f in r.failures() {
            let _ = writeln!(text, "  {f}");
        }
    }
    let json_reports: Vec<Value> = reports.iter().map(VerificationReport::to_json).collect();
    Report { json: json!({"reports": json_reports}), text }
}

pub fn error(e: &Error, code: i32) -> Value {
    let mut obj = json!({"error": e.kind(), "message": e.to_string(), "exit_code": code});
    if let Error::IndexNotIncreasing { violations } = e {
        obj["violations"] = json!(violations.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>());
    }
    obj
}
