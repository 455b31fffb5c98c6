use std::collections::BTreeSet;

use serde_json::json;

use super::paths::CanonicalGraph;
use super::table::ClassTable;
use super::theta::ThetaTable;
use crate::error::Result;
use crate::exactalg::{LinearForm, Polynomial};
use crate::gkmgraph::GkmGraph;
use crate::morse::MorseData;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    /// Human-readable locations where the check fails; empty means pass.
    pub failures: Vec<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub owner: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .flat_map(|c| c.failures.iter().map(move |f| format!("{}: {f}", c.name)))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let checks: Vec<_> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed(), "failures": c.failures}))
            .collect();
        json!({"owner": self.owner, "passed": self.all_passed(), "checks": checks})
    }
}

/// Edges `(a, b)` where the class difference is not divisible by `η(a, b)`.
pub fn gkm_incompatible_edges(g: &GkmGraph, values: &[Polynomial]) -> Vec<(usize, usize)> {
    g.edges()
        .filter(|e| e.from < e.to)
        .filter(|e| {
            let d = &values[e.to] - &values[e.from];
            d.exact_divide_linear(&e.weight.to_linear_form()).is_err()
        })
        .map(|e| (e.from, e.to))
        .collect()
}

/// Checks a table against the defining conditions of the canonical class of its owner.
pub fn verify_canonical(g: &GkmGraph, md: &MorseData, table: &ClassTable) -> VerificationReport {
    let p = table.owner;
    let v = &table.values;
    let n = g.vertex_count();
    let id = |q: usize| g.id(q).to_string();
    let mut checks = Vec::new();

    let mut f = Vec::new();
    if v[p] != md.lambda_minus[p] {
        f.push(format!("value at {} is {}, expected {}", id(p), v[p], md.lambda_minus[p]));
    }
    checks.push(Check { name: "diagonal", failures: f });

    let f = (0..n)
        .filter(|&q| q != p && md.lambda[q] <= md.lambda[p] && !v[q].is_zero())
        .map(|q| format!("nonzero at {} with index {}", id(q), md.lambda[q]))
        .collect();
    checks.push(Check { name: "vanishing_index", failures: f });

    let f = (0..n)
        .filter(|&q| q != p && md.psi[q] <= md.psi[p] && !v[q].is_zero())
        .map(|q| format!("nonzero at {} with Ψ {}", id(q), md.psi[q]))
        .collect();
    checks.push(Check { name: "vanishing_psi", failures: f });

    let f = gkm_incompatible_edges(g, v)
        .into_iter()
        .map(|(a, b)| format!("edge ({}, {})", id(a), id(b)))
        .collect();
    checks.push(Check { name: "gkm_compatibility", failures: f });

    let f = (0..n)
        .filter(|&q| !v[q].is_homogeneous_of(table.degree as u32))
        .map(|q| format!("value at {} is not homogeneous of degree {}", id(q), table.degree))
        .collect();
    checks.push(Check { name: "homogeneity", failures: f });

    let f = (0..n)
        .filter(|&q| !v[q].has_integer_coefficients())
        .map(|q| format!("value at {} has a non-integer coefficient", id(q)))
        .collect();
    checks.push(Check { name: "integrality", failures: f });

    VerificationReport { owner: id(p), checks }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RobustEntry {
    pub vertex: usize,
    /// Neighbours `r` of the vertex with the class zero on all of `V^r`.
    pub robust_from: Vec<usize>,
    pub product: Polynomial,
    /// `value / product`, when it is a polynomial.
    pub multiplier: Option<Polynomial>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RobustReport {
    pub gkm_compatible: bool,
    pub entries: Vec<RobustEntry>,
}

impl RobustReport {
    pub fn all_passed(&self) -> bool {
        self.gkm_compatible && self.entries.iter().all(|e| e.passed)
    }

    pub fn to_json(&self, g: &GkmGraph) -> serde_json::Value {
        let entries: Vec<_> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "vertex": g.id(e.vertex),
                    "robustly_zero_from": g.ids_of(&e.robust_from),
                    "product": e.product.to_string(),
                    "multiplier": e.multiplier.as_ref().map(|m| m.to_string()),
                    "passed": e.passed,
                })
            })
            .collect();
        json!({"gkm_compatible": self.gkm_compatible, "passed": self.all_passed(), "vertices": entries})
    }
}

/// At each vertex `q`, the value must be an integral multiple of the
/// product of `η(r, q)` over neighbours `r` with the class identically zero
/// on the unstable set `V^r`. Neighbours above `q` only qualify when the
/// value at `q` is already zero, so they never change the outcome.
pub fn robust_divisibility_report(g: &GkmGraph, md: &MorseData, class: &[Polynomial]) -> Result<RobustReport> {
    let n = g.vertex_count();
    let unstable: Vec<BTreeSet<usize>> =
        (0..n).map(|r| g.unstable_set(&md.xi, r)).collect::<Result<_>>()?;
    let zero_on = |r: usize| unstable[r].iter().all(|&s| class[s].is_zero());
    let mut entries = Vec::new();
    for q in 0..n {
        let robust_from: Vec<usize> = g.in_neighbors(q).filter(|&r| zero_on(r)).collect();
        let forms: Vec<LinearForm> =
            robust_from.iter().map(|&r| g.weight(r, q).unwrap().to_linear_form()).collect();
        let product = Polynomial::product_of(g.dim(), &forms);
        let mut multiplier = Some(class[q].clone());
        for f in &forms {
            multiplier = multiplier.and_then(|m| m.exact_divide_linear(f).ok());
        }
        let passed = multiplier.as_ref().is_some_and(Polynomial::has_integer_coefficients);
        entries.push(RobustEntry { vertex: q, robust_from, product, multiplier, passed });
    }
    Ok(RobustReport { gkm_compatible: gkm_incompatible_edges(g, class).is_empty(), entries })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityEntry {
    pub from: usize,
    pub to: usize,
    pub theta: i64,
    pub value: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityReport {
    pub edges: Vec<PositivityEntry>,
}

impl PositivityReport {
    pub fn negative(&self) -> Vec<(usize, usize)> {
        self.edges.iter().filter(|e| e.theta < 0).map(|e| (e.from, e.to)).collect()
    }

    pub fn all_positive(&self) -> bool {
        self.edges.iter().all(|e| e.theta > 0)
    }

    pub fn to_json(&self, g: &GkmGraph) -> serde_json::Value {
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|e| {
                json!({
                    "from": g.id(e.from),
                    "to": g.id(e.to),
                    "theta": e.theta,
                    "value": e.value.to_string(),
                    "sign": if e.theta > 0 { "positive" } else { "negative" },
                })
            })
            .collect();
        let negative: Vec<_> = self.negative().iter().map(|&(a, b)| json!([g.id(a), g.id(b)])).collect();
        json!({"all_positive": self.all_positive(), "negative_edges": negative, "edges": edges})
    }
}

/// Sign of each one-step value relative to `Λ⁻_{r'} / η(r, r')`, which is the sign of Θ.
pub fn positivity_report(cg: &CanonicalGraph, thetas: &ThetaTable) -> PositivityReport {
    let edges = cg
        .values
        .iter()
        .map(|(&(from, to), value)| PositivityEntry {
            from,
            to,
            theta: thetas.get(from, to).expect("canonical edges carry theta"),
            value: value.clone(),
        })
        .collect();
    PositivityReport { edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::table::canonical_table;
    use crate::morse::morse_data;
    use crate::spaces;

    #[test]
    fn gamma2_fails_index_vanishing() {
        let (g, xi) = spaces::gen_blowup_cp2();
        let md = morse_data(&g, &xi).unwrap();
        let gamma2 = spaces::blowup_gamma_fixtures()[1].values.clone();
        let t = ClassTable { owner: 1, degree: 1, values: gamma2 };
        let r = verify_canonical(&g, &md, &t);
        assert!(!r.check("vanishing_index").unwrap().passed());
        assert!(r.check("gkm_compatibility").unwrap().passed());
        assert!(r.check("diagonal").unwrap().passed());
    }

    #[test]
    fn perturbation_breaks_compatibility() {
        let (g, xi) = spaces::gen_cpn(3);
        let b = canonical_table(&g, &xi).unwrap();
        let mut t = b.classes[1].clone();
        t.values[3] = &t.values[3] + &Polynomial::one(4);
        let r = verify_canonical(&g, &b.morse, &t);
        assert!(!r.check("gkm_compatibility").unwrap().passed());
    }

    #[test]
    fn twisted_beta_is_robust() {
        let (g, xi) = spaces::gen_cp1xcp1_twisted();
        let md = morse_data(&g, &xi).unwrap();
        let beta = spaces::twisted_beta_fixture();
        let r = robust_divisibility_report(&g, &md, &beta.values).unwrap();
        assert!(r.all_passed());
        let nn = &r.entries[g.index_of("NN").unwrap()];
        assert!(nn.robust_from.is_empty());
        assert_eq!(nn.product, Polynomial::one(2));
    }

    #[test]
    fn zero_class_is_robust() {
        let (g, xi) = spaces::gen_flag(3);
        let md = morse_data(&g, &xi).unwrap();
        let zero = vec![Polynomial::zero(3); 6];
        assert!(robust_divisibility_report(&g, &md, &zero).unwrap().all_passed());
    }

    #[test]
    fn non_divisible_class_fails() {
        let (g, xi) = spaces::gen_cpn(1);
        let md = morse_data(&g, &xi).unwrap();
        // Zero at p1, so the value at p2 must be a multiple of x1 - x2.
        let c = vec![Polynomial::zero(2), Polynomial::var(2, 0)];
        let r = robust_divisibility_report(&g, &md, &c).unwrap();
        assert!(!r.all_passed());
        assert!(!r.gkm_compatible);
    }
}
