use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactalg::{rho_project, LinearForm, Polynomial, Rational};
use crate::gkmgraph::GkmGraph;
use crate::morse::MorseData;

/// Θ on every ascending edge that raises the index by exactly one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ThetaTable {
    pub values: BTreeMap<(usize, usize), i64>,
}

impl ThetaTable {
    pub fn get(&self, r: usize, r2: usize) -> Option<i64> {
        self.values.get(&(r, r2)).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn to_json(&self, g: &GkmGraph) -> serde_json::Value {
        let edges: Vec<_> = self
            .values
            .iter()
            .map(|(&(a, b), &t)| json!({"from": g.id(a), "to": g.id(b), "theta": t}))
            .collect();
        json!({ "edges": edges })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaMethod {
    Projection,
    Modular,
}

/// Ascending GKM edges `(r, r')` with `λ(r') = λ(r) + 1`, in edge order.
pub fn index_step_edges(g: &GkmGraph, md: &MorseData) -> Vec<(usize, usize)> {
    g.edges()
        .filter(|e| md.psi[e.from] < md.psi[e.to] && md.lambda[e.to] == md.lambda[e.from] + 1)
        .map(|e| (e.from, e.to))
        .collect()
}

struct EdgeData {
    eta: crate::exactalg::Weight,
    below: Polynomial,
    above: Polynomial,
}

fn edge_data(g: &GkmGraph, md: &MorseData, r: usize, r2: usize) -> Result<EdgeData> {
    let eta = g
        .weight(r, r2)
        .ok_or_else(|| Error::InvalidGraph(format!("no edge ({}, {})", g.id(r), g.id(r2))))?
        .clone();
    if !(md.psi[r] < md.psi[r2] && md.lambda[r2] == md.lambda[r] + 1) {
        return Err(Error::InvalidGraph(format!(
            "edge ({}, {}) is not ascending with index step one",
            g.id(r),
            g.id(r2)
        )));
    }
    let above = md.lambda_minus[r2].exact_divide_linear(&eta.to_linear_form())?;
    Ok(EdgeData { eta, below: md.lambda_minus[r].clone(), above })
}

/// `num / den` as a nonzero integer, given both are equal up to a constant.
fn constant_ratio(g: &GkmGraph, r: usize, r2: usize, num: &Polynomial, den: &Polynomial) -> Result<i64> {
    let (from, to) = (g.id(r).to_string(), g.id(r2).to_string());
    let Some((m, c)) = den.leading_term() else {
        return Err(Error::ZeroThetaDenominator { from, to });
    };
    let ratio: Rational = num.coefficient(m) / c;
    if den.scale(&ratio) != *num {
        return Err(Error::NonIntegerTheta { from, to, value: format!("({num}) / ({den}) is not constant") });
    }
    if ratio.is_zero() || !ratio.is_integer() {
        return Err(Error::NonIntegerTheta { from, to, value: ratio.to_string() });
    }
    ratio
        .to_integer()
        .to_i64()
        .ok_or(Error::NonIntegerTheta { from, to, value: ratio.to_string() })
}

/// Θ as the ratio of the two ρ_η-projections.
pub fn theta_projection(g: &GkmGraph, md: &MorseData, r: usize, r2: usize) -> Result<i64> {
    let d = edge_data(g, md, r, r2)?;
    let num = rho_project(&d.below, &d.eta, &md.xi)?;
    let den = rho_project(&d.above, &d.eta, &md.xi)?;
    constant_ratio(g, r, r2, &num, &den)
}

/// Θ from the congruence `(Λ⁻_{r'}/η) Θ ≡ Λ⁻_r mod η`, reducing by
/// eliminating the last variable that occurs in η.
pub fn theta_modular(g: &GkmGraph, md: &MorseData, r: usize, r2: usize) -> Result<i64> {
    let d = edge_data(g, md, r, r2)?;
    let images = eliminate_along(&d.eta.to_linear_form());
    constant_ratio(g, r, r2, &d.below.substitute(&images), &d.above.substitute(&images))
}

/// Substitution images that send `eta` to zero by solving for its last
/// variable: `x_k -> -(sum_{i != k} eta_i x_i) / eta_k`.
pub fn eliminate_along(eta: &LinearForm) -> Vec<Polynomial> {
    let n = eta.dim();
    let k = (0..n).rev().find(|&i| !eta.coeffs()[i].is_zero()).expect("nonzero weight");
    let ek = eta.coeffs()[k].clone();
    (0..n)
        .map(|i| {
            if i != k {
                return Polynomial::var(n, i);
            }
            let mut f = eta.scale(&(-ek.recip()));
            let mut c = f.coeffs().to_vec();
            c[k] = Rational::zero();
            f = LinearForm::new(c);
            f.to_polynomial()
        })
        .collect()
}

pub fn theta(g: &GkmGraph, md: &MorseData, r: usize, r2: usize, method: ThetaMethod) -> Result<i64> {
    match method {
        ThetaMethod::Projection => theta_projection(g, md, r, r2),
        ThetaMethod::Modular => theta_modular(g, md, r, r2),
    }
}

/// Θ by a single method on every index-step-one edge.
pub fn theta_table_with(g: &GkmGraph, md: &MorseData, method: ThetaMethod) -> Result<ThetaTable> {
    let mut values = BTreeMap::new();
    for (a, b) in index_step_edges(g, md) {
        values.insert((a, b), theta(g, md, a, b, method)?);
    }
    Ok(ThetaTable { values })
}

/// Θ by both methods; any disagreement is an error.
pub fn compute_thetas(g: &GkmGraph, md: &MorseData) -> Result<ThetaTable> {
    let mut values = BTreeMap::new();
    for (a, b) in index_step_edges(g, md) {
        let p = theta_projection(g, md, a, b)?;
        let m = theta_modular(g, md, a, b)?;
        if p != m {
            return Err(Error::ThetaMismatch { from: g.id(a).into(), to: g.id(b).into(), projection: p, modular: m });
        }
        values.insert((a, b), p);
    }
    Ok(ThetaTable { values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morse::morse_data;
    use crate::spaces;

    fn both(g: &GkmGraph, md: &MorseData, a: &str, b: &str) -> (i64, i64) {
        let (a, b) = (g.index_of(a).unwrap(), g.index_of(b).unwrap());
        (theta_projection(g, md, a, b).unwrap(), theta_modular(g, md, a, b).unwrap())
    }

    #[test]
    fn cpn_thetas_are_one() {
        let (g, xi) = spaces::gen_cpn(4);
        let md = morse_data(&g, &xi).unwrap();
        let t = compute_thetas(&g, &md).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.values.values().all(|&v| v == 1));
        assert_eq!(both(&g, &md, "p2", "p3"), (1, 1));
    }

    #[test]
    fn twisted_thetas() {
        let (g, xi) = spaces::gen_cp1xcp1_twisted();
        let md = morse_data(&g, &xi).unwrap();
        assert_eq!(both(&g, &md, "SS", "SN"), (1, 1));
        assert_eq!(both(&g, &md, "SS", "NS"), (1, 1));
    }

    #[test]
    fn rejects_non_step_edges() {
        let (g, xi) = spaces::gen_cpn(2);
        let md = morse_data(&g, &xi).unwrap();
        assert!(theta_projection(&g, &md, 0, 2).is_err());
        assert!(theta_modular(&g, &md, 1, 0).is_err());
    }

    #[test]
    fn elimination_kills_eta() {
        let eta = LinearForm::from_ints(&[2, -1, 3, 0]);
        let img = eliminate_along(&eta);
        assert!(eta.to_polynomial().substitute(&img).is_zero());
    }
}
