use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::json;

use super::paths::{dual_row, one_step_restrictions, restrict_column, CanonicalGraph};
use super::theta::{compute_thetas, ThetaTable};
use super::verify::verify_canonical;
use crate::error::{Error, Result};
use crate::exactalg::{DirectionVector, LinearForm, Polynomial, RationalFunction};
use crate::gkmgraph::GkmGraph;
use crate::morse::{morse_data, require_index_increasing, MorseData};

/// One class as its value at every vertex, indexed like the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTable {
    pub owner: usize,
    pub degree: usize,
    pub values: Vec<Polynomial>,
}

impl ClassTable {
    pub fn to_json(&self, g: &GkmGraph) -> serde_json::Value {
        let values: serde_json::Map<String, serde_json::Value> = self
            .values
            .iter()
            .enumerate()
            .map(|(v, p)| (g.id(v).to_string(), json!(p.to_string())))
            .collect();
        json!({"owner": g.id(self.owner), "degree": self.degree, "values": values})
    }

    /// Reads `{"owner", "degree", "values": {id: text}}`; missing vertices are zero.
    pub fn from_json(g: &GkmGraph, v: &serde_json::Value) -> Result<ClassTable> {
        let owner = v
            .get("owner")
            .and_then(|o| o.as_str())
            .ok_or_else(|| Error::Schema("class table needs a string \"owner\"".into()))?;
        let owner = g.index_of(owner)?;
        let degree = v
            .get("degree")
            .and_then(|d| d.as_u64())
            .ok_or_else(|| Error::Schema("class table needs an integer \"degree\"".into()))?
            as usize;
        let values = class_values_from_json(g, v.get("values").unwrap_or(&serde_json::Value::Null))?;
        Ok(ClassTable { owner, degree, values })
    }
}

/// Reads `{id: "<polynomial>"}` into per-vertex values; absent ids are zero.
pub fn class_values_from_json(g: &GkmGraph, v: &serde_json::Value) -> Result<Vec<Polynomial>> {
    let map = v
        .as_object()
        .ok_or_else(|| Error::Schema("class values must be an object {id: polynomial}".into()))?;
    let mut values = vec![Polynomial::zero(g.dim()); g.vertex_count()];
    for (id, text) in map {
        let text = text
            .as_str()
            .ok_or_else(|| Error::Schema(format!("value at {id:?} must be a polynomial string")))?;
        values[g.index_of(id)?] = Polynomial::parse(text, g.dim())?;
    }
    Ok(values)
}

/// The stages shared by every computation on an index-increasing graph.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub morse: MorseData,
    pub thetas: ThetaTable,
    pub graph: CanonicalGraph,
}

/// Validates, computes Morse data, cross-checked Θ and the one-step values.
pub fn canonical_graph(g: &GkmGraph, xi: &DirectionVector) -> Result<Pipeline> {
    let report = g.validate();
    if !report.is_valid() {
        return Err(Error::InvalidGraph(report.to_string()));
    }
    let morse = morse_data(g, xi)?;
    require_index_increasing(g, &morse)?;
    let thetas = compute_thetas(g, &morse)?;
    let graph = one_step_restrictions(g, &morse, &thetas)?;
    Ok(Pipeline { morse, thetas, graph })
}

/// All canonical classes, verified.
#[derive(Clone, Debug)]
pub struct CanonicalBasis {
    pub morse: MorseData,
    pub thetas: ThetaTable,
    pub graph: CanonicalGraph,
    pub classes: Vec<ClassTable>,
}

pub fn canonical_table(g: &GkmGraph, xi: &DirectionVector) -> Result<CanonicalBasis> {
    let Pipeline { morse, thetas, graph } = canonical_graph(g, xi)?;
    let n = g.vertex_count();
    let columns: Vec<Vec<Polynomial>> = (0..n)
        .into_par_iter()
        .map(|q| restrict_column(&morse, &graph, q))
        .collect::<Result<_>>()?;
    let classes: Vec<ClassTable> = (0..n)
        .map(|p| ClassTable {
            owner: p,
            degree: morse.lambda[p],
            values: (0..n).map(|q| columns[q][p].clone()).collect(),
        })
        .collect();
    for t in &classes {
        let report = verify_canonical(g, &morse, t);
        if !report.all_passed() {
            return Err(Error::Internal(format!(
                "class of {} fails verification: {}",
                g.id(t.owner),
                report.failures().join("; ")
            )));
        }
    }
    Ok(CanonicalBasis { morse, thetas, graph, classes })
}

impl CanonicalBasis {
    /// The dual classes `β_q`, indexed by `q`.
    pub fn dual_tables(&self) -> Result<Vec<ClassTable>> {
        let n = self.classes.len();
        let d = self.morse.down[0].len() + self.morse.up[0].len();
        let rows: Vec<Vec<Polynomial>> = (0..n)
            .into_par_iter()
            .map(|p| dual_row(&self.morse, &self.graph, p))
            .collect::<Result<_>>()?;
        Ok((0..n)
            .map(|q| ClassTable {
                owner: q,
                degree: d - self.morse.lambda[q],
                values: (0..n).map(|p| rows[p][q].clone()).collect(),
            })
            .collect())
    }

    pub fn alpha(&self, p: usize, q: usize) -> &Polynomial {
        &self.classes[p].values[q]
    }
}

fn full_factors(md: &MorseData, v: usize) -> Vec<LinearForm> {
    md.down[v].iter().chain(&md.up[v]).map(|(_, w)| w.to_linear_form()).collect()
}

/// `sum_p class(p) / Λ_p`, required to be a polynomial.
pub fn abbv_integrate(md: &MorseData, class: &[Polynomial]) -> Result<Polynomial> {
    if class.len() != md.vertex_count() {
        return Err(Error::DimensionMismatch { expected: md.vertex_count(), found: class.len() });
    }
    let mut total = RationalFunction::zero(md.nvars());
    for (v, value) in class.iter().enumerate() {
        if value.is_zero() {
            continue;
        }
        total = total.add(&RationalFunction::new(value.clone(), &full_factors(md, v))?)?;
    }
    total.to_polynomial()
}

/// Pointwise product of classes.
pub fn pointwise_product(classes: &[&[Polynomial]]) -> Vec<Polynomial> {
    let n = classes[0].len();
    (0..n)
        .map(|v| classes[1..].iter().fold(classes[0][v].clone(), |acc, c| &acc * &c[v]))
        .collect()
}

/// `c_{pq}^r = ∫ α_p α_q β_r` for every `r`, checked against the expansion
/// `sum_r c_{pq}^r α_r(s) = α_p(s) α_q(s)`.
pub fn structure_constants(
    basis: &CanonicalBasis,
    duals: &[ClassTable],
    p: usize,
    q: usize,
) -> Result<BTreeMap<usize, Polynomial>> {
    let md = &basis.morse;
    let n = basis.classes.len();
    let pq = pointwise_product(&[&basis.classes[p].values, &basis.classes[q].values]);
    let mut out = BTreeMap::new();
    for r in 0..n {
        let top = md.lambda[p] + md.lambda[q];
        let c = if md.lambda[r] > top {
            Polynomial::zero(md.nvars())
        } else {
            abbv_integrate(md, &pointwise_product(&[&pq, &duals[r].values]))?
        };
        let deg = (top as i64) - (md.lambda[r] as i64);
        if !(c.is_zero() || (deg >= 0 && c.is_homogeneous_of(deg as u32))) {
            return Err(Error::Internal(format!("structure constant has degree other than {deg}")));
        }
        out.insert(r, c);
    }
    for s in 0..n {
        let expanded = out
            .iter()
            .fold(Polynomial::zero(md.nvars()), |acc, (&r, c)| &acc + &(c * basis.alpha(r, s)));
        if expanded != pq[s] {
            return Err(Error::Internal(format!("structure constants fail the expansion at vertex {s}")));
        }
    }
    Ok(out)
}
