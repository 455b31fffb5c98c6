use std::collections::BTreeMap;

use serde_json::json;

use super::theta::ThetaTable;
use crate::error::{Error, Result};
use crate::exactalg::{LinearForm, Polynomial, RationalFunction, Rational};
use crate::gkmgraph::GkmGraph;
use crate::morse::{require_index_increasing, MorseData};

/// Edges `(r, r')` with `λ(r') = λ(r) + 1` and nonzero one-step value `α_r(r')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalGraph {
    pub ids: Vec<String>,
    pub values: BTreeMap<(usize, usize), Polynomial>,
    /// Successors of each vertex, sorted by id.
    out: Vec<Vec<usize>>,
    /// Predecessors of each vertex, sorted by id.
    inc: Vec<Vec<usize>>,
}

impl CanonicalGraph {
    pub fn from_values(ids: Vec<String>, values: BTreeMap<(usize, usize), Polynomial>) -> Self {
        let n = ids.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for &(a, b) in values.keys() {
            out[a].push(b);
            inc[b].push(a);
        }
        for list in out.iter_mut().chain(inc.iter_mut()) {
            list.sort_by(|&x, &y| ids[x].cmp(&ids[y]));
        }
        CanonicalGraph { ids, values, out, inc }
    }

    pub fn value(&self, r: usize, r2: usize) -> Option<&Polynomial> {
        self.values.get(&(r, r2))
    }

    pub fn successors(&self, r: usize) -> &[usize] {
        &self.out[r]
    }

    pub fn predecessors(&self, r: usize) -> &[usize] {
        &self.inc[r]
    }

    pub fn edge_count(&self) -> usize {
        self.values.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let edges: Vec<_> = self
            .values
            .iter()
            .map(|(&(a, b), v)| json!({"from": self.ids[a], "to": self.ids[b], "value": v.to_string()}))
            .collect();
        json!({ "edges": edges })
    }
}

/// One-step values `α_r(r') = Λ⁻_{r'} Θ(r, r') / η(r, r')`.
pub fn one_step_restrictions(g: &GkmGraph, md: &MorseData, thetas: &ThetaTable) -> Result<CanonicalGraph> {
    require_index_increasing(g, md)?;
    let mut values = BTreeMap::new();
    for (&(r, r2), &t) in &thetas.values {
        let eta = g.weight(r, r2).expect("theta edges are graph edges").to_linear_form();
        let v = md.lambda_minus[r2].exact_divide_linear(&eta)?.scale(&Rational::from_integer(t.into()));
        if !v.is_zero() {
            values.insert((r, r2), v);
        }
    }
    let ids = g.vertices().iter().map(|v| v.id.clone()).collect();
    Ok(CanonicalGraph::from_values(ids, values))
}

/// All paths from `p` to `q`, in lexicographic order of their id sequences.
pub fn enumerate_paths(cg: &CanonicalGraph, p: usize, q: usize) -> Vec<Vec<usize>> {
    // Prune with reachability to avoid exploring dead branches.
    let n = cg.ids.len();
    let mut reaches = vec![false; n];
    reaches[q] = true;
    let mut stack = vec![q];
    while let Some(v) = stack.pop() {
        for &u in cg.predecessors(v) {
            if !reaches[u] {
                reaches[u] = true;
                stack.push(u);
            }
        }
    }
    let mut out = Vec::new();
    if !reaches[p] {
        return out;
    }
    fn dfs(cg: &CanonicalGraph, v: usize, q: usize, reaches: &[bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if v == q {
            out.push(cur.clone());
            return;
        }
        for &w in cg.successors(v) {
            if reaches[w] {
                cur.push(w);
                dfs(cg, w, q, reaches, cur, out);
                cur.pop();
            }
        }
    }
    let mut cur = vec![p];
    dfs(cg, p, q, &reaches, &mut cur, &mut out);
    out
}

pub(crate) fn minus_factors(md: &MorseData, v: usize) -> Vec<LinearForm> {
    md.down[v].iter().map(|(_, w)| w.to_linear_form()).collect()
}

fn nonzero_difference(md: &MorseData, a: usize, b: usize) -> Result<LinearForm> {
    let d = md.phi[a].sub(&md.phi[b]);
    if d.is_zero() {
        return Err(Error::Internal(format!("moment images of vertices {a} and {b} coincide on a path")));
    }
    Ok(d)
}

/// `(Φ(r') - Φ(r)) α_r(r') / (anchor · Λ⁻_{r'})`.
fn step(md: &MorseData, cg: &CanonicalGraph, r: usize, r2: usize, anchor: &LinearForm) -> Result<RationalFunction> {
    let alpha = cg.value(r, r2).expect("path edges are canonical edges");
    let num = &md.phi[r2].sub(&md.phi[r]).to_polynomial() * alpha;
    let mut factors = vec![anchor.clone()];
    factors.extend(minus_factors(md, r2));
    RationalFunction::new(num, &factors)
}

/// `α_p(q)` by summing over every path, in lexicographic path order.
pub fn restrict(md: &MorseData, cg: &CanonicalGraph, p: usize, q: usize) -> Result<Polynomial> {
    if p == q {
        return Ok(md.lambda_minus[p].clone());
    }
    let n = md.nvars();
    let mut total = RationalFunction::zero(n);
    for path in enumerate_paths(cg, p, q) {
        let mut term = RationalFunction::from_polynomial(md.lambda_minus[q].clone());
        for w in path.windows(2) {
            let anchor = nonzero_difference(md, q, w[0])?;
            term = term.mul(&step(md, cg, w[0], w[1], &anchor)?)?;
        }
        total = total.add(&term)?;
    }
    total.to_polynomial()
}

/// `β_q(p)` by summing over every path from `p` to `q`.
pub fn dual_restrict(md: &MorseData, cg: &CanonicalGraph, q: usize, p: usize) -> Result<Polynomial> {
    if p == q {
        return Ok(md.lambda_plus[p].clone());
    }
    let n = md.nvars();
    let mut total = RationalFunction::zero(n);
    for path in enumerate_paths(cg, p, q) {
        let mut term = RationalFunction::from_polynomial(md.lambda_plus[p].clone());
        for w in path.windows(2) {
            let anchor = nonzero_difference(md, p, w[1])?;
            term = term.mul(&step(md, cg, w[0], w[1], &anchor)?)?;
        }
        total = total.add(&term)?;
    }
    total.to_polynomial()
}

/// `α_p(q)` for every `p` at once, by a backward recursion from `q` over
/// the paths ending at `q`. Entry `p` of the result is `α_p(q)`.
pub fn restrict_column(md: &MorseData, cg: &CanonicalGraph, q: usize) -> Result<Vec<Polynomial>> {
    let n = md.vertex_count();
    let nv = md.nvars();
    let mut partial: Vec<Option<RationalFunction>> = vec![None; n];
    partial[q] = Some(RationalFunction::one(nv));
    let mut order: Vec<usize> = (0..n).filter(|&r| md.lambda[r] < md.lambda[q]).collect();
    order.sort_by(|&a, &b| md.lambda[b].cmp(&md.lambda[a]).then(a.cmp(&b)));
    for r in order {
        let mut acc: Option<RationalFunction> = None;
        for &r2 in cg.successors(r) {
            let Some(s) = &partial[r2] else { continue };
            let anchor = nonzero_difference(md, q, r)?;
            let t = step(md, cg, r, r2, &anchor)?.mul(s)?;
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t)?,
            });
        }
        partial[r] = acc.filter(|a| !a.is_zero());
    }
    (0..n)
        .map(|p| {
            if p == q {
                return Ok(md.lambda_minus[q].clone());
            }
            match &partial[p] {
                None => Ok(Polynomial::zero(nv)),
                Some(s) => s.mul_polynomial(&md.lambda_minus[q])?.to_polynomial(),
            }
        })
        .collect()
}

/// `β_q(p)` for every `q` at once, by a forward recursion from `p`.
/// Entry `q` of the result is `β_q(p)`.
pub fn dual_row(md: &MorseData, cg: &CanonicalGraph, p: usize) -> Result<Vec<Polynomial>> {
    let n = md.vertex_count();
    let nv = md.nvars();
    let mut partial: Vec<Option<RationalFunction>> = vec![None; n];
    partial[p] = Some(RationalFunction::one(nv));
    let mut order: Vec<usize> = (0..n).filter(|&r| md.lambda[r] > md.lambda[p]).collect();
    order.sort_by(|&a, &b| md.lambda[a].cmp(&md.lambda[b]).then(a.cmp(&b)));
    for r2 in order {
        let mut acc: Option<RationalFunction> = None;
        for &r in cg.predecessors(r2) {
            let Some(s) = &partial[r] else { continue };
            let anchor = nonzero_difference(md, p, r2)?;
            let t = s.mul(&step(md, cg, r, r2, &anchor)?)?;
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t)?,
            });
        }
        partial[r2] = acc.filter(|a| !a.is_zero());
    }
    (0..n)
        .map(|q| {
            if q == p {
                return Ok(md.lambda_plus[p].clone());
            }
            match &partial[q] {
                None => Ok(Polynomial::zero(nv)),
                Some(s) => s.mul_polynomial(&md.lambda_plus[p])?.to_polynomial(),
            }
        })
        .collect()
}
