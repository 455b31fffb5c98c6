//! GKM graph data model: vertices labelled by moment images, directed edges
//! labelled by integral weights, plus validation, stable/unstable sets,
//! JSON (de)serialization and Graphviz export.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{parse_rational, DirectionVector, LinearForm, Rational, Weight};
use crate::morse;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    /// Moment image in coordinates dual to `x1..xn`.
    pub phi: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: Weight,
}

/// Vertices are addressed by index internally; ids are unique strings.
/// Both orientations of every geometric edge are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmGraph {
    dim: usize,
    vertices: Vec<Vertex>,
    edges: BTreeMap<(usize, usize), Weight>,
    index: HashMap<String, usize>,
    incoming: Vec<BTreeSet<usize>>,
}

impl GkmGraph {
    pub fn new(dim: usize) -> Self {
        GkmGraph {
            dim,
            vertices: Vec::new(),
            edges: BTreeMap::new(),
            index: HashMap::new(),
            incoming: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, id: impl Into<String>, phi: Vec<Rational>) -> Result<usize> {
        let id = id.into();
        if self.index.contains_key(&id) {
            return Err(Error::DuplicateVertex(id));
        }
        if phi.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: phi.len() });
        }
        let i = self.vertices.len();
        self.index.insert(id.clone(), i);
        self.vertices.push(Vertex { id, phi });
        self.incoming.push(BTreeSet::new());
        Ok(i)
    }

    /// Inserts a single orientation. Fails on self loops and duplicates.
    pub fn add_directed_edge(&mut self, from: usize, to: usize, weight: Weight) -> Result<()> {
        if from >= self.vertices.len() || to >= self.vertices.len() {
            return Err(Error::Schema(format!("edge endpoint out of range: ({from}, {to})")));
        }
        if from == to {
            return Err(Error::Schema(format!("self loop at {:?}", self.vertices[from].id)));
        }
        if weight.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: weight.dim() });
        }
        if self.edges.contains_key(&(from, to)) {
            return Err(Error::Schema(format!(
                "duplicate edge ({}, {})",
                self.vertices[from].id, self.vertices[to].id
            )));
        }
        self.edges.insert((from, to), weight);
        self.incoming[to].insert(from);
        Ok(())
    }

    /// Inserts `(from, to)` with `weight` and `(to, from)` with `-weight`.
    pub fn add_edge(&mut self, from: usize, to: usize, weight: Weight) -> Result<()> {
        let rev = weight.neg();
        self.add_directed_edge(from, to, weight)?;
        self.add_directed_edge(to, from, rev)
    }

    pub fn add_edge_by_id(&mut self, from: &str, to: &str, weight: Weight) -> Result<()> {
        let (a, b) = (self.index_of(from)?, self.index_of(to)?);
        self.add_edge(a, b, weight)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn id(&self, v: usize) -> &str {
        &self.vertices[v].id
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    /// `Φ(v)` as the linear form `sum phi_i x_i`.
    pub fn phi_form(&self, v: usize) -> LinearForm {
        LinearForm::new(self.vertices[v].phi.clone())
    }

    /// All directed edges in `(from, to)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges
            .iter()
            .map(|(&(from, to), w)| Edge { from, to, weight: w.clone() })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, from: usize, to: usize) -> Option<&Weight> {
        self.edges.get(&(from, to))
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges.contains_key(&(from, to))
    }

    /// Sources `r` of edges `(r, v)`, ascending.
    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incoming[v].iter().copied()
    }

    /// Targets `q` of edges `(v, q)`, ascending.
    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.range((v, 0)..(v + 1, 0)).map(|(&(_, to), _)| to)
    }

    pub fn valence(&self, v: usize) -> usize {
        self.out_neighbors(v).count()
    }

    /// Unordered pairs `{a, b}` (with `a < b`) joined by at least one orientation.
    pub fn geometric_edges(&self) -> Vec<(usize, usize)> {
        let set: BTreeSet<(usize, usize)> =
            self.edges.keys().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        set.into_iter().collect()
    }

    /// Reverses every edge and negates its weight.
    pub fn reversed(&self) -> GkmGraph {
        let mut g = GkmGraph::new(self.dim);
        for v in &self.vertices {
            g.add_vertex(v.id.clone(), v.phi.clone()).expect("ids already unique");
        }
        for e in self.edges() {
            g.add_directed_edge(e.to, e.from, e.weight.neg()).expect("reversal preserves simplicity");
        }
        g
    }

    /// Lists every violation of the GKM graph invariants; empty means valid.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.vertices.is_empty() {
            violations.push(Violation::EmptyGraph);
        }
        for e in self.edges() {
            let (from, to) = (self.id(e.from).to_string(), self.id(e.to).to_string());
            match self.weight(e.to, e.from) {
                None => violations.push(Violation::MissingReverse { from: from.clone(), to: to.clone() }),
                Some(w) if *w != e.weight.neg() => violations.push(Violation::ReverseWeightMismatch {
                    from: from.clone(),
                    to: to.clone(),
                }),
                _ => {}
            }
            let diff = self.phi_form(e.to).sub(&self.phi_form(e.from));
            let positive = diff
                .ratio_to(&e.weight.to_linear_form())
                .is_some_and(|c| c.is_positive());
            if !positive {
                violations.push(Violation::NotPositiveMultiple { from, to });
            }
        }
        for v in 0..self.vertex_count() {
            let ins: Vec<usize> = self.in_neighbors(v).collect();
            for (i, &a) in ins.iter().enumerate() {
                for &b in &ins[i + 1..] {
                    let wa = self.weight(a, v).unwrap().to_linear_form();
                    let wb = self.weight(b, v).unwrap().to_linear_form();
                    if wa.is_proportional(&wb) {
                        violations.push(Violation::DependentWeights {
                            vertex: self.id(v).to_string(),
                            first: self.id(a).to_string(),
                            second: self.id(b).to_string(),
                        });
                    }
                }
            }
        }
        if let Some(expected) = self.modal_valence() {
            for v in 0..self.vertex_count() {
                let valence = self.valence(v);
                if valence != expected {
                    violations.push(Violation::IrregularValence {
                        vertex: self.id(v).to_string(),
                        valence,
                        expected,
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    /// Most frequent valence (smallest on ties).
    fn modal_valence(&self) -> Option<usize> {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for v in 0..self.vertex_count() {
            *counts.entry(self.valence(v)).or_default() += 1;
        }
        counts
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .map(|(&d, _)| d)
    }

    /// The common valence `d` (half the manifold dimension), if regular.
    pub fn regular_valence(&self) -> Option<usize> {
        let d = self.modal_valence()?;
        (0..self.vertex_count()).all(|v| self.valence(v) == d).then_some(d)
    }

    /// `Ψ(v) = <Φ(v), xi>`.
    pub fn psi(&self, v: usize, xi: &DirectionVector) -> Rational {
        self.phi_form(v).pair(xi)
    }

    fn reachable(&self, xi: &DirectionVector, start: usize, ascending: bool) -> Result<BTreeSet<usize>> {
        morse::require_generic(self, xi)?;
        let psi: Vec<Rational> = (0..self.vertex_count()).map(|v| self.psi(v, xi)).collect();
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in self.out_neighbors(v) {
                let ok = if ascending { psi[v] <= psi[w] } else { psi[v] >= psi[w] };
                if ok && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        Ok(seen)
    }

    /// Vertices reachable from `p` along ascending paths (`V_p`).
    pub fn stable_set(&self, xi: &DirectionVector, p: usize) -> Result<BTreeSet<usize>> {
        self.reachable(xi, p, true)
    }

    /// Vertices reachable from `p` along descending paths (`V^p`).
    pub fn unstable_set(&self, xi: &DirectionVector, p: usize) -> Result<BTreeSet<usize>> {
        self.reachable(xi, p, false)
    }

    pub fn ids_of<'a>(&'a self, set: impl IntoIterator<Item = &'a usize>) -> Vec<&'a str> {
        set.into_iter().map(|&v| self.id(v)).collect()
    }

    /// Parses a graph document without checking the GKM invariants. Missing
    /// reverse orientations are generated with negated weights.
    pub fn from_json_str(s: &str) -> Result<GkmGraph> {
        let doc: GraphDoc = serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))?;
        let mut g = GkmGraph::new(doc.dim_t);
        for v in doc.vertices {
            let phi = v
                .phi
                .iter()
                .map(RationalDoc::to_rational)
                .collect::<Result<Vec<_>>>()?;
            g.add_vertex(v.id, phi)?;
        }
        for e in &doc.edges {
            let (a, b) = (g.index_of(&e.from)?, g.index_of(&e.to)?);
            let w = Weight::new(e.weight.clone())
                .map_err(|_| Error::Schema(format!("zero weight on edge ({}, {})", e.from, e.to)))?;
            g.add_directed_edge(a, b, w)?;
        }
        let missing: Vec<Edge> = g.edges().filter(|e| !g.has_edge(e.to, e.from)).collect();
        for e in missing {
            g.add_directed_edge(e.to, e.from, e.weight.neg())?;
        }
        Ok(g)
    }

    /// One orientation per geometric edge, unless the two stored weights are
    /// not negatives of each other, in which case both are written.
    pub fn to_json_value(&self) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = self
            .vertices
            .iter()
            .map(|v| {
                serde_json::json!({
                    "id": v.id,
                    "phi": v.phi.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        let mut edges = Vec::new();
        for (a, b) in self.geometric_edges() {
            let fwd = self.weight(a, b);
            let rev = self.weight(b, a);
            let edge = |from: usize, to: usize, w: &Weight| {
                serde_json::json!({"from": self.id(from), "to": self.id(to), "weight": w.coeffs()})
            };
            match (fwd, rev) {
                (Some(f), Some(r)) if *r == f.neg() => edges.push(edge(a, b, f)),
                (f, r) => {
                    if let Some(f) = f {
                        edges.push(edge(a, b, f));
                    }
                    if let Some(r) = r {
                        edges.push(edge(b, a, r));
                    }
                }
            }
        }
        serde_json::json!({"dim_t": self.dim, "vertices": vertices, "edges": edges})
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("graph JSON is serializable")
    }

    /// Graphviz text. Without `xi`, an undirected graph; with `xi`, vertices
    /// ranked by Ψ and each edge drawn in its ascending orientation.
    pub fn export_dot(&self, xi: Option<&DirectionVector>) -> String {
        let mut out = String::new();
        let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
        match xi {
            None => {
                out.push_str("graph gkm {\n");
                for v in &self.vertices {
                    let _ = writeln!(out, "  {};", quote(&v.id));
                }
                for (a, b) in self.geometric_edges() {
                    let w = self.weight(a, b).or_else(|| self.weight(b, a)).unwrap();
                    let _ = writeln!(
                        out,
                        "  {} -- {} [label={}];",
                        quote(self.id(a)),
                        quote(self.id(b)),
                        quote(&w.to_string())
                    );
                }
            }
            Some(xi) => {
                out.push_str("digraph gkm {\n  rankdir=BT;\n");
                let mut levels: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
                for v in 0..self.vertex_count() {
                    levels.entry(self.psi(v, xi)).or_default().push(v);
                }
                for (psi, vs) in &levels {
                    let _ = write!(out, "  {{ rank=same;");
                    for &v in vs {
                        let _ = write!(out, " {} [label={}];", quote(self.id(v)), quote(&format!("{} ({psi})", self.id(v))));
                    }
                    out.push_str(" }\n");
                }
                for (a, b) in self.geometric_edges() {
                    let (lo, hi) = if self.psi(a, xi) <= self.psi(b, xi) { (a, b) } else { (b, a) };
                    let w = self
                        .weight(lo, hi)
                        .cloned()
                        .or_else(|| self.weight(hi, lo).map(Weight::neg))
                        .unwrap();
                    let _ = writeln!(
                        out,
                        "  {} -> {} [label={}];",
                        quote(self.id(lo)),
                        quote(self.id(hi)),
                        quote(&w.to_string())
                    );
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Parses and validates; any violation is an error.
pub fn load_graph(document: &str) -> Result<GkmGraph> {
    let g = GkmGraph::from_json_str(document)?;
    let report = g.validate();
    if !report.is_valid() {
        return Err(Error::InvalidGraph(report.to_string()));
    }
    Ok(g)
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    dim_t: usize,
    vertices: Vec<VertexDoc>,
    #[serde(default)]
    edges: Vec<EdgeDoc>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct VertexDoc {
    id: String,
    phi: Vec<RationalDoc>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    from: String,
    to: String,
    weight: Vec<i64>,
}

#[derive(Deserialize, Serialize)]
#[serde(untagged)]
enum RationalDoc {
    Text(String),
    Int(i64),
}

impl RationalDoc {
    fn to_rational(&self) -> Result<Rational> {
        match self {
            RationalDoc::Text(s) => parse_rational(s).map_err(|e| Error::Schema(e.to_string())),
            RationalDoc::Int(i) => Ok(Rational::from_integer((*i).into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyGraph,
    MissingReverse { from: String, to: String },
    ReverseWeightMismatch { from: String, to: String },
    NotPositiveMultiple { from: String, to: String },
    DependentWeights { vertex: String, first: String, second: String },
    IrregularValence { vertex: String, valence: usize, expected: usize },
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::EmptyGraph => "empty_graph",
            Violation::MissingReverse { .. } => "missing_reverse",
            Violation::ReverseWeightMismatch { .. } => "reverse_weight_mismatch",
            Violation::NotPositiveMultiple { .. } => "not_positive_multiple",
            Violation::DependentWeights { .. } => "dependent_weights",
            Violation::IrregularValence { .. } => "irregular_valence",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyGraph => write!(f, "graph has no vertices"),
            Violation::MissingReverse { from, to } => write!(f, "edge ({from}, {to}) has no reverse"),
            Violation::ReverseWeightMismatch { from, to } => {
                write!(f, "weight of ({to}, {from}) is not the negative of ({from}, {to})")
            }
            Violation::NotPositiveMultiple { from, to } => {
                write!(f, "Φ-difference on ({from}, {to}) is not a positive multiple of the weight")
            }
            Violation::DependentWeights { vertex, first, second } => write!(
                f,
                "weights of ({first}, {vertex}) and ({second}, {vertex}) are linearly dependent"
            ),
            Violation::IrregularValence { vertex, valence, expected } => {
                write!(f, "vertex {vertex} has valence {valence}, expected {expected}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Sum of the absolute Ψ-gaps, used by tests to sanity check orientation.
#[doc(hidden)]
pub fn total_psi_variation(g: &GkmGraph, xi: &DirectionVector) -> Rational {
    g.edges()
        .map(|e| (g.psi(e.to, xi) - g.psi(e.from, xi)).abs())
        .fold(Rational::zero(), |a, b| a + b)
}
