//! Random valid GKM graphs with an index-increasing direction: smooth
//! polygons, projective spaces, flags and their products, moved by a random
//! unimodular change of coordinates.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::toric::{max_safe_depth, Polygon};
use super::{gen_cp1xcp1_weighted, gen_cpn, gen_flag};
use crate::exactalg::{DirectionVector, Rational, Weight};
use crate::gkmgraph::GkmGraph;
use crate::morse;

#[derive(Clone, Debug)]
pub struct RandomSpace {
    pub graph: GkmGraph,
    pub xi: DirectionVector,
    pub description: String,
}

/// Cartesian product. Ids are `"a.b"`, variables are concatenated.
pub fn product(a: &GkmGraph, b: &GkmGraph) -> GkmGraph {
    let (na, nb) = (a.dim(), b.dim());
    let mut g = GkmGraph::new(na + nb);
    for u in a.vertices() {
        for v in b.vertices() {
            let phi = u.phi.iter().chain(&v.phi).cloned().collect();
            g.add_vertex(format!("{}.{}", u.id, v.id), phi).unwrap();
        }
    }
    let m = b.vertex_count();
    for e in a.edges() {
        let w: Vec<i64> = e.weight.coeffs().iter().copied().chain(std::iter::repeat_n(0, nb)).collect();
        for v in 0..m {
            g.add_directed_edge(e.from * m + v, e.to * m + v, Weight::new(w.clone()).unwrap()).unwrap();
        }
    }
    for e in b.edges() {
        let w: Vec<i64> = std::iter::repeat_n(0, na).chain(e.weight.coeffs().iter().copied()).collect();
        for u in 0..a.vertex_count() {
            g.add_directed_edge(u * m + e.from, u * m + e.to, Weight::new(w.clone()).unwrap()).unwrap();
        }
    }
    g
}

/// Applies `Φ -> scale * A Φ + shift` and `η -> A η`; `A` must be invertible.
pub fn transform(g: &GkmGraph, a: &[Vec<i64>], scale: &Rational, shift: &[Rational]) -> GkmGraph {
    let n = g.dim();
    let mut out = GkmGraph::new(n);
    for v in g.vertices() {
        let phi = (0..n)
            .map(|i| {
                let s = (0..n).fold(Rational::from_integer(0.into()), |acc, j| {
                    acc + &v.phi[j] * Rational::from_integer(a[i][j].into())
                });
                s * scale + &shift[i]
            })
            .collect();
        out.add_vertex(v.id.clone(), phi).unwrap();
    }
    for e in g.edges() {
        let w = (0..n).map(|i| (0..n).map(|j| a[i][j] * e.weight.coeffs()[j]).sum()).collect();
        out.add_directed_edge(e.from, e.to, Weight::new(w).expect("invertible map")).unwrap();
    }
    out
}

/// A product of a few elementary integer matrices (determinant ±1).
pub fn random_unimodular<R: Rng>(n: usize, rng: &mut R) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n < 2 {
        if rng.gen_bool(0.5) {
            m[0][0] = -1;
        }
        return m;
    }
    for _ in 0..rng.gen_range(1..=4) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        match rng.gen_range(0..3) {
            0 => {
                let k = if rng.gen_bool(0.5) { 1 } else { -1 };
                for c in 0..n {
                    m[i][c] += k * m[j][c];
                }
            }
            1 => m.swap(i, j),
            _ => m[i].iter_mut().for_each(|x| *x = -*x),
        }
    }
    m
}

fn random_polygon<R: Rng>(rng: &mut R) -> (Polygon, String) {
    match rng.gen_range(0..4) {
        0 => {
            let s = rng.gen_range(1..=3);
            (Polygon::triangle(s).unwrap(), format!("triangle({s})"))
        }
        1 => {
            let (a, b) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            (Polygon::rectangle(a, b).unwrap(), format!("rectangle({a},{b})"))
        }
        2 => {
            let (a, b, k) = (rng.gen_range(1..=3), rng.gen_range(1..=2), rng.gen_range(0..=3));
            (Polygon::hirzebruch(a, b, k).unwrap(), format!("hirzebruch({a},{b},{k})"))
        }
        _ => {
            let s = rng.gen_range(1..=3);
            let t = Polygon::triangle(s).unwrap();
            let c = rng.gen_range(0..3);
            let max = max_safe_depth(&t, c);
            let depth = &max * Rational::new(rng.gen_range(1..=4i64).into(), 5.into());
            (t.truncate(c, &depth).unwrap(), format!("triangle({s}) cut at {} by {depth}", c + 1))
        }
    }
}

fn random_factor<R: Rng>(rng: &mut R) -> (GkmGraph, String) {
    match rng.gen_range(0..6) {
        0..=2 => {
            let (p, d) = random_polygon(rng);
            (p.to_graph(), d)
        }
        3 => {
            let n = rng.gen_range(1..=3);
            (gen_cpn(n).0, format!("cpn({n})"))
        }
        4 => (gen_flag(3).0, "flag(3)".into()),
        _ => {
            let (a, b) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            (gen_cp1xcp1_weighted(a, b).0, format!("cp1xcp1({a},{b})"))
        }
    }
}

/// A random integer direction that is generic and index increasing.
pub fn random_direction<R: Rng>(g: &GkmGraph, rng: &mut R, attempts: usize) -> Option<DirectionVector> {
    for _ in 0..attempts {
        let c: Vec<i64> = (0..g.dim()).map(|_| rng.gen_range(-5..=5)).collect();
        let Ok(xi) = DirectionVector::from_ints(&c) else { continue };
        if let Ok((true, _)) = morse::is_index_increasing(g, &xi) {
            return Some(xi);
        }
    }
    None
}

pub fn random_valid_graph<R: Rng>(rng: &mut R) -> RandomSpace {
    loop {
        let (mut g, mut desc) = random_factor(rng);
        if rng.gen_bool(0.5) {
            let (h, d) = random_factor(rng);
            if g.vertex_count() * h.vertex_count() <= 36 {
                g = product(&g, &h);
                desc = format!("{desc} x {d}");
            }
        }
        let n = g.dim();
        let a = random_unimodular(n, rng);
        let scale = Rational::new(rng.gen_range(1..=6i64).into(), rng.gen_range(1..=3i64).into());
        let shift: Vec<Rational> = (0..n)
            .map(|_| Rational::new(rng.gen_range(-4..=4i64).into(), rng.gen_range(1..=2i64).into()))
            .collect();
        let g = transform(&g, &a, &scale, &shift);
        debug_assert!(g.validate().is_valid());
        if let Some(xi) = random_direction(&g, rng, 200) {
            return RandomSpace { graph: g, xi, description: desc };
        }
    }
}

/// `count` random spaces from a fixed seed.
pub fn random_valid_graphs(seed: u64, count: usize) -> Vec<RandomSpace> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count).map(|_| random_valid_graph(&mut rng)).collect()
}
