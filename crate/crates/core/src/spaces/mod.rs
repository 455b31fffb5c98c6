//! Built-in GKM graphs with their default directions, plus random valid
//! graphs for property testing.

mod permutation;
pub mod random;
pub mod toric;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactalg::{DirectionVector, Polynomial, Rational, Weight};
use crate::gkmgraph::GkmGraph;

pub use permutation::Permutation;

fn q(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

fn int_xi(coeffs: &[i64]) -> DirectionVector {
    DirectionVector::from_ints(coeffs).expect("default direction is nonzero")
}

fn unit_weight(n: usize, i: usize, j: usize) -> Weight {
    let mut c = vec![0; n];
    c[i] += 1;
    c[j] -= 1;
    Weight::new(c).expect("i != j")
}

/// Complex projective space `CP^n`: vertices `p1..p(n+1)`, complete graph,
/// `η(p_i, p_j) = x_i - x_j`, default `xi = (0, -1, ..., -n)`.
pub fn gen_cpn(n: usize) -> (GkmGraph, DirectionVector) {
    assert!(n >= 1, "CP^n needs n >= 1");
    let m = n + 1;
    let mut g = GkmGraph::new(m);
    for i in 0..m {
        let phi = (0..m)
            .map(|j| q(1, m as i64) - if i == j { q(1, 1) } else { q(0, 1) })
            .collect();
        g.add_vertex(format!("p{}", i + 1), phi).unwrap();
    }
    for i in 0..m {
        for j in i + 1..m {
            g.add_edge(i, j, unit_weight(m, i, j)).unwrap();
        }
    }
    let xi: Vec<i64> = (0..m as i64).map(|k| -k).collect();
    (g, int_xi(&xi))
}

/// Complete flags in `C^n`: vertices are permutations, `σ` joined to `t_ij σ`.
/// `Φ(σ) = sum_k k x_{σ(k)}`; the weight is `x_i - x_j` on the orientation
/// that moves value `j` in front of value `i` (`i < j`).
pub fn gen_flag(n: usize) -> (GkmGraph, DirectionVector) {
    assert!(n >= 2, "flag manifold needs n >= 2");
    let perms = Permutation::all(n);
    let mut g = GkmGraph::new(n);
    for p in &perms {
        let mut phi = vec![q(0, 1); n];
        for k in 1..=n {
            phi[p.apply(k) - 1] = q(k as i64, 1);
        }
        g.add_vertex(p.to_string(), phi).unwrap();
    }
    for p in &perms {
        for i in 1..=n {
            for j in i + 1..=n {
                if p.position_of(i) < p.position_of(j) {
                    let t = p.swap_values(i, j);
                    let (a, b) = (g.index_of(&p.to_string()).unwrap(), g.index_of(&t.to_string()).unwrap());
                    g.add_edge(a, b, unit_weight(n, i - 1, j - 1)).unwrap();
                }
            }
        }
    }
    let xi: Vec<i64> = (0..n as i64).map(|k| -k).collect();
    (g, int_xi(&xi))
}

/// `CP^1 x CP^1` with each circle acting with weight 2.
pub fn gen_cp1xcp1_twisted() -> (GkmGraph, DirectionVector) {
    gen_cp1xcp1_weighted(2, 2)
}

/// `CP^1 x CP^1` with weights `a x1` and `b x2` on the two factors.
pub fn gen_cp1xcp1_weighted(a: i64, b: i64) -> (GkmGraph, DirectionVector) {
    assert!(a > 0 && b > 0);
    let mut g = GkmGraph::new(2);
    for (id, x, y) in [("SS", 0, 0), ("SN", 0, b), ("NS", a, 0), ("NN", a, b)] {
        g.add_vertex(id, vec![q(x, 1), q(y, 1)]).unwrap();
    }
    let w1 = Weight::new(vec![a, 0]).unwrap();
    let w2 = Weight::new(vec![0, b]).unwrap();
    g.add_edge_by_id("SS", "NS", w1.clone()).unwrap();
    g.add_edge_by_id("SN", "NN", w1).unwrap();
    g.add_edge_by_id("SS", "SN", w2.clone()).unwrap();
    g.add_edge_by_id("NS", "NN", w2).unwrap();
    (g, int_xi(&[1, 1]))
}

/// The blow-up of `CP^2` at a fixed point, read off the negated triangle
/// with one corner truncated at depth 1/2.
pub fn gen_blowup_cp2() -> (GkmGraph, DirectionVector) {
    let mut g = GkmGraph::new(2);
    for (id, x, y) in [("p1", q(-1, 1), q(0, 1)), ("p2", q(-1, 2), q(0, 1)), ("p3", q(0, 1), q(-1, 2)), ("p4", q(0, 1), q(-1, 1))] {
        g.add_vertex(id, vec![x, y]).unwrap();
    }
    g.add_edge_by_id("p1", "p2", Weight::new(vec![1, 0]).unwrap()).unwrap();
    g.add_edge_by_id("p2", "p3", Weight::new(vec![1, -1]).unwrap()).unwrap();
    g.add_edge_by_id("p3", "p4", Weight::new(vec![0, -1]).unwrap()).unwrap();
    g.add_edge_by_id("p1", "p4", Weight::new(vec![1, -1]).unwrap()).unwrap();
    (g, int_xi(&[1, -1]))
}

/// A class given by its value at every vertex (indexed like the graph).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedClass {
    pub name: String,
    pub values: Vec<Polynomial>,
}

fn class_from_text(name: &str, nvars: usize, values: &[&str]) -> NamedClass {
    NamedClass {
        name: name.to_string(),
        values: values.iter().map(|s| Polynomial::parse(s, nvars).expect("fixture text")).collect(),
    }
}

/// The integral class vanishing at `SN` and `NS` with value `2 x1 x2` at `SS` and `NN`.
pub fn twisted_beta_fixture() -> NamedClass {
    class_from_text("beta", 2, &["2*x1*x2", "0", "0", "2*x1*x2"])
}

/// Classes `γ1..γ4` on the blow-up, vertices in the order `p1..p4`.
pub fn blowup_gamma_fixtures() -> Vec<NamedClass> {
    vec![
        class_from_text("gamma1", 2, &["1", "1", "1", "1"]),
        class_from_text("gamma2", 2, &["0", "x1", "x1", "x1 - x2"]),
        class_from_text("gamma3", 2, &["0", "0", "x1 - x2", "x1 - x2"]),
        class_from_text("gamma4", 2, &["0", "0", "0", "-x1*x2 + x2^2"]),
    ]
}

/// A built-in space selector such as `cpn:3`, `flag:4`, `cp1xcp1_twisted`, `blowup_cp2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceSpec {
    Cpn(usize),
    Flag(usize),
    Cp1xCp1Twisted,
    BlowupCp2,
}

impl SpaceSpec {
    pub fn build(&self) -> (GkmGraph, DirectionVector) {
        match *self {
            SpaceSpec::Cpn(n) => gen_cpn(n),
            SpaceSpec::Flag(n) => gen_flag(n),
            SpaceSpec::Cp1xCp1Twisted => gen_cp1xcp1_twisted(),
            SpaceSpec::BlowupCp2 => gen_blowup_cp2(),
        }
    }

    /// Whether the default direction is index increasing.
    pub fn is_index_increasing(&self) -> bool {
        !matches!(self, SpaceSpec::BlowupCp2)
    }

    /// The spaces used by the test suites.
    pub fn builtin_catalog() -> Vec<SpaceSpec> {
        let mut v: Vec<SpaceSpec> = (1..=4).map(SpaceSpec::Cpn).collect();
        v.extend((2..=4).map(SpaceSpec::Flag));
        v.push(SpaceSpec::Cp1xCp1Twisted);
        v.push(SpaceSpec::BlowupCp2);
        v
    }
}

impl FromStr for SpaceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (s, None),
        };
        let size = |min: usize| -> Result<usize> {
            let a = arg.ok_or_else(|| Error::Parse(format!("space {kind:?} needs a size, e.g. {kind}:3")))?;
            let n: usize = a.parse().map_err(|_| Error::Parse(format!("bad size {a:?}")))?;
            if n < min {
                return Err(Error::Parse(format!("space {kind} needs size >= {min}")));
            }
            Ok(n)
        };
        let no_size = |spec: SpaceSpec| match arg {
            None => Ok(spec),
            Some(_) => Err(Error::Parse(format!("space {kind:?} takes no size"))),
        };
        match kind {
            "cpn" => Ok(SpaceSpec::Cpn(size(1)?)),
            "flag" => Ok(SpaceSpec::Flag(size(2)?)),
            "cp1xcp1_twisted" => no_size(SpaceSpec::Cp1xCp1Twisted),
            "blowup_cp2" => no_size(SpaceSpec::BlowupCp2),
            _ => Err(Error::Parse(format!("unknown space {kind:?}"))),
        }
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceSpec::Cpn(n) => write!(f, "cpn:{n}"),
            SpaceSpec::Flag(n) => write!(f, "flag:{n}"),
            SpaceSpec::Cp1xCp1Twisted => write!(f, "cp1xcp1_twisted"),
            SpaceSpec::BlowupCp2 => write!(f, "blowup_cp2"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morse;

    #[test]
    fn every_builtin_validates_and_is_generic() {
        for spec in SpaceSpec::builtin_catalog() {
            let (g, xi) = spec.build();
            assert!(g.validate().is_valid(), "{spec}: {}", g.validate());
            assert!(morse::is_generic(&g, &xi).unwrap(), "{spec}");
            let md = morse::morse_data(&g, &xi).unwrap();
            assert_eq!(md.lambda.iter().filter(|&&l| l == 0).count(), 1, "{spec}");
            assert_eq!(morse::is_index_increasing(&g, &xi).unwrap().0, spec.is_index_increasing());
        }
    }

    #[test]
    fn cp1_moment_values() {
        let (g, _) = gen_cpn(1);
        assert_eq!(g.vertices()[0].phi, vec![q(-1, 2), q(1, 2)]);
        assert_eq!(g.vertices()[1].phi, vec![q(1, 2), q(-1, 2)]);
    }

    #[test]
    fn flag_sizes() {
        let (g, _) = gen_flag(3);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.geometric_edges().len(), 9);
        let (g, _) = gen_flag(4);
        assert_eq!(g.regular_valence(), Some(6));
    }

    #[test]
    fn twisted_products() {
        let (g, xi) = gen_cp1xcp1_twisted();
        let md = morse::morse_data(&g, &xi).unwrap();
        assert_eq!(md.lambda, vec![0, 1, 1, 2]);
        let nn = g.index_of("NN").unwrap();
        assert_eq!(md.lambda_minus[nn], Polynomial::parse("4*x1*x2", 2).unwrap());
        let beta = twisted_beta_fixture();
        let get = |id: &str| beta.values[g.index_of(id).unwrap()].to_string();
        assert_eq!((get("SS"), get("SN"), get("NS"), get("NN")), ("2*x1*x2".into(), "0".into(), "0".into(), "2*x1*x2".into()));
    }

    #[test]
    fn blowup_products_match_fixtures() {
        let (g, xi) = gen_blowup_cp2();
        let md = morse::morse_data(&g, &xi).unwrap();
        assert_eq!(md.lambda, vec![0, 1, 1, 2]);
        let gammas = blowup_gamma_fixtures();
        assert_eq!(md.lambda_minus[1], gammas[1].values[1]);
        assert_eq!(md.lambda_minus[2], gammas[2].values[2]);
        assert_eq!(md.lambda_minus[3], gammas[3].values[3]);
        assert!(md.psi.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn gamma_fixtures_are_gkm_compatible() {
        let (g, _) = gen_blowup_cp2();
        for c in blowup_gamma_fixtures() {
            for e in g.edges() {
                let d = &c.values[e.to] - &c.values[e.from];
                assert!(d.exact_divide_linear(&e.weight.to_linear_form()).is_ok(), "{}", c.name);
            }
        }
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("cpn:3".parse::<SpaceSpec>().unwrap(), SpaceSpec::Cpn(3));
        assert_eq!("blowup_cp2".parse::<SpaceSpec>().unwrap(), SpaceSpec::BlowupCp2);
        assert!("cpn".parse::<SpaceSpec>().is_err());
        assert!("flag:1".parse::<SpaceSpec>().is_err());
        assert!("torus".parse::<SpaceSpec>().is_err());
        for s in SpaceSpec::builtin_catalog() {
            assert_eq!(s.to_string().parse::<SpaceSpec>().unwrap(), s);
        }
    }
}
