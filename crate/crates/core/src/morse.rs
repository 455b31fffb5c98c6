//! Ψ-values, indices and weight products for a generic direction.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{DirectionVector, LinearForm, Polynomial, Rational, Weight};
use crate::gkmgraph::GkmGraph;

fn check_dim(g: &GkmGraph, xi: &DirectionVector) -> Result<()> {
    if xi.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: xi.dim() });
    }
    Ok(())
}

/// The first edge (in `(from, to)` order) whose weight pairs to zero with `xi`.
pub fn genericity_witness(g: &GkmGraph, xi: &DirectionVector) -> Result<Option<(usize, usize)>> {
    check_dim(g, xi)?;
    Ok(g.edges().find(|e| e.weight.pair(xi).is_zero()).map(|e| (e.from, e.to)))
}

pub fn is_generic(g: &GkmGraph, xi: &DirectionVector) -> Result<bool> {
    Ok(genericity_witness(g, xi)?.is_none())
}

pub fn require_generic(g: &GkmGraph, xi: &DirectionVector) -> Result<()> {
    match genericity_witness(g, xi)? {
        None => Ok(()),
        Some((a, b)) => Err(Error::NonGeneric { from: g.id(a).into(), to: g.id(b).into() }),
    }
}

/// Per-vertex Morse data. Weights at `p` are `η(r, p)` over incoming edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseData {
    pub xi: DirectionVector,
    pub psi: Vec<Rational>,
    pub lambda: Vec<usize>,
    pub lambda_minus: Vec<Polynomial>,
    pub lambda_plus: Vec<Polynomial>,
    pub lambda_full: Vec<Polynomial>,
    /// `(r, η(r, p))` for neighbours `r` below `p`.
    pub down: Vec<Vec<(usize, Weight)>>,
    /// `(r, η(r, p))` for neighbours `r` above `p`.
    pub up: Vec<Vec<(usize, Weight)>>,
    pub phi: Vec<LinearForm>,
}

impl MorseData {
    pub fn vertex_count(&self) -> usize {
        self.psi.len()
    }

    pub fn nvars(&self) -> usize {
        self.xi.dim()
    }

    /// Vertices with the smallest Ψ, in index order.
    pub fn minima(&self) -> Vec<usize> {
        let Some(m) = self.psi.iter().min() else { return Vec::new() };
        (0..self.psi.len()).filter(|&v| &self.psi[v] == m).collect()
    }

    /// Vertex indices sorted by `(Ψ, index)`.
    pub fn psi_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.psi.len()).collect();
        order.sort_by(|&a, &b| self.psi[a].cmp(&self.psi[b]).then(a.cmp(&b)));
        order
    }

    /// Vertex indices sorted by `(λ, Ψ, index)`.
    pub fn lambda_order(&self) -> Vec<usize> {
        let mut order = self.psi_order();
        order.sort_by_key(|&v| self.lambda[v]);
        order
    }
}

pub fn morse_data(g: &GkmGraph, xi: &DirectionVector) -> Result<MorseData> {
    require_generic(g, xi)?;
    let n = g.vertex_count();
    let nv = g.dim();
    let psi: Vec<Rational> = (0..n).map(|v| g.psi(v, xi)).collect();
    let mut down = vec![Vec::new(); n];
    let mut up = vec![Vec::new(); n];
    for p in 0..n {
        for r in g.in_neighbors(p) {
            let w = g.weight(r, p).unwrap().clone();
            if psi[r] < psi[p] {
                down[p].push((r, w));
            } else {
                up[p].push((r, w));
            }
        }
    }
    let product = |ws: &[(usize, Weight)]| {
        let forms: Vec<LinearForm> = ws.iter().map(|(_, w)| w.to_linear_form()).collect();
        Polynomial::product_of(nv, &forms)
    };
    let lambda_minus: Vec<Polynomial> = down.iter().map(|d| product(d)).collect();
    let lambda_plus: Vec<Polynomial> = up.iter().map(|u| product(u)).collect();
    let lambda_full = lambda_minus.iter().zip(&lambda_plus).map(|(a, b)| a * b).collect();
    Ok(MorseData {
        xi: xi.clone(),
        lambda: down.iter().map(Vec::len).collect(),
        psi,
        lambda_minus,
        lambda_plus,
        lambda_full,
        down,
        up,
        phi: (0..n).map(|v| g.phi_form(v)).collect(),
    })
}

/// Ascending edges `(p, q)` with `λ(p) >= λ(q)`, in `(from, to)` order.
pub fn index_violations(g: &GkmGraph, md: &MorseData) -> Vec<(usize, usize)> {
    g.edges()
        .filter(|e| md.psi[e.from] < md.psi[e.to] && md.lambda[e.from] >= md.lambda[e.to])
        .map(|e| (e.from, e.to))
        .collect()
}

/// Returns whether Ψ is index increasing, with the violating edges.
pub fn is_index_increasing(g: &GkmGraph, xi: &DirectionVector) -> Result<(bool, Vec<(usize, usize)>)> {
    let md = morse_data(g, xi)?;
    let v = index_violations(g, &md);
    Ok((v.is_empty(), v))
}

pub fn require_index_increasing(g: &GkmGraph, md: &MorseData) -> Result<()> {
    let v = index_violations(g, md);
    if v.is_empty() {
        return Ok(());
    }
    Err(Error::IndexNotIncreasing {
        violations: v.into_iter().map(|(a, b)| (g.id(a).to_string(), g.id(b).to_string())).collect(),
    })
}

/// Sign of `<η(r, p), xi>` on every stored edge, in edge order.
pub fn sign_pattern(g: &GkmGraph, xi: &DirectionVector) -> Vec<i8> {
    g.edges()
        .map(|e| {
            let s = e.weight.pair(xi);
            if s.is_positive() {
                1
            } else if s.is_negative() {
                -1
            } else {
                0
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces;

    fn xi(s: &str) -> DirectionVector {
        DirectionVector::parse(s).unwrap()
    }

    #[test]
    fn cp2_indices_and_products() {
        let (g, x) = spaces::gen_cpn(2);
        let md = morse_data(&g, &x).unwrap();
        assert_eq!(md.lambda, vec![0, 1, 2]);
        assert_eq!(md.lambda_minus[2], Polynomial::parse("x1*x2 - x1*x3 - x2*x3 + x3^2", 3).unwrap());
        assert_eq!(md.minima(), vec![0]);
    }

    #[test]
    fn cp1_top_has_empty_plus_product() {
        let (g, x) = spaces::gen_cpn(1);
        let md = morse_data(&g, &x).unwrap();
        assert_eq!(md.lambda_plus[1], Polynomial::one(2));
    }

    #[test]
    fn non_generic_witness() {
        let (g, _) = spaces::gen_cpn(2);
        assert_eq!(genericity_witness(&g, &xi("1,1,0")).unwrap(), Some((0, 1)));
        assert!(matches!(morse_data(&g, &xi("1,1,0")), Err(Error::NonGeneric { .. })));
        assert!(matches!(is_generic(&g, &xi("1,1")), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn twisted_square_is_generic() {
        let (g, x) = spaces::gen_cp1xcp1_twisted();
        assert_eq!(x, xi("1,1"));
        assert!(is_generic(&g, &x).unwrap());
    }

    #[test]
    fn flag3_index_is_length() {
        let (g, x) = spaces::gen_flag(3);
        let md = morse_data(&g, &x).unwrap();
        for v in 0..g.vertex_count() {
            let perm = spaces::Permutation::parse(g.id(v)).unwrap();
            assert_eq!(md.lambda[v], perm.length());
        }
        assert!(is_index_increasing(&g, &x).unwrap().0);
    }

    #[test]
    fn blowup_not_index_increasing() {
        let (g, x) = spaces::gen_blowup_cp2();
        let (ok, v) = is_index_increasing(&g, &x).unwrap();
        assert!(!ok);
        let ids: Vec<(&str, &str)> = v.iter().map(|&(a, b)| (g.id(a), g.id(b))).collect();
        assert_eq!(ids, vec![("p2", "p3")]);
        let md = morse_data(&g, &x).unwrap();
        assert!(matches!(require_index_increasing(&g, &md), Err(Error::IndexNotIncreasing { .. })));
    }

    #[test]
    fn reversing_xi_dualizes_indices() {
        for (g, x) in [spaces::gen_cpn(3), spaces::gen_flag(3), spaces::gen_cp1xcp1_twisted()] {
            let d = g.regular_valence().unwrap();
            let a = morse_data(&g, &x).unwrap();
            let b = morse_data(&g, &x.neg()).unwrap();
            for v in 0..g.vertex_count() {
                assert_eq!(b.lambda[v], d - a.lambda[v]);
                assert_eq!(a.lambda_minus[v].total_degree().unwrap_or(0) as usize, a.lambda[v]);
                assert_eq!(a.lambda_plus[v].total_degree().unwrap_or(0) as usize, d - a.lambda[v]);
            }
        }
    }
}
