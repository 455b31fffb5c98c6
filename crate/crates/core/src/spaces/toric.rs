//! Smooth (Delzant) lattice polygons and their GKM graphs.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactalg::{LinearForm, Rational, Weight};
use crate::gkmgraph::GkmGraph;

/// Corners of a convex lattice polygon in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    corners: Vec<[Rational; 2]>,
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn sub(a: &[Rational; 2], b: &[Rational; 2]) -> [Rational; 2] {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

fn cross(a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

impl Polygon {
    /// Checks convexity, orientation and smoothness at every corner.
    pub fn new(corners: Vec<[Rational; 2]>) -> Result<Self> {
        if corners.len() < 3 {
            return Err(Error::InvalidGraph("polygon needs at least 3 corners".into()));
        }
        let p = Polygon { corners };
        for i in 0..p.len() {
            let (a, b) = (p.edge_vector(i), p.edge_vector((i + 1) % p.len()));
            if !cross(&a, &b).is_positive() {
                return Err(Error::InvalidGraph(format!("polygon not strictly convex at corner {}", i + 1)));
            }
            let (u, v) = (p.direction(i), p.direction((i + 1) % p.len()));
            let det = u.coeffs()[0] * v.coeffs()[1] - u.coeffs()[1] * v.coeffs()[0];
            if det.abs() != 1 {
                return Err(Error::InvalidGraph(format!("polygon not smooth at corner {}", i + 2)));
            }
        }
        Ok(p)
    }

    fn from_ints(pts: &[(i64, i64)]) -> Result<Self> {
        Self::new(pts.iter().map(|&(x, y)| [r(x), r(y)]).collect())
    }

    pub fn triangle(size: i64) -> Result<Self> {
        Self::from_ints(&[(0, 0), (size, 0), (0, size)])
    }

    pub fn rectangle(a: i64, b: i64) -> Result<Self> {
        Self::from_ints(&[(0, 0), (a, 0), (a, b), (0, b)])
    }

    /// The trapezoid with corners `(0,0), (a+kb,0), (a,b), (0,b)`.
    pub fn hirzebruch(a: i64, b: i64, k: i64) -> Result<Self> {
        Self::from_ints(&[(0, 0), (a + k * b, 0), (a, b), (0, b)])
    }

    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    pub fn corners(&self) -> &[[Rational; 2]] {
        &self.corners
    }

    /// `corner[i+1] - corner[i]`.
    fn edge_vector(&self, i: usize) -> [Rational; 2] {
        sub(&self.corners[(i + 1) % self.len()], &self.corners[i])
    }

    /// Primitive lattice vector along edge `i`.
    pub fn direction(&self, i: usize) -> Weight {
        let v = self.edge_vector(i);
        Weight::primitive_along(&LinearForm::new(v.to_vec())).expect("distinct corners")
    }

    /// Length of edge `i` in units of its primitive vector.
    pub fn lattice_length(&self, i: usize) -> Rational {
        let v = self.edge_vector(i);
        let u = self.direction(i).to_linear_form();
        LinearForm::new(v.to_vec()).ratio_to(&u).expect("parallel by construction")
    }

    /// Cuts corner `i` at lattice depth `depth`, replacing it by two corners.
    pub fn truncate(&self, i: usize, depth: &Rational) -> Result<Polygon> {
        let n = self.len();
        let prev = (i + n - 1) % n;
        if !depth.is_positive() || depth >= &self.lattice_length(prev) || depth >= &self.lattice_length(i) {
            return Err(Error::InvalidGraph(format!("truncation depth {depth} too large at corner {}", i + 1)));
        }
        let c = &self.corners[i];
        let back = self.direction(prev).neg().to_linear_form();
        let fwd = self.direction(i).to_linear_form();
        let a = [&c[0] + &back.coeffs()[0] * depth, &c[1] + &back.coeffs()[1] * depth];
        let b = [&c[0] + &fwd.coeffs()[0] * depth, &c[1] + &fwd.coeffs()[1] * depth];
        let mut corners = self.corners.clone();
        corners.splice(i..=i, [a, b]);
        Polygon::new(corners)
    }

    /// GKM graph with vertices `v1..vk`; edge weights are primitive edge directions.
    pub fn to_graph(&self) -> GkmGraph {
        let mut g = GkmGraph::new(2);
        for (i, c) in self.corners.iter().enumerate() {
            g.add_vertex(format!("v{}", i + 1), c.to_vec()).unwrap();
        }
        for i in 0..self.len() {
            g.add_edge(i, (i + 1) % self.len(), self.direction(i)).unwrap();
        }
        g
    }
}

/// Largest depth allowed for a corner cut: strictly below half of each
/// adjacent lattice length, so later cuts at the other ends cannot collide.
pub fn max_safe_depth(p: &Polygon, i: usize) -> Rational {
    let n = p.len();
    let half = Rational::new(One::one(), 2.into());
    let m = p.lattice_length((i + n - 1) % n).min(p.lattice_length(i));
    m * half
}
