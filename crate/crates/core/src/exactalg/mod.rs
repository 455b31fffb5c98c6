//! Exact arithmetic in the symmetric algebra `Q[x1..xn]` and in the part of
//! its fraction field whose denominators are products of linear forms.

mod linear;
mod polynomial;
mod ratfun;
mod rational;

pub use linear::{DirectionVector, LinearForm, Weight};
pub use polynomial::{ArithOp, Homogeneity, Monomial, Polynomial};
pub use ratfun::RationalFunction;
pub use rational::{format_rational, parse_rational, parse_rational_list, Rational};

use crate::error::{Error, Result};

/// Applies the algebra endomorphism induced by the projection
/// `X -> X - (<X, xi> / <eta, xi>) eta` on degree-one elements.
pub fn rho_project(p: &Polynomial, eta: &Weight, xi: &DirectionVector) -> Result<Polynomial> {
    let n = p.nvars();
    if eta.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: eta.dim() });
    }
    if xi.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: xi.dim() });
    }
    let eta = eta.to_linear_form();
    let denom = eta.pair(xi);
    if num_traits::Zero::is_zero(&denom) {
        return Err(Error::DegeneratePairing { eta: eta.to_string() });
    }
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            let scale = &xi.coeffs()[i] / &denom;
            LinearForm::unit(n, i).sub(&eta.scale(&scale)).to_polynomial()
        })
        .collect();
    Ok(p.substitute(&images))
}
