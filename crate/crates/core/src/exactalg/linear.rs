use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::polynomial::{Monomial, Polynomial};
use super::rational::{parse_rational_list, Rational};
use crate::error::{Error, Result};

/// A degree-one element `sum a_i x_i` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LinearForm {
    coeffs: Vec<Rational>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        LinearForm { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        LinearForm { coeffs: vec![Rational::zero(); n] }
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut f = Self::zero(n);
        f.coeffs[i] = Rational::one();
        f
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        LinearForm {
            coeffs: coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `<self, xi>`.
    pub fn pair(&self, xi: &DirectionVector) -> Rational {
        self.coeffs
            .iter()
            .zip(xi.coeffs())
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        assert_eq!(self.dim(), other.dim(), "linear form dimension mismatch");
        LinearForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &LinearForm) -> LinearForm {
        assert_eq!(self.dim(), other.dim(), "linear form dimension mismatch");
        LinearForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> LinearForm {
        LinearForm { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn neg(&self) -> LinearForm {
        LinearForm { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let n = self.dim();
        Polynomial::from_terms(
            n,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Splits `self = scale * monic` where `monic` has first nonzero coefficient 1.
    pub fn monic(&self) -> Option<(Rational, LinearForm)> {
        let k = self.first_nonzero()?;
        let lead = self.coeffs[k].clone();
        let inv = lead.recip();
        Some((lead, self.scale(&inv)))
    }

    /// Returns `c` with `self = c * other`, if it exists.
    pub fn ratio_to(&self, other: &LinearForm) -> Option<Rational> {
        if self.dim() != other.dim() {
            return None;
        }
        let k = other.first_nonzero()?;
        let c = &self.coeffs[k] / &other.coeffs[k];
        if other.scale(&c) == *self {
            Some(c)
        } else {
            None
        }
    }

    /// Linearly dependent (including when either form is zero).
    pub fn is_proportional(&self, other: &LinearForm) -> bool {
        if self.is_zero() || other.is_zero() {
            return true;
        }
        self.ratio_to(other).is_some()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_polynomial().fmt(f)
    }
}

/// An integral weight in the weight lattice. Never zero; primitivity is not required.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::ZeroLinearForm);
        }
        Ok(Weight(coeffs))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }

    pub fn to_linear_form(&self) -> LinearForm {
        LinearForm::from_ints(&self.0)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        self.to_linear_form().to_polynomial()
    }

    pub fn pair(&self, xi: &DirectionVector) -> Rational {
        self.to_linear_form().pair(xi)
    }

    /// The primitive integral weight on the ray through a nonzero rational vector.
    pub fn primitive_along(v: &LinearForm) -> Result<Weight> {
        if v.is_zero() {
            return Err(Error::ZeroLinearForm);
        }
        let lcm = v
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let ints: Vec<BigInt> = v.coeffs().iter().map(|c| (c * &lcm).to_integer()).collect();
        let g = ints
            .iter()
            .fold(BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, c));
        ints.iter()
            .map(|c| {
                i64::try_from(c / &g).map_err(|_| Error::Internal("weight coefficient overflow".into()))
            })
            .collect::<Result<Vec<_>>>()
            .and_then(Weight::new)
    }
}

impl TryFrom<Vec<i64>> for Weight {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Weight::new(v)
    }
}

impl From<Weight> for Vec<i64> {
    fn from(w: Weight) -> Self {
        w.0
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_polynomial().fmt(f)
    }
}

/// A direction `xi` in the Lie algebra, with rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DirectionVector(Vec<Rational>);

impl DirectionVector {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().all(Zero::is_zero) {
            return Err(Error::Parse("direction vector must be nonzero".into()));
        }
        Ok(DirectionVector(coeffs))
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// Comma separated rationals, e.g. `"0,-1,-2"` or `"1/2,-1"`.
    pub fn parse(s: &str) -> Result<Self> {
        Self::new(parse_rational_list(s)?)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn neg(&self) -> DirectionVector {
        DirectionVector(self.0.iter().map(|c| -c).collect())
    }

    /// Signs of `<eta, xi>` agree for every weight in `weights`.
    pub fn same_sign_pattern<'a>(
        &self,
        other: &DirectionVector,
        weights: impl IntoIterator<Item = &'a Weight>,
    ) -> bool {
        weights
            .into_iter()
            .all(|w| w.pair(self).signum() == w.pair(other).signum())
    }
}

impl fmt::Display for DirectionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monic_absorbs_scale() {
        let f = LinearForm::from_ints(&[0, -2, 4]);
        let (s, m) = f.monic().unwrap();
        assert_eq!(s, Rational::from_integer((-2).into()));
        assert_eq!(m, LinearForm::from_ints(&[0, 1, -2]));
        assert!(LinearForm::zero(3).monic().is_none());
    }

    #[test]
    fn primitive_weight() {
        let v = LinearForm::new(vec![
            Rational::new(1.into(), 2.into()),
            Rational::new((-1).into(), 2.into()),
        ]);
        assert_eq!(Weight::primitive_along(&v).unwrap(), Weight::new(vec![1, -1]).unwrap());
        let v = LinearForm::from_ints(&[0, -6]);
        assert_eq!(Weight::primitive_along(&v).unwrap(), Weight::new(vec![0, -1]).unwrap());
    }

    #[test]
    fn zero_weight_rejected() {
        assert!(Weight::new(vec![0, 0]).is_err());
        assert!(serde_json::from_str::<Weight>("[0,0]").is_err());
        assert_eq!(serde_json::from_str::<Weight>("[2,0]").unwrap().to_string(), "2*x1");
    }

    #[test]
    fn proportionality() {
        let a = LinearForm::from_ints(&[1, 0]);
        let b = LinearForm::from_ints(&[2, 0]);
        let c = LinearForm::from_ints(&[1, 1]);
        assert!(a.is_proportional(&b));
        assert!(!a.is_proportional(&c));
        assert_eq!(b.ratio_to(&a), Some(Rational::from_integer(2.into())));
    }
}
