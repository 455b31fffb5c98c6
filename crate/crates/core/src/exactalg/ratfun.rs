use std::collections::BTreeMap;
use std::fmt;

use super::linear::LinearForm;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

/// A polynomial numerator over a product of linear forms.
///
/// Denominator factors are monic (first nonzero coefficient 1, any scalar is
/// absorbed into the numerator) and no factor divides the numerator. A value
/// with an empty denominator is a polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: BTreeMap<LinearForm, u32>,
}

impl RationalFunction {
    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction { num: p, den: BTreeMap::new() }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_polynomial(Polynomial::zero(n))
    }

    pub fn one(n: usize) -> Self {
        Self::from_polynomial(Polynomial::one(n))
    }

    /// `num / prod(factors)`. Fails on a zero factor or arity mismatch.
    pub fn new<'a>(num: Polynomial, factors: impl IntoIterator<Item = &'a LinearForm>) -> Result<Self> {
        let n = num.nvars();
        let mut num = num;
        let mut den = BTreeMap::new();
        for f in factors {
            if f.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: f.dim() });
            }
            let (scale, monic) = f.monic().ok_or(Error::ZeroLinearForm)?;
            num = num.scale(&scale.recip());
            *den.entry(monic).or_insert(0) += 1;
        }
        let mut r = RationalFunction { num, den };
        r.cancel();
        Ok(r)
    }

    /// `num / den` for two linear forms.
    pub fn ratio(num: &LinearForm, den: &LinearForm) -> Result<Self> {
        Self::new(num.to_polynomial(), [den])
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    /// Monic denominator factors with multiplicities.
    pub fn denominator(&self) -> impl Iterator<Item = (&LinearForm, u32)> {
        self.den.iter().map(|(f, &m)| (f, m))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let factors: Vec<LinearForm> = self.den.keys().cloned().collect();
        for f in factors {
            let mult = self.den.get_mut(&f).unwrap();
            while *mult > 0 {
                match self.num.exact_divide_linear(&f) {
                    Ok(q) => {
                        self.num = q;
                        *mult -= 1;
                    }
                    Err(_) => break,
                }
            }
            if *mult == 0 {
                self.den.remove(&f);
            }
        }
    }

    fn check_arity(&self, other: &RationalFunction) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: other.nvars() });
        }
        Ok(())
    }

    pub fn add(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.check_arity(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut den = self.den.clone();
        for (f, &m) in &other.den {
            let e = den.entry(f.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        let lift = |r: &RationalFunction| {
            den.iter().fold(r.num.clone(), |acc, (f, &m)| {
                let have = r.den.get(f).copied().unwrap_or(0);
                &acc * &f.to_polynomial().pow(m - have)
            })
        };
        let num = &lift(self) + &lift(other);
        let mut r = RationalFunction { num, den };
        r.cancel();
        Ok(r)
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.check_arity(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars()));
        }
        let mut den = self.den.clone();
        for (f, &m) in &other.den {
            *den.entry(f.clone()).or_insert(0) += m;
        }
        let mut r = RationalFunction { num: &self.num * &other.num, den };
        r.cancel();
        Ok(r)
    }

    pub fn mul_polynomial(&self, p: &Polynomial) -> Result<RationalFunction> {
        self.mul(&RationalFunction::from_polynomial(p.clone()))
    }

    /// The numerator, if the denominator has fully cancelled.
    pub fn to_polynomial(&self) -> Result<Polynomial> {
        if self.is_polynomial() {
            Ok(self.num.clone())
        } else {
            Err(Error::NotPolynomial { denominator: self.denominator_string() })
        }
    }

    fn denominator_string(&self) -> String {
        if self.den.is_empty() {
            return "1".into();
        }
        self.den
            .iter()
            .map(|(f, &m)| if m == 1 { format!("({f})") } else { format!("({f})^{m}") })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Equality by cross-multiplication, independent of the normal form.
    pub fn cross_eq(&self, other: &RationalFunction) -> bool {
        if self.nvars() != other.nvars() {
            return false;
        }
        let expand = |r: &RationalFunction| {
            r.den.iter().fold(Polynomial::one(r.nvars()), |acc, (f, &m)| &acc * &f.to_polynomial().pow(m))
        };
        &self.num * &expand(other) == &other.num * &expand(self)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.denominator_string())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lf(c: &[i64]) -> LinearForm {
        LinearForm::from_ints(c)
    }

    #[test]
    fn opposite_fractions_cancel() {
        let a = RationalFunction::new(Polynomial::one(2), [&lf(&[1, -1])]).unwrap();
        let b = RationalFunction::new(Polynomial::one(2), [&lf(&[-1, 1])]).unwrap();
        let s = a.add(&b).unwrap();
        assert!(s.is_zero());
        assert!(s.is_polynomial());
    }

    #[test]
    fn three_point_identity() {
        let v = [lf(&[1, 0, 0]), lf(&[0, 1, 0]), lf(&[0, 0, 1])];
        let mut total = RationalFunction::zero(3);
        for l in 0..3 {
            let factors: Vec<LinearForm> =
                (0..3).filter(|&i| i != l).map(|i| v[i].sub(&v[l])).collect();
            let term = RationalFunction::new(Polynomial::one(3), &factors).unwrap();
            total = total.add(&term).unwrap();
        }
        assert!(total.is_zero());
    }

    #[test]
    fn product_cancels_to_polynomial() {
        let a = RationalFunction::new(lf(&[1, -1, 0]).to_polynomial(), [&lf(&[1, 0, -1])]).unwrap();
        let b = RationalFunction::from_polynomial(lf(&[1, 0, -1]).to_polynomial());
        let p = a.mul(&b).unwrap();
        assert!(p.is_polynomial());
        assert_eq!(p.to_polynomial().unwrap(), lf(&[1, -1, 0]).to_polynomial());
    }

    #[test]
    fn non_polynomial_is_reported() {
        let r = RationalFunction::new(Polynomial::one(2), [&lf(&[1, -1])]).unwrap();
        assert!(matches!(r.to_polynomial(), Err(Error::NotPolynomial { .. })));
        assert_eq!(
            RationalFunction::from_polynomial(lf(&[1, -1]).to_polynomial()).to_polynomial().unwrap(),
            lf(&[1, -1]).to_polynomial()
        );
    }

    #[test]
    fn scalar_multiples_share_a_factor() {
        let a = RationalFunction::new(Polynomial::one(2), [&lf(&[2, -2])]).unwrap();
        let b = RationalFunction::new(Polynomial::one(2), [&lf(&[-1, 1])]).unwrap();
        assert_eq!(a.denominator().count(), 1);
        let s = a.add(&b).unwrap();
        assert_eq!(s.denominator().count(), 1);
        assert!(s.cross_eq(&RationalFunction::new(Polynomial::from_int(2, -1), [&lf(&[2, -2])]).unwrap()));
    }

    #[test]
    fn zero_factor_rejected() {
        assert!(matches!(
            RationalFunction::new(Polynomial::one(2), [&LinearForm::zero(2)]),
            Err(Error::ZeroLinearForm)
        ));
    }
}
