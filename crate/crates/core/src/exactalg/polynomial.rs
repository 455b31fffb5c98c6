use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::linear::LinearForm;
use super::rational::{parse_rational, Rational};
use crate::error::{Error, Result};

/// Exponent vector. Ordered graded-lexicographically with `x1 > x2 > ... > xn`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Divides by `x_i`, if it occurs.
    pub fn divide_var(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Monomial(e))
    }

    /// All monomials of total degree `d` in `n` variables, in descending order.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == n - 1 {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(n, i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if n == 0 {
            return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(n, 0, d, &mut vec![0; n], &mut out);
        out
    }

    fn write_vars(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Homogeneity {
    Zero,
    Homogeneous(u32),
    Mixed,
}

/// Sparse polynomial in `nvars` variables with rational coefficients.
/// Zero coefficients are never stored, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial { nvars: n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::monomial(n, Monomial::one(n), c)
    }

    pub fn from_int(n: usize, c: i64) -> Self {
        Self::constant(n, Rational::from_integer(c.into()))
    }

    pub fn var(n: usize, i: usize) -> Self {
        Self::monomial(n, Monomial::var(n, i), Rational::one())
    }

    pub fn monomial(n: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), n, "monomial arity mismatch");
        let mut p = Self::zero(n);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Product of the given linear forms (the empty product is 1).
    pub fn product_of<'a>(n: usize, factors: impl IntoIterator<Item = &'a LinearForm>) -> Self {
        factors
            .into_iter()
            .fold(Self::one(n), |acc, f| &acc * &f.to_polynomial())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some(c)` if the polynomial is the constant `c` (including zero).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => Homogeneity::Zero,
            Some(d) => {
                if degs.all(|e| e == d) {
                    Homogeneity::Homogeneous(d)
                } else {
                    Homogeneity::Mixed
                }
            }
        }
    }

    /// Zero or homogeneous of degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        matches!(self.homogeneity(), Homogeneity::Zero)
            || self.homogeneity() == Homogeneity::Homogeneous(d)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Checked ring operation; fails on an arity mismatch instead of panicking.
    pub fn arith(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(match op {
            ArithOp::Add => self + other,
            ArithOp::Sub => self - other,
            ArithOp::Mul => self * other,
        })
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        (0..e).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point arity mismatch");
        self.terms.iter().fold(Rational::zero(), |acc, (m, c)| {
            let v = m
                .exponents()
                .iter()
                .zip(point)
                .fold(Rational::one(), |p, (&e, x)| p * num_traits::pow(x.clone(), e as usize));
            acc + c * v
        })
    }

    /// The algebra endomorphism sending `x_i` to `images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars, "substitution arity mismatch");
        let target_n = images.first().map_or(self.nvars, |p| p.nvars);
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target_n), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target_n);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target_n, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        out
    }

    /// Exact division by a nonzero linear form. Any remainder is an error.
    pub fn exact_divide_linear(&self, f: &LinearForm) -> Result<Polynomial> {
        if f.dim() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: f.dim() });
        }
        let k = f.first_nonzero().ok_or(Error::ZeroLinearForm)?;
        let lead = f.coeffs()[k].clone();
        let fp = f.to_polynomial();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let Some(t) = m.divide_var(k) else {
                let leading = Polynomial::monomial(self.nvars, m.clone(), c.clone());
                return Err(Error::NotDivisible { leading: leading.to_string() });
            };
            let step = Polynomial::monomial(self.nvars, t, c / &lead);
            rem = &rem - &(&step * &fp);
            quot = &quot + &step;
        }
        Ok(quot)
    }

    /// Parses the text form produced by `Display`, e.g. `x1*x2 - x2^2 + 2/3*x3^2`.
    pub fn parse(s: &str, nvars: usize) -> Result<Polynomial> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in polynomial {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty input"));
        }
        // Split into signed terms; '-' after '/' or '^' is not a separator.
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !matches!(prev, Some('/') | Some('^') | Some('*')) {
                if !cur.is_empty() {
                    terms.push((neg, std::mem::take(&mut cur)));
                } else if prev.is_some() {
                    return Err(bad("dangling sign"));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        if cur.is_empty() {
            return Err(bad("trailing sign"));
        }
        terms.push((neg, cur));

        let mut out = Polynomial::zero(nvars);
        for (neg, term) in terms {
            let mut coeff = Rational::one();
            let mut exps = vec![0u32; nvars];
            for factor in term.split('*') {
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, exp) = match rest.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                        None => (rest, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad("bad variable index"))?;
                    if idx == 0 || idx > nvars {
                        return Err(bad("variable index out of range"));
                    }
                    exps[idx - 1] += exp;
                } else {
                    coeff *= parse_rational(factor)?;
                }
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term(Monomial(exps), coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                m.write_vars(f)?;
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, n).unwrap()
    }

    #[test]
    fn expansion() {
        let a = p("x1 - x2", 3);
        let b = p("x2 - x3", 3);
        assert_eq!((&a * &b).to_string(), "x1*x2 - x1*x3 - x2^2 + x2*x3");
    }

    #[test]
    fn additive_identity() {
        let a = p("x1*x2 - 3/4*x3^2 + 5", 3);
        assert_eq!(&a + &Polynomial::zero(3), a);
    }

    #[test]
    fn lambda_minus_of_third_vertex() {
        let prod = &p("x1 - x3", 3) * &p("x2 - x3", 3);
        let expected = LinearForm::from_ints(&[1, 0, -1]).to_polynomial()
            * LinearForm::from_ints(&[0, 1, -1]).to_polynomial();
        assert_eq!(prod, expected);
        assert_eq!(prod.to_string(), "x1*x2 - x1*x3 - x2*x3 + x3^2");
    }

    #[test]
    fn display_roundtrip() {
        let s = "x1*x2 - x2^2 + 2/3*x3^2";
        assert_eq!(p(s, 3).to_string(), s);
        assert_eq!(p("-x1 + 1", 2).to_string(), "-x1 + 1");
        assert_eq!(p("0", 2).to_string(), "0");
        assert_eq!(p("-2/3*x1^2*x2", 2).to_string(), "-2/3*x1^2*x2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Polynomial::parse("x4", 3).is_err());
        assert!(Polynomial::parse("x1 +", 3).is_err());
        assert!(Polynomial::parse("", 3).is_err());
        assert!(Polynomial::parse("y1", 3).is_err());
    }

    #[test]
    fn exact_division() {
        let prod = &p("x1 - x3", 3) * &p("x2 - x3", 3);
        let q = prod.exact_divide_linear(&LinearForm::from_ints(&[1, 0, -1])).unwrap();
        assert_eq!(q, p("x2 - x3", 3));

        let err = p("x1^2", 2).exact_divide_linear(&LinearForm::from_ints(&[1, -1])).unwrap_err();
        assert!(matches!(err, Error::NotDivisible { .. }));

        let q = p("2*x1*x2", 2).exact_divide_linear(&LinearForm::from_ints(&[0, 2])).unwrap();
        assert_eq!(q, p("x1", 2));
    }

    #[test]
    fn division_by_zero_form() {
        let err = p("x1", 2).exact_divide_linear(&LinearForm::zero(2)).unwrap_err();
        assert!(matches!(err, Error::ZeroLinearForm));
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let err = p("x1", 2).arith(&p("x1", 3), ArithOp::Add).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn homogeneity_tracking() {
        assert_eq!(Polynomial::zero(2).homogeneity(), Homogeneity::Zero);
        assert_eq!(p("x1*x2 - x2^2", 2).homogeneity(), Homogeneity::Homogeneous(2));
        assert_eq!(p("x1 + 1", 2).homogeneity(), Homogeneity::Mixed);
    }

    #[test]
    fn degree_enumeration() {
        let ms = Monomial::all_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(Monomial::all_of_degree(2, 0), vec![Monomial::one(2)]);
    }
}
