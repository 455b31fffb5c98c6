//! Canonical classes straight from their defining conditions, as the
//! solution of a linear system over the rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::json;

use crate::canonical::{eliminate_along, ClassTable};
use crate::error::{Error, Result};
use crate::exactalg::{DirectionVector, Monomial, Polynomial, Rational};
use crate::gkmgraph::GkmGraph;
use crate::morse::{morse_data, MorseData};

/// `sum coeffs[u] * unknown[u] = rhs`, from one coefficient of the reduced
/// difference across one edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub edge: (usize, usize),
    pub monomial: Monomial,
    pub coeffs: BTreeMap<usize, Rational>,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub owner: usize,
    pub vertex_count: usize,
    pub nvars: usize,
    pub degree: usize,
    /// Unknown `u` is the coefficient of `unknowns[u].1` in the value at `unknowns[u].0`.
    pub unknowns: Vec<(usize, Monomial)>,
    /// Values that are fixed: the diagonal and the forced zeros.
    pub fixed: BTreeMap<usize, Polynomial>,
    pub equations: Vec<Equation>,
}

/// `sum_i multipliers[i] * equation[i]` reads `0 = constant` with `constant != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfeasibilityCertificate {
    pub multipliers: Vec<(usize, BigInt)>,
    pub constant: Rational,
}

impl InfeasibilityCertificate {
    /// Recombines the original equations and confirms the contradiction.
    pub fn verify(&self, system: &LinearSystem) -> bool {
        let mut lhs: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut rhs = Rational::zero();
        for (i, y) in &self.multipliers {
            let y = Rational::from_integer(y.clone());
            let eq = &system.equations[*i];
            for (u, c) in &eq.coeffs {
                *lhs.entry(*u).or_insert_with(Rational::zero) += c * &y;
            }
            rhs += &eq.rhs * &y;
        }
        lhs.values().all(Zero::is_zero) && !rhs.is_zero() && rhs == self.constant
    }

    pub fn to_json(&self, g: &GkmGraph, system: &LinearSystem) -> serde_json::Value {
        let rows: Vec<_> = self
            .multipliers
            .iter()
            .map(|(i, y)| {
                let eq = &system.equations[*i];
                json!({
                    "edge": [g.id(eq.edge.0), g.id(eq.edge.1)],
                    "monomial": Polynomial::monomial(g.dim(), eq.monomial.clone(), Rational::one()).to_string(),
                    "multiplier": y.to_string(),
                })
            })
            .collect();
        json!({"combination": rows, "contradiction": format!("0 = {}", self.constant)})
    }
}

#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Unique(ClassTable),
    Infeasible(InfeasibilityCertificate),
    UniquenessViolation { nullity: usize },
}

/// Builds the divisibility system for the class of `p`.
pub fn build_system(g: &GkmGraph, md: &MorseData, p: usize) -> LinearSystem {
    let n = g.vertex_count();
    let nv = g.dim();
    let degree = md.lambda[p];
    let monomials = Monomial::all_of_degree(nv, degree as u32);
    let mut unknowns = Vec::new();
    let mut first_unknown = vec![usize::MAX; n];
    let mut fixed = BTreeMap::new();
    for q in 0..n {
        if q == p {
            fixed.insert(q, md.lambda_minus[p].clone());
        } else if md.lambda[q] <= md.lambda[p] {
            fixed.insert(q, Polynomial::zero(nv));
        } else {
            first_unknown[q] = unknowns.len();
            unknowns.extend(monomials.iter().map(|m| (q, m.clone())));
        }
    }
    let mut equations = Vec::new();
    for (a, b) in g.geometric_edges() {
        let Some(w) = g.weight(a, b).or_else(|| g.weight(b, a)) else { continue };
        let images = eliminate_along(&w.to_linear_form());
        let reduced: Vec<Polynomial> = monomials
            .iter()
            .map(|m| Polynomial::monomial(nv, m.clone(), Rational::one()).substitute(&images))
            .collect();
        // Reduced form of value(b) - value(a), split into unknown and fixed parts.
        let mut rows: BTreeMap<Monomial, (BTreeMap<usize, Rational>, Rational)> = BTreeMap::new();
        for (v, sign) in [(b, Rational::one()), (a, -Rational::one())] {
            if let Some(f) = fixed.get(&v) {
                for (m, c) in f.substitute(&images).terms() {
                    rows.entry(m.clone()).or_default().1 -= c * &sign;
                }
            } else {
                for (k, red) in reduced.iter().enumerate() {
                    let u = first_unknown[v] + k;
                    for (m, c) in red.terms() {
                        let e = rows.entry(m.clone()).or_default();
                        *e.0.entry(u).or_insert_with(Rational::zero) += c * &sign;
                    }
                }
            }
        }
        for (monomial, (mut coeffs, rhs)) in rows {
            coeffs.retain(|_, c| !c.is_zero());
            if coeffs.is_empty() && rhs.is_zero() {
                continue;
            }
            equations.push(Equation { edge: (a, b), monomial, coeffs, rhs });
        }
    }
    LinearSystem { owner: p, vertex_count: n, nvars: nv, degree, unknowns, fixed, equations }
}

fn row_content(row: &[BigInt]) -> BigInt {
    row.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// The equation cleared of denominators, with the factor used.
fn to_integer_row(eq: &Equation, width: usize) -> (Vec<BigInt>, BigInt) {
    let lcm = eq
        .coeffs
        .values()
        .map(|c| c.denom().clone())
        .chain(std::iter::once(eq.rhs.denom().clone()))
        .fold(BigInt::one(), |l, d| l.lcm(&d));
    let scale = Rational::from_integer(lcm.clone());
    let mut row = vec![BigInt::zero(); width + 1];
    for (&u, c) in &eq.coeffs {
        row[u] = (c * &scale).to_integer();
    }
    row[width] = (&eq.rhs * &scale).to_integer();
    (row, lcm)
}

/// Fraction-free Gauss-Jordan elimination tracking how each reduced row
/// combines the original equations.
pub fn solve_system(system: &LinearSystem) -> SolveOutcome {
    let width = system.unknowns.len();
    let m = system.equations.len();
    // Row layout: [coefficients | rhs | combination over original rows].
    // Every row equals sum_j combination_j * (original equation j).
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(m);
    for (i, eq) in system.equations.iter().enumerate() {
        let (mut row, scale) = to_integer_row(eq, width);
        row.extend((0..m).map(|j| if j == i { scale.clone() } else { BigInt::zero() }));
        rows.push(row);
    }
    let mut pivot_row = 0;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..width {
        let Some(sel) = (pivot_row..m).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(pivot_row, sel);
        let pivot = rows[pivot_row].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x = &*x * &pivot[col] - &factor * p;
            }
            let g = row_content(row);
            if !g.is_zero() && !g.is_one() {
                row.iter_mut().for_each(|x| *x /= &g);
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
        if pivot_row == m {
            break;
        }
    }
    for row in &rows[pivot_row..] {
        if !row[width].is_zero() && row[..width].iter().all(Zero::is_zero) {
            let multipliers: Vec<(usize, BigInt)> = row[width + 1..]
                .iter()
                .enumerate()
                .filter(|(_, y)| !y.is_zero())
                .map(|(j, y)| (j, y.clone()))
                .collect();
            let constant = multipliers.iter().fold(Rational::zero(), |acc, (j, y)| {
                acc + &system.equations[*j].rhs * Rational::from_integer(y.clone())
            });
            return SolveOutcome::Infeasible(InfeasibilityCertificate { multipliers, constant });
        }
    }
    if pivots.len() < width {
        return SolveOutcome::UniquenessViolation { nullity: width - pivots.len() };
    }
    let mut solution = vec![Rational::zero(); width];
    for &(r, c) in &pivots {
        solution[c] = Rational::new(rows[r][width].clone(), rows[r][c].clone());
    }
    let mut values = vec![Polynomial::zero(system.nvars); system.vertex_count];
    for (q, f) in &system.fixed {
        values[*q] = f.clone();
    }
    for ((q, m), c) in system.unknowns.iter().zip(solution) {
        values[*q].add_term(m.clone(), c);
    }
    SolveOutcome::Unique(ClassTable { owner: system.owner, degree: system.degree, values })
}

/// The canonical class of `p` from its defining conditions alone.
pub fn solve_canonical_linear(g: &GkmGraph, xi: &DirectionVector, p: usize) -> Result<(LinearSystem, SolveOutcome)> {
    let report = g.validate();
    if !report.is_valid() {
        return Err(Error::InvalidGraph(report.to_string()));
    }
    let md = morse_data(g, xi)?;
    let system = build_system(g, &md, p);
    let outcome = solve_system(&system);
    if let SolveOutcome::Infeasible(cert) = &outcome {
        if !cert.verify(&system) {
            return Err(Error::Internal("infeasibility certificate does not recombine".into()));
        }
    }
    Ok((system, outcome))
}

/// Residual of a candidate assignment on every equation.
pub fn residuals(system: &LinearSystem, candidate: &[Rational]) -> Vec<Rational> {
    system
        .equations
        .iter()
        .map(|eq| {
            eq.coeffs.iter().fold(-eq.rhs.clone(), |acc, (u, c)| acc + c * &candidate[*u])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical_table;
    use crate::spaces;

    #[test]
    fn blowup_p2_infeasible() {
        let (g, xi) = spaces::gen_blowup_cp2();
        let (system, outcome) = solve_canonical_linear(&g, &xi, 1).unwrap();
        let SolveOutcome::Infeasible(cert) = outcome else { panic!("expected infeasible") };
        assert!(cert.verify(&system));
        // Any candidate violates some equation.
        for k in 0..5 {
            let cand: Vec<Rational> =
                (0..system.unknowns.len()).map(|u| Rational::from_integer(((u * 7 + k) as i64 - 3).into())).collect();
            assert!(residuals(&system, &cand).iter().any(|r| !r.is_zero()));
        }
    }

    #[test]
    fn cp2_matches_path_formula() {
        let (g, xi) = spaces::gen_cpn(2);
        let basis = canonical_table(&g, &xi).unwrap();
        for p in 0..3 {
            let (_, outcome) = solve_canonical_linear(&g, &xi, p).unwrap();
            let SolveOutcome::Unique(t) = outcome else { panic!("expected unique") };
            assert_eq!(t, basis.classes[p]);
        }
    }

    #[test]
    fn minimum_class_is_one() {
        let (g, xi) = spaces::gen_cpn(3);
        let (_, outcome) = solve_canonical_linear(&g, &xi, 0).unwrap();
        let SolveOutcome::Unique(t) = outcome else { panic!() };
        assert!(t.values.iter().all(|v| *v == Polynomial::one(4)));
    }

    #[test]
    fn blowup_other_vertices_solve() {
        let (g, xi) = spaces::gen_blowup_cp2();
        let gammas = spaces::blowup_gamma_fixtures();
        for p in [0, 2, 3] {
            let (_, outcome) = solve_canonical_linear(&g, &xi, p).unwrap();
            let SolveOutcome::Unique(t) = outcome else { panic!("p{} not unique", p + 1) };
            assert_eq!(t.values, gammas[p].values, "p{}", p + 1);
        }
    }
}
