//! Acceptance suite. Runs every criterion, prints one line each and exits
//! nonzero if any fails. All comparisons are exact.

#![allow(clippy::needless_range_loop)]

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gkm::canonical::{
    abbv_integrate, canonical_table, compute_thetas, index_step_edges, pointwise_product, positivity_report, restrict,
    robust_divisibility_report, structure_constants, theta_modular, theta_projection, verify_canonical,
};
use gkm::exactalg::{LinearForm, Polynomial, Rational, RationalFunction};
use gkm::morse::{is_index_increasing, morse_data};
use gkm::oracle::{billey_restrict, solve_canonical_linear, Permutation, SolveOutcome};
use gkm::spaces::{self, random::random_valid_graphs, SpaceSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn index_increasing_builtins() -> Vec<SpaceSpec> {
    SpaceSpec::builtin_catalog().into_iter().filter(|s| s.is_index_increasing()).collect()
}

fn cpn_closed_form() -> Outcome {
    let mut pairs = 0;
    for n in 1..=6 {
        let (g, xi) = spaces::gen_cpn(n);
        let b = canonical_table(&g, &xi).map_err(err)?;
        let m = n + 1;
        for i in 0..m {
            for j in 0..m {
                let expect = if i <= j {
                    let f: Vec<LinearForm> = (0..i).map(|l| LinearForm::unit(m, l).sub(&LinearForm::unit(m, j))).collect();
                    Polynomial::product_of(m, &f)
                } else {
                    Polynomial::zero(m)
                };
                ensure!(b.alpha(i, j) == &expect, "CP^{n}: α_p{}(p{}) = {}, expected {}", i + 1, j + 1, b.alpha(i, j), expect);
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs over n = 1..6"))
}

fn flag_manifolds() -> Outcome {
    let mut pairs = 0;
    for n in 2..=4 {
        let (g, xi) = spaces::gen_flag(n);
        let b = canonical_table(&g, &xi).map_err(err)?;
        ensure!(b.thetas.values.values().all(|&t| t == 1), "Fl({n}): some Θ differs from 1");
        ensure!(b.thetas.len() == index_step_edges(&g, &b.morse).len(), "Fl({n}): Θ table incomplete");
        for s in 0..g.vertex_count() {
            let sigma = Permutation::parse(g.id(s)).map_err(err)?;
            for m in 0..g.vertex_count() {
                let mu = Permutation::parse(g.id(m)).map_err(err)?;
                let expect = billey_restrict(&sigma, &mu);
                ensure!(b.alpha(s, m) == &expect, "Fl({n}): α_{sigma}({mu}) = {}, subword formula gives {}", b.alpha(s, m), expect);
                pairs += 1;
            }
        }
        let pos = positivity_report(&b.graph, &b.thetas);
        ensure!(pos.all_positive(), "Fl({n}): negative one-step values {:?}", pos.negative());
    }
    Ok(format!("{pairs} pairs match the subword formula, all Θ = 1, all positive"))
}

fn blowup_nonexistence() -> Outcome {
    let (g, xi) = spaces::gen_blowup_cp2();
    let p2 = g.index_of("p2").map_err(err)?;
    let (system, outcome) = solve_canonical_linear(&g, &xi, p2).map_err(err)?;
    let SolveOutcome::Infeasible(cert) = outcome else {
        return Err("solver did not report Infeasible at p2".into());
    };
    ensure!(cert.verify(&system), "certificate does not recombine");
    let (ok, violations) = is_index_increasing(&g, &xi).map_err(err)?;
    ensure!(!ok, "blow-up reported index increasing");
    let ids: Vec<(&str, &str)> = violations.iter().map(|&(a, b)| (g.id(a), g.id(b))).collect();
    ensure!(ids.contains(&("p2", "p3")), "violating edge (p2, p3) not listed: {ids:?}");
    Ok(format!("Infeasible, contradiction {}; violations {ids:?}", cert.constant))
}

fn theta_cross_check() -> Outcome {
    let mut graphs: Vec<(String, gkm::gkmgraph::GkmGraph, gkm::exactalg::DirectionVector)> = SpaceSpec::builtin_catalog()
        .into_iter()
        .map(|s| {
            let (g, xi) = s.build();
            (s.to_string(), g, xi)
        })
        .collect();
    graphs.extend(random_valid_graphs(2024, 50).into_iter().map(|r| (r.description, r.graph, r.xi)));
    let mut edges = 0;
    let mut values = std::collections::BTreeSet::new();
    for (name, g, xi) in &graphs {
        let md = morse_data(g, xi).map_err(err)?;
        for (a, b) in index_step_edges(g, &md) {
            let p = theta_projection(g, &md, a, b).map_err(|e| format!("{name}: {e}"))?;
            let m = theta_modular(g, &md, a, b).map_err(|e| format!("{name}: {e}"))?;
            ensure!(p == m && p != 0, "{name}: edge ({}, {}) projection {p}, modular {m}", g.id(a), g.id(b));
            values.insert(p);
            edges += 1;
        }
    }
    Ok(format!("{edges} edges on {} graphs agree; values seen {values:?}", graphs.len()))
}

fn oracle_equivalence() -> Outcome {
    let mut count = 0;
    let specs = (1..=4).map(SpaceSpec::Cpn).chain((2..=3).map(SpaceSpec::Flag));
    for spec in specs {
        let (g, xi) = spec.build();
        let b = canonical_table(&g, &xi).map_err(err)?;
        for p in 0..g.vertex_count() {
            let (_, outcome) = solve_canonical_linear(&g, &xi, p).map_err(err)?;
            match outcome {
                SolveOutcome::Unique(t) => {
                    ensure!(t == b.classes[p], "{spec}: solver and path formula differ at {}", g.id(p))
                }
                other => return Err(format!("{spec}: solver outcome {other:?} at {}", g.id(p))),
            }
            count += 1;
        }
    }
    Ok(format!("{count} classes identical"))
}

fn dual_orthogonality() -> Outcome {
    let mut count = 0;
    for spec in [SpaceSpec::Cpn(3), SpaceSpec::Flag(3)] {
        let (g, xi) = spec.build();
        let b = canonical_table(&g, &xi).map_err(err)?;
        let duals = b.dual_tables().map_err(err)?;
        let n = g.vertex_count();
        for p in 0..n {
            for q in 0..n {
                let v = abbv_integrate(&b.morse, &pointwise_product(&[&b.classes[p].values, &duals[q].values])).map_err(err)?;
                let expect = if p == q { Polynomial::one(g.dim()) } else { Polynomial::zero(g.dim()) };
                ensure!(v == expect, "{spec}: ∫ α_{} β_{} = {v}", g.id(p), g.id(q));
                count += 1;
            }
        }
    }
    Ok(format!("{count} pairings equal δ"))
}

fn partial_fraction_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for inst in 0..200 {
        let k = 2 + inst % 5;
        let dim = rng.gen_range(1..=4);
        let mut forms: Vec<LinearForm> = Vec::new();
        while forms.len() < k {
            let c: Vec<Rational> = (0..dim)
                .map(|_| Rational::new(rng.gen_range(-9..=9i64).into(), rng.gen_range(1..=4i64).into()))
                .collect();
            let f = LinearForm::new(c);
            if !forms.contains(&f) {
                forms.push(f);
            }
        }
        let mut total = RationalFunction::zero(dim);
        for l in 0..k {
            let den: Vec<LinearForm> = (0..k).filter(|&i| i != l).map(|i| forms[i].sub(&forms[l])).collect();
            total = total.add(&RationalFunction::new(Polynomial::one(dim), &den).map_err(err)?).map_err(err)?;
        }
        ensure!(total.is_zero(), "instance {inst} (k = {k}) sums to {total}");
    }
    Ok("200 instances sum to 0".into())
}

fn minimum_class() -> Outcome {
    let mut count = 0;
    for spec in index_increasing_builtins() {
        let (g, xi) = spec.build();
        let b = canonical_table(&g, &xi).map_err(err)?;
        let min = b.morse.minima();
        ensure!(min.len() == 1, "{spec}: {} minima", min.len());
        for q in 0..g.vertex_count() {
            let v = restrict(&b.morse, &b.graph, min[0], q).map_err(err)?;
            ensure!(v == Polynomial::one(g.dim()), "{spec}: path sum at {} is {v}", g.id(q));
            count += 1;
        }
    }
    Ok(format!("{count} path sums equal 1"))
}

fn structure_constant_checks() -> Outcome {
    let (g, xi) = spaces::gen_cpn(2);
    let b = canonical_table(&g, &xi).map_err(err)?;
    let duals = b.dual_tables().map_err(err)?;
    let c = structure_constants(&b, &duals, 1, 1).map_err(err)?;
    ensure!(c[&1].to_string() == "x1 - x2", "c_{{p2,p2}}^{{p2}} = {}", c[&1]);
    ensure!(c[&2] == Polynomial::one(3), "c_{{p2,p2}}^{{p3}} = {}", c[&2]);

    let (g, xi) = spaces::gen_flag(3);
    let b = canonical_table(&g, &xi).map_err(err)?;
    let duals = b.dual_tables().map_err(err)?;
    let n = g.vertex_count();
    for p in 0..n {
        for q in 0..n {
            let c = structure_constants(&b, &duals, p, q).map_err(err)?;
            let c2 = structure_constants(&b, &duals, q, p).map_err(err)?;
            ensure!(c == c2, "Fl(3): c not symmetric in ({}, {})", g.id(p), g.id(q));
            for s in 0..n {
                let lhs = c.iter().fold(Polynomial::zero(3), |acc, (&r, c)| &acc + &(c * b.alpha(r, s)));
                ensure!(lhs == b.alpha(p, s) * b.alpha(q, s), "Fl(3): expansion fails at {}", g.id(s));
            }
        }
    }
    Ok("CP^2 values exact; Fl(3) expansion holds for all 36 pairs".into())
}

fn robust_divisibility() -> Outcome {
    let (g, xi) = spaces::gen_cp1xcp1_twisted();
    let md = morse_data(&g, &xi).map_err(err)?;
    let beta = spaces::twisted_beta_fixture();
    ensure!(robust_divisibility_report(&g, &md, &beta.values).map_err(err)?.all_passed(), "fixture β fails");
    let mut count = 0;
    for spec in index_increasing_builtins() {
        let (g, xi) = spec.build();
        let b = canonical_table(&g, &xi).map_err(err)?;
        for t in &b.classes {
            let r = robust_divisibility_report(&g, &b.morse, &t.values).map_err(err)?;
            ensure!(r.all_passed(), "{spec}: class of {} fails", g.id(t.owner));
            count += 1;
        }
    }
    Ok(format!("fixture β and {count} canonical classes pass"))
}

fn invariant_suite() -> Outcome {
    let mut graphs: Vec<(String, gkm::gkmgraph::GkmGraph, gkm::exactalg::DirectionVector)> = index_increasing_builtins()
        .into_iter()
        .map(|s| {
            let (g, xi) = s.build();
            (s.to_string(), g, xi)
        })
        .collect();
    graphs.extend(random_valid_graphs(7, 50).into_iter().map(|r| (r.description, r.graph, r.xi)));
    let mut tables = 0;
    for (name, g, xi) in &graphs {
        let b = canonical_table(g, xi).map_err(|e| format!("{name}: {e}"))?;
        let md = &b.morse;
        let d = g.regular_valence().ok_or(format!("{name}: not regular"))?;
        for v in 0..g.vertex_count() {
            let deg = |p: &Polynomial| p.total_degree().unwrap_or(0) as usize;
            ensure!(deg(&md.lambda_minus[v]) == md.lambda[v], "{name}: deg Λ⁻ ≠ λ at {}", g.id(v));
            ensure!(deg(&md.lambda_plus[v]) == d - md.lambda[v], "{name}: deg Λ⁺ ≠ d − λ at {}", g.id(v));
            ensure!(md.lambda_full[v] == &md.lambda_plus[v] * &md.lambda_minus[v], "{name}: Λ ≠ Λ⁺Λ⁻ at {}", g.id(v));
        }
        for &(a, c) in b.graph.values.keys() {
            ensure!(md.psi[a] < md.psi[c], "{name}: Ψ does not increase on ({}, {})", g.id(a), g.id(c));
            ensure!(md.lambda[c] == md.lambda[a] + 1, "{name}: λ step on ({}, {})", g.id(a), g.id(c));
        }
        for t in &b.classes {
            let r = verify_canonical(g, md, t);
            ensure!(r.all_passed(), "{name}: {:?}", r.failures());
            tables += 1;
        }
        let t = compute_thetas(g, md).map_err(err)?;
        ensure!(t.values.values().all(|&v| v != 0), "{name}: zero Θ");
    }
    Ok(format!("{tables} class tables on {} graphs", graphs.len()))
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 11] = [
        ("1 CP^n closed form", cpn_closed_form, secs(5)),
        ("2 flag manifolds vs subword formula", flag_manifolds, secs(60)),
        ("3 blow-up non-existence", blowup_nonexistence, secs(1)),
        ("4 Θ projection = modular", theta_cross_check, secs(10)),
        ("5 linear solver = path formula", oracle_equivalence, secs(30)),
        ("6 dual-basis orthogonality", dual_orthogonality, secs(10)),
        ("7 partial-fraction identity", partial_fraction_identity, secs(2)),
        ("8 minimum class is 1", minimum_class, secs(10)),
        ("9 structure constants", structure_constant_checks, secs(30)),
        ("10 robust divisibility", robust_divisibility, secs(10)),
        ("11 invariant suite", invariant_suite, secs(60)),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let verdict = match (&outcome, took <= limit) {
            (Ok(_), true) => "PASS",
            _ => {
                failed += 1;
                "FAIL"
            }
        };
        let detail = match outcome {
            Ok(s) => s,
            Err(e) => e,
        };
        let timing = format!("{:.2}s / limit {}s", took.as_secs_f64(), limit.as_secs());
        println!("[{verdict}] criterion {name} ({timing}): {detail}");
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
