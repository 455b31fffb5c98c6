//! The `gkm` command line. Exit codes: 0 success, 2 refusal (non-generic
//! direction or failed index-increasing hypothesis), 1 anything else.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::canonical::{
    canonical_table, class_values_from_json, positivity_report, robust_divisibility_report,
    structure_constants, theta_table_with, ThetaMethod,
};
use crate::error::{Error, Result};
use crate::exactalg::DirectionVector;
use crate::gkmgraph::{load_graph, GkmGraph};
use crate::morse::{index_violations, morse_data};
use crate::oracle::{billey_restrict, solve_canonical_linear, Permutation};
use crate::report::{self, Report};
use crate::spaces::{self, SpaceSpec};

#[derive(Parser, Debug)]
#[command(name = "gkm", version, about = "Canonical equivariant classes on GKM graphs, in exact arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Graph JSON file.
    #[arg(long, global = true, conflicts_with = "space")]
    pub graph: Option<PathBuf>,

    /// Built-in space: cpn:N, flag:N, cp1xcp1_twisted, blowup_cp2.
    #[arg(long, global = true)]
    pub space: Option<String>,

    /// Generic direction as comma-separated rationals, e.g. 1,-1 or 1/2,3.
    /// Defaults to the built-in direction of `--space`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub xi: Option<String>,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    Projection,
    Modular,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the GKM invariants of a graph.
    Validate,
    /// Morse data: Ψ, index, weight products, index-increasing violations.
    Morse,
    /// Θ on every ascending edge with index step one.
    Theta {
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// All canonical classes by the path formula.
    Canonical,
    /// The dual classes.
    Duals,
    /// Structure constants of the product of two canonical classes.
    Structconsts {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Solve the defining conditions of one canonical class directly.
    Solve {
        #[arg(long)]
        vertex: String,
    },
    /// Schubert restriction on complete flags by the subword formula.
    Billey {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        mu: String,
    },
    /// Robust divisibility of a class.
    Robust {
        /// JSON file: a class table or an object {id: polynomial}.
        #[arg(long, conflicts_with = "fixture")]
        class: Option<PathBuf>,
        /// Built-in class: twisted_beta, gamma1 .. gamma4.
        #[arg(long)]
        fixture: Option<String>,
    },
    /// Graphviz rendering.
    Dot,
    /// The graph in the JSON file format.
    Export,
}

/// A failure together with the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        let code = if error.is_refusal() || matches!(error, Error::IndexNotIncreasing { .. }) { 2 } else { 1 };
        Failure { code, error }
    }
}

struct Input {
    graph: GkmGraph,
    xi: Option<DirectionVector>,
}

fn read_input(common: &Common, strict: bool) -> Result<Input> {
    match (&common.graph, &common.space) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)?;
            let graph = if strict { load_graph(&text)? } else { GkmGraph::from_json_str(&text)? };
            let xi = common.xi.as_deref().map(DirectionVector::parse).transpose()?;
            Ok(Input { graph, xi })
        }
        (None, Some(spec)) => {
            let (graph, default_xi) = spec.parse::<SpaceSpec>()?.build();
            let xi = match common.xi.as_deref() {
                Some(s) => DirectionVector::parse(s)?,
                None => default_xi,
            };
            Ok(Input { graph, xi: Some(xi) })
        }
        (None, None) => Err(Error::Parse("give exactly one of --graph or --space".into())),
        (Some(_), Some(_)) => Err(Error::Parse("--graph and --space are mutually exclusive".into())),
    }
}

fn need_xi(input: &Input) -> Result<&DirectionVector> {
    let xi = input.xi.as_ref().ok_or_else(|| Error::Parse("--xi is required for this subcommand".into()))?;
    if xi.dim() != input.graph.dim() {
        return Err(Error::DimensionMismatch { expected: input.graph.dim(), found: xi.dim() });
    }
    Ok(xi)
}

fn fixture(name: &str) -> Result<(SpaceSpec, Vec<crate::exactalg::Polynomial>)> {
    if name == "twisted_beta" {
        return Ok((SpaceSpec::Cp1xCp1Twisted, spaces::twisted_beta_fixture().values));
    }
    spaces::blowup_gamma_fixtures()
        .into_iter()
        .find(|c| c.name == name)
        .map(|c| (SpaceSpec::BlowupCp2, c.values))
        .ok_or_else(|| Error::Parse(format!("unknown fixture {name:?}")))
}

fn execute(cli: &Cli) -> std::result::Result<(Report, i32), Failure> {
    let common = &cli.common;
    let report = match &cli.command {
        Command::Validate => {
            let input = read_input(common, false)?;
            let v = input.graph.validate();
            let code = if v.is_valid() { 0 } else { 1 };
            return Ok((report::validation(&v), code));
        }
        Command::Dot => {
            let input = read_input(common, false)?;
            let dot = input.graph.export_dot(input.xi.as_ref());
            Report { json: serde_json::json!({"dot": dot}), text: dot }
        }
        Command::Export => {
            let input = read_input(common, false)?;
            let json = input.graph.to_json_value();
            let mut text = input.graph.to_json_string();
            text.push('\n');
            Report { json, text }
        }
        Command::Morse => {
            let input = read_input(common, true)?;
            let md = morse_data(&input.graph, need_xi(&input)?)?;
            let bad = index_violations(&input.graph, &md);
            report::morse(&input.graph, &md, &bad)
        }
        Command::Theta { method } => {
            let input = read_input(common, true)?;
            let g = &input.graph;
            let md = morse_data(g, need_xi(&input)?)?;
            let tables = match method {
                MethodArg::Projection => vec![("projection", theta_table_with(g, &md, ThetaMethod::Projection)?)],
                MethodArg::Modular => vec![("modular", theta_table_with(g, &md, ThetaMethod::Modular)?)],
                MethodArg::Both => vec![
                    ("projection", theta_table_with(g, &md, ThetaMethod::Projection)?),
                    ("modular", theta_table_with(g, &md, ThetaMethod::Modular)?),
                ],
            };
            report::thetas(g, &tables)
        }
        Command::Canonical => {
            let input = read_input(common, true)?;
            let b = canonical_table(&input.graph, need_xi(&input)?)?;
            report::canonical(&input.graph, &b, &positivity_report(&b.graph, &b.thetas))
        }
        Command::Duals => {
            let input = read_input(common, true)?;
            let b = canonical_table(&input.graph, need_xi(&input)?)?;
            report::classes(&input.graph, &b.dual_tables()?, "beta")
        }
        Command::Structconsts { p, q } => {
            let input = read_input(common, true)?;
            let g = &input.graph;
            let (p, q) = (g.index_of(p)?, g.index_of(q)?);
            let b = canonical_table(g, need_xi(&input)?)?;
            let c = structure_constants(&b, &b.dual_tables()?, p, q)?;
            report::structure_constants(g, p, q, &c)
        }
        Command::Solve { vertex } => {
            let input = read_input(common, false)?;
            let g = &input.graph;
            let p = g.index_of(vertex)?;
            let (system, outcome) = solve_canonical_linear(g, need_xi(&input)?, p)?;
            report::solve(g, &system, &outcome)
        }
        Command::Billey { n, sigma, mu } => {
            let (s, m) = (Permutation::parse(sigma)?, Permutation::parse(mu)?);
            if s.n() != *n || m.n() != *n {
                return Err(Error::Parse(format!("permutations must have {n} letters")).into());
            }
            report::billey(&s.to_string(), &m.to_string(), &billey_restrict(&s, &m))
        }
        Command::Robust { class, fixture: name } => {
            let (input, values) = match (class, name) {
                (Some(path), None) => {
                    let input = read_input(common, true)?;
                    let text = std::fs::read_to_string(path).map_err(Error::from)?;
                    let doc: serde_json::Value = serde_json::from_str(&text).map_err(Error::from)?;
                    let values = class_values_from_json(&input.graph, doc.get("values").unwrap_or(&doc))?;
                    (input, values)
                }
                (None, Some(name)) => {
                    let (spec, values) = fixture(name)?;
                    let input = if common.graph.is_none() && common.space.is_none() {
                        let (graph, xi) = spec.build();
                        Input { graph, xi: Some(xi) }
                    } else {
                        read_input(common, true)?
                    };
                    if input.graph.vertex_count() != values.len() || input.graph.dim() != values[0].nvars() {
                        return Err(Error::Parse(format!("fixture {name} belongs to {spec}")).into());
                    }
                    (input, values)
                }
                _ => return Err(Error::Parse("give exactly one of --class or --fixture".into()).into()),
            };
            let md = morse_data(&input.graph, need_xi(&input)?)?;
            report::robust(&input.graph, &robust_divisibility_report(&input.graph, &md, &values)?)
        }
    };
    Ok((report, 0))
}

/// Runs one invocation, writing the report to `out` (or `--output`) and errors to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let as_json = cli.common.format == Format::Json;
    let outcome = execute(&cli).and_then(|(report, code)| {
        let body = report.render(as_json);
        match &cli.common.output {
            Some(path) => std::fs::write(path, body).map_err(|e| Failure::from(Error::from(e)))?,
            None => out.write_all(body.as_bytes()).map_err(|e| Failure::from(Error::from(e)))?,
        }
        Ok(code)
    });
    match outcome {
        Ok(code) => code,
        Err(Failure { code, error }) => {
            if as_json {
                let v = report::error(&error, code);
                let _ = writeln!(err, "{}", serde_json::to_string(&v).expect("error serializes"));
            } else {
                let _ = writeln!(err, "error: {error}");
            }
            code
        }
    }
}

/// Entry point for the binary. Honors `GKM_THREADS`.
pub fn main() -> i32 {
    if let Some(n) = std::env::var("GKM_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(std::iter::once("gkm").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn cpn_canonical_entry() {
        let (code, out, _) = run(&["canonical", "--space", "cpn:3", "--xi", "0,-1,-2,-3", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["classes"][1]["values"]["p4"], "x1 - x4");
    }

    #[test]
    fn blowup_refused() {
        let (code, _, err) = run(&["canonical", "--space", "blowup_cp2", "--xi", "1,-1"]);
        assert_eq!(code, 2);
        assert!(err.contains("index-increasing hypothesis fails"));
        assert!(err.contains("(p2, p3)"));
    }

    #[test]
    fn non_generic_is_refusal() {
        let (code, _, err) = run(&["morse", "--space", "cpn:2", "--xi", "1,1,1", "--format", "json"]);
        assert_eq!(code, 2);
        assert!(err.contains("\"exit_code\":2"));
    }

    #[test]
    fn missing_source_is_error() {
        assert_eq!(run(&["canonical"]).0, 1);
        assert_eq!(run(&["nonsense"]).0, 1);
    }

    #[test]
    fn billey_value() {
        let (code, out, _) = run(&["billey", "--n", "3", "--sigma", "213", "--mu", "321"]);
        assert_eq!(code, 0);
        assert_eq!(out, "x1 - x3\n");
    }
}
