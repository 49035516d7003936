//! Command implementations behind the `tautilt` binary.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};
use tautilt_core::stability::BrickSlate;
use tautilt_core::verify::{verify, Analysis};
use tautilt_core::wallchamber::{build_fan, emit_dot, emit_fan_json, emit_svg_stereographic, Projection};
use tautilt_core::{field, intmat, parse_algebra, BoundQuiver, Error, Limits, Module, TauPair, TauTilting};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Info,
    Enumerate,
    Verify,
    Fan,
    Graph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Svg,
    Table,
}

#[derive(Clone, Debug, Parser)]
#[command(
    name = "tautilt",
    version,
    about = "τ-tilting pairs, bricks and wall-and-chamber structures"
)]
pub struct Config {
    /// Algebra description file.
    pub file: PathBuf,
    #[arg(value_enum)]
    pub command: Command,
    /// Output format; each command has its own default.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, default_value_t = 10_000)]
    pub max_nodes: usize,
    /// Largest dimension of a module the enumeration will build.
    #[arg(long, default_value_t = 30)]
    pub max_dim: usize,
    /// Prime field used by the brute-force stability oracle.
    #[arg(long, default_value_t = 2)]
    pub prime: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the result here instead of standard output.
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_TRUNCATED: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

/// What a command produced and the exit code it asks for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. }
        | Error::NonParallelRelation { .. }
        | Error::NotAdmissible(_)
        | Error::VertexOutOfRange(_)
        | Error::ModuleLiteral(_)
        | Error::UnsupportedPrime(_)
        | Error::NotRankThree(_)
        | Error::InvalidRepresentation(_) => EXIT_INPUT,
        Error::Truncated | Error::BudgetExceeded { .. } => EXIT_TRUNCATED,
        _ => EXIT_VIOLATION,
    }
}

pub fn load(config: &Config) -> Result<BoundQuiver, (String, i32)> {
    let text = std::fs::read_to_string(&config.file)
        .map_err(|e| (format!("cannot read {}: {e}", config.file.display()), EXIT_INPUT))?;
    parse_algebra(&text).map_err(|e| (format!("{}: {e}", config.file.display()), EXIT_INPUT))
}

/// Runs a command; `Err` carries a message for standard error.
pub fn run(config: &Config) -> Result<Outcome, (String, i32)> {
    if !field::is_prime(config.prime) {
        return Err((format!("--prime {} is not prime", config.prime), EXIT_INPUT));
    }
    if config.max_nodes == 0 || config.max_dim == 0 {
        return Err(("limits must be positive".into(), EXIT_INPUT));
    }
    let alg = load(config)?;
    let format = config.format.unwrap_or(match config.command {
        Command::Info | Command::Enumerate => Format::Table,
        Command::Verify | Command::Fan => Format::Json,
        Command::Graph => Format::Dot,
    });
    let allowed: &[Format] = match config.command {
        Command::Info | Command::Enumerate => &[Format::Table, Format::Json],
        Command::Verify => &[Format::Json],
        Command::Fan => &[Format::Json, Format::Svg],
        Command::Graph => &[Format::Dot],
    };
    if !allowed.contains(&format) {
        return Err((
            format!("format {format:?} is not available for {:?}", config.command),
            EXIT_INPUT,
        ));
    }
    let fail = |e: Error| (e.to_string(), exit_code(&e));
    if config.command == Command::Info {
        return Ok(Outcome {
            text: info(&alg, format),
            code: EXIT_OK,
        });
    }
    let limits = Limits {
        max_nodes: config.max_nodes,
        max_dim: config.max_dim,
    };
    let mut analysis = Analysis::run(alg, limits, config.seed).map_err(fail)?;
    let truncated = if analysis.graph.complete {
        EXIT_OK
    } else {
        EXIT_TRUNCATED
    };
    match config.command {
        Command::Info => unreachable!(),
        Command::Enumerate => {
            let text = enumerate(&mut analysis, format).map_err(fail)?;
            Ok(Outcome { text, code: truncated })
        }
        Command::Verify => {
            let report = verify(&mut analysis, config.prime).map_err(fail)?;
            let code = if !report.complete {
                EXIT_TRUNCATED
            } else if report.passed {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            };
            let text = serde_json::to_string_pretty(&report).expect("json") + "\n";
            Ok(Outcome { text, code })
        }
        Command::Fan | Command::Graph => {
            let slates = analysis.slates().map_err(fail)?;
            let tt = &analysis.tt;
            let text = if config.command == Command::Graph {
                emit_dot(tt, &analysis.graph, &slates).map_err(fail)?
            } else {
                let fan = build_fan(tt, &analysis.graph, &slates, config.prime).map_err(fail)?;
                if format == Format::Svg {
                    emit_svg_stereographic(tt, &fan, &Projection::default()).map_err(fail)?
                } else {
                    emit_fan_json(tt, &fan)
                }
            };
            Ok(Outcome { text, code: truncated })
        }
    }
}

fn dims_text(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn vector_text(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn matrix_text(m: &[Vec<i64>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}

fn info(alg: &BoundQuiver, format: Format) -> String {
    let n = alg.n();
    let basis: Vec<String> = alg.basis().iter().map(|p| alg.path_name(p)).collect();
    let proj: Vec<Vec<usize>> = (0..n).map(|v| alg.projective(v).dims().to_vec()).collect();
    let inj: Vec<Vec<usize>> = (0..n).map(|v| alg.injective(v).dims().to_vec()).collect();
    if format == Format::Json {
        let doc = json!({
            "vertices": n,
            "arrows": alg.quiver().arrows().iter().map(|a| json!({
                "name": a.name, "source": a.source + 1, "target": a.target + 1,
            })).collect::<Vec<_>>(),
            "dimension": alg.dim(),
            "path_basis": basis,
            "projectives": proj,
            "injectives": inj,
        });
        return serde_json::to_string_pretty(&doc).expect("json") + "\n";
    }
    let mut out = String::new();
    writeln!(out, "vertices: {n}").expect("write");
    writeln!(out, "dim A: {}", alg.dim()).expect("write");
    writeln!(out, "path basis: {}", basis.join(" ")).expect("write");
    for v in 0..n {
        writeln!(
            out,
            "P({}) = {}   I({}) = {}",
            v + 1,
            dims_text(&proj[v]),
            v + 1,
            dims_text(&inj[v])
        )
        .expect("write");
    }
    out
}

/// Names of the given indecomposables lying in `Fac M`.
fn fac_members(tt: &TauTilting, pair: &TauPair, probes: &[Module]) -> tautilt_core::Result<Vec<String>> {
    let mut ids = Vec::new();
    for x in probes {
        if tt.fac_contains(&pair.m, x)? {
            if let Some(id) = tt.registry().lookup(x)? {
                ids.push(id);
            }
        }
    }
    ids.sort_by(|&a, &b| tt.registry().cmp_ids(a, b));
    ids.dedup();
    Ok(ids.into_iter().map(|id| tt.name(id)).collect())
}

fn positive_columns(c: &[Vec<i64>]) -> Vec<Vec<i64>> {
    intmat::columns(&c.to_vec())
        .into_iter()
        .filter(|col| col.iter().all(|&x| x >= 0))
        .collect()
}

fn b_plus_names(tt: &TauTilting, slate: &BrickSlate) -> Vec<String> {
    slate
        .brick_ids
        .iter()
        .zip(slate.signs())
        .filter(|(_, s)| *s == 1)
        .map(|(&id, _)| tt.name(id))
        .collect()
}

fn enumerate(analysis: &mut Analysis, format: Format) -> tautilt_core::Result<String> {
    let probes = analysis.probes()?;
    let tt = &analysis.tt;
    let graph = &analysis.graph;
    let mut rows = Vec::new();
    for (k, pair) in graph.nodes.iter().enumerate() {
        let g = tt.g_matrix(pair)?;
        let c = tt.c_matrix(pair)?;
        let plus = match &analysis.slates[k] {
            Ok(slate) => Some(b_plus_names(tt, slate)),
            Err(_) => None,
        };
        rows.push((pair, g, c, plus, fac_members(tt, pair, &probes)?));
    }
    if format == Format::Json {
        let pairs: Vec<Value> = rows
            .iter()
            .map(|(pair, _, c, plus, fac)| {
                let mut v = tt.pair_json(pair).expect("matrices computed above");
                v["positive_c_vectors"] = json!(positive_columns(c));
                v["b_plus"] = json!(plus);
                v["fac_m"] = json!(fac);
                v
            })
            .collect();
        let doc = json!({
            "vertices": tt.n(),
            "complete": graph.complete,
            "truncation": graph.truncation,
            "pairs": pairs,
            "edges": graph.edges,
        });
        return Ok(serde_json::to_string_pretty(&doc).expect("json") + "\n");
    }
    let mut out = String::new();
    writeln!(out, "(M,P) | G | C | positive c-vectors | B+ | Fac M").expect("write");
    for (pair, g, c, plus, fac) in &rows {
        let positives: Vec<String> = positive_columns(c).iter().map(|v| vector_text(v)).collect();
        let plus = plus
            .as_ref()
            .map_or_else(|| "?".to_string(), |p| format!("{{{}}}", p.join(", ")));
        let fac = if fac.is_empty() {
            "0".to_string()
        } else {
            fac.join(" + ")
        };
        writeln!(
            out,
            "{} | {} | {} | {{{}}} | {} | add{{{}}}",
            tt.pair_name(pair),
            matrix_text(g),
            matrix_text(c),
            positives.join(", "),
            plus,
            fac
        )
        .expect("write");
    }
    if let Some(reason) = &graph.truncation {
        writeln!(out, "truncated: {reason}").expect("write");
    }
    Ok(out)
}
