//! `tlwg` subcommands. [`run`] parses an argument vector and returns the
//! exit code together with the text destined for stdout and stderr, so the
//! whole surface can be driven in-process.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use tlwg_core::algebra::{expand_at_infinity, parse_rational, BigRational};
use tlwg_core::diagram::gram_matrix;
use tlwg_core::graph::{
    build_subgraph, evaluate_series, export_dot, laurent_series, LaurentData, Policy,
};
use tlwg_core::jones_wenzl::{jw_wenzl_recursion, verify_jw, JwReport};
use tlwg_core::json::{GramJson, TlElementJson};
use tlwg_core::nc2::enumerate_nc2;
use tlwg_core::oracle::{haar_moment, symbolic_shared, weingarten_exact, Mode};
use tlwg_core::{Error, Pairing};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandResult {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: u8, message: impl std::fmt::Display) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "tlwg",
    version,
    about = "Exact Temperley-Lieb and Weingarten computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List NC_2(2k) in canonical order.
    Enumerate {
        #[arg(long)]
        k: usize,
    },
    /// Gram matrix d^{|p v q|} as integer coefficient lists.
    Gram {
        #[arg(long)]
        k: usize,
    },
    /// Weingarten matrices and their Laurent series.
    Wg {
        #[command(subcommand)]
        command: WgCommand,
    },
    /// Jones-Wenzl projection q_k in the diagram basis.
    Jw {
        #[arg(long)]
        k: usize,
        /// Verify the defining identities and print the report.
        #[arg(long)]
        check: bool,
    },
    /// Weingarten subgraph utilities.
    Graph {
        #[command(subcommand)]
        command: GraphCommand,
    },
    /// Haar moment of u_{i1 j1} ... u_{il jl}.
    Moment {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        d: BigRational,
        #[arg(long = "i", value_delimiter = ',', num_args = 0..)]
        i: Vec<usize>,
        #[arg(long = "j", value_delimiter = ',', num_args = 0..)]
        j: Vec<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum WgCommand {
    /// Exact inverse of the Gram matrix, symbolic or at a rational point.
    Exact {
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        at: Option<BigRational>,
    },
    /// Sign, geodesic length and walk counts for one pair.
    Series {
        #[arg(long, value_parser = pairing)]
        p: Pairing,
        #[arg(long, value_parser = pairing)]
        q: Pairing,
        #[arg(long)]
        rmax: usize,
        #[arg(long, default_value = "A", value_parser = policy)]
        policy: Policy,
        /// Sum the truncated series at this point.
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        eval: Option<BigRational>,
    },
    /// Compare graph series with the oracle expansion for every pair with j <= k.
    Verify {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        rmax: usize,
        #[arg(long, hide = true, value_parser = fault)]
        inject_fault: Option<(usize, usize)>,
    },
}

#[derive(Subcommand, Debug)]
enum GraphCommand {
    /// Write the component of (p, q) as Graphviz DOT.
    Export {
        #[arg(long, value_parser = pairing)]
        p: Pairing,
        #[arg(long, value_parser = pairing)]
        q: Pairing,
        #[arg(long, default_value = "A", value_parser = policy)]
        policy: Policy,
        #[arg(long)]
        out: PathBuf,
    },
}

fn rational(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn pairing(s: &str) -> Result<Pairing, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn policy(s: &str) -> Result<Policy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// `INDEX:R`, adding one to `m_R` of the pair at `INDEX` in verification order.
fn fault(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or("expected INDEX:R")?;
    Ok((
        a.parse().map_err(|_| "bad index")?,
        b.parse().map_err(|_| "bad r")?,
    ))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::VerificationFailure(_) => EXIT_VERIFICATION,
        Error::Parse(_) | Error::NotNonCrossing(_) | Error::NotInvolution(_) => EXIT_USAGE,
        _ => EXIT_DOMAIN,
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("payloads always serialize");
    s.push('\n');
    s
}

pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandResult::ok(text)
            };
        }
    };
    match dispatch(cli.command) {
        Ok(result) => result,
        Err(e) => CommandResult::fail(exit_code(&e), e),
    }
}

#[derive(Serialize)]
struct EnumerateJson {
    k: usize,
    count: usize,
    pairings: Vec<Pairing>,
}

#[derive(Serialize)]
struct EvalJson {
    d: String,
    rmax: usize,
    value: String,
}

#[derive(Serialize)]
struct SeriesJson {
    #[serde(flatten)]
    data: LaurentData,
    #[serde(skip_serializing_if = "Option::is_none")]
    eval: Option<EvalJson>,
}

#[derive(Serialize)]
struct JwJson {
    #[serde(flatten)]
    projection: TlElementJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<JwReport>,
}

#[derive(Serialize)]
struct PairCheck {
    k: usize,
    p: Pairing,
    q: Pairing,
    sign: i8,
    #[serde(rename = "L")]
    length: usize,
    ok: bool,
}

#[derive(Serialize)]
struct VerifyJson {
    k: usize,
    rmax: usize,
    pairs: usize,
    ok: bool,
    results: Vec<PairCheck>,
}

#[derive(Serialize)]
struct ExportJson {
    out: String,
    vertices: usize,
    edges: usize,
    #[serde(rename = "L")]
    length: usize,
}

#[derive(Serialize)]
struct MomentJson {
    d: String,
    i: Vec<usize>,
    j: Vec<usize>,
    value: String,
}

fn dispatch(command: Command) -> tlwg_core::Result<CommandResult> {
    let out = match command {
        Command::Enumerate { k } => {
            let pairings = enumerate_nc2(k)?;
            to_json(&EnumerateJson {
                k,
                count: pairings.len(),
                pairings,
            })
        }
        Command::Gram { k } => {
            let (ordering, entries) = gram_matrix(k)?;
            to_json(&GramJson::new(k, &ordering, &entries))
        }
        Command::Wg { command } => return wg(command),
        Command::Jw { k, check } => {
            let q = jw_wenzl_recursion(k)?;
            let report = check.then(|| verify_jw(k)).transpose()?;
            to_json(&JwJson {
                projection: TlElementJson::from(&q),
                report,
            })
        }
        Command::Graph {
            command: GraphCommand::Export { p, q, policy, out },
        } => {
            let g = build_subgraph(&p, &q, policy)?;
            if let Err(e) = std::fs::write(&out, export_dot(&g)) {
                return Ok(CommandResult::fail(
                    EXIT_DOMAIN,
                    format!("cannot write {}: {e}", out.display()),
                ));
            }
            to_json(&ExportJson {
                out: out.display().to_string(),
                vertices: g.vertex_count(),
                edges: g.edge_count(),
                length: g.geodesic_length(),
            })
        }
        Command::Moment { d, i, j } => {
            let value = haar_moment(&i, &j, &d)?;
            to_json(&MomentJson {
                d: d.to_string(),
                i,
                j,
                value: value.to_string(),
            })
        }
    };
    Ok(CommandResult::ok(out))
}

fn wg(command: WgCommand) -> tlwg_core::Result<CommandResult> {
    let out = match command {
        WgCommand::Exact { k, at } => {
            let mode = at.map_or(Mode::Symbolic, Mode::Numeric);
            to_json(&weingarten_exact(k, mode)?.to_json())
        }
        WgCommand::Series {
            p,
            q,
            rmax,
            policy,
            eval,
        } => {
            let data = laurent_series(&p, &q, rmax, policy)?;
            let eval = match eval {
                Some(d) => Some(EvalJson {
                    value: evaluate_series(&data, &d, rmax)?.to_string(),
                    d: d.to_string(),
                    rmax,
                }),
                None => None,
            };
            to_json(&SeriesJson { data, eval })
        }
        WgCommand::Verify {
            k,
            rmax,
            inject_fault,
        } => return verify(k, rmax, inject_fault),
    };
    Ok(CommandResult::ok(out))
}

fn verify(
    k: usize,
    rmax: usize,
    fault: Option<(usize, usize)>,
) -> tlwg_core::Result<CommandResult> {
    let mut pairs = Vec::new();
    for j in 1..=k {
        let oracle = symbolic_shared(j)?;
        for p in &oracle.ordering {
            for q in &oracle.ordering {
                pairs.push((j, p.clone(), q.clone()));
            }
        }
    }
    if let Some((index, r)) = fault {
        if index >= pairs.len() || r > rmax {
            return Err(Error::IndexOutOfRange {
                index,
                max: pairs.len().saturating_sub(1),
            });
        }
    }
    let checks: Vec<tlwg_core::Result<PairCheck>> = pairs
        .par_iter()
        .enumerate()
        .map(|(index, (j, p, q))| {
            let mut data = laurent_series(p, q, rmax, Policy::A)?;
            if let Some((_, r)) = fault.filter(|f| f.0 == index) {
                data.m[r] += 1u8;
            }
            let oracle = symbolic_shared(*j)?;
            let last = data.length + 2 * rmax;
            let series = expand_at_infinity(oracle.entry(p, q).expect("same ordering"), last + 1);
            let ok = (0..=last + 1).all(|e| {
                let graph = data.signed_coeff(e).unwrap_or_default();
                series.coeff_of(e as i64) == Some(BigRational::from_integer(graph))
            });
            Ok(PairCheck {
                k: *j,
                p: p.clone(),
                q: q.clone(),
                sign: data.sign,
                length: data.length,
                ok,
            })
        })
        .collect();
    let results = checks.into_iter().collect::<tlwg_core::Result<Vec<_>>>()?;
    let failures: Vec<String> = results
        .iter()
        .filter(|c| !c.ok)
        .map(|c| format!("mismatch at k={} p={} q={}", c.k, c.p, c.q))
        .collect();
    if !failures.is_empty() {
        return Ok(CommandResult {
            code: EXIT_VERIFICATION,
            stdout: String::new(),
            stderr: failures.join("\n") + "\n",
        });
    }
    Ok(CommandResult::ok(to_json(&VerifyJson {
        k,
        rmax,
        pairs: results.len(),
        ok: true,
        results,
    })))
}
