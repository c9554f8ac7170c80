use std::f64::consts::FRAC_PI_4;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hypersym::aut::{check_transform_invariance, enumerate_aut};
use hypersym::nc::{
    coaction_check, coproduct_check, verify_identity, CheckReport, Flavor, IdentityId, Presentation,
};
use hypersym::witness::{check_rep, nonclassical_witness, search_magic_rep, MatrixRep, SearchOptions, WitnessError};
use hypersym::{fixtures, ClassicalGraph, GraphKind, Hypergraph, Method, Transform};

#[derive(Parser)]
#[command(name = "hypersym", version, about = "Classical and quantum symmetries of finite directed hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// Input document; `-` or absent reads standard input.
    #[arg(short, long)]
    input: Option<PathBuf>,
    /// Output file; absent writes standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Out {
    /// Output file; absent writes standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Backtrack,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Object,
    FreeAlgebra,
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildKind {
    GammaNm,
    Complete,
}

#[derive(Subcommand)]
enum Command {
    /// Sizes, incidence matrices, structural properties and graph kind.
    Info(Io),
    /// Classical graph document to hypergraph document.
    Encode(Io),
    /// Hypergraph document to classical graph document.
    Decode {
        #[command(flatten)]
        io: Io,
        /// Decode as this kind instead of the first matching one.
        #[arg(long)]
        kind: Option<GraphKind>,
    },
    /// Opposite, dual or dual of the opposite.
    Transform {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_parser = parse_transform)]
        which: Transform,
    },
    /// Builds Γ_{n,m} or the complete hypergraph on given vertices.
    Build {
        #[command(flatten)]
        out: Out,
        #[arg(long, value_enum)]
        kind: BuildKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// Comma-separated vertex labels for `complete`.
        #[arg(long, value_delimiter = ',')]
        vertices: Vec<String>,
    },
    /// Classical automorphism group.
    Aut {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value = "backtrack")]
        method: MethodArg,
        /// Include every group element.
        #[arg(long)]
        elements: bool,
    },
    /// Presentation of the quantum automorphism group or the C*-algebra.
    Present {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value = "qaut", value_parser = parse_flavor)]
        flavor: Flavor,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Bounded-degree verification of an identity on every instance.
    Verify {
        #[command(flatten)]
        io: Io,
        #[arg(value_parser = parse_identity)]
        identity: IdentityId,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        /// Writes the certificates of the `yes` instances here.
        #[arg(long)]
        certificates: Option<PathBuf>,
    },
    /// Coproduct well-definedness on the quantum automorphism group.
    CoproductCheck {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Coaction on the hypergraph C*-algebra.
    CoactionCheck {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = 6)]
        degree: usize,
    },
    /// Nonclassical witness, or a numerical search when `--dim` is given.
    Witness {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = FRAC_PI_4)]
        theta: f64,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Search restarts.
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        /// Writes the representation alone here.
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    /// Re-verifies a stored representation against a stored presentation.
    CheckRep {
        #[command(flatten)]
        out: Out,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        presentation: PathBuf,
    },
    /// Writes built-in fixtures as hypergraph documents.
    Export {
        #[command(flatten)]
        out: Out,
        /// Fixture name; all fixtures when absent.
        #[arg(long)]
        fixture: Option<String>,
        /// Lists fixture names only.
        #[arg(long)]
        list: bool,
    },
}

fn parse_transform(s: &str) -> Result<Transform, String> {
    s.parse()
}

fn parse_flavor(s: &str) -> Result<Flavor, String> {
    s.parse()
}

fn parse_identity(s: &str) -> Result<IdentityId, String> {
    s.parse()
}

/// Finished command: the document to write and whether the result was
/// conclusive.
struct Done {
    text: String,
    conclusive: bool,
}

impl Done {
    fn ok(text: String) -> Self {
        Self { text, conclusive: true }
    }

    fn json(v: &Value, conclusive: bool) -> Self {
        Self { text: pretty(v), conclusive }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes")
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display())),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("cannot read standard input")?;
            Ok(s)
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, ensure_newline(text)).with_context(|| format!("cannot write {}", path.display()))
}

fn ensure_newline(text: &str) -> String {
    if text.ends_with('\n') {
        text.to_string()
    } else {
        format!("{text}\n")
    }
}

fn hypergraph(io: &Io) -> Result<Hypergraph> {
    Ok(Hypergraph::parse(&read_input(io.input.as_deref())?)?)
}

fn check_report(r: &CheckReport) -> Done {
    Done { text: serde_json::to_string_pretty(r).expect("report serializes"), conclusive: r.passed() }
}

fn aut_report(h: &Hypergraph, method: MethodArg, elements: bool) -> Result<Done> {
    let run = |m: Method| -> Result<Value> { Ok(enumerate_aut(h, m)?.report(h, elements)) };
    let mut v = match method {
        MethodArg::Brute => run(Method::Brute)?,
        MethodArg::Backtrack => run(Method::Backtrack)?,
        MethodArg::Both => {
            let (a, b) = (enumerate_aut(h, Method::Brute)?, enumerate_aut(h, Method::Backtrack)?);
            if a.elements() != b.elements() {
                bail!("brute force ({}) and backtracking ({}) disagree", a.order(), b.order());
            }
            b.report(h, elements)
        }
    };
    let inv = check_transform_invariance(h, Method::Backtrack)?;
    v["method"] = json!(match method {
        MethodArg::Brute => "brute",
        MethodArg::Backtrack => "backtrack",
        MethodArg::Both => "both",
    });
    v["opposite_equal"] = json!(inv.opposite_equal);
    v["dual_is_swap"] = json!(inv.dual_is_swap);
    Ok(Done::json(&v, true))
}

fn info(h: &Hypergraph) -> Value {
    let inc = h.incidence();
    let rows = |range: bool| -> Vec<Vec<i32>> {
        let m = if range { &inc.a_r } else { &inc.a_s };
        (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
    };
    json!({
        "n_vertices": h.n_vertices(),
        "n_edges": h.n_edges(),
        "a_s": rows(false),
        "a_r": rows(true),
        "properties": h.classify(),
        "graph_kind": ClassicalGraph::decode(h).map(|g| g.kind().to_string()),
        "gamma_shaped": h.is_gamma_shaped(),
    })
}

fn witness(h: &Hypergraph, theta: f64, dim: Option<usize>, seed: u64, restarts: usize) -> Result<(Option<MatrixRep>, Done)> {
    let found = match dim {
        Some(d) => {
            if d == 0 {
                bail!("--dim must be at least 1");
            }
            let opts = SearchOptions { seed, restarts, ..SearchOptions::default() };
            search_magic_rep(h, d, &opts).ok_or_else(|| "no representation found within the iteration budget".to_string())
        }
        None => match nonclassical_witness(h, theta) {
            Ok(r) => Ok(r),
            Err(WitnessError::NotAvailable(why)) => Err(why),
            Err(e) => return Err(e.into()),
        },
    };
    Ok(match found {
        Ok(mut r) => {
            if is_complete(h) {
                r.notes.push("search outcomes on the complete hypergraph are inconclusive evidence".into());
            }
            let rep = r.rep.clone();
            (Some(rep), Done { text: serde_json::to_string_pretty(&r).expect("report serializes"), conclusive: true })
        }
        Err(reason) => {
            let status = if dim.is_some() { "not_found" } else { "not_available" };
            (None, Done::json(&json!({"status": status, "reason": reason}), false))
        }
    })
}

fn is_complete(h: &Hypergraph) -> bool {
    Hypergraph::complete(h.vertices().to_vec()).is_ok_and(|c| &c == h)
}

fn run(cli: Cli) -> Result<(Option<PathBuf>, Done)> {
    Ok(match cli.command {
        Command::Info(io) => {
            let h = hypergraph(&io)?;
            (io.output, Done::json(&info(&h), true))
        }
        Command::Encode(io) => {
            let g = ClassicalGraph::parse(&read_input(io.input.as_deref())?)?;
            (io.output, Done::ok(g.encode()?.to_json()))
        }
        Command::Decode { io, kind } => {
            let h = hypergraph(&io)?;
            let g = match kind {
                Some(k) => ClassicalGraph::decode_as(&h, k),
                None => ClassicalGraph::decode(&h),
            };
            let done = match g {
                Some(g) => Done::ok(g.to_json()),
                None => Done::json(&json!({"kind": "none"}), false),
            };
            (io.output, done)
        }
        Command::Transform { io, which } => {
            let h = hypergraph(&io)?;
            (io.output, Done::ok(h.transform(which)?.to_json()))
        }
        Command::Build { out, kind, n, m, vertices } => {
            let h = match kind {
                BuildKind::GammaNm => {
                    let (n, m) = (n.ok_or_else(|| anyhow!("--n is required"))?, m.ok_or_else(|| anyhow!("--m is required"))?);
                    Hypergraph::gamma_nm(n, m)?
                }
                BuildKind::Complete => Hypergraph::complete(vertices)?,
            };
            (out.output, Done::ok(h.to_json()))
        }
        Command::Aut { io, method, elements } => {
            let h = hypergraph(&io)?;
            (io.output, aut_report(&h, method, elements)?)
        }
        Command::Present { io, flavor, format } => {
            let h = hypergraph(&io)?;
            let p = Presentation::new(&h, flavor)?;
            let text = match format {
                Format::Text => p.to_text(),
                Format::Object => p.to_json(),
                Format::FreeAlgebra => p.to_free_algebra(),
            };
            (io.output, Done::ok(text))
        }
        Command::Verify { io, identity, degree, certificates } => {
            let h = hypergraph(&io)?;
            let r = verify_identity(&h, identity, degree)?;
            if let Some(path) = certificates {
                let certs: Vec<Value> = r
                    .instances
                    .iter()
                    .filter_map(|i| {
                        i.result.certificate().map(|c| json!({"label": i.label, "query": i.query, "certificate": c}))
                    })
                    .collect();
                write_file(&path, &pretty(&json!({"presentation": r.presentation, "certificates": certs})))?;
            }
            let summary = json!({
                "identity": identity.name(),
                "degree_bound": degree,
                "passed": r.passed(),
                "instances": r.instances.len(),
                "yes": r.count_yes(),
                "report": r,
            });
            (io.output, Done::json(&summary, r.passed()))
        }
        Command::CoproductCheck { io, degree } => {
            let h = hypergraph(&io)?;
            (io.output, check_report(&coproduct_check(&h, degree)?))
        }
        Command::CoactionCheck { io, degree } => {
            let h = hypergraph(&io)?;
            (io.output, check_report(&coaction_check(&h, degree)?))
        }
        Command::Witness { io, theta, dim, seed, restarts, rep } => {
            let h = hypergraph(&io)?;
            let (found, done) = witness(&h, theta, dim, seed, restarts)?;
            if let (Some(path), Some(found)) = (rep, found) {
                write_file(&path, &found.to_json())?;
            }
            (io.output, done)
        }
        Command::CheckRep { out, rep, presentation } => {
            let rep = MatrixRep::from_json(&read_input(Some(&rep))?)?;
            let pres = Presentation::from_json(&read_input(Some(&presentation))?)?;
            let r = check_rep(&rep, &pres)?;
            if !r.satisfies() {
                bail!(
                    "residual {:e} exceeds tolerance {:e} at {}",
                    r.max_relation_residual,
                    rep.tolerance,
                    r.worst_relation.as_deref().unwrap_or("?")
                );
            }
            (out.output, Done::ok(serde_json::to_string_pretty(&r).expect("report serializes")))
        }
        Command::Export { out, fixture, list } => {
            let all = fixtures::all();
            let v = if list {
                json!(all.iter().map(|(n, _)| *n).collect::<Vec<_>>())
            } else if let Some(name) = fixture {
                let h = fixtures::by_name(&name).ok_or_else(|| anyhow!("unknown fixture `{name}`"))?;
                h.to_value()
            } else {
                Value::Object(all.iter().map(|(n, h)| (n.to_string(), h.to_value())).collect())
            };
            (out.output, Done::json(&v, true))
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let result = run(cli).and_then(|(out, done)| {
        match out {
            Some(path) => write_file(&path, &done.text)?,
            None => io::stdout().write_all(ensure_newline(&done.text).as_bytes()).context("cannot write output")?,
        }
        Ok(done.conclusive)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            let msg = format!("{e:#}").replace('\n', " ");
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
