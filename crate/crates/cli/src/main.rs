use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use oddprism::formulas::{ex_extremal_construction, ex_formula, ex_formula_report, spex_closed_form};
use oddprism::graph::{odd_prism, spex_candidate};
use oddprism::patterns::find_prism;
use oddprism::search::{
    brute_force, ingest_graph6_stream, unpruned_scan, verify_theorems, ExtremalCertificate, Mode, SearchOptions,
};
use oddprism::spectral::spectral_radius;
use oddprism::words::{verify_corollary_2_5, verify_lemma_2_4, COROLLARY_DEFAULT_CAP, LEMMA_DEFAULT_CAP};
use oddprism::{Error, Graph, DEFAULT_TOLERANCE};
use serde::Serialize;
use serde_json::{json, Map, Value};

const TOOL: &str = "oddprism";

#[derive(Parser, Debug)]
#[command(name = "oddprism", version, about = "Spectral Turán workbench for odd prisms")]
struct Cli {
    /// Output format; defaults to graph6 for `construct` and json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Worker threads for the parallel searches (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Drop wall-clock fields so identical runs give identical bytes.
    #[arg(long, global = true)]
    seedless: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Graph6,
}

#[derive(Args, Debug, Default)]
#[group(multiple = false)]
struct Construction {
    /// Odd prism C_{2k+1} □ K_2.
    #[arg(long, value_name = "K")]
    prism: Option<usize>,
    #[arg(long, value_name = "N")]
    complete: Option<usize>,
    #[arg(long, value_name = "N")]
    cycle: Option<usize>,
    #[arg(long, value_name = "N")]
    path: Option<usize>,
    /// K_1 joined with the balanced complete bipartite graph on N-1 vertices.
    #[arg(long, value_name = "N")]
    candidate: Option<usize>,
    #[arg(long, num_args = 2, value_names = ["N", "R"])]
    turan: Option<Vec<usize>>,
    #[arg(long, num_args = 2, value_names = ["S", "T"])]
    bipartite: Option<Vec<usize>>,
    /// Edge-extremal construction at its best split.
    #[arg(long, value_name = "N")]
    ex_construction: Option<usize>,
}

impl Construction {
    fn build(&self) -> Result<Option<(String, Graph)>, Error> {
        let c = self;
        let named = if let Some(k) = c.prism {
            (format!("prism {k}"), odd_prism(k)?)
        } else if let Some(n) = c.complete {
            (format!("complete {n}"), Graph::complete(n))
        } else if let Some(n) = c.cycle {
            (format!("cycle {n}"), Graph::cycle(n)?)
        } else if let Some(n) = c.path {
            (format!("path {n}"), Graph::path(n)?)
        } else if let Some(n) = c.candidate {
            (format!("candidate {n}"), spex_candidate(n)?)
        } else if let Some(v) = &c.turan {
            (format!("turan {} {}", v[0], v[1]), Graph::turan(v[0], v[1])?)
        } else if let Some(v) = &c.bipartite {
            (format!("bipartite {} {}", v[0], v[1]), Graph::complete_bipartite(v[0], v[1]))
        } else if let Some(n) = c.ex_construction {
            let f = ex_formula(n)?;
            (format!("ex-construction {n}"), ex_extremal_construction(n, f.argmax_na)?)
        } else {
            return Ok(None);
        };
        Ok(Some(named))
    }
}

#[derive(Args, Debug)]
struct GraphInput {
    #[arg(long, value_name = "STRING", conflicts_with = "input")]
    graph6: Option<String>,
    /// Read the first graph6 line of FILE.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    #[command(flatten)]
    construction: Construction,
}

impl GraphInput {
    fn load(&self) -> Result<(String, Graph), Failure> {
        let named = self.construction.build()?;
        let sources = usize::from(self.graph6.is_some()) + usize::from(self.input.is_some()) + usize::from(named.is_some());
        if sources != 1 {
            return Err(Failure::Usage("give exactly one of --graph6, --in or a construction flag".into()));
        }
        if let Some((name, g)) = named {
            return Ok((name, g));
        }
        if let Some(s) = &self.graph6 {
            return Ok(("graph6".into(), Graph::from_graph6(s)?));
        }
        let path = self.input.as_ref().expect("one source present");
        let file = File::open(path).map_err(|e| Failure::Usage(format!("--in {}: {e}", path.display())))?;
        let line = BufReader::new(file)
            .lines()
            .map(|l| l.map(|s| s.trim().to_string()))
            .find(|l| !matches!(l, Ok(s) if s.is_empty()))
            .ok_or(Failure::Run(Error::NoGraphs))?
            .map_err(|e| Failure::Usage(format!("--in {}: {e}", path.display())))?;
        Ok((path.display().to_string(), Graph::from_graph6(&line)?))
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => Ok((parse(a)?, parse(b.trim_start_matches('='))?)),
        None => parse(s).map(|n| (n, n)),
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a named graph and print it.
    Construct {
        #[command(flatten)]
        construction: Construction,
    },
    /// Spectral radius and Perron vector of a graph.
    Spex {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Closed-form edge count with its construction.
    Exformula {
        #[arg(long)]
        n: usize,
    },
    /// Spectral candidate with its closed form and the printed-cubic gap.
    Candidate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Test a graph for a copy of the odd prism.
    Checkfree {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        k: usize,
    },
    /// Exhaustive forbidden-factor check over cyclic words.
    Lemma24 {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = LEMMA_DEFAULT_CAP)]
        cap: usize,
        /// Check only least rotations.
        #[arg(long)]
        necklaces: bool,
    },
    /// Exhaustive prism-coloring check.
    Corollary25 {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = COROLLARY_DEFAULT_CAP)]
        cap: usize,
    },
    /// Exact maximum edge count over prism-free graphs.
    Bruteex(BruteArgs),
    /// Exact maximum spectral radius over prism-free graphs.
    Brutespex(BruteArgs),
    /// Extremal certificate from a graph6 stream.
    Ingest {
        /// graph6 lines; `-` reads standard input.
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "edges")]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Brute force against both closed forms over a range of n.
    Verify {
        /// `LO..HI` (inclusive) or a single n.
        #[arg(long, value_parser = parse_range)]
        n: (usize, usize),
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
}

#[derive(Args, Debug)]
struct BruteArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    /// Score all labeled graphs without pruning (n ≤ 7).
    #[arg(long)]
    unpruned: bool,
    /// Abort after this many search nodes.
    #[arg(long, value_name = "NODES")]
    node_cap: Option<u64>,
}

impl BruteArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions { tolerance: self.tol, node_cap: self.node_cap, ..Default::default() }
    }
}

enum Failure {
    Usage(String),
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

/// Rendered report plus whether it certifies a failed verification.
struct Outcome {
    body: String,
    verified: bool,
}

fn header(args: &[String]) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("tool".into(), json!(TOOL));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("args".into(), json!(args));
    m
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("elapsed_ms");
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn csv_field(v: &Value) -> String {
    let s = match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

struct Ctx {
    args: Vec<String>,
    format: Format,
    seedless: bool,
}

impl Ctx {
    fn report<T: Serialize>(&self, subcommand: &str, body: &T) -> Result<String, Failure> {
        let mut value = serde_json::to_value(body).map_err(|e| Failure::Run(Error::InvalidArgument(e.to_string())))?;
        if self.seedless {
            strip_timing(&mut value);
        }
        match self.format {
            Format::Json => {
                let mut m = header(&self.args);
                m.insert("subcommand".into(), json!(subcommand));
                m.insert("report".into(), value);
                Ok(format!("{}\n", serde_json::to_string_pretty(&Value::Object(m)).expect("json value")))
            }
            Format::Csv => {
                let Value::Object(fields) = value else {
                    return Err(Failure::Usage("--format csv needs an object report".into()));
                };
                let mut out = self.csv_header();
                out.push_str(&fields.keys().cloned().collect::<Vec<_>>().join(","));
                out.push('\n');
                out.push_str(&fields.values().map(csv_field).collect::<Vec<_>>().join(","));
                out.push('\n');
                Ok(out)
            }
            Format::Graph6 => Err(Failure::Usage(format!("--format graph6 is not available for {subcommand}"))),
        }
    }

    fn csv_header(&self) -> String {
        format!("# {TOOL} {} {}\n", env!("CARGO_PKG_VERSION"), self.args.join(" "))
    }

    fn certificate(&self, subcommand: &str, cert: &ExtremalCertificate) -> Result<String, Failure> {
        if self.format == Format::Graph6 {
            return Ok(cert.witnesses.iter().map(|w| format!("{w}\n")).collect());
        }
        self.report(subcommand, cert)
    }
}

fn run(cli: &Cli, ctx: &Ctx) -> Result<Outcome, Failure> {
    let ok = |body| Ok(Outcome { body, verified: true });
    match &cli.command {
        Command::Construct { construction } => {
            let (name, g) = construction
                .build()?
                .ok_or_else(|| Failure::Usage("construct needs one construction flag".into()))?;
            if ctx.format == Format::Graph6 {
                return ok(format!("{}\n", g.to_graph6()));
            }
            let body = json!({
                "construction": name,
                "order": g.order(),
                "edges": g.edge_count(),
                "graph6": g.to_graph6(),
            });
            ok(ctx.report("construct", &body)?)
        }
        Command::Spex { input, tol } => {
            let (name, g) = input.load()?;
            let r = spectral_radius(&g, *tol)?;
            let body = json!({
                "source": name,
                "graph6": g.to_graph6(),
                "order": g.order(),
                "edges": g.edge_count(),
                "spectral": r,
            });
            ok(ctx.report("spex", &body)?)
        }
        Command::Exformula { n } => ok(ctx.report("exformula", &ex_formula_report(*n)?)?),
        Command::Candidate { n, tol } => {
            let closed = spex_closed_form(*n)?;
            let g = spex_candidate(*n)?;
            let power = spectral_radius(&g, *tol)?.radius;
            let body = json!({
                "n": n,
                "graph6": g.to_graph6(),
                "closed_form": closed,
                "power_radius": power,
                "power_gap": (power - closed.value).abs(),
            });
            ok(ctx.report("candidate", &body)?)
        }
        Command::Checkfree { input, k } => {
            let (name, g) = input.load()?;
            let hit = find_prism(&g, *k)?;
            let body = json!({
                "source": name,
                "graph6": g.to_graph6(),
                "k": k,
                "prism_free": hit.is_none(),
                "embedding": hit,
            });
            ok(ctx.report("checkfree", &body)?)
        }
        Command::Lemma24 { k, cap, necklaces } => {
            let r = verify_lemma_2_4(*k, *cap, *necklaces)?;
            Ok(Outcome { verified: r.holds(), body: ctx.report("lemma24", &r)? })
        }
        Command::Corollary25 { k, cap } => {
            let r = verify_corollary_2_5(*k, *cap)?;
            Ok(Outcome { verified: r.holds(), body: ctx.report("corollary25", &r)? })
        }
        Command::Bruteex(b) | Command::Brutespex(b) => {
            let (mode, name) = match &cli.command {
                Command::Bruteex(_) => (Mode::Edges, "bruteex"),
                _ => (Mode::Spectral, "brutespex"),
            };
            let opts = b.options();
            let cert = if b.unpruned {
                unpruned_scan(b.n, b.k, mode, &opts)?
            } else {
                brute_force(b.n, b.k, mode, &opts)?
            };
            ok(ctx.certificate(name, &cert)?)
        }
        Command::Ingest { input, k, mode, tol } => {
            let opts = SearchOptions { tolerance: *tol, ..Default::default() };
            let cert = if input.as_os_str() == "-" {
                ingest_graph6_stream(io::stdin().lock(), *k, *mode, &opts)?
            } else {
                let f = File::open(input).map_err(|e| Failure::Usage(format!("--in {}: {e}", input.display())))?;
                ingest_graph6_stream(BufReader::new(f), *k, *mode, &opts)?
            };
            ok(ctx.certificate("ingest", &cert)?)
        }
        Command::Verify { n, k, tol } => {
            let opts = SearchOptions { tolerance: *tol, ..Default::default() };
            let table = verify_theorems(n.0, n.1, *k, &opts)?;
            match ctx.format {
                Format::Csv => ok(format!("{}{}", ctx.csv_header(), table.to_csv())),
                _ => ok(ctx.report("verify", &table)?),
            }
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let format = cli.format.unwrap_or(match cli.command {
        Command::Construct { .. } => Format::Graph6,
        _ => Format::Json,
    });
    let ctx = Ctx { args: args[1..].to_vec(), format, seedless: cli.seedless };

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(2);
        }
    };

    let outcome = pool.install(|| run(&cli, &ctx));
    let outcome = match outcome {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Run(e @ Error::VerificationFailed(_))) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.body),
        None => io::stdout().lock().write_all(outcome.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing report: {e}");
        return ExitCode::from(2);
    }
    if outcome.verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
