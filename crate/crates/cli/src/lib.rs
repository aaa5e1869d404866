//! Command-line front end: parses a graph, runs one pipeline stage and
//! writes JSON, DOT or CSV.
//!
//! Exit codes: `0` success, `1` not locally unrefined or a pipeline failure,
//! `2` malformed input, a non-thin graph where thinness is required, or a
//! disconnected graph.

pub mod dot;
pub mod output;

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde_json::json;

use strongprod::factor::DEFAULT_SIZE_CAP;
use strongprod::io::{parse_graph, to_edge_list, Format};
use strongprod::oracle::{bull, gen_product_instance, s1_gap_fixture, twin_pair_fixture, twisted_fixture, ProductInstance};
use strongprod::recognize::{pfd_fast, pfd_fast_from, recognize_with};
use strongprod::sclass::{backbone, find_twins, s_classes};
use strongprod::skeleton::build_skeleton_with;
use strongprod::{strong_product, Error, Graph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Path lengths used by `bench` when `--ks` is not given.
pub const BENCH_KS: [usize; 5] = [50, 100, 200, 400, 800];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Prime factors from the fibers through one backbone vertex.
    Factor,
    /// Colored Cartesian skeleton.
    Skeleton,
    Backbone,
    /// Full recognition with verification.
    Recognize,
    /// Random product instance or named fixture.
    Generate,
    CheckThin,
    /// Timing of the fast path on `P_k ⊠ P_3`, as CSV.
    Bench,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Edgelist,
    Json,
}

impl From<GraphFormat> for Format {
    fn from(f: GraphFormat) -> Self {
        match f {
            GraphFormat::Edgelist => Format::EdgeList,
            GraphFormat::Json => Format::Json,
        }
    }
}

#[derive(Clone, Debug, Parser)]
#[command(name = "strongprod", version, about = "Prime factors of strong product graphs")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,

    /// Graph file; standard input when absent.
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// Result file; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Largest neighborhood factored exactly.
    #[arg(long, default_value_t = DEFAULT_SIZE_CAP, value_parser = parse_size_cap)]
    pub size_cap: usize,

    #[arg(long)]
    pub seed: Option<u64>,

    /// Backbone vertex for `factor`; the smallest one by default.
    #[arg(long)]
    pub anchor: Option<usize>,

    /// Emit Graphviz DOT instead of JSON.
    #[arg(long = "dot")]
    pub emit_dot: bool,

    /// Input format for analysis commands, output format for `generate`.
    #[arg(long, value_enum)]
    pub format: Option<GraphFormat>,

    /// Factor sizes for `generate`, e.g. `3,4`.
    #[arg(long, value_delimiter = ',')]
    pub factors: Vec<usize>,

    /// Named fixture for `generate`: `twisted`, `bull[:k]`, `twin-pair` or `p3p3`.
    #[arg(long)]
    pub fixture: Option<String>,

    /// Path lengths for `bench`.
    #[arg(long, value_delimiter = ',')]
    pub ks: Vec<usize>,
}

fn parse_size_cap(s: &str) -> Result<usize, String> {
    let cap: usize = s.parse().map_err(|e| format!("{e}"))?;
    if cap < 4 {
        return Err(format!("size cap must be at least 4, got {cap}"));
    }
    Ok(cap)
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            input: None,
            output: None,
            size_cap: DEFAULT_SIZE_CAP,
            seed: None,
            anchor: None,
            emit_dot: false,
            format: None,
            factors: Vec::new(),
            fixture: None,
            ks: Vec::new(),
        }
    }
}

/// What a command produced: the artifact text and the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub body: String,
    /// Message for standard error.
    pub message: Option<String>,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome {
            code: EXIT_OK,
            body,
            message: None,
        }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        Outcome {
            code,
            body: String::new(),
            message: Some(message.into()),
        }
    }

    fn from_error(e: &Error) -> Self {
        Outcome::fail(exit_code(e), e.to_string())
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::NotSimple(_)
        | Error::InvalidVertex { .. }
        | Error::EmptyVertexSet
        | Error::Disconnected
        | Error::NotThin(..)
        | Error::NotInBackbone(_) => EXIT_INPUT,
        _ => EXIT_REJECTED,
    }
}

/// Reads input, runs the command and writes its artifact. Returns the exit code.
pub fn run(config: &RunConfig) -> i32 {
    let input = if needs_graph(config.command) {
        match read_input(config) {
            Ok(text) => Some(text),
            Err(msg) => {
                eprintln!("error: {msg}");
                return EXIT_INPUT;
            }
        }
    } else {
        None
    };
    let outcome = execute(config, input.as_deref());
    if let Some(msg) = &outcome.message {
        eprintln!("{}: {msg}", if outcome.code == EXIT_OK { "note" } else { "error" });
    }
    if !outcome.body.is_empty() {
        let written = match &config.output {
            Some(path) => std::fs::write(path, &outcome.body).map_err(|e| format!("{}: {e}", path.display())),
            None => {
                print!("{}", outcome.body);
                Ok(())
            }
        };
        if let Err(msg) = written {
            eprintln!("error: {msg}");
            return EXIT_INPUT;
        }
    }
    outcome.code
}

fn needs_graph(c: Command) -> bool {
    !matches!(c, Command::Generate | Command::Bench)
}

fn read_input(config: &RunConfig) -> Result<String, String> {
    match &config.input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
            Ok(s)
        }
    }
}

/// Runs a command on already loaded input text.
pub fn execute(config: &RunConfig, input: Option<&str>) -> Outcome {
    match config.command {
        Command::Generate => return generate(config),
        Command::Bench => return bench(config),
        _ => {}
    }
    let Some(text) = input else {
        return Outcome::fail(EXIT_INPUT, "no input graph");
    };
    let g = match parse_graph(text, config.format.map(Format::from)) {
        Ok(g) => g,
        Err(e) => return Outcome::from_error(&e),
    };
    match config.command {
        Command::Factor => factor(config, &g),
        Command::Skeleton => skeleton(config, &g),
        Command::Backbone => backbone_cmd(config, &g),
        Command::Recognize => recognize_cmd(config, &g),
        Command::CheckThin => check_thin(&g),
        Command::Generate | Command::Bench => unreachable!("handled above"),
    }
}

fn to_json(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string(v).expect("values serialize");
    s.push('\n');
    s
}

fn factor(config: &RunConfig, g: &Graph) -> Outcome {
    let result = match config.anchor {
        Some(x) => pfd_fast_from(g, x),
        None => pfd_fast(g),
    };
    let f = match result {
        Ok(f) => f,
        Err(e) => return Outcome::from_error(&e),
    };
    if config.emit_dot {
        return Outcome::ok(dot::fibers(g, &f.fibers));
    }
    Outcome::ok(to_json(&output::factorization(&f)))
}

fn skeleton(config: &RunConfig, g: &Graph) -> Outcome {
    if let Some(e) = g.require_connected().err().or(strongprod::sclass::require_thin(g).err()) {
        return Outcome::from_error(&e);
    }
    match build_skeleton_with(g, config.size_cap) {
        Ok(s) if config.emit_dot => Outcome::ok(dot::skeleton(g, &s.color_of)),
        Ok(s) => Outcome::ok(to_json(&output::skeleton(&s))),
        Err(e) => Outcome::from_error(&e),
    }
}

fn backbone_cmd(config: &RunConfig, g: &Graph) -> Outcome {
    match backbone(g) {
        Ok(b) if config.emit_dot => Outcome::ok(dot::highlighted(g, &b.vertices)),
        Ok(b) => Outcome::ok(to_json(&json!({
            "vertices": b.vertices,
            "size": b.vertices.len(),
        }))),
        Err(e) => Outcome::from_error(&e),
    }
}

fn recognize_cmd(config: &RunConfig, g: &Graph) -> Outcome {
    let report = match recognize_with(g, config.size_cap) {
        Ok(r) => r,
        Err(e) => return Outcome::from_error(&e),
    };
    let body = match (&report.coloring, config.emit_dot) {
        (Some(s), true) => dot::skeleton(g, &s.color_of),
        _ => to_json(&output::report(&report)),
    };
    if report.in_upsilon {
        Outcome::ok(body)
    } else {
        Outcome {
            code: EXIT_REJECTED,
            body,
            message: Some(format!(
                "not recognized as locally unrefined: {}",
                report.diagnostics.first().map_or("no diagnostic", String::as_str)
            )),
        }
    }
}

fn check_thin(g: &Graph) -> Outcome {
    let twins = find_twins(g);
    Outcome::ok(to_json(&json!({
        "thin": twins.is_none(),
        "twins": twins.map(|(u, v)| [u, v]),
        "class_count": s_classes(g).len(),
    })))
}

fn generate(config: &RunConfig) -> Outcome {
    let instance = match (&config.fixture, config.factors.is_empty()) {
        (Some(_), false) => return Outcome::fail(EXIT_INPUT, "use either --fixture or --factors"),
        (Some(name), true) => match fixture(name) {
            Ok(f) => f,
            Err(msg) => return Outcome::fail(EXIT_INPUT, msg),
        },
        (None, false) => {
            let Some(seed) = config.seed else {
                return Outcome::fail(EXIT_INPUT, "generate --factors requires --seed");
            };
            if let Some(&bad) = config.factors.iter().find(|&&n| n < 3) {
                return Outcome::fail(
                    EXIT_INPUT,
                    format!("factor size {bad} is too small: the smallest thin connected graph with an edge has 3 vertices"),
                );
            }
            match gen_product_instance(&config.factors, seed) {
                Ok(i) => Generated::Product(i),
                Err(e) => return Outcome::from_error(&e),
            }
        }
        (None, true) => return Outcome::fail(EXIT_INPUT, "generate needs --factors or --fixture"),
    };
    let graph = match &instance {
        Generated::Product(i) => &i.graph,
        Generated::Plain(g) => g,
    };
    if config.emit_dot {
        return Outcome::ok(dot::highlighted(graph, &[]));
    }
    if config.format == Some(GraphFormat::Edgelist) {
        return Outcome::ok(to_edge_list(graph));
    }
    Outcome::ok(to_json(&match &instance {
        Generated::Product(i) => output::instance(i),
        Generated::Plain(g) => strongprod::io::to_json_value(g),
    }))
}

enum Generated {
    Product(ProductInstance),
    Plain(Graph),
}

fn fixture(name: &str) -> Result<Generated, String> {
    let (base, arg) = match name.split_once(':') {
        Some((b, a)) => (b, Some(a.parse::<usize>().map_err(|e| format!("fixture size `{a}`: {e}"))?)),
        None => (name, None),
    };
    match (base, arg) {
        ("twisted", None) => Ok(Generated::Plain(twisted_fixture())),
        ("twin-pair", None) => Ok(Generated::Plain(twin_pair_fixture())),
        ("bull", None) => Ok(Generated::Plain(bull())),
        ("bull", Some(k)) if k >= 2 => Ok(Generated::Product(s1_gap_fixture(k))),
        ("p3p3", None) => ProductInstance::from_factors(vec![Graph::path(3), Graph::path(3)], 0)
            .map(Generated::Product)
            .map_err(|e| e.to_string()),
        _ => Err(format!(
            "unknown fixture `{name}`; expected twisted, bull, bull:<k> with k >= 2, twin-pair or p3p3"
        )),
    }
}

/// One row of `bench` output.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchRow {
    pub k: usize,
    pub vertices: usize,
    pub millis: f64,
}

/// Times the fast path on `P_k ⊠ P_3`, best of `repeats` runs per `k`.
pub fn bench_rows(ks: &[usize], repeats: usize) -> Result<Vec<BenchRow>, Error> {
    ks.iter()
        .map(|&k| {
            let (g, _) = strong_product(&[Graph::path(k), Graph::path(3)])?;
            let mut best = f64::INFINITY;
            for _ in 0..repeats.max(1) {
                let t = Instant::now();
                let f = pfd_fast(&g)?;
                best = best.min(t.elapsed().as_secs_f64() * 1e3);
                if f.factors.len() != 2 {
                    return Err(Error::Internal(format!("P_{k} ⊠ P_3 split into {} factors", f.factors.len())));
                }
            }
            Ok(BenchRow {
                k,
                vertices: g.vertex_count(),
                millis: best,
            })
        })
        .collect()
}

/// Least-squares slope of `log millis` against `log vertices`.
pub fn log_log_slope(rows: &[BenchRow]) -> f64 {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.vertices as f64).ln(), r.millis.max(1e-6).ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn bench(config: &RunConfig) -> Outcome {
    let ks = if config.ks.is_empty() { BENCH_KS.to_vec() } else { config.ks.clone() };
    if let Some(&k) = ks.iter().find(|&&k| k < 2) {
        return Outcome::fail(EXIT_INPUT, format!("path length {k} is too short"));
    }
    let rows = match bench_rows(&ks, 3) {
        Ok(r) => r,
        Err(e) => return Outcome::from_error(&e),
    };
    let mut csv = String::from("k,vertices,millis\n");
    for r in &rows {
        writeln!(csv, "{},{},{:.3}", r.k, r.vertices, r.millis).expect("string write");
    }
    let message = (rows.len() >= 2).then(|| format!("log-log slope {:.3}", log_log_slope(&rows)));
    Outcome {
        code: EXIT_OK,
        body: csv,
        message,
    }
}
