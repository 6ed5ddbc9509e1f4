//! `extensor`: preprocess and query k-path sensitivity oracles, and drive
//! dynamic set-system sessions.
//!
//! Exit codes: 0 success, 2 malformed input or invalid update, 3 parameters
//! beyond what the library supports, 4 unreadable or incompatible state.

mod input;
mod session;

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use extensor::graph::{UndirectedGraph, UpdateBatch};
use extensor::kpath::{AnyKPathOracle, Mode, Options};
use extensor::reference::{bf_kpath, bf_kpath_undirected};
use extensor::undirected::{UndirectedOptions, UndirectedOracle};
use extensor::Error;
use rayon::prelude::*;

use input::{parse_graph, parse_sides, parse_updates, read, Graph};

#[derive(Debug)]
pub enum Failure {
    Parse(String),
    Lib(Error),
}

impl Failure {
    pub fn io(e: io::Error) -> Self {
        Failure::Parse(e.to_string())
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Lib(e) => match e {
                Error::Format(_) | Error::Version { .. } => 4,
                Error::FieldDegree(_)
                | Error::Reducible(..)
                | Error::FieldTooSmall { .. }
                | Error::DimensionCap(_)
                | Error::NotCharacteristicTwo
                | Error::NotIntegers
                | Error::InvalidParameter(_)
                | Error::TooLarge(_) => 3,
                _ => 2,
            },
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Parse(s) => f.write_str(s),
            Failure::Lib(e) => e.fmt(f),
        }
    }
}

#[derive(Parser)]
#[command(name = "extensor", version, about = "k-path sensitivity oracles and dynamic set-system algorithms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Directed k-path oracle.
    #[command(subcommand)]
    Kpath(KpathCommand),
    /// Undirected k-path oracle.
    #[command(subcommand)]
    Undirected(UndirectedCommand),
    /// Fully dynamic set-system problems driven by a session script.
    Dynamic(DynamicArgs),
}

#[derive(Subcommand)]
enum KpathCommand {
    Preprocess(KpathPreprocess),
    Query(QueryArgs),
}

#[derive(Subcommand)]
enum UndirectedCommand {
    Preprocess(UndirectedPreprocess),
    Query(QueryArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Rand,
    Det,
}

#[derive(Args)]
struct KpathPreprocess {
    /// Graph file; an undirected graph is read as its bidirected version.
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "rand")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Build the split-vertex state so that queries may fail vertices.
    #[arg(long)]
    vertex_failures: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also print the deciding coefficient.
    #[arg(long)]
    witness: bool,
}

#[derive(Args)]
struct UndirectedPreprocess {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    /// Random partitions; defaults to a value giving failure probability 0.01.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// File listing the vertices of one side of a bipartite graph.
    #[arg(long)]
    bipartite: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long)]
    state: PathBuf,
    /// Update scripts; each one is an independent query against the stored state.
    #[arg(long, num_args = 1.., required = true)]
    updates: Vec<PathBuf>,
    /// Recompute each answer by exhaustive search and report MATCH or MISMATCH.
    #[arg(long)]
    brute_force: bool,
    /// Answer the scripts concurrently.
    #[arg(long)]
    parallel_queries: bool,
    /// Also print the deciding coefficient (directed states only).
    #[arg(long)]
    witness: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    ExactCover,
    PartialCover,
    Packing,
    Tdom,
    Matching,
}

#[derive(Args)]
struct DynamicArgs {
    #[arg(long, value_enum)]
    problem: Problem,
    #[arg(long)]
    k: Option<usize>,
    /// Coverage target for tdom.
    #[arg(long)]
    t: Option<usize>,
    /// Set size for packing.
    #[arg(long)]
    m: Option<usize>,
    /// Number of coordinates for matching, each ranging over 1..=universe.
    #[arg(long)]
    d: Option<usize>,
    /// Universe size, or vertex count for tdom.
    #[arg(long)]
    universe: Option<usize>,
    /// Per-coordinate universe sizes for matching.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Initial graph for tdom.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "rand")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Session file, or `-` for standard input.
    #[arg(long, default_value = "-")]
    session: PathBuf,
    /// Estimate the number of packings instead of deciding existence.
    #[arg(long)]
    count: bool,
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let r = match cli.command {
        Command::Kpath(KpathCommand::Preprocess(a)) => kpath_preprocess(a, &mut out),
        Command::Kpath(KpathCommand::Query(a)) => query(a, false, &mut out),
        Command::Undirected(UndirectedCommand::Preprocess(a)) => undirected_preprocess(a, &mut out),
        Command::Undirected(UndirectedCommand::Query(a)) => query(a, true, &mut out),
        Command::Dynamic(a) => dynamic(a, &mut out),
    };
    match r.and_then(|_| out.flush().map_err(Failure::io)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "YES"
    } else {
        "NO"
    }
}

fn save(path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| Failure::Parse(format!("{}: {e}", p.display()))),
        None => Ok(()),
    }
}

fn undirected_graph(path: &Path) -> Result<UndirectedGraph, Failure> {
    match parse_graph(&read(path)?)? {
        Graph::Undirected(g) => Ok(g),
        Graph::Directed(_) => Err(Failure::Parse(format!("{}: expected an undirected graph", path.display()))),
    }
}

fn kpath_preprocess(a: KpathPreprocess, out: &mut impl Write) -> Result<(), Failure> {
    let g = match parse_graph(&read(&a.graph)?)? {
        Graph::Directed(g) => g,
        Graph::Undirected(g) => g.to_directed(),
    };
    let mode = match a.mode {
        ModeArg::Rand => Mode::Randomized,
        ModeArg::Det => Mode::Deterministic,
    };
    let opts = Options {
        vertex_failures: a.vertex_failures,
        ..Options::default()
    };
    let start = Instant::now();
    let oracle = AnyKPathOracle::preprocess(&g, a.k, mode, a.seed, &opts)?;
    eprintln!("preprocessing: {:.3} s", start.elapsed().as_secs_f64());
    save(a.out.as_deref(), &oracle.to_bytes())?;
    let (answer, w) = oracle.initial();
    writeln!(out, "{}", yes(answer)).map_err(Failure::io)?;
    if a.witness {
        writeln!(out, "WITNESS {w}").map_err(Failure::io)?;
    }
    Ok(())
}

fn undirected_preprocess(a: UndirectedPreprocess, out: &mut impl Write) -> Result<(), Failure> {
    let g = undirected_graph(&a.graph)?;
    let start = Instant::now();
    let oracle = match &a.bipartite {
        Some(p) => UndirectedOracle::bipartite(&g, parse_sides(&read(p)?, g.n())?, a.k, a.seed, true)?,
        None => {
            let opts = UndirectedOptions {
                trials: a.trials,
                ..UndirectedOptions::default()
            };
            UndirectedOracle::preprocess(&g, a.k, a.seed, &opts)?
        }
    };
    eprintln!("preprocessing: {:.3} s", start.elapsed().as_secs_f64());
    save(a.out.as_deref(), &oracle.to_bytes())?;
    writeln!(out, "{}", yes(oracle.initial())).map_err(Failure::io)
}

enum State {
    Directed(AnyKPathOracle),
    Undirected(UndirectedOracle),
}

impl State {
    fn n(&self) -> usize {
        match self {
            State::Directed(o) => o.graph().n(),
            State::Undirected(o) => o.graph().n(),
        }
    }

    /// Output lines for one script.
    fn answer(&self, batch: &UpdateBatch, brute_force: bool, witness: bool) -> Result<Vec<String>, Failure> {
        let (answer, w, truth) = match self {
            State::Directed(o) => {
                let (answer, w) = o.query(batch)?;
                let truth = if brute_force {
                    let g = o.graph().apply(batch)?.without(&batch.vertex_failures)?;
                    Some(bf_kpath(&g, o.k())?)
                } else {
                    None
                };
                (answer, Some(w), truth)
            }
            State::Undirected(o) => {
                let answer = o.query(batch)?;
                let truth = if brute_force {
                    Some(bf_kpath_undirected(&o.graph().apply(batch)?, o.k())?)
                } else {
                    None
                };
                (answer, None, truth)
            }
        };
        let mut lines = vec![yes(answer).to_string()];
        if let (true, Some(w)) = (witness, w) {
            lines.push(format!("WITNESS {w}"));
        }
        if let Some(t) = truth {
            lines.push(if t == answer { "MATCH" } else { "MISMATCH" }.into());
        }
        Ok(lines)
    }
}

fn query(a: QueryArgs, undirected: bool, out: &mut impl Write) -> Result<(), Failure> {
    let bytes = std::fs::read(&a.state).map_err(|e| Failure::Parse(format!("{}: {e}", a.state.display())))?;
    let state = if undirected {
        State::Undirected(UndirectedOracle::from_bytes(&bytes)?)
    } else {
        State::Directed(AnyKPathOracle::from_bytes(&bytes)?)
    };
    let one = |p: &PathBuf| -> Result<Vec<String>, Failure> {
        let batch = parse_updates(&read(p)?, state.n())?;
        state.answer(&batch, a.brute_force, a.witness)
    };
    let results: Vec<_> = if a.parallel_queries {
        a.updates.par_iter().map(one).collect()
    } else {
        a.updates.iter().map(one).collect()
    };
    for r in results {
        for line in r? {
            writeln!(out, "{line}").map_err(Failure::io)?;
        }
    }
    Ok(())
}

/// A value given both in the session header and as a flag must agree.
fn pick(name: &str, header: Option<usize>, flag: Option<usize>) -> Result<usize, Failure> {
    match (header, flag) {
        (Some(h), Some(f)) if h != f => Err(Failure::Parse(format!("--{name} {f} disagrees with the session header ({h})"))),
        (Some(v), _) | (None, Some(v)) => Ok(v),
        (None, None) => Err(Failure::Parse(format!("missing --{name} (or a session header)"))),
    }
}

fn dynamic(a: DynamicArgs, out: &mut impl Write) -> Result<(), Failure> {
    if a.count && a.problem != Problem::Packing {
        return Err(Failure::Parse("--count applies to packing only".into()));
    }
    let graph = match &a.graph {
        Some(p) if a.problem == Problem::Tdom => Some(undirected_graph(p)?),
        Some(_) => return Err(Failure::Parse("--graph applies to tdom only".into())),
        None => None,
    };
    let configure = |head: Option<Vec<usize>>| -> Result<session::Config, Failure> {
        let mut c = session::Config {
            problem: a.problem,
            randomized: matches!(a.mode, ModeArg::Rand),
            seed: a.seed,
            universe: 0,
            k: 0,
            m: 0,
            sizes: Vec::new(),
            graph: graph.clone(),
            epsilon: a.count.then_some(a.epsilon),
        };
        let pair = |what: &str| -> Result<(Option<usize>, Option<usize>), Failure> {
            match head.as_deref() {
                None => Ok((None, None)),
                Some(&[x, y]) => Ok((Some(x), Some(y))),
                Some(_) => Err(Failure::Parse(format!("session header must be \"{what}\""))),
            }
        };
        match a.problem {
            Problem::ExactCover | Problem::PartialCover | Problem::Packing => {
                let (n, k) = pair("N k")?;
                c.universe = pick("universe", n, a.universe)?;
                c.k = pick("k", k, a.k)?;
                if a.problem == Problem::Packing {
                    c.m = pick("m", None, a.m)?;
                }
            }
            Problem::Tdom => {
                let (n, t) = pair("n t")?;
                c.universe = pick("universe", n, a.universe.or(graph.as_ref().map(|g| g.n())))?;
                c.k = pick("t", t, a.t)?;
                if let Some(g) = &graph {
                    if g.n() != c.universe {
                        return Err(Failure::Parse(format!("graph has {} vertices, session {}", g.n(), c.universe)));
                    }
                }
            }
            Problem::Matching => {
                let (sizes, k) = match head.as_deref() {
                    Some([s @ .., k]) if !s.is_empty() => (Some(s.to_vec()), Some(*k)),
                    Some(_) => return Err(Failure::Parse("session header must be \"n1 ... nd k\"".into())),
                    None => (None, None),
                };
                let flag = match (&a.sizes, a.d, a.universe) {
                    (Some(s), _, _) => Some(s.clone()),
                    (None, Some(d), Some(u)) => Some(vec![u; d]),
                    _ => None,
                };
                c.sizes = match (sizes, flag) {
                    (Some(h), Some(f)) if h != f => {
                        return Err(Failure::Parse("universe sizes disagree with the session header".into()))
                    }
                    (Some(s), _) | (None, Some(s)) => s,
                    (None, None) => return Err(Failure::Parse("missing --sizes or --d with --universe".into())),
                };
                c.k = pick("k", k, a.k)?;
            }
        }
        Ok(c)
    };
    if a.session.as_os_str() == "-" {
        session::run(io::stdin().lock(), out, configure)
    } else {
        let f = std::fs::File::open(&a.session).map_err(|e| Failure::Parse(format!("{}: {e}", a.session.display())))?;
        session::run(io::BufReader::new(f), out, configure)
    }
}
