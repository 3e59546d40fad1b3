//! `cpgraph`: construct CP graphs, reduce them and check their distance invariants.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use cpgraph_core::addressing::DEFAULT_BUDGET;
use cpgraph_core::io::{graph_to_dot, weighted_to_dot};
use cpgraph_core::{
    all_pairs_distances, attach, blocks, build_cp_graph, count_neighborhood_sequences,
    cp2_invariants, enumerate_neighborhood_sequences, exact_n, family_invariants,
    parse_graph_input, reduced_graph, reducing_matrix, run_suite, search_scheme, verify_scheme,
    AddressError, AddressScheme, BlockCliquePathRecipe, CliquePathSpec, Error, GraphInvariants,
    GraphRecord, LabeledGraph, NeighborhoodSequence, NonLeapingSequence,
};

const THREADS_ENV: &str = "CPGRAPH_THREADS";

#[derive(Parser)]
#[command(name = "cpgraph", version, about = "Distance-matrix invariants of CP graphs")]
struct Cli {
    /// Emit Graphviz DOT instead of JSON where a graph is produced.
    #[arg(long, global = true)]
    dot: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Non-leaping sequences.
    #[command(subcommand)]
    Seq(SeqCommand),
    /// Members of a family CP(s).
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Graph construction and structure.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Reduced graph and reducing matrix.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Determinant, inertia and cofactor sum.
    Invariants(InvariantsArgs),
    /// Addressing schemes.
    #[command(subcommand)]
    Address(AddressCommand),
    /// Run a named property suite.
    Check {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        scale: Option<usize>,
    },
}

#[derive(Subcommand)]
enum SeqCommand {
    /// Validate a sequence such as `0,1,2,2,3`.
    Validate { seq: String },
    /// Expand a spec such as `2:3,4,3,4`.
    Expand { spec: String },
}

#[derive(Subcommand)]
enum FamilyCommand {
    Enumerate {
        seq: String,
        #[arg(long)]
        limit: Option<usize>,
    },
    Count { seq: String },
}

#[derive(Args)]
struct Member {
    /// Sequence or `2:` spec.
    seq: String,
    /// Anchors `a_3,...,a_n`; the first member when omitted.
    #[arg(long, value_delimiter = ',')]
    anchors: Option<Vec<usize>>,
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Build a member of CP(s).
    Build(Member),
    /// Distance matrix of a graph file (`-` for stdin).
    Distance { input: PathBuf },
    /// Blocks of a graph file.
    Blocks { input: PathBuf },
    /// Attach a CP graph along an edge `v1,v2` of a base graph.
    Attach {
        base: PathBuf,
        /// Ordered edge `v1,v2` of the base graph.
        #[arg(long, value_delimiter = ',')]
        edge: Vec<usize>,
        #[command(flatten)]
        member: Member,
    },
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// Reduced graph of a sequence.
    Graph { seq: String },
    /// Reducing matrix of a member.
    Matrix(Member),
    /// Check E^T D E against the reduced graph for one member or all of them.
    Verify {
        #[command(flatten)]
        member: Member,
        #[arg(long, conflicts_with = "anchors")]
        all: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InvariantsArgs {
    /// Graph file (`-` for stdin).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Family given by a sequence or `2:` spec, via the reduced graph.
    #[arg(long)]
    family: Option<String>,
    /// Closed forms for a `2:` spec.
    #[arg(long)]
    spec: Option<String>,
    /// Block recipe JSON file; reports the block-2CP inertia check.
    #[arg(long)]
    recipe: Option<PathBuf>,
}

#[derive(Subcommand)]
enum AddressCommand {
    Verify { input: PathBuf, scheme: PathBuf },
    Search {
        input: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    ExactN {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

enum Failure {
    Input(String),
    Verification(Value),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Address(AddressError::TooLarge(_) | AddressError::BudgetExceeded(_)) => {
                Failure::Guard(e.to_string())
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

macro_rules! from_core {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Error::from(e).into()
            }
        }
    )*};
}

from_core!(
    cpgraph_core::SequenceError,
    cpgraph_core::GraphError,
    cpgraph_core::LinalgError,
    cpgraph_core::FormulaError,
    cpgraph_core::AddressError,
    cpgraph_core::InputError,
    cpgraph_core::SuiteError
);

enum Output {
    Json(Value),
    Text(String),
}

fn json_of<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

fn read_graph(path: &PathBuf) -> Result<LabeledGraph, Failure> {
    Ok(parse_graph_input(&read_input(path)?)?)
}

fn parse_seq(text: &str) -> Result<NonLeapingSequence, Failure> {
    Ok(text.parse::<NonLeapingSequence>()?)
}

fn member(m: &Member) -> Result<NeighborhoodSequence, Failure> {
    let s = parse_seq(&m.seq)?;
    Ok(match &m.anchors {
        Some(a) => NeighborhoodSequence::new(s, a.clone())?,
        None => NeighborhoodSequence::first(s),
    })
}

fn graph_output(g: &LabeledGraph, dot: bool) -> Output {
    if dot {
        Output::Text(graph_to_dot(g))
    } else {
        Output::Json(json_of(&GraphRecord::from(g)))
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let dot = cli.dot;
    Ok(match &cli.command {
        Command::Seq(SeqCommand::Validate { seq }) => {
            let s = parse_seq(seq)?;
            Output::Json(json!({ "q": s.as_slice(), "b": s.b_values(), "n": s.len() }))
        }
        Command::Seq(SeqCommand::Expand { spec }) => {
            let spec: CliquePathSpec = spec.parse()?;
            let s = spec.expand()?;
            Output::Json(json!({ "spec": spec.to_string(), "q": s.as_slice(), "n": s.len() }))
        }
        Command::Family(FamilyCommand::Enumerate { seq, limit }) => {
            let s = parse_seq(seq)?;
            let members: Vec<Vec<usize>> = enumerate_neighborhood_sequences(&s)
                .take(limit.unwrap_or(usize::MAX))
                .map(|ns| ns.anchors().to_vec())
                .collect();
            Output::Json(json!({ "q": s.as_slice(), "anchors": members }))
        }
        Command::Family(FamilyCommand::Count { seq }) => {
            let s = parse_seq(seq)?;
            let count = count_neighborhood_sequences(&s).to_string();
            Output::Json(json!({ "q": s.as_slice(), "count": count }))
        }
        Command::Graph(GraphCommand::Build(m)) => graph_output(&build_cp_graph(&member(m)?), dot),
        Command::Graph(GraphCommand::Distance { input }) => {
            Output::Json(json_of(&all_pairs_distances(&read_graph(input)?)?))
        }
        Command::Graph(GraphCommand::Blocks { input }) => {
            let list: Vec<Value> = blocks(&read_graph(input)?)?
                .iter()
                .map(|b| json!({ "vertices": b.vertices, "edges": b.graph.edges() }))
                .collect();
            Output::Json(Value::Array(list))
        }
        Command::Graph(GraphCommand::Attach { base, edge, member: m }) => {
            let [v1, v2] = edge[..] else {
                return Err(Failure::Input(format!("--edge needs two vertices, got {edge:?}")));
            };
            let base = read_graph(base)?;
            let cp = build_cp_graph(&member(m)?);
            let att = attach(&base, (v1, v2), &cp)?;
            if dot {
                Output::Text(graph_to_dot(&att.graph))
            } else {
                Output::Json(json!({
                    "graph": GraphRecord::from(&att.graph),
                    "cp_labels": att.cp_labels,
                }))
            }
        }
        Command::Reduce(ReduceCommand::Graph { seq }) => {
            let h = reduced_graph(&parse_seq(seq)?);
            if dot {
                Output::Text(weighted_to_dot(&h))
            } else {
                Output::Json(json_of(&h))
            }
        }
        Command::Reduce(ReduceCommand::Matrix(m)) => Output::Json(json_of(&reducing_matrix(&member(m)?))),
        Command::Reduce(ReduceCommand::Verify { member: m, all }) => {
            let s = parse_seq(&m.seq)?;
            let members: Vec<NeighborhoodSequence> = if *all {
                enumerate_neighborhood_sequences(&s).collect()
            } else {
                vec![member(m)?]
            };
            let reduced = reduced_graph(&s).adjacency_matrix();
            let mut mismatched = Vec::new();
            for ns in &members {
                let d = all_pairs_distances(&build_cp_graph(ns))?;
                let got = cpgraph_core::congruence_reduce(&d, &reducing_matrix(ns))?;
                if got != reduced {
                    mismatched.push(ns.anchors().to_vec());
                }
            }
            let report = json!({
                "q": s.as_slice(),
                "members": members.len(),
                "mismatched": mismatched,
                "ok": mismatched.is_empty(),
            });
            if mismatched.is_empty() {
                Output::Json(report)
            } else {
                return Err(Failure::Verification(report));
            }
        }
        Command::Invariants(args) => invariants(args)?,
        Command::Address(AddressCommand::Verify { input, scheme }) => {
            let g = read_graph(input)?;
            let s: AddressScheme = serde_json::from_str(&read_input(scheme)?)
                .map_err(|e| Failure::Input(format!("scheme: {e}")))?;
            let s = AddressScheme::new(s.addresses)?;
            let valid = verify_scheme(&g, &s)?;
            let report = json!({ "valid": valid });
            if valid {
                Output::Json(report)
            } else {
                return Err(Failure::Verification(report));
            }
        }
        Command::Address(AddressCommand::Search { input, d, budget }) => {
            let g = read_graph(input)?;
            let found = search_scheme(&g, *d, *budget)?;
            Output::Json(json!({ "d": d, "exists": found.is_some(), "scheme": found }))
        }
        Command::Address(AddressCommand::ExactN { input, budget }) => {
            Output::Json(json_of(&exact_n(&read_graph(input)?, *budget)?))
        }
        Command::Check { suite, seed, scale } => {
            let report = run_suite(suite, *seed, *scale)?;
            let value = json_of(&report);
            if report.ok() {
                Output::Json(value)
            } else {
                return Err(Failure::Verification(value));
            }
        }
    })
}

fn invariants(args: &InvariantsArgs) -> Result<Output, Failure> {
    if let Some(path) = &args.graph {
        let g = read_graph(path)?;
        return Ok(Output::Json(json_of(&GraphInvariants::of_graph(&g)?)));
    }
    if let Some(seq) = &args.family {
        let s = parse_seq(seq)?;
        let count = count_neighborhood_sequences(&s).to_string();
        return Ok(Output::Json(json!({
            "q": s.as_slice(),
            "members": count,
            "invariants": family_invariants(&s),
        })));
    }
    if let Some(spec) = &args.spec {
        let spec: CliquePathSpec = spec.parse()?;
        let params = cpgraph_core::seesaw_params(&spec);
        return Ok(Output::Json(json!({
            "spec": spec.to_string(),
            "n": spec.vertex_count(),
            "seesaw": [params.left, params.right],
            "invariants": cp2_invariants(&spec),
        })));
    }
    let path = args.recipe.as_ref().expect("clap enforces one source");
    let recipe: BlockCliquePathRecipe = serde_json::from_str(&read_input(path)?)
        .map_err(|e| Failure::Input(format!("recipe: {e}")))?;
    let realized = recipe.realize()?;
    let peel = cpgraph_core::peel_leading_minors(&recipe)?;
    let inertia = cpgraph_core::block_2cp_inertia(&recipe)?;
    Ok(Output::Json(json!({
        "graph": GraphRecord::from(&realized.graph),
        "inertia": inertia,
        "peel": peel,
        "invariants": GraphInvariants::of_graph(&realized.graph)?,
    })))
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        let n: usize = raw
            .parse()
            .map_err(|_| Failure::Input(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Input(e.to_string()))?;
    }
    Ok(())
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|()| run(&cli));
    match outcome {
        Ok(Output::Json(v)) => {
            print_json(&v);
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(v)) => {
            print_json(&v);
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
