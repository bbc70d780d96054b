use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use olc_core::cnf_reduction::{build_cnf_instance, decode_assignment, CnfLayout};
use olc_core::easy::{solve_clique_unbounded, solve_fork_free, solve_two_lists};
use olc_core::formula::{Cnf3, NaeFormula};
use olc_core::graph::{find_violation, ColoringJson, Coloring, Instance};
use olc_core::kernel::{kernelize, Kernel};
use olc_core::links::{
    permutation_gadget, permutation_semantics, rotation_gadget, verify_link_semantics, Link, Rotation,
    SemanticsReport,
};
use olc_core::nae_reduction::{
    decode_nae, indicator_gadget, indicator_semantics, nae_gadget, not_all_gadget, not_both_gadget,
    not_both_semantics, reduce_nae3sat, triple_semantics, NaeLayout, PairSystem, TripleSystem,
};
use olc_core::padded_fork::{solve4_padded_fork_free_with, Config, OracleSub3, Stats, TwoListsFirstSub3};
use olc_core::patterns::{
    contains_clique, find_induced, fork, is_free, padded_edge, padded_fork, Pattern, PatternKind,
};
use olc_core::single_edge::solve_single_edge_free;
use olc_core::{oracle, Error};

const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_IO: u8 = 66;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(name = "olc", version, about = "List coloring of ordered graphs with forbidden patterns")]
struct Cli {
    /// Worker threads for parallel branching.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a list coloring instance.
    Solve {
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        /// Palette size; defaults to the instance bound or its largest color.
        #[arg(long)]
        k: Option<u32>,
        /// Padding of the excluded pattern.
        #[arg(long)]
        ell: Option<usize>,
        /// Subsolver for colorings with a rarely used color.
        #[arg(long, value_enum, default_value_t = Sub3::Oracle)]
        sub3: Sub3,
        file: PathBuf,
    },
    /// Look for an induced copy of a named pattern.
    Pattern {
        /// fork, fork-tail, nested-pair, edge-span:L, padded-edge:L, padded-fork:L or clique:S
        #[arg(long)]
        name: String,
        file: PathBuf,
    },
    /// Apply the forced-color reductions.
    Kernelize {
        file: PathBuf,
        /// Write the reduced instance here.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Write the removal trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Compile a formula into a coloring instance.
    Gadget {
        #[arg(value_enum)]
        kind: GadgetKind,
        formula: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Write the decoding map here.
        #[arg(long, visible_alias = "layout")]
        decode: Option<PathBuf>,
    },
    /// Read a truth assignment off a coloring of a compiled instance.
    Decode {
        #[arg(long)]
        layout: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Check a coloring against an instance.
    Verify { instance: PathBuf, coloring: PathBuf },
    /// Build a gadget and check its input/output behavior exhaustively.
    VerifyGadget(GadgetArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Auto,
    Oracle,
    TwoList,
    Chordal,
    CliqueMatching,
    SingleEdge,
    #[value(name = "ljj4")]
    PaddedFork,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Sub3 {
    Oracle,
    TwoListsFirst,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GadgetKind {
    /// 3-CNF into a fork-tail-free 4-coloring instance.
    #[value(name = "jj1")]
    Cnf,
    /// Positive NAE-3-SAT into a nested-pair-free 4-coloring instance.
    #[value(name = "rainbow")]
    Nae,
}

#[derive(clap::Args)]
struct GadgetArgs {
    #[arg(long, value_enum)]
    kind: LinkKind,
    /// Number of wires.
    #[arg(long)]
    ell: Option<usize>,
    /// First rotated position, from 1.
    #[arg(long)]
    j: Option<usize>,
    /// Last rotated position, from 1.
    #[arg(long)]
    k: Option<usize>,
    /// Images of positions 1..n, comma separated.
    #[arg(long)]
    perm: Option<String>,
    /// Color the gadget acts on.
    #[arg(long, default_value_t = 1)]
    c: u32,
    /// Number of wires for pair and triple gadgets.
    #[arg(long)]
    n: Option<usize>,
    /// First members of the pairs, from 1, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pairs: Option<String>,
    /// Triples from 1, as `1,2,3;4,5,6`.
    #[arg(long)]
    triples: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LinkKind {
    Rotation,
    Permutation,
    Indicator,
    Notcc,
    Notccc,
    Nae,
}

/// Decoding map written next to a compiled instance.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum DecodeMap {
    #[serde(rename = "jj1")]
    Cnf(CnfLayout),
    #[serde(rename = "rainbow")]
    Nae(NaeLayout),
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(PathBuf, std::io::Error),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Io(..) => EXIT_IO,
            Failure::Core(Error::Invariant(_)) => EXIT_INTERNAL,
            Failure::Core(_) => EXIT_DATA,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Failure::Usage(msg) => json!({"error": "usage", "message": msg}),
            Failure::Io(path, e) => json!({"error": "io", "message": format!("{}: {e}", path.display())}),
            Failure::Core(Error::PatternFound { pattern, witness }) => json!({
                "error": "pattern-found",
                "message": format!("graph contains an induced {pattern}"),
                "pattern": pattern,
                "witness": witness,
            }),
            Failure::Core(Error::Invariant(msg)) => json!({"error": "internal", "message": msg}),
            Failure::Core(e) => json!({"error": "data", "message": e.to_string()}),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build_global() {
        eprintln!("olc: could not start worker threads: {e}");
        return ExitCode::from(EXIT_INTERNAL);
    }
    match run(cli.command) {
        Ok(doc) => {
            println!("{doc}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let doc = f.to_json();
            eprintln!("olc: {}", doc["message"].as_str().unwrap_or("error"));
            println!("{doc}");
            ExitCode::from(f.code())
        }
    }
}

fn run(cmd: Command) -> CliResult<Value> {
    match cmd {
        Command::Solve { algo, k, ell, sub3, file } => solve(&read_instance(&file)?, algo, k, ell, sub3),
        Command::Pattern { name, file } => {
            let kind: PatternKind = name.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
            let inst = read_instance(&file)?;
            Ok(match find_induced(inst.graph(), &Pattern::of(kind)) {
                Some(w) => json!({"free": false, "witness": w}),
                None => json!({"free": true}),
            })
        }
        Command::Kernelize { file, output, trace } => kernelize_cmd(&read_instance(&file)?, output, trace),
        Command::Gadget { kind, formula, output, decode } => gadget(kind, &formula, output, decode),
        Command::Decode { layout, coloring } => {
            let map: DecodeMap = parse_json(&layout)?;
            let col = read_coloring(&coloring)?
                .ok_or_else(|| Failure::Core(Error::Precondition("coloring file reports unsat".into())))?;
            let assignment = match &map {
                DecodeMap::Cnf(l) => decode_assignment(l, &col)?,
                DecodeMap::Nae(l) => decode_nae(l, &col)?,
            };
            Ok(json!({"assignment": assignment}))
        }
        Command::Verify { instance, coloring } => {
            let inst = read_instance(&instance)?;
            let Some(col) = read_coloring(&coloring)? else {
                return Ok(json!({"valid": false, "reason": "no coloring given"}));
            };
            if col.len() != inst.n() {
                let reason = format!("coloring has {} entries for {} vertices", col.len(), inst.n());
                return Ok(json!({"valid": false, "reason": reason}));
            }
            Ok(match find_violation(&inst, &col)? {
                None => json!({"valid": true}),
                Some(v) => json!({"valid": false, "reason": v.to_string()}),
            })
        }
        Command::VerifyGadget(args) => verify_gadget(&args),
    }
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read_text(path)?).map_err(|e| Failure::Core(e.into()))
}

fn read_instance(path: &Path) -> CliResult<Instance> {
    Ok(Instance::from_json(&read_text(path)?)?)
}

fn read_coloring(path: &Path) -> CliResult<Option<Coloring>> {
    let raw: ColoringJson = parse_json(path)?;
    Ok(raw.into_coloring())
}

fn palette(inst: &Instance, k: Option<u32>) -> u32 {
    k.or(inst.k()).unwrap_or_else(|| inst.max_color())
}

fn solve(inst: &Instance, algo: Algo, k: Option<u32>, ell: Option<usize>, sub3: Sub3) -> CliResult<Value> {
    let ell = ell.unwrap_or(1);
    if ell == 0 {
        return Err(Failure::Usage("--ell must be at least 1".into()));
    }
    let route = match algo {
        Algo::Auto => Some(auto_route(inst, k, ell)),
        _ => None,
    };
    let algo = route.unwrap_or(algo);
    let col = match algo {
        Algo::Oracle | Algo::Auto => oracle::solve_exact(inst),
        Algo::TwoList => solve_two_lists(inst)?,
        Algo::Chordal => solve_fork_free(inst)?,
        Algo::CliqueMatching => solve_clique_unbounded(inst)?,
        Algo::SingleEdge => solve_single_edge_free(inst, palette(inst, k), ell)?,
        Algo::PaddedFork => {
            if let Some(k) = k.filter(|&k| k != 4) {
                return Err(Failure::Usage(format!("--algo ljj4 needs k = 4, got {k}")));
            }
            let config = Config {
                ell,
                sub3: match sub3 {
                    Sub3::Oracle => &OracleSub3,
                    Sub3::TwoListsFirst => &TwoListsFirstSub3,
                },
                small_classes: true,
            };
            solve4_padded_fork_free_with(inst, &config, &Stats::default())?
        }
    };
    let mut doc = serde_json::to_value(ColoringJson::from(col.as_ref())).map_err(Error::from)?;
    if let Some(route) = route {
        let name = route.to_possible_value().expect("visible variant").get_name().to_owned();
        doc["route"] = Value::String(name);
    }
    Ok(doc)
}

/// First solver whose preconditions the instance meets.
fn auto_route(inst: &Instance, k: Option<u32>, ell: usize) -> Algo {
    let g = inst.graph();
    if inst.lists().iter().all(|l| l.len() <= 2) {
        return Algo::TwoList;
    }
    if g.is_complete() {
        return Algo::CliqueMatching;
    }
    if is_free(g, &fork()) {
        return Algo::Chordal;
    }
    let k = palette(inst, k);
    if is_free(g, &padded_edge(ell)) {
        return Algo::SingleEdge;
    }
    if k <= 4 && contains_clique(g, 5).is_none() && is_free(g, &padded_fork(ell)) {
        return Algo::PaddedFork;
    }
    Algo::Oracle
}

fn kernelize_cmd(inst: &Instance, output: Option<PathBuf>, trace: Option<PathBuf>) -> CliResult<Value> {
    let r = match kernelize(inst) {
        Kernel::No => return Ok(json!({"status": "no"})),
        Kernel::Reduced(r) => r,
    };
    let instance: Value = serde_json::from_str(&r.instance.to_json()).map_err(Error::from)?;
    let trace_doc = json!(r.trace.iter().map(|&(v, c)| [v as u64, c as u64]).collect::<Vec<_>>());
    if let Some(path) = &output {
        write_text(path, &r.instance.to_json())?;
    }
    if let Some(path) = &trace {
        let sidecar = json!({"original_n": r.original_n, "index_map": r.index_map, "trace": trace_doc});
        write_text(path, &sidecar.to_string())?;
    }
    Ok(json!({
        "status": "reduced",
        "instance": instance,
        "index_map": r.index_map,
        "trace": trace_doc,
    }))
}

fn gadget(kind: GadgetKind, formula: &Path, output: Option<PathBuf>, decode: Option<PathBuf>) -> CliResult<Value> {
    let text = read_text(formula)?;
    let (inst, map) = match kind {
        GadgetKind::Cnf => {
            let (inst, layout) = build_cnf_instance(&Cnf3::parse_dimacs(&text)?)?;
            (inst, DecodeMap::Cnf(layout))
        }
        GadgetKind::Nae => {
            let (inst, layout) = reduce_nae3sat(&NaeFormula::parse(&text)?)?;
            (inst, DecodeMap::Nae(layout))
        }
    };
    if let Some(path) = &decode {
        write_text(path, &serde_json::to_string(&map).map_err(Error::from)?)?;
    }
    match &output {
        Some(path) => {
            write_text(path, &inst.to_json())?;
            Ok(json!({"n": inst.n(), "edges": inst.graph().edge_count(), "output": path}))
        }
        None => Ok(serde_json::from_str(&inst.to_json()).map_err(Error::from)?),
    }
}

fn need<T: Copy>(value: Option<T>, flag: &str) -> CliResult<T> {
    value.ok_or_else(|| Failure::Usage(format!("missing --{flag}")))
}

fn one_based(values: &str, flag: &str) -> CliResult<Vec<usize>> {
    values
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| match s.parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(Failure::Usage(format!("--{flag}: expected positive integers, got {s:?}"))),
        })
        .collect()
}

fn parse_triples(text: &str) -> CliResult<Vec<[usize; 3]>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|t| {
            let v = one_based(t, "triples")?;
            <[usize; 3]>::try_from(v.as_slice())
                .map_err(|_| Failure::Usage(format!("--triples: {t:?} is not three indices")))
        })
        .collect()
}

fn verify_gadget(args: &GadgetArgs) -> CliResult<Value> {
    let c = args.c;
    if args.kind != LinkKind::Nae && !(1..=2).contains(&c) {
        return Err(Failure::Usage("--c must be 1 or 2".into()));
    }
    let (link, report): (Link, SemanticsReport) = match args.kind {
        LinkKind::Rotation => {
            let len = need(args.ell, "ell")?;
            let (j, k) = (need(args.j, "j")?, need(args.k, "k")?);
            if j < 1 || j > k || k > len {
                return Err(Failure::Usage("rotation needs 1 <= j <= k <= ell".into()));
            }
            let rot = Rotation { len, j: j - 1, k: k - 1 };
            let sigma = rot.as_permutation();
            let link = rotation_gadget(len, j - 1, k - 1)?;
            let report = verify_link_semantics(&link, permutation_semantics(&sigma));
            (link, report)
        }
        LinkKind::Permutation => {
            let sigma = one_based(args.perm.as_deref().ok_or_else(|| Failure::Usage("missing --perm".into()))?, "perm")?;
            let link = permutation_gadget(&sigma)?;
            let report = verify_link_semantics(&link, permutation_semantics(&sigma));
            (link, report)
        }
        LinkKind::Indicator | LinkKind::Notcc => {
            let n = need(args.n, "n")?;
            let pairs = PairSystem::new(n, one_based(args.pairs.as_deref().unwrap_or(""), "pairs")?)?;
            if args.kind == LinkKind::Indicator {
                let link = indicator_gadget(c, &pairs)?;
                let report = verify_link_semantics(&link, indicator_semantics(c, &pairs));
                (link, report)
            } else {
                let link = not_both_gadget(c, &pairs)?;
                let report = verify_link_semantics(&link, not_both_semantics(c, &pairs));
                (link, report)
            }
        }
        LinkKind::Notccc | LinkKind::Nae => {
            let n = need(args.n, "n")?;
            let triples = TripleSystem::new(n, parse_triples(args.triples.as_deref().unwrap_or(""))?)?;
            if args.kind == LinkKind::Notccc {
                let link = not_all_gadget(c, &triples)?;
                let forbidden = [c];
                let report = verify_link_semantics(&link, triple_semantics(&forbidden, &triples));
                (link, report)
            } else {
                let link = nae_gadget(&triples)?;
                let report = verify_link_semantics(&link, triple_semantics(&[1, 2], &triples));
                (link, report)
            }
        }
    };
    Ok(json!({
        "kind": args.kind.to_possible_value().expect("visible variant").get_name(),
        "passed": report.passed(),
        "vertices": link.n(),
        "edges": link.instance().graph().edge_count(),
        "wires": link.inputs(),
        "inputs_checked": report.inputs_checked,
        "mismatches": report.mismatches,
    }))
}
