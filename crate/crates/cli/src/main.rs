use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use symgen_core::dce::{collapsed_graph, decompose, DceError, DoubleCosetDecomposition};
use symgen_core::progenitor::{Progenitor, ProgenitorError};
use symgen_core::simplicity::{iwasawa_check, SimplicityError, Verdict};
use symgen_core::toddcoxeter::{
    enumerate, CosetTable, EnumerationError, EnumerationOptions, Strategy, DEFAULT_MAX_COSETS,
};
use symgen_core::verify_m22::{run_all, VerifyError, COVER_MAX_COSETS};
use symgen_core::wordlang::{parse_presentation_file, PresentationFile, WordError};
use symgen_core::{FlatWord, PermError, Presentation};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "symgen", version, about = "Coset enumeration and symmetric generation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the cosets of a subgroup.
    Enumerate(EnumerateArgs),
    /// Decompose the cosets of a subgroup into double cosets of the control group.
    Dce(DceArgs),
    /// Write the collapsed Cayley graph of the double coset decomposition.
    Graph(GraphArgs),
    /// Apply Iwasawa's lemma to the action on the cosets of a subgroup.
    Iwasawa(IwasawaArgs),
    /// Run a bundled verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Input {
    /// Presentation file.
    #[arg(long)]
    pres: PathBuf,
    /// Subgroup name declared by a `sub` line.
    #[arg(long)]
    sub: String,
    #[arg(long, value_enum, default_value_t = StrategyArg::Felsch)]
    strategy: StrategyArg,
    /// Live-coset cap.
    #[arg(long, env = "SYMGEN_MAX_COSETS", default_value_t = DEFAULT_MAX_COSETS)]
    max_cosets: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Felsch,
    Hlt,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Felsch => Strategy::Felsch,
            StrategyArg::Hlt => Strategy::Hlt,
        }
    }
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    input: Input,
    /// Write a JSON report.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the standardized coset table as TSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DceArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    json: Option<PathBuf>,
    /// Also write the collapsed Cayley graph in DOT.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    input: Input,
    /// DOT output path; stdout when absent.
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct IwasawaArgs {
    #[command(flatten)]
    input: Input,
    /// Generators of the candidate abelian normal subgroup K.
    #[arg(long = "k", required = true, num_args = 1..)]
    k: Vec<String>,
    /// Order the image must reach to be faithful.
    #[arg(long)]
    expect: u64,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long)]
    json: Option<PathBuf>,
    /// Skip the cover enumerations.
    #[arg(long)]
    skip_covers: bool,
    /// Live-coset cap for the cover enumerations.
    #[arg(long, env = "SYMGEN_MAX_COSETS", default_value_t = COVER_MAX_COSETS)]
    max_cosets: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    M22,
}

/// A failure with its process exit code.
#[derive(Debug)]
enum Failure {
    /// Bad input: unreadable file, malformed presentation, unknown name.
    Usage(String),
    /// A check ran and did not hold.
    Verification(String),
    /// The coset cap was reached.
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verification(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<EnumerationError> for Failure {
    fn from(e: EnumerationError) -> Self {
        match e {
            EnumerationError::CapExceeded { .. } => Failure::Cap(e.to_string()),
            EnumerationError::InvalidCap | EnumerationError::Word(_) => Failure::Usage(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

impl From<WordError> for Failure {
    fn from(e: WordError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ProgenitorError> for Failure {
    fn from(e: ProgenitorError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<PermError> for Failure {
    fn from(e: PermError) -> Self {
        Failure::Verification(e.to_string())
    }
}

impl From<DceError> for Failure {
    fn from(e: DceError) -> Self {
        match e {
            DceError::Table(t) => t.into(),
            DceError::Progenitor(p) => p.into(),
            other => Failure::Verification(other.to_string()),
        }
    }
}

impl From<SimplicityError> for Failure {
    fn from(e: SimplicityError) -> Self {
        match e {
            SimplicityError::Table(t) => t.into(),
            SimplicityError::Perm(p) => p.into(),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Enumeration(t) => t.into(),
            other => Failure::Verification(other.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Enumerate(a) => run_enumerate(a),
        Command::Dce(a) => run_dce(a),
        Command::Graph(a) => run_graph(a),
        Command::Iwasawa(a) => run_iwasawa(a),
        Command::Verify(a) => run_verify(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("symgen: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

struct Loaded {
    file: PresentationFile,
    presentation: Presentation,
    table: CosetTable,
}

fn load(input: &Input) -> Result<Loaded> {
    let text = fs::read_to_string(&input.pres)
        .map_err(|e| Failure::Usage(format!("{}: {e}", input.pres.display())))?;
    let file = parse_presentation_file(&text)?;
    let presentation = file.presentation();
    let sub = presentation
        .subgroup(&input.sub)
        .ok_or_else(|| Failure::Usage(format!("no subgroup named {}", input.sub)))?;
    let opts = EnumerationOptions {
        strategy: input.strategy.into(),
        max_cosets: input.max_cosets,
    };
    let table = enumerate(&presentation, sub, &opts)?;
    Ok(Loaded {
        file,
        presentation,
        table,
    })
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_json(path: &Path, command: &str, body: impl Serialize) -> Result<()> {
    let mut v = json!({ "schema": SCHEMA, "command": command });
    let body = serde_json::to_value(body).expect("report serializes");
    if let (Value::Object(dst), Value::Object(src)) = (&mut v, body) {
        dst.extend(src);
    }
    let mut text = serde_json::to_string_pretty(&v).expect("report serializes");
    text.push('\n');
    write(path, &text)
}

fn run_enumerate(a: EnumerateArgs) -> Result<()> {
    let l = load(&a.input)?;
    let stats = l.table.stats();
    println!("index {}", l.table.index());
    println!(
        "strategy {}, defined {}, max live {}, coincidences {}",
        stats.strategy, stats.cosets_defined, stats.max_live, stats.coincidences
    );
    if let Some(path) = &a.out {
        write(path, &l.table.to_tsv())?;
    }
    if let Some(path) = &a.json {
        let actions: Vec<_> = l
            .presentation
            .generators
            .iter()
            .zip(l.table.generator_actions())
            .map(|(g, p)| json!({ "generator": g, "action": p }))
            .collect();
        write_json(
            path,
            "enumerate",
            json!({
                "subgroup": a.input.sub,
                "index": l.table.index(),
                "stats": stats,
                "generator_actions": actions,
            }),
        )?;
    }
    Ok(())
}

fn decomposition(l: &Loaded) -> Result<DoubleCosetDecomposition> {
    let prog = Progenitor::from_file(&l.file)?;
    Ok(decompose(&l.table, &prog.action, &prog.map)?)
}

fn run_dce(a: DceArgs) -> Result<()> {
    let l = load(&a.input)?;
    let d = decomposition(&l)?;
    let mut out = String::new();
    writeln!(
        out,
        "index {}, control order {}, {} double cosets",
        d.index,
        d.control_order,
        d.double_cosets.len()
    )
    .unwrap();
    writeln!(out, "{:<16} {:>6} {:>10}", "double coset", "cosets", "stabilizer").unwrap();
    for dc in &d.double_cosets {
        writeln!(out, "{:<16} {:>6} {:>10}", dc.name(), dc.count, dc.stabilizer_order).unwrap();
    }
    let total: usize = d.double_cosets.iter().map(|c| c.count).sum();
    writeln!(out, "total {total}").unwrap();
    print!("{out}");
    let graph = collapsed_graph(&d);
    if let Some(path) = &a.dot {
        write(path, &graph.to_dot())?;
    }
    if let Some(path) = &a.json {
        write_json(
            path,
            "dce",
            json!({
                "subgroup": a.input.sub,
                "index": d.index,
                "control_order": d.control_order,
                "double_cosets": d.double_cosets,
                "graph": graph,
            }),
        )?;
    }
    if total != d.index {
        return Err(Failure::Verification(format!("counts sum to {total}, not {}", d.index)));
    }
    Ok(())
}

fn run_graph(a: GraphArgs) -> Result<()> {
    let l = load(&a.input)?;
    let graph = collapsed_graph(&decomposition(&l)?);
    match &a.dot {
        Some(path) => write(path, &graph.to_dot())?,
        None => print!("{}", graph.to_dot()),
    }
    if let Some(path) = &a.json {
        write_json(path, "graph", &graph)?;
    }
    Ok(())
}

fn run_iwasawa(a: IwasawaArgs) -> Result<()> {
    let l = load(&a.input)?;
    let k = a
        .k
        .iter()
        .map(|w| l.presentation.parse(w))
        .collect::<std::result::Result<Vec<FlatWord>, _>>()?;
    let r = iwasawa_check(&l.table, &l.presentation, &k, a.expect)?;
    println!("degree {}", r.degree);
    println!("image order {} (expected {})", r.image_order, r.expected_order);
    println!("faithful {}", r.faithful);
    println!("perfect {}", r.perfect);
    println!("primitive {}", r.primitive);
    println!("K order {}, abelian {}", r.k_order, r.k_abelian);
    println!("K normal in stabilizer {}", r.k_normal_in_stabilizer);
    println!("K conjugates generate {}", r.k_conjugates_generate);
    println!(
        "verdict {}: {}",
        serde_json::to_value(r.verdict).unwrap().as_str().unwrap(),
        r.reason
    );
    if let Some(path) = &a.json {
        write_json(path, "iwasawa", &r)?;
    }
    match r.verdict {
        Verdict::Simple => Ok(()),
        _ => Err(Failure::Verification(r.reason.clone())),
    }
}

fn run_verify(a: VerifyArgs) -> Result<()> {
    let Suite::M22 = a.suite;
    let report = run_all(!a.skip_covers, a.max_cosets)?;
    for c in &report.claims {
        let status = if c.pass { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            println!("{status} {}: {}", c.id, c.statement);
        } else {
            println!("{status} {}: {} [{}]", c.id, c.statement, c.detail);
        }
    }
    let failed = report.claims.iter().filter(|c| !c.pass).count();
    println!("{} claims, {failed} failed", report.claims.len());
    if let Some(path) = &a.json {
        write_json(path, "verify", json!({ "suite": "m22", "passed": report.passed(), "claims": report.claims }))?;
    }
    if failed > 0 {
        return Err(Failure::Verification(format!("{failed} claims failed")));
    }
    Ok(())
}
