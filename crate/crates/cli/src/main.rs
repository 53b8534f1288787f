mod record;

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use leaky_forcing::brute::{brute_force_z_with, BruteOptions};
use leaky_forcing::families::{closed_form_z, grid_pattern, PatternKind, ZValue};
use leaky_forcing::forcing::verify_l_forcing_with;
use leaky_forcing::format::{parse_edge_list, parse_graph6};
use leaky_forcing::solver::compute_with_options;
use leaky_forcing::suites::{
    cubic_reference_value, run_case, suite_cases, Suite, SuiteCase, SuiteRecord,
};
use leaky_forcing::{
    build_family, closure, Error, Execution, FamilyKind, Graph, SolveOptions, VertexSet,
};

use record::{Bounds, OutputRecord};

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_FAILED: u8 = 3;
const EXIT_CAP: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "lforce",
    version,
    about = "Exact l-forcing (leaky zero forcing) numbers"
)]
struct Cli {
    /// Worker threads; 1 runs everything on the calling thread.
    #[arg(long, global = true, env = "LFORCE_THREADS")]
    threads: Option<usize>,

    /// Print one JSON record per result instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute Z_(l) of a graph and an optimal set.
    Compute(ComputeArgs),
    /// Check whether a set is l-forcing.
    Verify(VerifyArgs),
    /// Final colored set from an initial set and fixed leaks.
    Closure(ClosureArgs),
    /// Closed-form value for a named family, confirmed by the solver.
    Family(FamilyArgs),
    /// Emit an explicit 1-forcing pattern of a grid.
    Pattern(PatternArgs),
    /// Exhaustive search for small graphs.
    Brute(BruteArgs),
    /// Run a benchmark suite, one JSON line per instance.
    Bench(BenchArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Edgelist,
    Graph6,
}

#[derive(Args, Debug)]
struct GraphInput {
    /// Graph file, or `-` for standard input.
    #[arg(long)]
    graph: PathBuf,

    /// Input format; inferred from a `.g6` extension when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long, default_value_t = 0)]
    leaks: usize,
    /// Vertices that must belong to the set, e.g. `0,4,7`.
    #[arg(long, value_parser = parse_vertex_list)]
    require: Option<VertexList>,
    /// Cover every fort this many times.
    #[arg(long, default_value_t = 1)]
    redundancy: usize,
    /// Forts harvested per failed verification.
    #[arg(long, default_value_t = 1)]
    forts_per_iteration: usize,
    /// Give up (exit 4) after this many covering problems.
    #[arg(long)]
    max_iterations: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long, value_parser = parse_vertex_list)]
    set: VertexList,
    #[arg(long, default_value_t = 0)]
    leaks: usize,
}

#[derive(Args, Debug)]
struct ClosureArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long, value_parser = parse_vertex_list)]
    set: VertexList,
    /// Vertices that may not force.
    #[arg(long, value_parser = parse_vertex_list)]
    leak_at: Option<VertexList>,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long, value_parser = parse_family_kind)]
    name: FamilyKind,
    /// Family parameters, e.g. `5` or `3,4` (also `3x4` for grids).
    #[arg(long)]
    params: String,
    #[arg(long, default_value_t = 0)]
    leaks: usize,
    /// Skip the solver run.
    #[arg(long)]
    oracle_only: bool,
}

#[derive(Args, Debug)]
struct PatternArgs {
    /// Grid size as `NxM` (rows by columns).
    #[arg(long, value_parser = parse_grid_size)]
    grid: (usize, usize),
    #[arg(long, value_parser = parse_pattern_kind)]
    kind: PatternKind,
    /// Check that the pattern is 1-forcing.
    #[arg(long)]
    verify: bool,
}

#[derive(Args, Debug)]
struct BruteArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long, default_value_t = 0)]
    leaks: usize,
    /// Largest graph to accept.
    #[arg(long, default_value_t = 16)]
    max_vertices: usize,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_parser = parse_suite)]
    suite: Suite,
    /// Run only the first N instances.
    #[arg(long)]
    limit: Option<usize>,
    /// Include the expensive instances.
    #[arg(long)]
    long: bool,
    /// For the cubic suite: graph6 lines, each optionally followed by a name
    /// such as `Cubic_24_2`, replacing the generated graphs.
    #[arg(long)]
    graph6: Option<PathBuf>,
}

/// A comma-separated list of 0-based vertices.
#[derive(Debug, Clone, Default)]
struct VertexList(Vec<usize>);

fn parse_vertex_list(s: &str) -> Result<VertexList, String> {
    if s.is_empty() {
        return Ok(VertexList::default());
    }
    s.split(',')
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| format!("'{t}' is not a vertex index (use e.g. 0,3,5)"))
        })
        .collect::<Result<_, _>>()
        .map(VertexList)
}

fn parse_grid_size(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NxM, got '{s}'"))?;
    let n = a.parse().map_err(|_| format!("bad row count '{a}'"))?;
    let m = b.parse().map_err(|_| format!("bad column count '{b}'"))?;
    Ok((n, m))
}

fn parse_family_kind(s: &str) -> Result<FamilyKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_pattern_kind(s: &str) -> Result<PatternKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Carries an exit code for outcomes that are not program errors.
#[derive(Debug)]
struct Outcome(u8);

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "exit {}", self.0)
    }
}

impl std::error::Error for Outcome {}

struct Ctx {
    json: bool,
    execution: Execution,
}

impl Ctx {
    fn emit(&self, rec: &OutputRecord) {
        if self.json {
            println!("{}", rec.to_json());
        } else {
            println!("{}", rec.to_text());
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Some(Outcome(code)) = e.downcast_ref::<Outcome>() {
                return ExitCode::from(*code);
            }
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<Error>() {
            return match err {
                Error::ResourceCap(_) => EXIT_CAP,
                Error::Logic(_) | Error::Infeasible { .. } => EXIT_USAGE,
                _ => EXIT_INPUT,
            };
        }
        if cause.downcast_ref::<io::Error>().is_some() {
            return EXIT_INPUT;
        }
    }
    EXIT_USAGE
}

fn run(cli: Cli) -> Result<()> {
    let threads = cli.threads.unwrap_or(0);
    configure_threads(threads)?;
    let ctx = Ctx {
        json: cli.json,
        execution: if threads == 1 {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
    };
    match cli.command {
        Command::Compute(a) => compute(&ctx, a),
        Command::Verify(a) => verify(&ctx, a),
        Command::Closure(a) => closure_cmd(&ctx, a),
        Command::Family(a) => family(&ctx, a),
        Command::Pattern(a) => pattern(&ctx, a),
        Command::Brute(a) => brute(&ctx, a),
        Command::Bench(a) => bench(&ctx, a),
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(threads: usize) -> Result<()> {
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the worker pool")?;
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(_threads: usize) -> Result<()> {
    Ok(())
}

fn load_graph(input: &GraphInput) -> Result<Graph> {
    let text = if input.graph.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading standard input")?;
        s
    } else {
        fs::read_to_string(&input.graph)
            .with_context(|| format!("reading {}", input.graph.display()))?
    };
    let format = input.format.unwrap_or_else(|| {
        if input.graph.extension().is_some_and(|e| e == "g6") {
            Format::Graph6
        } else {
            Format::Edgelist
        }
    });
    let g = match format {
        Format::Edgelist => parse_edge_list(&text),
        Format::Graph6 => parse_graph6(&text),
    }
    .with_context(|| format!("parsing {}", input.graph.display()))?;
    Ok(g.with_label(graph_label(&input.graph)))
}

fn graph_label(path: &Path) -> String {
    path.file_stem()
        .and_then(|s| s.to_str())
        .filter(|s| !s.is_empty() && *s != "-")
        .unwrap_or("stdin")
        .to_string()
}

fn vertex_set(g: &Graph, members: &[usize]) -> Result<VertexSet> {
    Ok(g.vertex_set(members.iter().copied())?)
}

fn solve_options(ctx: &Ctx) -> SolveOptions {
    SolveOptions {
        execution: ctx.execution,
        ..SolveOptions::default()
    }
}

fn compute(ctx: &Ctx, a: ComputeArgs) -> Result<()> {
    let start = Instant::now();
    let g = load_graph(&a.input)?;
    let required = vertex_set(&g, &a.require.unwrap_or_default().0)?;
    let opts = SolveOptions {
        forts_per_iteration: a.forts_per_iteration,
        max_iterations: a.max_iterations,
        ..solve_options(ctx)
    };
    let r = compute_with_options(&g, a.leaks, &required, a.redundancy, &opts)?;
    let mut rec = OutputRecord::new("compute", &g, a.leaks).with_set(&r.optimal_set);
    rec.z = Some(r.z);
    rec.forts_generated = r.fort_pool.len();
    rec.iterations = r.iterations;
    rec.elapsed_ms = start.elapsed().as_millis();
    ctx.emit(&rec);
    Ok(())
}

fn verify(ctx: &Ctx, a: VerifyArgs) -> Result<()> {
    let start = Instant::now();
    let g = load_graph(&a.input)?;
    let set = vertex_set(&g, &a.set.0)?;
    let verdict = verify_l_forcing_with(&g, &set, a.leaks, ctx.execution)?;
    let mut rec = OutputRecord::new("verify", &g, a.leaks).with_set(&set);
    rec.passed = Some(verdict.passed);
    rec.witness_leaks = verdict.witness_leaks.map(|w| w.to_vec());
    rec.elapsed_ms = start.elapsed().as_millis();
    ctx.emit(&rec);
    if let (false, Some(residual)) = (ctx.json, &verdict.residual) {
        println!("uncolored under witness: {residual}");
    }
    if verdict.passed {
        Ok(())
    } else {
        Err(Outcome(EXIT_FAILED).into())
    }
}

fn closure_cmd(ctx: &Ctx, a: ClosureArgs) -> Result<()> {
    let start = Instant::now();
    let g = load_graph(&a.input)?;
    let initial = vertex_set(&g, &a.set.0)?;
    let leaks = vertex_set(&g, &a.leak_at.unwrap_or_default().0)?;
    let colored = closure(&g, &initial, &leaks)?;
    let mut rec = OutputRecord::new("closure", &g, leaks.len()).with_set(&colored);
    rec.passed = Some(colored.is_full());
    rec.witness_leaks = Some(leaks.to_vec());
    rec.elapsed_ms = start.elapsed().as_millis();
    ctx.emit(&rec);
    Ok(())
}

fn parse_params(s: &str) -> Result<Vec<usize>> {
    s.split([',', 'x', 'X'])
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| anyhow!(Error::Parameter(format!("bad family parameter '{t}'"))))
        })
        .collect()
}

fn family(ctx: &Ctx, a: FamilyArgs) -> Result<()> {
    let start = Instant::now();
    let spec = a.name.with_params(&parse_params(&a.params)?)?;
    let g = build_family(spec)?;
    let form = closed_form_z(spec, a.leaks)?;
    let mut rec = OutputRecord::new("family", &g, a.leaks);
    rec.z = form.value.exact();
    rec.bounds = form
        .value
        .bounds()
        .map(|(lower, upper)| Bounds { lower, upper });
    if !a.oracle_only {
        let r = compute_with_options(
            &g,
            a.leaks,
            &VertexSet::empty(g.n()),
            1,
            &solve_options(ctx),
        )?;
        rec.z = Some(r.z);
        rec.set = Some(r.optimal_set.to_vec());
        rec.forts_generated = r.fort_pool.len();
        rec.iterations = r.iterations;
        rec.passed = (form.value != ZValue::Unknown).then(|| form.value.admits(r.z));
    }
    rec.elapsed_ms = start.elapsed().as_millis();
    ctx.emit(&rec);
    if !ctx.json {
        println!("closed form: {} ({})", form.value, form.provenance);
    }
    if rec.passed == Some(false) {
        return Err(Outcome(EXIT_FAILED).into());
    }
    Ok(())
}

fn pattern(ctx: &Ctx, a: PatternArgs) -> Result<()> {
    let start = Instant::now();
    let (n, m) = a.grid;
    let p = grid_pattern(a.kind, n, m)?;
    let g = build_family(leaky_forcing::FamilySpec::Grid(n, m))?;
    let set = p.vertex_set();
    let mut rec = OutputRecord::new("pattern", &g, 1).with_set(&set);
    rec.z = Some(set.len());
    if a.verify {
        let verdict = verify_l_forcing_with(&g, &set, 1, ctx.execution)?;
        rec.passed = Some(verdict.passed && set.len() == a.kind.expected_size(n, m));
        rec.witness_leaks = verdict.witness_leaks.map(|w| w.to_vec());
    }
    rec.elapsed_ms = start.elapsed().as_millis();
    ctx.emit(&rec);
    if !ctx.json {
        let cells: Vec<String> = p.cells.iter().map(|(r, c)| format!("({r},{c})")).collect();
        println!(
            "{} pattern, {} cells (expected {}): {}",
            a.kind.name(),
            p.cells.len(),
            a.kind.expected_size(n, m),
            cells.join(" ")
        );
    }
    if rec.passed == Some(false) {
        return Err(Outcome(EXIT_FAILED).into());
    }
    Ok(())
}

fn brute(ctx: &Ctx, a: BruteArgs) -> Result<()> {
    let start = Instant::now();
    let g = load_graph(&a.input)?;
    let opts = BruteOptions {
        max_vertices: a.max_vertices,
        execution: ctx.execution,
        ..BruteOptions::default()
    };
    let r = brute_force_z_with(&g, a.leaks, &opts)?;
    let mut rec = OutputRecord::new("brute", &g, a.leaks).with_set(&r.set);
    rec.z = Some(r.z);
    rec.elapsed_ms = start.elapsed().as_millis();
    ctx.emit(&rec);
    Ok(())
}

fn user_cubic_cases(path: &Path) -> Result<Vec<SuiteCase>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut cases = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let code = tokens.next().unwrap_or_default();
        let name = tokens.next();
        let g = parse_graph6(code).with_context(|| format!("line {}", i + 1))?;
        if !(0..g.n()).all(|v| g.degree(v) == 3) {
            bail!(Error::Validation(format!(
                "line {}: graph is not cubic",
                i + 1
            )));
        }
        let label = name.map_or_else(|| format!("cubic{}-line{}", g.n(), i + 1), str::to_string);
        let expected = match name.and_then(cubic_reference_value) {
            Some(z) => ZValue::Exact(z),
            None => ZValue::Unknown,
        };
        cases.push(SuiteCase {
            graph: g.with_label(label),
            ell: 1,
            expected,
        });
    }
    Ok(cases)
}

fn bench_record(r: &SuiteRecord, passed: Option<bool>) -> OutputRecord {
    let g_info = record::GraphInfo {
        label: r.label.clone(),
        n: r.n,
        edge_count: r.edge_count,
    };
    OutputRecord {
        schema_version: record::SCHEMA_VERSION,
        graph: g_info,
        command: "bench",
        leaks: r.ell,
        z: Some(r.z),
        set: Some(r.set.clone()),
        bounds: r
            .expected
            .bounds()
            .map(|(lower, upper)| Bounds { lower, upper }),
        forts_generated: r.forts,
        iterations: r.iterations,
        passed,
        witness_leaks: None,
        elapsed_ms: r.elapsed_ms,
    }
}

fn bench(ctx: &Ctx, a: BenchArgs) -> Result<()> {
    let mut cases = match (&a.graph6, a.suite) {
        (Some(path), Suite::Cubic) => user_cubic_cases(path)?,
        (Some(_), other) => bail!(Error::Parameter(format!(
            "--graph6 only applies to the cubic suite, not {other}"
        ))),
        (None, suite) => suite_cases(suite, a.long)?,
    };
    if let Some(limit) = a.limit {
        cases.truncate(limit);
    }
    let opts = solve_options(ctx);
    let mut all_passed = true;
    for case in &cases {
        let r = run_case(case, &opts)?;
        // Without a recorded value, check the invariants instead: the set
        // verifies and is no larger than the graph.
        let passed = match r.agrees {
            Some(ok) => ok,
            None => {
                let set = vertex_set(&case.graph, &r.set)?;
                r.z <= r.n
                    && verify_l_forcing_with(&case.graph, &set, case.ell, ctx.execution)?.passed
            }
        };
        all_passed &= passed;
        println!("{}", bench_record(&r, Some(passed)).to_json());
    }
    if all_passed {
        Ok(())
    } else {
        Err(Outcome(EXIT_FAILED).into())
    }
}
