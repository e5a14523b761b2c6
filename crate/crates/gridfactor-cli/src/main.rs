//! Command-line front end for the gridfactor engine.
//!
//! Every command writes a deterministic byte stream to stdout: the same
//! arguments give the same bytes regardless of thread count or timing.
//! Diagnostics and optional `--timing` lines go to stderr. Exit codes:
//! 0 success, 1 verification failure, 2 resource/range refusal, 3 bad
//! arguments.

mod cache;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use gridfactor::alphabet::WordKind;
use gridfactor::config::Limits;
use gridfactor::counting;
use gridfactor::error::{Error, ErrorClass};
use gridfactor::family::GridSpec;
use gridfactor::oracle::{self, GridGraph};
use gridfactor::structure;
use gridfactor::transfer::enumerate_columns;

#[derive(Parser)]
#[command(
    name = "gridfactor",
    version,
    about = "Exact 2-factor counts and structure reports for grid-like graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads: a number, or "auto" for one per core.
    #[arg(long, global = true, default_value = "auto")]
    threads: String,

    /// Widest column the transfer matrix will be built for.
    #[arg(long, global = true, default_value_t = 14)]
    width_cap: usize,

    /// Most vertices the exhaustive census will accept.
    #[arg(long, global = true, default_value_t = 36)]
    census_cap: usize,

    /// Largest matrix dimension raised to powers densely.
    #[arg(long, global = true, default_value_t = 1024)]
    dense_cap: usize,

    /// Output format for stdout.
    #[arg(long, global = true, value_enum, default_value_t = Output::Plain)]
    output: Output,

    /// Directory for cached matrices. The GRIDFACTOR_CACHE_DIR environment
    /// variable overrides this flag; with neither, nothing is cached.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Report wall-clock timings on stderr.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build a transfer matrix and print (or write) its serialized form.
    Matrix {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Write the JSON to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the component structure at one width and print the report.
    Structure {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Count the 2-factors of one grid exactly.
    Count {
        #[arg(long)]
        family: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Twist offset; required for tg and kb, rejected elsewhere.
        #[arg(long)]
        p: Option<usize>,
        /// Report the count modulo this value instead of exactly.
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// Enumerate 2-factors by brute force and report the census.
    Oracle {
        #[arg(long)]
        family: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: Option<usize>,
        /// Include the cycle-count histogram.
        #[arg(long)]
        histogram: bool,
        /// Also run the transfer-matrix count and insist the totals agree.
        #[arg(long)]
        compare: bool,
    },
    /// Run the whole invariant suite for every width up to a bound.
    Verify {
        #[arg(long)]
        m_max: usize,
        /// Restrict to one column kind; default checks both.
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
    /// Count one family across a range of lengths.
    Sweep {
        #[arg(long)]
        family: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n_from: usize,
        #[arg(long)]
        n_to: usize,
        #[arg(long)]
        p: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Linear,
    Circular,
}

impl From<KindArg> for WordKind {
    fn from(kind: KindArg) -> WordKind {
        match kind {
            KindArg::Linear => WordKind::Linear,
            KindArg::Circular => WordKind::Circular,
        }
    }
}

struct Ctx {
    limits: Limits,
    output: Output,
    cache_dir: Option<PathBuf>,
    timing: bool,
}

impl Ctx {
    fn timing(&self, label: &str, start: Instant) {
        if self.timing {
            eprintln!("timing: {label} {:.1?}", start.elapsed());
        }
    }

    fn matrix(
        &self,
        m: usize,
        kind: WordKind,
    ) -> Result<gridfactor::transfer::TransferMatrix, Error> {
        cache::load_or_build(self.cache_dir.as_deref(), m, kind, &self.limits)
    }
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 3 } else { 0 };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e.class() {
                ErrorClass::Verification => 1,
                ErrorClass::Resource => 2,
                ErrorClass::BadInput => 3,
            }
        }
    }
}

fn run(cli: Cli) -> Result<i32, Error> {
    configure_threads(&cli.threads)?;
    if cli.width_cap == 0 || cli.census_cap == 0 || cli.dense_cap == 0 {
        return Err(Error::Parse {
            what: "limits",
            detail: "caps must be positive".to_string(),
        });
    }
    let ctx = Ctx {
        limits: Limits {
            width_cap: cli.width_cap,
            census_vertex_cap: cli.census_cap,
            dense_dim_cap: cli.dense_cap,
        },
        output: cli.output,
        cache_dir: cache::resolve_dir(cli.cache_dir.as_deref()),
        timing: cli.timing,
    };
    let start = Instant::now();
    let code = match cli.command {
        Command::Matrix { m, kind, out } => cmd_matrix(&ctx, m, kind.into(), out),
        Command::Structure { m, kind } => cmd_structure(&ctx, m, kind.into()),
        Command::Count {
            family,
            m,
            n,
            p,
            modulus,
        } => cmd_count(&ctx, &family, m, n, p, modulus),
        Command::Oracle {
            family,
            m,
            n,
            p,
            histogram,
            compare,
        } => cmd_oracle(&ctx, &family, m, n, p, histogram, compare),
        Command::Verify { m_max, kind } => cmd_verify(&ctx, m_max, kind.map(WordKind::from)),
        Command::Sweep {
            family,
            m,
            n_from,
            n_to,
            p,
        } => cmd_sweep(&ctx, &family, m, n_from, n_to, p),
    };
    ctx.timing("total", start);
    code
}

fn configure_threads(threads: &str) -> Result<(), Error> {
    let n = if threads == "auto" {
        0 // rayon reads 0 as "pick for me"
    } else {
        threads.parse::<usize>().map_err(|_| Error::Parse {
            what: "thread count",
            detail: format!("'{threads}' is neither a number nor \"auto\""),
        })?
    };
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    }
    Ok(())
}

/// Twist column for CSV rows: the reduced twist, or empty when the family
/// has none.
fn twist_field(spec: &GridSpec) -> String {
    if spec.family().has_twist() {
        spec.twist().to_string()
    } else {
        String::new()
    }
}

fn cmd_matrix(ctx: &Ctx, m: usize, kind: WordKind, out: Option<PathBuf>) -> Result<i32, Error> {
    let start = Instant::now();
    let matrix = ctx.matrix(m, kind)?;
    ctx.timing("matrix ready", start);
    if let Some(path) = out {
        std::fs::write(&path, matrix.to_json())?;
        println!(
            "wrote matrix m={m} kind={} to {}",
            kind.as_str(),
            path.display()
        );
        return Ok(0);
    }
    match ctx.output {
        Output::Plain | Output::Json => println!("{}", matrix.to_json()),
        Output::Csv => {
            println!("row,col,mult");
            for (v, w, mult) in matrix.entries() {
                println!("{v},{w},{mult}");
            }
        }
    }
    Ok(0)
}

fn cmd_structure(ctx: &Ctx, m: usize, kind: WordKind) -> Result<i32, Error> {
    let start = Instant::now();
    let matrix = ctx.matrix(m, kind)?;
    let report = structure::verify_matrix_structure(&matrix);
    ctx.timing("structure report", start);
    match ctx.output {
        Output::Json => println!("{}", report.to_json()),
        Output::Plain => {
            println!(
                "structure m={m} kind={}: {} components, {} isolated",
                kind.as_str(),
                report.components.len(),
                report.isolated.len()
            );
            for c in &report.components {
                match &c.bipartition {
                    Some((red, green)) => println!(
                        "component {} size={} red={} green={}",
                        c.label,
                        c.size(),
                        red.len(),
                        green.len()
                    ),
                    None => println!("component {} size={}", c.label, c.size()),
                }
            }
            for w in &report.isolated {
                println!("isolated {w}");
            }
            for v in &report.violations {
                println!("violation: {v}");
            }
        }
        Output::Csv => {
            println!("label,size,red,green");
            for c in &report.components {
                let (red, green) = c
                    .bipartition
                    .as_ref()
                    .map(|(r, g)| (r.len().to_string(), g.len().to_string()))
                    .unwrap_or_default();
                println!("{},{},{red},{green}", c.label, c.size());
            }
        }
    }
    Ok(if report.is_clean() { 0 } else { 1 })
}

fn cmd_count(
    ctx: &Ctx,
    family: &str,
    m: usize,
    n: usize,
    p: Option<usize>,
    modulus: Option<u64>,
) -> Result<i32, Error> {
    let spec = GridSpec::parse(family, m, n, p)?;
    let start = Instant::now();
    let matrix = ctx.matrix(spec.m(), spec.kind())?;
    ctx.timing("matrix ready", start);

    if let Some(q) = modulus {
        let start = Instant::now();
        let residue = counting::count_mod(&spec, &matrix, q)?;
        ctx.timing("modular count", start);
        match ctx.output {
            Output::Plain => println!("{residue} (mod {q}, not the exact count)"),
            Output::Json => println!(
                "{}",
                json!({
                    "spec": spec.to_json_value(),
                    "modulus": q.to_string(),
                    "residue": residue.to_string(),
                    "exact": false,
                })
            ),
            Output::Csv => {
                println!("family,m,n,p,modulus,residue");
                println!(
                    "{},{m},{n},{},{q},{residue}",
                    spec.family().name(),
                    twist_field(&spec)
                );
            }
        }
        return Ok(0);
    }

    let start = Instant::now();
    let result = counting::count_with(&spec, &matrix, &ctx.limits)?;
    ctx.timing("count", start);
    if !result.geometric {
        eprintln!("note: no simple grid exists at these dimensions; reporting the formula value");
    }
    match ctx.output {
        Output::Plain => println!("{}", result.value),
        Output::Json => println!("{}", counting::count_json(&spec, &result)),
        Output::Csv => {
            println!("family,m,n,p,count");
            println!(
                "{},{m},{n},{},{}",
                spec.family().name(),
                twist_field(&spec),
                result.value
            );
        }
    }
    Ok(0)
}

fn cmd_oracle(
    ctx: &Ctx,
    family: &str,
    m: usize,
    n: usize,
    p: Option<usize>,
    histogram: bool,
    compare: bool,
) -> Result<i32, Error> {
    let spec = GridSpec::parse(family, m, n, p)?;
    let graph = GridGraph::build(&spec)?;
    let start = Instant::now();
    let census = oracle::census(&graph, &ctx.limits)?;
    ctx.timing("census", start);

    let mut compared = None;
    if compare {
        let matrix = ctx.matrix(spec.m(), spec.kind())?;
        let count = counting::count_with(&spec, &matrix, &ctx.limits)?;
        if count.value.to_string() != census.total.to_string() {
            return Err(Error::Internal(format!(
                "count {} and census {} disagree for {spec}",
                count.value, census.total
            )));
        }
        compared = Some(count.value.to_string());
    }

    match ctx.output {
        Output::Json => {
            let mut value: serde_json::Value =
                serde_json::from_str(&oracle::census_json(&spec, &census))?;
            let obj = value.as_object_mut().expect("census JSON is an object");
            if !histogram {
                obj.remove("by_cycle_count");
            }
            if let Some(count) = compared {
                obj.insert("count".to_string(), json!(count));
            }
            println!("{value}");
        }
        Output::Plain => {
            println!("total {}", census.total);
            if histogram {
                for (cycles, count) in &census.by_cycle_count {
                    println!("cycles {cycles}: {count}");
                }
            }
            if compared.is_some() {
                println!("count agrees");
            }
        }
        Output::Csv => {
            println!("family,m,n,p,total");
            println!(
                "{},{m},{n},{},{}",
                spec.family().name(),
                twist_field(&spec),
                census.total
            );
        }
    }
    Ok(0)
}

/// Grids small enough that brute force is instant; `verify` checks the
/// transfer-matrix count against the census on each.
const DIFFERENTIAL_SPECS: &[&str] = &[
    "rg 2 2", "rg 2 3", "rg 3 3", "tkc 2 3", "tkc 2 4", "ms 2 2", "ms 2 3", "tnc 3 1", "tnc 3 2",
    "tg 3 3 0", "tg 3 3 1", "kb 3 3 0", "kb 3 3 1",
];

fn cmd_verify(ctx: &Ctx, m_max: usize, kind: Option<WordKind>) -> Result<i32, Error> {
    if m_max == 0 {
        return Err(Error::WidthZero);
    }
    let kinds = match kind {
        Some(k) => vec![k],
        None => vec![WordKind::Linear, WordKind::Circular],
    };
    let mut total_violations = 0usize;
    let mut report_values = Vec::new();
    for m in 1..=m_max {
        for &kind in &kinds {
            let start = Instant::now();
            let matrix = ctx.matrix(m, kind)?;
            let columns = enumerate_columns(m, kind)?.count() as u64;
            let mut violations = Vec::new();
            if columns != kind.word_count(m) {
                violations.push(format!(
                    "{columns} columns enumerated, closed form gives {}",
                    kind.word_count(m)
                ));
            }
            // entry-by-entry propagation crosscheck stays cheap through m = 8
            violations.extend(matrix.invariant_violations(m <= 8));
            let report = structure::verify_matrix_structure(&matrix);
            violations.extend(report.violations.iter().cloned());
            total_violations += violations.len();
            ctx.timing(&format!("verify m={m} {}", kind.as_str()), start);
            match ctx.output {
                Output::Json => report_values.push(json!({
                    "m": m,
                    "kind": kind.as_str(),
                    "columns": columns.to_string(),
                    "components": report.components.len(),
                    "isolated": report.isolated.len(),
                    "violations": violations,
                })),
                _ => {
                    println!(
                        "m={m} {}: columns={columns} components={} isolated={} violations={}",
                        kind.as_str(),
                        report.components.len(),
                        report.isolated.len(),
                        violations.len()
                    );
                    for v in &violations {
                        println!("  violation: {v}");
                    }
                }
            }
        }
    }

    let mut differential_values = Vec::new();
    for text in DIFFERENTIAL_SPECS {
        let spec: GridSpec = text.parse()?;
        if spec.m() > m_max {
            continue;
        }
        let graph = GridGraph::build(&spec)?;
        let census = oracle::census(&graph, &ctx.limits)?;
        let matrix = ctx.matrix(spec.m(), spec.kind())?;
        let count = counting::count_with(&spec, &matrix, &ctx.limits)?;
        let ok = count.value.to_string() == census.total.to_string();
        if !ok {
            total_violations += 1;
        }
        match ctx.output {
            Output::Json => differential_values.push(json!({
                "spec": spec.to_json_value(),
                "count": count.value.to_string(),
                "census": census.total.to_string(),
                "ok": ok,
            })),
            _ => println!(
                "differential {spec}: count={} census={} {}",
                count.value,
                census.total,
                if ok { "ok" } else { "MISMATCH" }
            ),
        }
    }

    if ctx.output == Output::Json {
        println!(
            "{}",
            json!({
                "reports": report_values,
                "differentials": differential_values,
                "violations": total_violations,
            })
        );
    } else {
        println!(
            "verify: {}",
            if total_violations == 0 {
                "clean".to_string()
            } else {
                format!("{total_violations} violations")
            }
        );
    }
    Ok(if total_violations == 0 { 0 } else { 1 })
}

fn cmd_sweep(
    ctx: &Ctx,
    family: &str,
    m: usize,
    n_from: usize,
    n_to: usize,
    p: Option<usize>,
) -> Result<i32, Error> {
    if n_to < n_from {
        return Err(Error::Parse {
            what: "sweep range",
            detail: format!("--n-to {n_to} is below --n-from {n_from}"),
        });
    }
    let first = GridSpec::parse(family, m, n_from, p)?;
    let start = Instant::now();
    let matrix = ctx.matrix(first.m(), first.kind())?;
    ctx.timing("matrix ready", start);
    let start = Instant::now();
    let mut rows = Vec::new();
    for n in n_from..=n_to {
        let spec = GridSpec::parse(family, m, n, p)?;
        let result = counting::count_with(&spec, &matrix, &ctx.limits)?;
        rows.push((spec, result));
    }
    ctx.timing("sweep", start);
    if ctx.output == Output::Json {
        let values: Vec<serde_json::Value> = rows
            .iter()
            .map(|(spec, result)| {
                serde_json::from_str(&counting::count_json(spec, result))
                    .expect("count JSON round-trips")
            })
            .collect();
        println!("{}", json!(values));
    } else {
        println!("family,m,n,p,count");
        for (spec, result) in &rows {
            println!(
                "{},{},{},{},{}",
                spec.family().name(),
                spec.m(),
                spec.n(),
                twist_field(spec),
                result.value
            );
        }
    }
    Ok(0)
}
