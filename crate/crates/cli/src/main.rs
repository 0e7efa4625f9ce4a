mod manifest;
mod report;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ybe::catalog::{group_by_name, small_group_catalog};
use ybe::enum_braces::{braces_of_order, braces_with_additive_budget, iyb_check, CatalogBrace, OrderSearch};
use ybe::enum_solutions::{enumerate_cycle_sets, enumerate_solutions, Budget, EnumerationTask, Filter};
use ybe::records::{self, Record, Summary};
use ybe::retraction::gi_scan_with_budget;
use ybe::Error;

use crate::manifest::RunManifest;

const EXIT_BUDGET: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_UNSUPPORTED: u8 = 65;
const EXIT_INVALID: u8 = 1;

const THREADS_ENV: &str = "YBE_THREADS";

#[derive(Parser, Debug)]
#[command(name = "ybe", version, about = "Yang–Baxter solutions, cycle sets and skew braces")]
struct Cli {
    /// Worker threads (default: $YBE_THREADS, else all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Isomorph-free enumeration, one record per class plus a summary line.
    Enumerate(EnumerateArgs),
    /// Validate every record of a file.
    Verify { file: PathBuf },
    /// Key-value report for every solution, cycle set or brace in a file.
    Analyze { file: PathBuf },
    /// Square-free involutive solutions with pairwise distinct σ_x.
    ScanGi {
        #[arg(long)]
        max_size: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Whether a group is the multiplicative group of a left brace.
    Iyb {
        #[arg(long)]
        group: String,
    },
    /// Small group catalog.
    Catalog {
        #[arg(value_enum)]
        what: CatalogWhat,
        #[arg(long)]
        order: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CatalogWhat {
    Groups,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    CycleSets,
    Solutions,
    Braces,
}

#[derive(Args, Debug, Clone, Copy)]
struct BudgetArgs {
    /// Stop after this many search nodes.
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Stop after this many seconds.
    #[arg(long)]
    budget_secs: Option<f64>,
}

impl BudgetArgs {
    fn budget(&self) -> anyhow::Result<Budget> {
        let max_time = match self.budget_secs {
            Some(t) if !(t.is_finite() && t >= 0.0) => bail!("--budget-secs must be a non-negative number"),
            Some(t) => Some(Duration::from_secs_f64(t)),
            None => None,
        };
        Ok(Budget { max_nodes: self.budget_nodes, max_time })
    }
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long)]
    size: usize,
    #[arg(long)]
    square_free: bool,
    #[arg(long)]
    indecomposable: bool,
    #[arg(long)]
    irretractable: bool,
    /// Braces only: abelian additive groups.
    #[arg(long)]
    abelian_type: bool,
    /// Braces only: a single additive group (catalog id or name).
    #[arg(long)]
    additive_group: Option<String>,
    /// Solutions only: allow sizes above the default limit.
    #[arg(long)]
    allow_large: bool,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Write records here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run manifest path (default: `<out>.manifest.json` when --out is given).
    #[arg(long)]
    manifest: Option<PathBuf>,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<Error>() {
            Some(Error::UnsupportedOrder(_)) => EXIT_UNSUPPORTED,
            Some(Error::BudgetExceeded) => EXIT_BUDGET,
            Some(Error::UnknownGroup(_) | Error::OrderMismatch(..)) => EXIT_USAGE,
            _ => EXIT_INVALID,
        };
        Failure { code, error }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, error: anyhow::anyhow!(msg.into()) }
}

fn thread_count(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(k) = flag {
        return if k == 0 { Err(usage("--threads must be positive")) } else { Ok(k) };
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(k),
            _ => Err(usage(format!("{THREADS_ENV} must be a positive integer, got `{v}`"))),
        },
        Err(_) => Ok(0),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let threads = thread_count(cli.threads)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure { code: EXIT_INVALID, error: e.into() })?;
    pool.install(|| match cli.command {
        Command::Enumerate(args) => enumerate(args, pool.current_num_threads()),
        Command::Verify { file } => verify(&file),
        Command::Analyze { file } => analyze(&file),
        Command::ScanGi { max_size, budget } => scan_gi(max_size, budget),
        Command::Iyb { group } => iyb(&group),
        Command::Catalog { what: CatalogWhat::Groups, order } => catalog(order),
    })
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => io::stdout().lock().write_all(text.as_bytes()).context("writing stdout")?,
    }
    Ok(())
}

fn enumerate(args: EnumerateArgs, threads: usize) -> Result<u8, Failure> {
    let start = Instant::now();
    let budget = args.budget.budget().map_err(|e| Failure { code: EXIT_USAGE, error: e })?;
    let mut filters = Vec::new();
    if args.square_free {
        filters.push(Filter::SquareFree);
    }
    if args.indecomposable {
        filters.push(Filter::Indecomposable);
    }
    if args.irretractable {
        filters.push(Filter::Irretractable);
    }
    if args.kind != Kind::Braces && (args.abelian_type || args.additive_group.is_some()) {
        return Err(usage("--abelian-type and --additive-group apply to braces only"));
    }
    if args.kind == Kind::Braces && !filters.is_empty() {
        return Err(usage("solution filters do not apply to braces"));
    }
    if args.kind != Kind::Solutions && args.allow_large {
        return Err(usage("--allow-large applies to solutions only"));
    }

    let mut lines = vec![records::header()];
    let (exhaustive, counts) = match args.kind {
        Kind::CycleSets | Kind::Solutions => {
            let mut task = if args.kind == Kind::CycleSets {
                EnumerationTask::cycle_sets(args.size)
            } else {
                EnumerationTask::solutions(args.size)
            };
            task.filters.extend(filters);
            task.budget = budget;
            task.allow_large = args.allow_large;
            let (records, exhaustive): (Vec<Record>, bool) = if args.kind == Kind::CycleSets {
                let e = enumerate_cycle_sets(&task)?;
                (e.items.into_iter().map(Record::CycleSet).collect(), e.exhaustive)
            } else {
                let e = enumerate_solutions(&task)?;
                (e.items.into_iter().map(Record::Solution).collect(), e.exhaustive)
            };
            let count = records.len();
            lines.extend(records.iter().map(Record::to_string));
            lines.push(Summary::Count { count, exhaustive }.to_string());
            (exhaustive, serde_json::json!({ "count": count }))
        }
        Kind::Braces => {
            let search = match &args.additive_group {
                Some(spec) => single_additive(spec, args.size, args.abelian_type, budget)?,
                None => braces_of_order(args.size, args.abelian_type, budget)?,
            };
            let s = search.items.len();
            let b = search.left_brace_count();
            for item in &search.items {
                lines.push(format!("# additive {} {}", item.additive_id, item.additive_name));
                lines.push(Record::Brace(item.brace.clone()).to_string());
            }
            let exhaustive = search.exhaustive;
            lines.push(Summary::Order { order: args.size, s, b, exhaustive }.to_string());
            (exhaustive, serde_json::json!({ "s": s, "b": b }))
        }
    };
    let mut text = lines.join("\n");
    text.push('\n');
    emit(args.out.as_ref(), &text)?;

    let manifest_path = args.manifest.clone().or_else(|| {
        args.out.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(".manifest.json");
            PathBuf::from(s)
        })
    });
    if let Some(path) = manifest_path {
        let m = RunManifest::new(
            std::env::args().collect(),
            args.budget.budget_nodes,
            args.budget.budget_secs,
            threads,
            exhaustive,
            counts,
            start.elapsed(),
            &text,
        );
        m.write(&path)?;
    }
    Ok(if exhaustive { 0 } else { EXIT_BUDGET })
}

fn single_additive(spec: &str, size: usize, abelian_only: bool, budget: Budget) -> Result<OrderSearch, Failure> {
    let catalog = if size <= ybe::catalog::MAX_CATALOG_ORDER { small_group_catalog(size)? } else { Vec::new() };
    let (id, name, group) = match catalog.iter().find(|c| c.id == spec || c.name == spec) {
        Some(c) => (c.id.clone(), c.name.clone(), c.group.clone()),
        None => {
            let g = group_by_name(spec).map_err(|e| usage(e.to_string()))?;
            let hit = catalog.iter().find(|c| c.group.is_isomorphic(&g));
            match hit {
                Some(c) => (c.id.clone(), c.name.clone(), c.group.clone()),
                None => ("-".to_string(), spec.to_string(), g),
            }
        }
    };
    if group.order() != size {
        return Err(usage(format!("group {spec} has order {}, not {size}", group.order())));
    }
    if abelian_only && !group.is_abelian() {
        return Ok(OrderSearch { items: Vec::new(), exhaustive: true, nodes: 0 });
    }
    let res = braces_with_additive_budget(&group, budget);
    let items = res
        .braces
        .into_iter()
        .map(|brace| CatalogBrace { additive_id: id.clone(), additive_name: name.clone(), brace })
        .collect();
    Ok(OrderSearch { items, exhaustive: res.exhaustive, nodes: res.nodes })
}

fn read(file: &PathBuf) -> Result<String, Failure> {
    Ok(fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?)
}

fn verify(file: &PathBuf) -> Result<u8, Failure> {
    let text = read(file)?;
    let mut bad = 0;
    let mut total = 0;
    let mut out = io::stdout().lock();
    for (line, entry) in records::read_entries(&text) {
        match entry {
            Ok(records::Entry::Record(r)) => {
                total += 1;
                writeln!(out, "line {line}: ok {}", report::describe(&r)).context("writing stdout")?;
            }
            Ok(_) => {}
            Err(e) => {
                total += 1;
                bad += 1;
                writeln!(out, "{e}").context("writing stdout")?;
            }
        }
    }
    writeln!(out, "records={total} invalid={bad}").context("writing stdout")?;
    Ok(if bad == 0 { 0 } else { EXIT_INVALID })
}

fn analyze(file: &PathBuf) -> Result<u8, Failure> {
    let text = read(file)?;
    let mut bad = false;
    let mut out = io::stdout().lock();
    for (line, entry) in records::read_entries(&text) {
        let text = match entry {
            Ok(records::Entry::Record(r)) => match report::analyze(&r) {
                Some(fields) => format!("line={line} {fields}"),
                None => continue,
            },
            Ok(_) => continue,
            Err(e) => {
                bad = true;
                e.to_string()
            }
        };
        writeln!(out, "{text}").context("writing stdout")?;
    }
    Ok(if bad { EXIT_INVALID } else { 0 })
}

fn scan_gi(max_size: usize, budget: BudgetArgs) -> Result<u8, Failure> {
    let budget = budget.budget().map_err(|e| Failure { code: EXIT_USAGE, error: e })?;
    let e = gi_scan_with_budget(max_size, budget)?;
    let mut text = String::new();
    for s in &e.items {
        text.push_str(&Record::Solution(s.clone()).to_string());
        text.push('\n');
    }
    text.push_str(&format!("{} counterexamples\n", e.items.len()));
    text.push_str(&Summary::Count { count: e.items.len(), exhaustive: e.exhaustive }.to_string());
    text.push('\n');
    emit(None, &text)?;
    Ok(if e.exhaustive { 0 } else { EXIT_BUDGET })
}

fn iyb(spec: &str) -> Result<u8, Failure> {
    let g = group_by_name(spec).map_err(|e| usage(e.to_string()))?;
    let yes = iyb_check(&g)?;
    emit(None, &format!("{yes}\n"))?;
    Ok(0)
}

fn catalog(order: usize) -> Result<u8, Failure> {
    let mut text = records::header();
    text.push('\n');
    for c in small_group_catalog(order)? {
        text.push_str(&format!("# {} {}\n{}\n", c.id, c.name, Record::Group(c.group)));
    }
    emit(None, &text)?;
    Ok(0)
}
