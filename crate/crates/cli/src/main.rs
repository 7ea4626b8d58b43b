mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use agfuzz::harness::{self, FuzzySource, HarnessError, Scope, Status, StructureSource};
use agfuzz::{
    check_laws, classify_crisp, classify_fuzzy, regularity, EnumError, EnumFilter, EnumSpec, Thresholds,
};
use clap::{Parser, Subcommand, ValueEnum};

use input::InputError;

/// Exit statuses shared by every subcommand.
const OK: u8 = 0;
const INPUT: u8 = 1;
const FAILED: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "agfuzz", version, about = "LA-semigroups and their (∈γ, ∈γ∨qδ)-fuzzy ideals")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the left invertive law and the related laws of a Cayley table.
    Check {
        /// Magma JSON file.
        magma: PathBuf,
    },
    /// Classify a crisp or fuzzy subset against every ideal kind.
    Classify {
        #[command(subcommand)]
        what: Classify,
    },
    /// Enumerate LA-semigroups of one order.
    Enumerate(EnumerateArgs),
    /// Check a catalog statement over a scope of structures and subsets.
    Verify(VerifyArgs),
    /// Replay the order-4 worked example.
    Example,
    /// List the theorem catalog.
    List,
}

#[derive(Subcommand)]
enum Classify {
    Crisp {
        magma: PathBuf,
        /// File path or inline JSON: `[0,2]` or `{"order":4,"elements":[0,2]}` (0-based).
        subset: String,
    },
    Fuzzy {
        magma: PathBuf,
        /// Fuzzy subset JSON file.
        fuzzy: PathBuf,
        #[arg(long, default_value = "0")]
        gamma: String,
        #[arg(long, default_value = "1")]
        delta: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FilterArg {
    Regular,
    IntraRegular,
    WeaklyRegular,
}

#[derive(clap::Args)]
struct EnumerateArgs {
    #[arg(long)]
    order: usize,
    /// Keep only tables with a left identity.
    #[arg(long)]
    left_identity: bool,
    #[arg(long, value_enum, value_delimiter = ',')]
    filter: Vec<FilterArg>,
    /// Print counts instead of tables.
    #[arg(long)]
    count_only: bool,
    /// List every labelled table rather than one per isomorphism class.
    #[arg(long)]
    raw: bool,
    /// Maximum number of cell assignments.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, env = "AGFUZZ_WORKERS")]
    workers: Option<usize>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Catalog id, e.g. T-REG-QLE or L-STAR(iii).
    id: String,
    /// All LA-semigroups of order 1..=N up to isomorphism.
    #[arg(long, conflicts_with = "magma")]
    order: Option<usize>,
    /// Explicit tables instead of an enumeration (repeatable).
    #[arg(long)]
    magma: Vec<PathBuf>,
    /// Fuzzy subsets on the grid {0, 1/d, …, 1}.
    #[arg(long, conflicts_with_all = ["random", "fuzzy"])]
    grid: Option<u64>,
    /// Random fuzzy subsets: SEED,COUNT (grades on the --grid-den grid).
    #[arg(long, value_parser = input::parse_seed_count, conflicts_with = "fuzzy")]
    random: Option<(u64, u64)>,
    /// Denominator for --random grades.
    #[arg(long, default_value_t = 4, requires = "random")]
    grid_den: u64,
    /// Explicit fuzzy subsets (repeatable); paired only with tables of their order.
    #[arg(long)]
    fuzzy: Vec<PathBuf>,
    /// All threshold pairs γ < δ on {0, 1/d, …, 1}.
    #[arg(long, conflicts_with_all = ["gamma", "delta"])]
    gamma_delta_grid: Option<u64>,
    #[arg(long, requires = "delta")]
    gamma: Option<String>,
    #[arg(long, requires = "gamma")]
    delta: Option<String>,
    /// Cap on planned evaluations; exceeding it exits with status 3.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Use the hypotheses as stated rather than those the proofs need.
    #[arg(long)]
    stated: bool,
    #[arg(long, env = "AGFUZZ_WORKERS")]
    workers: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT } else { OK });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT)
        }
    }
}

fn emit<T: serde::Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(value).expect("serializable")),
        Format::Text => print!("{}", text()),
    }
}

fn run(cli: &Cli) -> Result<u8, InputError> {
    let f = cli.format;
    match &cli.command {
        Command::Check { magma } => {
            let t = input::load_table(magma)?;
            let laws = check_laws(&t);
            let reg = regularity(&t);
            let json = serde_json::json!({ "laws": laws, "regularity": reg });
            emit(f, &json, || render::check(&t, &laws, &reg));
            Ok(if laws.is_la_semigroup() { OK } else { FAILED })
        }
        Command::Classify { what } => classify(f, what),
        Command::Enumerate(args) => run_enumerate(f, args),
        Command::Verify(args) => run_verify(f, args),
        Command::Example => {
            let b = harness::worked_example();
            emit(f, &b, || render::example(&b));
            Ok(if b.all_pass() { OK } else { FAILED })
        }
        Command::List => {
            let all = harness::catalog();
            let rows: Vec<_> = all
                .iter()
                .map(|s| serde_json::json!({ "id": s.name(), "label": s.label, "statement": s.describe() }))
                .collect();
            emit(f, &rows, || render::catalog(&all));
            Ok(OK)
        }
    }
}

fn classify(f: Format, what: &Classify) -> Result<u8, InputError> {
    match what {
        Classify::Crisp { magma, subset } => {
            let t = input::load_table(magma)?;
            let a = input::load_subset(subset, t.order())?;
            let report = classify_crisp(&t, &a).map_err(|e| InputError(e.to_string()))?;
            emit(f, &report, || render::crisp(&t, &a, &report));
        }
        Classify::Fuzzy {
            magma,
            fuzzy,
            gamma,
            delta,
        } => {
            let t = input::load_table(magma)?;
            let mu = input::load_fuzzy(fuzzy)?;
            let th = thresholds(gamma, delta)?;
            let report = classify_fuzzy(&t, &mu, &th).map_err(|e| InputError(format!("{}: {e}", fuzzy.display())))?;
            emit(f, &report, || render::fuzzy(&t, &mu, &report));
        }
    }
    Ok(OK)
}

fn thresholds(gamma: &str, delta: &str) -> Result<Thresholds, InputError> {
    let g = input::parse_grade("gamma", gamma)?;
    let d = input::parse_grade("delta", delta)?;
    Thresholds::new(g, d).map_err(|e| InputError(e.to_string()))
}

fn run_enumerate(f: Format, a: &EnumerateArgs) -> Result<u8, InputError> {
    let filter = EnumFilter {
        regular: a.filter.contains(&FilterArg::Regular),
        intra_regular: a.filter.contains(&FilterArg::IntraRegular),
        weakly_regular: a.filter.contains(&FilterArg::WeaklyRegular),
    };
    let mut spec = EnumSpec::new(a.order).with_filter(filter);
    if a.left_identity {
        spec = spec.left_identity();
    }
    spec.cell_budget = a.budget;
    let workers = a.workers.unwrap_or(1).max(1);
    let run = |spec: &EnumSpec| agfuzz::enumerate::enumerate_parallel(spec, workers);

    if a.count_only {
        // one pass with isomorph rejection also counts labelled tables
        let classes = match run(&spec) {
            Ok(e) => e,
            Err(e) => return enum_failure(e),
        };
        let json = serde_json::json!({
            "order": a.order,
            "raw": classes.raw_count,
            "up_to_iso": classes.tables.len(),
        });
        emit(f, &json, || {
            format!(
                "order {}: {} labelled, {} up to isomorphism\n",
                a.order,
                classes.raw_count,
                classes.tables.len()
            )
        });
        return Ok(OK);
    }

    if a.raw {
        spec = spec.raw();
    }
    let found = match run(&spec) {
        Ok(e) => e,
        Err(e) => return enum_failure(e),
    };
    for (i, t) in found.tables.iter().enumerate() {
        match f {
            Format::Json => println!("{}", t.to_json()),
            Format::Text => {
                if i > 0 {
                    println!();
                }
                print!("{t}");
            }
        }
    }
    if f == Format::Text {
        eprintln!("{} table(s)", found.tables.len());
    }
    Ok(OK)
}

fn enum_failure(e: EnumError) -> Result<u8, InputError> {
    match e {
        EnumError::BudgetExhausted { .. } => {
            eprintln!("error: {e}");
            Ok(BUDGET)
        }
        other => Err(InputError(other.to_string())),
    }
}

fn run_verify(f: Format, a: &VerifyArgs) -> Result<u8, InputError> {
    let mut scope = Scope::default();
    if let Some(n) = a.order {
        scope.structures = StructureSource::UpTo(n);
    } else if !a.magma.is_empty() {
        let tables = a.magma.iter().map(|p| input::load_table(p)).collect::<Result<_, _>>()?;
        scope.structures = StructureSource::Explicit(tables);
    }
    if let Some(d) = a.grid {
        scope.fuzzy = FuzzySource::Grid(d);
    } else if let Some((seed, count)) = a.random {
        scope.fuzzy = FuzzySource::Random {
            den: a.grid_den,
            seed,
            count,
        };
    } else if !a.fuzzy.is_empty() {
        let subsets = a.fuzzy.iter().map(|p| input::load_fuzzy(p)).collect::<Result<_, _>>()?;
        scope.fuzzy = FuzzySource::Explicit(subsets);
    }
    if let Some(d) = a.gamma_delta_grid {
        scope.thresholds = Thresholds::grid(d);
    } else if let (Some(g), Some(d)) = (&a.gamma, &a.delta) {
        scope.thresholds = vec![thresholds(g, d)?];
    }
    scope.budget = a.budget;
    if let Some(s) = a.seed {
        scope.seed = s;
    }
    scope.stated_hypotheses = a.stated;
    if let Some(w) = a.workers {
        scope.workers = w.max(1);
    }

    let start = Instant::now();
    let verdict = match harness::verify(&a.id, &scope) {
        Ok(v) => v,
        Err(e @ HarnessError::BudgetExceeded { .. }) => {
            eprintln!("error: {e}");
            return Ok(BUDGET);
        }
        Err(e) => return Err(InputError(e.to_string())),
    };
    let secs = start.elapsed().as_secs_f64();
    match f {
        Format::Json => {
            println!("{}", serde_json::to_string(&verdict).expect("serializable"));
            eprintln!("wall time: {secs:.2}s");
        }
        Format::Text => println!("{}wall time: {secs:.2}s", render::verdict(&verdict)),
    }
    Ok(if verdict.status == Status::Refuted { FAILED } else { OK })
}
