use std::fs::File;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use tclose::distribution::OrderingPolicy;
use tclose::metrics::{self, Method, MetricsError};
use tclose::report::{MetricSet, PrivacyReport, DEFAULT_PRECISION};
use tclose::table::{parse_csv, MissingValuePolicy, Schema};
use tclose::bench;

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "tclose",
    version,
    about = "Audit the privacy of an anonymized table: k-anonymity, l-diversity, t-closeness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute privacy metrics for a CSV table
    Audit(AuditArgs),
    /// Compare the quadratic and single-pass EMD routes on random inputs
    Bench(BenchArgs),
}

#[derive(Args)]
struct AuditArgs {
    /// CSV file with a header row
    #[arg(long)]
    input: PathBuf,
    /// JSON schema assigning each attribute a role
    #[arg(long)]
    schema: PathBuf,
    /// Which metrics to report
    #[arg(long, value_enum, default_value_t = MetricArg::All)]
    metric: MetricArg,
    /// Restrict t-closeness to one sensitive attribute
    #[arg(long)]
    attribute: Option<String>,
    /// Distance procedure for t-closeness
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// Domain ordering for numeric attributes (default: by value)
    #[arg(long)]
    order: Option<OrderArg>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Decimal places in rendered values
    #[arg(long, default_value_t = DEFAULT_PRECISION as u64, value_parser = clap::value_parser!(u64).range(1..=50))]
    precision: u64,
    /// Drop records with empty cells instead of failing
    #[arg(long)]
    drop_missing: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated domain sizes, each at least 2
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    /// Random pairs per size
    #[arg(long, default_value_t = 5)]
    reps: usize,
    /// Skip the quadratic route (for large sizes)
    #[arg(long)]
    efficient_only: bool,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    K,
    L,
    T,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Definition,
    Efficient,
    Transport,
    Variational,
    Auto,
}

impl From<MethodArg> for Method {
    fn from(arg: MethodArg) -> Method {
        match arg {
            MethodArg::Definition => Method::Definition,
            MethodArg::Efficient => Method::Efficient,
            MethodArg::Transport => Method::Transport,
            MethodArg::Variational => Method::Variational,
            MethodArg::Auto => Method::Auto,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Value,
    FreqDesc,
    Appearance,
}

impl From<OrderArg> for OrderingPolicy {
    fn from(arg: OrderArg) -> OrderingPolicy {
        match arg {
            OrderArg::Value => OrderingPolicy::ValueAscending,
            OrderArg::FreqDesc => OrderingPolicy::FrequencyDescending,
            OrderArg::Appearance => OrderingPolicy::FirstAppearance,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{err}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{err}");
                    ExitCode::from(EXIT_USAGE)
                }
            };
        }
    };

    match cli.command {
        Command::Audit(args) => run_audit(args),
        Command::Bench(args) => run_bench(args),
    }
}

fn run_audit(args: AuditArgs) -> ExitCode {
    let schema_text = match std::fs::read_to_string(&args.schema) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: cannot read schema {}: {err}", args.schema.display());
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let schema = match Schema::from_json(&schema_text) {
        Ok(schema) => schema,
        Err(err) => {
            eprintln!("error: invalid schema {}: {err}", args.schema.display());
            return ExitCode::from(EXIT_INPUT);
        }
    };

    let file = match File::open(&args.input) {
        Ok(file) => file,
        Err(err) => {
            eprintln!("error: cannot read input {}: {err}", args.input.display());
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let policy = if args.drop_missing {
        MissingValuePolicy::DropRow
    } else {
        MissingValuePolicy::Error
    };
    let table = match parse_csv(file, &schema, policy) {
        Ok(table) => table,
        Err(err) => {
            eprintln!("error: {}: {err}", args.input.display());
            return ExitCode::from(EXIT_INPUT);
        }
    };

    let audit = match metrics::audit(
        &table,
        args.method.into(),
        args.order.map(OrderingPolicy::from),
        args.attribute.as_deref(),
    ) {
        Ok(audit) => audit,
        Err(err) => {
            let code = match err {
                MetricsError::UnknownAttribute(_)
                | MetricsError::MethodRoleMismatch { .. }
                | MetricsError::Domain(_) => EXIT_INPUT,
                // These cannot occur for a table that parsed and a schema
                // that validated; reaching them is a bug.
                MetricsError::NoClasses
                | MetricsError::Distribution(_)
                | MetricsError::Emd(_) => EXIT_INTERNAL,
            };
            eprintln!("error: {err}");
            return ExitCode::from(code);
        }
    };

    let metric_set = match args.metric {
        MetricArg::K => MetricSet {
            k: true,
            l: false,
            t: false,
        },
        MetricArg::L => MetricSet {
            k: false,
            l: true,
            t: false,
        },
        MetricArg::T => MetricSet {
            k: false,
            l: false,
            t: true,
        },
        MetricArg::All => MetricSet::ALL,
    };
    let report = PrivacyReport::build(
        &args.input.to_string_lossy(),
        &args.schema.to_string_lossy(),
        &audit,
        metric_set,
        args.precision as usize,
    );

    match args.format {
        FormatArg::Text => print!("{}", report.to_text()),
        FormatArg::Json => print!("{}", report.to_json()),
    }
    ExitCode::SUCCESS
}

fn run_bench(args: BenchArgs) -> ExitCode {
    if args.sizes.iter().any(|&m| m < 2) {
        eprintln!("error: benchmark sizes must be at least 2");
        return ExitCode::from(EXIT_USAGE);
    }
    let results = bench::run(&args.sizes, args.reps, !args.efficient_only, args.seed);
    print!("{}", bench::render(&results));
    ExitCode::SUCCESS
}
