use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use majorant_core::pipeline::{emit_report, prove_k5, reproduce_table, ReportFormat, TableId};
use majorant_core::quadrature::{QuadratureContext, QuadratureMode};
use majorant_core::trigpoly::locate_maxima;
use majorant_core::{Error, ProofConfig, SignVariant, TrigSquare, Verdict};

const THREADS_VAR: &str = "MAJORANT_THREADS";

#[derive(Parser)]
#[command(name = "majorant", version, about = "Certified numerics for the k = 5 majorant inequality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Plain,
    Refined,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sign {
    Plus,
    Minus,
}

#[derive(Subcommand)]
enum Command {
    /// Run every stage of the proof and emit the report.
    Prove {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Recompute a table and print it as CSV.
    Table {
        /// maxima, A_rho, Q500, Q400, T1 .. T6
        id: String,
    },
    /// Certified value of d^(J)(T).
    Derivative {
        #[arg(long)]
        order: u32,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 500)]
        steps: u32,
        #[arg(long, value_enum, default_value = "refined")]
        mode: Mode,
    },
    /// Upper bounds for the local maxima of G on a grid.
    Maxima {
        #[arg(long, value_enum)]
        sign: Sign,
        #[arg(long)]
        step: f64,
        #[arg(long, default_value_t = 0.001)]
        bump: f64,
    },
}

enum Failure {
    Inconclusive,
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn threads() -> Result<usize, Error> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(1),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(Error::InvalidInput(format!("{THREADS_VAR} must be a positive integer, got `{v}`"))),
        },
    }
}

fn write_out(out: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Prove { config, out, format } => {
            let config = match config {
                Some(path) => ProofConfig::from_toml(&std::fs::read_to_string(&path).map_err(Error::from)?)?,
                None => ProofConfig::default(),
            };
            let report = prove_k5(&config)?;
            let format = match format {
                Format::Json => ReportFormat::Json,
                Format::Text => ReportFormat::Text,
            };
            write_out(out.as_ref(), &emit_report(&report, format)?)?;
            if report.verdict == Verdict::Inconclusive {
                for st in report.failing_stages() {
                    eprintln!("stage failed: {}", st.name);
                }
                return Err(Failure::Inconclusive);
            }
        }
        Command::Table { id } => {
            let id: TableId = id.parse()?;
            print!("{}", reproduce_table(id)?);
        }
        Command::Derivative { order, t, steps, mode } => {
            let mode = match mode {
                Mode::Plain => QuadratureMode::Plain,
                Mode::Refined => QuadratureMode::Refined,
            };
            let ctx = QuadratureContext::<f64>::k5()?;
            let v = ctx.d_derivative(order, t, steps, mode)?;
            println!("order,t,steps,mode,estimate,error_bound,lower,upper");
            println!(
                "{order},{t},{steps},{mode},{:e},{:e},{:e},{:e}",
                v.estimate,
                v.error_bound,
                v.lower(),
                v.upper()
            );
        }
        Command::Maxima { sign, step, bump } => {
            let sign = match sign {
                Sign::Plus => SignVariant::Plus,
                Sign::Minus => SignVariant::Minus,
            };
            let table = locate_maxima(TrigSquare::k5(sign), step, bump)?;
            println!("location,value_upper,multiplicity");
            for m in &table.entries {
                println!("{},{},{}", m.location, m.value_upper, m.multiplicity);
            }
            println!("# variation bound for t = 1: {}", table.variation_bound(1.0));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = threads().map_err(Failure::from).and_then(|n| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Core(Error::Internal(e.to_string())))
    });
    let result = result.and_then(|()| run(cli));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Inconclusive) => ExitCode::from(1),
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidInput(_) | Error::Config(_) | Error::Io(_) => ExitCode::from(2),
                Error::BudgetExceeded { .. } => ExitCode::from(1),
                Error::Internal(_) => ExitCode::from(3),
            }
        }
    }
}
