use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use locc_rates::Execution;
use locc_rates_cli::commands::{self, ConcentrateArgs, MonoidRateArgs};
use locc_rates_cli::{run_suite, Report, Suite};

/// Asymptotic LOCC transformation rates between multipartite pure states.
///
/// States are given as literals: "ghz:r=2,k=3", "schmidt:[0.9,0.1]",
/// "epr:pair=(1,3),k=3", "product:k=3", a JSON object
/// {"dims":[..],"amps":[[re,im],..]}, or "@file.json"; join terms with '*'
/// for tensor products.
#[derive(Debug, Parser)]
#[command(name = "locc-rates", version)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Run on one thread even when built with the parallel feature.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rate upper bound from the cut-entropy family (exact for two parties).
    Rate {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Certified achievable-rate lower bound for bipartite pure states.
    /// Prints the per-n table as CSV unless --json is given.
    MonoidRate {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        #[arg(long, default_value_t = 200)]
        nmax: u64,
    },
    /// Entanglement concentration from (√p|00⟩ + √(1−p)|11⟩)^⊗n.
    /// Prints per-n yields as CSV unless --json is given.
    Concentrate {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: f64,
        /// Also run a Monte Carlo simulation of the protocol.
        #[arg(long)]
        simulate: bool,
        #[arg(long, default_value_t = 10_000)]
        shots: usize,
    },
    /// Continuity estimate and its measurement construction for a pair.
    Continuity {
        #[arg(long)]
        state_a: String,
        #[arg(long)]
        state_b: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
        format!("unknown suite '{s}', expected one of: {}", names.join(", "))
    })
}

fn run(cli: &Cli) -> locc_rates::Result<(Report, bool)> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let seed = cli.seed;
    Ok(match &cli.command {
        Command::Rate { from, to } => (commands::rate(from, to, seed, exec)?, false),
        Command::MonoidRate {
            from,
            to,
            delta,
            eps,
            nmax,
        } => {
            let args = MonoidRateArgs {
                from,
                to,
                delta: *delta,
                eps: *eps,
                n_max: *nmax,
            };
            (commands::monoid_rate(&args, seed, exec)?, true)
        }
        Command::Concentrate {
            n,
            p,
            simulate,
            shots,
        } => {
            let args = ConcentrateArgs {
                n: *n,
                p: *p,
                simulate: *simulate,
                shots: *shots,
            };
            (commands::concentrate(&args, seed, exec)?, true)
        }
        Command::Continuity { state_a, state_b } => {
            (commands::continuity(state_a, state_b, seed)?, false)
        }
        Command::Verify { suite } => (run_suite(*suite, seed, exec)?, false),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, csv) = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let written = if cli.json {
        out.write_all(report.to_json().as_bytes())
    } else if let (true, Some(table)) = (csv, &report.table) {
        eprint!("{}", report.to_text());
        out.write_all(table.to_csv().as_bytes())
    } else {
        out.write_all(report.to_text().as_bytes())
    };
    if written.and_then(|_| out.flush()).is_err() {
        return ExitCode::from(2);
    }
    if report.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
