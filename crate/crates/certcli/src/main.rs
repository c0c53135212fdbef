use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};
use nodal_certify::{
    run, run_all, Config, Report, DEFAULT_PRIME, DEFAULT_RANK_PRIME, DEFAULT_SEED,
    DEFAULT_SLICE_PRIME,
};
use nodal_core::exact::is_prime;

/// Recomputes the certificates for the nodal septic scroll.
#[derive(Debug, Parser)]
#[command(name = "verify", version)]
struct Cli {
    /// Claim id, or `all`.
    claim: String,
    /// Prime for point scans and frame sampling.
    #[arg(long, env = "VERIFY_PRIME", default_value_t = DEFAULT_PRIME, value_parser = prime)]
    prime: u64,
    /// Prime for Grassmannian slices.
    #[arg(long, env = "VERIFY_SLICE_PRIME", default_value_t = DEFAULT_SLICE_PRIME, value_parser = prime)]
    slice_prime: u64,
    /// Prime for rank computations.
    #[arg(long, env = "VERIFY_RANK_PRIME", default_value_t = DEFAULT_RANK_PRIME, value_parser = prime)]
    rank_prime: u64,
    #[arg(long, env = "VERIFY_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Repeat rank computations over Q.
    #[arg(long, env = "VERIFY_EXACT_RATIONALS")]
    exact_rationals: bool,
    /// Write the JSON report here; `-` for stdout.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn prime(s: &str) -> Result<u64, String> {
    let p: u64 = s.parse().map_err(|e| format!("{e}"))?;
    if is_prime(p) {
        Ok(p)
    } else {
        Err(format!("{p} is not prime"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = Config {
        prime: cli.prime,
        slice_prime: cli.slice_prime,
        rank_prime: cli.rank_prime,
        seed: cli.seed,
        exact_rationals: cli.exact_rationals,
        gram_override: None,
    };
    let report = if cli.claim == "all" {
        run_all(&config)
    } else {
        match run(&cli.claim, &config) {
            Ok(c) => Report::new(&config, vec![c]),
            Err(e) => Cli::command().error(ErrorKind::InvalidValue, e).exit(),
        }
    };
    let to_stdout = cli.json.as_deref().is_some_and(|p| p.as_os_str() == "-");
    for c in &report.certificates {
        let line = format!(
            "{:<18} {:<16} {:>7} ms",
            c.claim_id, c.verdict, c.elapsed_ms
        );
        if to_stdout {
            eprintln!("{line}");
        } else {
            println!("{line}");
        }
    }
    if let Some(path) = &cli.json {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        let written = if to_stdout {
            writeln!(std::io::stdout(), "{text}")
        } else {
            std::fs::write(path, text + "\n")
        };
        if let Err(e) = written {
            eprintln!("verify: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
