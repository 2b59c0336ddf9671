use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use twistkit::{emit_report, parse_rational, run_suite, Format, Suite, SuiteConfig};
use twistkit_core::coeff::Q;

/// Exact verifier for quantum Jordanian twist identities.
#[derive(Parser, Debug)]
#[command(name = "twistkit", version)]
struct Cli {
    suite: Suite,
    /// Truncation order in (h, xi).
    #[arg(long, default_value_t = 4)]
    order: u32,
    #[arg(long, value_parser = parse_rational)]
    q: Option<Q>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    xi: Option<Q>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    zeta: Option<Q>,
    /// Spectral parameters; qybe takes three, affine one.
    #[arg(long, value_parser = parse_rational, num_args = 1.., allow_hyphen_values = true)]
    z: Vec<Q>,
    #[arg(long, default_value_t = 6)]
    nmax: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let cfg = SuiteConfig {
        suite: cli.suite,
        order: cli.order,
        q: cli.q,
        xi: cli.xi,
        zeta: cli.zeta,
        z: cli.z,
        nmax: cli.nmax,
    };
    let report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("twistkit: {e}");
            return ExitCode::from(if e.is_usage() { 2 } else { 1 });
        }
    };
    let bytes = emit_report(&report, cli.format);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &bytes),
        None => std::io::stdout().write_all(bytes.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("twistkit: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
