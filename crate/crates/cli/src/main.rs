use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use joseph_core::suite::{emit_report, run_suite, Format, SuiteConfig, SuiteName};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Prelim,
    Decomposition,
    Hwv,
    Joseph,
    Realization,
    Beta3,
}

impl From<Suite> for SuiteName {
    fn from(s: Suite) -> Self {
        match s {
            Suite::Prelim => SuiteName::Prelim,
            Suite::Decomposition => SuiteName::Decomposition,
            Suite::Hwv => SuiteName::Hwv,
            Suite::Joseph => SuiteName::Joseph,
            Suite::Realization => SuiteName::Realization,
            Suite::Beta3 => SuiteName::Beta3,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

/// Exact verification suites for sl(m|n): tensor square decomposition, the
/// quadratic ideal and its critical parameter, and the minimal realization.
///
/// Exit status: 0 if every check passes, 1 if any fails, 2 on a configuration error.
#[derive(Debug, Parser)]
#[command(name = "slmn-joseph", version)]
struct Args {
    /// Even dimension of a single case (use with --n).
    #[arg(long, requires = "n")]
    m: Option<usize>,
    /// Odd dimension of a single case (use with --m).
    #[arg(long, requires = "m")]
    n: Option<usize>,
    /// A case as `m,n`; repeatable.
    #[arg(long = "case", value_parser = parse_case)]
    cases: Vec<(usize, usize)>,
    /// Suite to run; repeatable. Default: all except beta3 (beta3 too with --slow).
    #[arg(long = "suite", value_enum)]
    suites: Vec<Suite>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Memory cap for the beta3 suite, in MiB.
    #[arg(long, default_value_t = 4096)]
    mem_cap_mb: u64,
    /// Allow the slow beta3 suite.
    #[arg(long)]
    slow: bool,
    /// Record wall times (makes reports non-reproducible).
    #[arg(long)]
    timings: bool,
}

fn parse_case(s: &str) -> Result<(usize, usize), String> {
    let (m, n) = s.split_once(',').ok_or_else(|| format!("expected m,n, got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((p(m)?, p(n)?))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut cases = Vec::new();
    if let (Some(m), Some(n)) = (args.m, args.n) {
        cases.push((m, n));
    }
    cases.extend(args.cases);
    if cases.is_empty() {
        eprintln!("error: no cases given; use --m/--n or --case m,n");
        return ExitCode::from(2);
    }
    let cfg = SuiteConfig {
        cases,
        suites: args.suites.into_iter().map(SuiteName::from).collect(),
        slow: args.slow,
        jobs: args.jobs,
        mem_cap_mb: args.mem_cap_mb,
        timings: args.timings,
    };
    let doc = match run_suite(&cfg) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let format = match args.format {
        OutFormat::Json => Format::Json,
        OutFormat::Text => Format::Text,
    };
    let body = emit_report(&doc, format);
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    if doc.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
