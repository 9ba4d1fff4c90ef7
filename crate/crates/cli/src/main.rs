use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use bicem::config::SimConfig;
use bicem::harness::{
    run_ber_sweep, run_bound_sweep, run_map_search, run_uncoded_baseline, search_output_path, write_ber_csv,
    write_bound_csv, write_search_csv,
};
use bicem::selftest::{run_selftest, Level};
use bicem::Error;
use clap::{Args, Parser, Subcommand};

/// Simulation and bound analysis for non-coherent bit-interleaved coded
/// energy-based modulation with iterative decoding.
///
/// Exit status: 0 on success, 1 for configuration or I/O errors, 2 for
/// numerical failures and failed self-test checks.
#[derive(Parser)]
#[command(name = "bicem", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte-Carlo BER of the coded link, one row per (SNR, mapping, pass).
    Ber(RunArgs),
    /// BER of the uncoded system with ML symbol decisions.
    Uncoded(RunArgs),
    /// Pairwise error bounds and diversity orders.
    Bounds(RunArgs),
    /// Exhaustive best-mapping search, one table per SNR point.
    Mapsearch(RunArgs),
    /// Runs the built-in verification suite.
    Selftest {
        /// `quick` (deterministic checks) or `full` (adds Monte-Carlo checks).
        #[arg(long, default_value = "quick")]
        level: String,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Experiment file with `key = value` lines.
    #[arg(short, long)]
    config: Option<PathBuf>,
    /// Overrides a configuration key; repeatable.
    #[arg(short = 's', long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Use the long information blocks of the original study.
    #[arg(long)]
    full_scale: bool,
    /// CSV destination; `-` or absent means standard output unless the
    /// configuration names a file.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

impl RunArgs {
    fn load(&self) -> bicem::Result<(SimConfig, Option<PathBuf>)> {
        let mut cfg = SimConfig::load(self.config.as_deref(), &self.overrides)?;
        if self.full_scale {
            cfg.info_block_length = cfg.full_scale_block_length();
        }
        let output = self.output.clone().or_else(|| cfg.output.clone());
        let output = output.filter(|p| p != Path::new("-"));
        Ok((cfg, output))
    }
}

fn sink(path: Option<&Path>) -> bicem::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Numerical(_) | Error::Infeasible(_) => 2,
        _ => 1,
    }
}

fn note(path: Option<&Path>, what: &str, start: Instant) {
    if let Some(p) = path {
        eprintln!("wrote {what} to {} in {:.1}s", p.display(), start.elapsed().as_secs_f64());
    }
}

fn run(command: Command) -> bicem::Result<u8> {
    let start = Instant::now();
    match command {
        Command::Ber(args) => {
            let (cfg, out) = args.load()?;
            let records = run_ber_sweep(&cfg)?;
            write_ber_csv(&records, sink(out.as_deref())?)?;
            note(out.as_deref(), &format!("{} BER rows", records.len()), start);
        }
        Command::Uncoded(args) => {
            let (cfg, out) = args.load()?;
            let records = run_uncoded_baseline(&cfg)?;
            write_ber_csv(&records, sink(out.as_deref())?)?;
            note(out.as_deref(), &format!("{} BER rows", records.len()), start);
        }
        Command::Bounds(args) => {
            let (cfg, out) = args.load()?;
            let rows = run_bound_sweep(&cfg)?;
            write_bound_csv(&rows, sink(out.as_deref())?)?;
            note(out.as_deref(), &format!("{} bound rows", rows.len()), start);
        }
        Command::Mapsearch(args) => {
            let (cfg, out) = args.load()?;
            let results = run_map_search(&cfg)?;
            match out {
                Some(base) => {
                    for res in &results {
                        let path = search_output_path(&base, res.params.gamma_b_db);
                        write_search_csv(res, BufWriter::new(File::create(&path)?))?;
                        note(Some(&path), &format!("{} mappings", res.best.len()), start);
                    }
                }
                None => {
                    let mut stdout = io::stdout().lock();
                    for res in &results {
                        writeln!(stdout, "# gamma_b_db={}", res.params.gamma_b_db)?;
                        write_search_csv(res, &mut stdout)?;
                    }
                }
            }
        }
        Command::Selftest { level } => {
            let level: Level = level.parse()?;
            let report = run_selftest(level);
            println!("{report}");
            if !report.passed() {
                return Ok(2);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("bicem: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
