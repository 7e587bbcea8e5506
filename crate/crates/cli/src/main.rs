use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use schlafli_core::harness::{
    emit_report, run_suite, suite_seed, verify_corollary2, verify_main_finite, verify_schlafli, Corruption, FdOptions,
    PolyhedronFamilyFile, ReportFormat, RunSettings, SurfaceFamilyFile, Tolerance, VerificationReport, DEFAULT_STEP,
    SEED_VAR,
};
use schlafli_core::pleated::PleatScenario;
use schlafli_core::tracks::{cocycle_length, validate_track, TrackFile};
use schlafli_core::volume::{chain_volume, SimplicialChain};

#[derive(Parser)]
#[command(name = "schlafli", version, about = "Volume derivatives of deforming hyperbolic polyhedra and pleated surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a volume derivative formula against finite differences.
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
    /// Signed volume of a simplicial chain.
    Volume { chain: PathBuf },
    /// Branch lengths of a train track and the length of its weights.
    Length { track: PathBuf },
    /// Run the built-in seeded suite.
    Report {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Output file; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyKind {
    /// Polyhedron family against `½ Σ l(e) ḃ(e)`.
    Schlafli {
        file: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Triangulated sphere family against the surface-edge formula.
    Corollary2 {
        file: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Pleated rectangle family against half the length of the bend rates.
    Main {
        file: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(clap::Args, Clone, Copy)]
struct RunArgs {
    #[arg(long)]
    t0: Option<f64>,
    #[arg(long)]
    h: Option<f64>,
    /// Absolute tolerance; the relative one stays at its default.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy)]
enum Format {
    Csv,
    Text,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => ReportFormat::Csv,
            Format::Text => ReportFormat::Text,
        }
    }
}

struct Resolved {
    t0: f64,
    opts: FdOptions,
    tol: Tolerance,
    seed: Option<u64>,
}

fn resolve(args: RunArgs, file: RunSettings) -> Resolved {
    let tol = args.tol.or(file.tol).map_or_else(Tolerance::default, |abs| Tolerance { abs, ..Tolerance::default() });
    let seed = std::env::var(SEED_VAR).ok().and_then(|s| s.trim().parse().ok()).or(file.seed);
    Resolved {
        t0: args.t0.or(file.t0).unwrap_or(0.0),
        opts: FdOptions::with_step(args.h.or(file.h).unwrap_or(DEFAULT_STEP)),
        tol,
        seed,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn verify(kind: VerifyKind) -> Result<(VerificationReport, Format)> {
    let (report, r, format) = match kind {
        VerifyKind::Schlafli { file, run } => {
            let f = PolyhedronFamilyFile::from_json(&read(&file)?)?;
            let r = resolve(run, f.run);
            (verify_schlafli(&f.family()?, r.t0, &r.opts, r.tol, Corruption::None)?, r, run.format)
        }
        VerifyKind::Corollary2 { file, run } => {
            let f = SurfaceFamilyFile::from_json(&read(&file)?)?;
            let r = resolve(run, f.run);
            (verify_corollary2(&f.family()?, r.t0, &r.opts, r.tol, Corruption::None)?, r, run.format)
        }
        VerifyKind::Main { file, run } => {
            let s = PleatScenario::from_json(&read(&file)?)?;
            let r = resolve(run, RunSettings { t0: s.t0, h: s.h, tol: s.tol, seed: s.seed });
            (verify_main_finite(&s.family(), &s.bend_family(), r.t0, &r.opts, r.tol)?.report, r, run.format)
        }
    };
    Ok((if let Some(s) = r.seed { report.with_seed(s) } else { report }, format))
}

fn run(cli: Cli) -> Result<bool> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Verify { kind } => {
            let (report, format) = verify(kind)?;
            stdout.write_all(&emit_report(std::slice::from_ref(&report), format.into()))?;
            Ok(report.pass)
        }
        Command::Volume { chain } => {
            let c = SimplicialChain::from_json(&read(&chain)?)?;
            writeln!(stdout, "{:.15e}", chain_volume(&c))?;
            Ok(true)
        }
        Command::Length { track } => {
            let f = TrackFile::from_json(&read(&track)?)?;
            for (i, b) in f.track.branches.iter().enumerate() {
                let len = b.length.map_or("unknown".to_string(), |l| format!("{l:.15e}"));
                writeln!(stdout, "branch {i}: {len}{}", if b.closed { " (closed)" } else { "" })?;
            }
            let Some(c) = f.cocycle() else {
                return Ok(true);
            };
            let check = validate_track(&f.track, &c)?;
            writeln!(stdout, "length {:.15e}", cocycle_length(&f.track, &c)?)?;
            writeln!(stdout, "switch conditions: max violation {:.3e} ({})", check.max_violation, if check.pass { "pass" } else { "FAIL" })?;
            Ok(check.pass)
        }
        Command::Report { format, out } => {
            let reports = run_suite(suite_seed());
            let bytes = emit_report(&reports, format.into());
            match out {
                Some(p) => fs::write(&p, &bytes).with_context(|| format!("writing {}", p.display()))?,
                None => stdout.write_all(&bytes)?,
            }
            Ok(reports.iter().all(|r| r.pass))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

