use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use rankdrop::generator::{generate, GenSpec, Mechanism};
use rankdrop::io::{self, LineInput, SidecarJson};
use rankdrop::trinity::MatrixLine;

mod analyze;
mod plot;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Exact,
    Float,
}

#[derive(Parser, Debug)]
#[command(name = "rankdrop", version, about = "Rank deficiency of face-splitting matrices of point pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value = "exact", global = true)]
    backend: Backend,
    /// Vanishing tolerance for the float backend.
    #[arg(long, default_value_t = 1e-6, global = true)]
    tol: f64,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Output path; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank, nullspace and the certificate appropriate to k.
    Analyze { input: PathBuf },
    /// Only the certificate (k = 6..9).
    Certify { input: PathBuf },
    /// Synthesize a configuration; the ground truth goes to `<out>.truth.json`.
    Generate {
        #[arg(long)]
        mechanism: Mechanism,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Members, epipoles, Cremona map and quadrics of a line of matrices.
    Trinity { input: PathBuf },
    /// SVG of the epipolar cubics of a six- or seven-pair config, or of given cubics.
    Plot {
        input: PathBuf,
        #[arg(long, default_value_t = plot::DEFAULT_GRID)]
        grid: usize,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn sidecar_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.truth.json"))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Analyze { input } => {
            let cfg = io::parse_config(&read(input)?)?;
            let report = analyze::analyze(&cfg, cli.backend, cli.tol, cli.seed)?;
            emit(out, &serde_json::to_string_pretty(&report)?)?;
            Ok(if report.deficient { ExitCode::from(2) } else { ExitCode::SUCCESS })
        }
        Command::Certify { input } => {
            let cfg = io::parse_config(&read(input)?)?;
            if cfg.k() < 6 {
                bail!("certify needs 6 to 9 pairs, got {}", cfg.k());
            }
            let report = analyze::analyze(&cfg, cli.backend, cli.tol, cli.seed)?;
            emit(out, &serde_json::to_string_pretty(&report.certificate)?)?;
            Ok(if report.deficient { ExitCode::from(2) } else { ExitCode::SUCCESS })
        }
        Command::Generate { mechanism, k } => {
            let mut spec = GenSpec::new(*mechanism, cli.seed);
            if let Some(k) = k {
                spec = spec.with_k(*k);
            }
            let sample = generate(&spec)?;
            let sidecar = serde_json::to_string_pretty(&SidecarJson::from(&sample))?;
            let config = io::sample_config_string(&sample);
            match out {
                Some(p) => {
                    emit(Some(p), &config)?;
                    emit(Some(&sidecar_path(p)), &sidecar)?;
                }
                None => {
                    let both = serde_json::json!({
                        "config": serde_json::from_str::<serde_json::Value>(&config)?,
                        "truth": serde_json::from_str::<serde_json::Value>(&sidecar)?,
                    });
                    emit(None, &serde_json::to_string_pretty(&both)?)?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Trinity { input } => {
            let inp = LineInput::parse(&read(input)?)?;
            let (a, b) = inp.basis()?;
            let cams = inp.cameras()?;
            let line = MatrixLine::new(a, b)?;
            if let Some(d) = line.defect() {
                bail!("non-generic line: {d}");
            }
            let report = io::trinity_report(&line, cams.as_ref());
            emit(out, &serde_json::to_string_pretty(&report)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Plot { input, grid } => {
            let text = read(input)?;
            let out = out.map(Path::to_path_buf).unwrap_or_else(|| input.with_extension("svg"));
            let written = plot::plot_file(&text, &out, *grid, cli.seed)?;
            for p in written {
                eprintln!("wrote {}", p.display());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
