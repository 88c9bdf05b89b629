use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use twirl_tomo::harness::{self, Protocol, RunManifest};
use twirl_tomo::seqpt::Variant;
use twirl_tomo::Result;

#[derive(Parser)]
#[command(name = "twirl-tomo", version, about = "Twirl-based process tomography simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Channel-spec JSON document.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Output directory for result.json, table.txt and manifest.json.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of realizations M.
    #[arg(long)]
    shots: Option<u64>,
    /// Weight cutoff w_co for the local twirl.
    #[arg(long)]
    cutoff: Option<usize>,
    #[arg(long, default_value_t = Variant::Mub)]
    variant: Variant,
}

#[derive(Subcommand)]
enum Command {
    /// Exact χ matrix of a channel spec.
    ExactChi(Common),
    /// Selective or blind SEQPT estimation.
    Seqpt {
        #[command(subcommand)]
        mode: SeqptMode,
    },
    /// Sampled one-qubit Clifford twirl with p_w and χ^col solves.
    LocalTwirl(Common),
    /// χ-element bound checks and CP classification.
    BoundsCheck(Common),
    /// Monte Carlo check of the Haar fourth-moment closed form.
    HaarVerify {
        #[command(flatten)]
        common: Common,
        /// Hilbert-space dimensions, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "2,4")]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 10)]
        quadruples: usize,
    },
    /// Usable-pair probabilities versus n, optionally sampled.
    SuccessProb {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Sampled pairs per (variant, n); 0 skips sampling.
        #[arg(long, default_value_t = 0)]
        pairs: u64,
    },
    /// Execute a run manifest.
    Run {
        manifest: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// CSV and table report from a result.json.
    Report {
        result: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SeqptMode {
    /// Estimate χ_{l,l} for the given labels.
    Select {
        #[command(flatten)]
        common: Common,
        /// Pauli labels, comma separated, e.g. ZX,IX.
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<String>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Discover the significant χ diagonal without prior labels.
    Blind {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
    },
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn timestamp() -> String {
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    format!("unix:{secs}")
}

fn seqpt_config(common: &Common, epsilon: Option<f64>, delta: Option<f64>) -> Value {
    let mut m = Map::new();
    m.insert("shots".into(), json!(common.shots.unwrap_or(10_000)));
    m.insert("variant".into(), json!(common.variant));
    if let Some(e) = epsilon {
        m.insert("epsilon".into(), json!(e));
    }
    if let Some(d) = delta {
        m.insert("delta".into(), json!(d));
    }
    Value::Object(m)
}

fn execute(protocol: Protocol, common: &Common, config: Value) -> Result<()> {
    // absolute so the saved manifest replays from its own directory
    let spec = common.spec.as_ref().map(|p| std::path::absolute(p)).transpose()?;
    let mut manifest = RunManifest::new(protocol, spec, config, common.seed);
    manifest.timestamp = Some(timestamp());
    run_manifest(&manifest, Path::new("."), &common.out)
}

fn run_manifest(manifest: &RunManifest, base: &Path, out: &Path) -> Result<()> {
    let (doc, outputs) = harness::run(manifest, base, out)?;
    emit(&harness::render_table(&doc));
    eprintln!("wrote {}", outputs.result.display());
    Ok(())
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::ExactChi(c) => execute(Protocol::ExactChi, &c, Value::Null),
        Command::Seqpt { mode: SeqptMode::Select { common, labels, epsilon, delta } } => {
            let mut config = seqpt_config(&common, epsilon, delta);
            config["labels"] = json!(labels);
            execute(Protocol::SeqptSelective, &common, config)
        }
        Command::Seqpt { mode: SeqptMode::Blind { common, epsilon, delta } } => {
            let config = seqpt_config(&common, epsilon, delta);
            execute(Protocol::SeqptBlind, &common, config)
        }
        Command::LocalTwirl(c) => {
            let mut config = json!({ "shots": c.shots.unwrap_or(10_000) });
            if let Some(w) = c.cutoff {
                config["cutoff"] = json!(w);
            }
            execute(Protocol::LocalTwirl, &c, config)
        }
        Command::BoundsCheck(c) => execute(Protocol::BoundsCheck, &c, Value::Null),
        Command::HaarVerify { common, dims, samples, quadruples } => execute(
            Protocol::HaarVerify,
            &common,
            json!({ "dims": dims, "samples": samples, "quadruples": quadruples }),
        ),
        Command::SuccessProb { common, max_n, pairs } => {
            execute(Protocol::SuccessProb, &common, json!({ "max_n": max_n, "pairs": pairs }))
        }
        Command::Run { manifest, out } => {
            let m = RunManifest::load(&manifest)?;
            let base = manifest.parent().unwrap_or(Path::new("."));
            run_manifest(&m, base, &out)
        }
        Command::Report { result, out } => {
            let out = out.unwrap_or_else(|| result.parent().unwrap_or(Path::new(".")).to_path_buf());
            let r = harness::report(&result, &out)?;
            emit(&r.table);
            eprintln!("wrote {}", r.estimates_csv.display());
            if let Some(p) = r.success_csv {
                eprintln!("wrote {}", p.display());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(harness::exit_code(&e) as u8)
        }
    }
}
