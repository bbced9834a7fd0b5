use std::io::{BufRead, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use ordept::bits::to_hex;
use ordept::config::{load_config, parse_list, ExperimentConfig};
use ordept::patterns::generate_query_list;
use ordept::sim::{emit_csv, estimate_latency_cycles, run_monte_carlo, run_product, ProductSimConfig, SimConfig};
use ordept::{Decoder, Error, Received, Result};

#[derive(Parser)]
#[command(name = "ordept", version, about = "Ordered reliability soft-decision decoding experiments")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct SimArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated sweep in dB.
    #[arg(long)]
    snr: Option<String>,
    /// Maximum frames per point.
    #[arg(long)]
    frames: Option<u64>,
    #[arg(long)]
    min_block_errors: Option<u64>,
    /// CSV output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Block and bit error rates of a single code.
    SimBler(SimArgs),
    /// Iterative decoding of the square product of the configured code.
    SimProduct(SimArgs),
    /// Prints a query list.
    GenPatterns {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        qmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decodes LLR frames, one per line.
    Decode {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Input file (stdin when omitted).
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Clock-cycle latency estimate.
    Latency {
        #[arg(long)]
        qmax: usize,
        #[arg(long)]
        shot_size: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cmax: Option<usize>,
    },
}

fn experiment(path: &Option<PathBuf>) -> Result<ExperimentConfig> {
    match path {
        Some(p) => load_config(p),
        None => Ok(ExperimentConfig::default()),
    }
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(Error::from),
    }
}

struct Common {
    exp: ExperimentConfig,
    sweep: Vec<f64>,
    seed: u64,
    frames: Option<u64>,
    min_block_errors: u64,
}

fn common(a: &SimArgs) -> Result<Common> {
    let exp = experiment(&a.config)?;
    let sweep = match &a.snr {
        Some(s) => parse_list("--snr", s)?,
        None => exp.sweep_db.clone().unwrap_or_else(|| vec![4.0]),
    };
    Ok(Common {
        seed: a.seed.or(exp.seed).unwrap_or(1),
        frames: a.frames.or(exp.frames),
        min_block_errors: a.min_block_errors.or(exp.min_block_errors).unwrap_or(0),
        sweep,
        exp,
    })
}

fn sim_bler(a: &SimArgs) -> Result<()> {
    let c = common(a)?;
    let code = Arc::new(c.exp.code.build()?);
    let mut cfg = SimConfig::new(code, c.exp.decoder, c.sweep);
    cfg.metric = c.exp.metric;
    cfg.seed = c.seed;
    cfg.max_frames = c.frames.unwrap_or(10_000);
    cfg.min_block_errors = c.min_block_errors;
    cfg.workers = a.workers;
    let records = run_monte_carlo(&cfg)?;
    write_out(&a.out, &emit_csv(&records)?)
}

fn sim_product(a: &SimArgs) -> Result<()> {
    let c = common(a)?;
    let code = Arc::new(c.exp.code.build()?);
    let mut cfg = ProductSimConfig::new(code, c.exp.decoder, c.exp.turbo, c.sweep);
    cfg.metric = c.exp.metric;
    cfg.seed = c.seed;
    cfg.max_frames = c.frames.unwrap_or(100);
    cfg.min_block_errors = c.min_block_errors;
    cfg.workers = a.workers;
    let records = run_product(&cfg)?;
    for r in &records {
        let bers: Vec<String> = r.ber_per_iteration().iter().map(|b| format!("{b:.3e}")).collect();
        eprintln!("{} dB: BER per iteration {}", r.record.snr_db, bers.join(" "));
    }
    let finals: Vec<_> = records.into_iter().map(|r| r.record).collect();
    write_out(&a.out, &emit_csv(&finals)?)
}

fn decode(config: &Option<PathBuf>, input: &Option<PathBuf>, out: &Option<PathBuf>) -> Result<()> {
    let exp = experiment(config)?;
    let code = Arc::new(exp.code.build()?);
    let n = code.n();
    let decoder = Decoder::new(code, exp.decoder)?;
    let text = match input {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin().lock().read_to_string(&mut s)?;
            s
        }
    };
    let mut report = String::new();
    for (i, line) in text.as_bytes().lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let llr: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|_| Error::MalformedRow(format!("line {}: {t:?}", i + 1))))
            .collect::<Result<_>>()?;
        if llr.len() != n {
            return Err(Error::LengthMismatch { expected: n, actual: llr.len() });
        }
        let r = decoder.decode(&Received::from_llr(llr))?;
        let bits = r.codeword().map_or_else(|| "-".to_string(), to_hex);
        let status = if r.is_decoded() { "decoded" } else { "abandoned" };
        report.push_str(&format!("{status}\t{}\t{}\t{bits}\n", r.queries_used, r.shots_used));
    }
    write_out(out, &report)
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::SimBler(a) => sim_bler(&a),
        Cmd::SimProduct(a) => sim_product(&a),
        Cmd::GenPatterns { n, qmax, out } => {
            if n == 0 || n > u16::MAX as usize || qmax == 0 {
                return Err(Error::Config("need 1 <= n <= 65535 and qmax >= 1".into()));
            }
            write_out(&out, &generate_query_list(n, qmax).to_text())
        }
        Cmd::Decode { config, input, out } => decode(&config, &input, &out),
        Cmd::Latency { qmax, shot_size, n, cmax } => {
            if shot_size == 0 {
                return Err(Error::Config("shot size must be positive".into()));
            }
            println!("{}", estimate_latency_cycles(qmax, shot_size, n, cmax));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::Io(_)) { 3 } else { 2 })
        }
    }
}
