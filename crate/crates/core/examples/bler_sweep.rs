//! Monte-Carlo BLER sweep written as CSV.
//!
//! ```bash
//! cargo run --release --example bler_sweep > bler.csv
//! ```

use std::sync::Arc;

use ordept::sim::{emit_csv, run_monte_carlo, SimConfig};
use ordept::{DecoderConfig, LinearCode};

fn main() -> ordept::Result<()> {
    let code = Arc::new(LinearCode::bch(8, 2, true)?);
    let mut cfg = SimConfig::new(code, DecoderConfig::ordept(1024, 1, 1024), vec![4.0, 5.0, 6.0]);
    cfg.max_frames = 50_000;
    cfg.min_block_errors = 100;
    cfg.seed = 2024;
    let records = run_monte_carlo(&cfg)?;
    for r in &records {
        let (lo, hi) = r.bler_interval();
        eprintln!("{:>4} dB  bler {:.3e}  [{lo:.2e}, {hi:.2e}]", r.snr_db, r.bler);
    }
    print!("{}", emit_csv(&records)?);
    Ok(())
}
