//! Iterative decoding of a square product code, fixed and adaptive factors.
//!
//! ```bash
//! cargo run --release --example product_code
//! ```

use std::sync::Arc;

use ordept::sim::{run_product, ProductSimConfig};
use ordept::turbo::{AdaptiveParams, Factors, TurboConfig};
use ordept::{DecoderConfig, LinearCode};

fn main() -> ordept::Result<()> {
    let code = Arc::new(LinearCode::bch(6, 2, true)?);
    let decoder = DecoderConfig::ordept(256, 4, 64);
    let adaptive = AdaptiveParams {
        a_alpha: vec![0.4, 0.6, 0.8, 1.0],
        b_alpha: vec![0.2, 0.3, 0.5, 0.7],
        k_alpha: vec![0.05],
        a_beta: vec![0.5, 0.7, 0.9, 1.0],
        b_beta: vec![0.2, 0.4, 0.6, 0.8],
        k_beta: vec![0.05],
        eps_scale: 1.0,
    };
    for (name, factors) in [("fixed", Factors::default()), ("adaptive", Factors::Adaptive(adaptive))] {
        let turbo = TurboConfig { iterations: 4, factors, ..TurboConfig::default() };
        let mut cfg = ProductSimConfig::new(code.clone(), decoder.clone(), turbo, vec![3.0, 3.5]);
        cfg.max_frames = 40;
        for rec in run_product(&cfg)? {
            let ber: Vec<String> = rec.ber_per_iteration().iter().map(|b| format!("{b:.2e}")).collect();
            println!("{name:<9} {:>4} dB  ber per iteration {}", rec.record.snr_db, ber.join(" "));
        }
    }
    Ok(())
}
