//! Decodes the same noisy frames with every decoder variant.
//!
//! ```bash
//! cargo run --release --example decoder_comparison
//! ```

use std::sync::Arc;

use ordept::channel::{frame_rng, transmit};
use ordept::{ChannelParams, Decoder, DecoderConfig, LinearCode};
use rand::Rng;

fn main() -> ordept::Result<()> {
    let code = Arc::new(LinearCode::bch(7, 2, true)?);
    let params = ChannelParams::from_ebn0(4.0, code.rate());
    let configs = [
        DecoderConfig::hard_decision(),
        DecoderConfig::chase2(4),
        DecoderConfig::orbgrand(1024),
        DecoderConfig::ordept(1024, 1, 1024),
        DecoderConfig::ordept(1024, 4, 64),
        DecoderConfig::ordeptx(1, 1024, 1, 1024),
    ];
    let frames = 2000;
    println!("{} at Eb/N0 = 4 dB, {frames} frames", code.name());
    println!("{:<28} {:>8} {:>10} {:>8}", "decoder", "errors", "queries", "shots");
    for cfg in configs {
        let label = format!("{} c={} q={}", cfg.variant, cfg.c_max, cfg.q_max);
        let dec = Decoder::new(code.clone(), cfg)?;
        let (mut errors, mut queries, mut shots) = (0, 0, 0);
        for i in 0..frames {
            let mut rng = frame_rng(7, i);
            let info: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2u8)).collect();
            let c = code.encode(&info)?;
            let f = transmit(&c, &params, &mut rng);
            let r = dec.decode(&f.received)?;
            errors += (r.codeword() != Some(&c[..])) as u32;
            queries += r.queries_used;
            shots += r.shots_used;
        }
        println!(
            "{label:<28} {errors:>8} {:>10.2} {:>8.2}",
            queries as f64 / frames as f64,
            shots as f64 / frames as f64
        );
    }
    Ok(())
}
