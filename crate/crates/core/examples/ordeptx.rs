//! Bounded-distance completion of x error positions per query.
//!
//! ```bash
//! cargo run --release --example ordeptx
//! ```

use std::sync::Arc;

use ordept::channel::{frame_rng, transmit};
use ordept::{ChannelParams, Decoder, DecoderConfig, LinearCode};

fn main() -> ordept::Result<()> {
    let code = Arc::new(LinearCode::bch(8, 3, true)?);
    let params = ChannelParams::from_ebn0(5.0, code.rate());
    let frames = 500;
    for x in 1..=2 {
        let dec = Decoder::new(code.clone(), DecoderConfig::ordeptx(x, 256, 1, 256))?;
        let (mut ok, mut queries) = (0, 0);
        for i in 0..frames {
            let mut rng = frame_rng(11, i);
            let c = code.encode(&vec![0; code.k()])?;
            let f = transmit(&c, &params, &mut rng);
            let r = dec.decode(&f.received)?;
            ok += (r.codeword() == Some(&c[..])) as u32;
            queries += r.queries_used;
        }
        println!(
            "x = {x}: {ok}/{frames} correct, {:.2} queries per frame",
            queries as f64 / frames as f64
        );
    }
    Ok(())
}
