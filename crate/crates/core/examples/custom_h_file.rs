//! Round trip of a parity-check matrix through its text form, then decoding
//! with a code loaded from a configuration file.
//!
//! ```bash
//! cargo run --release --example custom_h_file
//! ```

use std::path::Path;
use std::sync::Arc;

use ordept::channel::{frame_rng, transmit};
use ordept::code::{load_parity_check, save_parity_check};
use ordept::config::load_config;
use ordept::{ChannelParams, Decoder, LinearCode};

fn main() -> ordept::Result<()> {
    let crc = LinearCode::crc(0x1D5, 64)?;
    let text = save_parity_check(&crc);
    let back = load_parity_check(&text)?;
    assert_eq!(back.parity_check().rows(), crc.parity_check().rows());
    println!("saved and reloaded a {}x{} matrix", crc.m(), crc.n());

    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/configs/crc_ordept.cfg");
    let cfg = load_config(&path)?;
    let code = Arc::new(cfg.code.build()?);
    let dec = Decoder::new(code.clone(), cfg.decoder)?;
    let c = code.encode(&vec![1; code.k()])?;
    let f = transmit(&c, &ChannelParams::from_ebn0(7.0, code.rate()), &mut frame_rng(3, 0));
    let r = dec.decode(&f.received)?;
    println!(
        "{}: decoded = {}, queries = {}",
        code.name(),
        r.codeword() == Some(&c[..]),
        r.queries_used
    );
    Ok(())
}
