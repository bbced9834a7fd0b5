//! Field arithmetic, extended BCH construction and hard-decision decoding.
//!
//! ```bash
//! cargo run --release --example galois_bch
//! ```

use ordept::{GaloisField, LinearCode};

fn main() -> ordept::Result<()> {
    let f = GaloisField::with_default_poly(8)?;
    let a = f.exp(17);
    println!("GF(2^8) with poly {:#x}", f.primitive_poly());
    println!("alpha^17 = {a:#04x}, inverse = {:#04x}", f.inv(a).unwrap());
    println!("alpha^17 * alpha^200 = alpha^{}", f.log(f.mul(a, f.exp(200))).unwrap());

    let code = LinearCode::bch(8, 2, true)?;
    println!("{}: n = {}, k = {}, m = {}", code.name(), code.n(), code.k(), code.m());

    let info: Vec<u8> = (0..code.k()).map(|i| (i % 3 == 0) as u8).collect();
    let c = code.encode(&info)?;
    assert!(code.is_codeword(&c));

    let mut w = c.clone();
    for p in [3, 77, 190] {
        w[p] ^= 1;
    }
    let s = code.syndrome(&w)?;
    println!("syndrome bits of a 3-error word: {:?}", s.to_bits());

    let mut two = c.clone();
    two[10] ^= 1;
    two[200] ^= 1;
    let fixed = code.bch_hard_decode(&two, 2)?.expect("within radius");
    println!("two errors corrected: {}", fixed == c);
    Ok(())
}
