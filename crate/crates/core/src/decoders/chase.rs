use crate::channel::Received;
use crate::code::LinearCode;
use crate::error::{Error, Result};

use super::{argmin_by, Candidate, DecodeResult, DecoderConfig};

/// Chase II: bounded-distance decoding of the hard decisions under every
/// flip combination of the `p` least reliable positions. The best candidate
/// has the smallest analog weight.
pub fn chase2_decode(rx: &Received, code: &LinearCode, p: u8, cfg: &DecoderConfig) -> Result<DecodeResult> {
    let bch = code
        .bch_structure()
        .ok_or_else(|| Error::NotBch(code.name().to_string()))?;
    let p = p as usize;
    if p > 16 || p > code.n() {
        return Err(Error::Config(format!("Chase II needs p <= min(16, n), got {p}")));
    }
    if rx.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            actual: rx.len(),
        });
    }
    let t_sub = bch.t().min(3);
    let flips: Vec<usize> = rx.order[..p].to_vec();
    let attempts = 1usize << p;

    let mut candidates: Vec<Candidate> = Vec::new();
    let mut test = rx.hard.clone();
    for i in 0..attempts {
        test.copy_from_slice(&rx.hard);
        for (b, &pos) in flips.iter().enumerate() {
            if i >> b & 1 == 1 {
                test[pos] ^= 1;
            }
        }
        let Some(c) = code.bch_hard_decode(&test, t_sub)? else {
            continue;
        };
        if candidates.iter().any(|k| k.codeword == c) {
            continue;
        }
        let pattern: Vec<usize> = (0..c.len()).filter(|&j| c[j] != rx.hard[j]).collect();
        debug_assert!(code.is_codeword(&c));
        candidates.push(Candidate::new(rx, c, pattern, i + 1));
    }

    let best = argmin_by(&candidates, |c| c.analog_weight);
    Ok(DecodeResult::finish(candidates, best, attempts, cfg.shot_size))
}
