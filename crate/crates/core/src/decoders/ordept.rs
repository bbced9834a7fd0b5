use crate::bits;
use crate::channel::Received;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::patterns::QueryList;

use super::{argmin_by, Candidate, DecodeResult, DecoderConfig};

/// How a query pattern is turned into a full error pattern.
#[derive(Clone, Copy)]
enum Completion {
    /// Membership test: the pattern itself must explain the syndrome.
    None,
    /// One extra position from the column lookup.
    Column,
    /// Up to `x` extra positions from bounded-distance decoding.
    Bdd(usize),
}

fn check_inputs(rx: &Received, code: &LinearCode, list: &QueryList) -> Result<()> {
    if rx.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            actual: rx.len(),
        });
    }
    if list.max_rank() > code.n() {
        return Err(Error::RankOutOfRange {
            rank: list.max_rank(),
            n: code.n(),
        });
    }
    Ok(())
}

/// Multi-candidate search with partial error patterns completed through the
/// parity-check columns.
pub fn ordept_decode(rx: &Received, code: &LinearCode, list: &QueryList, cfg: &DecoderConfig) -> Result<DecodeResult> {
    search(rx, code, list, cfg, Completion::Column, cfg.c_max)
}

/// ORDEPT with completion by up to `x` positions. `x = 1` gives ORDEPT and
/// `x = 0` gives ORBGRAND.
pub fn ordeptx_decode(rx: &Received, code: &LinearCode, list: &QueryList, cfg: &DecoderConfig) -> Result<DecodeResult> {
    let x = match cfg.variant {
        super::Variant::OrdeptX(x) => x as usize,
        _ => 1,
    };
    match x {
        0 => orbgrand_decode(rx, code, list, cfg),
        1 => ordept_decode(rx, code, list, cfg),
        _ => {
            let bch = code
                .bch_structure()
                .ok_or_else(|| Error::NotBch(code.name().to_string()))?;
            if x > 3 || x > bch.t() {
                return Err(Error::Config(format!("ORDEPTx with x = {x} and t = {}", bch.t())));
            }
            search(rx, code, list, cfg, Completion::Bdd(x), cfg.c_max)
        }
    }
}

/// Returns the first pattern in the list whose flip yields a codeword.
pub fn orbgrand_decode(rx: &Received, code: &LinearCode, list: &QueryList, cfg: &DecoderConfig) -> Result<DecodeResult> {
    search(rx, code, list, cfg, Completion::None, 1)
}

fn search(
    rx: &Received,
    code: &LinearCode,
    list: &QueryList,
    cfg: &DecoderConfig,
    completion: Completion,
    c_max: usize,
) -> Result<DecodeResult> {
    check_inputs(rx, code, list)?;
    let h = code.parity_check();
    let words = h.col_words();
    let w = &rx.hard;
    let mut s = vec![0u64; words];
    code.syndrome_into(w, &mut s);
    let s_zero = bits::is_zero(&s);

    let mut candidates: Vec<Candidate> = Vec::new();
    let mut last_success = 0usize;

    if s_zero && !matches!(completion, Completion::None) {
        candidates.push(Candidate::new(rx, w.clone(), Vec::new(), 0));
        if !cfg.soft_output {
            return Ok(DecodeResult::finish(candidates, Some(0), 0, cfg.shot_size));
        }
    }

    let parity = if list.parity_split().is_some() {
        bits::get(&s, code.m() - 1)
    } else {
        0
    };

    let mut partial = vec![0u64; words];
    let mut positions: Vec<usize> = Vec::with_capacity(16);
    let mut extra: Vec<usize> = Vec::with_capacity(4);
    let mut queries = 0usize;

    for pep in list.eligible(parity) {
        if queries >= cfg.q_max {
            break;
        }
        let q = queries + 1;
        let boundary = !cfg.shot_batching || queries % cfg.shot_size == 0;
        if boundary
            && (candidates.len() >= c_max
                || (!candidates.is_empty() && q > last_success + cfg.threshold_t))
        {
            break;
        }
        queries = q;
        if candidates.len() >= c_max {
            // remaining queries of the current shot
            continue;
        }

        partial.copy_from_slice(&s);
        positions.clear();
        for &r in pep.ranks() {
            let p = rx.order[r as usize - 1];
            positions.push(p);
            bits::xor_into(&mut partial, h.column(p));
        }

        extra.clear();
        let found = match completion {
            Completion::None => bits::is_zero(&partial),
            Completion::Column => match code.complete_words(&partial) {
                Some(j) if !positions.contains(&j) => {
                    extra.push(j);
                    true
                }
                _ => false,
            },
            Completion::Bdd(x) => {
                let bch = code.bch_structure().expect("checked by caller");
                match bch.locate(&partial, x) {
                    Some(loc) if !loc.is_empty() && loc.iter().all(|j| !positions.contains(j)) => {
                        for &j in &loc {
                            bits::xor_into(&mut partial, h.column(j));
                        }
                        extra.extend_from_slice(&loc);
                        bits::is_zero(&partial)
                    }
                    _ => false,
                }
            }
        };
        if !found {
            continue;
        }

        let mut pattern: Vec<usize> = positions.iter().chain(&extra).copied().collect();
        pattern.sort_unstable();
        if candidates.iter().any(|c| c.error_pattern == pattern) {
            continue;
        }
        let mut codeword = w.clone();
        for &j in &pattern {
            codeword[j] ^= 1;
        }
        debug_assert!(code.is_codeword(&codeword));
        candidates.push(Candidate::new(rx, codeword, pattern, q));
        last_success = q;
    }

    let best = argmin_by(&candidates, |c| c.sq_distance);
    Ok(DecodeResult::finish(candidates, best, queries, cfg.shot_size))
}
