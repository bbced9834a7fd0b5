//! Soft-decision decoders: ORDEPT, ORDEPTx, ORBGRAND and Chase II.

mod chase;
mod ordept;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::channel::Received;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::patterns::{cached_list, QueryList};

pub use chase::chase2_decode;
pub use ordept::{orbgrand_decode, ordept_decode, ordeptx_decode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Ordept,
    /// Completion by up to `x` positions through bounded-distance decoding.
    OrdeptX(u8),
    Orbgrand,
    /// Chase II with `p` least reliable positions flipped.
    Chase2(u8),
    /// Syndrome check of the hard decisions only.
    HardDecision,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Ordept => write!(f, "ordept"),
            Variant::OrdeptX(x) => write!(f, "ordeptx:{x}"),
            Variant::Orbgrand => write!(f, "orbgrand"),
            Variant::Chase2(p) => write!(f, "chase2:{p}"),
            Variant::HardDecision => write!(f, "hard"),
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    /// Accepts `ordept`, `ordeptx[:x]`, `orbgrand`, `chase2[:p]`, `hard`/`none`.
    /// A missing parameter defaults to 1 for ORDEPTx and 4 for Chase II.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s.as_str(), None),
        };
        let num = |default: u8| -> Result<u8> {
            arg.map_or(Ok(default), |a| {
                a.parse()
                    .map_err(|_| Error::Config(format!("bad variant parameter {a:?}")))
            })
        };
        match name {
            "ordept" => Ok(Variant::Ordept),
            "ordeptx" => Ok(Variant::OrdeptX(num(1)?)),
            "orbgrand" => Ok(Variant::Orbgrand),
            "chase" | "chase2" => Ok(Variant::Chase2(num(4)?)),
            "hard" | "none" => Ok(Variant::HardDecision),
            _ => Err(Error::Config(format!("unknown decoder variant {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoderConfig {
    pub q_max: usize,
    pub c_max: usize,
    /// Queries allowed after the most recent new candidate.
    pub threshold_t: usize,
    /// Queries per shot.
    pub shot_size: usize,
    pub variant: Variant,
    pub use_parity_split: bool,
    /// Keep searching when the hard decisions already form a codeword, which
    /// then becomes candidate 0. Used for soft-output component decoding.
    pub soft_output: bool,
    /// Evaluate stopping rules only at shot boundaries.
    pub shot_batching: bool,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        Self {
            q_max: 1024,
            c_max: 1,
            threshold_t: 1024,
            shot_size: 256,
            variant: Variant::Ordept,
            use_parity_split: true,
            soft_output: false,
            shot_batching: false,
        }
    }
}

impl DecoderConfig {
    pub fn ordept(q_max: usize, c_max: usize, threshold_t: usize) -> Self {
        Self {
            q_max,
            c_max,
            threshold_t,
            ..Self::default()
        }
    }

    pub fn ordeptx(x: u8, q_max: usize, c_max: usize, threshold_t: usize) -> Self {
        Self {
            variant: Variant::OrdeptX(x),
            ..Self::ordept(q_max, c_max, threshold_t)
        }
    }

    pub fn orbgrand(q_max: usize) -> Self {
        Self {
            variant: Variant::Orbgrand,
            ..Self::ordept(q_max, 1, q_max)
        }
    }

    pub fn chase2(p: u8) -> Self {
        Self {
            variant: Variant::Chase2(p),
            ..Self::default()
        }
    }

    pub fn hard_decision() -> Self {
        Self {
            variant: Variant::HardDecision,
            ..Self::default()
        }
    }

    pub fn with_shot_size(mut self, shot_size: usize) -> Self {
        self.shot_size = shot_size;
        self
    }

    pub fn with_parity_split(mut self, on: bool) -> Self {
        self.use_parity_split = on;
        self
    }

    pub fn with_soft_output(mut self, on: bool) -> Self {
        self.soft_output = on;
        self
    }

    pub fn with_shot_batching(mut self, on: bool) -> Self {
        self.shot_batching = on;
        self
    }

    /// Checks the configuration against `code`.
    pub fn validate(&self, code: &LinearCode) -> Result<()> {
        if self.q_max == 0 || self.c_max == 0 || self.shot_size == 0 {
            return Err(Error::Config(
                "q_max, c_max and shot_size must be at least 1".into(),
            ));
        }
        match self.variant {
            Variant::OrdeptX(x) => {
                let bch = code.bch_structure().ok_or_else(|| {
                    Error::NotBch(format!("{} (ORDEPTx needs a BCH code)", code.name()))
                })?;
                if !(1..=3).contains(&x) || x as usize >= bch.t() {
                    return Err(Error::Config(format!(
                        "ORDEPTx needs 1 <= x <= 3 and x < t (x = {x}, t = {})",
                        bch.t()
                    )));
                }
            }
            Variant::Chase2(p) => {
                code.bch_structure().ok_or_else(|| {
                    Error::NotBch(format!("{} (Chase II needs a BCH code)", code.name()))
                })?;
                if p > 16 || p as usize > code.n() {
                    return Err(Error::Config(format!(
                        "Chase II needs p <= min(16, n), got {p}"
                    )));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Parity offset for the query list, if the list should be split.
    pub(crate) fn split_offset(&self, code: &LinearCode) -> Option<usize> {
        if !self.use_parity_split || !code.is_extended() {
            return None;
        }
        match self.variant {
            Variant::Ordept | Variant::OrdeptX(1) => Some(1),
            Variant::Orbgrand => Some(0),
            _ => None,
        }
    }
}

/// A codeword found during the search.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub codeword: Vec<u8>,
    /// 1-based index of the query that produced it (0 when the hard decisions
    /// were already a codeword).
    pub query_index: usize,
    /// Flipped positions relative to the hard decisions, sorted.
    pub error_pattern: Vec<usize>,
    pub analog_weight: f64,
    pub sq_distance: f64,
}

impl Candidate {
    pub(crate) fn new(rx: &Received, codeword: Vec<u8>, error_pattern: Vec<usize>, query_index: usize) -> Self {
        let analog_weight = analog_weight(&error_pattern, &rx.llr);
        let sq_distance = sq_distance(&rx.y, &codeword);
        Self {
            codeword,
            query_index,
            error_pattern,
            analog_weight,
            sq_distance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeStatus {
    Decoded,
    Abandoned,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    /// Index into `candidates` of the selected codeword.
    pub best: Option<usize>,
    /// Candidates in order of discovery.
    pub candidates: Vec<Candidate>,
    pub queries_used: usize,
    pub shots_used: usize,
    pub status: DecodeStatus,
}

impl DecodeResult {
    pub(crate) fn finish(candidates: Vec<Candidate>, best: Option<usize>, queries: usize, shot_size: usize) -> Self {
        let status = if best.is_some() {
            DecodeStatus::Decoded
        } else {
            DecodeStatus::Abandoned
        };
        Self {
            best,
            candidates,
            queries_used: queries,
            shots_used: queries.div_ceil(shot_size),
            status,
        }
    }

    pub fn best(&self) -> Option<&Candidate> {
        self.best.map(|i| &self.candidates[i])
    }

    /// The selected codeword, if any.
    pub fn codeword(&self) -> Option<&[u8]> {
        self.best().map(|c| c.codeword.as_slice())
    }

    pub fn is_decoded(&self) -> bool {
        self.status == DecodeStatus::Decoded
    }
}

/// Sum of `|llr|` over `positions`.
pub fn analog_weight(positions: &[usize], llr: &[f64]) -> f64 {
    positions.iter().map(|&j| llr[j].abs()).sum()
}

/// Squared Euclidean distance between `y` and the BPSK image of `c`.
pub fn sq_distance(y: &[f64], c: &[u8]) -> f64 {
    y.iter()
        .zip(c)
        .map(|(&v, &b)| {
            let d = v - (2.0 * f64::from(b) - 1.0);
            d * d
        })
        .sum()
}

/// Index of the minimum of `key`, ties to the earliest.
pub(crate) fn argmin_by(candidates: &[Candidate], key: impl Fn(&Candidate) -> f64) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, c) in candidates.iter().enumerate() {
        let k = key(c);
        if best.is_none_or(|(_, b)| k < b) {
            best = Some((i, k));
        }
    }
    best.map(|(i, _)| i)
}

/// Hard-decision decoding: the received word if it is a codeword.
pub fn hard_decision_decode(rx: &Received, code: &LinearCode, cfg: &DecoderConfig) -> Result<DecodeResult> {
    let s = code.syndrome(&rx.hard)?;
    if s.is_zero() {
        let c = Candidate::new(rx, rx.hard.clone(), Vec::new(), 0);
        Ok(DecodeResult::finish(vec![c], Some(0), 0, cfg.shot_size))
    } else {
        Ok(DecodeResult::finish(Vec::new(), None, 0, cfg.shot_size))
    }
}

/// A code, a configuration and the matching query list, ready for repeated use.
#[derive(Debug, Clone)]
pub struct Decoder {
    code: Arc<LinearCode>,
    cfg: DecoderConfig,
    list: Option<Arc<QueryList>>,
}

impl Decoder {
    pub fn new(code: Arc<LinearCode>, cfg: DecoderConfig) -> Result<Self> {
        cfg.validate(&code)?;
        let list = match cfg.variant {
            Variant::Ordept | Variant::OrdeptX(_) | Variant::Orbgrand => {
                Some(cached_list(code.n(), cfg.q_max, cfg.split_offset(&code)))
            }
            Variant::Chase2(_) | Variant::HardDecision => None,
        };
        Ok(Self { code, cfg, list })
    }

    /// Uses a caller-supplied list instead of the generated one.
    pub fn with_list(code: Arc<LinearCode>, cfg: DecoderConfig, list: Arc<QueryList>) -> Result<Self> {
        cfg.validate(&code)?;
        if list.max_rank() > code.n() {
            return Err(Error::RankOutOfRange {
                rank: list.max_rank(),
                n: code.n(),
            });
        }
        Ok(Self {
            code,
            cfg,
            list: Some(list),
        })
    }

    pub fn code(&self) -> &Arc<LinearCode> {
        &self.code
    }

    pub fn config(&self) -> &DecoderConfig {
        &self.cfg
    }

    pub fn list(&self) -> Option<&Arc<QueryList>> {
        self.list.as_ref()
    }

    pub fn decode(&self, rx: &Received) -> Result<DecodeResult> {
        let code = &*self.code;
        let cfg = &self.cfg;
        match cfg.variant {
            Variant::Ordept => ordept_decode(rx, code, self.list_ref(), cfg),
            Variant::OrdeptX(_) => ordeptx_decode(rx, code, self.list_ref(), cfg),
            Variant::Orbgrand => orbgrand_decode(rx, code, self.list_ref(), cfg),
            Variant::Chase2(p) => chase2_decode(rx, code, p, cfg),
            Variant::HardDecision => hard_decision_decode(rx, code, cfg),
        }
    }

    fn list_ref(&self) -> &QueryList {
        self.list.as_deref().expect("list present for list-based variants")
    }
}
