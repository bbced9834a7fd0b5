//! BPSK over a real AWGN channel: modulation, LLRs, hard decisions and the
//! reliability ordering.
//!
//! Bit `c` maps to symbol `2c - 1`, so a positive LLR favours bit 1. An exact
//! zero output is decided as bit 1.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// How a dB operating point is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SnrMetric {
    /// Energy per information bit over noise density; accounts for the code rate.
    #[default]
    EbN0,
    /// Energy per transmitted symbol over noise density.
    EsN0,
}

impl std::str::FromStr for SnrMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ebn0" => Ok(Self::EbN0),
            "snr" | "esn0" => Ok(Self::EsN0),
            other => Err(Error::Config(format!("unknown channel metric {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub sigma: f64,
    pub ebn0_db: f64,
    pub rate: f64,
}

impl ChannelParams {
    /// `sigma = sqrt(1 / (2 R 10^(EbN0/10)))` for unit-energy BPSK.
    pub fn from_ebn0(ebn0_db: f64, rate: f64) -> Self {
        let sigma = (1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0))).sqrt();
        Self {
            sigma,
            ebn0_db,
            rate,
        }
    }

    pub fn from_esn0(esn0_db: f64, rate: f64) -> Self {
        Self::from_ebn0(esn0_db - 10.0 * rate.log10(), rate)
    }

    pub fn from_db(db: f64, metric: SnrMetric, rate: f64) -> Self {
        match metric {
            SnrMetric::EbN0 => Self::from_ebn0(db, rate),
            SnrMetric::EsN0 => Self::from_esn0(db, rate),
        }
    }

    pub fn from_sigma(sigma: f64, rate: f64) -> Self {
        let ebn0_db = 10.0 * (1.0 / (2.0 * rate * sigma * sigma)).log10();
        Self {
            sigma,
            ebn0_db,
            rate,
        }
    }

    pub fn esn0_db(&self) -> f64 {
        self.ebn0_db + 10.0 * self.rate.log10()
    }
}

/// What the receiver knows about one channel use.
#[derive(Debug, Clone, PartialEq)]
pub struct Received {
    /// Real channel outputs (or any positive multiple of the LLRs).
    pub y: Vec<f64>,
    pub llr: Vec<f64>,
    /// Hard decisions.
    pub hard: Vec<u8>,
    /// Positions sorted by ascending `|llr|`; `order[r - 1]` is the position of rank `r`.
    pub order: Vec<usize>,
}

impl Received {
    pub fn from_channel(y: Vec<f64>, sigma: f64) -> Self {
        let llr = compute_llr(&y, sigma);
        Self::assemble(y, llr)
    }

    /// Builds a receiver view from LLRs alone. The soft values are taken as
    /// `llr / 2`, which is exact at `sigma = 1` and preserves every
    /// Euclidean-distance ranking at other noise levels.
    pub fn from_llr(llr: Vec<f64>) -> Self {
        let y = llr.iter().map(|l| l / 2.0).collect();
        Self::assemble(y, llr)
    }

    fn assemble(y: Vec<f64>, llr: Vec<f64>) -> Self {
        let hard = hard_decision(&y);
        let order = reliability_permutation(&llr);
        Self { y, llr, hard, order }
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }
}

/// One transmitted codeword and its channel observation.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub codeword: Vec<u8>,
    pub symbols: Vec<f64>,
    pub received: Received,
}

#[inline]
pub fn modulate(c: &[u8]) -> Vec<f64> {
    c.iter().map(|&b| 2.0 * f64::from(b) - 1.0).collect()
}

/// Sends `c` through the channel, drawing noise from `rng`.
pub fn transmit<R: Rng + ?Sized>(c: &[u8], params: &ChannelParams, rng: &mut R) -> Frame {
    debug_assert!(params.sigma > 0.0);
    let symbols = modulate(c);
    let y = symbols
        .iter()
        .map(|&x| x + params.sigma * rng.sample::<f64, _>(StandardNormal))
        .collect();
    Frame {
        codeword: c.to_vec(),
        symbols,
        received: Received::from_channel(y, params.sigma),
    }
}

/// `llr_i = 2 y_i / sigma^2`.
pub fn compute_llr(y: &[f64], sigma: f64) -> Vec<f64> {
    let scale = 2.0 / (sigma * sigma);
    y.iter().map(|&v| scale * v).collect()
}

pub fn hard_decision(y: &[f64]) -> Vec<u8> {
    y.iter().map(|&v| u8::from(v >= 0.0)).collect()
}

/// Stable sort of positions by `|llr|` ascending; ties keep the lower index first.
pub fn reliability_permutation(llr: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..llr.len()).collect();
    idx.sort_by(|&a, &b| llr[a].abs().total_cmp(&llr[b].abs()));
    idx
}

/// Independent random stream for frame `index` under `seed`.
pub fn frame_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
