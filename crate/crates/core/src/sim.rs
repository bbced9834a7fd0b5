//! Seeded Monte-Carlo simulation, result records, CSV I/O and the latency model.

use std::sync::Arc;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use crate::channel::{frame_rng, transmit, ChannelParams, SnrMetric};
use crate::code::LinearCode;
use crate::decoders::{Decoder, DecoderConfig};
use crate::error::{Error, Result};
use crate::turbo::{product_decode_iterative, product_encode, TurboConfig};

/// Frames simulated between stop-rule checks. Fixed so that results do not
/// depend on the number of workers.
pub const DEFAULT_BATCH: usize = 256;

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub code: Arc<LinearCode>,
    pub decoder: DecoderConfig,
    /// Sweep points in dB.
    pub sweep_db: Vec<f64>,
    pub metric: SnrMetric,
    pub max_frames: u64,
    /// Stop a point once this many block errors are seen (0 disables the rule).
    pub min_block_errors: u64,
    pub seed: u64,
    /// Index of the first frame, for sharded runs.
    pub first_frame: u64,
    pub batch_size: usize,
    /// Worker threads (`None` uses the global pool).
    pub workers: Option<usize>,
}

impl SimConfig {
    pub fn new(code: Arc<LinearCode>, decoder: DecoderConfig, sweep_db: Vec<f64>) -> Self {
        Self {
            code,
            decoder,
            sweep_db,
            metric: SnrMetric::EbN0,
            max_frames: 10_000,
            min_block_errors: 0,
            seed: 1,
            first_frame: 0,
            batch_size: DEFAULT_BATCH,
            workers: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sweep_db.is_empty() {
            return Err(Error::Config("empty SNR sweep".into()));
        }
        if self.max_frames == 0 || self.batch_size == 0 {
            return Err(Error::Config("max_frames and batch_size must be positive".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be positive".into()));
        }
        self.decoder.validate(&self.code)
    }
}

/// Counters and derived rates for one sweep point.
#[derive(Debug, Clone)]
pub struct SimRecord {
    pub snr_db: f64,
    pub frames: u64,
    pub bit_errors: u64,
    pub block_errors: u64,
    pub ber: f64,
    pub bler: f64,
    pub avg_queries: f64,
    pub avg_shots: f64,
    pub abandonment_rate: f64,
    pub wall_time_s: f64,
    /// Information bits per frame.
    pub info_bits: u64,
    pub total_queries: u64,
    pub total_shots: u64,
    pub abandoned: u64,
    /// Decoder invocations behind the query, shot and abandonment averages
    /// (equal to `frames` except for product codes, which count components).
    pub decodes: u64,
}

impl SimRecord {
    pub fn empty(snr_db: f64, info_bits: u64) -> Self {
        Self {
            snr_db,
            frames: 0,
            bit_errors: 0,
            block_errors: 0,
            ber: 0.0,
            bler: 0.0,
            avg_queries: 0.0,
            avg_shots: 0.0,
            abandonment_rate: 0.0,
            wall_time_s: 0.0,
            info_bits,
            total_queries: 0,
            total_shots: 0,
            abandoned: 0,
            decodes: 0,
        }
    }

    fn refresh(&mut self) {
        let f = self.frames.max(1) as f64;
        let d = self.decodes.max(1) as f64;
        self.ber = self.bit_errors as f64 / (f * self.info_bits.max(1) as f64);
        self.bler = self.block_errors as f64 / f;
        self.avg_queries = self.total_queries as f64 / d;
        self.avg_shots = self.total_shots as f64 / d;
        self.abandonment_rate = self.abandoned as f64 / d;
    }

    /// Equality of everything except wall time.
    pub fn same_counters(&self, other: &Self) -> bool {
        self.snr_db.to_bits() == other.snr_db.to_bits()
            && self.frames == other.frames
            && self.bit_errors == other.bit_errors
            && self.block_errors == other.block_errors
            && self.total_queries == other.total_queries
            && self.total_shots == other.total_shots
            && self.abandoned == other.abandoned
            && self.decodes == other.decodes
    }

    /// Sums the counters of two runs of the same point over disjoint frames.
    pub fn merge(&self, other: &Self) -> Result<Self> {
        if self.snr_db.to_bits() != other.snr_db.to_bits() || self.info_bits != other.info_bits {
            return Err(Error::Config("merging records of different points".into()));
        }
        let mut r = self.clone();
        r.frames += other.frames;
        r.bit_errors += other.bit_errors;
        r.block_errors += other.block_errors;
        r.total_queries += other.total_queries;
        r.total_shots += other.total_shots;
        r.abandoned += other.abandoned;
        r.decodes += other.decodes;
        r.wall_time_s += other.wall_time_s;
        r.refresh();
        Ok(r)
    }

    /// Wilson 95% interval for the block error rate.
    pub fn bler_interval(&self) -> (f64, f64) {
        wilson_interval(self.block_errors, self.frames)
    }

    /// Wilson 95% interval for the bit error rate.
    pub fn ber_interval(&self) -> (f64, f64) {
        wilson_interval(self.bit_errors, self.frames * self.info_bits)
    }
}

/// Wilson score interval at 95% confidence.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054_f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let denom = 1.0 + z * z / n;
    let centre = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

#[derive(Default, Clone, Copy)]
struct Tally {
    frames: u64,
    bit_errors: u64,
    block_errors: u64,
    queries: u64,
    shots: u64,
    abandoned: u64,
    decodes: u64,
}

impl Tally {
    fn add(mut self, o: Tally) -> Tally {
        self.frames += o.frames;
        self.bit_errors += o.bit_errors;
        self.block_errors += o.block_errors;
        self.queries += o.queries;
        self.shots += o.shots;
        self.abandoned += o.abandoned;
        self.decodes += o.decodes;
        self
    }

    fn into_record(self, snr_db: f64, info_bits: u64, wall: f64) -> SimRecord {
        let mut r = SimRecord::empty(snr_db, info_bits);
        r.frames = self.frames;
        r.bit_errors = self.bit_errors;
        r.block_errors = self.block_errors;
        r.total_queries = self.queries;
        r.total_shots = self.shots;
        r.abandoned = self.abandoned;
        r.decodes = self.decodes;
        r.wall_time_s = wall;
        r.refresh();
        r
    }
}

pub(crate) fn random_bits<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(len);
    while out.len() < len {
        let word: u64 = rng.random();
        let take = (len - out.len()).min(64);
        out.extend((0..take).map(|i| (word >> i & 1) as u8));
    }
    out
}

fn with_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Runs frames in fixed batches until `max_frames` or `min_block_errors`.
fn run_point(
    first: u64,
    max_frames: u64,
    min_block_errors: u64,
    batch: usize,
    frame: impl Fn(u64) -> Result<Tally> + Sync,
) -> Result<Tally> {
    let mut total = Tally::default();
    let mut next = first;
    let end = first + max_frames;
    while next < end {
        let stop = (next + batch as u64).min(end);
        let t = (next..stop)
            .into_par_iter()
            .map(&frame)
            .try_reduce(Tally::default, |a, b| Ok(a.add(b)))?;
        total = total.add(t);
        next = stop;
        if min_block_errors > 0 && total.block_errors >= min_block_errors {
            break;
        }
    }
    Ok(total)
}

/// Encodes random information words, transmits them and decodes, one record
/// per sweep point. Frame `i` draws all of its randomness from
/// `frame_rng(seed, i)`, so every point sees the same information words and
/// normalized noise.
pub fn run_monte_carlo(cfg: &SimConfig) -> Result<Vec<SimRecord>> {
    cfg.validate()?;
    let decoder = Decoder::new(cfg.code.clone(), cfg.decoder.clone())?;
    let code = &*cfg.code;
    let k = code.k();
    with_pool(cfg.workers, || {
        cfg.sweep_db
            .iter()
            .map(|&db| {
                let params = ChannelParams::from_db(db, cfg.metric, code.rate());
                let start = Instant::now();
                let tally = run_point(cfg.first_frame, cfg.max_frames, cfg.min_block_errors, cfg.batch_size, |i| {
                    let mut rng = frame_rng(cfg.seed, i);
                    let info = random_bits(&mut rng, k);
                    let c = code.encode(&info)?;
                    let frame = transmit(&c, &params, &mut rng);
                    let res = decoder.decode(&frame.received)?;
                    let decoded = res.codeword().unwrap_or(&frame.received.hard);
                    let bit_errors = code
                        .extract_info(decoded)
                        .iter()
                        .zip(&info)
                        .filter(|(a, b)| a != b)
                        .count() as u64;
                    Ok(Tally {
                        frames: 1,
                        bit_errors,
                        block_errors: u64::from(res.codeword() != Some(&c[..])),
                        queries: res.queries_used as u64,
                        shots: res.shots_used as u64,
                        abandoned: u64::from(!res.is_decoded()),
                        decodes: 1,
                    })
                })?;
                Ok(tally.into_record(db, k as u64, start.elapsed().as_secs_f64()))
            })
            .collect()
    })?
}

#[derive(Debug, Clone)]
pub struct ProductSimConfig {
    pub row_code: Arc<LinearCode>,
    pub col_code: Arc<LinearCode>,
    /// Component decoder; soft output is switched on automatically.
    pub decoder: DecoderConfig,
    pub turbo: TurboConfig,
    pub sweep_db: Vec<f64>,
    pub metric: SnrMetric,
    pub max_frames: u64,
    pub min_block_errors: u64,
    pub seed: u64,
    pub first_frame: u64,
    pub batch_size: usize,
    pub workers: Option<usize>,
}

impl ProductSimConfig {
    pub fn new(code: Arc<LinearCode>, decoder: DecoderConfig, turbo: TurboConfig, sweep_db: Vec<f64>) -> Self {
        Self {
            row_code: code.clone(),
            col_code: code,
            decoder,
            turbo,
            sweep_db,
            metric: SnrMetric::EbN0,
            max_frames: 100,
            min_block_errors: 0,
            seed: 1,
            first_frame: 0,
            batch_size: 16,
            workers: None,
        }
    }
}

/// Product-code results for one sweep point. `record` describes the final
/// iteration; its query, shot and abandonment figures are per component decode.
#[derive(Debug, Clone)]
pub struct ProductRecord {
    pub record: SimRecord,
    pub bit_errors_per_iteration: Vec<u64>,
    pub block_errors_per_iteration: Vec<u64>,
}

impl ProductRecord {
    pub fn ber_per_iteration(&self) -> Vec<f64> {
        let bits = (self.record.frames * self.record.info_bits).max(1) as f64;
        self.bit_errors_per_iteration
            .iter()
            .map(|&e| e as f64 / bits)
            .collect()
    }
}

/// Monte-Carlo simulation of iterative product-code decoding.
pub fn run_product(cfg: &ProductSimConfig) -> Result<Vec<ProductRecord>> {
    if cfg.sweep_db.is_empty() || cfg.max_frames == 0 || cfg.batch_size == 0 || cfg.turbo.iterations == 0 {
        return Err(Error::Config(
            "product simulation needs a sweep, frames, a batch size and iterations".into(),
        ));
    }
    let dcfg = cfg.decoder.clone().with_soft_output(true);
    let row_dec = Decoder::new(cfg.row_code.clone(), dcfg.clone())?;
    let col_dec = Decoder::new(cfg.col_code.clone(), dcfg)?;
    let (k1, k2) = (cfg.row_code.k(), cfg.col_code.k());
    let rate = cfg.row_code.rate() * cfg.col_code.rate();
    let iters = cfg.turbo.iterations;

    with_pool(cfg.workers, || {
        cfg.sweep_db
            .iter()
            .map(|&db| {
                let params = ChannelParams::from_db(db, cfg.metric, rate);
                let start = Instant::now();
                let per_frame = |i: u64| -> Result<(Tally, Vec<u64>, Vec<u64>)> {
                    let mut rng = frame_rng(cfg.seed, i);
                    let info: Vec<Vec<u8>> = (0..k2).map(|_| random_bits(&mut rng, k1)).collect();
                    let pc = product_encode(&info, cfg.row_code.clone(), cfg.col_code.clone())?;
                    let frame = transmit(&pc.flatten(), &params, &mut rng);
                    let n1 = pc.cols();
                    let y0: Vec<Vec<f64>> = frame.received.y.chunks(n1).map(<[f64]>::to_vec).collect();
                    let out = product_decode_iterative(&y0, params.sigma, &row_dec, &col_dec, &cfg.turbo)?;
                    let bit_err: Vec<u64> = out
                        .info_per_iteration
                        .iter()
                        .map(|dec| {
                            dec.iter()
                                .flatten()
                                .zip(info.iter().flatten())
                                .filter(|(a, b)| a != b)
                                .count() as u64
                        })
                        .collect();
                    let blk_err: Vec<u64> = out
                        .hard_per_iteration
                        .iter()
                        .map(|h| u64::from(*h != pc.grid))
                        .collect();
                    let t = Tally {
                        frames: 1,
                        bit_errors: *bit_err.last().unwrap(),
                        block_errors: *blk_err.last().unwrap(),
                        queries: out.queries as u64,
                        shots: out.shots as u64,
                        abandoned: out.abandoned_components as u64,
                        decodes: out.component_decodes as u64,
                    };
                    Ok((t, bit_err, blk_err))
                };

                let mut total = Tally::default();
                let mut bits_it = vec![0u64; iters];
                let mut blks_it = vec![0u64; iters];
                let mut next = cfg.first_frame;
                let end = cfg.first_frame + cfg.max_frames;
                while next < end {
                    let stop = (next + cfg.batch_size as u64).min(end);
                    let results: Vec<_> = (next..stop)
                        .into_par_iter()
                        .map(per_frame)
                        .collect::<Result<_>>()?;
                    for (t, b, k) in results {
                        total = total.add(t);
                        for it in 0..iters {
                            bits_it[it] += b[it];
                            blks_it[it] += k[it];
                        }
                    }
                    next = stop;
                    if cfg.min_block_errors > 0 && total.block_errors >= cfg.min_block_errors {
                        break;
                    }
                }
                Ok(ProductRecord {
                    record: total.into_record(db, (k1 * k2) as u64, start.elapsed().as_secs_f64()),
                    bit_errors_per_iteration: bits_it,
                    block_errors_per_iteration: blks_it,
                })
            })
            .collect()
    })?
}

fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

/// Clock cycles of a fixed-latency implementation:
/// `ceil(q_max / shot_size) + 2 + ceil(log2 n)`, plus `ceil(log2 c_max)` when
/// several candidates are kept.
pub fn estimate_latency_cycles(q_max: usize, shot_size: usize, n: usize, c_max: Option<usize>) -> usize {
    assert!(shot_size > 0, "shot size must be positive");
    q_max.div_ceil(shot_size) + 2 + ceil_log2(n) + c_max.map_or(0, ceil_log2)
}

pub const CSV_COLUMNS: [&str; 10] = [
    "snr_db",
    "frames",
    "bit_errors",
    "block_errors",
    "ber",
    "bler",
    "avg_queries",
    "avg_shots",
    "abandonment_rate",
    "wall_time_s",
];

/// CSV with a header and one row per record. Rates and averages use
/// scientific notation with 16 significant digits.
pub fn emit_csv(records: &[SimRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(CSV_COLUMNS).map_err(io)?;
    for r in records {
        w.write_record([
            format!("{}", r.snr_db),
            r.frames.to_string(),
            r.bit_errors.to_string(),
            r.block_errors.to_string(),
            format!("{:.15e}", r.ber),
            format!("{:.15e}", r.bler),
            format!("{:.15e}", r.avg_queries),
            format!("{:.15e}", r.avg_shots),
            format!("{:.15e}", r.abandonment_rate),
            format!("{:.6}", r.wall_time_s),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

/// Parses CSV written by [`emit_csv`]. `info_bits` restores the bit counter
/// base; query, shot and abandonment totals are recovered assuming one decode
/// per frame.
pub fn parse_csv(text: &str, info_bits: u64) -> Result<Vec<SimRecord>> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let headers = rd.headers().map_err(|e| Error::MalformedHeader(e.to_string()))?.clone();
    if headers.iter().collect::<Vec<_>>() != CSV_COLUMNS {
        return Err(Error::MalformedHeader(format!("unexpected columns {headers:?}")));
    }
    rd.records()
        .map(|row| {
            let row = row.map_err(|e| Error::MalformedRow(e.to_string()))?;
            let f = |i: usize| -> Result<f64> {
                row[i]
                    .parse::<f64>()
                    .map_err(|e| Error::MalformedRow(format!("{}: {e}", CSV_COLUMNS[i])))
            };
            let u = |i: usize| -> Result<u64> {
                row[i]
                    .parse::<u64>()
                    .map_err(|e| Error::MalformedRow(format!("{}: {e}", CSV_COLUMNS[i])))
            };
            let mut r = SimRecord::empty(f(0)?, info_bits);
            r.frames = u(1)?;
            r.bit_errors = u(2)?;
            r.block_errors = u(3)?;
            r.decodes = r.frames;
            let fr = r.frames as f64;
            r.total_queries = (f(6)? * fr).round() as u64;
            r.total_shots = (f(7)? * fr).round() as u64;
            r.abandoned = (f(8)? * fr).round() as u64;
            r.refresh();
            r.wall_time_s = f(9)?;
            Ok(r)
        })
        .collect()
}
