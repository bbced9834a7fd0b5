//! Product codes: encoding, Chase-Pyndiah soft-output updates with fixed or
//! adaptive hybrid factors, and iterative row/column decoding.

use std::sync::Arc;

use rayon::prelude::*;

use crate::channel::{hard_decision, Received};
use crate::code::LinearCode;
use crate::decoders::{analog_weight, sq_distance, Candidate, Decoder};
use crate::error::{Error, Result};

/// Per-half-iteration `alpha` and `beta`. Sequences extend by repeating
/// their final value.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorSchedule {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

impl Default for FactorSchedule {
    fn default() -> Self {
        Self {
            alpha: vec![0.2, 0.3, 0.5, 0.7, 0.9, 1.0],
            beta: vec![0.2, 0.4, 0.6, 0.8, 1.0],
        }
    }
}

fn at(v: &[f64], j: usize) -> f64 {
    v[j.min(v.len() - 1)]
}

impl FactorSchedule {
    pub fn new(alpha: Vec<f64>, beta: Vec<f64>) -> Result<Self> {
        let s = Self { alpha, beta };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha.is_empty() || self.beta.is_empty() {
            return Err(Error::Config("alpha and beta schedules must be non-empty".into()));
        }
        if self.alpha.iter().any(|&a| !(a > 0.0 && a <= 1.0)) {
            return Err(Error::Config("alpha values must lie in (0, 1]".into()));
        }
        if self.beta.iter().any(|&b| !(b >= 0.0)) {
            return Err(Error::Config("beta values must be non-negative".into()));
        }
        Ok(())
    }

    /// Factors for half-iteration `j` (0-based).
    pub fn factors(&self, j: usize) -> (f64, f64) {
        (at(&self.alpha, j), at(&self.beta, j))
    }
}

/// Limits and decrease coefficients for one half-iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveStep {
    pub a_alpha: f64,
    pub b_alpha: f64,
    pub k_alpha: f64,
    pub a_beta: f64,
    pub b_beta: f64,
    pub k_beta: f64,
}

/// Per-half-iteration adaptive parameters. Each list extends by repeating its
/// final value.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaptiveParams {
    pub a_alpha: Vec<f64>,
    pub b_alpha: Vec<f64>,
    pub k_alpha: Vec<f64>,
    pub a_beta: Vec<f64>,
    pub b_beta: Vec<f64>,
    pub k_beta: Vec<f64>,
    /// Multiplies the analog weight before it enters the factor formula.
    pub eps_scale: f64,
}

impl AdaptiveParams {
    pub fn validate(&self) -> Result<()> {
        let lists = [
            &self.a_alpha,
            &self.b_alpha,
            &self.k_alpha,
            &self.a_beta,
            &self.b_beta,
            &self.k_beta,
        ];
        if lists.iter().any(|l| l.is_empty()) {
            return Err(Error::Config("adaptive parameter lists must be non-empty".into()));
        }
        let len = lists.iter().map(|l| l.len()).max().unwrap();
        for j in 0..len {
            let s = self.step(j);
            if s.b_alpha > s.a_alpha || s.b_beta > s.a_beta {
                return Err(Error::Config(format!("half-iteration {j}: lower limit above upper limit")));
            }
            if s.k_alpha < 0.0 || s.k_beta < 0.0 {
                return Err(Error::Config(format!("half-iteration {j}: negative decrease coefficient")));
            }
        }
        if !(self.eps_scale >= 0.0) {
            return Err(Error::Config("eps_scale must be non-negative".into()));
        }
        Ok(())
    }

    pub fn step(&self, j: usize) -> AdaptiveStep {
        AdaptiveStep {
            a_alpha: at(&self.a_alpha, j),
            b_alpha: at(&self.b_alpha, j),
            k_alpha: at(&self.k_alpha, j),
            a_beta: at(&self.a_beta, j),
            b_beta: at(&self.b_beta, j),
            k_beta: at(&self.k_beta, j),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Factors {
    Fixed(FactorSchedule),
    Adaptive(AdaptiveParams),
}

impl Default for Factors {
    fn default() -> Self {
        Factors::Fixed(FactorSchedule::default())
    }
}

/// `alpha = a - k * (0.5 * eps + 0.5 * (i_best - 1) / 2)`, clamped below at `b`;
/// the same for `beta`. `i_best` is the 1-based list rank of the best candidate.
pub fn adaptive_hybrid_factors(eps_best: f64, i_best: usize, p: &AdaptiveStep) -> (f64, f64) {
    let d = 0.5 * eps_best + 0.5 * (i_best.saturating_sub(1) as f64) / 2.0;
    let alpha = (p.a_alpha - p.k_alpha * d).max(p.b_alpha);
    let beta = (p.a_beta - p.k_beta * d).max(p.b_beta);
    (alpha, beta)
}

/// Chase-Pyndiah soft output for one component word.
///
/// The best candidate minimizes `|y_prev - x|^2`. Bit `i` gets
/// `x_best,i * (d(c*) - d(best)) / 4` when a competitor `c*` differs from the
/// best at `i`, else `beta * x_best,i`; the result `r_i` gives
/// `y_next,i = y0_i + alpha * (r_i - y0_i)`.
pub fn pyndiah_update(
    y0: &[f64],
    y_prev: &[f64],
    candidates: &[Candidate],
    alpha: f64,
    beta: f64,
) -> Result<Vec<f64>> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidateList);
    }
    let n = y0.len();
    if y_prev.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: y_prev.len(),
        });
    }
    if let Some(c) = candidates.iter().find(|c| c.codeword.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: c.codeword.len(),
        });
    }
    let dist: Vec<f64> = candidates
        .iter()
        .map(|c| sq_distance(y_prev, &c.codeword))
        .collect();
    // candidate indices by ascending distance, ties to the earlier candidate
    let mut by_dist: Vec<usize> = (0..candidates.len()).collect();
    by_dist.sort_by(|&a, &b| dist[a].total_cmp(&dist[b]));
    let best = by_dist[0];
    let cb = &candidates[best].codeword;

    Ok((0..n)
        .map(|i| {
            let x = 2.0 * f64::from(cb[i]) - 1.0;
            let competitor = by_dist[1..]
                .iter()
                .find(|&&k| candidates[k].codeword[i] != cb[i]);
            let r = match competitor {
                Some(&k) => x * (dist[k] - dist[best]) / 4.0,
                None => beta * x,
            };
            y0[i] + alpha * (r - y0[i])
        })
        .collect())
}

/// An `n2 x n1` array whose rows are row-code words and columns are
/// column-code words.
#[derive(Debug, Clone)]
pub struct ProductCodeword {
    pub grid: Vec<Vec<u8>>,
    pub row_code: Arc<LinearCode>,
    pub col_code: Arc<LinearCode>,
}

impl ProductCodeword {
    pub fn rows(&self) -> usize {
        self.grid.len()
    }

    pub fn cols(&self) -> usize {
        self.grid.first().map_or(0, Vec::len)
    }

    /// Row-major flattening.
    pub fn flatten(&self) -> Vec<u8> {
        self.grid.concat()
    }

    pub fn is_consistent(&self) -> bool {
        self.grid.iter().all(|r| self.row_code.is_codeword(r))
            && (0..self.cols()).all(|j| {
                let col: Vec<u8> = self.grid.iter().map(|r| r[j]).collect();
                self.col_code.is_codeword(&col)
            })
    }
}

/// Encodes a `k2 x k1` information array: rows first, then columns.
pub fn product_encode(
    info: &[Vec<u8>],
    row_code: Arc<LinearCode>,
    col_code: Arc<LinearCode>,
) -> Result<ProductCodeword> {
    let (k1, k2) = (row_code.k(), col_code.k());
    if info.len() != k2 || info.iter().any(|r| r.len() != k1) {
        return Err(Error::DimensionMismatch(format!(
            "information array must be {k2} x {k1}"
        )));
    }
    let rows: Vec<Vec<u8>> = info
        .iter()
        .map(|r| row_code.encode(r))
        .collect::<Result<_>>()?;
    let n1 = row_code.n();
    let n2 = col_code.n();
    let mut grid = vec![vec![0u8; n1]; n2];
    for j in 0..n1 {
        let col_info: Vec<u8> = rows.iter().map(|r| r[j]).collect();
        let col = col_code.encode(&col_info)?;
        for (i, b) in col.into_iter().enumerate() {
            grid[i][j] = b;
        }
    }
    Ok(ProductCodeword {
        grid,
        row_code,
        col_code,
    })
}

/// Information array of a product codeword (or of any `n2 x n1` hard grid).
pub fn product_extract_info(grid: &[Vec<u8>], row_code: &LinearCode, col_code: &LinearCode) -> Vec<Vec<u8>> {
    col_code
        .info_positions()
        .iter()
        .map(|&i| row_code.info_positions().iter().map(|&j| grid[i][j]).collect())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HalfOrder {
    #[default]
    RowsFirst,
    ColumnsFirst,
}

#[derive(Debug, Clone)]
pub struct TurboConfig {
    pub iterations: usize,
    pub factors: Factors,
    pub order: HalfOrder,
}

impl Default for TurboConfig {
    fn default() -> Self {
        Self {
            iterations: 4,
            factors: Factors::default(),
            order: HalfOrder::RowsFirst,
        }
    }
}

/// Hard decisions and information bits after each full iteration.
#[derive(Debug, Clone)]
pub struct TurboOutput {
    pub hard_per_iteration: Vec<Vec<Vec<u8>>>,
    pub info_per_iteration: Vec<Vec<Vec<u8>>>,
    pub soft: Vec<Vec<f64>>,
    /// Component decodes that produced no candidate.
    pub abandoned_components: usize,
    pub queries: usize,
    pub shots: usize,
    pub component_decodes: usize,
}

impl TurboOutput {
    pub fn final_info(&self) -> &[Vec<u8>] {
        self.info_per_iteration.last().map_or(&[], Vec::as_slice)
    }
}

struct ComponentStats {
    abandoned: usize,
    queries: usize,
    shots: usize,
}

fn decode_component(
    dec: &Decoder,
    y0: &[f64],
    y_prev: &[f64],
    sigma: f64,
    factors: &Factors,
    j: usize,
) -> Result<(Vec<f64>, ComponentStats)> {
    let rx = Received::from_channel(y_prev.to_vec(), sigma);
    let res = dec.decode(&rx)?;
    let mut stats = ComponentStats {
        abandoned: 0,
        queries: res.queries_used,
        shots: res.shots_used,
    };
    if res.candidates.is_empty() {
        stats.abandoned = 1;
        return Ok((y_prev.to_vec(), stats));
    }
    let (alpha, beta) = match factors {
        Factors::Fixed(s) => s.factors(j),
        Factors::Adaptive(p) => {
            let best = crate::decoders::argmin_by(&res.candidates, |c| c.sq_distance)
                .expect("non-empty");
            let eps = analog_weight(&res.candidates[best].error_pattern, &rx.llr);
            adaptive_hybrid_factors(p.eps_scale * eps, best + 1, &p.step(j))
        }
    };
    Ok((pyndiah_update(y0, y_prev, &res.candidates, alpha, beta)?, stats))
}

/// Iterative decoding of an `n2 x n1` grid of channel outputs. Each full
/// iteration is one row and one column half-iteration.
pub fn product_decode_iterative(
    y0: &[Vec<f64>],
    sigma: f64,
    row_decoder: &Decoder,
    col_decoder: &Decoder,
    cfg: &TurboConfig,
) -> Result<TurboOutput> {
    let row_code = row_decoder.code();
    let col_code = col_decoder.code();
    let (n1, n2) = (row_code.n(), col_code.n());
    if y0.len() != n2 || y0.iter().any(|r| r.len() != n1) {
        return Err(Error::DimensionMismatch(format!(
            "received grid must be {n2} x {n1}"
        )));
    }
    match &cfg.factors {
        Factors::Fixed(s) => s.validate()?,
        Factors::Adaptive(p) => p.validate()?,
    }

    let y0_t = transpose(y0);
    let mut soft: Vec<Vec<f64>> = y0.to_vec();
    let mut out = TurboOutput {
        hard_per_iteration: Vec::with_capacity(cfg.iterations),
        info_per_iteration: Vec::with_capacity(cfg.iterations),
        soft: Vec::new(),
        abandoned_components: 0,
        queries: 0,
        shots: 0,
        component_decodes: 0,
    };

    let mut j = 0;
    for _ in 0..cfg.iterations {
        for half in 0..2 {
            let rows_now = (half == 0) == (cfg.order == HalfOrder::RowsFirst);
            let results: Vec<(Vec<f64>, ComponentStats)> = if rows_now {
                soft.par_iter()
                    .zip(y0.par_iter())
                    .map(|(yp, y)| decode_component(row_decoder, y, yp, sigma, &cfg.factors, j))
                    .collect::<Result<_>>()?
            } else {
                transpose(&soft)
                    .par_iter()
                    .zip(y0_t.par_iter())
                    .map(|(yp, y)| decode_component(col_decoder, y, yp, sigma, &cfg.factors, j))
                    .collect::<Result<_>>()?
            };
            let mut next = Vec::with_capacity(results.len());
            for (v, st) in results {
                out.abandoned_components += st.abandoned;
                out.queries += st.queries;
                out.shots += st.shots;
                out.component_decodes += 1;
                next.push(v);
            }
            soft = if rows_now { next } else { transpose(&next) };
            j += 1;
        }
        let hard: Vec<Vec<u8>> = soft.iter().map(|r| hard_decision(r)).collect();
        out.info_per_iteration
            .push(product_extract_info(&hard, row_code, col_code));
        out.hard_per_iteration.push(hard);
    }
    out.soft = soft;
    Ok(out)
}

fn transpose<T: Copy>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}
