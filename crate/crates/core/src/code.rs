//! Binary linear block codes defined by a parity-check matrix.

use std::fmt::Write as _;

use crate::bdd::{self, BchStructure};
use crate::bits;
use crate::completion::CompletionTable;
use crate::error::{Error, Result};
use crate::gf::GaloisField;
use crate::matrix::{self, ParityCheckMatrix};

/// Default CRC(128,120) generator, x^8 + x^7 + x^6 + x^4 + x^2 + 1
/// (0xD5 in normal form, 0xEA in Koopman notation).
pub const DEFAULT_CRC8_POLY: u64 = 0x1D5;

/// Syndrome `w H^T`, packed with row `i` at bit `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syndrome {
    words: Vec<u64>,
    len: usize,
}

impl Syndrome {
    pub fn from_words(words: Vec<u64>, len: usize) -> Self {
        Self { words, len }
    }

    pub fn from_bits(b: &[u8]) -> Self {
        let mut words = bits::pack(b);
        if words.is_empty() {
            words.push(0);
        }
        Self {
            words,
            len: b.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn bit(&self, i: usize) -> u8 {
        bits::get(&self.words, i)
    }

    pub fn is_zero(&self) -> bool {
        bits::is_zero(&self.words)
    }

    pub fn to_bits(&self) -> Vec<u8> {
        bits::unpack(&self.words, self.len)
    }
}

/// Systematic encoder derived from the reduced row echelon form of H.
#[derive(Debug, Clone)]
struct SystematicEncoder {
    info_positions: Vec<usize>,
    parity_positions: Vec<usize>,
    /// For pivot row `i`, the info positions that feed parity bit `parity_positions[i]`.
    parity_masks: Vec<Vec<u64>>,
}

impl SystematicEncoder {
    fn new(h: &ParityCheckMatrix) -> Self {
        let n = h.n();
        let mut rows: Vec<Vec<u64>> = h.rows().to_vec();
        let mut pivots = Vec::with_capacity(rows.len());
        let mut rank = 0;
        for col in 0..n {
            if rank == rows.len() {
                break;
            }
            let Some(p) = (rank..rows.len()).find(|&i| bits::get(&rows[i], col) == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && bits::get(row, col) == 1 {
                    bits::xor_into(row, &pivot);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        let is_pivot = {
            let mut v = vec![false; n];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let info_positions = (0..n).filter(|&j| !is_pivot[j]).collect();
        let parity_masks = rows
            .into_iter()
            .zip(&pivots)
            .map(|(mut row, &p)| {
                bits::set(&mut row, p, 0);
                row
            })
            .collect();
        Self {
            info_positions,
            parity_positions: pivots,
            parity_masks,
        }
    }

    fn encode(&self, n: usize, info: &[u8]) -> Vec<u8> {
        let mut word = vec![0u8; n];
        for (&pos, &b) in self.info_positions.iter().zip(info) {
            word[pos] = b & 1;
        }
        let packed = bits::pack(&word);
        for (&p, mask) in self.parity_positions.iter().zip(&self.parity_masks) {
            word[p] = bits::and_parity(mask, &packed);
        }
        word
    }
}

/// A binary linear block code.
#[derive(Debug, Clone)]
pub struct LinearCode {
    name: String,
    h: ParityCheckMatrix,
    extended: bool,
    completion: CompletionTable,
    bch: Option<BchStructure>,
    encoder: SystematicEncoder,
}

impl LinearCode {
    /// Wraps an arbitrary full-rank parity-check matrix. The code is treated as
    /// extended when its last row is all ones.
    pub fn new(name: impl Into<String>, h: ParityCheckMatrix) -> Self {
        let extended = h.m() > 0 && (0..h.n()).all(|j| h.get(h.m() - 1, j) == 1);
        let completion = CompletionTable::new(&h);
        let encoder = SystematicEncoder::new(&h);
        Self {
            name: name.into(),
            h,
            extended,
            completion,
            bch: None,
            encoder,
        }
    }

    /// Primitive narrow-sense BCH code of length 2^r - 1 (or 2^r when extended).
    pub fn bch(r: u32, t: usize, extended: bool) -> Result<Self> {
        Self::bch_with_field(GaloisField::with_default_poly(r)?, t, extended)
    }

    pub fn bch_with_field(field: GaloisField, t: usize, extended: bool) -> Result<Self> {
        let h = matrix::build_bch_parity_check(&field, t, extended)?;
        let r = field.degree() as usize;
        let n = h.n();
        let name = format!("BCH({},{})", n, n - h.m());
        let mut code = Self::new(name, h);
        code.extended = extended;
        if extended {
            code.completion = code.completion.with_prefix_permutation(&code.h, r);
        }
        code.bch = Some(BchStructure::new(field, t, extended));
        Ok(code)
    }

    /// Hamming code of length 2^r - 1.
    pub fn hamming(r: u32) -> Result<Self> {
        let mut c = Self::bch(r, 1, false)?;
        c.name = format!("Hamming({},{})", c.n(), c.k());
        Ok(c)
    }

    /// Extended Hamming code of length 2^r.
    pub fn extended_hamming(r: u32) -> Result<Self> {
        let mut c = Self::bch(r, 1, true)?;
        c.name = format!("eHamming({},{})", c.n(), c.k());
        Ok(c)
    }

    pub fn crc(gen_poly: u64, n: usize) -> Result<Self> {
        let h = matrix::build_crc_parity_check(gen_poly, n)?;
        let name = format!("CRC({},{})", n, n - h.m());
        let mut code = Self::new(name, h);
        // the single parity row of x + 1 is all ones, but that is not an
        // appended parity bit in the sense of parity-split decoding
        code.extended = code.extended && code.h.m() == 1;
        Ok(code)
    }

    /// Rate-one code with no parity checks.
    pub fn uncoded(n: usize) -> Result<Self> {
        let h = ParityCheckMatrix::from_packed_rows(n, vec![])?;
        Ok(Self::new(format!("uncoded({n})"), h))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.h.n()
    }

    pub fn k(&self) -> usize {
        self.h.n() - self.h.m()
    }

    pub fn m(&self) -> usize {
        self.h.m()
    }

    pub fn rate(&self) -> f64 {
        self.k() as f64 / self.n() as f64
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    pub fn parity_check(&self) -> &ParityCheckMatrix {
        &self.h
    }

    pub fn completion_table(&self) -> &CompletionTable {
        &self.completion
    }

    pub fn bch_structure(&self) -> Option<&BchStructure> {
        self.bch.as_ref()
    }

    /// Positions carrying information bits in systematic encoding.
    pub fn info_positions(&self) -> &[usize] {
        &self.encoder.info_positions
    }

    pub fn parity_positions(&self) -> &[usize] {
        &self.encoder.parity_positions
    }

    /// Syndrome of a hard-decision word.
    pub fn syndrome(&self, w: &[u8]) -> Result<Syndrome> {
        self.check_len(w.len())?;
        let packed = bits::pack(w);
        let mut words = vec![0u64; self.h.col_words()];
        for (i, row) in self.h.rows().iter().enumerate() {
            if bits::and_parity(row, &packed) == 1 {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        Ok(Syndrome::from_words(words, self.m()))
    }

    /// Column-accumulated syndrome into `out` (no length checks).
    #[inline]
    pub(crate) fn syndrome_into(&self, w: &[u8], out: &mut [u64]) {
        out.fill(0);
        for (j, &b) in w.iter().enumerate() {
            if b == 1 {
                bits::xor_into(out, self.h.column(j));
            }
        }
    }

    pub fn is_codeword(&self, w: &[u8]) -> bool {
        w.len() == self.n() && self.syndrome(w).map(|s| s.is_zero()).unwrap_or(false)
    }

    /// Column index whose value equals `partial`, if any.
    pub fn complete(&self, partial: &Syndrome) -> Result<Option<usize>> {
        if partial.len() != self.m() {
            return Err(Error::LengthMismatch {
                expected: self.m(),
                actual: partial.len(),
            });
        }
        Ok(self.complete_words(partial.words()))
    }

    #[inline]
    pub(crate) fn complete_words(&self, s: &[u64]) -> Option<usize> {
        self.completion.complete(&self.h, s)
    }

    /// Systematic encoding of `k` information bits.
    pub fn encode(&self, info: &[u8]) -> Result<Vec<u8>> {
        if info.len() != self.k() {
            return Err(Error::LengthMismatch {
                expected: self.k(),
                actual: info.len(),
            });
        }
        Ok(self.encoder.encode(self.n(), info))
    }

    /// Information bits of a codeword (read from the systematic positions).
    pub fn extract_info(&self, c: &[u8]) -> Vec<u8> {
        self.encoder.info_positions.iter().map(|&p| c[p]).collect()
    }

    /// Bounded-distance decoding with capability `t_sub <= min(3, t)` under the
    /// sub-code of the first `t_sub * r` rows plus the parity row. `Ok(None)`
    /// means no codeword of that sub-code lies within distance `t_sub`.
    pub fn bch_hard_decode(&self, w: &[u8], t_sub: usize) -> Result<Option<Vec<u8>>> {
        let bch = self
            .bch
            .as_ref()
            .ok_or_else(|| Error::NotBch(self.name.clone()))?;
        bdd::check_t_sub(bch, t_sub)?;
        self.check_len(w.len())?;
        let mut s = vec![0u64; self.h.col_words()];
        self.syndrome_into(w, &mut s);
        Ok(bch.locate(&s, t_sub).map(|positions| {
            let mut out = w.to_vec();
            for p in positions {
                out[p] ^= 1;
            }
            out
        }))
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: len,
            });
        }
        Ok(())
    }
}

/// Parses the text parity-check format: a `n m` header followed by `m` rows of
/// `n` characters from `{0,1}`. Lines starting with `#` are ignored.
pub fn load_parity_check(text: &str) -> Result<LinearCode> {
    let mut lines = text
        .lines()
        .map(str::trim_end)
        .filter(|l| !l.starts_with('#'));
    let header = lines
        .by_ref()
        .find(|l| !l.trim().is_empty())
        .ok_or_else(|| Error::MalformedHeader("empty input".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::MalformedHeader(format!("{header:?}: {e}")))?;
    let [n, m] = dims[..] else {
        return Err(Error::MalformedHeader(format!(
            "expected \"n m\", got {header:?}"
        )));
    };
    let mut rows = Vec::with_capacity(m);
    for line in lines {
        if rows.len() == m {
            if line.trim().is_empty() {
                continue;
            }
            return Err(Error::MalformedHeader(format!("more than {m} rows")));
        }
        let row: Vec<u8> = line
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::MalformedRow(format!(
                    "row {}: unexpected character {other:?}",
                    rows.len()
                ))),
            })
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::RowLengthMismatch {
                row: rows.len(),
                expected: n,
                actual: row.len(),
            });
        }
        rows.push(row);
    }
    if rows.len() != m {
        return Err(Error::MalformedHeader(format!(
            "header declares {m} rows, found {}",
            rows.len()
        )));
    }
    let h = ParityCheckMatrix::from_rows(n, &rows)?;
    Ok(LinearCode::new(format!("H({},{})", n, n - m), h))
}

pub fn save_parity_check(code: &LinearCode) -> String {
    let h = code.parity_check();
    let mut out = String::with_capacity((h.n() + 1) * (h.m() + 1));
    let _ = writeln!(out, "{} {}", h.n(), h.m());
    for i in 0..h.m() {
        out.extend(h.row_bits(i).iter().map(|&b| if b == 1 { '1' } else { '0' }));
        out.push('\n');
    }
    out
}
