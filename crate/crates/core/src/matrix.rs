//! Binary parity-check matrices and the BCH/CRC constructions.

use crate::bits;
use crate::error::{Error, Result};
use crate::gf::GaloisField;

/// An `m x n` binary parity-check matrix of full row rank.
///
/// Rows are packed over `n` bits; columns are additionally cached packed over
/// `m` bits so syndrome updates are word XORs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    n: usize,
    m: usize,
    rows: Vec<Vec<u64>>,
    col_stride: usize,
    cols: Vec<u64>,
}

impl ParityCheckMatrix {
    /// Builds a matrix from 0/1 rows, checking shape and rank.
    pub fn from_rows(n: usize, rows: &[Vec<u8>]) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RowLengthMismatch {
                    row: i,
                    expected: n,
                    actual: row.len(),
                });
            }
        }
        Self::from_packed_rows(n, rows.iter().map(|r| bits::pack(r)).collect())
    }

    pub fn from_packed_rows(n: usize, rows: Vec<Vec<u64>>) -> Result<Self> {
        let m = rows.len();
        if n == 0 || m >= n {
            return Err(Error::DegenerateDims(format!("m = {m} must be below n = {n}")));
        }
        let words = bits::words_for(n);
        if rows.iter().any(|r| r.len() != words) {
            return Err(Error::DegenerateDims("packed row width".into()));
        }
        let rank = gf2_rank(&rows);
        if rank != m {
            return Err(Error::RankDeficient { rank, rows: m });
        }
        let col_stride = bits::words_for(m).max(1);
        let mut cols = vec![0u64; n * col_stride];
        for (i, row) in rows.iter().enumerate() {
            for j in 0..n {
                if bits::get(row, j) == 1 {
                    cols[j * col_stride + i / 64] |= 1 << (i % 64);
                }
            }
        }
        Ok(Self {
            n,
            m,
            rows,
            col_stride,
            cols,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of `u64` words in a packed column (and in a packed syndrome).
    pub fn col_words(&self) -> usize {
        self.col_stride
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    #[inline]
    pub fn column(&self, j: usize) -> &[u64] {
        &self.cols[j * self.col_stride..(j + 1) * self.col_stride]
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        bits::get(&self.rows[i], j)
    }

    pub fn row_bits(&self, i: usize) -> Vec<u8> {
        bits::unpack(&self.rows[i], self.n)
    }
}

/// Rank over GF(2) of packed rows.
pub fn gf2_rank(rows: &[Vec<u64>]) -> usize {
    let mut work: Vec<Vec<u64>> = rows.to_vec();
    let width = work.first().map_or(0, |r| r.len() * 64);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..work.len()).find(|&i| bits::get(&work[i], col) == 1) else {
            continue;
        };
        work.swap(rank, p);
        let pivot = work[rank].clone();
        for (i, row) in work.iter_mut().enumerate() {
            if i != rank && bits::get(row, col) == 1 {
                bits::xor_into(row, &pivot);
            }
        }
        rank += 1;
        if rank == work.len() {
            break;
        }
    }
    rank
}

/// Parity-check matrix of the primitive narrow-sense binary BCH code with
/// designed capability `t` over `field`.
///
/// Row block `i` (0-based) holds the r-bit coefficient vectors of
/// γ^{(2i+1)j}; bit `b` of the element sits in row `i*r + b`. When `extended`,
/// an all-ones parity row is appended and the extension column is zero in the
/// Galois rows and one in the parity row.
pub fn build_bch_parity_check(
    field: &GaloisField,
    t: usize,
    extended: bool,
) -> Result<ParityCheckMatrix> {
    let r = field.degree() as usize;
    let q = field.size();
    if t == 0 {
        return Err(Error::DegenerateDims("t must be at least 1".into()));
    }
    let needed = t * r + 1;
    if needed >= q {
        return Err(Error::CapacityExceeded { needed, length: q });
    }
    let order = field.order();
    let n = if extended { q } else { order };
    let m = t * r + usize::from(extended);
    let words = bits::words_for(n);
    let mut rows = vec![vec![0u64; words]; m];
    for j in 0..order {
        for i in 0..t {
            let e = field.exp(((2 * i + 1) * j) % order);
            for b in 0..r {
                if (e >> b) & 1 == 1 {
                    bits::set(&mut rows[i * r + b], j, 1);
                }
            }
        }
    }
    if extended {
        let parity = &mut rows[m - 1];
        for j in 0..n {
            bits::set(parity, j, 1);
        }
    }
    ParityCheckMatrix::from_packed_rows(n, rows)
}

/// Degree of a nonzero binary polynomial bitmask.
pub fn poly_degree(p: u64) -> Option<usize> {
    (p != 0).then(|| 63 - p.leading_zeros() as usize)
}

/// Parity-check matrix of the length-`n` CRC code generated by `gen_poly`:
/// column `j` is the remainder of x^{n-1-j} modulo the generator.
pub fn build_crc_parity_check(gen_poly: u64, n: usize) -> Result<ParityCheckMatrix> {
    let deg = match poly_degree(gen_poly) {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::DegenerateDims(format!(
                "generator {gen_poly:#x} must have degree >= 1"
            )))
        }
    };
    if n <= deg {
        return Err(Error::DegenerateDims(format!(
            "length {n} must exceed generator degree {deg}"
        )));
    }
    let words = bits::words_for(n);
    let mut rows = vec![vec![0u64; words]; deg];
    let mut rem: u64 = 1; // x^0 mod g, column n-1
    for j in (0..n).rev() {
        for (i, row) in rows.iter_mut().enumerate() {
            if (rem >> i) & 1 == 1 {
                bits::set(row, j, 1);
            }
        }
        rem <<= 1;
        if (rem >> deg) & 1 == 1 {
            rem ^= gen_poly;
        }
    }
    ParityCheckMatrix::from_packed_rows(n, rows)
}
