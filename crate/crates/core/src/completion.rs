//! Maps a (partial) syndrome to the parity-check column equal to it.

use std::collections::HashMap;

use crate::matrix::ParityCheckMatrix;

const NONE: u32 = u32::MAX;

/// Codes with at most this many parity rows use a dense lookup table.
pub const DENSE_MAX_ROWS: usize = 20;

#[derive(Debug, Clone)]
enum ColumnMap {
    Dense(Vec<u32>),
    Sparse(HashMap<u64, u32>),
    Wide(HashMap<Vec<u64>, u32>),
}

/// First-`r`-rows shortcut for extended primitive BCH codes, whose first `r`
/// rows enumerate all 2^r binary vectors exactly once.
#[derive(Debug, Clone)]
struct PrefixPermutation {
    mask: u64,
    columns: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct CompletionTable {
    map: ColumnMap,
    prefix: Option<PrefixPermutation>,
}

impl CompletionTable {
    /// Builds the generic table. Duplicate columns resolve to the lowest index.
    pub fn new(h: &ParityCheckMatrix) -> Self {
        let n = h.n();
        let map = if h.m() <= DENSE_MAX_ROWS {
            let mut table = vec![NONE; 1 << h.m()];
            for j in (0..n).rev() {
                table[h.column(j)[0] as usize] = j as u32;
            }
            ColumnMap::Dense(table)
        } else if h.col_words() == 1 {
            let mut table = HashMap::with_capacity(n);
            for j in (0..n).rev() {
                table.insert(h.column(j)[0], j as u32);
            }
            ColumnMap::Sparse(table)
        } else {
            let mut table = HashMap::with_capacity(n);
            for j in (0..n).rev() {
                table.insert(h.column(j).to_vec(), j as u32);
            }
            ColumnMap::Wide(table)
        };
        Self { map, prefix: None }
    }

    /// Adds the prefix permutation when the first `r` rows of `h` hold every
    /// r-bit vector exactly once (the extended primitive BCH layout).
    pub fn with_prefix_permutation(mut self, h: &ParityCheckMatrix, r: usize) -> Self {
        if r == 0 || r > 24 || h.n() != 1 << r || h.m() < r {
            return self;
        }
        let mask = (1u64 << r) - 1;
        let mut columns = vec![NONE; 1 << r];
        for j in 0..h.n() {
            let key = (h.column(j)[0] & mask) as usize;
            if columns[key] != NONE {
                return self;
            }
            columns[key] = j as u32;
        }
        self.prefix = Some(PrefixPermutation { mask, columns });
        self
    }

    pub fn has_prefix_permutation(&self) -> bool {
        self.prefix.is_some()
    }

    /// Column index equal to `s`, using the prefix permutation when available.
    #[inline]
    pub fn complete(&self, h: &ParityCheckMatrix, s: &[u64]) -> Option<usize> {
        match &self.prefix {
            Some(p) => {
                let j = p.columns[(s[0] & p.mask) as usize] as usize;
                (h.column(j) == s).then_some(j)
            }
            None => self.complete_generic(s),
        }
    }

    /// Lookup through the full-syndrome table only.
    #[inline]
    pub fn complete_generic(&self, s: &[u64]) -> Option<usize> {
        let j = match &self.map {
            ColumnMap::Dense(t) => {
                if s.len() > 1 || s[0] >= t.len() as u64 {
                    NONE
                } else {
                    t[s[0] as usize]
                }
            }
            ColumnMap::Sparse(t) => t.get(&s[0]).copied().unwrap_or(NONE),
            ColumnMap::Wide(t) => t.get(s).copied().unwrap_or(NONE),
        };
        (j != NONE).then_some(j as usize)
    }
}
