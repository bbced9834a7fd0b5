//! Likelihood-ordered error pattern lists over reliability ranks.
//!
//! A pattern is a set of 1-based reliability ranks. Lists are ordered by
//! logistic weight (the sum of ranks), then by Hamming weight, then
//! lexicographically on the rank sequence.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Pattern {
    ranks: Vec<u16>,
}

impl Pattern {
    pub fn new(ranks: Vec<u16>) -> Result<Self> {
        if ranks.first() == Some(&0) {
            return Err(Error::RankOutOfRange { rank: 0, n: 0 });
        }
        if ranks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config(format!(
                "pattern ranks must be strictly increasing: {ranks:?}"
            )));
        }
        Ok(Self { ranks })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn ranks(&self) -> &[u16] {
        &self.ranks
    }

    pub fn weight(&self) -> usize {
        self.ranks.len()
    }

    pub fn max_rank(&self) -> usize {
        self.ranks.last().map_or(0, |&r| r as usize)
    }

    pub fn logistic_weight(&self) -> u64 {
        logistic_weight(self)
    }
}

/// Sum of the ranks holding a 1.
pub fn logistic_weight(p: &Pattern) -> u64 {
    p.ranks.iter().map(|&r| u64::from(r)).sum()
}

/// Actual codeword positions flipped by `p` under the reliability order
/// `order` (0-based positions, `order[r - 1]` for rank `r`).
pub fn map_to_positions(p: &Pattern, order: &[usize]) -> Result<Vec<usize>> {
    p.ranks
        .iter()
        .map(|&r| {
            order
                .get(r as usize - 1)
                .copied()
                .ok_or(Error::RankOutOfRange {
                    rank: r as usize,
                    n: order.len(),
                })
        })
        .collect()
}

/// Indices of the patterns in each parity class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParitySplit {
    /// Added to a pattern's weight before taking parity: 1 for partial patterns
    /// that will be completed by one more position, 0 for full patterns.
    pub completed_offset: usize,
    pub even: Vec<u32>,
    pub odd: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryList {
    n: usize,
    patterns: Vec<Pattern>,
    max_rank: usize,
    parity_split: Option<ParitySplit>,
}

impl QueryList {
    pub fn from_patterns(n: usize, patterns: Vec<Pattern>) -> Result<Self> {
        let max_rank = patterns.iter().map(Pattern::max_rank).max().unwrap_or(0);
        if max_rank > n {
            return Err(Error::RankOutOfRange { rank: max_rank, n });
        }
        Ok(Self {
            n,
            patterns,
            max_rank,
            parity_split: None,
        })
    }

    /// Rank universe size.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn get(&self, i: usize) -> Option<&Pattern> {
        self.patterns.get(i)
    }

    /// Largest rank used by any pattern; the decoder only needs this many of
    /// the smallest reliabilities sorted.
    pub fn max_rank(&self) -> usize {
        self.max_rank
    }

    pub fn parity_split(&self) -> Option<&ParitySplit> {
        self.parity_split.as_ref()
    }

    /// Attaches parity-class indices.
    pub fn with_parity_split(mut self, completed_offset: usize) -> Self {
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for (i, p) in self.patterns.iter().enumerate() {
            if (p.weight() + completed_offset) % 2 == 0 {
                even.push(i as u32);
            } else {
                odd.push(i as u32);
            }
        }
        self.parity_split = Some(ParitySplit {
            completed_offset,
            even,
            odd,
        });
        self
    }

    /// Patterns whose completed weight has parity `parity`, in list order.
    /// Without a split every pattern is returned.
    pub fn eligible(&self, parity: u8) -> Eligible<'_> {
        match &self.parity_split {
            Some(split) => Eligible::Indexed {
                patterns: &self.patterns,
                idx: if parity & 1 == 0 { &split.even } else { &split.odd },
                pos: 0,
            },
            None => Eligible::All(self.patterns.iter()),
        }
    }

    /// Text form: a `# n=<n> qmax=<q>` header then one comma-separated
    /// pattern per line (an empty line for the empty pattern).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# n={} qmax={}", self.n, self.patterns.len());
        for p in &self.patterns {
            let line: Vec<String> = p.ranks.iter().map(u16::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::MalformedHeader("empty pattern file".into()))?;
        let mut n = None;
        let mut q = None;
        for tok in header.trim_start_matches('#').split_whitespace() {
            if let Some(v) = tok.strip_prefix("n=") {
                n = v.parse::<usize>().ok();
            } else if let Some(v) = tok.strip_prefix("qmax=") {
                q = v.parse::<usize>().ok();
            }
        }
        let (Some(n), Some(q)) = (n, q) else {
            return Err(Error::MalformedHeader(header.to_string()));
        };
        let patterns = lines
            .take(q)
            .map(|l| {
                let l = l.trim();
                if l.is_empty() {
                    return Ok(Pattern::empty());
                }
                let ranks = l
                    .split(',')
                    .map(|t| t.trim().parse::<u16>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| Error::MalformedRow(format!("{l:?}: {e}")))?;
                Pattern::new(ranks)
            })
            .collect::<Result<Vec<_>>>()?;
        if patterns.len() != q {
            return Err(Error::MalformedHeader(format!(
                "expected {q} patterns, found {}",
                patterns.len()
            )));
        }
        Self::from_patterns(n, patterns)
    }
}

pub enum Eligible<'a> {
    All(std::slice::Iter<'a, Pattern>),
    Indexed {
        patterns: &'a [Pattern],
        idx: &'a [u32],
        pos: usize,
    },
}

impl<'a> Iterator for Eligible<'a> {
    type Item = &'a Pattern;

    #[inline]
    fn next(&mut self) -> Option<&'a Pattern> {
        match self {
            Eligible::All(it) => it.next(),
            Eligible::Indexed { patterns, idx, pos } => {
                let i = *idx.get(*pos)?;
                *pos += 1;
                Some(&patterns[i as usize])
            }
        }
    }
}

/// Appends to `out`, in lexicographic order, every set of `parts` distinct
/// ranks in `min..=n` summing to `sum`, stopping once `out` holds `limit`.
fn distinct_parts(
    sum: usize,
    parts: usize,
    min: usize,
    n: usize,
    prefix: &mut Vec<u16>,
    out: &mut Vec<Pattern>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if parts == 0 {
        if sum == 0 {
            out.push(Pattern {
                ranks: prefix.clone(),
            });
        }
        return;
    }
    if parts == 1 {
        if sum >= min && sum <= n {
            prefix.push(sum as u16);
            out.push(Pattern {
                ranks: prefix.clone(),
            });
            prefix.pop();
        }
        return;
    }
    // the remaining parts - 1 values must all exceed `first`
    let rest = parts - 1;
    let mut first = min;
    loop {
        let rest_min = rest * first + rest * (rest + 1) / 2;
        if first + rest_min > sum || first > n {
            break;
        }
        prefix.push(first as u16);
        distinct_parts(sum - first, rest, first + 1, n, prefix, out, limit);
        prefix.pop();
        if out.len() >= limit {
            return;
        }
        first += 1;
    }
}

/// The first `q_max` patterns over ranks `1..=n` in canonical order.
pub fn generate_query_list(n: usize, q_max: usize) -> QueryList {
    assert!(n >= 1 && n <= u16::MAX as usize, "rank universe must be in 1..=65535");
    let mut out: Vec<Pattern> = Vec::with_capacity(q_max.min(1 << 20));
    let max_sum = n * (n + 1) / 2;
    let mut sum = 0;
    let mut prefix = Vec::new();
    while out.len() < q_max && sum <= max_sum {
        let mut parts = 0;
        while parts * (parts + 1) / 2 <= sum && parts <= n && out.len() < q_max {
            distinct_parts(sum, parts, 1, n, &mut prefix, &mut out, q_max);
            parts += 1;
        }
        sum += 1;
    }
    QueryList::from_patterns(n, out).expect("ranks bounded by n")
}

/// Splits a list into (even, odd) sublists by the parity of
/// `weight + completed_offset`, preserving order.
pub fn split_by_parity(list: &QueryList, completed_offset: usize) -> (QueryList, QueryList) {
    let (even, odd): (Vec<Pattern>, Vec<Pattern>) = list
        .patterns
        .iter()
        .cloned()
        .partition(|p| (p.weight() + completed_offset) % 2 == 0);
    (
        QueryList::from_patterns(list.n, even).expect("same universe"),
        QueryList::from_patterns(list.n, odd).expect("same universe"),
    )
}

/// A list in which each parity class holds at least `q_max` patterns (or the
/// whole universe when it is smaller).
pub fn generate_split_list(n: usize, q_max: usize, completed_offset: usize) -> QueryList {
    let universe = if n >= 63 { usize::MAX } else { 1usize << n };
    let mut count = q_max.saturating_mul(2).saturating_add(16).min(universe);
    loop {
        let list = generate_query_list(n, count).with_parity_split(completed_offset);
        let split = list.parity_split().unwrap();
        if (split.even.len() >= q_max && split.odd.len() >= q_max) || list.len() < count || count == universe {
            return list;
        }
        count = count.saturating_mul(2).min(universe);
    }
}

type CacheKey = (usize, usize, Option<usize>);

/// Shared, lazily generated lists keyed by `(n, q_max, split offset)`.
pub fn cached_list(n: usize, q_max: usize, split_offset: Option<usize>) -> Arc<QueryList> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<QueryList>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (n, q_max, split_offset);
    if let Some(l) = cache.lock().unwrap().get(&key) {
        return Arc::clone(l);
    }
    let list = Arc::new(match split_offset {
        Some(off) => generate_split_list(n, q_max, off),
        None => generate_query_list(n, q_max),
    });
    cache
        .lock()
        .unwrap()
        .entry(key)
        .or_insert(list)
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(r: &[u16]) -> Pattern {
        Pattern::new(r.to_vec()).unwrap()
    }

    #[test]
    fn logistic_weight_examples() {
        assert_eq!(logistic_weight(&Pattern::empty()), 0);
        assert_eq!(logistic_weight(&p(&[1, 3])), 4);
        assert_eq!(logistic_weight(&p(&[2, 5, 6])), 13);
    }

    #[test]
    fn first_ten() {
        let list = generate_query_list(8, 10);
        let expected = vec![
            p(&[]),
            p(&[1]),
            p(&[2]),
            p(&[3]),
            p(&[1, 2]),
            p(&[4]),
            p(&[1, 3]),
            p(&[5]),
            p(&[1, 4]),
            p(&[2, 3]),
        ];
        assert_eq!(list.patterns(), &expected[..]);
    }

    #[test]
    fn single_entry() {
        let list = generate_query_list(256, 1);
        assert_eq!(list.patterns(), &[Pattern::empty()]);
    }

    #[test]
    fn exhausts_small_universe() {
        let list = generate_query_list(4, 1000);
        assert_eq!(list.len(), 16);
        assert_eq!(list.max_rank(), 4);
    }

    #[test]
    fn parity_offsets() {
        let list = generate_query_list(8, 2);
        let (even, odd) = split_by_parity(&list, 1);
        assert_eq!(odd.patterns(), &[Pattern::empty()]);
        assert_eq!(even.patterns(), &[p(&[1])]);
    }

    #[test]
    fn mapping() {
        let order = vec![6, 1, 0, 2, 3, 4, 5];
        assert_eq!(map_to_positions(&p(&[1]), &order).unwrap(), vec![6]);
        assert!(map_to_positions(&Pattern::empty(), &order).unwrap().is_empty());
        assert!(matches!(
            map_to_positions(&p(&[8]), &order),
            Err(Error::RankOutOfRange { rank: 8, n: 7 })
        ));
    }

    #[test]
    fn invalid_patterns() {
        assert!(Pattern::new(vec![2, 2]).is_err());
        assert!(Pattern::new(vec![0, 2]).is_err());
        assert!(QueryList::from_patterns(3, vec![p(&[4])]).is_err());
    }

    #[test]
    fn split_list_small_universe() {
        let l = generate_split_list(8, 1024, 1);
        assert_eq!(l.len(), 256);
    }

    #[test]
    fn split_list_has_enough() {
        let l = generate_split_list(256, 100, 1);
        let s = l.parity_split().unwrap();
        assert!(s.even.len() >= 100 && s.odd.len() >= 100);
        assert_eq!(l.eligible(1).next(), Some(&Pattern::empty()));
        assert_eq!(l.eligible(0).next(), Some(&p(&[1])));
    }

    #[test]
    fn text_roundtrip() {
        let l = generate_query_list(10, 50);
        let t = l.to_text();
        assert!(t.starts_with("# n=10 qmax=50\n\n1\n2\n3\n1,2\n"));
        assert_eq!(QueryList::from_text(&t).unwrap(), l);
    }
}
