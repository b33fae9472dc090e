//! Sliding-window word census over finite symbol sequences.
//!
//! Occurrences are counted with overlaps: every start position `i` with
//! `i + n <= N` contributes one window. Words are keyed by their base-`r`
//! integer code while `r^n <= 2^63`, and by their symbol string beyond that.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::entropy::{MassDistribution, Support};
use crate::{Error, Result};

/// Largest alphabet a [`SymbolSequence`] can carry.
pub const MAX_ALPHABET: u32 = 256;

/// Word spaces up to this size are counted in a dense histogram.
const DENSE_LIMIT: u64 = 1 << 20;

/// Windows per parallel chunk.
const CHUNK_WINDOWS: usize = 1 << 20;

/// A finite sequence over the alphabet `{0, …, r−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolSequence {
    alphabet_size: u32,
    symbols: Vec<u8>,
}

impl SymbolSequence {
    pub fn new(alphabet_size: u32, symbols: Vec<u8>) -> Result<Self> {
        if alphabet_size == 0 || alphabet_size > MAX_ALPHABET {
            return Err(Error::domain(format!(
                "alphabet size {alphabet_size} outside 1..={MAX_ALPHABET}"
            )));
        }
        if symbols.is_empty() {
            return Err(Error::domain("sequence must contain at least one symbol"));
        }
        if let Some(pos) = symbols.iter().position(|&s| s as u32 >= alphabet_size) {
            return Err(Error::domain(format!(
                "symbol {} at position {pos} is outside the alphabet of size {alphabet_size}",
                symbols[pos]
            )));
        }
        Ok(Self {
            alphabet_size,
            symbols,
        })
    }

    pub fn binary(bits: Vec<u8>) -> Result<Self> {
        Self::new(2, bits)
    }

    /// Parses a string of decimal digits, e.g. `"01011"`.
    pub fn from_digits(alphabet_size: u32, digits: &str) -> Result<Self> {
        let symbols = digits
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::domain(format!("'{c}' is not a digit")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet_size, symbols)
    }

    pub(crate) fn from_trusted(alphabet_size: u32, symbols: Vec<u8>) -> Self {
        debug_assert!(!symbols.is_empty());
        debug_assert!(symbols.iter().all(|&s| (s as u32) < alphabet_size));
        Self {
            alphabet_size,
            symbols,
        }
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }

    /// The sequence with every symbol `s` replaced by `mapping[s]`.
    pub fn relabeled(&self, mapping: &[u8]) -> Result<Self> {
        if mapping.len() != self.alphabet_size as usize {
            return Err(Error::domain("relabeling must cover the whole alphabet"));
        }
        let symbols = self.symbols.iter().map(|&s| mapping[s as usize]).collect();
        Self::new(self.alphabet_size, symbols)
    }

    fn check_prefix(&self, prefix_len: usize) -> Result<()> {
        if prefix_len > self.len() {
            return Err(Error::domain(format!(
                "prefix length {prefix_len} exceeds sequence length {}",
                self.len()
            )));
        }
        Ok(())
    }

    fn require_binary(&self) -> Result<()> {
        if self.alphabet_size != 2 {
            return Err(Error::domain(format!(
                "operation needs a binary sequence, alphabet size is {}",
                self.alphabet_size
            )));
        }
        Ok(())
    }
}

/// Key of a counted word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WordKey {
    /// Base-`r` code, most significant symbol first.
    Code(u64),
    Symbols(Vec<u8>),
}

impl WordKey {
    pub fn symbols(&self, n: usize, alphabet_size: u32) -> Vec<u8> {
        match self {
            WordKey::Code(code) => decode(*code, n, alphabet_size),
            WordKey::Symbols(s) => s.clone(),
        }
    }
}

fn decode(mut code: u64, n: usize, r: u32) -> Vec<u8> {
    let mut out = vec![0u8; n];
    for slot in out.iter_mut().rev() {
        *slot = (code % r as u64) as u8;
        code /= r as u64;
    }
    out
}

/// `r^n` when it fits the integer encoding.
fn code_space(r: u32, n: usize) -> Option<u64> {
    let n = u32::try_from(n).ok()?;
    (r as u64)
        .checked_pow(n)
        .filter(|&space| space <= 1u64 << 63)
}

fn encode(word: &[u8], r: u32) -> u64 {
    word.iter().fold(0u64, |acc, &s| acc * r as u64 + s as u64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Storage {
    Dense(Vec<u64>),
    Sparse(Vec<(u64, u64)>),
    Strings(BTreeMap<Vec<u8>, u64>),
}

/// Census of the length-`n` windows in the first `N` symbols of a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordCountTable {
    n: usize,
    prefix_len: usize,
    alphabet_size: u32,
    storage: Storage,
}

impl WordCountTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix_len
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    /// `N − n + 1`, the number of full windows.
    pub fn window_total(&self) -> u64 {
        (self.prefix_len - self.n + 1) as u64
    }

    /// Number of distinct words observed.
    pub fn distinct(&self) -> usize {
        match &self.storage {
            Storage::Dense(h) => h.iter().filter(|&&c| c > 0).count(),
            Storage::Sparse(v) => v.len(),
            Storage::Strings(m) => m.len(),
        }
    }

    /// Positive counts in key order.
    pub fn counts(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        match &self.storage {
            Storage::Dense(h) => Box::new(h.iter().copied().filter(|&c| c > 0)),
            Storage::Sparse(v) => Box::new(v.iter().map(|&(_, c)| c)),
            Storage::Strings(m) => Box::new(m.values().copied()),
        }
    }

    /// Observed words with their counts, in key order.
    pub fn iter(&self) -> Box<dyn Iterator<Item = (WordKey, u64)> + '_> {
        match &self.storage {
            Storage::Dense(h) => Box::new(
                h.iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .map(|(code, &c)| (WordKey::Code(code as u64), c)),
            ),
            Storage::Sparse(v) => Box::new(v.iter().map(|&(code, c)| (WordKey::Code(code), c))),
            Storage::Strings(m) => Box::new(m.iter().map(|(w, &c)| (WordKey::Symbols(w.clone()), c))),
        }
    }

    /// Count of a specific word, zero when absent or of the wrong length.
    pub fn get(&self, word: &[u8]) -> u64 {
        if word.len() != self.n || word.iter().any(|&s| s as u32 >= self.alphabet_size) {
            return 0;
        }
        match &self.storage {
            Storage::Dense(h) => h[encode(word, self.alphabet_size) as usize],
            Storage::Sparse(v) => {
                let code = encode(word, self.alphabet_size);
                v.binary_search_by_key(&code, |&(k, _)| k)
                    .map(|i| v[i].1)
                    .unwrap_or(0)
            }
            Storage::Strings(m) => m.get(word).copied().unwrap_or(0),
        }
    }

    /// Whether words are keyed by integer code.
    pub fn uses_integer_keys(&self) -> bool {
        !matches!(self.storage, Storage::Strings(_))
    }
}

/// Census of all length-`n` windows of `x`.
pub fn count_words(x: &SymbolSequence, n: usize) -> Result<WordCountTable> {
    count_words_in_prefix(x, n, x.len())
}

/// Census of the length-`n` windows inside the first `prefix_len` symbols.
pub fn count_words_in_prefix(
    x: &SymbolSequence,
    n: usize,
    prefix_len: usize,
) -> Result<WordCountTable> {
    x.check_prefix(prefix_len)?;
    if n == 0 || n > prefix_len {
        return Err(Error::domain(format!(
            "word length {n} must lie in 1..={prefix_len}"
        )));
    }
    let r = x.alphabet_size;
    let symbols = &x.symbols[..prefix_len];
    let windows = (prefix_len - n + 1) as u64;
    let storage = match code_space(r, n) {
        Some(space) if space <= DENSE_LIMIT && space <= 4 * windows + 1024 => {
            Storage::Dense(dense_census(symbols, n, r, space))
        }
        Some(_) => Storage::Sparse(sparse_census(symbols, n, r)),
        None => Storage::Strings(string_census(symbols, n)),
    };
    Ok(WordCountTable {
        n,
        prefix_len,
        alphabet_size: r,
        storage,
    })
}

/// Calls `f` with the code of every window starting in `starts`.
fn for_each_code(
    symbols: &[u8],
    n: usize,
    r: u32,
    starts: std::ops::Range<usize>,
    mut f: impl FnMut(u64),
) {
    if starts.is_empty() {
        return;
    }
    let r = r as u64;
    let lead = r.pow(n as u32 - 1);
    let mut code = encode(&symbols[starts.start..starts.start + n], r as u32);
    f(code);
    for i in starts.start + 1..starts.end {
        code = (code - symbols[i - 1] as u64 * lead) * r + symbols[i + n - 1] as u64;
        f(code);
    }
}

fn chunks(windows: usize) -> Vec<std::ops::Range<usize>> {
    (0..windows)
        .step_by(CHUNK_WINDOWS)
        .map(|a| a..(a + CHUNK_WINDOWS).min(windows))
        .collect()
}

fn dense_census(symbols: &[u8], n: usize, r: u32, space: u64) -> Vec<u64> {
    let windows = symbols.len() - n + 1;
    let space = space as usize;
    chunks(windows)
        .into_par_iter()
        .fold(
            || vec![0u64; space],
            |mut hist, range| {
                for_each_code(symbols, n, r, range, |c| hist[c as usize] += 1);
                hist
            },
        )
        .reduce(
            || vec![0u64; space],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

fn sparse_census(symbols: &[u8], n: usize, r: u32) -> Vec<(u64, u64)> {
    let windows = symbols.len() - n + 1;
    chunks(windows)
        .into_par_iter()
        .map(|range| {
            let mut codes = Vec::with_capacity(range.len());
            for_each_code(symbols, n, r, range, |c| codes.push(c));
            codes.sort_unstable();
            run_lengths(&codes)
        })
        .reduce(Vec::new, merge_sorted_counts)
}

fn run_lengths(sorted: &[u64]) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = Vec::new();
    for &c in sorted {
        match out.last_mut() {
            Some((k, n)) if *k == c => *n += 1,
            _ => out.push((c, 1)),
        }
    }
    out
}

fn merge_sorted_counts(a: Vec<(u64, u64)>, b: Vec<(u64, u64)>) -> Vec<(u64, u64)> {
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn string_census(symbols: &[u8], n: usize) -> BTreeMap<Vec<u8>, u64> {
    let mut counts: BTreeMap<&[u8], u64> = BTreeMap::new();
    for w in symbols.windows(n) {
        *counts.entry(w).or_insert(0) += 1;
    }
    counts.into_iter().map(|(w, c)| (w.to_vec(), c)).collect()
}

/// Empirical frequencies of the observed words, on the support of all `r^n` words.
pub fn word_distribution(t: &WordCountTable) -> MassDistribution {
    let support = Support::words(t.alphabet_size as u64, t.n as u32);
    MassDistribution::from_counts(t.counts(), support)
        .expect("census counts always form a valid distribution")
}

pub fn distinct_count(t: &WordCountTable) -> usize {
    t.distinct()
}

/// Overlapping occurrences of `w` among the first `prefix_len` symbols of `x`.
pub fn occurrences(x: &SymbolSequence, w: &[u8], prefix_len: usize) -> Result<u64> {
    x.check_prefix(prefix_len)?;
    if w.is_empty() || w.len() > prefix_len {
        return Err(Error::domain(format!(
            "word length {} must lie in 1..={prefix_len}",
            w.len()
        )));
    }
    Ok(x.symbols[..prefix_len]
        .windows(w.len())
        .filter(|window| *window == w)
        .count() as u64)
}

/// Number of ones among the first `prefix_len` symbols of a binary sequence.
pub fn ones_count(b: &SymbolSequence, prefix_len: usize) -> Result<u64> {
    b.require_binary()?;
    b.check_prefix(prefix_len)?;
    Ok(b.symbols[..prefix_len].iter().filter(|&&s| s == 1).count() as u64)
}

/// Frequency of all-zero windows of length `n` among the first `prefix_len`
/// symbols, normalized by `N − n`.
///
/// The denominator is `N − n`, not the window count `N − n + 1`, so the value
/// can exceed 1 slightly (an all-zero sequence gives `(N−n+1)/(N−n)`).
pub fn zero_word_frequency(b: &SymbolSequence, n: usize, prefix_len: usize) -> Result<f64> {
    b.require_binary()?;
    b.check_prefix(prefix_len)?;
    if n < 2 || n >= prefix_len {
        return Err(Error::domain(format!(
            "zero-word length {n} must satisfy 2 <= n < {prefix_len}"
        )));
    }
    let mut zero_windows = 0u64;
    let mut run = 0usize;
    for &s in &b.symbols[..prefix_len] {
        if s == 0 {
            run += 1;
            if run >= n {
                zero_windows += 1;
            }
        } else {
            run = 0;
        }
    }
    Ok(zero_windows as f64 / (prefix_len - n) as f64)
}
