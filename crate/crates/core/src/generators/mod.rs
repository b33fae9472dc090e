//! Sequence constructors: prime indicators, quadratic residue words, the binary
//! Champernowne sequence, Bernoulli processes, periodic sequences and
//! topological Markov chains.
//!
//! Positions are 1-based wherever a generator assigns meaning to a position.

mod random;
pub mod sieve;

use std::fmt;
use std::sync::Arc;

use crate::words::SymbolSequence;
use crate::{Error, Result};

pub use random::RandomSource;
pub use sieve::{is_prime_by_trial_division, prime_count, PrimeTable};

/// Binary sequence with a 1 at every prime position `k ∈ 1..=N`.
///
/// With `include_one` the first position is marked as well, following the
/// prime list `(1, 2, 3, 5, 7, …)`.
pub fn prime_indicator(len: usize, include_one: bool) -> Result<SymbolSequence> {
    if len < 2 {
        return Err(Error::domain("prime indicator needs N >= 2"));
    }
    let mut bits = vec![0u8; len];
    bits[1] = 1; // 2
    sieve::for_each_segment(len as u64, |lo, words, nbits| {
        for (w, &word) in words.iter().enumerate() {
            let mut rest = word;
            while rest != 0 {
                let bit = rest.trailing_zeros() as u64;
                rest &= rest - 1;
                let index = lo + w as u64 * 64 + bit;
                if index - lo < nbits {
                    bits[(2 * index) as usize] = 1; // number 2i+1 sits at 0-based 2i
                }
            }
        }
    });
    if include_one {
        bits[0] = 1;
    }
    Ok(SymbolSequence::from_trusted(2, bits))
}

/// The word `b_1 … b_{q−1}` with `b_k = 1` iff `k` is a quadratic residue mod `q`.
pub fn quadratic_residue_word(q: u64) -> Result<SymbolSequence> {
    if q < 3 || !is_prime_by_trial_division(q) {
        return Err(Error::domain(format!("{q} is not an odd prime")));
    }
    let len = (q - 1) as usize;
    let mut bits = vec![0u8; len];
    for l in 1..=(q - 1) / 2 {
        let k = (l as u128 * l as u128 % q as u128) as usize;
        bits[k - 1] = 1;
    }
    Ok(SymbolSequence::from_trusted(2, bits))
}

/// First `N` bits of `1 10 11 100 101 …`, the binary expansions of `1, 2, 3, …`
/// concatenated.
pub fn champernowne_binary(len: usize) -> Result<SymbolSequence> {
    if len == 0 {
        return Err(Error::domain("Champernowne prefix needs N >= 1"));
    }
    let mut bits = Vec::with_capacity(len);
    let mut k = 1u64;
    'outer: loop {
        let width = 64 - k.leading_zeros();
        for shift in (0..width).rev() {
            if bits.len() == len {
                break 'outer;
            }
            bits.push((k >> shift & 1) as u8);
        }
        k += 1;
    }
    Ok(SymbolSequence::from_trusted(2, bits))
}

/// Success probabilities of an independent binary process.
#[derive(Clone)]
pub enum BernoulliSpec {
    Homogeneous(f64),
    /// Position-dependent probability `k ↦ q_k` for 1-based `k`.
    Inhomogeneous {
        name: String,
        probability: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
    },
}

impl fmt::Debug for BernoulliSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BernoulliSpec::Homogeneous(q) => f.debug_tuple("Homogeneous").field(q).finish(),
            BernoulliSpec::Inhomogeneous { name, .. } => {
                f.debug_struct("Inhomogeneous").field("name", name).finish()
            }
        }
    }
}

impl BernoulliSpec {
    pub fn homogeneous(q: f64) -> Result<Self> {
        if q.is_nan() {
            return Err(Error::domain("bernoulli parameter is NaN"));
        }
        Ok(BernoulliSpec::Homogeneous(q))
    }

    pub fn inhomogeneous(
        name: impl Into<String>,
        probability: impl Fn(u64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        BernoulliSpec::Inhomogeneous {
            name: name.into(),
            probability: Arc::new(probability),
        }
    }

    pub fn name(&self) -> String {
        match self {
            BernoulliSpec::Homogeneous(q) => format!("bernoulli(q={q})"),
            BernoulliSpec::Inhomogeneous { name, .. } => name.clone(),
        }
    }

    /// Probability of a 1 at position `k`, clamped to `[0, 1]`.
    pub fn probability(&self, k: u64) -> Result<f64> {
        let raw = match self {
            BernoulliSpec::Homogeneous(q) => *q,
            BernoulliSpec::Inhomogeneous { probability, .. } => probability(k),
        };
        if raw.is_nan() {
            return Err(Error::domain(format!("probability at position {k} is NaN")));
        }
        Ok(raw.clamp(0.0, 1.0))
    }
}

/// Cramér's model of the primes: `q_k = min(1, 1/ln k)` for `k >= 2`, and a
/// certain 0 at position 1.
pub fn cramer_spec() -> BernoulliSpec {
    BernoulliSpec::inhomogeneous("cramer", cramer_probability)
}

pub(crate) fn cramer_probability(k: u64) -> f64 {
    if k < 2 {
        0.0
    } else {
        (1.0 / (k as f64).ln()).min(1.0)
    }
}

/// Independent draws, position `k` being 1 with probability `q_k`.
pub fn bernoulli_realization(
    spec: &BernoulliSpec,
    len: usize,
    rng: &mut RandomSource,
) -> Result<SymbolSequence> {
    if len == 0 {
        return Err(Error::domain("realization needs N >= 1"));
    }
    let mut bits = Vec::with_capacity(len);
    for k in 1..=len as u64 {
        let q = spec.probability(k)?;
        bits.push(u8::from(rng.next_unit() < q));
    }
    Ok(SymbolSequence::from_trusted(2, bits))
}

/// `pattern` repeated and truncated to `N` symbols.
pub fn periodic_sequence(pattern: &SymbolSequence, len: usize) -> Result<SymbolSequence> {
    if len == 0 {
        return Err(Error::domain("periodic sequence needs N >= 1"));
    }
    let symbols = pattern.symbols().iter().copied().cycle().take(len).collect();
    Ok(SymbolSequence::from_trusted(pattern.alphabet_size(), symbols))
}

/// Allowed transitions of a topological Markov chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    size: usize,
    allowed: Vec<bool>,
}

impl TransitionMatrix {
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 || size > crate::words::MAX_ALPHABET as usize {
            return Err(Error::domain("transition matrix size out of range"));
        }
        let mut allowed = Vec::with_capacity(size * size);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(Error::domain(format!(
                    "row {i} has {} entries, expected {size}",
                    row.len()
                )));
            }
            for &v in row {
                match v {
                    0 => allowed.push(false),
                    1 => allowed.push(true),
                    _ => return Err(Error::domain("transition entries must be 0 or 1")),
                }
            }
        }
        Ok(Self { size, allowed })
    }

    /// Parses rows of 0/1 digits separated by `,` or `;`, e.g. `"11,10"`.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = text
            .split([',', ';'])
            .map(|row| {
                row.trim()
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(0u8),
                        '1' => Ok(1u8),
                        other => Err(Error::domain(format!("'{other}' in transition matrix"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn allows(&self, from: u8, to: u8) -> bool {
        self.allowed[from as usize * self.size + to as usize]
    }

    fn successors(&self, from: u8) -> Vec<u8> {
        (0..self.size as u8).filter(|&to| self.allows(from, to)).collect()
    }
}

/// Walk of `N` symbols starting at `start`, each step choosing uniformly among
/// the allowed successors.
pub fn markov_sequence(
    transition: &TransitionMatrix,
    start: u8,
    len: usize,
    rng: &mut RandomSource,
) -> Result<SymbolSequence> {
    if start as usize >= transition.size {
        return Err(Error::domain(format!("start state {start} outside the matrix")));
    }
    if len == 0 {
        return Err(Error::domain("markov sequence needs N >= 1"));
    }
    let successors: Vec<Vec<u8>> = (0..transition.size as u8)
        .map(|s| transition.successors(s))
        .collect();
    let mut symbols = Vec::with_capacity(len);
    let mut state = start;
    symbols.push(state);
    while symbols.len() < len {
        let next = &successors[state as usize];
        if next.is_empty() {
            return Err(Error::domain(format!(
                "state {state} has no allowed successor (position {})",
                symbols.len()
            )));
        }
        state = next[rng.next_index(next.len())];
        symbols.push(state);
    }
    Ok(SymbolSequence::from_trusted(transition.size as u32, symbols))
}
