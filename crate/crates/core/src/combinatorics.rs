//! Exact counts of binary words avoiding a forbidden pattern, and prime-tuple
//! censuses.
//!
//! Avoidance counts run a transfer recursion over the prefix automaton of the
//! forbidden word: state `s` means the last `s` symbols read equal the first
//! `s` symbols of the pattern, and reaching state `|f|` kills the word.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::generators::PrimeTable;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct AvoidanceCounter {
    forbidden: Vec<u8>,
    /// `next[s][c]` for live states `s < |f|`; `|f|` is the dead state.
    next: Vec<[usize; 2]>,
}

impl AvoidanceCounter {
    pub fn new(forbidden: &[u8]) -> Result<Self> {
        if forbidden.is_empty() {
            return Err(Error::domain("forbidden word must be non-empty"));
        }
        if forbidden.iter().any(|&b| b > 1) {
            return Err(Error::domain("forbidden word must be binary"));
        }
        let m = forbidden.len();
        // failure[s]: length of the longest proper border of forbidden[..s]
        let mut failure = vec![0usize; m + 1];
        let mut k = 0;
        for s in 1..m {
            while k > 0 && forbidden[s] != forbidden[k] {
                k = failure[k];
            }
            if forbidden[s] == forbidden[k] {
                k += 1;
            }
            failure[s + 1] = k;
        }
        let mut next = vec![[0usize; 2]; m];
        for s in 0..m {
            for c in 0..2u8 {
                next[s][c as usize] = if forbidden[s] == c {
                    s + 1
                } else if s == 0 {
                    0
                } else {
                    next[failure[s]][c as usize]
                };
            }
        }
        Ok(Self {
            forbidden: forbidden.to_vec(),
            next,
        })
    }

    pub fn forbidden(&self) -> &[u8] {
        &self.forbidden
    }

    /// Number of live automaton states.
    pub fn states(&self) -> usize {
        self.next.len()
    }

    fn step<T: Clone + Zero + std::ops::AddAssign>(&self, v: &[T]) -> Vec<T> {
        let m = self.states();
        let mut out = vec![T::zero(); m];
        for (s, count) in v.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            for &t in &self.next[s] {
                if t < m {
                    out[t] += count.clone();
                }
            }
        }
        out
    }

    /// Avoiding words of every length `0..=n_max`.
    pub fn counts_up_to(&self, n_max: usize) -> Vec<BigUint> {
        let mut v = vec![BigUint::zero(); self.states()];
        v[0] = BigUint::one();
        let mut totals = Vec::with_capacity(n_max + 1);
        totals.push(BigUint::one());
        for _ in 0..n_max {
            v = self.step(&v);
            totals.push(v.iter().sum());
        }
        totals
    }

    /// Avoiding words of length `n`.
    pub fn count(&self, n: usize) -> BigUint {
        self.counts_up_to(n).pop().expect("at least the empty word")
    }

    /// Dominant eigenvalue of the transfer matrix, by iterating the ratio of
    /// consecutive counts until it changes by less than `1e-12` relative.
    ///
    /// Words with polynomially growing counts converge slowly and stop at the
    /// iteration cap with a ratio slightly above 1.
    pub fn growth_rate(&self) -> f64 {
        const MAX_STEPS: usize = 1_000_000;
        let mut v = vec![0.0f64; self.states()];
        v[0] = 1.0;
        let mut previous = f64::NAN;
        for _ in 0..MAX_STEPS {
            let next = self.step(&v);
            let total: f64 = next.iter().sum();
            let prior: f64 = v.iter().sum();
            let ratio = total / prior;
            v = next.into_iter().map(|x| x / total).collect();
            if (ratio - previous).abs() <= 1e-12 * ratio {
                return ratio;
            }
            previous = ratio;
        }
        previous
    }
}

/// Number of binary words of length `n` with no contiguous occurrence of `forbidden`.
pub fn avoid_count(forbidden: &[u8], n: usize) -> Result<BigUint> {
    Ok(AvoidanceCounter::new(forbidden)?.count(n))
}

pub fn growth_rate(forbidden: &[u8]) -> Result<f64> {
    Ok(AvoidanceCounter::new(forbidden)?.growth_rate())
}

/// Parses a word written as `0`/`1` characters.
pub fn parse_binary_word(text: &str) -> Result<Vec<u8>> {
    text.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(Error::domain(format!("'{other}' is not a binary digit"))),
        })
        .collect()
}

/// Census of prime constellations `m, m + a₁, …, m + a_k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TupleCensus {
    pub offsets: Vec<u64>,
    pub limit: u64,
    /// Primes `m <= N` with every `m + aᵢ` prime.
    pub count: u64,
    pub admissible: bool,
    /// Smallest prime whose residue classes the pattern covers, if any.
    pub obstruction: Option<u64>,
    /// `count · (ln N)^(k+1) / N`.
    pub empirical_constant: f64,
}

/// Residue-class obstruction of the pattern `{0, a₁, …, a_k}`.
///
/// Only primes `p <= k + 1` can be covered by `k + 1` offsets.
pub fn tuple_obstruction(offsets: &[u64]) -> Option<u64> {
    let size = offsets.len() as u64 + 1;
    (2..=size)
        .filter(|&p| crate::generators::is_prime_by_trial_division(p))
        .find(|&p| {
            let mut seen = vec![false; p as usize];
            seen[0] = true;
            for &a in offsets {
                seen[(a % p) as usize] = true;
            }
            seen.iter().all(|&s| s)
        })
}

pub fn tuple_count(offsets: &[u64], limit: u64) -> Result<TupleCensus> {
    let mut sorted = offsets.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::domain("tuple offsets must be distinct"));
    }
    if let Some(a) = sorted.iter().find(|&&a| a == 0 || a % 2 == 1) {
        return Err(Error::domain(format!(
            "tuple offset {a} is not a positive even integer"
        )));
    }
    let widest = sorted.last().copied().unwrap_or(0);
    if limit < widest || limit < 2 {
        return Err(Error::domain(format!(
            "limit {limit} is below the widest offset {widest}"
        )));
    }
    let table = PrimeTable::new(limit + widest);
    let count = (2..=limit)
        .filter(|&m| table.is_prime(m) && offsets.iter().all(|&a| table.is_prime(m + a)))
        .count() as u64;
    let obstruction = tuple_obstruction(offsets);
    let ln_n = (limit as f64).ln();
    Ok(TupleCensus {
        offsets: offsets.to_vec(),
        limit,
        count,
        admissible: obstruction.is_none(),
        obstruction,
        empirical_constant: count as f64 * ln_n.powi(offsets.len() as i32 + 1) / limit as f64,
    })
}

/// `BigUint` to `f64`, saturating at infinity.
pub(crate) fn big_to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}
