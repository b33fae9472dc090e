//! Segmented, bit-packed sieve of Eratosthenes over odd numbers.
//!
//! Bit `i` of the packed table stands for the odd number `2i + 1`. Each segment
//! covers `SEGMENT_BITS` odd numbers, so the working set is the base primes up
//! to `√limit` plus one segment.

const SEGMENT_BITS: u64 = 1 << 19;

/// Odd primes `3 <= p <= limit`, by a plain sieve.
fn base_primes(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    let mut p = 3;
    while p <= limit {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= limit {
                composite[m] = true;
                m += 2 * p;
            }
        }
        p += 2;
    }
    primes
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Calls `f(first_index, words, bits)` for consecutive segments of the odd
/// table up to `limit`. Indices are in odd-number space; `bits` valid bits of
/// `words` are meaningful.
pub fn for_each_segment(limit: u64, mut f: impl FnMut(u64, &[u64], u64)) {
    if limit < 1 {
        return;
    }
    let total_bits = (limit - 1) / 2 + 1;
    let primes = base_primes(isqrt(limit));
    let mut words = vec![0u64; (SEGMENT_BITS / 64) as usize];

    let mut lo = 0u64;
    while lo < total_bits {
        let hi = (lo + SEGMENT_BITS).min(total_bits);
        let bits = hi - lo;
        words.iter_mut().for_each(|w| *w = u64::MAX);
        if lo == 0 {
            words[0] &= !1; // the number 1
        }
        let last_number = 2 * (hi - 1) + 1;
        let first_number = 2 * lo + 1;
        for &p in &primes {
            if p * p > last_number {
                break;
            }
            let mut m = p * p;
            if m < first_number {
                m = first_number.div_ceil(p) * p;
                if m % 2 == 0 {
                    m += p;
                }
            }
            let mut j = (m - 1) / 2;
            while j < hi {
                let k = j - lo;
                words[(k / 64) as usize] &= !(1u64 << (k % 64));
                j += p;
            }
        }
        let used = bits.div_ceil(64) as usize;
        if !bits.is_multiple_of(64) {
            words[used - 1] &= (1u64 << (bits % 64)) - 1;
        }
        f(lo, &words[..used], bits);
        lo = hi;
    }
}

/// Primality table for all integers up to a limit.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    odd_bits: Vec<u64>,
}

impl PrimeTable {
    pub fn new(limit: u64) -> Self {
        let mut odd_bits = Vec::with_capacity((limit / 128 + 1) as usize);
        for_each_segment(limit, |_, words, _| odd_bits.extend_from_slice(words));
        Self { limit, odd_bits }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Whether `k` is prime. Values above the limit report `false`.
    pub fn is_prime(&self, k: u64) -> bool {
        if k == 2 {
            return self.limit >= 2;
        }
        if k < 2 || k.is_multiple_of(2) || k > self.limit {
            return false;
        }
        let i = (k - 1) / 2;
        self.odd_bits[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    /// `π(limit)`.
    pub fn count(&self) -> u64 {
        let odd: u64 = self.odd_bits.iter().map(|w| w.count_ones() as u64).sum();
        odd + u64::from(self.limit >= 2)
    }
}

/// `π(limit)` without materializing the table.
pub fn prime_count(limit: u64) -> u64 {
    let mut count = u64::from(limit >= 2);
    for_each_segment(limit, |_, words, _| {
        count += words.iter().map(|w| w.count_ones() as u64).sum::<u64>();
    });
    count
}

/// Deterministic primality by trial division; meant for moderate `k`.
pub fn is_prime_by_trial_division(k: u64) -> bool {
    if k < 2 {
        return false;
    }
    if k.is_multiple_of(2) {
        return k == 2;
    }
    let mut d = 3u64;
    while d * d <= k {
        if k.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
