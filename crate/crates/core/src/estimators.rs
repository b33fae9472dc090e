//! Finite-size estimators of local and information entropy.
//!
//! For a prefix of length `N` and each word length `n`, a profile row holds
//! `(1/n)·H(p(x, n, N))` (local) and `(1/n)·log₂ L(x, n, N)` (information),
//! where `p` is the empirical distribution of length-`n` windows and `L` the
//! number of distinct windows. The limit `n → ∞` is approximated over the
//! rows where every word could be seen about 100 times under uniformity,
//! `r^n <= (N − n + 1) / 100`.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entropy::shannon_entropy;
use crate::words::{count_words, word_distribution, SymbolSequence};
use crate::{Error, Result};

/// Expected observations per word required for a row to count as reliable.
pub const RELIABILITY_FACTOR: f64 = 100.0;

/// Spread between lower and upper plateau values above which an estimate is
/// flagged as non-plateau.
pub const PLATEAU_SPREAD: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub n: usize,
    pub windows: u64,
    pub distinct: u64,
    pub local_value: f64,
    pub info_value: f64,
    pub reliable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyProfile {
    pub prefix_len: usize,
    pub alphabet_size: u32,
    pub rows: Vec<ProfileRow>,
    /// Largest reliable `n`; 0 when even `n = 1` is undersampled.
    pub reliability_cutoff: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ProfileOptions {
    /// Add the Miller–Madow term `(K − 1) / (2W ln 2)` to each block entropy.
    pub miller_madow: bool,
}

/// Largest `n` with `r^n <= (N − n + 1) / 100`, or 0 if there is none.
pub fn reliability_cutoff(alphabet_size: u32, prefix_len: usize) -> usize {
    let factor = RELIABILITY_FACTOR as u128;
    if alphabet_size == 1 {
        return prefix_len.saturating_sub(factor as usize - 1).min(prefix_len.saturating_sub(1));
    }
    let mut cutoff = 0;
    let mut power = 1u128;
    for n in 1..prefix_len {
        power *= alphabet_size as u128;
        if power * factor > (prefix_len - n + 1) as u128 {
            break;
        }
        cutoff = n;
    }
    cutoff
}

pub fn entropy_profile(x: &SymbolSequence, n_max: usize) -> Result<EntropyProfile> {
    entropy_profile_with(x, n_max, ProfileOptions::default())
}

pub fn entropy_profile_with(
    x: &SymbolSequence,
    n_max: usize,
    options: ProfileOptions,
) -> Result<EntropyProfile> {
    let len = x.len();
    if n_max == 0 || n_max >= len {
        return Err(Error::domain(format!(
            "n_max {n_max} must lie in 1..{len}"
        )));
    }
    let cutoff = reliability_cutoff(x.alphabet_size(), len);
    let rows = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let table = count_words(x, n)?;
            let distinct = table.distinct() as u64;
            let windows = table.window_total();
            let mut block = shannon_entropy(&word_distribution(&table));
            if options.miller_madow {
                block += (distinct as f64 - 1.0) / (2.0 * windows as f64 * std::f64::consts::LN_2);
            }
            let info_value = (distinct as f64).log2() / n as f64;
            let local_value = block / n as f64;
            Ok(ProfileRow {
                n,
                windows,
                distinct,
                local_value,
                info_value,
                reliable: n <= cutoff,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EntropyProfile {
        prefix_len: len,
        alphabet_size: x.alphabet_size(),
        rows,
        reliability_cutoff: cutoff,
    })
}

impl EntropyProfile {
    pub fn row(&self, n: usize) -> Option<&ProfileRow> {
        self.rows.get(n.checked_sub(1)?)
    }

    pub fn n_max(&self) -> usize {
        self.rows.len()
    }

    /// Writes `n,windows,distinct,local_value,info_value,reliable` rows.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        #[derive(Serialize)]
        struct CsvRow {
            n: usize,
            windows: u64,
            distinct: u64,
            local_value: f64,
            info_value: f64,
            reliable: u8,
        }
        let mut writer = csv::Writer::from_writer(out);
        for row in &self.rows {
            writer.serialize(CsvRow {
                n: row.n,
                windows: row.windows,
                distinct: row.distinct,
                local_value: row.local_value,
                info_value: row.info_value,
                reliable: u8::from(row.reliable),
            })?;
        }
        writer.flush()?;
        Ok(())
    }

    /// Rows `n` in the last third of `1..=min(cutoff, n_max)`.
    pub fn plateau_window(&self) -> Result<std::ops::RangeInclusive<usize>> {
        let top = self.reliability_cutoff.min(self.n_max());
        if top < 3 {
            return Err(Error::InsufficientData(format!(
                "only {top} reliable rows, an estimate needs at least 3"
            )));
        }
        let width = top.div_ceil(3);
        Ok(top - width + 1..=top)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateMethod {
    /// Minimum and maximum over the window.
    Plateau,
    /// Mean over the window, reported as both bounds.
    TailAverage,
}

/// Finite-size proxy for `(lim inf, lim sup)` of a profile column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyEstimate {
    pub lower: f64,
    pub upper: f64,
    pub n_from: usize,
    pub n_to: usize,
    pub method: EstimateMethod,
}

impl EntropyEstimate {
    /// Lower and upper differ by more than [`PLATEAU_SPREAD`].
    pub fn non_plateau(&self) -> bool {
        self.upper - self.lower > PLATEAU_SPREAD
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

fn estimate(
    p: &EntropyProfile,
    method: EstimateMethod,
    column: impl Fn(&ProfileRow) -> f64,
) -> Result<EntropyEstimate> {
    let window = p.plateau_window()?;
    let values: Vec<f64> = window.clone().map(|n| column(&p.rows[n - 1])).collect();
    let cap = (p.alphabet_size as f64).log2();
    let (lower, upper) = match method {
        EstimateMethod::Plateau => (
            values.iter().copied().fold(f64::INFINITY, f64::min),
            values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        ),
        EstimateMethod::TailAverage => {
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            (mean, mean)
        }
    };
    Ok(EntropyEstimate {
        lower: lower.clamp(0.0, cap),
        upper: upper.clamp(0.0, cap),
        n_from: *window.start(),
        n_to: *window.end(),
        method,
    })
}

pub fn estimate_h_loc(p: &EntropyProfile) -> Result<EntropyEstimate> {
    estimate(p, EstimateMethod::Plateau, |r| r.local_value)
}

pub fn estimate_h_info(p: &EntropyProfile) -> Result<EntropyEstimate> {
    estimate(p, EstimateMethod::Plateau, |r| r.info_value)
}

pub fn estimate_h_loc_with(p: &EntropyProfile, method: EstimateMethod) -> Result<EntropyEstimate> {
    estimate(p, method, |r| r.local_value)
}

pub fn estimate_h_info_with(p: &EntropyProfile, method: EstimateMethod) -> Result<EntropyEstimate> {
    estimate(p, method, |r| r.info_value)
}

/// Profiles of a family of words of strictly increasing length, each word
/// analyzed on its own. Rows stop at `min(n_max, |word| − 1)`.
pub fn series_scheme_profile(
    words: &[SymbolSequence],
    n_max: usize,
) -> Result<Vec<(usize, EntropyProfile)>> {
    if words.len() < 2 {
        return Err(Error::domain("a series scheme needs at least two words"));
    }
    if words.windows(2).any(|w| w[0].len() >= w[1].len()) {
        return Err(Error::domain("word lengths must be strictly increasing"));
    }
    words
        .par_iter()
        .map(|w| {
            let n = n_max.min(w.len().saturating_sub(1));
            entropy_profile(w, n).map(|p| (w.len(), p))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::periodic_sequence;

    #[test]
    fn cutoff_definition() {
        // 2^n <= (N - n + 1)/100
        assert_eq!(reliability_cutoff(2, 1008), 3);
        assert_eq!(reliability_cutoff(2, 10006), 6);
        assert_eq!(reliability_cutoff(2, 100_002), 9);
        assert_eq!(reliability_cutoff(2, 10_000_000), 16);
        assert_eq!(reliability_cutoff(2, 100), 0);
        assert_eq!(reliability_cutoff(4, 1_000_000), 6);
    }

    #[test]
    fn constant_sequence_profile_is_zero() {
        let x = SymbolSequence::binary(vec![1; 5000]).unwrap();
        let p = entropy_profile(&x, 10).unwrap();
        assert!(p.rows.iter().all(|r| r.local_value == 0.0 && r.info_value == 0.0));
        let e = estimate_h_loc(&p).unwrap();
        assert_eq!((e.lower, e.upper), (0.0, 0.0));
    }

    #[test]
    fn alternating_sequence_rows() {
        let pattern = SymbolSequence::from_digits(2, "01").unwrap();
        let x = periodic_sequence(&pattern, 100_000).unwrap();
        let p = entropy_profile(&x, 12).unwrap();
        let row = p.row(10).unwrap();
        assert!((row.info_value - 0.1).abs() < 1e-12);
        assert!((row.local_value - 0.1).abs() < 1e-9);
        assert!(p.row(12).unwrap().info_value < row.info_value);
    }

    #[test]
    fn n_max_bounds() {
        let x = SymbolSequence::binary(vec![0, 1, 0]).unwrap();
        assert!(matches!(entropy_profile(&x, 3), Err(Error::Domain(_))));
        assert!(entropy_profile(&x, 0).is_err());
        assert!(entropy_profile(&x, 2).is_ok());
    }

    #[test]
    fn estimate_needs_three_reliable_rows() {
        let x = SymbolSequence::binary([0, 1].repeat(200)).unwrap();
        let p = entropy_profile(&x, 5).unwrap();
        assert!(p.reliability_cutoff < 3);
        assert!(matches!(estimate_h_loc(&p), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn window_is_last_third() {
        let x = SymbolSequence::binary([0, 1, 1].repeat(400_000)).unwrap();
        let p = entropy_profile(&x, 20).unwrap();
        assert_eq!(p.reliability_cutoff, 13);
        assert_eq!(p.plateau_window().unwrap(), 9..=13);
        let e = estimate_h_info(&p).unwrap();
        assert_eq!((e.n_from, e.n_to), (9, 13));
        assert!((e.upper - 3f64.log2() / 9.0).abs() < 1e-12);
        assert!((e.lower - 3f64.log2() / 13.0).abs() < 1e-12);
        let avg = estimate_h_info_with(&p, EstimateMethod::TailAverage).unwrap();
        assert_eq!(avg.lower, avg.upper);
    }

    #[test]
    fn csv_layout() {
        let x = SymbolSequence::from_digits(2, "0110").unwrap();
        let p = entropy_profile(&x, 2).unwrap();
        let mut buf = Vec::new();
        p.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "n,windows,distinct,local_value,info_value,reliable"
        );
        assert_eq!(lines.next().unwrap(), "1,4,2,1.0,1.0,0");
        assert_eq!(lines.count(), 1);
    }

    #[test]
    fn series_scheme_validation() {
        let a = SymbolSequence::binary(vec![0; 100]).unwrap();
        let b = SymbolSequence::binary(vec![0; 200]).unwrap();
        assert!(series_scheme_profile(std::slice::from_ref(&a), 4).is_err());
        assert!(series_scheme_profile(&[b.clone(), a.clone()], 4).is_err());
        let out = series_scheme_profile(&[a, b], 4).unwrap();
        assert_eq!(out.len(), 2);
        assert!(out
            .iter()
            .all(|(_, p)| p.rows.iter().all(|r| r.local_value == 0.0)));
    }

    #[test]
    fn miller_madow_adds_nonnegative_term() {
        let x = SymbolSequence::from_digits(2, "0010111010001101110000101").unwrap();
        let raw = entropy_profile(&x, 4).unwrap();
        let corrected =
            entropy_profile_with(&x, 4, ProfileOptions { miller_madow: true }).unwrap();
        for (a, b) in raw.rows.iter().zip(&corrected.rows) {
            assert!(b.local_value >= a.local_value);
        }
    }
}
