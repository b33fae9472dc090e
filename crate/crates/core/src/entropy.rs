//! Shannon entropy of discrete, possibly sub-probabilistic, distributions.
//!
//! A [`MassDistribution`] is a finite list of non-negative masses that need not
//! sum to one. Entropy is measured in bits: `H(p) = -Σ pᵢ log₂ pᵢ`, with the
//! convention `H(0) = 0`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Masses below this are treated as exactly zero.
pub const MASS_FLOOR: f64 = 1e-300;

/// Size of the ambient outcome set a distribution lives on.
///
/// Finite sizes are stored as `base^exponent` so that word spaces such as
/// `r^n` stay exact even when they overflow a machine integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Support {
    Finite { base: u64, exponent: u32 },
    Unbounded,
}

impl Support {
    pub fn finite(size: u64) -> Self {
        Support::Finite {
            base: size,
            exponent: 1,
        }
    }

    /// The support of words of length `n` over an alphabet of size `r`.
    pub fn words(r: u64, n: u32) -> Self {
        Support::Finite {
            base: r,
            exponent: n,
        }
    }

    /// `log₂` of the support size, `None` when unbounded.
    pub fn log2(&self) -> Option<f64> {
        match *self {
            Support::Finite { base, exponent } => Some(exponent as f64 * (base as f64).log2()),
            Support::Unbounded => None,
        }
    }

    /// Exact size when it fits in a `u128`.
    pub fn size(&self) -> Option<u128> {
        match *self {
            Support::Finite { base, exponent } => (base as u128).checked_pow(exponent),
            Support::Unbounded => None,
        }
    }

    fn admits(&self, positives: usize) -> bool {
        match self {
            Support::Unbounded => true,
            Support::Finite { .. } => self.size().is_none_or(|s| positives as u128 <= s),
        }
    }
}

/// Non-negative masses on a discrete outcome set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MassDistribution {
    masses: Vec<f64>,
    support: Support,
}

impl MassDistribution {
    pub fn new(masses: Vec<f64>, support: Support) -> Result<Self> {
        if let Some(bad) = masses.iter().find(|m| !(m.is_finite() && **m >= 0.0)) {
            return Err(Error::domain(format!("mass {bad} is not a non-negative real")));
        }
        if let Support::Finite { base: 0, .. } = support {
            return Err(Error::domain("support bound must be positive"));
        }
        let positives = masses.iter().filter(|&&m| m > 0.0).count();
        if !support.admits(positives) {
            return Err(Error::domain(format!(
                "{positives} positive masses exceed the support bound"
            )));
        }
        Ok(Self { masses, support })
    }

    /// Masses with the support bound set to the number of listed masses.
    pub fn from_masses(masses: Vec<f64>) -> Result<Self> {
        let r = masses.len().max(1) as u64;
        Self::new(masses, Support::finite(r))
    }

    /// Uniform probabilistic distribution over `r` outcomes.
    pub fn uniform(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::domain("uniform distribution needs r >= 1"));
        }
        Self::new(vec![1.0 / r as f64; r], Support::finite(r as u64))
    }

    /// Normalizes non-negative integer counts to frequencies.
    pub fn from_counts(counts: impl IntoIterator<Item = u64>, support: Support) -> Result<Self> {
        let counts: Vec<u64> = counts.into_iter().collect();
        let total: u64 = counts.iter().sum();
        let masses = if total == 0 {
            vec![0.0; counts.len()]
        } else {
            let total = total as f64;
            counts.iter().map(|&c| c as f64 / total).collect()
        };
        Self::new(masses, support)
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn support(&self) -> Support {
        self.support
    }

    /// `‖p‖`, the compensated sum of all masses.
    pub fn total_mass(&self) -> f64 {
        compensated_sum(self.masses.iter().copied())
    }

    /// Smallest listed mass, `None` for an empty list.
    pub fn min_mass(&self) -> Option<f64> {
        self.masses.iter().copied().reduce(f64::min)
    }

    /// Elementwise sum; the shorter list is padded with zeros.
    pub fn perturbed_by(&self, q: &MassDistribution) -> Result<MassDistribution> {
        if self.support != q.support {
            return Err(Error::domain("distributions have different support bounds"));
        }
        let len = self.masses.len().max(q.masses.len());
        let at = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
        let masses = (0..len)
            .map(|i| at(&self.masses, i) + at(&q.masses, i))
            .collect();
        MassDistribution::new(masses, self.support)
    }
}

/// Neumaier-compensated summation.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// `-c·log₂ c`, with exact zeros at `c = 0` and `c = 1`.
pub fn point_entropy(c: f64) -> Result<f64> {
    if c.is_nan() || c < 0.0 {
        return Err(Error::domain(format!("point entropy of {c}")));
    }
    Ok(point_entropy_unchecked(c))
}

#[inline]
pub(crate) fn point_entropy_unchecked(c: f64) -> f64 {
    if c < MASS_FLOOR || c == 1.0 {
        0.0
    } else {
        -c * c.log2()
    }
}

/// Binary entropy `H(q) + H(1 - q)` of a Bernoulli variable, in bits.
pub fn bernoulli_entropy(q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::domain(format!("bernoulli parameter {q} outside [0, 1]")));
    }
    Ok(point_entropy_unchecked(q) + point_entropy_unchecked(1.0 - q))
}

pub fn shannon_entropy(p: &MassDistribution) -> f64 {
    compensated_sum(p.masses.iter().map(|&m| point_entropy_unchecked(m)))
}

/// Upper bound `‖p‖·(log₂ r − log₂ ‖p‖)` on the entropy of a distribution
/// with `r` outcomes.
pub fn entropy_max_bound(p: &MassDistribution) -> Result<f64> {
    let log_r = p
        .support
        .log2()
        .ok_or_else(|| Error::Unsupported("entropy bound needs a finite support".into()))?;
    let total = p.total_mass();
    if total < MASS_FLOOR {
        return Ok(0.0);
    }
    Ok(total * (log_r - total.log2()))
}

/// Bound on `|H(p + q) − H(p)|` for a non-negative perturbation `q`.
///
/// Returns the smaller of
/// `H(p) + H(‖p‖) + H(‖q‖) + ‖q‖·log₂ r` and `2·|log₂(e·minᵢ pᵢ)|·‖q‖`.
/// The second branch is infinite when some listed `pᵢ` is zero; the first is
/// infinite on an unbounded support.
pub fn entropy_difference_bound(p: &MassDistribution, q: &MassDistribution) -> Result<f64> {
    if p.support != q.support {
        return Err(Error::domain("distributions have different support bounds"));
    }
    let p_total = p.total_mass();
    let q_total = q.total_mass();

    let global = match p.support.log2() {
        Some(log_r) => {
            shannon_entropy(p)
                + point_entropy_unchecked(p_total)
                + point_entropy_unchecked(q_total)
                + q_total * log_r
        }
        None => f64::INFINITY,
    };

    let local = match p.min_mass() {
        Some(min) if min > 0.0 => 2.0 * (std::f64::consts::E * min).log2().abs() * q_total,
        _ => f64::INFINITY,
    };

    Ok(global.min(local))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(m: &[f64]) -> MassDistribution {
        MassDistribution::from_masses(m.to_vec()).unwrap()
    }

    #[test]
    fn point_entropy_values() {
        assert_eq!(point_entropy(0.0).unwrap(), 0.0);
        assert_eq!(point_entropy(1.0).unwrap(), 0.0);
        assert_eq!(point_entropy(0.5).unwrap(), 0.5);
        assert!(matches!(point_entropy(-0.1), Err(Error::Domain(_))));
        assert!(point_entropy(f64::NAN).is_err());
    }

    #[test]
    fn tiny_masses_are_zero() {
        assert_eq!(point_entropy(1e-310).unwrap(), 0.0);
    }

    #[test]
    fn shannon_examples() {
        assert!((shannon_entropy(&dist(&[0.25; 4])) - 2.0).abs() < 1e-12);
        assert!((shannon_entropy(&dist(&[0.5, 0.25, 0.25])) - 1.5).abs() < 1e-12);
        assert_eq!(shannon_entropy(&dist(&[0.0, 0.0, 0.0])), 0.0);
    }

    #[test]
    fn uniform_is_log_r() {
        for r in [1usize, 2, 3, 7, 64, 1000] {
            let h = shannon_entropy(&MassDistribution::uniform(r).unwrap());
            assert!((h - (r as f64).log2()).abs() < 1e-12, "r={r}");
        }
    }

    #[test]
    fn max_bound_examples() {
        let p = MassDistribution::new(vec![0.125; 8], Support::finite(8)).unwrap();
        assert!((entropy_max_bound(&p).unwrap() - 3.0).abs() < 1e-12);

        let half = MassDistribution::new(vec![0.25, 0.25], Support::finite(4)).unwrap();
        assert!((entropy_max_bound(&half).unwrap() - 1.5).abs() < 1e-12);

        let zero = MassDistribution::new(vec![0.0], Support::finite(4)).unwrap();
        assert_eq!(entropy_max_bound(&zero).unwrap(), 0.0);

        let unbounded = MassDistribution::new(vec![0.5], Support::Unbounded).unwrap();
        assert!(matches!(
            entropy_max_bound(&unbounded),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn rejects_invalid_masses() {
        assert!(MassDistribution::from_masses(vec![0.5, -0.1]).is_err());
        assert!(MassDistribution::from_masses(vec![f64::INFINITY]).is_err());
        assert!(MassDistribution::new(vec![0.1, 0.1, 0.1], Support::finite(2)).is_err());
        // zeros do not count against the support bound
        assert!(MassDistribution::new(vec![0.1, 0.0, 0.1], Support::finite(2)).is_ok());
    }

    #[test]
    fn difference_bound_zero_perturbation() {
        let p = dist(&[0.5, 0.5]);
        let q = dist(&[0.0, 0.0]);
        let bound = entropy_difference_bound(&p, &q).unwrap();
        assert!(bound >= 0.0);
        let diff = shannon_entropy(&p.perturbed_by(&q).unwrap()) - shannon_entropy(&p);
        assert_eq!(diff, 0.0);
    }

    #[test]
    fn difference_bound_small_epsilon() {
        let eps = 1e-4;
        let p = dist(&[0.5, 0.5]);
        let q = dist(&[eps, 0.0]);
        let diff =
            (shannon_entropy(&p.perturbed_by(&q).unwrap()) - shannon_entropy(&p)).abs();
        let local = 2.0 * (std::f64::consts::E * 0.5).log2().abs() * eps;
        assert!(diff <= local);
        assert!(entropy_difference_bound(&p, &q).unwrap() <= local + 1e-18);
    }

    #[test]
    fn difference_bound_mismatched_supports() {
        let p = MassDistribution::new(vec![0.5, 0.5], Support::finite(2)).unwrap();
        let q = MassDistribution::new(vec![0.0, 0.0], Support::finite(3)).unwrap();
        assert!(matches!(
            entropy_difference_bound(&p, &q),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn zero_mass_disables_local_branch() {
        let p = dist(&[0.5, 0.0]);
        let q = dist(&[0.01, 0.01]);
        let b = entropy_difference_bound(&p, &q).unwrap();
        assert!(b.is_finite());
        let global = shannon_entropy(&p) + 0.5 + point_entropy(0.02).unwrap() + 0.02;
        assert!((b - global).abs() < 1e-12);
    }

    #[test]
    fn compensated_sum_keeps_digits() {
        let naive: f64 = std::iter::once(1.0)
            .chain(std::iter::repeat_n(1e-16, 10_000))
            .sum();
        let comp = compensated_sum(std::iter::once(1.0).chain(std::iter::repeat_n(1e-16, 10_000)));
        assert_eq!(naive, 1.0);
        assert!((comp - (1.0 + 1e-12)).abs() < 1e-15);
    }

    #[test]
    fn bernoulli_entropy_values() {
        assert_eq!(bernoulli_entropy(0.5).unwrap(), 1.0);
        assert_eq!(bernoulli_entropy(0.0).unwrap(), 0.0);
        assert_eq!(bernoulli_entropy(1.0).unwrap(), 0.0);
        assert!(bernoulli_entropy(1.5).is_err());
    }
}
