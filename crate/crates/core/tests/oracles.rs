//! Library results against independently computed references.

use std::collections::HashMap;

use num_bigint::BigUint;

use seqentropy::checks::{check_perturbation_lemma, check_prime_entropy_bound, check_rare_ones};
use seqentropy::combinatorics::tuple_obstruction;
use seqentropy::generators::is_prime_by_trial_division;
use seqentropy::{
    avoid_count, bernoulli_realization, champernowne_binary, count_words, entropy_difference_bound,
    entropy_profile, estimate_h_info, estimate_h_loc, growth_rate, occurrences, ones_count,
    prime_indicator, quadratic_residue_word, series_scheme_profile, shannon_entropy, tuple_count,
    word_distribution, zero_word_frequency, BernoulliSpec, MassDistribution, RandomSource, Support,
    SymbolSequence,
};

fn contains(word: u32, len: usize, f: &[u8]) -> bool {
    let bits: Vec<u8> = (0..len).rev().map(|s| (word >> s & 1) as u8).collect();
    bits.windows(f.len()).any(|w| w == f)
}

#[test]
fn avoidance_counts_match_enumeration() {
    let patterns: [&[u8]; 8] = [&[0], &[1, 1], &[1, 0], &[0, 0, 0], &[1, 0, 1], &[1, 1, 0, 1], &[0, 1, 1, 0], &[1, 1, 1, 1]];
    for f in patterns {
        for n in 0..=14 {
            let brute = (0u32..1 << n).filter(|&w| !contains(w, n, f)).count();
            assert_eq!(avoid_count(f, n).unwrap(), BigUint::from(brute), "f={f:?} n={n}");
        }
    }
}

#[test]
fn eleven_avoiding_counts_follow_fibonacci() {
    let (mut a, mut b) = (BigUint::from(1u8), BigUint::from(2u8));
    for n in 0..=80 {
        assert_eq!(avoid_count(&[1, 1], n).unwrap(), a, "n={n}");
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((growth_rate(&[1, 1]).unwrap() - phi).abs() < 1e-9);
    assert!((growth_rate(&[0]).unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn prime_indicator_against_trial_division() {
    let len = 1_000_000;
    let b = prime_indicator(len, false).unwrap();
    assert_eq!(ones_count(&b, len).unwrap(), 78_498);
    let with_one = prime_indicator(len, true).unwrap();
    assert_eq!(ones_count(&with_one, len).unwrap(), 78_499);
    let mut rng = RandomSource::new(5);
    for _ in 0..1000 {
        let k = 1 + rng.next_index(len) as u64;
        assert_eq!(b.symbols()[k as usize - 1] == 1, is_prime_by_trial_division(k), "k={k}");
    }
}

#[test]
fn small_prime_indicator_pairs() {
    let with_one = prime_indicator(100, true).unwrap();
    let without = prime_indicator(100, false).unwrap();
    assert_eq!(occurrences(&with_one, &[1, 1], 100).unwrap(), 2);
    assert_eq!(occurrences(&without, &[1, 1], 100).unwrap(), 1);
}

#[test]
fn residue_word_for_nineteen() {
    let w = quadratic_residue_word(19).unwrap();
    let ones: Vec<usize> = (1..19).filter(|&k| w.symbols()[k - 1] == 1).collect();
    assert_eq!(ones, [1, 4, 5, 6, 7, 9, 11, 16, 17]);
    let t = count_words(&w, 1).unwrap();
    assert_eq!((t.get(&[0]), t.get(&[1])), (9, 9));
    assert!(quadratic_residue_word(21).is_err());
    assert!(quadratic_residue_word(2).is_err());
}

#[test]
fn residue_word_is_multiplicative() {
    // the indicator of squares mod q is a character: (ab|q) = (a|q)(b|q)
    for q in [101u64, 1009] {
        let w = quadratic_residue_word(q).unwrap();
        let chi = |k: u64| if w.symbols()[(k - 1) as usize] == 1 { 1 } else { -1 };
        for a in 1..q {
            for b in (1..q).step_by(7) {
                assert_eq!(chi(a * b % q), chi(a) * chi(b), "q={q} a={a} b={b}");
            }
        }
    }
}

#[test]
fn champernowne_covers_all_short_words() {
    let x = champernowne_binary(10_000).unwrap();
    assert_eq!(&x.symbols()[..8], &[1, 1, 0, 1, 1, 1, 0, 0]);
    let seen: std::collections::HashSet<&[u8]> = x.symbols().windows(8).collect();
    assert_eq!(seen.len(), 256);
    assert_eq!(count_words(&x, 8).unwrap().distinct(), 256);
}

#[test]
fn bernoulli_frequency_of_ones() {
    let len = 1_000_000;
    let spec = BernoulliSpec::homogeneous(0.3).unwrap();
    let x = bernoulli_realization(&spec, len, &mut RandomSource::new(11)).unwrap();
    let freq = ones_count(&x, len).unwrap() as f64 / len as f64;
    // three standard errors of a binomial proportion
    assert!((freq - 0.3).abs() < 3.0 * (0.3f64 * 0.7 / len as f64).sqrt());
}

#[test]
fn bernoulli_entropy_estimates_within_three_standard_errors() {
    for (q, seed) in [(0.1, 1u64), (0.3, 2), (0.5, 3)] {
        let spec = BernoulliSpec::homogeneous(q).unwrap();
        let x = bernoulli_realization(&spec, 1_000_000, &mut RandomSource::new(seed)).unwrap();
        let h: f64 = -q * f64::log2(q) - (1.0 - q) * f64::log2(1.0 - q);
        // per-symbol spread of -log2 p(x_k) is sqrt(q(1-q))·|log2(q/(1-q))|
        let sd = (q * (1.0 - q)).sqrt() * (q / (1.0 - q)).log2().abs();
        let se = sd / (x.len() as f64).sqrt();
        let p = entropy_profile(&x, 10).unwrap();
        let e = estimate_h_loc(&p).unwrap();
        // plug-in bias is at most (K − 1)/(2W ln 2) per block
        let bias = 1024.0 / (2.0 * x.len() as f64 * std::f64::consts::LN_2);
        assert!(e.upper <= h + 3.0 * se + 1e-12, "q={q}: {e:?} vs {h}");
        assert!(e.lower >= h - 3.0 * se - bias, "q={q}: {e:?} vs {h}");
    }
}

#[test]
fn census_matches_hash_map_count() {
    let x = champernowne_binary(50_000).unwrap();
    for n in [1, 5, 17, 30, 70] {
        let mut reference: HashMap<&[u8], u64> = HashMap::new();
        for w in x.symbols().windows(n) {
            *reference.entry(w).or_default() += 1;
        }
        let t = count_words(&x, n).unwrap();
        assert_eq!(t.distinct(), reference.len(), "n={n}");
        for (w, &c) in &reference {
            assert_eq!(t.get(w), c, "n={n}");
        }
    }
}

#[test]
fn entropy_of_word_distribution_by_hand() {
    let x = SymbolSequence::from_digits(3, "0120120210").unwrap();
    let t = count_words(&x, 2).unwrap();
    let p = word_distribution(&t);
    assert_eq!(p.support(), Support::words(3, 2));
    // windows: 01 12 20 01 12 20 02 21 10 → counts 2,2,2,1,1,1
    let by_hand = 3.0 * (2.0 / 9.0) * (9.0f64 / 2.0).log2() + 3.0 * (1.0 / 9.0) * 9f64.log2();
    assert!((shannon_entropy(&p) - by_hand).abs() < 1e-12);
}

#[test]
fn zero_words_of_sparse_blocks() {
    // blocks 0^(n−1)1 repeated M times, then zeros
    let (n, m, tail) = (8usize, 500usize, 6000usize);
    let mut bits = Vec::new();
    for _ in 0..m {
        bits.extend(std::iter::repeat_n(0, n - 1));
        bits.push(1);
    }
    bits.extend(std::iter::repeat_n(0, tail));
    let b = SymbolSequence::binary(bits).unwrap();
    let len = b.len();
    let freq = zero_word_frequency(&b, n, len).unwrap();
    let bound = 1.0 - (m as f64 / len as f64) * n as f64 / (1.0 - n as f64 / len as f64);
    assert!((freq - bound).abs() <= 2.0 / (len - n) as f64, "{freq} vs {bound}");
    assert!(check_rare_ones(&b, &[2, 4, 8, 16]).unwrap().passed());
}

#[test]
fn twin_primes_and_tuples() {
    let brute = |offsets: &[u64], limit: u64| {
        (2..=limit)
            .filter(|&m| is_prime_by_trial_division(m) && offsets.iter().all(|a| is_prime_by_trial_division(m + a)))
            .count() as u64
    };
    for (offsets, limit) in [(vec![2u64], 100u64), (vec![2], 10_000), (vec![2, 6], 10_000), (vec![4, 6], 5000)] {
        assert_eq!(tuple_count(&offsets, limit).unwrap().count, brute(&offsets, limit), "{offsets:?}");
    }
    assert_eq!(tuple_count(&[2], 100).unwrap().count, 8);
    assert_eq!(tuple_obstruction(&[2, 4]), Some(3));
    assert_eq!(tuple_obstruction(&[2, 6]), None);
}

#[test]
fn twin_prime_constant_stays_bounded() {
    let values: Vec<f64> = [10_000u64, 100_000, 1_000_000, 10_000_000]
        .iter()
        .map(|&n| tuple_count(&[2], n).unwrap().empirical_constant)
        .collect();
    // 2·C₂ ≈ 1.32; the finite-size constant drifts slowly toward it
    for v in &values {
        assert!((1.0..2.5).contains(v), "{values:?}");
    }
}

#[test]
fn continuity_fails_on_infinite_alphabets() {
    // total mass 1/log2 k spread over k atoms: the mass vanishes, the entropy
    // 1 + log2(log2 k)/log2 k does not
    let mut previous_mass = f64::INFINITY;
    for k in [1u64 << 10, 1 << 16, 1 << 20] {
        let eps = 1.0 / (k as f64).log2();
        let q = MassDistribution::new(vec![eps / k as f64; k as usize], Support::Unbounded).unwrap();
        let h = shannon_entropy(&q);
        let closed = 1.0 + (k as f64).log2().log2() / (k as f64).log2();
        assert!((h - closed).abs() < 1e-9, "k={k}: {h} vs {closed}");
        assert!(h >= 1.0);
        assert!(q.total_mass() < previous_mass);
        previous_mass = q.total_mass();
        // without a finite alphabet no bound on the jump is available
        let zero = MassDistribution::new(vec![0.0; k as usize], Support::Unbounded).unwrap();
        assert_eq!(entropy_difference_bound(&zero, &q).unwrap(), f64::INFINITY);
    }
}

#[test]
fn perturbation_families_closed_form() {
    let n_list: Vec<u64> = (10..=30).step_by(5).map(|e| 1u64 << e).collect();
    let r = check_perturbation_lemma(1.0, 0.5, &n_list).unwrap();
    let h_a = r.summary.observations["H_a"].as_array().unwrap();
    for (v, &n) in h_a.iter().zip(&n_list) {
        let eps = (n as f64).powf(-0.5);
        let closed = eps * ((n as f64).log2() - eps.log2());
        assert!((v["H"].as_f64().unwrap() - closed).abs() < 1e-12);
    }
}

#[test]
fn prime_entropy_report_at_one_million() {
    let r = check_prime_entropy_bound(1_000_000, 16, true).unwrap();
    assert!(r.passed(), "{}", r.to_json());
    let coverage = r.summary.observations["coverage_of_11_avoiding_words"].as_array().unwrap();
    assert_eq!(coverage.len(), 16);
}

#[test]
fn residue_series_approaches_one() {
    let words: Vec<SymbolSequence> = [1009u64, 10_007, 100_003]
        .iter()
        .map(|&q| quadratic_residue_word(q).unwrap())
        .collect();
    let series = series_scheme_profile(&words, 16).unwrap();
    for (len, p) in &series {
        let e = estimate_h_info(p).unwrap();
        assert!(e.lower > 0.99, "length {len}: {e:?}");
    }
}
