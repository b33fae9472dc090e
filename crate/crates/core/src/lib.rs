//! Trajectory-wise complexity of individual symbol sequences.
//!
//! The crate computes finite-size estimates of the *local entropy* (per-symbol
//! Shannon entropy of the empirical distribution of length-`n` subwords) and the
//! *information entropy* (per-symbol logarithm of the number of distinct
//! length-`n` subwords) of a single sequence, along with the generators used to
//! study them: prime indicators, quadratic residue words, the binary
//! Champernowne sequence, homogeneous and inhomogeneous Bernoulli processes,
//! periodic sequences and topological Markov chains.
//!
//! All logarithms are base 2 unless a function says otherwise.

pub mod checks;
pub mod combinatorics;
pub mod entropy;
mod error;
pub mod estimators;
pub mod generators;
pub mod io;
pub mod words;

pub use error::{Error, Result};

pub use checks::{CheckReport, Instance, Role, Status};
pub use combinatorics::{avoid_count, growth_rate, tuple_count, AvoidanceCounter, TupleCensus};
pub use entropy::{
    entropy_difference_bound, entropy_max_bound, point_entropy, shannon_entropy,
    MassDistribution, Support,
};
pub use estimators::{
    entropy_profile, estimate_h_info, estimate_h_loc, series_scheme_profile, EntropyEstimate,
    EntropyProfile, EstimateMethod, ProfileOptions, ProfileRow,
};
pub use generators::{
    bernoulli_realization, champernowne_binary, cramer_spec, markov_sequence, periodic_sequence,
    prime_indicator, quadratic_residue_word, BernoulliSpec, RandomSource, TransitionMatrix,
};
pub use words::{
    count_words, distinct_count, occurrences, ones_count, word_distribution, zero_word_frequency,
    SymbolSequence, WordCountTable, WordKey,
};
