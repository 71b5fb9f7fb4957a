//! Quantifies the evidence carried by a DNA match found through a database
//! search, under frequentist, Bayesian and pure-likelihood reasoning, and
//! checks every closed form against brute-force enumeration and seeded
//! Monte Carlo. The [`paradoxes`] module holds the raffle, birthday and
//! card-deck numbers that motivate the comparison.

pub mod cli;
pub mod error;
pub mod evidence;
pub mod paradoxes;
pub mod ratio;
pub mod rng;
pub mod simulation;

pub use error::{EvidenceError, Result};
pub use evidence::{
    compare_schools, lr_bayes, lr_frequentist, lr_hot, lr_pure, lr_total, prior_odds,
    psnd_from_population, ComparisonReport, PriorSpec, Scenario,
};
pub use ratio::{Probability, RatioValue};
pub use simulation::{
    empirical_lr, enumerate_exact, likelihoods_matcher, match_event_probs, simulate_trials,
    EmpiricalCounts, EmpiricalRatioReport, ExactTable, HypothesisSpec, MatchVector,
};
