//! Exact enumeration and seeded Monte Carlo for the cold-search match events.
//!
//! Two events are tracked over the match vector `y = (y_1, ..., y_{D+1})`:
//!
//! * `E`, exactly one profile matches (anywhere), which drives the
//!   frequentist ratio;
//! * the Matcher event, `y_1 = 1` and every other `y_i = 0`, which drives the
//!   pure-likelihood ratio.
//!
//! Under "profile `i` is the source" profile `i` always matches and every
//! other profile matches independently with probability `p`. Under "source
//! not in the database" every profile matches with probability `p`.

use std::f64::consts::LN_10;
use std::fmt;

use rand::distributions::{Bernoulli, Distribution};
use rayon::prelude::*;

use crate::error::{EvidenceError, Result};
use crate::ratio::{Probability, RatioValue};
use crate::rng::trial_rng;

/// Default largest `d` accepted by [`enumerate_exact`] (`2^21` outcomes).
pub const DEFAULT_ENUMERATION_CAP: u64 = 20;

/// Default width of empirical confidence intervals, in standard errors.
pub const DEFAULT_CI_MULTIPLIER: f64 = 4.0;

/// Allowed deviation of an enumerated total mass from one.
pub const MASS_TOLERANCE: f64 = 1e-12;

/// Who produced the crime-scene sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HypothesisSpec {
    /// Profile `i` (1-based) is the source and no one else is.
    SourceIsProfile(u64),
    SourceNotInDb,
}

impl HypothesisSpec {
    pub fn validate(self, d: u64) -> Result<Self> {
        match self {
            HypothesisSpec::SourceIsProfile(i) if i == 0 || i > d.saturating_add(1) => {
                Err(EvidenceError::InvalidArgument(format!(
                    "source profile {i} is outside 1..={}",
                    d.saturating_add(1)
                )))
            }
            h => Ok(h),
        }
    }

    /// Zero-based index of the source profile, if any.
    fn source_index(self) -> Option<usize> {
        match self {
            HypothesisSpec::SourceIsProfile(i) => Some((i - 1) as usize),
            HypothesisSpec::SourceNotInDb => None,
        }
    }
}

impl fmt::Display for HypothesisSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HypothesisSpec::SourceIsProfile(i) => write!(f, "source-is-profile-{i}"),
            HypothesisSpec::SourceNotInDb => f.write_str("source-not-in-db"),
        }
    }
}

/// Match outcomes for every profile in a database of `D + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchVector {
    bits: Vec<bool>,
}

impl MatchVector {
    pub fn new(bits: Vec<bool>, d: u64) -> Result<Self> {
        if bits.len() as u64 != d + 1 {
            return Err(EvidenceError::InvalidArgument(format!(
                "match vector has length {}, expected D + 1 = {}",
                bits.len(),
                d + 1
            )));
        }
        Ok(MatchVector { bits })
    }

    /// The vector whose bit `i` is bit `i` of `code`.
    fn from_code(code: u64, len: usize) -> Self {
        MatchVector { bits: (0..len).map(|i| code >> i & 1 == 1).collect() }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn match_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_single_match(&self) -> bool {
        self.match_count() == 1
    }

    /// Profile 1 matches and nobody else does.
    pub fn is_matcher_one(&self) -> bool {
        self.bits[0] && self.is_single_match()
    }

    /// Probability of this exact vector under `hypothesis`, as a plain
    /// product over profiles.
    pub fn probability(&self, hypothesis: HypothesisSpec, p: f64) -> f64 {
        let source = hypothesis.source_index();
        self.bits
            .iter()
            .enumerate()
            .map(|(i, &hit)| match (Some(i) == source, hit) {
                (true, true) => 1.0,
                (true, false) => 0.0,
                (false, true) => p,
                (false, false) => 1.0 - p,
            })
            .product()
    }
}

/// `P(E | SID)` and `P(E | SND)` in linear and natural-log form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchEventProbs {
    pub given_sid: Probability,
    pub given_snd: Probability,
    pub ln_given_sid: f64,
    pub ln_given_snd: f64,
}

impl MatchEventProbs {
    /// `P(E|SID) / P(E|SND)`, which is the frequentist ratio.
    pub fn ratio(&self) -> RatioValue {
        RatioValue::Finite { log10: (self.ln_given_sid - self.ln_given_snd) / LN_10 }
    }
}

/// `(1 - p)^D` and `(D + 1) p (1 - p)^D`.
pub fn match_event_probs(p: Probability, d: u64) -> Result<MatchEventProbs> {
    let p = Probability::interior(p.value())?;
    let ln_sid = ln_none_of(p, d);
    let ln_snd = (d as f64 + 1.0).ln() + p.value().ln() + ln_sid;
    Ok(MatchEventProbs {
        given_sid: Probability::new(ln_sid.exp())?,
        given_snd: Probability::new(ln_snd.exp().min(1.0))?,
        ln_given_sid: ln_sid,
        ln_given_snd: ln_snd,
    })
}

/// Likelihoods of the observed "only profile 1 matches" vector under
/// "profile 1 is the source" and "the source is not in the database".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatcherLikelihoods {
    pub matcher_is_source: Probability,
    pub source_not_in_db: Probability,
    pub ln_matcher_is_source: f64,
    pub ln_source_not_in_db: f64,
}

impl MatcherLikelihoods {
    pub fn ratio(&self) -> RatioValue {
        RatioValue::Finite {
            log10: (self.ln_matcher_is_source - self.ln_source_not_in_db) / LN_10,
        }
    }
}

/// `(1 - p)^D` and `p (1 - p)^D`.
pub fn likelihoods_matcher(p: Probability, d: u64) -> Result<MatcherLikelihoods> {
    let p = Probability::interior(p.value())?;
    let ln_source = ln_none_of(p, d);
    let ln_outside = p.value().ln() + ln_source;
    Ok(MatcherLikelihoods {
        matcher_is_source: Probability::new(ln_source.exp())?,
        source_not_in_db: Probability::new(ln_outside.exp())?,
        ln_matcher_is_source: ln_source,
        ln_source_not_in_db: ln_outside,
    })
}

/// `ln (1 - p)^d`, accurate for tiny `p` and huge `d`.
fn ln_none_of(p: Probability, d: u64) -> f64 {
    d as f64 * (-p.value()).ln_1p()
}

/// Event masses obtained by summing over every match vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactTable {
    pub p: Probability,
    pub d: u64,
    pub outcomes: u64,
    pub p_single_match_given_sid: Probability,
    pub p_single_match_given_snd: Probability,
    pub p_matcher1_given_theta11: Probability,
    pub p_matcher1_given_theta10: Probability,
    /// Total mass under "profile 1 is the source".
    pub total_mass_sid: f64,
    /// Total mass under "source not in the database".
    pub total_mass_snd: f64,
}

/// Largest relative gap between an [`ExactTable`] and the closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormCheck {
    pub single_match_given_sid: f64,
    pub single_match_given_snd: f64,
    pub matcher1_given_theta11: f64,
    pub matcher1_given_theta10: f64,
}

impl ClosedFormCheck {
    pub fn max(&self) -> f64 {
        [
            self.single_match_given_sid,
            self.single_match_given_snd,
            self.matcher1_given_theta11,
            self.matcher1_given_theta10,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

impl ExactTable {
    pub fn closed_form_check(&self) -> Result<ClosedFormCheck> {
        let events = match_event_probs(self.p, self.d)?;
        let matcher = likelihoods_matcher(self.p, self.d)?;
        let rel = |got: Probability, want: Probability| {
            ((got.value() - want.value()) / want.value()).abs()
        };
        Ok(ClosedFormCheck {
            single_match_given_sid: rel(self.p_single_match_given_sid, events.given_sid),
            single_match_given_snd: rel(self.p_single_match_given_snd, events.given_snd),
            matcher1_given_theta11: rel(self.p_matcher1_given_theta11, matcher.matcher_is_source),
            matcher1_given_theta10: rel(self.p_matcher1_given_theta10, matcher.source_not_in_db),
        })
    }
}

/// Brute-force oracle with the default cap of [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate_exact(p: Probability, d: u64) -> Result<ExactTable> {
    enumerate_exact_capped(p, d, DEFAULT_ENUMERATION_CAP)
}

/// Visits all `2^(D+1)` match vectors and accumulates the event masses under
/// "profile 1 is the source" and "source not in the database".
pub fn enumerate_exact_capped(p: Probability, d: u64, cap: u64) -> Result<ExactTable> {
    let p = Probability::interior(p.value())?;
    // 2^(d+1) must fit in u64 regardless of the configured cap
    if d > cap || d > 62 {
        return Err(EvidenceError::EnumerationCapExceeded { d, cap: cap.min(62) });
    }
    let len = (d + 1) as usize;
    let outcomes = 1u64 << len;
    let theta11 = HypothesisSpec::SourceIsProfile(1);
    let theta10 = HypothesisSpec::SourceNotInDb;

    let mut single_sid = 0.0;
    let mut single_snd = 0.0;
    let mut matcher_sid = 0.0;
    let mut matcher_snd = 0.0;
    let mut total_sid = 0.0;
    let mut total_snd = 0.0;
    for code in 0..outcomes {
        let y = MatchVector::from_code(code, len);
        let under_sid = y.probability(theta11, p.value());
        let under_snd = y.probability(theta10, p.value());
        total_sid += under_sid;
        total_snd += under_snd;
        if y.is_single_match() {
            single_sid += under_sid;
            single_snd += under_snd;
            if y.is_matcher_one() {
                matcher_sid += under_sid;
                matcher_snd += under_snd;
            }
        }
    }

    for (name, total) in [(theta11, total_sid), (theta10, total_snd)] {
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(EvidenceError::NormalizationFailed { hypothesis: name.to_string(), total });
        }
    }

    Ok(ExactTable {
        p,
        d,
        outcomes,
        p_single_match_given_sid: Probability::new(single_sid.min(1.0))?,
        p_single_match_given_snd: Probability::new(single_snd.min(1.0))?,
        p_matcher1_given_theta11: Probability::new(matcher_sid.min(1.0))?,
        p_matcher1_given_theta10: Probability::new(matcher_snd.min(1.0))?,
        total_mass_sid: total_sid,
        total_mass_snd: total_snd,
    })
}

/// Tallied Monte Carlo outcomes for one hypothesis.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCounts {
    pub p: Probability,
    pub d: u64,
    pub hypothesis: HypothesisSpec,
    pub trials: u64,
    pub single_match: u64,
    pub matcher_is_1: u64,
    pub zero_match: u64,
    pub multi_match: u64,
    pub seed: u64,
}

impl EmpiricalCounts {
    pub fn single_match_rate(&self) -> f64 {
        self.single_match as f64 / self.trials as f64
    }

    pub fn matcher_rate(&self) -> f64 {
        self.matcher_is_1 as f64 / self.trials as f64
    }

    /// Standard error of [`single_match_rate`](Self::single_match_rate)
    /// around a known event probability.
    pub fn single_match_se(&self, expected: f64) -> f64 {
        (expected * (1.0 - expected) / self.trials as f64).sqrt()
    }

    pub fn is_consistent(&self) -> bool {
        self.single_match + self.zero_match + self.multi_match == self.trials
            && self.matcher_is_1 <= self.single_match
    }
}

#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    single: u64,
    matcher: u64,
    zero: u64,
    multi: u64,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            single: self.single + o.single,
            matcher: self.matcher + o.matcher,
            zero: self.zero + o.zero,
            multi: self.multi + o.multi,
        }
    }
}

/// Draws `trials` match vectors under `hypothesis` and tallies the outcomes.
///
/// Trial `t` uses [`trial_rng`]`(seed, t)` and consumes one draw for each
/// non-source profile, in profile order. Results are identical for
/// identical arguments whatever the size of the rayon pool.
pub fn simulate_trials(
    p: Probability,
    d: u64,
    hypothesis: HypothesisSpec,
    trials: u64,
    seed: u64,
) -> Result<EmpiricalCounts> {
    let p = Probability::interior(p.value())?;
    let hypothesis = hypothesis.validate(d)?;
    if trials == 0 {
        return Err(EvidenceError::InvalidArgument("trials must be at least 1".into()));
    }
    let coin = Bernoulli::new(p.value())
        .map_err(|e| EvidenceError::InvalidArgument(e.to_string()))?;
    let source = hypothesis.source_index().map(|i| i as u64);

    let tally = (0..trials)
        .into_par_iter()
        .fold(Tally::default, |mut t, trial| {
            let mut rng = trial_rng(seed, trial);
            let mut matches = 0u64;
            let mut first = false;
            for i in 0..=d {
                let hit = Some(i) == source || coin.sample(&mut rng);
                if hit {
                    matches += 1;
                    first |= i == 0;
                }
            }
            match matches {
                0 => t.zero += 1,
                1 => {
                    t.single += 1;
                    t.matcher += u64::from(first);
                }
                _ => t.multi += 1,
            }
            t
        })
        .reduce(Tally::default, Tally::merge);

    Ok(EmpiricalCounts {
        p,
        d,
        hypothesis,
        trials,
        single_match: tally.single,
        matcher_is_1: tally.matcher,
        zero_match: tally.zero,
        multi_match: tally.multi,
        seed,
    })
}

/// Confidence interval for a ratio of two event rates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioInterval {
    pub estimate: f64,
    pub lower: f64,
    pub upper: f64,
    /// Delta-method standard error of `ln(estimate)`.
    pub ln_se: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RatioEstimate {
    Resolved(RatioInterval),
    /// One of the two counts is zero; more trials are needed.
    Unresolved { numerator: u64, denominator: u64 },
}

impl RatioEstimate {
    /// Ratio of rates `num/trials` over `den/trials` with a log-scale normal
    /// interval `exp(ln r +- k * se)`, `se^2 = (1-a)/num + (1-b)/den`.
    pub fn from_counts(num: u64, den: u64, trials: u64, k: f64) -> Self {
        if num == 0 || den == 0 {
            return RatioEstimate::Unresolved { numerator: num, denominator: den };
        }
        let n = trials as f64;
        let (a, b) = (num as f64 / n, den as f64 / n);
        let estimate = a / b;
        let ln_se = ((1.0 - a) / num as f64 + (1.0 - b) / den as f64).sqrt();
        RatioEstimate::Resolved(RatioInterval {
            estimate,
            lower: estimate * (-k * ln_se).exp(),
            upper: estimate * (k * ln_se).exp(),
            ln_se,
        })
    }

    pub fn interval(&self) -> Option<&RatioInterval> {
        match self {
            RatioEstimate::Resolved(i) => Some(i),
            RatioEstimate::Unresolved { .. } => None,
        }
    }

    /// `None` when unresolved.
    pub fn covers(&self, value: f64) -> Option<bool> {
        self.interval().map(|i| i.lower <= value && value <= i.upper)
    }
}

impl fmt::Display for RatioEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatioEstimate::Resolved(i) => write!(f, "{} [{}, {}]", i.estimate, i.lower, i.upper),
            RatioEstimate::Unresolved { .. } => f.write_str("unresolved at this trial budget"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalRatioReport {
    /// Single-match rate under SID over that under SND.
    pub frequentist: RatioEstimate,
    /// Matcher-event rate under "profile 1 is the source" over that under
    /// "source not in the database".
    pub matcher: RatioEstimate,
    pub ci_multiplier: f64,
}

/// Empirical ratios from a run under "profile 1 is the source" and a run
/// under "source not in the database" with the same `(p, d, trials)`.
pub fn empirical_lr(
    counts_sid: &EmpiricalCounts,
    counts_snd: &EmpiricalCounts,
    ci_multiplier: f64,
) -> Result<EmpiricalRatioReport> {
    if counts_sid.p != counts_snd.p
        || (counts_sid.d, counts_sid.trials) != (counts_snd.d, counts_snd.trials)
    {
        return Err(EvidenceError::InvalidArgument(
            "empirical ratios need counts from identical (p, d, trials)".into(),
        ));
    }
    if counts_sid.hypothesis != HypothesisSpec::SourceIsProfile(1)
        || counts_snd.hypothesis != HypothesisSpec::SourceNotInDb
    {
        return Err(EvidenceError::InvalidArgument(format!(
            "expected counts under source-is-profile-1 and source-not-in-db, got {} and {}",
            counts_sid.hypothesis, counts_snd.hypothesis
        )));
    }
    if !(ci_multiplier.is_finite() && ci_multiplier > 0.0) {
        return Err(EvidenceError::InvalidArgument(format!(
            "ci multiplier must be positive, got {ci_multiplier}"
        )));
    }
    let trials = counts_sid.trials;
    Ok(EmpiricalRatioReport {
        frequentist: RatioEstimate::from_counts(
            counts_sid.single_match,
            counts_snd.single_match,
            trials,
            ci_multiplier,
        ),
        matcher: RatioEstimate::from_counts(
            counts_sid.matcher_is_1,
            counts_snd.matcher_is_1,
            trials,
            ci_multiplier,
        ),
        ci_multiplier,
    })
}
