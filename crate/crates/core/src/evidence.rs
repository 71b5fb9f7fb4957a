//! Likelihood ratios for a DNA match under the three schools of inference.
//!
//! A hot suspect is identified before testing; a cold suspect is the single
//! "Matcher" found by trawling a database of `D + 1` profiles. With a
//! random-match probability `p` and a fully sensitive test:
//!
//! | ratio | meaning                                   | value                |
//! |-------|-------------------------------------------|----------------------|
//! | `R_1` | hot suspect                               | `1 / p`              |
//! | `R_F` | frequentist, single match anywhere        | `R_1 / (D + 1)`      |
//! | `R_B` | Bayesian, prior mass outside the database | `R_1 / P(SND)`       |
//! | `R_L` | pure likelihood, Matcher vs. nobody       | `R_1`                |
//! | `R_0` | prior odds source in vs. not in database  | `(1 - P(SND)) / P(SND)` |
//! | `R_T` | total, prior times data                   | `R_0 * R_1`          |
//!
//! Every ratio is computed in log10 space.

use crate::error::{EvidenceError, Result};
use crate::ratio::{Probability, RatioValue};

/// Hot-suspect likelihood ratio `1 / p`.
pub fn lr_hot(p: Probability) -> Result<RatioValue> {
    let p = Probability::interior(p.value())?;
    RatioValue::from_log10(-p.log10())
}

/// Frequentist cold-search ratio: the hot-suspect ratio divided by the
/// number of profiles searched, `D + 1`.
pub fn lr_frequentist(p: Probability, d: u64) -> Result<RatioValue> {
    let r1 = lr_hot(p)?;
    RatioValue::from_log10(r1.log10() - db_size(d).log10())
}

/// Bayesian cold-search ratio `R_1 / P(SND)`; infinite when `psnd = 0`.
pub fn lr_bayes(p: Probability, psnd: Probability) -> Result<RatioValue> {
    let r1 = lr_hot(p)?;
    if psnd.value() == 0.0 {
        return Ok(RatioValue::Infinite);
    }
    RatioValue::from_log10(r1.log10() - psnd.log10())
}

/// Prior probability that the source is outside the database, from `N`
/// potential sources outside it and a factor `m` by which each database
/// member is more probable: `N / (m D + N)`.
pub fn psnd_from_population(n_outside: f64, m_factor: f64, d: u64) -> Result<Probability> {
    check_nonnegative("n_outside", n_outside)?;
    check_nonnegative("m_factor", m_factor)?;
    let inside = m_factor * d as f64;
    let total = inside + n_outside;
    if total <= 0.0 {
        return Err(EvidenceError::EmptyPriorPopulation { n_outside, m_factor, d });
    }
    if !total.is_finite() {
        // m or N so large the weighted sum overflows; the limit is still defined
        return Probability::new(if n_outside.is_infinite() { 1.0 } else { 0.0 });
    }
    Probability::new(n_outside / total)
}

/// Pure-likelihood ratio of "the Matcher is the source" against "the source
/// is not in the database". Numerically identical to [`lr_hot`].
pub fn lr_pure(p: Probability) -> Result<RatioValue> {
    lr_hot(p)
}

/// Prior odds `R_0 = P(SID) / P(SND)`.
pub fn prior_odds(psnd: Probability) -> RatioValue {
    let s = psnd.value();
    if s == 0.0 {
        RatioValue::Infinite
    } else if s == 1.0 {
        RatioValue::Zero
    } else {
        // 1 - s is exact for s >= 0.5; below that ln_1p keeps precision
        let log_sid = if s >= 0.5 {
            (1.0 - s).log10()
        } else {
            (-s).ln_1p() / std::f64::consts::LN_10
        };
        RatioValue::Finite { log10: log_sid - s.log10() }
    }
}

/// Total likelihood ratio `R_T = R_0 * R_1`.
pub fn lr_total(r0: RatioValue, p: Probability) -> Result<RatioValue> {
    r0.try_mul(lr_hot(p)?)
}

/// Prior parameterization for a database search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PriorSpec {
    /// `P(SND)` given directly.
    Direct { psnd: Probability },
    /// `P(SND) = N / (m D + N)`.
    Population { n_outside: f64, m_factor: f64 },
}

impl PriorSpec {
    pub fn resolve(&self, d: u64) -> Result<Probability> {
        match *self {
            PriorSpec::Direct { psnd } => Ok(psnd),
            PriorSpec::Population { n_outside, m_factor } => {
                psnd_from_population(n_outside, m_factor, d)
            }
        }
    }
}

impl Default for PriorSpec {
    /// `P(SND) = 0.5`, i.e. prior odds of one.
    fn default() -> Self {
        PriorSpec::Direct { psnd: Probability::new(0.5).expect("0.5 is a probability") }
    }
}

/// One database-search situation.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub label: String,
    pub p: Probability,
    /// The database holds `d + 1` profiles.
    pub d: u64,
    pub prior: PriorSpec,
}

impl Scenario {
    pub fn new(label: impl Into<String>, p: f64, d: u64, prior: PriorSpec) -> Result<Self> {
        let scenario = Scenario { label: label.into(), p: Probability::interior(p)?, d, prior };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<()> {
        Probability::interior(self.p.value())?;
        self.prior.resolve(self.d)?;
        Ok(())
    }

    /// `D + 1`.
    pub fn db_size(&self) -> u64 {
        self.d + 1
    }
}

/// All school ratios for one scenario, side by side.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub label: String,
    pub p: Probability,
    pub d: u64,
    pub psnd: Probability,
    pub r1: RatioValue,
    pub rf: RatioValue,
    pub rb: RatioValue,
    pub rl: RatioValue,
    pub r0: RatioValue,
    pub rt: RatioValue,
    /// Set when `P(SND) = 1`: the Bayesian ratio falls back to `R_1` although
    /// every Matcher must then be a false positive.
    pub bayes_degenerate: bool,
}

impl ComparisonReport {
    pub fn db_size(&self) -> u64 {
        self.d + 1
    }
}

pub fn compare_schools(scenario: &Scenario) -> Result<ComparisonReport> {
    let p = scenario.p;
    let psnd = scenario.prior.resolve(scenario.d)?;
    let r0 = prior_odds(psnd);
    Ok(ComparisonReport {
        label: scenario.label.clone(),
        p,
        d: scenario.d,
        psnd,
        r1: lr_hot(p)?,
        rf: lr_frequentist(p, scenario.d)?,
        rb: lr_bayes(p, psnd)?,
        rl: lr_pure(p)?,
        r0,
        rt: lr_total(r0, p)?,
        bayes_degenerate: psnd.value() == 1.0,
    })
}

fn db_size(d: u64) -> f64 {
    // exact for d + 1 <= 2^53; u64::MAX saturates rather than wrapping
    d.saturating_add(1) as f64
}

fn check_nonnegative(name: &'static str, value: f64) -> Result<()> {
    if value.is_nan() || value < 0.0 {
        Err(EvidenceError::NegativeParameter { name, value })
    } else {
        Ok(())
    }
}
