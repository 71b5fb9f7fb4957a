//! Raffle, birthday and card-deck calculations.

use num_rational::Ratio;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{EvidenceError, Result};
use crate::evidence::lr_hot;
use crate::ratio::{Probability, RatioValue};
use crate::rng::trial_rng;

/// Days in the (leap-free) year used by the birthday problem.
pub const DAYS_IN_YEAR: u64 = 365;

/// Largest ticket count for which `(t - k) / t` is formed from exact f64
/// integers.
const MAX_EXACT_TICKETS: u64 = 1 << 53;

/// A raffle: every ticket is sold once and exactly one wins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RaffleSpec {
    tickets: u64,
}

impl RaffleSpec {
    pub fn new(tickets: u64) -> Result<Self> {
        if tickets == 0 || tickets > MAX_EXACT_TICKETS {
            return Err(EvidenceError::InvalidArgument(format!(
                "raffle needs between 1 and 2^53 tickets, got {tickets}"
            )));
        }
        Ok(RaffleSpec { tickets })
    }

    pub fn tickets(self) -> u64 {
        self.tickets
    }

    /// Probability that `k` given tickets all lose, as an exact fraction.
    pub fn survival_exact(self, k: u64) -> Result<Ratio<u64>> {
        if k == 0 || k > self.tickets {
            return Err(EvidenceError::InvalidArgument(format!(
                "k = {k} is outside 1..={}",
                self.tickets
            )));
        }
        Ok(Ratio::new(self.tickets - k, self.tickets))
    }

    /// Same as [`survival_exact`](Self::survival_exact), correctly rounded
    /// to f64.
    pub fn survival(self, k: u64) -> Result<Probability> {
        self.survival_exact(k)?;
        Probability::new((self.tickets - k) as f64 / self.tickets as f64)
    }
}

/// `(t - k) / t`.
pub fn raffle_survival(t: u64, k: u64) -> Result<Probability> {
    RaffleSpec::new(t)?.survival(k)
}

/// `(t - k) / t` as an exact fraction.
pub fn raffle_survival_exact(t: u64, k: u64) -> Result<Ratio<u64>> {
    RaffleSpec::new(t)?.survival_exact(k)
}

/// Outcome of the high-probability acceptance rule applied to a raffle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParadoxReport {
    pub tickets: u64,
    pub threshold: Probability,
    /// "Ticket i will lose" clears the threshold.
    pub singleton_accepted: bool,
    /// Largest `k` whose all-lose probability still clears the threshold.
    pub k_max: u64,
    /// Probability that every ticket loses: always zero.
    pub full_conjunction_prob: Probability,
    pub contradiction: bool,
}

pub fn lottery_paradox_report(t: u64, threshold: Probability) -> Result<ParadoxReport> {
    let raffle = RaffleSpec::new(t)?;
    if threshold.value() == 0.0 {
        return Err(EvidenceError::InvalidArgument("acceptance threshold must be positive".into()));
    }
    let accepted = |k: u64| -> Result<bool> { Ok(raffle.survival(k)? >= threshold) };

    // floor(t (1 - threshold)), then walk to the exact boundary
    let guess = (t as f64 * (1.0 - threshold.value())).floor().clamp(0.0, t as f64) as u64;
    let mut k_max = guess;
    while k_max < t && accepted(k_max + 1)? {
        k_max += 1;
    }
    while k_max > 0 && !accepted(k_max)? {
        k_max -= 1;
    }

    let singleton_accepted = accepted(1)?;
    let full_conjunction_prob = raffle.survival(t)?;
    Ok(ParadoxReport {
        tickets: t,
        threshold,
        singleton_accepted,
        k_max,
        full_conjunction_prob,
        contradiction: singleton_accepted && full_conjunction_prob.value() == 0.0,
    })
}

/// Probability that at least two of `n` people share a birthday in a year of
/// `days` equally likely days.
pub fn birthday_collision(n: u64, days: u64) -> Result<Probability> {
    if days == 0 {
        return Err(EvidenceError::InvalidArgument("a year needs at least one day".into()));
    }
    if n <= 1 {
        return Ok(Probability::ZERO);
    }
    if n > days {
        return Ok(Probability::ONE);
    }
    let d = days as f64;
    let ln_distinct: f64 = (1..n).map(|i| (-(i as f64) / d).ln_1p()).sum();
    Probability::new((-ln_distinct.exp_m1()).clamp(0.0, 1.0))
}

/// Hits out of `trials` simulated rooms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BirthdayEstimate {
    pub n: u64,
    pub days: u64,
    pub trials: u64,
    pub collisions: u64,
    pub seed: u64,
}

impl BirthdayEstimate {
    pub fn rate(&self) -> f64 {
        self.collisions as f64 / self.trials as f64
    }

    pub fn standard_error(&self, expected: f64) -> f64 {
        (expected * (1.0 - expected) / self.trials as f64).sqrt()
    }
}

/// Simulated birthday rooms. Room `t` draws its `n` birthdays from
/// [`trial_rng`]`(seed, t)`.
pub fn birthday_monte_carlo(n: u64, days: u64, trials: u64, seed: u64) -> Result<BirthdayEstimate> {
    if days == 0 || trials == 0 {
        return Err(EvidenceError::InvalidArgument("days and trials must be positive".into()));
    }
    let collisions = (0..trials)
        .into_par_iter()
        .fold(
            || (0u64, vec![false; days as usize]),
            |(mut hits, mut seen), trial| {
                seen.fill(false);
                let mut rng = trial_rng(seed, trial);
                for _ in 0..n {
                    let day = rng.gen_range(0..days) as usize;
                    if std::mem::replace(&mut seen[day], true) {
                        hits += 1;
                        break;
                    }
                }
                (hits, seen)
            },
        )
        .map(|(hits, _)| hits)
        .sum();
    Ok(BirthdayEstimate { n, days, trials, collisions, seed })
}

/// Chance of pulling one named card from a shuffled deck.
pub fn card_pick_probability(deck_size: u64) -> Result<Probability> {
    Probability::new(card_pick_probability_exact(deck_size)?.to_f64())
}

pub fn card_pick_probability_exact(deck_size: u64) -> Result<Ratio<u64>> {
    if deck_size == 0 {
        return Err(EvidenceError::InvalidArgument("deck must hold at least one card".into()));
    }
    Ok(Ratio::new(1, deck_size))
}

/// Likelihood ratio of "every card is the named card" against "standard
/// deck" after drawing the named card: `1 / (1 / deck_size)`.
///
/// The observation and both likelihoods are the same whether the two decks
/// were announced before or after the draw, so the ratio is too.
pub fn deck_likelihood_ratio(deck_size: u64) -> Result<RatioValue> {
    let pick = card_pick_probability(deck_size)?;
    if pick == Probability::ONE {
        // a one-card deck cannot tell the hypotheses apart
        return Ok(RatioValue::ONE);
    }
    lr_hot(pick)
}

pub fn deck_likelihood_ratio_exact(deck_size: u64) -> Result<Ratio<u64>> {
    let all_same = Ratio::from_integer(1);
    Ok(all_same / card_pick_probability_exact(deck_size)?)
}

trait ToF64 {
    fn to_f64(&self) -> f64;
}

impl ToF64 for Ratio<u64> {
    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn prob(x: f64) -> Probability {
        Probability::new(x).unwrap()
    }

    #[test]
    fn raffle_survival_values() {
        assert_eq!(raffle_survival_exact(100, 1).unwrap(), Ratio::new(99, 100));
        assert_eq!(raffle_survival_exact(100, 2).unwrap(), Ratio::new(98, 100));
        assert_eq!(raffle_survival_exact(100, 100).unwrap(), Ratio::from_integer(0));
        assert_eq!(raffle_survival(100, 1).unwrap(), prob(0.99));
        assert_eq!(raffle_survival(100, 2).unwrap(), prob(0.98));
        assert_eq!(raffle_survival(100, 100).unwrap(), Probability::ZERO);
    }

    #[test]
    fn raffle_survival_range() {
        assert!(raffle_survival(100, 0).is_err());
        assert!(raffle_survival(100, 101).is_err());
        assert!(raffle_survival(0, 0).is_err());
        assert_eq!(raffle_survival(1, 1).unwrap(), Probability::ZERO);
    }

    #[test]
    fn lottery_report_examples() {
        let r = lottery_paradox_report(100, prob(0.99)).unwrap();
        assert!(r.singleton_accepted);
        assert_eq!(r.k_max, 1);
        assert!(r.contradiction);
        assert_eq!(r.full_conjunction_prob, Probability::ZERO);

        // floor(100 * (1 - 0.9)) is 9 in floating point; the walk fixes it
        assert_eq!(lottery_paradox_report(100, prob(0.9)).unwrap().k_max, 10);

        let r = lottery_paradox_report(1_000_000, prob(0.999999)).unwrap();
        assert!(r.singleton_accepted);
        assert_eq!(r.k_max, 1);
        assert!(r.contradiction);
    }

    #[test]
    fn lottery_report_without_acceptance() {
        let r = lottery_paradox_report(10, prob(0.95)).unwrap();
        assert!(!r.singleton_accepted);
        assert_eq!(r.k_max, 0);
        assert!(!r.contradiction);
        let r = lottery_paradox_report(1, prob(1.0)).unwrap();
        assert_eq!(r.k_max, 0);
        assert!(!r.contradiction);
        assert!(lottery_paradox_report(10, Probability::ZERO).is_err());
    }

    #[test]
    fn birthday_values() {
        // exact rational product, computed independently
        assert_relative_eq!(birthday_collision(2, 365).unwrap().value(), 1.0 / 365.0, max_relative = 1e-12);
        assert_relative_eq!(birthday_collision(23, 365).unwrap().value(), 0.5072972343239854, max_relative = 1e-12);
        assert_relative_eq!(birthday_collision(25, 365).unwrap().value(), 0.5686997039694639, max_relative = 1e-12);
        assert_relative_eq!(birthday_collision(50, 365).unwrap().value(), 0.9703735795779884, max_relative = 1e-12);
        assert_eq!(birthday_collision(366, 365).unwrap(), Probability::ONE);
        assert_eq!(birthday_collision(0, 365).unwrap(), Probability::ZERO);
        assert_eq!(birthday_collision(1, 365).unwrap(), Probability::ZERO);
        assert!(birthday_collision(3, 0).is_err());
        assert_eq!(birthday_collision(2, 1).unwrap(), Probability::ONE);
    }

    #[test]
    fn birthday_simulation_agrees() {
        for n in [5, 10, 23, 25, 50] {
            let expected = birthday_collision(n, DAYS_IN_YEAR).unwrap().value();
            let est = birthday_monte_carlo(n, DAYS_IN_YEAR, 1_000_000, 17).unwrap();
            assert!((est.rate() - expected).abs() <= 4.0 * est.standard_error(expected));
        }
    }

    #[test]
    fn card_values() {
        assert_eq!(card_pick_probability(52).unwrap().value(), 1.0 / 52.0);
        assert_eq!(card_pick_probability(1).unwrap(), Probability::ONE);
        assert_eq!(card_pick_probability(2).unwrap(), prob(0.5));
        assert!(card_pick_probability(0).is_err());

        assert_eq!(deck_likelihood_ratio_exact(52).unwrap(), Ratio::from_integer(52));
        assert_eq!(deck_likelihood_ratio_exact(1).unwrap(), Ratio::from_integer(1));
        assert_relative_eq!(deck_likelihood_ratio(52).unwrap().to_linear().unwrap(), 52.0, max_relative = 1e-14);
        assert_eq!(deck_likelihood_ratio(1).unwrap(), RatioValue::ONE);
        assert_eq!(deck_likelihood_ratio(52).unwrap(), lr_hot(prob(1.0 / 52.0)).unwrap());
    }

    proptest! {
        #[test]
        fn raffle_survival_strictly_decreasing(t in 1u64..1_000_000, frac in 0.0f64..1.0) {
            let k = 1 + ((t - 1) as f64 * frac) as u64;
            let here = raffle_survival_exact(t, k).unwrap();
            if k < t {
                prop_assert!(raffle_survival_exact(t, k + 1).unwrap() < here);
            } else {
                prop_assert_eq!(here, Ratio::from_integer(0));
            }
        }

        #[test]
        fn contradiction_whenever_singletons_accepted(t in 2u64..1_000_000, frac in 0.0f64..=1.0) {
            let cutoff = (t - 1) as f64 / t as f64;
            let threshold = (cutoff * frac).max(1e-12);
            let r = lottery_paradox_report(t, prob(threshold)).unwrap();
            prop_assert!(r.contradiction);
            prop_assert!(r.k_max >= 1 && r.k_max <= t);
            // k_max is the exact boundary
            prop_assert!(raffle_survival(t, r.k_max).unwrap().value() >= threshold);
            if r.k_max < t {
                prop_assert!(raffle_survival(t, r.k_max + 1).unwrap().value() < threshold);
            }
        }

        #[test]
        fn birthday_nondecreasing(n in 0u64..400, days in 1u64..400) {
            let a = birthday_collision(n, days).unwrap();
            let b = birthday_collision(n + 1, days).unwrap();
            prop_assert!(b >= a);
            prop_assert_eq!(birthday_collision(days + 1, days).unwrap(), Probability::ONE);
        }

        #[test]
        fn deck_ratio_is_hot_ratio(s in 2u64..1_000_000) {
            let deck = deck_likelihood_ratio(s).unwrap();
            let hot = lr_hot(prob(1.0 / s as f64)).unwrap();
            prop_assert_eq!(deck.log10(), hot.log10());
        }
    }
}
