//! Acceptance criteria. Runs as a plain binary (`harness = false`) and
//! prints one PASS/FAIL line per criterion; exits nonzero if any fail.

use std::process::{Command, ExitCode};
use std::time::Instant;

use dna_evidence::evidence::{
    compare_schools, lr_bayes, lr_hot, psnd_from_population, PriorSpec, Scenario,
};
use dna_evidence::paradoxes::{
    birthday_collision, card_pick_probability, card_pick_probability_exact, deck_likelihood_ratio,
    deck_likelihood_ratio_exact, lottery_paradox_report, raffle_survival, raffle_survival_exact,
    DAYS_IN_YEAR,
};
use dna_evidence::simulation::{
    enumerate_exact, likelihoods_matcher, match_event_probs, simulate_trials, HypothesisSpec,
};
use dna_evidence::{Probability, RatioValue};
use num_rational::Ratio;

type Check = Result<(), String>;

const EXACT_LOG_TOL: f64 = 1e-12;
const ORACLE_REL_TOL: f64 = 1e-12;
const MC_SE_MULTIPLE: f64 = 4.0;
const MC_TRIALS: u64 = 1_000_000;
const MC_SEEDS: u64 = 100;
const MC_MIN_PASSING: usize = 99;
const BIRTHDAY_ROUNDING_TOL: f64 = 5e-4;
const PAPER_SCALE_LOG_REL_TOL: f64 = 1e-10;

fn prob(x: f64) -> Probability {
    Probability::new(x).expect("valid probability")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rel(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

fn c1_bayes_extremes() -> Check {
    for p in [1e-3, 1e-6, 1e-9] {
        let p = prob(p);
        let at_zero = lr_bayes(p, Probability::ZERO).map_err(|e| e.to_string())?;
        ensure(at_zero == RatioValue::Infinite, || format!("lr_bayes({p}, 0) = {at_zero}"))?;
        let at_one = lr_bayes(p, Probability::ONE).map_err(|e| e.to_string())?;
        let hot = lr_hot(p).map_err(|e| e.to_string())?;
        ensure(at_one == hot, || format!("lr_bayes({p}, 1) = {at_one} != lr_hot = {hot}"))?;
    }
    Ok(())
}

fn c2_bayes_doubles_at_even_prior() -> Check {
    for p in [1e-3, 1e-6, 1e-9, 0.5] {
        let p = prob(p);
        let rb = lr_bayes(p, prob(0.5)).unwrap();
        let r1 = lr_hot(p).unwrap();
        let diff = rb.log10() - r1.log10();
        ensure((diff - 2f64.log10()).abs() <= EXACT_LOG_TOL, || {
            format!("p = {p}: log10 difference {diff}")
        })?;
    }
    Ok(())
}

fn c3_population_limits() -> Check {
    for d in [1u64, 100, 19_999_999] {
        for m in [0.5, 1.0, 1e6] {
            let psnd = psnd_from_population(0.0, m, d).map_err(|e| e.to_string())?;
            ensure(psnd == Probability::ZERO, || format!("N = 0, m = {m}, D = {d}: {psnd}"))?;
            let rb = lr_bayes(prob(1e-9), psnd).unwrap();
            ensure(rb == RatioValue::Infinite, || format!("R_B at N = 0 is {rb}"))?;
        }
        for n in [1.0, 1e9] {
            let psnd = psnd_from_population(n, 0.0, d).map_err(|e| e.to_string())?;
            ensure(psnd == Probability::ONE, || format!("m = 0, N = {n}, D = {d}: {psnd}"))?;
            let rb = lr_bayes(prob(1e-9), psnd).unwrap();
            ensure(rb == lr_hot(prob(1e-9)).unwrap(), || format!("R_B at m = 0 is {rb}"))?;
        }
    }
    Ok(())
}

fn c4_pure_likelihood_equality() -> Check {
    for p in [0.5, 0.1, 0.01] {
        for d in [0u64, 1, 5, 12] {
            let ratio = likelihoods_matcher(prob(p), d).unwrap().ratio();
            let hot = lr_hot(prob(p)).unwrap();
            let gap = (ratio.log10() - hot.log10()).abs();
            ensure(gap <= EXACT_LOG_TOL, || format!("p = {p}, d = {d}: log10 gap {gap}"))?;
        }
    }
    Ok(())
}

fn c5_oracle_equivalence() -> Check {
    let start = Instant::now();
    for p in [0.5, 0.25, 0.1, 0.01] {
        for d in 0..=12u64 {
            let t = enumerate_exact(prob(p), d).map_err(|e| e.to_string())?;
            // closed forms evaluated directly in linear space
            let none = (1.0 - p).powi(d as i32);
            let pairs = [
                ("(1-p)^D", t.p_single_match_given_sid.value(), none),
                ("(D+1)p(1-p)^D", t.p_single_match_given_snd.value(), (d as f64 + 1.0) * p * none),
                ("matcher|theta11", t.p_matcher1_given_theta11.value(), none),
                ("p(1-p)^D", t.p_matcher1_given_theta10.value(), p * none),
            ];
            for (name, got, want) in pairs {
                ensure(rel(got, want) <= ORACLE_REL_TOL, || {
                    format!("p = {p}, d = {d}, {name}: {got} vs {want}")
                })?;
            }
            // and the log-space implementation agrees with the enumeration too
            let check = t.closed_form_check().unwrap();
            ensure(check.max() <= ORACLE_REL_TOL, || format!("p = {p}, d = {d}: {check:?}"))?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 5.0, || format!("took {secs:.2} s (target < 5 s)"))
}

fn c6_monte_carlo() -> Check {
    let start = Instant::now();
    let p = prob(0.01);
    let events = match_event_probs(p, 9).unwrap();
    let mut summary = Vec::new();
    for (hyp, expected) in [
        (HypothesisSpec::SourceNotInDb, events.given_snd.value()),
        (HypothesisSpec::SourceIsProfile(1), events.given_sid.value()),
    ] {
        let mut passing = 0;
        for seed in 1..=MC_SEEDS {
            let c = simulate_trials(p, 9, hyp, MC_TRIALS, seed).map_err(|e| e.to_string())?;
            ensure(c.is_consistent(), || format!("{hyp} seed {seed}: inconsistent counts"))?;
            if (c.single_match_rate() - expected).abs() <= MC_SE_MULTIPLE * c.single_match_se(expected) {
                passing += 1;
            }
        }
        ensure(passing >= MC_MIN_PASSING, || {
            format!("{hyp}: only {passing}/{MC_SEEDS} seeds within {MC_SE_MULTIPLE} SE of {expected}")
        })?;
        summary.push(format!("{hyp} {passing}/{MC_SEEDS}"));
    }
    let secs = start.elapsed().as_secs_f64();
    println!("    ({}; {secs:.1} s)", summary.join(", "));
    ensure(secs < 60.0, || format!("took {secs:.1} s (target < 60 s)"))
}

fn c7_lottery() -> Check {
    let exact = |k| raffle_survival_exact(100, k).unwrap();
    ensure(exact(1) == Ratio::new(99, 100), || format!("k = 1: {}", exact(1)))?;
    ensure(exact(2) == Ratio::new(98, 100), || format!("k = 2: {}", exact(2)))?;
    ensure(exact(100) == Ratio::from_integer(0), || format!("k = 100: {}", exact(100)))?;
    ensure(raffle_survival(100, 1).unwrap().value() == 0.99, || "k = 1 as f64".into())?;
    ensure(raffle_survival(100, 2).unwrap().value() == 0.98, || "k = 2 as f64".into())?;
    let r = lottery_paradox_report(100, prob(0.99)).unwrap();
    ensure(r.contradiction && r.singleton_accepted && r.k_max == 1, || format!("{r:?}"))
}

fn c8_birthday() -> Check {
    let b = |n| birthday_collision(n, DAYS_IN_YEAR).unwrap().value();
    ensure((b(25) - 0.5687).abs() <= BIRTHDAY_ROUNDING_TOL, || format!("n = 25: {}", b(25)))?;
    ensure((b(50) - 0.9704).abs() <= BIRTHDAY_ROUNDING_TOL, || format!("n = 50: {}", b(50)))?;
    ensure((b(2) - 1.0 / 365.0).abs() <= 1e-12, || format!("n = 2: {}", b(2)))?;
    ensure(format!("{:.2}", b(25)) == "0.57" && format!("{:.2}", b(50)) == "0.97", || {
        "rounded figures differ from 0.57 / 0.97".into()
    })
}

fn c9_card_trick() -> Check {
    ensure(card_pick_probability_exact(52).unwrap() == Ratio::new(1, 52), || "1/52 exact".into())?;
    ensure(card_pick_probability(52).unwrap().value() == 1.0 / 52.0, || "1/52 as f64".into())?;
    ensure(deck_likelihood_ratio_exact(52).unwrap() == Ratio::from_integer(52), || "52 exact".into())?;
    let lr = deck_likelihood_ratio(52).unwrap();
    ensure(lr == lr_hot(prob(1.0 / 52.0)).unwrap(), || "deck ratio differs from lr_hot(1/52)".into())?;
    let linear = lr.to_linear().unwrap();
    ensure(rel(linear, 52.0) <= 1e-14, || format!("deck ratio reads back as {linear}"))
}

fn c10_paper_scale() -> Check {
    let db_size = 20_000_000u64;
    let s = Scenario::new("codis", 1e-9, db_size - 1, PriorSpec::default()).map_err(|e| e.to_string())?;
    let r = compare_schools(&s).map_err(|e| e.to_string())?;
    for (name, v) in [("R_1", r.r1), ("R_F", r.rf), ("R_B", r.rb), ("R_L", r.rl), ("R_0", r.r0), ("R_T", r.rt)] {
        ensure(v.log10().is_finite(), || format!("{name} log10 = {}", v.log10()))?;
        let lin = v.to_linear();
        ensure(lin.is_some_and(|x| x.is_normal()), || format!("{name} linear = {lin:?}"))?;
    }
    let want = r.r1.log10() - (db_size as f64).log10();
    ensure(rel(r.rf.log10(), want) <= PAPER_SCALE_LOG_REL_TOL, || {
        format!("R_F log10 {} vs {want}", r.rf.log10())
    })?;
    // second route: ratio of the event probabilities themselves
    let events = match_event_probs(prob(1e-9), db_size - 1).unwrap();
    ensure(events.given_sid.value() > 0.0 && events.given_snd.value() > 0.0, || "event underflow".into())?;
    ensure(rel(events.ratio().log10(), want) <= PAPER_SCALE_LOG_REL_TOL, || {
        format!("P(E|SID)/P(E|SND) log10 {} vs {want}", events.ratio().log10())
    })
}

fn c11_opposing_monotonicity() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_dna-evidence"))
        .args([
            "sweep", "--format", "json-lines", "--p", "1e-9", "--n-outside", "1e6", "--m-factor", "10",
            "--sweep-param", "db-size", "--sweep-start", "1e3", "--sweep-stop", "1e7", "--sweep-points", "9",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("sweep exited with {}", out.status))?;
    let rows: Vec<serde_json::Value> = String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(serde_json::from_str)
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(rows.len() == 9, || format!("{} rows", rows.len()))?;
    let col = |name: &str| -> Result<Vec<f64>, String> {
        rows.iter().map(|r| r[name].as_f64().ok_or_else(|| format!("{name} missing"))).collect()
    };
    let sizes = col("db_size")?;
    ensure(sizes.first() == Some(&1e3) && sizes.last() == Some(&1e7), || format!("sizes {sizes:?}"))?;
    let rf = col("rf_log10")?;
    let rb = col("rb_log10")?;
    ensure(rf.windows(2).all(|w| w[1] < w[0]), || format!("R_F not strictly decreasing: {rf:?}"))?;
    ensure(rb.windows(2).all(|w| w[1] > w[0]), || format!("R_B not strictly increasing: {rb:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("1. R_B extremes: psnd = 0 gives inf, psnd = 1 gives R_1", c1_bayes_extremes),
        ("2. R_B = 2 R_1 at psnd = 0.5", c2_bayes_doubles_at_even_prior),
        ("3. population prior limits N = 0 and m = 0", c3_population_limits),
        ("4. pure-likelihood ratio equals R_1", c4_pure_likelihood_equality),
        ("5. enumeration oracle matches closed forms", c5_oracle_equivalence),
        ("6. Monte Carlo single-match frequencies", c6_monte_carlo),
        ("7. raffle survival and lottery contradiction", c7_lottery),
        ("8. birthday figures", c8_birthday),
        ("9. card-trick figures", c9_card_trick),
        ("10. paper-scale numerical robustness", c10_paper_scale),
        ("11. sweep: R_F decreasing, R_B increasing", c11_opposing_monotonicity),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("PASS  {name}"),
            Err(why) => {
                failures += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
