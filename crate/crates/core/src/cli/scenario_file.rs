//! Flat `key = value` scenario files.
//!
//! Keys are the long CLI flag names without the leading dashes. Blank lines
//! and anything after `#` are ignored. Example:
//!
//! ```text
//! # cold search of the convicted-offender index
//! label = codis-felon
//! p = 1e-9
//! db-size = 14000000
//! psnd = 0.4
//! ```

use std::path::Path;

use super::{parse_count, CliError};

/// Scenario and simulation values gathered from one source (a file or the
/// command line). Every field is optional until the sources are merged.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScenarioInputs {
    pub label: Option<String>,
    pub p: Option<f64>,
    pub d: Option<u64>,
    pub db_size: Option<u64>,
    pub psnd: Option<f64>,
    pub n_outside: Option<f64>,
    pub m_factor: Option<f64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub ci_multiplier: Option<f64>,
}

/// Presets shipped with the tool, by name.
pub const PRESETS: &[(&str, &str)] = &[
    ("hot-suspect", include_str!("../../presets/hot-suspect.scenario")),
    ("codis-felon", include_str!("../../presets/codis-felon.scenario")),
    ("full-population", include_str!("../../presets/full-population.scenario")),
    ("irrelevant-db", include_str!("../../presets/irrelevant-db.scenario")),
];

pub fn preset(name: &str) -> Result<ScenarioInputs, CliError> {
    let (_, text) = PRESETS.iter().find(|(n, _)| *n == name).ok_or_else(|| {
        let names: Vec<_> = PRESETS.iter().map(|(n, _)| *n).collect();
        CliError::Usage(format!("unknown preset '{name}' (available: {})", names.join(", ")))
    })?;
    parse(text, name)
}

pub fn load(path: &Path) -> Result<ScenarioInputs, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read scenario file {}: {e}", path.display())))?;
    parse(&text, &path.display().to_string())
}

pub fn parse(text: &str, origin: &str) -> Result<ScenarioInputs, CliError> {
    let mut out = ScenarioInputs::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = || format!("{origin}:{}", lineno + 1);
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| CliError::Usage(format!("{}: expected 'key = value'", at())))?;
        let num = |v: &str| {
            v.parse::<f64>()
                .map_err(|_| CliError::Usage(format!("{}: '{key}' is not a number: {v}", at())))
        };
        let count = |v: &str| parse_count(v).map_err(|e| CliError::Usage(format!("{}: '{key}' {e}", at())));
        let slot_taken = match key {
            "label" => out.label.replace(value.to_string()).is_some(),
            "p" => out.p.replace(num(value)?).is_some(),
            "d" => out.d.replace(count(value)?).is_some(),
            "db-size" => out.db_size.replace(count(value)?).is_some(),
            "psnd" => out.psnd.replace(num(value)?).is_some(),
            "n-outside" => out.n_outside.replace(num(value)?).is_some(),
            "m-factor" => out.m_factor.replace(num(value)?).is_some(),
            "trials" => out.trials.replace(count(value)?).is_some(),
            "seed" => out.seed.replace(count(value)?).is_some(),
            "ci-multiplier" => out.ci_multiplier.replace(num(value)?).is_some(),
            other => return Err(CliError::Usage(format!("{}: unknown key '{other}'", at()))),
        };
        if slot_taken {
            return Err(CliError::Usage(format!("{}: '{key}' given twice", at())));
        }
    }
    Ok(out)
}

impl ScenarioInputs {
    fn has_size(&self) -> bool {
        self.d.is_some() || self.db_size.is_some()
    }

    fn has_prior(&self) -> bool {
        self.psnd.is_some() || self.n_outside.is_some() || self.m_factor.is_some()
    }

    /// Layers `overrides` on top of `self`. The database size (`d` or
    /// `db-size`) and the prior (`psnd` or `n-outside`/`m-factor`) are each
    /// replaced as a group, so a flag never mixes with a file value of the
    /// other spelling.
    pub fn overridden_by(self, overrides: ScenarioInputs) -> ScenarioInputs {
        let (d, db_size) = if overrides.has_size() {
            (overrides.d, overrides.db_size)
        } else {
            (self.d, self.db_size)
        };
        let (psnd, n_outside, m_factor) = if overrides.has_prior() {
            (overrides.psnd, overrides.n_outside, overrides.m_factor)
        } else {
            (self.psnd, self.n_outside, self.m_factor)
        };
        ScenarioInputs {
            label: overrides.label.or(self.label),
            p: overrides.p.or(self.p),
            d,
            db_size,
            psnd,
            n_outside,
            m_factor,
            trials: overrides.trials.or(self.trials),
            seed: overrides.seed.or(self.seed),
            ci_multiplier: overrides.ci_multiplier.or(self.ci_multiplier),
        }
    }
}
