//! Scenario files, command-line overrides and the run configuration.

use std::fs;
use std::path::{Path, PathBuf};

use egs_core::laplace::{Stehfest, DEFAULT_ORDER};
use egs_core::units::{convert, Quantity, Unit};
use egs_core::{Scenario, SECONDS_PER_YEAR};

use crate::error::CliError;

pub const VALLES_CALDERA: &str = include_str!("../data/valles_caldera.json");
pub const ZEINALI: &str = include_str!("../data/zeinali.json");

/// Parse a scenario document; unknown keys are rejected.
pub fn parse_scenario(text: &str, origin: &str) -> Result<Scenario, CliError> {
    serde_json::from_str(text).map_err(|source| CliError::Json {
        origin: origin.to_owned(),
        source,
    })
}

pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_scenario(&text, &path.display().to_string())
}

/// One of the bundled scenarios by name.
pub fn bundled(name: &str) -> Result<Scenario, CliError> {
    match name {
        "valles_caldera" => parse_scenario(VALLES_CALDERA, "valles_caldera.json"),
        "zeinali" => parse_scenario(ZEINALI, "zeinali.json"),
        other => Err(CliError::Usage(format!(
            "no bundled scenario named {other:?}"
        ))),
    }
}

/// Edits applied on top of a loaded scenario, in field order.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub fractures: Option<u32>,
    /// Per-fracture rate in barrels per day; the total becomes count·rate.
    pub rate_bpd: Option<f64>,
    pub spacing_m: Option<f64>,
    pub faces: Option<u8>,
    pub horizon_yr: Option<f64>,
    pub steps: Option<u32>,
}

impl Overrides {
    pub fn apply(&self, mut sc: Scenario) -> Result<Scenario, CliError> {
        if let Some(n) = self.fractures {
            sc = sc.with_count(n);
        }
        if let Some(bpd) = self.rate_bpd {
            let rate = convert(Quantity::new(bpd, Unit::Bpd), Unit::M3PerS)?.value;
            sc = sc.with_per_fracture_rate(rate);
        }
        if let Some(s) = self.spacing_m {
            sc = sc.with_spacing(s);
        }
        if let Some(f) = self.faces {
            sc = sc.with_faces(f);
        }
        if let Some(h) = self.horizon_yr {
            sc = sc.with_horizon(h * SECONDS_PER_YEAR);
        }
        if let Some(n) = self.steps {
            sc.operating.n_steps = n;
        }
        let violations = sc.validate();
        if violations.is_empty() {
            Ok(sc)
        } else {
            Err(CliError::InvalidScenario(violations))
        }
    }
}

/// Everything a forecast-style command needs once flags are resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub stehfest: Stehfest,
    pub onset_fraction: f64,
    pub linear_time: bool,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(
        scenario_path: Option<&Path>,
        overrides: &Overrides,
        stehfest_n: Option<usize>,
        onset_fraction: f64,
        linear_time: bool,
        out: Option<PathBuf>,
    ) -> Result<Self, CliError> {
        let base = match scenario_path {
            Some(p) => load_scenario(p)?,
            None => bundled("valles_caldera")?,
        };
        let scenario = overrides.apply(base)?;
        if !(onset_fraction > 0.0 && onset_fraction < 1.0) {
            return Err(CliError::Usage(format!(
                "--onset-frac must lie in (0, 1), got {onset_fraction}"
            )));
        }
        Ok(Self {
            scenario,
            stehfest: Stehfest::new(stehfest_n.unwrap_or(DEFAULT_ORDER))?,
            onset_fraction,
            linear_time,
            out,
        })
    }

    pub fn horizon(&self) -> f64 {
        self.scenario.operating.horizon
    }

    pub fn steps(&self) -> usize {
        self.scenario.operating.n_steps as usize
    }

    /// Output times in seconds.
    pub fn times(&self) -> Vec<f64> {
        time_grid(self.horizon(), self.steps(), self.linear_time)
    }
}

/// `steps` times ending at `horizon`: log-spaced from horizon/10⁴, or
/// evenly spaced from horizon/steps.
pub fn time_grid(horizon: f64, steps: usize, linear: bool) -> Vec<f64> {
    if steps == 0 {
        return Vec::new();
    }
    if linear {
        return (1..=steps)
            .map(|i| horizon * i as f64 / steps as f64)
            .collect();
    }
    if steps == 1 {
        return vec![horizon];
    }
    let start = horizon * 1e-4;
    let ratio = (horizon / start).ln() / (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                horizon
            } else {
                start * (ratio * i as f64).exp()
            }
        })
        .collect()
}

/// Comma-separated list of numbers; an empty string gives an empty list.
pub fn parse_list(text: &str, flag: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| CliError::Usage(format!("{flag}: {s:?} is not a number")))
        })
        .collect()
}
