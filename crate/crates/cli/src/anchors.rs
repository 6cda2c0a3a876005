//! Reported values from the reference field study that the engine is compared
//! against for information only. None of them gates anything.

use serde::Deserialize;

use egs_core::analytic::{forecast, onset_of_decline, Model};
use egs_core::laplace::Stehfest;
use egs_core::SECONDS_PER_YEAR;

use crate::config::{bundled, time_grid, Overrides};
use crate::error::CliError;

pub const ANCHORS: &str = include_str!("../data/anchors.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnchorQuantity {
    TemperatureC,
    OnsetYr,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Anchor {
    pub label: String,
    pub quantity: AnchorQuantity,
    pub value: f64,
    pub scenario: String,
    pub model: String,
    #[serde(default)]
    pub fractures: Option<u32>,
    #[serde(default)]
    pub spacing_m: Option<f64>,
    #[serde(default)]
    pub faces: Option<u8>,
    #[serde(default)]
    pub rate_bpd: Option<f64>,
    #[serde(default)]
    pub time_yr: Option<f64>,
}

pub fn load() -> Result<Vec<Anchor>, CliError> {
    serde_json::from_str(ANCHORS).map_err(|source| CliError::Json {
        origin: "anchors.json".to_owned(),
        source,
    })
}

// Samples used to locate an onset time.
const ONSET_SAMPLES: usize = 400;

impl Anchor {
    /// The engine's value for the same quantity; `None` for an onset that is
    /// never reached within the horizon.
    pub fn evaluate(
        &self,
        stehfest: &Stehfest,
        onset_fraction: f64,
    ) -> Result<Option<f64>, CliError> {
        let model: Model = self
            .model
            .parse()
            .map_err(|e| CliError::Usage(format!("anchor {:?}: {e}", self.label)))?;
        let overrides = Overrides {
            fractures: self.fractures,
            rate_bpd: self.rate_bpd,
            spacing_m: self.spacing_m,
            faces: self.faces,
            ..Overrides::default()
        };
        let sc = overrides.apply(bundled(&self.scenario)?)?;
        match self.quantity {
            AnchorQuantity::TemperatureC => {
                let t = self.time_yr.unwrap_or(50.0) * SECONDS_PER_YEAR;
                let series = forecast(&sc, model, &[t], stehfest)?;
                Ok(series.last().map(|(_, v)| v))
            }
            AnchorQuantity::OnsetYr => {
                let times = time_grid(sc.operating.horizon, ONSET_SAMPLES, false);
                let series = forecast(&sc, model, &times, stehfest)?;
                Ok(onset_of_decline(&series, onset_fraction).map(|t| t / SECONDS_PER_YEAR))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_anchors_parse_and_evaluate() {
        let anchors = load().unwrap();
        assert_eq!(anchors.len(), 7);
        let st = Stehfest::default();
        for a in &anchors {
            let v = a.evaluate(&st, 0.01).unwrap();
            assert!(v.is_some(), "{}", a.label);
        }
    }
}
