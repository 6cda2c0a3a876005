//! Parameter model for one EGS case and the derived quantities the solvers use.
//!
//! All fields are SI: metres, seconds, kilograms, joules, degrees Celsius.

use alloc::vec::Vec;
use core::fmt;

use crate::math::sqrt;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct RockProperties {
    /// W/(m degC)
    pub conductivity: f64,
    /// kg/m³
    pub density: f64,
    /// J/(kg degC)
    pub specific_heat: f64,
    /// degC
    pub initial_temperature: f64,
}

impl RockProperties {
    /// Volumetric heat capacity ρ_r·c_r, J/(m³ degC).
    pub fn heat_capacity(&self) -> f64 {
        self.density * self.specific_heat
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct FluidProperties {
    pub density: f64,
    pub specific_heat: f64,
    pub injection_temperature: f64,
}

impl FluidProperties {
    pub fn heat_capacity(&self) -> f64 {
        self.density * self.specific_heat
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct FractureArray {
    pub count: u32,
    /// Opening normal to the faces, m.
    pub aperture: f64,
    pub height: f64,
    /// Along-fracture flow path from injector to producer, m.
    pub flow_length: f64,
    /// Centre-to-centre distance between neighbouring fractures; needed when
    /// `count > 1`.
    #[cfg_attr(
        feature = "serde",
        serde(default, skip_serializing_if = "Option::is_none")
    )]
    pub spacing: Option<f64>,
    /// Heat-exchange faces per fracture, 1 or 2.
    pub faces: u8,
    /// Penny-shaped radius quoted by some data sets. Informational only.
    #[cfg_attr(
        feature = "serde",
        serde(default, skip_serializing_if = "Option::is_none")
    )]
    pub radius: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct Operating {
    /// Total injection rate over all fractures, m³/s.
    pub total_rate: f64,
    /// Forecast horizon, s.
    pub horizon: f64,
    pub n_steps: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct Scenario {
    pub rock: RockProperties,
    pub fluid: FluidProperties,
    pub fractures: FractureArray,
    pub operating: Operating,
}

/// One broken invariant: which field, and which rule it broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub field: &'static str,
    pub rule: &'static str,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.rule)
    }
}

fn positive(v: f64) -> bool {
    v.is_finite() && v > 0.0
}

impl Scenario {
    /// Every invariant violation, in field order. Empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut check = |ok: bool, field: &'static str, rule: &'static str| {
            if !ok {
                out.push(Violation { field, rule });
            }
        };
        let r = &self.rock;
        check(positive(r.conductivity), "rock.conductivity", "must be > 0");
        check(positive(r.density), "rock.density", "must be > 0");
        check(
            positive(r.specific_heat),
            "rock.specific_heat",
            "must be > 0",
        );
        check(
            r.initial_temperature.is_finite(),
            "rock.initial_temperature",
            "must be finite",
        );

        let fl = &self.fluid;
        check(positive(fl.density), "fluid.density", "must be > 0");
        check(
            positive(fl.specific_heat),
            "fluid.specific_heat",
            "must be > 0",
        );
        check(
            fl.injection_temperature.is_finite()
                && fl.injection_temperature < r.initial_temperature,
            "fluid.injection_temperature",
            "must be below rock.initial_temperature",
        );

        let fr = &self.fractures;
        check(fr.count >= 1, "fractures.count", "must be >= 1");
        check(positive(fr.aperture), "fractures.aperture", "must be > 0");
        check(positive(fr.height), "fractures.height", "must be > 0");
        check(
            positive(fr.flow_length),
            "fractures.flow_length",
            "must be > 0",
        );
        match fr.spacing {
            Some(s) => check(positive(s), "fractures.spacing", "must be > 0"),
            None => check(
                fr.count <= 1,
                "fractures.spacing",
                "required when count > 1",
            ),
        }
        check(
            fr.faces == 1 || fr.faces == 2,
            "fractures.faces",
            "must be 1 or 2",
        );

        let op = &self.operating;
        check(
            positive(op.total_rate),
            "operating.total_rate",
            "must be > 0",
        );
        check(positive(op.horizon), "operating.horizon", "must be > 0");
        check(op.n_steps >= 2, "operating.n_steps", "must be >= 2");
        out
    }

    /// `Ok(self)` when valid, otherwise the first violation.
    pub fn validated(self) -> Result<Self> {
        let v = self.validate();
        match v.first() {
            None => Ok(self),
            Some(first) => Err(Error::InvalidScenario(v.len(), *first)),
        }
    }

    pub fn thermal_diffusivity(&self) -> f64 {
        thermal_diffusivity(&self.rock)
    }

    /// Mean fluid velocity in one fracture: the per-fracture rate spread over
    /// the aperture-by-height cross-section.
    pub fn fracture_velocity(&self) -> f64 {
        let fr = &self.fractures;
        self.per_fracture_rate() / (fr.aperture * fr.height)
    }

    pub fn per_fracture_rate(&self) -> f64 {
        self.operating.total_rate / f64::from(self.fractures.count)
    }

    /// Heat-capacity flux per unit fracture height, ρ_f·c_f·v·b, W/(m degC).
    pub fn advective_capacity(&self) -> f64 {
        self.fluid.heat_capacity() * self.fracture_velocity() * self.fractures.aperture
    }

    /// Conduction-to-advection coefficient at distance `x` along the
    /// fracture, s^½. The outlet temperature is a function of a/(2√t).
    pub fn transfer_coefficient(&self, x: f64) -> f64 {
        f64::from(self.fractures.faces) * self.rock.conductivity * x
            / (self.advective_capacity() * sqrt(self.thermal_diffusivity()))
    }

    /// T0 − T_inj, the temperature span every forecast lives in.
    pub fn span(&self) -> f64 {
        self.rock.initial_temperature - self.fluid.injection_temperature
    }

    /// Half the fracture spacing: the distance to the symmetry midplane.
    pub fn half_spacing(&self) -> Option<f64> {
        self.fractures.spacing.map(|s| 0.5 * s)
    }

    pub fn with_faces(mut self, faces: u8) -> Self {
        self.fractures.faces = faces;
        self
    }

    /// Change the fracture count while keeping the total rate.
    pub fn with_count(mut self, count: u32) -> Self {
        self.fractures.count = count;
        self
    }

    pub fn with_spacing(mut self, spacing: f64) -> Self {
        self.fractures.spacing = Some(spacing);
        self
    }

    /// Set the per-fracture rate; the total becomes count·rate.
    pub fn with_per_fracture_rate(mut self, rate: f64) -> Self {
        self.operating.total_rate = rate * f64::from(self.fractures.count);
        self
    }

    pub fn with_total_rate(mut self, rate: f64) -> Self {
        self.operating.total_rate = rate;
        self
    }

    pub fn with_horizon(mut self, horizon: f64) -> Self {
        self.operating.horizon = horizon;
        self
    }
}

/// k / (ρ_r c_r), m²/s.
pub fn thermal_diffusivity(rock: &RockProperties) -> f64 {
    rock.conductivity / rock.heat_capacity()
}

/// Built-in parameter sets for the two reference field cases.
pub mod presets {
    use super::*;
    use crate::units::{convert, Quantity, Unit};
    use crate::SECONDS_PER_YEAR;

    fn granite() -> RockProperties {
        RockProperties {
            conductivity: 2.59408,
            density: 2650.0,
            specific_heat: 1046.0,
            initial_temperature: 300.0,
        }
    }

    fn water() -> FluidProperties {
        FluidProperties {
            density: 1000.0,
            specific_heat: 4184.0,
            injection_temperature: 65.0,
        }
    }

    fn feet(v: f64) -> f64 {
        convert(Quantity::new(v, Unit::Ft), Unit::M).map_or(f64::NAN, |q| q.value)
    }

    /// Valles Caldera data: one 3280 ft square fracture taking the whole
    /// 0.144 m³/s, one exchange face, 40 m spacing recorded for array runs.
    pub fn valles_caldera() -> Scenario {
        Scenario {
            rock: granite(),
            fluid: water(),
            fractures: FractureArray {
                count: 1,
                aperture: 0.00127,
                height: feet(3280.0),
                flow_length: feet(3280.0),
                spacing: Some(40.0),
                faces: 1,
                radius: None,
            },
            operating: Operating {
                total_rate: 0.144,
                horizon: 50.0 * SECONDS_PER_YEAR,
                n_steps: 200,
            },
        }
    }

    /// Ten 300 ft square fractures, 130 ft apart, fed at `rate_bpd` each.
    pub fn zeinali(rate_bpd: f64) -> Scenario {
        let rate =
            convert(Quantity::new(rate_bpd, Unit::Bpd), Unit::M3PerS).map_or(f64::NAN, |q| q.value);
        Scenario {
            rock: granite(),
            fluid: water(),
            fractures: FractureArray {
                count: 10,
                aperture: 0.00127,
                height: feet(300.0),
                flow_length: feet(300.0),
                spacing: Some(feet(130.0)),
                faces: 2,
                radius: Some(feet(150.0)),
            },
            operating: Operating {
                total_rate: 10.0 * rate,
                horizon: 50.0 * SECONDS_PER_YEAR,
                n_steps: 200,
            },
        }
    }
}
