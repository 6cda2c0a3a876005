//! Closed-form results for a fracture in conductive rock.
//!
//! The rock conducts in y (normal to the fracture); the fluid is quasi-steady
//! along x. With T_f imposed on the fracture face, the rock field is the
//! image-method Green's function integrated against the initial temperature
//! and the boundary history, and the fluid outlet follows
//!
//! ```text
//! T_f(x, t) = T0 + (T_inj − T0)·erfc(a / 2√t),   a = faces·k·x / (ρ_f c_f v b √α)
//! ```

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

use crate::laplace::{interfacial_flux_laplace, Stehfest};
use crate::math::{exp, sqrt};
use crate::quadrature::integrate;
use crate::specfun::{e1_positive, erf_unchecked, erfc_unchecked};
use crate::{Error, Result, Scenario, SECONDS_PER_YEAR};

/// Which solution produced a forecast.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    /// Isolated fracture, one exchange face.
    Single,
    /// Isolated fracture exchanging through both faces.
    GringartenRef,
    /// Fracture array with interference through finite rock slabs.
    MultiSlab,
    /// Finite-difference reference solution.
    Oracle,
}

impl Model {
    pub fn tag(self) -> &'static str {
        match self {
            Model::Single => "single",
            Model::GringartenRef => "gringarten_ref",
            Model::MultiSlab => "multi_slab",
            Model::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownModel;

impl fmt::Display for UnknownModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown model (expected single, gringarten_ref, multi_slab or oracle)")
    }
}

impl FromStr for Model {
    type Err = UnknownModel;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s {
            "single" => Ok(Model::Single),
            "gringarten_ref" => Ok(Model::GringartenRef),
            "multi_slab" => Ok(Model::MultiSlab),
            "oracle" => Ok(Model::Oracle),
            _ => Err(UnknownModel),
        }
    }
}

/// Outlet temperatures at strictly increasing times for one model.
#[derive(Debug, Clone, PartialEq)]
pub struct ForecastSeries {
    model: Model,
    times: Vec<f64>,
    temperatures: Vec<f64>,
    injection: f64,
    initial: f64,
}

impl ForecastSeries {
    /// Checks lengths, time ordering and that every value is in
    /// `[injection, initial]`.
    pub fn new(
        model: Model,
        times: Vec<f64>,
        temperatures: Vec<f64>,
        injection: f64,
        initial: f64,
    ) -> Result<Self> {
        if times.len() != temperatures.len() {
            return Err(Error::Series("times and temperatures differ in length"));
        }
        if times
            .windows(2)
            .any(|w| w[1].partial_cmp(&w[0]) != Some(Ordering::Greater))
        {
            return Err(Error::Series("times must be strictly increasing"));
        }
        if temperatures
            .iter()
            .any(|t| !(*t >= injection && *t <= initial))
        {
            return Err(Error::Series("temperature outside [T_inj, T0]"));
        }
        Ok(Self {
            model,
            times,
            temperatures,
            injection,
            initial,
        })
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn temperatures(&self) -> &[f64] {
        &self.temperatures
    }

    pub fn injection(&self) -> f64 {
        self.injection
    }

    pub fn initial(&self) -> f64 {
        self.initial
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<(f64, f64)> {
        Some((*self.times.last()?, *self.temperatures.last()?))
    }
}

/// One row of the thermal-radius/interference table. Times in years.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferenceRow {
    pub thermal_radius: f64,
    pub time: f64,
    pub interference_time: f64,
    pub interference_radius: f64,
}

/// Green's function of the heat equation on y > 0 with T = 0 at y = 0:
/// the free-space Gaussian minus its mirror image about the fracture face.
pub fn greens_semi_infinite(y: f64, t: f64, y_src: f64, tau: f64, alpha: f64) -> Result<f64> {
    if y < 0.0 || y_src < 0.0 {
        return Err(Error::Domain {
            name: "Green's function coordinate",
            rule: ">= 0",
            value: y.min(y_src),
        });
    }
    let dt = t - tau;
    if dt <= 0.0 {
        return Ok(0.0);
    }
    let four = 4.0 * alpha * dt;
    let direct = exp(-(y - y_src) * (y - y_src) / four);
    let image = exp(-(y + y_src) * (y + y_src) / four);
    Ok((direct - image) / sqrt(PI * four))
}

/// Part of the rock temperature carried over from the uniform initial state,
/// T0·erf(y / 2√(αt)).
pub fn rock_temp_initial(y: f64, t: f64, initial: f64, alpha: f64) -> f64 {
    if t <= 0.0 {
        return initial;
    }
    initial * erf_unchecked(y / (2.0 * sqrt(alpha * t)))
}

/// Fluid temperature at distance `x` along the fracture after time `t`.
pub fn fluid_temp_single(sc: &Scenario, x: f64, t: f64) -> f64 {
    let t0 = sc.rock.initial_temperature;
    if t <= 0.0 {
        return t0;
    }
    let arg = sc.transfer_coefficient(x) / (2.0 * sqrt(t));
    if arg >= 6.0 {
        return t0;
    }
    t0 + (sc.fluid.injection_temperature - t0) * erfc_unchecked(arg)
}

/// Same solution written with erf, T_inj + (T0 − T_inj)·erf(a / 2√t).
pub fn fluid_temp_single_erf_form(sc: &Scenario, x: f64, t: f64) -> f64 {
    let tinj = sc.fluid.injection_temperature;
    if t <= 0.0 {
        return sc.rock.initial_temperature;
    }
    let arg = sc.transfer_coefficient(x) / (2.0 * sqrt(t));
    tinj + sc.span() * erf_unchecked(arg)
}

/// Relative tolerance of the boundary-history convolution in [`rock_temp`].
pub const ROCK_QUAD_REL_TOL: f64 = 1e-8;

/// Rock temperature at depth `y` into the rock beside fracture station `x`.
///
/// The boundary-history term is the convolution of the closed-form fluid
/// temperature with the y-derivative of the Green's function,
/// y/√(4πα)·∫₀ᵗ T_f(τ)(t−τ)^(−3/2)·exp(−y²/4α(t−τ)) dτ, evaluated on
/// u = √(t − τ) so the kernel becomes 2u⁻²·exp(−y²/4αu²), which is smooth
/// and vanishes at u = 0.
pub fn rock_temp(y: f64, t: f64, sc: &Scenario, x: f64) -> Result<f64> {
    if y < 0.0 {
        return Err(Error::Domain {
            name: "rock depth y",
            rule: ">= 0",
            value: y,
        });
    }
    if y == 0.0 {
        return Ok(fluid_temp_single(sc, x, t));
    }
    let t0 = sc.rock.initial_temperature;
    if t <= 0.0 {
        return Ok(t0);
    }
    let alpha = sc.thermal_diffusivity();
    let initial_part = rock_temp_initial(y, t, t0, alpha);
    let prefactor = y / sqrt(4.0 * PI * alpha);
    let y2 = y * y / (4.0 * alpha);
    let integrand = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        let u2 = u * u;
        let e = y2 / u2;
        if e > 700.0 {
            return 0.0;
        }
        2.0 * fluid_temp_single(sc, x, t - u2) * exp(-e) / u2
    };
    let upper = sqrt(t);
    // Absolute floor: 1e-9 degC after the prefactor.
    let abs_tol = 1e-9 / prefactor;
    // The kernel is concentrated near u ~ y/2√α; split there so the adaptive
    // rule sees the peak from the first subdivision.
    let peak = (y / (2.0 * sqrt(alpha))).min(upper);
    let mut total = 0.0;
    for (a, b) in [(0.0, peak), (peak, upper)] {
        let r = integrate(integrand, a, b, abs_tol, ROCK_QUAD_REL_TOL, 4000)?;
        total += r.value;
    }
    Ok(initial_part + prefactor * total)
}

/// Heat flux out of one fracture face into the fluid at station `x`, W/m².
/// Positive when the rock heats the fluid. Inverted numerically from its
/// Laplace image.
pub fn interfacial_flux(sc: &Scenario, x: f64, t: f64, stehfest: &Stehfest) -> Result<f64> {
    stehfest.invert(&interfacial_flux_laplace(sc, x), t)
}

/// Temperature rise around a continuous point source of power `power`,
/// P/(4πkr)·erfc(r / 2√(αt)).
pub fn point_source_dt(power: f64, r: f64, t: f64, k: f64, alpha: f64) -> Result<f64> {
    if r <= 0.0 {
        return Err(Error::Domain {
            name: "point source radius",
            rule: "> 0",
            value: r,
        });
    }
    if t <= 0.0 {
        return Ok(0.0);
    }
    Ok(power / (4.0 * PI * k * r) * erfc_unchecked(r / (2.0 * sqrt(alpha * t))))
}

/// Temperature rise from a continuous line source of strength `q_line` (W/m)
/// and its image, q_l/(4πk)·[E1(r1²/4αt) + E1(r2²/4αt)].
pub fn line_source_dt(q_line: f64, r1: f64, r2: f64, t: f64, k: f64, alpha: f64) -> Result<f64> {
    for r in [r1, r2] {
        if r <= 0.0 {
            return Err(Error::Domain {
                name: "line source radius",
                rule: "> 0",
                value: r,
            });
        }
    }
    if t <= 0.0 {
        return Ok(0.0);
    }
    let four = 4.0 * alpha * t;
    let term = |r: f64| {
        let u = r * r / four;
        if u > 700.0 {
            0.0
        } else {
            e1_positive(u)
        }
    };
    Ok(q_line / (4.0 * PI * k) * (term(r1) + term(r2)))
}

/// Distance √(4αt) at which the exponent r²/4αt reaches one.
pub fn thermal_radius(t: f64, alpha: f64) -> f64 {
    sqrt(4.0 * alpha * t)
}

/// Inverse of [`thermal_radius`]: r²/(4α).
pub fn time_to_radius(r: f64, alpha: f64) -> f64 {
    r * r / (4.0 * alpha)
}

/// Interference table for the given fracture spacings.
///
/// For each spacing the thermal radius equals the spacing, the front needs
/// `time` years to cross it, and neighbouring fronts meet halfway, at half
/// that time and half that radius.
pub fn interference_table(spacings: &[f64], alpha: f64) -> Vec<InterferenceRow> {
    spacings
        .iter()
        .map(|&r| {
            let time = time_to_radius(r, alpha) / SECONDS_PER_YEAR;
            InterferenceRow {
                thermal_radius: r,
                time,
                interference_time: time / 2.0,
                interference_radius: r / 2.0,
            }
        })
        .collect()
}

/// Default drop, as a fraction of the span, that marks the onset of decline.
pub const DEFAULT_ONSET_FRACTION: f64 = 0.01;

/// Earliest time the outlet falls below T0 − frac·(T0 − T_inj), linearly
/// interpolated between samples. `None` if it never does.
pub fn onset_of_decline(series: &ForecastSeries, frac: f64) -> Option<f64> {
    let threshold = series.initial - frac * (series.initial - series.injection);
    let temps = series.temperatures();
    let times = series.times();
    let i = temps.iter().position(|&t| t <= threshold)?;
    if i == 0 || temps[i] == threshold {
        return Some(times[i]);
    }
    let (ta, tb) = (times[i - 1], times[i]);
    let (ya, yb) = (temps[i - 1], temps[i]);
    Some(ta + (ya - threshold) / (ya - yb) * (tb - ta))
}

/// Thermal power carried off by the produced fluid, ρ_f c_f Q (T_out − T_inj), W.
pub fn thermal_power(sc: &Scenario, outlet: f64) -> f64 {
    sc.fluid.heat_capacity() * sc.operating.total_rate * (outlet - sc.fluid.injection_temperature)
}

/// Scenario as seen by `model`: the isolated-fracture models fix the number of
/// exchange faces, the array model keeps the scenario's own.
pub fn scenario_for(sc: &Scenario, model: Model) -> Scenario {
    match model {
        Model::Single => sc.with_faces(1),
        Model::GringartenRef => sc.with_faces(2),
        Model::MultiSlab | Model::Oracle => *sc,
    }
}

/// Outlet forecast for one of the analytical models at the given times.
pub fn forecast(
    sc: &Scenario,
    model: Model,
    times: &[f64],
    stehfest: &Stehfest,
) -> Result<ForecastSeries> {
    let sc = scenario_for(sc, model).validated()?;
    match model {
        Model::Single | Model::GringartenRef => {
            let l = sc.fractures.flow_length;
            let temps = times
                .iter()
                .map(|&t| fluid_temp_single(&sc, l, t))
                .collect();
            ForecastSeries::new(
                model,
                times.to_vec(),
                temps,
                sc.fluid.injection_temperature,
                sc.rock.initial_temperature,
            )
        }
        Model::MultiSlab => crate::laplace::multi_fracture_forecast(&sc, times, stehfest),
        Model::Oracle => Err(Error::Series(
            "the oracle model is run through the oracle module",
        )),
    }
}
