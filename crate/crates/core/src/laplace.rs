//! Gaver-Stehfest inversion and the Laplace-domain fracture solutions.
//!
//! In the Laplace variable the fluid energy balance along a fracture is a
//! first-order ODE in x whose solution is
//!
//! ```text
//! T̂_f(x, s) = T0/s + (T_inj − T0)/s · exp(−x·γ(s))
//! ```
//!
//! with γ(s) = faces·k/(ρ_f c_f v b) · √(s/α) for rock that extends without
//! bound, and the same expression multiplied by tanh(d·√(s/α)) when each
//! fracture only drains a slab of half-thickness d bounded by a zero-flux
//! midplane (the symmetry plane between identical neighbours). The slab form
//! is the interference model: for d·√(s/α) ≫ 1 the two coincide, and once the
//! cooling fronts of neighbouring fractures meet the slab runs out of heat.

use alloc::vec::Vec;

use crate::analytic::{fluid_temp_single, ForecastSeries, Model};
use crate::math::{exp, sqrt, tanh};
use crate::{Error, Result, Scenario};

const LN_2: f64 = core::f64::consts::LN_2;

/// Smallest and largest Stehfest order accepted for inversion.
pub const MIN_ORDER: usize = 6;
pub const MAX_ORDER: usize = 20;
pub const DEFAULT_ORDER: usize = 12;

/// A function of the Laplace variable that can be sampled on s > 0.
///
/// Implementations must be free of side effects: inversions at different
/// times may sample the same image concurrently.
pub trait LaplaceImage {
    fn eval(&self, s: f64) -> f64;
}

impl<F: Fn(f64) -> f64> LaplaceImage for F {
    fn eval(&self, s: f64) -> f64 {
        self(s)
    }
}

fn binomial(n: u32, k: u32) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * i128::from(n - i) / i128::from(i + 1);
    }
    acc
}

/// Stehfest coefficients V_1..V_N for even `n` in `2..=20`.
///
/// Each V_j·(N/2)! is an integer,
/// Σ_k k^(N/2+1)·C(2k,k)·C(k,j−k)·C(N/2,k), so the sums are accumulated
/// exactly in i128 and divided once at the end. The exact integer weights
/// sum to zero.
pub fn stehfest_weights(n: usize) -> Result<Vec<f64>> {
    if !n.is_multiple_of(2) || !(2..=MAX_ORDER).contains(&n) {
        return Err(Error::StehfestOrder(n, 2, MAX_ORDER));
    }
    Ok(stehfest_integer_weights(n)
        .1
        .into_iter()
        .map(|(num, den)| num as f64 / den as f64)
        .collect())
}

// (N/2)!, and for each j the pair (signed numerator, (N/2)!).
fn stehfest_integer_weights(n: usize) -> (i128, Vec<(i128, i128)>) {
    let half = (n / 2) as u32;
    let fact: i128 = (1..=i128::from(half)).product();
    let weights = (1..=n as u32)
        .map(|j| {
            let lo = j.div_ceil(2);
            let hi = j.min(half);
            let sum: i128 = (lo..=hi)
                .map(|k| {
                    i128::from(k).pow(half + 1)
                        * binomial(2 * k, k)
                        * binomial(k, j - k)
                        * binomial(half, k)
                })
                .sum();
            let sign = if (j + half).is_multiple_of(2) { 1 } else { -1 };
            (sign * sum, fact)
        })
        .collect();
    (fact, weights)
}

/// Configured Gaver-Stehfest inverter. Weights are computed once.
#[derive(Debug, Clone, PartialEq)]
pub struct Stehfest {
    order: usize,
    weights: Vec<f64>,
}

impl Default for Stehfest {
    fn default() -> Self {
        Self::new(DEFAULT_ORDER).expect("default order is valid")
    }
}

impl Stehfest {
    pub fn new(order: usize) -> Result<Self> {
        if !order.is_multiple_of(2) || !(MIN_ORDER..=MAX_ORDER).contains(&order) {
            return Err(Error::StehfestOrder(order, MIN_ORDER, MAX_ORDER));
        }
        Ok(Self {
            order,
            weights: stehfest_weights(order)?,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// f(t) ≈ (ln2/t)·Σ V_j·F(j·ln2/t).
    pub fn invert<F: LaplaceImage + ?Sized>(&self, image: &F, t: f64) -> Result<f64> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Domain {
                name: "inversion time",
                rule: "finite and > 0",
                value: t,
            });
        }
        let step = LN_2 / t;
        let mut acc = 0.0;
        for (j, v) in self.weights.iter().enumerate() {
            let s = (j + 1) as f64 * step;
            let f = image.eval(s);
            if !f.is_finite() {
                return Err(Error::NonFiniteImage { s });
            }
            acc += v * f;
        }
        Ok(acc * step)
    }
}

/// Fluid-temperature image for a fracture in unbounded rock.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiInfiniteImage {
    pub initial: f64,
    pub injection: f64,
    /// Transfer coefficient a at the evaluation point, s^½.
    pub a: f64,
}

impl LaplaceImage for SemiInfiniteImage {
    fn eval(&self, s: f64) -> f64 {
        (self.initial + (self.injection - self.initial) * exp(-self.a * sqrt(s))) / s
    }
}

pub fn fluid_temp_laplace(sc: &Scenario, x: f64) -> SemiInfiniteImage {
    SemiInfiniteImage {
        initial: sc.rock.initial_temperature,
        injection: sc.fluid.injection_temperature,
        a: sc.transfer_coefficient(x),
    }
}

/// Fluid-temperature image for a fracture draining a slab of half-thickness
/// `half_spacing` with an insulated far face.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlabImage {
    pub initial: f64,
    pub injection: f64,
    /// faces·k·x/(ρ_f c_f v b), m.
    pub conductance: f64,
    pub diffusivity: f64,
    pub half_spacing: f64,
}

impl SlabImage {
    /// x·γ(s).
    pub fn exponent(&self, s: f64) -> f64 {
        let m = sqrt(s / self.diffusivity);
        self.conductance * m * tanh(self.half_spacing * m)
    }
}

impl LaplaceImage for SlabImage {
    fn eval(&self, s: f64) -> f64 {
        (self.initial + (self.injection - self.initial) * exp(-self.exponent(s))) / s
    }
}

pub fn fluid_temp_laplace_slab(sc: &Scenario, x: f64) -> Result<SlabImage> {
    let half_spacing = match sc.half_spacing() {
        Some(d) if sc.fractures.count > 1 => d,
        _ => {
            return Err(Error::Domain {
                name: "fracture count with spacing",
                rule: "> 1 with a spacing",
                value: f64::from(sc.fractures.count),
            })
        }
    };
    Ok(SlabImage {
        initial: sc.rock.initial_temperature,
        injection: sc.fluid.injection_temperature,
        conductance: f64::from(sc.fractures.faces) * sc.rock.conductivity * x
            / sc.advective_capacity(),
        diffusivity: sc.thermal_diffusivity(),
        half_spacing,
    })
}

/// Image of the heat flux out of one rock face into the fluid, W/m².
///
/// (k/√α)·√s·(T0/s − T̂_f(x, s)); positive when the rock heats the fluid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxImage {
    pub fluid: SemiInfiniteImage,
    pub effusivity: f64,
}

impl LaplaceImage for FluxImage {
    fn eval(&self, s: f64) -> f64 {
        // T0/s − T̂_f collapses to (T0 − T_inj)·e^(−a√s)/s; skip the cancellation.
        let drop = self.fluid.initial - self.fluid.injection;
        self.effusivity * drop * exp(-self.fluid.a * sqrt(s)) / sqrt(s)
    }
}

pub fn interfacial_flux_laplace(sc: &Scenario, x: f64) -> FluxImage {
    FluxImage {
        fluid: fluid_temp_laplace(sc, x),
        effusivity: sc.rock.conductivity / sqrt(sc.thermal_diffusivity()),
    }
}

/// Time for the fluid stream to draw the whole slab inventory down once,
/// faces·x·d·ρ_r c_r/(ρ_f c_f v b), s.
pub fn depletion_time(sc: &Scenario, x: f64) -> Option<f64> {
    let d = sc.half_spacing()?;
    Some(f64::from(sc.fractures.faces) * x * d * sc.rock.heat_capacity() / sc.advective_capacity())
}

/// Allowed Stehfest overshoot beyond [T_inj, T0] before it is an error,
/// as a fraction of the span. Smaller excursions are clamped.
pub const CLAMP_TOLERANCE: f64 = 1e-3;
/// Largest allowed rise between consecutive samples, fraction of span.
pub const WIGGLE_TOLERANCE: f64 = 5e-3;

/// Outlet temperature series for the fracture array.
///
/// A single fracture uses the closed form; an array inverts the slab image
/// at x = L for every time. Times must be positive and strictly increasing.
pub fn multi_fracture_forecast(
    sc: &Scenario,
    times: &[f64],
    stehfest: &Stehfest,
) -> Result<ForecastSeries> {
    let sc = sc.validated()?;
    let t0 = sc.rock.initial_temperature;
    let tinj = sc.fluid.injection_temperature;
    let span = sc.span();
    let length = sc.fractures.flow_length;

    let temps: Vec<f64> = if sc.fractures.count == 1 {
        times
            .iter()
            .map(|&t| fluid_temp_single(&sc, length, t))
            .collect()
    } else {
        let image = fluid_temp_laplace_slab(&sc, length)?;
        let mut out = Vec::with_capacity(times.len());
        for &t in times {
            let raw = stehfest.invert(&image, t)?;
            if raw < tinj - CLAMP_TOLERANCE * span || raw > t0 + CLAMP_TOLERANCE * span {
                return Err(Error::OutOfBounds {
                    time: t,
                    value: raw,
                });
            }
            out.push(raw.clamp(tinj, t0));
        }
        for (w, pair) in out.windows(2).enumerate() {
            let rise = pair[1] - pair[0];
            if rise > WIGGLE_TOLERANCE * span {
                return Err(Error::StehfestUnstable {
                    time: times[w + 1],
                    excess: rise,
                    order: stehfest.order(),
                });
            }
        }
        out
    };
    ForecastSeries::new(Model::MultiSlab, times.to_vec(), temps, tinj, t0)
}
