//! Finite-difference conjugate solver used as independent ground truth.
//!
//! The rock beside each fluid station x_i is a 1-D column in y, stretched
//! geometrically toward the fracture face and advanced with Crank-Nicolson
//! (the first two steps are replaced by four backward-Euler half steps to damp
//! the start-up discontinuity). The fluid is marched quasi-steadily in x with
//! the trapezoid rule, driven by the face flux from a one-sided second-order
//! stencil.
//!
//! Coupling within a time step: a column's new state is affine in its face
//! temperature, `T = P + T_f·R`, where `R` (the response to a unit face
//! temperature) is shared by all columns. The face flux is therefore affine
//! in T_f too and the fluid march is solved station by station with the new
//! flux already consistent. After the rock update the explicit march is
//! re-run from the updated rock as a coupling check.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::analytic::{fluid_temp_single, ForecastSeries, Model};
use crate::math::{abs, ln, pow, sqrt};
use crate::{Error, Result, Scenario};

/// Far-field condition on the rock columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FarBoundary {
    /// Rock extends without bound; held at T0 at `y_max`.
    DirichletInitial,
    /// Insulated symmetry midplane between neighbouring fractures.
    NeumannZero,
}

/// Discretisation parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleGrid {
    /// Fluid stations minus one (cells along the fracture).
    pub nx: usize,
    /// Rock cells per column.
    pub ny: usize,
    /// Column depth. `None` picks 6√(α·horizon) for unbounded rock and the
    /// half spacing for a slab.
    pub y_max: Option<f64>,
    /// Ratio between neighbouring rock cell sizes, in (1, 1.1].
    pub stretch: f64,
    /// Number of time steps over the horizon, dt = horizon / time_steps.
    pub time_steps: usize,
    pub far: FarBoundary,
}

impl OracleGrid {
    pub fn semi_infinite() -> Self {
        Self {
            nx: 200,
            ny: 400,
            y_max: None,
            stretch: 1.02,
            time_steps: 2000,
            far: FarBoundary::DirichletInitial,
        }
    }

    pub fn slab() -> Self {
        Self {
            far: FarBoundary::NeumannZero,
            ..Self::semi_infinite()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx < 16 || self.ny < 16 {
            return Err(Error::Grid("nx and ny must be >= 16"));
        }
        if !(self.stretch > 1.0 && self.stretch <= 1.1) {
            return Err(Error::Grid("stretch ratio must lie in (1, 1.1]"));
        }
        if self.time_steps == 0 {
            return Err(Error::Grid("time_steps must be >= 1"));
        }
        if let Some(y) = self.y_max {
            if !(y > 0.0 && y.is_finite()) {
                return Err(Error::Grid("y_max must be > 0"));
            }
        }
        Ok(())
    }

    /// Same grid with every cell halved: twice the cells in x, y and time,
    /// and the square root of the stretch ratio (the new nodes nest inside
    /// the old ones).
    pub fn refined(&self) -> Self {
        Self {
            nx: 2 * self.nx,
            ny: 2 * self.ny,
            stretch: sqrt(self.stretch),
            time_steps: 2 * self.time_steps,
            ..*self
        }
    }

    fn depth(&self, sc: &Scenario) -> Result<f64> {
        if let Some(y) = self.y_max {
            return Ok(y);
        }
        match self.far {
            FarBoundary::DirichletInitial => {
                Ok(6.0 * sqrt(sc.thermal_diffusivity() * sc.operating.horizon))
            }
            FarBoundary::NeumannZero => sc
                .half_spacing()
                .ok_or(Error::Grid("slab mode needs a fracture spacing")),
        }
    }
}

/// Node depths 0 = y_0 < … < y_ny = depth with y_j ∝ r^j − 1.
pub fn stretched_nodes(ny: usize, depth: f64, ratio: f64) -> Vec<f64> {
    let denom = pow(ratio, ny as f64) - 1.0;
    (0..=ny)
        .map(|j| depth * (pow(ratio, j as f64) - 1.0) / denom)
        .collect()
}

/// Rock temperature field at one instant; `temperature[i][j]` is at
/// (x[i], y[j]).
#[derive(Debug, Clone, PartialEq)]
pub struct RockSnapshot {
    pub time: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub temperature: Vec<Vec<f64>>,
}

impl RockSnapshot {
    /// Linear interpolation in y on column `i`.
    pub fn probe(&self, i: usize, y: f64) -> f64 {
        let col = &self.temperature[i];
        let j = self
            .y
            .partition_point(|&v| v < y)
            .clamp(1, self.y.len() - 1);
        let (y0, y1) = (self.y[j - 1], self.y[j]);
        let w = ((y - y0) / (y1 - y0)).clamp(0.0, 1.0);
        col[j - 1] + w * (col[j] - col[j - 1])
    }
}

/// Heat bookkeeping per fracture over the run, J.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBudget {
    pub fluid_gain: f64,
    pub rock_loss: f64,
}

impl EnergyBudget {
    /// |gain − loss| / loss.
    pub fn imbalance(&self) -> f64 {
        abs(self.fluid_gain - self.rock_loss) / self.rock_loss
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleRun {
    pub series: ForecastSeries,
    /// Per-face heat flux into the fluid at the outlet station, W/m².
    pub outlet_flux: Vec<f64>,
    pub snapshots: Vec<RockSnapshot>,
    pub energy: EnergyBudget,
    /// Extremes over every rock and fluid node and every step.
    pub min_temperature: f64,
    pub max_temperature: f64,
}

/// Coupling tolerance as a fraction of the span (span floored at 1 degC).
pub const COUPLING_TOLERANCE: f64 = 1e-6;
/// Largest allowed disturbance at the far end of unbounded columns, degC.
pub const FAR_FIELD_TOLERANCE: f64 = 0.1;

// Factored tridiagonal system (I − θ·dt·A) plus its unit face response.
struct StepOperator {
    theta: f64,
    dt: f64,
    lower: Vec<f64>,
    // Thomas elimination: modified upper diagonal and pivots.
    c_prime: Vec<f64>,
    inv_pivot: Vec<f64>,
    response: Vec<f64>,
}

struct Column<'a> {
    h: &'a [f64],
    weight: &'a [f64],
    alpha: f64,
    unknowns: usize,
    far: FarBoundary,
    far_value: f64,
}

impl Column<'_> {
    // (A·T)_j for unknown node j (1-based into the full column).
    fn apply(&self, t: &[f64], j: usize) -> f64 {
        let h0 = self.h[j - 1];
        let left = (t[j - 1] - t[j]) / h0;
        let right = if j < self.h.len() {
            (t[j + 1] - t[j]) / self.h[j]
        } else {
            0.0
        };
        self.alpha * (left + right) / self.weight[j]
    }

    fn operator(&self, dt: f64, theta: f64) -> StepOperator {
        let m = self.unknowns;
        let mut lower = vec![0.0; m];
        let mut diag = vec![0.0; m];
        let mut upper = vec![0.0; m];
        for k in 0..m {
            let j = k + 1;
            let s = theta * dt * self.alpha / self.weight[j];
            let inv_l = 1.0 / self.h[j - 1];
            let inv_r = if j < self.h.len() {
                1.0 / self.h[j]
            } else {
                0.0
            };
            lower[k] = -s * inv_l;
            upper[k] = -s * inv_r;
            diag[k] = 1.0 + s * (inv_l + inv_r);
        }
        let mut c_prime = vec![0.0; m];
        let mut inv_pivot = vec![0.0; m];
        for k in 0..m {
            let pivot = if k == 0 {
                diag[0]
            } else {
                diag[k] - lower[k] * c_prime[k - 1]
            };
            inv_pivot[k] = 1.0 / pivot;
            c_prime[k] = upper[k] * inv_pivot[k];
        }
        let mut op = StepOperator {
            theta,
            dt,
            lower,
            c_prime,
            inv_pivot,
            response: vec![0.0; m],
        };
        let mut rhs = vec![0.0; m];
        rhs[0] = theta * dt * self.alpha / (self.h[0] * self.weight[1]);
        op.solve(&mut rhs);
        op.response = rhs;
        op
    }

    // Right-hand side for the unknowns, excluding the new face temperature.
    fn rhs(&self, op: &StepOperator, t: &[f64], out: &mut [f64]) {
        let explicit = (1.0 - op.theta) * op.dt;
        for (k, r) in out.iter_mut().enumerate() {
            let j = k + 1;
            *r = t[j] + explicit * self.apply(t, j);
        }
        if self.far == FarBoundary::DirichletInitial {
            let j = self.unknowns;
            out[j - 1] +=
                op.theta * op.dt * self.alpha * self.far_value / (self.h[j] * self.weight[j]);
        }
    }
}

impl StepOperator {
    fn solve(&self, rhs: &mut [f64]) {
        let m = rhs.len();
        rhs[0] *= self.inv_pivot[0];
        for k in 1..m {
            rhs[k] = (rhs[k] - self.lower[k] * rhs[k - 1]) * self.inv_pivot[k];
        }
        for k in (0..m - 1).rev() {
            rhs[k] -= self.c_prime[k] * rhs[k + 1];
        }
    }
}

fn check_times(times: &[f64], horizon: f64, what: &'static str) -> Result<()> {
    if times
        .windows(2)
        .any(|w| w[1].partial_cmp(&w[0]) != Some(Ordering::Greater))
    {
        return Err(Error::Series(what));
    }
    if times
        .iter()
        .any(|&t| !(t >= 0.0 && t <= horizon * (1.0 + 1e-12)))
    {
        return Err(Error::Series("requested time outside [0, horizon]"));
    }
    Ok(())
}

/// Run the conjugate finite-difference model over `sc.operating.horizon`.
///
/// Outlet temperature and outlet flux are reported at `probe_times`, rock
/// fields at `snapshot_times`; both lists must be increasing and within the
/// horizon, and are interpolated linearly between steps.
pub fn fd_simulate(
    sc: &Scenario,
    grid: &OracleGrid,
    probe_times: &[f64],
    snapshot_times: &[f64],
) -> Result<OracleRun> {
    let sc = sc.validated()?;
    grid.validate()?;
    let horizon = sc.operating.horizon;
    check_times(
        probe_times,
        horizon,
        "probe times must be strictly increasing",
    )?;
    check_times(
        snapshot_times,
        horizon,
        "snapshot times must be strictly increasing",
    )?;

    let t0 = sc.rock.initial_temperature;
    let tinj = sc.fluid.injection_temperature;
    let span = sc.span();
    let alpha = sc.thermal_diffusivity();
    let k = sc.rock.conductivity;
    let faces = f64::from(sc.fractures.faces);
    let capacity = sc.advective_capacity();
    let height = sc.fractures.height;

    let depth = grid.depth(&sc)?;
    let y = stretched_nodes(grid.ny, depth, grid.stretch);
    let h: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();
    let ny = grid.ny;
    // Control-volume widths; node 0 and the last node get half cells.
    let mut weight = vec![0.0; ny + 1];
    weight[0] = 0.5 * h[0];
    for j in 1..ny {
        weight[j] = 0.5 * (h[j - 1] + h[j]);
    }
    weight[ny] = 0.5 * h[ny - 1];
    let unknowns = match grid.far {
        FarBoundary::DirichletInitial => ny - 1,
        FarBoundary::NeumannZero => ny,
    };
    // Slab columns carry an extra unknown; the Dirichlet column's last
    // unknown sees h[ny-1] to the fixed node.
    let column = Column {
        h: if grid.far == FarBoundary::NeumannZero {
            &h
        } else {
            &h[..ny]
        },
        weight: &weight,
        alpha,
        unknowns,
        far: grid.far,
        far_value: t0,
    };

    let nx = grid.nx;
    let length = sc.fractures.flow_length;
    let dx = length / nx as f64;
    let xs: Vec<f64> = (0..=nx).map(|i| i as f64 * dx).collect();
    let stride = ny + 1;
    let mut rock = vec![t0; (nx + 1) * stride];
    let mut fluid = vec![t0; nx + 1];
    fluid[0] = tinj;
    for col in rock.chunks_mut(stride) {
        col[0] = t0;
    }
    rock[0] = tinj;
    let mut prev_rock = rock.clone();

    // One-sided second-order face derivative on the first three nodes.
    let (h0, h1) = (h[0], h[1]);
    let d0 = -(2.0 * h0 + h1) / (h0 * (h0 + h1));
    let d1 = (h0 + h1) / (h0 * h1);
    let d2 = -h0 / (h1 * (h0 + h1));
    let face_flux = |col: &[f64]| k * (d0 * col[0] + d1 * col[1] + d2 * col[2]);

    let dt = horizon / grid.time_steps as f64;
    let startup = column.operator(0.5 * dt, 1.0);
    let main = column.operator(dt, 0.5);
    let mut schedule: Vec<&StepOperator> = Vec::new();
    let warm = grid.time_steps.min(2);
    for _ in 0..2 * warm {
        schedule.push(&startup);
    }
    for _ in warm..grid.time_steps {
        schedule.push(&main);
    }

    let rock_inventory = |state: &[f64]| -> f64 {
        // ∫₀ᴸ Σ_j w_j (T0 − T_j) dx with the trapezoid rule in x.
        let per_col: Vec<f64> = state
            .chunks(stride)
            .map(|col| col.iter().zip(&weight).map(|(t, w)| w * (t0 - t)).sum())
            .collect();
        let inner: f64 = per_col[1..nx].iter().sum();
        dx * (inner + 0.5 * (per_col[0] + per_col[nx]))
    };

    let mut time = 0.0;
    let mut outlet_prev = t0;
    let mut flux_prev = face_flux(&rock[nx * stride..]);
    let mut fluid_gain = 0.0;
    let mut probes_t = Vec::with_capacity(probe_times.len());
    let mut probes_q = Vec::with_capacity(probe_times.len());
    let mut probe_cursor = 0;
    let mut snapshots = Vec::with_capacity(snapshot_times.len());
    let mut snap_cursor = 0;
    let mut t_min = tinj.min(t0);
    let mut t_max = t0;

    let mut p = vec![0.0; unknowns];
    let mut lin_p = vec![0.0; nx + 1];
    let tol = COUPLING_TOLERANCE * span.max(1.0);

    while probe_cursor < probe_times.len() && probe_times[probe_cursor] <= 0.0 {
        probes_t.push(t0);
        probes_q.push(flux_prev);
        probe_cursor += 1;
    }
    while snap_cursor < snapshot_times.len() && snapshot_times[snap_cursor] <= 0.0 {
        snapshots.push(snapshot(0.0, &xs, &y, &rock, stride));
        snap_cursor += 1;
    }

    for op in schedule {
        prev_rock.copy_from_slice(&rock);
        let resp = &op.response;
        let g = k * (d0 + d1 * resp[0] + d2 * resp[1]);
        for (i, col) in rock.chunks_mut(stride).enumerate() {
            column.rhs(op, col, &mut p);
            op.solve(&mut p);
            col[1..=unknowns].copy_from_slice(&p);
            // Face flux = lin_p[i] + g·T_f once the face value is known.
            lin_p[i] = k * (d1 * p[0] + d2 * p[1]);
        }
        // Fluid march with the affine flux.
        let a = capacity / dx;
        fluid[0] = tinj;
        let mut q_left = lin_p[0] + g * tinj;
        for i in 1..=nx {
            let tf = (a * fluid[i - 1] + 0.5 * faces * (q_left + lin_p[i])) / (a - 0.5 * faces * g);
            fluid[i] = tf;
            q_left = lin_p[i] + g * tf;
        }
        for (i, col) in rock.chunks_mut(stride).enumerate() {
            let tf = fluid[i];
            col[0] = tf;
            for (v, r) in col[1..=unknowns].iter_mut().zip(resp) {
                *v += tf * r;
            }
        }
        // Coupling check: explicit march from the updated rock.
        let mut check = tinj;
        let mut change: f64 = 0.0;
        let mut q_prev = face_flux(&rock[..stride]);
        for i in 1..=nx {
            let q = face_flux(&rock[i * stride..(i + 1) * stride]);
            check += 0.5 * faces * (q_prev + q) / a;
            change = change.max(abs(check - fluid[i]));
            q_prev = q;
        }
        if change > tol {
            return Err(Error::OracleCoupling {
                iterations: 1,
                change,
            });
        }

        if grid.far == FarBoundary::DirichletInitial {
            for col in rock.chunks(stride) {
                let dev = abs(col[ny - 1] - t0);
                if dev > FAR_FIELD_TOLERANCE {
                    return Err(Error::FarBoundary {
                        time: time + op.dt,
                        deviation: dev,
                    });
                }
            }
        }
        for &v in rock.iter().chain(fluid.iter()) {
            t_min = t_min.min(v);
            t_max = t_max.max(v);
        }

        let new_time = time + op.dt;
        let outlet = fluid[nx];
        let flux = face_flux(&rock[nx * stride..]);
        fluid_gain += 0.5 * op.dt * capacity * height * ((outlet_prev - tinj) + (outlet - tinj));

        while probe_cursor < probe_times.len()
            && probe_times[probe_cursor] <= new_time * (1.0 + 1e-12)
        {
            let w = ((probe_times[probe_cursor] - time) / op.dt).clamp(0.0, 1.0);
            probes_t.push(outlet_prev + w * (outlet - outlet_prev));
            probes_q.push(flux_prev + w * (flux - flux_prev));
            probe_cursor += 1;
        }
        while snap_cursor < snapshot_times.len()
            && snapshot_times[snap_cursor] <= new_time * (1.0 + 1e-12)
        {
            let ts = snapshot_times[snap_cursor];
            let w = ((ts - time) / op.dt).clamp(0.0, 1.0);
            let blended: Vec<f64> = prev_rock
                .iter()
                .zip(&rock)
                .map(|(a, b)| a + w * (b - a))
                .collect();
            snapshots.push(snapshot(ts, &xs, &y, &blended, stride));
            snap_cursor += 1;
        }
        outlet_prev = outlet;
        flux_prev = flux;
        time = new_time;
    }

    let rock_loss = faces * height * sc.rock.heat_capacity() * rock_inventory(&rock);
    // Probes lie in [T_inj, T0] up to round-off.
    let clamped: Vec<f64> = probes_t.iter().map(|v| v.clamp(tinj, t0)).collect();
    let series = ForecastSeries::new(Model::Oracle, probe_times.to_vec(), clamped, tinj, t0)?;
    Ok(OracleRun {
        series,
        outlet_flux: probes_q,
        snapshots,
        energy: EnergyBudget {
            fluid_gain,
            rock_loss,
        },
        min_temperature: t_min,
        max_temperature: t_max,
    })
}

fn snapshot(time: f64, xs: &[f64], y: &[f64], state: &[f64], stride: usize) -> RockSnapshot {
    RockSnapshot {
        time,
        x: xs.to_vec(),
        y: y.to_vec(),
        temperature: state.chunks(stride).map(<[f64]>::to_vec).collect(),
    }
}

/// One refinement level of a convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub nx: usize,
    pub ny: usize,
    pub time_steps: usize,
    /// Largest |oracle − closed form| over the probe times, degC.
    pub max_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceStudy {
    /// log2(e_{n−2} / e_{n−1}) between the two finest levels.
    pub fn observed_order(&self) -> f64 {
        let n = self.rows.len();
        ln(self.rows[n - 2].max_error / self.rows[n - 1].max_error) / core::f64::consts::LN_2
    }
}

/// Run the oracle on `levels` successively halved grids and measure the
/// outlet error against the closed-form single-fracture solution.
pub fn convergence_study(
    sc: &Scenario,
    base: &OracleGrid,
    levels: usize,
    probe_times: &[f64],
) -> Result<ConvergenceStudy> {
    if levels < 2 {
        return Err(Error::Convergence("at least two levels are needed"));
    }
    // Pin the column depth so every level discretises the same domain.
    let mut grid = OracleGrid {
        y_max: Some(base.depth(sc)?),
        ..*base
    };
    let l = sc.fractures.flow_length;
    let mut rows = Vec::with_capacity(levels);
    for _ in 0..levels {
        let run = fd_simulate(sc, &grid, probe_times, &[])?;
        let max_error = probe_times
            .iter()
            .zip(run.series.temperatures())
            .map(|(&t, &v)| abs(v - fluid_temp_single(sc, l, t)))
            .fold(0.0, f64::max);
        rows.push(ConvergenceRow {
            nx: grid.nx,
            ny: grid.ny,
            time_steps: grid.time_steps,
            max_error,
        });
        grid = grid.refined();
    }
    if rows
        .windows(2)
        .any(|w| w[1].max_error.partial_cmp(&w[0].max_error) != Some(Ordering::Less))
    {
        return Err(Error::Convergence("error did not decrease with refinement"));
    }
    Ok(ConvergenceStudy { rows })
}
