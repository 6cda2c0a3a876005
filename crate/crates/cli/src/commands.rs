//! One function per subcommand. Each computes everything in memory and
//! returns it; nothing touches the filesystem until the whole run succeeded.

use std::fmt::Write as _;
use std::path::PathBuf;

use egs_core::analytic::{
    fluid_temp_single, forecast, interference_table, onset_of_decline, thermal_power,
    ForecastSeries, Model,
};
use egs_core::laplace::multi_fracture_forecast;
use egs_core::oracle::{convergence_study, fd_simulate, FarBoundary, OracleGrid};
use egs_core::units::{convert, Quantity, Unit};
use egs_core::SECONDS_PER_YEAR;

use crate::anchors;
use crate::args::{
    CompareArgs, ConvertArgs, ForecastArgs, OracleArgs, OracleMode, ScenarioArgs, Table2Args,
};
use crate::config::{bundled, load_scenario, parse_list, Overrides, RunConfig};
use crate::error::CliError;
use crate::format::{csv_document, sig6};

/// Result of a command: the main document, diagnostics for the user, and
/// any side files.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Outcome {
    pub csv: String,
    pub out: Option<PathBuf>,
    pub report: String,
    pub report_path: Option<PathBuf>,
    pub files: Vec<(PathBuf, String)>,
}

fn run_config(s: &ScenarioArgs, onset: f64, out: Option<PathBuf>) -> Result<RunConfig, CliError> {
    let overrides = Overrides {
        fractures: s.fractures,
        rate_bpd: s.rate_bpd,
        spacing_m: s.spacing_m,
        faces: s.faces,
        horizon_yr: s.horizon_yr,
        steps: s.steps,
    };
    RunConfig::new(
        s.scenario.as_deref(),
        &overrides,
        s.stehfest_n,
        onset,
        s.linear_time,
        out,
    )
}

fn years(t: f64) -> String {
    sig6(t / SECONDS_PER_YEAR)
}

fn onset_text(series: &ForecastSeries, frac: f64) -> String {
    match onset_of_decline(series, frac) {
        Some(t) => format!("{} yr", years(t)),
        None => "not reached".to_owned(),
    }
}

pub fn forecast_cmd(a: &ForecastArgs) -> Result<Outcome, CliError> {
    let cfg = run_config(&a.scenario, a.onset_frac, a.out.clone())?;
    let model = Model::from(a.model);
    let series = forecast(&cfg.scenario, model, &cfg.times(), &cfg.stehfest)?;
    let rows = series
        .times()
        .iter()
        .zip(series.temperatures())
        .map(|(&t, &v)| vec![years(t), sig6(v), model.tag().to_owned()]);
    let csv = csv_document(&["time_yr", "T_out_C", "model"], rows)?;

    let mut report = String::new();
    let _ = writeln!(
        report,
        "onset of decline ({} of span): {}",
        sig6(cfg.onset_fraction),
        onset_text(&series, cfg.onset_fraction)
    );
    if let Some((t, v)) = series.last() {
        let sc = egs_core::analytic::scenario_for(&cfg.scenario, model);
        let _ = writeln!(
            report,
            "outlet at {} yr: {} degC, thermal power {} MW",
            years(t),
            sig6(v),
            sig6(thermal_power(&sc, v) / 1e6)
        );
    }
    Ok(Outcome {
        csv,
        out: cfg.out,
        report,
        ..Outcome::default()
    })
}

pub fn table2_cmd(a: &Table2Args) -> Result<Outcome, CliError> {
    let alpha = match (a.alpha, &a.scenario) {
        (Some(alpha), _) => alpha,
        (None, Some(p)) => load_scenario(p)?.thermal_diffusivity(),
        (None, None) => bundled("valles_caldera")?.thermal_diffusivity(),
    };
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(CliError::Usage(format!(
            "thermal diffusivity must be > 0, got {alpha}"
        )));
    }
    let spacings = parse_list(&a.spacings, "--spacings")?;
    if let Some(bad) = spacings.iter().find(|&&s| !(s > 0.0 && s.is_finite())) {
        return Err(CliError::Usage(format!(
            "--spacings: {bad} is not a positive spacing"
        )));
    }
    let rows = interference_table(&spacings, alpha).into_iter().map(|r| {
        vec![
            sig6(r.thermal_radius),
            sig6(r.time),
            sig6(r.interference_time),
            sig6(r.interference_radius),
        ]
    });
    let csv = csv_document(
        &[
            "thermal_radius_m",
            "time_yr",
            "interference_time_yr",
            "interference_radius_m",
        ],
        rows,
    )?;
    Ok(Outcome {
        csv,
        out: a.out.clone(),
        ..Outcome::default()
    })
}

/// A model entry of `--models`: the model, optionally at its own spacing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    pub model: Model,
    pub spacing_m: Option<f64>,
}

impl ModelSpec {
    pub fn label(&self) -> String {
        match self.spacing_m {
            Some(s) => format!("{}_{}m", self.model.tag(), sig6(s)),
            None => self.model.tag().to_owned(),
        }
    }
}

pub fn parse_models(text: &str) -> Result<Vec<ModelSpec>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (name, spacing) = match item.split_once(':') {
                Some((n, s)) => {
                    let s: f64 = s.parse().map_err(|_| {
                        CliError::Usage(format!("--models: bad spacing in {item:?}"))
                    })?;
                    (n, Some(s))
                }
                None => (item, None),
            };
            let model: Model = name
                .parse()
                .map_err(|e| CliError::Usage(format!("--models: {e}")))?;
            if model == Model::Oracle {
                return Err(CliError::Usage(
                    "--models: the oracle runs through the oracle subcommand".to_owned(),
                ));
            }
            Ok(ModelSpec {
                model,
                spacing_m: spacing,
            })
        })
        .collect()
}

pub fn compare_cmd(a: &CompareArgs) -> Result<Outcome, CliError> {
    let cfg = run_config(&a.scenario, a.onset_frac, a.out.clone())?;
    let specs = parse_models(&a.models)?;
    if specs.len() < 2 {
        return Err(CliError::Usage(
            "--models needs at least two entries".to_owned(),
        ));
    }
    let times = cfg.times();
    let mut series = Vec::with_capacity(specs.len());
    for spec in &specs {
        let sc = match spec.spacing_m {
            Some(s) => cfg.scenario.with_spacing(s),
            None => cfg.scenario,
        };
        series.push(forecast(&sc, spec.model, &times, &cfg.stehfest)?);
    }

    let labels: Vec<String> = specs.iter().map(ModelSpec::label).collect();
    let header: Vec<String> = std::iter::once("time_yr".to_owned())
        .chain(labels.iter().map(|l| format!("T_{l}_C")))
        .collect();
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows = times.iter().enumerate().map(|(i, &t)| {
        std::iter::once(years(t))
            .chain(series.iter().map(|s| sig6(s.temperatures()[i])))
            .collect::<Vec<_>>()
    });
    let csv = csv_document(&header_refs, rows)?;

    let mut r = String::new();
    let width = labels.iter().map(String::len).max().unwrap_or(5).max(5);
    let horizon = years(cfg.horizon());
    let _ = writeln!(
        r,
        "{:width$}  {:>12}  {:>14}",
        "model",
        "onset_yr",
        format!("T_{horizon}yr_C")
    );
    for (label, s) in labels.iter().zip(&series) {
        let onset = onset_of_decline(s, cfg.onset_fraction).map_or_else(|| "-".to_owned(), years);
        let last = s.last().map_or_else(|| "-".to_owned(), |(_, v)| sig6(v));
        let _ = writeln!(r, "{label:width$}  {onset:>12}  {last:>14}");
    }
    let mut end_gap = (0.0, 0, 0);
    let mut any_gap = (0.0, 0, 0, 0.0);
    for i in 0..series.len() {
        for j in i + 1..series.len() {
            let (ti, tj) = (series[i].temperatures(), series[j].temperatures());
            if let (Some(&a), Some(&b)) = (ti.last(), tj.last()) {
                if (a - b).abs() > end_gap.0 {
                    end_gap = ((a - b).abs(), i, j);
                }
            }
            for (k, (&a, &b)) in ti.iter().zip(tj).enumerate() {
                if (a - b).abs() > any_gap.0 {
                    any_gap = ((a - b).abs(), i, j, times[k]);
                }
            }
        }
    }
    let _ = writeln!(
        r,
        "max pairwise gap at {horizon} yr: {} degC ({} vs {})",
        sig6(end_gap.0),
        labels[end_gap.1],
        labels[end_gap.2]
    );
    let _ = writeln!(
        r,
        "max pairwise gap over all times: {} degC ({} vs {}, at {} yr)",
        sig6(any_gap.0),
        labels[any_gap.1],
        labels[any_gap.2],
        years(any_gap.3)
    );

    let _ = writeln!(
        r,
        "\nreference study values, informational only (not gated):"
    );
    for anchor in anchors::load()? {
        let unit = match anchor.quantity {
            anchors::AnchorQuantity::TemperatureC => "degC",
            anchors::AnchorQuantity::OnsetYr => "yr",
        };
        let line = match anchor.evaluate(&cfg.stehfest, cfg.onset_fraction) {
            Ok(Some(v)) => format!(
                "reported {} {unit}, engine {} {unit}, deviation {:+} {unit}",
                sig6(anchor.value),
                sig6(v),
                sig6(v - anchor.value)
            ),
            Ok(None) => format!(
                "reported {} {unit}, engine: not reached",
                sig6(anchor.value)
            ),
            Err(e) => format!("reported {} {unit}, engine failed: {e}", sig6(anchor.value)),
        };
        let _ = writeln!(r, "  {}: {line} [not gated]", anchor.label);
    }

    Ok(Outcome {
        csv,
        out: cfg.out,
        report: r,
        report_path: a.report.clone(),
        ..Outcome::default()
    })
}

pub fn oracle_cmd(a: &OracleArgs) -> Result<Outcome, CliError> {
    let cfg = run_config(&a.scenario, 0.01, a.out.clone())?;
    let sc = cfg.scenario;
    let mode = a.mode.unwrap_or(if sc.fractures.count > 1 {
        OracleMode::Slab
    } else {
        OracleMode::Semi
    });
    if mode == OracleMode::Slab && sc.fractures.count < 2 {
        return Err(CliError::Usage(
            "slab mode needs an array: pass --fractures with a count above 1".to_owned(),
        ));
    }
    let grid = OracleGrid {
        nx: a.nx,
        ny: a.ny,
        y_max: a.y_max_m,
        stretch: a.stretch,
        time_steps: a.time_steps,
        far: match mode {
            OracleMode::Semi => FarBoundary::DirichletInitial,
            OracleMode::Slab => FarBoundary::NeumannZero,
        },
    };
    let probes: Vec<f64> = match &a.probe_yr {
        Some(list) => parse_list(list, "--probe-yr")?
            .into_iter()
            .map(|t| t * SECONDS_PER_YEAR)
            .collect(),
        None => cfg.times(),
    };
    let snapshots: Vec<f64> = a
        .snapshot_yr
        .map(|t| t * SECONDS_PER_YEAR)
        .into_iter()
        .collect();
    let run = fd_simulate(&sc, &grid, &probes, &snapshots)?;

    let length = sc.fractures.flow_length;
    let analytic: Vec<f64> = match mode {
        OracleMode::Semi => probes
            .iter()
            .map(|&t| fluid_temp_single(&sc, length, t))
            .collect(),
        OracleMode::Slab if probes.is_empty() => Vec::new(),
        OracleMode::Slab => multi_fracture_forecast(&sc, &probes, &cfg.stehfest)?
            .temperatures()
            .to_vec(),
    };
    let span = sc.span();
    let mut worst: f64 = 0.0;
    let rows: Vec<Vec<String>> = probes
        .iter()
        .zip(run.series.temperatures())
        .zip(&analytic)
        .map(|((&t, &fd), &an)| {
            let dev = fd - an;
            worst = worst.max(dev.abs());
            vec![
                years(t),
                sig6(fd),
                sig6(an),
                sig6(dev),
                sig6(100.0 * dev / span),
            ]
        })
        .collect();
    let csv = csv_document(
        &[
            "time_yr",
            "T_oracle_C",
            "T_analytic_C",
            "deviation_C",
            "deviation_pct_span",
        ],
        rows,
    )?;

    let mut r = String::new();
    let reference = match mode {
        OracleMode::Semi => "closed-form single fracture",
        OracleMode::Slab => "Laplace slab model",
    };
    let _ = writeln!(
        r,
        "max |oracle - {reference}|: {} degC ({} % of span) over {} probe(s)",
        sig6(worst),
        sig6(100.0 * worst / span),
        probes.len()
    );
    let _ = writeln!(
        r,
        "energy: fluid gain {} J, rock loss {} J, imbalance {} %",
        sig6(run.energy.fluid_gain),
        sig6(run.energy.rock_loss),
        sig6(100.0 * run.energy.imbalance())
    );
    let _ = writeln!(
        r,
        "temperature range over the run: [{}, {}] degC",
        sig6(run.min_temperature),
        sig6(run.max_temperature)
    );

    if let Some(levels) = a.study {
        if mode == OracleMode::Slab {
            return Err(CliError::Usage(
                "--study compares against the single-fracture closed form; use --mode semi"
                    .to_owned(),
            ));
        }
        let study = convergence_study(&sc, &grid, levels, &probes)?;
        let _ = writeln!(r, "refinement study:");
        for row in &study.rows {
            let _ = writeln!(
                r,
                "  nx {:>5}  ny {:>5}  steps {:>6}  max error {} degC",
                row.nx,
                row.ny,
                row.time_steps,
                sig6(row.max_error)
            );
        }
        let _ = writeln!(r, "observed order: {}", sig6(study.observed_order()));
    }

    let mut files = Vec::new();
    if let (Some(path), Some(snap)) = (&a.snapshot_out, run.snapshots.first()) {
        let mut rows = Vec::new();
        for (i, &x) in snap.x.iter().enumerate() {
            for (j, &y) in snap.y.iter().enumerate() {
                rows.push(vec![sig6(x), sig6(y), sig6(snap.temperature[i][j])]);
            }
        }
        files.push((path.clone(), csv_document(&["x_m", "y_m", "T_C"], rows)?));
    }

    Ok(Outcome {
        csv,
        out: cfg.out,
        report: r,
        files,
        ..Outcome::default()
    })
}

pub fn convert_cmd(a: &ConvertArgs) -> Result<Outcome, CliError> {
    let parse = |s: &str| {
        s.parse::<Unit>()
            .map_err(|e| CliError::Usage(format!("{e}: {s:?}")))
    };
    let (from, to) = (parse(&a.from)?, parse(&a.to)?);
    let q = convert(Quantity::new(a.value, from), to)?;
    Ok(Outcome {
        csv: format!("{} {}\n", sig6(q.value), q.unit),
        ..Outcome::default()
    })
}
