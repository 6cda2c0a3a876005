use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use egs_core::analytic::Model;

#[derive(Debug, Parser)]
#[command(
    name = "egs",
    version,
    about = "Produced-fluid temperature forecasts for fractured geothermal reservoirs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Outlet temperature against time for one model.
    Forecast(ForecastArgs),
    /// Thermal radius and interference times for a set of fracture spacings.
    Table2(Table2Args),
    /// Several models side by side, with a text report.
    Compare(CompareArgs),
    /// Finite-difference reference run and its deviation from the analytical model.
    Oracle(OracleArgs),
    /// Convert a value between units.
    Convert(ConvertArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum ModelArg {
    Single,
    GringartenRef,
    MultiSlab,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Single => Model::Single,
            ModelArg::GringartenRef => Model::GringartenRef,
            ModelArg::MultiSlab => Model::MultiSlab,
        }
    }
}

/// Scenario source and the per-run edits layered on top of it.
#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    /// Scenario JSON file; defaults to the bundled Valles Caldera case.
    #[arg(long, value_name = "PATH")]
    pub scenario: Option<PathBuf>,
    /// Number of fractures; the total rate is kept.
    #[arg(long, value_name = "N")]
    pub fractures: Option<u32>,
    /// Per-fracture injection rate in barrels per day.
    #[arg(long, value_name = "F")]
    pub rate_bpd: Option<f64>,
    #[arg(long, value_name = "F")]
    pub spacing_m: Option<f64>,
    /// Heat-exchange faces per fracture.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub faces: Option<u8>,
    #[arg(long, value_name = "F")]
    pub horizon_yr: Option<f64>,
    /// Number of output times.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u32).range(2..))]
    pub steps: Option<u32>,
    /// Evenly spaced output times instead of log-spaced.
    #[arg(long)]
    pub linear_time: bool,
    /// Gaver-Stehfest order (even, 6 to 20).
    #[arg(long, value_name = "N")]
    pub stehfest_n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ForecastArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long, value_enum, default_value = "single")]
    pub model: ModelArg,
    /// Drop below T0, as a fraction of T0 − T_inj, that marks the onset of decline.
    #[arg(long, default_value_t = 0.01)]
    pub onset_frac: f64,
    /// Output CSV; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Table2Args {
    /// Take the rock diffusivity from this scenario (default: bundled Valles Caldera).
    #[arg(long, value_name = "PATH", conflicts_with = "alpha")]
    pub scenario: Option<PathBuf>,
    /// Rock thermal diffusivity, m²/s.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Comma-separated fracture spacings in metres.
    #[arg(
        long,
        default_value = "10,20,30,40,50,60,70,80",
        allow_hyphen_values = true
    )]
    pub spacings: String,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Comma-separated models, each optionally with a spacing in metres:
    /// `single,gringarten_ref` or `multi_slab:40,multi_slab:80`.
    #[arg(long)]
    pub models: String,
    #[arg(long, default_value_t = 0.01)]
    pub onset_frac: f64,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Text report; stderr when omitted.
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleMode {
    /// Unbounded rock beside a single fracture.
    Semi,
    /// Insulated midplane at half the spacing.
    Slab,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Rock geometry; slab when the scenario has more than one fracture.
    #[arg(long, value_enum)]
    pub mode: Option<OracleMode>,
    #[arg(long, default_value_t = 200)]
    pub nx: usize,
    #[arg(long, default_value_t = 400)]
    pub ny: usize,
    #[arg(long, default_value_t = 2000)]
    pub time_steps: usize,
    #[arg(long, default_value_t = 1.02)]
    pub stretch: f64,
    /// Rock column depth in metres.
    #[arg(long, value_name = "F")]
    pub y_max_m: Option<f64>,
    /// Comma-separated probe times in years; defaults to the forecast grid.
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    pub probe_yr: Option<String>,
    /// Rock-field snapshot time in years.
    #[arg(long, value_name = "F", requires = "snapshot_out")]
    pub snapshot_yr: Option<f64>,
    #[arg(long, value_name = "PATH", requires = "snapshot_yr")]
    pub snapshot_out: Option<PathBuf>,
    /// Also run a refinement study with this many levels (single fracture only).
    #[arg(long, value_name = "LEVELS")]
    pub study: Option<usize>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[arg(allow_hyphen_values = true)]
    pub value: f64,
    pub from: String,
    pub to: String,
}
