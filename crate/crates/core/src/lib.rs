//! Heat-transfer engine for forecasting produced-fluid temperature in
//! enhanced geothermal systems.
//!
//! The crate is `no_std` (it needs `alloc`) so the numerics can be embedded
//! anywhere; file formats, CSV output and the command-line front end live in
//! the `egs-cli` companion crate.
//!
//! Layout:
//!
//! - [`units`]: table-driven SI/field unit conversion.
//! - [`scenario`]: rock, fluid, fracture-array and operating parameters.
//! - [`specfun`]: erf, erfc and the exponential integral E1.
//! - [`analytic`]: closed-form single-fracture solution, rock temperature
//!   field, Green's function, point/line sources and the thermal radius.
//! - [`laplace`]: Gaver-Stehfest inversion and the Laplace-domain fracture
//!   solutions, including the finite-slab interference model.
//! - [`oracle`]: an independent finite-difference conjugate solver used as
//!   ground truth.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

mod math;

pub mod analytic;
pub mod error;
pub mod laplace;
pub mod oracle;
pub mod quadrature;
pub mod scenario;
pub mod specfun;
pub mod units;

pub use analytic::{ForecastSeries, InterferenceRow, Model};
pub use error::Error;
pub use laplace::{LaplaceImage, Stehfest};
pub use scenario::{FluidProperties, FractureArray, Operating, RockProperties, Scenario};
pub use units::{Quantity, Unit};

/// Seconds in the 365-day year used for every time conversion.
pub const SECONDS_PER_YEAR: f64 = 31_536_000.0;

pub type Result<T, E = Error> = core::result::Result<T, E>;
