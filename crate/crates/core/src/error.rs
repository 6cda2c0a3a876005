use thiserror::Error;

use crate::units::Unit;

/// Everything that can go wrong inside the engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot convert {from} to {to}: different dimensions")]
    DimensionMismatch { from: Unit, to: Unit },

    #[error("non-finite argument {0} to a special function")]
    NonFinite(f64),

    #[error("{name} must be {rule}, got {value}")]
    Domain {
        name: &'static str,
        rule: &'static str,
        value: f64,
    },

    #[error("invalid scenario: {0} violation(s), first: {1}")]
    InvalidScenario(usize, crate::scenario::Violation),

    #[error("Stehfest order {0} must be even and within {1}..={2}")]
    StehfestOrder(usize, usize, usize),

    #[error("Laplace image returned a non-finite value at s = {s}")]
    NonFiniteImage { s: f64 },

    #[error(
        "Stehfest inversion unstable: wiggle of {excess:.4} degC at t = {time:.4e} s; try a different Stehfest order (N = {order})"
    )]
    StehfestUnstable {
        time: f64,
        excess: f64,
        order: usize,
    },

    #[error(
        "inverted temperature {value:.4} degC at t = {time:.4e} s is outside the admissible band"
    )]
    OutOfBounds { time: f64, value: f64 },

    #[error("adaptive quadrature did not converge: estimated error {achieved:.3e} > requested {requested:.3e}")]
    Quadrature { achieved: f64, requested: f64 },

    #[error(
        "oracle coupling residual {change:.3e} degC over tolerance after {iterations} pass(es)"
    )]
    OracleCoupling { iterations: usize, change: f64 },

    #[error("far boundary contaminated: rock at y_max deviates {deviation:.3} degC from T0 at t = {time:.4e} s")]
    FarBoundary { time: f64, deviation: f64 },

    #[error("invalid oracle grid: {0}")]
    Grid(&'static str),

    #[error("convergence study: {0}")]
    Convergence(&'static str),

    #[error("series invalid: {0}")]
    Series(&'static str),
}
