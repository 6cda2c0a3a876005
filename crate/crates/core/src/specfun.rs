//! Error function, complementary error function and exponential integral E1.
//!
//! `erf`/`erfc` delegate to libm's rational approximations (sub-ulp on the
//! real line, with erfc evaluated directly in the tail rather than as 1 − erf).
//! E1 uses its power series up to x = 1 and a Lentz continued fraction beyond.

use crate::math::{abs, exp, ln};
use crate::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn finite(x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite(x))
    }
}

pub fn erf(x: f64) -> Result<f64> {
    let x = finite(x)?;
    if x >= 6.0 {
        return Ok(1.0);
    }
    if x <= -6.0 {
        return Ok(-1.0);
    }
    Ok(libm::erf(x))
}

pub fn erfc(x: f64) -> Result<f64> {
    Ok(libm::erfc(finite(x)?))
}

/// erf for callers that have already ruled out non-finite input.
pub(crate) fn erf_unchecked(x: f64) -> f64 {
    if x >= 6.0 {
        1.0
    } else if x <= -6.0 {
        -1.0
    } else {
        libm::erf(x)
    }
}

pub(crate) fn erfc_unchecked(x: f64) -> f64 {
    libm::erfc(x)
}

/// E1(x) = ∫ₓ^∞ e^(−u)/u du for x > 0.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    let x = finite(x)?;
    if x <= 0.0 {
        return Err(Error::Domain {
            name: "E1 argument",
            rule: "> 0",
            value: x,
        });
    }
    Ok(e1_positive(x))
}

pub(crate) fn e1_positive(x: f64) -> f64 {
    if x <= 1.0 {
        e1_series(x)
    } else {
        e1_continued_fraction(x)
    }
}

fn e1_series(x: f64) -> f64 {
    // E1 = −γ − ln x − Σ_{k≥1} (−x)^k / (k·k!)
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= -x / kf;
        let add = term / kf;
        sum += add;
        if abs(add) <= 1e-17 * abs(sum) {
            break;
        }
    }
    -EULER_GAMMA - ln(x) - sum
}

fn e1_continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if abs(del - 1.0) < 1e-16 {
            break;
        }
    }
    h * exp(-x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;

    // Maclaurin series erf(x) = 2/√π Σ (−1)^n x^(2n+1) / (n! (2n+1)).
    fn erf_series(x: f64) -> f64 {
        let mut sum = 0.0;
        let mut term = x;
        let mut n = 0.0;
        loop {
            let add = term / (2.0 * n + 1.0);
            sum += add;
            if add.abs() < 1e-18 {
                break;
            }
            n += 1.0;
            term *= -x * x / n;
        }
        2.0 / core::f64::consts::PI.sqrt() * sum
    }

    // Laplace continued fraction for erfc, evaluated bottom-up.
    fn erfc_cf(x: f64) -> f64 {
        let mut f = x;
        for k in (1..400).rev() {
            f = x + (k as f64 / 2.0) / f;
        }
        (-x * x).exp() / (core::f64::consts::PI.sqrt() * f)
    }

    // E1 by quadrature on u = x + s/(1 − s), s ∈ [0, 1).
    fn e1_quad(x: f64) -> f64 {
        let f = |s: f64| {
            if s >= 1.0 {
                return 0.0;
            }
            let u = x + s / (1.0 - s);
            (-u).exp() / u / ((1.0 - s) * (1.0 - s))
        };
        integrate(f, 0.0, 1.0, 0.0, 1e-13, 4000).unwrap().value
    }

    #[test]
    fn erf_values() {
        assert_eq!(erf(0.0).unwrap(), 0.0);
        let oracle = erf_series(1.0);
        assert!((oracle - 0.842_700_793).abs() < 1e-9);
        assert!((erf(1.0).unwrap() - oracle).abs() < 1e-12);
        assert!((erf(-1.0).unwrap() + oracle).abs() < 1e-12);
    }

    #[test]
    fn erf_matches_series_on_grid() {
        for i in -40..=40 {
            let x = i as f64 * 0.1;
            // The series cancels badly past |x| = 2.5.
            let want = if x.abs() <= 2.5 {
                erf_series(x)
            } else {
                x.signum() * (1.0 - erfc_cf(x.abs()))
            };
            let d = (erf(x).unwrap() - want).abs();
            assert!(d < 1e-12, "x = {x}, diff {d}");
        }
    }

    #[test]
    fn erf_saturates() {
        assert_eq!(erf(6.0).unwrap(), 1.0);
        assert_eq!(erf(-7.5).unwrap(), -1.0);
    }

    #[test]
    fn erfc_values() {
        assert_eq!(erfc(0.0).unwrap(), 1.0);
        assert!((erfc(1.0).unwrap() - (1.0 - erf_series(1.0))).abs() < 1e-12);
        assert!((erfc(1.0).unwrap() - 0.157_299_207).abs() < 1e-9);
        let e6 = erfc(6.0).unwrap();
        assert!(e6 > 0.0);
        assert!(((e6 - erfc_cf(6.0)) / e6).abs() < 1e-10);
        assert!(((e6 - 2.151_973_7e-17) / e6).abs() < 1e-7);
    }

    #[test]
    fn erfc_relative_accuracy_in_tail() {
        for i in 0..=60 {
            let x = i as f64 * 0.1;
            let want = if x < 2.0 {
                1.0 - erf_series(x)
            } else {
                erfc_cf(x)
            };
            let got = erfc(x).unwrap();
            assert!(((got - want) / want).abs() < 1e-10, "x = {x}");
        }
    }

    #[test]
    fn non_finite_rejected() {
        assert!(matches!(erf(f64::NAN), Err(Error::NonFinite(_))));
        assert!(matches!(erfc(f64::INFINITY), Err(Error::NonFinite(_))));
        assert!(exp_integral_e1(f64::NAN).is_err());
    }

    #[test]
    fn e1_values() {
        let q1 = e1_quad(1.0);
        assert!((q1 - 0.219_383_934).abs() < 1e-9);
        assert!(((exp_integral_e1(1.0).unwrap() - q1) / q1).abs() < 1e-10);
        let q = e1_quad(0.25);
        assert!((q - 1.044_283).abs() < 1e-6);
        assert!(((exp_integral_e1(0.25).unwrap() - q) / q).abs() < 1e-10);
    }

    #[test]
    fn e1_matches_quadrature_across_branch_point() {
        for &x in &[0.01, 0.1, 0.5, 0.99, 1.0, 1.01, 2.0, 5.0, 12.0, 30.0] {
            let q = e1_quad(x);
            let e = exp_integral_e1(x).unwrap();
            assert!(((e - q) / q).abs() < 1e-10, "x = {x}: {e} vs {q}");
        }
    }

    #[test]
    fn e1_upper_bound() {
        let x = 10.0;
        let e = exp_integral_e1(x).unwrap();
        assert!(e > 0.0 && e < (-x).exp() / x);
    }

    #[test]
    fn e1_rejects_non_positive() {
        assert!(matches!(exp_integral_e1(0.0), Err(Error::Domain { .. })));
        assert!(exp_integral_e1(-1.0).is_err());
    }
}
