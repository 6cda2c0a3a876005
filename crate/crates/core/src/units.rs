//! Conversion between SI and the field units used in the reservoir data tables.
//!
//! Every unit maps onto its SI base unit through a single multiplicative
//! factor. The factor table fixes 1 ft = 0.3048 m, 1 in = 0.0254 m,
//! 1 bbl = 0.158987 m³, 1 cal = 4.184 J and 1 yr = 365 d.

use core::fmt;
use core::str::FromStr;

use crate::{Error, Result, SECONDS_PER_YEAR};

const FOOT: f64 = 0.3048;
const INCH: f64 = 0.0254;
const BARREL: f64 = 0.158_987;
const CALORIE: f64 = 4.184;
const DAY: f64 = 86_400.0;

/// Physical dimension of a [`Unit`]. Conversion is only defined within one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    VolumetricRate,
    Conductivity,
    Density,
    SpecificHeat,
    Time,
    Temperature,
}

/// The closed set of unit tags understood by [`convert`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    M,
    Ft,
    In,
    M3PerS,
    Bpd,
    WPerMC,
    CalPerCmSC,
    KgPerM3,
    GPerCm3,
    JPerKgC,
    CalPerGC,
    S,
    Yr,
    C,
}

impl Unit {
    pub const ALL: [Unit; 14] = [
        Unit::M,
        Unit::Ft,
        Unit::In,
        Unit::M3PerS,
        Unit::Bpd,
        Unit::WPerMC,
        Unit::CalPerCmSC,
        Unit::KgPerM3,
        Unit::GPerCm3,
        Unit::JPerKgC,
        Unit::CalPerGC,
        Unit::S,
        Unit::Yr,
        Unit::C,
    ];

    pub fn dimension(self) -> Dimension {
        use Unit::*;
        match self {
            M | Ft | In => Dimension::Length,
            M3PerS | Bpd => Dimension::VolumetricRate,
            WPerMC | CalPerCmSC => Dimension::Conductivity,
            KgPerM3 | GPerCm3 => Dimension::Density,
            JPerKgC | CalPerGC => Dimension::SpecificHeat,
            S | Yr => Dimension::Time,
            C => Dimension::Temperature,
        }
    }

    /// Multiplier taking a value in this unit to the SI unit of its dimension.
    pub fn to_si_factor(self) -> f64 {
        use Unit::*;
        match self {
            M | M3PerS | WPerMC | KgPerM3 | JPerKgC | S | C => 1.0,
            Ft => FOOT,
            In => INCH,
            Bpd => BARREL / DAY,
            // cal/(cm s degC) -> W/(m degC): 4.184 J per cal, 100 cm per m
            CalPerCmSC => CALORIE * 100.0,
            GPerCm3 => 1000.0,
            CalPerGC => CALORIE * 1000.0,
            Yr => SECONDS_PER_YEAR,
        }
    }

    pub fn tag(self) -> &'static str {
        use Unit::*;
        match self {
            M => "m",
            Ft => "ft",
            In => "in",
            M3PerS => "m3_per_s",
            Bpd => "bpd",
            WPerMC => "W_per_mC",
            CalPerCmSC => "cal_per_cm_s_C",
            KgPerM3 => "kg_per_m3",
            GPerCm3 => "g_per_cm3",
            JPerKgC => "J_per_kgC",
            CalPerGC => "cal_per_gC",
            S => "s",
            Yr => "yr",
            C => "C",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Returned when a string is not one of the known unit tags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownUnit;

impl fmt::Display for UnknownUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown unit tag")
    }
}

impl FromStr for Unit {
    type Err = UnknownUnit;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        Unit::ALL
            .iter()
            .copied()
            .find(|u| u.tag() == s)
            .ok_or(UnknownUnit)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub unit: Unit,
}

impl Quantity {
    pub fn new(value: f64, unit: Unit) -> Self {
        Self { value, unit }
    }

    pub fn to(self, target: Unit) -> Result<Quantity> {
        convert(self, target)
    }
}

/// Rescale `q` into `target`. Both units must share a dimension.
pub fn convert(q: Quantity, target: Unit) -> Result<Quantity> {
    if q.unit.dimension() != target.dimension() {
        return Err(Error::DimensionMismatch {
            from: q.unit,
            to: target,
        });
    }
    if q.unit == target {
        return Ok(q);
    }
    let value = q.value * q.unit.to_si_factor() / target.to_si_factor();
    Ok(Quantity::new(value, target))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn aperture_inches_to_metres() {
        let q = convert(Quantity::new(0.05, Unit::In), Unit::M).unwrap();
        assert!(rel(q.value, 0.00127) < 1e-12);
    }

    #[test]
    fn height_feet_to_metres() {
        let q = convert(Quantity::new(3280.0, Unit::Ft), Unit::M).unwrap();
        assert!(rel(q.value, 999.744) < 1e-12);
    }

    #[test]
    fn per_fracture_rate_bpd() {
        let q = convert(Quantity::new(7829.4, Unit::Bpd), Unit::M3PerS).unwrap();
        assert!(rel(q.value, 7829.4 * 0.158_987 / 86_400.0) < 1e-14);
        assert!(rel(q.value, 0.014_406) < 1e-4, "{}", q.value);
        assert!(rel(q.value, 0.0144) < 0.005);
    }

    #[test]
    fn zero_stays_zero() {
        let q = convert(Quantity::new(0.0, Unit::M), Unit::Ft).unwrap();
        assert_eq!(q.value, 0.0);
        assert_eq!(q.unit, Unit::Ft);
    }

    #[test]
    fn conductivity_matches_thermochemical_calorie() {
        let q = convert(Quantity::new(0.0062, Unit::CalPerCmSC), Unit::WPerMC).unwrap();
        assert!(rel(q.value, 2.59408) < 1e-12);
    }

    #[test]
    fn year_is_365_days() {
        let q = convert(Quantity::new(1.0, Unit::Yr), Unit::S).unwrap();
        assert_eq!(q.value, 31_536_000.0);
    }

    #[test]
    fn mismatch_names_both_units() {
        let err = convert(Quantity::new(1.0, Unit::Ft), Unit::Bpd).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                from: Unit::Ft,
                to: Unit::Bpd
            }
        );
        let msg = alloc::format!("{err}");
        assert!(msg.contains("ft") && msg.contains("bpd"));
    }

    #[test]
    fn tags_parse_back() {
        for u in Unit::ALL {
            assert_eq!(u.tag().parse::<Unit>(), Ok(u));
        }
        assert!("furlong".parse::<Unit>().is_err());
    }
}
