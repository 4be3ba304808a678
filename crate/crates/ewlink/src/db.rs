//! Decibel arithmetic: linear/dB conversions, dBW/dBm references,
//! physical constants and power-domain summation of dB quantities.
//!
//! Everything downstream works in dB-domain f64; linear values exist only
//! at conversion boundaries.

use crate::error::{Error, Result};

/// Boltzmann constant, exact SI value (J/K).
pub const BOLTZMANN: f64 = 1.380649e-23;

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Default receiver reference temperature (K).
pub const REFERENCE_TEMPERATURE_K: f64 = 290.0;

/// Decibel reference for an absolute power level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerRef {
    DbW,
    DbM,
}

/// A power expressed against a declared decibel reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLevel {
    pub value: f64,
    pub reference: PowerRef,
}

impl PowerLevel {
    pub fn dbw(value: f64) -> Self {
        PowerLevel {
            value,
            reference: PowerRef::DbW,
        }
    }

    pub fn dbm(value: f64) -> Self {
        PowerLevel {
            value,
            reference: PowerRef::DbM,
        }
    }

    pub fn from_watts(watts: f64) -> Result<Self> {
        Ok(PowerLevel::dbw(watts_to_dbw(watts)?))
    }

    /// Re-express against another reference. dBm = dBW + 30, exactly.
    pub fn convert_to(&self, target: PowerRef) -> PowerLevel {
        let value = match (self.reference, target) {
            (PowerRef::DbW, PowerRef::DbM) => self.value + 30.0,
            (PowerRef::DbM, PowerRef::DbW) => self.value - 30.0,
            _ => self.value,
        };
        PowerLevel {
            value,
            reference: target,
        }
    }

    pub fn as_dbw(&self) -> f64 {
        self.convert_to(PowerRef::DbW).value
    }

    pub fn as_dbm(&self) -> f64 {
        self.convert_to(PowerRef::DbM).value
    }

    pub fn as_watts(&self) -> f64 {
        db_to_ratio(self.as_dbw())
    }
}

/// 10·log10 of a power in watts. Rejects non-positive input.
pub fn watts_to_dbw(watts: f64) -> Result<f64> {
    if !(watts > 0.0) {
        return Err(Error::domain(format!(
            "power must be positive, got {watts} W"
        )));
    }
    Ok(10.0 * watts.log10())
}

pub fn dbw_to_watts(dbw: f64) -> f64 {
    db_to_ratio(dbw)
}

/// 10·log10 of a dimensionless ratio. Rejects non-positive input.
pub fn ratio_to_db(ratio: f64) -> Result<f64> {
    if !(ratio > 0.0) {
        return Err(Error::domain(format!(
            "ratio must be positive, got {ratio}"
        )));
    }
    Ok(10.0 * ratio.log10())
}

pub fn db_to_ratio(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// λ = c/f. Rejects non-positive frequency.
pub fn wavelength_from_frequency(frequency_hz: f64) -> Result<f64> {
    if !(frequency_hz > 0.0) {
        return Err(Error::domain(format!(
            "frequency must be positive, got {frequency_hz} Hz"
        )));
    }
    Ok(SPEED_OF_LIGHT / frequency_hz)
}

/// Power-domain sum of two dBW levels: 10·log10(10^(a/10) + 10^(b/10)).
///
/// An absent second addend is the identity element. Evaluated around the
/// larger addend so dominated sums stay exact.
pub fn power_sum_db(a: f64, b: Option<f64>) -> f64 {
    let b = match b {
        Some(b) => b,
        None => return a,
    };
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + 10.0 * (1.0 + db_to_ratio(lo - hi)).log10()
}
