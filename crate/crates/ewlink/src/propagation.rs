//! Physical building blocks: antenna gain from beam geometry, EIRP,
//! power density, effective aperture, reception solid angle, free-space
//! loss and the dimensionless target gain.

use std::f64::consts::PI;

use crate::db::{self, ratio_to_db};
use crate::error::{Error, Result};

/// An antenna described either by a direct gain or by its beam geometry.
#[derive(Debug, Clone, PartialEq)]
pub enum AntennaSpec {
    /// Gain stated directly, in dB.
    Gain(f64),
    /// Gain resolved from beamwidths and efficiency.
    Beamwidths {
        az_deg: f64,
        el_deg: f64,
        efficiency: f64,
    },
}

impl AntennaSpec {
    pub fn gain_db(&self) -> Result<f64> {
        match *self {
            AntennaSpec::Gain(g) => Ok(g),
            AntennaSpec::Beamwidths {
                az_deg,
                el_deg,
                efficiency,
            } => gain_from_beamwidths(az_deg, el_deg, efficiency),
        }
    }
}

/// Range and wavelength of one propagation path leg.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathGeometry {
    pub range_m: f64,
    pub wavelength_m: f64,
}

impl PathGeometry {
    pub fn new(range_m: f64, wavelength_m: f64) -> Result<Self> {
        if !(range_m > 0.0) {
            return Err(Error::domain(format!(
                "range must be positive, got {range_m} m"
            )));
        }
        if !(wavelength_m > 0.0) {
            return Err(Error::domain(format!(
                "wavelength must be positive, got {wavelength_m} m"
            )));
        }
        Ok(PathGeometry {
            range_m,
            wavelength_m,
        })
    }

    pub fn from_frequency(range_m: f64, frequency_hz: f64) -> Result<Self> {
        PathGeometry::new(range_m, db::wavelength_from_frequency(frequency_hz)?)
    }
}

/// A radar target characterized by its radar cross section.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetSpec {
    pub name: String,
    pub rcs_m2: f64,
}

impl TargetSpec {
    pub fn new(name: impl Into<String>, rcs_m2: f64) -> Result<Self> {
        if !(rcs_m2 > 0.0) {
            return Err(Error::domain(format!(
                "radar cross section must be positive, got {rcs_m2} m^2"
            )));
        }
        Ok(TargetSpec {
            name: name.into(),
            rcs_m2,
        })
    }
}

/// Directive gain from the beam solid angle: η·4π/(θ_az·θ_el), angles in
/// degrees at the interface, radians inside.
pub fn gain_from_beamwidths(az_deg: f64, el_deg: f64, efficiency: f64) -> Result<f64> {
    if !(az_deg > 0.0 && az_deg <= 360.0) || !(el_deg > 0.0 && el_deg <= 360.0) {
        return Err(Error::domain(format!(
            "beamwidths must be in (0, 360] degrees, got az={az_deg}, el={el_deg}"
        )));
    }
    if !(efficiency > 0.0 && efficiency <= 1.0) {
        return Err(Error::domain(format!(
            "antenna efficiency must be in (0, 1], got {efficiency}"
        )));
    }
    let az = az_deg.to_radians();
    let el = el_deg.to_radians();
    ratio_to_db(efficiency * 4.0 * PI / (az * el))
}

/// Effective isotropic radiated power: transmit power plus antenna gain.
pub fn eirp(p_tx_dbw: f64, g_tx_db: f64) -> f64 {
    p_tx_dbw + g_tx_db
}

/// EIRP spread over the sphere surface at range R, in dB(W/m²).
pub fn power_density(eirp_dbw: f64, range_m: f64) -> Result<f64> {
    if !(range_m > 0.0) {
        return Err(Error::domain(format!(
            "range must be positive, got {range_m} m"
        )));
    }
    Ok(eirp_dbw - 10.0 * (4.0 * PI * range_m * range_m).log10())
}

/// Effective aperture λ²G/(4π), in m².
pub fn effective_area(wavelength_m: f64, g_rx_db: f64) -> Result<f64> {
    if !(wavelength_m > 0.0) {
        return Err(Error::domain(format!(
            "wavelength must be positive, got {wavelength_m} m"
        )));
    }
    Ok(wavelength_m * wavelength_m * db::db_to_ratio(g_rx_db) / (4.0 * PI))
}

/// Antenna reception expressed as a solid angle: A_eff/R², in steradians.
pub fn reception_solid_angle(wavelength_m: f64, g_rx_db: f64, range_m: f64) -> Result<f64> {
    if !(range_m > 0.0) {
        return Err(Error::domain(format!(
            "range must be positive, got {range_m} m"
        )));
    }
    Ok(effective_area(wavelength_m, g_rx_db)? / (range_m * range_m))
}

/// Which free-space-loss formula to evaluate.
///
/// The rounded-constant variants carry the conventional constants
/// 21.98 / 92.45 / 32.45 and track the exact form within 0.02 dB.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FslVariant {
    /// 20·log10(4πR/λ)
    #[default]
    Exact,
    /// 21.98 + 20·log10(R_m) − 20·log10(λ_m)
    WavelengthForm,
    /// 92.45 + 20·log10(R_km) + 20·log10(f_GHz)
    KmGhzForm,
    /// 32.45 + 20·log10(R_km) + 20·log10(f_MHz)
    KmMhzForm,
}

/// One-leg free-space loss, returned as a positive dB number that budget
/// chains apply by subtraction.
pub fn free_space_loss(geometry: PathGeometry, variant: FslVariant) -> f64 {
    let r = geometry.range_m;
    let lambda = geometry.wavelength_m;
    match variant {
        FslVariant::Exact => 20.0 * (4.0 * PI * r / lambda).log10(),
        FslVariant::WavelengthForm => 21.98 + 20.0 * r.log10() - 20.0 * lambda.log10(),
        FslVariant::KmGhzForm => {
            let f_ghz = db::SPEED_OF_LIGHT / lambda / 1e9;
            92.45 + 20.0 * (r / 1e3).log10() + 20.0 * f_ghz.log10()
        }
        FslVariant::KmMhzForm => {
            let f_mhz = db::SPEED_OF_LIGHT / lambda / 1e6;
            32.45 + 20.0 * (r / 1e3).log10() + 20.0 * f_mhz.log10()
        }
    }
}

/// The target's reflectivity recast as a dimensionless antenna-like gain:
/// 10·log10(4πσ/λ²).
pub fn target_gain(rcs_m2: f64, wavelength_m: f64) -> Result<f64> {
    if !(rcs_m2 > 0.0) {
        return Err(Error::domain(format!(
            "radar cross section must be positive, got {rcs_m2} m^2"
        )));
    }
    if !(wavelength_m > 0.0) {
        return Err(Error::domain(format!(
            "wavelength must be positive, got {wavelength_m} m"
        )));
    }
    ratio_to_db(4.0 * PI * rcs_m2 / (wavelength_m * wavelength_m))
}
