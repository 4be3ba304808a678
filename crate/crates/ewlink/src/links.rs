//! Composable link-budget chains: telecom, radar (three algebraically
//! equivalent formulations), radar-warning-receiver and jammer links.
//! Each returns the received power together with a labelled term
//! breakdown whose sum equals the total bit-for-bit.

use std::f64::consts::PI;

use crate::db;
use crate::error::{Error, Result};
use crate::propagation::{
    free_space_loss, target_gain, AntennaSpec, FslVariant, PathGeometry, TargetSpec,
};

/// The emitting radar and its receiver chain.
#[derive(Debug, Clone, PartialEq)]
pub struct RadarSystem {
    pub power_w: f64,
    pub antenna_tx: AntennaSpec,
    pub antenna_rx: AntennaSpec,
    pub frequency_hz: f64,
    pub bandwidth_hz: f64,
    pub noise_figure_db: f64,
    pub mod_db: f64,
    pub temperature_k: f64,
    pub detection_threshold_snr_db: f64,
}

impl RadarSystem {
    pub fn validate(&self) -> Result<()> {
        if !(self.power_w > 0.0) {
            return Err(Error::domain("radar power must be positive"));
        }
        if !(self.frequency_hz > 0.0) {
            return Err(Error::domain("radar frequency must be positive"));
        }
        if !(self.bandwidth_hz > 0.0) {
            return Err(Error::domain("radar bandwidth must be positive"));
        }
        if self.noise_figure_db < 0.0 {
            return Err(Error::domain("noise figure must be >= 0 dB"));
        }
        if self.mod_db < 0.0 {
            return Err(Error::domain("MOD must be >= 0 dB"));
        }
        if !(self.temperature_k > 0.0) {
            return Err(Error::domain("temperature must be positive"));
        }
        Ok(())
    }

    pub fn wavelength_m(&self) -> Result<f64> {
        db::wavelength_from_frequency(self.frequency_hz)
    }
}

/// A noise jammer, colocated with the target by default
/// (self-protection geometry).
#[derive(Debug, Clone, PartialEq)]
pub struct JammerSystem {
    pub power_w: f64,
    pub antenna: AntennaSpec,
    pub bandwidth_hz: f64,
    pub include_tx_gain: bool,
    pub colocated_with_target: bool,
    /// Jammer-to-radar range when not colocated with the target.
    pub standoff_range_m: Option<f64>,
}

impl JammerSystem {
    pub fn validate(&self) -> Result<()> {
        if !(self.power_w > 0.0) {
            return Err(Error::domain("jammer power must be positive"));
        }
        if !(self.bandwidth_hz > 0.0) {
            return Err(Error::domain("jammer bandwidth must be positive"));
        }
        if !self.colocated_with_target && self.standoff_range_m.is_none() {
            return Err(Error::domain(
                "standoff jammer requires an explicit jammer-to-radar range",
            ));
        }
        Ok(())
    }
}

/// A radar warning receiver judged primarily by sensitivity thresholds.
#[derive(Debug, Clone, PartialEq)]
pub struct RwrSystem {
    pub antenna: AntennaSpec,
    pub noise: crate::noise::NoiseModel,
    pub pulsed_threshold_dbm: f64,
    pub cw_threshold_dbm: f64,
}

impl RwrSystem {
    pub const DEFAULT_PULSED_THRESHOLD_DBM: f64 = -40.0;
    pub const DEFAULT_CW_THRESHOLD_DBM: f64 = -50.0;
}

/// What a term in a budget chain represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermKind {
    Power,
    Gain,
    Loss,
    BandwidthRatio,
}

/// One labelled additive term of a budget chain, sign already applied.
#[derive(Debug, Clone, PartialEq)]
pub struct BudgetTerm {
    pub label: String,
    pub value_db: f64,
    pub kind: TermKind,
}

impl BudgetTerm {
    fn new(label: &str, value_db: f64, kind: TermKind) -> Self {
        BudgetTerm {
            label: label.to_string(),
            value_db,
            kind,
        }
    }
}

/// An ordered, labelled chain of additive dB terms summing to a received
/// power in dBW.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkBudget {
    terms: Vec<BudgetTerm>,
    total_dbw: f64,
    /// Literal (unclamped) bandwidth-ratio value, kept for audit when the
    /// chain applied the 0 dB clamp.
    pub unclamped_bandwidth_ratio_db: Option<f64>,
}

impl LinkBudget {
    fn from_terms(terms: Vec<BudgetTerm>) -> Self {
        let total_dbw = terms.iter().map(|t| t.value_db).sum();
        LinkBudget {
            terms,
            total_dbw,
            unclamped_bandwidth_ratio_db: None,
        }
    }

    pub fn total_dbw(&self) -> f64 {
        self.total_dbw
    }

    pub fn total_dbm(&self) -> f64 {
        self.total_dbw + 30.0
    }

    /// Terms in chain order; their sum equals `total_dbw` bit-for-bit.
    pub fn breakdown(&self) -> &[BudgetTerm] {
        &self.terms
    }
}

/// Which algebraic route to take through the radar equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RadarFormulation {
    /// Spreading → RCS → spreading → effective aperture.
    Stepwise,
    /// P + G_TX − L + G_TRG − L + G_RX.
    #[default]
    TargetGainChain,
    /// The collapsed classic form with the R⁻⁴ in one term.
    Collapsed,
}

/// One-way telecom link: P_TX + G_TX − L + G_RX.
pub fn telecom_link(
    p_tx_dbw: f64,
    g_tx_db: f64,
    g_rx_db: f64,
    geometry: PathGeometry,
) -> Result<LinkBudget> {
    let loss = free_space_loss(geometry, FslVariant::Exact);
    Ok(LinkBudget::from_terms(vec![
        BudgetTerm::new("TX power", p_tx_dbw, TermKind::Power),
        BudgetTerm::new("TX gain", g_tx_db, TermKind::Gain),
        BudgetTerm::new("free-space loss", -loss, TermKind::Loss),
        BudgetTerm::new("RX gain", g_rx_db, TermKind::Gain),
    ]))
}

/// Two-way radar echo link for a monostatic radar.
pub fn radar_link(
    radar: &RadarSystem,
    target: &TargetSpec,
    range_m: f64,
    formulation: RadarFormulation,
) -> Result<LinkBudget> {
    radar.validate()?;
    let lambda = radar.wavelength_m()?;
    let geometry = PathGeometry::new(range_m, lambda)?;
    let p_tx = db::watts_to_dbw(radar.power_w)?;
    let g_tx = radar.antenna_tx.gain_db()?;
    let g_rx = radar.antenna_rx.gain_db()?;
    if !(target.rcs_m2 > 0.0) {
        return Err(Error::domain("radar cross section must be positive"));
    }

    let terms = match formulation {
        RadarFormulation::TargetGainChain => {
            let loss = free_space_loss(geometry, FslVariant::Exact);
            let g_trg = target_gain(target.rcs_m2, lambda)?;
            vec![
                BudgetTerm::new("TX power", p_tx, TermKind::Power),
                BudgetTerm::new("TX gain", g_tx, TermKind::Gain),
                BudgetTerm::new("free-space loss", -loss, TermKind::Loss),
                BudgetTerm::new("target gain", g_trg, TermKind::Gain),
                BudgetTerm::new("free-space loss", -loss, TermKind::Loss),
                BudgetTerm::new("RX gain", g_rx, TermKind::Gain),
            ]
        }
        RadarFormulation::Stepwise => {
            let spread = 10.0 * (4.0 * PI * range_m * range_m).log10();
            let aperture =
                10.0 * (lambda * lambda * db::db_to_ratio(g_rx) / (4.0 * PI)).log10();
            vec![
                BudgetTerm::new("TX power", p_tx, TermKind::Power),
                BudgetTerm::new("TX gain", g_tx, TermKind::Gain),
                BudgetTerm::new("spherical spreading", -spread, TermKind::Loss),
                BudgetTerm::new(
                    "target RCS",
                    10.0 * target.rcs_m2.log10(),
                    TermKind::Gain,
                ),
                BudgetTerm::new("spherical spreading", -spread, TermKind::Loss),
                BudgetTerm::new("RX effective aperture", aperture, TermKind::Gain),
            ]
        }
        RadarFormulation::Collapsed => {
            vec![
                BudgetTerm::new("TX power", p_tx, TermKind::Power),
                BudgetTerm::new("TX gain", g_tx, TermKind::Gain),
                BudgetTerm::new("RX gain", g_rx, TermKind::Gain),
                BudgetTerm::new(
                    "target RCS",
                    10.0 * target.rcs_m2.log10(),
                    TermKind::Gain,
                ),
                BudgetTerm::new(
                    "wavelength factor",
                    20.0 * lambda.log10(),
                    TermKind::Gain,
                ),
                BudgetTerm::new(
                    "(4pi)^3 factor",
                    -30.0 * (4.0 * PI).log10(),
                    TermKind::Loss,
                ),
                BudgetTerm::new("R^4 spreading", -40.0 * range_m.log10(), TermKind::Loss),
            ]
        }
    };
    Ok(LinkBudget::from_terms(terms))
}

/// One-way link from the radar into a warning receiver:
/// P_RDR|TX + G_RDR|TX − L + G_RWR|RX.
pub fn rwr_link(radar: &RadarSystem, rwr: &RwrSystem, range_m: f64) -> Result<LinkBudget> {
    radar.validate()?;
    let geometry = PathGeometry::new(range_m, radar.wavelength_m()?)?;
    telecom_link(
        db::watts_to_dbw(radar.power_w)?,
        radar.antenna_tx.gain_db()?,
        rwr.antenna.gain_db()?,
        geometry,
    )
}

/// One-way jammer-into-radar link:
/// J = P_JAM|TX [+ G_JAM|TX] − L + 10·log10(B_RDR/B_JAM) + G_RDR|RX.
///
/// The bandwidth term is clamped at 0 dB when the jammer is narrower than
/// the radar band; the literal value stays available on the budget.
pub fn jammer_link(
    jammer: &JammerSystem,
    radar: &RadarSystem,
    range_m: f64,
) -> Result<LinkBudget> {
    jammer.validate()?;
    radar.validate()?;
    let geometry = PathGeometry::new(range_m, radar.wavelength_m()?)?;
    let loss = free_space_loss(geometry, FslVariant::Exact);
    let literal_ratio = 10.0 * (radar.bandwidth_hz / jammer.bandwidth_hz).log10();
    let ratio = literal_ratio.min(0.0);

    let mut terms = vec![BudgetTerm::new(
        "jammer TX power",
        db::watts_to_dbw(jammer.power_w)?,
        TermKind::Power,
    )];
    if jammer.include_tx_gain {
        terms.push(BudgetTerm::new(
            "jammer TX gain",
            jammer.antenna.gain_db()?,
            TermKind::Gain,
        ));
    }
    terms.push(BudgetTerm::new("free-space loss", -loss, TermKind::Loss));
    terms.push(BudgetTerm::new(
        "bandwidth ratio",
        ratio,
        TermKind::BandwidthRatio,
    ));
    terms.push(BudgetTerm::new(
        "radar RX gain",
        radar.antenna_rx.gain_db()?,
        TermKind::Gain,
    ));

    let mut budget = LinkBudget::from_terms(terms);
    budget.unclamped_bandwidth_ratio_db = Some(literal_ratio);
    Ok(budget)
}
