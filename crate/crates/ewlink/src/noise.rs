//! The receiver noise stack and the scalar figures of merit: SNR, RWR
//! detectability, JSR/SJR and burnthrough range.

use crate::db::{power_sum_db, PowerLevel, BOLTZMANN, REFERENCE_TEMPERATURE_K};
use crate::error::{Error, Result};
use crate::links::{jammer_link, radar_link, JammerSystem, RadarFormulation, RadarSystem, RwrSystem};
use crate::propagation::TargetSpec;

/// Thermal + receiver + channel noise parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub temperature_k: f64,
    pub bandwidth_hz: f64,
    pub noise_figure_db: f64,
    pub mod_db: f64,
}

impl NoiseModel {
    pub fn new(
        temperature_k: f64,
        bandwidth_hz: f64,
        noise_figure_db: f64,
        mod_db: f64,
    ) -> Result<Self> {
        let model = NoiseModel {
            temperature_k,
            bandwidth_hz,
            noise_figure_db,
            mod_db,
        };
        model.validate()?;
        Ok(model)
    }

    /// 290 K, no noise figure, no channel degradation.
    pub fn default_with_bandwidth(bandwidth_hz: f64) -> Self {
        NoiseModel {
            temperature_k: REFERENCE_TEMPERATURE_K,
            bandwidth_hz,
            noise_figure_db: 0.0,
            mod_db: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.temperature_k > 0.0) {
            return Err(Error::domain("temperature must be positive"));
        }
        if !(self.bandwidth_hz > 0.0) {
            return Err(Error::domain("bandwidth must be positive"));
        }
        if self.noise_figure_db < 0.0 {
            return Err(Error::domain("noise figure must be >= 0 dB"));
        }
        if self.mod_db < 0.0 {
            return Err(Error::domain("MOD must be >= 0 dB"));
        }
        Ok(())
    }
}

impl RadarSystem {
    pub fn noise_model(&self) -> NoiseModel {
        NoiseModel {
            temperature_k: self.temperature_k,
            bandwidth_hz: self.bandwidth_hz,
            noise_figure_db: self.noise_figure_db,
            mod_db: self.mod_db,
        }
    }
}

/// The three stages of the noise chain, all in dBW.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseStack {
    /// k_B·T_0·B thermal floor.
    pub johnson_dbw: f64,
    /// Johnson + noise figure.
    pub receiver_dbw: f64,
    /// Receiver + MOD; sets the minimum discernible signal.
    pub total_dbw: f64,
}

pub fn noise_stack(model: &NoiseModel) -> Result<NoiseStack> {
    model.validate()?;
    let johnson = 10.0 * (BOLTZMANN * model.temperature_k * model.bandwidth_hz).log10();
    let receiver = johnson + model.noise_figure_db;
    let total = receiver + model.mod_db;
    Ok(NoiseStack {
        johnson_dbw: johnson,
        receiver_dbw: receiver,
        total_dbw: total,
    })
}

/// SNR in dB: received power minus total noise.
pub fn snr(p_rx_dbw: f64, n_total_dbw: f64) -> f64 {
    p_rx_dbw - n_total_dbw
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalKind {
    Pulsed,
    Cw,
}

/// Sensitivity verdict for a warning receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RwrDetection {
    pub detectable: bool,
    pub margin_db: f64,
}

/// Compare received power against the RWR sensitivity threshold for the
/// given signal kind.
pub fn rwr_detectable(p_rwr: PowerLevel, kind: SignalKind, rwr: &RwrSystem) -> RwrDetection {
    let threshold = match kind {
        SignalKind::Pulsed => rwr.pulsed_threshold_dbm,
        SignalKind::Cw => rwr.cw_threshold_dbm,
    };
    let margin = p_rwr.as_dbm() - threshold;
    RwrDetection {
        detectable: margin >= 0.0,
        margin_db: margin,
    }
}

/// SNR at the warning receiver; sensitivity, not this, is the usual
/// RWR performance metric.
pub fn rwr_snr(p_rwr_dbw: f64, rwr_noise: &NoiseModel) -> Result<f64> {
    Ok(p_rwr_dbw - noise_stack(rwr_noise)?.total_dbw)
}

/// Whether JSR/SJR fold the radar's own noise into the jamming power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JsrMode {
    /// J − P_RX; the noise term is dominated and omitted.
    #[default]
    Approximate,
    /// (N_TOTAL ⊕ J) − P_RX with a power-domain sum.
    Exact,
}

/// Jammer-to-signal ratio in dB.
pub fn jsr(j_dbw: f64, p_rx_dbw: f64, n_total_dbw: Option<f64>, mode: JsrMode) -> Result<f64> {
    match mode {
        JsrMode::Approximate => Ok(j_dbw - p_rx_dbw),
        JsrMode::Exact => {
            let n = n_total_dbw
                .ok_or_else(|| Error::usage("exact JSR requires the noise total"))?;
            Ok(power_sum_db(j_dbw, Some(n)) - p_rx_dbw)
        }
    }
}

/// Signal-to-jammer ratio in dB; the exact negation of `jsr` in the same
/// mode.
pub fn sjr(p_rx_dbw: f64, j_dbw: f64, n_total_dbw: Option<f64>, mode: JsrMode) -> Result<f64> {
    Ok(-jsr(j_dbw, p_rx_dbw, n_total_dbw, mode)?)
}

/// Outcome of a burnthrough solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Burnthrough {
    /// The unique range (m) where SJR crosses the threshold.
    Range(f64),
    /// SJR never crosses the threshold inside the search bracket.
    NoCrossing,
}

fn sjr_at(
    radar: &RadarSystem,
    jammer: &JammerSystem,
    target: &TargetSpec,
    range_m: f64,
) -> Result<f64> {
    let p_rx = radar_link(radar, target, range_m, RadarFormulation::TargetGainChain)?
        .total_dbw();
    let jam_range = if jammer.colocated_with_target {
        range_m
    } else {
        jammer.standoff_range_m.ok_or_else(|| {
            Error::domain("standoff jammer requires an explicit jammer-to-radar range")
        })?
    };
    let j = jammer_link(jammer, radar, jam_range)?.total_dbw();
    sjr(p_rx, j, None, JsrMode::Approximate)
}

const BURNTHROUGH_BRACKET_M: (f64, f64) = (1.0, 1e7);

/// Range inside which the radar echo overcomes the jamming, i.e. where
/// SJR(R) reaches the threshold.
///
/// With a colocated jammer the SJR slope is exactly −20 dB/decade, so the
/// crossing has a closed form from any reference range. A standoff
/// jammer falls back to bisection.
pub fn burnthrough_range(
    radar: &RadarSystem,
    jammer: &JammerSystem,
    target: &TargetSpec,
    sjr_threshold_db: f64,
) -> Result<Burnthrough> {
    if jammer.colocated_with_target {
        let r_ref = 10e3;
        let sjr_ref = sjr_at(radar, jammer, target, r_ref)?;
        let r = r_ref * 10f64.powf((sjr_ref - sjr_threshold_db) / 20.0);
        let (lo, hi) = BURNTHROUGH_BRACKET_M;
        if r < lo || r > hi {
            return Ok(Burnthrough::NoCrossing);
        }
        Ok(Burnthrough::Range(r))
    } else {
        burnthrough_bisection(radar, jammer, target, sjr_threshold_db)
    }
}

/// Bisection solve for the SJR threshold crossing over [1 m, 1e7 m].
/// SJR is strictly decreasing in range, so the root is unique when the
/// bracket straddles the threshold.
pub fn burnthrough_bisection(
    radar: &RadarSystem,
    jammer: &JammerSystem,
    target: &TargetSpec,
    sjr_threshold_db: f64,
) -> Result<Burnthrough> {
    let (mut lo, mut hi) = BURNTHROUGH_BRACKET_M;
    let f = |r: f64| -> Result<f64> { Ok(sjr_at(radar, jammer, target, r)? - sjr_threshold_db) };
    let f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo < 0.0 || f_hi > 0.0 {
        return Ok(Burnthrough::NoCrossing);
    }
    // bisect in log-range for uniform relative resolution
    let mut lo_log = lo.log10();
    let mut hi_log = hi.log10();
    for _ in 0..200 {
        let mid_log = 0.5 * (lo_log + hi_log);
        let mid = 10f64.powf(mid_log);
        if f(mid)? >= 0.0 {
            lo_log = mid_log;
            lo = mid;
        } else {
            hi_log = mid_log;
            hi = mid;
        }
        if hi - lo < 1e-6 {
            break;
        }
    }
    Ok(Burnthrough::Range(0.5 * (lo + hi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagation::AntennaSpec;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b} (tol {tol})");
    }

    fn table1_radar() -> RadarSystem {
        RadarSystem {
            power_w: 24_600.0,
            antenna_tx: AntennaSpec::Beamwidths {
                az_deg: 0.18,
                el_deg: 20.0,
                efficiency: 1.0,
            },
            antenna_rx: AntennaSpec::Beamwidths {
                az_deg: 0.18,
                el_deg: 20.0,
                efficiency: 1.0,
            },
            frequency_hz: 1.3e9,
            bandwidth_hz: 100e6,
            noise_figure_db: 5.0,
            mod_db: 10.0,
            temperature_k: 290.0,
            detection_threshold_snr_db: 0.0,
        }
    }

    fn table1_jammer(include_tx_gain: bool) -> JammerSystem {
        JammerSystem {
            power_w: 6_800.0,
            antenna: AntennaSpec::Beamwidths {
                az_deg: 15.0,
                el_deg: 15.0,
                efficiency: 1.0,
            },
            bandwidth_hz: 1e9,
            include_tx_gain,
            colocated_with_target: true,
            standoff_range_m: None,
        }
    }

    fn fighter() -> TargetSpec {
        TargetSpec::new("Mig-21", 3.0).unwrap()
    }

    #[test]
    fn noise_stack_known_values() {
        let floor = noise_stack(&NoiseModel::new(290.0, 1.0, 0.0, 0.0).unwrap()).unwrap();
        close(floor.johnson_dbw, -203.975, 0.005);

        let stack = noise_stack(&NoiseModel::new(290.0, 100e6, 5.0, 10.0).unwrap()).unwrap();
        close(stack.total_dbw, -108.98, 0.02);
        close(stack.receiver_dbw, stack.johnson_dbw + 5.0, 1e-12);
    }

    #[test]
    fn noise_stack_bandwidth_scaling() {
        let a = noise_stack(&NoiseModel::new(290.0, 1e6, 3.0, 2.0).unwrap()).unwrap();
        let b = noise_stack(&NoiseModel::new(290.0, 1e7, 3.0, 2.0).unwrap()).unwrap();
        close(b.johnson_dbw - a.johnson_dbw, 10.0, 1e-12);
        close(b.receiver_dbw - a.receiver_dbw, 10.0, 1e-12);
        close(b.total_dbw - a.total_dbw, 10.0, 1e-12);
    }

    #[test]
    fn noise_stack_rejects_invalid() {
        assert!(NoiseModel::new(0.0, 1e6, 0.0, 0.0).is_err());
        assert!(NoiseModel::new(290.0, 0.0, 0.0, 0.0).is_err());
        assert!(NoiseModel::new(290.0, 1e6, -1.0, 0.0).is_err());
        assert!(NoiseModel::new(290.0, 1e6, 0.0, -1.0).is_err());
    }

    #[test]
    fn snr_known_values() {
        close(snr(-75.86, -108.98), 33.12, 0.1);
        close(snr(-100.0, -100.0), 0.0, 1e-12);
        close(snr(-131.77, -108.98), -22.79, 0.1);
    }

    #[test]
    fn rwr_detectable_thresholds() {
        let rwr = RwrSystem {
            antenna: AntennaSpec::Gain(0.0),
            noise: NoiseModel::default_with_bandwidth(100e6),
            pulsed_threshold_dbm: RwrSystem::DEFAULT_PULSED_THRESHOLD_DBM,
            cw_threshold_dbm: RwrSystem::DEFAULT_CW_THRESHOLD_DBM,
        };
        let d = rwr_detectable(PowerLevel::dbm(-20.23), SignalKind::Pulsed, &rwr);
        assert!(d.detectable);
        close(d.margin_db, 19.77, 0.05);

        let d = rwr_detectable(PowerLevel::dbm(-40.0), SignalKind::Pulsed, &rwr);
        assert!(d.detectable);
        close(d.margin_db, 0.0, 1e-12);

        let d = rwr_detectable(PowerLevel::dbm(-55.0), SignalKind::Cw, &rwr);
        assert!(!d.detectable);
        close(d.margin_db, -5.0, 1e-12);
    }

    #[test]
    fn rwr_snr_known_values() {
        let model = NoiseModel::new(290.0, 100e6, 5.0, 10.0).unwrap();
        let total = noise_stack(&model).unwrap().total_dbw;
        close(rwr_snr(-50.23, &model).unwrap(), 58.75, 0.1);
        close(rwr_snr(total, &model).unwrap(), 0.0, 1e-12);
    }

    #[test]
    fn jsr_sjr_modes() {
        close(jsr(-23.18, -75.86, None, JsrMode::Approximate).unwrap(), 52.68, 0.1);
        close(jsr(-45.81, -75.86, None, JsrMode::Approximate).unwrap(), 30.05, 0.1);
        close(sjr(-75.86, -23.18, None, JsrMode::Approximate).unwrap(), -52.68, 0.1);
        close(sjr(-77.0, -77.0, None, JsrMode::Approximate).unwrap(), 0.0, 1e-12);

        // exact with n_total = j adds exactly the 3.01 dB self-sum
        let approx = jsr(-50.0, -80.0, None, JsrMode::Approximate).unwrap();
        let exact = jsr(-50.0, -80.0, Some(-50.0), JsrMode::Exact).unwrap();
        close(exact - approx, 10.0 * 2f64.log10(), 1e-12);

        // exact mode without the noise total is a usage error
        assert!(jsr(-50.0, -80.0, None, JsrMode::Exact).is_err());
        assert!(sjr(-80.0, -50.0, None, JsrMode::Exact).is_err());
    }

    #[test]
    fn jsr_exact_dominated() {
        for &(j, p) in &[(-23.18, -75.86), (-40.0, -90.0)] {
            let n = j - 85.0;
            let approx = sjr(p, j, None, JsrMode::Approximate).unwrap();
            let exact = sjr(p, j, Some(n), JsrMode::Exact).unwrap();
            assert!((approx - exact).abs() < 1e-4);
            assert!(exact <= approx);
        }
    }

    #[test]
    fn burnthrough_known_values() {
        let radar = table1_radar();
        let target = fighter();

        match burnthrough_range(&radar, &table1_jammer(false), &target, 0.0).unwrap() {
            Burnthrough::Range(r) => close(r, 314.0, 2.0),
            _ => panic!("expected a crossing"),
        }
        match burnthrough_range(&radar, &table1_jammer(true), &target, 0.0).unwrap() {
            Burnthrough::Range(r) => close(r, 23.2, 0.5),
            _ => panic!("expected a crossing"),
        }
    }

    #[test]
    fn burnthrough_threshold_slope() {
        let radar = table1_radar();
        let jam = table1_jammer(false);
        let target = fighter();
        let r0 = match burnthrough_range(&radar, &jam, &target, 0.0).unwrap() {
            Burnthrough::Range(r) => r,
            _ => panic!(),
        };
        let r20 = match burnthrough_range(&radar, &jam, &target, -20.0).unwrap() {
            Burnthrough::Range(r) => r,
            _ => panic!(),
        };
        close(r20 / r0, 10.0, 1e-9);
    }

    #[test]
    fn burnthrough_bisection_agrees_with_closed_form() {
        let radar = table1_radar();
        let target = fighter();
        for include in [true, false] {
            let jam = table1_jammer(include);
            let closed = match burnthrough_range(&radar, &jam, &target, 0.0).unwrap() {
                Burnthrough::Range(r) => r,
                _ => panic!(),
            };
            let bisected = match burnthrough_bisection(&radar, &jam, &target, 0.0).unwrap() {
                Burnthrough::Range(r) => r,
                _ => panic!(),
            };
            assert!((closed - bisected).abs() < 1.0, "{closed} vs {bisected}");
        }
    }

    #[test]
    fn burnthrough_no_crossing() {
        let radar = table1_radar();
        let jam = table1_jammer(true);
        let target = fighter();
        // a threshold far above any attainable SJR inside the bracket
        match burnthrough_range(&radar, &jam, &target, 500.0).unwrap() {
            Burnthrough::NoCrossing => {}
            other => panic!("expected no crossing, got {other:?}"),
        }
    }
}
