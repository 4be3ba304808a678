//! Declarative engagement scenarios and the range-sweep engine, plus CSV
//! export of sweep results.

use crate::error::{Error, Result};
use crate::links::{
    jammer_link, radar_link, JammerSystem, RadarFormulation, RadarSystem, RwrSystem,
};
use crate::noise::{self, noise_stack, JsrMode};
use crate::propagation::{AntennaSpec, TargetSpec};

/// Range axis of a sweep, either explicit or generated.
#[derive(Debug, Clone, PartialEq)]
pub enum RangeSpec {
    /// Strictly increasing list of ranges in km.
    Explicit(Vec<f64>),
    Generated {
        start_km: f64,
        stop_km: f64,
        count: usize,
        spacing: Spacing,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// A full engagement: radar, optional jammer and RWR, targets and the
/// range axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub radar: RadarSystem,
    pub jammer: Option<JammerSystem>,
    pub rwr: Option<RwrSystem>,
    pub targets: Vec<TargetSpec>,
    pub ranges: RangeSpec,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.radar.validate()?;
        if let Some(jammer) = &self.jammer {
            jammer.validate()?;
        }
        if self.targets.is_empty() {
            return Err(Error::domain("scenario needs at least one target"));
        }
        let mut names: Vec<&str> = self.targets.iter().map(|t| t.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        if names.len() != self.targets.len() {
            return Err(Error::domain("target names must be unique"));
        }
        expand_ranges(&self.ranges)?;
        Ok(())
    }

    pub fn target(&self, name: &str) -> Result<&TargetSpec> {
        self.targets
            .iter()
            .find(|t| t.name == name)
            .ok_or_else(|| Error::usage(format!("unknown target {name:?}")))
    }
}

/// Expand a range spec into a strictly increasing list of km values.
pub fn expand_ranges(spec: &RangeSpec) -> Result<Vec<f64>> {
    match spec {
        RangeSpec::Explicit(list) => {
            if list.is_empty() {
                return Err(Error::domain("range list must be non-empty"));
            }
            for pair in list.windows(2) {
                if pair[1] <= pair[0] {
                    return Err(Error::domain(format!(
                        "ranges must be strictly increasing ({} then {})",
                        pair[0], pair[1]
                    )));
                }
            }
            if !(list[0] > 0.0) {
                return Err(Error::domain("ranges must be positive"));
            }
            Ok(list.clone())
        }
        RangeSpec::Generated {
            start_km,
            stop_km,
            count,
            spacing,
        } => {
            if *count < 2 {
                return Err(Error::domain("generated sweeps need count >= 2"));
            }
            if !(*start_km > 0.0) || !(*stop_km > *start_km) {
                return Err(Error::domain(
                    "generated sweeps need 0 < start < stop",
                ));
            }
            let n = *count;
            let values = (0..n)
                .map(|i| {
                    let t = i as f64 / (n - 1) as f64;
                    match spacing {
                        Spacing::Linear => start_km + t * (stop_km - start_km),
                        Spacing::Log => start_km * (stop_km / start_km).powf(t),
                    }
                })
                .collect();
            Ok(values)
        }
    }
}

/// Per-target figures at one range.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetCell {
    pub name: String,
    pub rcs_m2: f64,
    pub p_rx_dbw: f64,
    pub snr_db: f64,
    pub jsr_db: Option<f64>,
    pub sjr_db: Option<f64>,
}

/// One sweep row: shared quantities plus one cell per target.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub range_km: f64,
    pub n_total_dbw: f64,
    pub j_dbw: Option<f64>,
    pub jammer_gain_included: Option<bool>,
    pub targets: Vec<TargetCell>,
}

/// Evaluate the scenario at every range: radar echo, noise, jamming and
/// the derived ratios. Deterministic; identical input gives bit-identical
/// output.
pub fn run_sweep(scenario: &Scenario) -> Result<Vec<SweepRow>> {
    scenario.validate()?;
    let ranges = expand_ranges(&scenario.ranges)?;
    let n_total = noise_stack(&scenario.radar.noise_model())?.total_dbw;

    let mut rows = Vec::with_capacity(ranges.len());
    for range_km in ranges {
        let range_m = range_km * 1e3;
        let j_dbw = match &scenario.jammer {
            Some(jammer) => {
                let jam_range = if jammer.colocated_with_target {
                    range_m
                } else {
                    jammer.standoff_range_m.ok_or_else(|| {
                        Error::domain(format!(
                            "standoff jammer has no range (sweep at {range_km} km)"
                        ))
                    })?
                };
                Some(jammer_link(jammer, &scenario.radar, jam_range)?.total_dbw())
            }
            None => None,
        };

        let mut cells = Vec::with_capacity(scenario.targets.len());
        for target in &scenario.targets {
            let p_rx = radar_link(
                &scenario.radar,
                target,
                range_m,
                RadarFormulation::TargetGainChain,
            )
            .map_err(|e| {
                Error::domain(format!(
                    "{} (range {} km, target {})",
                    e, range_km, target.name
                ))
            })?
            .total_dbw();
            let (jsr_db, sjr_db) = match j_dbw {
                Some(j) => (
                    Some(noise::jsr(j, p_rx, None, JsrMode::Approximate)?),
                    Some(noise::sjr(p_rx, j, None, JsrMode::Approximate)?),
                ),
                None => (None, None),
            };
            cells.push(TargetCell {
                name: target.name.clone(),
                rcs_m2: target.rcs_m2,
                p_rx_dbw: p_rx,
                snr_db: noise::snr(p_rx, n_total),
                jsr_db,
                sjr_db,
            });
        }
        rows.push(SweepRow {
            range_km,
            n_total_dbw: n_total,
            j_dbw,
            jammer_gain_included: scenario.jammer.as_ref().map(|j| j.include_tx_gain),
            targets: cells,
        });
    }
    Ok(rows)
}

/// The early-warning-radar vs self-protection-jammer engagement behind
/// the reference results table: 24.6 kW L-band radar, 6.8 kW barrage
/// jammer, three targets from 3 m² down to 0.005 m².
///
/// `include_tx_gain = false` reproduces the published table (whose
/// jamming numbers omit the jammer antenna gain); `true` follows the
/// jammer equation as printed.
pub fn table1_scenario(include_tx_gain: bool) -> Scenario {
    Scenario {
        radar: RadarSystem {
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
        },
        jammer: Some(JammerSystem {
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
        }),
        rwr: None,
        targets: vec![
            TargetSpec::new("Mig-21", 3.0).unwrap(),
            TargetSpec::new("B-2", 0.1).unwrap(),
            TargetSpec::new("F-35", 0.005).unwrap(),
        ],
        ranges: RangeSpec::Explicit(vec![
            10.0, 12.0, 13.6, 15.0, 20.0, 29.0, 30.0, 70.0, 100.0, 250.0,
        ]),
    }
}

/// Compatibility-mode twin of [`table1_scenario`] (jammer gain omitted).
pub fn table1_compat() -> Scenario {
    table1_scenario(false)
}

/// Faithful-mode twin (jammer equation as printed).
pub fn table1_faithful() -> Scenario {
    table1_scenario(true)
}

fn fmt_opt(v: Option<f64>) -> String {
    match v {
        Some(v) => format!("{v:.2}"),
        None => String::new(),
    }
}

fn fmt_rcs(rcs: f64) -> String {
    // shortest round-trip decimal, so 0.005 m² survives the export
    format!("{rcs}")
}

/// Render sweep rows to CSV: one line per (range, target), range
/// ascending then target declaration order, dB figures at 2 decimals.
pub fn export_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(
        "range_km,target,rcs_m2,p_rx_dbw,n_total_dbw,j_dbw,snr_db,jsr_db,sjr_db,jammer_gain_included\n",
    );
    for row in rows {
        for cell in &row.targets {
            let gain_flag = match row.jammer_gain_included {
                Some(true) => "true",
                Some(false) => "false",
                None => "",
            };
            out.push_str(&format!(
                "{:.2},{},{},{:.2},{:.2},{},{:.2},{},{},{}\n",
                row.range_km,
                cell.name,
                fmt_rcs(cell.rcs_m2),
                cell.p_rx_dbw,
                row.n_total_dbw,
                fmt_opt(row.j_dbw),
                cell.snr_db,
                fmt_opt(cell.jsr_db),
                fmt_opt(cell.sjr_db),
                gain_flag,
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn expand_ranges_generated() {
        let r = expand_ranges(&RangeSpec::Generated {
            start_km: 10.0,
            stop_km: 100.0,
            count: 2,
            spacing: Spacing::Log,
        })
        .unwrap();
        assert_eq!(r.len(), 2);
        close(r[0], 10.0, 1e-12);
        close(r[1], 100.0, 1e-12);

        let r = expand_ranges(&RangeSpec::Generated {
            start_km: 10.0,
            stop_km: 1000.0,
            count: 3,
            spacing: Spacing::Log,
        })
        .unwrap();
        close(r[1], 100.0, 1e-9);

        let r = expand_ranges(&RangeSpec::Generated {
            start_km: 10.0,
            stop_km: 30.0,
            count: 5,
            spacing: Spacing::Linear,
        })
        .unwrap();
        assert_eq!(r, vec![10.0, 15.0, 20.0, 25.0, 30.0]);
    }

    #[test]
    fn expand_ranges_explicit_and_errors() {
        let table1 = vec![10.0, 12.0, 13.6, 15.0, 20.0, 29.0, 30.0, 70.0, 100.0, 250.0];
        assert_eq!(
            expand_ranges(&RangeSpec::Explicit(table1.clone())).unwrap(),
            table1
        );
        assert!(expand_ranges(&RangeSpec::Explicit(vec![10.0, 10.0])).is_err());
        assert!(expand_ranges(&RangeSpec::Explicit(vec![20.0, 10.0])).is_err());
        assert!(expand_ranges(&RangeSpec::Explicit(vec![-1.0, 10.0])).is_err());
        assert!(expand_ranges(&RangeSpec::Explicit(vec![])).is_err());
        assert!(expand_ranges(&RangeSpec::Generated {
            start_km: 10.0,
            stop_km: 100.0,
            count: 1,
            spacing: Spacing::Linear,
        })
        .is_err());
    }

    #[test]
    fn sweep_reproduces_anchor_row() {
        let rows = run_sweep(&table1_compat()).unwrap();
        assert_eq!(rows.len(), 10);
        let row = &rows[0];
        close(row.range_km, 10.0, 1e-12);
        let fighter = &row.targets[0];
        assert_eq!(fighter.name, "Mig-21");
        close(fighter.snr_db, 33.12, 0.1);
        close(fighter.sjr_db.unwrap(), -30.05, 0.1);
    }

    #[test]
    fn sweep_row_cross_target_identity() {
        let rows = run_sweep(&table1_compat()).unwrap();
        for row in &rows {
            let base = row.targets[0].snr_db - row.targets[0].sjr_db.unwrap();
            for cell in &row.targets[1..] {
                let v = cell.snr_db - cell.sjr_db.unwrap();
                assert!((v - base).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn sweep_scaling_laws() {
        let mut scenario = table1_compat();
        scenario.ranges = RangeSpec::Explicit(vec![10.0, 100.0]);
        let rows = run_sweep(&scenario).unwrap();
        for (a, b) in rows[0].targets.iter().zip(&rows[1].targets) {
            close(a.snr_db - b.snr_db, 40.0, 1e-9);
            close(a.sjr_db.unwrap() - b.sjr_db.unwrap(), 20.0, 1e-9);
        }
        // σ-scaling within a row
        let row = &rows[0];
        let d = row.targets[0].snr_db - row.targets[1].snr_db;
        close(d, 10.0 * (3.0f64 / 0.1).log10(), 1e-9);
        let d = row.targets[0].sjr_db.unwrap() - row.targets[1].sjr_db.unwrap();
        close(d, 10.0 * (3.0f64 / 0.1).log10(), 1e-9);
    }

    #[test]
    fn sweep_without_jammer_has_no_ratios() {
        let mut scenario = table1_compat();
        scenario.jammer = None;
        let rows = run_sweep(&scenario).unwrap();
        for row in &rows {
            assert!(row.j_dbw.is_none());
            assert!(row.jammer_gain_included.is_none());
            for cell in &row.targets {
                assert!(cell.jsr_db.is_none());
                assert!(cell.sjr_db.is_none());
            }
        }
    }

    #[test]
    fn sweep_is_deterministic() {
        let a = run_sweep(&table1_compat()).unwrap();
        let b = run_sweep(&table1_compat()).unwrap();
        assert_eq!(a, b);
        assert_eq!(export_csv(&a), export_csv(&b));
    }

    #[test]
    fn scenario_rejects_duplicate_targets() {
        let mut s = table1_compat();
        s.targets.push(TargetSpec::new("Mig-21", 5.0).unwrap());
        assert!(s.validate().is_err());
        s.targets.clear();
        assert!(s.validate().is_err());
    }

    #[test]
    fn table1_scenario_resolves_stated_parameters() {
        let s = table1_compat();
        close(s.radar.antenna_tx.gain_db().unwrap(), 40.59, 0.01);
        let n = noise_stack(&s.radar.noise_model()).unwrap().total_dbw;
        close(n, -108.98, 0.02);
        match &s.ranges {
            RangeSpec::Explicit(list) => assert_eq!(list.len(), 10),
            _ => panic!("expected the explicit table range list"),
        }
    }

    #[test]
    fn csv_shape_and_self_consistency() {
        let rows = run_sweep(&table1_compat()).unwrap();
        let csv = export_csv(&rows);
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        assert_eq!(lines.len(), 31);
        assert!(lines[0].starts_with("range_km,target"));
        for line in &lines[1..] {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 10);
            let p_rx: f64 = fields[3].parse().unwrap();
            let n: f64 = fields[4].parse().unwrap();
            let snr: f64 = fields[6].parse().unwrap();
            // printed at 2 decimals, so recomputation matches to 0.01+eps
            assert!((snr - (p_rx - n)).abs() < 0.011, "{line}");
            assert_eq!(fields[9], "false");
        }
    }

    #[test]
    fn csv_empty_columns_without_jammer() {
        let mut scenario = table1_compat();
        scenario.jammer = None;
        let csv = export_csv(&run_sweep(&scenario).unwrap());
        for line in csv.trim_end().lines().skip(1) {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields[5], "");
            assert_eq!(fields[7], "");
            assert_eq!(fields[8], "");
            assert_eq!(fields[9], "");
        }
    }

    #[test]
    fn csv_preserves_small_rcs() {
        let rows = run_sweep(&table1_compat()).unwrap();
        let csv = export_csv(&rows);
        assert!(csv.contains(",0.005,"));
    }
}
