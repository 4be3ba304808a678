//! Scenario-file ingestion: a line-oriented `key = value` format with
//! section headers. Unit suffixes live in the key names so a W/kW or
//! MHz/GHz mixup is visible at the point of entry. Unknown keys are
//! rejected with their line number.

use std::collections::BTreeMap;

use crate::db::REFERENCE_TEMPERATURE_K;
use crate::error::{Error, Result};
use crate::links::{JammerSystem, RadarSystem, RwrSystem};
use crate::noise::NoiseModel;
use crate::propagation::{AntennaSpec, TargetSpec};
use crate::scenario::{RangeSpec, Scenario, Spacing};

const RADAR_KEYS: &[&str] = &[
    "power_w",
    "frequency_hz",
    "gain_db",
    "beamwidth_az_deg",
    "beamwidth_el_deg",
    "efficiency",
    "bandwidth_hz",
    "noise_figure_db",
    "mod_db",
    "temperature_k",
    "detection_threshold_snr_db",
];

const JAMMER_KEYS: &[&str] = &[
    "power_w",
    "gain_db",
    "beamwidth_az_deg",
    "beamwidth_el_deg",
    "efficiency",
    "bandwidth_hz",
    "include_tx_gain",
    "colocated_with_target",
    "standoff_range_km",
];

const RWR_KEYS: &[&str] = &[
    "gain_db",
    "beamwidth_az_deg",
    "beamwidth_el_deg",
    "efficiency",
    "bandwidth_hz",
    "noise_figure_db",
    "mod_db",
    "pulsed_threshold_dbm",
    "cw_threshold_dbm",
];

const TARGET_KEYS: &[&str] = &["name", "rcs_m2"];

const SWEEP_KEYS: &[&str] = &[
    "ranges_km",
    "start_km",
    "stop_km",
    "count",
    "spacing",
];

/// One parsed section: key -> (line number, raw value).
#[derive(Debug, Default)]
struct Section {
    header_line: usize,
    entries: BTreeMap<String, (usize, String)>,
}

impl Section {
    fn get(&self, key: &str) -> Option<&(usize, String)> {
        self.entries.get(key)
    }

    fn f64(&self, key: &str) -> Result<Option<f64>> {
        match self.get(key) {
            None => Ok(None),
            Some((line, raw)) => raw.parse::<f64>().map(Some).map_err(|_| {
                Error::config(*line, format!("key {key}: expected a number, got {raw:?}"))
            }),
        }
    }

    fn require_f64(&self, section: &str, key: &str) -> Result<f64> {
        self.f64(key)?.ok_or_else(|| {
            Error::config(
                self.header_line,
                format!("section [{section}] is missing required key {key}"),
            )
        })
    }

    fn bool(&self, key: &str) -> Result<Option<bool>> {
        match self.get(key) {
            None => Ok(None),
            Some((line, raw)) => match raw.as_str() {
                "true" => Ok(Some(true)),
                "false" => Ok(Some(false)),
                _ => Err(Error::config(
                    *line,
                    format!("key {key}: expected true or false, got {raw:?}"),
                )),
            },
        }
    }

    fn positive(&self, section: &str, key: &str) -> Result<f64> {
        let v = self.require_f64(section, key)?;
        if !(v > 0.0) {
            let line = self.get(key).map(|(l, _)| *l).unwrap_or(self.header_line);
            return Err(Error::config(
                line,
                format!("key {key}: value must be positive, got {v}"),
            ));
        }
        Ok(v)
    }
}

fn parse_sections(text: &str) -> Result<Vec<(String, Section)>> {
    let mut sections: Vec<(String, Section)> = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let name = name.trim().to_string();
            if !matches!(name.as_str(), "radar" | "jammer" | "rwr" | "target" | "sweep") {
                return Err(Error::config(line_no, format!("unknown section [{name}]")));
            }
            sections.push((
                name,
                Section {
                    header_line: line_no,
                    entries: BTreeMap::new(),
                },
            ));
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::config(line_no, format!("expected `key = value`, got {line:?}"))
        })?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        let (section_name, section) = sections.last_mut().ok_or_else(|| {
            Error::config(line_no, format!("key {key} appears before any section header"))
        })?;
        let allowed = match section_name.as_str() {
            "radar" => RADAR_KEYS,
            "jammer" => JAMMER_KEYS,
            "rwr" => RWR_KEYS,
            "target" => TARGET_KEYS,
            "sweep" => SWEEP_KEYS,
            _ => unreachable!(),
        };
        if !allowed.contains(&key.as_str()) {
            return Err(Error::config(
                line_no,
                format!("unknown key {key} in section [{section_name}]"),
            ));
        }
        if section.entries.contains_key(&key) {
            return Err(Error::config(
                line_no,
                format!("duplicate key {key} in section [{section_name}]"),
            ));
        }
        section.entries.insert(key, (line_no, value));
    }
    Ok(sections)
}

fn parse_antenna(section: &Section, section_name: &str) -> Result<AntennaSpec> {
    let has_gain = section.get("gain_db").is_some();
    let beam_keys = ["beamwidth_az_deg", "beamwidth_el_deg", "efficiency"];
    let has_any_beam = beam_keys.iter().any(|k| section.get(k).is_some());
    if has_gain && has_any_beam {
        let line = section.get("gain_db").map(|(l, _)| *l).unwrap();
        return Err(Error::config(
            line,
            format!(
                "section [{section_name}]: gain_db conflicts with beamwidth_az_deg/beamwidth_el_deg/efficiency; give exactly one antenna description"
            ),
        ));
    }
    if has_gain {
        return Ok(AntennaSpec::Gain(section.require_f64(section_name, "gain_db")?));
    }
    if has_any_beam {
        return Ok(AntennaSpec::Beamwidths {
            az_deg: section.positive(section_name, "beamwidth_az_deg")?,
            el_deg: section.positive(section_name, "beamwidth_el_deg")?,
            efficiency: section.positive(section_name, "efficiency")?,
        });
    }
    Err(Error::config(
        section.header_line,
        format!("section [{section_name}] needs gain_db or the beamwidth triple"),
    ))
}

fn parse_sweep(section: &Section) -> Result<RangeSpec> {
    if let Some((line, raw)) = section.get("ranges_km") {
        for k in ["start_km", "stop_km", "count", "spacing"] {
            if section.get(k).is_some() {
                return Err(Error::config(
                    *line,
                    format!("ranges_km conflicts with {k}; give an explicit list or a generated sweep, not both"),
                ));
            }
        }
        let values = raw
            .split(',')
            .map(|s| {
                s.trim().parse::<f64>().map_err(|_| {
                    Error::config(*line, format!("ranges_km: bad number {:?}", s.trim()))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        return Ok(RangeSpec::Explicit(values));
    }
    let start_km = section.positive("sweep", "start_km")?;
    let stop_km = section.positive("sweep", "stop_km")?;
    let count = section.require_f64("sweep", "count")? as usize;
    let spacing = match section.get("spacing") {
        None => Spacing::Linear,
        Some((line, raw)) => match raw.as_str() {
            "linear" => Spacing::Linear,
            "log" => Spacing::Log,
            _ => {
                return Err(Error::config(
                    *line,
                    format!("spacing: expected linear or log, got {raw:?}"),
                ))
            }
        },
    };
    Ok(RangeSpec::Generated {
        start_km,
        stop_km,
        count,
        spacing,
    })
}

/// Parse a scenario file into a validated [`Scenario`].
pub fn parse_config(text: &str) -> Result<Scenario> {
    let sections = parse_sections(text)?;

    let mut radar_section: Option<&Section> = None;
    let mut jammer_section: Option<&Section> = None;
    let mut rwr_section: Option<&Section> = None;
    let mut sweep_section: Option<&Section> = None;
    let mut target_sections: Vec<&Section> = Vec::new();

    for (name, section) in &sections {
        let slot = match name.as_str() {
            "radar" => &mut radar_section,
            "jammer" => &mut jammer_section,
            "rwr" => &mut rwr_section,
            "sweep" => &mut sweep_section,
            "target" => {
                target_sections.push(section);
                continue;
            }
            _ => unreachable!(),
        };
        if slot.is_some() {
            return Err(Error::config(
                section.header_line,
                format!("duplicate section [{name}]"),
            ));
        }
        *slot = Some(section);
    }

    let radar_section =
        radar_section.ok_or_else(|| Error::config(0, "missing section [radar]"))?;
    let sweep_section =
        sweep_section.ok_or_else(|| Error::config(0, "missing section [sweep]"))?;
    if target_sections.is_empty() {
        return Err(Error::config(0, "at least one [target] section is required"));
    }

    let antenna = parse_antenna(radar_section, "radar")?;
    let radar = RadarSystem {
        power_w: radar_section.positive("radar", "power_w")?,
        antenna_tx: antenna.clone(),
        antenna_rx: antenna,
        frequency_hz: radar_section.positive("radar", "frequency_hz")?,
        bandwidth_hz: radar_section.positive("radar", "bandwidth_hz")?,
        noise_figure_db: radar_section.f64("noise_figure_db")?.unwrap_or(0.0),
        mod_db: radar_section.f64("mod_db")?.unwrap_or(0.0),
        temperature_k: radar_section
            .f64("temperature_k")?
            .unwrap_or(REFERENCE_TEMPERATURE_K),
        detection_threshold_snr_db: radar_section
            .f64("detection_threshold_snr_db")?
            .unwrap_or(0.0),
    };

    let jammer = match jammer_section {
        None => None,
        Some(section) => Some(JammerSystem {
            power_w: section.positive("jammer", "power_w")?,
            antenna: parse_antenna(section, "jammer")?,
            bandwidth_hz: section.positive("jammer", "bandwidth_hz")?,
            include_tx_gain: section.bool("include_tx_gain")?.unwrap_or(true),
            colocated_with_target: section.bool("colocated_with_target")?.unwrap_or(true),
            standoff_range_m: section.f64("standoff_range_km")?.map(|km| km * 1e3),
        }),
    };

    let rwr = match rwr_section {
        None => None,
        Some(section) => Some(RwrSystem {
            antenna: parse_antenna(section, "rwr")?,
            noise: NoiseModel {
                temperature_k: REFERENCE_TEMPERATURE_K,
                bandwidth_hz: section
                    .f64("bandwidth_hz")?
                    .unwrap_or(radar.bandwidth_hz),
                noise_figure_db: section.f64("noise_figure_db")?.unwrap_or(0.0),
                mod_db: section.f64("mod_db")?.unwrap_or(0.0),
            },
            pulsed_threshold_dbm: section
                .f64("pulsed_threshold_dbm")?
                .unwrap_or(RwrSystem::DEFAULT_PULSED_THRESHOLD_DBM),
            cw_threshold_dbm: section
                .f64("cw_threshold_dbm")?
                .unwrap_or(RwrSystem::DEFAULT_CW_THRESHOLD_DBM),
        }),
    };

    let mut targets = Vec::with_capacity(target_sections.len());
    for section in &target_sections {
        let name = section
            .get("name")
            .ok_or_else(|| {
                Error::config(section.header_line, "section [target] is missing key name")
            })?
            .1
            .clone();
        let rcs = section.positive("target", "rcs_m2")?;
        targets.push(TargetSpec::new(name, rcs).map_err(|e| {
            Error::config(section.header_line, e.to_string())
        })?);
    }

    let scenario = Scenario {
        radar,
        jammer,
        rwr,
        targets,
        ranges: parse_sweep(sweep_section)?,
    };
    scenario.validate().map_err(|e| match e {
        Error::Config { .. } => e,
        other => Error::config(0, other.to_string()),
    })?;
    Ok(scenario)
}

fn write_antenna(out: &mut String, antenna: &AntennaSpec) {
    match antenna {
        AntennaSpec::Gain(g) => out.push_str(&format!("gain_db = {g}\n")),
        AntennaSpec::Beamwidths {
            az_deg,
            el_deg,
            efficiency,
        } => {
            out.push_str(&format!("beamwidth_az_deg = {az_deg}\n"));
            out.push_str(&format!("beamwidth_el_deg = {el_deg}\n"));
            out.push_str(&format!("efficiency = {efficiency}\n"));
        }
    }
}

/// Render a scenario back into the config format; the inverse of
/// [`parse_config`] for every valid scenario.
pub fn serialize(scenario: &Scenario) -> String {
    let mut out = String::new();
    let radar = &scenario.radar;
    out.push_str("[radar]\n");
    out.push_str(&format!("power_w = {}\n", radar.power_w));
    out.push_str(&format!("frequency_hz = {}\n", radar.frequency_hz));
    write_antenna(&mut out, &radar.antenna_tx);
    out.push_str(&format!("bandwidth_hz = {}\n", radar.bandwidth_hz));
    out.push_str(&format!("noise_figure_db = {}\n", radar.noise_figure_db));
    out.push_str(&format!("mod_db = {}\n", radar.mod_db));
    out.push_str(&format!("temperature_k = {}\n", radar.temperature_k));
    out.push_str(&format!(
        "detection_threshold_snr_db = {}\n",
        radar.detection_threshold_snr_db
    ));

    if let Some(jammer) = &scenario.jammer {
        out.push_str("\n[jammer]\n");
        out.push_str(&format!("power_w = {}\n", jammer.power_w));
        write_antenna(&mut out, &jammer.antenna);
        out.push_str(&format!("bandwidth_hz = {}\n", jammer.bandwidth_hz));
        out.push_str(&format!("include_tx_gain = {}\n", jammer.include_tx_gain));
        out.push_str(&format!(
            "colocated_with_target = {}\n",
            jammer.colocated_with_target
        ));
        if let Some(r) = jammer.standoff_range_m {
            out.push_str(&format!("standoff_range_km = {}\n", r / 1e3));
        }
    }

    if let Some(rwr) = &scenario.rwr {
        out.push_str("\n[rwr]\n");
        write_antenna(&mut out, &rwr.antenna);
        out.push_str(&format!("bandwidth_hz = {}\n", rwr.noise.bandwidth_hz));
        out.push_str(&format!("noise_figure_db = {}\n", rwr.noise.noise_figure_db));
        out.push_str(&format!("mod_db = {}\n", rwr.noise.mod_db));
        out.push_str(&format!(
            "pulsed_threshold_dbm = {}\n",
            rwr.pulsed_threshold_dbm
        ));
        out.push_str(&format!("cw_threshold_dbm = {}\n", rwr.cw_threshold_dbm));
    }

    for target in &scenario.targets {
        out.push_str("\n[target]\n");
        out.push_str(&format!("name = {}\n", target.name));
        out.push_str(&format!("rcs_m2 = {}\n", target.rcs_m2));
    }

    out.push_str("\n[sweep]\n");
    match &scenario.ranges {
        RangeSpec::Explicit(list) => {
            let joined = list
                .iter()
                .map(|v| format!("{v}"))
                .collect::<Vec<_>>()
                .join(", ");
            out.push_str(&format!("ranges_km = {joined}\n"));
        }
        RangeSpec::Generated {
            start_km,
            stop_km,
            count,
            spacing,
        } => {
            out.push_str(&format!("start_km = {start_km}\n"));
            out.push_str(&format!("stop_km = {stop_km}\n"));
            out.push_str(&format!("count = {count}\n"));
            out.push_str(&format!(
                "spacing = {}\n",
                match spacing {
                    Spacing::Linear => "linear",
                    Spacing::Log => "log",
                }
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{table1_compat, table1_faithful};

    fn table1_text(include_tx_gain: bool) -> String {
        format!(
            "[radar]\n\
             power_w = 24600\n\
             frequency_hz = 1.3e9\n\
             beamwidth_az_deg = 0.18\n\
             beamwidth_el_deg = 20\n\
             efficiency = 1.0\n\
             bandwidth_hz = 100e6\n\
             noise_figure_db = 5\n\
             mod_db = 10\n\
             \n\
             [jammer]\n\
             power_w = 6800\n\
             beamwidth_az_deg = 15\n\
             beamwidth_el_deg = 15\n\
             efficiency = 1.0\n\
             bandwidth_hz = 1e9\n\
             include_tx_gain = {include_tx_gain}\n\
             \n\
             [target]\n\
             name = Mig-21\n\
             rcs_m2 = 3\n\
             \n\
             [target]\n\
             name = B-2\n\
             rcs_m2 = 0.1\n\
             \n\
             [target]\n\
             name = F-35\n\
             rcs_m2 = 0.005\n\
             \n\
             [sweep]\n\
             ranges_km = 10, 12, 13.6, 15, 20, 29, 30, 70, 100, 250\n"
        )
    }

    #[test]
    fn table1_config_matches_canned_scenario() {
        assert_eq!(parse_config(&table1_text(false)).unwrap(), table1_compat());
        assert_eq!(parse_config(&table1_text(true)).unwrap(), table1_faithful());
    }

    #[test]
    fn unknown_key_rejected_with_line() {
        let text = "[radar]\npower_w = 1\nfrequenzy_hz = 1e9\n";
        match parse_config(text) {
            Err(Error::Config { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("frequenzy_hz"), "{message}");
            }
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn conflicting_antenna_spec_names_keys() {
        let text = "[radar]\n\
                    power_w = 100\n\
                    frequency_hz = 1e9\n\
                    gain_db = 30\n\
                    beamwidth_az_deg = 2\n\
                    bandwidth_hz = 1e6\n\
                    [target]\nname = t\nrcs_m2 = 1\n\
                    [sweep]\nranges_km = 10\n";
        match parse_config(text) {
            Err(Error::Config { message, .. }) => {
                assert!(message.contains("gain_db"), "{message}");
                assert!(message.contains("beamwidth_az_deg"), "{message}");
            }
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn missing_targets_rejected() {
        let text = "[radar]\npower_w = 100\nfrequency_hz = 1e9\ngain_db = 30\nbandwidth_hz = 1e6\n[sweep]\nranges_km = 10\n";
        assert!(parse_config(text).is_err());
    }

    #[test]
    fn nonpositive_value_reports_key_and_line() {
        let text = "[radar]\n\
                    power_w = -5\n\
                    frequency_hz = 1e9\n\
                    gain_db = 30\n\
                    bandwidth_hz = 1e6\n\
                    [target]\nname = t\nrcs_m2 = 1\n\
                    [sweep]\nranges_km = 10\n";
        match parse_config(text) {
            Err(Error::Config { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains("power_w"), "{message}");
            }
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn round_trip_through_serialize() {
        for scenario in [table1_compat(), table1_faithful()] {
            let text = serialize(&scenario);
            assert_eq!(parse_config(&text).unwrap(), scenario);
        }
    }

    #[test]
    fn generated_sweep_and_comments() {
        let text = "# scenario\n\
                    [radar]\n\
                    power_w = 1000 # one kW\n\
                    frequency_hz = 3e9\n\
                    gain_db = 30\n\
                    bandwidth_hz = 1e6\n\
                    [target]\nname = t\nrcs_m2 = 1\n\
                    [sweep]\nstart_km = 10\nstop_km = 100\ncount = 3\nspacing = log\n";
        let scenario = parse_config(text).unwrap();
        assert_eq!(
            scenario.ranges,
            RangeSpec::Generated {
                start_km: 10.0,
                stop_km: 100.0,
                count: 3,
                spacing: Spacing::Log,
            }
        );
    }
}
