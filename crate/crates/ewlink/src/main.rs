use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ewlink::config::parse_config;
use ewlink::db::PowerLevel;
use ewlink::error::Error;
use ewlink::links::{
    jammer_link, radar_link, rwr_link, LinkBudget, RadarFormulation, RwrSystem,
};
use ewlink::noise::{
    burnthrough_range, noise_stack, rwr_detectable, snr, Burnthrough, NoiseModel, SignalKind,
};
use ewlink::plot::{render_plot, PlotSpec};
use ewlink::propagation::{AntennaSpec, PathGeometry};
use ewlink::scenario::{export_csv, run_sweep, Scenario};

/// Link-budget calculator and electronic-warfare engagement simulator.
#[derive(Parser)]
#[command(name = "ewlink", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulationArg {
    Stepwise,
    Chain,
    Collapsed,
}

impl From<FormulationArg> for RadarFormulation {
    fn from(arg: FormulationArg) -> Self {
        match arg {
            FormulationArg::Stepwise => RadarFormulation::Stepwise,
            FormulationArg::Chain => RadarFormulation::TargetGainChain,
            FormulationArg::Collapsed => RadarFormulation::Collapsed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SignalArg {
    Pulsed,
    Cw,
}

#[derive(Subcommand)]
enum Command {
    /// One-way telecom link budget from the radar transmitter.
    Link {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        range_km: f64,
        /// Receive antenna gain, dB.
        #[arg(long, default_value_t = 0.0)]
        rx_gain_db: f64,
    },
    /// Two-way radar echo budget and SNR for one target.
    Radar {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        range_km: f64,
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value = "chain")]
        formulation: FormulationArg,
    },
    /// Radar warning receiver link and sensitivity verdict.
    Rwr {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        range_km: f64,
        #[arg(long, value_enum, default_value = "pulsed")]
        signal: SignalArg,
    },
    /// Jammer-into-radar link budget.
    Jam {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        range_km: f64,
    },
    /// Range sweep over the scenario; CSV to stdout or a file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// CSV output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also render an SVG chart to this path.
        #[arg(long)]
        plot: Option<PathBuf>,
        /// Linear range axis instead of the default log axis.
        #[arg(long)]
        linear_x: bool,
    },
    /// Solve the range where SJR reaches the threshold.
    Burnthrough {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 0.0)]
        threshold_db: f64,
    },
}

fn load_scenario(path: &PathBuf) -> Result<Scenario, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::config(0, format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

fn print_budget(budget: &LinkBudget) {
    let mut running = 0.0;
    println!("{:<24} {:>12} {:>14}", "term", "value (dB)", "running (dBW)");
    for term in budget.breakdown() {
        running += term.value_db;
        println!("{:<24} {:>12.2} {:>14.2}", term.label, term.value_db, running);
    }
    println!("{:<24} {:>12} {:>14.2}", "total", "", budget.total_dbw());
}

fn default_rwr(scenario: &Scenario) -> RwrSystem {
    scenario.rwr.clone().unwrap_or_else(|| RwrSystem {
        antenna: AntennaSpec::Gain(0.0),
        noise: NoiseModel::default_with_bandwidth(scenario.radar.bandwidth_hz),
        pulsed_threshold_dbm: RwrSystem::DEFAULT_PULSED_THRESHOLD_DBM,
        cw_threshold_dbm: RwrSystem::DEFAULT_CW_THRESHOLD_DBM,
    })
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Link {
            config,
            range_km,
            rx_gain_db,
        } => {
            let scenario = load_scenario(&config)?;
            let radar = &scenario.radar;
            let geometry =
                PathGeometry::from_frequency(range_km * 1e3, radar.frequency_hz)?;
            let budget = ewlink::links::telecom_link(
                ewlink::db::watts_to_dbw(radar.power_w)?,
                radar.antenna_tx.gain_db()?,
                rx_gain_db,
                geometry,
            )?;
            print_budget(&budget);
            println!(
                "received power: {:.2} dBW ({:.2} dBm)",
                budget.total_dbw(),
                budget.total_dbm()
            );
        }
        Command::Radar {
            config,
            range_km,
            target,
            formulation,
        } => {
            let scenario = load_scenario(&config)?;
            let target = scenario.target(&target)?;
            let budget = radar_link(
                &scenario.radar,
                target,
                range_km * 1e3,
                formulation.into(),
            )?;
            print_budget(&budget);
            let n_total = noise_stack(&scenario.radar.noise_model())?.total_dbw;
            let snr_db = snr(budget.total_dbw(), n_total);
            println!(
                "received power: {:.2} dBW   noise total: {:.2} dBW   SNR: {:.2} dB",
                budget.total_dbw(),
                n_total,
                snr_db
            );
        }
        Command::Rwr {
            config,
            range_km,
            signal,
        } => {
            let scenario = load_scenario(&config)?;
            let rwr = default_rwr(&scenario);
            let budget = rwr_link(&scenario.radar, &rwr, range_km * 1e3)?;
            print_budget(&budget);
            let kind = match signal {
                SignalArg::Pulsed => SignalKind::Pulsed,
                SignalArg::Cw => SignalKind::Cw,
            };
            let verdict = rwr_detectable(PowerLevel::dbw(budget.total_dbw()), kind, &rwr);
            println!(
                "received power: {:.2} dBW ({:.2} dBm)   detectable: {}   margin: {:.2} dB",
                budget.total_dbw(),
                budget.total_dbm(),
                if verdict.detectable { "yes" } else { "no" },
                verdict.margin_db
            );
        }
        Command::Jam { config, range_km } => {
            let scenario = load_scenario(&config)?;
            let jammer = scenario
                .jammer
                .as_ref()
                .ok_or_else(|| Error::usage("scenario has no [jammer] section"))?;
            let budget = jammer_link(jammer, &scenario.radar, range_km * 1e3)?;
            print_budget(&budget);
            println!(
                "jamming power at radar: {:.2} dBW (jammer TX gain {})",
                budget.total_dbw(),
                if jammer.include_tx_gain {
                    "included"
                } else {
                    "excluded"
                }
            );
        }
        Command::Sweep {
            config,
            out,
            plot,
            linear_x,
        } => {
            let scenario = load_scenario(&config)?;
            let rows = run_sweep(&scenario)?;
            let csv = export_csv(&rows);
            match out {
                Some(path) => fs::write(&path, &csv).map_err(|e| {
                    Error::usage(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{csv}"),
            }
            if let Some(path) = plot {
                let spec = PlotSpec {
                    log_x: !linear_x,
                    threshold_db: scenario.radar.detection_threshold_snr_db,
                };
                let svg = render_plot(&rows, &spec)?;
                fs::write(&path, svg).map_err(|e| {
                    Error::usage(format!("cannot write {}: {e}", path.display()))
                })?;
            }
        }
        Command::Burnthrough {
            config,
            target,
            threshold_db,
        } => {
            let scenario = load_scenario(&config)?;
            let target = scenario.target(&target)?;
            let jammer = scenario
                .jammer
                .as_ref()
                .ok_or_else(|| Error::usage("scenario has no [jammer] section"))?;
            match burnthrough_range(&scenario.radar, jammer, target, threshold_db)? {
                Burnthrough::Range(r) => println!(
                    "burnthrough range: {:.1} m ({:.4} km) at SJR threshold {:.2} dB",
                    r,
                    r / 1e3,
                    threshold_db
                ),
                Burnthrough::NoCrossing => println!(
                    "no burnthrough: SJR never reaches {threshold_db:.2} dB inside the search bracket"
                ),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Domain(_) => ExitCode::from(2),
                Error::Config { .. } | Error::Usage(_) => ExitCode::from(1),
            }
        }
    }
}
