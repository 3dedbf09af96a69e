use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tsa_exo::command::{commands_to_events, load_event_script};
use tsa_exo::report::{cmd_select_motor, cmd_simulate, cmd_statics, cmd_sweep, cmd_tsa, TsaQuery};
use tsa_exo::{Error, ProjectConfig};

#[derive(Parser)]
#[command(
    name = "tsa-exo",
    version,
    about = "TSA elbow exoskeleton design analysis and controller simulation"
)]
struct Cli {
    /// JSON project configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override a config key, e.g. `--set linkage.beta_deg=60`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    overrides: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gravity torque and yoke-pin forces for the configured forearm.
    Statics {
        /// String inclination at the yoke, degrees (same as `--set linkage.beta_deg=`).
        #[arg(long)]
        beta_deg: Option<f64>,
        #[arg(long)]
        mass_kg: Option<f64>,
    },
    /// Required elbow torque over a range of forearm masses, as CSV.
    Sweep {
        #[arg(long, default_value_t = 1.5)]
        mass_min: f64,
        #[arg(long, default_value_t = 3.0)]
        mass_max: f64,
        #[arg(long, default_value_t = 16)]
        steps: usize,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// String geometry and transmission at one operating point.
    Tsa {
        #[arg(long)]
        theta_rad: Option<f64>,
        #[arg(long)]
        theta_deg: Option<f64>,
        #[arg(long)]
        contraction_m: Option<f64>,
    },
    /// Run the controller against an event script and write the trace CSV.
    Simulate {
        /// `<time_s> <ACTIVATE|DEACTIVATE|INTERRUPT>` per line.
        #[arg(long, conflicts_with = "commands")]
        events: Option<PathBuf>,
        /// Read ACTIVATE/DEACTIVATE command lines from this file (`-` for stdin),
        /// one every `--interval` seconds.
        #[arg(long)]
        commands: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        interval: f64,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Pick the smallest catalog motor that covers a torque requirement.
    SelectMotor {
        /// JSON motor catalog; the built-in illustrative catalog when omitted.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// N·m; defaults to the configured forearm's gravity torque.
        #[arg(long)]
        required_torque: Option<f64>,
    },
}

fn read_input(path: &PathBuf) -> Result<String, Error> {
    let io_err = |source| Error::Io {
        path: path.clone(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(io_err)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

fn execute(cli: Cli) -> Result<String, Error> {
    let mut overrides = cli.overrides;
    if let Command::Statics { beta_deg, mass_kg } = &cli.command {
        overrides.extend(beta_deg.map(|b| format!("linkage.beta_deg={b}")));
        overrides.extend(mass_kg.map(|m| format!("forearm.mass_kg={m}")));
    }
    let config = ProjectConfig::load(cli.config.as_deref(), &overrides)?;

    match cli.command {
        Command::Statics { .. } => cmd_statics(&config),
        Command::Sweep {
            mass_min,
            mass_max,
            steps,
            out,
        } => cmd_sweep(&config, mass_min, mass_max, steps, &out),
        Command::Tsa {
            theta_rad,
            theta_deg,
            contraction_m,
        } => cmd_tsa(
            &config,
            TsaQuery::from_flags(theta_rad, theta_deg, contraction_m)?,
        ),
        Command::Simulate {
            events,
            commands,
            interval,
            out,
        } => {
            let events = match (events, commands) {
                (Some(path), _) => load_event_script(&path)?,
                (None, Some(path)) => commands_to_events(&read_input(&path)?, 0.0, interval)?,
                (None, None) => {
                    return Err(Error::MissingParameter("--events or --commands".into()))
                }
            };
            cmd_simulate(&config, &events, &out)
        }
        Command::SelectMotor {
            catalog,
            required_torque,
        } => {
            let required = match required_torque {
                Some(t) => t,
                None => tsa_exo::statics::gravity_torque(&config.forearm)?,
            };
            cmd_select_motor(catalog.as_deref(), required)
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error[{}]: {err}", err.category());
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
