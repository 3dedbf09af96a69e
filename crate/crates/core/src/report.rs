//! Text reports and CSV output behind the command-line subcommands.
//!
//! Every function here returns the report text instead of printing it, so the
//! binary stays a thin shell and the output can be compared in tests.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use crate::config::ProjectConfig;
use crate::controller::{run, SimEvent, SimTrace};
use crate::error::{Error, Result};
use crate::motor::{default_catalog, load_catalog, select_motor};
use crate::statics::{
    gravity_torque, required_torque_curve, tangential_pin_force, yoke_force, TorquePoint,
};
use crate::tsa::StringSpec;

/// Design values quoted for the prototype; shown next to computed results
/// and never substituted for them.
pub mod reported {
    /// Required elbow torque for a 2.5 kg forearm at 0.1 m, N·m.
    pub const GRAVITY_TORQUE_NM: f64 = 2.77;
    /// Twist angle, degrees.
    pub const TWIST_DEG: f64 = 69.7;
    /// Contracted length of the 0.035 m string, m.
    pub const CONTRACTED_LENGTH_M: f64 = 0.033;
    /// Motor torque from rated power and speed, N·m.
    pub const MOTOR_TORQUE_NM: f64 = 2.92;
}

pub const TRACE_HEADER: &str =
    "time_s,state,motor_angle_rad,encoder_count,joint_angle_deg,top_string_m,bottom_string_m";
pub const SWEEP_HEADER: &str = "mass_kg,required_torque_nm";

/// Format with six significant digits, trailing zeros removed.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim_fraction(format!("{x:.decimals$}"))
    } else {
        let s = format!("{x:.5e}");
        let (mantissa, exponent) = s.split_once('e').expect("scientific format");
        format!("{}e{exponent}", trim_fraction(mantissa.to_owned()))
    }
}

fn trim_fraction(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s
    }
}

/// Write `contents` to a temporary sibling of `path`, then rename it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_owned(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(contents).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

pub fn cmd_statics(config: &ProjectConfig) -> Result<String> {
    let geom = config.linkage()?;
    let load = &config.forearm;
    let torque = gravity_torque(load)?;
    let tangential = tangential_pin_force(load, &geom)?;
    let yoke = yoke_force(tangential, geom.beta)?;

    let mut out = String::new();
    writeln!(
        out,
        "forearm: mass {} kg, CoM distance {} m, g {} m/s²",
        sig6(load.mass),
        sig6(load.com_distance),
        sig6(load.gravity)
    )
    .unwrap();
    writeln!(
        out,
        "linkage: beta {}°, pin radius {} m, l {}, n {}",
        sig6(geom.beta.to_degrees()),
        sig6(geom.pin_radius),
        sig6(geom.lever_factor),
        geom.string_count
    )
    .unwrap();
    writeln!(out, "gravity torque m·g·d:       {} N·m", sig6(torque)).unwrap();
    writeln!(out, "tangential pin force F_t:   {} N", sig6(tangential)).unwrap();
    writeln!(out, "yoke force F_m = F_t/sin β: {} N", sig6(yoke)).unwrap();
    writeln!(
        out,
        "note: reported design torque is {} N·m; m·g·d with m = 2.5 kg, d = 0.1 m gives 2.4525 N·m",
        sig6(reported::GRAVITY_TORQUE_NM)
    )
    .unwrap();
    for warning in config.warnings() {
        writeln!(out, "warning: {warning}").unwrap();
    }
    Ok(out)
}

pub fn sweep_csv(rows: &[TorquePoint]) -> String {
    let mut csv = String::with_capacity(32 * (rows.len() + 1));
    csv.push_str(SWEEP_HEADER);
    csv.push('\n');
    for row in rows {
        writeln!(csv, "{},{}", row.mass_kg, row.required_torque_nm).unwrap();
    }
    csv
}

pub fn cmd_sweep(
    config: &ProjectConfig,
    mass_min: f64,
    mass_max: f64,
    steps: usize,
    out_path: &Path,
) -> Result<String> {
    let rows = required_torque_curve(mass_min, mass_max, steps, &config.forearm)?;
    write_atomic(out_path, sweep_csv(&rows).as_bytes())?;
    let (first, last) = (rows[0], rows[rows.len() - 1]);
    Ok(format!(
        "wrote {} rows to {}\nrequired torque {} N·m at {} kg → {} N·m at {} kg\n",
        rows.len(),
        out_path.display(),
        sig6(first.required_torque_nm),
        sig6(first.mass_kg),
        sig6(last.required_torque_nm),
        sig6(last.mass_kg)
    ))
}

/// Operating point for the `tsa` report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TsaQuery {
    /// Twist in radians.
    Twist(f64),
    /// Target contracted length in meters.
    Contraction(f64),
}

impl TsaQuery {
    pub fn from_flags(
        theta_rad: Option<f64>,
        theta_deg: Option<f64>,
        contraction_m: Option<f64>,
    ) -> Result<Self> {
        match (theta_rad, theta_deg, contraction_m) {
            (Some(t), None, None) => Ok(TsaQuery::Twist(t)),
            (None, Some(d), None) => Ok(TsaQuery::Twist(d.to_radians())),
            (None, None, Some(x)) => Ok(TsaQuery::Contraction(x)),
            (None, None, None) => Err(Error::MissingParameter(
                "one of --theta-rad, --theta-deg, --contraction-m".into(),
            )),
            _ => Err(Error::invalid(
                "flags",
                "--theta-rad, --theta-deg and --contraction-m are mutually exclusive",
            )),
        }
    }
}

pub fn cmd_tsa(config: &ProjectConfig, query: TsaQuery) -> Result<String> {
    let string = &config.string;
    let theta = match query {
        TsaQuery::Twist(t) => t,
        TsaQuery::Contraction(x) => string.twist_for_contraction(x)?,
    };
    let state = string.twist_state(theta)?;

    let mut out = String::new();
    writeln!(
        out,
        "string: length {} m, radius {} m, capacity {} rad",
        sig6(string.untwisted_length),
        sig6(string.radius),
        sig6(string.max_twist())
    )
    .unwrap();
    writeln!(
        out,
        "twist θ:            {} rad ({}°)",
        sig6(state.twist_angle),
        sig6(state.twist_angle.to_degrees())
    )
    .unwrap();
    writeln!(
        out,
        "contracted length X: {} m",
        sig6(state.contracted_length)
    )
    .unwrap();
    writeln!(
        out,
        "helix angle α:      {} rad ({}°)",
        sig6(state.helix_angle),
        sig6(state.helix_angle.to_degrees())
    )
    .unwrap();
    if theta == 0.0 {
        writeln!(out, "transmission ratio F_m/τ_m: singular at zero twist").unwrap();
    } else {
        writeln!(
            out,
            "transmission ratio F_m/τ_m: {} N per N·m",
            sig6(string.transmission_ratio(theta)?)
        )
        .unwrap();
        writeln!(
            out,
            "pull force at {} N·m: {} N",
            sig6(reported::MOTOR_TORQUE_NM),
            sig6(string.pull_force(theta, reported::MOTOR_TORQUE_NM)?)
        )
        .unwrap();
    }
    if *string == StringSpec::prototype() {
        let reported_twist = reported::TWIST_DEG.to_radians();
        writeln!(
            out,
            "note: reported twist {}° gives X = {} m here; reported X = {} m needs θ = {} rad",
            sig6(reported::TWIST_DEG),
            sig6(string.contracted_length(reported_twist)?),
            sig6(reported::CONTRACTED_LENGTH_M),
            sig6(string.twist_for_contraction(reported::CONTRACTED_LENGTH_M)?)
        )
        .unwrap();
    }
    Ok(out)
}

pub fn trace_csv(trace: &SimTrace) -> String {
    let mut csv = String::with_capacity(96 * (trace.rows.len() + 1));
    csv.push_str(TRACE_HEADER);
    csv.push('\n');
    for r in &trace.rows {
        writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            r.time,
            r.phase,
            r.motor_angle,
            r.encoder_count,
            r.joint_angle_deg,
            r.top_string,
            r.bottom_string
        )
        .unwrap();
    }
    csv
}

pub fn trace_summary(trace: &SimTrace) -> String {
    let mut out = String::new();
    let many = trace.sessions.len() > 1;
    for (i, s) in trace.sessions.iter().enumerate() {
        if many {
            write!(out, "session {}: ", i + 1).unwrap();
        }
        writeln!(
            out,
            "{} cycle{}, stopped at {:.2} s, reason: {}",
            s.cycles_completed,
            if s.cycles_completed == 1 { "" } else { "s" },
            s.stop_time,
            s.reason
        )
        .unwrap();
    }
    out
}

pub fn cmd_simulate(
    config: &ProjectConfig,
    events: &[SimEvent],
    out_path: &Path,
) -> Result<String> {
    let trace = run(&config.controller, events, &config.plant())?;
    write_atomic(out_path, trace_csv(&trace).as_bytes())?;
    let mut out = trace_summary(&trace);
    writeln!(
        out,
        "wrote {} rows to {}",
        trace.rows.len(),
        out_path.display()
    )
    .unwrap();
    Ok(out)
}

pub fn cmd_select_motor(catalog_path: Option<&Path>, required_torque: f64) -> Result<String> {
    let catalog = match catalog_path {
        Some(p) => load_catalog(p)?,
        None => default_catalog(),
    };
    let motor = select_motor(&catalog, required_torque)?;
    let mut out = String::new();
    writeln!(out, "required torque: {} N·m", sig6(required_torque)).unwrap();
    writeln!(
        out,
        "selected: {} (rated {} N·m, {} W at {} rad/s, {} V, {} PPR, gear {})",
        motor.name,
        sig6(motor.rated_torque),
        sig6(motor.rated_power),
        sig6(motor.rated_speed),
        sig6(motor.supply_voltage),
        motor.encoder_ppr,
        sig6(motor.gear_ratio)
    )
    .unwrap();
    writeln!(
        out,
        "margin: {} N·m",
        sig6(motor.rated_torque - required_torque)
    )
    .unwrap();
    if catalog_path.is_none() {
        writeln!(
            out,
            "note: built-in catalog entries are illustrative, not datasheet values"
        )
        .unwrap();
    }
    Ok(out)
}
