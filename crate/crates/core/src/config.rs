//! Project configuration: a nested JSON document plus dotted-key overrides.
//!
//! ```json
//! {
//!   "forearm":    { "mass_kg": 2.5, "com_distance_m": 0.1, "gravity": 9.81 },
//!   "string":     { "length_m": 0.035, "radius_m": 0.001 },
//!   "linkage":    { "beta_deg": 60, "pin_radius_m": 0.01, "lever_l": 1, "n_strings": 2 },
//!   "motor":      { "catalog": "motors.json", "name": "GM37-520 3Nm (illustrative)" },
//!   "controller": { "cw_s": 3, "ccw_s": 3, "pause_s": 5, "max_cycles": 5,
//!                   "motor_speed_rad_s": 6.283185307179586, "joint_limit_deg": 50 },
//!   "sim":        { "dt_s": 0.01 }
//! }
//! ```
//!
//! Every key is optional. `linkage.beta_deg` has no default; commands that
//! need it fail with a missing-parameter error.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::{Map, Value};

use crate::controller::{ControllerConfig, Plant};
use crate::error::{Error, Result};
use crate::motor::{default_catalog, load_catalog, EncoderSpec, MotorSpec};
use crate::statics::{gravity_torque, ForearmLoad, LinkageGeometry};
use crate::tsa::StringSpec;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    forearm: RawForearm,
    #[serde(default)]
    string: RawString,
    #[serde(default)]
    linkage: RawLinkage,
    motor: Option<RawMotor>,
    #[serde(default)]
    controller: RawController,
    #[serde(default)]
    sim: RawSim,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawForearm {
    mass_kg: Option<f64>,
    com_distance_m: Option<f64>,
    gravity: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawString {
    length_m: Option<f64>,
    radius_m: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLinkage {
    beta_deg: Option<f64>,
    pin_radius_m: Option<f64>,
    lever_l: Option<f64>,
    n_strings: Option<u32>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMotor {
    catalog: Option<PathBuf>,
    name: Option<String>,
    rated_power_w: Option<f64>,
    rated_speed_rad_s: Option<f64>,
    rated_torque_nm: Option<f64>,
    voltage_v: Option<f64>,
    ppr: Option<u32>,
    gear_ratio: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawController {
    cw_s: Option<f64>,
    ccw_s: Option<f64>,
    pause_s: Option<f64>,
    max_cycles: Option<u32>,
    motor_speed_rad_s: Option<f64>,
    joint_limit_deg: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSim {
    dt_s: Option<f64>,
}

/// Linkage inputs before `beta` is known to be present.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkageInputs {
    /// radians
    pub beta: Option<f64>,
    pub pin_radius: f64,
    pub lever_factor: f64,
    pub string_count: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectConfig {
    pub forearm: ForearmLoad,
    pub string: StringSpec,
    pub linkage: LinkageInputs,
    pub motor: Option<MotorSpec>,
    pub controller: ControllerConfig,
}

impl Default for ProjectConfig {
    fn default() -> Self {
        ProjectConfig {
            forearm: ForearmLoad::prototype(),
            string: StringSpec::prototype(),
            linkage: LinkageInputs {
                beta: None,
                pin_radius: 0.01,
                lever_factor: 1.0,
                string_count: 2,
            },
            motor: None,
            controller: ControllerConfig::default(),
        }
    }
}

impl ProjectConfig {
    /// Load `path` (if any) and apply `key=value` overrides on top.
    pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<Self> {
        let (mut doc, origin, base_dir) = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|source| Error::Io {
                    path: p.to_owned(),
                    source,
                })?;
                let doc: Value = serde_json::from_str(&text).map_err(|source| Error::Json {
                    path: p.display().to_string(),
                    source,
                })?;
                let dir = p.parent().map(Path::to_path_buf).unwrap_or_default();
                (doc, p.display().to_string(), dir)
            }
            None => (
                Value::Object(Map::new()),
                "<defaults>".to_owned(),
                PathBuf::new(),
            ),
        };
        for item in overrides {
            apply_override(&mut doc, item)?;
        }
        Self::from_value(doc, &origin, &base_dir)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc = serde_json::from_str(text).map_err(|source| Error::Json {
            path: "<inline>".to_owned(),
            source,
        })?;
        Self::from_value(doc, "<inline>", Path::new(""))
    }

    fn from_value(doc: Value, origin: &str, base_dir: &Path) -> Result<Self> {
        let raw: RawConfig = serde_json::from_value(doc).map_err(|source| Error::Json {
            path: origin.to_owned(),
            source,
        })?;
        let defaults = ProjectConfig::default();

        let forearm = ForearmLoad {
            mass: raw.forearm.mass_kg.unwrap_or(defaults.forearm.mass),
            gravity: raw.forearm.gravity.unwrap_or(defaults.forearm.gravity),
            com_distance: raw
                .forearm
                .com_distance_m
                .unwrap_or(defaults.forearm.com_distance),
        };
        forearm.validate()?;

        let string = StringSpec {
            untwisted_length: raw
                .string
                .length_m
                .unwrap_or(defaults.string.untwisted_length),
            radius: raw.string.radius_m.unwrap_or(defaults.string.radius),
        };
        string.validate()?;

        let linkage = LinkageInputs {
            beta: raw.linkage.beta_deg.map(f64::to_radians),
            pin_radius: raw
                .linkage
                .pin_radius_m
                .unwrap_or(defaults.linkage.pin_radius),
            lever_factor: raw.linkage.lever_l.unwrap_or(defaults.linkage.lever_factor),
            string_count: raw
                .linkage
                .n_strings
                .unwrap_or(defaults.linkage.string_count),
        };

        let motor = raw.motor.map(|m| resolve_motor(m, base_dir)).transpose()?;

        let c = raw.controller;
        let d = defaults.controller;
        let controller = ControllerConfig {
            cw_duration: c.cw_s.unwrap_or(d.cw_duration),
            ccw_duration: c.ccw_s.unwrap_or(d.ccw_duration),
            pause_duration: c.pause_s.unwrap_or(d.pause_duration),
            max_cycles: c.max_cycles.unwrap_or(d.max_cycles),
            motor_speed: c.motor_speed_rad_s.unwrap_or(d.motor_speed),
            time_step: raw.sim.dt_s.unwrap_or(d.time_step),
            joint_limit: c.joint_limit_deg.unwrap_or(d.joint_limit),
        };
        controller.schedule()?;

        Ok(ProjectConfig {
            forearm,
            string,
            linkage,
            motor,
            controller,
        })
    }

    /// Complete linkage geometry; fails if `linkage.beta_deg` was never given.
    pub fn linkage(&self) -> Result<LinkageGeometry> {
        let beta = self
            .linkage
            .beta
            .ok_or_else(|| Error::MissingParameter("linkage.beta_deg".into()))?;
        let geom = LinkageGeometry {
            beta,
            pin_radius: self.linkage.pin_radius,
            lever_factor: self.linkage.lever_factor,
            string_count: self.linkage.string_count,
        };
        geom.validate()?;
        Ok(geom)
    }

    pub fn plant(&self) -> Plant {
        Plant {
            string: self.string,
            pin_radius: self.linkage.pin_radius,
            encoder: self
                .motor
                .as_ref()
                .map(EncoderSpec::from)
                .unwrap_or(EncoderSpec {
                    ppr: 11,
                    gear_ratio: 1.0,
                }),
        }
    }

    /// Non-fatal consistency findings.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let (Some(motor), Ok(required)) = (&self.motor, gravity_torque(&self.forearm)) {
            if motor.rated_torque < required {
                out.push(format!(
                    "motor {:?} is rated {} N·m, below the {} N·m gravity torque",
                    motor.name, motor.rated_torque, required
                ));
            }
        }
        out
    }
}

fn resolve_motor(raw: RawMotor, base_dir: &Path) -> Result<MotorSpec> {
    let mut motor = match &raw.catalog {
        Some(catalog) => {
            let name = raw
                .name
                .clone()
                .ok_or_else(|| Error::MissingParameter("motor.name".into()))?;
            let path = base_dir.join(catalog);
            load_catalog(&path)?
                .into_iter()
                .find(|m| m.name == name)
                .ok_or_else(|| {
                    Error::invalid("motor", format!("{name:?} not found in {}", path.display()))
                })?
        }
        None => default_catalog().swap_remove(1),
    };
    if let Some(name) = raw.name {
        motor.name = name;
    }
    if let Some(v) = raw.rated_power_w {
        motor.rated_power = v;
    }
    if let Some(v) = raw.rated_speed_rad_s {
        motor.rated_speed = v;
    }
    if let Some(v) = raw.rated_torque_nm {
        motor.rated_torque = v;
    }
    if let Some(v) = raw.voltage_v {
        motor.supply_voltage = v;
    }
    if let Some(v) = raw.ppr {
        motor.encoder_ppr = v;
    }
    if let Some(v) = raw.gear_ratio {
        motor.gear_ratio = v;
    }
    motor.validate()?;
    Ok(motor)
}

/// Set a dotted key such as `linkage.beta_deg=60`. Values are read as JSON
/// when they parse, otherwise as plain strings.
pub fn apply_override(doc: &mut Value, item: &str) -> Result<()> {
    let (key, value) = item
        .split_once('=')
        .ok_or_else(|| Error::invalid("override", format!("{item:?} is not key=value")))?;
    let value = serde_json::from_str(value.trim())
        .unwrap_or_else(|_| Value::String(value.trim().to_owned()));
    let mut parts = key.trim().split('.').peekable();
    let mut node = doc;
    while let Some(part) = parts.next() {
        if part.is_empty() {
            return Err(Error::invalid(
                "override",
                format!("empty path segment in {key:?}"),
            ));
        }
        let map = match node {
            Value::Object(map) => map,
            _ => {
                return Err(Error::invalid(
                    "override",
                    format!("{key:?} descends into a non-object"),
                ))
            }
        };
        if parts.peek().is_none() {
            map.insert(part.to_owned(), value);
            return Ok(());
        }
        node = map
            .entry(part.to_owned())
            .or_insert_with(|| Value::Object(Map::new()));
    }
    Err(Error::invalid("override", "empty key"))
}
