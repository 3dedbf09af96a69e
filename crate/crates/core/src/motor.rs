//! Motor power/torque relation, catalog selection and an ideal encoder.

use std::cmp::Ordering;
use std::f64::consts::TAU;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One catalog entry. Field names match the catalog file keys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotorSpec {
    pub name: String,
    #[serde(rename = "rated_power_w")]
    pub rated_power: f64,
    #[serde(rename = "rated_speed_rad_s")]
    pub rated_speed: f64,
    #[serde(rename = "rated_torque_nm")]
    pub rated_torque: f64,
    #[serde(rename = "voltage_v")]
    pub supply_voltage: f64,
    #[serde(rename = "ppr")]
    pub encoder_ppr: u32,
    pub gear_ratio: f64,
}

impl MotorSpec {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("rated_power_w", self.rated_power),
            ("rated_speed_rad_s", self.rated_speed),
            ("rated_torque_nm", self.rated_torque),
            ("voltage_v", self.supply_voltage),
        ];
        for (key, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::invalid(
                    "motor",
                    format!("{}: {key} = {value} must be > 0", self.name),
                ));
            }
        }
        if self.encoder_ppr == 0 {
            return Err(Error::invalid(
                "motor",
                format!("{}: ppr must be > 0", self.name),
            ));
        }
        if !(self.gear_ratio.is_finite() && self.gear_ratio >= 1.0) {
            return Err(Error::invalid(
                "motor",
                format!(
                    "{}: gear_ratio = {} must be >= 1",
                    self.name, self.gear_ratio
                ),
            ));
        }
        if self.rated_torque * self.rated_speed > self.rated_power * (1.0 + 1e-9) {
            return Err(Error::invalid(
                "motor",
                format!(
                    "{}: torque × speed = {} W exceeds rated power {} W",
                    self.name,
                    self.rated_torque * self.rated_speed,
                    self.rated_power
                ),
            ));
        }
        Ok(())
    }
}

/// Illustrative catalog around a 3 N·m 12 V encoder gear motor.
///
/// The power and speed figures are placeholders, not datasheet values.
pub fn default_catalog() -> Vec<MotorSpec> {
    let entry = |name: &str, torque: f64, power: f64| MotorSpec {
        name: name.to_owned(),
        rated_power: power,
        rated_speed: 12.0,
        rated_torque: torque,
        supply_voltage: 12.0,
        encoder_ppr: 11,
        gear_ratio: 1.0,
    };
    vec![
        entry("GM37-520 2Nm (illustrative)", 2.0, 24.0),
        entry("GM37-520 3Nm (illustrative)", 3.0, 36.0),
        entry("GM37-520 5Nm (illustrative)", 5.0, 60.0),
    ]
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CatalogFile {
    List(Vec<MotorSpec>),
    Wrapped { motors: Vec<MotorSpec> },
}

/// Parse a catalog: either a JSON array of motors or `{"motors": [...]}`.
pub fn parse_catalog(text: &str, origin: &str) -> Result<Vec<MotorSpec>> {
    let file: CatalogFile = serde_json::from_str(text).map_err(|source| Error::Json {
        path: origin.to_owned(),
        source,
    })?;
    let motors = match file {
        CatalogFile::List(m) | CatalogFile::Wrapped { motors: m } => m,
    };
    if motors.is_empty() {
        return Err(Error::invalid(
            "motor catalog",
            format!("{origin} lists no motors"),
        ));
    }
    for motor in &motors {
        motor.validate()?;
    }
    Ok(motors)
}

pub fn load_catalog(path: &Path) -> Result<Vec<MotorSpec>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_catalog(&text, &path.display().to_string())
}

/// Torque delivered at `power` watts and `speed` rad/s.
pub fn torque_from_power(power: f64, speed: f64) -> Result<f64> {
    if !(power.is_finite() && power >= 0.0) {
        return Err(Error::domain(
            "torque_from_power",
            format!("power {power} W must be >= 0"),
        ));
    }
    if !(speed.is_finite() && speed > 0.0) {
        return Err(Error::domain(
            "torque_from_power",
            format!("speed {speed} rad/s must be > 0"),
        ));
    }
    Ok(power / speed)
}

/// Weakest motor whose rated torque still covers `required_torque`.
///
/// Ties go to the lower rated power, then to the lexicographically smaller
/// name, so the pick does not depend on catalog order.
pub fn select_motor(catalog: &[MotorSpec], required_torque: f64) -> Result<&MotorSpec> {
    if catalog.is_empty() {
        return Err(Error::invalid("motor catalog", "catalog is empty"));
    }
    if !required_torque.is_finite() {
        return Err(Error::invalid(
            "required torque",
            format!("{required_torque} N·m"),
        ));
    }
    catalog
        .iter()
        .filter(|m| m.rated_torque >= required_torque)
        .min_by(|a, b| {
            a.rated_torque
                .total_cmp(&b.rated_torque)
                .then(a.rated_power.total_cmp(&b.rated_power))
                .then_with(|| a.name.cmp(&b.name))
        })
        .ok_or_else(|| Error::NoFeasibleMotor {
            required_nm: required_torque,
            best_nm: catalog
                .iter()
                .map(|m| m.rated_torque)
                .max_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal))
                .unwrap_or(0.0),
        })
}

/// Encoder resolution as seen from the output shaft.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EncoderSpec {
    /// Pulses per motor (pre-gearbox) revolution.
    pub ppr: u32,
    pub gear_ratio: f64,
}

impl EncoderSpec {
    pub fn pulses_per_output_rev(&self) -> f64 {
        f64::from(self.ppr) * self.gear_ratio
    }

    /// Ideal count for a cumulative output-shaft angle, rounded half away from zero.
    pub fn count_at(&self, output_angle: f64) -> i64 {
        (output_angle / TAU * self.pulses_per_output_rev()).round() as i64
    }
}

impl From<&MotorSpec> for EncoderSpec {
    fn from(m: &MotorSpec) -> Self {
        EncoderSpec {
            ppr: m.encoder_ppr,
            gear_ratio: m.gear_ratio,
        }
    }
}

/// Pulses counted while the output shaft turns at `speed` for `duration` seconds.
pub fn encoder_count(speed: f64, duration: f64, ppr: u32, gear_ratio: f64) -> Result<i64> {
    if !(duration.is_finite() && duration >= 0.0) {
        return Err(Error::domain(
            "encoder_count",
            format!("duration {duration} s must be >= 0"),
        ));
    }
    Ok(EncoderSpec { ppr, gear_ratio }.count_at(speed * duration))
}

/// Running pulse count and last direction of travel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EncoderState {
    pub count: i64,
    /// +1 for clockwise (twisting), −1 for counterclockwise.
    pub direction: i8,
}
