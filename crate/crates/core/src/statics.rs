//! Static load chain from the forearm to the yoke pins.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const STANDARD_GRAVITY: f64 = 9.81;

/// Forearm treated as a point mass on a lever about the elbow.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForearmLoad {
    /// kg
    pub mass: f64,
    /// m/s²
    pub gravity: f64,
    /// Elbow joint to forearm center of mass, m. Serves as both `d` in the
    /// pivot torque and `l_e` in the pin force.
    pub com_distance: f64,
}

impl ForearmLoad {
    pub fn new(mass: f64, gravity: f64, com_distance: f64) -> Result<Self> {
        let load = ForearmLoad {
            mass,
            gravity,
            com_distance,
        };
        load.validate()?;
        Ok(load)
    }

    /// 2.5 kg at 0.1 m, the heaviest forearm the design targets.
    pub fn prototype() -> Self {
        ForearmLoad {
            mass: 2.5,
            gravity: STANDARD_GRAVITY,
            com_distance: 0.1,
        }
    }

    pub fn with_mass(self, mass: f64) -> Self {
        ForearmLoad { mass, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass.is_finite() && self.mass >= 0.0) {
            return Err(Error::invalid(
                "forearm mass",
                format!("{} kg must be >= 0", self.mass),
            ));
        }
        if !(self.gravity.is_finite() && self.gravity > 0.0) {
            return Err(Error::invalid(
                "gravity",
                format!("{} m/s² must be > 0", self.gravity),
            ));
        }
        if !(self.com_distance.is_finite() && self.com_distance > 0.0) {
            return Err(Error::invalid(
                "forearm CoM distance",
                format!("{} m must be > 0", self.com_distance),
            ));
        }
        Ok(())
    }
}

/// Yoke-pin linkage parameters.
///
/// `lever_factor` and `string_count` are provisional readings of two symbols
/// whose meaning is not pinned down; they enter the pin force only as divisors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkageGeometry {
    /// String inclination at the yoke, radians, in (0, π/2).
    pub beta: f64,
    /// m
    pub pin_radius: f64,
    pub lever_factor: f64,
    pub string_count: u32,
}

impl LinkageGeometry {
    pub fn validate(&self) -> Result<()> {
        check_beta(self.beta)?;
        if !(self.pin_radius.is_finite() && self.pin_radius > 0.0) {
            return Err(Error::invalid(
                "pin radius",
                format!("{} m must be > 0", self.pin_radius),
            ));
        }
        if !(self.lever_factor.is_finite() && self.lever_factor > 0.0) {
            return Err(Error::invalid(
                "lever factor",
                format!("{} must be > 0", self.lever_factor),
            ));
        }
        if self.string_count < 1 {
            return Err(Error::invalid("string count", "must be >= 1"));
        }
        Ok(())
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta.is_finite() && beta > 0.0 && beta < std::f64::consts::FRAC_PI_2) {
        return Err(Error::domain(
            "linkage",
            format!(
                "beta {:.6}° must lie strictly between 0° and 90°",
                beta.to_degrees()
            ),
        ));
    }
    Ok(())
}

/// Torque about the elbow from the forearm's weight, N·m.
pub fn gravity_torque(load: &ForearmLoad) -> Result<f64> {
    load.validate()?;
    Ok(load.mass * load.gravity * load.com_distance)
}

/// Tangential force on the pin from the forearm load, N.
pub fn tangential_pin_force(load: &ForearmLoad, geom: &LinkageGeometry) -> Result<f64> {
    load.validate()?;
    geom.validate()?;
    let denominator = geom.pin_radius * geom.lever_factor * f64::from(geom.string_count);
    Ok(load.mass * load.gravity * load.com_distance * geom.beta.cos() / denominator)
}

/// Force the strings apply on the yoke to produce `tangential` at the pin, N.
pub fn yoke_force(tangential: f64, beta: f64) -> Result<f64> {
    if !(tangential.is_finite() && tangential >= 0.0) {
        return Err(Error::domain(
            "yoke_force",
            format!("tangential force {tangential} N must be >= 0"),
        ));
    }
    // β = 90° is allowed here: the string pulls straight along the tangent.
    if beta == std::f64::consts::FRAC_PI_2 {
        return Ok(tangential);
    }
    check_beta(beta)?;
    Ok(tangential / beta.sin())
}

/// One row of the torque-vs-mass table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TorquePoint {
    pub mass_kg: f64,
    pub required_torque_nm: f64,
}

/// Gravity torque over `steps` evenly spaced masses, both endpoints included.
pub fn required_torque_curve(
    mass_min: f64,
    mass_max: f64,
    steps: usize,
    template: &ForearmLoad,
) -> Result<Vec<TorquePoint>> {
    if !(mass_min.is_finite() && mass_min >= 0.0) {
        return Err(Error::invalid(
            "mass range",
            format!("minimum {mass_min} kg must be >= 0"),
        ));
    }
    if !(mass_max.is_finite() && mass_max > mass_min) {
        return Err(Error::invalid(
            "mass range",
            format!("maximum {mass_max} kg must exceed minimum {mass_min} kg"),
        ));
    }
    if steps < 2 {
        return Err(Error::invalid(
            "mass range",
            format!("{steps} steps; need at least 2"),
        ));
    }
    let span = mass_max - mass_min;
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            let mass = if i == steps - 1 {
                mass_max
            } else {
                mass_min + span * (i as f64 / last)
            };
            Ok(TorquePoint {
                mass_kg: mass,
                required_torque_nm: gravity_torque(&template.with_mass(mass))?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    use super::*;

    fn linkage(beta_deg: f64) -> LinkageGeometry {
        LinkageGeometry {
            beta: beta_deg.to_radians(),
            pin_radius: 0.01,
            lever_factor: 1.0,
            string_count: 2,
        }
    }

    #[test]
    fn gravity_torque_examples() {
        assert_relative_eq!(
            gravity_torque(&ForearmLoad::prototype()).unwrap(),
            2.4525,
            epsilon = 1e-12
        );
        assert_eq!(
            gravity_torque(&ForearmLoad::prototype().with_mass(0.0)).unwrap(),
            0.0
        );
        assert_relative_eq!(
            gravity_torque(&ForearmLoad::prototype().with_mass(2.82)).unwrap(),
            2.76642,
            epsilon = 1e-12
        );
        assert!(gravity_torque(&ForearmLoad::prototype().with_mass(-1.0)).is_err());
    }

    #[test]
    fn tangential_pin_force_examples() {
        let load = ForearmLoad::prototype();
        assert_relative_eq!(
            tangential_pin_force(&load, &linkage(60.0)).unwrap(),
            61.3125,
            max_relative = 1e-12
        );
        let nearly_flat = tangential_pin_force(&load, &linkage(90.0 - 1e-9)).unwrap();
        assert!(nearly_flat < 1e-6);
        assert!(matches!(
            tangential_pin_force(&load, &linkage(0.0)),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn yoke_force_examples() {
        assert_relative_eq!(
            yoke_force(10.0, 30f64.to_radians()).unwrap(),
            20.0,
            max_relative = 1e-12
        );
        assert_eq!(yoke_force(0.0, 0.7).unwrap(), 0.0);
        assert_relative_eq!(
            yoke_force(61.3125, 60f64.to_radians()).unwrap(),
            70.797_576_759_377_86,
            max_relative = 1e-12
        );
        assert!(yoke_force(1.0, 0.0).is_err());
        assert_eq!(yoke_force(5.0, std::f64::consts::FRAC_PI_2).unwrap(), 5.0);
    }

    #[test]
    fn torque_curve_examples() {
        let template = ForearmLoad::prototype();
        let rows = required_torque_curve(1.5, 3.0, 16, &template).unwrap();
        assert_eq!(rows.len(), 16);
        assert_relative_eq!(rows[0].required_torque_nm, 1.4715, epsilon = 1e-12);
        assert_relative_eq!(rows[15].required_torque_nm, 2.943, epsilon = 1e-12);

        let rows = required_torque_curve(1.5, 3.0, 2, &template).unwrap();
        assert_eq!((rows[0].mass_kg, rows[1].mass_kg), (1.5, 3.0));

        let rows = required_torque_curve(1.0, 1.0 + 1e-9, 3, &template).unwrap();
        for row in rows {
            assert_relative_eq!(row.required_torque_nm, 0.981, epsilon = 1e-9);
        }

        assert!(required_torque_curve(2.5, 2.5, 4, &template).is_err());
        assert!(required_torque_curve(1.0, 2.0, 1, &template).is_err());
    }

    proptest! {
        #[test]
        fn gravity_torque_linear(m in 0.0f64..10.0, g in 0.1f64..20.0, d in 0.01f64..1.0, k in 0.1f64..10.0) {
            let base = gravity_torque(&ForearmLoad::new(m, g, d).unwrap()).unwrap();
            for scaled in [
                ForearmLoad::new(k * m, g, d).unwrap(),
                ForearmLoad::new(m, k * g, d).unwrap(),
                ForearmLoad::new(m, g, k * d).unwrap(),
            ] {
                let t = gravity_torque(&scaled).unwrap();
                prop_assert!((t - k * base).abs() <= 1e-12 * t.abs().max(1e-300));
            }
        }

        #[test]
        fn yoke_force_dominates_tangential(ft in 0.0f64..1e4, beta_deg in 0.01f64..90.0) {
            prop_assert!(yoke_force(ft, beta_deg.to_radians()).unwrap() >= ft * (1.0 - 1e-15));
        }

        #[test]
        fn pin_force_inverts(m in 0.01f64..10.0, beta_deg in 1.0f64..89.0, rp in 0.001f64..0.1, l in 0.1f64..5.0, n in 1u32..6) {
            let load = ForearmLoad::new(m, STANDARD_GRAVITY, 0.1).unwrap();
            let geom = LinkageGeometry { beta: beta_deg.to_radians(), pin_radius: rp, lever_factor: l, string_count: n };
            let ft = tangential_pin_force(&load, &geom).unwrap();
            let recovered = ft * (rp * l * f64::from(n)) / geom.beta.cos();
            let expected = m * STANDARD_GRAVITY * 0.1;
            prop_assert!((recovered - expected).abs() <= 1e-12 * expected);
        }

        #[test]
        fn curve_strictly_increasing(lo in 0.0f64..5.0, width in 0.01f64..5.0, steps in 2usize..64) {
            let rows = required_torque_curve(lo, lo + width, steps, &ForearmLoad::prototype()).unwrap();
            prop_assert_eq!(rows.len(), steps);
            for pair in rows.windows(2) {
                prop_assert!(pair[1].required_torque_nm > pair[0].required_torque_nm);
            }
        }
    }
}
