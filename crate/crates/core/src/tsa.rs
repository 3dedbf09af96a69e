//! Twisted-string geometry and the torque-to-force transmission.
//!
//! The twisted pair is treated as one effective string of radius `r` and
//! untwisted length `L`. Twisting it by `θ` radians shortens it to
//! `X = sqrt(L² − θ²r²) = L·cos α`, where `α` is the helix angle, and a motor
//! torque `τ` holds a pull `F` according to `τ = F·θ·r² / X`.
//!
//! All angles are radians. The geometry is defined on `θ ∈ [0, L/r)`; the
//! force transmission on the open interval `(0, L/r)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bisection stops once the bracket is narrower than this many radians.
pub const TWIST_TOLERANCE_RAD: f64 = 1e-10;
pub const MAX_BISECTION_ITERATIONS: usize = 200;

/// Untwisted geometry of one string (pair).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StringSpec {
    /// Untwisted length in meters.
    pub untwisted_length: f64,
    /// Effective string radius in meters.
    pub radius: f64,
}

impl StringSpec {
    pub fn new(untwisted_length: f64, radius: f64) -> Result<Self> {
        let spec = StringSpec {
            untwisted_length,
            radius,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// 3.5 cm of 2 mm braided twine.
    pub fn prototype() -> Self {
        StringSpec {
            untwisted_length: 0.035,
            radius: 0.001,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (l, r) = (self.untwisted_length, self.radius);
        if !(l.is_finite() && l > 0.0) {
            return Err(Error::invalid(
                "string length",
                format!("{l} m must be > 0"),
            ));
        }
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::invalid(
                "string radius",
                format!("{r} m must be > 0"),
            ));
        }
        if r >= l {
            return Err(Error::invalid(
                "string radius",
                format!("{r} m must be smaller than the length {l} m"),
            ));
        }
        Ok(())
    }

    /// Twist at which the string is fully consumed, `L/r`.
    pub fn max_twist(&self) -> f64 {
        self.untwisted_length / self.radius
    }

    fn check_geometry_twist(&self, op: &'static str, theta: f64) -> Result<()> {
        if !(theta.is_finite() && theta >= 0.0) {
            return Err(Error::domain(op, format!("twist {theta} rad must be >= 0")));
        }
        if theta * self.radius >= self.untwisted_length {
            return Err(Error::domain(
                op,
                format!(
                    "twist {theta} rad consumes the whole string (limit {} rad)",
                    self.max_twist()
                ),
            ));
        }
        Ok(())
    }

    fn check_transmission_twist(&self, op: &'static str, theta: f64) -> Result<()> {
        if theta == 0.0 {
            return Err(Error::domain(
                op,
                "untwisted string transmits no static pull from torque",
            ));
        }
        self.check_geometry_twist(op, theta)
    }

    fn check_length(&self, op: &'static str, length: f64) -> Result<()> {
        if !(length.is_finite() && length > 0.0 && length <= self.untwisted_length) {
            return Err(Error::domain(
                op,
                format!("length {length} m outside (0, {}] m", self.untwisted_length),
            ));
        }
        Ok(())
    }

    /// Length `X` of the string after twisting by `theta`.
    pub fn contracted_length(&self, theta: f64) -> Result<f64> {
        self.check_geometry_twist("contracted_length", theta)?;
        let (l, wound) = (self.untwisted_length, theta * self.radius);
        // (L − θr)(L + θr) avoids squaring two nearly equal terms.
        Ok(((l - wound) * (l + wound)).sqrt())
    }

    /// Twist needed to shorten the string to `target_length`.
    pub fn twist_for_contraction(&self, target_length: f64) -> Result<f64> {
        self.check_length("twist_for_contraction", target_length)?;
        let l = self.untwisted_length;
        Ok(((l - target_length) * (l + target_length)).sqrt() / self.radius)
    }

    /// Helix angle `α` of a string twisted down to `contracted`.
    pub fn helix_angle(&self, contracted: f64) -> Result<f64> {
        self.check_length("helix_angle", contracted)?;
        Ok((contracted / self.untwisted_length).acos())
    }

    /// Motor torque needed to hold `pull_force` newtons at twist `theta`.
    ///
    /// Zero twist returns zero torque: the transmission ratio is unbounded there.
    pub fn motor_torque(&self, theta: f64, pull_force: f64) -> Result<f64> {
        if !(pull_force.is_finite() && pull_force >= 0.0) {
            return Err(Error::domain(
                "motor_torque",
                format!("pull force {pull_force} N must be >= 0"),
            ));
        }
        let x = self.contracted_length(theta)?;
        Ok(pull_force * theta * self.radius * self.radius / x)
    }

    /// Pull force held by `motor_torque` at twist `theta`.
    pub fn pull_force(&self, theta: f64, motor_torque: f64) -> Result<f64> {
        if !(motor_torque.is_finite() && motor_torque >= 0.0) {
            return Err(Error::domain(
                "pull_force",
                format!("motor torque {motor_torque} N·m must be >= 0"),
            ));
        }
        Ok(motor_torque * self.transmission_ratio(theta)?)
    }

    /// Force per unit torque, `F/τ = X / (θ r²)`, in 1/m.
    pub fn transmission_ratio(&self, theta: f64) -> Result<f64> {
        self.check_transmission_twist("transmission_ratio", theta)?;
        let x = self.contracted_length(theta)?;
        Ok(x / (theta * self.radius * self.radius))
    }

    /// Twist at which `motor_torque` balances `pull_force`.
    ///
    /// Torque is strictly increasing in twist on `(0, L/r)` and diverges at
    /// the upper end, so the root is unique and bisection always brackets it.
    pub fn solve_twist_angle(&self, motor_torque: f64, pull_force: f64) -> Result<f64> {
        const OP: &str = "solve_twist_angle";
        if !(motor_torque.is_finite() && motor_torque > 0.0) {
            return Err(Error::domain(
                OP,
                format!("motor torque {motor_torque} N·m must be > 0"),
            ));
        }
        if !(pull_force.is_finite() && pull_force > 0.0) {
            return Err(Error::domain(
                OP,
                format!("pull force {pull_force} N must be > 0"),
            ));
        }
        let max = self.max_twist();
        let eps = 1e-12 * max;
        let residual = |theta: f64| -> f64 {
            let x = self
                .contracted_length(theta)
                .expect("bracket inside string capacity");
            pull_force * theta * self.radius * self.radius / x - motor_torque
        };
        bisect(eps, max - eps, residual).ok_or_else(|| {
            Error::domain(
                OP,
                format!(
                    "{motor_torque} N·m against {pull_force} N is outside the representable twist range"
                ),
            )
        })
    }

    /// Full geometric state at twist `theta`.
    pub fn twist_state(&self, theta: f64) -> Result<TwistState> {
        let contracted_length = self.contracted_length(theta)?;
        Ok(TwistState {
            twist_angle: theta,
            contracted_length,
            helix_angle: self.helix_angle(contracted_length)?,
        })
    }
}

/// Geometry of a twisted string at one operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwistState {
    /// Cumulative twist in radians; may exceed 2π.
    pub twist_angle: f64,
    pub contracted_length: f64,
    pub helix_angle: f64,
}

/// Root of an increasing function on `[lo, hi]`, or `None` if unbracketed.
fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> Option<f64> {
    let (f_lo, f_hi) = (f(lo), f(hi));
    if f_lo > 0.0 || f_hi < 0.0 {
        return None;
    }
    if f_lo == 0.0 {
        return Some(lo);
    }
    if f_hi == 0.0 {
        return Some(hi);
    }
    for _ in 0..MAX_BISECTION_ITERATIONS {
        if hi - lo <= TWIST_TOLERANCE_RAD {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Some(mid);
        }
        if f_mid < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}
