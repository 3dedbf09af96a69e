//! wasm-bindgen bindings for the static demo page in `www/`.
//!
//! Each export returns plain column vectors that the page plots on a canvas.
//! The `*_columns` functions hold the logic and stay callable from native
//! tests; the exported wrappers only convert errors into JS exceptions.

use wasm_bindgen::prelude::*;

use tsa_exo::controller::{run, ControllerConfig, EventKind, Plant, SimEvent};
use tsa_exo::report::trace_summary;
use tsa_exo::statics::{required_torque_curve, ForearmLoad};
use tsa_exo::{EncoderSpec, Error, StringSpec};

fn js_err(e: Error) -> JsError {
    JsError::new(&format!("{} ({})", e, e.category()))
}

/// Torque-vs-mass table.
#[wasm_bindgen]
pub struct TorqueCurve {
    mass: Vec<f64>,
    torque: Vec<f64>,
}

#[wasm_bindgen]
impl TorqueCurve {
    #[wasm_bindgen(getter)]
    pub fn mass(&self) -> Vec<f64> {
        self.mass.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn torque(&self) -> Vec<f64> {
        self.torque.clone()
    }
}

pub fn torque_curve_columns(
    mass_min: f64,
    mass_max: f64,
    steps: usize,
    com_distance: f64,
    gravity: f64,
) -> Result<TorqueCurve, Error> {
    let template = ForearmLoad::new(0.0, gravity, com_distance)?;
    let rows = required_torque_curve(mass_min, mass_max, steps, &template)?;
    Ok(TorqueCurve {
        mass: rows.iter().map(|r| r.mass_kg).collect(),
        torque: rows.iter().map(|r| r.required_torque_nm).collect(),
    })
}

#[wasm_bindgen]
pub fn torque_curve(
    mass_min: f64,
    mass_max: f64,
    steps: usize,
    com_distance: f64,
    gravity: f64,
) -> Result<TorqueCurve, JsError> {
    torque_curve_columns(mass_min, mass_max, steps, com_distance, gravity).map_err(js_err)
}

/// String geometry and transmission sampled over the twist range.
#[wasm_bindgen]
pub struct TsaCurves {
    twist: Vec<f64>,
    contracted: Vec<f64>,
    helix_deg: Vec<f64>,
    pull_force: Vec<f64>,
}

#[wasm_bindgen]
impl TsaCurves {
    #[wasm_bindgen(getter)]
    pub fn twist(&self) -> Vec<f64> {
        self.twist.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn contracted(&self) -> Vec<f64> {
        self.contracted.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn helix_deg(&self) -> Vec<f64> {
        self.helix_deg.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn pull_force(&self) -> Vec<f64> {
        self.pull_force.clone()
    }
}

/// Sample `samples` twists evenly over `(0, fraction·L/r]` and evaluate the
/// geometry and the pull force a fixed `motor_torque` holds at each.
pub fn tsa_curve_columns(
    length: f64,
    radius: f64,
    motor_torque: f64,
    fraction: f64,
    samples: usize,
) -> Result<TsaCurves, Error> {
    let string = StringSpec::new(length, radius)?;
    if !(fraction > 0.0 && fraction < 1.0) || samples < 2 {
        return Err(Error::Invalid {
            what: "sampling",
            detail: "fraction must lie in (0, 1) and samples >= 2".into(),
        });
    }
    let top = fraction * string.max_twist();
    let mut curves = TsaCurves {
        twist: Vec::with_capacity(samples),
        contracted: Vec::with_capacity(samples),
        helix_deg: Vec::with_capacity(samples),
        pull_force: Vec::with_capacity(samples),
    };
    for i in 1..=samples {
        let theta = top * i as f64 / samples as f64;
        let state = string.twist_state(theta)?;
        curves.twist.push(theta);
        curves.contracted.push(state.contracted_length);
        curves.helix_deg.push(state.helix_angle.to_degrees());
        curves
            .pull_force
            .push(string.pull_force(theta, motor_torque)?);
    }
    Ok(curves)
}

#[wasm_bindgen]
pub fn tsa_curve(
    length: f64,
    radius: f64,
    motor_torque: f64,
    fraction: f64,
    samples: usize,
) -> Result<TsaCurves, JsError> {
    tsa_curve_columns(length, radius, motor_torque, fraction, samples).map_err(js_err)
}

/// Columns of a controller trace.
#[wasm_bindgen]
pub struct TraceColumns {
    time: Vec<f64>,
    motor_angle: Vec<f64>,
    encoder: Vec<f64>,
    joint_deg: Vec<f64>,
    top_string: Vec<f64>,
    bottom_string: Vec<f64>,
    summary: String,
}

#[wasm_bindgen]
impl TraceColumns {
    #[wasm_bindgen(getter)]
    pub fn time(&self) -> Vec<f64> {
        self.time.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn motor_angle(&self) -> Vec<f64> {
        self.motor_angle.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn encoder(&self) -> Vec<f64> {
        self.encoder.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn joint_deg(&self) -> Vec<f64> {
        self.joint_deg.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn top_string(&self) -> Vec<f64> {
        self.top_string.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn bottom_string(&self) -> Vec<f64> {
        self.bottom_string.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn summary(&self) -> String {
        self.summary.clone()
    }
}

/// Controller session with ACTIVATE at t = 0 and an optional stop request.
/// Pass a negative `stop_at` for an uninterrupted session.
#[allow(clippy::too_many_arguments)]
pub fn simulate_columns(
    max_cycles: u32,
    motor_speed: f64,
    stop_at: f64,
    length: f64,
    radius: f64,
    pin_radius: f64,
    ppr: u32,
    gear_ratio: f64,
) -> Result<TraceColumns, Error> {
    let config = ControllerConfig {
        max_cycles,
        motor_speed,
        ..ControllerConfig::default()
    };
    let plant = Plant {
        string: StringSpec::new(length, radius)?,
        pin_radius,
        encoder: EncoderSpec { ppr, gear_ratio },
    };
    let mut events = vec![SimEvent::new(0.0, EventKind::Activate)?];
    if stop_at > 0.0 {
        events.push(SimEvent::new(stop_at, EventKind::Deactivate)?);
    }
    let trace = run(&config, &events, &plant)?;
    let column =
        |f: &dyn Fn(&tsa_exo::controller::TraceRow) -> f64| trace.rows.iter().map(f).collect();
    Ok(TraceColumns {
        time: column(&|r| r.time),
        motor_angle: column(&|r| r.motor_angle),
        encoder: column(&|r| r.encoder_count as f64),
        joint_deg: column(&|r| r.joint_angle_deg),
        top_string: column(&|r| r.top_string),
        bottom_string: column(&|r| r.bottom_string),
        summary: trace_summary(&trace),
    })
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn simulate(
    max_cycles: u32,
    motor_speed: f64,
    stop_at: f64,
    length: f64,
    radius: f64,
    pin_radius: f64,
    ppr: u32,
    gear_ratio: f64,
) -> Result<TraceColumns, JsError> {
    simulate_columns(
        max_cycles,
        motor_speed,
        stop_at,
        length,
        radius,
        pin_radius,
        ppr,
        gear_ratio,
    )
    .map_err(js_err)
}
