//! Design analysis and controller simulation for a twisted-string-actuated
//! elbow exoskeleton.
//!
//! - [`tsa`]: string contraction, helix angle and the torque/force transmission
//! - [`statics`]: forearm gravity torque and yoke-pin forces
//! - [`motor`]: power/torque relation, catalog selection, encoder counts
//! - [`controller`]: the timed activate/cycle/stop controller as a fixed-step simulation
//! - [`command`]: text command channel and event scripts
//! - [`config`] and [`report`]: what the `tsa-exo` binary is built from

pub mod command;
pub mod config;
pub mod controller;
pub mod error;
pub mod motor;
pub mod report;
pub mod statics;
pub mod tsa;

pub use config::ProjectConfig;
pub use controller::{ControllerConfig, EventKind, Phase, Plant, SimEvent, SimTrace, StopReason};
pub use error::{Error, Result};
pub use motor::{EncoderSpec, MotorSpec};
pub use statics::{ForearmLoad, LinkageGeometry};
pub use tsa::{StringSpec, TwistState};
