//! Fixed-step simulation of the exoskeleton's timed controller.
//!
//! A session starts on ACTIVATE and runs cycles of clockwise twist,
//! counterclockwise untwist and a rest pause. It ends after `max_cycles`
//! cycles, or at the end of the cycle in progress once DEACTIVATE or
//! INTERRUPT arrives. The rest pause only separates cycles; none follows the
//! last one. A stop request during a pause ends the session on the spot.
//!
//! Time advances in whole ticks of `time_step`. Phase lengths are held as tick
//! counts and motor angle as a signed tick count, so traces are exactly
//! reproducible and free of accumulated drift.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::motor::EncoderSpec;
use crate::tsa::StringSpec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControllerConfig {
    /// s
    pub cw_duration: f64,
    /// s
    pub ccw_duration: f64,
    /// s
    pub pause_duration: f64,
    pub max_cycles: u32,
    /// Output-shaft speed during run phases, rad/s.
    pub motor_speed: f64,
    /// s
    pub time_step: f64,
    /// Upper bound of the link rotation, degrees.
    pub joint_limit: f64,
}

impl Default for ControllerConfig {
    fn default() -> Self {
        ControllerConfig {
            cw_duration: 3.0,
            ccw_duration: 3.0,
            pause_duration: 5.0,
            max_cycles: 5,
            motor_speed: std::f64::consts::TAU,
            time_step: 0.01,
            joint_limit: 50.0,
        }
    }
}

impl ControllerConfig {
    /// Validate and convert phase durations to tick counts.
    pub fn schedule(&self) -> Result<Schedule> {
        let dt = self.time_step;
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::invalid(
                "controller",
                format!("time step {dt} s must be > 0"),
            ));
        }
        let ticks = |name: &str, duration: f64| -> Result<u64> {
            if !(duration.is_finite() && duration > 0.0) {
                return Err(Error::invalid(
                    "controller",
                    format!("{name} {duration} s must be > 0"),
                ));
            }
            let n = (duration / dt).round();
            if n < 1.0 || (n * dt - duration).abs() > 1e-9 {
                return Err(Error::invalid(
                    "controller",
                    format!("{name} {duration} s is not a whole number of {dt} s steps"),
                ));
            }
            Ok(n as u64)
        };
        if self.max_cycles < 1 {
            return Err(Error::invalid("controller", "max_cycles must be >= 1"));
        }
        if !(self.motor_speed.is_finite() && self.motor_speed >= 0.0) {
            return Err(Error::invalid(
                "controller",
                format!("motor speed {} rad/s must be >= 0", self.motor_speed),
            ));
        }
        if !(self.joint_limit.is_finite() && self.joint_limit > 0.0) {
            return Err(Error::invalid(
                "controller",
                format!("joint limit {}° must be > 0", self.joint_limit),
            ));
        }
        Ok(Schedule {
            cw_ticks: ticks("cw duration", self.cw_duration)?,
            ccw_ticks: ticks("ccw duration", self.ccw_duration)?,
            pause_ticks: ticks("pause duration", self.pause_duration)?,
            max_cycles: self.max_cycles,
        })
    }
}

/// Phase lengths in ticks, derived from a validated [`ControllerConfig`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Schedule {
    pub cw_ticks: u64,
    pub ccw_ticks: u64,
    pub pause_ticks: u64,
    pub max_cycles: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Idle,
    CwRun,
    CcwRun,
    Pause,
    Stopped,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Idle => "IDLE",
            Phase::CwRun => "CW_RUN",
            Phase::CcwRun => "CCW_RUN",
            Phase::Pause => "PAUSE",
            Phase::Stopped => "STOPPED",
        }
    }

    /// Sign of motor rotation while in this phase.
    pub fn direction(self) -> i64 {
        match self {
            Phase::CwRun => 1,
            Phase::CcwRun => -1,
            _ => 0,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    Activate,
    Deactivate,
    Interrupt,
}

impl EventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::Activate => "ACTIVATE",
            EventKind::Deactivate => "DEACTIVATE",
            EventKind::Interrupt => "INTERRUPT",
        }
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimEvent {
    /// s
    pub time: f64,
    pub kind: EventKind,
}

impl SimEvent {
    pub fn new(time: f64, kind: EventKind) -> Result<Self> {
        if !(time.is_finite() && time >= 0.0) {
            return Err(Error::invalid(
                "event",
                format!("time {time} s must be >= 0"),
            ));
        }
        Ok(SimEvent { time, kind })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    MaxCycles,
    Deactivate,
    Interrupt,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::MaxCycles => "max_cycles",
            StopReason::Deactivate => "deactivate",
            StopReason::Interrupt => "interrupt",
        }
    }
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Controller state machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ControllerState {
    pub phase: Phase,
    /// 1-based cycle within the current session; 0 before the first ACTIVATE.
    pub cycle_index: u32,
    /// Ticks spent in the current phase.
    pub phase_ticks: u64,
    /// Stop requested during a run phase, honored when the cycle completes.
    pub pending_stop: Option<StopReason>,
    /// Why the last session ended, once `phase` is `Stopped`.
    pub stop_reason: Option<StopReason>,
}

impl Default for ControllerState {
    fn default() -> Self {
        ControllerState {
            phase: Phase::Idle,
            cycle_index: 0,
            phase_ticks: 0,
            pending_stop: None,
            stop_reason: None,
        }
    }
}

impl ControllerState {
    /// Advance one tick. Transitions fire exactly when a phase's tick budget is used up.
    pub fn step(self, schedule: &Schedule) -> Self {
        let ticks = self.phase_ticks + 1;
        let enter = |phase| ControllerState {
            phase,
            phase_ticks: 0,
            ..self
        };
        match self.phase {
            Phase::Idle | Phase::Stopped => self,
            Phase::CwRun if ticks >= schedule.cw_ticks => enter(Phase::CcwRun),
            Phase::CcwRun if ticks >= schedule.ccw_ticks => {
                let reason = self
                    .pending_stop
                    .or((self.cycle_index >= schedule.max_cycles).then_some(StopReason::MaxCycles));
                match reason {
                    Some(reason) => ControllerState {
                        stop_reason: Some(reason),
                        pending_stop: None,
                        ..enter(Phase::Stopped)
                    },
                    None => enter(Phase::Pause),
                }
            }
            Phase::Pause if ticks >= schedule.pause_ticks => ControllerState {
                cycle_index: self.cycle_index + 1,
                ..enter(Phase::CwRun)
            },
            _ => ControllerState {
                phase_ticks: ticks,
                ..self
            },
        }
    }

    /// React to an external event arriving at the current tick.
    pub fn apply(self, kind: EventKind) -> Self {
        let reason = match kind {
            EventKind::Activate => {
                return match self.phase {
                    Phase::Idle | Phase::Stopped => ControllerState {
                        phase: Phase::CwRun,
                        cycle_index: 1,
                        phase_ticks: 0,
                        pending_stop: None,
                        stop_reason: None,
                    },
                    _ => self,
                };
            }
            EventKind::Deactivate => StopReason::Deactivate,
            EventKind::Interrupt => StopReason::Interrupt,
        };
        match self.phase {
            Phase::CwRun | Phase::CcwRun => ControllerState {
                pending_stop: self.pending_stop.or(Some(reason)),
                ..self
            },
            // The cycle's motion is already complete.
            Phase::Pause => ControllerState {
                phase: Phase::Stopped,
                phase_ticks: 0,
                pending_stop: None,
                stop_reason: Some(reason),
                ..self
            },
            Phase::Idle | Phase::Stopped => self,
        }
    }
}

/// Mechanical side of the simulation: strings, yoke pin and encoder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plant {
    pub string: StringSpec,
    /// m
    pub pin_radius: f64,
    pub encoder: EncoderSpec,
}

impl Plant {
    pub fn validate(&self) -> Result<()> {
        self.string.validate()?;
        if !(self.pin_radius.is_finite() && self.pin_radius > 0.0) {
            return Err(Error::invalid(
                "pin radius",
                format!("{} m must be > 0", self.pin_radius),
            ));
        }
        if self.encoder.ppr == 0
            || !(self.encoder.gear_ratio.is_finite() && self.encoder.gear_ratio >= 1.0)
        {
            return Err(Error::invalid(
                "encoder",
                "ppr must be > 0 and gear ratio >= 1",
            ));
        }
        Ok(())
    }
}

/// Link angle and string lengths for one motor angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointPose {
    pub joint_angle_deg: f64,
    pub top_string: f64,
    pub bottom_string: f64,
}

/// Map a motor angle to the link pose.
///
/// Positive angles twist the top string; its contraction `Δ` turns the yoke
/// by `Δ / r_p` radians, clamped to `[0, joint_limit_deg]`. The bottom string
/// pays out exactly what the top one takes in.
pub fn joint_angle_of(motor_angle: f64, plant: &Plant, joint_limit_deg: f64) -> Result<JointPose> {
    let string = &plant.string;
    if !motor_angle.is_finite() || motor_angle.abs() >= string.max_twist() {
        return Err(Error::domain(
            "joint_angle_of",
            format!(
                "motor angle {motor_angle} rad must stay below the string capacity {} rad",
                string.max_twist()
            ),
        ));
    }
    let top = string.contracted_length(motor_angle.max(0.0))?;
    let contraction = string.untwisted_length - top;
    let raw_deg = (contraction / plant.pin_radius).to_degrees();
    Ok(JointPose {
        joint_angle_deg: raw_deg.clamp(0.0, joint_limit_deg),
        top_string: top,
        bottom_string: string.untwisted_length + contraction,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    /// s
    pub time: f64,
    pub phase: Phase,
    pub cycle_index: u32,
    /// 1-based activation count.
    pub session: u32,
    /// Cumulative output-shaft angle, rad.
    pub motor_angle: f64,
    pub encoder_count: i64,
    pub joint_angle_deg: f64,
    /// m
    pub top_string: f64,
    /// m
    pub bottom_string: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SessionSummary {
    pub start_time: f64,
    pub stop_time: f64,
    pub cycles_completed: u32,
    pub reason: StopReason,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimTrace {
    pub time_step: f64,
    pub rows: Vec<TraceRow>,
    pub sessions: Vec<SessionSummary>,
}

impl SimTrace {
    pub fn last_session(&self) -> &SessionSummary {
        self.sessions
            .last()
            .expect("a trace always has one session")
    }

    /// Number of distinct clockwise phases in the trace.
    pub fn cw_phase_count(&self) -> usize {
        let mut previous = Phase::Idle;
        let mut count = 0;
        for row in &self.rows {
            if row.phase == Phase::CwRun && previous != Phase::CwRun {
                count += 1;
            }
            previous = row.phase;
        }
        count
    }
}

/// Quantize events onto ticks, rejecting unsorted input and shared ticks.
fn quantize(events: &[SimEvent], dt: f64) -> Result<Vec<(u64, EventKind)>> {
    let mut out: Vec<(u64, EventKind)> = Vec::with_capacity(events.len());
    let mut last_time = f64::NEG_INFINITY;
    for event in events {
        if !(event.time.is_finite() && event.time >= 0.0) {
            return Err(Error::invalid(
                "event",
                format!("time {} s must be >= 0", event.time),
            ));
        }
        if event.time < last_time {
            return Err(Error::invalid(
                "event script",
                format!("events out of order at {} s", event.time),
            ));
        }
        last_time = event.time;
        let tick = (event.time / dt).round() as u64;
        if let Some(&(prev, prev_kind)) = out.last() {
            if prev == tick {
                return Err(Error::invalid(
                    "event script",
                    format!(
                        "{prev_kind} and {} both land on tick {tick} ({} s)",
                        event.kind,
                        tick as f64 * dt
                    ),
                ));
            }
        }
        out.push((tick, event.kind));
    }
    Ok(out)
}

/// Simulate from the first ACTIVATE until the controller stops for the last time.
pub fn run(config: &ControllerConfig, events: &[SimEvent], plant: &Plant) -> Result<SimTrace> {
    let schedule = config.schedule()?;
    plant.validate()?;
    let dt = config.time_step;
    let ticks = quantize(events, dt)?;
    let first = ticks
        .iter()
        .position(|&(_, kind)| kind == EventKind::Activate)
        .ok_or(Error::NoActivation)?;
    let step_angle = config.motor_speed * dt;

    let mut state = ControllerState::default();
    let mut pending = ticks[first..].iter().peekable();
    let mut tick = ticks[first].0;
    let mut net_ticks: i64 = 0;
    let mut session = 0u32;
    let mut session_start = 0.0;
    let mut rows = Vec::new();
    let mut sessions = Vec::new();

    loop {
        let time = tick as f64 * dt;
        if !rows.is_empty() {
            net_ticks += state.phase.direction();
            state = state.step(&schedule);
        }
        if let Some(&(_, kind)) = pending.next_if(|&&(t, _)| t == tick) {
            let before = state.phase;
            state = state.apply(kind);
            if kind == EventKind::Activate && matches!(before, Phase::Idle | Phase::Stopped) {
                session += 1;
                session_start = time;
            }
        }

        let motor_angle = net_ticks as f64 * step_angle;
        let pose = joint_angle_of(motor_angle, plant, config.joint_limit)?;
        let previous_phase = rows.last().map(|r: &TraceRow| r.phase);
        rows.push(TraceRow {
            time,
            phase: state.phase,
            cycle_index: state.cycle_index,
            session,
            motor_angle,
            encoder_count: plant.encoder.count_at(motor_angle),
            joint_angle_deg: pose.joint_angle_deg,
            top_string: pose.top_string,
            bottom_string: pose.bottom_string,
        });

        if state.phase == Phase::Stopped && previous_phase != Some(Phase::Stopped) {
            // A pause-time stop leaves the current cycle already finished.
            let reason = state.stop_reason.expect("stopped state records its reason");
            sessions.push(SessionSummary {
                start_time: session_start,
                stop_time: time,
                cycles_completed: state.cycle_index,
                reason,
            });
            let more_sessions = pending
                .clone()
                .any(|&(_, kind)| kind == EventKind::Activate);
            if !more_sessions {
                break;
            }
        }
        tick += 1;
    }

    Ok(SimTrace {
        time_step: dt,
        rows,
        sessions,
    })
}

/// Encoder counts of one controller cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleCounts {
    pub session: u32,
    pub cycle_index: u32,
    /// `(time, count)` for every tick from the start of the CW phase through
    /// the tick where the CCW phase ends.
    pub samples: Vec<(f64, i64)>,
    pub end_of_cw_count: i64,
    pub end_of_cycle_count: i64,
}

/// Split a trace into per-cycle encoder position series.
pub fn encoder_trace_of(trace: &SimTrace) -> Vec<CycleCounts> {
    let mut cycles: Vec<CycleCounts> = Vec::new();
    let mut previous: Option<&TraceRow> = None;
    for row in &trace.rows {
        let prev_phase = previous.map(|r| r.phase);
        match row.phase {
            Phase::CwRun if prev_phase != Some(Phase::CwRun) => cycles.push(CycleCounts {
                session: row.session,
                cycle_index: row.cycle_index,
                samples: vec![(row.time, row.encoder_count)],
                end_of_cw_count: row.encoder_count,
                end_of_cycle_count: row.encoder_count,
            }),
            Phase::CwRun | Phase::CcwRun => {
                if let Some(cycle) = cycles.last_mut() {
                    cycle.samples.push((row.time, row.encoder_count));
                    if row.phase == Phase::CcwRun && prev_phase == Some(Phase::CwRun) {
                        cycle.end_of_cw_count = row.encoder_count;
                    }
                }
            }
            Phase::Pause | Phase::Stopped if prev_phase == Some(Phase::CcwRun) => {
                if let Some(cycle) = cycles.last_mut() {
                    cycle.samples.push((row.time, row.encoder_count));
                    cycle.end_of_cycle_count = row.encoder_count;
                }
            }
            _ => {}
        }
        previous = Some(row);
    }
    cycles
}
