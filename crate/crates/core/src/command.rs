//! Line-oriented command channel and event scripts.
//!
//! Remote commands are single case-insensitive keywords, one per line:
//! `ACTIVATE` or `DEACTIVATE`. Event scripts add a timestamp and also accept
//! `INTERRUPT`, which models the hardware stop input rather than a remote
//! command:
//!
//! ```text
//! # time_s  event
//! 0     ACTIVATE
//! 4.0   DEACTIVATE
//! ```

use std::fmt;
use std::path::Path;

use crate::controller::{EventKind, SimEvent};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Activate,
    Deactivate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Command {
    pub kind: CommandKind,
    pub raw: String,
}

impl Command {
    /// Canonical wire form, without the line terminator.
    pub fn render(&self) -> &'static str {
        match self.kind {
            CommandKind::Activate => "ACTIVATE",
            CommandKind::Deactivate => "DEACTIVATE",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.render())
    }
}

pub fn parse_command(line: &str) -> Result<Command> {
    let word = line.trim();
    let kind = if word.eq_ignore_ascii_case("ACTIVATE") {
        CommandKind::Activate
    } else if word.eq_ignore_ascii_case("DEACTIVATE") {
        CommandKind::Deactivate
    } else {
        return Err(Error::UnknownCommand(line.to_owned()));
    };
    Ok(Command {
        kind,
        raw: line.to_owned(),
    })
}

/// Lossy variant for raw bytes off the wire.
pub fn parse_command_bytes(bytes: &[u8]) -> Result<Command> {
    parse_command(&String::from_utf8_lossy(bytes))
}

pub fn to_event(cmd: &Command, time: f64) -> Result<SimEvent> {
    let kind = match cmd.kind {
        CommandKind::Activate => EventKind::Activate,
        CommandKind::Deactivate => EventKind::Deactivate,
    };
    SimEvent::new(time, kind)
}

/// Parse an event script. `origin` names the source in error messages.
pub fn parse_event_script(text: &str, origin: &str) -> Result<Vec<SimEvent>> {
    let mut events: Vec<SimEvent> = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or_default().trim();
        if line.is_empty() {
            continue;
        }
        let fail = |detail: String| Error::Script {
            path: origin.to_owned(),
            line: index + 1,
            detail,
        };
        let mut fields = line.split_whitespace();
        let (Some(time), Some(keyword), None) = (fields.next(), fields.next(), fields.next())
        else {
            return Err(fail(format!("expected `<time_s> <EVENT>`, got {line:?}")));
        };
        let time: f64 = time
            .parse()
            .map_err(|_| fail(format!("bad time {time:?}")))?;
        if !(time.is_finite() && time >= 0.0) {
            return Err(fail(format!("time {time} s must be >= 0")));
        }
        let kind = if keyword.eq_ignore_ascii_case("INTERRUPT") {
            EventKind::Interrupt
        } else {
            match parse_command(keyword) {
                Ok(cmd) => to_event(&cmd, time)?.kind,
                Err(_) => return Err(fail(format!("unknown event {keyword:?}"))),
            }
        };
        if let Some(prev) = events.last() {
            if time < prev.time {
                return Err(fail(format!(
                    "time {time} s precedes the previous event at {} s",
                    prev.time
                )));
            }
        }
        events.push(SimEvent { time, kind });
    }
    Ok(events)
}

pub fn load_event_script(path: &Path) -> Result<Vec<SimEvent>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_event_script(&text, &path.display().to_string())
}

/// Turn a stream of command lines into events spaced `interval` seconds apart,
/// starting at `start`. Blank lines advance the clock without an event.
pub fn commands_to_events(lines: &str, start: f64, interval: f64) -> Result<Vec<SimEvent>> {
    let mut events = Vec::new();
    for (i, line) in lines.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let cmd = parse_command(line)?;
        events.push(to_event(&cmd, start + interval * i as f64)?);
    }
    Ok(events)
}
