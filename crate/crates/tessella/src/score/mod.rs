//! The score event model and its line-oriented text format (`.score.txt`),
//! the common currency every generator exports into.
//!
//! ```text
//! score "demo"
//! ticks_per_quarter = 480
//! event voice="upper" onset=3/2 dur=1/2 pitch=G+1/4 vel=96
//! event voice="taps" onset=2 dur=1 pitch=- vel=64
//! ```
//!
//! One event per line, onsets and durations as exact rationals in beats,
//! pitch as a canonical note name or `-` for unpitched. `write_score` and
//! `parse_score` are mutually inverse. Grammar in docs/FORMATS.md.

mod convert;
mod midi;
mod svg;

use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::pitch::{parse_pitch, QtPitch};

pub use convert::{from_canon, from_isorhythm, from_schedule, from_walk};
pub use midi::{write_midi, MidiOptions};
pub use svg::{render_piano_roll, render_tiling, SvgOptions};

pub const DEFAULT_VELOCITY: u8 = 96;
pub const DEFAULT_TICKS_PER_QUARTER: u32 = 480;

/// One note or unpitched stroke.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreEvent {
    pub voice: String,
    /// Beats from the start; non-negative.
    pub onset: Rat,
    /// Beats; positive.
    pub duration: Rat,
    /// `None` marks an unpitched event.
    pub pitch: Option<QtPitch>,
    /// 1..=127.
    pub velocity: u8,
}

impl ScoreEvent {
    pub fn new(
        voice: impl Into<String>,
        onset: Rat,
        duration: Rat,
        pitch: Option<QtPitch>,
        velocity: Option<u8>,
    ) -> Result<Self> {
        if onset < Rat::zero() {
            return Err(Error::domain("event onset must be non-negative"));
        }
        if duration <= Rat::zero() {
            return Err(Error::domain("event duration must be positive"));
        }
        let velocity = velocity.unwrap_or(DEFAULT_VELOCITY);
        if velocity == 0 || velocity > 127 {
            return Err(Error::domain(format!(
                "velocity must be in 1..=127, got {velocity}"
            )));
        }
        Ok(ScoreEvent {
            voice: voice.into(),
            onset,
            duration,
            pitch,
            velocity,
        })
    }

    pub fn end(&self) -> Rat {
        self.onset + self.duration
    }
}

/// An immutable event list sorted by `(onset, voice)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Score {
    title: String,
    ticks_per_quarter: u32,
    events: Vec<ScoreEvent>,
}

impl Score {
    pub fn new(title: impl Into<String>, mut events: Vec<ScoreEvent>) -> Self {
        events.sort_by(|a, b| (a.onset, &a.voice).cmp(&(b.onset, &b.voice)));
        Score {
            title: title.into(),
            ticks_per_quarter: DEFAULT_TICKS_PER_QUARTER,
            events,
        }
    }

    pub fn with_ticks_per_quarter(mut self, ticks: u32) -> Result<Self> {
        if ticks == 0 {
            return Err(Error::domain("ticks_per_quarter must be positive"));
        }
        self.ticks_per_quarter = ticks;
        Ok(self)
    }

    pub fn title(&self) -> &str {
        &self.title
    }

    pub fn ticks_per_quarter(&self) -> u32 {
        self.ticks_per_quarter
    }

    pub fn events(&self) -> &[ScoreEvent] {
        &self.events
    }

    /// Distinct voice names in order of first appearance.
    pub fn voices(&self) -> Vec<&str> {
        let mut seen = Vec::new();
        for e in &self.events {
            if !seen.contains(&e.voice.as_str()) {
                seen.push(e.voice.as_str());
            }
        }
        seen
    }

    pub fn end(&self) -> Rat {
        self.events
            .iter()
            .map(ScoreEvent::end)
            .max()
            .unwrap_or_else(Rat::zero)
    }
}

fn write_rat(r: Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rat(s: &str, line: usize) -> Result<Rat> {
    let invalid = || Error::parse(line, format!("invalid rational {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.parse().map_err(|_| invalid())?;
        let den: i64 = den.parse().map_err(|_| invalid())?;
        if den == 0 {
            return Err(invalid());
        }
        Ok(Rat::new(num, den))
    } else {
        let num: i64 = s.parse().map_err(|_| invalid())?;
        Ok(Rat::from_integer(num))
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Canonical text serialization; deterministic bytes for a given score.
pub fn write_score(score: &Score) -> String {
    let mut out = String::new();
    writeln!(out, "score \"{}\"", escape(score.title())).unwrap();
    writeln!(out, "ticks_per_quarter = {}", score.ticks_per_quarter()).unwrap();
    for e in score.events() {
        let pitch = match e.pitch {
            Some(p) => p.name(),
            None => "-".to_string(),
        };
        writeln!(
            out,
            "event voice=\"{}\" onset={} dur={} pitch={} vel={}",
            escape(&e.voice),
            write_rat(e.onset),
            write_rat(e.duration),
            pitch,
            e.velocity
        )
        .unwrap();
    }
    out
}

pub fn parse_score(text: &str) -> Result<Score> {
    let mut title: Option<String> = None;
    let mut ticks: Option<u32> = None;
    let mut events: Vec<ScoreEvent> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("score ") {
            if title.is_some() {
                return Err(Error::parse(line, "duplicate score header"));
            }
            title = Some(parse_quoted(rest.trim(), line)?);
        } else if let Some(rest) = trimmed.strip_prefix("ticks_per_quarter") {
            let value = rest
                .trim()
                .strip_prefix('=')
                .ok_or_else(|| Error::parse(line, "expected '=' after ticks_per_quarter"))?
                .trim();
            let t: u32 = value
                .parse()
                .map_err(|_| Error::parse(line, format!("invalid tick count {value:?}")))?;
            if t == 0 {
                return Err(Error::parse(line, "ticks_per_quarter must be positive"));
            }
            ticks = Some(t);
        } else if let Some(rest) = trimmed.strip_prefix("event ") {
            events.push(parse_event(rest.trim(), line)?);
        } else {
            return Err(Error::parse(
                line,
                format!("expected 'score', 'ticks_per_quarter' or 'event', found {trimmed:?}"),
            ));
        }
    }
    let title = title.ok_or_else(|| Error::parse(text.lines().count() + 1, "missing score header"))?;
    let score = Score::new(title, events);
    match ticks {
        Some(t) => score.with_ticks_per_quarter(t),
        None => Ok(score),
    }
}

fn parse_event(body: &str, line: usize) -> Result<ScoreEvent> {
    let mut voice: Option<String> = None;
    let mut onset: Option<Rat> = None;
    let mut duration: Option<Rat> = None;
    let mut pitch: Option<Option<QtPitch>> = None;
    let mut velocity: Option<u8> = None;
    for field in split_on_spaces(body) {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| Error::parse(line, format!("expected key=value, found {field:?}")))?;
        match key {
            "voice" => voice = Some(parse_quoted(value, line)?),
            "onset" => onset = Some(parse_rat(value, line)?),
            "dur" => duration = Some(parse_rat(value, line)?),
            "pitch" => {
                pitch = Some(if value == "-" {
                    None
                } else {
                    Some(parse_pitch(value).map_err(|e| Error::parse(line, e.to_string()))?)
                })
            }
            "vel" => {
                velocity = Some(value.parse().map_err(|_| {
                    Error::parse(line, format!("invalid velocity {value:?}"))
                })?)
            }
            other => return Err(Error::parse(line, format!("unknown event field {other:?}"))),
        }
    }
    let voice = voice.ok_or_else(|| Error::parse(line, "event is missing 'voice'"))?;
    let onset = onset.ok_or_else(|| Error::parse(line, "event is missing 'onset'"))?;
    let duration = duration.ok_or_else(|| Error::parse(line, "event is missing 'dur'"))?;
    let pitch = pitch.ok_or_else(|| Error::parse(line, "event is missing 'pitch'"))?;
    ScoreEvent::new(voice, onset, duration, pitch, velocity)
        .map_err(|e| Error::parse(line, e.to_string()))
}

fn parse_quoted(s: &str, line: usize) -> Result<String> {
    let inner = s
        .strip_prefix('"')
        .and_then(|t| t.strip_suffix('"'))
        .ok_or_else(|| Error::parse(line, format!("expected a quoted string, found {s:?}")))?;
    let mut out = String::new();
    let mut chars = inner.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            match chars.next() {
                Some('"') => out.push('"'),
                Some('\\') => out.push('\\'),
                other => {
                    return Err(Error::parse(line, format!("invalid escape {other:?}")))
                }
            }
        } else if c == '"' {
            return Err(Error::parse(line, "unescaped quote inside string"));
        } else {
            out.push(c);
        }
    }
    Ok(out)
}

/// Splits on spaces outside of quotes.
fn split_on_spaces(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut in_str = false;
    let mut escaped = false;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if in_str {
            if escaped {
                escaped = false;
            } else if c == '\\' {
                escaped = true;
            } else if c == '"' {
                in_str = false;
            }
            continue;
        }
        match c {
            '"' => in_str = true,
            ' ' => {
                if start < i {
                    out.push(&s[start..i]);
                }
                start = i + 1;
            }
            _ => {}
        }
    }
    if start < s.len() {
        out.push(&s[start..]);
    }
    out
}
