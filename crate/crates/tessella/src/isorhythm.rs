//! Talea/color expansion: a repeating duration row against a repeating
//! pitch row, unfolded over one full cycle of `lcm(m, n)` steps.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Repeating duration row, in whole beats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Talea {
    durations: Vec<u64>,
}

impl Talea {
    pub fn new(durations: impl IntoIterator<Item = u64>) -> Result<Self> {
        let durations: Vec<u64> = durations.into_iter().collect();
        if durations.is_empty() {
            return Err(Error::domain("talea must be non-empty"));
        }
        if durations.contains(&0) {
            return Err(Error::domain("talea durations must be positive"));
        }
        Ok(Talea { durations })
    }

    pub fn durations(&self) -> &[u64] {
        &self.durations
    }

    pub fn len(&self) -> usize {
        self.durations.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Repeating pitch row. Pitch codes are opaque integers; MIDI numbers by
/// convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Color {
    pitches: Vec<i64>,
}

impl Color {
    pub fn new(pitches: impl IntoIterator<Item = i64>) -> Result<Self> {
        let pitches: Vec<i64> = pitches.into_iter().collect();
        if pitches.is_empty() {
            return Err(Error::domain("color must be non-empty"));
        }
        Ok(Color { pitches })
    }

    pub fn pitches(&self) -> &[i64] {
        &self.pitches
    }

    pub fn len(&self) -> usize {
        self.pitches.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// One step of the expanded cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoEvent {
    pub step: usize,
    pub pitch: i64,
    pub duration: u64,
    /// Cumulative beats before this step.
    pub onset: u64,
}

/// Steps in one full cycle: `lcm(|talea|, |color|)`.
pub fn cycle_length(talea: &Talea, color: &Color) -> usize {
    talea.len().lcm(&color.len())
}

/// Unfolds one full cycle: step `i` takes pitch `color[i mod n]` and
/// duration `talea[i mod m]`; onsets are running duration sums.
pub fn expand_isorhythm(talea: &Talea, color: &Color) -> Vec<IsoEvent> {
    let total = cycle_length(talea, color);
    let mut onset = 0u64;
    (0..total)
        .map(|step| {
            let event = IsoEvent {
                step,
                pitch: color.pitches()[step % color.len()],
                duration: talea.durations()[step % talea.len()],
                onset,
            };
            onset += event.duration;
            event
        })
        .collect()
}
