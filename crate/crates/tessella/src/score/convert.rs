//! Converters from the generator modules into [`Score`]s.

use crate::exact::Rat;
use crate::isorhythm::IsoEvent;
use crate::phase::ClapPattern;
use crate::pitch::{QtPitch, WalkStep};
use crate::rhythm::CanonSpec;
use crate::score::{Score, ScoreEvent};

/// Pitch classes assigned to canon voices, cycling: a whole-tone stack.
fn voice_pitch(index: usize) -> QtPitch {
    QtPitch::new((index as i32 * 4) % 24)
}

/// One event per translated onset, one pitch class per voice, duration a
/// half beat.
pub fn from_canon(spec: &CanonSpec) -> Score {
    let mut events = Vec::new();
    for (i, voice) in spec.voices().iter().enumerate() {
        let label = if voice.label.is_empty() {
            format!("voice {}", i + 1)
        } else {
            voice.label.clone()
        };
        for &onset in voice.onsets().elements() {
            events.push(
                ScoreEvent::new(
                    label.clone(),
                    Rat::from_integer(onset as i64),
                    Rat::new(1, 2),
                    Some(voice_pitch(i)),
                    None,
                )
                .expect("onsets are non-negative"),
            );
        }
    }
    Score::new(format!("canon mod {}", spec.modulus()), events)
}

/// Pitch codes are reduced to pitch classes; the octave returns at MIDI
/// export through the anchor setting.
pub fn from_isorhythm(events: &[IsoEvent], voice: &str) -> Score {
    let score_events = events
        .iter()
        .map(|e| {
            ScoreEvent::new(
                voice.to_string(),
                Rat::from_integer(e.onset as i64),
                Rat::from_integer(e.duration as i64),
                Some(QtPitch::new((e.pitch.rem_euclid(12) * 2) as i32)),
                None,
            )
            .expect("expansion yields valid events")
        })
        .collect();
    Score::new("isorhythm cycle", score_events)
}

/// Two performer voices: `steady` repeats the base pattern every cycle,
/// `shifting` plays schedule entry `k` during cycle `k`. Strokes are
/// half-beat clicks on C for the steady voice and G for the shifting one.
pub fn from_schedule(schedule: &[ClapPattern], base: &ClapPattern) -> Score {
    let t = base.cycle_length();
    let click = Rat::new(1, 2);
    let mut events = Vec::new();
    for (k, pattern) in schedule.iter().enumerate() {
        let cycle_start = t * Rat::from_integer(k as i64);
        for &p in base.onsets() {
            events.push(
                ScoreEvent::new("steady", cycle_start + p, click, Some(QtPitch::new(0)), None)
                    .expect("onsets are non-negative"),
            );
        }
        for &p in pattern.onsets() {
            events.push(
                ScoreEvent::new("shifting", cycle_start + p, click, Some(QtPitch::new(14)), None)
                    .expect("onsets are non-negative"),
            );
        }
    }
    Score::new("phase schedule", events)
}

/// One beat per walk step, sounding the step's result pitch.
pub fn from_walk(steps: &[WalkStep], voice: &str) -> Score {
    let events = steps
        .iter()
        .enumerate()
        .map(|(i, step)| {
            ScoreEvent::new(
                voice.to_string(),
                Rat::from_integer(i as i64),
                Rat::from_integer(1),
                Some(step.result),
                None,
            )
            .expect("walk events are valid")
        })
        .collect();
    Score::new(voice.to_string(), events)
}
