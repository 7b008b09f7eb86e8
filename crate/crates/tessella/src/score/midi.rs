//! Standard MIDI File (format 0) export with quarter-tone pitch bends.
//!
//! Pitch classes anchor into the octave starting at MIDI 60 (overridable
//! per voice). Every note-on is preceded by a pitch-bend message on its
//! channel — centre 8192 for plain semitones, +2048 for a quarter-tone
//! under the declared +/-2 semitone bend range (RPN 0 at track start).
//! Each sounding note holds its own channel, allocated round-robin over
//! channels 0..=14, so simultaneous notes never share bend state; a
//! sixteenth simultaneous note is a capacity error.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::score::Score;

/// Bend offset for one quarter-tone under the +/-2 semitone range:
/// 8192 * (0.5 / 2).
const QUARTER_TONE_BEND: u16 = 2048;
const BEND_CENTER: u16 = 8192;
const CHANNELS: u8 = 15;

#[derive(Clone, Debug)]
pub struct MidiOptions {
    /// MIDI note for pitch class 0; default 60 puts classes in 60..84.
    pub octave_anchor: u8,
    /// Per-voice anchor overrides.
    pub voice_anchors: BTreeMap<String, u8>,
}

impl Default for MidiOptions {
    fn default() -> Self {
        MidiOptions {
            octave_anchor: 60,
            voice_anchors: BTreeMap::new(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum MessageClass {
    Control,
    NoteOff,
    Bend,
    NoteOn,
}

struct Message {
    tick: u64,
    class: MessageClass,
    channel: u8,
    /// Insertion index; keeps RPN controller order stable under sorting.
    seq: usize,
    bytes: Vec<u8>,
}

/// Serializes the score as SMF format 0. Deterministic: identical scores
/// and options produce identical bytes.
pub fn write_midi(score: &Score, opts: &MidiOptions) -> Result<Vec<u8>> {
    let tpq = score.ticks_per_quarter();
    let mut notes: Vec<(u64, u64, u8, u8, u16, u8)> = Vec::new(); // start, end, ch, note, bend, vel

    // Dedicated channel per sounding note, round-robin over 0..15.
    let mut active: Vec<(u64, u8)> = Vec::new(); // (end_tick, channel)
    let mut rr: u8 = 0;
    for event in score.events() {
        let Some(pitch) = event.pitch else { continue };
        let anchor = *opts
            .voice_anchors
            .get(&event.voice)
            .unwrap_or(&opts.octave_anchor);
        let note = anchor as i32 + (pitch.value() / 2) as i32;
        if !(0..=127).contains(&note) {
            return Err(Error::domain(format!(
                "pitch class {} anchored at {anchor} leaves the MIDI range",
                pitch.value()
            )));
        }
        let bend = if pitch.value() % 2 == 1 {
            BEND_CENTER + QUARTER_TONE_BEND
        } else {
            BEND_CENTER
        };
        let start = to_ticks(event.onset, tpq);
        let end = to_ticks(event.end(), tpq).max(start + 1);
        active.retain(|&(e, _)| e > start);
        let mut channel = None;
        for k in 0..CHANNELS {
            let c = (rr + k) % CHANNELS;
            if !active.iter().any(|&(_, ch)| ch == c) {
                channel = Some(c);
                break;
            }
        }
        let channel = channel.ok_or_else(|| {
            Error::Capacity(format!(
                "more than {CHANNELS} simultaneous bent notes at tick {start}"
            ))
        })?;
        rr = (channel + 1) % CHANNELS;
        active.push((end, channel));
        notes.push((start, end, channel, note as u8, bend, event.velocity));
    }

    let mut messages: Vec<Message> = Vec::new();
    // Bend-range RPN setup on every channel used, at tick 0.
    let mut used: Vec<u8> = notes.iter().map(|n| n.2).collect();
    used.sort_unstable();
    used.dedup();
    for ch in used {
        for (controller, value) in [(101u8, 0u8), (100, 0), (6, 2), (38, 0)] {
            let seq = messages.len();
            messages.push(Message {
                tick: 0,
                class: MessageClass::Control,
                channel: ch,
                seq,
                bytes: vec![0xB0 | ch, controller, value],
            });
        }
    }
    for &(start, end, ch, note, bend, vel) in &notes {
        let seq = messages.len();
        messages.push(Message {
            tick: start,
            class: MessageClass::Bend,
            channel: ch,
            seq,
            bytes: vec![0xE0 | ch, (bend & 0x7F) as u8, (bend >> 7) as u8],
        });
        messages.push(Message {
            tick: start,
            class: MessageClass::NoteOn,
            channel: ch,
            seq: seq + 1,
            bytes: vec![0x90 | ch, note, vel],
        });
        messages.push(Message {
            tick: end,
            class: MessageClass::NoteOff,
            channel: ch,
            seq: seq + 2,
            bytes: vec![0x80 | ch, note, 0],
        });
    }
    messages.sort_by_key(|m| (m.tick, m.class, m.channel, m.seq));

    let mut track: Vec<u8> = Vec::new();
    let mut cursor = 0u64;
    for m in &messages {
        write_vlq(&mut track, m.tick - cursor);
        cursor = m.tick;
        track.extend_from_slice(&m.bytes);
    }
    write_vlq(&mut track, 0);
    track.extend_from_slice(&[0xFF, 0x2F, 0x00]);

    let mut out = Vec::new();
    out.extend_from_slice(b"MThd");
    out.extend_from_slice(&6u32.to_be_bytes());
    out.extend_from_slice(&0u16.to_be_bytes()); // format 0
    out.extend_from_slice(&1u16.to_be_bytes()); // one track
    out.extend_from_slice(&(tpq as u16).to_be_bytes());
    out.extend_from_slice(b"MTrk");
    out.extend_from_slice(&(track.len() as u32).to_be_bytes());
    out.extend_from_slice(&track);
    Ok(out)
}

/// Nearest tick; quantization error stays below one tick.
fn to_ticks(beats: Rat, tpq: u32) -> u64 {
    let scaled = beats * Rat::from_integer(tpq as i64) + Rat::new(1, 2);
    let floored = scaled.floor();
    debug_assert!(floored >= Rat::zero());
    floored.to_integer() as u64
}

fn write_vlq(out: &mut Vec<u8>, mut value: u64) {
    let mut stack = [0u8; 10];
    let mut n = 0;
    stack[n] = (value & 0x7F) as u8;
    n += 1;
    value >>= 7;
    while value > 0 {
        stack[n] = (value & 0x7F) as u8 | 0x80;
        n += 1;
        value >>= 7;
    }
    for i in (0..n).rev() {
        out.push(stack[i]);
    }
}
