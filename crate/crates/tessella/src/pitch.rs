//! Quarter-tone pitch classes, the three hexagon scales, segment-kind
//! intervals, and the boundary pitch walks.
//!
//! The internal unit is the integer quarter-tone mod 24 (C = 0, one
//! semitone = 2), so fractional semitone values like 10.5 stay exact.
//! The display layer converts back to semitone decimals.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{HexId, SegmentKind};

/// A pitch class in quarter-tones, 0..24.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QtPitch(u8);

impl QtPitch {
    /// Wraps any quarter-tone count into 0..24.
    pub fn new(quarter_tones: i32) -> Self {
        QtPitch(quarter_tones.rem_euclid(24) as u8)
    }

    /// A whole semitone class (0..12 doubled into quarter-tones).
    pub fn from_semitones(semitones: i32) -> Self {
        QtPitch::new(semitones * 2)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn semitones(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Adds a signed quarter-tone delta, wrapping mod 24.
    pub fn offset(self, delta_qt: i32) -> QtPitch {
        QtPitch::new(self.0 as i32 + delta_qt)
    }

    /// Semitone decimal rendering: `9`, `10.5`.
    pub fn semitone_string(self) -> String {
        if self.0 % 2 == 0 {
            format!("{}", self.0 / 2)
        } else {
            format!("{}.5", self.0 / 2)
        }
    }

    /// Canonical note name; quarter-tone raised classes append `+1/4`.
    pub fn name(self) -> String {
        const NAMES: [&str; 12] = [
            "C", "C#", "D", "Eb", "E", "F", "F#", "G", "G#", "A", "Bb", "B",
        ];
        let base = NAMES[(self.0 / 2) as usize];
        if self.0 % 2 == 0 {
            base.to_string()
        } else {
            format!("{base}+1/4")
        }
    }
}

impl fmt::Display for QtPitch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Debug for QtPitch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QtPitch({})", self.0)
    }
}

/// Parses a note name: letter, optional accidental (`#`/`b` or the unicode
/// signs), optional quarter-tone suffix `+1/4` or `-1/4`.
pub fn parse_pitch(input: &str) -> Result<QtPitch> {
    let err = |position: usize| Error::InvalidPitch {
        input: input.to_string(),
        position,
    };
    let s = input.trim();
    let mut chars = s.char_indices().peekable();
    let (_, letter) = chars.next().ok_or_else(|| err(0))?;
    let mut semis: i32 = match letter.to_ascii_uppercase() {
        'C' => 0,
        'D' => 2,
        'E' => 4,
        'F' => 5,
        'G' => 7,
        'A' => 9,
        'B' => 11,
        _ => return Err(err(0)),
    };
    if let Some(&(pos, c)) = chars.peek() {
        match c {
            '#' | '\u{266F}' => {
                semis += 1;
                chars.next();
            }
            'b' | '\u{266D}' => {
                semis -= 1;
                chars.next();
            }
            '+' | '-' | '\u{2212}' => {}
            _ => return Err(err(pos)),
        }
    }
    let mut qt = semis * 2;
    if let Some(&(pos, c)) = chars.peek() {
        let rest: String = s[pos..].chars().collect();
        match (c, rest.as_str()) {
            ('+', "+1/4") => qt += 1,
            ('-', "-1/4") | ('\u{2212}', "\u{2212}1/4") => qt -= 1,
            _ => return Err(err(pos)),
        }
    }
    Ok(QtPitch::new(qt))
}

/// One of the three fixed six-note scales, one per hexagon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexScale {
    pub hexagon: HexId,
    /// Six semitone classes, stored as even quarter-tone values, ascending.
    pub pitch_classes: [QtPitch; 6],
}

impl HexScale {
    pub fn semitone_values(&self) -> [u8; 6] {
        let mut out = [0u8; 6];
        for (o, p) in out.iter_mut().zip(self.pitch_classes.iter()) {
            *o = p.value() / 2;
        }
        out
    }
}

/// The fixed scale data: G1 = {0,2,4,5,9,10}, G2 = {0,2,4,6,9,10},
/// G3 = {2,4,6,8,9,10} in semitones.
pub fn hexagon_scale(id: HexId) -> HexScale {
    let semis: [i32; 6] = match id {
        HexId::H1 => [0, 2, 4, 5, 9, 10],
        HexId::H2 => [0, 2, 4, 6, 9, 10],
        HexId::H3 => [2, 4, 6, 8, 9, 10],
    };
    let mut pitch_classes = [QtPitch(0); 6];
    for (slot, s) in pitch_classes.iter_mut().zip(semis) {
        *slot = QtPitch::from_semitones(s);
    }
    HexScale {
        hexagon: id,
        pitch_classes,
    }
}

/// Interval for walking one boundary segment, in quarter-tones:
/// half-side 2, apothem 3, double apothem 6, full side 0 when level or a
/// whole tone (4) when directed.
pub fn segment_delta(kind: SegmentKind, direction: i8) -> Result<i32> {
    let magnitude = match kind {
        SegmentKind::HalfSide => 2,
        SegmentKind::Apothem => 3,
        SegmentKind::DoubleApothem => 6,
        SegmentKind::FullSide => 4,
    };
    match direction {
        0 if kind == SegmentKind::FullSide => Ok(0),
        0 => Err(Error::domain(format!(
            "direction 0 is only valid for a full side, not a {kind}"
        ))),
        1 => Ok(magnitude),
        -1 => Ok(-magnitude),
        other => Err(Error::domain(format!(
            "direction must be -1, 0 or +1, got {other}"
        ))),
    }
}

/// One row of a pitch walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkStep {
    pub kind: SegmentKind,
    pub base: QtPitch,
    pub delta_qt: i32,
    pub result: QtPitch,
}

impl WalkStep {
    /// Delta rendered in semitones: `-1`, `+1.5`, `0`.
    pub fn delta_string(&self) -> String {
        let half = self.delta_qt.abs() % 2 == 1;
        let sign = if self.delta_qt > 0 {
            "+"
        } else if self.delta_qt < 0 {
            "-"
        } else {
            ""
        };
        if half {
            format!("{sign}{}.5", self.delta_qt.abs() / 2)
        } else {
            format!("{sign}{}", self.delta_qt.abs() / 2)
        }
    }
}

/// Computes `(base + delta) mod 24` for each `(kind, base name, direction)`
/// row; errors carry the failing row index.
pub fn pitch_walk(steps: &[(SegmentKind, &str, i8)]) -> Result<Vec<WalkStep>> {
    steps
        .iter()
        .enumerate()
        .map(|(i, &(kind, name, direction))| {
            let base = parse_pitch(name)
                .map_err(|e| Error::domain(format!("step {}: {e}", i + 1)))?;
            let delta_qt = segment_delta(kind, direction)
                .map_err(|e| Error::domain(format!("step {}: {e}", i + 1)))?;
            Ok(WalkStep {
                kind,
                base,
                delta_qt,
                result: base.offset(delta_qt),
            })
        })
        .collect()
}

/// The eight-row walk along the large-kite contour: two half-side steps,
/// then six apothem steps.
pub fn large_kite_walk() -> Vec<WalkStep> {
    use SegmentKind::{Apothem, HalfSide};
    pitch_walk(&[
        (HalfSide, "C", -1),
        (HalfSide, "A", 1),
        (Apothem, "C", -1),
        (Apothem, "A", 1),
        (Apothem, "A", -1),
        (Apothem, "F#", 1),
        (Apothem, "F#", 1),
        (Apothem, "F#", 1),
    ])
    .expect("fixed rows are valid")
}

/// The thirteen-row walk around the hat outline.
pub fn hat_walk() -> Vec<WalkStep> {
    use SegmentKind::{Apothem, FullSide, HalfSide};
    pitch_walk(&[
        (HalfSide, "C", -1),
        (HalfSide, "A", 1),
        (Apothem, "A", 1),
        (Apothem, "E", 1),
        (HalfSide, "Eb", -1),
        (FullSide, "D", 0),
        (HalfSide, "F#", -1),
        (Apothem, "F#", 1),
        (Apothem, "Bb", -1),
        (HalfSide, "Bb", -1),
        (HalfSide, "A", 1),
        (Apothem, "A", 1),
        (Apothem, "C", -1),
    ])
    .expect("fixed rows are valid")
}

/// One row of the eight-kite transformation table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KiteTransform {
    /// Kite number 1..=8.
    pub kite: u8,
    pub hexagon: HexId,
    /// Measure length in beats; alternates 6, 3.
    pub beats: u8,
    /// Four signed quarter-tone deltas: two half-side steps (|2|) and two
    /// apothem steps (|3|).
    pub deltas_qt: [i32; 4],
}

impl KiteTransform {
    /// Deltas rendered in semitones, e.g. `[-1, +1, -1.5, +1.5]`.
    pub fn delta_strings(&self) -> [String; 4] {
        let mut out: [String; 4] = Default::default();
        for (o, &d) in out.iter_mut().zip(self.deltas_qt.iter()) {
            let sign = if d >= 0 { "+" } else { "-" };
            *o = if d.abs() % 2 == 1 {
                format!("{sign}{}.5", d.abs() / 2)
            } else {
                format!("{sign}{}", d.abs() / 2)
            };
        }
        out
    }
}

/// The fixed eight-row table: kites 1-4 in H1, 5-6 in H2, 7-8 in H3;
/// beats alternate 6, 3; deltas as printed.
pub fn kite_transforms() -> [KiteTransform; 8] {
    let rows: [(u8, HexId, u8, [i32; 4]); 8] = [
        (1, HexId::H1, 6, [-2, 2, -3, 3]),
        (2, HexId::H1, 3, [2, -2, 3, -3]),
        (3, HexId::H1, 6, [-2, -2, 3, 3]),
        (4, HexId::H1, 3, [2, 2, -3, -3]),
        (5, HexId::H2, 6, [-2, 2, 3, 3]),
        (6, HexId::H2, 3, [2, -2, -3, -3]),
        (7, HexId::H3, 6, [-2, -2, -3, 3]),
        (8, HexId::H3, 3, [2, 2, 3, -3]),
    ];
    rows.map(|(kite, hexagon, beats, deltas_qt)| KiteTransform {
        kite,
        hexagon,
        beats,
        deltas_qt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        assert_eq!(parse_pitch("A").unwrap().value(), 18);
        assert_eq!(parse_pitch("G+1/4").unwrap().value(), 15);
        assert_eq!(parse_pitch("C").unwrap().value(), 0);
        assert_eq!(parse_pitch("Bb").unwrap().value(), 20);
        assert_eq!(parse_pitch("F\u{266F}").unwrap().value(), 12);
        assert_eq!(parse_pitch("E\u{266D}").unwrap().value(), 6);
        assert_eq!(parse_pitch("Cb").unwrap().value(), 22);
        assert_eq!(parse_pitch("B-1/4").unwrap().value(), 21);
    }

    #[test]
    fn parse_failures_carry_position() {
        match parse_pitch("H") {
            Err(Error::InvalidPitch { position, .. }) => assert_eq!(position, 0),
            other => panic!("expected InvalidPitch, got {other:?}"),
        }
        match parse_pitch("Cx") {
            Err(Error::InvalidPitch { position, .. }) => assert_eq!(position, 1),
            other => panic!("expected InvalidPitch, got {other:?}"),
        }
        match parse_pitch("C+1/8") {
            Err(Error::InvalidPitch { position, .. }) => assert_eq!(position, 1),
            other => panic!("expected InvalidPitch, got {other:?}"),
        }
        assert!(parse_pitch("").is_err());
    }

    #[test]
    fn names_roundtrip_for_table_spellings() {
        for s in ["C", "C#", "D", "Eb", "E", "F", "F#", "G", "G#", "A", "Bb", "B", "G+1/4", "Bb+1/4"] {
            let p = parse_pitch(s).unwrap();
            assert_eq!(p.name(), s);
            assert_eq!(parse_pitch(&p.name()).unwrap(), p);
        }
    }

    #[test]
    fn scales_match_fixed_data() {
        assert_eq!(hexagon_scale(HexId::H1).semitone_values(), [0, 2, 4, 5, 9, 10]);
        assert_eq!(hexagon_scale(HexId::H2).semitone_values(), [0, 2, 4, 6, 9, 10]);
        assert_eq!(hexagon_scale(HexId::H3).semitone_values(), [2, 4, 6, 8, 9, 10]);
    }

    #[test]
    fn scale_pairwise_intersections() {
        let sets: Vec<std::collections::BTreeSet<u8>> = [HexId::H1, HexId::H2, HexId::H3]
            .iter()
            .map(|&id| hexagon_scale(id).semitone_values().into_iter().collect())
            .collect();
        assert_eq!(sets[0].intersection(&sets[1]).count(), 5);
        assert_eq!(sets[0].intersection(&sets[2]).count(), 4);
        assert_eq!(sets[1].intersection(&sets[2]).count(), 5);
    }

    #[test]
    fn segment_delta_table() {
        assert_eq!(segment_delta(SegmentKind::HalfSide, -1).unwrap(), -2);
        assert_eq!(segment_delta(SegmentKind::Apothem, 1).unwrap(), 3);
        assert_eq!(segment_delta(SegmentKind::FullSide, 0).unwrap(), 0);
        assert_eq!(segment_delta(SegmentKind::FullSide, 1).unwrap(), 4);
        assert_eq!(segment_delta(SegmentKind::DoubleApothem, -1).unwrap(), -6);
        assert!(segment_delta(SegmentKind::Apothem, 0).is_err());
        assert!(segment_delta(SegmentKind::HalfSide, 2).is_err());
    }

    #[test]
    fn hat_walk_reproduces_the_result_column() {
        let walk = hat_walk();
        assert_eq!(walk.len(), 13);
        let results: Vec<u8> = walk.iter().map(|s| s.result.value()).collect();
        assert_eq!(
            results,
            vec![22, 20, 21, 11, 4, 4, 10, 15, 17, 18, 20, 21, 21]
        );
        let rendered: Vec<String> = walk.iter().map(|s| s.result.semitone_string()).collect();
        assert_eq!(
            rendered,
            vec!["11", "10", "10.5", "5.5", "2", "2", "5", "7.5", "8.5", "9", "10", "10.5", "10.5"]
        );
    }

    #[test]
    fn large_kite_walk_reproduces_the_result_column() {
        let walk = large_kite_walk();
        assert_eq!(walk.len(), 8);
        let rendered: Vec<String> = walk.iter().map(|s| s.result.semitone_string()).collect();
        assert_eq!(
            rendered,
            vec!["11", "10", "10.5", "10.5", "7.5", "7.5", "7.5", "7.5"]
        );
    }

    #[test]
    fn identity_step() {
        let walk = pitch_walk(&[(SegmentKind::FullSide, "C", 0)]).unwrap();
        assert_eq!(walk[0].result, parse_pitch("C").unwrap());
    }

    #[test]
    fn walk_errors_carry_step_index() {
        let err = pitch_walk(&[
            (SegmentKind::HalfSide, "C", 1),
            (SegmentKind::HalfSide, "X", 1),
        ])
        .unwrap_err();
        assert!(err.to_string().starts_with("step 2:"), "{err}");
    }

    #[test]
    fn kite_transform_rows() {
        let rows = kite_transforms();
        assert_eq!(rows[0].hexagon, HexId::H1);
        assert_eq!(rows[0].beats, 6);
        assert_eq!(rows[0].deltas_qt, [-2, 2, -3, 3]);
        assert_eq!(rows[7].hexagon, HexId::H3);
        assert_eq!(rows[7].beats, 3);
        assert_eq!(rows[7].deltas_qt, [2, 2, 3, -3]);
        for row in &rows {
            let ones = row.deltas_qt.iter().filter(|d| d.abs() == 2).count();
            let one_and_halves = row.deltas_qt.iter().filter(|d| d.abs() == 3).count();
            assert_eq!((ones, one_and_halves), (2, 2), "row {}", row.kite);
        }
        assert_eq!(
            rows[0].delta_strings(),
            ["-1", "+1", "-1.5", "+1.5"].map(String::from)
        );
    }

    #[test]
    fn quarter_tone_encoding_doubles_semitone_decimals() {
        for step in hat_walk().iter().chain(large_kite_walk().iter()) {
            let decimal: f64 = step.result.semitones();
            assert_eq!((decimal * 2.0) as u8, step.result.value());
        }
    }

    proptest! {
        #[test]
        fn walk_and_reversed_walk_return_to_start(
            start in 0i32..24,
            steps in prop::collection::vec((0usize..4, prop::bool::ANY), 0..20),
        ) {
            let kinds = [
                SegmentKind::HalfSide,
                SegmentKind::Apothem,
                SegmentKind::DoubleApothem,
                SegmentKind::FullSide,
            ];
            let mut pitch = QtPitch::new(start);
            let mut deltas = Vec::new();
            for (k, up) in &steps {
                let kind = kinds[*k];
                let dir = if *up { 1 } else { -1 };
                let d = segment_delta(kind, dir).unwrap();
                deltas.push(d);
                pitch = pitch.offset(d);
            }
            for d in deltas.iter().rev() {
                pitch = pitch.offset(-d);
            }
            prop_assert_eq!(pitch, QtPitch::new(start));
        }

        #[test]
        fn offsets_stay_in_range(start in -100i32..100, delta in -100i32..100) {
            let p = QtPitch::new(start).offset(delta);
            prop_assert!(p.value() < 24);
        }
    }
}
