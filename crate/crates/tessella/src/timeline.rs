//! Motif-entry timelines: the indicator-sum coverage function, interval
//! overlap, the fixed plucked-trio entry data, and the mosaic part
//! encoding.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::pitch::QtPitch;
use crate::score::ScoreEvent;

/// Motif label A..D.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MotifLabel {
    A,
    B,
    C,
    D,
}

impl fmt::Display for MotifLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for MotifLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(MotifLabel::A),
            "B" | "b" => Ok(MotifLabel::B),
            "C" | "c" => Ok(MotifLabel::C),
            "D" | "d" => Ok(MotifLabel::D),
            other => Err(Error::domain(format!("unknown motif label {other:?}"))),
        }
    }
}

/// One instrument playing one motif over the closed interval
/// `[start, start + duration]`, in measures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotifEntry {
    pub instrument: String,
    pub motif: MotifLabel,
    pub start: Rat,
    pub duration: Rat,
}

impl MotifEntry {
    pub fn new(
        instrument: impl Into<String>,
        motif: MotifLabel,
        start: Rat,
        duration: Rat,
    ) -> Result<Self> {
        if start < Rat::zero() {
            return Err(Error::domain("start time must be non-negative"));
        }
        if duration <= Rat::zero() {
            return Err(Error::domain("duration must be positive"));
        }
        Ok(MotifEntry {
            instrument: instrument.into(),
            motif,
            start,
            duration,
        })
    }

    pub fn end(&self) -> Rat {
        self.start + self.duration
    }

    /// True when `t` lies in the closed interval `[start, end]`.
    pub fn active_at(&self, t: Rat) -> bool {
        self.start <= t && t <= self.end()
    }
}

/// The indicator sum `T(t)`: how many entries are active at time `t`.
pub fn coverage_count(entries: &[MotifEntry], t: Rat) -> usize {
    entries.iter().filter(|e| e.active_at(t)).count()
}

/// Intersection of the two closed intervals, when non-empty. Single-point
/// touches count.
pub fn pairwise_overlap(e1: &MotifEntry, e2: &MotifEntry) -> Option<(Rat, Rat)> {
    let lo = e1.start.max(e2.start);
    let hi = e1.end().min(e2.end());
    if lo <= hi {
        Some((lo, hi))
    } else {
        None
    }
}

/// The ten fixed entries of the mandolin/guitar/harp timeline.
pub fn trio_entries() -> Vec<MotifEntry> {
    let rows: [(&str, MotifLabel, i64, i64); 10] = [
        ("mandolin", MotifLabel::A, 0, 3),
        ("mandolin", MotifLabel::B, 3, 2),
        ("mandolin", MotifLabel::C, 5, 3),
        ("mandolin", MotifLabel::D, 8, 2),
        ("guitar", MotifLabel::A, 3, 3),
        ("guitar", MotifLabel::B, 6, 2),
        ("guitar", MotifLabel::C, 8, 3),
        ("guitar", MotifLabel::D, 11, 2),
        ("harp", MotifLabel::B, 4, 2),
        ("harp", MotifLabel::B, 8, 2),
    ];
    rows.into_iter()
        .map(|(instrument, motif, start, duration)| {
            MotifEntry::new(
                instrument,
                motif,
                Rat::from_integer(start),
                Rat::from_integer(duration),
            )
            .expect("fixed rows are valid")
        })
        .collect()
}

/// Mosaic colours. Stars come in A, B, C; bird groups in A, B, D.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MosaicColor {
    A,
    B,
    C,
    D,
}

impl fmt::Display for MosaicColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Mosaic part identifier I..VI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PartId {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl PartId {
    pub const ALL: [PartId; 6] = [
        PartId::I,
        PartId::II,
        PartId::III,
        PartId::IV,
        PartId::V,
        PartId::VI,
    ];
}

impl fmt::Display for PartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for PartId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(PartId::I),
            "II" | "2" => Ok(PartId::II),
            "III" | "3" => Ok(PartId::III),
            "IV" | "4" => Ok(PartId::IV),
            "V" | "5" => Ok(PartId::V),
            "VI" | "6" => Ok(PartId::VI),
            other => Err(Error::domain(format!("unknown mosaic part {other:?}"))),
        }
    }
}

/// Star measure matrices: (1) for A, (2) for B, (1, 2) for C.
pub fn star_matrix(color: MosaicColor) -> Result<&'static [u8]> {
    match color {
        MosaicColor::A => Ok(&[1]),
        MosaicColor::B => Ok(&[2]),
        MosaicColor::C => Ok(&[1, 2]),
        MosaicColor::D => Err(Error::domain("stars come in colours A, B, C only")),
    }
}

/// Bird-group measure matrices: (1,1,1) for A, (2,1,1) for B, (1,2,2) for D.
pub fn bird_matrix(color: MosaicColor) -> Result<&'static [u8]> {
    match color {
        MosaicColor::A => Ok(&[1, 1, 1]),
        MosaicColor::B => Ok(&[2, 1, 1]),
        MosaicColor::D => Ok(&[1, 2, 2]),
        MosaicColor::C => Err(Error::domain("bird groups come in colours A, B, D only")),
    }
}

/// One mosaic part: a star and three bird groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MosaicPart {
    pub id: PartId,
    pub star: MosaicColor,
    /// In printed layout order: first group above, then the two flanking
    /// the star.
    pub birds: [MosaicColor; 3],
}

/// The six fixed colour combinations.
pub fn mosaic_part(id: PartId) -> MosaicPart {
    use MosaicColor::{A, B, C, D};
    let (star, birds) = match id {
        PartId::I => (A, [D, D, B]),
        PartId::II => (C, [A, A, A]),
        PartId::III => (A, [D, D, D]),
        PartId::IV => (B, [D, D, A]),
        PartId::V => (C, [B, B, B]),
        PartId::VI => (B, [D, A, A]),
    };
    MosaicPart { id, star, birds }
}

/// Role of a record within an expanded part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MosaicRole {
    BirdGroup,
    Star,
}

/// One expanded record: role, colour, measure matrix, measure count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MosaicGroup {
    pub role: MosaicRole,
    pub color: MosaicColor,
    pub matrix: &'static [u8],
    pub measures: usize,
}

/// Expands a part into its four records in printed layout order:
/// bird group, bird group, star, bird group. Star A/B spans 1 measure,
/// star C spans 2; every bird group spans 3.
pub fn expand_mosaic_part(part: &MosaicPart) -> Result<Vec<MosaicGroup>> {
    let star = MosaicGroup {
        role: MosaicRole::Star,
        color: part.star,
        matrix: star_matrix(part.star)?,
        measures: star_matrix(part.star)?.len(),
    };
    let bird = |color: MosaicColor| -> Result<MosaicGroup> {
        Ok(MosaicGroup {
            role: MosaicRole::BirdGroup,
            color,
            matrix: bird_matrix(color)?,
            measures: bird_matrix(color)?.len(),
        })
    };
    Ok(vec![
        bird(part.birds[0])?,
        bird(part.birds[1])?,
        star,
        bird(part.birds[2])?,
    ])
}

/// Converts entries to score events (onset and duration in measures). Each
/// motif takes its placeholder pitch from `palette`; `lengths` gives the
/// prescribed measure length per motif and every entry must agree with it.
pub fn timeline_to_events(
    entries: &[MotifEntry],
    lengths: &BTreeMap<MotifLabel, Rat>,
    palette: &BTreeMap<MotifLabel, QtPitch>,
) -> Result<Vec<ScoreEvent>> {
    entries
        .iter()
        .map(|e| {
            let expected = lengths
                .get(&e.motif)
                .ok_or_else(|| Error::domain(format!("motif {} has no defined length", e.motif)))?;
            if *expected != e.duration {
                return Err(Error::domain(format!(
                    "entry {}/{} has duration {} but motif {} is defined as {} measures",
                    e.instrument, e.motif, e.duration, e.motif, expected
                )));
            }
            let pitch = palette
                .get(&e.motif)
                .ok_or_else(|| Error::domain(format!("motif {} has no palette pitch", e.motif)))?;
            ScoreEvent::new(e.instrument.clone(), e.start, e.duration, Some(*pitch), None)
        })
        .collect()
}

/// Measure lengths of the fixed trio data: A 3, B 2, C 3, D 2.
pub fn default_lengths() -> BTreeMap<MotifLabel, Rat> {
    [
        (MotifLabel::A, 3),
        (MotifLabel::B, 2),
        (MotifLabel::C, 3),
        (MotifLabel::D, 2),
    ]
    .into_iter()
    .map(|(m, l)| (m, Rat::from_integer(l)))
    .collect()
}

/// Placeholder pitch palette: A -> C, B -> D, C -> E, D -> G.
pub fn default_palette() -> BTreeMap<MotifLabel, QtPitch> {
    [
        (MotifLabel::A, 0),
        (MotifLabel::B, 4),
        (MotifLabel::C, 8),
        (MotifLabel::D, 14),
    ]
    .into_iter()
    .map(|(m, qt)| (m, QtPitch::new(qt)))
    .collect()
}
