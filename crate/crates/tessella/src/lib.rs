//! tessella — musical tilings toolkit.
//!
//! - Rhythmic tiling canons over `Z/nZ`: translation, coverage, exact-cover
//!   and minimal-cover complement search, periodicity and Vuza predicates.
//! - Isorhythmic talea/color expansion over one `lcm` cycle.
//! - Phase-shift process schedules with exact rational onsets.
//! - Exact-arithmetic construction of the three-hexagon patch, its kite
//!   decomposition, the large kite and the hat polykite outline.
//! - Quarter-tone pitch arithmetic, hexagon scales and boundary pitch walks.
//! - Motif-entry timelines and mosaic part expansion.
//! - Score text format, SVG piano roll / tiling renderers, and SMF export
//!   with quarter-tone pitch bends.

pub mod error;
pub mod exact;
pub mod geometry;
pub mod isorhythm;
pub mod phase;
pub mod pitch;
pub mod rhythm;
pub mod score;
pub mod timeline;

pub use error::{Error, Result};
