//! Key-value config file (TOML): velocity default, MIDI octave anchoring,
//! SVG palette, per-voice octaves. See docs/FORMATS.md.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::Context;
use serde::Deserialize;

use tessella::pitch::QtPitch;
use tessella::score::SvgOptions;
use tessella::timeline::MotifLabel;

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Default note velocity 1..=127 (reserved for generator options).
    pub velocity: u8,
    /// MIDI note for pitch class 0.
    pub octave_anchor: u8,
    /// SVG fill colours cycled across voices.
    pub palette: Vec<String>,
    /// Per-voice MIDI anchors.
    pub voice_octaves: BTreeMap<String, u8>,
    /// Placeholder pitches per motif label for timeline export, as note
    /// names ("A" .. "G#", quarter suffix allowed).
    pub motif_pitches: BTreeMap<String, String>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            velocity: 96,
            octave_anchor: 60,
            palette: Vec::new(),
            voice_octaves: BTreeMap::new(),
            motif_pitches: BTreeMap::new(),
        }
    }
}

impl Config {
    /// Loads from `path` when given, from `./tessella.toml` when present,
    /// otherwise defaults.
    pub fn load(path: Option<&Path>) -> anyhow::Result<Config> {
        let text = match path {
            Some(p) => {
                Some(std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?)
            }
            None => std::fs::read_to_string("tessella.toml").ok(),
        };
        let config: Config = match text {
            Some(t) => toml::from_str(&t).context("parsing config")?,
            None => Config::default(),
        };
        if config.velocity == 0 || config.velocity > 127 {
            anyhow::bail!("config: velocity must be in 1..=127");
        }
        Ok(config)
    }

    pub fn svg_options(&self) -> SvgOptions {
        let mut opts = SvgOptions::default();
        if !self.palette.is_empty() {
            opts.palette = self.palette.clone();
        }
        opts
    }

    /// Timeline motif palette with config overrides applied.
    pub fn motif_palette(&self) -> BTreeMap<MotifLabel, QtPitch> {
        let mut palette = tessella::timeline::default_palette();
        for (label, name) in &self.motif_pitches {
            if let (Ok(motif), Ok(pitch)) =
                (label.parse::<MotifLabel>(), tessella::pitch::parse_pitch(name))
            {
                palette.insert(motif, pitch);
            }
        }
        palette
    }
}
