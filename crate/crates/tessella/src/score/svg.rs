//! SVG renderers: piano roll for scores, outline diagrams for polygons.
//! The only place (besides MIDI tick rounding) where exact values become
//! floats.

use std::fmt::Write as _;

use crate::geometry::{classify_edges, BoundaryPolygon, SegmentKind};
use crate::score::Score;

#[derive(Clone, Debug)]
pub struct SvgOptions {
    /// Pixels per beat on the x axis.
    pub beat_width: f64,
    /// Pixels per quarter-tone row.
    pub row_height: f64,
    /// Fill colours cycled across voices.
    pub palette: Vec<String>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            beat_width: 24.0,
            row_height: 7.0,
            palette: DEFAULT_PALETTE.iter().map(|c| c.to_string()).collect(),
        }
    }
}

const DEFAULT_PALETTE: [&str; 8] = [
    "#4878cf", "#d65f5f", "#6acc65", "#b47cc7", "#c4ad66", "#77bedb", "#e48532", "#8c8c8c",
];

const MARGIN: f64 = 40.0;

fn fmt(v: f64) -> String {
    // fixed decimals keep the byte output deterministic
    format!("{v:.3}")
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// One `<rect>` per pitched event: x spans onset..onset+duration, y is the
/// quarter-tone row, fill colour cycles per voice. Unpitched events are
/// skipped.
pub fn render_piano_roll(score: &Score, opts: &SvgOptions) -> String {
    let beats = score.end();
    let total_beats = (beats.numer() / beats.denom() + 1) as f64;
    let width = MARGIN * 2.0 + total_beats * opts.beat_width;
    let height = MARGIN * 2.0 + 24.0 * opts.row_height;
    let voices = score.voices();
    let color_of = |voice: &str| -> &str {
        let idx = voices.iter().position(|v| *v == voice).unwrap_or(0);
        &opts.palette[idx % opts.palette.len()]
    };

    let mut svg = String::new();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        fmt(width), fmt(height), fmt(width), fmt(height)
    )
    .unwrap();
    writeln!(svg, "<title>{}</title>", xml_escape(score.title())).unwrap();
    // axes
    let x0 = MARGIN;
    let y0 = MARGIN;
    let y1 = MARGIN + 24.0 * opts.row_height;
    let x1 = width - MARGIN;
    writeln!(
        svg,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#333333\" stroke-width=\"1\"/>",
        fmt(x0), fmt(y1), fmt(x1), fmt(y1)
    )
    .unwrap();
    writeln!(
        svg,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#333333\" stroke-width=\"1\"/>",
        fmt(x0), fmt(y0), fmt(x0), fmt(y1)
    )
    .unwrap();
    for e in score.events() {
        let Some(pitch) = e.pitch else { continue };
        let x = x0 + rat_f64(e.onset) * opts.beat_width;
        let w = rat_f64(e.duration) * opts.beat_width;
        let y = y0 + (23 - pitch.value() as i32) as f64 * opts.row_height;
        writeln!(
            svg,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
            fmt(x), fmt(y), fmt(w), fmt(opts.row_height - 1.0), color_of(&e.voice)
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    svg
}

fn rat_f64(r: crate::exact::Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn kind_color(kind: SegmentKind) -> &'static str {
    match kind {
        SegmentKind::HalfSide => "#e4572e",
        SegmentKind::FullSide => "#17bebb",
        SegmentKind::Apothem => "#76b041",
        SegmentKind::DoubleApothem => "#9b5de5",
    }
}

/// Every polygon becomes a `<path>`. With two or more polygons the last one
/// is the target: its edges are re-drawn as `<line>` elements coloured by
/// segment kind (plain grey if some edge does not classify).
pub fn render_tiling(polygons: &[BoundaryPolygon], _opts: &SvgOptions) -> String {
    let mut svg = String::new();
    if polygons.is_empty() {
        svg.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"64\" height=\"64\" viewBox=\"0 0 64 64\">\n</svg>\n");
        return svg;
    }
    let scale = 40.0;
    let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
    let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for poly in polygons {
        for p in poly.vertices() {
            let (x, y) = p.to_f64();
            min_x = min_x.min(x);
            min_y = min_y.min(y);
            max_x = max_x.max(x);
            max_y = max_y.max(y);
        }
    }
    let width = (max_x - min_x) * scale + MARGIN * 2.0;
    let height = (max_y - min_y) * scale + MARGIN * 2.0;
    // SVG y grows downward; flip.
    let tx = |x: f64| MARGIN + (x - min_x) * scale;
    let ty = |y: f64| height - MARGIN - (y - min_y) * scale;

    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        fmt(width), fmt(height), fmt(width), fmt(height)
    )
    .unwrap();
    let target = if polygons.len() >= 2 {
        polygons.len() - 1
    } else {
        usize::MAX
    };
    for (i, poly) in polygons.iter().enumerate() {
        let mut d = String::new();
        for (j, p) in poly.vertices().iter().enumerate() {
            let (x, y) = p.to_f64();
            let cmd = if j == 0 { 'M' } else { 'L' };
            write!(d, "{cmd} {} {} ", fmt(tx(x)), fmt(ty(y))).unwrap();
        }
        d.push('Z');
        let style = if i == target {
            "fill=\"#f5e9c9\" stroke=\"none\""
        } else {
            "fill=\"none\" stroke=\"#999999\" stroke-width=\"1.5\""
        };
        writeln!(svg, "<path d=\"{d}\" {style}/>").unwrap();
    }
    if target != usize::MAX {
        let poly = &polygons[target];
        let kinds = classify_edges(poly).ok();
        for (j, (p, q)) in poly.edges().into_iter().enumerate() {
            let color = kinds
                .as_ref()
                .map(|k| kind_color(k[j]))
                .unwrap_or("#555555");
            let (x1, y1) = p.to_f64();
            let (x2, y2) = q.to_f64();
            writeln!(
                svg,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"3\"/>",
                fmt(tx(x1)), fmt(ty(y1)), fmt(tx(x2)), fmt(ty(y2))
            )
            .unwrap();
        }
    }
    svg.push_str("</svg>\n");
    svg
}
