//! Output helpers: table lines, the iso key-value file, the coverage strip
//! chart, and the hat check list.

use std::fmt::Write as _;

use anyhow::anyhow;

use tessella::exact::{Rat, Sqrt3};
use tessella::geometry::{
    boundary_of, classify_edges, is_edge_connected, polygon_area, select_hat_kites,
    select_large_kite, three_hexagon_patch, HexId, SegmentKind,
};
use tessella::isorhythm::{Color, Talea};
use tessella::rhythm::CoverageProfile;
use tessella::timeline::{coverage_count, MotifEntry};

pub fn support_line(profile: &CoverageProfile) -> String {
    if profile.is_full_support() {
        format!("0..{} (complete)", profile.modulus() - 1)
    } else {
        let missing: Vec<String> = (0..profile.modulus())
            .filter(|&r| profile.counts()[r] == 0)
            .map(|r| r.to_string())
            .collect();
        let support: Vec<String> = profile.support().iter().map(|r| r.to_string()).collect();
        format!(
            "{{{}}} (missing {})",
            support.join(", "),
            missing.join(", ")
        )
    }
}

pub fn overlap_line(profile: &CoverageProfile) -> String {
    let overlaps = profile.overlaps();
    if overlaps.is_empty() {
        "none".to_string()
    } else {
        overlaps
            .iter()
            .map(|(r, c)| format!("{r}:{c}"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

pub fn kind_line(kinds: &[SegmentKind]) -> String {
    kinds
        .iter()
        .map(|k| k.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Parses the shared key-value format for isorhythm input:
/// `talea = [2, 1, 1]` and `color = [60, 62, 64, 65]` lines.
pub fn parse_iso_file(text: &str) -> anyhow::Result<(Talea, Color)> {
    let mut talea: Option<Vec<u64>> = None;
    let mut color: Option<Vec<i64>> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("line {}: expected 'key = [..]'", idx + 1))?;
        let items = value
            .trim()
            .strip_prefix('[')
            .and_then(|v| v.strip_suffix(']'))
            .ok_or_else(|| anyhow!("line {}: expected a [..] list", idx + 1))?;
        let parse_items = |items: &str| -> anyhow::Result<Vec<i64>> {
            items
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<i64>()
                        .map_err(|_| anyhow!("line {}: invalid integer {:?}", idx + 1, s.trim()))
                })
                .collect()
        };
        match key.trim() {
            "talea" => {
                talea = Some(
                    parse_items(items)?
                        .into_iter()
                        .map(|d| {
                            u64::try_from(d)
                                .map_err(|_| anyhow!("line {}: negative duration", idx + 1))
                        })
                        .collect::<anyhow::Result<Vec<u64>>>()?,
                )
            }
            "color" => color = Some(parse_items(items)?),
            other => return Err(anyhow!("line {}: unknown key {other:?}", idx + 1)),
        }
    }
    let talea = Talea::new(talea.ok_or_else(|| anyhow!("missing 'talea'"))?)?;
    let color = Color::new(color.ok_or_else(|| anyhow!("missing 'color'"))?)?;
    Ok((talea, color))
}

/// The checks behind `hat check`, each (name, passed).
pub fn run_hat_checks() -> Vec<(String, bool)> {
    let patch = three_hexagon_patch();
    let hat_kites = select_hat_kites(&patch);
    let large_kites = select_large_kite(&patch);
    let mut checks: Vec<(String, bool)> = Vec::new();

    let count = |id: HexId| hat_kites.iter().filter(|k| k.parent == id).count();
    checks.push((
        "hat kites split 4 + 2 + 2 across hexagons".into(),
        (count(HexId::H1), count(HexId::H2), count(HexId::H3)) == (4, 2, 2),
    ));
    checks.push((
        "hat union is edge-connected".into(),
        is_edge_connected(&hat_kites),
    ));
    match boundary_of(&hat_kites) {
        Ok(hat) => {
            checks.push(("hat boundary closes".into(), true));
            checks.push(("hat boundary has 13 edges".into(), hat.edge_count() == 13));
            checks.push((
                "hat area is 8*sqrt3".into(),
                polygon_area(&hat).is_ok_and(|a| a == Sqrt3::root3(Rat::from_integer(8))),
            ));
            let kinds = classify_edges(&hat).unwrap_or_default();
            let tally = |k: SegmentKind| kinds.iter().filter(|&&x| x == k).count();
            checks.push((
                "hat edge kinds are 6 half-sides, 1 full side, 6 apothems".into(),
                tally(SegmentKind::HalfSide) == 6
                    && tally(SegmentKind::FullSide) == 1
                    && tally(SegmentKind::Apothem) == 6,
            ));
        }
        Err(_) => checks.push(("hat boundary closes".into(), false)),
    }
    match boundary_of(&large_kites) {
        Ok(large) => {
            checks.push((
                "large kite has 6 edges".into(),
                large.edge_count() == 6,
            ));
            checks.push((
                "large kite area is 5*sqrt3".into(),
                polygon_area(&large).is_ok_and(|a| a == Sqrt3::root3(Rat::from_integer(5))),
            ));
        }
        Err(_) => checks.push(("large kite boundary closes".into(), false)),
    }
    checks
}

/// Step-function strip chart of the coverage count over the timeline.
pub fn coverage_strip_chart(entries: &[MotifEntry]) -> String {
    let margin = 40.0;
    let step = Rat::new(1, 4);
    let max_t = entries
        .iter()
        .map(MotifEntry::end)
        .max()
        .unwrap_or_else(|| Rat::from_integer(1));
    let max_cov = {
        let mut m = 1;
        let mut t = Rat::from_integer(0);
        while t <= max_t {
            m = m.max(coverage_count(entries, t));
            t += step;
        }
        m
    };
    let x_scale = 48.0;
    let y_scale = 24.0;
    let width = margin * 2.0 + to_f64(max_t) * x_scale;
    let height = margin * 2.0 + max_cov as f64 * y_scale;
    let tx = |t: Rat| margin + to_f64(t) * x_scale;
    let ty = |c: usize| height - margin - c as f64 * y_scale;

    let mut svg = String::new();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.3}\" height=\"{height:.3}\" viewBox=\"0 0 {width:.3} {height:.3}\">"
    )
    .unwrap();
    writeln!(
        svg,
        "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"#333333\" stroke-width=\"1\"/>",
        margin, ty(0), width - margin, ty(0)
    )
    .unwrap();
    writeln!(
        svg,
        "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"#333333\" stroke-width=\"1\"/>",
        margin, margin, margin, ty(0)
    )
    .unwrap();
    let mut d = String::new();
    let mut t = Rat::from_integer(0);
    let mut first = true;
    while t <= max_t {
        let c = coverage_count(entries, t);
        let cmd = if first { 'M' } else { 'L' };
        write!(d, "{cmd} {:.3} {:.3} ", tx(t), ty(c)).unwrap();
        first = false;
        t += step;
    }
    writeln!(
        svg,
        "<path d=\"{}\" fill=\"none\" stroke=\"#4878cf\" stroke-width=\"2\"/>",
        d.trim_end()
    )
    .unwrap();
    svg.push_str("</svg>\n");
    svg
}

fn to_f64(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
