//! Command-line front end: wires the library modules to files and stdout.
//!
//! Exit codes: 0 success, 1 domain or parse errors (and usage errors),
//! 2 resource-limit errors (search bound).

mod config;
mod output;

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use tessella::exact::Rat;
use tessella::geometry::{
    boundary_of, classify_edges, polygon_area, select_hat_kites, select_large_kite,
    three_hexagon_patch, BoundaryPolygon,
};
use tessella::isorhythm::{cycle_length, expand_isorhythm, Color, Talea};
use tessella::phase::{process_schedule, ClapPattern};
use tessella::pitch::{hat_walk, kite_transforms, large_kite_walk};
use tessella::rhythm::{
    self, coverage, search, CanonSpec, ResidueSet, SearchMode, VoiceEntry,
};
use tessella::score::{
    from_canon, from_isorhythm, from_schedule, from_walk, parse_score, render_piano_roll,
    render_tiling, write_midi, write_score, MidiOptions, Score,
};
use tessella::timeline::{
    coverage_count, expand_mosaic_part, mosaic_part, timeline_to_events, trio_entries, PartId,
};

use config::Config;

/// Environment variable overriding the complement-search modulus bound.
const SEARCH_BOUND_VAR: &str = "TESSELLA_SEARCH_BOUND";

#[derive(Parser)]
#[command(
    name = "tessella",
    version,
    about = "Rhythmic tiling canons, isorhythm, phase shifting, hat geometry, pitch walks"
)]
struct Cli {
    /// Config file (key-value TOML: velocity, octave_anchor, palette,
    /// [voice_octaves]). Defaults to ./tessella.toml when present.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rhythmic tiling over Z/n: coverage analysis and complement search.
    Tile {
        #[command(subcommand)]
        command: TileCommand,
    },
    /// Talea/color expansion.
    Isorhythm {
        #[command(subcommand)]
        command: IsorhythmCommand,
    },
    /// Phase-shift process schedules.
    Phase {
        #[command(subcommand)]
        command: PhaseCommand,
    },
    /// Three-hexagon patch and hat construction.
    Hat {
        #[command(subcommand)]
        command: HatCommand,
    },
    /// Pitch-walk tables.
    Walk {
        #[command(subcommand)]
        command: WalkCommand,
    },
    /// Motif-entry timelines.
    Timeline {
        #[command(subcommand)]
        command: TimelineCommand,
    },
    /// Mosaic part expansion.
    Mosaic {
        #[command(subcommand)]
        command: MosaicCommand,
    },
    /// Renderers over score files.
    Render {
        #[command(subcommand)]
        command: RenderCommand,
    },
}

#[derive(Subcommand)]
enum TileCommand {
    /// Print support, overlaps and exactness of a voice layout.
    Verify(VerifyArgs),
    /// Enumerate complements of a motif.
    Search(SearchArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Cycle length n.
    #[arg(long)]
    n: Option<i64>,
    /// Primary motif residues, e.g. 0,2,5 (alias R in --entries).
    #[arg(long)]
    motif: Option<String>,
    /// Alternate motif residues (alias Rp in --entries).
    #[arg(long)]
    motif_alt: Option<String>,
    /// Voice list, e.g. R@1,R@2,Rp@5,Rp@12,R@9,Rp@13.
    #[arg(long)]
    entries: Option<String>,
    /// Read the spec from a .canon.txt file instead.
    #[arg(long, conflicts_with_all = ["n", "motif", "motif_alt", "entries"])]
    file: Option<PathBuf>,
    /// Write the spec to a .canon.txt file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Export the spec as a score file.
    #[arg(long)]
    score: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Cycle length n.
    #[arg(long)]
    n: i64,
    /// Motif residues, e.g. 0,4,8.
    #[arg(long)]
    motif: String,
    /// Enumerate minimal covers instead of exact tilings.
    #[arg(long)]
    cover: bool,
    /// Keep only the lexicographically least translate of each result.
    #[arg(long)]
    canonical: bool,
    /// Override the modulus bound (also TESSELLA_SEARCH_BOUND).
    #[arg(long)]
    bound: Option<usize>,
}

#[derive(Subcommand)]
enum IsorhythmCommand {
    /// Print the expansion table of one full cycle.
    Expand {
        /// Durations, e.g. 2,1,1.
        #[arg(long, conflicts_with = "file")]
        talea: Option<String>,
        /// Pitch codes, e.g. 60,62,64,65.
        #[arg(long, conflicts_with = "file")]
        color: Option<String>,
        /// Read talea/color from a key-value file.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Export the cycle as a score file.
        #[arg(long)]
        score: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PhaseCommand {
    /// Print the shift schedule for k = 0..=n.
    Schedule {
        /// Onset times within one cycle; rationals allowed, e.g. 0,3/2,7.
        #[arg(long)]
        pattern: String,
        /// Cycle length T in beats.
        #[arg(long)]
        cycle: String,
        /// Number of subdivisions / cycles n.
        #[arg(long, default_value_t = 12)]
        steps: u64,
        /// Export the schedule as a score file (two performer voices).
        #[arg(long)]
        score: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum HatCommand {
    /// Construct the patch and hat; print a summary.
    Build {
        /// Write an SVG diagram (hexagons underneath, hat on top).
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Print exact vertex coordinates.
        #[arg(long)]
        dump: bool,
    },
    /// Verify the geometric invariants; exit 1 if any fails.
    Check,
}

#[derive(Subcommand)]
enum WalkCommand {
    /// Print a fixed walk table: iii (large kite), iv (kite transforms),
    /// v (hat outline).
    Table {
        /// Which table: iii, iv or v.
        which: String,
        /// Export the walk as a score file (tables iii and v).
        #[arg(long)]
        score: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TimelineCommand {
    /// Print the coverage function T(t) of the built-in trio timeline.
    Coverage {
        /// Evaluate at specific times (rationals; repeatable).
        #[arg(long = "at")]
        at: Vec<String>,
        /// Export the timeline as a score file.
        #[arg(long)]
        score: Option<PathBuf>,
    },
    /// Write an SVG strip chart of T(t).
    Plot {
        #[arg(long)]
        svg: PathBuf,
    },
}

#[derive(Subcommand)]
enum MosaicCommand {
    /// Print the four records of a mosaic part (I..VI).
    Expand { part: String },
}

#[derive(Subcommand)]
enum RenderCommand {
    /// Piano roll SVG from a score file.
    Roll {
        #[arg(long, name = "score-file")]
        input: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
    /// Tiling SVG of the built-in patch and hat.
    Tiling {
        #[arg(long)]
        svg: PathBuf,
    },
    /// Standard MIDI file from a score file.
    Midi {
        #[arg(long, name = "score-file")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    // die quietly when stdout closes mid-pipe (e.g. `tessella ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version exit 0; anything else is exit 1 with usage.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let config = match Config::load(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command, &config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = match e.downcast_ref::<tessella::Error>() {
                Some(tessella::Error::SearchBound { .. }) => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn run(command: Command, config: &Config) -> anyhow::Result<()> {
    match command {
        Command::Tile { command } => match command {
            TileCommand::Verify(args) => tile_verify(args, config),
            TileCommand::Search(args) => tile_search(args),
        },
        Command::Isorhythm { command } => match command {
            IsorhythmCommand::Expand {
                talea,
                color,
                file,
                score,
            } => isorhythm_expand(talea, color, file, score, config),
        },
        Command::Phase { command } => match command {
            PhaseCommand::Schedule {
                pattern,
                cycle,
                steps,
                score,
            } => phase_schedule(&pattern, &cycle, steps, score, config),
        },
        Command::Hat { command } => match command {
            HatCommand::Build { svg, dump } => hat_build(svg, dump, config),
            HatCommand::Check => hat_check(),
        },
        Command::Walk { command } => match command {
            WalkCommand::Table { which, score } => walk_table(&which, score, config),
        },
        Command::Timeline { command } => match command {
            TimelineCommand::Coverage { at, score } => timeline_coverage(&at, score, config),
            TimelineCommand::Plot { svg } => timeline_plot(&svg, config),
        },
        Command::Mosaic { command } => match command {
            MosaicCommand::Expand { part } => mosaic_expand(&part),
        },
        Command::Render { command } => match command {
            RenderCommand::Roll { input, svg } => render_roll(&input, &svg, config),
            RenderCommand::Tiling { svg } => render_tiling_cmd(&svg, config),
            RenderCommand::Midi { input, out } => render_midi(&input, &out, config),
        },
    }
}

fn parse_int_list(s: &str, what: &str) -> anyhow::Result<Vec<i64>> {
    s.split(',')
        .map(|item| {
            item.trim()
                .parse::<i64>()
                .map_err(|_| anyhow!("invalid {what} entry {:?}", item.trim()))
        })
        .collect()
}

fn parse_rat(s: &str) -> anyhow::Result<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| anyhow!("invalid rational {s:?}"))?;
        let den: i64 = den.trim().parse().map_err(|_| anyhow!("invalid rational {s:?}"))?;
        if den == 0 {
            return Err(anyhow!("invalid rational {s:?}: zero denominator"));
        }
        Ok(Rat::new(num, den))
    } else {
        Ok(Rat::from_integer(
            s.parse::<i64>().map_err(|_| anyhow!("invalid rational {s:?}"))?,
        ))
    }
}

fn parse_rat_list(s: &str) -> anyhow::Result<Vec<Rat>> {
    s.split(',').map(parse_rat).collect()
}

fn write_file(path: &PathBuf, bytes: &[u8], what: &str) -> anyhow::Result<()> {
    fs::write(path, bytes).with_context(|| format!("writing {what} to {}", path.display()))?;
    println!("wrote {what}: {}", path.display());
    Ok(())
}

fn build_spec_from_args(args: &VerifyArgs) -> anyhow::Result<CanonSpec> {
    if let Some(path) = &args.file {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        return Ok(rhythm::parse_canon(&text)?);
    }
    let n = args.n.ok_or_else(|| anyhow!("--n is required (or --file)"))?;
    if n <= 0 {
        return Err(tessella::Error::Domain("modulus must be positive".into()).into());
    }
    let n = n as usize;
    let motif_r = args
        .motif
        .as_deref()
        .ok_or_else(|| anyhow!("--motif is required (or --file)"))?;
    let motif_r = ResidueSet::new(n, parse_int_list(motif_r, "motif")?)?;
    let motif_rp = match args.motif_alt.as_deref() {
        Some(s) => Some(ResidueSet::new(n, parse_int_list(s, "motif-alt")?)?),
        None => None,
    };
    let entries = args
        .entries
        .as_deref()
        .ok_or_else(|| anyhow!("--entries is required (or --file)"))?;
    let mut voices = Vec::new();
    for item in entries.split(',') {
        let item = item.trim();
        let (alias, offset) = item
            .split_once('@')
            .ok_or_else(|| anyhow!("entry {item:?} must look like R@3 or Rp@12"))?;
        let motif = match alias.trim() {
            "R" => motif_r.clone(),
            "Rp" => motif_rp
                .clone()
                .ok_or_else(|| anyhow!("entry {item:?} uses Rp but --motif-alt is missing"))?,
            other => return Err(anyhow!("unknown motif alias {other:?} (use R or Rp)")),
        };
        let offset: usize = offset
            .trim()
            .parse()
            .map_err(|_| anyhow!("invalid offset in entry {item:?}"))?;
        voices.push(VoiceEntry::new(motif, offset, item.to_string())?);
    }
    Ok(CanonSpec::new(n, voices)?)
}

fn tile_verify(args: VerifyArgs, _config: &Config) -> anyhow::Result<()> {
    let spec = build_spec_from_args(&args)?;
    let profile = coverage(&spec);
    println!("modulus  = {}", spec.modulus());
    println!("voices   = {}", spec.voices().len());
    println!("onsets   = {}", spec.onset_count());
    println!("support  = {}", output::support_line(&profile));
    println!("overlaps = {}", output::overlap_line(&profile));
    println!("exact    = {}", profile.is_exact());
    if let Some(path) = &args.out {
        write_file(path, rhythm::write_canon(&spec).as_bytes(), "canon spec")?;
    }
    if let Some(path) = &args.score {
        write_file(path, write_score(&from_canon(&spec)).as_bytes(), "score")?;
    }
    Ok(())
}

fn search_bound(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var(SEARCH_BOUND_VAR)
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(search::DEFAULT_SEARCH_BOUND)
}

fn tile_search(args: SearchArgs) -> anyhow::Result<()> {
    if args.n <= 0 {
        return Err(tessella::Error::Domain("modulus must be positive".into()).into());
    }
    let motif = ResidueSet::new(args.n as usize, parse_int_list(&args.motif, "motif")?)?;
    let mode = if args.cover {
        SearchMode::MinimalCover
    } else {
        SearchMode::Exact
    };
    let bound = search_bound(args.bound);
    let mut results = search::find_complements_bounded(&motif, mode, bound)?;
    if args.canonical {
        results = search::canonical_translates(&results);
    }
    let label = match mode {
        SearchMode::Exact => "exact complements",
        SearchMode::MinimalCover => "minimal covers",
    };
    println!("{label} of {motif}: {}", results.len());
    for b in &results {
        println!("{b}");
    }
    Ok(())
}

fn isorhythm_expand(
    talea: Option<String>,
    color: Option<String>,
    file: Option<PathBuf>,
    score: Option<PathBuf>,
    _config: &Config,
) -> anyhow::Result<()> {
    let (talea, color) = if let Some(path) = file {
        let text = fs::read_to_string(&path)
            .with_context(|| format!("reading {}", path.display()))?;
        output::parse_iso_file(&text)?
    } else {
        let talea = talea.ok_or_else(|| anyhow!("--talea is required (or --file)"))?;
        let color = color.ok_or_else(|| anyhow!("--color is required (or --file)"))?;
        let durations = parse_int_list(&talea, "talea")?
            .into_iter()
            .map(|d| {
                u64::try_from(d).map_err(|_| anyhow!("talea durations must be positive"))
            })
            .collect::<anyhow::Result<Vec<u64>>>()?;
        (Talea::new(durations)?, Color::new(parse_int_list(&color, "color")?)?)
    };
    let events = expand_isorhythm(&talea, &color);
    println!(
        "cycle: m = {}, n = {}, lcm = {}",
        talea.len(),
        color.len(),
        cycle_length(&talea, &color)
    );
    println!("step  pitch  duration");
    for e in &events {
        println!("{:>4}  {:>5}  {:>8}", e.step, e.pitch, e.duration);
    }
    if let Some(path) = &score {
        let s = from_isorhythm(&events, "isorhythm");
        write_file(path, write_score(&s).as_bytes(), "score")?;
    }
    Ok(())
}

fn phase_schedule(
    pattern: &str,
    cycle: &str,
    steps: u64,
    score: Option<PathBuf>,
    _config: &Config,
) -> anyhow::Result<()> {
    let cycle = parse_rat(cycle)?;
    let onsets = parse_rat_list(pattern)?;
    let base = ClapPattern::new(cycle, onsets)?;
    let schedule = process_schedule(&base, steps)?;
    for (k, p) in schedule.iter().enumerate() {
        let onsets: Vec<String> = p.onsets().iter().map(|o| o.to_string()).collect();
        println!("k={k:<3} {}", onsets.join(", "));
    }
    if let Some(path) = &score {
        let s = from_schedule(&schedule, &base);
        write_file(path, write_score(&s).as_bytes(), "score")?;
    }
    Ok(())
}

fn hat_build(svg: Option<PathBuf>, dump: bool, config: &Config) -> anyhow::Result<()> {
    let patch = three_hexagon_patch();
    let hat_kites = select_hat_kites(&patch);
    let hat = boundary_of(&hat_kites)?;
    let kinds = classify_edges(&hat)?;
    let large = boundary_of(&select_large_kite(&patch))?;
    println!("hat: {} kites, {} boundary edges", hat_kites.len(), hat.edge_count());
    println!("area      = {}", polygon_area(&hat)?);
    println!("edge kinds = {}", output::kind_line(&kinds));
    println!(
        "large kite: {} edges, area = {}",
        large.edge_count(),
        polygon_area(&large)?
    );
    if dump {
        println!("hat vertices:");
        for p in hat.vertices() {
            println!("  {p}");
        }
        println!("large-kite vertices:");
        for p in large.vertices() {
            println!("  {p}");
        }
    }
    if let Some(path) = &svg {
        let polys: Vec<BoundaryPolygon> = patch
            .iter()
            .map(|h| h.boundary())
            .chain(std::iter::once(hat))
            .collect();
        let doc = render_tiling(&polys, &config.svg_options());
        write_file(path, doc.as_bytes(), "SVG")?;
    }
    Ok(())
}

fn hat_check() -> anyhow::Result<()> {
    let checks = output::run_hat_checks();
    let mut failed = 0;
    for (name, ok) in &checks {
        println!("{} {name}", if *ok { "PASS" } else { "FAIL" });
        if !ok {
            failed += 1;
        }
    }
    if failed > 0 {
        Err(anyhow!("{failed} geometry check(s) failed"))
    } else {
        Ok(())
    }
}

fn walk_table(which: &str, score: Option<PathBuf>, _config: &Config) -> anyhow::Result<()> {
    match which.to_ascii_lowercase().as_str() {
        "iii" => {
            let walk = large_kite_walk();
            println!("step  base        delta  result (mod 12)");
            for (i, s) in walk.iter().enumerate() {
                println!(
                    "{:>4}  {:<10}  {:>5}  {}",
                    i + 1,
                    format!("{} ({})", s.base.name(), s.base.semitone_string()),
                    s.delta_string(),
                    s.result.semitone_string()
                );
            }
            if let Some(path) = &score {
                let s = from_walk(&walk, "large kite");
                write_file(path, write_score(&s).as_bytes(), "score")?;
            }
        }
        "iv" => {
            println!("kite  hexagon  beats  deltas");
            for row in kite_transforms() {
                println!(
                    "{:>4}  {:<7}  {:>5}  [{}]",
                    row.kite,
                    row.hexagon.to_string(),
                    row.beats,
                    row.delta_strings().join(", ")
                );
            }
            if score.is_some() {
                return Err(anyhow!("table iv is not a walk; --score applies to iii and v"));
            }
        }
        "v" => {
            let walk = hat_walk();
            println!("no.  segment      base        delta  result (mod 12)");
            for (i, s) in walk.iter().enumerate() {
                println!(
                    "{:>3}  {:<11}  {:<10}  {:>5}  {}",
                    i + 1,
                    s.kind.to_string(),
                    format!("{} ({})", s.base.name(), s.base.semitone_string()),
                    s.delta_string(),
                    s.result.semitone_string()
                );
            }
            if let Some(path) = &score {
                let s = from_walk(&walk, "hat outline");
                write_file(path, write_score(&s).as_bytes(), "score")?;
            }
        }
        other => return Err(anyhow!("unknown table {other:?}: use iii, iv or v")),
    }
    Ok(())
}

fn timeline_coverage(
    at: &[String],
    score: Option<PathBuf>,
    config: &Config,
) -> anyhow::Result<()> {
    let entries = trio_entries();
    if at.is_empty() {
        let max_end = entries
            .iter()
            .map(|e| e.end())
            .max()
            .unwrap_or_else(|| Rat::from_integer(0));
        println!("t     T(t)");
        let mut t = Rat::from_integer(0);
        while t <= max_end {
            println!("{:<4}  {}", t.to_string(), coverage_count(&entries, t));
            t += Rat::from_integer(1);
        }
    } else {
        for s in at {
            let t = parse_rat(s)?;
            println!("T({t}) = {}", coverage_count(&entries, t));
        }
    }
    if let Some(path) = &score {
        let events = timeline_to_events(
            &entries,
            &tessella::timeline::default_lengths(),
            &config.motif_palette(),
        )?;
        let s = Score::new("trio timeline", events);
        write_file(path, write_score(&s).as_bytes(), "score")?;
    }
    Ok(())
}

fn timeline_plot(path: &PathBuf, _config: &Config) -> anyhow::Result<()> {
    let doc = output::coverage_strip_chart(&trio_entries());
    write_file(path, doc.as_bytes(), "SVG")
}

fn mosaic_expand(part: &str) -> anyhow::Result<()> {
    let id: PartId = part.parse()?;
    let part = mosaic_part(id);
    let records = expand_mosaic_part(&part)?;
    println!("part {}", part.id);
    println!("role        colour  matrix     measures");
    let mut total = 0;
    for r in &records {
        let matrix = r
            .matrix
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        println!(
            "{:<10}  {:<6}  ({matrix:<7})  {:>3}",
            format!("{:?}", r.role),
            r.color.to_string(),
            r.measures
        );
        total += r.measures;
    }
    println!("total measures = {total}");
    Ok(())
}

fn render_roll(input: &PathBuf, svg: &PathBuf, config: &Config) -> anyhow::Result<()> {
    let text = fs::read_to_string(input)
        .with_context(|| format!("reading {}", input.display()))?;
    let score = parse_score(&text)?;
    let doc = render_piano_roll(&score, &config.svg_options());
    write_file(svg, doc.as_bytes(), "SVG")
}

fn render_tiling_cmd(svg: &PathBuf, config: &Config) -> anyhow::Result<()> {
    let patch = three_hexagon_patch();
    let hat = boundary_of(&select_hat_kites(&patch))?;
    let polys: Vec<BoundaryPolygon> = patch
        .iter()
        .map(|h| h.boundary())
        .chain(std::iter::once(hat))
        .collect();
    write_file(svg, render_tiling(&polys, &config.svg_options()).as_bytes(), "SVG")
}

fn render_midi(input: &PathBuf, out: &PathBuf, config: &Config) -> anyhow::Result<()> {
    let text = fs::read_to_string(input)
        .with_context(|| format!("reading {}", input.display()))?;
    let score = parse_score(&text)?;
    let mut opts = MidiOptions {
        octave_anchor: config.octave_anchor,
        voice_anchors: BTreeMap::new(),
    };
    for (voice, anchor) in &config.voice_octaves {
        opts.voice_anchors.insert(voice.clone(), *anchor);
    }
    let bytes = write_midi(&score, &opts)?;
    write_file(out, &bytes, "MIDI")
}
