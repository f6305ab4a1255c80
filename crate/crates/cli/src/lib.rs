//! Command-line front end: argument types, command dispatch and exit codes.
//!
//! Exit code 0 means success, 1 a failed verification, 2 malformed input.

pub mod render;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use lantern_core::curve::CurveDiagram;
use lantern_core::lantern::{
    corrupted_lantern_classes, lantern_homology_classes, stl_bound_report, verify_lantern_with,
    verify_theorem14_homology,
};
use lantern_core::rotation::RotationMap;
use lantern_core::surface::PolygonSurface;
use lantern_core::theorem1::{
    brute_force_search, construct_standard, standard_curve, verify_witness, WitnessFile,
};
use lantern_core::word::{
    check_derivation, conjugate_census, conjugate_decomposition, lemma32_factorize, lemma_rules, theorem14_word,
    LanternLabels, Theorem14Symbols,
};
use lantern_core::Error;

pub const SUCCESS: i32 = 0;
pub const VERIFICATION_FAILED: i32 = 1;
pub const MALFORMED_INPUT: i32 = 2;

const HEADER: &str = "mcg-lantern v1";

#[derive(Debug, Parser)]
#[command(name = "mcg-lantern", version, about = "Disjoint curves under periodic maps and lantern factorizations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build or inspect identification polygons.
    #[command(subcommand)]
    Surface(SurfaceCommand),
    /// Curves disjoint from their image under a power of a periodic map.
    #[command(subcommand)]
    Thm1(Thm1Command),
    /// Lantern-relation words.
    #[command(subcommand)]
    Lantern(LanternCommand),
    /// Checks on the symplectic representation.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Draw a polygon and curves as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Subcommand)]
pub enum SurfaceCommand {
    /// Print the standard (4g+2)-gon.
    Standard {
        #[arg(long)]
        genus: usize,
    },
    /// Print invariants of a surface file.
    Info { file: PathBuf },
}

/// A surface given by genus (standard polygon) or by file.
#[derive(Debug, Clone, Args)]
pub struct SurfaceArgs {
    #[arg(long, conflicts_with = "surface")]
    pub genus: Option<usize>,
    #[arg(long)]
    pub surface: Option<PathBuf>,
}

/// A rotation given by shift or by order; neither means the half turn.
#[derive(Debug, Clone, Args)]
pub struct RotationArgs {
    #[arg(long, conflicts_with = "order")]
    pub shift: Option<usize>,
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Thm1Command {
    /// Certified witness from the standard curve on the standard polygon.
    Construct {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        shift: Option<usize>,
        /// Write the witness file here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive search over small chord diagrams.
    Search {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        rotation: RotationArgs,
        #[arg(long)]
        max_chords: usize,
        #[arg(long)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute every certificate of a witness file.
    Verify { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum LanternCommand {
    /// Replay the lantern derivation and print the six-conjugate word.
    Factor {
        /// Powers of the rotation used in the three coordinate changes.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        powers: Vec<i64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Evaluate the six-conjugate factorization in Sp(2g, Z).
    Homology {
        #[arg(long)]
        genus: usize,
        #[command(flatten)]
        rotation: RotationArgs,
    },
    /// Check the lantern relation on homology.
    Lantern {
        #[arg(long)]
        genus: usize,
        /// Replace the class of gamma1 by that of alpha1.
        #[arg(long)]
        corrupt: bool,
    },
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub surface: SurfaceArgs,
    /// Curve files to draw, in order.
    #[arg(long = "curve")]
    pub curves: Vec<PathBuf>,
    /// Draw the standard curve of the standard polygon.
    #[arg(long)]
    pub standard_curve: bool,
    /// Draw a witness curve and its image; overrides the surface arguments.
    #[arg(long, conflicts_with_all = ["genus", "surface"])]
    pub witness: Option<PathBuf>,
    /// Rotation marker.
    #[arg(long)]
    pub shift: Option<usize>,
}

/// Text for standard output and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl Outcome {
    fn new(ok: bool, stdout: String) -> Self {
        Self { code: if ok { SUCCESS } else { VERIFICATION_FAILED }, stdout }
    }
}

/// Exit code for an error that aborted a command.
pub fn error_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::NoCertifiedPower(_)
            | Error::VerificationFailed(_)
            | Error::Inconsistent(_)
            | Error::BigonRemovalStalled(_),
        ) => VERIFICATION_FAILED,
        _ => MALFORMED_INPUT,
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

/// Surface text with an optional leading header line.
fn parse_surface(input: &str) -> anyhow::Result<PolygonSurface> {
    let body = match input.lines().position(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#')) {
        Some(i) if input.lines().nth(i).map(str::trim) == Some(HEADER) => {
            input.lines().enumerate().map(|(j, l)| if j == i { "" } else { l }).collect::<Vec<_>>().join("\n")
        }
        _ => input.to_string(),
    };
    Ok(PolygonSurface::parse(&body)?)
}

fn load_surface(args: &SurfaceArgs) -> anyhow::Result<PolygonSurface> {
    match (&args.genus, &args.surface) {
        (Some(g), None) => Ok(PolygonSurface::standard(*g)?),
        (None, Some(path)) => parse_surface(&read(path)?).with_context(|| format!("in {}", path.display())),
        _ => bail!(Error::Precondition("give exactly one of --genus or --surface".into())),
    }
}

fn load_rotation(surface: &PolygonSurface, args: &RotationArgs) -> anyhow::Result<RotationMap> {
    Ok(match (args.shift, args.order) {
        (Some(s), _) => RotationMap::new(surface, s)?,
        (None, Some(d)) => RotationMap::from_order(surface, d)?,
        (None, None) => RotationMap::half_turn(surface)?,
    })
}

fn comment_lines(text: &str) -> String {
    text.lines().map(|l| format!("# {l}\n")).collect()
}

pub fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Surface(cmd) => surface(cmd),
        Command::Thm1(cmd) => thm1(cmd),
        Command::Lantern(cmd) => lantern(cmd),
        Command::Verify(cmd) => verify(cmd),
        Command::Render(args) => render_cmd(args),
    }
}

fn surface(cmd: SurfaceCommand) -> anyhow::Result<Outcome> {
    let s = match cmd {
        SurfaceCommand::Standard { genus } => {
            let s = PolygonSurface::standard(genus)?;
            return Ok(Outcome::new(true, format!("{HEADER}\n{s}")));
        }
        SurfaceCommand::Info { file } => parse_surface(&read(&file)?)?,
    };
    let mut out = String::new();
    writeln!(out, "sides {}", s.n_sides())?;
    writeln!(out, "genus {}", s.genus())?;
    writeln!(out, "euler characteristic {}", s.euler_char())?;
    writeln!(out, "vertex classes {}", s.vertex_cycles().len())?;
    for (i, cycle) in s.vertex_cycles().iter().enumerate() {
        let corners: Vec<String> = cycle.iter().map(usize::to_string).collect();
        writeln!(out, "vertex {i}: {}", corners.join(" "))?;
    }
    let shifts: Vec<String> = s.rotation_shifts().iter().map(usize::to_string).collect();
    writeln!(out, "rotation shifts {}", shifts.join(" "))?;
    let orders: Vec<String> = s.rotation_orders().iter().map(usize::to_string).collect();
    writeln!(out, "rotation orders {}", orders.join(" "))?;
    Ok(Outcome::new(true, out))
}

fn emit_witness(file: &WitnessFile, report: &str, out: Option<&Path>) -> anyhow::Result<String> {
    let text = format!("{file}{}", comment_lines(report));
    match out {
        Some(path) => {
            write(path, &text)?;
            Ok(format!("wrote {}\n{report}", path.display()))
        }
        None => Ok(text),
    }
}

fn thm1(cmd: Thm1Command) -> anyhow::Result<Outcome> {
    match cmd {
        Thm1Command::Construct { genus, order, shift, out } => {
            let (surface, rotation, w) = construct_standard(genus, order, shift)?;
            let file = WitnessFile { surface, rotation, curve: w.curve, k: w.k };
            let text = emit_witness(&file, &w.certificates.to_string(), out.as_deref())?;
            Ok(Outcome::new(w.certificates.passed(), text))
        }
        Thm1Command::Search { surface, rotation, max_chords, grid, out } => {
            let s = load_surface(&surface)?;
            let r = load_rotation(&s, &rotation)?;
            match brute_force_search(&s, &r, max_chords, grid)? {
                Some(w) => {
                    let file = WitnessFile { surface: s, rotation: r, curve: w.curve, k: w.k };
                    let text = emit_witness(&file, &w.certificates.to_string(), out.as_deref())?;
                    Ok(Outcome::new(w.certificates.passed(), text))
                }
                None => Ok(Outcome::new(
                    false,
                    format!("no witness with at most {max_chords} chords on grid {grid}\n"),
                )),
            }
        }
        Thm1Command::Verify { file } => {
            let w = WitnessFile::parse(&read(&file)?).with_context(|| format!("in {}", file.display()))?;
            let report = verify_witness(&w)?;
            let verdict = if report.passed() { "verified" } else { "rejected" };
            Ok(Outcome::new(report.passed(), format!("{report}{verdict}\n")))
        }
    }
}

fn lantern(cmd: LanternCommand) -> anyhow::Result<Outcome> {
    let LanternCommand::Factor { powers } = cmd;
    if powers.len() != 3 {
        bail!(Error::Precondition(format!("--powers takes three values, got {}", powers.len())));
    }
    let labels = LanternLabels::default();
    let symbols = Theorem14Symbols::default();
    let rules = lemma_rules(&labels);
    let derived = check_derivation(&rules, &labels)?;
    let factor = lemma32_factorize(&rules, &labels)?;
    let word = theorem14_word((powers[0], powers[1], powers[2]), &labels, &symbols)?;
    let census = conjugate_census(&word, &symbols.phi);
    let mut out = String::new();
    writeln!(out, "derivation {}", if derived { "ok" } else { "failed" })?;
    for r in &rules {
        writeln!(out, "rule {}: {} -> {}", r.map, r.source, r.target)?;
    }
    writeln!(out, "factorization {factor}")?;
    writeln!(out, "powers {} {} {}", powers[0], powers[1], powers[2])?;
    writeln!(out, "word {word}")?;
    if let Some(blocks) = conjugate_decomposition(&word, &symbols.phi) {
        for (i, b) in blocks.iter().enumerate() {
            writeln!(out, "conjugate {}: {}", i + 1, b.word(&symbols.phi))?;
        }
    }
    match census {
        Some(n) => writeln!(out, "census {n}")?,
        None => writeln!(out, "census none")?,
    }
    Ok(Outcome::new(derived && census == Some(6), out))
}

fn verify(cmd: VerifyCommand) -> anyhow::Result<Outcome> {
    match cmd {
        VerifyCommand::Homology { genus, rotation } => {
            let order = match (rotation.order, rotation.shift) {
                (Some(d), _) => d,
                (None, Some(s)) => RotationMap::new(&PolygonSurface::standard(genus)?, s)?.order(),
                (None, None) => bail!(Error::Precondition("give --order or --shift".into())),
            };
            let (surface, rot, w) = construct_standard(genus, order, rotation.shift)?;
            let report = verify_theorem14_homology(&surface, &rot, [&w, &w, &w])?;
            let mut out = report.to_string();
            match stl_bound_report(&report) {
                Ok(bound) => writeln!(out, "bound {}\n{}", bound.bound, bound.statement)?,
                Err(e) => writeln!(out, "no bound: {e}")?,
            }
            Ok(Outcome::new(report.passed(), out))
        }
        VerifyCommand::Lantern { genus, corrupt } => {
            let labels = LanternLabels::default();
            let classes = if corrupt {
                corrupted_lantern_classes(genus, &labels)?
            } else {
                lantern_homology_classes(genus, &labels)?
            };
            let ok = verify_lantern_with(genus, &classes, &labels)?;
            let mut out = String::new();
            for label in labels.all() {
                writeln!(out, "[{label}] = {}", classes[label])?;
            }
            writeln!(out, "lantern relation {}", if ok { "holds" } else { "fails" })?;
            Ok(Outcome::new(ok, out))
        }
    }
}

fn render_cmd(args: RenderArgs) -> anyhow::Result<Outcome> {
    let (surface, mut curves, mut rotation) = match &args.witness {
        Some(path) => {
            let w = WitnessFile::parse(&read(path)?).with_context(|| format!("in {}", path.display()))?;
            let image = w.rotation.power(w.k as i64).apply(&w.curve);
            (w.surface, vec![w.curve, image], Some(w.rotation))
        }
        None => (load_surface(&args.surface)?, Vec::new(), None),
    };
    if args.standard_curve {
        curves.push(standard_curve(&surface)?);
    }
    for path in &args.curves {
        let c = CurveDiagram::parse(&surface, &read(path)?).with_context(|| format!("in {}", path.display()))?;
        curves.push(c);
    }
    if let Some(s) = args.shift {
        rotation = Some(RotationMap::new(&surface, s)?);
    }
    let refs: Vec<&CurveDiagram> = curves.iter().collect();
    let svg = render::render_svg(&surface, &refs, rotation.as_ref());
    write(&args.out, &svg)?;
    Ok(Outcome::new(true, format!("wrote {} ({} curves)\n", args.out.display(), curves.len())))
}
