//! The `quadtile` command line: decide, tile, verify and certify problem
//! documents. Every command writes its report to a caller-supplied sink and
//! returns a [`Status`]; [`exit_code`] maps results to the process status
//! (0 YES/valid, 10 NO/invalid, 2 input error).

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use quadtile::document::{parse_problem, BundleDoc, DocumentError, TilingDoc};
use quadtile::exactfield::format_rational;
use quadtile::tiling::{
    area_additivity_check_many, check_bundle, make_bundle, verify, AreaCoeffs, TilingError,
};
use quadtile::{classify, construct, decide, plan, Rational, ShapeSpec, Tiling};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub const EXIT_YES: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NO: i32 = 10;

/// Width of the SVG viewport in user units.
pub const SVG_WIDTH: f64 = 512.0;

#[derive(Debug, Parser)]
#[command(
    name = "quadtile",
    version,
    about = "Exact rectangle tilings with side ratios in Q[√p]"
)]
pub struct Cli {
    /// Also print the classification of the shape list.
    #[arg(long, global = true)]
    pub classify: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the target rectangle can be tiled.
    Decide(ProblemArgs),
    /// Build and verify a tiling, or a certificate bundle when none exists.
    Tile(TileArgs),
    /// Check a tiling document against a problem.
    Verify(VerifyArgs),
    /// Produce and check an impossibility certificate bundle.
    Certify(OutArgs),
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    #[arg(long, value_name = "FILE")]
    pub problem: PathBuf,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    #[arg(long, value_name = "FILE")]
    pub problem: PathBuf,
    /// Where to write the document; stdout when absent.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TileArgs {
    #[command(flatten)]
    pub io: OutArgs,
    /// Also render the tiling as SVG.
    #[arg(long, value_name = "FILE")]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_name = "FILE")]
    pub problem: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub tiling: PathBuf,
    /// Seed for the "area" spot-check coefficients.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Yes,
    No,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Document {
        path: PathBuf,
        source: DocumentError,
    },
    #[error("tiling uses p = {tiling} but the problem uses p = {problem}")]
    ContextMismatch { tiling: String, problem: String },
    #[error("not an impossible instance: the target can be tiled")]
    NotAnImpossibleInstance,
    #[error(transparent)]
    Construct(#[from] quadtile::constructor::ConstructError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error(transparent)]
    Criteria(#[from] quadtile::criteria::CriteriaError),
    #[error("internal self-check failed: {0}")]
    InternalVerificationFailure(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub fn exit_code(result: &Result<Status, CliError>) -> i32 {
    match result {
        Ok(Status::Yes) => EXIT_YES,
        Ok(Status::No) => EXIT_NO,
        Err(_) => EXIT_INPUT,
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Status, CliError> {
    match &cli.command {
        Command::Decide(args) => cmd_decide(&load_problem(&args.problem)?, cli.classify, out),
        Command::Tile(args) => {
            let spec = load_problem(&args.io.problem)?;
            cmd_tile(
                &spec,
                args.io.out.as_deref(),
                args.svg.as_deref(),
                cli.classify,
                out,
            )
        }
        Command::Verify(args) => {
            let spec = load_problem(&args.problem)?;
            let doc = read(&args.tiling)?;
            let tiling = TilingDoc::parse(&doc)
                .and_then(|d| d.to_tiling())
                .map_err(|source| CliError::Document {
                    path: args.tiling.clone(),
                    source,
                })?;
            cmd_verify(tiling, &spec, args.seed, out)
        }
        Command::Certify(args) => {
            let spec = load_problem(&args.problem)?;
            cmd_certify(&spec, args.out.as_deref(), cli.classify, out)
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn write_to(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.to_path_buf(),
            source,
        }),
        None => Ok(writeln!(out, "{text}")?),
    }
}

pub fn load_problem(path: &Path) -> Result<ShapeSpec, CliError> {
    parse_problem(&read(path)?).map_err(|source| CliError::Document {
        path: path.to_path_buf(),
        source,
    })
}

fn print_classification(spec: &ShapeSpec, out: &mut dyn Write) -> Result<(), CliError> {
    let class = classify(spec)?;
    writeln!(out, "classification: {class}")?;
    for (i, x) in spec.shapes().iter().enumerate() {
        writeln!(out, "  shape {i}: {x} (conjugate {})", x.conj())?;
    }
    Ok(())
}

pub fn cmd_decide(
    spec: &ShapeSpec,
    show_class: bool,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    if show_class {
        print_classification(spec, out)?;
    }
    let decision = decide(spec)?;
    writeln!(
        out,
        "verdict: {}",
        if decision.is_yes() { "YES" } else { "NO" }
    )?;
    writeln!(out, "case: {}", decision.classification.name())?;
    writeln!(
        out,
        "admissible: {}",
        decision.classification.admissible_set()
    )?;
    if let Some(reason) = &decision.reason {
        writeln!(out, "reason: {reason}")?;
    }
    Ok(if decision.is_yes() {
        Status::Yes
    } else {
        Status::No
    })
}

/// Writes a verified tiling on YES, a checked certificate bundle on NO.
pub fn cmd_tile(
    spec: &ShapeSpec,
    out_path: Option<&Path>,
    svg_path: Option<&Path>,
    show_class: bool,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    if show_class {
        print_classification(spec, out)?;
    }
    if !decide(spec)?.is_yes() {
        let bundle = checked_bundle(spec)?;
        write_to(out_path, &to_json(&BundleDoc::from_bundle(&bundle)), out)?;
        if out_path.is_some() {
            writeln!(out, "verdict: NO")?;
            writeln!(out, "wrote certificate bundle (k = {})", bundle.k)?;
        }
        return Ok(Status::No);
    }
    let recipe = plan(spec)?;
    let tiling = construct(spec)?;
    // self-check on the document exactly as it will be read back
    let text = to_json(&TilingDoc::from_tiling(&tiling));
    let mut check = TilingDoc::parse(&text)
        .and_then(|d| d.to_tiling())
        .map_err(|e| CliError::InternalVerificationFailure(e.to_string()))?;
    let report = verify(&mut check, spec.shapes())?;
    if !report.is_valid() || check.ratio() != *spec.target() || !report.guillotine {
        return Err(CliError::InternalVerificationFailure(format!("{report:?}")));
    }
    write_to(out_path, &text, out)?;
    if let Some(path) = svg_path {
        std::fs::write(path, render_svg(&tiling)).map_err(|source| CliError::Write {
            path: path.to_path_buf(),
            source,
        })?;
    }
    if out_path.is_some() {
        writeln!(out, "verdict: YES")?;
        writeln!(out, "tiles: {}", tiling.len())?;
        writeln!(out, "recipe: {recipe}")?;
    }
    Ok(Status::Yes)
}

/// Exit status YES iff the tiles dissect the bounds, every tile has an
/// allowed ratio, the bounds have the problem's target ratio and the
/// "area" spot-checks balance.
pub fn cmd_verify(
    mut tiling: Tiling,
    spec: &ShapeSpec,
    seed: u64,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    if tiling.ctx().p() != spec.ctx().p() {
        return Err(CliError::ContextMismatch {
            tiling: format_rational(tiling.ctx().p()),
            problem: format_rational(spec.ctx().p()),
        });
    }
    let report = verify(&mut tiling, spec.shapes())?;
    let target_ok = tiling.ratio() == *spec.target();
    let coeffs = spot_coeffs(seed);
    let areas = area_additivity_check_many(&tiling, &coeffs)?;

    writeln!(out, "tiles: {}", tiling.len())?;
    writeln!(
        out,
        "bounds: W = {}, H = {}",
        tiling.width(),
        tiling.height()
    )?;
    writeln!(out, "covered: {}", report.covered)?;
    writeln!(out, "disjoint: {}", report.disjoint)?;
    writeln!(out, "contained: {}", report.contained)?;
    writeln!(out, "ratios_ok: {}", report.ratios_ok == Some(true))?;
    writeln!(out, "target_ok: {target_ok}")?;
    writeln!(out, "guillotine: {}", report.guillotine)?;
    for (c, ok) in coeffs.iter().zip(&areas) {
        writeln!(
            out,
            "area (A, B, C) = ({}, {}, {}): {}",
            format_rational(&c.a),
            format_rational(&c.b),
            format_rational(&c.c),
            if *ok { "balanced" } else { "UNBALANCED" }
        )?;
    }
    for failure in &report.failures {
        writeln!(out, "failure: {failure}")?;
    }
    let valid = report.is_valid() && target_ok && areas.iter().all(|&ok| ok);
    writeln!(out, "valid: {valid}")?;
    Ok(if valid { Status::Yes } else { Status::No })
}

fn spot_coeffs(seed: u64) -> Vec<AreaCoeffs> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = || Rational::new(rng.gen_range(-20..=20).into(), rng.gen_range(1..=10).into());
    (0..3).map(|_| AreaCoeffs::new(r(), r(), r())).collect()
}

pub fn cmd_certify(
    spec: &ShapeSpec,
    out_path: Option<&Path>,
    show_class: bool,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    if show_class {
        print_classification(spec, out)?;
    }
    if decide(spec)?.is_yes() {
        return Err(CliError::NotAnImpossibleInstance);
    }
    let bundle = checked_bundle(spec)?;
    write_to(out_path, &to_json(&BundleDoc::from_bundle(&bundle)), out)?;
    if out_path.is_some() {
        let core = &bundle.core;
        writeln!(out, "extremal shape: {} (index {})", core.shape, bundle.k)?;
        writeln!(
            out,
            "coeffs (A, B, C) = ({}, {}, {})",
            format_rational(&core.coeffs.a),
            format_rational(&core.coeffs.b),
            format_rational(&core.coeffs.c)
        )?;
        writeln!(
            out,
            "quarter_discriminant: {}",
            format_rational(&core.quarter_discriminant)
        )?;
        writeln!(out, "reductions: {}", bundle.reductions.len())?;
    }
    Ok(Status::Yes)
}

fn checked_bundle(spec: &ShapeSpec) -> Result<quadtile::tiling::CertificateBundle, CliError> {
    let bundle = make_bundle(spec.target(), spec.shapes())?;
    if !check_bundle(&bundle, spec.shapes()) {
        return Err(CliError::InternalVerificationFailure(
            "certificate bundle did not check".to_string(),
        ));
    }
    Ok(bundle)
}

fn to_json<T: serde::Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

const PALETTE: [&str; 6] = [
    "#8ecae6", "#ffb703", "#90be6d", "#f4a261", "#cdb4db", "#e9c46a",
];

fn coord(v: f64, max: f64) -> String {
    // rounding in the float image can push an edge a hair outside
    let v = v.clamp(0.0, max);
    format!("{:.6}", if v == 0.0 { 0.0 } else { v })
}

/// Presentation-only picture of a tiling, `y` pointing up as in the
/// document. Identical tilings give byte-identical output.
pub fn render_svg(t: &Tiling) -> String {
    let scale = SVG_WIDTH / t.width().approx();
    let height = t.height().approx() * scale;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = coord(SVG_WIDTH, SVG_WIDTH),
        h = coord(height, height),
    );
    let _ = writeln!(s, "<title>W = {}, H = {}</title>", t.width(), t.height());
    for tile in t.tiles() {
        let x = tile.x.approx() * scale;
        let top = height - tile.top().approx() * scale;
        let fill = PALETTE[tile.shape_index.unwrap_or(0) % PALETTE.len()];
        let _ = writeln!(
            s,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{fill}" stroke="black" stroke-width="0.5"/>"#,
            coord(x, SVG_WIDTH),
            coord(top, height),
            coord(tile.w.approx() * scale, SVG_WIDTH),
            coord(tile.h.approx() * scale, height),
        );
    }
    s.push_str("</svg>\n");
    s
}
