//! Command-line front end: construct lemniscatic maps, evaluate points,
//! trace Green level curves, render phase portraits, and run the
//! verification suites. Output is byte-deterministic for fixed arguments.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.

mod format;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use format::{parse_complex, parse_window, write_csv, write_ppm, write_svg, EvalRow};
use lemniscate_maps::analysis::{
    render_phase_portrait, run_verification, trace_green_level, trace_level_curve, Window,
};
use lemniscate_maps::maps::{FamilySpec, LemniscaticMap};
use lemniscate_maps::Complex64;
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lemniscate",
    version,
    about = "Conformal maps onto lemniscatic domains: evaluation, Green level \
             curves, phase portraits, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the map (or its inverse) at points, emitting CSV
    Map(MapArgs),
    /// Emit the lemniscatic domain data as JSON
    Domain(DomainArgs),
    /// Trace the level curves of the Green's function into SVG
    Levelcurve(LevelArgs),
    /// Render a phase portrait into a binary P6 pixmap
    Portrait(PortraitArgs),
    /// Run the family verification suite, emitting a JSON report
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    RadialSlits,
    TwoDisks,
    RationalExterior,
}

#[derive(Args)]
struct FamilyArgs {
    /// Map family
    #[arg(long, value_enum)]
    family: Family,
    /// Family parameters: radial-slits N C D; two-disks Z0 R;
    /// rational-exterior [DEGREE [PHI [BOUNDARY_RADIUS]]]
    #[arg(value_name = "PARAM")]
    params: Vec<f64>,
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec> {
        match self.family {
            Family::RadialSlits => {
                let [n, c, d]: [f64; 3] = self.params.as_slice().try_into().map_err(|_| {
                    anyhow!("radial-slits takes three parameters: N C D")
                })?;
                if n < 2.0 || n.fract() != 0.0 || n > 64.0 {
                    bail!("the arm count must be an integer in 2..=64, got {n}");
                }
                Ok(FamilySpec::RadialSlits {
                    arms: n as u32,
                    inner: c,
                    outer: d,
                })
            }
            Family::TwoDisks => {
                let [z0, r]: [f64; 2] = self.params.as_slice().try_into().map_err(|_| {
                    anyhow!("two-disks takes two parameters: Z0 R")
                })?;
                Ok(FamilySpec::TwoDisks {
                    center: z0,
                    radius: r,
                })
            }
            Family::RationalExterior => {
                if self.params.len() > 3 {
                    bail!("rational-exterior takes at most three parameters: DEGREE PHI BOUNDARY_RADIUS");
                }
                let degree = self.params.first().copied().unwrap_or(3.0);
                if degree < 2.0 || degree.fract() != 0.0 || degree > 64.0 {
                    bail!("the degree must be an integer in 2..=64, got {degree}");
                }
                Ok(FamilySpec::RationalExterior {
                    degree: degree as u32,
                    phi: self.params.get(1).copied().unwrap_or(std::f64::consts::FRAC_PI_2),
                    boundary_radius: self.params.get(2).copied().unwrap_or(1.1),
                })
            }
        }
    }
}

#[derive(Args)]
struct TransformArgs {
    /// Apply the linear transform w = scale*z + shift to the compact set
    #[arg(long, value_parser = parse_complex)]
    scale: Option<Complex64>,
    /// Shift of the linear transform (complex literal, e.g. `i` or `1+2i`)
    #[arg(long, value_parser = parse_complex)]
    shift: Option<Complex64>,
}

impl TransformArgs {
    fn apply(&self, map: LemniscaticMap) -> Result<LemniscaticMap> {
        if self.scale.is_none() && self.shift.is_none() {
            return Ok(map);
        }
        let scale = self.scale.unwrap_or(Complex64::new(1.0, 0.0));
        let shift = self.shift.unwrap_or(Complex64::new(0.0, 0.0));
        map.linear_transform(scale, shift).map_err(|e| anyhow!("{e}"))
    }
}

#[derive(Args)]
struct MapArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[command(flatten)]
    transform: TransformArgs,
    /// Inline points, comma-separated complex literals
    #[arg(long, conflicts_with = "points_file")]
    points: Option<String>,
    /// File with one complex literal (or `re,im` pair) per line
    #[arg(long)]
    points_file: Option<PathBuf>,
    /// Evaluate the inverse map instead of the forward map
    #[arg(long)]
    inverse: bool,
    /// Exit with code 1 if any point fails to evaluate
    #[arg(long)]
    strict: bool,
    /// Output path (stdout when omitted)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DomainArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[command(flatten)]
    transform: TransformArgs,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct LevelArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Level sigma > 1 of the curve g = log(sigma)
    #[arg(long)]
    sigma: f64,
    /// Window `x0:x1,y0:y1` or half-extent `h`; default fits the set
    #[arg(long)]
    window: Option<String>,
    /// Grid cells per axis
    #[arg(long, default_value_t = 400)]
    resolution: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PortraitFunction {
    Forward,
    Inverse,
    Identity,
}

#[derive(Args)]
struct PortraitArgs {
    /// Function to render; `identity` needs no family
    #[arg(long, value_enum)]
    func: PortraitFunction,
    /// Map family (required unless --func identity)
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(value_name = "PARAM")]
    params: Vec<f64>,
    /// Window `x0:x1,y0:y1` or half-extent `h`
    #[arg(long, default_value = "1.5")]
    window: String,
    #[arg(long, default_value_t = 800)]
    width: usize,
    #[arg(long, default_value_t = 800)]
    height: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Serialize)]
struct SymmetricFormOutput {
    degree: u32,
    constant: [f64; 2],
}

#[derive(Serialize)]
struct DomainOutput {
    family: &'static str,
    parameters: Vec<(String, f64)>,
    centers: Vec<[f64; 2]>,
    exponents: Vec<f64>,
    mu: f64,
    symmetric_form: Option<SymmetricFormOutput>,
}

fn emit(output: &Option<PathBuf>, bytes: &[u8]) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, bytes)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => std::io::stdout()
            .write_all(bytes)
            .context("cannot write to stdout")?,
    }
    Ok(())
}

fn read_points(args: &MapArgs) -> Result<Vec<Complex64>> {
    if let Some(inline) = &args.points {
        return inline
            .split(';')
            .flat_map(|chunk| {
                // a chunk may itself be a comma-separated list of literals
                // unless it parses as a single `re,im` pair
                if parse_complex(chunk).is_ok() {
                    vec![chunk.to_string()]
                } else {
                    chunk.split(',').map(|s| s.to_string()).collect()
                }
            })
            .filter(|s| !s.trim().is_empty())
            .map(|s| parse_complex(&s))
            .collect();
    }
    if let Some(path) = &args.points_file {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        return text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(parse_complex)
            .collect();
    }
    bail!("provide points with --points or --points-file");
}

fn cmd_map(args: &MapArgs) -> Result<bool> {
    let map = args
        .transform
        .apply(args.family.spec()?.build().map_err(|e| anyhow!("{e}"))?)?;
    let points = read_points(args)?;
    let results = if args.inverse {
        map.inverse_batch(&points)
    } else {
        map.forward_batch(&points)
    };
    let mut all_ok = true;
    let rows: Vec<EvalRow> = points
        .into_iter()
        .zip(results)
        .map(|(p, result)| match result {
            Ok(w) => EvalRow {
                input: p,
                output: Some(w),
                status: "ok".into(),
            },
            Err(e) => {
                all_ok = false;
                EvalRow {
                    input: p,
                    output: None,
                    status: match e {
                        lemniscate_maps::Error::OutsideDomain(_) => "outside_domain".into(),
                        other => format!("error:{other}").replace(',', ";"),
                    },
                }
            }
        })
        .collect();
    emit(&args.output, write_csv(&rows).as_bytes())?;
    Ok(all_ok || !args.strict)
}

fn cmd_domain(args: &DomainArgs) -> Result<()> {
    let spec = args.family.spec()?;
    let map = args.transform.apply(spec.build().map_err(|e| anyhow!("{e}"))?)?;
    let domain = map.domain();
    let out = DomainOutput {
        family: map.family_name(),
        parameters: spec
            .parameters()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        centers: domain.centers().iter().map(|c| [c.re, c.im]).collect(),
        exponents: domain.exponents().to_vec(),
        mu: domain.capacity(),
        symmetric_form: domain.symmetric_form().map(|sf| SymmetricFormOutput {
            degree: sf.degree,
            constant: [sf.constant.re, sf.constant.im],
        }),
    };
    let mut json = serde_json::to_string_pretty(&out)?;
    json.push('\n');
    emit(&args.output, json.as_bytes())
}

fn cmd_levelcurve(args: &LevelArgs) -> Result<()> {
    let map = args.family.spec()?.build().map_err(|e| anyhow!("{e}"))?;
    let window = match &args.window {
        Some(w) => parse_window(w)?,
        None => Window::square(1.6 * map.outer_radius()).map_err(|e| anyhow!("{e}"))?,
    };
    let source = trace_green_level(&map, args.sigma, window, args.resolution)
        .map_err(|e| anyhow!("{e}"))?;
    // image-side curves |U(w)| = sigma mu, directly from the domain data
    let domain = map.domain().clone();
    let g_image = |w: Complex64| {
        let g = domain.green_extended(w);
        g.is_finite().then_some(g)
    };
    let image = trace_level_curve(&g_image, args.sigma, window, args.resolution)
        .map_err(|e| anyhow!("{e}"))?;
    let mut curves = Vec::new();
    curves.extend(source.into_iter().map(|c| ("source".to_string(), c)));
    curves.extend(image.into_iter().map(|c| ("image".to_string(), c)));
    emit(&args.output, write_svg(&curves, window).as_bytes())
}

fn cmd_portrait(args: &PortraitArgs) -> Result<()> {
    let window = parse_window(&args.window)?;
    let grid = match args.func {
        PortraitFunction::Identity => {
            let f = |z: Complex64| Some(z);
            render_phase_portrait(&f, window, args.width, args.height)
        }
        PortraitFunction::Forward | PortraitFunction::Inverse => {
            let family = FamilyArgs {
                family: args
                    .family
                    .ok_or_else(|| anyhow!("--family is required unless --func identity"))?,
                params: args.params.clone(),
            };
            let map = family.spec()?.build().map_err(|e| anyhow!("{e}"))?;
            if args.func == PortraitFunction::Forward {
                let f = move |z: Complex64| map.forward(z).ok();
                render_phase_portrait(&f, window, args.width, args.height)
            } else {
                let f = move |w: Complex64| map.inverse_continued(w).ok();
                render_phase_portrait(&f, window, args.width, args.height)
            }
        }
    }
    .map_err(|e| anyhow!("{e}"))?;
    emit(&args.output, &write_ppm(&grid))
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool> {
    let report = run_verification(&args.family.spec()?);
    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    emit(&args.output, json.as_bytes())?;
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Map(args) => cmd_map(args),
        Command::Domain(args) => cmd_domain(args).map(|()| true),
        Command::Levelcurve(args) => cmd_levelcurve(args).map(|()| true),
        Command::Portrait(args) => cmd_portrait(args).map(|()| true),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
