//! `invisibody` command-line front end.
//!
//! Exit codes: 0 success or passing verdict, 1 invalid parameters or I/O
//! failure, 2 unreadable scene file or bad command line, 3 tracer anomaly,
//! 4 failing verdict.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use invisibody::export::{export_mesh, export_svg, MeshGrid, SvgOptions};
use invisibody::geom::{Ray, Vec2, Vector};
use invisibody::io::{format_trace, BuiltScene, DirectionReport, ReportFile, SceneFile, SceneSpec};
use invisibody::tracer::{trace, Primitive, Scene};
use invisibody::verify::{verify_invisibility, verify_case_analysis, FlowSpec, Sampling, VerifyError};
use invisibody::{Policy, TraceStatus};

#[derive(Parser)]
#[command(name = "invisibody", version, about = "Build, trace and certify invisible fractal bodies")]
struct Cli {
    /// Seed for Monte Carlo sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Invisibility tolerance, relative to the scene diameter.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Truncation depth; overrides the scene file for `verify` and friends.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Worker threads for ray batches (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Record wall-clock time in reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Thin2d,
    Rhombus2d,
    Body3d,
}

#[derive(Args)]
struct BuildArgs {
    kind: Kind,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 0.5)]
    c1: f64,
    /// Constant ratio a_i / c_(i-1) of the default sequence policy.
    #[arg(long, conflicts_with_all = ["explicit", "thin_limit"])]
    gamma: Option<f64>,
    /// Explicit a_1,a_2,… list.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    explicit: Option<Vec<f64>>,
    /// Degenerate a_i = 0 sequences.
    #[arg(long)]
    thin_limit: bool,
    /// First invisibility direction of a rhombus body.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    dir1: Option<Vec<f64>>,
    /// Second invisibility direction of a rhombus body.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    dir2: Option<Vec<f64>>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FlowArgs {
    /// Flow direction, comma separated; repeatable. Defaults to the
    /// directions the body is built for.
    #[arg(long = "direction", value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    directions: Vec<f64>,
    /// Rays per direction.
    #[arg(long, default_value_t = 2000)]
    rays: usize,
    /// Uniform grid instead of Monte Carlo sampling.
    #[arg(long)]
    grid: bool,
    /// Rays closer than this to a singular line are excluded.
    #[arg(long, default_value_t = 1e-6)]
    margin: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Write a scene file.
    Build(BuildArgs),
    /// Trace one particle and list its reflections.
    Trace {
        scene: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        origin: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        direction: Vec<f64>,
    },
    /// Certify invisibility along flows and write a report.
    Verify {
        scene: PathBuf,
        #[command(flatten)]
        flow: FlowArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Case-by-case check of a 3D body under a vertical flow.
    VerifyCases {
        scene: PathBuf,
        /// Rays per case.
        #[arg(long, default_value_t = 200)]
        rays: usize,
    },
    /// Draw a planar scene as SVG.
    ExportSvg {
        scene: PathBuf,
        #[arg(long, default_value_t = 128)]
        samples: usize,
        /// Extra ray `ox,oy,dx,dy`; repeatable.
        #[arg(long = "ray", value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
        rays: Vec<f64>,
        /// Draw a grid flow along `dx,dy`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        flow: Option<Vec<f64>>,
        #[arg(long, default_value_t = 16)]
        flow_rays: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Tessellate a 3D scene into an OBJ mesh.
    ExportMesh {
        scene: PathBuf,
        /// Cells per surface as `along,across`.
        #[arg(long, value_delimiter = ',', default_value = "32,8")]
        grid: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Net force of a flow on the body.
    Resistance {
        scene: PathBuf,
        #[command(flatten)]
        flow: FlowArgs,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

const OTHER: u8 = 1;
const PARSE: u8 = 2;
const ANOMALY: u8 = 3;
const VERDICT: u8 = 4;

fn fail(code: u8, message: impl ToString) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { PARSE } else { 0 });
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(OTHER);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Build(args) => build(cli, args),
        Command::Trace {
            scene,
            origin,
            direction,
        } => cmd_trace(cli, scene, origin, direction),
        Command::Verify { scene, flow, output } => verify(cli, scene, flow, output.as_deref()),
        Command::VerifyCases { scene, rays } => verify_cases(cli, scene, *rays),
        Command::ExportSvg {
            scene,
            samples,
            rays,
            flow,
            flow_rays,
            output,
        } => svg(cli, scene, *samples, rays, flow.as_deref(), *flow_rays, output.as_deref()),
        Command::ExportMesh { scene, grid, output } => mesh(cli, scene, grid, output.as_deref()),
        Command::Resistance { scene, flow } => cmd_resistance(cli, scene, flow),
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| fail(OTHER, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn vec2(xs: &[f64], what: &str) -> Result<Vec2, Failure> {
    match xs {
        [x, y] => Ok(Vec2::new(*x, *y)),
        _ => Err(fail(PARSE, format!("{what}: expected 2 components, got {}", xs.len()))),
    }
}

fn build(cli: &Cli, a: &BuildArgs) -> Outcome {
    let depth = cli.depth.unwrap_or(8);
    let policy = if a.thin_limit {
        Policy::ThinLimit
    } else if let Some(xs) = &a.explicit {
        Policy::Explicit(xs.clone())
    } else {
        a.gamma.map_or_else(Policy::default, Policy::ConstantFraction)
    };
    let spec = match a.kind {
        Kind::Thin2d => SceneSpec::Thin2d { depth },
        Kind::Body3d => SceneSpec::Body3d {
            c: a.c,
            c1: a.c1,
            depth,
            policy,
        },
        Kind::Rhombus2d => {
            let need = |d: &Option<Vec<f64>>, name: &str| {
                d.as_deref()
                    .ok_or_else(|| fail(PARSE, format!("rhombus2d needs --{name}")))
                    .and_then(|xs| vec2(xs, name))
            };
            SceneSpec::Rhombus2d {
                c: a.c,
                c1: a.c1,
                depth,
                policy,
                dir1: need(&a.dir1, "dir1")?.normalized(),
                dir2: need(&a.dir2, "dir2")?.normalized(),
            }
        }
    };
    let file = SceneFile::new(spec);
    // Validate before writing anything.
    file.build().map_err(|e| fail(OTHER, e))?;
    emit(a.output.as_deref(), &file.to_text())?;
    Ok(0)
}

/// Reads a scene file, applying the global depth override.
fn load(cli: &Cli, path: &Path) -> Result<(SceneFile, BuiltScene), Failure> {
    let text = fs::read_to_string(path).map_err(|e| fail(OTHER, format!("{}: {e}", path.display())))?;
    let mut file = SceneFile::parse(&text).map_err(|e| fail(PARSE, format!("{}: {e}", path.display())))?;
    if let Some(d) = cli.depth {
        match &mut file.spec {
            SceneSpec::Thin2d { depth } | SceneSpec::Rhombus2d { depth, .. } | SceneSpec::Body3d { depth, .. } => {
                *depth = d
            }
            SceneSpec::Custom { .. } => {}
        }
    }
    let built = file.build().map_err(|e| fail(OTHER, e))?;
    Ok((file, built))
}

fn to_vector<V: Vector>(xs: &[f64], what: &str) -> Result<V, Failure> {
    if xs.len() != V::DIM {
        return Err(fail(
            PARSE,
            format!("{what}: expected {} components, got {}", V::DIM, xs.len()),
        ));
    }
    Ok(V::from_fn(|i| xs[i]))
}

fn cmd_trace(cli: &Cli, path: &Path, origin: &[f64], direction: &[f64]) -> Outcome {
    let (_, built) = load(cli, path)?;
    fn go<P: Primitive>(scene: &Scene<P>, origin: &[f64], direction: &[f64]) -> Outcome {
        let ray = Ray::new(to_vector(origin, "origin")?, to_vector(direction, "direction")?);
        let rec = trace(scene, &ray);
        print!("{}", format_trace(scene, &rec));
        Ok(if rec.status == TraceStatus::Exited { 0 } else { ANOMALY })
    }
    match built {
        BuiltScene::Body3(b) => go(&b.scene(), origin, direction),
        other => go(&other.scene2().expect("planar scene"), origin, direction),
    }
}

/// Repeated `--direction` values arrive flattened; regroup them by the
/// scene's dimension.
fn directions_for(file: &SceneFile, flow: &FlowArgs, dim: usize) -> Result<Vec<Vec<f64>>, Failure> {
    let flat = &flow.directions;
    if flat.is_empty() {
        let dirs = file.invisibility_directions();
        if dirs.is_empty() {
            return Err(fail(OTHER, "custom scenes need at least one --direction"));
        }
        return Ok(dirs);
    }
    if !flat.len().is_multiple_of(dim) {
        return Err(fail(PARSE, format!("direction: expected multiples of {dim} components")));
    }
    Ok(flat.chunks(dim).map(<[f64]>::to_vec).collect())
}

fn sampling(cli: &Cli, flow: &FlowArgs) -> Sampling {
    if flow.grid {
        Sampling::UniformGrid(flow.rays)
    } else {
        Sampling::MonteCarlo {
            n: flow.rays,
            seed: cli.seed,
        }
    }
}

fn run_flows<P: Primitive>(
    scene: &Scene<P>,
    dirs: &[Vec<f64>],
    sampling: Sampling,
    margin: f64,
    tau: f64,
) -> Result<Vec<DirectionReport>, Failure> {
    dirs.iter()
        .map(|d| {
            let v: P::V = to_vector(d, "direction")?;
            let flow = FlowSpec::new(v, sampling).with_margin(margin);
            match verify_invisibility(scene, &flow, tau) {
                Ok(r) => Ok(DirectionReport::from(&r)),
                Err(e @ VerifyError::TracerAnomaly { .. }) => Err(fail(ANOMALY, e)),
                Err(e) => Err(fail(OTHER, e)),
            }
        })
        .collect()
}

fn flows(cli: &Cli, file: &SceneFile, built: &BuiltScene, flow: &FlowArgs) -> Result<Vec<DirectionReport>, Failure> {
    let dirs = directions_for(file, flow, built.dimension())?;
    let s = sampling(cli, flow);
    match built {
        BuiltScene::Body3(b) => run_flows(&b.scene(), &dirs, s, flow.margin, cli.tolerance),
        other => run_flows(&other.scene2().expect("planar scene"), &dirs, s, flow.margin, cli.tolerance),
    }
}

fn verify(cli: &Cli, path: &Path, flow: &FlowArgs, output: Option<&Path>) -> Outcome {
    let (file, built) = load(cli, path)?;
    let start = Instant::now();
    let directions = flows(cli, &file, &built, flow)?;
    let report = ReportFile {
        tool_version: env!("CARGO_PKG_VERSION").into(),
        scene_hash: file.hash(),
        scene_kind: file.kind().name().into(),
        sampling: sampling(cli, flow),
        tolerance: cli.tolerance,
        exclusion_margin: flow.margin,
        directions,
        timing_ms: cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    };
    emit(output, &report.to_text())?;
    if output.is_some() {
        for d in &report.directions {
            eprintln!(
                "direction {:?}: {} (max deviation {:.3e})",
                d.direction,
                if d.invisible { "invisible" } else { "visible" },
                d.max_velocity_dev
            );
        }
    }
    Ok(if report.passed() { 0 } else { VERDICT })
}

fn verify_cases(cli: &Cli, path: &Path, rays: usize) -> Outcome {
    let (_, built) = load(cli, path)?;
    let BuiltScene::Body3(body) = built else {
        return Err(fail(OTHER, "verify-cases needs a body3d scene"));
    };
    match verify_case_analysis(&body, rays, cli.seed) {
        Ok(report) => {
            print!("{report}");
            Ok(0)
        }
        Err(v) => {
            println!("violation: {v}");
            Ok(VERDICT)
        }
    }
}

fn svg(
    cli: &Cli,
    path: &Path,
    samples: usize,
    rays: &[f64],
    flow: Option<&[f64]>,
    flow_rays: usize,
    output: Option<&Path>,
) -> Outcome {
    let (_, built) = load(cli, path)?;
    if !rays.len().is_multiple_of(4) {
        return Err(fail(PARSE, "ray: expected `ox,oy,dx,dy`"));
    }
    let opts = SvgOptions {
        samples_per_arc: samples,
        rays: rays
            .chunks(4)
            .map(|r| Ray::new(Vec2::new(r[0], r[1]), Vec2::new(r[2], r[3])))
            .collect(),
        flow: flow
            .map(|d| vec2(d, "flow").map(|d| FlowSpec::grid(d, flow_rays)))
            .transpose()?,
        ..SvgOptions::default()
    };
    let doc = export_svg(&built, &opts).map_err(|e| fail(OTHER, e))?;
    emit(output, &doc)?;
    Ok(0)
}

fn mesh(cli: &Cli, path: &Path, grid: &[usize], output: Option<&Path>) -> Outcome {
    let (_, built) = load(cli, path)?;
    let [along, across] = grid else {
        return Err(fail(PARSE, "grid: expected `along,across`"));
    };
    let m = export_mesh(
        &built,
        MeshGrid {
            along: *along,
            across: *across,
        },
    )
    .map_err(|e| fail(OTHER, e))?;
    emit(output, &m.to_obj())?;
    Ok(0)
}

fn cmd_resistance(cli: &Cli, path: &Path, flow: &FlowArgs) -> Outcome {
    let (file, built) = load(cli, path)?;
    let reals = |xs: &[f64]| xs.iter().map(|x| format!("{x:.16e}")).collect::<Vec<_>>().join(" ");
    for d in flows(cli, &file, &built, flow)? {
        println!(
            "direction {} resistance {} per-area {} zero {}",
            reals(&d.direction),
            reals(&d.resistance),
            reals(&d.resistance_per_area),
            d.zero_resistance
        );
    }
    Ok(0)
}
