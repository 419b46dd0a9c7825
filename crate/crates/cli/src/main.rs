use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use polyannulus::annulus::{annulus_at, AnnulusSolution, PointCloud, SolveMode};
use polyannulus::bench::{run_bench, BenchSuite};
use polyannulus::io::{read_points, read_polytope_json, write_points_csv, write_points_json, ResultRecord};
use polyannulus::oracle::{brute_force_oracle, OracleConfig, OracleMode, OracleReport};
use polyannulus::polytope::{ConvexPolytope, Rotation};
use polyannulus::rotation::{mwa_rigid, mwa_rotation_only};
use polyannulus::sampler::{sample_boundary, GeneratorSpec};
use polyannulus::svg::render_svg;
use polyannulus::translation::{mwa_translation, SolverConfig};
use polyannulus::{shapes, Error};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

const EXIT_INPUT: u8 = 3;
const EXIT_GUARANTEE: u8 = 4;

#[derive(Parser)]
#[command(name = "polyannulus", version, about = "Approximate minimum-width polyhedral annuli")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum-width annulus under translations.
    Solve(SolveArgs),
    /// Minimum-width annulus under translations and rotations.
    SolveRigid(SolveArgs),
    /// Annulus about a fixed center, optionally searching rotations.
    SolveFixedCenter(FixedArgs),
    /// Generate a noisy boundary sample of a posed polytope.
    Sample(SampleArgs),
    /// Brute-force reference bounds for a small instance.
    Oracle(OracleArgs),
    /// Concentric fatness and slimness of a stored result.
    Stats(StatsArgs),
    /// Time the solvers and print CSV.
    Bench(BenchArgs),
    /// Draw a stored 2D result as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct ShapeArgs {
    /// Polytope JSON file.
    #[arg(long, conflicts_with = "shape")]
    polytope: Option<PathBuf>,
    /// Built-in shape: square, hexagon, triangle, cube, tetrahedron.
    #[arg(long)]
    shape: Option<String>,
}

impl ShapeArgs {
    fn load(&self) -> Result<ConvexPolytope> {
        match (&self.polytope, &self.shape) {
            (Some(path), _) => {
                let text = read(path)?;
                Ok(read_polytope_json(&text).with_context(|| format!("invalid polytope {}", path.display()))?)
            }
            (None, Some(name)) => {
                shapes::by_name(name).ok_or_else(|| anyhow!(Error::InvalidPolytope(format!("unknown shape {name:?}"))))
            }
            (None, None) => Err(anyhow!(Error::InvalidParameter("one of --polytope or --shape is required".into()))),
        }
    }
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Work threshold (points × gridpoints) above which 2D grids use the slab sweep.
    #[arg(long)]
    crossover: Option<u64>,
    /// Refuse rotation grids with more orientations than this.
    #[arg(long)]
    max_orientations: Option<u128>,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        let mut cfg =
            SolverConfig { epsilon: self.epsilon, seed: self.seed, threads: self.threads, ..SolverConfig::default() };
        if let Some(c) = self.crossover {
            cfg.crossover = c;
        }
        cfg.max_orientations = self.max_orientations;
        cfg
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    /// Point cloud (CSV, or JSON by extension).
    #[arg(long)]
    points: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
    /// Result JSON destination (stdout when absent).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write an SVG drawing (2D only).
    #[arg(long)]
    render: Option<PathBuf>,
    /// Compare against the brute-force oracle; exit 4 if the guarantee fails.
    #[arg(long)]
    oracle_check: bool,
}

#[derive(Args)]
struct FixedArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    #[arg(long)]
    points: PathBuf,
    /// Comma-separated center coordinates.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    center: Vec<f64>,
    /// Search orientations about the center.
    #[arg(long)]
    rotations: bool,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    render: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    /// Sampling density: every boundary point has a sample within this distance.
    #[arg(long)]
    delta: f64,
    /// Radial noise half-band, as a fraction of the gauge.
    #[arg(long, default_value_t = 0.0)]
    band: f64,
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    translate: Vec<f64>,
    /// Rotation angles of the pose (d - 1 of them).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    angles: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Points destination (.json or CSV); stdout CSV when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Ground-truth JSON destination.
    #[arg(long)]
    truth: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Translation,
    Rigid,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    #[arg(long)]
    points: PathBuf,
    #[arg(long, value_enum, default_value = "translation")]
    mode: OracleKind,
    /// Refinement levels after the initial grid.
    #[arg(long, default_value_t = 3)]
    levels: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    /// Result JSON produced by a solve command.
    #[arg(long)]
    result: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    #[arg(long, value_delimiter = ',', default_values_t = vec![10_000usize, 100_000, 1_000_000])]
    sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.2, 0.1, 0.05])]
    epsilons: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = vec![200usize])]
    rigid_sizes: Vec<usize>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    #[arg(long)]
    points: PathBuf,
    /// Result JSON to draw.
    #[arg(long)]
    result: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// A failed `--oracle-check`.
#[derive(Debug)]
struct GuaranteeViolated(String);

impl std::fmt::Display for GuaranteeViolated {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "guarantee violated: {}", self.0)
    }
}

impl std::error::Error for GuaranteeViolated {}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn load_points(path: &Path, c: &ConvexPolytope) -> Result<PointCloud> {
    read_points(path, Some(c.dim())).with_context(|| format!("invalid point file {}", path.display()))
}

fn write_result(sol: &AnnulusSolution, output: Option<&Path>) -> Result<()> {
    emit(output, &ResultRecord::from_solution(sol).to_json())
}

fn maybe_render(c: &ConvexPolytope, s: &PointCloud, sol: &AnnulusSolution, path: Option<&Path>) -> Result<()> {
    if let Some(p) = path {
        emit(Some(p), &render_svg(c, s, sol)?)?;
    }
    Ok(())
}

fn oracle_check(c: &ConvexPolytope, s: &PointCloud, sol: &AnnulusSolution, mode: OracleMode) -> Result<()> {
    let rep = brute_force_oracle(c, s, mode, &OracleConfig::default())?;
    let upper = (1.0 + sol.epsilon) * rep.upper + rep.slack;
    eprintln!(
        "oracle: lower {:.9e} upper {:.9e} slack {:.3e}; solver width {:.9e}",
        rep.lower, rep.upper, rep.slack, sol.width
    );
    if sol.width > upper || sol.width < rep.lower - 1e-9 {
        return Err(GuaranteeViolated(format!(
            "width {:.9e} outside [{:.9e}, {:.9e}]",
            sol.width,
            rep.lower - 1e-9,
            upper
        ))
        .into());
    }
    Ok(())
}

fn solve(args: &SolveArgs, rigid: bool) -> Result<()> {
    let c = args.shape.load()?;
    let s = load_points(&args.points, &c)?;
    let cfg = args.solver.config();
    let sol = if rigid { mwa_rigid(&c, &s, &cfg)? } else { mwa_translation(&c, &s, &cfg)? };
    write_result(&sol, args.output.as_deref())?;
    maybe_render(&c, &s, &sol, args.render.as_deref())?;
    if args.oracle_check {
        oracle_check(&c, &s, &sol, if rigid { OracleMode::Rigid } else { OracleMode::Translation })?;
    }
    Ok(())
}

fn solve_fixed(args: &FixedArgs) -> Result<()> {
    let c = args.shape.load()?;
    let s = load_points(&args.points, &c)?;
    let sol = if args.rotations {
        mwa_rotation_only(&c, &s, &args.center, &args.solver.config())?
    } else {
        annulus_at(&c, &s, &args.center)?
    };
    write_result(&sol, args.output.as_deref())?;
    maybe_render(&c, &s, &sol, args.render.as_deref())
}

fn sample(args: &SampleArgs) -> Result<()> {
    let c = args.shape.load()?;
    let d = c.dim();
    let mut spec = GeneratorSpec::new(c, args.delta, args.band, args.seed);
    spec.scale = args.scale;
    if !args.translate.is_empty() {
        spec.translation = args.translate.clone();
    }
    if !args.angles.is_empty() {
        if args.angles.len() + 1 != d {
            bail!(Error::DimensionMismatch { expected: d - 1, got: args.angles.len() });
        }
        spec.rotation = Rotation::from_angles(&args.angles);
    }
    let out = sample_boundary(&spec)?;
    let is_json = args.output.as_deref().and_then(Path::extension).is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let text = if is_json { write_points_json(&out.cloud) } else { write_points_csv(&out.cloud) };
    emit(args.output.as_deref(), &text)?;
    if let Some(p) = &args.truth {
        emit(Some(p), &serde_json::to_string_pretty(&out.truth)?)?;
    }
    Ok(())
}

fn oracle(args: &OracleArgs) -> Result<()> {
    let c = args.shape.load()?;
    let s = load_points(&args.points, &c)?;
    let mode = match args.mode {
        OracleKind::Translation => OracleMode::Translation,
        OracleKind::Rigid => OracleMode::Rigid,
    };
    let cfg = OracleConfig { levels: args.levels, seed: args.seed, ..OracleConfig::default() };
    let rep: OracleReport = brute_force_oracle(&c, &s, mode, &cfg)?;
    emit(args.output.as_deref(), &serde_json::to_string_pretty(&rep)?)
}

fn solution_from_record(r: &ResultRecord) -> Result<AnnulusSolution> {
    let d = r.center.len();
    let rotation =
        if r.rotation_angles.is_empty() { Rotation::identity(d) } else { Rotation::from_angles(&r.rotation_angles) };
    let mode = match r.mode.as_str() {
        "fixed" => SolveMode::Fixed,
        "translation" => SolveMode::Translation,
        "rigid" => SolveMode::Rigid,
        "rotation-only" => SolveMode::RotationOnly,
        other => bail!(Error::InvalidParameter(format!("unknown mode {other:?}"))),
    };
    let mut sol = AnnulusSolution {
        center: r.center.clone(),
        rotation,
        inner_radius: r.inner_radius,
        outer_radius: r.outer_radius,
        width: r.width,
        epsilon: r.epsilon,
        evaluations: r.evaluations,
        elapsed: Duration::from_secs_f64(r.elapsed_ms.max(0.0) / 1e3),
        meta: Default::default(),
    };
    sol.meta.mode = mode;
    Ok(sol)
}

fn stats(args: &StatsArgs) -> Result<()> {
    let rec = ResultRecord::from_json(&read(&args.result)?)?;
    let sol = solution_from_record(&rec)?;
    let (fatness, slimness) = sol.fatness_stats()?;
    let out = serde_json::json!({
        "concentric_fatness": fatness,
        "slimness": slimness,
        "inner_radius": sol.inner_radius,
        "outer_radius": sol.outer_radius,
        "width": sol.width,
    });
    emit(None, &serde_json::to_string_pretty(&out)?)
}

fn bench(args: &BenchArgs) -> Result<()> {
    let shape = if args.shape.polytope.is_none() && args.shape.shape.is_none() {
        shapes::hexagon()
    } else {
        args.shape.load()?
    };
    let suite = BenchSuite {
        shape,
        sizes: args.sizes.clone(),
        epsilons: args.epsilons.clone(),
        rigid_sizes: args.rigid_sizes.clone(),
        seed: args.seed,
        threads: args.threads,
        ..BenchSuite::default()
    };
    let report = run_bench(&suite)?;
    for skipped in &report.skipped {
        eprintln!("skipped {skipped}");
    }
    emit(args.output.as_deref(), &report.to_csv())
}

fn render(args: &RenderArgs) -> Result<()> {
    let c = args.shape.load()?;
    let s = load_points(&args.points, &c)?;
    let sol = solution_from_record(&ResultRecord::from_json(&read(&args.result)?)?)?;
    emit(args.output.as_deref(), &render_svg(&c, &s, &sol)?)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<GuaranteeViolated>().is_some() {
        return EXIT_GUARANTEE;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Numerical(_)) => 1,
        _ => EXIT_INPUT,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(a) => solve(a, false),
        Command::SolveRigid(a) => solve(a, true),
        Command::SolveFixedCenter(a) => solve_fixed(a),
        Command::Sample(a) => sample(a),
        Command::Oracle(a) => oracle(a),
        Command::Stats(a) => stats(a),
        Command::Bench(a) => bench(a),
        Command::Render(a) => render(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
