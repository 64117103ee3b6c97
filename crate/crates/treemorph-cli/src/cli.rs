//! Command-line surface: argument parsing and the subcommands.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use treemorph::drawing::{cyclic_order_violation, extent_of, order_violation, planarity_violation, strictly_upward_pos};
use treemorph::general::morph_general_detailed;
use treemorph::morph::{verify_morph, Standard, StepCertificate};
use treemorph::resolution::{
    certify_rat_step, drawing_resolution, is_planar_rat, snap_to_grid_morph, sqrt_decimal, RatPoint,
};
use treemorph::threestep::{morph_upward_3step, morph_upward_3step_general};
use treemorph::tree::parse_tree;
use treemorph::upward_linear::morph_upward_linear;
use treemorph::{GridDrawing, Morph, OrderedTree};

use crate::gen::{random_free_drawing, random_tree, random_upward_drawing, rng_from_seed};
use crate::io::{bound_entry, read_json, write_json, AnyFile, CliError, Coord, DrawingFile, MorphFile, MorphMetadata};
use crate::render::{render_morph, RenderOptions};

#[derive(Debug, Parser)]
#[command(name = "treemorph", about = "Planar morphs between grid drawings of ordered trees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Upward,
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    UpwardLinear,
    #[value(name = "upward-3step")]
    Upward3Step,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StandardArg {
    Planar,
    UpwardPlanar,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a random valid drawing.
    Gen {
        /// Node count; may be omitted when --tree is given.
        #[arg(long, required_unless_present = "tree")]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Mode::Upward)]
        mode: Mode,
        /// Use this tree instead of a random one.
        #[arg(long)]
        tree: Option<String>,
        /// Limit random trees to at most two children per node.
        #[arg(long)]
        binary: bool,
        /// Largest number of grid columns or rows.
        #[arg(long)]
        max_side: Option<i64>,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Morph between two drawings of the same tree.
    Morph {
        #[arg(long, value_enum)]
        algo: Algo,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Check a drawing or a morph; exit 0 iff everything is green.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = StandardArg::Planar)]
        standard: StandardArg,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Render a drawing or a morph as animated SVG.
    Render {
        file: PathBuf,
        #[arg(short = 'o', long)]
        output: PathBuf,
        /// Also write one static SVG per keyframe into this directory.
        #[arg(long)]
        frames: Option<PathBuf>,
        /// Morph steps shown per second.
        #[arg(long, default_value_t = 1.0)]
        fps: f64,
    },
    /// Two-step morph of a rational drawing onto the grid.
    Snap {
        #[arg(long)]
        from: PathBuf,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
}

/// Outcome of a command: exit code 0 or 1, or an error mapped to exit code 2.
pub type Outcome = Result<i32, CliError>;

#[derive(Debug, Serialize)]
struct StepReport {
    index: usize,
    planar: bool,
    upward: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<String>,
}

#[derive(Debug, Serialize)]
struct KeyframeReport {
    index: usize,
    planar: bool,
    upward: bool,
    order_preserving: bool,
}

#[derive(Debug, Serialize)]
struct BoundReport {
    name: String,
    bound: Coord,
    actual: Coord,
    holds: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    kind: &'static str,
    standard: &'static str,
    steps: usize,
    width: Coord,
    height: Coord,
    keyframes: Vec<KeyframeReport>,
    step_reports: Vec<StepReport>,
    bounds: Vec<BoundReport>,
    first_bad_step: Option<usize>,
    pub all_green: bool,
}

fn standard_name(s: Standard) -> &'static str {
    match s {
        Standard::Planar => "planar",
        Standard::UpwardPlanar => "upward-planar",
    }
}

fn step_report(index: usize, c: &StepCertificate, up: bool) -> StepReport {
    StepReport {
        index,
        planar: c.planar,
        upward: !up || c.upward,
        violation: c.first_violation.as_ref().map(|v| {
            format!("{:?} meets {:?} at a time in [{}, {}]", v.first, v.second, v.time_lo, v.time_hi)
        }),
    }
}

fn keyframe_report(index: usize, tree: &OrderedTree, pos: &[treemorph::Point]) -> KeyframeReport {
    let upward = strictly_upward_pos(tree, pos);
    let order_preserving =
        if upward { order_violation(tree, pos).is_none() } else { cyclic_order_violation(tree, pos).is_none() };
    KeyframeReport { index, planar: planarity_violation(tree, pos).is_none(), upward, order_preserving }
}

fn keyframe_green(k: &KeyframeReport, up: bool) -> bool {
    k.planar && k.order_preserving && (!up || k.upward)
}

fn check_bounds(meta: &MorphMetadata, steps: usize, width: &BigInt, height: &BigInt) -> Result<Vec<BoundReport>, CliError> {
    meta.bounds
        .iter()
        .map(|b| {
            let bound = b.bound.to_int()?;
            let actual = match b.name.as_str() {
                "width" => width.clone(),
                "height" => height.clone(),
                "steps" => BigInt::from(steps),
                _ => b.actual.to_int()?,
            };
            Ok(BoundReport {
                name: b.name.clone(),
                holds: actual <= bound,
                bound: Coord::from_int(&bound),
                actual: Coord::from_int(&actual),
            })
        })
        .collect()
}

fn finish(kind: &'static str, standard: Standard, mut r: VerifyReport) -> VerifyReport {
    let up = standard == Standard::UpwardPlanar;
    r.kind = kind;
    r.first_bad_step = r.step_reports.iter().position(|s| !s.planar || !s.upward);
    r.all_green = r.first_bad_step.is_none()
        && r.keyframes.iter().all(|k| keyframe_green(k, up))
        && r.bounds.iter().all(|b| b.holds);
    r
}

fn empty_report(standard: Standard, steps: usize, width: &BigInt, height: &BigInt) -> VerifyReport {
    VerifyReport {
        kind: "",
        standard: standard_name(standard),
        steps,
        width: Coord::from_int(width),
        height: Coord::from_int(height),
        keyframes: Vec::new(),
        step_reports: Vec::new(),
        bounds: Vec::new(),
        first_bad_step: None,
        all_green: false,
    }
}

/// Verifies a drawing or morph file.
pub fn verify_file(file: &AnyFile, standard: Standard) -> Result<VerifyReport, CliError> {
    let up = standard == Standard::UpwardPlanar;
    match file {
        AnyFile::Drawing(d) => {
            let g = d.to_grid()?;
            let (w, h) = extent_of(&g.pos);
            let mut r = empty_report(standard, 0, &w, &h);
            r.keyframes.push(keyframe_report(0, &g.tree, &g.pos));
            Ok(finish("drawing", standard, r))
        }
        AnyFile::Morph(mf) => {
            let real = mf.to_real()?;
            if let Some(m) = real.to_grid() {
                let rep = verify_morph(&m, standard)?;
                let mut r = empty_report(standard, rep.steps, &rep.width, &rep.height);
                r.keyframes = m.keyframes.iter().enumerate().map(|(i, k)| keyframe_report(i, &m.tree, &k.pos)).collect();
                r.step_reports =
                    rep.step_certificates.iter().enumerate().map(|(i, c)| step_report(i, c, up)).collect();
                r.bounds = check_bounds(&mf.metadata, rep.steps, &rep.width, &rep.height)?;
                Ok(finish("morph", standard, r))
            } else {
                if up {
                    return Err(CliError::Invalid("upward verification needs integer coordinates".into()));
                }
                let tree = &real.tree;
                let steps = real.keyframes.len() - 1;
                let zero = BigInt::from(0);
                let mut r = empty_report(standard, steps, &zero, &zero);
                for (i, k) in real.keyframes.iter().enumerate() {
                    let planar = is_planar_rat(tree, k);
                    r.keyframes.push(KeyframeReport { index: i, planar, upward: false, order_preserving: true });
                }
                for i in 0..steps {
                    let c = if r.keyframes[i].planar && r.keyframes[i + 1].planar {
                        certify_rat_step(tree, &real.keyframes[i], &real.keyframes[i + 1])
                    } else {
                        StepCertificate { planar: false, upward: false, first_violation: None }
                    };
                    r.step_reports.push(step_report(i, &c, false));
                }
                r.bounds = mf
                    .metadata
                    .bounds
                    .iter()
                    .map(|b| {
                        let (bound, actual) = (b.bound.to_int()?, b.actual.to_int()?);
                        Ok(BoundReport { name: b.name.clone(), holds: actual <= bound, bound: b.bound.clone(), actual: b.actual.clone() })
                    })
                    .collect::<Result<_, CliError>>()?;
                Ok(finish("rational morph", standard, r))
            }
        }
    }
}

fn load_drawing(path: &Path) -> Result<GridDrawing, CliError> {
    read_json::<DrawingFile>(path)?.to_grid()
}

fn cmd_gen(
    n: Option<usize>,
    seed: u64,
    mode: Mode,
    tree: Option<String>,
    binary: bool,
    max_side: Option<i64>,
    output: &Path,
) -> Outcome {
    let mut rng = rng_from_seed(seed);
    let tree = match tree {
        Some(t) => {
            let t = parse_tree(&t)?;
            if n.is_some_and(|n| n != t.len()) {
                return Err(CliError::Invalid(format!("--n disagrees with the {} nodes of --tree", t.len())));
            }
            Arc::new(t)
        }
        None => {
            let n = n.unwrap_or(0);
            if n == 0 {
                return Err(CliError::Invalid("--n must be at least 1".into()));
            }
            random_tree(&mut rng, n, if binary { Some(2) } else { None })
        }
    };
    let g = match mode {
        Mode::Upward => random_upward_drawing(&mut rng, &tree, max_side.unwrap_or(12)),
        Mode::Free => random_free_drawing(&mut rng, &tree, max_side.unwrap_or(8)),
    };
    write_json(output, &DrawingFile::from_grid(&g))?;
    Ok(0)
}

fn same_tree(a: &GridDrawing, b: &GridDrawing) -> Result<Arc<OrderedTree>, CliError> {
    if *a.tree != *b.tree {
        return Err(CliError::Invalid("the two drawings are of different trees".into()));
    }
    Ok(a.tree.clone())
}

fn build_morph(algo: Algo, a: &GridDrawing, b: &GridDrawing) -> Result<(Morph, MorphMetadata), CliError> {
    let tree = same_tree(a, b)?;
    let n = tree.len();
    let (w0, h0) = extent_of(&a.pos);
    let (w1, h1) = extent_of(&b.pos);
    let wmax = w0.clone().max(w1.clone());
    let hmax = h0.max(h1);
    let mut meta = MorphMetadata::default();
    let m = match algo {
        Algo::UpwardLinear => {
            let m = morph_upward_linear(&tree, a, b)?;
            let (w, h) = m.extent();
            meta.algorithm = "upward-linear".into();
            meta.bounds = vec![
                bound_entry("steps", &BigInt::from(2 * n - 1), &BigInt::from(m.steps())),
                bound_entry("height", &hmax, &h),
                bound_entry("width", &(&wmax + (n - 1)), &w),
            ];
            m
        }
        Algo::Upward3Step => {
            meta.algorithm = "upward-3step".into();
            let binary = (0..n).all(|u| tree.children(u).len() <= 2);
            let m = if binary {
                let m = morph_upward_3step(&tree, a, b)?;
                let wb = wmax.clone().max(BigInt::from(n));
                meta.bounds.push(bound_entry("width", &wb, &m.extent().0));
                m
            } else {
                let r = morph_upward_3step_general(&tree, a, b)?;
                meta.notes.push(r.warning.to_string());
                r.morph
            };
            let (_, h) = m.extent();
            meta.bounds.push(bound_entry("steps", &BigInt::from(3), &BigInt::from(m.steps())));
            meta.bounds.push(bound_entry("height", &hmax, &h));
            m
        }
        Algo::General => {
            let r = morph_general_detailed(&tree, a, b)?;
            meta.algorithm = "general".into();
            meta.bounds.push(bound_entry("steps", &BigInt::from(5 * n + 10), &BigInt::from(r.morph.steps())));
            for au in &r.audits {
                meta.bounds.push(bound_entry(&au.name, &au.bound, &au.actual));
            }
            meta.notes.push(format!("steps before merging: {}", r.raw_steps));
            r.morph
        }
    };
    meta.steps = m.steps();
    Ok((m, meta))
}

fn cmd_morph(algo: Algo, from: &Path, to: &Path, output: &Path) -> Outcome {
    let a = load_drawing(from)?;
    let b = load_drawing(to)?;
    let (m, meta) = build_morph(algo, &a, &b)?;
    write_json(output, &MorphFile::from_morph(&m, meta))?;
    Ok(0)
}

fn cmd_verify(file: &Path, standard: StandardArg, report: Option<&Path>) -> Outcome {
    let any: AnyFile = read_json(file)?;
    let standard = match standard {
        StandardArg::Planar => Standard::Planar,
        StandardArg::UpwardPlanar => Standard::UpwardPlanar,
    };
    let r = verify_file(&any, standard)?;
    if let Some(p) = report {
        write_json(p, &r)?;
    }
    if r.all_green {
        println!("{}: green ({} steps)", file.display(), r.steps);
        Ok(0)
    } else {
        match r.first_bad_step {
            Some(i) => println!(
                "{}: step {i} fails: {}",
                file.display(),
                r.step_reports[i].violation.clone().unwrap_or_else(|| "not upward".into())
            ),
            None => println!("{}: a keyframe or bound check fails", file.display()),
        }
        Ok(1)
    }
}

fn frames_of(any: &AnyFile) -> Result<(Arc<OrderedTree>, Vec<Vec<RatPoint>>), CliError> {
    match any {
        AnyFile::Drawing(d) => {
            let g = d.to_real()?;
            Ok((g.tree, vec![g.pos]))
        }
        AnyFile::Morph(m) => {
            let r = m.to_real()?;
            Ok((r.tree, r.keyframes))
        }
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn cmd_render(file: &Path, output: &Path, frames: Option<&Path>, fps: f64) -> Outcome {
    if !(fps > 0.0 && fps.is_finite()) {
        return Err(CliError::Invalid("--fps must be positive".into()));
    }
    let any: AnyFile = read_json(file)?;
    let (tree, keyframes) = frames_of(&any)?;
    let opts = RenderOptions { steps_per_second: fps, ..RenderOptions::default() };
    write_text(output, &render_morph(&tree, &keyframes, &opts))?;
    if let Some(dir) = frames {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        for (i, k) in keyframes.iter().enumerate() {
            let svg = render_morph(&tree, std::slice::from_ref(k), &opts);
            write_text(&dir.join(format!("frame_{i:03}.svg")), &svg)?;
        }
    }
    Ok(0)
}

fn cmd_snap(from: &Path, output: &Path) -> Outcome {
    let g = read_json::<DrawingFile>(from)?.to_real()?;
    let s = snap_to_grid_morph(&g)?;
    let mut meta = MorphMetadata { algorithm: "snap".into(), steps: 2, ..Default::default() };
    if g.pos.len() >= 2 {
        let r2 = drawing_resolution(&g)?;
        // grid side <= 10 r  <=>  side <= floor(sqrt(100 r^2))
        let limit = (r2 * BigInt::from(100)).floor().to_integer().sqrt();
        meta.bounds.push(bound_entry("grid side", &limit, &s.grid_side));
        meta.notes.push(format!("resolution {}", sqrt_decimal(&drawing_resolution(&g)?, 6)));
    }
    meta.notes.push(format!("scale {}", s.scale));
    meta.notes.push(format!("largest squared snap displacement {}", s.max_displacement_sq));
    let snapped: Vec<RatPoint> = s.snapped.pos.iter().map(RatPoint::from_point).collect();
    let frames = vec![s.start.pos.clone(), s.scaled.pos.clone(), snapped];
    write_json(output, &MorphFile::from_real_frames(&g.tree, &frames, meta))?;
    Ok(if s.steps.iter().all(|c| c.planar) { 0 } else { 1 })
}

/// Runs a parsed command.
pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gen { n, seed, mode, tree, binary, max_side, output } => {
            cmd_gen(n, seed, mode, tree, binary, max_side, &output)
        }
        Command::Morph { algo, from, to, output } => cmd_morph(algo, &from, &to, &output),
        Command::Verify { file, standard, report } => cmd_verify(&file, standard, report.as_deref()),
        Command::Render { file, output, frames, fps } => cmd_render(&file, &output, frames.as_deref(), fps),
        Command::Snap { from, output } => cmd_snap(&from, &output),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let kind = match &e {
                CliError::Io(_) => "io",
                CliError::Format(_) => "format",
                CliError::Invalid(_) => "invalid",
            };
            eprintln!("{}", serde_json::json!({ "error": kind, "message": e.to_string() }));
            2
        }
    }
}
