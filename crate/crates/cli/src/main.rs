use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use grid_uso::gen::{enumerate_usos, gen_one_line, gen_separable_ddim};
use grid_uso::json::GridFile;
use grid_uso::oracle::{AdversaryVertexOracle, ExplicitVertexOracle, VertexOracle};
use grid_uso::report::{run_2d, run_ddim, Algorithm, Instance, RunOptions, RunReport, CSV_HEADER};
use grid_uso::solve::{diagonal_solve, random_edge_solve, rectangular_solve, walk_solve};
use grid_uso::{Error, GridShape, Verdict};
use rayon::prelude::*;
use serde_json::json;

mod exit {
    pub const VIOLATION: u8 = 1;
    pub const INVALID: u8 = 2;
    pub const CAP: u8 = 3;
    pub const BOUND: u8 = 4;
    pub const MISMATCH: u8 = 5;
    pub const ADVERSARY: u8 = 6;
}

#[derive(Parser)]
#[command(name = "uso", version, about = "Sink finding on grid unique sink orientations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a grid and write it as JSON.
    Gen(GenArgs),
    /// Check that a grid file is a unique sink orientation.
    Validate {
        path: PathBuf,
        /// Largest m + n checked exhaustively (2-dimensional grids).
        #[arg(long, default_value_t = grid_uso::grid::DEFAULT_VALIDATION_CAP)]
        max_sides: usize,
    },
    /// Enumerate every USO of a small shape.
    Enumerate {
        #[arg(long, value_parser = parse_dims)]
        shape: Dims,
        /// Print only the number of USOs.
        #[arg(long)]
        count_only: bool,
    },
    /// Run one solver and write a report.
    Solve(SolveArgs),
    /// Run a solver against the adaptive lower-bound adversary.
    Adversary {
        #[arg(long, value_parser = parse_dims)]
        shape: Dims,
        #[arg(long, value_parser = parse_alg)]
        alg: Algorithm,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the query transcript as JSON lines.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Run a solver over sizes x seeds and write CSV.
    Bench {
        #[arg(long, value_parser = parse_alg)]
        alg: Algorithm,
        /// Comma-separated sides; each size n runs on n x n.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        trials: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Oneline,
    Separable,
    EnumerateIndex,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value = "oneline")]
    model: Model,
    #[arg(long, value_parser = parse_dims)]
    shape: Dims,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Position in enumeration order (enumerate-index only).
    #[arg(long)]
    index: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_parser = parse_alg)]
    alg: Algorithm,
    /// Grid JSON file to solve.
    #[arg(long, conflicts_with_all = ["model", "shape"])]
    grid: Option<PathBuf>,
    #[arg(long, value_enum)]
    model: Option<Model>,
    #[arg(long, value_parser = parse_dims)]
    shape: Option<Dims>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    index: Option<usize>,
    /// Where to write the JSON report; stdout if omitted.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Include wall time in the report.
    #[arg(long)]
    timing: bool,
    /// Skip the brute-force sink comparison.
    #[arg(long)]
    no_verify: bool,
}

/// Shape sides such as `8x13`.
type Dims = Vec<usize>;

fn parse_dims(s: &str) -> Result<Dims, String> {
    s.split('x')
        .map(|p| p.trim().parse::<usize>().map_err(|_| format!("bad shape {s:?}; expected e.g. 8x8 or 2x2x2")))
        .collect()
}

fn parse_alg(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

fn shape_2d(dims: &[usize]) -> anyhow::Result<GridShape> {
    match dims {
        [m, n] => Ok(GridShape::new(*m, *n)?),
        _ => Err(Error::InvalidShape(format!("expected a 2-dimensional shape, got {dims:?}")).into()),
    }
}

fn emit(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                out.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn generate(model: Model, dims: &[usize], seed: u64, index: Option<usize>) -> anyhow::Result<GridFile> {
    Ok(match model {
        Model::Oneline => {
            let s = shape_2d(dims)?;
            GridFile::Values(gen_one_line(s.rows, s.cols, seed)?)
        }
        Model::Separable => GridFile::DDim(gen_separable_ddim(dims, seed)?),
        Model::EnumerateIndex => {
            let s = shape_2d(dims)?;
            let Some(i) = index else {
                return Err(Error::InvalidShape("enumerate-index needs --index".into()).into());
            };
            let g = enumerate_usos(s)?
                .nth(i)
                .ok_or_else(|| Error::InvalidShape(format!("{s} has fewer than {} USOs", i + 1)))?;
            GridFile::Edges(g)
        }
    })
}

fn read_grid(path: &Path) -> anyhow::Result<GridFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(GridFile::parse(&text)?)
}

fn cmd_gen(a: GenArgs) -> anyhow::Result<u8> {
    let file = generate(a.model, &a.shape, a.seed, a.index)?;
    emit(a.output.as_deref(), &file.to_json())?;
    Ok(0)
}

fn cmd_validate(path: &Path, max_sides: usize) -> anyhow::Result<u8> {
    let verdict = match read_grid(path)? {
        GridFile::DDim(g) => g.validate_uso()?,
        other => other.oriented().expect("2-dimensional").validate_uso_capped(max_sides)?,
    };
    match verdict {
        Verdict::Uso => {
            println!("ok");
            Ok(0)
        }
        Verdict::Violation(v) => {
            println!("violation: {v}");
            Ok(exit::VIOLATION)
        }
    }
}

fn cmd_enumerate(dims: &[usize], count_only: bool) -> anyhow::Result<u8> {
    let shape = shape_2d(dims)?;
    let all = enumerate_usos(shape)?;
    if count_only {
        println!("{}", all.count());
    } else {
        let mut out = io::stdout().lock();
        for g in all {
            writeln!(out, "{}", GridFile::Edges(g).to_json())?;
        }
    }
    Ok(0)
}

fn finish_report(r: &RunReport, path: Option<&Path>) -> anyhow::Result<u8> {
    emit(path, &r.to_json())?;
    if r.bound_ok {
        Ok(0)
    } else {
        eprintln!("bound violated: {} queries > {}", r.queries.total(), r.bound);
        Ok(exit::BOUND)
    }
}

fn cmd_solve(a: SolveArgs) -> anyhow::Result<u8> {
    let opts = RunOptions { skip_verify: a.no_verify, timing: a.timing };
    let (file, seed) = match (&a.grid, a.model, &a.shape) {
        (Some(p), _, _) => (read_grid(p)?, None),
        (None, Some(model), Some(dims)) => (generate(model, dims, a.seed, a.index)?, Some(a.seed)),
        _ => bail!("solve needs --grid or both --model and --shape"),
    };
    let report = match file {
        GridFile::DDim(g) => {
            if a.alg != Algorithm::Ddim {
                bail!(Error::InvalidShape(format!("{} runs on 2-dimensional grids only", a.alg)));
            }
            run_ddim(&g, seed, opts)?
        }
        GridFile::Values(vm) => run_2d(a.alg, &Instance::Values(vm), seed, opts)?,
        GridFile::Edges(g) => run_2d(a.alg, &Instance::Grid(g), seed, opts)?,
    };
    finish_report(&report, a.report.as_deref())
}

fn cmd_adversary(dims: &[usize], alg: Algorithm, seed: u64, transcript: Option<&Path>) -> anyhow::Result<u8> {
    let shape = shape_2d(dims)?;
    let mut adv = AdversaryVertexOracle::new(shape);
    let sol = {
        let o: &mut dyn VertexOracle = &mut adv;
        match alg {
            Algorithm::Diagonal => diagonal_solve(o)?,
            Algorithm::Rect | Algorithm::Ddim => rectangular_solve(o)?,
            Algorithm::Walk => walk_solve(o)?,
            Algorithm::RandomEdge => random_edge_solve(o, seed)?,
            Algorithm::DcEdge => bail!("the adversary answers vertex queries only; dc-edge is not supported"),
        }
    };
    if let Some(p) = transcript {
        fs::write(p, adv.transcript().to_jsonl()).with_context(|| format!("writing {}", p.display()))?;
    }
    let mut problems = Vec::new();
    match adv.materialize() {
        Err(e) => problems.push(format!("materialize: {e}")),
        Ok(g) => {
            if g.brute_force_sink().ok() != Some(sol.sink) || adv.sink() != Some(sol.sink) {
                problems.push("solver sink differs from the materialized sink".to_string());
            }
            if shape.size() <= grid_uso::grid::DEFAULT_VALIDATION_CAP && !g.validate_uso()?.is_uso() {
                problems.push("materialized grid is not a USO".to_string());
            }
            let mut replay = ExplicitVertexOracle::new(&g);
            if let Some(line) = adv.transcript().replay_vertices(&mut replay)? {
                problems.push(format!("transcript diverges at line {}", line + 1));
            }
        }
    }
    let lower = (shape.rows + shape.cols - 1) as u64;
    let out = json!({
        "alg": alg.id(),
        "shape": [shape.rows, shape.cols],
        "queries": sol.queries.vertex,
        "lower_bound": lower,
        "sink": [sol.sink.row + 1, sol.sink.col + 1],
        "consistent": problems.is_empty(),
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    if !problems.is_empty() {
        for p in &problems {
            eprintln!("inconsistent: {p}");
        }
        return Ok(exit::ADVERSARY);
    }
    Ok(0)
}

fn cmd_bench(alg: Algorithm, sizes: &[usize], trials: u64, csv: Option<&Path>) -> anyhow::Result<u8> {
    let jobs: Vec<(usize, u64)> = sizes.iter().flat_map(|&n| (0..trials).map(move |s| (n, s))).collect();
    for &n in sizes {
        GridShape::square(n)?;
    }
    let mut rows: Vec<((usize, u64), RunReport)> = jobs
        .par_iter()
        .map(|&(n, seed)| {
            let inst = Instance::Values(gen_one_line(n, n, seed)?);
            Ok(((n, seed), run_2d(alg, &inst, Some(seed), RunOptions::default())?))
        })
        .collect::<grid_uso::Result<_>>()?;
    rows.sort_by_key(|(k, _)| *k);
    let mut text = String::from(CSV_HEADER);
    text.push('\n');
    for (_, r) in &rows {
        text.push_str(&r.csv_row());
        text.push('\n');
    }
    emit(csv, &text)?;
    let violations = rows.iter().filter(|(_, r)| !r.bound_ok).count();
    if violations > 0 {
        eprintln!("{violations} runs exceeded the bound");
        return Ok(exit::BOUND);
    }
    Ok(0)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::CapExceeded { .. }) => exit::CAP,
        Some(Error::SinkMismatch { .. }) => exit::MISMATCH,
        Some(Error::NotUso(_) | Error::Cyclic(_) | Error::Inconsistent(_)) => exit::VIOLATION,
        _ => exit::INVALID,
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Validate { path, max_sides } => cmd_validate(&path, max_sides),
        Command::Enumerate { shape, count_only } => cmd_enumerate(&shape, count_only),
        Command::Solve(a) => cmd_solve(a),
        Command::Adversary { shape, alg, seed, transcript } => cmd_adversary(&shape, alg, seed, transcript.as_deref()),
        Command::Bench { alg, sizes, trials, csv } => cmd_bench(alg, &sizes, trials, csv.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let is_adversary = matches!(cli.command, Command::Adversary { .. });
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = match e.downcast_ref::<Error>() {
                Some(Error::Inconsistent(_) | Error::Unresolved) if is_adversary => exit::ADVERSARY,
                _ => exit_code(&e),
            };
            ExitCode::from(code)
        }
    }
}
