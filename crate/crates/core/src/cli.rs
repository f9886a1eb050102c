//! The `gmf` command line. Every subcommand prints one JSON document to
//! stdout, or writes it to `--report` and keeps stdout empty. Diagnostics go
//! to stderr.
//!
//! Exit codes: 0 ok / affirmed, 1 error, 2 inconclusive (or a numerical
//! check above `--tol`), 3 potential counterexample.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::characters::{character_table, sn_irreducible_on, CharacterTable, Partition};
use crate::conjecture::{
    class_bound, criterion_check, generate_class, m_n, quick_affirm, verify_conjecture_numeric, ConjectureReport,
};
use crate::decomposition::{cauchy_binet_check, decompose_linear_with, decompose_with, DecomposeOptions, DecompositionReport};
use crate::error::{Error, Result};
use crate::gmf::{gmf, permanent_naive, permanent_ryser, RYSER_MAX_N};
use crate::io::{
    group_to_value, load_character, load_group, matrix_to_json, parse_matrix, read_text_arg, split_group_list,
};
use crate::matrix::ComplexMatrix;
use crate::numeric::{rel_err, DEFAULT_ENUMERATION_CAP, DEFAULT_TOL};
use crate::perm::{all_subgroups, PermGroup, SequenceGamma};
use crate::random::{random_complex_matrix, random_psd_seeded, rng, PsdMode};

const RANDOM_PSD_MAX_N: usize = 12;
const ORACLE_MAX_N: usize = 7;

#[derive(Debug, Parser)]
#[command(name = "gmf", version, about = "Generalized matrix functions and the permanent dominant conjecture")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Tolerance for pass/fail of numerical identities.
    #[arg(long, global = true, env = "GMF_TOL", default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Largest `n^n` a command may enumerate.
    #[arg(long, global = true, env = "GMF_CAP", default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: u128,
    /// Worker threads, or `auto`.
    #[arg(long, global = true, env = "GMF_THREADS", default_value = "auto", value_parser = parse_threads)]
    pub threads: Threads,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threads {
    Auto,
    Fixed(usize),
}

fn parse_threads(s: &str) -> std::result::Result<Threads, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(Threads::Auto);
    }
    match s.parse::<usize>() {
        Ok(0) => Ok(Threads::Auto),
        Ok(k) => Ok(Threads::Fixed(k)),
        Err(_) => Err(format!("expected a thread count or `auto`, got {s:?}")),
    }
}

#[derive(Debug, Clone, Args)]
pub struct MatrixGroupChar {
    /// Matrix JSON file or inline JSON.
    #[arg(long)]
    pub matrix: String,
    /// Group JSON file, inline JSON, or a name (`S_4`, `A_4`, `C_4`, `D_4`, `Klein`, `Young:[2,2]`).
    #[arg(long)]
    pub group: String,
    /// Character JSON file, inline JSON, or `principal`, `sign`, `irr:K`, `partition:3,1`.
    #[arg(long, default_value = "principal")]
    pub character: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate `d^G_chi(A)` and its normalized value.
    Eval {
        #[command(flatten)]
        input: MatrixGroupChar,
        /// Report the normalized value as `result`.
        #[arg(long)]
        normalized: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Check the Cholesky decomposition identity for a PSD matrix.
    Decompose {
        #[command(flatten)]
        input: MatrixGroupChar,
        /// Use the per-orbit formula for linear characters.
        #[arg(long)]
        linear: bool,
        /// Draw coset representatives at random (seeded by `--seed`).
        #[arg(long)]
        random_cosets: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Check the Cauchy-Binet expansion of `d((AB)[alpha|beta])`.
    CauchyBinet {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "principal")]
        character: String,
        /// 1-based sequence, e.g. `1,2,3`.
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Apply the entry-size criterion, falling back to the easy classes.
    Criterion {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Route a matrix to one of the easy classes.
    QuickAffirm {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Build `L diag(1, lambda^2) L*` from a base matrix.
    GenerateClass {
        #[arg(long)]
        matrix: String,
        /// `n - 1` comma-separated values, or `max` for the largest admissible one.
        #[arg(long)]
        lambdas: String,
        #[arg(long, alias = "report")]
        out: Option<PathBuf>,
    },
    /// Compare `per(A)` with every normalized irreducible gmf of the listed groups.
    Verify {
        #[arg(long)]
        matrix: String,
        /// Comma-separated group specs, or `all` for every subgroup of `S_n`.
        #[arg(long, default_value = "all")]
        groups: String,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Character table of a group.
    Chartable {
        #[arg(long)]
        group: String,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// The orbit-count bound `M_n`.
    Mn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Seeded random PSD matrix.
    RandomPsd {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "generic")]
        mode: PsdMode,
        #[arg(long, alias = "report")]
        out: Option<PathBuf>,
    },
    /// Time the Ryser permanent, single- and multi-threaded.
    BenchPermanent {
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

/// Parses `std::env::args` and runs; returns the exit code.
pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}

pub fn run_with<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let sink: &mut (dyn Write + Send) = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// Runs a parsed command inside a pool sized by `--threads`.
pub fn execute(cli: &Cli, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<i32> {
    let cfg = &cli.config;
    if cfg.tol.is_nan() || cfg.tol <= 0.0 {
        return Err(Error::InvalidMatrix(format!("--tol must be positive, got {}", cfg.tol)));
    }
    let pool = build_pool(cfg.threads)?;
    pool.install(|| dispatch(&cli.command, cfg, out, err))
}

fn build_pool(threads: Threads) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Threads::Fixed(k) = threads {
        b = b.num_threads(k);
    }
    b.build().map_err(|e| Error::Io(e.to_string()))
}

fn emit(value: &impl Serialize, report: Option<&Path>, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match report {
        Some(path) => {
            std::fs::write(path, text + "\n")?;
            writeln!(err, "report written to {}", path.display())?;
        }
        None => writeln!(out, "{text}")?,
    }
    Ok(())
}

fn emit_matrix(a: &ComplexMatrix, path: Option<&Path>, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<()> {
    let text = matrix_to_json(a);
    match path {
        Some(p) => {
            std::fs::write(p, text)?;
            writeln!(err, "matrix written to {}", p.display())?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load_matrix(spec: &str) -> Result<ComplexMatrix> {
    parse_matrix(&read_text_arg(spec)?)
}

fn check_cap(n: usize, cap: u128) -> Result<()> {
    let size = (n as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::EnumerationTooLarge { size, cap });
    }
    Ok(())
}

fn parse_sequence(s: &str) -> Result<SequenceGamma> {
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad sequence {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    SequenceGamma::from_one_based(&v)
}

fn load_groups(list: &str, n: usize) -> Result<Vec<Arc<PermGroup>>> {
    if list.trim().eq_ignore_ascii_case("all") {
        return all_subgroups(&PermGroup::symmetric(n)?);
    }
    split_group_list(list).iter().map(|s| load_group(s).map(Arc::new)).collect()
}

fn status(err: &mut (dyn Write + Send), ok: bool, what: &str) -> Result<i32> {
    writeln!(err, "{what}: {}", if ok { "ok" } else { "above tolerance" })?;
    Ok(if ok { 0 } else { 2 })
}

#[derive(Serialize)]
struct EvalOut {
    group: Value,
    character: String,
    n: usize,
    #[serde(flatten)]
    value: crate::gmf::GmfValue,
    #[serde(with = "crate::io::complex")]
    result: Complex64,
}

#[derive(Serialize)]
struct DecomposeOut {
    #[serde(flatten)]
    report: DecompositionReport,
    tolerance: f64,
    identity_holds: bool,
}

#[derive(Serialize)]
struct CauchyBinetOut {
    group: String,
    character: String,
    alpha: Vec<usize>,
    beta: Vec<usize>,
    relative_residual: f64,
    tolerance: f64,
    holds: bool,
}

#[derive(Serialize)]
struct ClassOut {
    label: String,
    representative: String,
    size: usize,
}

#[derive(Serialize)]
struct CharOut {
    label: String,
    degree: f64,
    #[serde(serialize_with = "crate::io::complex::vec::serialize")]
    values: Vec<Complex64>,
}

#[derive(Serialize)]
struct ChartableOut {
    group: Value,
    order: usize,
    classes: Vec<ClassOut>,
    characters: Vec<CharOut>,
    degrees: Vec<u64>,
    degree_square_sum: u64,
    orthogonality_residual: f64,
    column_residual: f64,
    max_snap_shift: f64,
    /// Largest gap to the Murnaghan-Nakayama table, for full `S_n`.
    #[serde(skip_serializing_if = "Option::is_none")]
    murnaghan_nakayama_max_diff: Option<f64>,
}

#[derive(Serialize)]
struct BenchRow {
    n: usize,
    reps: usize,
    single_thread_seconds: f64,
    multi_thread_seconds: f64,
    /// Multi-threaded time over the time at `n - 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio_to_previous: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_rel_err: Option<f64>,
}

#[derive(Serialize)]
struct BenchOut {
    seed: u64,
    threads: usize,
    rows: Vec<BenchRow>,
    oracle_ok: bool,
}

fn dispatch(cmd: &Command, cfg: &RunConfig, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<i32> {
    match cmd {
        Command::Eval { input, normalized, report } => {
            let a = load_matrix(&input.matrix)?;
            let group = Arc::new(load_group(&input.group)?);
            let chi = load_character(&input.character, &group)?;
            let value = gmf(&a, &group, &chi)?;
            let result = if *normalized { value.normalized } else { value.value };
            let doc = EvalOut { group: group_to_value(&group), character: chi.label().to_string(), n: a.rows(), value, result };
            emit(&doc, report.as_deref(), out, err)?;
            Ok(0)
        }
        Command::Decompose { input, linear, random_cosets, report } => {
            let a = load_matrix(&input.matrix)?;
            check_cap(a.dim()?, cfg.cap)?;
            let group = Arc::new(load_group(&input.group)?);
            let chi = load_character(&input.character, &group)?;
            let opts = DecomposeOptions {
                cap: cfg.cap,
                coset_choice: if *random_cosets {
                    crate::decomposition::CosetChoice::Randomized { seed: cfg.seed }
                } else {
                    crate::decomposition::CosetChoice::Lexicographic
                },
                keep_terms: true,
            };
            let report_data = if *linear {
                decompose_linear_with(&a, &group, &chi, &opts, None)?
            } else {
                decompose_with(&a, &group, &chi, &opts, None)?
            };
            let holds = report_data.relative_residual <= cfg.tol;
            emit(&DecomposeOut { report: report_data, tolerance: cfg.tol, identity_holds: holds }, report.as_deref(), out, err)?;
            status(err, holds, "decomposition identity")
        }
        Command::CauchyBinet { a, b, group, character, alpha, beta, report } => {
            let a = load_matrix(a)?;
            let b = load_matrix(b)?;
            check_cap(a.dim()?, cfg.cap)?;
            let group = Arc::new(load_group(group)?);
            let chi = load_character(character, &group)?;
            let (alpha, beta) = (parse_sequence(alpha)?, parse_sequence(beta)?);
            let r = cauchy_binet_check(&a, &b, &group, &chi, &alpha, &beta)?;
            let holds = r <= cfg.tol;
            let doc = CauchyBinetOut {
                group: group.label(),
                character: chi.label().to_string(),
                alpha: alpha.to_one_based(),
                beta: beta.to_one_based(),
                relative_residual: r,
                tolerance: cfg.tol,
                holds,
            };
            emit(&doc, report.as_deref(), out, err)?;
            status(err, holds, "Cauchy-Binet expansion")
        }
        Command::Criterion { matrix, report } => {
            let r = criterion_check(&load_matrix(matrix)?)?;
            conjecture_out(&r, report.as_deref(), out, err)
        }
        Command::QuickAffirm { matrix, report } => {
            let r = quick_affirm(&load_matrix(matrix)?)?;
            conjecture_out(&r, report.as_deref(), out, err)
        }
        Command::GenerateClass { matrix, lambdas, out: path } => {
            let a = load_matrix(matrix)?;
            let n = a.dim()?;
            let bound = class_bound(&a)?;
            let lambdas: Vec<f64> = if lambdas.trim().eq_ignore_ascii_case("max") {
                vec![bound.lambda_max; n.saturating_sub(1)]
            } else {
                lambdas
                    .split(',')
                    .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad lambda {t:?}"))))
                    .collect::<Result<_>>()?
            };
            let member = generate_class(&a, &lambdas)?;
            writeln!(err, "lambda_max = {:.6e}; member passes the criterion", bound.lambda_max)?;
            emit_matrix(&member, path.as_deref(), out, err)?;
            Ok(0)
        }
        Command::Verify { matrix, groups, report } => {
            let a = load_matrix(matrix)?;
            let n = a.dim()?;
            check_cap(n, cfg.cap)?;
            let groups = load_groups(groups, n)?;
            writeln!(err, "checking {} groups", groups.len())?;
            let r = verify_conjecture_numeric(&a, &groups)?;
            conjecture_out(&r, report.as_deref(), out, err)
        }
        Command::Chartable { group, report } => {
            let group = Arc::new(load_group(group)?);
            let table = character_table(&group)?;
            emit(&chartable_doc(&table)?, report.as_deref(), out, err)?;
            Ok(0)
        }
        Command::Mn { n, report } => {
            let m = m_n(*n)?;
            emit(&json!({ "n": n, "m_n": m.to_string() }), report.as_deref(), out, err)?;
            Ok(0)
        }
        Command::RandomPsd { n, mode, out: path } => {
            if *n > RANDOM_PSD_MAX_N {
                return Err(Error::TooLarge { n: *n, limit: RANDOM_PSD_MAX_N });
            }
            emit_matrix(&random_psd_seeded(*n, *mode, cfg.seed), path.as_deref(), out, err)?;
            Ok(0)
        }
        Command::BenchPermanent { n_max, n_min, reps, report } => {
            let doc = bench_permanent(*n_min, *n_max, *reps, cfg.seed, err)?;
            let ok = doc.oracle_ok;
            emit(&doc, report.as_deref(), out, err)?;
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn conjecture_out(r: &ConjectureReport, report: Option<&Path>, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<i32> {
    emit(r, report, out, err)?;
    writeln!(err, "verdict: {}", serde_json::to_value(r.verdict)?.as_str().unwrap_or("?"))?;
    Ok(r.verdict.exit_code())
}

fn chartable_doc(table: &CharacterTable) -> Result<ChartableOut> {
    let group = &table.group;
    let classes = group
        .classes()
        .iter()
        .enumerate()
        .map(|(k, c)| ClassOut {
            label: format!("{:?}", group.class_representative(k).cycle_type()),
            representative: group.class_representative(k).to_string(),
            size: c.size(),
        })
        .collect();
    let characters = table
        .characters
        .iter()
        .map(|c| CharOut { label: c.label().to_string(), degree: c.degree().re, values: c.class_values().to_vec() })
        .collect();
    let degrees = table.degrees();
    let mn = if group.order() as u128 == crate::numeric::factorial(group.degree()) {
        let mut worst: f64 = 0.0;
        for p in Partition::all(group.degree()) {
            let mn = sn_irreducible_on(group, &p)?;
            let gap = table
                .characters
                .iter()
                .map(|c| {
                    c.class_values().iter().zip(mn.class_values()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
                })
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(gap);
        }
        Some(worst)
    } else {
        None
    };
    Ok(ChartableOut {
        group: group_to_value(group),
        order: group.order(),
        classes,
        characters,
        degree_square_sum: degrees.iter().map(|d| d * d).sum(),
        degrees,
        orthogonality_residual: table.orthogonality_residual,
        column_residual: table.column_residual,
        max_snap_shift: table.max_snap_shift,
        murnaghan_nakayama_max_diff: mn,
    })
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

fn time_reps(a: &ComplexMatrix, reps: usize) -> Result<f64> {
    let mut times = Vec::with_capacity(reps);
    for _ in 0..reps {
        let t = Instant::now();
        std::hint::black_box(permanent_ryser(std::hint::black_box(a))?);
        times.push(t.elapsed().as_secs_f64());
    }
    Ok(median(times))
}

fn bench_permanent(n_min: usize, n_max: usize, reps: usize, seed: u64, err: &mut (dyn Write + Send)) -> Result<BenchOut> {
    if n_max > RYSER_MAX_N {
        return Err(Error::TooLarge { n: n_max, limit: RYSER_MAX_N });
    }
    let reps = reps.max(1);
    let single = build_pool(Threads::Fixed(1))?;
    let mut r = rng(seed);
    let mut rows: Vec<BenchRow> = Vec::new();
    let mut oracle_ok = true;
    for n in n_min.max(1)..=n_max {
        let a = random_complex_matrix(n, &mut r);
        let single_t = single.install(|| time_reps(&a, reps))?;
        let multi_t = time_reps(&a, reps)?;
        let oracle_rel_err = if n <= ORACLE_MAX_N {
            let e = rel_err(permanent_ryser(&a)?, permanent_naive(&a)?);
            oracle_ok &= e <= 1e-9;
            Some(e)
        } else {
            None
        };
        let ratio_to_previous =
            rows.last().filter(|p| p.n + 1 == n && p.multi_thread_seconds > 0.0).map(|p| multi_t / p.multi_thread_seconds);
        writeln!(err, "n = {n:2}: single {single_t:.3e} s, multi {multi_t:.3e} s")?;
        rows.push(BenchRow {
            n,
            reps,
            single_thread_seconds: single_t,
            multi_thread_seconds: multi_t,
            ratio_to_previous,
            oracle_rel_err,
        });
    }
    Ok(BenchOut { seed, threads: rayon::current_num_threads(), rows, oracle_ok })
}
