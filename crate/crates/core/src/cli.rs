//! Command-line front end. `run` returns the process exit code: 0 on
//! success, 2 on a usage error, 3 when a verification fails.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{f2f_lower_bound, wireless_gap_bound};
use crate::error::EvacError;
use crate::f2f::eval_f2f;
use crate::meeting::{reset_solver_stats, solver_stats, DEFAULT_TOL};
use crate::replay::{replay, verify_agreement, ORACLE_TOL};
use crate::scenario::{Model, Scenario, ZetaPolicy};
use crate::sweep::{crossing_intervals, min_over_d, run_sweep, to_csv, transition_points, Series, SweepConfig};
use crate::wireless::eval_wireless;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "disk-evac", version, about = "Two-robot evacuation of a unit disk with two exits")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evacuation time of one exit placement, checked against the replay.
    Eval(EvalArgs),
    /// Worst case over the exit position for every d on the grid.
    Sweep(SweepArgs),
    /// Lower bounds.
    Bounds(BoundsArgs),
    /// Random scenarios, closed form against replay.
    Verify(VerifyArgs),
    /// Minimum over d of the six wireless curves.
    Table1(GridArgs),
    /// Where one worst-case curve lies above another.
    Compare(CompareArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Wireless,
    F2f,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Wireless => Model::Wireless,
            ModelArg::F2f => Model::FaceToFace,
        }
    }
}

#[derive(Args, Debug)]
struct Common {
    /// Residual every catch-up solve must stay below.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Add the unit leg from the centre to the perimeter.
    #[arg(long)]
    include_center_leg: bool,
    /// Worker threads, 0 for all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long)]
    labeled: bool,
    /// 0, d, d/2 or radians.
    #[arg(long, default_value = "0")]
    zeta: String,
    #[arg(long)]
    d: f64,
    #[arg(long)]
    e1: f64,
    /// Write the replayed trajectories here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long, default_value_t = 0.01)]
    d_step: f64,
    #[arg(long, default_value_t = 0.001)]
    exit_step: f64,
    /// CSV goes here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long)]
    labeled: bool,
    /// 0, d or d/2.
    #[arg(long, default_value = "0")]
    zeta: String,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    d: f64,
    /// Also print the wireless bound for robots starting this far apart.
    #[arg(long)]
    zeta: Option<f64>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CompareArgs {
    /// First series, e.g. `wireless:0` or `f2f-labeled:d`.
    a: String,
    /// Second series.
    b: String,
    /// Fail unless the first curve never lies above the second.
    #[arg(long)]
    assert_le: bool,
    #[command(flatten)]
    grid: GridArgs,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<EvacError> for Failure {
    fn from(e: EvacError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

/// Parses `argv` (program name first), runs the command and prints its
/// summary.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(text) => {
            print!("{text}");
            EXIT_OK
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            EXIT_FAILED
        }
    }
}

fn dispatch(cmd: Cmd) -> Outcome {
    reset_solver_stats();
    let tol = match &cmd {
        Cmd::Eval(a) => Some(&a.common),
        Cmd::Sweep(a) => Some(&a.grid.common),
        Cmd::Table1(a) => Some(&a.common),
        Cmd::Compare(a) => Some(&a.grid.common),
        Cmd::Verify(a) => Some(&a.common),
        Cmd::Bounds(_) => None,
    }
    .map(|c| c.tol);
    if let Some(t) = tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Failure::Usage(format!("--tol {t} must be positive")));
        }
    }
    let mut text = match cmd {
        Cmd::Eval(a) => eval(a)?,
        Cmd::Sweep(a) => sweep(a)?,
        Cmd::Bounds(a) => bounds(a)?,
        Cmd::Verify(a) => verify(a)?,
        Cmd::Table1(a) => table1(a)?,
        Cmd::Compare(a) => compare(a)?,
    };
    if let Some(tol) = tol {
        let st = solver_stats();
        if st.calls > 0 {
            let _ = writeln!(text, "solver: {} solves, max residual {:.3e}", st.calls, st.max_residual);
        }
        if st.bracket_failures > 0 || st.max_residual >= tol {
            return Err(Failure::Verification(format!(
                "{text}{} bracket failures, max residual {:e} against --tol {tol:e}",
                st.bracket_failures, st.max_residual
            )));
        }
    }
    Ok(text)
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Usage(format!("thread pool: {e}")))
}

fn write_out(path: &PathBuf, body: &str) -> Result<(), Failure> {
    fs::write(path, body).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn eval(a: EvalArgs) -> Outcome {
    let zeta = a.zeta.parse::<ZetaPolicy>()?.resolve(a.d);
    let leg = if a.common.include_center_leg { 1.0 } else { 0.0 };
    let res = Scenario::new(a.model.into(), a.labeled, a.d, zeta, a.e1).and_then(|s| match s.model() {
        Model::Wireless => eval_wireless(&s).map(|r| (s, r)),
        Model::FaceToFace => eval_f2f(&s).map(|r| (s, r)),
    });
    let (s, res) = match res {
        Err(EvacError::UnsupportedRegime { zeta, d }) if a.model == ModelArg::Wireless => {
            let b = wireless_gap_bound(zeta)?;
            return Ok(format!(
                "zeta = {zeta:.6} exceeds d = {d:.6}: no algorithm, lower bound {:.6} ({})\n",
                b.value + leg,
                b.formula_text
            ));
        }
        other => other?,
    };
    let mut out = String::new();
    let lab = if s.is_labeled() { "labeled" } else { "unlabeled" };
    let _ = writeln!(out, "{} {lab}, d = {:.6}, zeta = {:.6}, e1 = {:.6}", s.model(), s.d(), s.zeta(), s.e1().theta());
    let _ = writeln!(out, "time {:.6}", res.time_from_perimeter + leg);
    let _ = writeln!(out, "case {}", res.case_tag);
    let sim = if res.simultaneous { " (both at once)" } else { "" };
    let _ = writeln!(out, "first finder {} after x = {:.6}{sim}", res.first_finder, res.discovery_arc_x);
    let _ = writeln!(out, "exits R1 {:.6}, R2 {:.6}", res.r1_exit_time + leg, res.r2_exit_time + leg);
    if let Some(disc) = &res.discrepancy {
        let _ = writeln!(out, "note: printed formula gives {:.6}, realized {:.6}; {}", disc.printed, disc.realized, disc.note);
    }
    let r = replay(&s).map_err(|e| Failure::Verification(format!("{out}replay: {e}")))?;
    if let Some(path) = &a.out {
        write_out(path, &r.dump())?;
    }
    let agreement = verify_agreement(&r, &s);
    let dev = (r.makespan - res.time_from_perimeter).abs();
    let _ = writeln!(out, "replay {:.6} (deviation {dev:.1e})", r.makespan + leg);
    if dev >= ORACLE_TOL || !agreement.passed() {
        return Err(Failure::Verification(format!("{out}{:?}", agreement.failures)));
    }
    Ok(out)
}

fn grid_config(g: &GridArgs, d_start: f64) -> SweepConfig {
    SweepConfig {
        d_step: g.d_step,
        exit_step: g.exit_step,
        d_start,
        include_center_leg: g.common.include_center_leg,
        workers: g.common.jobs,
    }
}

fn series_of(model: ModelArg, labeled: bool, zeta: &str) -> Result<Series, Failure> {
    let z = zeta.parse::<ZetaPolicy>()?;
    if matches!(z, ZetaPolicy::Fixed(_)) {
        return Err(Failure::Usage(format!("sweeps take zeta = 0, d/2 or d, not {zeta}")));
    }
    Ok(Series::new(model.into(), labeled, z))
}

fn sweep(a: SweepArgs) -> Outcome {
    let series = series_of(a.model, a.labeled, &a.zeta)?;
    let recs = run_sweep(&grid_config(&a.grid, 0.0), series)?;
    let csv = to_csv(&recs);
    let mut out = String::new();
    match &a.grid.out {
        Some(path) => write_out(path, &csv)?,
        None => out.push_str(&csv),
    }
    let (d, t) = min_over_d(&recs)?;
    let _ = writeln!(out, "{series}: {} grid points, minimum {t:.6} at d = {d:.6}", recs.len());
    let tr: Vec<String> = transition_points(&recs).iter().map(|d| format!("{d:.2}")).collect();
    let _ = writeln!(out, "case changes at d = {}", if tr.is_empty() { "-".into() } else { tr.join(", ") });
    Ok(out)
}

fn bounds(a: BoundsArgs) -> Outcome {
    let b = f2f_lower_bound(a.d)?;
    let mut out = format!("face-to-face lower bound {} = {:.6} ({} regime)\n", b.formula_text, b.value, b.regime);
    if let Some(z) = a.zeta {
        let g = wireless_gap_bound(z)?;
        let _ = writeln!(out, "wireless bound for zeta = {z:.6}: {} = {:.6}", g.formula_text, g.value);
    }
    Ok(out)
}

fn verify(a: VerifyArgs) -> Outcome {
    if a.samples == 0 {
        return Err(Failure::Usage("--samples must be positive".into()));
    }
    let reports = pool(a.common.jobs)?.install(|| crate::replay::verify_batch(a.samples, a.seed));
    let mut out = String::new();
    let mut failed = false;
    for r in &reports {
        let _ = writeln!(
            out,
            "{:<17} {} samples, max deviation {:.2e}, {} printed-formula discrepancies, {} failures",
            r.evaluator.name(),
            r.samples,
            r.max_deviation,
            r.discrepancies,
            r.failures.len()
        );
        for f in r.failures.iter().take(3) {
            let _ = writeln!(out, "  {f}");
        }
        failed |= !r.passed();
    }
    if failed {
        return Err(Failure::Verification(out));
    }
    Ok(out)
}

/// The six wireless curves, unlabeled first.
pub fn table1_series() -> [Series; 6] {
    let mut out = [Series::new(Model::Wireless, false, ZetaPolicy::Zero); 6];
    for (i, labeled) in [false, true].into_iter().enumerate() {
        for (j, z) in [ZetaPolicy::Zero, ZetaPolicy::Half, ZetaPolicy::Full].into_iter().enumerate() {
            out[3 * i + j] = Series::new(Model::Wireless, labeled, z);
        }
    }
    out
}

fn table1(g: GridArgs) -> Outcome {
    // d = 0 is the single-exit case and not part of the table
    let cfg = grid_config(&g, g.d_step);
    let mut out = format!("{:<10} {:<6} {:>10} {:>8}\n", "exits", "zeta", "min time", "at d");
    let mut csv = String::from("zeta_policy,labeled,min_time,d\n");
    for s in table1_series() {
        let recs = run_sweep(&cfg, s)?;
        let (d, t) = min_over_d(&recs)?;
        let lab = if s.labeled { "labeled" } else { "unlabeled" };
        let _ = writeln!(out, "{lab:<10} {:<6} {t:>10.4} {d:>8.2}", s.zeta.to_string());
        let _ = writeln!(csv, "{},{},{t:.6},{d:.6}", s.zeta, s.labeled);
    }
    if let Some(path) = &g.out {
        write_out(path, &csv)?;
    }
    Ok(out)
}

fn compare(a: CompareArgs) -> Outcome {
    let (sa, sb): (Series, Series) = (a.a.parse()?, a.b.parse()?);
    let cfg = grid_config(&a.grid, 0.0);
    let (ra, rb) = (run_sweep(&cfg, sa)?, run_sweep(&cfg, sb)?);
    let above = crossing_intervals(&ra, &rb)?;
    if let Some(path) = &a.grid.out {
        let mut csv = String::from("d,first,second\n");
        for (p, q) in ra.iter().zip(&rb) {
            let _ = writeln!(csv, "{:.6},{:.6},{:.6}", p.d, p.worst_time, q.worst_time);
        }
        write_out(path, &csv)?;
    }
    let mut out = format!("{sa} above {sb} on ");
    if above.is_empty() {
        out.push_str("no grid point\n");
    } else {
        let parts: Vec<String> = above.iter().map(|(lo, hi)| format!("[{lo:.2}, {hi:.2}]")).collect();
        let _ = writeln!(out, "{}", parts.join(", "));
    }
    if a.assert_le && !above.is_empty() {
        return Err(Failure::Verification(out));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(args: &str) -> i32 {
        run(std::iter::once("disk-evac").chain(args.split_whitespace()))
    }

    #[test]
    fn exit_codes() {
        assert_eq!(code("eval --model wireless --d 3.14159265 --zeta 0 --e1 0.78539816"), EXIT_OK);
        assert_eq!(code("bounds --d 1.0"), EXIT_OK);
        assert_eq!(code("eval --model wireless --d 7 --e1 0"), EXIT_USAGE);
        assert_eq!(code("eval --model teleport --d 1 --e1 0"), EXIT_USAGE);
        assert_eq!(code("frobnicate"), EXIT_USAGE);
        assert_eq!(code("bounds --d 0"), EXIT_USAGE);
        assert_eq!(code("eval --model f2f --d 2 --zeta d/2 --e1 0"), EXIT_USAGE);
        assert_eq!(code("verify --samples 20 --seed 1 --jobs 2"), EXIT_OK);
        assert_eq!(code("sweep --model wireless --zeta d/3 --d-step 1"), EXIT_USAGE);
    }

    #[test]
    fn failed_checks_exit_3() {
        // an absurd tolerance no solve can meet
        assert_eq!(code("eval --model f2f --d 2 --zeta 0 --e1 0.3 --tol 1e-300"), EXIT_FAILED);
        let args = "compare wireless:d/2 wireless:0 --assert-le --d-step 0.5 --exit-step 0.01";
        assert_eq!(code(args), EXIT_FAILED);
        assert_eq!(code("compare wireless:d wireless:0 --assert-le --d-step 0.5"), EXIT_OK);
    }

    #[test]
    fn wider_start_reports_the_bound() {
        assert_eq!(code("eval --model wireless --d 1 --zeta 2 --e1 0"), EXIT_OK);
    }
}
