//! Acceptance suite. Every criterion prints one `PASS`/`FAIL` line to
//! stderr (uncaptured, so it shows without `--nocapture`) and fails its
//! test when the check does not hold.
//!
//! The full-resolution sweep (d step 0.01, exit step 0.001) runs once and is
//! shared by criteria 1-5, 7 and 8.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::Write;
use std::sync::OnceLock;

use disk_evac::bounds::f2f_lower_bound;
use disk_evac::meeting::solver_stats;
use disk_evac::replay::{verify_batch, ORACLE_TOL};
use disk_evac::sweep::{
    crossing_intervals, local_minima, min_over_d, run_sweep, to_csv, transition_points, Series, SweepConfig, SweepRecord,
};
use disk_evac::Model;

const SEED: u64 = 7;

fn config(workers: usize) -> SweepConfig {
    SweepConfig { workers, ..SweepConfig::default() }
}

fn key(s: &Series) -> String {
    s.to_string()
}

fn sweeps() -> &'static BTreeMap<String, Vec<SweepRecord>> {
    static CELL: OnceLock<BTreeMap<String, Vec<SweepRecord>>> = OnceLock::new();
    CELL.get_or_init(|| {
        Series::all().iter().map(|s| (key(s), run_sweep(&config(8), *s).expect("sweep runs"))).collect()
    })
}

fn curve(name: &str) -> &'static [SweepRecord] {
    let s: Series = name.parse().unwrap();
    &sweeps()[&key(&s)]
}

fn report(n: u32, ok: bool, detail: &str) {
    let line = format!("criterion {n} {}: {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
    assert!(ok, "criterion {n}: {detail}");
}

fn near(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn fmt_ivs(ivs: &[(f64, f64)]) -> String {
    let v: Vec<String> = ivs.iter().map(|(a, b)| format!("[{a:.2}, {b:.2}]")).collect();
    format!("[{}]", v.join(", "))
}

fn fmt_ds(ds: &[f64]) -> String {
    let v: Vec<String> = ds.iter().map(|d| format!("{d:.2}")).collect();
    format!("[{}]", v.join(", "))
}

#[test]
fn criterion_1_single_exit() {
    let r = &curve("wireless:0")[0];
    let want = 1.0 + 2.0 * PI / 3.0 + 3f64.sqrt();
    let got = r.worst_time + 1.0;
    report(1, r.d == 0.0 && near(got, want, 1e-3), &format!("d = 0 worst case + 1 = {got:.6}, expected {want:.6} within 1e-3"));
}

#[test]
fn criterion_2_table() {
    let s2 = 2f64.sqrt();
    let rows = [
        ("wireless:0", PI / 4.0 + s2, PI),
        ("wireless:d", PI / 4.0 + s2, PI),
        ("wireless:d/2", PI / 2.0 + s2, PI),
        ("wireless-labeled:0", PI / 4.0 + s2, PI),
        ("wireless-labeled:d", PI / 4.0 + s2, PI),
        ("wireless-labeled:d/2", 2.88, 1.26),
    ];
    let mut ok = true;
    let mut parts = vec![];
    for (name, t, d) in rows {
        // d = 0 is the single-exit case, not a row of the table
        let (dm, tm) = min_over_d(&curve(name)[1..]).unwrap();
        let good = near(tm, t, 0.02) && near(dm, d, 0.02);
        ok &= good;
        parts.push(format!("{name} {tm:.4}@{dm:.2}{}", if good { "" } else { " (off)" }));
    }
    report(2, ok, &parts.join("; "));
}

#[test]
fn criterion_3_curve_ordering() {
    let (w0, wd, wh) = (curve("wireless:0"), curve("wireless:d"), curve("wireless:d/2"));
    let full_le_zero = crossing_intervals(wd, w0).unwrap();

    // where zeta = 0 is strictly better than zeta = d/2
    let zero_better: Vec<f64> =
        w0.iter().zip(wh).filter(|(a, b)| a.worst_time < b.worst_time - 1e-12).map(|(a, _)| a.d).collect();
    let onset = zero_better.first().copied().unwrap_or(f64::NAN);
    let contiguous = zero_better.windows(2).all(|w| near(w[1] - w[0], 0.01, 1e-6) || near(w[1], PI, 0.01));
    let reaches_pi = zero_better.last().is_some_and(|d| *d == PI);
    let half_ok = near(onset, 1.21, 0.05) && contiguous && reaches_pi;

    let diff_above = crossing_intervals(curve("f2f:d"), curve("f2f:0")).unwrap();
    let f2f_ok = diff_above.len() == 2
        && near(diff_above[0].0, 1.895, 0.05)
        && near(diff_above[0].1, 2.005, 0.05)
        && near(diff_above[1].0, 2.765, 0.05)
        && diff_above[1].1 >= PI - 0.05;

    report(
        3,
        full_le_zero.is_empty() && half_ok && f2f_ok,
        &format!(
            "wireless d above 0 on {}; wireless 0 < d/2 from d = {onset:.2}{}; f2f d above 0 on {}",
            fmt_ivs(&full_le_zero),
            if contiguous && reaches_pi { " to pi" } else { " (not one run)" },
            fmt_ivs(&diff_above)
        ),
    );
}

#[test]
fn criterion_4_transitions() {
    let has = |ds: &[f64], at: f64| ds.iter().any(|d| near(*d, at, 0.03));
    let same_tr = transition_points(curve("f2f:0"));
    let same_ok = [0.38, 1.11, 1.95].iter().all(|&d| has(&same_tr, d));

    let diff = curve("f2f:d");
    let (diff_min, diff_tr) = (local_minima(diff), transition_points(diff));
    let diff_ok = has(&diff_min, 0.4) && has(&diff_tr, 1.84);

    let w = curve("wireless:d");
    let (w_min, w_tr) = (local_minima(w), transition_points(w));
    let w_ok = has(&w_min, 2.0 * PI / 3.0);

    report(
        4,
        same_ok && diff_ok && w_ok,
        &format!(
            "f2f 0 case changes {} ({}); f2f d minima {} changes {} ({}); wireless d minima {} changes {} (local minimum at 2pi/3: {})",
            fmt_ds(&same_tr),
            if same_ok { "ok" } else { "missing" },
            fmt_ds(&diff_min),
            fmt_ds(&diff_tr),
            if diff_ok { "ok" } else { "missing" },
            fmt_ds(&w_min),
            fmt_ds(&w_tr),
            if w_ok { "found" } else { "none, the curve keeps falling through it" }
        ),
    );
}

#[test]
fn criterion_5_lower_bound() {
    let mut violations = vec![];
    let mut checked = 0;
    for s in Series::all().iter().filter(|s| s.model == Model::FaceToFace) {
        for r in &sweeps()[&key(s)] {
            if r.d == 0.0 {
                continue; // the bound is stated for d > 0
            }
            checked += 1;
            let lb = f2f_lower_bound(r.d).unwrap().value;
            if r.worst_time + 1.0 < lb {
                violations.push(format!("{s} at d = {:.2}: {:.4} < {lb:.4}", r.d, r.worst_time + 1.0));
            }
        }
    }
    let exact = f2f_lower_bound(1.0).unwrap().value == 3.0
        && f2f_lower_bound(1.8).unwrap().value == 1.0 + 3f64.sqrt()
        && f2f_lower_bound(2.5).unwrap().value == 1.0 + 2.5f64.sin();
    report(
        5,
        violations.is_empty() && exact && checked > 0,
        &format!("{checked} cells, {} below the bound {violations:?}; bound values exact: {exact}", violations.len()),
    );
}

#[test]
fn criterion_6_oracle() {
    let reports = verify_batch(1000, SEED);
    let mut ok = true;
    let mut parts = vec![];
    let mut discrepancies = 0;
    for r in &reports {
        ok &= r.passed() && r.max_deviation < ORACLE_TOL && r.samples == 1000;
        discrepancies += r.discrepancies;
        parts.push(format!("{} {:.1e}/{}", r.evaluator, r.max_deviation, r.failures.len()));
        for f in r.failures.iter().take(2) {
            eprintln!("{f}");
        }
    }
    report(
        6,
        ok && discrepancies > 0,
        &format!(
            "max deviation/failures per evaluator: {}; {discrepancies} printed-formula discrepancies reported",
            parts.join(", ")
        ),
    );
}

#[test]
fn criterion_7_solver() {
    let _ = sweeps();
    let st = solver_stats();
    report(
        7,
        st.calls > 0 && st.bracket_failures == 0 && st.max_residual < 1e-6,
        &format!("{} solves, {} bracket failures, max residual {:.2e}", st.calls, st.bracket_failures, st.max_residual),
    );
}

#[test]
fn criterion_8_determinism() {
    let mut diffs = vec![];
    for s in Series::all() {
        let one = to_csv(&run_sweep(&config(1), s).unwrap());
        let many = to_csv(&sweeps()[&key(&s)]);
        if one != many {
            diffs.push(s.to_string());
        }
    }
    report(8, diffs.is_empty(), &format!("jobs 1 vs jobs 8 over {} series, differing: {diffs:?}", Series::all().len()));
}
