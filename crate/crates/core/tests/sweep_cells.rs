//! Sweep records recomputed one cell at a time.

use std::f64::consts::TAU;

use disk_evac::sweep::{run_sweep, Series, SweepConfig};
use disk_evac::{eval_f2f, eval_wireless, Model, Scenario};

#[test]
fn records_are_grid_maxima() {
    let cfg = SweepConfig { d_step: 0.1, exit_step: 0.01, ..SweepConfig::default() };
    for series in Series::all() {
        let recs = run_sweep(&cfg, series).unwrap();
        // every seventh cell, evaluated directly
        for r in recs.iter().step_by(7) {
            let zeta = series.zeta.resolve(r.d);
            let mut best = f64::NEG_INFINITY;
            let mut k = 0;
            while (k as f64) * cfg.exit_step < TAU {
                let e1 = k as f64 * cfg.exit_step;
                let s = Scenario::new(series.model, series.labeled, r.d, zeta, e1).unwrap();
                let t = match series.model {
                    Model::Wireless => eval_wireless(&s),
                    Model::FaceToFace => eval_f2f(&s),
                }
                .unwrap()
                .time_from_perimeter;
                best = best.max(t);
                k += 1;
            }
            assert_eq!(r.worst_time, best, "{series} at d = {}", r.d);
            assert!(r.worst_time >= 0.0);
        }
    }
}

#[test]
fn center_leg_shifts_everything() {
    let cfg = SweepConfig { d_step: 0.5, exit_step: 0.05, ..SweepConfig::default() };
    let with = SweepConfig { include_center_leg: true, ..cfg };
    let s: Series = "wireless:d/2".parse().unwrap();
    let (a, b) = (run_sweep(&cfg, s).unwrap(), run_sweep(&with, s).unwrap());
    for (p, q) in a.iter().zip(&b) {
        assert_eq!(q.worst_time, p.worst_time + 1.0);
        assert_eq!(p.case_tag, q.case_tag);
    }
}
