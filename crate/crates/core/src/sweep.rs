//! Worst-case curves over `d`, their minima, crossings and case changes.

use std::f64::consts::PI;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::EvacError;
use crate::f2f::{worst_f2f, F2fVariant};
use crate::geometry::ArcPos;
use crate::scenario::{CaseTag, Model, ZetaPolicy};
use crate::wireless::worst_wireless;
use crate::worst::Worst;

pub const CSV_HEADER: &str = "d,zeta_policy,model,labeled,worst_time,argmax_e1,case";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepConfig {
    pub d_step: f64,
    pub exit_step: f64,
    /// First grid value, `0` or one step.
    pub d_start: f64,
    pub include_center_leg: bool,
    /// Worker threads; 0 lets rayon decide.
    pub workers: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { d_step: 0.01, exit_step: 0.001, d_start: 0.0, include_center_leg: false, workers: 0 }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), EvacError> {
        for (name, v) in [("d step", self.d_step), ("exit step", self.exit_step)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(EvacError::Config(format!("{name} {v} must be positive")));
            }
        }
        if !(0.0..=PI).contains(&self.d_start) {
            return Err(EvacError::Config(format!("d start {} outside [0, π]", self.d_start)));
        }
        Ok(())
    }

    /// `d_start + k·d_step` up to `π`, with `π` itself appended.
    pub fn d_grid(&self) -> Result<Vec<f64>, EvacError> {
        self.validate()?;
        let mut grid: Vec<f64> = (0..)
            .map(|k| self.d_start + k as f64 * self.d_step)
            .take_while(|d| *d <= PI + 1e-12)
            .map(|d| d.min(PI))
            .collect();
        if grid.last().is_none_or(|last| PI - last > 1e-9) {
            grid.push(PI);
        }
        Ok(grid)
    }
}

/// One worst-case curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Series {
    pub model: Model,
    pub labeled: bool,
    pub zeta: ZetaPolicy,
}

impl Series {
    pub const fn new(model: Model, labeled: bool, zeta: ZetaPolicy) -> Self {
        Series { model, labeled, zeta }
    }

    /// The six wireless curves and the four face-to-face ones.
    pub fn all() -> Vec<Series> {
        let mut out = vec![];
        for labeled in [false, true] {
            for z in [ZetaPolicy::Zero, ZetaPolicy::Half, ZetaPolicy::Full] {
                out.push(Series::new(Model::Wireless, labeled, z));
            }
        }
        for labeled in [false, true] {
            for z in [ZetaPolicy::Zero, ZetaPolicy::Full] {
                out.push(Series::new(Model::FaceToFace, labeled, z));
            }
        }
        out
    }

    pub fn worst(&self, d: f64, exit_step: f64) -> Result<Worst, EvacError> {
        match (self.model, self.labeled, self.zeta) {
            (Model::Wireless, labeled, z) => worst_wireless(d, z, labeled, exit_step),
            (Model::FaceToFace, true, z) => worst_f2f(d, F2fVariant::Labeled(z), exit_step),
            (Model::FaceToFace, false, ZetaPolicy::Zero) => worst_f2f(d, F2fVariant::Same, exit_step),
            (Model::FaceToFace, false, ZetaPolicy::Full) => worst_f2f(d, F2fVariant::Diff, exit_step),
            (Model::FaceToFace, false, z) => Err(EvacError::Config(format!(
                "unlabeled face-to-face is defined for zeta = 0 and zeta = d only, not {z}"
            ))),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lab = if self.labeled { "labeled" } else { "unlabeled" };
        write!(f, "{} {lab} zeta={}", self.model, self.zeta)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRecord {
    pub d: f64,
    pub zeta_policy: ZetaPolicy,
    pub model: Model,
    pub labeled: bool,
    pub worst_time: f64,
    pub argmax_e1: ArcPos,
    pub case_tag: CaseTag,
}

impl SweepRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{:.6},{},{},{},{:.6},{:.6},{}",
            self.d,
            self.zeta_policy,
            self.model,
            self.labeled,
            self.worst_time,
            self.argmax_e1.theta(),
            self.case_tag
        )
    }
}

pub fn run_sweep(cfg: &SweepConfig, series: Series) -> Result<Vec<SweepRecord>, EvacError> {
    let grid = cfg.d_grid()?;
    let leg = if cfg.include_center_leg { 1.0 } else { 0.0 };
    let cell = |d: f64| -> Result<SweepRecord, EvacError> {
        let w = series.worst(d, cfg.exit_step)?;
        Ok(SweepRecord {
            d,
            zeta_policy: series.zeta,
            model: series.model,
            labeled: series.labeled,
            worst_time: w.time + leg,
            argmax_e1: w.argmax_e1,
            case_tag: w.case_tag,
        })
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| EvacError::Config(format!("thread pool: {e}")))?;
    // indexed collect keeps grid order whatever the scheduling
    pool.install(|| grid.par_iter().map(|&d| cell(d)).collect())
}

pub fn to_csv(records: &[SweepRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(out, "{}", r.csv_row());
    }
    out
}

/// Grid minimum of the worst case; the smallest `d` wins ties.
pub fn min_over_d(records: &[SweepRecord]) -> Result<(f64, f64), EvacError> {
    let best = records
        .iter()
        .fold(None::<&SweepRecord>, |b, r| match b {
            Some(b) if b.worst_time <= r.worst_time => Some(b),
            _ => Some(r),
        })
        .ok_or(EvacError::EmptyInput)?;
    Ok((best.d, best.worst_time))
}

/// Maximal runs of grid points where `a` is strictly worse than `b`, as
/// `(first d, last d)`.
pub fn crossing_intervals(a: &[SweepRecord], b: &[SweepRecord]) -> Result<Vec<(f64, f64)>, EvacError> {
    if a.len() != b.len() || a.iter().zip(b).any(|(p, q)| (p.d - q.d).abs() > 1e-9) {
        return Err(EvacError::GridMismatch(format!("{} vs {} records", a.len(), b.len())));
    }
    let mut out = vec![];
    let mut open: Option<(f64, f64)> = None;
    for (p, q) in a.iter().zip(b) {
        if p.worst_time > q.worst_time + 1e-12 {
            open = Some(open.map_or((p.d, p.d), |(s, _)| (s, p.d)));
        } else if let Some(iv) = open.take() {
            out.push(iv);
        }
    }
    out.extend(open);
    Ok(out)
}

/// Grid values of `d` at which the worst-case case tag changes.
pub fn transition_points(records: &[SweepRecord]) -> Vec<f64> {
    records.windows(2).filter(|w| w[0].case_tag != w[1].case_tag).map(|w| w[1].d).collect()
}

/// Grid values of `d` that are strict local minima of the curve.
pub fn local_minima(records: &[SweepRecord]) -> Vec<f64> {
    records
        .windows(3)
        .filter(|w| w[1].worst_time < w[0].worst_time && w[1].worst_time <= w[2].worst_time)
        .map(|w| w[1].d)
        .collect()
}

impl FromStr for Series {
    type Err = EvacError;

    /// `wireless:0`, `f2f:d`, `wireless-labeled:d/2`, ...
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (m, z) = s
            .split_once(':')
            .ok_or_else(|| EvacError::Config(format!("series `{s}` should look like model:zeta")))?;
        let (model, labeled) = match m {
            "wireless" => (Model::Wireless, false),
            "wireless-labeled" => (Model::Wireless, true),
            "f2f" => (Model::FaceToFace, false),
            "f2f-labeled" => (Model::FaceToFace, true),
            other => return Err(EvacError::Config(format!("unknown series model `{other}`"))),
        };
        Ok(Series::new(model, labeled, z.parse()?))
    }
}
