//! Catch-up equations.
//!
//! A robot that found an exit after travelling `x` chases its partner, who
//! keeps searching in the opposite direction. The chase ends on the circle at
//! partner arc `y`, the root of
//!
//! ```text
//! f(y) = x + 2·sin((x + y + offset)/2) − y
//! ```
//!
//! where `offset` is the initial separation of the two starting points. The
//! derivative `cos(·) − 1` is never positive, so the root in `[x, x + 2]` is
//! unique and bisection finds it.

use std::f64::consts::TAU;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::EvacError;

pub const DEFAULT_TOL: f64 = 1e-6;
pub const MAX_ITER: usize = 200;

/// Bracket width at which bisection stops refining.
const BRACKET_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeetQuery {
    pub x: f64,
    pub offset: f64,
    pub tol: f64,
}

impl MeetQuery {
    pub fn new(x: f64, offset: f64) -> Self {
        MeetQuery { x, offset, tol: DEFAULT_TOL }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn residual(&self, y: f64) -> f64 {
        self.x + 2.0 * ((self.x + y + self.offset) / 2.0).sin() - y
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeetSolution {
    pub y: f64,
    pub residual: f64,
    pub iterations: usize,
}

static CALLS: AtomicU64 = AtomicU64::new(0);
static BRACKET_FAILURES: AtomicU64 = AtomicU64::new(0);
// bit pattern of a nonnegative f64; those order like the integers
static MAX_RESIDUAL: AtomicU64 = AtomicU64::new(0);

/// Process-wide counters over every solve since start (or the last reset).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverStats {
    pub calls: u64,
    pub bracket_failures: u64,
    pub max_residual: f64,
}

pub fn solver_stats() -> SolverStats {
    SolverStats {
        calls: CALLS.load(Ordering::Relaxed),
        bracket_failures: BRACKET_FAILURES.load(Ordering::Relaxed),
        max_residual: f64::from_bits(MAX_RESIDUAL.load(Ordering::Relaxed)),
    }
}

pub fn reset_solver_stats() {
    CALLS.store(0, Ordering::Relaxed);
    BRACKET_FAILURES.store(0, Ordering::Relaxed);
    MAX_RESIDUAL.store(0, Ordering::Relaxed);
}

/// Returns the partner arc `y` at which the chase ends.
pub fn solve_meeting(q: MeetQuery) -> Result<f64, EvacError> {
    solve_meeting_detailed(q).map(|s| s.y)
}

pub fn solve_meeting_detailed(q: MeetQuery) -> Result<MeetSolution, EvacError> {
    let MeetQuery { x, offset, tol } = q;
    if !(x >= 0.0 && x.is_finite()) {
        return Err(EvacError::Domain(format!("meeting query x = {x} must be a finite value >= 0")));
    }
    if !(0.0..=std::f64::consts::PI + 1e-12).contains(&offset) {
        return Err(EvacError::Domain(format!("meeting offset {offset} outside [0, π]")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(EvacError::Domain(format!("tolerance {tol} must be positive")));
    }
    if 2.0 * x + offset > TAU + 1e-9 {
        return Err(EvacError::Regime(format!(
            "2x + offset = {} exceeds 2π; the bracket [x, x + 2] no longer straddles the root",
            2.0 * x + offset
        )));
    }
    let f = |y: f64| q.residual(y);
    CALLS.fetch_add(1, Ordering::Relaxed);
    let (y, iterations) = bisect_decreasing(f, x, x + 2.0).inspect_err(|_| {
        BRACKET_FAILURES.fetch_add(1, Ordering::Relaxed);
    })?;
    let residual = f(y);
    MAX_RESIDUAL.fetch_max(residual.abs().to_bits(), Ordering::Relaxed);
    if residual.abs() >= tol {
        return Err(EvacError::Numeric(format!(
            "residual {residual:e} at y = {y} not below tolerance {tol:e}"
        )));
    }
    Ok(MeetSolution { y, residual, iterations })
}

/// Root of a nonincreasing `f` on `[lo, hi]` with `f(lo) ≥ 0 ≥ f(hi)`.
///
/// Endpoint values within `1e-12` of the wrong sign are accepted; rounding in
/// the sine term produces those at tangential brackets such as `x = 0`.
pub fn bisect_decreasing<F>(f: F, mut lo: f64, mut hi: f64) -> Result<(f64, usize), EvacError>
where
    F: Fn(f64) -> f64,
{
    let (flo, fhi) = (f(lo), f(hi));
    if flo < -1e-12 || fhi > 1e-12 {
        return Err(EvacError::Regime(format!(
            "bracket [{lo}, {hi}] does not straddle a root: f(lo) = {flo:e}, f(hi) = {fhi:e}"
        )));
    }
    if flo <= 0.0 {
        return Ok((lo, 0));
    }
    if fhi >= 0.0 {
        return Ok((hi, 0));
    }
    for i in 1..=MAX_ITER {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok((mid, i));
        }
        if fm > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= BRACKET_EPS {
            return Ok((0.5 * (lo + hi), i));
        }
    }
    Err(EvacError::Numeric(format!("bisection did not converge in {MAX_ITER} iterations")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    // Plain fixed-point iteration; the map is a contraction away from
    // cos(·) = 1, which the sampled queries avoid.
    fn fixed_point(x: f64, offset: f64) -> f64 {
        // averaged so that the slope (1 + cos)/2 stays in [0, 1]
        let mut y = x + 1.0;
        for _ in 0..1_000_000 {
            let next = (y + x + 2.0 * ((x + y + offset) / 2.0).sin()) / 2.0;
            if (next - y).abs() < 1e-13 {
                return next;
            }
            y = next;
        }
        y
    }

    #[test]
    fn spec_examples() {
        assert_eq!(solve_meeting(MeetQuery::new(0.0, 0.0)).unwrap(), 0.0);
        let y = solve_meeting(MeetQuery::new(1.0, 0.0)).unwrap();
        assert!((y - 2.869126421504048).abs() < 1e-9, "{y}");
        let y = solve_meeting(MeetQuery::new(0.5, 1.0)).unwrap();
        assert!((y - 2.369126421504048).abs() < 1e-9, "{y}");
    }

    #[test]
    fn rejects_bad_queries() {
        assert!(matches!(solve_meeting(MeetQuery::new(-1.0, 0.0)), Err(EvacError::Domain(_))));
        assert!(matches!(solve_meeting(MeetQuery::new(1.0, 4.0)), Err(EvacError::Domain(_))));
        assert!(matches!(solve_meeting(MeetQuery::new(3.5, 0.0)), Err(EvacError::Regime(_))));
        let q = MeetQuery::new(1.0, 0.0).with_tol(0.0);
        assert!(matches!(solve_meeting(q), Err(EvacError::Domain(_))));
    }

    #[test]
    fn monotone_in_x() {
        for offset in [0.0, 0.5, 1.0, 2.0, PI] {
            let mut prev = 0.0;
            let mut x = 0.0;
            while 2.0 * x + offset <= TAU {
                let y = solve_meeting(MeetQuery::new(x, offset)).unwrap();
                assert!(y >= prev - 1e-10, "offset {offset}, x {x}: {y} < {prev}");
                prev = y;
                x += 0.01;
            }
        }
    }

    #[test]
    fn agrees_with_fixed_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let offset = rng.gen_range(0.0..PI);
            let x = rng.gen_range(0.0..(TAU - offset) / 2.0);
            let y = solve_meeting(MeetQuery::new(x, offset)).unwrap();
            let z = fixed_point(x, offset);
            assert!((y - z).abs() < 1e-5, "x {x} offset {offset}: {y} vs {z}");
        }
    }

    #[test]
    fn bisect_reports_bad_bracket() {
        assert!(bisect_decreasing(|v| v, -1.0, 1.0).is_err());
        let (r, _) = bisect_decreasing(|v| 1.0 - v, 0.0, 3.0).unwrap();
        assert!((r - 1.0).abs() < 1e-11);
    }

    proptest! {
        #[test]
        fn residual_below_tolerance(offset in 0.0..PI, frac in 0.0..1.0f64) {
            let x = frac * (TAU - offset) / 2.0;
            let q = MeetQuery::new(x, offset);
            let s = solve_meeting_detailed(q).unwrap();
            prop_assert!(s.residual.abs() < q.tol);
            prop_assert!(s.y >= x && s.y <= x + 2.0);
        }
    }
}
