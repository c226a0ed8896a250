//! Perimeter coordinates and the arc/chord arithmetic shared by every policy.
//!
//! The disk is the unit disk centred at the origin. A perimeter point is an
//! [`ArcPos`]: an angle measured counterclockwise from `A = (1, 0)`. Robot
//! `R1` always searches counterclockwise and `R2` clockwise.

use std::f64::consts::{PI, TAU};
use std::fmt;

use crate::error::EvacError;

/// Two perimeter angles closer than this are the same point.
pub const ANGLE_TOL: f64 = 1e-9;
/// Route lengths closer than this count as equal; the earlier option wins.
pub const TIE_TOL: f64 = 1e-9;

/// A point on the unit circle, as an angle in `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct ArcPos(f64);

impl ArcPos {
    /// Wraps any finite angle into `[0, 2π)`.
    pub fn new(theta: f64) -> Self {
        ArcPos(normalize(theta))
    }

    pub fn theta(self) -> f64 {
        self.0
    }

    /// Moves `arc` radians in `direction`.
    pub fn offset(self, arc: f64, direction: Direction) -> Self {
        ArcPos::new(self.0 + direction.sign() * arc)
    }

    /// Reflection across the x-axis (`θ ↦ −θ`).
    pub fn mirrored(self) -> Self {
        ArcPos::new(-self.0)
    }

    pub fn point(self) -> Point {
        cartesian(self)
    }

    /// Identity up to [`ANGLE_TOL`], respecting wraparound.
    pub fn same_as(self, other: ArcPos) -> bool {
        angular_gap(self, other) <= ANGLE_TOL
    }
}

impl fmt::Display for ArcPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6}", self.0)
    }
}

/// Wraps an angle into `[0, 2π)`; values within [`ANGLE_TOL`] of `2π` snap to 0.
pub fn normalize(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(TAU);
    if TAU - t <= ANGLE_TOL {
        t = 0.0;
    }
    t
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Counterclockwise, increasing θ.
    Ccw,
    /// Clockwise, decreasing θ.
    Cw,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::Ccw => 1.0,
            Direction::Cw => -1.0,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Direction::Ccw => Direction::Cw,
            Direction::Cw => Direction::Ccw,
        }
    }
}

/// A point of the closed disk in Cartesian coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// `self + s·(to − self)`.
    pub fn lerp(self, to: Point, s: f64) -> Point {
        Point::new(self.x + s * (to.x - self.x), self.y + s * (to.y - self.y))
    }

    /// Moves `len` along the unit direction from `self` towards `to`.
    pub fn toward(self, to: Point, len: f64) -> Point {
        let total = self.dist(to);
        if total == 0.0 {
            return self;
        }
        self.lerp(to, len / total)
    }

    pub fn mirrored(self) -> Point {
        Point::new(self.x, -self.y)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// Length of the chord subtending `arc`: `2·sin(arc/2)`.
pub fn chord_length(arc: f64) -> Result<f64, EvacError> {
    if !(0.0..=TAU).contains(&arc) || arc.is_nan() {
        return Err(EvacError::Domain(format!("chord arc {arc} outside [0, 2π]")));
    }
    Ok(chord(arc))
}

/// Unchecked chord of an arc; `2·|sin(arc/2)|` so any real arc is accepted.
#[inline]
pub fn chord(arc: f64) -> f64 {
    2.0 * (arc / 2.0).sin().abs()
}

/// Travel length from `a` to `b` going in `direction`, in `[0, 2π)`.
pub fn arc_between(a: ArcPos, b: ArcPos, direction: Direction) -> f64 {
    let raw = match direction {
        Direction::Ccw => b.0 - a.0,
        Direction::Cw => a.0 - b.0,
    };
    normalize(raw)
}

/// Length of the shorter arc joining `a` and `b`, in `[0, π]`.
pub fn angular_gap(a: ArcPos, b: ArcPos) -> f64 {
    let ccw = (b.0 - a.0).rem_euclid(TAU);
    ccw.min(TAU - ccw)
}

pub fn cartesian(p: ArcPos) -> Point {
    Point::new(p.0.cos(), p.0.sin())
}

/// The two points at arc distance `d` on either side of a discovered exit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CandidateExits {
    /// Clockwise side of the discovery point.
    pub e1_prime: ArcPos,
    /// Counterclockwise side.
    pub e2_prime: ArcPos,
    /// The two candidates are the antipode of the discovery point (`d = π`).
    pub coincident: bool,
}

pub fn candidate_exits(x_pos: ArcPos, d: f64) -> CandidateExits {
    let e1_prime = x_pos.offset(d, Direction::Cw);
    let e2_prime = x_pos.offset(d, Direction::Ccw);
    CandidateExits {
        e1_prime,
        e2_prime,
        coincident: (d - PI).abs() <= ANGLE_TOL || e1_prime.same_as(e2_prime),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn chord_examples() {
        assert_eq!(chord_length(0.0).unwrap(), 0.0);
        assert!((chord_length(PI).unwrap() - 2.0).abs() < 1e-15);
        // regular hexagon side
        assert!((chord_length(PI / 3.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(chord_length(-0.1).is_err());
        assert!(chord_length(TAU + 0.1).is_err());
        assert!(chord_length(f64::NAN).is_err());
    }

    #[test]
    fn arc_between_examples() {
        let a = ArcPos::new(0.0);
        let b = ArcPos::new(PI / 2.0);
        assert!((arc_between(a, b, Direction::Ccw) - PI / 2.0).abs() < 1e-15);
        assert!((arc_between(b, a, Direction::Cw) - PI / 2.0).abs() < 1e-15);
        let got = arc_between(ArcPos::new(0.1), ArcPos::new(6.2), Direction::Ccw);
        assert!((got - 6.1).abs() < 1e-12);
        assert_eq!(arc_between(b, b, Direction::Cw), 0.0);
    }

    #[test]
    fn cartesian_examples() {
        let p = cartesian(ArcPos::new(0.0));
        assert_eq!((p.x, p.y), (1.0, 0.0));
        let q = cartesian(ArcPos::new(PI / 2.0));
        assert!(q.x.abs() < 1e-15 && (q.y - 1.0).abs() < 1e-15);
        let far = cartesian(ArcPos::new(PI));
        assert!((p.dist(far) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn candidate_examples() {
        let c = candidate_exits(ArcPos::new(1.0), 0.5);
        assert!((c.e2_prime.theta() - 1.5).abs() < 1e-15);
        assert!((c.e1_prime.theta() - 0.5).abs() < 1e-15);
        assert!(!c.coincident);

        let c = candidate_exits(ArcPos::new(0.0), PI);
        assert!(c.coincident);
        assert!((c.e1_prime.theta() - PI).abs() < 1e-12);
        assert!((c.e2_prime.theta() - PI).abs() < 1e-12);

        let c = candidate_exits(ArcPos::new(6.0), 1.0);
        assert!((c.e2_prime.theta() - (7.0 - TAU)).abs() < 1e-12);
        assert!((c.e2_prime.theta() - 0.7168).abs() < 1e-4);
        assert!((c.e1_prime.theta() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn normalization_snaps_near_full_turn() {
        assert_eq!(normalize(TAU - 1e-12), 0.0);
        assert_eq!(normalize(-TAU), 0.0);
        assert!((normalize(-0.5) - (TAU - 0.5)).abs() < 1e-15);
    }

    #[test]
    fn chord_never_exceeds_arc_on_dense_grid() {
        for i in 0..=10_000 {
            let t = TAU * i as f64 / 10_000.0;
            assert!(chord_length(t).unwrap() <= t + 1e-15, "t = {t}");
        }
    }

    #[test]
    fn chord_of_double_arc_identity() {
        // chord between candidates 2d apart, written as 2·sin(π − d)
        for i in 0..=1000 {
            let d = PI * i as f64 / 1000.0;
            assert!((2.0 * (PI - d).sin() - 2.0 * d.sin()).abs() < 1e-12);
            assert!((chord(2.0 * d) - 2.0 * d.sin()).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn arc_between_antisymmetry(a in 0.0..TAU, b in 0.0..TAU) {
            let (pa, pb) = (ArcPos::new(a), ArcPos::new(b));
            let cw = arc_between(pa, pb, Direction::Cw);
            let ccw = arc_between(pb, pa, Direction::Ccw);
            prop_assert!((cw - ccw).abs() < 1e-12);
            let sum = arc_between(pa, pb, Direction::Cw) + arc_between(pa, pb, Direction::Ccw);
            if pa.same_as(pb) {
                prop_assert!(sum < 1e-8);
            } else {
                prop_assert!((sum - TAU).abs() < 1e-9);
            }
        }

        #[test]
        fn normalization_is_total(theta in -100.0f64..100.0) {
            let p = ArcPos::new(theta);
            prop_assert!(p.theta() >= 0.0 && p.theta() < TAU);
        }

        #[test]
        fn candidates_round_trip(x in 0.0..TAU, d in 0.0..PI) {
            let xp = ArcPos::new(x);
            let c = candidate_exits(xp, d);
            let back_cw = arc_between(c.e2_prime, xp, Direction::Cw);
            let back_ccw = arc_between(c.e1_prime, xp, Direction::Ccw);
            // d = 0 lands on x itself, where the arc can wrap to ~0 or ~2π
            let wrap = |v: f64| if v > PI { TAU - v } else { v };
            prop_assert!((wrap(back_cw) - d).abs() < 1e-12);
            prop_assert!((wrap(back_ccw) - d).abs() < 1e-12);
        }
    }
}
