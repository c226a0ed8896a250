//! Who reaches an exit first, and how far it travelled.

use crate::geometry::{arc_between, ArcPos, Direction, ANGLE_TOL};
use crate::scenario::{Robot, Scenario};

/// Search heading of each robot.
pub fn heading(robot: Robot) -> Direction {
    match robot {
        Robot::R1 => Direction::Ccw,
        Robot::R2 => Direction::Cw,
    }
}

/// Search time of `robot` to its first exit, and that exit.
pub fn first_exit(s: &Scenario, robot: Robot) -> (f64, ArcPos) {
    let start = s.start(robot);
    let dir = heading(robot);
    s.exits()
        .into_iter()
        .map(|e| (arc_between(start, e, dir), e))
        .fold((f64::INFINITY, s.e1()), |best, cur| if cur.0 < best.0 { cur } else { best })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Discovery {
    pub finder: Robot,
    /// Arc searched by the finder.
    pub x: f64,
    pub exit: ArcPos,
    /// Search time the other robot needs to reach its own first exit.
    pub other_x: f64,
    pub simultaneous: bool,
}

pub fn first_discovery(s: &Scenario) -> Discovery {
    let (x1, p1) = first_exit(s, Robot::R1);
    let (x2, p2) = first_exit(s, Robot::R2);
    let simultaneous = (x1 - x2).abs() <= ANGLE_TOL;
    if x1 <= x2 || simultaneous {
        Discovery { finder: Robot::R1, x: x1, exit: p1, other_x: x2, simultaneous }
    } else {
        Discovery { finder: Robot::R2, x: x2, exit: p2, other_x: x1, simultaneous }
    }
}

/// The scenario seen by the first finder: if `R2` finds first, the mirror
/// image, in which the finder is `R1`.
pub fn canonical(s: &Scenario) -> (Scenario, Discovery) {
    let disc = first_discovery(s);
    match disc.finder {
        Robot::R1 => (*s, disc),
        Robot::R2 => {
            let m = s.mirrored();
            let mut disc = first_discovery(&m);
            // keep the tie-breaking of the original orientation
            disc.finder = Robot::R2;
            (m, disc)
        }
    }
}

/// The exit that is not `found`; `found` itself when the exits coincide.
pub fn other_exit(s: &Scenario, found: ArcPos) -> ArcPos {
    if s.e1().same_as(found) {
        s.e2()
    } else {
        s.e1()
    }
}
