//! Per-robot decisions under face-to-face communication.
//!
//! Every rule is written from the point of view of the robot that has just
//! reached an exit, in its own frame: it started at `ζ/2` and searched
//! counterclockwise, its partner started at `−ζ/2` and searches clockwise.
//! A robot that searched clockwise sees the mirror image of this picture.
//!
//! The rules only pick waypoints. Elapsed times come from the caller, which
//! is either a closed-form evaluator or the kinematic replay.

use std::f64::consts::TAU;

use crate::error::EvacError;
use crate::geometry::{chord, normalize, ArcPos, Direction, Point, ANGLE_TOL};
use crate::meeting::{bisect_decreasing, solve_meeting, MeetQuery};
use crate::scenario::CaseTag;

/// Slack used in the case predicates so that grid placements sitting on a
/// boundary (such as `x = d/2`) resolve the same way in every caller.
pub const PRED_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Decision {
    /// Leave through the exit just found.
    Exit,
    /// Cut across the disk and catch the partner on its search path.
    Chase { target: Point, arrival: f64 },
    /// Cut across the disk to a point where the partner is expected to be on
    /// its own chord. If nobody is there, fall back to `on_miss`.
    Intercept { target: Point, arrival: f64, on_miss: MissPlan },
}

/// What an intercepting robot concludes when the partner is not at the
/// rendezvous: `certain` is then the other exit, and the partner is still
/// searching unless it has reached an exit by `deadline`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MissPlan {
    pub certain: ArcPos,
    pub deadline: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ruling {
    pub decision: Decision,
    pub tag: CaseTag,
}

impl Ruling {
    fn exit(tag: CaseTag) -> Self {
        Ruling { decision: Decision::Exit, tag }
    }

    fn chase(target: Point, arrival: f64, tag: CaseTag) -> Self {
        Ruling { decision: Decision::Chase { target, arrival }, tag }
    }
}

/// The robot's own search path: arc `a` from its start.
fn own(zeta: f64, a: f64) -> ArcPos {
    ArcPos::new(zeta / 2.0 + a)
}

/// The partner's position after searching for time `t`.
fn partner(zeta: f64, t: f64) -> ArcPos {
    ArcPos::new(-zeta / 2.0 - t)
}

/// Partner arc at which a chase launched from the exit at `x` ends, or
/// `None` when the partner can no longer be caught on the circle.
pub fn catch_arc(x: f64, offset: f64) -> Result<Option<f64>, EvacError> {
    if 2.0 * x + offset > TAU {
        return Ok(None);
    }
    solve_meeting(MeetQuery::new(x, offset)).map(Some)
}

/// A robot leaves `a` at time `ta` towards `b`; another leaves `other` at
/// `t_other` straight towards the first one's path. Returns the point where
/// both can arrive together, and the arrival time, if it exists on `a → b`.
pub fn rendezvous_on_segment(
    a: Point,
    ta: f64,
    b: Point,
    other: Point,
    t_other: f64,
) -> Option<(Point, f64)> {
    let len = a.dist(b);
    // nondecreasing in s since the distance to `other` changes at rate ≤ 1
    let g = |s: f64| ta + s - t_other - other.dist(a.toward(b, s));
    if g(0.0) > 1e-12 || g(len) < -1e-12 {
        return None;
    }
    let (s, _) = bisect_decreasing(|s| -g(s), 0.0, len).ok()?;
    Some((a.toward(b, s), ta + s))
}

/// Earliest arc `p` at which a robot leaving `from` at time `t0` can stand
/// where a searcher (start `start`, heading `dir`) will be at time `p`.
pub fn catch_on_circle(from: Point, t0: f64, start: ArcPos, dir: Direction) -> Result<(f64, Point), EvacError> {
    let at = |p: f64| start.offset(p, dir).point();
    let (p, _) = bisect_decreasing(|p| t0 + from.dist(at(p)) - p, t0, t0 + 2.0)?;
    Ok((p, at(p)))
}

/// Same starting point (`ζ = 0`).
pub fn f0_rule(x: f64, d: f64) -> Result<Ruling, EvacError> {
    if x <= ANGLE_TOL {
        return Ok(Ruling::exit(CaseTag::F0_1));
    }
    // partner's search time to the counterclockwise candidate
    let a2 = TAU - x - d;
    if x >= d - PRED_TOL {
        return f0_known_side(x, d, a2);
    }
    if x <= d / 2.0 + PRED_TOL {
        let y = solve_meeting(MeetQuery::new(x, 0.0))?;
        let target = partner(0.0, y).point();
        if x + y <= d {
            return Ok(Ruling::chase(target, y, CaseTag::F0_1));
        }
        if y <= a2 {
            return Ok(Ruling::chase(target, y, CaseTag::F0_2a));
        }
        return Ok(Ruling::exit(CaseTag::F0_2b));
    }

    // d/2 < x < d: had the partner found the clockwise candidate, it did so
    // at xo and then ran the rule above.
    let xo = d - x;
    let yo = solve_meeting(MeetQuery::new(xo, 0.0))?;
    if xo + yo <= d {
        // it would have caught us before we got here
        return f0_known_side(x, d, a2);
    }
    if yo <= TAU - xo - d {
        let e1p = own(0.0, x - d).point();
        let m_prime = own(0.0, yo).point();
        let me = own(0.0, x).point();
        let (target, arrival) = rendezvous_on_segment(e1p, xo, m_prime, me, x).ok_or_else(|| {
            EvacError::Numeric(format!("no rendezvous on the partner chord for x = {x}, d = {d}"))
        })?;
        let on_miss = MissPlan { certain: own(0.0, x + d), deadline: a2 };
        return Ok(Ruling { decision: Decision::Intercept { target, arrival, on_miss }, tag: CaseTag::F0_3a });
    }
    Ok(Ruling::exit(CaseTag::F0_3b))
}

/// The clockwise candidate is ruled out; the other exit is `x + d`.
fn f0_known_side(x: f64, d: f64, a2: f64) -> Result<Ruling, EvacError> {
    if 2.0 * x + d >= TAU - PRED_TOL {
        return Ok(Ruling::exit(CaseTag::F0_4c));
    }
    match catch_arc(x, 0.0)? {
        Some(y) if y < a2 => Ok(Ruling::chase(partner(0.0, y).point(), y, CaseTag::F0_4a)),
        _ => Ok(Ruling::exit(CaseTag::F0_4b)),
    }
}

/// Starting points `d` apart (`ζ = d`).
pub fn fd_rule(x: f64, d: f64) -> Result<Ruling, EvacError> {
    // the partner already swept past this exit
    if 2.0 * x + d >= TAU - PRED_TOL {
        return Ok(Ruling::exit(CaseTag::Fd2b));
    }
    let me = own(d, x).point();
    let e1p = own(d, x - d);
    let e2p = own(d, x + d);
    // partner search time to the counterclockwise candidate and to our exit
    let c2 = normalize(TAU - 2.0 * d - x);
    let t_x = TAU - d - x;

    if x < d - PRED_TOL {
        if c2 < x && x - c2 > chord(d) + PRED_TOL {
            // had the counterclockwise candidate been an exit, the partner
            // would have found it first and caught us on the way here
            return match catch_arc(x, d)? {
                Some(y) if y < t_x => Ok(Ruling::chase(partner(d, y).point(), y, CaseTag::Fd2c)),
                _ => Ok(Ruling::exit(CaseTag::Fd2b)),
            };
        }
        let y = solve_meeting(MeetQuery::new(x, d))?;
        if c2 > y {
            return Ok(Ruling::chase(partner(d, y).point(), y, CaseTag::Fd1a));
        }
        let on_miss = MissPlan { certain: e1p, deadline: t_x };
        return Ok(intercept_towards(me, x, e2p, c2, on_miss, CaseTag::Fd1b));
    }

    if c2 < d {
        let on_miss = MissPlan { certain: e2p, deadline: 0.0 };
        return Ok(intercept_towards(me, x, e2p, c2, on_miss, CaseTag::Fd2a));
    }
    match catch_arc(x, d)? {
        Some(y) if y < c2.min(t_x) => Ok(Ruling::chase(partner(d, y).point(), y, CaseTag::Fd2c)),
        _ => Ok(Ruling::exit(CaseTag::Fd2b)),
    }
}

/// Head along the chord to candidate `cand`, which the partner reaches at
/// `t_cand`, and meet it on the way.
fn intercept_towards(me: Point, x: f64, cand: ArcPos, t_cand: f64, on_miss: MissPlan, tag: CaseTag) -> Ruling {
    match rendezvous_on_segment(me, x, cand.point(), cand.point(), t_cand) {
        Some((target, arrival)) => Ruling { decision: Decision::Intercept { target, arrival, on_miss }, tag },
        None => Ruling::exit(CaseTag::Fd2b),
    }
}

/// Labeled exits, any `ζ ≤ d`. `other_behind` says the other exit lies
/// clockwise of the one found, at `x − d`.
pub fn fl_rule(x: f64, d: f64, zeta: f64, other_behind: bool) -> Result<Ruling, EvacError> {
    let (chase_tag, exit_tag) = if other_behind {
        (CaseTag::Fl1, CaseTag::Fl2)
    } else {
        (CaseTag::Fl3, CaseTag::Fl4)
    };
    let me = own(zeta, x);
    let other = if other_behind { own(zeta, x - d) } else { own(zeta, x + d) };
    let pstart = partner(zeta, 0.0);
    let reach = |e: ArcPos| crate::geometry::arc_between(pstart, e, Direction::Cw);
    // first time the partner stands on an exit
    let t_enc = reach(me).min(reach(other));
    if t_enc <= x + PRED_TOL {
        return Ok(Ruling::exit(exit_tag));
    }
    match catch_arc(x, zeta)? {
        Some(y) if y <= t_enc => Ok(Ruling::chase(partner(zeta, y).point(), y, chase_tag)),
        _ => Ok(Ruling::exit(exit_tag)),
    }
}
