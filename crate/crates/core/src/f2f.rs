//! Face-to-face model: closed-form evaluators.
//!
//! Each evaluator works in the first finder's frame (the mirror image when
//! `R2` finds first). The finder's move comes from [`crate::rules`]; the
//! resulting time is then written out with the chord formulas of the case
//! that fired. When the finder leaves alone, the partner later runs the
//! same rules from its own exit, which is what `partner_alone_*` evaluates.

use std::f64::consts::{PI, TAU};

use crate::discovery::{canonical, first_exit, other_exit};
use crate::error::EvacError;
use crate::geometry::{chord, ArcPos, Direction, Point, ANGLE_TOL};
use crate::rules::{catch_on_circle, f0_rule, fd_rule, fl_rule, rendezvous_on_segment, Decision, Ruling};
use crate::scenario::{CaseTag, Discrepancy, EvacResult, Model, Robot, Scenario, ZetaPolicy};
use crate::worst::{worst_over_exits, Worst};

const FD2B_NOTE: &str = "printed as min(x, 2π − x − 2d); the last robot leaves at the max";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Intent {
    CatchOnCircle,
    MeetOnChord,
    GoToExit,
    ExitHere,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Waypoint {
    pub point: Point,
    pub planned_arrival: f64,
    pub intent: Intent,
}

/// The first finder's intended moves, in world coordinates, starting at the
/// exit it found.
#[derive(Clone, Debug, PartialEq)]
pub struct PursuitPlan {
    pub waypoints: Vec<Waypoint>,
}

impl PursuitPlan {
    /// Arrival times increase and each leg is walked at unit speed.
    pub fn is_consistent(&self) -> bool {
        self.waypoints.windows(2).all(|w| {
            let dt = w[1].planned_arrival - w[0].planned_arrival;
            dt > 0.0 && (w[0].point.dist(w[1].point) - dt).abs() < 1e-9
        })
    }
}

fn check(s: &Scenario, zeta: Option<f64>, labeled: bool) -> Result<(), EvacError> {
    if s.model() != Model::FaceToFace {
        return Err(EvacError::WrongEvaluator("face-to-face evaluator on a wireless scenario".into()));
    }
    if s.is_labeled() != labeled {
        return Err(EvacError::WrongEvaluator(format!(
            "scenario labeled = {}, evaluator expects {labeled}",
            s.is_labeled()
        )));
    }
    if let Some(z) = zeta {
        if (s.zeta() - z).abs() > 1e-12 {
            return Err(EvacError::WrongEvaluator(format!("evaluator needs zeta = {z}, scenario has {}", s.zeta())));
        }
    }
    Ok(())
}

fn result(disc_finder: Robot, tf: f64, to: f64, x: f64, tag: CaseTag) -> EvacResult {
    EvacResult::new(disc_finder, tf, to, x, tag)
}

/// Time at which two mirror-image robots, both leaving `X = (cos x, sin x)`
/// and its reflection at time `x` towards `target` and its reflection, meet
/// on the x-axis and walk back to their own exits.
fn mirror_meeting(x: f64, target: Point) -> Option<f64> {
    let from = ArcPos::new(x).point();
    if target.y >= 0.0 || from.y <= 0.0 {
        return None;
    }
    let s = from.y / (from.y - target.y);
    let q = from.lerp(target, s);
    Some(x + 2.0 * from.dist(q))
}

fn partner_miss_fallback(what: &str, x_o: f64) -> EvacError {
    EvacError::Numeric(format!("partner rule at {x_o} plans a {what} with nobody to meet"))
}

/// The partner, left alone, reaches an exit after `x_o` and applies the
/// `ζ = 0` rule from there; its exit time.
fn partner_alone_f0(x_o: f64, d: f64) -> Result<f64, EvacError> {
    partner_alone(f0_rule(x_o, d)?, x_o, 0.0)
}

fn partner_alone_fd(x_o: f64, d: f64) -> Result<f64, EvacError> {
    partner_alone(fd_rule(x_o, d)?, x_o, d)
}

fn partner_alone(r: Ruling, x_o: f64, zeta: f64) -> Result<f64, EvacError> {
    match r.decision {
        Decision::Exit => Ok(x_o),
        Decision::Intercept { target, arrival, on_miss } => {
            // nobody is there; the catch on the circle is also hopeless
            let pstart = ArcPos::new(-zeta / 2.0);
            let (p, _) = catch_on_circle(target, arrival, pstart, Direction::Cw)?;
            if p < on_miss.deadline {
                return Err(partner_miss_fallback("catch", x_o));
            }
            let own_exit = ArcPos::new(zeta / 2.0 + x_o).point();
            Ok(arrival + target.dist(own_exit).min(target.dist(on_miss.certain.point())))
        }
        Decision::Chase { .. } => Err(partner_miss_fallback("chase", x_o)),
    }
}

pub fn eval_f2f_same(s: &Scenario) -> Result<EvacResult, EvacError> {
    check(s, Some(0.0), false)?;
    let (c, disc) = canonical(s);
    let (x, d) = (disc.x, c.d());
    let f = disc.finder;
    let xp = ArcPos::new(x);
    let ex = xp.point();
    let e1p = ArcPos::new(x - d);
    let e2p = ArcPos::new(x + d);
    let other = other_exit(&c, disc.exit);
    let other_is_e1 = d > ANGLE_TOL && other.same_as(e1p) && !other.same_as(e2p);
    let a2 = TAU - x - d;

    if disc.simultaneous {
        if x <= ANGLE_TOL {
            return Ok(result(f, 0.0, 0.0, 0.0, CaseTag::F0_1).simultaneous());
        }
        let r = f0_rule(x, d)?;
        let t = match r.decision {
            Decision::Exit => x,
            Decision::Chase { target, .. } => {
                mirror_meeting(x, target).ok_or_else(|| EvacError::Numeric("mirror chases never cross".into()))?
            }
            Decision::Intercept { target, arrival, .. } => match mirror_meeting(x, target) {
                Some(t) => t,
                None => arrival + target.dist(ex).min(target.dist(ex.mirrored())),
            },
        };
        return Ok(result(f, t, t, x, r.tag).simultaneous());
    }

    let r = f0_rule(x, d)?;
    // partner's search time to the other exit
    let x_o = if other_is_e1 { d - x } else { a2 };
    let out = match r.tag {
        CaseTag::F0_1 => {
            let y = chase_arc(&r)?;
            let to_x = y - x;
            let to_e1 = chord((x + y - d).abs());
            let to_e2 = chord(x + y + d);
            let (first, first_is_e1) = if to_e1 <= to_e2 { (to_e1, true) } else { (to_e2, false) };
            let tour = first + 2.0 * d.sin();
            let leg = if tour < to_x {
                if first_is_e1 == other_is_e1 {
                    first
                } else {
                    tour
                }
            } else {
                to_x
            };
            (y + leg, y + leg)
        }
        CaseTag::F0_2a | CaseTag::F0_4a if other_is_e1 => {
            // the partner found E1' and cuts across to meet us on our chord
            let Decision::Chase { target, .. } = r.decision else { unreachable!() };
            let (n, t_n) = rendezvous_on_segment(ex, x, target, e1p.point(), d - x)
                .ok_or_else(|| EvacError::Numeric(format!("no meeting on the chase chord at x = {x}, d = {d}")))?;
            let t = t_n + n.dist(ex).min(n.dist(e1p.point()));
            // the meeting is the partner's intercept, so it is reported
            // under the partner's case
            return Ok(result(f, t, t, x, CaseTag::F0_3a));
        }
        CaseTag::F0_2a | CaseTag::F0_4a => {
            let y = chase_arc(&r)?;
            let t = y + (y - x).min(chord(x + y + d));
            (t, t)
        }
        CaseTag::F0_3a => {
            let Decision::Intercept { target: n, arrival: t_n, .. } = r.decision else { unreachable!() };
            let (p, at) = catch_on_circle(n, t_n, ArcPos::new(0.0), Direction::Cw)?;
            if p < a2 {
                let t = p + at.dist(ex).min(at.dist(e2p.point()));
                (t, t)
            } else {
                (t_n + n.dist(ex).min(n.dist(e2p.point())), partner_alone_f0(x_o, d)?)
            }
        }
        _ => (x, partner_alone_f0(x_o, d)?),
    };
    Ok(result(f, out.0, out.1, x, r.tag))
}

fn chase_arc(r: &Ruling) -> Result<f64, EvacError> {
    match r.decision {
        Decision::Chase { arrival, .. } => Ok(arrival),
        _ => Err(EvacError::Numeric(format!("case {} expected a chase", r.tag))),
    }
}

pub fn eval_f2f_diff(s: &Scenario) -> Result<EvacResult, EvacError> {
    check(s, Some(s.d()), false)?;
    let (c, disc) = canonical(s);
    let (x, d) = (disc.x, c.d());
    let f = disc.finder;
    let ex = ArcPos::new(d / 2.0 + x).point();
    let e1p = ArcPos::new(x - d / 2.0);
    let e2p = ArcPos::new(x + 1.5 * d);
    let other = other_exit(&c, disc.exit);
    let other_is_e2 = other.same_as(e2p);

    if disc.simultaneous {
        let r = fd_rule(x, d)?;
        let t = match r.decision {
            Decision::Exit => x,
            Decision::Chase { target, .. } => mirror_meeting(d / 2.0 + x, target)
                .map(|t| t - d / 2.0)
                .ok_or_else(|| EvacError::Numeric("mirror chases never cross".into()))?,
            // mirror intercepts run into each other where they cross the axis;
            // both exits are known by then
            Decision::Intercept { target, .. } if ex.y * target.y <= 0.0 && ex.y != target.y => {
                x + 2.0 * ex.dist(target) * ex.y / (ex.y - target.y)
            }
            Decision::Intercept { target, arrival, .. } => arrival + target.dist(ex).min(target.dist(ex.mirrored())),
        };
        return Ok(result(f, t, t, x, r.tag).simultaneous());
    }

    let r = fd_rule(x, d)?;
    let (partner_x, _) = first_exit(&c, Robot::R2);
    let out = match (r.tag, r.decision) {
        (CaseTag::Fd1a, Decision::Chase { arrival: y, .. }) => {
            // E2' is certain when E1' is the partner's start (x = 0) or
            // the two candidates coincide (d = π)
            let certain = x <= ANGLE_TOL || PI - d <= ANGLE_TOL;
            let leg = if certain { (y - x).min(chord(x + 2.0 * d + y)) } else { y - x };
            (y + leg, y + leg)
        }
        (CaseTag::Fd2c, Decision::Chase { arrival: y, .. }) => {
            // whichever candidate survived: E2' once E1' lies behind us,
            // E1' when the partner has already swept past E2'
            let to_certain = if x >= d - crate::rules::PRED_TOL {
                chord(x + 2.0 * d + y)
            } else {
                chord(x + y)
            };
            let t = y + (y - x).min(to_certain);
            (t, t)
        }
        (CaseTag::Fd1b | CaseTag::Fd2a, Decision::Intercept { target: n, arrival: t_n, on_miss }) => {
            if other_is_e2 {
                let t = t_n + n.dist(ex).min(n.dist(e2p.point()));
                (t, t)
            } else {
                let (p, at) = catch_on_circle(n, t_n, ArcPos::new(-d / 2.0), Direction::Cw)?;
                if p < on_miss.deadline {
                    let t = p + at.dist(ex).min(at.dist(e1p.point()));
                    return Ok(result(f, t, t, x, CaseTag::Fd1c));
                }
                let tf = t_n + n.dist(ex).min(n.dist(e1p.point()));
                return Ok(result(f, tf, partner_alone_fd(partner_x, d)?, x, CaseTag::Fd1c));
            }
        }
        (_, Decision::Exit) => (x, partner_alone_fd(partner_x, d)?),
        (tag, dec) => return Err(EvacError::Numeric(format!("unexpected decision {dec:?} for case {tag}"))),
    };
    let mut res = result(f, out.0, out.1, x, r.tag);
    if r.tag == CaseTag::Fd2b && x >= d {
        res.discrepancy = Some(Discrepancy {
            printed: x.min(TAU - x - 2.0 * d),
            realized: res.time_from_perimeter,
            note: FD2B_NOTE,
        });
    }
    Ok(res)
}

pub fn eval_f2f_labeled(s: &Scenario) -> Result<EvacResult, EvacError> {
    check(s, None, true)?;
    let (c, disc) = canonical(s);
    let (x, d, zeta) = (disc.x, c.d(), c.zeta());
    let f = disc.finder;
    let behind = c.e2().same_as(disc.exit) && !c.e1().same_as(disc.exit);
    let r = fl_rule(x, d, zeta, behind)?;
    if disc.simultaneous {
        return Ok(result(f, x, x, x, r.tag).simultaneous());
    }
    let out = match r.decision {
        Decision::Chase { arrival: y, .. } => {
            let spread = if behind { zeta + x + y - d } else { zeta + x + y + d };
            let t = y + (y - x).min(chord(spread.abs()));
            (t, t)
        }
        Decision::Exit => (x, disc.other_x),
        Decision::Intercept { .. } => return Err(EvacError::Numeric("labeled rule never intercepts".into())),
    };
    Ok(result(f, out.0, out.1, x, r.tag))
}

/// Dispatch on the scenario: labeled, `ζ = 0` or `ζ = d`.
pub fn eval_f2f(s: &Scenario) -> Result<EvacResult, EvacError> {
    if s.is_labeled() {
        eval_f2f_labeled(s)
    } else if s.zeta() == 0.0 {
        eval_f2f_same(s)
    } else if (s.zeta() - s.d()).abs() <= 1e-12 {
        eval_f2f_diff(s)
    } else {
        Err(EvacError::WrongEvaluator(format!(
            "no unlabeled face-to-face algorithm for zeta = {} with d = {}",
            s.zeta(),
            s.d()
        )))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum F2fVariant {
    Same,
    Diff,
    Labeled(ZetaPolicy),
}

pub fn worst_f2f(d: f64, variant: F2fVariant, exit_step: f64) -> Result<Worst, EvacError> {
    worst_over_exits(exit_step, |e1| {
        let s = match variant {
            F2fVariant::Same => Scenario::face_to_face(d, 0.0, e1)?,
            F2fVariant::Diff => Scenario::face_to_face(d, d, e1)?,
            F2fVariant::Labeled(z) => Scenario::face_to_face(d, z.resolve(d), e1)?.labeled(),
        };
        eval_f2f(&s)
    })
}

/// The first finder's plan as decided at its exit.
pub fn first_finder_plan(s: &Scenario) -> Result<PursuitPlan, EvacError> {
    let (c, disc) = canonical(s);
    let (x, d, zeta) = (disc.x, c.d(), c.zeta());
    let r = if c.is_labeled() {
        let behind = c.e2().same_as(disc.exit) && !c.e1().same_as(disc.exit);
        fl_rule(x, d, zeta, behind)?
    } else if zeta == 0.0 {
        f0_rule(x, d)?
    } else {
        fd_rule(x, d)?
    };
    let fix = |p: Point| if disc.finder == Robot::R2 { p.mirrored() } else { p };
    let start = Waypoint { point: fix(disc.exit.point()), planned_arrival: x, intent: Intent::ExitHere };
    let waypoints = match r.decision {
        Decision::Exit => vec![start],
        Decision::Chase { target, arrival } => vec![
            Waypoint { intent: Intent::GoToExit, ..start },
            Waypoint { point: fix(target), planned_arrival: arrival, intent: Intent::CatchOnCircle },
        ],
        Decision::Intercept { target, arrival, .. } => vec![
            Waypoint { intent: Intent::GoToExit, ..start },
            Waypoint { point: fix(target), planned_arrival: arrival, intent: Intent::MeetOnChord },
        ],
    };
    Ok(PursuitPlan { waypoints })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meeting::{solve_meeting, MeetQuery};
    use std::f64::consts::PI;

    #[test]
    fn same_start_examples() {
        let s = Scenario::face_to_face(0.5, 0.0, 0.0).unwrap();
        assert_eq!(eval_f2f_same(&s).unwrap().time_from_perimeter, 0.0);

        let s = Scenario::face_to_face(3.0, 0.0, 1.0).unwrap();
        let r = eval_f2f_same(&s).unwrap();
        assert_eq!(r.case_tag, CaseTag::F0_2b);
        assert!((r.time_from_perimeter - (TAU - 4.0)).abs() < 1e-9);
        assert!((r.time_from_perimeter - 2.2832).abs() < 1e-4);
    }

    #[test]
    fn exits_at_two_point_two_and_four_point_two() {
        // R2 reaches 4.2 first, after 2π − 4.2; the exit at 2.2 lies on
        // its known side and R1 is out of reach, so R2 leaves alone
        let s = Scenario::face_to_face(2.0, 0.0, 2.2).unwrap();
        let r = eval_f2f_same(&s).unwrap();
        assert_eq!(r.first_finder, Robot::R2);
        assert!((r.discovery_arc_x - (TAU - 4.2)).abs() < 1e-12);
        assert_eq!(r.case_tag, CaseTag::F0_4b);
        assert!((r.r1_exit_time - 2.2).abs() < 1e-9);
        assert!((r.r2_exit_time - (TAU - 4.2)).abs() < 1e-9);
        assert!((r.time_from_perimeter - 2.2).abs() < 1e-9);
    }

    #[test]
    fn wrong_zeta_is_rejected() {
        let s = Scenario::face_to_face(1.0, 0.5, 0.0).unwrap();
        assert!(matches!(eval_f2f_same(&s), Err(EvacError::WrongEvaluator(_))));
        assert!(matches!(eval_f2f_diff(&s), Err(EvacError::WrongEvaluator(_))));
        assert!(matches!(eval_f2f(&s), Err(EvacError::WrongEvaluator(_))));
    }

    #[test]
    fn different_start_examples() {
        // both robots begin on an exit without knowing the other does: the
        // mirror chases meet on the axis and walk back
        let s = Scenario::face_to_face(1.0, 1.0, -0.5).unwrap();
        let r = eval_f2f_diff(&s).unwrap();
        assert!(r.simultaneous && r.case_tag == CaseTag::Fd1a);
        assert!((r.time_from_perimeter - 1.767232948189437).abs() < 1e-9);

        // E1 at arc 0.35 past B: the chase to M wins
        let s = Scenario::face_to_face(0.3, 0.3, 0.15 + 0.35).unwrap();
        let r = eval_f2f_diff(&s).unwrap();
        assert_eq!(r.case_tag, CaseTag::Fd2c);
        let y = solve_meeting(MeetQuery::new(0.35, 0.3)).unwrap();
        let want = y + (y - 0.35).min(chord(0.35 + 0.6 + y));
        assert!((r.time_from_perimeter - want).abs() < 1e-9);
    }

    #[test]
    fn placement_at_one_and_a_half() {
        // d = 1, E1 found after 1.5, E2 its counterclockwise candidate. The
        // chase to M ends before the partner reaches E2', so Fd-2c fires
        // even though the exit-in-place value 2π − x − 2d is close.
        let s = Scenario::face_to_face(1.0, 1.0, 0.5 + 1.5).unwrap();
        let r = eval_f2f_diff(&s).unwrap();
        assert_eq!(r.case_tag, CaseTag::Fd2c);
        assert!((r.time_from_perimeter - 2.782962874805418).abs() < 1e-9, "{r:?}");
        assert!(r.time_from_perimeter < TAU - 1.5 - 2.0);
    }

    #[test]
    fn exit_in_place_reports_printed_value() {
        // x = 1.2 ≥ d = 1.0 and the partner is out of reach before E2'
        let d = 1.0;
        let x = 1.9;
        let s = Scenario::face_to_face(d, d, d / 2.0 + x).unwrap();
        let r = eval_f2f_diff(&s).unwrap();
        assert_eq!(r.case_tag, CaseTag::Fd2b);
        let disc = r.discrepancy.expect("discrepancy recorded");
        assert!((disc.printed - x.min(TAU - x - 2.0 * d)).abs() < 1e-12);
        assert!((disc.realized - x.max(TAU - x - 2.0 * d)).abs() < 1e-9);
        assert!((r.time_from_perimeter - disc.realized).abs() < 1e-12);
    }

    #[test]
    fn labeled_examples() {
        let s = Scenario::face_to_face(1.7, 0.0, 0.0).unwrap().labeled();
        assert_eq!(eval_f2f_labeled(&s).unwrap().time_from_perimeter, 0.0);

        // finder at x = 0.3 on E2; E1 is its clockwise candidate, which the
        // partner reaches after d − ζ − x
        let s = Scenario::face_to_face(2.0, 1.0, -1.2).unwrap().labeled();
        let r = eval_f2f_labeled(&s).unwrap();
        assert_eq!(r.case_tag, CaseTag::Fl2);
        assert!((r.discovery_arc_x - 0.3).abs() < 1e-12);
        assert!((r.time_from_perimeter - 0.7).abs() < 1e-9);
    }

    #[test]
    fn labeled_known_side_exit_in_place() {
        // d = 1, ζ = 0.5: pick x with 2x + ζ + d < 2π ≤ x + y + ζ + d
        let (d, zeta) = (1.0, 0.5);
        let mut x = 0.0;
        let mut found = None;
        while 2.0 * x + zeta + d < TAU {
            let y = solve_meeting(MeetQuery::new(x, zeta)).unwrap();
            if x + y + zeta + d >= TAU {
                found = Some(x);
                break;
            }
            x += 0.01;
        }
        let x = found.unwrap();
        // E1 at the found exit, E2 = E1 + d on the counterclockwise side
        let s = Scenario::face_to_face(d, zeta, zeta / 2.0 + x).unwrap().labeled();
        let r = eval_f2f_labeled(&s).unwrap();
        assert_eq!(r.case_tag, CaseTag::Fl4);
        assert!((r.time_from_perimeter - (TAU - d - zeta - x)).abs() < 1e-9);
    }

    #[test]
    fn plans_walk_at_unit_speed() {
        for e1 in [0.3, 1.1, 2.0, 4.0] {
            for (d, z) in [(1.0, 0.0), (2.5, 0.0), (1.0, 1.0), (2.0, 2.0)] {
                let s = Scenario::face_to_face(d, z, e1).unwrap();
                assert!(first_finder_plan(&s).unwrap().is_consistent());
            }
        }
    }

    #[test]
    fn small_d_prefers_different_starts() {
        let same = worst_f2f(0.01, F2fVariant::Same, 0.001).unwrap();
        let diff = worst_f2f(0.01, F2fVariant::Diff, 0.001).unwrap();
        assert!(diff.time < same.time, "{diff:?} vs {same:?}");
    }

    #[test]
    fn wide_exits_at_one_point_nine_five() {
        let same = worst_f2f(1.95, F2fVariant::Same, 0.001).unwrap();
        let diff = worst_f2f(1.95, F2fVariant::Diff, 0.001).unwrap();
        assert!(same.time < diff.time, "{same:?} vs {diff:?}");
        let _ = PI;
    }
}
