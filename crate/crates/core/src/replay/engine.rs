//! Event-driven replay. Both robots move at unit speed; the loop jumps from
//! one event (an exit found, a leg finished, a meeting) to the next.
//!
//! Decisions come from the per-robot rules; everything after a decision
//! (where robots actually are, whether they meet, when they leave) is found
//! by moving them and measuring.

use super::trajectory::{Event, EventKind, Segment, SegmentKind, Trajectory};
use crate::discovery::heading;
use crate::error::EvacError;
use crate::geometry::{arc_between, ArcPos, Direction, Point, ANGLE_TOL, TIE_TOL};
use crate::rules::{catch_on_circle, f0_rule, fd_rule, fl_rule, Decision, MissPlan};
use crate::scenario::{Model, Robot, Scenario};

/// Two robots closer than this are together.
pub const MEET_TOL: f64 = 1e-6;

const EXIT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Replay {
    pub r1: Trajectory,
    pub r2: Trajectory,
    pub makespan: f64,
}

impl Replay {
    pub fn trajectory(&self, robot: Robot) -> &Trajectory {
        match robot {
            Robot::R1 => &self.r1,
            Robot::R2 => &self.r2,
        }
    }

    pub fn dump(&self) -> String {
        let mut out = String::from("robot,kind,t0,t1,x0,y0,x1,y1\n");
        self.r1.dump(&mut out);
        self.r2.dump(&mut out);
        out
    }
}

#[derive(Clone, Debug)]
enum Purpose {
    /// The partner should be at the end of the leg.
    Chase,
    /// The partner may be at the end of the leg; `target` is in the robot's
    /// own frame.
    Intercept { target: Point, on_miss: MissPlan },
    /// The end of the leg is an exit.
    ToExit,
    /// Walk the points in turn and leave at the first real exit.
    Route(Vec<Point>),
}

#[derive(Clone, Debug)]
enum State {
    Searching { start: ArcPos, dir: Direction },
    Moving { from: Point, to: Point, t0: f64, purpose: Purpose },
    Exited { time: f64 },
}

struct Agent {
    robot: Robot,
    state: State,
    traj: Trajectory,
    found: Option<ArcPos>,
    known: Vec<ArcPos>,
    /// Searched arcs as (start, length, direction).
    explored: Vec<(ArcPos, f64, Direction)>,
    together: bool,
}

impl Agent {
    fn pos(&self, t: f64) -> Point {
        match &self.state {
            State::Searching { start, dir } => start.offset(t, *dir).point(),
            State::Moving { from, to, t0, .. } => from.toward(*to, (t - t0).max(0.0)),
            State::Exited { .. } => self.traj.events.last().map_or(Point::ORIGIN, |e| match e.kind {
                EventKind::Exited(p) => p,
                _ => Point::ORIGIN,
            }),
        }
    }
}

fn to_world(robot: Robot, p: Point) -> Point {
    match robot {
        Robot::R1 => p,
        Robot::R2 => p.mirrored(),
    }
}

fn arc_to_world(robot: Robot, a: ArcPos) -> ArcPos {
    match robot {
        Robot::R1 => a,
        Robot::R2 => a.mirrored(),
    }
}

fn nearest(from: Point, options: &[Point]) -> Point {
    options.iter().copied().fold(options[0], |best, p| if from.dist(p) < from.dist(best) { p } else { best })
}

fn invalid(msg: String) -> EvacError {
    EvacError::TraceInvalid(msg)
}

struct Sim<'a> {
    s: &'a Scenario,
    agents: [Agent; 2],
}

/// Replays `s` and returns both trajectories.
pub fn replay(s: &Scenario) -> Result<Replay, EvacError> {
    if s.model() == Model::FaceToFace && !s.is_labeled() && s.zeta() != 0.0 && (s.zeta() - s.d()).abs() > 1e-12 {
        return Err(EvacError::WrongEvaluator(format!(
            "no unlabeled face-to-face algorithm for zeta = {} with d = {}",
            s.zeta(),
            s.d()
        )));
    }
    let agent = |robot| Agent {
        robot,
        state: State::Searching { start: s.start(robot), dir: heading(robot) },
        traj: Trajectory::new(robot),
        found: None,
        known: vec![],
        explored: vec![],
        together: false,
    };
    Sim { s, agents: [agent(Robot::R1), agent(Robot::R2)] }.run()
}

impl Sim<'_> {
    fn run(mut self) -> Result<Replay, EvacError> {
        let mut now = 0.0;
        for _ in 0..10_000 {
            if self.agents.iter().all(|a| matches!(a.state, State::Exited { .. })) {
                return Ok(self.finish());
            }
            let times = [self.next_time(0), self.next_time(1)];
            let horizon = times[0].min(times[1]);
            if let Some(tm) = self.meeting_time(now, horizon) {
                self.meet(tm)?;
                now = tm;
                continue;
            }
            let due: Vec<usize> = (0..2).filter(|&i| times[i] <= horizon + ANGLE_TOL).collect();
            let (searching, moving): (Vec<usize>, Vec<usize>) =
                due.into_iter().partition(|&i| matches!(self.agents[i].state, State::Searching { .. }));
            for i in moving {
                self.arrive(i)?;
            }
            if !searching.is_empty() {
                self.discover(&searching)?;
            }
            now = horizon;
        }
        Err(invalid("replay did not settle".into()))
    }

    fn finish(self) -> Replay {
        let [a, b] = self.agents;
        let exit = |a: &Agent| match a.state {
            State::Exited { time } => time,
            _ => f64::NAN,
        };
        let makespan = exit(&a).max(exit(&b));
        Replay { r1: a.traj, r2: b.traj, makespan }
    }

    /// Time of the agent's next own event: reaching an exit or a waypoint.
    fn next_time(&self, i: usize) -> f64 {
        match &self.agents[i].state {
            State::Searching { start, dir } => {
                self.s.exits().iter().map(|e| arc_between(*start, *e, *dir)).fold(f64::INFINITY, f64::min)
            }
            State::Moving { from, to, t0, .. } => t0 + from.dist(*to),
            State::Exited { .. } => f64::INFINITY,
        }
    }

    fn is_exit(&self, p: Point) -> bool {
        self.s.exits().iter().any(|e| e.point().dist(p) <= EXIT_TOL)
    }

    fn is_explored(&self, c: ArcPos, explored: &[(ArcPos, f64, Direction)]) -> bool {
        explored.iter().any(|&(from, len, dir)| arc_between(from, c, dir) <= len + ANGLE_TOL)
    }

    /// First time in `[now, horizon]` at which the two robots stand together,
    /// if any.
    fn meeting_time(&self, now: f64, horizon: f64) -> Option<f64> {
        let [a, b] = &self.agents;
        if a.together || b.together {
            return None;
        }
        match (&a.state, &b.state) {
            (State::Moving { from, to, t0, .. }, State::Searching { .. }) => {
                let t1 = t0 + from.dist(*to);
                (t1 <= horizon + 1e-12 && b.pos(t1).dist(*to) <= MEET_TOL).then_some(t1)
            }
            (State::Searching { .. }, State::Moving { from, to, t0, .. }) => {
                let t1 = t0 + from.dist(*to);
                (t1 <= horizon + 1e-12 && a.pos(t1).dist(*to) <= MEET_TOL).then_some(t1)
            }
            (
                State::Moving { from: fa, to: ta, t0: sa, .. },
                State::Moving { from: fb, to: tb, t0: sb, .. },
            ) => {
                let lo = now.max(*sa).max(*sb);
                let hi = horizon.min(sa + fa.dist(*ta)).min(sb + fb.dist(*tb));
                if hi < lo - 1e-12 {
                    return None;
                }
                let va = unit(*fa, *ta);
                let vb = unit(*fb, *tb);
                let pa = a.pos(lo);
                let pb = b.pos(lo);
                let (rx, ry) = (pa.x - pb.x, pa.y - pb.y);
                let (vx, vy) = (va.x - vb.x, va.y - vb.y);
                let vv = vx * vx + vy * vy;
                let tau = if vv > 0.0 { (-(rx * vx + ry * vy) / vv).clamp(0.0, (hi - lo).max(0.0)) } else { 0.0 };
                let t = lo + tau;
                (a.pos(t).dist(b.pos(t)) <= MEET_TOL).then_some(t)
            }
            _ => None,
        }
    }

    /// Ends the current search leg at time `t`, at `at`.
    fn stop_search(&mut self, i: usize, t: f64, at: ArcPos) {
        let a = &mut self.agents[i];
        if let State::Searching { start, dir } = a.state {
            if t > 0.0 {
                a.traj.segments.push(Segment {
                    kind: SegmentKind::ArcMove { from: start, to: at, direction: dir },
                    start_time: 0.0,
                    end_time: t,
                });
            }
            a.explored.push((start, t, dir));
        }
    }

    /// Ends the current chord leg at time `t`; returns where the robot is.
    fn stop_move(&mut self, i: usize, t: f64) -> Point {
        let here = self.agents[i].pos(t);
        let a = &mut self.agents[i];
        if let State::Moving { from, t0, .. } = a.state {
            a.traj.segments.push(Segment { kind: SegmentKind::ChordMove { from, to: here }, start_time: t0, end_time: t });
        }
        here
    }

    fn start_move(&mut self, i: usize, t: f64, from: Point, to: Point, purpose: Purpose) {
        self.agents[i].state = State::Moving { from, to, t0: t, purpose };
    }

    fn exit(&mut self, i: usize, t: f64, at: Point) {
        let a = &mut self.agents[i];
        a.traj.events.push(Event { time: t, kind: EventKind::Exited(at) });
        a.state = State::Exited { time: t };
    }

    fn event(&mut self, i: usize, t: f64, kind: EventKind) {
        self.agents[i].traj.events.push(Event { time: t, kind });
    }

    fn discover(&mut self, who: &[usize]) -> Result<(), EvacError> {
        let mut found = vec![];
        for &i in who {
            let t = self.next_time(i);
            let State::Searching { start, dir } = self.agents[i].state else { unreachable!() };
            let at = self
                .s
                .exits()
                .into_iter()
                .find(|e| (arc_between(start, *e, dir) - t).abs() <= 1e-12)
                .expect("an exit at the event time");
            self.stop_search(i, t, at);
            self.event(i, t, EventKind::FoundExit(at.point()));
            let a = &mut self.agents[i];
            a.found = Some(at);
            a.known.push(at);
            found.push((i, t, at));
        }
        match self.s.model() {
            Model::Wireless => self.wireless_messages(&found),
            Model::FaceToFace => {
                for (i, t, at) in found {
                    self.apply_rule(i, t, at)?;
                }
                Ok(())
            }
        }
    }

    fn wireless_messages(&mut self, found: &[(usize, f64, ArcPos)]) -> Result<(), EvacError> {
        if let [(a, ta, xa), (b, tb, xb)] = *found {
            // both found an exit at once; each message reaches a robot that
            // is already leaving
            for (i, t, x, heard) in [(a, ta, xa, tb), (b, tb, xb, ta)] {
                self.event(i, t, EventKind::SentMessage);
                self.event(i, heard.max(t), EventKind::ReceivedMessage);
                self.exit(i, heard.max(t), x.point());
            }
            return Ok(());
        }
        for &(i, t, at) in found {
            self.event(i, t, EventKind::SentMessage);
            self.exit(i, t, at.point());
        }
        let (f, t, x) = found[0];
        let j = 1 - f;
        if !matches!(self.agents[j].state, State::Searching { .. }) {
            return Ok(());
        }
        let State::Searching { start, dir } = self.agents[j].state else { unreachable!() };
        let here = start.offset(t, dir);
        self.stop_search(j, t, here);
        self.event(j, t, EventKind::ReceivedMessage);
        let route = self.receiver_route(f, j, x, here.point());
        let first = route[0];
        self.start_move(j, t, here.point(), first, Purpose::Route(route[1..].to_vec()));
        Ok(())
    }

    /// Where the receiver of a wireless message goes, in order.
    fn receiver_route(&self, finder: usize, receiver: usize, x: ArcPos, from: Point) -> Vec<Point> {
        let d = self.s.d();
        let xp = x.point();
        if self.s.is_labeled() {
            let other = self.labeled_partner(x).point();
            return vec![nearest(from, &[xp, other])];
        }
        let ahead = heading(self.agents[finder].robot);
        let behind = x.offset(d, ahead.reversed());
        let front = x.offset(d, ahead);
        let explored: Vec<_> =
            self.agents[finder].explored.iter().chain(&self.agents[receiver].explored).copied().collect();
        let mut open: Vec<ArcPos> = vec![];
        for c in [behind, front] {
            if !self.is_explored(c, &explored) && !open.iter().any(|o| o.same_as(c)) {
                open.push(c);
            }
        }
        match open[..] {
            [] => vec![xp],
            [c] => vec![nearest(from, &[xp, c.point()])],
            [c1, c2] => {
                let (p1, p2) = (c1.point(), c2.point());
                let between = p1.dist(p2);
                let options = [
                    (from.dist(xp), vec![xp]),
                    (from.dist(p1) + between, vec![p1, p2]),
                    (from.dist(p2) + between, vec![p2, p1]),
                ];
                options.into_iter().fold((f64::INFINITY, vec![]), |best, o| if o.0 < best.0 - TIE_TOL { o } else { best }).1
            }
            _ => unreachable!(),
        }
    }

    /// With labeled exits, the exit that goes with `e`.
    fn labeled_partner(&self, e: ArcPos) -> ArcPos {
        if self.s.e1().same_as(e) {
            e.offset(self.s.d(), Direction::Ccw)
        } else {
            e.offset(self.s.d(), Direction::Cw)
        }
    }

    fn apply_rule(&mut self, i: usize, t: f64, at: ArcPos) -> Result<(), EvacError> {
        let robot = self.agents[i].robot;
        let (d, zeta) = (self.s.d(), self.s.zeta());
        let ruling = if self.s.is_labeled() {
            let other_ccw = self.s.e1().same_as(at);
            let behind = match robot {
                Robot::R1 => !other_ccw,
                Robot::R2 => other_ccw,
            };
            fl_rule(t, d, zeta, behind)?
        } else if zeta == 0.0 {
            f0_rule(t, d)?
        } else {
            fd_rule(t, d)?
        };
        let xp = at.point();
        match ruling.decision {
            Decision::Exit => self.exit(i, t, xp),
            Decision::Chase { target, .. } => self.start_move(i, t, xp, to_world(robot, target), Purpose::Chase),
            Decision::Intercept { target, on_miss, .. } => {
                self.start_move(i, t, xp, to_world(robot, target), Purpose::Intercept { target, on_miss })
            }
        }
        Ok(())
    }

    fn arrive(&mut self, i: usize) -> Result<(), EvacError> {
        let t = self.next_time(i);
        let State::Moving { to, purpose, .. } = self.agents[i].state.clone() else { unreachable!() };
        self.stop_move(i, t);
        let robot = self.agents[i].robot;
        match purpose {
            Purpose::Chase => Err(invalid(format!("{robot:?} reached its catch point at t = {t} and found nobody"))),
            Purpose::Intercept { target, on_miss } => {
                let zeta = self.s.zeta();
                let (p, at) = catch_on_circle(target, t, ArcPos::new(-zeta / 2.0), Direction::Cw)?;
                if p < on_miss.deadline {
                    self.start_move(i, t, to, to_world(robot, at), Purpose::Chase);
                } else {
                    let own = self.agents[i].found.expect("intercepts start at an exit").point();
                    let certain = arc_to_world(robot, on_miss.certain).point();
                    self.start_move(i, t, to, nearest(to, &[own, certain]), Purpose::ToExit);
                }
                Ok(())
            }
            Purpose::ToExit if self.is_exit(to) => {
                self.exit(i, t, to);
                Ok(())
            }
            Purpose::ToExit => Err(invalid(format!("{robot:?} expected an exit at {to:?}"))),
            Purpose::Route(rest) => {
                if self.is_exit(to) {
                    self.exit(i, t, to);
                } else if let Some((&next, rest)) = rest.split_first() {
                    self.start_move(i, t, to, next, Purpose::Route(rest.to_vec()));
                } else {
                    return Err(invalid(format!("{robot:?} ran out of candidates at {to:?}")));
                }
                Ok(())
            }
        }
    }

    fn meet(&mut self, t: f64) -> Result<(), EvacError> {
        let mut here = [Point::ORIGIN; 2];
        for (i, spot) in here.iter_mut().enumerate() {
            *spot = match self.agents[i].state {
                State::Searching { start, dir } => {
                    let at = start.offset(t, dir);
                    self.stop_search(i, t, at);
                    // a searcher caught on an exit has found it
                    if let Some(e) = self.s.exits().into_iter().find(|e| e.same_as(at)) {
                        self.event(i, t, EventKind::FoundExit(e.point()));
                        self.agents[i].known.push(e);
                    }
                    at.point()
                }
                State::Moving { .. } => self.stop_move(i, t),
                State::Exited { .. } => unreachable!("exited robots meet nobody"),
            };
        }
        let known: Vec<ArcPos> = self.agents.iter().flat_map(|a| a.known.clone()).collect();
        let explored: Vec<_> = self.agents.iter().flat_map(|a| a.explored.clone()).collect();
        let route = self.joint_route(here[0], &known, &explored)?;
        for (i, at) in here.into_iter().enumerate() {
            let partner = self.agents[1 - i].robot;
            self.event(i, t, EventKind::Meet { partner, at });
            let a = &mut self.agents[i];
            a.known = known.clone();
            a.explored = explored.clone();
            a.together = true;
            self.start_move(i, t, at, route[0], Purpose::Route(route[1..].to_vec()));
        }
        Ok(())
    }

    /// Where two robots that have just met go, given what they know together.
    fn joint_route(
        &self,
        q: Point,
        known: &[ArcPos],
        explored: &[(ArcPos, f64, Direction)],
    ) -> Result<Vec<Point>, EvacError> {
        let d = self.s.d();
        let mut exits: Vec<ArcPos> = vec![];
        let add = |e: ArcPos, exits: &mut Vec<ArcPos>| {
            if !exits.iter().any(|k| k.same_as(e)) {
                exits.push(e);
            }
        };
        for &k in known {
            add(k, &mut exits);
            if self.s.is_labeled() {
                add(self.labeled_partner(k), &mut exits);
            }
        }
        let Some(&x) = exits.first() else {
            return Err(invalid("robots met without knowing any exit".into()));
        };
        if exits.len() >= 2 {
            let pts: Vec<Point> = exits.iter().map(|e| e.point()).collect();
            return Ok(vec![nearest(q, &pts)]);
        }
        let xp = x.point();
        let mut open: Vec<ArcPos> = vec![];
        for c in [x.offset(d, Direction::Cw), x.offset(d, Direction::Ccw)] {
            if !c.same_as(x) && !self.is_explored(c, explored) && !open.iter().any(|o| o.same_as(c)) {
                open.push(c);
            }
        }
        Ok(match open[..] {
            [] => vec![xp],
            [c] => vec![nearest(q, &[xp, c.point()])],
            [c1, c2] if self.s.zeta() == 0.0 => {
                // check the nearer candidate first, the other one after it
                let (a, b) = if q.dist(c1.point()) <= q.dist(c2.point()) { (c1, c2) } else { (c2, c1) };
                let tour = q.dist(a.point()) + a.point().dist(b.point());
                if tour < q.dist(xp) {
                    vec![a.point(), b.point()]
                } else {
                    vec![xp]
                }
            }
            _ => vec![xp],
        })
    }
}

fn unit(from: Point, to: Point) -> Point {
    let len = from.dist(to);
    if len == 0.0 {
        Point::ORIGIN
    } else {
        Point::new((to.x - from.x) / len, (to.y - from.y) / len)
    }
}
