use std::fmt::Write as _;

use crate::geometry::{arc_between, ArcPos, Direction, Point};
use crate::scenario::{Robot, Scenario};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SegmentKind {
    ArcMove { from: ArcPos, to: ArcPos, direction: Direction },
    ChordMove { from: Point, to: Point },
    Hold { at: Point },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub kind: SegmentKind,
    pub start_time: f64,
    pub end_time: f64,
}

impl Segment {
    /// Path length walked, which at unit speed is also the duration.
    pub fn length(&self) -> f64 {
        match self.kind {
            SegmentKind::ArcMove { from, to, direction } => {
                let a = arc_between(from, to, direction);
                // a full lap shows up as 0 after normalizing
                if a == 0.0 && self.end_time - self.start_time > std::f64::consts::PI {
                    std::f64::consts::TAU
                } else {
                    a
                }
            }
            SegmentKind::ChordMove { from, to } => from.dist(to),
            SegmentKind::Hold { .. } => 0.0,
        }
    }

    pub fn start_point(&self) -> Point {
        match self.kind {
            SegmentKind::ArcMove { from, .. } => from.point(),
            SegmentKind::ChordMove { from, .. } => from,
            SegmentKind::Hold { at } => at,
        }
    }

    pub fn end_point(&self) -> Point {
        match self.kind {
            SegmentKind::ArcMove { to, .. } => to.point(),
            SegmentKind::ChordMove { to, .. } => to,
            SegmentKind::Hold { at } => at,
        }
    }

    fn kind_name(&self) -> &'static str {
        match self.kind {
            SegmentKind::ArcMove { .. } => "arc",
            SegmentKind::ChordMove { .. } => "chord",
            SegmentKind::Hold { .. } => "hold",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EventKind {
    FoundExit(Point),
    SentMessage,
    ReceivedMessage,
    Meet { partner: Robot, at: Point },
    Exited(Point),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Event {
    pub time: f64,
    pub kind: EventKind,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub robot: Robot,
    pub segments: Vec<Segment>,
    pub events: Vec<Event>,
}

impl Trajectory {
    pub fn new(robot: Robot) -> Self {
        Trajectory { robot, segments: vec![], events: vec![] }
    }

    pub fn exit_time(&self) -> Option<f64> {
        match self.events.last() {
            Some(Event { time, kind: EventKind::Exited(_) }) => Some(*time),
            _ => None,
        }
    }

    /// Problems with the trajectory on its own: speed, continuity, holds,
    /// and whether it ends at a real exit.
    pub fn check(&self, s: &Scenario) -> Vec<String> {
        let who = self.robot;
        let mut bad = vec![];
        let mut prev: Option<&Segment> = None;
        for (i, seg) in self.segments.iter().enumerate() {
            let dt = seg.end_time - seg.start_time;
            if dt < -1e-12 {
                bad.push(format!("{who:?} segment {i} runs backwards in time"));
            }
            if (seg.length() - dt).abs() > 1e-9 {
                bad.push(format!("{who:?} segment {i} has length {} over {dt}", seg.length()));
            }
            if matches!(seg.kind, SegmentKind::Hold { .. }) {
                bad.push(format!("{who:?} segment {i} waits"));
            }
            if let Some(p) = prev {
                if (p.end_time - seg.start_time).abs() > 1e-12 || p.end_point().dist(seg.start_point()) > 1e-9 {
                    bad.push(format!("{who:?} segment {i} does not continue segment {}", i - 1));
                }
            }
            prev = Some(seg);
        }
        match self.events.last() {
            Some(Event { kind: EventKind::Exited(at), time }) => {
                if !s.exits().iter().any(|e| e.point().dist(*at) <= 1e-9) {
                    bad.push(format!("{who:?} left at {at:?}, which is no exit"));
                }
                if let Some(last) = self.segments.last() {
                    if (last.end_time - time).abs() > 1e-12 || last.end_point().dist(*at) > 1e-9 {
                        bad.push(format!("{who:?} exits away from where it stopped"));
                    }
                }
            }
            _ => bad.push(format!("{who:?} never exits")),
        }
        bad
    }

    /// One line per segment: `robot,kind,t0,t1,x0,y0,x1,y1`.
    pub fn dump(&self, out: &mut String) {
        let who = match self.robot {
            Robot::R1 => "R1",
            Robot::R2 => "R2",
        };
        for seg in &self.segments {
            let (a, b) = (seg.start_point(), seg.end_point());
            let _ = writeln!(
                out,
                "{who},{},{:.9},{:.9},{:.9},{:.9},{:.9},{:.9}",
                seg.kind_name(),
                seg.start_time,
                seg.end_time,
                a.x,
                a.y,
                b.x,
                b.y
            );
        }
    }
}
