//! Kinematic replay: both robots are moved along explicit trajectories, and
//! the evacuation time is read off the last exit. Serves as an oracle for
//! the closed forms.

mod engine;
mod trajectory;
mod verify;

pub use engine::{replay, Replay, MEET_TOL};
pub use trajectory::{Event, EventKind, Segment, SegmentKind, Trajectory};
pub use verify::{
    compare, verify_agreement, verify_batch, verify_scenarios, AgreementReport, Comparison, Evaluator, EvaluatorReport,
    ORACLE_TOL,
};
