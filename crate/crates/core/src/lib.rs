//! Two robots, two exits, one unit disk.
//!
//! Both robots walk from the center to the perimeter (one time unit) and
//! search it in opposite directions. The exits are `d` apart; the robots
//! arrive `ζ` apart. Evaluators return the evacuation time for a single
//! exit placement, measured from perimeter arrival; the replay module
//! re-derives every time from explicit trajectories.
//!
//! ```
//! use disk_evac::{eval_wireless, Scenario};
//! use std::f64::consts::PI;
//!
//! let s = Scenario::wireless(PI, 0.0, PI / 4.0).unwrap();
//! let r = eval_wireless(&s).unwrap();
//! assert!((r.time_from_perimeter - (PI / 4.0 + 2f64.sqrt())).abs() < 1e-9);
//! ```

pub mod bounds;
pub mod cli;
pub mod discovery;
pub mod error;
pub mod f2f;
pub mod geometry;
pub mod meeting;
pub mod replay;
pub mod rules;
pub mod scenario;
pub mod sweep;
pub mod wireless;
pub mod worst;

pub use bounds::{f2f_lower_bound, wireless_gap_bound, BoundResult};
pub use error::EvacError;
pub use f2f::{eval_f2f, eval_f2f_diff, eval_f2f_labeled, eval_f2f_same, worst_f2f, F2fVariant};
pub use geometry::{ArcPos, Direction, Point};
pub use meeting::{solve_meeting, MeetQuery};
pub use scenario::{CaseTag, EvacResult, Model, Robot, Scenario, ZetaPolicy};
pub use wireless::{eval_wireless, eval_wireless_labeled, eval_wireless_unlabeled, worst_wireless};
pub use worst::Worst;
pub use sweep::{run_sweep, Series, SweepConfig, SweepRecord};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/meeting.md")]
    mod meeting {}
    #[doc = include_str!("../../../book/src/wireless.md")]
    mod wireless {}
    #[doc = include_str!("../../../book/src/face-to-face.md")]
    mod face_to_face {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/replay.md")]
    mod replay {}
    #[doc = include_str!("../../../book/src/sweeps.md")]
    mod sweeps {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
