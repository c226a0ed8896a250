use std::f64::consts::PI;
use std::fmt;

use crate::error::EvacError;
use crate::geometry::{angular_gap, ArcPos, ANGLE_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    Wireless,
    FaceToFace,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Wireless => "wireless",
            Model::FaceToFace => "f2f",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Robot {
    R1,
    R2,
}

impl Robot {
    pub fn other(self) -> Robot {
        match self {
            Robot::R1 => Robot::R2,
            Robot::R2 => Robot::R1,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Robot::R1 => 0,
            Robot::R2 => 1,
        }
    }
}

impl fmt::Display for Robot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Robot::R1 => "R1",
            Robot::R2 => "R2",
        })
    }
}

/// One problem instance.
///
/// `R1` starts at `B = ζ/2` and searches counterclockwise, `R2` starts at
/// `C = −ζ/2` and searches clockwise. `E2` sits `d` counterclockwise of `E1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scenario {
    model: Model,
    labeled: bool,
    d: f64,
    zeta: f64,
    e1: ArcPos,
    e2: ArcPos,
}

impl Scenario {
    pub fn new(model: Model, labeled: bool, d: f64, zeta: f64, e1: f64) -> Result<Self, EvacError> {
        if !(0.0..=PI).contains(&d) {
            return Err(EvacError::InvalidScenario(format!("d = {d} outside [0, π]")));
        }
        if !(zeta >= 0.0 && zeta.is_finite()) {
            return Err(EvacError::InvalidScenario(format!("zeta = {zeta} must be >= 0")));
        }
        if zeta > d + ANGLE_TOL {
            return Err(EvacError::UnsupportedRegime { zeta, d });
        }
        if !e1.is_finite() {
            return Err(EvacError::InvalidScenario(format!("e1 = {e1} is not finite")));
        }
        let e1 = ArcPos::new(e1);
        let e2 = ArcPos::new(e1.theta() + d);
        Ok(Scenario { model, labeled, d, zeta: zeta.min(d), e1, e2 })
    }

    pub fn wireless(d: f64, zeta: f64, e1: f64) -> Result<Self, EvacError> {
        Scenario::new(Model::Wireless, false, d, zeta, e1)
    }

    pub fn face_to_face(d: f64, zeta: f64, e1: f64) -> Result<Self, EvacError> {
        Scenario::new(Model::FaceToFace, false, d, zeta, e1)
    }

    pub fn labeled(mut self) -> Self {
        self.labeled = true;
        self
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn is_labeled(&self) -> bool {
        self.labeled
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    pub fn e1(&self) -> ArcPos {
        self.e1
    }

    pub fn e2(&self) -> ArcPos {
        self.e2
    }

    pub fn exits(&self) -> [ArcPos; 2] {
        [self.e1, self.e2]
    }

    pub fn start(&self, robot: Robot) -> ArcPos {
        match robot {
            Robot::R1 => ArcPos::new(self.zeta / 2.0),
            Robot::R2 => ArcPos::new(-self.zeta / 2.0),
        }
    }

    /// The same instance reflected across the x-axis; `R1` and `R2` swap roles.
    ///
    /// Labels swap as well so that `E2` stays counterclockwise of `E1`.
    pub fn mirrored(&self) -> Scenario {
        let e1 = self.e2.mirrored();
        let e2 = self.e1.mirrored();
        Scenario { e1, e2, ..*self }
    }

    pub fn is_exit(&self, p: ArcPos) -> bool {
        self.e1.same_as(p) || self.e2.same_as(p)
    }

    pub fn exits_apart(&self) -> f64 {
        angular_gap(self.e1, self.e2)
    }
}

/// How the initial separation `ζ` is chosen for a given exit distance `d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ZetaPolicy {
    Zero,
    Half,
    Full,
    Fixed(f64),
}

impl ZetaPolicy {
    pub fn resolve(self, d: f64) -> f64 {
        match self {
            ZetaPolicy::Zero => 0.0,
            ZetaPolicy::Half => d / 2.0,
            ZetaPolicy::Full => d,
            ZetaPolicy::Fixed(z) => z,
        }
    }
}

impl fmt::Display for ZetaPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZetaPolicy::Zero => f.write_str("0"),
            ZetaPolicy::Half => f.write_str("d/2"),
            ZetaPolicy::Full => f.write_str("d"),
            ZetaPolicy::Fixed(z) => write!(f, "{z:.6}"),
        }
    }
}

impl std::str::FromStr for ZetaPolicy {
    type Err = EvacError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "0" => Ok(ZetaPolicy::Zero),
            "d/2" => Ok(ZetaPolicy::Half),
            "d" => Ok(ZetaPolicy::Full),
            other => other
                .parse::<f64>()
                .ok()
                .filter(|z| z.is_finite() && *z >= 0.0)
                .map(ZetaPolicy::Fixed)
                .ok_or_else(|| EvacError::Domain(format!("zeta must be 0, d/2, d or radians >= 0, got {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    /// Wireless: both robots reach exits at the same instant.
    W0,
    W1a,
    W1b,
    W1c,
    W2,
    W3a,
    W3b,
    WlL1,
    WlL2,
    F0_1,
    F0_2a,
    F0_2b,
    F0_3a,
    F0_3b,
    F0_4a,
    F0_4b,
    F0_4c,
    Fd1a,
    Fd1b,
    Fd1c,
    Fd2a,
    Fd2b,
    Fd2c,
    Fl1,
    Fl2,
    Fl3,
    Fl4,
}

impl CaseTag {
    pub const ALL: [CaseTag; 27] = [
        CaseTag::W0,
        CaseTag::W1a,
        CaseTag::W1b,
        CaseTag::W1c,
        CaseTag::W2,
        CaseTag::W3a,
        CaseTag::W3b,
        CaseTag::WlL1,
        CaseTag::WlL2,
        CaseTag::F0_1,
        CaseTag::F0_2a,
        CaseTag::F0_2b,
        CaseTag::F0_3a,
        CaseTag::F0_3b,
        CaseTag::F0_4a,
        CaseTag::F0_4b,
        CaseTag::F0_4c,
        CaseTag::Fd1a,
        CaseTag::Fd1b,
        CaseTag::Fd1c,
        CaseTag::Fd2a,
        CaseTag::Fd2b,
        CaseTag::Fd2c,
        CaseTag::Fl1,
        CaseTag::Fl2,
        CaseTag::Fl3,
        CaseTag::Fl4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::W0 => "W0",
            CaseTag::W1a => "W1a",
            CaseTag::W1b => "W1b",
            CaseTag::W1c => "W1c",
            CaseTag::W2 => "W2",
            CaseTag::W3a => "W3a",
            CaseTag::W3b => "W3b",
            CaseTag::WlL1 => "WL-L1",
            CaseTag::WlL2 => "WL-L2",
            CaseTag::F0_1 => "F0-1",
            CaseTag::F0_2a => "F0-2a",
            CaseTag::F0_2b => "F0-2b",
            CaseTag::F0_3a => "F0-3a",
            CaseTag::F0_3b => "F0-3b",
            CaseTag::F0_4a => "F0-4a",
            CaseTag::F0_4b => "F0-4b",
            CaseTag::F0_4c => "F0-4c",
            CaseTag::Fd1a => "Fd-1a",
            CaseTag::Fd1b => "Fd-1b",
            CaseTag::Fd1c => "Fd-1c",
            CaseTag::Fd2a => "Fd-2a",
            CaseTag::Fd2b => "Fd-2b",
            CaseTag::Fd2c => "Fd-2c",
            CaseTag::Fl1 => "FL-1",
            CaseTag::Fl2 => "FL-2",
            CaseTag::Fl3 => "FL-3",
            CaseTag::Fl4 => "FL-4",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CaseTag {
    type Err = EvacError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| EvacError::Domain(format!("unknown case tag {s:?}")))
    }
}

/// A closed-form value that the realized makespan contradicts, kept next to
/// the result instead of being silently replaced.
#[derive(Clone, Debug, PartialEq)]
pub struct Discrepancy {
    pub printed: f64,
    pub realized: f64,
    pub note: &'static str,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvacResult {
    /// Makespan measured from the moment both robots reach the perimeter.
    pub time_from_perimeter: f64,
    pub r1_exit_time: f64,
    pub r2_exit_time: f64,
    pub discovery_arc_x: f64,
    pub first_finder: Robot,
    pub case_tag: CaseTag,
    pub simultaneous: bool,
    pub discrepancy: Option<Discrepancy>,
}

impl EvacResult {
    pub(crate) fn new(
        first_finder: Robot,
        finder_time: f64,
        other_time: f64,
        x: f64,
        case_tag: CaseTag,
    ) -> Self {
        let (r1, r2) = match first_finder {
            Robot::R1 => (finder_time, other_time),
            Robot::R2 => (other_time, finder_time),
        };
        EvacResult {
            time_from_perimeter: r1.max(r2),
            r1_exit_time: r1,
            r2_exit_time: r2,
            discovery_arc_x: x,
            first_finder,
            case_tag,
            simultaneous: false,
            discrepancy: None,
        }
    }

    pub(crate) fn simultaneous(mut self) -> Self {
        self.simultaneous = true;
        self
    }

    /// Total time including the unit leg from the centre to the perimeter.
    pub fn total_time(&self) -> f64 {
        self.time_from_perimeter + 1.0
    }
}
