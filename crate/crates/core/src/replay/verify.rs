use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::engine::{replay, Replay, MEET_TOL};
use super::trajectory::{EventKind, Trajectory};
use crate::error::EvacError;
use crate::f2f::{eval_f2f_diff, eval_f2f_labeled, eval_f2f_same};
use crate::scenario::{EvacResult, Model, Scenario};
use crate::wireless::{eval_wireless_labeled, eval_wireless_unlabeled};

/// Closed forms and replay may differ by this much.
pub const ORACLE_TOL: f64 = 1e-4;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AgreementReport {
    pub failures: Vec<String>,
    pub meetings: usize,
    pub messages: usize,
}

impl AgreementReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn meets(t: &Trajectory) -> impl Iterator<Item = (f64, crate::geometry::Point)> + '_ {
    t.events.iter().filter_map(|e| match e.kind {
        EventKind::Meet { at, .. } => Some((e.time, at)),
        _ => None,
    })
}

fn times_of(t: &Trajectory, want: fn(&EventKind) -> bool) -> Vec<f64> {
    t.events.iter().filter(|e| want(&e.kind)).map(|e| e.time).collect()
}

/// Both robots leave through real exits at unit speed, every meeting is
/// seen by both, every message is received when it is sent, and robots
/// that met leave together.
pub fn verify_agreement(r: &Replay, s: &Scenario) -> AgreementReport {
    let mut rep = AgreementReport::default();
    for t in [&r.r1, &r.r2] {
        rep.failures.extend(t.check(s));
    }
    for (a, b) in [(&r.r1, &r.r2), (&r.r2, &r.r1)] {
        for (t, at) in meets(a) {
            if !meets(b).any(|(u, bt)| (u - t).abs() <= 1e-9 && bt.dist(at) <= MEET_TOL) {
                rep.failures.push(format!("{:?} met its partner at t = {t}, which the partner never saw", a.robot));
            }
        }
        let received = times_of(a, |k| matches!(k, EventKind::ReceivedMessage));
        let sent = times_of(b, |k| matches!(k, EventKind::SentMessage));
        for t in &received {
            // instantaneous delivery: same instant, or after the receiver
            // was already leaving through an exit of its own
            if !sent.iter().any(|u| u <= &(t + 1e-9)) {
                rep.failures.push(format!("{:?} received a message at t = {t} that was never sent", a.robot));
            }
        }
    }
    if s.model() == Model::FaceToFace && r.r1.events.iter().chain(&r.r2.events).any(|e| {
        matches!(e.kind, EventKind::SentMessage | EventKind::ReceivedMessage)
    }) {
        rep.failures.push("messages in the face-to-face model".into());
    }
    rep.meetings = meets(&r.r1).count();
    rep.messages = times_of(&r.r1, |k| matches!(k, EventKind::SentMessage)).len()
        + times_of(&r.r2, |k| matches!(k, EventKind::SentMessage)).len();
    if rep.meetings > 0 {
        match (r.r1.exit_time(), r.r2.exit_time()) {
            (Some(a), Some(b)) if (a - b).abs() <= 1e-6 => {}
            _ => rep.failures.push("robots that met did not leave together".into()),
        }
    }
    rep
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Evaluator {
    WirelessUnlabeled,
    WirelessLabeled,
    F2fSame,
    F2fDiff,
    F2fLabeled,
}

impl Evaluator {
    pub const ALL: [Evaluator; 5] = [
        Evaluator::WirelessUnlabeled,
        Evaluator::WirelessLabeled,
        Evaluator::F2fSame,
        Evaluator::F2fDiff,
        Evaluator::F2fLabeled,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Evaluator::WirelessUnlabeled => "wireless",
            Evaluator::WirelessLabeled => "wireless-labeled",
            Evaluator::F2fSame => "f2f-same",
            Evaluator::F2fDiff => "f2f-diff",
            Evaluator::F2fLabeled => "f2f-labeled",
        }
    }

    pub fn evaluate(self, s: &Scenario) -> Result<EvacResult, EvacError> {
        match self {
            Evaluator::WirelessUnlabeled => eval_wireless_unlabeled(s),
            Evaluator::WirelessLabeled => eval_wireless_labeled(s),
            Evaluator::F2fSame => eval_f2f_same(s),
            Evaluator::F2fDiff => eval_f2f_diff(s),
            Evaluator::F2fLabeled => eval_f2f_labeled(s),
        }
    }

    /// A uniformly drawn scenario this evaluator accepts.
    pub fn sample(self, rng: &mut impl Rng) -> Scenario {
        let d = rng.gen_range(0.0..=PI);
        let e1 = rng.gen_range(0.0..TAU);
        let free = rng.gen_range(0.0..=d);
        let (model, zeta, labeled) = match self {
            Evaluator::WirelessUnlabeled => (Model::Wireless, free, false),
            Evaluator::WirelessLabeled => (Model::Wireless, free, true),
            Evaluator::F2fSame => (Model::FaceToFace, 0.0, false),
            Evaluator::F2fDiff => (Model::FaceToFace, d, false),
            Evaluator::F2fLabeled => (Model::FaceToFace, free, true),
        };
        Scenario::new(model, labeled, d, zeta, e1).expect("sampled scenario is valid")
    }
}

impl fmt::Display for Evaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Evaluator {
    type Err = EvacError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Evaluator::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| EvacError::Config(format!("unknown evaluator `{s}`")))
    }
}

/// Closed form next to replay for one scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub scenario: Scenario,
    pub policy: EvacResult,
    pub replay: Replay,
    pub agreement: AgreementReport,
}

impl Comparison {
    pub fn deviation(&self) -> f64 {
        (self.policy.time_from_perimeter - self.replay.makespan).abs()
    }

    pub fn passed(&self) -> bool {
        self.deviation() < ORACLE_TOL && self.agreement.passed()
    }
}

pub fn compare(ev: Evaluator, s: &Scenario) -> Result<Comparison, EvacError> {
    let policy = ev.evaluate(s)?;
    let replay = replay(s)?;
    let agreement = verify_agreement(&replay, s);
    Ok(Comparison { scenario: *s, policy, replay, agreement })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvaluatorReport {
    pub evaluator: Evaluator,
    pub samples: usize,
    pub max_deviation: f64,
    /// Placements where a printed formula and the realized time differ.
    pub discrepancies: usize,
    pub failures: Vec<String>,
}

impl EvaluatorReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Draws `samples` scenarios per evaluator from `seed` and compares closed
/// form and replay on each.
pub fn verify_batch(samples: usize, seed: u64) -> Vec<EvaluatorReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Evaluator::ALL
        .into_iter()
        .map(|ev| {
            let scenarios: Vec<Scenario> = (0..samples).map(|_| ev.sample(&mut rng)).collect();
            verify_scenarios(ev, &scenarios)
        })
        .collect()
}

pub fn verify_scenarios(ev: Evaluator, scenarios: &[Scenario]) -> EvaluatorReport {
    let outcomes: Vec<Result<Comparison, EvacError>> = scenarios.par_iter().map(|s| compare(ev, s)).collect();
    let mut rep =
        EvaluatorReport { evaluator: ev, samples: scenarios.len(), max_deviation: 0.0, discrepancies: 0, failures: vec![] };
    for (s, out) in scenarios.iter().zip(outcomes) {
        match out {
            Ok(c) => {
                rep.max_deviation = rep.max_deviation.max(c.deviation());
                rep.discrepancies += usize::from(c.policy.discrepancy.is_some());
                if !c.passed() {
                    rep.failures.push(format!(
                        "{s:?}: policy {} ({}) vs replay {}; {:?}",
                        c.policy.time_from_perimeter, c.policy.case_tag, c.replay.makespan, c.agreement.failures
                    ));
                }
            }
            Err(e) => rep.failures.push(format!("{s:?}: {e}")),
        }
    }
    rep
}
