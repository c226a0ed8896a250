//! Wireless model: the finder announces its exit at once and leaves; the
//! receiver, standing at `D`, picks a chord route.
//!
//! All formulas below are in the finder's frame: the finder searched
//! counterclockwise from `B = ζ/2` and found `X` after `x`, the receiver is
//! at `D = −ζ/2 − x`. Candidates are `E1' = X − d` and `E2' = X + d`.

use std::f64::consts::TAU;

use crate::discovery::{canonical, other_exit};
use crate::error::EvacError;
use crate::geometry::{chord, ArcPos, ANGLE_TOL, TIE_TOL};
use crate::scenario::{CaseTag, EvacResult, Model, Scenario, ZetaPolicy};
use crate::worst::{worst_over_exits, Worst};

/// Where a candidate sits relative to what has been searched at time `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// Between `B` and `X`, searched by the finder.
    XB,
    /// The gap between the two starting points; nobody searched it.
    BC,
    /// Between `C` and `D`, searched by the receiver.
    CD,
    /// Between `D` and `X` the long way round; nobody searched it.
    Far,
}

impl Region {
    pub fn is_open(self) -> bool {
        matches!(self, Region::BC | Region::Far)
    }
}

/// Region of `E1'`, from `d` against the searched arc lengths.
pub fn classify_e1(x: f64, d: f64, zeta: f64) -> Region {
    if d <= x + ANGLE_TOL {
        Region::XB
    } else if d < x + zeta - ANGLE_TOL {
        Region::BC
    } else if d <= 2.0 * x + zeta + ANGLE_TOL {
        Region::CD
    } else {
        Region::Far
    }
}

/// Region of `E2'`. The far arc from `D` to `X` has length `2π − 2x − ζ`.
pub fn classify_e2(x: f64, d: f64, zeta: f64) -> Region {
    let far = TAU - 2.0 * x - zeta;
    if d < far - ANGLE_TOL {
        Region::Far
    } else if d <= far + x + ANGLE_TOL {
        Region::CD
    } else if d < far + x + zeta - ANGLE_TOL {
        Region::BC
    } else {
        Region::XB
    }
}

fn check(s: &Scenario, labeled: bool) -> Result<(), EvacError> {
    if s.model() != Model::Wireless {
        return Err(EvacError::WrongEvaluator("wireless evaluator on a face-to-face scenario".into()));
    }
    if s.is_labeled() != labeled {
        return Err(EvacError::WrongEvaluator(format!(
            "scenario labeled = {}, evaluator expects {labeled}",
            s.is_labeled()
        )));
    }
    if s.zeta() > s.d() {
        return Err(EvacError::UnsupportedRegime { zeta: s.zeta(), d: s.d() });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Route {
    ToX,
    ViaE1,
    ViaE2,
}

pub fn eval_wireless_unlabeled(s: &Scenario) -> Result<EvacResult, EvacError> {
    check(s, false)?;
    let (c, disc) = canonical(s);
    let (x, d, zeta) = (disc.x, c.d(), c.zeta());
    if disc.simultaneous {
        return Ok(EvacResult::new(disc.finder, x, x, x, CaseTag::W0).simultaneous());
    }
    let found = ArcPos::new(zeta / 2.0 + x);
    let other = other_exit(&c, disc.exit);
    let other_is_e1 = other.same_as(found.offset(d, crate::geometry::Direction::Cw));

    // chord lengths from D
    let to_x = 2.0 * (x + zeta / 2.0).sin();
    let to_e1 = 2.0 * (x + zeta / 2.0 - d / 2.0).sin().abs();
    let to_e2 = 2.0 * (x + zeta / 2.0 + d / 2.0).sin().abs();
    let between = 2.0 * (std::f64::consts::PI - d).sin();

    if d <= ANGLE_TOL {
        return Ok(EvacResult::new(disc.finder, x, x + to_x, x, CaseTag::W3b));
    }
    let r1 = classify_e1(x, d, zeta);
    let r2 = classify_e2(x, d, zeta);
    let coincident = (std::f64::consts::PI - d).abs() <= ANGLE_TOL;

    let (tag, leg) = match (r1.is_open(), r2.is_open()) {
        (true, true) => {
            let tag = match (r1, r2) {
                (Region::Far, Region::Far) => CaseTag::W1a,
                (Region::BC, Region::BC) => CaseTag::W1c,
                _ => CaseTag::W1b,
            };
            let leg = if coincident {
                if to_e1 < to_x {
                    to_e1
                } else {
                    to_x
                }
            } else {
                let options = [(Route::ToX, to_x), (Route::ViaE1, to_e1 + between), (Route::ViaE2, to_e2 + between)];
                let (route, _) = options
                    .into_iter()
                    .fold((Route::ToX, f64::INFINITY), |best, o| if o.1 < best.1 - TIE_TOL { o } else { best });
                match route {
                    Route::ToX => to_x,
                    Route::ViaE1 if other_is_e1 => to_e1,
                    Route::ViaE1 => to_e1 + between,
                    Route::ViaE2 if !other_is_e1 => to_e2,
                    Route::ViaE2 => to_e2 + between,
                }
            };
            (tag, leg)
        }
        (true, false) => (CaseTag::W2, to_x.min(to_e1)),
        (false, true) => {
            let tag = if r1 == Region::CD { CaseTag::W3a } else { CaseTag::W3b };
            (tag, to_x.min(to_e2))
        }
        (false, false) => {
            return Err(EvacError::Numeric(format!(
                "both candidates searched at x = {x}, d = {d}, zeta = {zeta}"
            )))
        }
    };
    Ok(EvacResult::new(disc.finder, x, x + leg, x, tag))
}

pub fn eval_wireless_labeled(s: &Scenario) -> Result<EvacResult, EvacError> {
    check(s, true)?;
    let (c, disc) = canonical(s);
    let (x, zeta) = (disc.x, c.zeta());
    if disc.simultaneous {
        return Ok(EvacResult::new(disc.finder, x, x, x, CaseTag::W0).simultaneous());
    }
    let other = other_exit(&c, disc.exit);
    let to_x = 2.0 * (x + zeta / 2.0).sin();
    // angle from D counterclockwise to the other exit
    let spread = (other.theta() + zeta / 2.0 + x).rem_euclid(TAU);
    let to_other = chord(spread);
    let in_gap = {
        let t = ArcPos::new(other.theta() + zeta / 2.0).theta();
        t > ANGLE_TOL && t < zeta - ANGLE_TOL
    };
    let tag = if in_gap { CaseTag::WlL2 } else { CaseTag::WlL1 };
    Ok(EvacResult::new(disc.finder, x, x + to_x.min(to_other), x, tag))
}

pub fn eval_wireless(s: &Scenario) -> Result<EvacResult, EvacError> {
    if s.is_labeled() {
        eval_wireless_labeled(s)
    } else {
        eval_wireless_unlabeled(s)
    }
}

pub fn worst_wireless(d: f64, zeta_policy: ZetaPolicy, labeled: bool, exit_step: f64) -> Result<Worst, EvacError> {
    let zeta = zeta_policy.resolve(d);
    worst_over_exits(exit_step, |e1| {
        let s = Scenario::new(Model::Wireless, labeled, d, zeta, e1)?;
        eval_wireless(&s)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    #[test]
    fn table_scenario() {
        let s = Scenario::wireless(PI, 0.0, PI / 4.0).unwrap();
        let r = eval_wireless_unlabeled(&s).unwrap();
        assert!((r.time_from_perimeter - (PI / 4.0 + SQRT2)).abs() < 1e-9);
        assert_eq!(r.case_tag, CaseTag::W1a);
        assert!((r.discovery_arc_x - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn exit_at_start() {
        let s = Scenario::wireless(PI / 2.0, 0.0, 0.0).unwrap();
        let r = eval_wireless_unlabeled(&s).unwrap();
        assert_eq!(r.time_from_perimeter, 0.0);
        assert!(r.simultaneous);
    }

    #[test]
    fn coincident_exits_match_single_exit() {
        let x = 2.0 * PI / 3.0;
        let s = Scenario::wireless(0.0, 0.0, x).unwrap();
        let r = eval_wireless_unlabeled(&s).unwrap();
        assert!((r.time_from_perimeter - (x + 3f64.sqrt())).abs() < 1e-9);
    }

    #[test]
    fn labeled_examples() {
        let s = Scenario::wireless(PI, 0.0, PI / 4.0).unwrap().labeled();
        let r = eval_wireless_labeled(&s).unwrap();
        assert!((r.time_from_perimeter - (PI / 4.0 + SQRT2)).abs() < 1e-9);

        let s = Scenario::wireless(1.3, 0.0, 0.0).unwrap().labeled();
        assert_eq!(eval_wireless_labeled(&s).unwrap().time_from_perimeter, 0.0);

        let s = Scenario::wireless(2.0, 1.0, 1.3).unwrap().labeled();
        let r = eval_wireless_labeled(&s).unwrap();
        let want = 0.8 + 2.0 * 2.3f64.sin();
        assert!((want - 2.2917).abs() < 1e-3);
        assert!((r.time_from_perimeter - want).abs() < 1e-9, "{r:?}");
        assert_eq!(r.case_tag, CaseTag::WlL1);
    }

    #[test]
    fn rejects_wide_start() {
        let err = Scenario::wireless(1.0, 2.0, 0.0).unwrap_err();
        assert!(matches!(err, EvacError::UnsupportedRegime { .. }));
        let f = Scenario::face_to_face(1.0, 0.0, 0.0).unwrap();
        assert!(matches!(eval_wireless_unlabeled(&f), Err(EvacError::WrongEvaluator(_))));
    }

    #[test]
    fn regions_partition_the_circle() {
        // walking d up from 0, each candidate visits its regions in order
        for &(x, zeta) in &[(0.3, 0.0), (0.3, 0.5), (1.2, 0.9), (2.0, 0.1)] {
            let mut seen1 = vec![];
            let mut seen2 = vec![];
            for i in 0..=3000 {
                let d = PI * i as f64 / 3000.0;
                let a = classify_e1(x, d, zeta);
                let b = classify_e2(x, d, zeta);
                if seen1.last() != Some(&a) {
                    seen1.push(a);
                }
                if seen2.last() != Some(&b) {
                    seen2.push(b);
                }
            }
            let order1 = [Region::XB, Region::BC, Region::CD, Region::Far];
            let order2 = [Region::Far, Region::CD, Region::BC, Region::XB];
            assert!(seen1.windows(2).all(|w| {
                order1.iter().position(|r| *r == w[0]) < order1.iter().position(|r| *r == w[1])
            }));
            assert!(seen2.windows(2).all(|w| {
                order2.iter().position(|r| *r == w[0]) < order2.iter().position(|r| *r == w[1])
            }));
        }
    }
}
