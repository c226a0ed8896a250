//! Lower bounds for the face-to-face problem and the wireless bound used
//! when the robots start further apart than the exits.

use std::f64::consts::PI;
use std::fmt;

use crate::error::EvacError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundRegime {
    /// `d ≤ π/2`: the triangle, square, pentagon and hexagon constructions.
    Polygon,
    /// `π/2 < d ≤ 2π/3`.
    Triangle,
    /// `d > 2π/3`.
    SinRegime,
    WirelessGap,
}

impl fmt::Display for BoundRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundRegime::Polygon => "polygon",
            BoundRegime::Triangle => "triangle",
            BoundRegime::SinRegime => "sin",
            BoundRegime::WirelessGap => "wireless-gap",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundResult {
    pub value: f64,
    pub regime: BoundRegime,
    pub formula_text: &'static str,
}

/// Known wrinkles in how the bounds are stated. Kept as printed.
pub const SIN_BRANCH_NOTE: &str =
    "the sin(d) branch uses sin(d) although the chord it comes from is 2 sin(d)";
pub const GAP_CHORD_NOTE: &str =
    "the gap bound uses 2 sin(π − ζ/2); the chord of that arc would be 2 sin((π − ζ/2)/2)";

/// Side of the regular polygon whose vertices are spaced `d` apart.
pub fn polygon_side(d: f64) -> f64 {
    2.0 * (d / 2.0).sin()
}

/// Lower bound on the face-to-face evacuation time, center leg included.
pub fn f2f_lower_bound(d: f64) -> Result<BoundResult, EvacError> {
    if !(d > 0.0 && d <= PI) {
        return Err(EvacError::Domain(format!("lower bound needs 0 < d ≤ π, got {d}")));
    }
    Ok(if d > 2.0 * PI / 3.0 {
        BoundResult { value: 1.0 + d.sin(), regime: BoundRegime::SinRegime, formula_text: "1 + sin d" }
    } else if d > PI / 2.0 {
        BoundResult { value: 1.0 + 3f64.sqrt(), regime: BoundRegime::Triangle, formula_text: "1 + √3" }
    } else {
        BoundResult { value: 3.0, regime: BoundRegime::Polygon, formula_text: "3" }
    })
}

/// Wireless bound for `ζ > d`: arc `DB` plus the segment `DB`, as stated.
pub fn wireless_gap_bound(zeta: f64) -> Result<BoundResult, EvacError> {
    if !(zeta > 0.0 && zeta <= PI) {
        return Err(EvacError::Domain(format!("gap bound needs 0 < ζ ≤ π, got {zeta}")));
    }
    let a = PI - zeta / 2.0;
    Ok(BoundResult { value: a + 2.0 * a.sin(), regime: BoundRegime::WirelessGap, formula_text: "π − ζ/2 + 2 sin(π − ζ/2)" })
}
