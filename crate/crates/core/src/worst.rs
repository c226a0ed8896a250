use std::f64::consts::TAU;

use crate::error::EvacError;
use crate::geometry::ArcPos;
use crate::scenario::{CaseTag, EvacResult};

/// Worst placement of `E1` on an exit grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Worst {
    pub time: f64,
    pub argmax_e1: ArcPos,
    pub case_tag: CaseTag,
}

/// Grid `0, step, 2·step, … < 2π`.
pub fn exit_grid(step: f64) -> Result<impl Iterator<Item = f64>, EvacError> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(EvacError::Config(format!("exit step {step} must be positive")));
    }
    Ok((0..).map(move |k| k as f64 * step).take_while(|e| *e < TAU))
}

/// Maximum of `eval` over the exit grid; the smallest maximizing `e1` wins.
pub fn worst_over_exits<F>(step: f64, eval: F) -> Result<Worst, EvacError>
where
    F: Fn(f64) -> Result<EvacResult, EvacError>,
{
    let mut best: Option<Worst> = None;
    for e1 in exit_grid(step)? {
        let r = eval(e1)?;
        if best.is_none_or(|b| r.time_from_perimeter > b.time) {
            best = Some(Worst { time: r.time_from_perimeter, argmax_e1: ArcPos::new(e1), case_tag: r.case_tag });
        }
    }
    best.ok_or(EvacError::EmptyInput)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_stops_short_of_full_turn() {
        let g: Vec<f64> = exit_grid(1.0).unwrap().collect();
        assert_eq!(g, vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert!(exit_grid(0.0).is_err());
        assert!(exit_grid(-1.0).is_err());
    }
}
