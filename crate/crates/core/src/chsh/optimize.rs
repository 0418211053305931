//! Planar CHSH angle optimization: a coarse deterministic grid over the four
//! in-plane angles followed by coordinate descent with step halving.

use super::four_pair::s_weak_quantum;
use super::AngleConfig;
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};
use rayon::prelude::*;

/// Objective functions the optimizer knows how to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// The weak-objective CHSH expectation magnitude.
    SWeakQuantum,
}

/// Descent terminates once the trial step falls below this (radians).
const MIN_STEP: f64 = 1e-8;

/// A planar configuration from four in-plane angles (a, a′, b, b′).
pub fn planar_config<R: Real>(angles: &[R; 4]) -> AngleConfig<R> {
    AngleConfig::from_planar_angles(*angles)
}

fn evaluate<R: Real>(objective: Objective, angles: &[R; 4]) -> R {
    match objective {
        Objective::SWeakQuantum => s_weak_quantum(&planar_config(angles)),
    }
}

/// Maximizes the objective over all four planar angles: coarse grid at the
/// given resolution, then local refinement. Returns the best configuration
/// and its value.
pub fn optimize_angles<R: Real>(
    objective: Objective,
    resolution: usize,
) -> Result<(AngleConfig<R>, R)> {
    let (angles, value) = optimize_restricted(objective, resolution, [R::zero(); 4], [true; 4])?;
    Ok((planar_config(&angles), value))
}

/// Same as [`optimize_angles`], but only the angles marked `free` move; the
/// rest stay pinned at `base`. Returns planar angles (radians) and the value.
pub fn optimize_restricted<R: Real>(
    objective: Objective,
    resolution: usize,
    base: [R; 4],
    free: [bool; 4],
) -> Result<([R; 4], R)> {
    let (mut angles, _) = coarse_grid(objective, resolution, base, free)?;
    let spacing = R::TAU() / R::from_usize(resolution).unwrap();
    let value = descend(objective, &mut angles, free, spacing);
    Ok((angles, value))
}

/// The coarse stage alone: an exhaustive grid over the free angles with
/// spacing 2π/resolution. The argmax is reduced deterministically, breaking
/// value ties toward the lexicographically smallest angle tuple, so the
/// parallel evaluation order cannot change the result.
pub fn coarse_grid<R: Real>(
    objective: Objective,
    resolution: usize,
    base: [R; 4],
    free: [bool; 4],
) -> Result<([R; 4], R)> {
    if resolution < 8 {
        return Err(Error::ResolutionTooSmall { resolution });
    }
    let free_count = free.iter().filter(|&&f| f).count() as u32;
    let cells = resolution
        .checked_pow(free_count)
        .ok_or(Error::ResolutionTooLarge { resolution })?;
    let spacing = R::TAU() / R::from_usize(resolution).unwrap();

    let decode = |cell: usize| -> [R; 4] {
        let mut angles = base;
        let mut rest = cell;
        // Most significant digit first, so cell order is the lexicographic
        // order of the angle tuple.
        for i in (0..4).rev() {
            if free[i] {
                let digit = rest % resolution;
                rest /= resolution;
                angles[i] = R::from_usize(digit).unwrap() * spacing;
            }
        }
        angles
    };

    let best = (0..cells)
        .into_par_iter()
        .map(|cell| (evaluate(objective, &decode(cell)), cell))
        .reduce(
            || (-R::infinity(), usize::MAX),
            |a, b| {
                if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) {
                    a
                } else {
                    b
                }
            },
        );
    Ok((decode(best.1), best.0))
}

/// Coordinate descent: sweep the free angles, moving by ±step while the
/// objective strictly improves; halve the step when a full sweep stalls.
fn descend<R: Real>(objective: Objective, angles: &mut [R; 4], free: [bool; 4], mut step: R) -> R {
    let min_step = lit::<R>(MIN_STEP);
    let mut best = evaluate(objective, angles);
    while step >= min_step {
        let mut improved = false;
        for i in 0..4 {
            if !free[i] {
                continue;
            }
            loop {
                let mut moved = false;
                for dir in [step, -step] {
                    let mut trial = *angles;
                    trial[i] = trial[i] + dir;
                    let v = evaluate(objective, &trial);
                    if v > best {
                        best = v;
                        *angles = trial;
                        moved = true;
                    }
                }
                if !moved {
                    break;
                }
                improved = true;
            }
        }
        if !improved {
            step = step * lit::<R>(0.5);
        }
    }
    best
}
