//! Convergence sweeps: how fast finite-ensemble weak CHSH estimates
//! concentrate as N grows.

use super::{s_weak_lhv, sample_ensemble, LhvModel};
use crate::chsh::AngleConfig;
use crate::error::{Error, Result};
use crate::rng::derive_seed;
use crate::scalar::Real;
use rayon::prelude::*;

/// Statistics of the weak CHSH estimate over `reps` repetitions at one N.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow<R: Real> {
    pub n: usize,
    pub mean: R,
    pub max: R,
    pub stddev: R,
}

/// Runs `reps` independent weak-objective estimates for each ensemble size
/// and reports mean, max and sample standard deviation per size.
///
/// Each (size, repetition, set) triple draws from its own derived stream, so
/// the table is deterministic in the top-level seed. Rows come out ordered
/// by ascending N.
pub fn convergence_sweep<R: Real>(
    model: &dyn LhvModel<R>,
    cfg: &AngleConfig<R>,
    n_values: &[usize],
    reps: usize,
    seed: u64,
) -> Result<Vec<SweepRow<R>>> {
    if n_values.is_empty() {
        return Err(Error::EmptySweep);
    }
    if reps < 2 {
        return Err(Error::TooFewReps { reps });
    }
    let mut sizes = n_values.to_vec();
    sizes.sort_unstable();

    let mut rows = Vec::with_capacity(sizes.len());
    for &n in &sizes {
        if n == 0 {
            return Err(Error::EmptyEnsemble);
        }
        let values: Vec<R> = (0..reps)
            .into_par_iter()
            .map(|rep| {
                let ens: Vec<_> = (0..4u64)
                    .map(|set| {
                        let s = derive_seed(seed, &[n as u64, rep as u64, set]);
                        sample_ensemble(model, n, s)
                    })
                    .collect::<Result<_>>()?;
                let est = s_weak_lhv([&ens[0], &ens[1], &ens[2], &ens[3]], model, cfg)?;
                Ok(est.value)
            })
            .collect::<Result<_>>()?;

        let reps_r = R::from_usize(reps).unwrap();
        let mean = values.iter().fold(R::zero(), |a, &b| a + b) / reps_r;
        let max = values
            .iter()
            .fold(-R::infinity(), |a, &b| if b > a { b } else { a });
        let var = values
            .iter()
            .fold(R::zero(), |a, &b| a + (b - mean) * (b - mean))
            / (reps_r - R::one());
        rows.push(SweepRow {
            n,
            mean,
            max,
            stddev: var.sqrt(),
        });
    }
    Ok(rows)
}
