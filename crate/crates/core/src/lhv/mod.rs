//! Finite-N local hidden-variable simulation.
//!
//! A model supplies a distribution over complete states λ and deterministic
//! ±1 outcome functions for each analyzer. Estimators accumulate outcome
//! products in integer arithmetic and divide once at the end, which makes
//! the per-term identities (±2 for the strong combination, {0,±2,±4} for
//! the weak one) and the bounds S_strong ≤ 2, S_weak ≤ 4 exact rather than
//! tolerance-based. All randomness flows through counter-based streams, so
//! every estimate is bit-identical across runs and worker-thread counts.

mod models;
mod sweep;

pub use models::{builtin_models, model_by_name, AdversarialPerSet, ConstantOutcomes, SphereSign};
pub use sweep::{convergence_sweep, SweepRow};

use crate::chsh::AngleConfig;
use crate::eprb::Direction;
use crate::error::{Error, Result};
use crate::rng::CounterRng;
use crate::scalar::Real;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Complete state of one particle pair; the payload is a unit 3-vector,
/// which is rich enough for every built-in model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HiddenState<R: Real> {
    pub lambda: Direction<R>,
}

/// A local hidden-variable model: a sampling rule realizing the distribution
/// ρ plus deterministic outcome functions A(u,λ) and B(v,λ) valued in ±1.
///
/// The `*_in_set` variants let a model distinguish the four CHSH ensembles
/// of a weak-objective run; they default to the set-independent outcomes.
pub trait LhvModel<R: Real>: Send + Sync {
    fn name(&self) -> &'static str;

    /// Draws one complete state from ρ.
    fn sample(&self, rng: &mut CounterRng) -> HiddenState<R>;

    /// Left analyzer outcome, exactly −1 or +1.
    fn outcome_left(&self, u: &Direction<R>, lambda: &HiddenState<R>) -> i32;

    /// Right analyzer outcome, exactly −1 or +1.
    fn outcome_right(&self, v: &Direction<R>, lambda: &HiddenState<R>) -> i32;

    fn outcome_left_in_set(&self, _set: usize, u: &Direction<R>, lambda: &HiddenState<R>) -> i32 {
        self.outcome_left(u, lambda)
    }

    fn outcome_right_in_set(&self, _set: usize, v: &Direction<R>, lambda: &HiddenState<R>) -> i32 {
        self.outcome_right(v, lambda)
    }

    /// Whether one λ may be evaluated under several settings at once. Models
    /// that only define per-set outcomes return false and are rejected by
    /// [`s_strong`].
    fn supports_counterfactuals(&self) -> bool {
        true
    }
}

/// Ensemble generation chunk size; each chunk draws from its own
/// counter-based stream keyed by (seed, chunk index).
pub const ENSEMBLE_CHUNK: usize = 1024;

/// A sampled set of N complete states, regenerable bit-identically from
/// (model, n, seed).
#[derive(Debug, Clone)]
pub struct Ensemble<R: Real> {
    states: Vec<HiddenState<R>>,
    seed: u64,
    model_name: &'static str,
}

impl<R: Real> Ensemble<R> {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[HiddenState<R>] {
        &self.states
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn model_name(&self) -> &'static str {
        self.model_name
    }
}

/// Draws an ensemble of `n` states. Chunks are generated on independent
/// substreams, so serial and parallel generation agree bit-exactly and a
/// shorter ensemble is always a prefix of a longer one with the same seed.
pub fn sample_ensemble<R: Real>(
    model: &dyn LhvModel<R>,
    n: usize,
    seed: u64,
) -> Result<Ensemble<R>> {
    if n == 0 {
        return Err(Error::EmptyEnsemble);
    }
    let chunks = n.div_ceil(ENSEMBLE_CHUNK);
    let chunk_vecs: Vec<Vec<HiddenState<R>>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = CounterRng::new(seed, c as u64);
            let count = ENSEMBLE_CHUNK.min(n - c * ENSEMBLE_CHUNK);
            (0..count).map(|_| model.sample(&mut rng)).collect()
        })
        .collect();
    let mut states = Vec::with_capacity(n);
    for v in chunk_vecs {
        states.extend(v);
    }
    Ok(Ensemble {
        states,
        seed,
        model_name: model.name(),
    })
}

/// Which CHSH estimator produced a value: the strong combination evaluates
/// all four settings on one ensemble (N states of freedom), the weak one
/// spends a fresh ensemble per term (4N).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DofNote {
    SingleEnsemble,
    FourEnsembles,
}

impl DofNote {
    pub fn label(&self) -> &'static str {
        match self {
            DofNote::SingleEnsemble => "Nf",
            DofNote::FourEnsembles => "4Nf",
        }
    }
}

/// A finite-N CHSH estimate together with the exact per-term tally.
#[derive(Debug, Clone, PartialEq)]
pub struct ChshEstimate<R: Real> {
    /// |mean of the per-pair terms|.
    pub value: R,
    /// Counts over the admissible per-term values; they sum to `n_pairs`.
    pub per_term_histogram: BTreeMap<i32, u64>,
    pub n_pairs: usize,
    pub dof_note: DofNote,
}

fn pm_one(v: i32) -> Result<i64> {
    match v {
        1 => Ok(1),
        -1 => Ok(-1),
        other => Err(Error::OutcomeNotSign { value: other }),
    }
}

type TermStats = (i64, BTreeMap<i32, u64>);

/// Sums an integer-valued per-index term in parallel. Integer addition is
/// exactly associative, so the reduction is deterministic for any split.
fn term_statistics<F>(n: usize, admissible: &[i32], f: F) -> Result<TermStats>
where
    F: Fn(usize) -> Result<i64> + Sync,
{
    let identity = || (0i64, BTreeMap::<i32, u64>::new());
    let (sum, mut hist) = (0..n)
        .into_par_iter()
        .try_fold(identity, |mut acc, i| {
            let t = f(i)?;
            if !admissible.contains(&(t as i32)) {
                // Unreachable for ±1 outcomes; guards buggy models.
                return Err(Error::OutcomeNotSign { value: t as i32 });
            }
            acc.0 += t;
            *acc.1.entry(t as i32).or_insert(0) += 1;
            Ok(acc)
        })
        .try_reduce(identity, |mut a, b| {
            a.0 += b.0;
            for (k, v) in b.1 {
                *a.1.entry(k).or_insert(0) += v;
            }
            Ok(a)
        })?;
    for &k in admissible {
        hist.entry(k).or_insert(0);
    }
    Ok((sum, hist))
}

fn ratio<R: Real>(sum: i64, n: usize) -> R {
    R::from_i64(sum).unwrap() / R::from_usize(n).unwrap()
}

/// Mean value of joint spin measurements `(1/N) Σ A(u,λᵢ) B(v,λᵢ)` over one
/// ensemble; always within [−1, 1].
pub fn mean_correlation<R: Real>(
    ens: &Ensemble<R>,
    model: &dyn LhvModel<R>,
    u: &Direction<R>,
    v: &Direction<R>,
) -> Result<R> {
    let states = ens.states();
    let (sum, _) = term_statistics(states.len(), &[-1, 1], |i| {
        let lambda = &states[i];
        Ok(pm_one(model.outcome_left(u, lambda))? * pm_one(model.outcome_right(v, lambda))?)
    })?;
    Ok(ratio(sum, states.len()))
}

/// Strong-objective CHSH estimate: all four settings evaluated
/// counterfactually on the same ensemble.
///
/// Each per-pair term factors as `A(a,λ)[B(b,λ) − B(b′,λ)] +
/// A(a′,λ)[B(b,λ) + B(b′,λ)]` and is exactly ±2, so the estimate can never
/// exceed 2. Models without counterfactuals are rejected.
pub fn s_strong<R: Real>(
    ens: &Ensemble<R>,
    model: &dyn LhvModel<R>,
    cfg: &AngleConfig<R>,
) -> Result<ChshEstimate<R>> {
    if !model.supports_counterfactuals() {
        return Err(Error::CounterfactualUnsupported {
            model: model.name().to_string(),
        });
    }
    let states = ens.states();
    let (sum, hist) = term_statistics(states.len(), &[-2, 2], |i| {
        let lambda = &states[i];
        let a1 = pm_one(model.outcome_left(&cfg.a, lambda))?;
        let a2 = pm_one(model.outcome_left(&cfg.a_prime, lambda))?;
        let b1 = pm_one(model.outcome_right(&cfg.b, lambda))?;
        let b2 = pm_one(model.outcome_right(&cfg.b_prime, lambda))?;
        Ok(a1 * (b1 - b2) + a2 * (b1 + b2))
    })?;
    Ok(ChshEstimate {
        value: ratio::<R>(sum, states.len()).abs(),
        per_term_histogram: hist,
        n_pairs: states.len(),
        dof_note: DofNote::SingleEnsemble,
    })
}

/// Weak-objective CHSH estimate: each term measured on its own ensemble.
///
/// The i-th tuple contributes `A₁B₁ − A₂B₂ + A₃B₃ + A₄B₄` over the four
/// ensembles, a value in {−4,−2,0,+2,+4}, so the estimate can never exceed 4.
pub fn s_weak_lhv<R: Real>(
    ensembles: [&Ensemble<R>; 4],
    model: &dyn LhvModel<R>,
    cfg: &AngleConfig<R>,
) -> Result<ChshEstimate<R>> {
    let n = ensembles[0].len();
    if ensembles.iter().any(|e| e.len() != n) {
        return Err(Error::EnsembleLengthMismatch {
            lens: [
                ensembles[0].len(),
                ensembles[1].len(),
                ensembles[2].len(),
                ensembles[3].len(),
            ],
        });
    }
    let settings: [(&Direction<R>, &Direction<R>); 4] = [
        (&cfg.a, &cfg.b),
        (&cfg.a, &cfg.b_prime),
        (&cfg.a_prime, &cfg.b),
        (&cfg.a_prime, &cfg.b_prime),
    ];
    let signs: [i64; 4] = [1, -1, 1, 1];
    let (sum, hist) = term_statistics(n, &[-4, -2, 0, 2, 4], |i| {
        let mut term = 0i64;
        for set in 0..4 {
            let lambda = &ensembles[set].states()[i];
            let (u, v) = settings[set];
            let a = pm_one(model.outcome_left_in_set(set + 1, u, lambda))?;
            let b = pm_one(model.outcome_right_in_set(set + 1, v, lambda))?;
            term += signs[set] * a * b;
        }
        Ok(term)
    })?;
    Ok(ChshEstimate {
        value: ratio::<R>(sum, n).abs(),
        per_term_histogram: hist,
        n_pairs: n,
        dof_note: DofNote::FourEnsembles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn standard() -> AngleConfig<f64> {
        AngleConfig::standard_planar()
    }

    #[test]
    fn ensembles_regenerate_bit_identically() {
        let model = SphereSign;
        let a = sample_ensemble::<f64>(&model, 5000, 42).unwrap();
        let b = sample_ensemble::<f64>(&model, 5000, 42).unwrap();
        assert_eq!(a.states(), b.states());
        let c = sample_ensemble::<f64>(&model, 5000, 43).unwrap();
        assert_ne!(a.states(), c.states());
    }

    #[test]
    fn shorter_ensembles_are_prefixes() {
        let model = SphereSign;
        let long = sample_ensemble::<f64>(&model, 3000, 7).unwrap();
        let short = sample_ensemble::<f64>(&model, 2500, 7).unwrap();
        assert_eq!(&long.states()[..2500], short.states());
    }

    #[test]
    fn empty_ensembles_are_rejected() {
        assert!(matches!(
            sample_ensemble::<f64>(&SphereSign, 0, 1),
            Err(Error::EmptyEnsemble)
        ));
    }

    #[test]
    fn single_state_ensemble_histogram() {
        let model = SphereSign;
        let ens = sample_ensemble::<f64>(&model, 1, 9).unwrap();
        let est = s_strong(&ens, &model, &standard()).unwrap();
        assert_eq!(est.n_pairs, 1);
        let total: u64 = est.per_term_histogram.values().sum();
        assert_eq!(total, 1);
    }

    #[test]
    fn sphere_samples_are_isotropic() {
        // 1/√n scaling puts the mean direction norm near 0.003 at n = 1e5;
        // 0.02 is a hard 6σ ceiling.
        let ens = sample_ensemble::<f64>(&SphereSign, 100_000, 42).unwrap();
        let (mut x, mut y, mut z) = (0.0, 0.0, 0.0);
        for s in ens.states() {
            x += s.lambda.x();
            y += s.lambda.y();
            z += s.lambda.z();
        }
        let n = ens.len() as f64;
        let norm = ((x / n).powi(2) + (y / n).powi(2) + (z / n).powi(2)).sqrt();
        assert!(norm <= 0.02, "mean direction norm {norm}");
    }

    #[test]
    fn constant_model_mean_correlation_is_minus_one() {
        let model = ConstantOutcomes;
        let ens = sample_ensemble::<f64>(&model, 100, 1).unwrap();
        let u = Direction::new(0.0, 0.0, 1.0).unwrap();
        let m = mean_correlation(&ens, &model, &u, &u).unwrap();
        assert_eq!(m, -1.0);
    }

    #[test]
    fn sphere_sign_perfect_anticorrelation() {
        // A(u,λ) and B(u,λ) are opposite signs by construction, including on
        // the sign(0) tie, so M(u,u) = −1 exactly for every ensemble.
        let model = SphereSign;
        let ens = sample_ensemble::<f64>(&model, 10_000, 3).unwrap();
        let mut rng = CounterRng::new(99, 0);
        for _ in 0..5 {
            let u = Direction::<f64>::random(&mut rng);
            assert_eq!(mean_correlation(&ens, &model, &u, &u).unwrap(), -1.0);
        }
    }

    #[test]
    fn sphere_sign_matches_solid_angle_law() {
        // Solid-angle oracle: M(u,v) = −1 + 2θ/π for λ uniform on the sphere.
        let model = SphereSign;
        let n = 1_000_000;
        let ens = sample_ensemble::<f64>(&model, n, 42).unwrap();
        let u = Direction::new(0.0, 0.0, 1.0).unwrap();
        for (theta, expected) in [
            (std::f64::consts::FRAC_PI_2, 0.0),
            (std::f64::consts::FRAC_PI_4, -0.5),
            (3.0 * std::f64::consts::FRAC_PI_4, 0.5),
        ] {
            let v = Direction::from_planar_angle(theta);
            let m = mean_correlation(&ens, &model, &u, &v).unwrap();
            assert!(
                (m - expected).abs() <= 0.003,
                "M({theta}) = {m}, expected {expected}"
            );
        }
    }

    #[test]
    fn strong_terms_are_plus_minus_two_and_bounded() {
        let model = SphereSign;
        let ens = sample_ensemble::<f64>(&model, 10_000, 11).unwrap();
        let mut rng = CounterRng::new(13, 0);
        for _ in 0..10 {
            let cfg = AngleConfig::new(
                Direction::random(&mut rng),
                Direction::random(&mut rng),
                Direction::random(&mut rng),
                Direction::random(&mut rng),
            );
            let est = s_strong(&ens, &model, &cfg).unwrap();
            assert!(est.per_term_histogram.keys().all(|k| *k == -2 || *k == 2));
            assert_eq!(est.per_term_histogram.values().sum::<u64>(), 10_000);
            assert!(est.value <= 2.0);
            assert_eq!(est.dof_note, DofNote::SingleEnsemble);
        }
    }

    #[test]
    fn sphere_sign_saturates_the_strong_bound_at_the_standard_config() {
        // At a = 0°, a′ = 90°, b = 45°, b′ = 135° the factored term equals −2
        // for every λ (the piecewise-linear correlation law saturates the
        // bound there), so S_strong = 2 with zero variance.
        let model = SphereSign;
        let ens = sample_ensemble::<f64>(&model, 10_000, 5).unwrap();
        let est = s_strong(&ens, &model, &standard()).unwrap();
        assert_eq!(est.value, 2.0);
        assert_eq!(est.per_term_histogram[&-2], 10_000);
        assert_eq!(est.per_term_histogram[&2], 0);
    }

    #[test]
    fn strong_estimate_matches_solid_angle_prediction_at_generic_angles() {
        // Independent oracle: S = |Σ ± M(θ)| with M(θ) = −1 + 2θ/π.
        let model = SphereSign;
        let n = 250_000;
        let ens = sample_ensemble::<f64>(&model, n, 21).unwrap();
        let angles = [0.2f64, 1.9, 0.7, 2.4];
        let cfg = AngleConfig::from_planar_angles(angles);
        let m = |t: f64| -1.0 + 2.0 * t / std::f64::consts::PI;
        let predicted = (m((angles[0] - angles[2]).abs()) - m((angles[0] - angles[3]).abs())
            + m((angles[1] - angles[2]).abs())
            + m((angles[1] - angles[3]).abs()))
        .abs();
        let est = s_strong(&ens, &model, &cfg).unwrap();
        assert!(
            (est.value - predicted).abs() <= 0.01,
            "estimate {} vs oracle {predicted}",
            est.value
        );
    }

    #[test]
    fn constant_model_strong_value_is_exactly_two() {
        let model = ConstantOutcomes;
        let ens = sample_ensemble::<f64>(&model, 1234, 8).unwrap();
        let mut rng = CounterRng::new(15, 0);
        for _ in 0..5 {
            let cfg = AngleConfig::new(
                Direction::random(&mut rng),
                Direction::random(&mut rng),
                Direction::random(&mut rng),
                Direction::random(&mut rng),
            );
            let est = s_strong(&ens, &model, &cfg).unwrap();
            assert_eq!(est.value, 2.0);
        }
    }

    #[test]
    fn weak_terms_stay_in_the_admissible_set_and_bound() {
        let model = SphereSign;
        let ens: Vec<Ensemble<f64>> = (0..4)
            .map(|set| sample_ensemble(&model, 20_000, 100 + set).unwrap())
            .collect();
        let est = s_weak_lhv([&ens[0], &ens[1], &ens[2], &ens[3]], &model, &standard()).unwrap();
        assert!(est
            .per_term_histogram
            .keys()
            .all(|k| [-4, -2, 0, 2, 4].contains(k)));
        assert_eq!(est.per_term_histogram.values().sum::<u64>(), 20_000);
        assert!(est.value <= 4.0);
        assert_eq!(est.dof_note, DofNote::FourEnsembles);
    }

    #[test]
    fn weak_value_concentrates_near_the_strong_value() {
        let model = SphereSign;
        let ens: Vec<Ensemble<f64>> = (0..4)
            .map(|set| sample_ensemble(&model, 1_000_000, 4200 + set).unwrap())
            .collect();
        let est = s_weak_lhv([&ens[0], &ens[1], &ens[2], &ens[3]], &model, &standard()).unwrap();
        assert!((est.value - 2.0).abs() <= 0.01, "weak value {}", est.value);
    }

    #[test]
    fn adversarial_model_attains_the_weak_bound_and_rejects_strong() {
        let model = AdversarialPerSet;
        let ens: Vec<Ensemble<f64>> = (0..4)
            .map(|set| sample_ensemble(&model, 500, set as u64).unwrap())
            .collect();
        let est = s_weak_lhv([&ens[0], &ens[1], &ens[2], &ens[3]], &model, &standard()).unwrap();
        assert_eq!(est.value, 4.0);
        assert_eq!(est.per_term_histogram[&4], 500);
        assert!(matches!(
            s_strong(&ens[0], &model, &standard()),
            Err(Error::CounterfactualUnsupported { .. })
        ));
    }

    #[test]
    fn mismatched_ensemble_lengths_are_rejected() {
        let model = SphereSign;
        let a = sample_ensemble::<f64>(&model, 100, 1).unwrap();
        let b = sample_ensemble::<f64>(&model, 101, 2).unwrap();
        assert!(matches!(
            s_weak_lhv([&a, &a, &a, &b], &model, &standard()),
            Err(Error::EnsembleLengthMismatch { .. })
        ));
    }
}
