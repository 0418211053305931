//! CHSH operator constructions: the four-term Bell combination on the
//! two-particle space, its product-eigenvector analysis, the four-pair
//! product space with one EPRB slot per measured setting, and the planar
//! angle optimizer.

mod factor;
mod four_pair;
mod optimize;

pub use factor::{product_eigenvector_analysis, FactorabilityVerdict, ProductWitness};
pub use four_pair::{
    four_pair_state, generalized_correlation, s_weak_operator_dense, s_weak_quantum,
    EmbeddedObservable, SLOT_COUNT,
};
pub use optimize::{coarse_grid, optimize_angles, optimize_restricted, planar_config, Objective};

use crate::eprb::{correlation_observable, Direction};
use crate::linalg::{commutator, ComplexMatrix};
use crate::scalar::Real;

/// The CHSH setting quadruple (a, a′, b, b′).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleConfig<R: Real> {
    pub a: Direction<R>,
    pub a_prime: Direction<R>,
    pub b: Direction<R>,
    pub b_prime: Direction<R>,
}

impl<R: Real> AngleConfig<R> {
    pub fn new(
        a: Direction<R>,
        a_prime: Direction<R>,
        b: Direction<R>,
        b_prime: Direction<R>,
    ) -> Self {
        AngleConfig {
            a,
            a_prime,
            b,
            b_prime,
        }
    }

    /// All four settings in the x–z plane, given as angles from +z (radians),
    /// in the order (a, a′, b, b′).
    pub fn from_planar_angles(angles: [R; 4]) -> Self {
        AngleConfig {
            a: Direction::from_planar_angle(angles[0]),
            a_prime: Direction::from_planar_angle(angles[1]),
            b: Direction::from_planar_angle(angles[2]),
            b_prime: Direction::from_planar_angle(angles[3]),
        }
    }

    /// The planar configuration a=0°, a′=90°, b=45°, b′=135°, where the
    /// quantum CHSH value reaches its maximum 2√2.
    pub fn standard_planar() -> Self {
        let half = R::FRAC_PI_2();
        let quarter = R::FRAC_PI_4();
        Self::from_planar_angles([R::zero(), half, quarter, half + quarter])
    }

    /// The four correlation observables in CHSH order:
    /// (a,b), (a,b′), (a′,b), (a′,b′).
    pub fn correlation_observables(&self) -> [ComplexMatrix<R>; 4] {
        [
            correlation_observable(&self.a, &self.b),
            correlation_observable(&self.a, &self.b_prime),
            correlation_observable(&self.a_prime, &self.b),
            correlation_observable(&self.a_prime, &self.b_prime),
        ]
    }

    /// The signed sum of setting dot products whose magnitude the weak CHSH
    /// expectation reproduces: `a·b − a·b′ + a′·b + a′·b′`.
    pub fn dot_combination(&self) -> R {
        self.a.dot(&self.b) - self.a.dot(&self.b_prime)
            + self.a_prime.dot(&self.b)
            + self.a_prime.dot(&self.b_prime)
    }
}

/// The 4×4 Bell combination `O(a,b) − O(a,b′) + O(a′,b) + O(a′,b′)` of the
/// four correlation observables, read as a single operator on one pair.
///
/// It is Hermitian, but its terms do not mutually commute; see
/// [`product_eigenvector_analysis`] for what that does to its eigenvectors.
pub fn bell_operator_strong<R: Real>(cfg: &AngleConfig<R>) -> ComplexMatrix<R> {
    let [o1, o2, o3, o4] = cfg.correlation_observables();
    o1.sub(&o2)
        .and_then(|m| m.add(&o3))
        .and_then(|m| m.add(&o4))
        .expect("correlation observables share dimension 4")
}

/// Max-norms of the six pairwise commutators of the four correlation
/// observables, ordered (1,2), (1,3), (1,4), (2,3), (2,4), (3,4).
pub fn pairwise_commutators<R: Real>(cfg: &AngleConfig<R>) -> [R; 6] {
    let obs = cfg.correlation_observables();
    let mut out = [R::zero(); 6];
    let mut idx = 0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            out[idx] = commutator(&obs[i], &obs[j])
                .expect("same dimension")
                .max_norm();
            idx += 1;
        }
    }
    out
}
