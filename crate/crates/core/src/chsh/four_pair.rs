//! The four-pair product space: one EPRB pair per CHSH term.
//!
//! Each of the four measured settings gets its own two-particle slot, so the
//! full state lives in a 256-dimensional space and the four per-slot
//! correlation observables mutually commute. Observables embedded here carry
//! two interchangeable evaluation strategies: a factored per-slot path used
//! for speed, and a dense 256×256 materialization kept for cross-validation.

use super::AngleConfig;
use crate::eprb::{
    correlation_observable, embed_left, embed_right, singlet_state, spin_observable, Direction,
};
use crate::error::{Error, Result};
use crate::linalg::{expectation, kron, ComplexMatrix, StateVector};
use crate::scalar::Real;

/// Number of EPRB slots in the product space.
pub const SLOT_COUNT: usize = 4;

/// The product of four singlet pairs: a normalized dim-256 state.
pub fn four_pair_state<R: Real>() -> StateVector<R> {
    let s = singlet_state::<R>();
    s.kron(&s).kron(&s).kron(&s)
}

/// An observable on the four-pair space, stored as one optional 4×4 factor
/// per slot (`None` meaning the identity on that slot).
#[derive(Debug, Clone)]
pub struct EmbeddedObservable<R: Real> {
    slots: [Option<ComplexMatrix<R>>; SLOT_COUNT],
}

impl<R: Real> EmbeddedObservable<R> {
    /// The identity observable.
    pub fn identity() -> Self {
        EmbeddedObservable {
            slots: [None, None, None, None],
        }
    }

    /// Embeds a two-particle observable into slot `set` (1-based), with the
    /// identity everywhere else.
    pub fn in_slot(set: usize, obs4: ComplexMatrix<R>) -> Result<Self> {
        Self::identity().with_slot(set, obs4)
    }

    /// Multiplies a further two-particle observable into slot `set`.
    pub fn with_slot(mut self, set: usize, obs4: ComplexMatrix<R>) -> Result<Self> {
        if !(1..=SLOT_COUNT).contains(&set) {
            return Err(Error::SlotOutOfRange { index: set });
        }
        if obs4.rows() != 4 || obs4.cols() != 4 {
            return Err(Error::DimensionMismatch {
                op: "embed_pair_observable",
                lhs_rows: obs4.rows(),
                lhs_cols: obs4.cols(),
                rhs_rows: 4,
                rhs_cols: 4,
            });
        }
        let idx = set - 1;
        self.slots[idx] = Some(match self.slots[idx].take() {
            None => obs4,
            Some(existing) => existing.matmul(&obs4)?,
        });
        Ok(self)
    }

    /// Materializes the full 256×256 operator, slot 1 index-major.
    pub fn dense(&self) -> ComplexMatrix<R> {
        let id = ComplexMatrix::identity(4);
        let mut out: Option<ComplexMatrix<R>> = None;
        for slot in &self.slots {
            let factor = slot.as_ref().unwrap_or(&id);
            out = Some(match out {
                None => factor.clone(),
                Some(acc) => kron(&acc, factor),
            });
        }
        out.expect("four slots")
    }

    /// Expectation on the four-pair state via per-slot factoring:
    /// `⟨Ψ|M₁⊗…⊗M₄|Ψ⟩ = Π ⟨ψ|Mⱼ|ψ⟩` because both state and operator factor.
    pub fn expectation_factored(&self) -> Result<R> {
        let singlet = singlet_state::<R>();
        let mut acc = R::one();
        for slot in self.slots.iter().flatten() {
            acc = acc * expectation(&singlet, slot)?;
        }
        Ok(acc)
    }

    /// Expectation on the four-pair state through the dense materialization.
    pub fn expectation_dense(&self) -> Result<R> {
        expectation(&four_pair_state(), &self.dense())
    }
}

/// Generalized correlation expectation `E_kl(u,v)`: the left analyzer of set
/// `k` against the right analyzer of set `l` (both 1-based).
///
/// For `k = l` this reproduces the single-pair correlation `−u·v`; for
/// `k ≠ l` the two analyzers act on distinct pairs and the expectation
/// factorizes into two vanishing marginals.
pub fn generalized_correlation<R: Real>(
    k: usize,
    l: usize,
    u: &Direction<R>,
    v: &Direction<R>,
) -> Result<R> {
    let obs = if k == l {
        EmbeddedObservable::in_slot(k, correlation_observable(u, v))?
    } else {
        EmbeddedObservable::in_slot(k, embed_left(&spin_observable(u))?)?
            .with_slot(l, embed_right(&spin_observable(v))?)?
    };
    obs.expectation_factored()
}

/// Weak-objective CHSH value: each term measured on its own slot,
/// `|E₁₁(a,b) − E₂₂(a,b′) + E₃₃(a′,b) + E₄₄(a′,b′)|`; equals
/// `|a·b − a·b′ + a′·b + a′·b′|`, with maximum 2√2.
pub fn s_weak_quantum<R: Real>(cfg: &AngleConfig<R>) -> R {
    let e11 = generalized_correlation(1, 1, &cfg.a, &cfg.b);
    let e22 = generalized_correlation(2, 2, &cfg.a, &cfg.b_prime);
    let e33 = generalized_correlation(3, 3, &cfg.a_prime, &cfg.b);
    let e44 = generalized_correlation(4, 4, &cfg.a_prime, &cfg.b_prime);
    match (e11, e22, e33, e44) {
        (Ok(e11), Ok(e22), Ok(e33), Ok(e44)) => (e11 - e22 + e33 + e44).abs(),
        _ => unreachable!("slot indices are static and observables Hermitian"),
    }
}

/// The weak CHSH combination as one dense 256×256 Hermitian observable: a
/// signed sum of four mutually commuting per-slot correlation observables.
pub fn s_weak_operator_dense<R: Real>(cfg: &AngleConfig<R>) -> ComplexMatrix<R> {
    let term = |set: usize, u: &Direction<R>, v: &Direction<R>| {
        EmbeddedObservable::in_slot(set, correlation_observable(u, v))
            .expect("static slot index")
            .dense()
    };
    let t1 = term(1, &cfg.a, &cfg.b);
    let t2 = term(2, &cfg.a, &cfg.b_prime);
    let t3 = term(3, &cfg.a_prime, &cfg.b);
    let t4 = term(4, &cfg.a_prime, &cfg.b_prime);
    t1.sub(&t2)
        .and_then(|m| m.add(&t3))
        .and_then(|m| m.add(&t4))
        .expect("terms share dimension 256")
}
