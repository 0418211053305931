//! Built-in local hidden-variable models.

use super::{HiddenState, LhvModel};
use crate::eprb::Direction;
use crate::error::{Error, Result};
use crate::rng::CounterRng;
use crate::scalar::Real;

/// Sign convention for outcome functions: ties go to +1 so outcomes stay in
/// {−1, +1} on the measure-zero boundary.
fn sign_plus<R: Real>(x: R) -> i32 {
    if x >= R::zero() {
        1
    } else {
        -1
    }
}

fn north_pole<R: Real>() -> HiddenState<R> {
    HiddenState {
        lambda: Direction::new(R::zero(), R::zero(), R::one()).expect("unit vector"),
    }
}

/// λ uniform on the unit sphere, A = sign(u·λ), B = −sign(v·λ).
///
/// Reproduces perfect anticorrelation M(u,u) = −1 and the solid-angle law
/// M(u,v) = −1 + 2θ/π.
#[derive(Debug, Clone, Copy, Default)]
pub struct SphereSign;

impl<R: Real> LhvModel<R> for SphereSign {
    fn name(&self) -> &'static str {
        "sphere-sign"
    }

    fn sample(&self, rng: &mut CounterRng) -> HiddenState<R> {
        HiddenState {
            lambda: Direction::random(rng),
        }
    }

    fn outcome_left(&self, u: &Direction<R>, lambda: &HiddenState<R>) -> i32 {
        sign_plus(u.dot(&lambda.lambda))
    }

    fn outcome_right(&self, v: &Direction<R>, lambda: &HiddenState<R>) -> i32 {
        -sign_plus(v.dot(&lambda.lambda))
    }
}

/// Setting-independent outcomes A ≡ +1, B ≡ −1; the degenerate baseline.
#[derive(Debug, Clone, Copy, Default)]
pub struct ConstantOutcomes;

impl<R: Real> LhvModel<R> for ConstantOutcomes {
    fn name(&self) -> &'static str {
        "constant"
    }

    fn sample(&self, _rng: &mut CounterRng) -> HiddenState<R> {
        north_pole()
    }

    fn outcome_left(&self, _u: &Direction<R>, _lambda: &HiddenState<R>) -> i32 {
        1
    }

    fn outcome_right(&self, _v: &Direction<R>, _lambda: &HiddenState<R>) -> i32 {
        -1
    }
}

/// Weak-objective-only model: each of the four ensembles gets its own
/// constant outcome pair, with the set-2 sign flipped so every signed term
/// contributes +1 and the weak combination reaches its extreme value 4.
///
/// It defines no single-set counterfactual, so strong-objective evaluation
/// rejects it.
#[derive(Debug, Clone, Copy, Default)]
pub struct AdversarialPerSet;

impl<R: Real> LhvModel<R> for AdversarialPerSet {
    fn name(&self) -> &'static str {
        "adversarial-per-set"
    }

    fn sample(&self, _rng: &mut CounterRng) -> HiddenState<R> {
        north_pole()
    }

    fn outcome_left(&self, _u: &Direction<R>, _lambda: &HiddenState<R>) -> i32 {
        1
    }

    fn outcome_right(&self, _v: &Direction<R>, _lambda: &HiddenState<R>) -> i32 {
        1
    }

    fn outcome_right_in_set(&self, set: usize, _v: &Direction<R>, _lambda: &HiddenState<R>) -> i32 {
        if set == 2 {
            -1
        } else {
            1
        }
    }

    fn supports_counterfactuals(&self) -> bool {
        false
    }
}

/// All built-in models.
pub fn builtin_models<R: Real>() -> Vec<Box<dyn LhvModel<R>>> {
    vec![
        Box::new(SphereSign),
        Box::new(ConstantOutcomes),
        Box::new(AdversarialPerSet),
    ]
}

/// Looks a built-in model up by its registry name.
pub fn model_by_name<R: Real>(name: &str) -> Result<Box<dyn LhvModel<R>>> {
    builtin_models()
        .into_iter()
        .find(|m| m.name() == name)
        .ok_or_else(|| Error::UnknownModel {
            name: name.to_string(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_contains_the_three_models() {
        let names: Vec<&str> = builtin_models::<f64>().iter().map(|m| m.name()).collect();
        assert_eq!(
            names,
            vec!["sphere-sign", "constant", "adversarial-per-set"]
        );
        assert!(model_by_name::<f64>("sphere-sign").is_ok());
        assert!(matches!(
            model_by_name::<f64>("nonlocal"),
            Err(Error::UnknownModel { .. })
        ));
    }

    #[test]
    fn sign_zero_is_plus_one() {
        assert_eq!(sign_plus(0.0f64), 1);
        assert_eq!(sign_plus(-0.0f64), 1);
        assert_eq!(sign_plus(-1e-300f64), -1);
    }

    #[test]
    fn adversarial_per_set_outcomes() {
        let m = AdversarialPerSet;
        let lambda = north_pole::<f64>();
        let u = Direction::new(1.0, 0.0, 0.0).unwrap();
        for set in 1..=4 {
            let a = LhvModel::<f64>::outcome_left_in_set(&m, set, &u, &lambda);
            let b = LhvModel::<f64>::outcome_right_in_set(&m, set, &u, &lambda);
            let product = a * b;
            // Signed by the CHSH pattern (+,−,+,+) every set contributes +1.
            let sign = if set == 2 { -1 } else { 1 };
            assert_eq!(sign * product, 1);
        }
        assert!(!LhvModel::<f64>::supports_counterfactuals(&m));
    }
}
