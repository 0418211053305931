//! Single-pair EPRB objects: spin observables, their left/right embeddings
//! into the two-particle product space, the singlet state, and the spin
//! correlation expectation.
//!
//! The product basis is ordered (|++⟩, |+−⟩, |−+⟩, |−−⟩) with the left
//! factor index-major; every module in the crate shares this convention.

use crate::error::{Error, Result};
use crate::linalg::{expectation, kron, ComplexMatrix, StateVector};
use crate::rng::CounterRng;
use crate::scalar::{lit, Real};
use num_complex::Complex;

/// Unit vector in 3-space, the argument of every spin observable.
///
/// Inputs whose norm deviates from unity by more than the iterative
/// tolerance are rejected rather than renormalized, to surface caller bugs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction<R: Real> {
    x: R,
    y: R,
    z: R,
}

impl<R: Real> Direction<R> {
    pub fn new(x: R, y: R, z: R) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::NonFinite { what: "direction" });
        }
        let norm = (x * x + y * y + z * z).sqrt();
        if (norm - R::one()).abs() > R::tol_iter() {
            return Err(Error::NotUnitDirection {
                norm: norm.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Direction { x, y, z })
    }

    /// Direction at angle `theta` (radians) from +z inside the x–z plane.
    pub fn from_planar_angle(theta: R) -> Self {
        Direction {
            x: theta.sin(),
            y: R::zero(),
            z: theta.cos(),
        }
    }

    /// Direction at polar angle `theta` and azimuth `phi` (radians).
    pub fn from_spherical(theta: R, phi: R) -> Self {
        Direction {
            x: theta.sin() * phi.cos(),
            y: theta.sin() * phi.sin(),
            z: theta.cos(),
        }
    }

    /// Uniform direction on the unit sphere.
    pub fn random(rng: &mut CounterRng) -> Self {
        let z = lit::<R>(rng.next_signed());
        let phi = lit::<R>(rng.next_f64()) * R::TAU();
        let s = (R::one() - z * z).max(R::zero()).sqrt();
        Direction {
            x: s * phi.cos(),
            y: s * phi.sin(),
            z,
        }
    }

    pub fn x(&self) -> R {
        self.x
    }

    pub fn y(&self) -> R {
        self.y
    }

    pub fn z(&self) -> R {
        self.z
    }

    pub fn dot(&self, other: &Self) -> R {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Angle between two directions, in `[0, π]`.
    pub fn angle_to(&self, other: &Self) -> R {
        self.dot(other).min(R::one()).max(-R::one()).acos()
    }
}

/// The Pauli matrices.
pub mod pauli {
    use super::*;

    pub fn sigma_x<R: Real>() -> ComplexMatrix<R> {
        let z = R::zero();
        let o = R::one();
        ComplexMatrix::from_entries(
            2,
            2,
            vec![
                Complex::new(z, z),
                Complex::new(o, z),
                Complex::new(o, z),
                Complex::new(z, z),
            ],
        )
        .expect("static matrix")
    }

    pub fn sigma_y<R: Real>() -> ComplexMatrix<R> {
        let z = R::zero();
        let o = R::one();
        ComplexMatrix::from_entries(
            2,
            2,
            vec![
                Complex::new(z, z),
                Complex::new(z, -o),
                Complex::new(z, o),
                Complex::new(z, z),
            ],
        )
        .expect("static matrix")
    }

    pub fn sigma_z<R: Real>() -> ComplexMatrix<R> {
        let z = R::zero();
        let o = R::one();
        ComplexMatrix::from_entries(
            2,
            2,
            vec![
                Complex::new(o, z),
                Complex::new(z, z),
                Complex::new(z, z),
                Complex::new(-o, z),
            ],
        )
        .expect("static matrix")
    }
}

/// Spin observable `σ·u` along a unit direction (ħ/2 ≡ 1): traceless,
/// Hermitian, eigenvalues ±1.
pub fn spin_observable<R: Real>(u: &Direction<R>) -> ComplexMatrix<R> {
    let z = R::zero();
    ComplexMatrix::from_entries(
        2,
        2,
        vec![
            Complex::new(u.z(), z),
            Complex::new(u.x(), -u.y()),
            Complex::new(u.x(), u.y()),
            Complex::new(-u.z(), z),
        ],
    )
    .expect("finite entries from a valid direction")
}

/// The singlet state (|+−⟩ − |−+⟩)/√2.
pub fn singlet_state<R: Real>() -> StateVector<R> {
    let z = Complex::new(R::zero(), R::zero());
    let a = Complex::new(R::FRAC_1_SQRT_2(), R::zero());
    StateVector::new(vec![z, a, -a, z]).expect("singlet amplitudes are normalized")
}

/// Embeds a one-particle observable on the left: `A ⊗ 1`.
pub fn embed_left<R: Real>(obs2: &ComplexMatrix<R>) -> Result<ComplexMatrix<R>> {
    ensure_2x2(obs2)?;
    Ok(kron(obs2, &ComplexMatrix::identity(2)))
}

/// Embeds a one-particle observable on the right: `1 ⊗ B`.
pub fn embed_right<R: Real>(obs2: &ComplexMatrix<R>) -> Result<ComplexMatrix<R>> {
    ensure_2x2(obs2)?;
    Ok(kron(&ComplexMatrix::identity(2), obs2))
}

fn ensure_2x2<R: Real>(m: &ComplexMatrix<R>) -> Result<()> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::DimensionMismatch {
            op: "embed",
            lhs_rows: m.rows(),
            lhs_cols: m.cols(),
            rhs_rows: 2,
            rhs_cols: 2,
        });
    }
    Ok(())
}

/// Spin correlation observable `(σ_L·u)(σ_R·v) = σ·u ⊗ σ·v` for the joint
/// measurement of both analyzers.
pub fn correlation_observable<R: Real>(u: &Direction<R>, v: &Direction<R>) -> ComplexMatrix<R> {
    kron(&spin_observable(u), &spin_observable(v))
}

/// Singlet expectation of the spin correlation observable; equals `−u·v`.
pub fn correlation_e<R: Real>(u: &Direction<R>, v: &Direction<R>) -> R {
    expectation(&singlet_state(), &correlation_observable(u, v))
        .expect("correlation observable is Hermitian with matching dimension")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, hermitian_eigensystem};
    use crate::scalar::lit;

    #[test]
    fn basis_directions_give_pauli_matrices() {
        let uz = Direction::new(0.0, 0.0, 1.0).unwrap();
        let ux = Direction::new(1.0, 0.0, 0.0).unwrap();
        assert_eq!(spin_observable(&uz), pauli::sigma_z::<f64>());
        assert_eq!(spin_observable(&ux), pauli::sigma_x::<f64>());
    }

    #[test]
    fn spin_observable_squares_to_identity() {
        // (σ·u)² = 1 by direct 2x2 multiplication, hence eigenvalues ±1.
        let mut rng = CounterRng::new(3, 0);
        for _ in 0..50 {
            let u = Direction::<f64>::random(&mut rng);
            let s = spin_observable(&u);
            let squared = s.matmul(&s).unwrap();
            let diff = squared.sub(&ComplexMatrix::identity(2)).unwrap().max_norm();
            assert!(diff <= 1e-12);
            let eig = hermitian_eigensystem(&s).unwrap();
            assert!((eig.eigenvalues[0] + 1.0).abs() <= 1e-12);
            assert!((eig.eigenvalues[1] - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn non_unit_directions_are_rejected() {
        assert!(matches!(
            Direction::new(1.0, 1.0, 0.0),
            Err(Error::NotUnitDirection { .. })
        ));
        assert!(Direction::new(1.0 + 2e-9, 0.0, 0.0).is_err());
        assert!(Direction::new(1.0 + 2e-10, 0.0, 0.0).is_ok());
    }

    #[test]
    fn embeddings_reject_wrong_dimensions() {
        assert!(embed_left(&ComplexMatrix::<f64>::identity(4)).is_err());
        assert!(embed_right(&ComplexMatrix::<f64>::identity(3)).is_err());
    }

    #[test]
    fn embeddings_of_identity_and_sigma_z() {
        let i4 = ComplexMatrix::<f64>::identity(4);
        assert_eq!(embed_left(&ComplexMatrix::identity(2)).unwrap(), i4);
        let left_z = embed_left(&pauli::sigma_z::<f64>()).unwrap();
        for (i, want) in [1.0, 1.0, -1.0, -1.0].iter().enumerate() {
            assert!((left_z.get(i, i).re - want).abs() == 0.0);
        }
    }

    #[test]
    fn left_and_right_embeddings_commute() {
        let mut rng = CounterRng::new(5, 0);
        for _ in 0..50 {
            let u = Direction::<f64>::random(&mut rng);
            let v = Direction::<f64>::random(&mut rng);
            let l = embed_left(&spin_observable(&u)).unwrap();
            let r = embed_right(&spin_observable(&v)).unwrap();
            assert!(commutator(&l, &r).unwrap().max_norm() <= 1e-15);
        }
    }

    #[test]
    fn embedded_observables_in_different_local_bases_do_not_commute() {
        let mut rng = CounterRng::new(9, 0);
        let u = Direction::<f64>::random(&mut rng);
        let v = Direction::<f64>::random(&mut rng);
        let v2 = Direction::<f64>::random(&mut rng);
        let o1 = correlation_observable(&u, &v);
        let o2 = correlation_observable(&u, &v2);
        assert!(commutator(&o1, &o2).unwrap().max_norm() > 1e-9);
    }

    #[test]
    fn correlation_observable_basis_case() {
        let uz = Direction::new(0.0, 0.0, 1.0).unwrap();
        let o = correlation_observable(&uz, &uz);
        assert_eq!(o, kron(&pauli::sigma_z::<f64>(), &pauli::sigma_z::<f64>()));
        assert!(o.is_hermitian());
    }

    #[test]
    fn singlet_amplitudes() {
        let s = singlet_state::<f64>();
        let a = s.amplitudes();
        assert!(a[0].norm() == 0.0 && a[3].norm() == 0.0);
        assert!((a[1].re - std::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-15);
        assert!((a[2].re + std::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-15);
    }

    #[test]
    fn correlation_law_examples() {
        let u = Direction::<f64>::new(0.0, 0.0, 1.0).unwrap();
        assert!((correlation_e(&u, &u) + 1.0).abs() <= 1e-12);
        let perp = Direction::new(1.0, 0.0, 0.0).unwrap();
        assert!(correlation_e(&u, &perp).abs() <= 1e-12);
        let diag = Direction::from_planar_angle(std::f64::consts::FRAC_PI_4);
        assert!((correlation_e(&u, &diag) + std::f64::consts::SQRT_2 / 2.0).abs() <= 1e-12);
    }

    #[test]
    fn marginals_vanish_on_the_singlet() {
        let mut rng = CounterRng::new(12, 0);
        let singlet = singlet_state::<f64>();
        for _ in 0..200 {
            let u = Direction::<f64>::random(&mut rng);
            let left = expectation(&singlet, &embed_left(&spin_observable(&u)).unwrap()).unwrap();
            let right = expectation(&singlet, &embed_right(&spin_observable(&u)).unwrap()).unwrap();
            assert!(left.abs() <= 1e-12);
            assert!(right.abs() <= 1e-12);
        }
    }

    #[test]
    fn correlation_law_holds_in_f32() {
        let u = Direction::<f32>::from_planar_angle(lit(0.3));
        let v = Direction::<f32>::from_planar_angle(lit(1.1));
        assert!((correlation_e(&u, &v) + u.dot(&v)).abs() <= 1e-5);
    }
}
