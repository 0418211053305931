//! Cyclic Jacobi eigensolver for dense Hermitian matrices.
//!
//! Every matrix in this crate is small (dimension at most 256) and
//! well-conditioned, which is exactly the regime where Jacobi rotations are
//! simple and accurate: each sweep annihilates every off-diagonal entry once
//! with a unitary plane rotation, and the accumulated rotations are the
//! eigenvectors.

use super::{ComplexMatrix, StateVector};
use crate::error::{Error, Result};
use crate::scalar::Real;
use num_complex::Complex;

/// Largest dimension the solver accepts.
pub const MAX_EIGEN_DIM: usize = 256;

const MAX_SWEEPS: usize = 100;

/// Result of a Hermitian eigendecomposition: eigenvalues ascending, with the
/// matching orthonormal eigenvectors in the same order.
#[derive(Debug, Clone)]
pub struct Eigensystem<R: Real> {
    pub eigenvalues: Vec<R>,
    pub eigenvectors: Vec<StateVector<R>>,
}

/// Diagonalizes a Hermitian matrix.
///
/// The input must be Hermitian within the analytic tolerance; the sweep
/// target for off-diagonal entries is the same tolerance, scaled by the
/// matrix magnitude, which leaves eigenresiduals well inside the iterative
/// tolerance.
pub fn hermitian_eigensystem<R: Real>(h: &ComplexMatrix<R>) -> Result<Eigensystem<R>> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let n = h.rows();
    if n > MAX_EIGEN_DIM {
        return Err(Error::DimensionTooLarge {
            dim: n,
            max: MAX_EIGEN_DIM,
        });
    }
    let dev = h.hermiticity_deviation()?;
    if dev > R::tol_exact() {
        return Err(Error::NotHermitian {
            deviation: dev.to_f64().unwrap_or(f64::NAN),
        });
    }

    let zero = Complex::new(R::zero(), R::zero());
    let one = R::one();
    let mut a: Vec<Complex<R>> = h.entries().to_vec();
    let mut v: Vec<Complex<R>> = ComplexMatrix::<R>::identity(n).entries().to_vec();

    let scale = {
        let m = h.max_norm();
        if m > one {
            m
        } else {
            one
        }
    };
    let target = R::tol_exact() * scale;
    // Rotating a pivot this small cannot move the sweep maximum above the
    // target, so it is skipped.
    let skip = target / R::from_usize(n.max(2)).unwrap();

    if n == 1 {
        return finish(n, a, v);
    }

    for _sweep in 0..MAX_SWEEPS {
        for p in 0..n {
            for q in (p + 1)..n {
                let g = a[p * n + q];
                let m = g.norm();
                if m <= skip {
                    continue;
                }
                let phase = g / Complex::new(m, R::zero());
                let alpha = a[p * n + p].re;
                let beta = a[q * n + q].re;
                let two = R::one() + R::one();
                let zeta = (alpha - beta) / (two * m);
                let sgn = if zeta >= R::zero() { one } else { -one };
                let t = -sgn / (zeta.abs() + (zeta * zeta + one).sqrt());
                let c = one / (t * t + one).sqrt();
                let s = t * c;
                let sp = phase * Complex::new(s, R::zero());
                let spc = phase.conj() * Complex::new(s, R::zero());
                let cr = Complex::new(c, R::zero());

                // Rows p and q of G†A.
                for j in 0..n {
                    let x = a[p * n + j];
                    let y = a[q * n + j];
                    a[p * n + j] = cr * x - sp * y;
                    a[q * n + j] = spc * x + cr * y;
                }
                // Columns p and q of (G†A)G, and the eigenvector columns.
                for i in 0..n {
                    let x = a[i * n + p];
                    let y = a[i * n + q];
                    a[i * n + p] = cr * x - spc * y;
                    a[i * n + q] = sp * x + cr * y;

                    let vx = v[i * n + p];
                    let vy = v[i * n + q];
                    v[i * n + p] = cr * vx - spc * vy;
                    v[i * n + q] = sp * vx + cr * vy;
                }
                // Re-impose the structure the rotation establishes exactly.
                a[p * n + q] = zero;
                a[q * n + p] = zero;
                a[p * n + p] = Complex::new(a[p * n + p].re, R::zero());
                a[q * n + q] = Complex::new(a[q * n + q].re, R::zero());
            }
        }
        // Convergence is judged on the post-sweep matrix: rotations late in
        // a sweep can disturb entries annihilated earlier in it.
        if max_off_diagonal(n, &a) <= target {
            return finish(n, a, v);
        }
    }

    let off = max_off_diagonal(n, &a);
    Err(Error::EigenNoConvergence {
        sweeps: MAX_SWEEPS,
        off: off.to_f64().unwrap_or(f64::NAN),
    })
}

fn max_off_diagonal<R: Real>(n: usize, a: &[Complex<R>]) -> R {
    let mut m = R::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let x = a[i * n + j].norm();
                if x > m {
                    m = x;
                }
            }
        }
    }
    m
}

fn finish<R: Real>(n: usize, a: Vec<Complex<R>>, v: Vec<Complex<R>>) -> Result<Eigensystem<R>> {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[i * n + i]
            .re
            .partial_cmp(&a[j * n + j].re)
            .expect("finite eigenvalues")
    });

    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = Vec::with_capacity(n);
    for &k in &order {
        eigenvalues.push(a[k * n + k].re);
        let column: Vec<Complex<R>> = (0..n).map(|i| v[i * n + k]).collect();
        eigenvectors.push(StateVector::from_unnormalized(column)?);
    }
    Ok(Eigensystem {
        eigenvalues,
        eigenvectors,
    })
}
