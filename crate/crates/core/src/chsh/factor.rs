//! Product-eigenvector analysis for 4×4 Hermitian observables on the
//! two-particle space.
//!
//! A dim-4 state factors into a left ⊗ right pair exactly when its 2×2
//! amplitude reshape (row = left index, column = right index) has rank one,
//! i.e. vanishing determinant. For each eigenspace this module decides
//! whether a product vector exists and, where it does, emits an explicit
//! witness pair:
//!
//! * 1-dim eigenspace: the eigenvector itself is tested via |det W|.
//! * 2-dim eigenspace spanned by reshapes W₁, W₂: det(W₁ + tW₂) = 0 is a
//!   quadratic in complex t, so a root (and hence a product vector in the
//!   span) exists unless the polynomial degenerates to a nonzero constant;
//!   that degenerate case is reported, never silently dropped.
//! * higher degeneracy: the same root construction on a 2-dim subspace.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensystem, ComplexMatrix, StateVector};
use crate::scalar::Real;
use num_complex::Complex;

/// Explicit left ⊗ right factorization of a state inside an eigenspace.
#[derive(Debug, Clone)]
pub struct ProductWitness<R: Real> {
    pub left: StateVector<R>,
    pub right: StateVector<R>,
    /// ℓ₂ distance between the witness product state and its projection
    /// onto the numerical eigenspace.
    pub residual: R,
}

impl<R: Real> ProductWitness<R> {
    /// The witness as a dim-4 product state.
    pub fn state(&self) -> StateVector<R> {
        self.left.kron(&self.right)
    }
}

/// Per-eigenspace verdict on the existence of product eigenvectors.
#[derive(Debug, Clone)]
pub struct FactorabilityVerdict<R: Real> {
    pub eigenvalue: R,
    pub eigenspace_dim: usize,
    pub has_product_vector: bool,
    pub witness: Option<ProductWitness<R>>,
    /// Reshape determinant magnitude of the analyzed vector: the eigenvector
    /// itself for 1-dim eigenspaces, the root combination otherwise. Zero up
    /// to roundoff whenever a product vector was found.
    pub det_abs: R,
}

type Mat2<R> = [Complex<R>; 4];

/// Analyzes every eigenspace of a 4×4 Hermitian observable, grouping
/// eigenvalues within the iterative tolerance.
pub fn product_eigenvector_analysis<R: Real>(
    h: &ComplexMatrix<R>,
) -> Result<Vec<FactorabilityVerdict<R>>> {
    if h.rows() != 4 || h.cols() != 4 {
        return Err(Error::DimensionMismatch {
            op: "product_eigenvector_analysis",
            lhs_rows: h.rows(),
            lhs_cols: h.cols(),
            rhs_rows: 4,
            rhs_cols: 4,
        });
    }
    let eig = hermitian_eigensystem(h)?;

    let mut verdicts = Vec::new();
    let mut start = 0;
    while start < 4 {
        let mut end = start + 1;
        while end < 4 && eig.eigenvalues[end] - eig.eigenvalues[end - 1] <= R::tol_iter() {
            end += 1;
        }
        let group: Vec<&StateVector<R>> = eig.eigenvectors[start..end].iter().collect();
        let mean = {
            let sum = eig.eigenvalues[start..end]
                .iter()
                .fold(R::zero(), |a, &b| a + b);
            sum / R::from_usize(end - start).unwrap()
        };
        verdicts.push(analyze_eigenspace(mean, &group));
        start = end;
    }
    Ok(verdicts)
}

fn analyze_eigenspace<R: Real>(
    eigenvalue: R,
    basis: &[&StateVector<R>],
) -> FactorabilityVerdict<R> {
    let dim = basis.len();
    if dim == 1 {
        let w = reshape(basis[0]);
        let d = det2(&w).norm();
        if d <= R::tol_iter() {
            let witness = witness_from_reshape(&w, basis);
            return FactorabilityVerdict {
                eigenvalue,
                eigenspace_dim: dim,
                has_product_vector: true,
                witness: Some(witness),
                det_abs: d,
            };
        }
        return FactorabilityVerdict {
            eigenvalue,
            eigenspace_dim: dim,
            has_product_vector: false,
            witness: None,
            det_abs: d,
        };
    }

    // Degenerate eigenspace: scan 2-dim subspaces spanned by basis pairs.
    let mut best: Option<(ProductWitness<R>, R)> = None;
    for i in 0..dim {
        for j in (i + 1)..dim {
            for w in root_combinations(&reshape(basis[i]), &reshape(basis[j])) {
                let w = normalized(&w);
                let d = det2(&w).norm();
                let witness = witness_from_reshape(&w, basis);
                let better = match &best {
                    None => true,
                    Some((b, _)) => witness.residual < b.residual,
                };
                if better {
                    best = Some((witness, d));
                }
            }
            if best.is_some() && dim > 2 {
                // One subspace suffices for higher degeneracy.
                break;
            }
        }
        if best.is_some() && dim > 2 {
            break;
        }
    }

    match best {
        Some((witness, det_abs)) => FactorabilityVerdict {
            eigenvalue,
            eigenspace_dim: dim,
            has_product_vector: true,
            witness: Some(witness),
            det_abs,
        },
        // det(W₁ + tW₂) degenerated to a nonzero constant in every scanned
        // pair: report the eigenspace as product-free rather than dropping it.
        None => FactorabilityVerdict {
            eigenvalue,
            eigenspace_dim: dim,
            has_product_vector: false,
            witness: None,
            det_abs: det2(&reshape(basis[0])).norm(),
        },
    }
}

/// Reshapes a dim-4 state into its 2×2 amplitude matrix, row = left index.
fn reshape<R: Real>(state: &StateVector<R>) -> Mat2<R> {
    let a = state.amplitudes();
    [a[0], a[1], a[2], a[3]]
}

fn det2<R: Real>(w: &Mat2<R>) -> Complex<R> {
    w[0] * w[3] - w[1] * w[2]
}

/// Scales a reshape to unit Frobenius norm, so determinant magnitudes are
/// comparable against the factorability threshold.
fn normalized<R: Real>(w: &Mat2<R>) -> Mat2<R> {
    let norm = w
        .iter()
        .fold(R::zero(), |acc, z| acc + z.norm_sqr())
        .sqrt();
    let inv = Complex::new(R::one() / norm, R::zero());
    [w[0] * inv, w[1] * inv, w[2] * inv, w[3] * inv]
}

/// Roots t of det(W₁ + tW₂) = 0, returned as the combined reshapes.
fn root_combinations<R: Real>(w1: &Mat2<R>, w2: &Mat2<R>) -> Vec<Mat2<R>> {
    let eps = R::tol_iter();
    let c0 = det2(w1);
    let c1 = w1[0] * w2[3] + w2[0] * w1[3] - w1[1] * w2[2] - w2[1] * w1[2];
    let c2 = det2(w2);

    let combine = |t: Complex<R>| -> Mat2<R> {
        [
            w1[0] + t * w2[0],
            w1[1] + t * w2[1],
            w1[2] + t * w2[2],
            w1[3] + t * w2[3],
        ]
    };

    if c2.norm() > eps {
        let two = Complex::new(R::one() + R::one(), R::zero());
        let four = two * two;
        let disc = (c1 * c1 - four * c2 * c0).sqrt();
        vec![
            combine((-c1 + disc) / (two * c2)),
            combine((-c1 - disc) / (two * c2)),
        ]
    } else if c1.norm() > eps {
        // W₂ itself is already rank one; the linear term yields a second root.
        vec![*w2, combine(-c0 / c1)]
    } else if c0.norm() <= eps {
        // Identically zero determinant: the whole pencil is rank one.
        vec![*w1, *w2]
    } else {
        // det(W₁ + tW₂) ≡ c0 ≠ 0: no root exists in this subspace.
        Vec::new()
    }
}

/// Extracts the rank-one factors of a (near) rank-one reshape and measures
/// how far the resulting product state lies from the eigenspace.
fn witness_from_reshape<R: Real>(w: &Mat2<R>, basis: &[&StateVector<R>]) -> ProductWitness<R> {
    // Pivot row carries the right factor, pivot column the left factor.
    let row_norms = [
        w[0].norm_sqr() + w[1].norm_sqr(),
        w[2].norm_sqr() + w[3].norm_sqr(),
    ];
    let col_norms = [
        w[0].norm_sqr() + w[2].norm_sqr(),
        w[1].norm_sqr() + w[3].norm_sqr(),
    ];
    let i = usize::from(row_norms[1] > row_norms[0]);
    let j = usize::from(col_norms[1] > col_norms[0]);

    let left = StateVector::from_unnormalized(vec![w[j], w[2 + j]])
        .expect("pivot column of a nonzero reshape");
    let right = StateVector::from_unnormalized(vec![w[2 * i], w[2 * i + 1]])
        .expect("pivot row of a nonzero reshape");

    let product = left.kron(&right);
    let residual = eigenspace_residual(&product, basis);
    ProductWitness {
        left,
        right,
        residual,
    }
}

/// ℓ₂ norm of the component of `state` orthogonal to the span of `basis`.
fn eigenspace_residual<R: Real>(state: &StateVector<R>, basis: &[&StateVector<R>]) -> R {
    let zero = Complex::new(R::zero(), R::zero());
    let mut remainder: Vec<Complex<R>> = state.amplitudes().to_vec();
    for v in basis {
        let overlap = v.inner(state).expect("matching dimension");
        if overlap == zero {
            continue;
        }
        for (r, a) in remainder.iter_mut().zip(v.amplitudes()) {
            *r = *r - *a * overlap;
        }
    }
    remainder
        .iter()
        .fold(R::zero(), |acc, z| acc + z.norm_sqr())
        .sqrt()
}
