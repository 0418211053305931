//! Dense complex linear algebra sized for 2-, 4- and 256-dimensional spaces.
//!
//! Storage is row-major and every value is immutable after construction, so
//! all operations are pure functions that are safe to share across threads.

mod eigen;

pub use eigen::{hermitian_eigensystem, Eigensystem, MAX_EIGEN_DIM};

use crate::error::{Error, Result};
use crate::scalar::Real;
use num_complex::Complex;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<R: Real> {
    rows: usize,
    cols: usize,
    entries: Vec<Complex<R>>,
}

impl<R: Real> ComplexMatrix<R> {
    /// Builds a matrix from row-major entries, rejecting length mismatches
    /// and non-finite values.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Complex<R>>) -> Result<Self> {
        if entries.len() != rows * cols || rows == 0 || cols == 0 {
            return Err(Error::EntryCount {
                rows,
                cols,
                len: entries.len(),
            });
        }
        if !entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite {
                what: "matrix entry",
            });
        }
        Ok(ComplexMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            entries: vec![Complex::new(R::zero(), R::zero()); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Complex::new(R::one(), R::zero());
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Complex<R>,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ComplexMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<R> {
        self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Complex<R>] {
        &self.entries
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Self,
        op: &'static str,
        f: impl Fn(Complex<R>, Complex<R>) -> Complex<R>,
    ) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op,
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: other.rows,
                rhs_cols: other.cols,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scaled(&self, factor: Complex<R>) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scaled_real(&self, factor: R) -> Self {
        self.scaled(Complex::new(factor, R::zero()))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: other.rows,
                rhs_cols: other.cols,
            });
        }
        let zero = Complex::new(R::zero(), R::zero());
        let mut entries = vec![zero; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.entries[i * self.cols + k];
                if aik == zero {
                    continue;
                }
                for j in 0..other.cols {
                    entries[i * other.cols + j] =
                        entries[i * other.cols + j] + aik * other.entries[k * other.cols + j];
                }
            }
        }
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    /// Applies the matrix to raw amplitudes.
    pub fn matvec(&self, v: &[Complex<R>]) -> Result<Vec<Complex<R>>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                op: "matvec",
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: v.len(),
                rhs_cols: 1,
            });
        }
        let zero = Complex::new(R::zero(), R::zero());
        let out = self
            .entries
            .chunks(self.cols)
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(zero, |acc, (a, x)| acc + *a * *x)
            })
            .collect();
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Largest entry magnitude.
    pub fn max_norm(&self) -> R {
        self.entries
            .iter()
            .map(|z| z.norm())
            .fold(R::zero(), |a, b| if b > a { b } else { a })
    }

    /// `max |M - M†|` over entries; zero for exactly Hermitian matrices.
    pub fn hermiticity_deviation(&self) -> Result<R> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut dev = R::zero();
        for i in 0..self.rows {
            for j in 0..=i {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                if d > dev {
                    dev = d;
                }
            }
        }
        Ok(dev)
    }

    pub fn is_hermitian(&self) -> bool {
        matches!(self.hermiticity_deviation(), Ok(dev) if dev <= R::tol_exact())
    }

    fn ensure_hermitian(&self) -> Result<()> {
        let dev = self.hermiticity_deviation()?;
        if dev > R::tol_exact() {
            return Err(Error::NotHermitian {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }
}

/// Normalized complex state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<R: Real> {
    amplitudes: Vec<Complex<R>>,
}

impl<R: Real> StateVector<R> {
    /// Builds a state from amplitudes that must already have unit norm.
    pub fn new(amplitudes: Vec<Complex<R>>) -> Result<Self> {
        if !amplitudes
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            return Err(Error::NonFinite {
                what: "state amplitude",
            });
        }
        let norm = norm2(&amplitudes);
        if (norm - R::one()).abs() > R::tol_exact() {
            return Err(Error::NotNormalized {
                norm: norm.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(StateVector { amplitudes })
    }

    /// Normalizes arbitrary amplitudes; rejects the zero vector.
    pub fn from_unnormalized(amplitudes: Vec<Complex<R>>) -> Result<Self> {
        let norm = norm2(&amplitudes);
        if !norm.is_finite() || norm <= R::tol_exact() {
            return Err(Error::NotNormalized {
                norm: norm.to_f64().unwrap_or(f64::NAN),
            });
        }
        let inv = Complex::new(R::one() / norm, R::zero());
        StateVector::new(amplitudes.into_iter().map(|z| z * inv).collect())
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<R>] {
        &self.amplitudes
    }

    pub fn norm(&self) -> R {
        norm2(&self.amplitudes)
    }

    /// Inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex<R>> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                op: "inner",
                lhs_rows: self.dim(),
                lhs_cols: 1,
                rhs_rows: other.dim(),
                rhs_cols: 1,
            });
        }
        let zero = Complex::new(R::zero(), R::zero());
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(zero, |acc, (a, b)| acc + a.conj() * *b))
    }

    /// Tensor product `|self⟩ ⊗ |other⟩`; the left factor is index-major.
    pub fn kron(&self, other: &Self) -> Self {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(*a * *b);
            }
        }
        StateVector { amplitudes }
    }
}

fn norm2<R: Real>(v: &[Complex<R>]) -> R {
    v.iter().fold(R::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
}

/// Kronecker product `A ⊗ B`: entry `((i·rows_B + k), (j·cols_B + l))` is
/// `A[i,j] · B[k,l]`, so the left factor owns the major index.
pub fn kron<R: Real>(a: &ComplexMatrix<R>, b: &ComplexMatrix<R>) -> ComplexMatrix<R> {
    let rows = a.rows() * b.rows();
    let cols = a.cols() * b.cols();
    let zero = Complex::new(R::zero(), R::zero());
    let mut entries = vec![zero; rows * cols];
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a.get(i, j);
            if aij == zero {
                continue;
            }
            for k in 0..b.rows() {
                let row = i * b.rows() + k;
                for l in 0..b.cols() {
                    let col = j * b.cols() + l;
                    entries[row * cols + col] = aij * b.get(k, l);
                }
            }
        }
    }
    ComplexMatrix {
        rows,
        cols,
        entries,
    }
}

/// `AB - BA` for square matrices of equal dimension.
pub fn commutator<R: Real>(a: &ComplexMatrix<R>, b: &ComplexMatrix<R>) -> Result<ComplexMatrix<R>> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            op: "commutator",
            lhs_rows: a.rows(),
            lhs_cols: a.cols(),
            rhs_rows: b.rows(),
            rhs_cols: b.cols(),
        });
    }
    a.matmul(b)?.sub(&b.matmul(a)?)
}

/// Expectation value `⟨φ|A|φ⟩` of a Hermitian observable.
///
/// The imaginary residue of the sesquilinear form is checked against the
/// analytic tolerance before being discarded.
pub fn expectation<R: Real>(state: &StateVector<R>, obs: &ComplexMatrix<R>) -> Result<R> {
    if obs.rows() != state.dim() || obs.cols() != state.dim() {
        return Err(Error::DimensionMismatch {
            op: "expectation",
            lhs_rows: obs.rows(),
            lhs_cols: obs.cols(),
            rhs_rows: state.dim(),
            rhs_cols: 1,
        });
    }
    obs.ensure_hermitian()?;
    let applied = obs.matvec(state.amplitudes())?;
    let zero = Complex::new(R::zero(), R::zero());
    let z = state
        .amplitudes()
        .iter()
        .zip(&applied)
        .fold(zero, |acc, (a, b)| acc + a.conj() * *b);
    if z.im.abs() > R::tol_exact() {
        return Err(Error::ImaginaryResidue {
            imag: z.im.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(z.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eprb::pauli;

    type M = ComplexMatrix<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn assert_close(a: &M, b: &M, tol: f64) {
        assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let d = (a.get(i, j) - b.get(i, j)).norm();
                assert!(d <= tol, "entry ({i},{j}) differs by {d}");
            }
        }
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = M::identity(2);
        assert_close(&kron(&i2, &i2), &M::identity(4), 0.0);
    }

    #[test]
    fn kron_sigma_z_identity_is_diagonal() {
        let expect = M::from_entries(
            4,
            4,
            vec![
                c(1.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(-1.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(-1.0, 0.0),
            ],
        )
        .unwrap();
        assert_close(
            &kron(&pauli::sigma_z::<f64>(), &M::identity(2)),
            &expect,
            0.0,
        );
    }

    #[test]
    fn kron_shape_law() {
        let a = M::zeros(2, 2);
        let b = M::zeros(2, 2);
        let k = kron(&a, &b);
        assert_eq!((k.rows(), k.cols()), (4, 4));
    }

    #[test]
    fn commutator_with_self_vanishes() {
        let x = pauli::sigma_x::<f64>();
        let z = commutator(&x, &x).unwrap();
        assert_eq!(z.max_norm(), 0.0);
    }

    #[test]
    fn commutator_sigma_x_sigma_y_is_2i_sigma_z() {
        // Direct 2x2 multiplication oracle, written out by hand.
        let xy = M::from_entries(
            2,
            2,
            vec![c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)],
        )
        .unwrap();
        let yx = M::from_entries(
            2,
            2,
            vec![c(0.0, -1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)],
        )
        .unwrap();
        let oracle = xy.sub(&yx).unwrap();
        let got = commutator(&pauli::sigma_x::<f64>(), &pauli::sigma_y::<f64>()).unwrap();
        assert_close(&got, &oracle, 0.0);
        let two_i_sigma_z = pauli::sigma_z::<f64>().scaled(c(0.0, 2.0));
        assert_close(&got, &two_i_sigma_z, 0.0);
    }

    #[test]
    fn commutator_rejects_dimension_mismatch() {
        let a = M::identity(2);
        let b = M::identity(4);
        assert!(matches!(
            commutator(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn expectation_of_eigenstate() {
        let plus = StateVector::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let val = expectation(&plus, &pauli::sigma_z::<f64>()).unwrap();
        assert!((val - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn expectation_rejects_dimension_mismatch() {
        let plus = StateVector::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(matches!(
            expectation(&plus, &M::identity(4)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn expectation_rejects_non_hermitian() {
        let m = M::from_entries(
            2,
            2,
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        let plus = StateVector::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(matches!(
            expectation(&plus, &m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn state_norm_is_validated() {
        assert!(matches!(
            StateVector::new(vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::NotNormalized { .. })
        ));
        let s = StateVector::from_unnormalized(vec![c(3.0, 0.0), c(4.0, 0.0)]).unwrap();
        assert!((s.norm() - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn matrix_entry_validation() {
        assert!(matches!(
            M::from_entries(2, 2, vec![c(0.0, 0.0); 3]),
            Err(Error::EntryCount { .. })
        ));
        assert!(matches!(
            M::from_entries(1, 1, vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn mixed_product_spot_check() {
        let a = pauli::sigma_x::<f64>();
        let b = pauli::sigma_y::<f64>();
        let lhs = kron(&a, &b).matmul(&kron(&b, &a)).unwrap();
        let rhs = kron(&a.matmul(&b).unwrap(), &b.matmul(&a).unwrap());
        assert_close(&lhs, &rhs, 1e-15);
    }
}
