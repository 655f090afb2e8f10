//! Dense complex linear algebra helpers shared by the builders and propagators.

use nalgebra::{Complex, ComplexField, DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tolerances;

pub type CMatrix<T> = DMatrix<Complex<T>>;
pub type CVector<T> = DVector<Complex<T>>;

/// Eigendecomposition `A = V diag(λ) V†` of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T: Real> {
    pub values: DVector<T>,
    pub vectors: CMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    pub fn new(m: &CMatrix<T>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::InvalidDimension(format!(
                "eigendecomposition of a {}x{} matrix",
                m.nrows(),
                m.ncols()
            )));
        }
        let eig = SymmetricEigen::try_new(m.clone(), T::lit(tolerances::EIG_EPS).max(T::default_epsilon()), tolerances::EIG_MAX_ITER)
            .ok_or(Error::EigFailure)?;
        Ok(Self { values: eig.eigenvalues, vectors: eig.eigenvectors })
    }

    /// `V diag(f(λ)) V†`.
    pub fn map(&self, f: impl Fn(T) -> Complex<T>) -> CMatrix<T> {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            let w = f(self.values[j]);
            scaled.column_mut(j).scale_mut_complex(w);
        }
        scaled * self.vectors.adjoint()
    }

    /// `exp(-i s A)`.
    pub fn exp_i(&self, s: T) -> CMatrix<T> {
        self.map(|lambda| {
            let phase = -lambda * s;
            Complex::new(phase.cos(), phase.sin())
        })
    }
}

trait ScaleComplex<T: Real> {
    fn scale_mut_complex(&mut self, w: Complex<T>);
}

impl<T: Real, S> ScaleComplex<T> for nalgebra::Matrix<Complex<T>, nalgebra::Dyn, nalgebra::U1, S>
where
    S: nalgebra::StorageMut<Complex<T>, nalgebra::Dyn, nalgebra::U1>,
{
    fn scale_mut_complex(&mut self, w: Complex<T>) {
        for z in self.iter_mut() {
            *z *= w;
        }
    }
}

/// `exp(-i s H)` for Hermitian `H` by full eigendecomposition.
pub fn expm_hermitian<T: Real>(h: &CMatrix<T>, s: T) -> Result<CMatrix<T>> {
    Ok(HermitianEigen::new(h)?.exp_i(s))
}

/// Largest entry modulus.
pub fn max_abs<T: Real>(m: &CMatrix<T>) -> T {
    m.iter().fold(T::zero(), |acc, z| acc.max(z.modulus()))
}

pub fn max_abs_diff<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> T {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter().zip(b.iter()).fold(T::zero(), |acc, (x, y)| acc.max((*x - *y).modulus()))
}

/// max |A − A†|.
pub fn hermitian_deviation<T: Real>(m: &CMatrix<T>) -> T {
    let n = m.nrows();
    let mut dev = T::zero();
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).modulus());
        }
    }
    dev
}

/// max |U†U − I|.
pub fn unitarity_deviation<T: Real>(u: &CMatrix<T>) -> T {
    let n = u.nrows();
    let prod = u.adjoint() * u;
    max_abs_diff(&prod, &CMatrix::identity(n, n))
}

/// Kronecker product `A ⊗ B`.
pub fn kron<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    a.kronecker(b)
}

pub fn identity<T: Real>(n: usize) -> CMatrix<T> {
    CMatrix::identity(n, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn exp_of_pauli_x() {
        let sx = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        let t = 0.7;
        let u = expm_hermitian(&sx, t).unwrap();
        let expect = CMatrix::from_row_slice(
            2,
            2,
            &[c(t.cos(), 0.), c(0., -t.sin()), c(0., -t.sin()), c(t.cos(), 0.)],
        );
        assert!(max_abs_diff(&u, &expect) < 1e-14);
        assert!(unitarity_deviation(&u) < 1e-14);
    }

    #[test]
    fn complex_hermitian_reconstruction() {
        let m = CMatrix::from_row_slice(
            3,
            3,
            &[
                c(1.0, 0.0), c(0.5, -0.2), c(0.0, 0.3),
                c(0.5, 0.2), c(-2.0, 0.0), c(0.1, 0.0),
                c(0.0, -0.3), c(0.1, 0.0), c(0.25, 0.0),
            ],
        );
        assert!(hermitian_deviation(&m) < 1e-15);
        let eig = HermitianEigen::new(&m).unwrap();
        let back = eig.map(|l| Complex::new(l, 0.0));
        assert!(max_abs_diff(&back, &m) < 1e-13);
    }

    #[test]
    fn non_square_rejected() {
        let m = CMatrix::<f64>::zeros(2, 3);
        assert!(HermitianEigen::new(&m).is_err());
    }
}
