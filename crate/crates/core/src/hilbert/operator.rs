use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::Complex;

use super::space::{BasisLabel, SpaceDescriptor};
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::scalar::Real;
use crate::tolerances;

/// Dense operator on a [`SpaceDescriptor`].
///
/// The `hermitian` flag is only set when the entries were checked (or
/// constructed) to satisfy `max |A − A†| < 1e-12`. Arithmetic preserves the
/// flag where the algebra guarantees it (sums, real scaling). Mixing spaces in
/// arithmetic panics, like shape mismatches in `nalgebra`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix<T: Real> {
    space: SpaceDescriptor,
    entries: CMatrix<T>,
    hermitian: bool,
}

impl<T: Real> OperatorMatrix<T> {
    /// Wraps `entries`, verifying dimensions and, when `hermitian` is
    /// requested, the Hermiticity tolerance.
    pub fn new(space: SpaceDescriptor, entries: CMatrix<T>, hermitian: bool) -> Result<Self> {
        let d = space.dim();
        if entries.nrows() != d || entries.ncols() != d {
            return Err(Error::InvalidDimension(format!(
                "matrix is {}x{}, space has dimension {d}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if hermitian {
            let dev = linalg::hermitian_deviation(&entries);
            if dev >= T::tol(tolerances::HERMITIAN) {
                return Err(Error::NotHermitian(dev.as_f64()));
            }
        }
        Ok(OperatorMatrix { space, entries, hermitian })
    }

    pub fn new_hermitian(space: SpaceDescriptor, entries: CMatrix<T>) -> Result<Self> {
        Self::new(space, entries, true)
    }

    pub(crate) fn from_raw(space: SpaceDescriptor, entries: CMatrix<T>, hermitian: bool) -> Self {
        debug_assert_eq!(entries.nrows(), space.dim());
        OperatorMatrix { space, entries, hermitian }
    }

    pub fn zeros(space: SpaceDescriptor) -> Self {
        let d = space.dim();
        Self::from_raw(space, CMatrix::zeros(d, d), true)
    }

    pub fn identity(space: SpaceDescriptor) -> Self {
        let d = space.dim();
        Self::from_raw(space, CMatrix::identity(d, d), true)
    }

    /// Diagonal operator with entries `f(label)`.
    pub fn diagonal(space: SpaceDescriptor, f: impl Fn(BasisLabel) -> Complex<T>) -> Self {
        let d = space.dim();
        let mut m = CMatrix::zeros(d, d);
        let mut real = true;
        for (i, label) in space.labels().enumerate() {
            let v = f(label);
            real &= v.im == T::zero();
            m[(i, i)] = v;
        }
        Self::from_raw(space, m, real)
    }

    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    pub fn entries(&self) -> &CMatrix<T> {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix<T> {
        self.entries
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Matrix element `⟨row|A|col⟩`.
    pub fn element(&self, row: BasisLabel, col: BasisLabel) -> Option<Complex<T>> {
        Some(self.entries[(self.space.index(row)?, self.space.index(col)?)])
    }

    pub fn hermitian_deviation(&self) -> T {
        linalg::hermitian_deviation(&self.entries)
    }

    /// Re-checks the entries and sets the Hermitian flag.
    pub fn into_hermitian(self) -> Result<Self> {
        Self::new(self.space, self.entries, true)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_raw(self.space, self.entries.adjoint(), self.hermitian)
    }

    pub fn scale(&self, s: T) -> Self {
        Self::from_raw(self.space, &self.entries * Complex::new(s, T::zero()), self.hermitian)
    }

    pub fn scale_complex(&self, s: Complex<T>) -> Self {
        let keep = self.hermitian && s.im == T::zero();
        Self::from_raw(self.space, &self.entries * s, keep)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::identity(self.space);
        for _ in 0..k {
            out = &out * self;
        }
        out.hermitian = self.hermitian;
        out
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `{A, B} = AB + BA`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    pub fn max_abs(&self) -> T {
        linalg::max_abs(&self.entries)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.space, other.space, "operators live in different spaces");
        linalg::max_abs_diff(&self.entries, &other.entries)
    }

    pub fn unitarity_deviation(&self) -> T {
        linalg::unitarity_deviation(&self.entries)
    }

    /// `A|ψ⟩` without renormalisation.
    pub fn apply(&self, psi: &StateVector<T>) -> Result<StateVector<T>> {
        if psi.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(StateVector::from_raw(self.space, &self.entries * psi.amplitudes()))
    }

    /// `⟨ψ|A|ψ⟩`.
    pub fn expectation(&self, psi: &StateVector<T>) -> Result<Complex<T>> {
        if psi.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(psi.amplitudes().dotc(&(&self.entries * psi.amplitudes())))
    }
}

impl<'a, T: Real> Add<&'a OperatorMatrix<T>> for &'a OperatorMatrix<T> {
    type Output = OperatorMatrix<T>;
    fn add(self, rhs: &'a OperatorMatrix<T>) -> OperatorMatrix<T> {
        assert_eq!(self.space, rhs.space, "operators live in different spaces");
        OperatorMatrix::from_raw(self.space, &self.entries + &rhs.entries, self.hermitian && rhs.hermitian)
    }
}

impl<'a, T: Real> Sub<&'a OperatorMatrix<T>> for &'a OperatorMatrix<T> {
    type Output = OperatorMatrix<T>;
    fn sub(self, rhs: &'a OperatorMatrix<T>) -> OperatorMatrix<T> {
        assert_eq!(self.space, rhs.space, "operators live in different spaces");
        OperatorMatrix::from_raw(self.space, &self.entries - &rhs.entries, self.hermitian && rhs.hermitian)
    }
}

impl<'a, T: Real> Mul<&'a OperatorMatrix<T>> for &'a OperatorMatrix<T> {
    type Output = OperatorMatrix<T>;
    fn mul(self, rhs: &'a OperatorMatrix<T>) -> OperatorMatrix<T> {
        assert_eq!(self.space, rhs.space, "operators live in different spaces");
        OperatorMatrix::from_raw(self.space, &self.entries * &rhs.entries, false)
    }
}

impl<T: Real> Add for OperatorMatrix<T> {
    type Output = OperatorMatrix<T>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<T: Real> Sub for OperatorMatrix<T> {
    type Output = OperatorMatrix<T>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<T: Real> Mul for OperatorMatrix<T> {
    type Output = OperatorMatrix<T>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<T: Real> Neg for &OperatorMatrix<T> {
    type Output = OperatorMatrix<T>;
    fn neg(self) -> OperatorMatrix<T> {
        OperatorMatrix::from_raw(self.space, -&self.entries, self.hermitian)
    }
}

impl<T: Real> Neg for OperatorMatrix<T> {
    type Output = OperatorMatrix<T>;
    fn neg(self) -> OperatorMatrix<T> {
        -&self
    }
}
