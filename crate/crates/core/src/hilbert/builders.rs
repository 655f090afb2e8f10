use nalgebra::Complex;

use super::operator::OperatorMatrix;
use super::space::{Axis, Direction, Level, SpaceDescriptor};
use crate::error::Result;
use crate::linalg::CMatrix;
use crate::scalar::{re, Real};

/// `a_axis` embedded in the composite space: `⟨n−1|a|n⟩ = √n`.
pub fn annihilation<T: Real>(space: &SpaceDescriptor, axis: Axis) -> Result<OperatorMatrix<T>> {
    space.require_axis(axis)?;
    let d = space.dim();
    let mut m = CMatrix::zeros(d, d);
    for (col, label) in space.labels().enumerate() {
        let n = label.occupation(axis);
        if n == 0 {
            continue;
        }
        let row = space.index(label.with_occupation(axis, n - 1)).expect("lowered label in range");
        m[(row, col)] = re(T::from_count(n).sqrt());
    }
    Ok(OperatorMatrix::from_raw(*space, m, false))
}

pub fn creation<T: Real>(space: &SpaceDescriptor, axis: Axis) -> Result<OperatorMatrix<T>> {
    Ok(annihilation(space, axis)?.adjoint())
}

/// `n_axis = a† a`, diagonal with entries `0..N`.
pub fn number_op<T: Real>(space: &SpaceDescriptor, axis: Axis) -> Result<OperatorMatrix<T>> {
    space.require_axis(axis)?;
    Ok(OperatorMatrix::diagonal(*space, |l| re(T::from_count(l.occupation(axis)))))
}

/// Dimensionless position quadrature `a + a†` of one axis.
pub fn quadrature<T: Real>(space: &SpaceDescriptor, axis: Axis) -> Result<OperatorMatrix<T>> {
    let a = annihilation(space, axis)?;
    (&a + &a.adjoint()).into_hermitian()
}

/// `a_L = cos θ a_z + sin θ cos φ a_x + sin θ sin φ a_y`.
///
/// Needs all three axes.
pub fn rotated_mode<T: Real>(space: &SpaceDescriptor, theta: T, phi: T) -> Result<OperatorMatrix<T>> {
    space.require_all_axes()?;
    mode_operator(space, Direction::Angles { theta, phi })
}

/// Annihilation operator along `direction`. Axis directions only need that
/// axis; angle directions may have zero weight on absent axes.
pub fn mode_operator<T: Real>(space: &SpaceDescriptor, direction: Direction<T>) -> Result<OperatorMatrix<T>> {
    match direction {
        Direction::Axis(axis) => annihilation(space, axis),
        Direction::Angles { .. } => {
            let weights = direction.unit_vector();
            let mut out = OperatorMatrix::zeros(*space);
            for axis in Axis::ALL {
                let w = weights[axis.index()];
                if w == T::zero() && !space.has_axis(axis) {
                    continue;
                }
                out = &out + &annihilation(space, axis)?.scale(w);
            }
            Ok(out)
        }
    }
}

/// `|to⟩⟨from|` on the electronic factor, identity on the modes.
pub fn electronic_transition<T: Real>(
    space: &SpaceDescriptor,
    from: Level,
    to: Level,
) -> Result<OperatorMatrix<T>> {
    space.require_level(from)?;
    space.require_level(to)?;
    let d = space.dim();
    let mut m = CMatrix::zeros(d, d);
    for (col, label) in space.labels().enumerate() {
        if label.level == from {
            let row = space.index(label.with_level(to)).expect("level present");
            m[(row, col)] = Complex::new(T::one(), T::zero());
        }
    }
    Ok(OperatorMatrix::from_raw(*space, m, from == to))
}

/// `σ_x = |−⟩⟨+| + |+⟩⟨−|`.
pub fn sigma_x<T: Real>(space: &SpaceDescriptor) -> Result<OperatorMatrix<T>> {
    let up = electronic_transition(space, Level::Minus, Level::Plus)?;
    (&up + &up.adjoint()).into_hermitian()
}

/// Projector `|level⟩⟨level|`.
pub fn level_projector<T: Real>(space: &SpaceDescriptor, level: Level) -> Result<OperatorMatrix<T>> {
    electronic_transition(space, level, level)
}

/// Specular reflection of one axis: `diag((−1)^{n_axis})`.
pub fn reflection_operator<T: Real>(space: &SpaceDescriptor, axis: Axis) -> Result<OperatorMatrix<T>> {
    space.require_axis(axis)?;
    Ok(OperatorMatrix::diagonal(*space, |l| re(parity_sign(l.occupation(axis)))))
}

/// Space reversal `Π = Π_x Π_y Π_z`.
pub fn space_reversal<T: Real>(space: &SpaceDescriptor) -> Result<OperatorMatrix<T>> {
    space.require_all_axes()?;
    let px = reflection_operator(space, Axis::X)?;
    let py = reflection_operator(space, Axis::Y)?;
    let pz = reflection_operator(space, Axis::Z)?;
    let mut p = &(&px * &py) * &pz;
    p = p.into_hermitian()?;
    Ok(p)
}

pub(crate) fn parity_sign<T: Real>(n: usize) -> T {
    if n.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}
