use nalgebra::Complex;

use crate::error::{Error, Result};
use crate::hilbert::{Axis, Level, StateVector};
use crate::linalg::CVector;
use crate::scalar::Real;

/// `⟨a|b⟩`.
pub fn overlap<T: Real>(a: &StateVector<T>, b: &StateVector<T>) -> Result<Complex<T>> {
    a.inner(b)
}

/// `|⟨a|b⟩|²`, clamped to [0, 1].
pub fn fidelity<T: Real>(a: &StateVector<T>, b: &StateVector<T>) -> Result<T> {
    Ok(overlap(a, b)?.norm_sqr().min(T::one()).max(T::zero()))
}

/// Population of each electronic level, in level order.
pub fn electronic_populations<T: Real>(psi: &StateVector<T>) -> Vec<T> {
    let mut pops = vec![T::zero(); psi.space().electronic_dim()];
    for (label, p) in psi.probabilities() {
        pops[label.level.index()] += p;
    }
    pops
}

/// Reduced electronic density matrix `ρ_ab = Σ_m ψ_{a,m} ψ*_{b,m}`.
pub fn reduced_electronic_state<T: Real>(psi: &StateVector<T>) -> Vec<Vec<Complex<T>>> {
    let d = psi.space().electronic_dim();
    let m = psi.space().mode_dim();
    let amps = psi.amplitudes();
    let mut rho = vec![vec![Complex::new(T::zero(), T::zero()); d]; d];
    for a in 0..d {
        for b in 0..d {
            let mut acc = Complex::new(T::zero(), T::zero());
            for k in 0..m {
                acc += amps[a * m + k] * amps[b * m + k].conj();
            }
            rho[a][b] = acc;
        }
    }
    rho
}

/// `Tr ρ_e²`; 1 exactly for product states.
pub fn reduced_electronic_purity<T: Real>(psi: &StateVector<T>) -> T {
    reduced_electronic_state(psi)
        .iter()
        .flatten()
        .fold(T::zero(), |acc, z| acc + z.norm_sqr())
}

/// `⟨n_axis⟩`.
pub fn expectation_number<T: Real>(psi: &StateVector<T>, axis: Axis) -> Result<T> {
    psi.space().require_axis(axis)?;
    Ok(psi
        .probabilities()
        .fold(T::zero(), |acc, (l, p)| acc + p * T::from_count(l.occupation(axis))))
}

/// Vibrational amplitudes attached to `level` (not normalised).
pub fn vibrational_component<T: Real>(psi: &StateVector<T>, level: Level) -> Result<CVector<T>> {
    let space = psi.space();
    space.require_level(level)?;
    let m = space.mode_dim();
    let start = level.index() * m;
    Ok(psi.amplitudes().rows(start, m).into_owned())
}

/// `|⟨φ|χ⟩|²` for vibrational vectors of equal length.
pub fn vibrational_fidelity<T: Real>(a: &CVector<T>, b: &CVector<T>) -> Result<T> {
    if a.len() != b.len() {
        return Err(Error::SpaceMismatch);
    }
    Ok(a.dotc(b).norm_sqr())
}
