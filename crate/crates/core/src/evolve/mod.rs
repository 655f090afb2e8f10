//! Time evolution and observables.
//!
//! Constant Hamiltonians are propagated exactly through a full Hermitian
//! eigendecomposition. Time-dependent ones use a fourth-order
//! commutator-free Magnus stepper whose two sub-exponentials are again exact,
//! so every step is unitary up to rounding. Norms are never renormalised:
//! drift beyond the tolerance is returned as [`Error::NormDrift`].

mod magnus;
mod observables;
mod record;

pub use magnus::*;
pub use observables::*;
pub use record::*;

use crate::error::{Error, Result};
use crate::hilbert::{OperatorMatrix, SpaceDescriptor, StateVector};
use crate::linalg::{CVector, HermitianEigen};
use crate::scalar::{cplx, Real};
use crate::tolerances;

/// Eigendecomposition of a constant Hamiltonian, reusable for many times
/// and states.
#[derive(Clone, Debug)]
pub struct Spectral<T: Real> {
    space: SpaceDescriptor,
    eig: HermitianEigen<T>,
}

impl<T: Real> Spectral<T> {
    pub fn new(h: &OperatorMatrix<T>) -> Result<Self> {
        if !h.is_hermitian() {
            return Err(Error::NotHermitian(h.hermitian_deviation().as_f64()));
        }
        Ok(Spectral { space: *h.space(), eig: HermitianEigen::new(h.entries())? })
    }

    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    pub fn eigenvalues(&self) -> impl Iterator<Item = T> + '_ {
        self.eig.values.iter().copied()
    }

    /// `U(t) = V e^{−iΛt} V†`.
    pub fn propagator(&self, t: T) -> OperatorMatrix<T> {
        OperatorMatrix::from_raw(self.space, self.eig.exp_i(t), false)
    }

    /// `U(t)|ψ⟩` without forming `U`.
    pub fn evolve(&self, psi: &StateVector<T>, t: T) -> Result<StateVector<T>> {
        if psi.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        let v = &self.eig.vectors;
        let mut coeffs: CVector<T> = v.adjoint() * psi.amplitudes();
        for (c, lambda) in coeffs.iter_mut().zip(self.eig.values.iter()) {
            let phase = -*lambda * t;
            *c *= cplx(phase.cos(), phase.sin());
        }
        let out = StateVector::from_raw(self.space, v * coeffs);
        check_norm(&out, T::tol(tolerances::NORM_DRIFT))?;
        Ok(out)
    }
}

pub(crate) fn check_norm<T: Real>(psi: &StateVector<T>, tolerance: T) -> Result<T> {
    let drift = (psi.norm() - T::one()).abs();
    if drift > tolerance {
        return Err(Error::NormDrift(drift.as_f64()));
    }
    Ok(drift)
}

/// `exp(−iHt)` by exact eigendecomposition. `H` must carry the Hermitian flag.
pub fn propagator<T: Real>(h: &OperatorMatrix<T>, t: T) -> Result<OperatorMatrix<T>> {
    Ok(Spectral::new(h)?.propagator(t))
}

/// `exp(−iHt)|ψ₀⟩`.
pub fn evolve_const<T: Real>(h: &OperatorMatrix<T>, t: T, psi0: &StateVector<T>) -> Result<StateVector<T>> {
    if psi0.space() != h.space() {
        return Err(Error::SpaceMismatch);
    }
    Spectral::new(h)?.evolve(psi0, t)
}

/// Samples `exp(−iHt)|ψ₀⟩` at `samples + 1` equally spaced times in `[0, t_final]`.
pub fn sample_trajectory<T: Real>(
    h: &OperatorMatrix<T>,
    psi0: &StateVector<T>,
    t_final: T,
    samples: usize,
) -> Result<EvolutionRecord<T>> {
    if psi0.space() != h.space() {
        return Err(Error::SpaceMismatch);
    }
    let spec = Spectral::new(h)?;
    let mut record = EvolutionRecord::new(*h.space());
    record.push(T::zero(), psi0.clone(), magnus::observe(psi0));
    for k in 1..=samples {
        let t = t_final * T::from_count(k) / T::from_count(samples);
        let psi = spec.evolve(psi0, t)?;
        let values = magnus::observe(&psi);
        record.push(t, psi, values);
    }
    Ok(record)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use nalgebra::Complex;

    use super::*;
    use crate::hilbert::{
        fock_state, number_op, random_state, random_state_where, reflection_operator, sigma_x, Axis, BasisLabel,
        Cutoffs, Level,
    };
    use crate::model::parity_hamiltonian;

    fn zspace(n: usize) -> SpaceDescriptor {
        SpaceDescriptor::new(2, Cutoffs::z(n)).unwrap()
    }

    fn ground_random(s: &SpaceDescriptor, seed: u64) -> StateVector<f64> {
        random_state_where(s, seed, |l| l.level == Level::Minus).unwrap()
    }

    #[test]
    fn zero_time_is_identity() {
        let s = zspace(6);
        let h = parity_hamiltonian(0.4, &s, Axis::Z).unwrap();
        let u = propagator(&h, 0.0).unwrap();
        assert!(u.max_abs_diff(&OperatorMatrix::identity(s)) < 1e-14);
    }

    #[test]
    fn parity_pulse_signs() {
        let s = zspace(8);
        let g = 0.15;
        let h = parity_hamiltonian(g, &s, Axis::Z).unwrap();
        let u = propagator(&h, PI / g).unwrap();
        for n in 0..8 {
            let l = BasisLabel::new(Level::Minus, [0, 0, n]);
            let v = u.element(l, l).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((v - Complex::new(sign, 0.0)).norm() < 1e-10, "n = {n}");
        }
        assert!(u.unitarity_deviation() < 1e-10);
    }

    #[test]
    fn group_law_and_reversal() {
        let s = zspace(6);
        let mut h = number_op::<f64>(&s, Axis::Z).unwrap();
        h = (&h * &sigma_x(&s).unwrap()).into_hermitian().unwrap();
        let h = &h + &crate::hilbert::quadrature(&s, Axis::Z).unwrap().scale(0.3);
        let spec = Spectral::new(&h).unwrap();
        let (t1, t2) = (0.37, 1.9);
        let lhs = &spec.propagator(t1) * &spec.propagator(t2);
        assert!(lhs.max_abs_diff(&spec.propagator(t1 + t2)) < 1e-10);
        let id = &spec.propagator(t2) * &spec.propagator(-t2);
        assert!(id.max_abs_diff(&OperatorMatrix::identity(s)) < 1e-10);
        // Eigenvalues of U on the unit circle.
        let u = spec.propagator(t2);
        let eig = nalgebra::linalg::Schur::new(u.entries().clone()).eigenvalues().unwrap();
        assert!(eig.iter().all(|z| (z.norm() - 1.0).abs() < 1e-10));
    }

    #[test]
    fn half_pulse_on_one_phonon() {
        let s = zspace(4);
        let g = 0.7;
        let h = parity_hamiltonian(g, &s, Axis::Z).unwrap();
        let psi = fock_state::<f64>(&s, Level::Minus, [0, 0, 1]).unwrap();
        let out = evolve_const(&h, PI / (2.0 * g), &psi).unwrap();
        let target = BasisLabel::new(Level::Plus, [0, 0, 1]);
        assert!((out.amplitude(target).unwrap() - Complex::new(0.0, -1.0)).norm() < 1e-12);
        let vac = fock_state::<f64>(&s, Level::Minus, [0; 3]).unwrap();
        assert!(evolve_const(&h, 3.3, &vac).unwrap().max_abs_diff(&vac).unwrap() < 1e-14);
    }

    #[test]
    fn closed_form_amplitudes_for_random_states() {
        let s = zspace(10);
        let g = 0.9;
        let spec = Spectral::new(&parity_hamiltonian(g, &s, Axis::Z).unwrap()).unwrap();
        for seed in 0..50 {
            let psi = ground_random(&s, seed);
            let t = 0.1 + 0.07 * seed as f64;
            let out = spec.evolve(&psi, t).unwrap();
            for n in 0..10 {
                let c = psi.amplitude(BasisLabel::new(Level::Minus, [0, 0, n])).unwrap();
                let w = g * n as f64 * t;
                let minus = out.amplitude(BasisLabel::new(Level::Minus, [0, 0, n])).unwrap();
                let plus = out.amplitude(BasisLabel::new(Level::Plus, [0, 0, n])).unwrap();
                assert!((minus - c * w.cos()).norm() < 1e-9);
                assert!((plus - c * Complex::new(0.0, -w.sin())).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn random_state_reflected_by_full_pulse() {
        let s = zspace(8);
        let g = 1.3;
        let psi = ground_random(&s, 7);
        let out = evolve_const(&parity_hamiltonian(g, &s, Axis::Z).unwrap(), PI / g, &psi).unwrap();
        let reflected = reflection_operator(&s, Axis::Z).unwrap().apply(&psi).unwrap();
        assert!(fidelity(&out, &reflected).unwrap() > 1.0 - 1e-12);
    }

    #[test]
    fn energy_conserved() {
        let s = zspace(12);
        let h = &parity_hamiltonian(0.5, &s, Axis::Z).unwrap()
            + &crate::hilbert::quadrature(&s, Axis::Z).unwrap().scale(0.2);
        let h = h.into_hermitian().unwrap();
        let psi = random_state::<f64>(&s, 3);
        let e0: f64 = h.expectation(&psi).unwrap().re;
        let spec = Spectral::new(&h).unwrap();
        for t in [1.0, 5.0, 20.0] {
            let e = h.expectation(&spec.evolve(&psi, t).unwrap()).unwrap().re;
            assert!((e - e0).abs() < 1e-9 * e0.abs().max(1.0));
        }
    }

    #[test]
    fn sampled_trajectory() {
        let s = zspace(4);
        let g = 0.5;
        let h = parity_hamiltonian(g, &s, Axis::Z).unwrap();
        let psi = fock_state::<f64>(&s, Level::Minus, [0, 0, 1]).unwrap();
        let rec = sample_trajectory(&h, &psi, PI / g, 4).unwrap();
        assert_eq!(rec.times().len(), 5);
        let pm = rec.series("population_minus").unwrap();
        assert!((pm[1] - 0.5).abs() < 1e-12 && pm[2] < 1e-12 && (pm[4] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        let s = zspace(4);
        let a = crate::hilbert::annihilation::<f64>(&s, Axis::Z).unwrap();
        assert!(matches!(propagator(&a, 1.0), Err(Error::NotHermitian(_))));
        let h = parity_hamiltonian(1.0, &s, Axis::Z).unwrap();
        let other = random_state::<f64>(&zspace(5), 0);
        assert!(matches!(evolve_const(&h, 1.0, &other), Err(Error::SpaceMismatch)));
    }
}
