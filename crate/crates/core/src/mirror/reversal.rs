use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolve::{fidelity, Spectral};
use crate::hilbert::{reflection_operator, Axis, OperatorMatrix, SpaceDescriptor, StateVector};
use crate::model::parity_hamiltonian;
use crate::scalar::Real;
use crate::tolerances;

/// Outcome of the time-reversal check `Π T(t) Π = T(t)⁻¹`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeReversalReport {
    /// `max |ΠH + HΠ|`.
    pub anticommutator: f64,
    /// `max |Π U Π U − I|`.
    pub identity_error: f64,
    /// `|⟨ψ₀|Π U Π U|ψ₀⟩|²`.
    pub recovery_fidelity: f64,
    /// Same sequence with each `Π` realised as a parity pulse `e^{−iπ n σ_x}`.
    pub three_pulse_fidelity: f64,
    pub time: f64,
}

/// Checks the time-reversal sandwich for a generator that anticommutes with
/// the reflection of `axis`.
pub fn time_reversal_check<T: Real>(
    h_target: &OperatorMatrix<T>,
    t: T,
    space: &SpaceDescriptor,
    axis: Axis,
    psi0: &StateVector<T>,
) -> Result<TimeReversalReport> {
    if h_target.space() != space || psi0.space() != space {
        return Err(Error::SpaceMismatch);
    }
    let parity = reflection_operator(space, axis)?;
    let anti = parity.anticommutator(h_target).max_abs();
    if anti >= T::tol(tolerances::ANTICOMMUTATION) {
        return Err(Error::AnticommutationFailure(anti.as_f64()));
    }
    let u = Spectral::new(h_target)?.propagator(t);
    let sandwich = &(&(&parity * &u) * &parity) * &u;
    let identity_error = sandwich.max_abs_diff(&OperatorMatrix::identity(*space));
    let recovered = sandwich.apply(psi0)?;

    let pulse = Spectral::new(&parity_hamiltonian(T::one(), space, axis)?)?.propagator(T::lit(PI));
    let three = &(&(&pulse * &u) * &pulse) * &u;
    let reconstructed = three.apply(psi0)?;

    Ok(TimeReversalReport {
        anticommutator: anti.as_f64(),
        identity_error: identity_error.as_f64(),
        recovery_fidelity: fidelity(&recovered, psi0)?.as_f64(),
        three_pulse_fidelity: fidelity(&reconstructed, psi0)?.as_f64(),
        time: t.as_f64(),
    })
}
