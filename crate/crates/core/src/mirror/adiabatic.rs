use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolve::{electronic_populations, fidelity, Spectral};
use crate::hilbert::{Level, SpaceDescriptor, StateVector};
use crate::model::{derive_effective_with, effective_lambda_hamiltonian, full_lambda_hamiltonian, Elimination, RamanParams};
use crate::scalar::Real;

/// Smallest detuning-to-coupling ratio accepted by [`adiabatic_elimination_check`].
pub const MIN_DETUNING_RATIO: f64 = 10.0;

/// Full three-level versus eliminated two-level dynamics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdiabaticReport {
    pub elimination: Elimination,
    /// Largest `|v⟩` population of the full model over the sampled times.
    pub max_virtual_population: f64,
    /// `4 (|g_a|² + |g_b|²)/Δ² · 4` with `Δ = min(|Δ₋|, |Δ₊|)`.
    pub virtual_population_envelope: f64,
    /// Fidelity between the two models at `t_final`.
    pub end_fidelity: f64,
    /// `|g_eff|` of the eliminated model.
    pub effective_coupling: f64,
    /// Smallest `|Δ±|/|g|` ratio.
    pub detuning_ratio: f64,
    pub t_final: f64,
    pub samples: usize,
}

/// Co-evolves the full Λ model and the eliminated model (embedded in the
/// same three-level space) from `psi0`, sampling every `dt`.
pub fn adiabatic_elimination_check<T: Real>(
    params: &RamanParams<T>,
    space3: &SpaceDescriptor,
    psi0: &StateVector<T>,
    t_final: T,
    dt: T,
    elimination: Elimination,
) -> Result<AdiabaticReport> {
    space3.require_electronic_dim(3)?;
    if psi0.space() != space3 {
        return Err(Error::SpaceMismatch);
    }
    if !(dt > T::zero()) || !(t_final >= T::zero()) {
        return Err(Error::InvalidParameter("need dt > 0 and t_final >= 0".into()));
    }
    let pv0 = electronic_populations(psi0)[Level::Virtual.index()];
    if pv0 > T::zero() {
        return Err(Error::InvalidParameter(format!("initial state populates |v⟩ ({:e})", pv0.as_f64())));
    }
    let (dm, dp) = (params.detuning_minus().abs(), params.detuning_plus().abs());
    let delta = dm.min(dp);
    let gmax = params.g_a.norm_sqr().max(params.g_b.norm_sqr()).sqrt();
    let ratio = if gmax == T::zero() { T::lit(f64::INFINITY) } else { delta / gmax };
    if ratio < T::lit(MIN_DETUNING_RATIO) {
        return Err(Error::RatioTooSmall(ratio.as_f64()));
    }

    let eff = derive_effective_with(params, elimination)?;
    let full = Spectral::new(&full_lambda_hamiltonian(params, space3)?)?;
    let reduced = Spectral::new(&effective_lambda_hamiltonian(params, &eff, space3)?)?;

    let steps = (t_final / dt).ceil().to_usize().unwrap_or(0);
    let mut max_pv = T::zero();
    for k in 1..=steps {
        let t = (dt * T::from_count(k)).min(t_final);
        let psi = full.evolve(psi0, t)?;
        max_pv = max_pv.max(electronic_populations(&psi)[Level::Virtual.index()]);
    }
    let end_full = full.evolve(psi0, t_final)?;
    let end_reduced = reduced.evolve(psi0, t_final)?;
    let g2 = params.g_a.norm_sqr() + params.g_b.norm_sqr();
    Ok(AdiabaticReport {
        elimination,
        max_virtual_population: max_pv.as_f64(),
        virtual_population_envelope: (T::lit(16.0) * g2 / (delta * delta)).as_f64(),
        end_fidelity: fidelity(&end_full, &end_reduced)?.as_f64(),
        effective_coupling: eff.g_eff.norm_sqr().sqrt().as_f64(),
        detuning_ratio: ratio.as_f64(),
        t_final: t_final.as_f64(),
        samples: steps,
    })
}
