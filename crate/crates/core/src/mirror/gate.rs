use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolve::{electronic_populations, fidelity, reduced_electronic_purity, Spectral};
use crate::hilbert::{reflection_operator, superposition, top_levels_population, Axis, Level, OperatorMatrix, SpaceDescriptor, StateVector};
use crate::mirror::probes::ProbeSuite;
use crate::scalar::{cplx, Real};
use crate::tolerances;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub name: String,
    pub fidelity: f64,
    pub return_population: f64,
    pub purity: f64,
}

/// Outcome of a parity pulse on a probe suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateReport {
    pub worst_fidelity: f64,
    pub average_fidelity: f64,
    pub worst_probe: String,
    /// Smallest electronic purity among the end states.
    pub disentanglement_purity: f64,
    /// Smallest `|−⟩` population among the end states.
    pub electronic_return_population: f64,
    pub pulse_time: f64,
    pub g_nominal: f64,
    pub axis: Axis,
    pub dimension: usize,
    pub probes: Vec<ProbeResult>,
}

impl GateReport {
    pub fn worst_infidelity(&self) -> f64 {
        1.0 - self.worst_fidelity
    }
}

fn check_probe<T: Real>(index: usize, psi: &StateVector<T>, axis: Axis) -> Result<()> {
    let ground = electronic_populations(psi)[Level::Minus.index()];
    if ground < T::one() - T::tol(tolerances::PROBE_GROUND) {
        return Err(Error::ProbeNotGround { index, population: ground.as_f64() });
    }
    let top = top_levels_population(psi, axis, 2)?;
    if top > T::lit(tolerances::PROBE_TOP_LEVELS) {
        return Err(Error::ProbeNearCutoff { index, population: top.as_f64() });
    }
    Ok(())
}

/// Evolves each probe under `h_realized` for the nominal pulse `π/|g|` and
/// compares with the reflected probe `Π_axis|ψ⟩ ⊗ |−⟩`.
pub fn parity_gate_fidelity<T: Real>(
    h_realized: &OperatorMatrix<T>,
    g_nominal: T,
    space: &SpaceDescriptor,
    axis: Axis,
    probes: &ProbeSuite<T>,
) -> Result<GateReport> {
    if g_nominal == T::zero() {
        return Err(Error::InvalidParameter("nominal coupling is zero".into()));
    }
    parity_gate_fidelity_at(h_realized, T::pi() / g_nominal.abs(), g_nominal, space, axis, probes)
}

/// As [`parity_gate_fidelity`] with an explicit pulse time.
pub fn parity_gate_fidelity_at<T: Real>(
    h_realized: &OperatorMatrix<T>,
    pulse_time: T,
    g_nominal: T,
    space: &SpaceDescriptor,
    axis: Axis,
    probes: &ProbeSuite<T>,
) -> Result<GateReport> {
    if h_realized.space() != space {
        return Err(Error::SpaceMismatch);
    }
    if probes.is_empty() {
        return Err(Error::InvalidParameter("empty probe suite".into()));
    }
    for (i, psi) in probes.states.iter().enumerate() {
        if psi.space() != space {
            return Err(Error::SpaceMismatch);
        }
        check_probe(i, psi, axis)?;
    }
    let spectral = Spectral::new(h_realized)?;
    let reflect = reflection_operator(space, axis)?;
    let results: Vec<ProbeResult> = probes
        .states
        .par_iter()
        .zip(probes.names.par_iter())
        .map(|(psi, name)| -> Result<ProbeResult> {
            let end = spectral.evolve(psi, pulse_time)?;
            let target = reflect.apply(psi)?;
            Ok(ProbeResult {
                name: name.clone(),
                fidelity: fidelity(&end, &target)?.as_f64(),
                return_population: electronic_populations(&end)[Level::Minus.index()].as_f64(),
                purity: reduced_electronic_purity(&end).as_f64(),
            })
        })
        .collect::<Result<_>>()?;
    let worst = results
        .iter()
        .min_by(|a, b| a.fidelity.total_cmp(&b.fidelity))
        .expect("non-empty suite");
    let report = GateReport {
        worst_fidelity: worst.fidelity,
        average_fidelity: results.iter().map(|r| r.fidelity).sum::<f64>() / results.len() as f64,
        worst_probe: worst.name.clone(),
        disentanglement_purity: results.iter().map(|r| r.purity).fold(f64::INFINITY, f64::min).min(1.0),
        electronic_return_population: results.iter().map(|r| r.return_population).fold(f64::INFINITY, f64::min),
        pulse_time: pulse_time.as_f64(),
        g_nominal: g_nominal.as_f64(),
        axis,
        dimension: space.dim(),
        probes: results,
    };
    log::debug!("parity gate: worst fidelity {:.6e} ({})", report.worst_fidelity, report.worst_probe);
    Ok(report)
}

/// Golden-section search of the pulse time in `[1 − span, 1 + span] · π/|g|`
/// maximising the worst-case fidelity.
pub fn optimize_pulse_time<T: Real>(
    h_realized: &OperatorMatrix<T>,
    g_nominal: T,
    space: &SpaceDescriptor,
    axis: Axis,
    probes: &ProbeSuite<T>,
    span: f64,
    iterations: usize,
) -> Result<GateReport> {
    let nominal = T::pi() / g_nominal.abs();
    let eval = |x: f64| parity_gate_fidelity_at(h_realized, nominal * T::lit(x), g_nominal, space, axis, probes);
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (1.0 - span, 1.0 + span);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    for _ in 0..iterations {
        if f1.worst_fidelity > f2.worst_fidelity {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = eval(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = eval(x2)?;
        }
    }
    let best = [f1, f2, eval(1.0)?]
        .into_iter()
        .max_by(|a, b| a.worst_fidelity.total_cmp(&b.worst_fidelity))
        .expect("three candidates");
    Ok(best)
}

/// Outcome of the NOT-gate check on `|ψ±⟩ = (φ_e ± φ_o)/√2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NotGateReport {
    /// `|⟨ψ₋|G|ψ₊⟩|²`.
    pub fidelity_plus_to_minus: f64,
    /// `|⟨ψ₊|G|ψ₋⟩|²`.
    pub fidelity_minus_to_plus: f64,
    /// `|⟨ψ₊|ψ₋⟩|²`.
    pub input_overlap: f64,
    /// `|⟨ψ₊|G²|ψ₊⟩|²`.
    pub involution_fidelity: f64,
}

/// Checks that `gate` swaps the even/odd qubit states. `phi_even` and
/// `phi_odd` must be parity eigenstates of `axis` with eigenvalues ±1.
pub fn not_gate_check<T: Real>(
    phi_even: &StateVector<T>,
    phi_odd: &StateVector<T>,
    gate: &OperatorMatrix<T>,
    axis: Axis,
) -> Result<NotGateReport> {
    let space = *gate.space();
    if phi_even.space() != &space || phi_odd.space() != &space {
        return Err(Error::SpaceMismatch);
    }
    let parity = reflection_operator(&space, axis)?;
    let tol = T::tol(tolerances::PARITY_EIGENSTATE);
    let dev_e = parity.apply(phi_even)?.max_abs_diff(phi_even)?;
    if dev_e > tol {
        return Err(Error::NotParityEigenstate { which: "even", deviation: dev_e.as_f64() });
    }
    let reflected_odd = parity.apply(phi_odd)?;
    let dev_o = reflected_odd
        .amplitudes()
        .iter()
        .zip(phi_odd.amplitudes().iter())
        .fold(T::zero(), |acc, (a, b)| acc.max((*a + *b).norm_sqr().sqrt()));
    if dev_o > tol {
        return Err(Error::NotParityEigenstate { which: "odd", deviation: dev_o.as_f64() });
    }
    let one = cplx(T::one(), T::zero());
    let plus = superposition(&[(one, phi_even), (one, phi_odd)])?;
    let minus = superposition(&[(one, phi_even), (-one, phi_odd)])?;
    let g_plus = gate.apply(&plus)?;
    let g_minus = gate.apply(&minus)?;
    Ok(NotGateReport {
        fidelity_plus_to_minus: fidelity(&g_plus, &minus)?.as_f64(),
        fidelity_minus_to_plus: fidelity(&g_minus, &plus)?.as_f64(),
        input_overlap: fidelity(&plus, &minus)?.as_f64(),
        involution_fidelity: fidelity(&gate.apply(&g_plus)?, &plus)?.as_f64(),
    })
}
