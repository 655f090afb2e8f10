//! Three-level Raman Hamiltonian and its adiabatically eliminated form.

use nalgebra::Complex;

use crate::error::Result;
use crate::hilbert::{electronic_transition, level_projector, number_op, Axis, Level, OperatorMatrix, SpaceDescriptor};
use crate::model::params::{EffectiveParams, RamanParams};
use crate::model::vibronic::plane_wave_from_vector;
use crate::scalar::{cplx, re, Real};

/// Rotating-frame offsets `[θ₋, θ₊, θ_v]`.
pub fn frame_offsets<T: Real>(params: &RamanParams<T>) -> [T; 3] {
    let w1 = params.omega1;
    [w1, w1 + params.omega_a - params.omega_b, w1 + params.omega_a]
}

/// `ω₀ Σ_j n_j` over the axes present in `space`.
fn trap_energy<T: Real>(space: &SpaceDescriptor, omega0: T) -> Result<OperatorMatrix<T>> {
    let mut h = OperatorMatrix::zeros(*space);
    for axis in Axis::ALL.into_iter().filter(|a| space.has_axis(*a)) {
        h = &h + &number_op(space, axis)?.scale(omega0);
    }
    Ok(h)
}

fn electronic_energy<T: Real>(space: &SpaceDescriptor, energies: &[(Level, T)]) -> Result<OperatorMatrix<T>> {
    let mut h = OperatorMatrix::zeros(*space);
    for (level, e) in energies {
        h = &h + &level_projector(space, *level)?.scale(*e);
    }
    Ok(h)
}

/// `−c · D |to⟩⟨from| + h.c.`
fn coupling<T: Real>(
    space: &SpaceDescriptor,
    c: Complex<T>,
    plane_wave: &OperatorMatrix<T>,
    from: Level,
    to: Level,
) -> Result<OperatorMatrix<T>> {
    let flip = electronic_transition(space, from, to)?;
    let x = (plane_wave * &flip).scale_complex(-c);
    Ok(&x + &x.adjoint())
}

/// Three-level Hamiltonian in the laser frame:
///
/// `H = (Δ₊ − Δ₋)|+⟩⟨+| − Δ₋|v⟩⟨v| + ω₀ Σ n_j − [g_a D_a |−⟩⟨v| + g_b D_b |+⟩⟨v| + h.c.]`
///
/// with `D = exp(−i Σ_j η_j (a_j + a_j†))`, `η_j = √(ℏ/2Mω₀) k_j`.
/// Wave-vector components on axes absent from `space` must be zero.
pub fn full_lambda_hamiltonian<T: Real>(params: &RamanParams<T>, space: &SpaceDescriptor) -> Result<OperatorMatrix<T>> {
    space.require_electronic_dim(3)?;
    let (dm, dp) = (params.detuning_minus(), params.detuning_plus());
    let diag = electronic_energy(space, &[(Level::Plus, dp - dm), (Level::Virtual, -dm)])?;
    let da = plane_wave_from_vector(space, params.lamb_dicke(params.k_a))?;
    let db = plane_wave_from_vector(space, params.lamb_dicke(params.k_b))?;
    let h = &(&diag + &trap_energy(space, params.omega0)?)
        + &(&coupling(space, params.g_a, &da, Level::Virtual, Level::Minus)?
            + &coupling(space, params.g_b, &db, Level::Virtual, Level::Plus)?);
    h.into_hermitian()
}

/// Lab-frame Hamiltonian at time `t`:
///
/// `H = Σ ω_l |l⟩⟨l| + ω₀ Σ n_j − [g_a D_a e^{iω_a t} |−⟩⟨v| + g_b D_b e^{iω_b t} |+⟩⟨v| + h.c.]`.
pub fn lab_frame_lambda_hamiltonian<T: Real>(
    params: &RamanParams<T>,
    space: &SpaceDescriptor,
    t: T,
) -> Result<OperatorMatrix<T>> {
    space.require_electronic_dim(3)?;
    let diag = electronic_energy(
        space,
        &[(Level::Minus, params.omega1), (Level::Plus, params.omega2), (Level::Virtual, params.omegav)],
    )?;
    let da = plane_wave_from_vector(space, params.lamb_dicke(params.k_a))?;
    let db = plane_wave_from_vector(space, params.lamb_dicke(params.k_b))?;
    let pa = cplx((params.omega_a * t).cos(), (params.omega_a * t).sin());
    let pb = cplx((params.omega_b * t).cos(), (params.omega_b * t).sin());
    let h = &(&diag + &trap_energy(space, params.omega0)?)
        + &(&coupling(space, params.g_a * pa, &da, Level::Virtual, Level::Minus)?
            + &coupling(space, params.g_b * pb, &db, Level::Virtual, Level::Plus)?);
    h.into_hermitian()
}

/// Eliminated two-level Hamiltonian in the same frame as
/// [`full_lambda_hamiltonian`]:
///
/// `H = (ω̃₁ − θ₋)|−⟩⟨−| + (ω̃₂ − θ₊)|+⟩⟨+| + ω₀ Σ n_j − [g D_L |−⟩⟨+| + h.c.]`
///
/// with `D_L = exp(−i x₀ (k_a − k_b)·(a + a†))`. In a three-level space the
/// auxiliary level is kept as a decoupled spectator at `ω̃_v − θ_v`.
pub fn effective_lambda_hamiltonian<T: Real>(
    params: &RamanParams<T>,
    eff: &EffectiveParams<T>,
    space: &SpaceDescriptor,
) -> Result<OperatorMatrix<T>> {
    let [t_minus, t_plus, t_virtual] = frame_offsets(params);
    let mut energies = vec![(Level::Minus, eff.omega1_t - t_minus), (Level::Plus, eff.omega2_t - t_plus)];
    if space.electronic_dim() == 3 {
        energies.push((Level::Virtual, eff.omegav_t - t_virtual));
    } else {
        space.require_electronic_dim(2)?;
    }
    let diag = electronic_energy(space, &energies)?;
    let dl = plane_wave_from_vector(space, params.lamb_dicke(eff.k_l))?;
    let h = &(&diag + &trap_energy(space, params.omega0)?) + &coupling(space, eff.g_eff, &dl, Level::Plus, Level::Minus)?;
    h.into_hermitian()
}

/// The frame change `U(t) = exp(i Σ_l θ_l t |l⟩⟨l|)` as a diagonal operator.
pub fn frame_rotation<T: Real>(params: &RamanParams<T>, space: &SpaceDescriptor, t: T) -> OperatorMatrix<T> {
    let theta = frame_offsets(params);
    OperatorMatrix::diagonal(*space, |l| {
        let phase = theta[l.level.index()] * t;
        cplx(phase.cos(), phase.sin())
    })
}

/// Diagonal operator `Σ_l θ_l |l⟩⟨l|`.
pub fn frame_generator<T: Real>(params: &RamanParams<T>, space: &SpaceDescriptor) -> OperatorMatrix<T> {
    let theta = frame_offsets(params);
    OperatorMatrix::diagonal(*space, |l| re(theta[l.level.index()]))
}
