use nalgebra::{Complex, ComplexField};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Reduced Planck constant in J·s.
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Atomic mass unit in kg.
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;
/// Mass of a ⁹Be⁺ ion in kg.
pub const BERYLLIUM_ION_MASS: f64 = 9.012_182 * ATOMIC_MASS_UNIT;

/// Parameters of the three-level Raman (Λ) system.
///
/// Frequencies are angular, in the internal unit; `time_unit` is the length
/// of that unit in seconds (1e-6 for rad/µs) and is only used to form the
/// oscillator length `√(ℏ / 2Mω₀)` from SI wave vectors and mass.
#[derive(Clone, Debug, PartialEq)]
pub struct RamanParams<T: Real> {
    /// Trap frequency ω₀.
    pub omega0: T,
    /// Energy of |−⟩.
    pub omega1: T,
    /// Energy of |+⟩.
    pub omega2: T,
    /// Energy of the auxiliary level |v⟩.
    pub omegav: T,
    /// Laser driving |−⟩ ↔ |v⟩.
    pub omega_a: T,
    /// Laser driving |+⟩ ↔ |v⟩.
    pub omega_b: T,
    pub g_a: Complex<T>,
    pub g_b: Complex<T>,
    /// Wave vectors in rad/m.
    pub k_a: [T; 3],
    pub k_b: [T; 3],
    /// Ion mass in kg.
    pub ion_mass: T,
    /// Seconds per internal time unit.
    pub time_unit: T,
}

impl<T: Real> RamanParams<T> {
    /// Builds a parameter set from detunings instead of absolute frequencies:
    /// ω₁ = 0, ω₂ = `atomic`, ω_v = `virtual_level`, lasers placed at
    /// ω_a = ω_v − ω₁ + Δ₋ and ω_b = ω_v − ω₂ + Δ₊. Wave vectors are zero, the
    /// mass is that of ⁹Be⁺ and the time unit is 1 µs.
    pub fn from_detunings(
        omega0: T,
        atomic: T,
        virtual_level: T,
        delta_minus: T,
        delta_plus: T,
        g_a: Complex<T>,
        g_b: Complex<T>,
    ) -> Self {
        let omega1 = T::zero();
        RamanParams {
            omega0,
            omega1,
            omega2: atomic,
            omegav: virtual_level,
            omega_a: virtual_level - omega1 + delta_minus,
            omega_b: virtual_level - atomic + delta_plus,
            g_a,
            g_b,
            k_a: [T::zero(); 3],
            k_b: [T::zero(); 3],
            ion_mass: T::lit(BERYLLIUM_ION_MASS),
            time_unit: T::lit(1e-6),
        }
    }

    /// Δ₋ᵥ = ω_a − (ω_v − ω₁).
    pub fn detuning_minus(&self) -> T {
        self.omega_a - (self.omegav - self.omega1)
    }

    /// Δ₊ᵥ = ω_b − (ω_v − ω₂).
    pub fn detuning_plus(&self) -> T {
        self.omega_b - (self.omegav - self.omega2)
    }

    fn detunings(&self) -> Result<(T, T)> {
        let (dm, dp) = (self.detuning_minus(), self.detuning_plus());
        if dm == T::zero() || dp == T::zero() {
            return Err(Error::ZeroDetuning);
        }
        Ok((dm, dp))
    }

    /// Oscillator length `√(ℏ / 2Mω₀)` in metres.
    pub fn oscillator_length(&self) -> T {
        let omega_si = self.omega0 / self.time_unit;
        (T::lit(HBAR_SI) / (T::lit(2.0) * self.ion_mass)).sqrt() / omega_si.sqrt()
    }

    /// Per-axis Lamb-Dicke parameters `η_j = √(ℏ/2Mω₀) k_j` of a wave vector.
    pub fn lamb_dicke(&self, k: [T; 3]) -> [T; 3] {
        let x0 = self.oscillator_length();
        k.map(|kj| kj * x0)
    }

    /// Wave vector (rad/m) giving Lamb-Dicke vector `eta`.
    pub fn wavevector_for(&self, eta: [T; 3]) -> [T; 3] {
        let x0 = self.oscillator_length();
        eta.map(|e| e / x0)
    }

    /// Ratios behind the large-detuning, small-coupling conditions
    /// `|Δ±| ≫ |g_a|, |g_b|, |Δ₋ − Δ₊|`.
    pub fn validity(&self) -> ValidityReport<T> {
        let (dm, dp) = (self.detuning_minus().abs(), self.detuning_plus().abs());
        let ratio = |num: T, den: T| if den == T::zero() { None } else { Some(num / den) };
        let ga = self.g_a.modulus();
        let gb = self.g_b.modulus();
        let spread = (self.detuning_minus() - self.detuning_plus()).abs();
        let ratios = vec![
            ("|D-|/|g_a|", ratio(dm, ga)),
            ("|D-|/|g_b|", ratio(dm, gb)),
            ("|D+|/|g_a|", ratio(dp, ga)),
            ("|D+|/|g_b|", ratio(dp, gb)),
            ("|D-|/|D- - D+|", ratio(dm, spread)),
            ("|D+|/|D- - D+|", ratio(dp, spread)),
        ];
        let min_ratio = ratios.iter().filter_map(|(_, r)| *r).fold(None, |acc: Option<T>, r| {
            Some(acc.map_or(r, |a| a.min(r)))
        });
        ValidityReport { ratios, min_ratio }
    }
}

/// Ratios of the validity conditions; `None` means the denominator vanishes
/// (condition trivially satisfied).
#[derive(Clone, Debug)]
pub struct ValidityReport<T: Real> {
    pub ratios: Vec<(&'static str, Option<T>)>,
    pub min_ratio: Option<T>,
}

impl<T: Real> ValidityReport<T> {
    pub fn holds(&self, min_ratio: T) -> bool {
        self.min_ratio.is_none_or(|r| r >= min_ratio)
    }
}

/// Effective two-level parameters after eliminating |v⟩.
#[derive(Clone, Debug, PartialEq)]
pub struct EffectiveParams<T: Real> {
    pub omega1_t: T,
    pub omega2_t: T,
    pub omegav_t: T,
    pub g_eff: Complex<T>,
    pub k_l: [T; 3],
    pub omega_l: T,
    pub eta_l: T,
}

impl<T: Real> EffectiveParams<T> {
    /// Stark-shifted atomic frequency ω̃_A = ω̃₂ − ω̃₁.
    pub fn atomic_frequency(&self) -> T {
        self.omega2_t - self.omega1_t
    }

    /// ω̃_A − ω_L; zero on Raman resonance.
    pub fn raman_detuning(&self) -> T {
        self.atomic_frequency() - self.omega_l
    }
}

/// Which closed form to use for the eliminated model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Elimination {
    /// ω̃₁ = ω₁ − 2|g_a|²/Δ₋, ω̃₂ = ω₂ − 2|g_b|²/Δ₊,
    /// ω̃_v = ω_v + |g_a|²/Δ₋ + |g_b|²/Δ₊, g = g_a g_b* (1/Δ₋ + 1/Δ₊).
    Published,
    /// Second-order elimination consistent with [`crate::model::full_lambda_hamiltonian`]:
    /// ω̃₁ = ω₁ + |g_a|²/Δ₋, ω̃₂ = ω₂ + |g_b|²/Δ₊,
    /// ω̃_v = ω_v − |g_a|²/Δ₋ − |g_b|²/Δ₊, g = −½ g_a g_b* (1/Δ₋ + 1/Δ₊).
    SecondOrder,
}

/// Effective parameters by the published closed form ([`Elimination::Published`]).
pub fn derive_effective<T: Real>(params: &RamanParams<T>) -> Result<EffectiveParams<T>> {
    derive_effective_with(params, Elimination::Published)
}

/// Effective parameters by second-order elimination ([`Elimination::SecondOrder`]).
pub fn derive_effective_second_order<T: Real>(params: &RamanParams<T>) -> Result<EffectiveParams<T>> {
    derive_effective_with(params, Elimination::SecondOrder)
}

pub fn derive_effective_with<T: Real>(params: &RamanParams<T>, formulas: Elimination) -> Result<EffectiveParams<T>> {
    let (dm, dp) = params.detunings()?;
    let ga2 = params.g_a.norm_sqr();
    let gb2 = params.g_b.norm_sqr();
    let pair = params.g_a * params.g_b.conj() * (T::one() / dm + T::one() / dp);
    let two = T::lit(2.0);
    let (omega1_t, omega2_t, omegav_t, g_eff) = match formulas {
        Elimination::Published => (
            params.omega1 - two * ga2 / dm,
            params.omega2 - two * gb2 / dp,
            params.omegav + ga2 / dm + gb2 / dp,
            pair,
        ),
        Elimination::SecondOrder => (
            params.omega1 + ga2 / dm,
            params.omega2 + gb2 / dp,
            params.omegav - ga2 / dm - gb2 / dp,
            -pair / two,
        ),
    };
    let k_l = [0, 1, 2].map(|i| params.k_a[i] - params.k_b[i]);
    let eta_vec = params.lamb_dicke(k_l);
    let eta_l = eta_vec.iter().fold(T::zero(), |acc, e| acc + *e * *e).sqrt();
    Ok(EffectiveParams {
        omega1_t,
        omega2_t,
        omegav_t,
        g_eff,
        k_l,
        omega_l: params.omega_a - params.omega_b,
        eta_l,
    })
}
