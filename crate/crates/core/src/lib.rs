//! Numerical simulator for parity (specular reflection) operations on the
//! vibrational state of a single trapped ion.
//!
//! The crate is organised bottom-up:
//!
//! * [`hilbert`] builds composite electronic ⊗ vibrational spaces, ladder and
//!   transition operators, reference reflection operators and states.
//! * [`model`] holds the physical parameters and every Hamiltonian: the full
//!   three-level Raman system, its adiabatic elimination, the vibronic
//!   Lamb-Dicke series, the two-beam parity coupling and its calibration.
//! * [`evolve`] propagates states (exact eigendecomposition for constant
//!   Hamiltonians, fourth-order commutator-free Magnus for time-dependent ones)
//!   and computes observables.
//! * [`mirror`] verifies gate-level claims: the parity pulse, the NOT gate,
//!   the time-reversal sandwich and the adiabatic elimination.
//!
//! All math is generic over the real scalar type ([`Real`]); `f64` aliases are
//! exported at the crate root. Internally ℏ = 1 and every frequency is an
//! angular frequency. The default unit convention is rad/µs, so "3 MHz" in a
//! config is the number `3.0` and times are in µs.

// `!(x > 0)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod evolve;
pub mod hilbert;
pub mod linalg;
pub mod mirror;
pub mod model;
pub mod scalar;
pub mod tolerances;
pub mod units;

pub use error::{Error, Result};
pub use hilbert::{Axis, BasisLabel, Cutoffs, Level, OperatorMatrix, SpaceDescriptor, StateVector};
pub use scalar::Real;

/// Complex amplitude over the scalar `T`.
pub type Complex<T> = nalgebra::Complex<T>;

pub type Operator = OperatorMatrix<f64>;
pub type State = StateVector<f64>;
pub type Operator32 = OperatorMatrix<f32>;
pub type State32 = StateVector<f32>;
pub type Raman = model::RamanParams<f64>;
pub type Effective = model::EffectiveParams<f64>;
pub type Beam = model::BeamSpec<f64>;
pub type Record = evolve::EvolutionRecord<f64>;
