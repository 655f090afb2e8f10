//! Physical parameters and Hamiltonians.
//!
//! Frames: the three-level model is written in the frame rotating with the
//! lasers, offsets `θ₋ = ω₁`, `θ₊ = ω₁ + ω_a − ω_b`, `θ_v = ω₁ + ω_a`. The
//! eliminated two-level model uses the same frame so states of the two
//! models can be compared directly. The vibronic Hamiltonians of a single
//! effective beam are in the interaction picture of the atom and trap.

mod json;
mod params;
mod raman;
mod vibronic;

pub use json::*;
pub use params::*;
pub use raman::*;
pub use vibronic::*;
