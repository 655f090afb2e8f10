//! Composite electronic ⊗ vibrational Hilbert spaces.
//!
//! Basis ordering is fixed: electronic level slowest, then the x, y and z
//! Fock numbers, z fastest. With `D_a` the cutoff of axis `a` (1 when the axis
//! is absent) the index of `|level, n_x, n_y, n_z⟩` is
//!
//! ```text
//! ((level · D_x + n_x) · D_y + n_y) · D_z + n_z
//! ```
//!
//! Operators are built directly in the truncated space with no padding, so the
//! ladder algebra `[a, a†] = 1` fails on the top Fock level. Probe states are
//! expected to keep the top two levels empty; see [`max_occupied_level`].

mod builders;
mod operator;
mod space;
mod state;

pub use builders::*;
pub use operator::OperatorMatrix;
pub use space::{Axis, BasisLabel, Cutoffs, Direction, Level, SpaceDescriptor};
pub use state::*;
