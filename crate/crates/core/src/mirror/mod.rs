//! Gate-level verification: the parity pulse, the NOT gate built from it,
//! the time-reversal sandwich and the adiabatic elimination.
//!
//! Gate fidelities are reported worst-case over a probe suite of vibrational
//! states prepared in the electronic ground level `|−⟩`; see [`ProbeSuiteSpec`].

mod adiabatic;
mod gate;
mod probes;
mod reversal;

pub use adiabatic::*;
pub use gate::*;
pub use probes::*;
pub use reversal::*;
