//! Central table of numerical tolerances (stated for `f64`).

/// Hermiticity check on constructed operators: max |A − A†|.
pub const HERMITIAN: f64 = 1e-12;
/// Unit norm of constructed states.
pub const STATE_NORM: f64 = 1e-12;
/// Unitary identities: U†U = I, group law, time reversal.
pub const UNITARY: f64 = 1e-10;
/// Trajectory and amplitude comparisons.
pub const TRAJECTORY: f64 = 1e-9;
/// Anticommutation precondition of the time-reversal check.
pub const ANTICOMMUTATION: f64 = 1e-10;
/// Parity eigenstate precondition of the NOT-gate check.
pub const PARITY_EIGENSTATE: f64 = 1e-10;
/// Default accumulated norm drift allowed during evolution.
pub const NORM_DRIFT: f64 = 1e-10;
/// Probes must have at least this population in the electronic ground level.
pub const PROBE_GROUND: f64 = 1e-10;
/// Population allowed in the top two Fock levels of a probe.
pub const PROBE_TOP_LEVELS: f64 = 1e-8;
/// Relative convergence threshold for the Hermitian eigensolver.
pub const EIG_EPS: f64 = 1e-15;
/// Iteration cap for the Hermitian eigensolver (0 = unlimited).
pub const EIG_MAX_ITER: usize = 10_000;
