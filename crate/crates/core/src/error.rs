use crate::hilbert::{Axis, Level};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("axis {0} is not present in the space")]
    UnknownAxis(Axis),
    #[error("operation needs all three vibrational axes: {0}")]
    MissingAxis(String),
    #[error("level {0} is not present in the space")]
    UnknownLevel(Level),
    #[error("occupation {n} on axis {axis} exceeds cutoff {cutoff}")]
    CutoffExceeded { axis: Axis, n: usize, cutoff: usize },
    #[error("state has zero norm")]
    NormZero,
    #[error("state norm {0} deviates from one")]
    NotNormalized(f64),
    #[error("Raman detuning is zero")]
    ZeroDetuning,
    #[error("expected electronic dimension {expected}, found {found}")]
    WrongElectronicDim { expected: usize, found: usize },
    #[error("Lamb-Dicke parameters are equal ({0}): calibrated gate strength would vanish")]
    DegenerateEtas(f64),
    #[error("beams act on different directions")]
    AxisMismatch,
    #[error("Hermitian eigendecomposition did not converge")]
    EigFailure,
    #[error("operator is not Hermitian (max |A - A†| = {0:e})")]
    NotHermitian(f64),
    #[error("operands live in different spaces")]
    SpaceMismatch,
    #[error("time step {dt:e} exceeds limit {limit:e} set by the fastest frequency")]
    StepTooLarge { dt: f64, limit: f64 },
    #[error("norm drift {0:e} exceeds tolerance")]
    NormDrift(f64),
    #[error("probe {index} is not in the electronic ground level (population {population})")]
    ProbeNotGround { index: usize, population: f64 },
    #[error("probe {index} populates the top Fock levels (population {population:e})")]
    ProbeNearCutoff { index: usize, population: f64 },
    #[error("{which} state is not a parity eigenstate (deviation {deviation:e})")]
    NotParityEigenstate { which: &'static str, deviation: f64 },
    #[error("Hamiltonian does not anticommute with parity (max |ΠH + HΠ| = {0:e})")]
    AnticommutationFailure(f64),
    #[error("detuning to coupling ratio {0} is below the required minimum")]
    RatioTooSmall(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unit parse error: {0}")]
    Unit(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
