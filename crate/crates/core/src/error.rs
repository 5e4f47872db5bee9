use thiserror::Error;

/// Errors produced by any module in this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A qubit count exceeded a hard implementation cap.
    #[error("{what}: n = {n} exceeds the cap of {cap}")]
    SizeCap {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    /// A projector list or pattern length did not match the qubit count.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Amplitudes failed the normalization invariant.
    #[error("not normalized: squared magnitudes sum to {norm} (must be 1 within {tol})")]
    NotNormalized { norm: f64, tol: f64 },

    /// Amplitudes outside the allowed [0, 1] range.
    #[error("amplitude out of range: {value} (must lie in [0, 1])")]
    AmplitudeOutOfRange { value: f64 },

    /// Attempt to build a projector from the zero vector.
    #[error("cannot build a projector from the zero vector")]
    ZeroVector,

    /// The scenario bounds were violated; the message names the failed inequality.
    #[error("invalid scenario [{n};{ka},{kb}]: {violated}")]
    InvalidScenario {
        n: usize,
        ka: usize,
        kb: usize,
        violated: String,
    },

    /// Non-positive inequality weight.
    #[error("weights must be positive: x = {x}, y = {y}")]
    NonPositiveWeight { x: String, y: String },

    /// The two-setting symmetric ansatz has no solution for this scenario.
    #[error(
        "no symmetric two-setting solution for [{n};{ka},{kb}]: \
         equal odd subset sizes leave the phase system inconsistent ({detail})"
    )]
    NoSymmetricSolution {
        n: usize,
        ka: usize,
        kb: usize,
        detail: String,
    },

    /// Wave-plate angles are defined only for equatorial settings.
    #[error("wave-plate angles are only defined for equatorial settings (amplitudes 1/sqrt(2))")]
    NonEquatorial,

    /// A probability table lacks strings the inequality needs.
    #[error("probability table is missing required strings: {}", missing.join(", "))]
    IncompleteTable { missing: Vec<String> },

    /// No measurement setting in the dataset matches the required bases.
    #[error("no setting matches required bases [{required}]")]
    MissingSetting { required: String },

    /// A counts document violated the schema.
    #[error("malformed counts data at {path}: {reason}")]
    MalformedCounts { path: String, reason: String },

    /// The white-noise inequality value is non-negative even at zero visibility.
    #[error("no visibility threshold: inequality value at zero visibility is {i_at_v0} >= 0")]
    NoThreshold { i_at_v0: f64 },

    /// JSON (de)serialization failure.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    /// Underlying I/O failure.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
