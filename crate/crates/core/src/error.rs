use crate::numerics::HalfInt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("probabilities sum to {sum}, expected 1")]
    NonNormalized { sum: f64 },
    #[error("negative probability {0}")]
    NegativeProbability(f64),
    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("Hermitian diagonalization did not converge (off-diagonal norm {residual:e} after {sweeps} sweeps)")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix data has length {len}, expected {expected}")]
    DimensionMismatch { len: usize, expected: usize },
    #[error("J = {j} is not a valid total spin for N = {n}")]
    InvalidJ { j: HalfInt, n: u32 },
    #[error("partition n = {n} is invalid for N = {total} (need 1 <= n <= N-1)")]
    InvalidSplit { n: u32, total: u32 },
    #[error("invalid quantum numbers: {0}")]
    InvalidQuantumNumbers(String),
    #[error("GHZ-like state needs J >= 1/2; at J = 0 both components coincide")]
    DegenerateGhz,
    #[error("squeezing parameter tanh(r) = {0} outside [0, 1]")]
    InvalidSqueezing(f64),
    #[error("amplitude vector has norm {0:e}, too small to normalize")]
    ZeroState(f64),
    #[error("subensemble pair (j1 = {j1}, j2 = {j2}) does not contribute to J = {j}")]
    PairNotAllowed { j: HalfInt, j1: HalfInt, j2: HalfInt },
    #[error("N = {n} exceeds the brute-force limit {max}")]
    TooLarge { n: u32, max: u32 },
    #[error("invalid state: {0}")]
    InvalidState(String),
}

impl Error {
    /// True for errors caused by bad caller input rather than a numeric failure.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::NoConvergence { .. })
    }
}
