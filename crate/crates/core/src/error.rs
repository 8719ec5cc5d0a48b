use thiserror::Error;

/// Errors raised by the metric, welfare, principle and allocation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FairnessError {
    #[error("value vector must contain at least one element")]
    EmptyVector,
    #[error("value at index {index} is not finite")]
    NonFinite { index: usize },
    #[error("value at index {index} is negative ({value})")]
    NegativeValue { index: usize, value: f64 },
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("input at index {index} is zero; ratio y/x is undefined")]
    ZeroInput { index: usize },
    #[error("values sum to zero")]
    ZeroSum,
    #[error("values have zero mean")]
    ZeroMean,
    #[error("value at index {index} is zero where strictly positive values are required")]
    ZeroElement { index: usize },
    #[error("bottom 40% of the population holds nothing")]
    ZeroBottomShare,
    #[error("metric needs at least two individuals")]
    DegeneratePopulation,
    #[error("weight vector has length {actual}, population has {expected}")]
    WeightMismatch { expected: usize, actual: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{count} allocations exceed the enumeration cap of {cap}")]
    CombinatorialBlowup { count: u128, cap: u128 },
    #[error("shares sum to {sum}, frontier requires {total}")]
    OffFrontier { sum: f64, total: f64 },
    #[error("continuous optimisation supports exactly two agents, got {0}")]
    UnsupportedPopulation(usize),
    #[error("score for candidate {candidate} is not finite")]
    NonFiniteScore { candidate: usize },
    #[error("all aggregation weights are zero")]
    AllZeroWeights,
}

impl FairnessError {
    /// Stable variant name, used by the CLI when reporting failures.
    pub fn kind(&self) -> &'static str {
        match self {
            FairnessError::EmptyVector => "EmptyVector",
            FairnessError::NonFinite { .. } => "NonFinite",
            FairnessError::NegativeValue { .. } => "NegativeValue",
            FairnessError::LengthMismatch { .. } => "LengthMismatch",
            FairnessError::ZeroInput { .. } => "ZeroInput",
            FairnessError::ZeroSum => "ZeroSum",
            FairnessError::ZeroMean => "ZeroMean",
            FairnessError::ZeroElement { .. } => "ZeroElement",
            FairnessError::ZeroBottomShare => "ZeroBottomShare",
            FairnessError::DegeneratePopulation => "DegeneratePopulation",
            FairnessError::WeightMismatch { .. } => "WeightMismatch",
            FairnessError::InvalidParameter(_) => "InvalidParameter",
            FairnessError::CombinatorialBlowup { .. } => "CombinatorialBlowup",
            FairnessError::OffFrontier { .. } => "OffFrontier",
            FairnessError::UnsupportedPopulation(_) => "UnsupportedPopulation",
            FairnessError::NonFiniteScore { .. } => "NonFiniteScore",
            FairnessError::AllZeroWeights => "AllZeroWeights",
        }
    }
}

pub type Result<T> = std::result::Result<T, FairnessError>;
