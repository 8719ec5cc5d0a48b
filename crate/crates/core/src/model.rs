//! Population data model and the elementary statistics built on it.
//!
//! Every individual in a population carries an input `x` (initial situation or
//! contribution), an output `y` (what the allocation gives them) and a utility
//! `u = f(y)`. The three vectors for one candidate allocation form an
//! [`AllocationContext`].

use std::ops::Deref;

use crate::error::{FairnessError, Result};

/// Ordered, nonempty list of finite nonnegative per-individual values.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueVector(Vec<f64>);

impl ValueVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(FairnessError::EmptyVector);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(FairnessError::NonFinite { index });
            }
            if value < 0.0 {
                return Err(FairnessError::NegativeValue { index, value });
            }
        }
        Ok(Self(values))
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        Self::new(values.to_vec())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Multiplies every element by `factor`, which must be finite and positive.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(FairnessError::InvalidParameter(format!(
                "scale factor must be finite and positive, got {factor}"
            )));
        }
        Self::new(self.0.iter().map(|v| v * factor).collect())
    }

    /// Values sorted ascending.
    pub fn sorted(&self) -> Vec<f64> {
        let mut sorted = self.0.clone();
        sorted.sort_by(f64::total_cmp);
        sorted
    }
}

impl Deref for ValueVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for ValueVector {
    type Error = FairnessError;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

impl TryFrom<&[f64]> for ValueVector {
    type Error = FairnessError;

    fn try_from(values: &[f64]) -> Result<Self> {
        Self::from_slice(values)
    }
}

/// One member of the population.
#[derive(Debug, Clone, PartialEq)]
pub struct Agent {
    pub id: String,
    /// Contribution or initial situation `x_i`.
    pub input: f64,
    /// Welfare weight `alpha_i`.
    pub weight: f64,
}

impl Agent {
    pub fn new(id: impl Into<String>, input: f64) -> Result<Self> {
        Self::with_weight(id, input, 1.0)
    }

    pub fn with_weight(id: impl Into<String>, input: f64, weight: f64) -> Result<Self> {
        let id = id.into();
        if !(input.is_finite() && input >= 0.0) {
            return Err(FairnessError::InvalidParameter(format!(
                "agent {id}: input must be finite and nonnegative, got {input}"
            )));
        }
        if !(weight.is_finite() && weight > 0.0) {
            return Err(FairnessError::InvalidParameter(format!(
                "agent {id}: weight must be finite and positive, got {weight}"
            )));
        }
        Ok(Self { id, input, weight })
    }
}

/// Checks that agent ids are unique and returns the input vector `x`.
pub fn population_inputs(agents: &[Agent]) -> Result<ValueVector> {
    for (i, agent) in agents.iter().enumerate() {
        if agents[..i].iter().any(|other| other.id == agent.id) {
            return Err(FairnessError::InvalidParameter(format!(
                "duplicate agent id {:?}",
                agent.id
            )));
        }
    }
    ValueVector::new(agents.iter().map(|a| a.input).collect())
}

/// Inputs, outputs and utilities of one candidate allocation.
#[derive(Debug, Clone, PartialEq)]
pub struct AllocationContext {
    inputs: ValueVector,
    outputs: ValueVector,
    utilities: ValueVector,
}

impl AllocationContext {
    pub fn new(inputs: ValueVector, outputs: ValueVector, utilities: ValueVector) -> Result<Self> {
        let n = inputs.len();
        for other in [&outputs, &utilities] {
            if other.len() != n {
                return Err(FairnessError::LengthMismatch {
                    expected: n,
                    actual: other.len(),
                });
            }
        }
        Ok(Self {
            inputs,
            outputs,
            utilities,
        })
    }

    /// Builds a context from raw slices.
    pub fn from_slices(inputs: &[f64], outputs: &[f64], utilities: &[f64]) -> Result<Self> {
        Self::new(
            ValueVector::from_slice(inputs)?,
            ValueVector::from_slice(outputs)?,
            ValueVector::from_slice(utilities)?,
        )
    }

    /// Context whose utilities equal its outputs.
    pub fn identity_utility(inputs: ValueVector, outputs: ValueVector) -> Result<Self> {
        let utilities = outputs.clone();
        Self::new(inputs, outputs, utilities)
    }

    pub fn inputs(&self) -> &ValueVector {
        &self.inputs
    }

    pub fn outputs(&self) -> &ValueVector {
        &self.outputs
    }

    pub fn utilities(&self) -> &ValueVector {
        &self.utilities
    }

    pub fn population(&self) -> usize {
        self.inputs.len()
    }
}

pub fn mean(v: &ValueVector) -> f64 {
    v.sum() / v.len() as f64
}

pub fn min_value(v: &ValueVector) -> f64 {
    v.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Fraction of individuals whose value reaches the threshold (inclusive).
pub fn threshold_share(v: &ValueVector, threshold: f64) -> Result<f64> {
    if !threshold.is_finite() {
        return Err(FairnessError::InvalidParameter(format!(
            "threshold must be finite, got {threshold}"
        )));
    }
    let hits = v.iter().filter(|&&value| value >= threshold).count();
    Ok(hits as f64 / v.len() as f64)
}

/// Element-wise `y_i / x_i`.
pub fn ratio_vector(outputs: &ValueVector, inputs: &ValueVector) -> Result<ValueVector> {
    if outputs.len() != inputs.len() {
        return Err(FairnessError::LengthMismatch {
            expected: inputs.len(),
            actual: outputs.len(),
        });
    }
    if let Some(index) = inputs.iter().position(|&x| x == 0.0) {
        return Err(FairnessError::ZeroInput { index });
    }
    ValueVector::new(
        outputs
            .iter()
            .zip(inputs.iter())
            .map(|(y, x)| y / x)
            .collect(),
    )
}
