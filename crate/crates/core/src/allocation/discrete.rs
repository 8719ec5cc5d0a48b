use crate::error::{FairnessError, Result};
use crate::model::{population_inputs, Agent, AllocationContext, ValueVector};

pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

/// An indivisible piece of the resource.
#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    /// Fraction of the whole resource.
    pub amount: f64,
    /// Extra utility the piece yields to each agent, indexed like the agents.
    pub bonus: Vec<f64>,
}

/// Indivisible pieces shared among agents; every piece goes to exactly one agent.
///
/// An agent's output is the total amount received, its utility that amount
/// plus the bonuses of the received pieces.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteProblem {
    agents: Vec<Agent>,
    pieces: Vec<Piece>,
    inputs: ValueVector,
    cap: u128,
}

impl DiscreteProblem {
    pub fn new(agents: Vec<Agent>, pieces: Vec<Piece>) -> Result<Self> {
        let inputs = population_inputs(&agents)?;
        if pieces.is_empty() {
            return Err(FairnessError::InvalidParameter(
                "problem has no pieces".into(),
            ));
        }
        for (i, piece) in pieces.iter().enumerate() {
            if !(piece.amount.is_finite() && piece.amount >= 0.0) {
                return Err(FairnessError::InvalidParameter(format!(
                    "piece {i}: amount must be finite and nonnegative"
                )));
            }
            if piece.bonus.len() != agents.len() {
                return Err(FairnessError::LengthMismatch {
                    expected: agents.len(),
                    actual: piece.bonus.len(),
                });
            }
            if piece.bonus.iter().any(|b| !(b.is_finite() && *b >= 0.0)) {
                return Err(FairnessError::InvalidParameter(format!(
                    "piece {i}: bonuses must be finite and nonnegative"
                )));
            }
        }
        let total: f64 = pieces.iter().map(|p| p.amount).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(FairnessError::InvalidParameter(format!(
                "piece amounts must sum to 1, got {total}"
            )));
        }
        Ok(Self {
            agents,
            pieces,
            inputs,
            cap: DEFAULT_ENUMERATION_CAP,
        })
    }

    /// Overrides the maximum number of allocations [`enumerate_discrete`] will produce.
    pub fn with_enumeration_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// `|agents|^|pieces|`, saturating.
    pub fn allocation_count(&self) -> u128 {
        let base = self.agents.len() as u128;
        (0..self.pieces.len()).fold(1u128, |acc, _| acc.saturating_mul(base))
    }
}

/// Owner (agent index) of every piece.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiscreteAllocation {
    pub assignment: Vec<usize>,
}

impl DiscreteAllocation {
    pub fn new(assignment: Vec<usize>) -> Self {
        Self { assignment }
    }

    /// Pieces owned by `agent`.
    pub fn bundle(&self, agent: usize) -> impl Iterator<Item = usize> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter(move |(_, &owner)| owner == agent)
            .map(|(piece, _)| piece)
    }
}

/// All complete assignments, lexicographic in the assignment vector.
pub fn enumerate_discrete(problem: &DiscreteProblem) -> Result<Vec<DiscreteAllocation>> {
    let count = problem.allocation_count();
    if count > problem.cap {
        return Err(FairnessError::CombinatorialBlowup {
            count,
            cap: problem.cap,
        });
    }
    let agents = problem.agents.len();
    let pieces = problem.pieces.len();
    let mut out = Vec::with_capacity(count as usize);
    let mut current = vec![0usize; pieces];
    loop {
        out.push(DiscreteAllocation::new(current.clone()));
        // odometer increment, last piece fastest
        let mut pos = pieces;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] < agents {
                break;
            }
            current[pos] = 0;
        }
    }
}

pub fn evaluate_discrete(
    problem: &DiscreteProblem,
    allocation: &DiscreteAllocation,
) -> Result<AllocationContext> {
    let n = problem.agents.len();
    if allocation.assignment.len() != problem.pieces.len() {
        return Err(FairnessError::LengthMismatch {
            expected: problem.pieces.len(),
            actual: allocation.assignment.len(),
        });
    }
    if let Some(&owner) = allocation.assignment.iter().find(|&&owner| owner >= n) {
        return Err(FairnessError::InvalidParameter(format!(
            "allocation names agent {owner}, population has {n}"
        )));
    }
    let mut outputs = vec![0.0; n];
    let mut bonuses = vec![0.0; n];
    for (piece, &owner) in problem.pieces.iter().zip(&allocation.assignment) {
        outputs[owner] += piece.amount;
        bonuses[owner] += piece.bonus[owner];
    }
    let utilities = outputs.iter().zip(&bonuses).map(|(y, b)| y + b).collect();
    AllocationContext::new(
        problem.inputs.clone(),
        ValueVector::new(outputs)?,
        ValueVector::new(utilities)?,
    )
}
