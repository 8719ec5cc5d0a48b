use crate::error::{FairnessError, Result};
use crate::principles::{Direction, PrincipleScore};

/// Relative gap below which two scores count as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Competition ranks (1 = best) of `values` under `direction`.
///
/// Tied values share the smallest applicable rank and the next rank is skipped.
/// Values within [`TIE_TOLERANCE`] of each other (relative) are tied, so sums
/// that agree in exact arithmetic are not split by rounding.
pub fn competition_ranks(values: &[f64], direction: Direction) -> Result<Vec<usize>> {
    if let Some(candidate) = values.iter().position(|v| !v.is_finite()) {
        return Err(FairnessError::NonFiniteScore { candidate });
    }
    let better = |a: f64, b: f64| {
        let gap = TIE_TOLERANCE * a.abs().max(b.abs());
        match direction {
            Direction::Maximize => a > b + gap,
            Direction::Minimize => a < b - gap,
        }
    };
    Ok(values
        .iter()
        .map(|&v| 1 + values.iter().filter(|&&other| better(other, v)).count())
        .collect())
}

/// Ranks one principle's scores across candidates.
pub fn rank(scores: &[PrincipleScore]) -> Result<Vec<usize>> {
    let Some(first) = scores.first() else {
        return Ok(Vec::new());
    };
    if scores.iter().any(|s| s.direction != first.direction) {
        return Err(FairnessError::InvalidParameter(
            "scores of one principle must share a direction".into(),
        ));
    }
    let values: Vec<f64> = scores.iter().map(|s| s.value).collect();
    competition_ranks(&values, first.direction)
}

/// Weighted Borda aggregation of per-principle ranks.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregation {
    /// `sum_p weight_p * (k - rank_p)` per candidate.
    pub points: Vec<f64>,
    /// Candidate indices, best first.
    pub order: Vec<usize>,
    /// Combined position (1 = best) per candidate; ties resolve by candidate order.
    pub combined: Vec<usize>,
}

/// Aggregates `ranks[principle][candidate]` with one weight per principle.
pub fn aggregate(ranks: &[Vec<usize>], weights: &[f64]) -> Result<Aggregation> {
    if ranks.len() != weights.len() {
        return Err(FairnessError::WeightMismatch {
            expected: ranks.len(),
            actual: weights.len(),
        });
    }
    if let Some(bad) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
        return Err(FairnessError::InvalidParameter(format!(
            "aggregation weights must be finite and nonnegative, got {bad}"
        )));
    }
    if !weights.iter().any(|&w| w > 0.0) {
        return Err(FairnessError::AllZeroWeights);
    }
    let k = ranks.first().map_or(0, Vec::len);
    if let Some(row) = ranks.iter().find(|row| row.len() != k) {
        return Err(FairnessError::LengthMismatch {
            expected: k,
            actual: row.len(),
        });
    }
    let mut points = vec![0.0; k];
    for (row, &w) in ranks.iter().zip(weights) {
        for (p, &r) in points.iter_mut().zip(row) {
            *p += w * (k as f64 - r as f64);
        }
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| points[b].total_cmp(&points[a]).then(a.cmp(&b)));
    let mut combined = vec![0; k];
    for (position, &candidate) in order.iter().enumerate() {
        combined[candidate] = position + 1;
    }
    Ok(Aggregation {
        points,
        order,
        combined,
    })
}

/// Scores, per-principle ranks and the combined ranking of a candidate set.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingTable {
    pub candidates: Vec<String>,
    pub principles: Vec<String>,
    pub directions: Vec<Direction>,
    /// `scores[principle][candidate]`
    pub scores: Vec<Vec<f64>>,
    /// `ranks[principle][candidate]`
    pub ranks: Vec<Vec<usize>>,
    pub aggregate: Aggregation,
}

impl RankingTable {
    /// Builds the table from `scores[principle][candidate]`.
    pub fn build(
        candidates: Vec<String>,
        scores: &[Vec<PrincipleScore>],
        weights: &[f64],
    ) -> Result<Self> {
        let principles = scores
            .iter()
            .map(|row| {
                row.first()
                    .map_or_else(String::new, |s| s.spec.label().to_string())
            })
            .collect();
        let mut directions = Vec::with_capacity(scores.len());
        for row in scores {
            rank(row)?;
            directions.push(row.first().map_or(Direction::Maximize, |s| s.direction));
        }
        let values = scores
            .iter()
            .map(|row| row.iter().map(|s| s.value).collect())
            .collect();
        Self::from_values(candidates, principles, directions, values, weights)
    }

    pub fn from_values(
        candidates: Vec<String>,
        principles: Vec<String>,
        directions: Vec<Direction>,
        scores: Vec<Vec<f64>>,
        weights: &[f64],
    ) -> Result<Self> {
        if principles.len() != scores.len() || directions.len() != scores.len() {
            return Err(FairnessError::LengthMismatch {
                expected: scores.len(),
                actual: principles.len().min(directions.len()),
            });
        }
        if let Some(row) = scores.iter().find(|row| row.len() != candidates.len()) {
            return Err(FairnessError::LengthMismatch {
                expected: candidates.len(),
                actual: row.len(),
            });
        }
        let ranks = scores
            .iter()
            .zip(&directions)
            .map(|(row, &direction)| competition_ranks(row, direction))
            .collect::<Result<Vec<_>>>()?;
        let aggregate = aggregate(&ranks, weights)?;
        Ok(Self {
            candidates,
            principles,
            directions,
            scores,
            ranks,
            aggregate,
        })
    }

    /// Candidates holding rank 1 under `principle`.
    pub fn winners(&self, principle: usize) -> Vec<&str> {
        self.ranks[principle]
            .iter()
            .zip(&self.candidates)
            .filter(|(r, _)| **r == 1)
            .map(|(_, c)| c.as_str())
            .collect()
    }

    pub fn principle_index(&self, label: &str) -> Option<usize> {
        self.principles.iter().position(|p| p == label)
    }
}
