use crate::error::{FairnessError, Result};
use crate::model::{population_inputs, Agent, AllocationContext, ValueVector};
use crate::principles::{score, Direction, PrincipleScore, PrincipleSpec};

const FRONTIER_TOLERANCE: f64 = 1e-9;
const REFINE_ITERATIONS: usize = 100;

/// A divisible resource of size `total`; agent `i` keeps `retention[i]` of
/// every unit it receives.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuousProblem {
    agents: Vec<Agent>,
    total: f64,
    retention: Vec<f64>,
    inputs: ValueVector,
}

impl ContinuousProblem {
    pub fn new(agents: Vec<Agent>, total: f64, retention: Vec<f64>) -> Result<Self> {
        let inputs = population_inputs(&agents)?;
        if !(total.is_finite() && total > 0.0) {
            return Err(FairnessError::InvalidParameter(format!(
                "total must be finite and positive, got {total}"
            )));
        }
        if retention.len() != agents.len() {
            return Err(FairnessError::LengthMismatch {
                expected: agents.len(),
                actual: retention.len(),
            });
        }
        if let Some(r) = retention.iter().find(|r| !(**r > 0.0 && **r <= 1.0)) {
            return Err(FairnessError::InvalidParameter(format!(
                "retention factors must lie in (0, 1], got {r}"
            )));
        }
        Ok(Self {
            agents,
            total,
            retention,
            inputs,
        })
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn retention(&self) -> &[f64] {
        &self.retention
    }

    /// Context for arbitrary outputs, on or off the frontier.
    pub fn context(&self, outputs: ValueVector) -> Result<AllocationContext> {
        if outputs.len() != self.agents.len() {
            return Err(FairnessError::LengthMismatch {
                expected: self.agents.len(),
                actual: outputs.len(),
            });
        }
        let utilities = outputs
            .iter()
            .zip(&self.retention)
            .map(|(y, r)| y * r)
            .collect();
        AllocationContext::new(self.inputs.clone(), outputs, ValueVector::new(utilities)?)
    }

    fn require_pair(&self) -> Result<()> {
        match self.agents.len() {
            2 => Ok(()),
            n => Err(FairnessError::UnsupportedPopulation(n)),
        }
    }

    /// Two-agent frontier point giving `t` to the first agent.
    fn split(&self, t: f64) -> Result<AllocationContext> {
        let rest = (self.total - t).max(0.0);
        self.context(ValueVector::new(vec![t, rest])?)
    }
}

/// Context for shares that exhaust the resource.
pub fn frontier_context(
    problem: &ContinuousProblem,
    shares: &ValueVector,
) -> Result<AllocationContext> {
    let sum = shares.sum();
    if (sum - problem.total).abs() > FRONTIER_TOLERANCE * problem.total.max(1.0) {
        return Err(FairnessError::OffFrontier {
            sum,
            total: problem.total,
        });
    }
    problem.context(shares.clone())
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrontierOptimum {
    pub shares: ValueVector,
    pub score: PrincipleScore,
}

impl FrontierOptimum {
    /// Amount given to the first agent.
    pub fn t(&self) -> f64 {
        self.shares[0]
    }
}

/// Score oriented so that larger is better; non-finite scores rank below everything.
fn oriented(score: &PrincipleScore) -> f64 {
    if !score.value.is_finite() {
        return f64::NEG_INFINITY;
    }
    match score.direction {
        Direction::Maximize => score.value,
        Direction::Minimize => -score.value,
    }
}

fn oriented_result(score: &Result<PrincipleScore>) -> f64 {
    score.as_ref().map_or(f64::NEG_INFINITY, oriented)
}

/// Best two-agent frontier split for `spec`.
///
/// Scans `resolution` equally spaced values of the first agent's share
/// (both endpoints included), then ternary-searches the cell around the best
/// grid point. The refined point replaces the grid point only if strictly
/// better; ties resolve toward the smaller share. Grid points whose scoring
/// fails are skipped; the error surfaces only if no point can be scored.
pub fn optimize_frontier(
    problem: &ContinuousProblem,
    spec: &PrincipleSpec,
    resolution: usize,
) -> Result<FrontierOptimum> {
    problem.require_pair()?;
    if resolution < 2 {
        return Err(FairnessError::InvalidParameter(format!(
            "resolution must be at least 2, got {resolution}"
        )));
    }
    spec.validate()?;
    let total = problem.total;
    let intervals = (resolution - 1) as f64;
    let grid_point = |i: usize| total * i as f64 / intervals;
    let evaluate = |t: f64| problem.split(t).and_then(|ctx| score(spec, &ctx));

    let mut best: Option<(usize, PrincipleScore, f64)> = None;
    let mut first_error = None;
    for i in 0..resolution {
        match evaluate(grid_point(i)) {
            Ok(s) => {
                let key = oriented(&s);
                if best
                    .as_ref()
                    .map_or(key > f64::NEG_INFINITY, |(_, _, b)| key > *b)
                {
                    best = Some((i, s, key));
                }
            }
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    let Some((index, grid_score, grid_key)) = best else {
        return Err(first_error.unwrap_or(FairnessError::NonFiniteScore { candidate: 0 }));
    };

    let mut lo = grid_point(index.saturating_sub(1));
    let mut hi = grid_point((index + 1).min(resolution - 1));
    for _ in 0..REFINE_ITERATIONS {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if oriented_result(&evaluate(m1)) >= oriented_result(&evaluate(m2)) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let refined_t = 0.5 * (lo + hi);
    let refined = evaluate(refined_t);
    let (t, score) = match refined {
        Ok(s) if oriented(&s) > grid_key => (refined_t, s),
        _ => (grid_point(index), grid_score),
    };
    Ok(FrontierOptimum {
        shares: ValueVector::new(vec![t, (total - t).max(0.0)])?,
        score,
    })
}

/// One sample of the score surface over `[0, total]^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatmapCell {
    pub y_a: f64,
    pub y_b: f64,
    /// `None` where scoring failed (e.g. a zero mean at the origin).
    pub score: Option<f64>,
    pub on_frontier: bool,
}

/// Scores every point of a `(grid + 1)^2` lattice, row-major with `y_a` as
/// the outer index.
pub fn heatmap(
    problem: &ContinuousProblem,
    spec: &PrincipleSpec,
    grid: usize,
) -> Result<Vec<HeatmapCell>> {
    problem.require_pair()?;
    if grid < 1 {
        return Err(FairnessError::InvalidParameter(
            "grid must be at least 1".into(),
        ));
    }
    spec.validate()?;
    let total = problem.total;
    let coordinate = |i: usize| total * i as f64 / grid as f64;
    let band = total / grid as f64;
    let mut cells = Vec::with_capacity((grid + 1) * (grid + 1));
    for i in 0..=grid {
        for j in 0..=grid {
            let (y_a, y_b) = (coordinate(i), coordinate(j));
            let score = ValueVector::new(vec![y_a, y_b])
                .and_then(|y| problem.context(y))
                .and_then(|ctx| score(spec, &ctx))
                .ok()
                .map(|s| s.value);
            cells.push(HeatmapCell {
                y_a,
                y_b,
                score,
                on_frontier: (y_a + y_b - total).abs() <= band,
            });
        }
    }
    Ok(cells)
}
