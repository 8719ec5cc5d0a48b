//! Division problems, candidate generation and ranking.

mod continuous;
mod discrete;
mod ranking;

pub use continuous::{
    frontier_context, heatmap, optimize_frontier, ContinuousProblem, FrontierOptimum, HeatmapCell,
};
pub use discrete::{
    enumerate_discrete, evaluate_discrete, DiscreteAllocation, DiscreteProblem, Piece,
    DEFAULT_ENUMERATION_CAP,
};
pub use ranking::{aggregate, competition_ranks, rank, Aggregation, RankingTable, TIE_TOLERANCE};
