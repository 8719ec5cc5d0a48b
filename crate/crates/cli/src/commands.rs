//! The `metrics`, `evaluate` and `heatmap` pipelines, independent of argument parsing.

use std::collections::BTreeMap;

use fairness_core::allocation::{
    enumerate_discrete, evaluate_discrete, frontier_context, heatmap, optimize_frontier,
    RankingTable,
};
use fairness_core::dispersion::{dispersion, Aversion, DispersionMetric};
use fairness_core::principles::{score, Direction, PrincipleScore};
use fairness_core::welfare::{benthamite, bernoulli_nash, foster, isoelastic, rawlsian, sen};
use fairness_core::{AllocationContext, FairnessError, ValueVector};

use crate::config::{Config, Problem};
use crate::error::CliError;
use crate::format::{sig6, table};

pub const DEFAULT_RESOLUTION: usize = 10_001;
pub const DEFAULT_GRID: usize = 100;

/// A metric or welfare function that can be applied to a bare vector.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Statistic {
    Dispersion(DispersionMetric),
    Isoelastic(Aversion),
    Benthamite,
    Rawlsian,
    BernoulliNash,
    Sen,
    Foster,
}

impl Statistic {
    fn parse(name: &str) -> Result<Self, CliError> {
        let name = name.trim();
        if let Ok(metric) = name.parse::<DispersionMetric>() {
            return Ok(Statistic::Dispersion(metric));
        }
        let (head, arg) = match name.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (name, None),
        };
        let statistic =
            match (head, arg) {
                ("isoelastic", Some(rho)) => Statistic::Isoelastic(rho.parse().map_err(|_| {
                    CliError::Input(format!("bad isoelastic parameter in {name:?}"))
                })?),
                ("isoelastic", None) => Statistic::Isoelastic(Aversion::Finite(0.5)),
                ("benthamite", None) => Statistic::Benthamite,
                ("rawlsian", None) => Statistic::Rawlsian,
                ("bernoulli_nash", None) => Statistic::BernoulliNash,
                ("sen", None) => Statistic::Sen,
                ("foster", None) => Statistic::Foster,
                _ => return Err(CliError::Input(format!("unknown metric {name:?}"))),
            };
        Ok(statistic)
    }

    fn apply(self, v: &ValueVector) -> fairness_core::Result<f64> {
        match self {
            Statistic::Dispersion(metric) => dispersion(metric, v),
            Statistic::Isoelastic(rho) => isoelastic(v, None, rho),
            Statistic::Benthamite => Ok(benthamite(v)),
            Statistic::Rawlsian => Ok(rawlsian(v)),
            Statistic::BernoulliNash => bernoulli_nash(v, None),
            Statistic::Sen => sen(v),
            Statistic::Foster => foster(v),
        }
    }
}

/// Parses a comma-separated list of reals.
pub fn parse_values(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|part| {
            let part = part.trim();
            part.parse::<f64>()
                .map_err(|_| CliError::Input(format!("not a number: {part:?}")))
        })
        .collect()
}

/// One `name  value` row per requested metric.
pub fn metrics(values: &[f64], names: &[String]) -> Result<String, CliError> {
    if names.is_empty() {
        return Err(CliError::Input("at least one --metric is required".into()));
    }
    let statistics = names
        .iter()
        .map(|n| Statistic::parse(n))
        .collect::<Result<Vec<_>, _>>()?;
    let v = ValueVector::from_slice(values).map_err(CliError::Domain)?;
    let mut rows = Vec::with_capacity(names.len());
    for (name, statistic) in names.iter().zip(statistics) {
        let value = statistic.apply(&v).map_err(CliError::Domain)?;
        rows.push(vec![name.trim().to_string(), sig6(value)]);
    }
    Ok(table(&rows))
}

#[derive(Debug, Clone)]
pub struct Candidate {
    pub label: String,
    pub context: AllocationContext,
}

/// Candidates, their scores under every principle and the combined ranking.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub agents: Vec<String>,
    pub candidates: Vec<Candidate>,
    pub table: RankingTable,
}

impl Evaluation {
    /// Candidate labels, best combined rank first.
    pub fn combined_order(&self) -> Vec<&str> {
        self.table
            .aggregate
            .order
            .iter()
            .map(|&c| self.table.candidates[c].as_str())
            .collect()
    }
}

fn candidates(config: &Config, resolution: usize) -> Result<Vec<Candidate>, CliError> {
    match &config.problem {
        Problem::Discrete { problem, scenarios } => {
            let labelled = match scenarios {
                Some(list) => list.clone(),
                None => enumerate_discrete(problem)
                    .map_err(|source| CliError::Problem {
                        context: "enumerating allocations".into(),
                        source,
                    })?
                    .into_iter()
                    .enumerate()
                    .map(|(i, a)| (format!("s{}", i + 1), a))
                    .collect(),
            };
            labelled
                .into_iter()
                .map(|(label, allocation)| {
                    let context = evaluate_discrete(problem, &allocation).map_err(|source| {
                        CliError::Problem {
                            context: format!("evaluating scenario {label:?}"),
                            source,
                        }
                    })?;
                    Ok(Candidate { label, context })
                })
                .collect()
        }
        Problem::Continuous(problem) => {
            if resolution < 2 {
                return Err(CliError::Input(format!(
                    "resolution must be at least 2, got {resolution}"
                )));
            }
            let mut found: Vec<(Vec<String>, ValueVector)> = Vec::new();
            for spec in &config.principles {
                let optimum = optimize_frontier(problem, spec, resolution).map_err(|source| {
                    CliError::Scoring {
                        principle: spec.label().to_string(),
                        candidate: "frontier".into(),
                        source,
                    }
                })?;
                match found.iter_mut().find(|(_, s)| *s == optimum.shares) {
                    Some((labels, _)) => labels.push(spec.label().to_string()),
                    None => found.push((vec![spec.label().to_string()], optimum.shares)),
                }
            }
            found
                .into_iter()
                .map(|(labels, shares)| {
                    let label = labels.join("+");
                    let context =
                        frontier_context(problem, &shares).map_err(|source| CliError::Problem {
                            context: format!("frontier point {label:?}"),
                            source,
                        })?;
                    Ok(Candidate { label, context })
                })
                .collect()
        }
    }
}

/// Scores every candidate under every principle and ranks them.
pub fn evaluate(config: &Config, resolution: usize) -> Result<Evaluation, CliError> {
    let candidates = candidates(config, resolution)?;
    let mut scores: Vec<Vec<PrincipleScore>> = Vec::with_capacity(config.principles.len());
    for spec in &config.principles {
        let mut row = Vec::with_capacity(candidates.len());
        for candidate in &candidates {
            let scoring_error = |source| CliError::Scoring {
                principle: spec.label().to_string(),
                candidate: candidate.label.clone(),
                source,
            };
            let s = score(spec, &candidate.context).map_err(scoring_error)?;
            if !s.value.is_finite() {
                return Err(scoring_error(FairnessError::NonFiniteScore {
                    candidate: row.len(),
                }));
            }
            row.push(s);
        }
        scores.push(row);
    }
    let labels = candidates.iter().map(|c| c.label.clone()).collect();
    let table = RankingTable::build(labels, &scores, &config.weights).map_err(|source| {
        CliError::Problem {
            context: "ranking candidates".into(),
            source,
        }
    })?;
    Ok(Evaluation {
        agents: config.agents().iter().map(|a| a.id.clone()).collect(),
        candidates,
        table,
    })
}

/// Human-readable report: candidates, scores with ranks, combined ranking.
pub fn render_report(evaluation: &Evaluation) -> String {
    let mut out = String::from("Candidates\n");
    let mut header = vec!["candidate".to_string()];
    header.extend(evaluation.agents.iter().map(|a| format!("y[{a}]")));
    header.extend(evaluation.agents.iter().map(|a| format!("u[{a}]")));
    let mut rows = vec![header];
    for c in &evaluation.candidates {
        let mut row = vec![c.label.clone()];
        row.extend(c.context.outputs().iter().map(|v| sig6(*v)));
        row.extend(c.context.utilities().iter().map(|v| sig6(*v)));
        rows.push(row);
    }
    out.push_str(&table(&rows));

    let t = &evaluation.table;
    out.push_str("\nScores (rank)\n");
    let mut header = vec!["principle".to_string(), "direction".to_string()];
    header.extend(t.candidates.iter().cloned());
    let mut rows = vec![header];
    for (p, label) in t.principles.iter().enumerate() {
        let mut row = vec![label.clone(), t.directions[p].to_string()];
        row.extend(
            t.scores[p]
                .iter()
                .zip(&t.ranks[p])
                .map(|(s, r)| format!("{} ({r})", sig6(*s))),
        );
        rows.push(row);
    }
    out.push_str(&table(&rows));

    out.push_str("\nCombined ranking\n");
    let mut rows = vec![vec![
        "rank".to_string(),
        "candidate".to_string(),
        "points".to_string(),
    ]];
    for (position, &c) in t.aggregate.order.iter().enumerate() {
        rows.push(vec![
            (position + 1).to_string(),
            t.candidates[c].clone(),
            sig6(t.aggregate.points[c]),
        ]);
    }
    out.push_str(&table(&rows));
    out
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(writer: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Input(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// `candidate,principle,score,direction,rank`, one row per candidate and principle.
pub fn scores_csv(evaluation: &Evaluation) -> Result<String, CliError> {
    let t = &evaluation.table;
    let mut w = csv_writer();
    w.write_record(["candidate", "principle", "score", "direction", "rank"])?;
    for (c, candidate) in t.candidates.iter().enumerate() {
        for (p, principle) in t.principles.iter().enumerate() {
            w.write_record([
                candidate.as_str(),
                principle.as_str(),
                &t.scores[p][c].to_string(),
                t.directions[p].name(),
                &t.ranks[p][c].to_string(),
            ])?;
        }
    }
    finish(w)
}

/// Rebuilds the ranking from a scores CSV; unlisted principles weigh 1.
pub fn ranking_from_csv(
    text: &str,
    weights: &BTreeMap<String, f64>,
) -> Result<RankingTable, CliError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut candidates: Vec<String> = Vec::new();
    let mut principles: Vec<String> = Vec::new();
    let mut directions: Vec<Direction> = Vec::new();
    let mut entries: Vec<(usize, usize, f64)> = Vec::new();
    for record in reader.records() {
        let record = record?;
        if record.len() != 5 {
            return Err(CliError::Input(format!(
                "expected 5 fields, got {}",
                record.len()
            )));
        }
        let c = position_or_push(&mut candidates, &record[0]);
        let p = position_or_push(&mut principles, &record[1]);
        let direction: Direction = record[3]
            .parse()
            .map_err(|_| CliError::Input(format!("bad direction {:?}", &record[3])))?;
        if p == directions.len() {
            directions.push(direction);
        }
        let value: f64 = record[2]
            .parse()
            .map_err(|_| CliError::Input(format!("bad score {:?}", &record[2])))?;
        entries.push((p, c, value));
    }
    let mut scores = vec![vec![f64::NAN; candidates.len()]; principles.len()];
    for (p, c, value) in entries {
        scores[p][c] = value;
    }
    let weights: Vec<f64> = principles
        .iter()
        .map(|p| weights.get(p).copied().unwrap_or(1.0))
        .collect();
    RankingTable::from_values(candidates, principles, directions, scores, &weights).map_err(
        |source| CliError::Problem {
            context: "re-ranking csv".into(),
            source,
        },
    )
}

fn position_or_push(list: &mut Vec<String>, item: &str) -> usize {
    match list.iter().position(|x| x == item) {
        Some(i) => i,
        None => {
            list.push(item.to_string());
            list.len() - 1
        }
    }
}

/// `y_a,y_b,score,on_frontier` over the `(grid + 1)^2` lattice.
pub fn heatmap_csv(
    config: &Config,
    principle: Option<&str>,
    grid: usize,
) -> Result<String, CliError> {
    let Problem::Continuous(problem) = &config.problem else {
        return Err(CliError::Input("heatmap needs a continuous problem".into()));
    };
    if problem.agents().len() != 2 {
        return Err(CliError::Input(format!(
            "heatmap needs exactly two agents, config has {}",
            problem.agents().len()
        )));
    }
    if grid < 1 {
        return Err(CliError::Input("grid must be at least 1".into()));
    }
    let spec = match principle {
        Some(name) => config
            .principle(name)
            .ok_or_else(|| CliError::Input(format!("config has no principle {name:?}")))?,
        None if config.principles.len() == 1 => &config.principles[0],
        None => {
            let labels: Vec<&str> = config.principles.iter().map(|p| p.label()).collect();
            return Err(CliError::Input(format!(
                "--principle is required; choose one of {}",
                labels.join(", ")
            )));
        }
    };
    let cells = heatmap(problem, spec, grid).map_err(|source| CliError::Problem {
        context: format!("heatmap for {:?}", spec.label()),
        source,
    })?;
    let mut w = csv_writer();
    w.write_record(["y_a", "y_b", "score", "on_frontier"])?;
    for cell in cells {
        w.write_record([
            cell.y_a.to_string(),
            cell.y_b.to_string(),
            cell.score.map(|s| s.to_string()).unwrap_or_default(),
            cell.on_frontier.to_string(),
        ])?;
    }
    finish(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;
    use crate::presets;

    #[test]
    fn metric_names_cover_welfare_functions() {
        let out = metrics(
            &[1.0, 3.0],
            &["gini".into(), "benthamite".into(), "isoelastic:inf".into()],
        )
        .unwrap();
        assert_eq!(
            out,
            "gini            0.25\nbenthamite      4\nisoelastic:inf  1\n"
        );
    }

    #[test]
    fn domain_errors_carry_kind() {
        let err = metrics(&[0.0, 1.0], &["theil_l".into()]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().starts_with("ZeroElement"));
    }

    #[test]
    fn csv_round_trip_reproduces_ranking() {
        let config = parse_config(presets::CAKE).unwrap();
        let evaluation = evaluate(&config, DEFAULT_RESOLUTION).unwrap();
        let csv = scores_csv(&evaluation).unwrap();
        let rebuilt = ranking_from_csv(&csv, &BTreeMap::new()).unwrap();
        assert_eq!(rebuilt, evaluation.table);
    }

    #[test]
    fn heatmap_rejects_discrete_configs() {
        let config = parse_config(presets::CAKE).unwrap();
        assert_eq!(heatmap_csv(&config, None, 4).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn heatmap_smallest_grid() {
        let config = parse_config(presets::FISHERMEN).unwrap();
        let csv = heatmap_csv(&config, Some("greater_good"), 1).unwrap();
        assert_eq!(csv.lines().count(), 5);
        assert_eq!(csv.lines().nth(1), Some("0,0,0,true"));
    }
}
