//! JSON problem definitions.
//!
//! A config names the agents, the problem (indivisible pieces or a divisible
//! total), the principles to score and optional aggregation weights. Parsing
//! is strict: unknown keys and keys that do not apply to the problem kind are
//! rejected with the path of the offending value.

use std::collections::BTreeMap;
use std::fmt;

use fairness_core::allocation::{ContinuousProblem, DiscreteAllocation, DiscreteProblem, Piece};
use fairness_core::dispersion::{Aversion, DispersionMetric};
use fairness_core::principles::{
    Basis, DifferenceVariant, EqualityWelfare, Mode, Principle, PrincipleKind, PrincipleSpec,
    ProportionVariant,
};
use fairness_core::Agent;
use serde::Deserialize;

/// Config error tied to a location in the document.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl ConfigError {
    fn at(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() || self.path == "." {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

type ConfigResult<T> = Result<T, ConfigError>;

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawKind {
    Discrete,
    Continuous,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    kind: RawKind,
    agents: Vec<RawAgent>,
    pieces: Option<Vec<RawPiece>>,
    scenarios: Option<Vec<RawScenario>>,
    total: Option<f64>,
    retention: Option<BTreeMap<String, f64>>,
    principles: Vec<RawPrinciple>,
    aggregation: Option<RawAggregation>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAgent {
    id: String,
    input: f64,
    #[serde(default = "unit")]
    weight: f64,
}

fn unit() -> f64 {
    1.0
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPiece {
    amount: f64,
    #[serde(default)]
    bonus: BTreeMap<String, f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    label: String,
    assignment: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawRho {
    Number(f64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPrinciple {
    principle: String,
    variant: Option<String>,
    basis: Option<String>,
    metric: Option<String>,
    threshold: Option<f64>,
    mode: Option<String>,
    rho: Option<RawRho>,
    weights: Option<BTreeMap<String, f64>>,
    label: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAggregation {
    weights: BTreeMap<String, f64>,
}

/// A validated problem together with its labelled candidate allocations.
#[derive(Debug, Clone)]
pub enum Problem {
    Discrete {
        problem: DiscreteProblem,
        /// Explicit scenarios, or `None` to enumerate every allocation.
        scenarios: Option<Vec<(String, DiscreteAllocation)>>,
    },
    Continuous(ContinuousProblem),
}

#[derive(Debug, Clone)]
pub struct Config {
    pub problem: Problem,
    pub principles: Vec<PrincipleSpec>,
    /// Aggregation weight per principle, aligned with `principles`.
    pub weights: Vec<f64>,
}

impl Config {
    pub fn agents(&self) -> &[Agent] {
        match &self.problem {
            Problem::Discrete { problem, .. } => problem.agents(),
            Problem::Continuous(problem) => problem.agents(),
        }
    }

    /// Finds a principle by label, falling back to the principle name.
    pub fn principle(&self, name: &str) -> Option<&PrincipleSpec> {
        self.principles
            .iter()
            .find(|p| p.label() == name)
            .or_else(|| {
                let wanted: Principle = name.parse().ok()?;
                self.principles.iter().find(|p| p.principle() == wanted)
            })
    }
}

/// Parses and validates a JSON config.
pub fn parse_config(text: &str) -> ConfigResult<Config> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        ConfigError::at(path, format!("{inner}"))
    })?;
    build(raw)
}

fn fail<T>(path: impl Into<String>, message: impl fmt::Display) -> ConfigResult<T> {
    Err(ConfigError::at(path, message.to_string()))
}

fn agent_index(ids: &[String], id: &str, path: String) -> ConfigResult<usize> {
    ids.iter()
        .position(|a| a == id)
        .ok_or_else(|| ConfigError::at(path, format!("unknown agent id {id:?}")))
}

/// Looks up one real per agent; `default` fills agents missing from the map.
fn per_agent(
    ids: &[String],
    map: &BTreeMap<String, f64>,
    path: &str,
    default: Option<f64>,
) -> ConfigResult<Vec<f64>> {
    for key in map.keys() {
        agent_index(ids, key, format!("{path}.{key}"))?;
    }
    ids.iter()
        .map(|id| match (map.get(id), default) {
            (Some(v), _) => Ok(*v),
            (None, Some(d)) => Ok(d),
            (None, None) => fail(path, format!("missing value for agent {id:?}")),
        })
        .collect()
}

fn build(raw: RawConfig) -> ConfigResult<Config> {
    if raw.agents.is_empty() {
        return fail("agents", "at least one agent is required");
    }
    let mut agents = Vec::with_capacity(raw.agents.len());
    for (i, a) in raw.agents.iter().enumerate() {
        if raw.agents[..i].iter().any(|b| b.id == a.id) {
            return fail(
                format!("agents[{i}].id"),
                format!("duplicate agent id {:?}", a.id),
            );
        }
        let agent = Agent::with_weight(a.id.clone(), a.input, a.weight)
            .map_err(|e| ConfigError::at(format!("agents[{i}]"), e.to_string()))?;
        agents.push(agent);
    }
    let ids: Vec<String> = agents.iter().map(|a| a.id.clone()).collect();

    let problem = match raw.kind {
        RawKind::Discrete => {
            if raw.total.is_some() {
                return fail("total", "not allowed for discrete problems");
            }
            if raw.retention.is_some() {
                return fail("retention", "not allowed for discrete problems");
            }
            let Some(raw_pieces) = raw.pieces else {
                return fail("pieces", "required for discrete problems");
            };
            let mut pieces = Vec::with_capacity(raw_pieces.len());
            for (k, p) in raw_pieces.iter().enumerate() {
                let path = format!("pieces[{k}].bonus");
                pieces.push(Piece {
                    amount: p.amount,
                    bonus: per_agent(&ids, &p.bonus, &path, Some(0.0))?,
                });
            }
            let problem = DiscreteProblem::new(agents.clone(), pieces)
                .map_err(|e| ConfigError::at("pieces", e.to_string()))?;
            let scenarios = raw
                .scenarios
                .map(|list| build_scenarios(&ids, problem.pieces().len(), list))
                .transpose()?;
            Problem::Discrete { problem, scenarios }
        }
        RawKind::Continuous => {
            if raw.pieces.is_some() {
                return fail("pieces", "not allowed for continuous problems");
            }
            if raw.scenarios.is_some() {
                return fail("scenarios", "not allowed for continuous problems");
            }
            let Some(total) = raw.total else {
                return fail("total", "required for continuous problems");
            };
            let retention = match &raw.retention {
                Some(map) => per_agent(&ids, map, "retention", None)?,
                None => vec![1.0; ids.len()],
            };
            let problem = ContinuousProblem::new(agents.clone(), total, retention)
                .map_err(|e| ConfigError::at("", e.to_string()))?;
            Problem::Continuous(problem)
        }
    };

    if raw.principles.is_empty() {
        return fail("principles", "at least one principle is required");
    }
    let principles = raw
        .principles
        .iter()
        .enumerate()
        .map(|(i, p)| build_principle(p, &agents, &format!("principles[{i}]")))
        .collect::<ConfigResult<Vec<_>>>()?;
    for (i, p) in principles.iter().enumerate() {
        if principles[..i].iter().any(|q| q.label() == p.label()) {
            return fail(
                format!("principles[{i}]"),
                format!(
                    "duplicate principle label {:?}; set a distinct \"label\"",
                    p.label()
                ),
            );
        }
    }

    let mut weights = vec![1.0; principles.len()];
    if let Some(agg) = raw.aggregation {
        for (label, w) in &agg.weights {
            let path = format!("aggregation.weights.{label}");
            let Some(i) = principles.iter().position(|p| p.label() == label) else {
                return fail(path, format!("no principle labelled {label:?}"));
            };
            if !(w.is_finite() && *w >= 0.0) {
                return fail(path, "weight must be finite and nonnegative");
            }
            weights[i] = *w;
        }
        if weights.iter().all(|w| *w == 0.0) {
            return fail(
                "aggregation.weights",
                "at least one weight must be positive",
            );
        }
    }

    Ok(Config {
        problem,
        principles,
        weights,
    })
}

fn build_scenarios(
    ids: &[String],
    pieces: usize,
    list: Vec<RawScenario>,
) -> ConfigResult<Vec<(String, DiscreteAllocation)>> {
    if list.is_empty() {
        return fail("scenarios", "must list at least one scenario when present");
    }
    let mut out: Vec<(String, DiscreteAllocation)> = Vec::with_capacity(list.len());
    for (s, scenario) in list.into_iter().enumerate() {
        let path = format!("scenarios[{s}]");
        if out.iter().any(|(label, _)| *label == scenario.label) {
            return fail(
                format!("{path}.label"),
                format!("duplicate label {:?}", scenario.label),
            );
        }
        if scenario.assignment.len() != pieces {
            return fail(
                format!("{path}.assignment"),
                format!(
                    "expected {pieces} owners, got {}",
                    scenario.assignment.len()
                ),
            );
        }
        let owners = scenario
            .assignment
            .iter()
            .enumerate()
            .map(|(k, id)| agent_index(ids, id, format!("{path}.assignment[{k}]")))
            .collect::<ConfigResult<Vec<_>>>()?;
        out.push((scenario.label, DiscreteAllocation::new(owners)));
    }
    Ok(out)
}

fn parse_basis(text: &str, path: &str) -> ConfigResult<Basis> {
    match text {
        "input" => Ok(Basis::Input),
        "output" => Ok(Basis::Output),
        "utility" => Ok(Basis::Utility),
        _ => fail(
            path,
            format!("unknown basis {text:?}; expected input, output or utility"),
        ),
    }
}

fn build_principle(
    raw: &RawPrinciple,
    agents: &[Agent],
    path: &str,
) -> ConfigResult<PrincipleSpec> {
    let principle: Principle = raw.principle.parse().map_err(|_| {
        ConfigError::at(
            format!("{path}.principle"),
            format!("unknown principle {:?}", raw.principle),
        )
    })?;
    let mode = match raw.mode.as_deref() {
        None | Some("dianemetic") => Mode::Dianemetic,
        Some("diorthotic") => Mode::Diorthotic,
        Some(other) => {
            return fail(
                format!("{path}.mode"),
                format!("unknown mode {other:?}; expected dianemetic or diorthotic"),
            )
        }
    };
    let not_allowed = |key: &str| {
        fail::<()>(
            format!("{path}.{key}"),
            format!("not allowed for principle {principle}"),
        )
    };

    let mut kind = PrincipleKind::default_for(principle);
    if let Some(text) = &raw.basis {
        let basis = parse_basis(text, &format!("{path}.basis"))?;
        match &mut kind {
            PrincipleKind::Difference { basis: b, .. }
            | PrincipleKind::Equality { basis: b, .. }
            | PrincipleKind::GreaterGood { basis: b }
            | PrincipleKind::Proportion { basis: b, .. }
            | PrincipleKind::Sufficiency { basis: b, .. } => *b = basis,
            PrincipleKind::EqualityOfOpportunity { .. } => not_allowed("basis")?,
        }
    }
    if let Some(text) = &raw.metric {
        let metric: DispersionMetric = text
            .parse()
            .map_err(|e| ConfigError::at(format!("{path}.metric"), format!("{e}")))?;
        match &mut kind {
            PrincipleKind::Equality { metric: m, .. }
            | PrincipleKind::EqualityOfOpportunity { metric: m }
            | PrincipleKind::Proportion { metric: m, .. } => *m = metric,
            _ => not_allowed("metric")?,
        }
    }
    if let Some(text) = &raw.variant {
        let vpath = format!("{path}.variant");
        let unknown = |expected: &str| {
            fail::<()>(
                vpath.clone(),
                format!("unknown variant {text:?}; expected {expected}"),
            )
        };
        match &mut kind {
            PrincipleKind::Difference { variant, .. } => match text.as_str() {
                "rawlsian" => *variant = DifferenceVariant::Rawlsian,
                "harsanyian" => *variant = DifferenceVariant::Harsanyian,
                _ => unknown("rawlsian or harsanyian")?,
            },
            PrincipleKind::Equality { welfare, .. } => match text.as_str() {
                "foster" => *welfare = EqualityWelfare::Foster,
                "sen" => *welfare = EqualityWelfare::Sen,
                _ => unknown("foster or sen")?,
            },
            PrincipleKind::Proportion { variant, .. } => match text.as_str() {
                "dispersion" => *variant = ProportionVariant::Dispersion,
                "noop" => *variant = ProportionVariant::NoOp,
                _ => unknown("dispersion or noop")?,
            },
            _ => not_allowed("variant")?,
        }
    }
    match (&mut kind, raw.threshold) {
        (PrincipleKind::Sufficiency { threshold, .. }, Some(t)) => *threshold = t,
        (PrincipleKind::Sufficiency { .. }, None) => {
            return fail(
                format!("{path}.threshold"),
                "required for principle sufficiency",
            )
        }
        (_, Some(_)) => not_allowed("threshold")?,
        (_, None) => {}
    }

    let mut spec = PrincipleSpec::new(kind, mode);
    if let Some(label) = &raw.label {
        if label.is_empty() {
            return fail(format!("{path}.label"), "must not be empty");
        }
        spec = spec.with_label(label.clone());
    }
    let rho = match &raw.rho {
        None => None,
        Some(RawRho::Number(v)) => Some(Aversion::Finite(*v)),
        Some(RawRho::Text(t)) => Some(
            t.parse::<Aversion>()
                .map_err(|e| ConfigError::at(format!("{path}.rho"), e.to_string()))?,
        ),
    };
    let ids: Vec<String> = agents.iter().map(|a| a.id.clone()).collect();
    let weights = match &raw.weights {
        Some(map) => Some(per_agent(&ids, map, &format!("{path}.weights"), Some(1.0))?),
        None if rho.is_some() => Some(agents.iter().map(|a| a.weight).collect()),
        None => None,
    };
    spec.rho = rho;
    spec.weights = weights;
    spec.validate()
        .map_err(|e| ConfigError::at(path, e.to_string()))?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal(extra: &str) -> String {
        format!(
            r#"{{"kind": "continuous", "agents": [{{"id": "A", "input": 1}}, {{"id": "B", "input": 2}}],
               "total": 4, "principles": [{{"principle": "greater_good"}}]{extra}}}"#
        )
    }

    #[test]
    fn minimal_continuous_config() {
        let config = parse_config(&minimal("")).unwrap();
        assert!(matches!(config.problem, Problem::Continuous(_)));
        assert_eq!(config.weights, vec![1.0]);
        assert_eq!(config.principles[0].label(), "greater_good");
    }

    #[test]
    fn unknown_top_level_key_is_rejected() {
        let err = parse_config(&minimal(r#", "totl": 3"#)).unwrap_err();
        assert!(err.message.contains("unknown field `totl`"), "{err}");
    }

    #[test]
    fn unknown_nested_key_reports_path() {
        let text = minimal("").replace(
            r#""principle": "greater_good""#,
            r#""principle": "greater_good", "bsis": "output""#,
        );
        let err = parse_config(&text).unwrap_err();
        assert_eq!(err.path, "principles[0].bsis");
        assert!(err.message.contains("bsis"));
    }

    #[test]
    fn kind_specific_keys_are_checked() {
        let err = parse_config(&minimal(r#", "pieces": []"#)).unwrap_err();
        assert_eq!(err.path, "pieces");
        let text = minimal("").replace(
            r#""principle": "greater_good""#,
            r#""principle": "greater_good", "threshold": 1"#,
        );
        assert_eq!(
            parse_config(&text).unwrap_err().path,
            "principles[0].threshold"
        );
    }

    #[test]
    fn sufficiency_needs_threshold() {
        let text = minimal("").replace("greater_good", "sufficiency");
        assert_eq!(
            parse_config(&text).unwrap_err().path,
            "principles[0].threshold"
        );
    }

    #[test]
    fn aggregation_weights_are_keyed_by_label() {
        let config = parse_config(&minimal(
            r#", "aggregation": {"weights": {"greater_good": 2.5}}"#,
        ))
        .unwrap();
        assert_eq!(config.weights, vec![2.5]);
        let err =
            parse_config(&minimal(r#", "aggregation": {"weights": {"nope": 1}}"#)).unwrap_err();
        assert_eq!(err.path, "aggregation.weights.nope");
    }

    #[test]
    fn rho_accepts_numbers_and_infinity() {
        let text = minimal("").replace(
            r#""principle": "greater_good""#,
            r#""principle": "greater_good", "mode": "diorthotic", "rho": "inf""#,
        );
        let config = parse_config(&text).unwrap();
        assert_eq!(config.principles[0].rho, Some(Aversion::Infinite));
        assert_eq!(config.principles[0].weights, Some(vec![1.0, 1.0]));
    }
}
