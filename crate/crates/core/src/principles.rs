//! The six guiding principles of distributive fairness and their scores.
//!
//! Each principle can be scored in two modes. Dianemetic scores are plain
//! statistics of one vector (minimum, sum, dispersion, threshold share) with a
//! per-principle optimisation direction. Diorthotic scores are welfare
//! functions and are always maximised.

use std::fmt;
use std::str::FromStr;

use crate::dispersion::{dispersion, Aversion, DispersionMetric};
use crate::error::{FairnessError, Result};
use crate::model::{
    mean, min_value, ratio_vector, threshold_share, AllocationContext, ValueVector,
};
use crate::welfare::{foster, negated, rawlsian, sen, welfare_of, WelfareFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Principle {
    Difference,
    Equality,
    EqualityOfOpportunity,
    GreaterGood,
    Proportion,
    Sufficiency,
}

impl Principle {
    pub const ALL: [Principle; 6] = [
        Principle::Difference,
        Principle::Equality,
        Principle::EqualityOfOpportunity,
        Principle::GreaterGood,
        Principle::Proportion,
        Principle::Sufficiency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Principle::Difference => "difference",
            Principle::Equality => "equality",
            Principle::EqualityOfOpportunity => "equality_of_opportunity",
            Principle::GreaterGood => "greater_good",
            Principle::Proportion => "proportion",
            Principle::Sufficiency => "sufficiency",
        }
    }
}

impl fmt::Display for Principle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Principle {
    type Err = FairnessError;

    fn from_str(s: &str) -> Result<Self> {
        let normalized = s.trim().to_ascii_lowercase().replace(['-', ' '], "_");
        Principle::ALL
            .into_iter()
            .find(|p| p.name() == normalized)
            .ok_or_else(|| FairnessError::InvalidParameter(format!("unknown principle {s:?}")))
    }
}

/// Which vector a principle is scored on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Input,
    Output,
    Utility,
}

impl Basis {
    fn select(self, ctx: &AllocationContext) -> &ValueVector {
        match self {
            Basis::Input => ctx.inputs(),
            Basis::Output => ctx.outputs(),
            Basis::Utility => ctx.utilities(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Dianemetic,
    Diorthotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Maximize,
    Minimize,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Maximize => "maximize",
            Direction::Minimize => "minimize",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Direction {
    type Err = FairnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "maximize" => Ok(Direction::Maximize),
            "minimize" => Ok(Direction::Minimize),
            _ => Err(FairnessError::InvalidParameter(format!(
                "unknown direction {s:?}"
            ))),
        }
    }
}

/// Minimum (Rawlsian) or average (Harsanyian) for the difference principle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DifferenceVariant {
    #[default]
    Rawlsian,
    Harsanyian,
}

/// Welfare function standing in for the equality principle in diorthotic mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EqualityWelfare {
    #[default]
    Foster,
    Sen,
}

/// Diorthotic proportion: dispersion of ratios, or no judgement at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProportionVariant {
    #[default]
    Dispersion,
    NoOp,
}

/// Principle together with the parameters that only make sense for it.
#[derive(Debug, Clone, PartialEq)]
pub enum PrincipleKind {
    Difference {
        variant: DifferenceVariant,
        basis: Basis,
    },
    Equality {
        basis: Basis,
        metric: DispersionMetric,
        welfare: EqualityWelfare,
    },
    EqualityOfOpportunity {
        metric: DispersionMetric,
    },
    GreaterGood {
        basis: Basis,
    },
    Proportion {
        basis: Basis,
        metric: DispersionMetric,
        variant: ProportionVariant,
    },
    Sufficiency {
        basis: Basis,
        threshold: f64,
    },
}

impl PrincipleKind {
    pub fn principle(&self) -> Principle {
        match self {
            PrincipleKind::Difference { .. } => Principle::Difference,
            PrincipleKind::Equality { .. } => Principle::Equality,
            PrincipleKind::EqualityOfOpportunity { .. } => Principle::EqualityOfOpportunity,
            PrincipleKind::GreaterGood { .. } => Principle::GreaterGood,
            PrincipleKind::Proportion { .. } => Principle::Proportion,
            PrincipleKind::Sufficiency { .. } => Principle::Sufficiency,
        }
    }

    /// Defaults: outputs for difference, equality, proportion and
    /// sufficiency; utilities for greater good; inputs for equality of
    /// opportunity; standard deviation as the dispersion metric.
    pub fn default_for(principle: Principle) -> Self {
        match principle {
            Principle::Difference => PrincipleKind::Difference {
                variant: DifferenceVariant::default(),
                basis: Basis::Output,
            },
            Principle::Equality => PrincipleKind::Equality {
                basis: Basis::Output,
                metric: DispersionMetric::StdDev,
                welfare: EqualityWelfare::default(),
            },
            Principle::EqualityOfOpportunity => PrincipleKind::EqualityOfOpportunity {
                metric: DispersionMetric::StdDev,
            },
            Principle::GreaterGood => PrincipleKind::GreaterGood {
                basis: Basis::Utility,
            },
            Principle::Proportion => PrincipleKind::Proportion {
                basis: Basis::Output,
                metric: DispersionMetric::StdDev,
                variant: ProportionVariant::default(),
            },
            Principle::Sufficiency => PrincipleKind::Sufficiency {
                basis: Basis::Output,
                threshold: 0.0,
            },
        }
    }

    pub fn basis(&self) -> Basis {
        match self {
            PrincipleKind::Difference { basis, .. }
            | PrincipleKind::Equality { basis, .. }
            | PrincipleKind::GreaterGood { basis }
            | PrincipleKind::Proportion { basis, .. }
            | PrincipleKind::Sufficiency { basis, .. } => *basis,
            PrincipleKind::EqualityOfOpportunity { .. } => Basis::Input,
        }
    }
}

/// A principle, its scoring mode and optional welfare parameters.
///
/// `rho` and `weights` switch the diorthotic difference and greater-good
/// scores to the weighted isoelastic welfare function.
#[derive(Debug, Clone, PartialEq)]
pub struct PrincipleSpec {
    pub kind: PrincipleKind,
    pub mode: Mode,
    pub rho: Option<Aversion>,
    pub weights: Option<Vec<f64>>,
    pub label: Option<String>,
}

impl PrincipleSpec {
    pub fn new(kind: PrincipleKind, mode: Mode) -> Self {
        Self {
            kind,
            mode,
            rho: None,
            weights: None,
            label: None,
        }
    }

    pub fn dianemetic(kind: PrincipleKind) -> Self {
        Self::new(kind, Mode::Dianemetic)
    }

    pub fn diorthotic(kind: PrincipleKind) -> Self {
        Self::new(kind, Mode::Diorthotic)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_isoelastic(mut self, rho: Aversion, weights: Option<Vec<f64>>) -> Self {
        self.rho = Some(rho);
        self.weights = weights;
        self
    }

    pub fn principle(&self) -> Principle {
        self.kind.principle()
    }

    /// Explicit label, or the principle name.
    pub fn label(&self) -> &str {
        self.label.as_deref().unwrap_or(self.principle().name())
    }

    /// Checks parameter combinations that the type alone cannot rule out.
    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(FairnessError::InvalidParameter(msg));
        let basis = self.kind.basis();
        match &self.kind {
            PrincipleKind::Difference { .. } | PrincipleKind::EqualityOfOpportunity { .. } => {}
            _ if basis == Basis::Input => {
                return invalid(format!(
                    "{}: input basis is only supported for the difference principle",
                    self.label()
                ))
            }
            PrincipleKind::Sufficiency { threshold, .. } if !threshold.is_finite() => {
                return invalid(format!("{}: threshold must be finite", self.label()))
            }
            _ => {}
        }
        let metric = match &self.kind {
            PrincipleKind::Equality { metric, .. }
            | PrincipleKind::EqualityOfOpportunity { metric }
            | PrincipleKind::Proportion { metric, .. } => Some(*metric),
            _ => None,
        };
        if let Some(DispersionMetric::Atkinson(eps)) = metric {
            eps.validate()?;
        }
        if let Some(rho) = self.rho {
            rho.validate()?;
        }
        let accepts_welfare_params = matches!(
            self.kind,
            PrincipleKind::Difference { .. } | PrincipleKind::GreaterGood { .. }
        );
        if (self.rho.is_some() || self.weights.is_some()) && !accepts_welfare_params {
            return invalid(format!(
                "{}: rho/weights apply only to difference and greater_good",
                self.label()
            ));
        }
        Ok(())
    }

    /// Isoelastic welfare configured through `rho`/`weights`, if any.
    fn isoelastic(&self) -> Option<WelfareFunction> {
        if self.rho.is_none() && self.weights.is_none() {
            return None;
        }
        Some(WelfareFunction::Isoelastic {
            rho: self.rho.unwrap_or(Aversion::Finite(0.0)),
            weights: self.weights.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrincipleScore {
    pub spec: PrincipleSpec,
    pub value: f64,
    pub direction: Direction,
}

impl PrincipleScore {
    /// True when `self` is strictly better than `other` under the score direction.
    pub fn beats(&self, other: f64) -> bool {
        match self.direction {
            Direction::Maximize => self.value > other,
            Direction::Minimize => self.value < other,
        }
    }
}

/// Scores `ctx` according to the spec's mode.
pub fn score(spec: &PrincipleSpec, ctx: &AllocationContext) -> Result<PrincipleScore> {
    match spec.mode {
        Mode::Dianemetic => score_dianemetic(spec, ctx),
        Mode::Diorthotic => score_diorthotic(spec, ctx),
    }
}

pub fn score_dianemetic(spec: &PrincipleSpec, ctx: &AllocationContext) -> Result<PrincipleScore> {
    spec.validate()?;
    let basis = spec.kind.basis().select(ctx);
    let (value, direction) = match &spec.kind {
        PrincipleKind::Difference { variant, .. } => {
            let value = match variant {
                DifferenceVariant::Rawlsian => min_value(basis),
                DifferenceVariant::Harsanyian => mean(basis),
            };
            (value, Direction::Maximize)
        }
        PrincipleKind::Equality { metric, .. }
        | PrincipleKind::EqualityOfOpportunity { metric } => {
            (dispersion(*metric, basis)?, Direction::Minimize)
        }
        PrincipleKind::GreaterGood { .. } => (basis.sum(), Direction::Maximize),
        PrincipleKind::Proportion { metric, .. } => {
            let ratios = ratio_vector(basis, ctx.inputs())?;
            (dispersion(*metric, &ratios)?, Direction::Minimize)
        }
        PrincipleKind::Sufficiency { threshold, .. } => {
            (threshold_share(basis, *threshold)?, Direction::Maximize)
        }
    };
    Ok(PrincipleScore {
        spec: spec.clone(),
        value,
        direction,
    })
}

pub fn score_diorthotic(spec: &PrincipleSpec, ctx: &AllocationContext) -> Result<PrincipleScore> {
    spec.validate()?;
    let basis = spec.kind.basis().select(ctx);
    let value = match &spec.kind {
        PrincipleKind::Difference { variant, .. } => match (spec.isoelastic(), variant) {
            (Some(function), _) => welfare_of(&function, basis)?,
            (None, DifferenceVariant::Rawlsian) => rawlsian(basis),
            (None, DifferenceVariant::Harsanyian) => mean(basis),
        },
        PrincipleKind::Equality { welfare, .. } => match welfare {
            EqualityWelfare::Foster => foster(basis)?,
            EqualityWelfare::Sen => sen(basis)?,
        },
        PrincipleKind::EqualityOfOpportunity { metric } => {
            welfare_of(&WelfareFunction::LeontiefDispersion(*metric), basis)?
        }
        PrincipleKind::GreaterGood { .. } => {
            let function = spec.isoelastic().unwrap_or(WelfareFunction::Benthamite);
            welfare_of(&function, basis)?
        }
        PrincipleKind::Proportion {
            metric, variant, ..
        } => match variant {
            ProportionVariant::NoOp => 0.0,
            ProportionVariant::Dispersion => {
                let ratios = ratio_vector(basis, ctx.inputs())?;
                negated(dispersion(*metric, &ratios)?)
            }
        },
        PrincipleKind::Sufficiency { threshold, .. } => threshold_share(basis, *threshold)?,
    };
    Ok(PrincipleScore {
        spec: spec.clone(),
        value,
        direction: Direction::Maximize,
    })
}
