//! Inequality and concentration metrics.
//!
//! All metrics take a [`ValueVector`] and return a scalar where `0` means
//! perfect equality. Except for [`std_dev`], every metric is scale invariant.

use std::fmt;
use std::str::FromStr;

use crate::error::{FairnessError, Result};
use crate::model::{mean, min_value, ValueVector};

/// Inequality-aversion parameter, finite and nonnegative or `+inf`.
///
/// Used both as the Atkinson `epsilon` and the isoelastic `rho`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Aversion {
    Finite(f64),
    Infinite,
}

impl Aversion {
    pub fn finite(value: f64) -> Result<Self> {
        if value.is_finite() && value >= 0.0 {
            Ok(Aversion::Finite(value))
        } else if value == f64::INFINITY {
            Ok(Aversion::Infinite)
        } else {
            Err(FairnessError::InvalidParameter(format!(
                "inequality aversion must be >= 0, got {value}"
            )))
        }
    }

    /// Checks a value built directly through the enum.
    pub fn validate(self) -> Result<Self> {
        match self {
            Aversion::Finite(value) => Aversion::finite(value),
            Aversion::Infinite => Ok(self),
        }
    }
}

impl fmt::Display for Aversion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Aversion::Finite(value) => write!(f, "{value}"),
            Aversion::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Aversion {
    type Err = FairnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" => Ok(Aversion::Infinite),
            other => {
                let value: f64 = other
                    .parse()
                    .map_err(|_| FairnessError::InvalidParameter(format!("not a number: {s:?}")))?;
                Aversion::finite(value)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum DispersionMetric {
    Gini,
    Atkinson(Aversion),
    HerfindahlNormalized,
    Hoover,
    Palma,
    #[default]
    StdDev,
    TheilT,
    TheilL,
}

impl fmt::Display for DispersionMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DispersionMetric::Gini => f.write_str("gini"),
            DispersionMetric::Atkinson(eps) => write!(f, "atkinson:{eps}"),
            DispersionMetric::HerfindahlNormalized => f.write_str("herfindahl"),
            DispersionMetric::Hoover => f.write_str("hoover"),
            DispersionMetric::Palma => f.write_str("palma"),
            DispersionMetric::StdDev => f.write_str("std_dev"),
            DispersionMetric::TheilT => f.write_str("theil_t"),
            DispersionMetric::TheilL => f.write_str("theil_l"),
        }
    }
}

impl FromStr for DispersionMetric {
    type Err = FairnessError;

    /// Parses `gini`, `herfindahl`, `hoover`, `palma`, `std_dev`, `theil_t`,
    /// `theil_l` and `atkinson:<eps>` (epsilon defaults to 0.5).
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let (name, param) = match lower.split_once(':') {
            Some((name, param)) => (name, Some(param)),
            None => (lower.as_str(), None),
        };
        let metric = match name {
            "gini" => DispersionMetric::Gini,
            "atkinson" => {
                let eps = match param {
                    Some(p) => p.parse()?,
                    None => Aversion::Finite(0.5),
                };
                return Ok(DispersionMetric::Atkinson(eps));
            }
            "herfindahl" | "hirschmann" | "herfindahl_normalized" => {
                DispersionMetric::HerfindahlNormalized
            }
            "hoover" => DispersionMetric::Hoover,
            "palma" => DispersionMetric::Palma,
            "std_dev" | "stddev" | "sd" => DispersionMetric::StdDev,
            "theil_t" => DispersionMetric::TheilT,
            "theil_l" => DispersionMetric::TheilL,
            _ => {
                return Err(FairnessError::InvalidParameter(format!(
                    "unknown dispersion metric {s:?}"
                )))
            }
        };
        if param.is_some() {
            return Err(FairnessError::InvalidParameter(format!(
                "metric {name} takes no parameter"
            )));
        }
        Ok(metric)
    }
}

fn positive_sum(v: &ValueVector) -> Result<f64> {
    let sum = v.sum();
    if sum > 0.0 {
        Ok(sum)
    } else {
        Err(FairnessError::ZeroSum)
    }
}

fn positive_mean(v: &ValueVector) -> Result<f64> {
    let m = mean(v);
    if m > 0.0 {
        Ok(m)
    } else {
        Err(FairnessError::ZeroMean)
    }
}

fn require_positive(v: &ValueVector) -> Result<()> {
    match v.iter().position(|&x| x == 0.0) {
        Some(index) => Err(FairnessError::ZeroElement { index }),
        None => Ok(()),
    }
}

/// Gini coefficient, computed from the sorted vector in `O(n log n)`.
pub fn gini(v: &ValueVector) -> Result<f64> {
    let sum = positive_sum(v)?;
    let n = v.len() as f64;
    let weighted: f64 = v
        .sorted()
        .iter()
        .enumerate()
        .map(|(i, x)| (2.0 * (i as f64 + 1.0) - n - 1.0) * x)
        .sum();
    Ok((weighted / (n * sum)).max(0.0))
}

pub fn atkinson(v: &ValueVector, epsilon: Aversion) -> Result<f64> {
    let epsilon = epsilon.validate()?;
    let m = positive_mean(v)?;
    let n = v.len() as f64;
    let equally_distributed = match epsilon {
        Aversion::Infinite => min_value(v),
        Aversion::Finite(0.0) => m,
        Aversion::Finite(1.0) => {
            require_positive(v)?;
            let mean_log = v.iter().map(|x| x.ln()).sum::<f64>() / n;
            mean_log.exp()
        }
        Aversion::Finite(e) => {
            let power = 1.0 - e;
            // Factor out an anchor so the powered terms stay within [0, 1].
            let anchor = if e > 1.0 {
                require_positive(v)?;
                min_value(v)
            } else {
                v.iter().copied().fold(0.0, f64::max)
            };
            let mean_power = v.iter().map(|x| (x / anchor).powf(power)).sum::<f64>() / n;
            anchor * mean_power.powf(1.0 / power)
        }
    };
    Ok((1.0 - equally_distributed / m).clamp(0.0, 1.0))
}

/// Herfindahl index rescaled to `[0, 1]`.
pub fn herfindahl_normalized(v: &ValueVector) -> Result<f64> {
    let sum = positive_sum(v)?;
    if v.len() < 2 {
        return Err(FairnessError::DegeneratePopulation);
    }
    let n = v.len() as f64;
    let hh: f64 = v.iter().map(|x| (x / sum).powi(2)).sum();
    Ok(((hh - 1.0 / n) / (1.0 - 1.0 / n)).max(0.0))
}

pub fn hoover(v: &ValueVector) -> Result<f64> {
    let sum = positive_sum(v)?;
    let m = mean(v);
    let deviation: f64 = v.iter().map(|x| (x - m).abs()).sum();
    Ok(0.5 * deviation / sum)
}

/// Linearly interpolated Lorenz curve of an ascending vector at population share `p`.
fn lorenz(sorted: &[f64], sum: f64, p: f64) -> f64 {
    let n = sorted.len();
    let position = p * n as f64;
    let whole = (position.floor() as usize).min(n);
    let below: f64 = sorted[..whole].iter().sum();
    let partial = if whole < n {
        (position - whole as f64) * sorted[whole]
    } else {
        0.0
    };
    (below + partial) / sum
}

/// Income shares of the bottom 40% and the top 10%.
pub fn palma_shares(v: &ValueVector) -> Result<(f64, f64)> {
    let sum = positive_sum(v)?;
    let sorted = v.sorted();
    let bottom = lorenz(&sorted, sum, 0.4);
    let top = 1.0 - lorenz(&sorted, sum, 0.9);
    Ok((bottom, top.max(0.0)))
}

/// Palma ratio: top-10% share over bottom-40% share.
pub fn palma(v: &ValueVector) -> Result<f64> {
    let (bottom, top) = palma_shares(v)?;
    if bottom <= 0.0 {
        return Err(FairnessError::ZeroBottomShare);
    }
    Ok(top / bottom)
}

/// Population standard deviation.
pub fn std_dev(v: &ValueVector) -> f64 {
    let m = mean(v);
    let variance = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / v.len() as f64;
    variance.sqrt()
}

pub fn theil_t(v: &ValueVector) -> Result<f64> {
    let m = positive_mean(v)?;
    let total: f64 = v
        .iter()
        .map(|x| x / m)
        .map(|r| if r == 0.0 { 0.0 } else { r * r.ln() })
        .sum();
    Ok((total / v.len() as f64).max(0.0))
}

/// Mean log deviation.
pub fn theil_l(v: &ValueVector) -> Result<f64> {
    require_positive(v)?;
    let m = mean(v);
    let total: f64 = v.iter().map(|x| (m / x).ln()).sum();
    Ok((total / v.len() as f64).max(0.0))
}

pub fn dispersion(metric: DispersionMetric, v: &ValueVector) -> Result<f64> {
    match metric {
        DispersionMetric::Gini => gini(v),
        DispersionMetric::Atkinson(eps) => atkinson(v, eps),
        DispersionMetric::HerfindahlNormalized => herfindahl_normalized(v),
        DispersionMetric::Hoover => hoover(v),
        DispersionMetric::Palma => palma(v),
        DispersionMetric::StdDev => Ok(std_dev(v)),
        DispersionMetric::TheilT => theil_t(v),
        DispersionMetric::TheilL => theil_l(v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vv(values: &[f64]) -> ValueVector {
        ValueVector::from_slice(values).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * b.abs().max(1.0)
    }

    #[test]
    fn gini_examples() {
        assert_eq!(gini(&vv(&[5.0, 5.0, 5.0])).unwrap(), 0.0);
        assert!(close(gini(&vv(&[1.0, 3.0])).unwrap(), 0.25));
        assert!(close(gini(&vv(&[0.0, 1.0])).unwrap(), 0.5));
        assert_eq!(gini(&vv(&[0.0, 0.0])), Err(FairnessError::ZeroSum));
    }

    #[test]
    fn atkinson_examples() {
        for eps in [0.0, 0.5, 1.0, 2.0] {
            assert!(
                atkinson(&vv(&[4.0; 5]), Aversion::Finite(eps))
                    .unwrap()
                    .abs()
                    < 1e-12
            );
        }
        assert!(atkinson(&vv(&[4.0; 5]), Aversion::Infinite).unwrap().abs() < 1e-12);
        assert!(close(
            atkinson(&vv(&[1.0, 3.0]), Aversion::Infinite).unwrap(),
            0.5
        ));
        let expected = 1.0 - 3f64.sqrt() / 2.0;
        assert!(close(
            atkinson(&vv(&[1.0, 3.0]), Aversion::Finite(1.0)).unwrap(),
            expected
        ));
    }

    #[test]
    fn atkinson_zero_handling() {
        let v = vv(&[0.0, 2.0]);
        assert!(atkinson(&v, Aversion::Finite(0.5)).is_ok());
        assert_eq!(
            atkinson(&v, Aversion::Finite(1.0)),
            Err(FairnessError::ZeroElement { index: 0 })
        );
        assert_eq!(
            atkinson(&v, Aversion::Finite(2.0)),
            Err(FairnessError::ZeroElement { index: 0 })
        );
        assert_eq!(
            atkinson(&vv(&[0.0]), Aversion::Infinite),
            Err(FairnessError::ZeroMean)
        );
        assert!(atkinson(&v, Aversion::Finite(-1.0)).is_err());
    }

    #[test]
    fn herfindahl_examples() {
        assert!(herfindahl_normalized(&vv(&[5.0; 4])).unwrap().abs() < 1e-12);
        assert!(close(herfindahl_normalized(&vv(&[1.0, 0.0])).unwrap(), 1.0));
        assert!(close(
            herfindahl_normalized(&vv(&[3.0, 1.0])).unwrap(),
            0.25
        ));
        assert_eq!(
            herfindahl_normalized(&vv(&[3.0])),
            Err(FairnessError::DegeneratePopulation)
        );
    }

    #[test]
    fn hoover_examples() {
        assert_eq!(hoover(&vv(&[2.0, 2.0])).unwrap(), 0.0);
        assert!(close(hoover(&vv(&[1.0, 3.0])).unwrap(), 0.25));
        assert!(close(hoover(&vv(&[0.0, 0.0, 4.0])).unwrap(), 16.0 / 24.0));
    }

    #[test]
    fn palma_examples() {
        assert!(close(palma(&vv(&[3.0; 10])).unwrap(), 0.25));
        assert!(close(palma(&vv(&[5.0; 10])).unwrap(), 0.25));
        let v = vv(&[1.0, 1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 2.0, 2.0, 6.0]);
        assert!(close(palma(&v).unwrap(), 1.5));
        let (bottom, top) = palma_shares(&v).unwrap();
        assert!(close(bottom, 0.2) && close(top, 0.3), "{bottom} {top}");
        assert_eq!(
            palma(&vv(&[0.0, 0.0, 0.0, 1.0])),
            Err(FairnessError::ZeroBottomShare)
        );
    }

    #[test]
    fn palma_interpolates_fractional_cut_points() {
        // n = 2: bottom 40% is 0.8 of the poorer agent, top 10% is 0.2 of the richer.
        let (bottom, top) = palma_shares(&vv(&[1.0, 3.0])).unwrap();
        assert!(close(bottom, 0.8 / 4.0));
        assert!(close(top, 0.6 / 4.0));
    }

    #[test]
    fn std_dev_examples() {
        assert_eq!(std_dev(&vv(&[7.0, 7.0, 7.0])), 0.0);
        assert!(close(std_dev(&vv(&[1.0, 3.0])), 1.0));
        assert!(close(std_dev(&vv(&[0.0, 0.0, 0.0, 4.0])), 3f64.sqrt()));
    }

    #[test]
    fn theil_examples() {
        assert_eq!(theil_t(&vv(&[4.0, 4.0])).unwrap(), 0.0);
        let expected = (0.5 * 0.5f64.ln() + 1.5 * 1.5f64.ln()) / 2.0;
        assert!(close(theil_t(&vv(&[1.0, 3.0])).unwrap(), expected));
        assert!(close(theil_t(&vv(&[0.0, 2.0])).unwrap(), 2f64.ln()));

        assert!(theil_l(&vv(&[9.0, 9.0, 9.0])).unwrap().abs() < 1e-15);
        let expected = (2f64.ln() + (2.0f64 / 3.0).ln()) / 2.0;
        assert!(close(theil_l(&vv(&[1.0, 3.0])).unwrap(), expected));
        assert_eq!(
            theil_l(&vv(&[0.0, 1.0])),
            Err(FairnessError::ZeroElement { index: 0 })
        );
    }

    #[test]
    fn dispatch_examples() {
        assert_eq!(
            dispersion(DispersionMetric::Gini, &vv(&[5.0, 5.0])).unwrap(),
            0.0
        );
        assert!(close(
            dispersion(DispersionMetric::Hoover, &vv(&[1.0, 3.0])).unwrap(),
            0.25
        ));
        assert!(close(
            dispersion(DispersionMetric::StdDev, &vv(&[1.0, 3.0])).unwrap(),
            1.0
        ));
    }

    #[test]
    fn metric_names_round_trip() {
        for metric in [
            DispersionMetric::Gini,
            DispersionMetric::Atkinson(Aversion::Finite(0.5)),
            DispersionMetric::Atkinson(Aversion::Infinite),
            DispersionMetric::HerfindahlNormalized,
            DispersionMetric::Hoover,
            DispersionMetric::Palma,
            DispersionMetric::StdDev,
            DispersionMetric::TheilT,
            DispersionMetric::TheilL,
        ] {
            assert_eq!(
                metric.to_string().parse::<DispersionMetric>().unwrap(),
                metric
            );
        }
        assert!("gini:2".parse::<DispersionMetric>().is_err());
        assert!("entropy".parse::<DispersionMetric>().is_err());
        assert!("atkinson:-1".parse::<DispersionMetric>().is_err());
    }
}
