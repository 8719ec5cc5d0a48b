//! Social welfare functions.
//!
//! Three families are covered: resource-based (Leontief-Lerner), utility-based
//! (Bergson-Samuelson, with the isoelastic form and its Benthamite, Rawlsian
//! and Bernoulli-Nash special cases) and income-based (Sen, Foster). Larger is
//! always better; dispersion-based welfare is negated.

use crate::dispersion::{dispersion, gini, theil_t, Aversion, DispersionMetric};
use crate::error::{FairnessError, Result};
use crate::model::{mean, min_value, AllocationContext, ValueVector};

#[derive(Debug, Clone, PartialEq)]
pub enum WelfareFunction {
    /// `1/(1-rho) * sum(alpha_i * u_i^(1-rho))`; `None` weights means all ones.
    Isoelastic {
        rho: Aversion,
        weights: Option<Vec<f64>>,
    },
    Benthamite,
    Rawlsian,
    BernoulliNash {
        weights: Option<Vec<f64>>,
    },
    Sen,
    Foster,
    LeontiefDispersion(DispersionMetric),
}

fn check_weights(weights: Option<&[f64]>, n: usize) -> Result<()> {
    let Some(weights) = weights else {
        return Ok(());
    };
    if weights.len() != n {
        return Err(FairnessError::WeightMismatch {
            expected: n,
            actual: weights.len(),
        });
    }
    if let Some(bad) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
        return Err(FairnessError::InvalidParameter(format!(
            "welfare weights must be finite and positive, got {bad}"
        )));
    }
    Ok(())
}

fn weight_at(weights: Option<&[f64]>, i: usize) -> f64 {
    weights.map_or(1.0, |w| w[i])
}

pub fn isoelastic(u: &ValueVector, weights: Option<&[f64]>, rho: Aversion) -> Result<f64> {
    let rho = rho.validate()?;
    check_weights(weights, u.len())?;
    let rho = match rho {
        Aversion::Infinite => return Ok(min_value(u)),
        Aversion::Finite(rho) => rho,
    };
    if rho >= 1.0 {
        if let Some(index) = u.iter().position(|&x| x == 0.0) {
            return Err(FairnessError::ZeroElement { index });
        }
    }
    let weighted = u
        .iter()
        .enumerate()
        .map(|(i, &x)| (weight_at(weights, i), x));
    if rho == 0.0 {
        Ok(weighted.map(|(w, x)| w * x).sum())
    } else if rho == 1.0 {
        Ok(weighted.map(|(w, x)| w * x.ln()).sum())
    } else {
        let power = 1.0 - rho;
        Ok(weighted.map(|(w, x)| w * x.powf(power)).sum::<f64>() / power)
    }
}

pub fn benthamite(u: &ValueVector) -> f64 {
    u.sum()
}

pub fn rawlsian(u: &ValueVector) -> f64 {
    min_value(u)
}

/// Weighted product `prod(alpha_i * u_i)`.
pub fn bernoulli_nash(u: &ValueVector, weights: Option<&[f64]>) -> Result<f64> {
    check_weights(weights, u.len())?;
    Ok(u.iter()
        .enumerate()
        .map(|(i, &x)| weight_at(weights, i) * x)
        .product())
}

/// Mean income discounted by the Gini coefficient.
pub fn sen(y: &ValueVector) -> Result<f64> {
    Ok(mean(y) * (1.0 - gini(y)?))
}

/// Mean income discounted by `exp(-TheilT)`.
pub fn foster(y: &ValueVector) -> Result<f64> {
    Ok(mean(y) * (-theil_t(y)?).exp())
}

/// Negation that maps zero to `+0.0`, keeping printed output free of `-0`.
pub(crate) fn negated(value: f64) -> f64 {
    if value == 0.0 {
        0.0
    } else {
        -value
    }
}

/// Evaluates `function` on an explicit vector, bypassing the x/y/u selection.
pub fn welfare_of(function: &WelfareFunction, v: &ValueVector) -> Result<f64> {
    match function {
        WelfareFunction::Isoelastic { rho, weights } => isoelastic(v, weights.as_deref(), *rho),
        WelfareFunction::Benthamite => Ok(benthamite(v)),
        WelfareFunction::Rawlsian => Ok(rawlsian(v)),
        WelfareFunction::BernoulliNash { weights } => bernoulli_nash(v, weights.as_deref()),
        WelfareFunction::Sen => sen(v),
        WelfareFunction::Foster => foster(v),
        WelfareFunction::LeontiefDispersion(metric) => Ok(negated(dispersion(*metric, v)?)),
    }
}

/// Evaluates `function` on the vector its family is defined over: utilities for
/// Bergson-Samuelson kinds, outputs for Sen and Foster, inputs for
/// Leontief-Lerner dispersion.
pub fn welfare(function: &WelfareFunction, ctx: &AllocationContext) -> Result<f64> {
    let basis = match function {
        WelfareFunction::Isoelastic { .. }
        | WelfareFunction::Benthamite
        | WelfareFunction::Rawlsian
        | WelfareFunction::BernoulliNash { .. } => ctx.utilities(),
        WelfareFunction::Sen | WelfareFunction::Foster => ctx.outputs(),
        WelfareFunction::LeontiefDispersion(_) => ctx.inputs(),
    };
    welfare_of(function, basis)
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
    fn isoelastic_examples() {
        let ones = [1.0, 1.0];
        let u = vv(&[1.0, 0.5]);
        assert!(close(
            isoelastic(&u, Some(&ones), Aversion::Finite(0.0)).unwrap(),
            1.5
        ));
        for c in [0.5, 1.0, 3.0] {
            let w = isoelastic(&vv(&[c, c]), Some(&ones), Aversion::Finite(2.0)).unwrap();
            assert!(close(w, -2.0 / c));
        }
        let w = isoelastic(&vv(&[0.7, 0.8]), Some(&ones), Aversion::Infinite).unwrap();
        assert_eq!(w, 0.7);
    }

    #[test]
    fn isoelastic_log_branch_and_errors() {
        let u = vv(&[2.0, 3.0]);
        let w = isoelastic(&u, Some(&[1.0, 2.0]), Aversion::Finite(1.0)).unwrap();
        assert!(close(w, 2f64.ln() + 2.0 * 3f64.ln()));
        assert_eq!(
            isoelastic(&vv(&[0.0, 1.0]), None, Aversion::Finite(1.0)),
            Err(FairnessError::ZeroElement { index: 0 })
        );
        assert_eq!(
            isoelastic(&vv(&[0.0, 1.0]), None, Aversion::Finite(3.0)),
            Err(FairnessError::ZeroElement { index: 0 })
        );
        assert!(isoelastic(&vv(&[0.0, 1.0]), None, Aversion::Finite(0.5)).is_ok());
        assert_eq!(
            isoelastic(&u, Some(&[1.0]), Aversion::Finite(0.0)),
            Err(FairnessError::WeightMismatch {
                expected: 2,
                actual: 1
            })
        );
        assert!(isoelastic(&u, Some(&[1.0, 0.0]), Aversion::Finite(0.0)).is_err());
    }

    #[test]
    fn benthamite_and_rawlsian_examples() {
        assert_eq!(benthamite(&vv(&[1.0, 0.5])), 1.5);
        assert_eq!(benthamite(&vv(&[0.0, 0.0, 0.0])), 0.0);
        assert!(close(benthamite(&vv(&[0.95 * 7.0, 0.0])), 6.65));
        assert!(close(rawlsian(&vv(&[3.5 * 0.95, 3.5 * 0.85])), 2.975));
        assert_eq!(rawlsian(&vv(&[5.0])), 5.0);
        assert_eq!(rawlsian(&vv(&[1.0, 0.5])), 0.5);
    }

    #[test]
    fn bernoulli_nash_examples() {
        assert_eq!(
            bernoulli_nash(&vv(&[1.0, 0.5]), Some(&[1.0, 1.0])).unwrap(),
            0.5
        );
        assert_eq!(
            bernoulli_nash(&vv(&[4.0, 0.0]), Some(&[2.0, 3.0])).unwrap(),
            0.0
        );
        assert_eq!(
            bernoulli_nash(&vv(&[2.0, 3.0]), Some(&[1.0, 2.0])).unwrap(),
            12.0
        );
    }

    #[test]
    fn sen_examples() {
        assert!(close(sen(&vv(&[3.5, 3.5])).unwrap(), 3.5));
        assert!(close(sen(&vv(&[7.0, 0.0])).unwrap(), 1.75));
        assert!(close(sen(&vv(&[2.5; 3])).unwrap(), 2.5));
        assert_eq!(sen(&vv(&[0.0, 0.0])), Err(FairnessError::ZeroSum));
    }

    #[test]
    fn foster_examples() {
        assert!(close(foster(&vv(&[3.5, 3.5])).unwrap(), 3.5));
        let theil = (0.5 * 0.5f64.ln() + 1.5 * 1.5f64.ln()) / 2.0;
        assert!(close(
            foster(&vv(&[1.0, 3.0])).unwrap(),
            2.0 * (-theil).exp()
        ));
        assert!(close(foster(&vv(&[0.0, 2.0])).unwrap(), 0.5));
        assert_eq!(foster(&vv(&[0.0, 0.0])), Err(FairnessError::ZeroMean));
    }

    #[test]
    fn dispatch_selects_family_basis() {
        let ctx = AllocationContext::from_slices(&[2.0, 2.0], &[3.5, 3.5], &[1.0, 0.5]).unwrap();
        assert_eq!(welfare(&WelfareFunction::Benthamite, &ctx).unwrap(), 1.5);
        assert!(close(welfare(&WelfareFunction::Sen, &ctx).unwrap(), 3.5));
        let leontief = WelfareFunction::LeontiefDispersion(DispersionMetric::StdDev);
        assert_eq!(welfare(&leontief, &ctx).unwrap(), 0.0);

        let unequal =
            AllocationContext::from_slices(&[1.0, 3.0], &[1.0, 1.0], &[1.0, 1.0]).unwrap();
        assert!(close(welfare(&leontief, &unequal).unwrap(), -1.0));
    }
}
