use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::link::{LinkFamily, LinkFunction};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GrowthKind {
    /// `g_i = U_i(y)`
    Replicator,
    /// `g_i = f(U_i(y))`
    PayoffFunctional { link: LinkFunction },
}

/// Time-change factor multiplying the whole field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Speed {
    Constant(f64),
    /// Piecewise-linear in the population's mean payoff `x . U(y)`, held
    /// constant beyond the end knots.
    MeanPayoffTable { table: Vec<(f64, f64)> },
}

impl Default for Speed {
    fn default() -> Self {
        Speed::Constant(1.0)
    }
}

impl Speed {
    fn validate(&self) -> Result<()> {
        match self {
            Speed::Constant(v) => {
                if !(v.is_finite() && *v > 0.0) {
                    return Err(Error::Precondition(format!("speed must be positive, got {v}")));
                }
            }
            Speed::MeanPayoffTable { table } => {
                if table.is_empty() {
                    return Err(Error::Precondition("empty speed table".into()));
                }
                if table.windows(2).any(|w| w[1].0 <= w[0].0) {
                    return Err(Error::Precondition("speed table knots must increase".into()));
                }
                if table.iter().any(|(u, v)| !u.is_finite() || !(v.is_finite() && *v > 0.0)) {
                    return Err(Error::Precondition("speed table values must be positive".into()));
                }
            }
        }
        Ok(())
    }

    pub fn at(&self, mean_payoff: f64) -> f64 {
        match self {
            Speed::Constant(v) => *v,
            Speed::MeanPayoffTable { table } => {
                let k = table.partition_point(|(u, _)| *u <= mean_payoff);
                if k == 0 {
                    table[0].1
                } else if k == table.len() {
                    table[k - 1].1
                } else {
                    let (u0, v0) = table[k - 1];
                    let (u1, v1) = table[k];
                    v0 + (v1 - v0) * (mean_payoff - u0) / (u1 - u0)
                }
            }
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Speed::Constant(v) if *v == 1.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRule")]
pub struct GrowthRule {
    #[serde(flatten)]
    pub kind: GrowthKind,
    #[serde(default)]
    pub speed: Speed,
}

#[derive(Deserialize)]
struct RawRule {
    #[serde(flatten)]
    kind: GrowthKind,
    #[serde(default)]
    speed: Speed,
}

impl TryFrom<RawRule> for GrowthRule {
    type Error = Error;
    fn try_from(r: RawRule) -> Result<Self> {
        GrowthRule::new(r.kind, r.speed)
    }
}

impl GrowthRule {
    pub fn new(kind: GrowthKind, speed: Speed) -> Result<Self> {
        speed.validate()?;
        Ok(GrowthRule { kind, speed })
    }

    pub fn replicator() -> Self {
        GrowthRule {
            kind: GrowthKind::Replicator,
            speed: Speed::default(),
        }
    }

    pub fn functional(link: LinkFunction) -> Self {
        GrowthRule {
            kind: GrowthKind::PayoffFunctional { link },
            speed: Speed::default(),
        }
    }

    pub fn with_speed(mut self, speed: Speed) -> Result<Self> {
        speed.validate()?;
        self.speed = speed;
        Ok(self)
    }

    pub fn link(&self) -> Option<&LinkFunction> {
        match &self.kind {
            GrowthKind::Replicator => None,
            GrowthKind::PayoffFunctional { link } => Some(link),
        }
    }

    /// Growth rate of a strategy earning payoff `u`.
    pub fn growth(&self, u: f64) -> Result<f64> {
        match &self.kind {
            GrowthKind::Replicator => Ok(u),
            GrowthKind::PayoffFunctional { link } => link.eval(u),
        }
    }

    /// Short human-readable description, recorded in trajectory metadata.
    pub fn describe(&self) -> String {
        let base = match &self.kind {
            GrowthKind::Replicator => "replicator".to_string(),
            GrowthKind::PayoffFunctional { link } => {
                let d = link.domain();
                match link.family() {
                    LinkFamily::Table { .. } => format!("functional(table on [{}, {}])", d.lo, d.hi),
                    fam => format!("functional({fam} on [{}, {}])", d.lo, d.hi),
                }
            }
        };
        match &self.speed {
            Speed::Constant(v) if *v == 1.0 => base,
            Speed::Constant(v) => format!("{base} x{v}"),
            Speed::MeanPayoffTable { .. } => format!("{base} x table"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::Interval;

    #[test]
    fn json_forms() {
        let r: GrowthRule = serde_json::from_str(r#"{"kind":"replicator"}"#).unwrap();
        assert_eq!(r, GrowthRule::replicator());
        let r: GrowthRule = serde_json::from_str(
            r#"{"kind":"payoff-functional","link":{"family":"sqrt","domain":[1,9]},"speed":2.0}"#,
        )
        .unwrap();
        assert_eq!(r.growth(4.0).unwrap(), 2.0);
        assert_eq!(r.speed, Speed::Constant(2.0));
        let r: GrowthRule =
            serde_json::from_str(r#"{"kind":"replicator","speed":{"table":[[0,1],[2,3]]}}"#).unwrap();
        assert_eq!(r.speed.at(1.0), 2.0);
        assert_eq!(r.speed.at(-5.0), 1.0);
        assert_eq!(r.speed.at(5.0), 3.0);
        assert!(serde_json::from_str::<GrowthRule>(r#"{"kind":"replicator","speed":0}"#).is_err());
    }

    #[test]
    fn functional_respects_domain() {
        let r = GrowthRule::functional(
            LinkFunction::new(LinkFamily::Sqrt, Interval::new(1.0, 9.0).unwrap()).unwrap(),
        );
        assert!(matches!(r.growth(10.0), Err(Error::OutOfDomain { .. })));
        assert_eq!(r.describe(), "functional(sqrt on [1, 9])");
    }
}
