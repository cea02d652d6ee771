//! Payoff-to-fitness link functions, their sampled shape classification, and
//! the cycling criteria for rock-paper-scissors games.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default number of grid points used by [`classify_link`].
pub const DEFAULT_GRID: usize = 1001;

/// Closed interval `[lo, hi]`, serialized as a two-element array.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(Error::InvalidLink(format!("bad interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, u: f64) -> bool {
        u >= self.lo && u <= self.hi
    }

    /// `n` evenly spaced points from `lo` to `hi` inclusive.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        if n == 1 {
            return vec![self.lo];
        }
        let h = self.width() / (n - 1) as f64;
        (0..n)
            .map(|k| if k == n - 1 { self.hi } else { self.lo + h * k as f64 })
            .collect()
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;
    fn try_from(v: [f64; 2]) -> Result<Self> {
        Interval::new(v[0], v[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> [f64; 2] {
        [i.lo, i.hi]
    }
}

impl FromStr for Interval {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts = parse_numbers(s)?;
        match parts.as_slice() {
            [lo, hi] => Interval::new(*lo, *hi),
            _ => Err(Error::InvalidLink(format!("expected `lo,hi`, got `{s}`"))),
        }
    }
}

fn parse_numbers(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidLink(format!("not a number: `{}`", p.trim())))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum LinkFamily {
    /// `slope * u + intercept`
    Linear { slope: f64, intercept: f64 },
    /// `u^exponent`
    Power { exponent: f64 },
    /// `exp(rate * u)`
    Exponential { rate: f64 },
    Logarithm,
    Sqrt,
    /// Linear interpolation through `(u, f(u))` knots with increasing `u`.
    Table { knots: Vec<(f64, f64)> },
}

impl LinkFamily {
    pub fn identity() -> Self {
        LinkFamily::Linear {
            slope: 1.0,
            intercept: 0.0,
        }
    }

    fn apply(&self, u: f64) -> f64 {
        match self {
            LinkFamily::Linear { slope, intercept } => slope * u + intercept,
            LinkFamily::Power { exponent } => u.powf(*exponent),
            LinkFamily::Exponential { rate } => (rate * u).exp(),
            LinkFamily::Logarithm => u.ln(),
            LinkFamily::Sqrt => u.sqrt(),
            LinkFamily::Table { knots } => interpolate(knots, u),
        }
    }

    fn is_integer_power(&self) -> bool {
        matches!(self, LinkFamily::Power { exponent } if exponent.fract() == 0.0)
    }
}

fn interpolate(knots: &[(f64, f64)], u: f64) -> f64 {
    let k = knots.partition_point(|(x, _)| *x <= u);
    if k == 0 {
        return knots[0].1;
    }
    if k == knots.len() {
        return knots[k - 1].1;
    }
    let (x0, y0) = knots[k - 1];
    let (x1, y1) = knots[k];
    y0 + (y1 - y0) * (u - x0) / (x1 - x0)
}

impl fmt::Display for LinkFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkFamily::Linear { slope, intercept } => write!(f, "linear:{slope},{intercept}"),
            LinkFamily::Power { exponent } => write!(f, "power:{exponent}"),
            LinkFamily::Exponential { rate } => write!(f, "exp:{rate}"),
            LinkFamily::Logarithm => write!(f, "log"),
            LinkFamily::Sqrt => write!(f, "sqrt"),
            LinkFamily::Table { knots } => write!(f, "table[{}]", knots.len()),
        }
    }
}

/// Parses the short forms used on the command line: `sqrt`, `log`, `exp`,
/// `exp:k`, `linear`, `linear:a,b`, `power:g`, `square`.
impl FromStr for LinkFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(parse_numbers(a)?)),
            None => (s, None),
        };
        let args = args.unwrap_or_default();
        let bad = || Error::InvalidLink(format!("cannot parse link `{s}`"));
        match (name, args.as_slice()) {
            ("sqrt", []) => Ok(LinkFamily::Sqrt),
            ("log" | "ln" | "logarithm", []) => Ok(LinkFamily::Logarithm),
            ("exp" | "exponential", []) => Ok(LinkFamily::Exponential { rate: 1.0 }),
            ("exp" | "exponential", [k]) => Ok(LinkFamily::Exponential { rate: *k }),
            ("linear" | "replicator", []) => Ok(LinkFamily::identity()),
            ("linear", [a, b]) => Ok(LinkFamily::Linear {
                slope: *a,
                intercept: *b,
            }),
            ("power" | "pow", [g]) => Ok(LinkFamily::Power { exponent: *g }),
            ("square", []) => Ok(LinkFamily::Power { exponent: 2.0 }),
            _ => Err(bad()),
        }
    }
}

/// A link family together with the payoff interval it will be evaluated on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawLink")]
pub struct LinkFunction {
    #[serde(flatten)]
    family: LinkFamily,
    domain: Interval,
}

#[derive(Deserialize)]
struct RawLink {
    #[serde(flatten)]
    family: LinkFamily,
    domain: Interval,
}

impl TryFrom<RawLink> for LinkFunction {
    type Error = Error;
    fn try_from(r: RawLink) -> Result<Self> {
        LinkFunction::new(r.family, r.domain)
    }
}

impl LinkFunction {
    pub fn new(family: LinkFamily, domain: Interval) -> Result<Self> {
        let Interval { lo, .. } = domain;
        match &family {
            LinkFamily::Linear { slope, intercept } => {
                if !slope.is_finite() || !intercept.is_finite() {
                    return Err(Error::InvalidLink("non-finite linear coefficients".into()));
                }
            }
            LinkFamily::Exponential { rate } => {
                if !rate.is_finite() {
                    return Err(Error::InvalidLink("non-finite rate".into()));
                }
            }
            LinkFamily::Logarithm => {
                if lo <= 0.0 {
                    return Err(Error::InvalidLink(format!(
                        "logarithm needs a positive domain, got lo = {lo}"
                    )));
                }
            }
            LinkFamily::Sqrt => {
                if lo < 0.0 {
                    return Err(Error::InvalidLink(format!(
                        "sqrt needs a nonnegative domain, got lo = {lo}"
                    )));
                }
            }
            LinkFamily::Power { exponent } => {
                if !exponent.is_finite() {
                    return Err(Error::InvalidLink("non-finite exponent".into()));
                }
                if *exponent < 0.0 && domain.contains(0.0) {
                    return Err(Error::InvalidLink(format!(
                        "negative exponent needs a domain avoiding 0, got lo = {lo}"
                    )));
                }
                if !family.is_integer_power() && lo < 0.0 {
                    return Err(Error::InvalidLink(format!(
                        "fractional exponent needs a nonnegative domain, got lo = {lo}"
                    )));
                }
            }
            LinkFamily::Table { knots } => {
                if knots.len() < 2 {
                    return Err(Error::InvalidLink("table needs at least two knots".into()));
                }
                if knots.iter().any(|(u, v)| !u.is_finite() || !v.is_finite()) {
                    return Err(Error::InvalidLink("non-finite table knot".into()));
                }
                if knots.windows(2).any(|w| w[1].0 <= w[0].0) {
                    return Err(Error::InvalidLink("table knots must strictly increase".into()));
                }
                let slack = domain_slack(&domain);
                if domain.lo < knots[0].0 - slack || domain.hi > knots[knots.len() - 1].0 + slack {
                    return Err(Error::InvalidLink("domain extends beyond the table".into()));
                }
            }
        }
        let f = LinkFunction { family, domain };
        for u in [domain.lo, domain.hi] {
            if !f.family.apply(u).is_finite() {
                return Err(Error::InvalidLink(format!("{} is not finite at {u}", f.family)));
            }
        }
        Ok(f)
    }

    pub fn identity(domain: Interval) -> Self {
        LinkFunction {
            family: LinkFamily::identity(),
            domain,
        }
    }

    pub fn family(&self) -> &LinkFamily {
        &self.family
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn is_linear_family(&self) -> bool {
        matches!(self.family, LinkFamily::Linear { .. })
    }

    /// `f(u)`; `u` may overshoot the domain by rounding noise only.
    pub fn eval(&self, u: f64) -> Result<f64> {
        let d = self.domain;
        let slack = domain_slack(&d);
        if !(u >= d.lo - slack && u <= d.hi + slack) {
            return Err(Error::OutOfDomain {
                u,
                lo: d.lo,
                hi: d.hi,
            });
        }
        Ok(self.family.apply(u.clamp(d.lo, d.hi)))
    }
}

fn domain_slack(d: &Interval) -> f64 {
    1e-9 * d.lo.abs().max(d.hi.abs()).max(1.0)
}

/// `f(u)`, rejecting payoffs outside the link's domain.
pub fn eval_link(f: &LinkFunction, u: f64) -> Result<f64> {
    f.eval(u)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DynamicsLabel {
    AggregateMonotonic,
    ConvexMonotonic,
    ConcaveMonotonic,
    MonotonicOnly,
    NonMonotonic,
}

impl DynamicsLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            DynamicsLabel::AggregateMonotonic => "aggregate-monotonic",
            DynamicsLabel::ConvexMonotonic => "convex-monotonic",
            DynamicsLabel::ConcaveMonotonic => "concave-monotonic",
            DynamicsLabel::MonotonicOnly => "monotonic-only",
            DynamicsLabel::NonMonotonic => "non-monotonic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DynamicsClass {
    pub increasing: bool,
    pub convex: bool,
    pub concave: bool,
    pub linear: bool,
    pub label: DynamicsLabel,
    /// Largest gap between `f` and its chord over the domain.
    pub nonlinearity: f64,
}

/// Shape of `f` sampled on `grid_points` evenly spaced payoffs, with
/// tolerance `1e-9` relative to the largest `|f|`.
pub fn classify_link(f: &LinkFunction, grid_points: usize) -> Result<DynamicsClass> {
    classify_link_with_tol(f, grid_points, 1e-9)
}

pub fn classify_link_with_tol(
    f: &LinkFunction,
    grid_points: usize,
    rel_tol: f64,
) -> Result<DynamicsClass> {
    if grid_points < 5 {
        return Err(Error::Precondition(format!(
            "classification needs at least 5 grid points, got {grid_points}"
        )));
    }
    let d = f.domain();
    if d.width() < 1e-9 {
        return Err(Error::DomainTooSmall { lo: d.lo, hi: d.hi });
    }
    let us = d.grid(grid_points);
    let vs: Vec<f64> = us.iter().map(|&u| f.family.apply(u)).collect();
    let scale = vs.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    let tol = rel_tol * scale;

    let increasing = vs.windows(2).all(|w| w[1] - w[0] > -tol);
    let second: Vec<f64> = vs.windows(3).map(|w| w[2] - 2.0 * w[1] + w[0]).collect();
    let convex = second.iter().all(|&s| s >= -tol);
    let concave = second.iter().all(|&s| s <= tol);
    let linear = convex && concave;

    let (v0, v1) = (vs[0], vs[vs.len() - 1]);
    let nonlinearity = us
        .iter()
        .zip(&vs)
        .map(|(u, v)| (v - (v0 + (v1 - v0) * (u - d.lo) / d.width())).abs())
        .fold(0.0, f64::max);

    let label = if !increasing {
        DynamicsLabel::NonMonotonic
    } else if linear {
        DynamicsLabel::AggregateMonotonic
    } else if convex {
        DynamicsLabel::ConvexMonotonic
    } else if concave {
        DynamicsLabel::ConcaveMonotonic
    } else {
        DynamicsLabel::MonotonicOnly
    };
    Ok(DynamicsClass {
        increasing,
        convex,
        concave,
        linear,
        label,
        nonlinearity,
    })
}

/// The link `u -> ln(C + f(u))` that governs the discrete-time map, as a
/// 1001-knot table on the same domain.
pub fn discrete_effective_link(f: &LinkFunction, c: f64) -> Result<LinkFunction> {
    let d = f.domain();
    let n = if d.width() > 0.0 { DEFAULT_GRID } else { 2 };
    let mut knots = Vec::with_capacity(n);
    let us = if d.width() > 0.0 {
        d.grid(n)
    } else {
        vec![d.lo, d.lo + 1e-9]
    };
    for u in us {
        let arg = c + f.family.apply(u.min(d.hi));
        if !(arg > 0.0) {
            return Err(Error::NonPositiveLogArgument { u, value: arg });
        }
        knots.push((u, arg.ln()));
    }
    LinkFunction::new(LinkFamily::Table { knots }, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum RpsMode {
    Replicator,
    ContinuousFunctional,
    DiscreteFunctional { background: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CycleDirection {
    /// Orbits near the boundary cycle spiral toward the interior.
    Inward,
    /// Orbits spiral out toward the boundary cycle.
    Outward,
    Degenerate,
}

/// Direction of cycling in the RPS game with rows `(a,c,b), (b,a,c), (c,b,a)`.
///
/// With `h` the effective link (identity, `f`, or `ln(C+f)` by mode), cycling
/// is inward iff `h(a) < [h(b) + h(c)]/2`. A missing `f` stands for the
/// identity.
pub fn rps_direction(
    f: Option<&LinkFunction>,
    a: f64,
    b: f64,
    c: f64,
    mode: RpsMode,
) -> Result<CycleDirection> {
    if !(c < a && a < b) {
        return Err(Error::Precondition(format!(
            "need c < a < b, got a = {a}, b = {b}, c = {c}"
        )));
    }
    let base = |u: f64| -> Result<f64> {
        match (mode, f) {
            (RpsMode::Replicator, _) | (_, None) => Ok(u),
            (_, Some(f)) => f.eval(u),
        }
    };
    let h = |u: f64| -> Result<f64> {
        let v = base(u)?;
        match mode {
            RpsMode::DiscreteFunctional { background } => {
                let arg = background + v;
                if !(arg > 0.0) {
                    return Err(Error::NonPositiveLogArgument { u, value: arg });
                }
                Ok(arg.ln())
            }
            _ => Ok(v),
        }
    };
    let lhs = h(a)?;
    let rhs = 0.5 * (h(b)? + h(c)?);
    let scale = 1.0_f64.max(lhs.abs()).max(rhs.abs());
    Ok(if (lhs - rhs).abs() <= 1e-12 * scale {
        CycleDirection::Degenerate
    } else if lhs < rhs {
        CycleDirection::Inward
    } else {
        CycleDirection::Outward
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn link(family: LinkFamily, lo: f64, hi: f64) -> LinkFunction {
        LinkFunction::new(family, Interval::new(lo, hi).unwrap()).unwrap()
    }

    #[test]
    fn eval_examples() {
        let id = link(LinkFamily::identity(), 0.0, 10.0);
        assert_eq!(eval_link(&id, 7.0).unwrap(), 7.0);
        assert_eq!(eval_link(&link(LinkFamily::Sqrt, 1.0, 9.0), 9.0).unwrap(), 3.0);
        let e = eval_link(&link(LinkFamily::Exponential { rate: 1.0 }, 0.0, 3.0), 1.0).unwrap();
        assert!((e - std::f64::consts::E).abs() < 1e-15);
        assert!(matches!(
            eval_link(&id, 10.5),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(eval_link(&id, 10.0 + 1e-12).is_ok());
    }

    #[test]
    fn domain_rules() {
        let d = |lo, hi| Interval::new(lo, hi).unwrap();
        assert!(LinkFunction::new(LinkFamily::Logarithm, d(0.0, 1.0)).is_err());
        assert!(LinkFunction::new(LinkFamily::Sqrt, d(0.0, 1.0)).is_ok());
        assert!(LinkFunction::new(LinkFamily::Sqrt, d(-1.0, 1.0)).is_err());
        assert!(LinkFunction::new(LinkFamily::Power { exponent: 0.5 }, d(-1.0, 1.0)).is_err());
        assert!(LinkFunction::new(LinkFamily::Power { exponent: 2.0 }, d(-1.0, 1.0)).is_ok());
        assert!(LinkFunction::new(LinkFamily::Power { exponent: -1.0 }, d(0.0, 1.0)).is_err());
        assert!(LinkFunction::new(
            LinkFamily::Table { knots: vec![(0.0, 0.0), (0.0, 1.0)] },
            d(0.0, 0.0)
        )
        .is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
    }

    #[test]
    fn table_interpolates() {
        let t = link(
            LinkFamily::Table { knots: vec![(0.0, 0.0), (1.0, 2.0), (3.0, 3.0)] },
            0.0,
            3.0,
        );
        assert_eq!(t.eval(0.5).unwrap(), 1.0);
        assert_eq!(t.eval(1.0).unwrap(), 2.0);
        assert_eq!(t.eval(2.0).unwrap(), 2.5);
        assert_eq!(t.eval(3.0).unwrap(), 3.0);
    }

    #[test]
    fn classification_examples() {
        let c = classify_link(&link(LinkFamily::identity(), 0.0, 10.0), DEFAULT_GRID).unwrap();
        assert_eq!(c.label, DynamicsLabel::AggregateMonotonic);
        assert!(c.linear && c.convex && c.concave && c.increasing);
        let c = classify_link(&link(LinkFamily::Exponential { rate: 1.0 }, 0.0, 3.0), DEFAULT_GRID).unwrap();
        assert_eq!(c.label, DynamicsLabel::ConvexMonotonic);
        let c = classify_link(&link(LinkFamily::Sqrt, 1.0, 9.0), DEFAULT_GRID).unwrap();
        assert_eq!(c.label, DynamicsLabel::ConcaveMonotonic);
        let c = classify_link(&link(LinkFamily::Power { exponent: 2.0 }, -1.0, 1.0), DEFAULT_GRID).unwrap();
        assert_eq!(c.label, DynamicsLabel::NonMonotonic);
        assert!(c.convex);
        let c = classify_link(&link(LinkFamily::Power { exponent: 3.0 }, -1.0, 1.0), DEFAULT_GRID).unwrap();
        assert_eq!(c.label, DynamicsLabel::MonotonicOnly);
    }

    #[test]
    fn classification_errors() {
        let f = link(LinkFamily::Sqrt, 1.0, 1.0 + 1e-12);
        assert!(matches!(classify_link(&f, 101), Err(Error::DomainTooSmall { .. })));
        let f = link(LinkFamily::Sqrt, 1.0, 9.0);
        assert!(classify_link(&f, 4).is_err());
    }

    #[test]
    fn effective_link_examples() {
        let lin = link(LinkFamily::identity(), 1.0, 9.0);
        let e = discrete_effective_link(&lin, 0.0).unwrap();
        assert_eq!(classify_link(&e, DEFAULT_GRID).unwrap().label, DynamicsLabel::ConcaveMonotonic);

        let exp = link(LinkFamily::Exponential { rate: 1.0 }, 1.0, 9.0);
        let e = discrete_effective_link(&exp, 0.0).unwrap();
        assert_eq!(classify_link(&e, DEFAULT_GRID).unwrap().label, DynamicsLabel::AggregateMonotonic);

        let e = discrete_effective_link(&lin, 1000.0).unwrap();
        let c = classify_link_with_tol(&e, DEFAULT_GRID, 1e-4).unwrap();
        assert!(c.concave);
        assert!(c.nonlinearity < 1e-4);

        let zero = link(LinkFamily::identity(), 0.0, 9.0);
        assert!(matches!(
            discrete_effective_link(&zero, 0.0),
            Err(Error::NonPositiveLogArgument { .. })
        ));
    }

    #[test]
    fn rps_examples() {
        assert_eq!(
            rps_direction(None, 1.0, 2.0, -2.0, RpsMode::Replicator).unwrap(),
            CycleDirection::Outward
        );
        let exp = link(LinkFamily::Exponential { rate: 1.0 }, -2.0, 2.0);
        assert_eq!(
            rps_direction(Some(&exp), 1.0, 2.0, -2.0, RpsMode::ContinuousFunctional).unwrap(),
            CycleDirection::Inward
        );
        assert_eq!(
            rps_direction(None, 0.0, 1.0, -1.0, RpsMode::Replicator).unwrap(),
            CycleDirection::Degenerate
        );
        assert!(matches!(
            rps_direction(None, 3.0, 2.0, -2.0, RpsMode::Replicator),
            Err(Error::Precondition(_))
        ));
        // discrete map with the identity: ln(1) vs (ln 2 + ln 0.5)/2 = 0
        let pos = link(LinkFamily::identity(), 0.1, 3.0);
        assert_eq!(
            rps_direction(Some(&pos), 1.0, 2.0, 0.5, RpsMode::DiscreteFunctional { background: 0.0 })
                .unwrap(),
            CycleDirection::Degenerate
        );
        assert_eq!(
            rps_direction(Some(&pos), 1.1, 2.0, 0.5, RpsMode::DiscreteFunctional { background: 0.0 })
                .unwrap(),
            CycleDirection::Outward
        );
    }

    #[test]
    fn parse_short_forms() {
        assert_eq!("sqrt".parse::<LinkFamily>().unwrap(), LinkFamily::Sqrt);
        assert_eq!("exp:1".parse::<LinkFamily>().unwrap(), LinkFamily::Exponential { rate: 1.0 });
        assert_eq!(
            "linear:1,0".parse::<LinkFamily>().unwrap(),
            LinkFamily::Linear { slope: 1.0, intercept: 0.0 }
        );
        assert_eq!("power:2".parse::<LinkFamily>().unwrap(), LinkFamily::Power { exponent: 2.0 });
        assert_eq!("log".parse::<LinkFamily>().unwrap(), LinkFamily::Logarithm);
        assert!("cubic".parse::<LinkFamily>().is_err());
        assert!("linear:1".parse::<LinkFamily>().is_err());
        assert_eq!("1,9".parse::<Interval>().unwrap(), Interval { lo: 1.0, hi: 9.0 });
        for s in ["sqrt", "exp:2", "linear:2,1", "power:0.5", "log"] {
            let f: LinkFamily = s.parse().unwrap();
            assert_eq!(f.to_string().parse::<LinkFamily>().unwrap(), f);
        }
    }

    #[test]
    fn json_shape() {
        let f: LinkFunction = serde_json::from_str(r#"{"family":"sqrt","domain":[1,9]}"#).unwrap();
        assert_eq!(f.family(), &LinkFamily::Sqrt);
        let f: LinkFunction =
            serde_json::from_str(r#"{"family":"exponential","rate":1,"domain":[-2,2]}"#).unwrap();
        assert_eq!(f.eval(0.0).unwrap(), 1.0);
        assert!(serde_json::from_str::<LinkFunction>(r#"{"family":"logarithm","domain":[0,9]}"#).is_err());
        let back: LinkFunction = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
    }
}
