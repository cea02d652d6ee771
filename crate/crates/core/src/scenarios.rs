//! Constructions of games in which dominated strategies survive or are
//! eliminated, with parameter searches where only existence is known.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dominance::{find_dominator, strict_margin, DominatorKind};
use crate::dynamics::Schedule;
use crate::error::{Error, Result};
use crate::game::{Game, MixedStrategy};
use crate::link::{classify_link, rps_direction, CycleDirection, Interval, LinkFamily, LinkFunction, RpsMode};

/// One checked inequality of a construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    /// Slack of the inequality; positive when it holds.
    pub slack: f64,
    pub passed: bool,
}

impl Certificate {
    fn new(name: &str, slack: f64) -> Self {
        Certificate {
            name: name.to_string(),
            slack,
            passed: slack > 0.0,
        }
    }
}

fn require_all(certs: &[Certificate]) -> Result<()> {
    match certs.iter().find(|c| !c.passed) {
        Some(c) => Err(Error::Infeasible(format!(
            "certificate `{}` fails (slack {:e})",
            c.name, c.slack
        ))),
        None => Ok(()),
    }
}

fn link_on(family: &LinkFamily, lo: f64, hi: f64) -> Result<LinkFunction> {
    LinkFunction::new(family.clone(), Interval::new(lo, hi)?)
}

fn game_link(family: &LinkFamily, game: &Game) -> Result<LinkFunction> {
    let (lo, hi) = game.payoff_range();
    link_on(family, lo, hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurvivalVariant {
    /// Middle row `(a+b)/2 - eps`: the pure strategy M is dominated by the
    /// even mixture of T and B, yet survives when `f` is not convex.
    Nonconvex,
    /// Middle row `(a+b)/2 + eps`: the even mixture of T and B is dominated
    /// by M, yet survives when `f` is not concave.
    Nonconcave,
}

/// The 3x2 game with rows T = (a, b), M = ((a+b)/2 -/+ eps, same),
/// B = (b, a), and the periodic opponent path that keeps the dominated
/// strategy alive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurvivalConstruction {
    pub variant: SurvivalVariant,
    pub game: Game,
    pub a: f64,
    pub b: f64,
    pub eps: f64,
    /// Largest `eps` for which the violation still holds at this `(a, b)`.
    pub eps_max: f64,
    /// Gap between the two sides of the violated inequality at `eps`.
    pub alpha: f64,
    /// `max |f|` on `[a, b]`.
    pub cf: f64,
    /// Half-period of the opponent schedule.
    pub t_half: f64,
    pub schedule: Schedule,
    pub link: LinkFunction,
    pub certificates: Vec<Certificate>,
}

impl SurvivalConstruction {
    /// The strategy whose frequency should vanish but does not.
    pub fn dominated(&self) -> MixedStrategy {
        match self.variant {
            SurvivalVariant::Nonconvex => MixedStrategy::pure(3, 1).expect("3 rows"),
            SurvivalVariant::Nonconcave => MixedStrategy::from_normalized(vec![0.5, 0.0, 0.5]),
        }
    }

    pub fn dominator(&self) -> MixedStrategy {
        match self.variant {
            SurvivalVariant::Nonconvex => MixedStrategy::from_normalized(vec![0.5, 0.0, 0.5]),
            SurvivalVariant::Nonconcave => MixedStrategy::pure(3, 1).expect("3 rows"),
        }
    }

    pub fn period(&self) -> f64 {
        2.0 * self.t_half
    }
}

const SURVIVAL_GRID: usize = 101;
const EPS_SCAN: usize = 400;

/// Largest `eps` in `[0, (b-a)/2]` up to which `holds` stays true, found by a
/// scan followed by bisection. Zero if it fails at `eps = 0`.
fn largest_eps(half: f64, holds: impl Fn(f64) -> bool) -> f64 {
    if !holds(0.0) {
        return 0.0;
    }
    let h = half / EPS_SCAN as f64;
    let mut lo = 0.0;
    let mut hi = None;
    for k in 1..=EPS_SCAN {
        let e = h * k as f64;
        if holds(e) {
            lo = e;
        } else {
            hi = Some(e);
            break;
        }
    }
    let Some(mut hi) = hi else {
        return half;
    };
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Searches `(a, b)` in `search_box` for the widest violation of convexity
/// (or concavity) of `f` and assembles the survival game with
/// `eps = eps_frac * eps_max`.
pub fn build_survival(
    family: &LinkFamily,
    variant: SurvivalVariant,
    search_box: Interval,
    eps_frac: f64,
) -> Result<SurvivalConstruction> {
    if !(eps_frac > 0.0 && eps_frac < 1.0) {
        return Err(Error::Precondition(format!("eps_frac must lie in (0, 1), got {eps_frac}")));
    }
    let f = link_on(family, search_box.lo, search_box.hi)?;
    let class = classify_link(&f, crate::link::DEFAULT_GRID)?;
    let what = match variant {
        SurvivalVariant::Nonconvex => "convexity",
        SurvivalVariant::Nonconcave => "concavity",
    };
    let flagged = match variant {
        SurvivalVariant::Nonconvex => class.convex,
        SurvivalVariant::Nonconcave => class.concave,
    };
    if flagged {
        return Err(Error::NoViolation(what));
    }

    let ev = |u: f64| f.eval(u);
    let grid = search_box.grid(SURVIVAL_GRID);
    let mut best: Option<(f64, f64, f64)> = None;
    for (i, &a) in grid.iter().enumerate() {
        for &b in &grid[i + 1..] {
            let (fa, fb) = (ev(a)?, ev(b)?);
            let avg = 0.5 * (fa + fb);
            let mid = 0.5 * (a + b);
            let half = 0.5 * (b - a);
            let e = match variant {
                SurvivalVariant::Nonconvex => {
                    largest_eps(half, |e| ev(mid - e).is_ok_and(|v| v > avg))
                }
                SurvivalVariant::Nonconcave => {
                    largest_eps(half, |e| ev(mid + e).is_ok_and(|v| avg > v))
                }
            };
            if e > 0.0 && best.is_none_or(|(be, _, _)| e > be) {
                best = Some((e, a, b));
            }
        }
    }
    let Some((eps_max, a, b)) = best else {
        return Err(Error::NoViolation(what));
    };
    survival_from_params(family, variant, a, b, eps_frac * eps_max, eps_max)
}

/// Assembles and certifies the survival game for given `(a, b, eps)`.
pub fn survival_from_params(
    family: &LinkFamily,
    variant: SurvivalVariant,
    a: f64,
    b: f64,
    eps: f64,
    eps_max: f64,
) -> Result<SurvivalConstruction> {
    if !(a < b && eps > 0.0 && eps < 0.5 * (b - a)) {
        return Err(Error::Precondition(format!(
            "need a < b and 0 < eps < (b-a)/2, got a = {a}, b = {b}, eps = {eps}"
        )));
    }
    let link = link_on(family, a, b)?;
    let mid = 0.5 * (a + b);
    let (fa, fb) = (link.eval(a)?, link.eval(b)?);
    let avg = 0.5 * (fa + fb);
    let m = match variant {
        SurvivalVariant::Nonconvex => mid - eps,
        SurvivalVariant::Nonconcave => mid + eps,
    };
    let alpha = match variant {
        SurvivalVariant::Nonconvex => link.eval(m)? - avg,
        SurvivalVariant::Nonconcave => avg - link.eval(m)?,
    };
    let mut cf = 0.0_f64;
    for u in link.domain().grid(crate::link::DEFAULT_GRID) {
        cf = cf.max(link.eval(u)?.abs());
    }
    if !(alpha > 0.0) {
        return Err(Error::Infeasible(format!("no violation at a = {a}, b = {b}, eps = {eps}")));
    }
    let bound = (2.0 * cf + 1.0) / alpha + 1.0;
    let t_half = bound.floor() + 1.0;
    let schedule = Schedule::alternating(t_half)?;
    let game = Game::new(vec![vec![a, b], vec![m, m], vec![b, a]])?.with_labels(
        Some(vec!["T".into(), "M".into(), "B".into()]),
        Some(vec!["L".into(), "R".into()]),
    )?;
    let mut con = SurvivalConstruction {
        variant,
        game,
        a,
        b,
        eps,
        eps_max,
        alpha,
        cf,
        t_half,
        schedule,
        link,
        certificates: Vec::new(),
    };
    let margin = strict_margin(&con.game, &con.dominator(), &con.dominated(), &[0, 1])?;
    con.certificates = vec![
        Certificate::new("link-violation", alpha),
        Certificate::new("period-bound", t_half - bound),
        Certificate::new("strict-dominance", margin),
    ];
    require_all(&con.certificates)?;
    Ok(con)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rps4Variant {
    /// RPS block plus a fourth strategy dominated by the centre, which
    /// survives when play spirals out to the boundary cycle under `f` even
    /// though the replicator spirals in.
    HofbauerWeibull,
    /// RPS block plus a fourth strategy dominating the centre. Under `f`
    /// play spirals in, while the replicator spirals out to the boundary.
    Dual,
}

/// Which cycling criterion the search enforces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "time", rename_all = "kebab-case")]
pub enum CycleCriterion {
    Continuous,
    /// Discrete-time map with background fitness `background`.
    Discrete { background: f64 },
}

impl CycleCriterion {
    fn mode(self) -> RpsMode {
        match self {
            CycleCriterion::Continuous => RpsMode::ContinuousFunctional,
            CycleCriterion::Discrete { background } => RpsMode::DiscreteFunctional { background },
        }
    }

    fn effective(self, f: &LinkFunction, u: f64) -> Result<f64> {
        let v = f.eval(u)?;
        match self {
            CycleCriterion::Continuous => Ok(v),
            CycleCriterion::Discrete { background } => {
                let arg = background + v;
                if !(arg > 0.0) {
                    return Err(Error::NonPositiveLogArgument { u, value: arg });
                }
                Ok(arg.ln())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rps4Options {
    /// Points per axis of the coarse grid.
    pub grid: usize,
    /// Required replicator-criterion slack, as a fraction of `b - c`.
    pub min_replicator_slack: f64,
    /// `beta` as a fraction of `b - c`.
    pub beta_frac: f64,
    /// `gamma` as a fraction of `b - c`.
    pub gamma_frac: f64,
    pub criterion: CycleCriterion,
}

impl Default for Rps4Options {
    fn default() -> Self {
        Rps4Options {
            grid: 50,
            min_replicator_slack: 0.05,
            beta_frac: 0.02,
            gamma_frac: 0.1,
            criterion: CycleCriterion::Continuous,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rps4Construction {
    pub variant: Rps4Variant,
    pub game: Game,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub beta: f64,
    pub gamma: f64,
    /// `(a + b + c)/3`
    pub m: f64,
    pub criterion: CycleCriterion,
    /// The link on `[min A, max A]`.
    pub link: LinkFunction,
    pub certificates: Vec<Certificate>,
}

/// Normalized slacks `(replicator, f-criterion)` of a triple, positive when
/// the variant's inequalities hold.
fn rps_slacks(
    f: &LinkFunction,
    variant: Rps4Variant,
    criterion: CycleCriterion,
    a: f64,
    b: f64,
    c: f64,
) -> Option<(f64, f64)> {
    if !(c < a && a < b) {
        return None;
    }
    let ha = criterion.effective(f, a).ok()?;
    let hb = criterion.effective(f, b).ok()?;
    let hc = criterion.effective(f, c).ok()?;
    let spread = b - c;
    let hspread = hb - hc;
    if !(hspread > 0.0) {
        return None;
    }
    let rep = (0.5 * (b + c) - a) / spread;
    let fun = (ha - 0.5 * (hb + hc)) / hspread;
    Some(match variant {
        Rps4Variant::HofbauerWeibull => (rep, fun),
        Rps4Variant::Dual => (-rep, -fun),
    })
}

/// Searches the box for `(a, b, c)` satisfying the variant's cycling
/// conditions, then picks small `beta`, `gamma` and assembles the 4x4 game.
pub fn build_rps4(
    family: &LinkFamily,
    variant: Rps4Variant,
    search_box: Interval,
    options: Rps4Options,
) -> Result<Rps4Construction> {
    if options.grid < 3 {
        return Err(Error::Precondition("grid needs at least 3 points per axis".into()));
    }
    let f = link_on(family, search_box.lo, search_box.hi)?;
    let class = classify_link(&f, crate::link::DEFAULT_GRID)?;
    if !class.increasing {
        return Err(Error::Precondition(format!("{family} is not increasing on the box")));
    }
    let delta = options.min_replicator_slack;
    let score = |a: f64, b: f64, c: f64| -> f64 {
        match rps_slacks(&f, variant, options.criterion, a, b, c) {
            Some((rep, fun)) if rep >= delta && fun > 0.0 => fun,
            _ => f64::NEG_INFINITY,
        }
    };

    let grid = search_box.grid(options.grid);
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0, 0.0);
    for &a in &grid {
        for &b in &grid {
            for &c in &grid {
                let s = score(a, b, c);
                if s > best.0 {
                    best = (s, a, b, c);
                }
            }
        }
    }
    if best.0 == f64::NEG_INFINITY {
        return Err(Error::Infeasible(format!(
            "no {variant} triple for {family} on [{}, {}]",
            search_box.lo, search_box.hi
        )));
    }

    // Compass search from the grid optimum.
    let (mut s, mut p) = (best.0, [best.1, best.2, best.3]);
    let mut step = search_box.width() / (options.grid - 1) as f64 / 2.0;
    while step > 1e-7 * search_box.width().max(1.0) {
        let mut moved = false;
        for axis in 0..3 {
            for dir in [1.0, -1.0] {
                let mut q = p;
                q[axis] = (q[axis] + dir * step).clamp(search_box.lo, search_box.hi);
                let sq = score(q[0], q[1], q[2]);
                if sq > s {
                    s = sq;
                    p = q;
                    moved = true;
                }
            }
        }
        if !moved {
            step /= 2.0;
        }
    }
    let [a, b, c] = p;
    let spread = b - c;
    let mut beta = options.beta_frac * spread;
    let gamma = options.gamma_frac * spread;
    if variant == Rps4Variant::HofbauerWeibull {
        // keep (a+b+c)/3 > a + beta
        let room = (a + b + c) / 3.0 - a;
        while beta >= room {
            beta /= 2.0;
        }
    }
    Rps4Construction::from_params(family, variant, a, b, c, beta, gamma, options.criterion)
}

impl Rps4Construction {
    /// Assembles and certifies the 4x4 game for explicit parameters.
    #[allow(clippy::too_many_arguments)]
    pub fn from_params(
        family: &LinkFamily,
        variant: Rps4Variant,
        a: f64,
        b: f64,
        c: f64,
        beta: f64,
        gamma: f64,
        criterion: CycleCriterion,
    ) -> Result<Self> {
        if !(c < a && a < b) {
            return Err(Error::Precondition(format!(
                "need c < a < b, got a = {a}, b = {b}, c = {c}"
            )));
        }
        let m = (a + b + c) / 3.0;
        let rows = match variant {
            Rps4Variant::HofbauerWeibull => vec![
                vec![a, c, b, gamma],
                vec![b, a, c, gamma],
                vec![c, b, a, gamma],
                vec![a + beta, a + beta, a + beta, 0.0],
            ],
            Rps4Variant::Dual => vec![
                vec![a, c, b, m - gamma],
                vec![b, a, c, m - gamma],
                vec![c, b, a, m - gamma],
                vec![m + beta, m + beta, m + beta, m],
            ],
        };
        let game = Game::new(rows)?;
        let link = game_link(family, &game)?;
        let f_link = link_on(family, c, b)?;
        let dir = rps_direction(Some(&f_link), a, b, c, criterion.mode())?;
        let rep = rps_direction(None, a, b, c, RpsMode::Replicator)?;
        let h = |u| criterion.effective(&f_link, u);
        let f_gap = h(a)? - 0.5 * (h(b)? + h(c)?);
        let rep_gap = a - 0.5 * (b + c);
        let centre = MixedStrategy::from_normalized(vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0]);
        let mut certificates = vec![
            Certificate::new("c<a", a - c),
            Certificate::new("a<b", b - a),
            Certificate::new("beta>0", beta),
            Certificate::new("gamma>0", gamma),
        ];
        match variant {
            Rps4Variant::HofbauerWeibull => {
                certificates.push(Certificate::new("(a+b+c)/3>a+beta", m - a - beta));
                certificates.push(Certificate::new("replicator-inward", -rep_gap));
                certificates.push(Certificate::new("f-outward", f_gap));
                certificates.push(Certificate::new(
                    "direction-agrees",
                    if rep == CycleDirection::Inward && dir == CycleDirection::Outward { 1.0 } else { -1.0 },
                ));
                let e4 = MixedStrategy::pure(4, 3)?;
                let all: Vec<usize> = (0..4).collect();
                let r = find_dominator(&game, &e4, &all, &all, DominatorKind::Mixed)?;
                certificates.push(Certificate::new("strategy-4-dominated", r.margin));
            }
            Rps4Variant::Dual => {
                certificates.push(Certificate::new("replicator-outward", rep_gap));
                certificates.push(Certificate::new("f-inward", -f_gap));
                certificates.push(Certificate::new(
                    "direction-agrees",
                    if rep == CycleDirection::Outward && dir == CycleDirection::Inward { 1.0 } else { -1.0 },
                ));
                let e4 = MixedStrategy::pure(4, 3)?;
                let margin = strict_margin(&game, &e4, &centre, &[0, 1, 2, 3])?;
                certificates.push(Certificate::new(
                    "strategy-4-dominates-centre",
                    margin - beta.min(gamma) + 1e-12 * (1.0 + m.abs()),
                ));
            }
        }
        require_all(&certificates)?;
        Ok(Rps4Construction {
            variant,
            game,
            a,
            b,
            c,
            beta,
            gamma,
            m,
            criterion,
            link,
            certificates,
        })
    }

    /// Same construction with `beta` replaced.
    pub fn with_beta(&self, beta: f64) -> Result<Self> {
        Rps4Construction::from_params(
            self.link.family(),
            self.variant,
            self.a,
            self.b,
            self.c,
            beta,
            self.gamma,
            self.criterion,
        )
    }

    /// The RPS block as a 3x3 game.
    pub fn rps_base(&self) -> Game {
        paper_game(&PaperGame::RpsBase {
            a: self.a,
            b: self.b,
            c: self.c,
        })
    }
}

impl fmt::Display for Rps4Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rps4Variant::HofbauerWeibull => "hofbauer-weibull",
            Rps4Variant::Dual => "dual",
        })
    }
}

/// Region `{x : x1 x2 x3 <= rho, x4 <= eps4}` of the 4-strategy simplex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasinK {
    pub rho: f64,
    pub eps4: f64,
}

pub fn dual_basin_k(con: &Rps4Construction, rho: f64, eps4: f64) -> Result<BasinK> {
    if con.game.rows() != 4 {
        return Err(Error::Precondition("basin needs a 4-strategy construction".into()));
    }
    if !(rho > 0.0 && rho < 1.0 / 27.0) {
        return Err(Error::Precondition(format!("need 0 < rho < 1/27, got {rho}")));
    }
    if !(eps4 > 0.0 && eps4 < 1.0) {
        return Err(Error::Precondition(format!("need 0 < eps4 < 1, got {eps4}")));
    }
    Ok(BasinK { rho, eps4 })
}

impl BasinK {
    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == 4 && x[0] * x[1] * x[2] <= self.rho && x[3] <= self.eps4
    }

    /// Interior point with `x4 = eps4/2` and `x1 x2 x3 = rho/2`, in a random
    /// direction from the centre of the RPS face.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> MixedStrategy {
        let x4 = 0.5 * self.eps4;
        let s = 1.0 - x4;
        let target = 0.5 * self.rho;
        let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let (s2, s6) = (2f64.sqrt(), 6f64.sqrt());
        let d = [
            th.cos() / s2 + th.sin() / s6,
            -th.cos() / s2 + th.sin() / s6,
            -2.0 * th.sin() / s6,
        ];
        let point = |l: f64| -> [f64; 3] { std::array::from_fn(|i| s * (1.0 / 3.0 + l * d[i])) };
        let prod = |p: [f64; 3]| p[0] * p[1] * p[2];
        let l_max = (0..3)
            .filter(|&i| d[i] < 0.0)
            .map(|i| -1.0 / 3.0 / d[i])
            .fold(f64::INFINITY, f64::min);
        let (mut lo, mut hi) = (0.0, l_max);
        if prod(point(0.0)) > target {
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if prod(point(mid)) > target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
        }
        let p = point(hi.min(l_max));
        let p = if prod(p) > 0.0 { p } else { point(lo) };
        MixedStrategy::from_normalized(vec![p[0], p[1], p[2], x4])
    }
}

/// Start near the boundary cycle of the RPS face: a point on the edge
/// `e_i -- e_{i+1}` (with `i = k mod 3`), pushed `edge_gap` into the face and
/// with `x4 = x4_0`.
pub fn near_cycle_initial<R: Rng + ?Sized>(rng: &mut R, k: usize, edge_gap: f64, x4_0: f64) -> MixedStrategy {
    let i = k % 3;
    let t: f64 = rng.gen_range(0.1..0.9);
    let scale = 1.0 - edge_gap - x4_0;
    let mut x = [0.0; 4];
    x[i] = t * scale;
    x[(i + 1) % 3] = (1.0 - t) * scale;
    x[(i + 2) % 3] = edge_gap;
    x[3] = x4_0;
    MixedStrategy::from_normalized(x.to_vec())
}

/// Named matrices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum PaperGame {
    /// `[[3,0,0],[0,3,0],[2,2,1]]`
    #[serde(rename = "discussion-3x3")]
    Discussion,
    /// Rows `(a,c,b), (b,a,c), (c,b,a)`.
    RpsBase { a: f64, b: f64, c: f64 },
}

impl FromStr for PaperGame {
    type Err = Error;
    /// Accepts `discussion-3x3`, `rps-base(a,b,c)` and `rps-base:a,b,c`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "discussion-3x3" || s == "discussion" {
            return Ok(PaperGame::Discussion);
        }
        let args = s
            .strip_prefix("rps-base")
            .map(|r| r.trim_start_matches(':').trim_start_matches('(').trim_end_matches(')'));
        if let Some(args) = args {
            let v: std::result::Result<Vec<f64>, _> =
                args.split(',').map(|p| p.trim().parse::<f64>()).collect();
            if let Ok(v) = v {
                if let [a, b, c] = v[..] {
                    return Ok(PaperGame::RpsBase { a, b, c });
                }
            }
        }
        Err(Error::UnknownName(s.to_string()))
    }
}

pub fn paper_game(name: &PaperGame) -> Game {
    let rows = match *name {
        PaperGame::Discussion => vec![
            vec![3.0, 0.0, 0.0],
            vec![0.0, 3.0, 0.0],
            vec![2.0, 2.0, 1.0],
        ],
        PaperGame::RpsBase { a, b, c } => vec![vec![a, c, b], vec![b, a, c], vec![c, b, a]],
    };
    Game::new(rows).expect("finite entries")
}

/// Looks a matrix up by name.
pub fn paper_game_by_name(name: &str) -> Result<Game> {
    let g = name.parse::<PaperGame>()?;
    let game = paper_game(&g);
    if game.payoff().iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::InvalidGame(format!("non-finite parameters in `{name}`")));
    }
    Ok(game)
}
