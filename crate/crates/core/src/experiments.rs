//! Catalog of runnable scenarios. Each entry builds its construction, runs
//! the prescribed experiment and reports certificates, checks and verdicts.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagnostics::{
    periodic_floor, taylor_sign_check, verdict, w_series, window_max_product, Verdict, VerdictStatus,
    DEFAULT_ELIM_THRESHOLD, DEFAULT_SURV_THRESHOLD,
};
use crate::dominance::{find_dominator, DominatorKind};
use crate::dynamics::{
    background_threshold_search, integrate, iterate, BackgroundFitness, GrowthRule, IntegratorSettings, OpponentModel,
    Trajectory,
};
use crate::error::{Error, Result};
use crate::game::{Game, MixedStrategy};
use crate::link::{discrete_effective_link, Interval, LinkFamily, LinkFunction};
use crate::scenarios::{
    build_rps4, build_survival, dual_basin_k, near_cycle_initial, paper_game, Certificate, PaperGame,
    Rps4Construction, Rps4Options, Rps4Variant, SurvivalConstruction, SurvivalVariant,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioName {
    SurvivalNonconvex,
    SurvivalNonconcave,
    Hw4x4,
    Dual4x4,
    Discussion,
    Prop4Threshold,
    Prop5Schedules,
}

impl ScenarioName {
    pub const ALL: [ScenarioName; 7] = [
        ScenarioName::SurvivalNonconvex,
        ScenarioName::SurvivalNonconcave,
        ScenarioName::Hw4x4,
        ScenarioName::Dual4x4,
        ScenarioName::Discussion,
        ScenarioName::Prop4Threshold,
        ScenarioName::Prop5Schedules,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioName::SurvivalNonconvex => "survival-nonconvex",
            ScenarioName::SurvivalNonconcave => "survival-nonconcave",
            ScenarioName::Hw4x4 => "hw-4x4",
            ScenarioName::Dual4x4 => "dual-4x4",
            ScenarioName::Discussion => "discussion",
            ScenarioName::Prop4Threshold => "prop4-threshold",
            ScenarioName::Prop5Schedules => "prop5-schedules",
        }
    }

    /// Link used when none is given.
    pub fn default_link(self) -> LinkFamily {
        match self {
            ScenarioName::SurvivalNonconvex | ScenarioName::Hw4x4 => LinkFamily::Sqrt,
            ScenarioName::SurvivalNonconcave => LinkFamily::Power { exponent: 2.0 },
            ScenarioName::Dual4x4 => LinkFamily::Exponential { rate: 1.0 },
            ScenarioName::Discussion | ScenarioName::Prop4Threshold | ScenarioName::Prop5Schedules => {
                LinkFamily::identity()
            }
        }
    }
}

impl fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ScenarioName::ALL
            .into_iter()
            .find(|n| n.as_str() == s.trim())
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// Overrides for a scenario run. Unset fields take the scenario's defaults.
#[derive(Debug, Clone, Default)]
pub struct ScenarioOptions {
    pub link: Option<LinkFamily>,
    pub seed: u64,
    pub t_max: Option<f64>,
    pub dt: Option<f64>,
    pub n_max: Option<usize>,
}

/// Expected outcome of the experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub expected: String,
}

impl Check {
    fn new(name: &str, value: f64, expected: &str, passed: bool) -> Self {
        Check {
            name: name.to_string(),
            passed,
            value,
            expected: expected.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabeledVerdict {
    pub label: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioReport {
    pub scenario: ScenarioName,
    pub link: String,
    pub seed: u64,
    pub parameters: serde_json::Value,
    pub certificates: Vec<Certificate>,
    pub checks: Vec<Check>,
    pub verdicts: Vec<LabeledVerdict>,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct ScenarioRun {
    pub report: ScenarioReport,
    /// Representative trajectory (first seed, or the main run).
    pub trajectory: Trajectory,
}

struct Outcome {
    parameters: serde_json::Value,
    certificates: Vec<Certificate>,
    checks: Vec<Check>,
    verdicts: Vec<LabeledVerdict>,
    trajectory: Trajectory,
}

pub fn run_scenario(name: ScenarioName, opts: &ScenarioOptions) -> Result<ScenarioRun> {
    let family = opts.link.clone().unwrap_or_else(|| name.default_link());
    let out = match name {
        ScenarioName::SurvivalNonconvex => survival_nonconvex(&family, opts)?,
        ScenarioName::SurvivalNonconcave => survival_nonconcave(&family, opts)?,
        ScenarioName::Hw4x4 => hw_4x4(&family, opts)?,
        ScenarioName::Dual4x4 => dual_4x4(&family, opts)?,
        ScenarioName::Discussion => discussion(&family, opts)?,
        ScenarioName::Prop4Threshold => prop4_threshold(&family, opts)?,
        ScenarioName::Prop5Schedules => prop5_schedules(&family, opts)?,
    };
    let passed = out.certificates.iter().all(|c| c.passed) && out.checks.iter().all(|c| c.passed);
    Ok(ScenarioRun {
        report: ScenarioReport {
            scenario: name,
            link: family.to_string(),
            seed: opts.seed,
            parameters: out.parameters,
            certificates: out.certificates,
            checks: out.checks,
            verdicts: out.verdicts,
            passed,
        },
        trajectory: out.trajectory,
    })
}

fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).unwrap_or(serde_json::Value::Null)
}

fn labeled(label: &str, verdict: Verdict) -> LabeledVerdict {
    LabeledVerdict {
        label: label.to_string(),
        verdict,
    }
}

fn game_rule(family: &LinkFamily, game: &Game) -> Result<GrowthRule> {
    let (lo, hi) = game.payoff_range();
    Ok(GrowthRule::functional(LinkFunction::new(family.clone(), Interval::new(lo, hi)?)?))
}

fn iv(lo: f64, hi: f64) -> Interval {
    Interval { lo, hi }
}

fn run_survival(con: &SurvivalConstruction, periods: f64, dt: f64, opts: &ScenarioOptions) -> Result<Trajectory> {
    let rule = GrowthRule::functional(con.link.clone());
    let opp = OpponentModel::Scripted {
        schedule: con.schedule.clone(),
    };
    let dt = opts.dt.unwrap_or(dt);
    let t_max = opts.t_max.unwrap_or(periods * con.period());
    let steps = (t_max / dt).round() as usize;
    let settings = IntegratorSettings {
        dt,
        t_max,
        sample_every: (steps / 2000).max(1),
    };
    integrate(&rule, &con.game, &MixedStrategy::uniform(3), &opp, settings)
}

/// Square-root-like links on `[1, 9]`: the dominated pure strategy M takes
/// over the population against the alternating opponent.
fn survival_nonconvex(family: &LinkFamily, opts: &ScenarioOptions) -> Result<Outcome> {
    let con = build_survival(family, SurvivalVariant::Nonconvex, iv(1.0, 9.0), 0.5)?;
    let traj = run_survival(&con, 11.0, 1e-2, opts)?;
    let v = verdict(&traj, &con.dominated(), DEFAULT_ELIM_THRESHOLD, DEFAULT_SURV_THRESHOLD)?;
    let x_m = traj.final_state()[1];
    let margin = find_dominator(&con.game, &con.dominated(), &[0, 1, 2], &[0, 1], DominatorKind::Mixed)?.margin;
    let checks = vec![
        Check::new("lp-margin", margin, "> 0", margin > 0.0),
        Check::new("dominated-survives", v.metric_late_min, "verdict survived", v.status == VerdictStatus::Survived),
        Check::new("x_M-final", x_m, "> 0.99", x_m > 0.99),
    ];
    Ok(Outcome {
        parameters: to_json(&con),
        certificates: con.certificates.clone(),
        checks,
        verdicts: vec![labeled("M", v)],
        trajectory: traj,
    })
}

/// Convex links on a small box: the dominating pure strategy M dies out while
/// the dominated mixture of T and B persists.
fn survival_nonconcave(family: &LinkFamily, opts: &ScenarioOptions) -> Result<Outcome> {
    let con = build_survival(family, SurvivalVariant::Nonconcave, iv(0.0, 0.1), 0.02)?;
    let traj = run_survival(&con, 6.0, 5e-2, opts)?;
    let v = verdict(&traj, &con.dominated(), DEFAULT_ELIM_THRESHOLD, DEFAULT_SURV_THRESHOLD)?;
    let x_m = traj.final_state()[1];
    let floor = periodic_floor(&traj, (0, 2), con.period())?;
    let peak = window_max_product(&traj, (0, 2), traj.final_time() - con.period())?;
    let checks = vec![
        Check::new("x_M-final", x_m, "< 1e-4", x_m < 1e-4),
        Check::new("floor-x_T*x_B", floor, "> 0.01", floor > 0.01),
        Check::new("late-max-x_T*x_B", peak, "in [0.235, 0.25]", (0.235..=0.25).contains(&peak)),
        Check::new(
            "dominated-mixture-survives",
            v.metric_late_min,
            "verdict survived",
            v.status == VerdictStatus::Survived,
        ),
    ];
    Ok(Outcome {
        parameters: to_json(&con),
        certificates: con.certificates.clone(),
        checks,
        verdicts: vec![labeled("(1/2,0,1/2)", v)],
        trajectory: traj,
    })
}

const SEEDS: usize = 10;
const BETA_HALVINGS: usize = 6;

fn log_triple_min(traj: &Trajectory, t_from: f64) -> f64 {
    traj.times
        .iter()
        .zip(&traj.log_states)
        .filter(|(t, _)| **t >= t_from)
        .map(|(_, z)| (z[0] + z[1] + z[2]).exp())
        .fold(f64::INFINITY, f64::min)
}

fn self_play(con: &Rps4Construction, x0: &MixedStrategy, t_max: f64, dt: f64) -> Result<Trajectory> {
    let rule = GrowthRule::functional(con.link.clone());
    let steps = (t_max / dt).round() as usize;
    integrate(
        &rule,
        &con.game,
        x0,
        &OpponentModel::SelfPlay,
        IntegratorSettings {
            dt,
            t_max,
            sample_every: (steps / 2000).max(1),
        },
    )
}

#[derive(Serialize)]
struct Rps4Params<'a> {
    construction: &'a Rps4Construction,
    beta_halvings: usize,
    initial_states: Vec<Vec<f64>>,
}

/// Runs `attempt` for the construction and successively halved `beta` until
/// its checks pass, keeping the last attempt.
fn with_beta_retries<F>(base: Rps4Construction, mut attempt: F) -> Result<(Rps4Construction, usize, Outcome)>
where
    F: FnMut(&Rps4Construction) -> Result<Outcome>,
{
    let mut con = base.clone();
    let mut out = attempt(&con)?;
    let mut k = 0;
    while k < BETA_HALVINGS && !out.checks.iter().all(|c| c.passed) {
        k += 1;
        con = base.with_beta(base.beta / 2f64.powi(k as i32))?;
        out = attempt(&con)?;
    }
    Ok((con, k, out))
}

/// Strategy 4 is strictly dominated by the centre of the RPS block, yet
/// persists for starts near the heteroclinic cycle.
fn hw_4x4(family: &LinkFamily, opts: &ScenarioOptions) -> Result<Outcome> {
    let base = build_rps4(family, Rps4Variant::HofbauerWeibull, iv(0.01, 20.0), Rps4Options::default())?;
    let t_max = opts.t_max.unwrap_or(200.0);
    let dt = opts.dt.unwrap_or(1e-2);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let starts: Vec<MixedStrategy> = (0..SEEDS).map(|k| near_cycle_initial(&mut rng, k, 0.01, 0.01)).collect();
    let e4 = MixedStrategy::pure(4, 3)?;
    let (con, halvings, mut out) = with_beta_retries(base, |con| {
        let margin = find_dominator(&con.game, &e4, &[0, 1, 2, 3], &[0, 1, 2, 3], DominatorKind::Mixed)?.margin;
        let mut verdicts = Vec::new();
        let mut survivors = 0;
        let mut first = None;
        for (k, x0) in starts.iter().enumerate() {
            let traj = self_play(con, x0, t_max, dt)?;
            let late = 0.75 * traj.final_time();
            let min_x4 = traj
                .times
                .iter()
                .zip(&traj.states)
                .filter(|(t, _)| **t >= late)
                .map(|(_, x)| x[3])
                .fold(f64::INFINITY, f64::min);
            if min_x4 > 1e-3 {
                survivors += 1;
            }
            verdicts.push(labeled(&format!("x4 start {k}"), verdict(&traj, &e4, DEFAULT_ELIM_THRESHOLD, DEFAULT_SURV_THRESHOLD)?));
            first.get_or_insert(traj);
        }
        Ok(Outcome {
            parameters: serde_json::Value::Null,
            certificates: con.certificates.clone(),
            checks: vec![
                Check::new("strategy-4-lp-margin", margin, "> 0", margin > 0.0),
                Check::new("starts-with-x4-late-min>1e-3", survivors as f64, ">= 8 of 10", survivors >= 8),
            ],
            verdicts,
            trajectory: first.expect("at least one start"),
        })
    })?;
    out.parameters = to_json(&Rps4Params {
        construction: &con,
        beta_halvings: halvings,
        initial_states: starts.iter().map(|x| x.weights().to_vec()).collect(),
    });
    Ok(out)
}

/// Strategy 4 strictly dominates the centre; under a convex link play
/// settles on an interior cycle where strategy 4 dies out, although near the
/// centre the flow still spirals outward.
fn dual_4x4(family: &LinkFamily, opts: &ScenarioOptions) -> Result<Outcome> {
    let base = build_rps4(family, Rps4Variant::Dual, iv(-2.0, 2.0), Rps4Options::default())?;
    let t_max = opts.t_max.unwrap_or(400.0);
    let dt = opts.dt.unwrap_or(1e-2);
    let basin = dual_basin_k(&base, 0.02, 0.05)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let starts: Vec<MixedStrategy> = (0..SEEDS).map(|_| basin.sample(&mut rng)).collect();
    let e4 = MixedStrategy::pure(4, 3)?;
    let (con, halvings, mut out) = with_beta_retries(base, |con| {
        let mut verdicts = Vec::new();
        let (mut max_x4, mut min_prod) = (0.0_f64, f64::INFINITY);
        let mut first = None;
        for (k, x0) in starts.iter().enumerate() {
            let traj = self_play(con, x0, t_max, dt)?;
            max_x4 = max_x4.max(traj.final_state()[3]);
            min_prod = min_prod.min(log_triple_min(&traj, 0.75 * traj.final_time()));
            verdicts.push(labeled(&format!("x4 start {k}"), verdict(&traj, &e4, DEFAULT_ELIM_THRESHOLD, DEFAULT_SURV_THRESHOLD)?));
            first.get_or_insert(traj);
        }
        let base_rule = GrowthRule::functional(LinkFunction::new(con.link.family().clone(), iv(con.c, con.b))?);
        let taylor = taylor_sign_check(&base_rule, &con.rps_base(), 0.01, 100)?;
        Ok(Outcome {
            parameters: serde_json::Value::Null,
            certificates: con.certificates.clone(),
            checks: vec![
                Check::new("max-x4-final", max_x4, "< 1e-4 for every start", max_x4 < 1e-4),
                Check::new("min-late-x1*x2*x3", min_prod, "> 1e-3 for every start", min_prod > 1e-3),
                Check::new(
                    "taylor-fraction-negative",
                    taylor.fraction_negative,
                    "= 1 over >= 100 samples",
                    taylor.fraction_negative == 1.0 && taylor.evaluated >= 100,
                ),
            ],
            verdicts,
            trajectory: first.expect("at least one start"),
        })
    })?;
    out.parameters = to_json(&Rps4Params {
        construction: &con,
        beta_halvings: halvings,
        initial_states: starts.iter().map(|x| x.weights().to_vec()).collect(),
    });
    Ok(out)
}

#[derive(Serialize)]
struct DiscussionParams {
    game: Game,
    x0: Vec<f64>,
    margin: f64,
    dt: f64,
    t_max: f64,
    w_gain: f64,
}

/// The third strategy strictly dominates the even mixture of the first two,
/// which is eliminated at the rate of the dominance margin.
fn discussion(family: &LinkFamily, opts: &ScenarioOptions) -> Result<Outcome> {
    let game = paper_game(&PaperGame::Discussion);
    let rule = game_rule(family, &game)?;
    let x0 = MixedStrategy::new(vec![0.4, 0.4, 0.2])?;
    let p = MixedStrategy::pure(3, 2)?;
    let q = MixedStrategy::new(vec![0.5, 0.5, 0.0])?;
    let t_max = opts.t_max.unwrap_or(200.0);
    let dt = opts.dt.unwrap_or(1e-3);
    let steps = (t_max / dt).round() as usize;
    let traj = integrate(
        &rule,
        &game,
        &x0,
        &OpponentModel::SelfPlay,
        IntegratorSettings {
            dt,
            t_max,
            sample_every: (steps / 2000).max(1),
        },
    )?;
    let margin = find_dominator(&game, &q, &[0, 1, 2], &[0, 1, 2], DominatorKind::Mixed)?.margin;
    let w = w_series(&traj, &p, &q)?;
    let gain = w[w.len() - 1] - w[0];
    let v = verdict(&traj, &q, DEFAULT_ELIM_THRESHOLD, DEFAULT_SURV_THRESHOLD)?;
    let mut checks = vec![
        Check::new("lp-margin", margin, "> 0", margin > 0.0),
        Check::new("mixture-eliminated", v.metric_final, "verdict eliminated", v.status == VerdictStatus::Eliminated),
    ];
    if let LinkFamily::Linear { slope, .. } = family {
        let bound = slope * margin * traj.final_time() * (1.0 - 1e-3);
        checks.push(Check::new("w-gain", gain, &format!(">= {bound}"), gain >= bound));
    }
    Ok(Outcome {
        parameters: to_json(&DiscussionParams {
            game,
            x0: x0.weights().to_vec(),
            margin,
            dt,
            t_max,
            w_gain: gain,
        }),
        certificates: Vec::new(),
        checks,
        verdicts: vec![labeled("(1/2,1/2,0)", v)],
        trajectory: traj,
    })
}

/// Survival game for the discrete map at `C = 0`, built against the
/// effective link `ln(f)` on `[1, 100]`.
pub fn discrete_survival(family: &LinkFamily) -> Result<(SurvivalConstruction, GrowthRule)> {
    let f = LinkFunction::new(family.clone(), iv(1.0, 100.0))?;
    let effective = discrete_effective_link(&f, 0.0)?;
    let con = build_survival(effective.family(), SurvivalVariant::Nonconvex, iv(1.0, 100.0), 0.5)?;
    let rule = game_rule(family, &con.game)?;
    Ok((con, rule))
}

fn run_discrete(
    con: &SurvivalConstruction,
    rule: &GrowthRule,
    n_max: usize,
    bg: BackgroundFitness,
) -> Result<Trajectory> {
    let opp = OpponentModel::Scripted {
        schedule: con.schedule.clone(),
    };
    iterate(rule, &con.game, &MixedStrategy::uniform(3), &opp, n_max, bg, (n_max / 1000).max(1))
}

#[derive(Serialize)]
struct DiscreteParams<'a> {
    construction: &'a SurvivalConstruction,
    extra: serde_json::Value,
}

const LARGE_C: f64 = 1e6;
const PROBE_STEPS: usize = 100_000;

/// At `C = 0` the map is a concave transform of payoffs and the dominated
/// pure strategy survives; a large background fitness restores elimination.
fn prop4_threshold(family: &LinkFamily, opts: &ScenarioOptions) -> Result<Outcome> {
    let (con, rule) = discrete_survival(family)?;
    let m = con.dominated();
    let judge = |t: &Trajectory| verdict(t, &m, DEFAULT_ELIM_THRESHOLD, DEFAULT_SURV_THRESHOLD);
    let n_small = (50.0 * con.period()) as usize;
    let small = run_discrete(&con, &rule, n_small, BackgroundFitness::Constant { c: 0.0 })?;
    let v0 = judge(&small)?;
    let n_large = opts.n_max.unwrap_or(1_000_000);
    let large = run_discrete(&con, &rule, n_large, BackgroundFitness::Constant { c: LARGE_C })?;
    let v1 = judge(&large)?;
    let search = background_threshold_search(1.0, LARGE_C, |c| {
        let t = run_discrete(&con, &rule, PROBE_STEPS, BackgroundFitness::Constant { c })?;
        Ok(judge(&t)?.status == VerdictStatus::Eliminated)
    })?;
    let threshold = search.threshold.unwrap_or(f64::INFINITY);
    let checks = vec![
        Check::new("C=0-survived", v0.metric_late_min, "verdict survived", v0.status == VerdictStatus::Survived),
        Check::new("C=1e6-eliminated", v1.metric_final, "verdict eliminated", v1.status == VerdictStatus::Eliminated),
        Check::new("threshold", threshold, "finite", threshold.is_finite()),
    ];
    Ok(Outcome {
        parameters: to_json(&DiscreteParams {
            construction: &con,
            extra: serde_json::json!({
                "n_max_c0": n_small,
                "n_max_large_c": n_large,
                "probe_steps": PROBE_STEPS,
                "search": search,
            }),
        }),
        certificates: con.certificates.clone(),
        checks,
        verdicts: vec![labeled("M at C=0", v0), labeled("M at C=1e6", v1)],
        trajectory: small,
    })
}

/// Background fitness growing linearly still eliminates; growing
/// geometrically freezes the dynamics before elimination completes.
fn prop5_schedules(family: &LinkFamily, opts: &ScenarioOptions) -> Result<Outcome> {
    let (con, rule) = discrete_survival(family)?;
    let m = con.dominated();
    let p = con.dominator();
    let n_max = opts.n_max.unwrap_or(10_000);
    let affine = BackgroundFitness::Affine { c0: 1.0, c1: 1.0 };
    let geometric = BackgroundFitness::Geometric { c0: 1.0, r: 2.0 };
    let lin = run_discrete(&con, &rule, n_max, affine)?;
    let geo = run_discrete(&con, &rule, n_max, geometric)?;
    let v_lin = verdict(&lin, &m, 1e-4, DEFAULT_SURV_THRESHOLD)?;
    let v_geo = verdict(&geo, &m, DEFAULT_ELIM_THRESHOLD, DEFAULT_SURV_THRESHOLD)?;
    let w = w_series(&geo, &p, &m)?;
    let tenth = geo
        .times
        .iter()
        .position(|t| *t >= n_max as f64 / 10.0)
        .unwrap_or(0);
    let tail = (w[w.len() - 1] - w[tenth]).abs();
    let checks = vec![
        Check::new("affine-eliminated", v_lin.metric_final, "min-support < 1e-4", v_lin.status == VerdictStatus::Eliminated),
        Check::new("geometric-survived", v_geo.metric_late_min, "verdict survived", v_geo.status == VerdictStatus::Survived),
        Check::new("geometric-w-tail", tail, "< 0.05", tail < 0.05),
    ];
    Ok(Outcome {
        parameters: to_json(&DiscreteParams {
            construction: &con,
            extra: serde_json::json!({
                "n_max": n_max,
                "affine": affine,
                "geometric": geometric,
            }),
        }),
        certificates: con.certificates.clone(),
        checks,
        verdicts: vec![labeled("M, C_n = n+1", v_lin), labeled("M, C_n = 2^n", v_geo)],
        trajectory: lin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for n in ScenarioName::ALL {
            assert_eq!(n.as_str().parse::<ScenarioName>().unwrap(), n);
        }
        assert!(matches!("nope".parse::<ScenarioName>(), Err(Error::UnknownName(_))));
    }

    #[test]
    fn linear_link_cannot_survive() {
        let opts = ScenarioOptions {
            link: Some(LinkFamily::identity()),
            ..Default::default()
        };
        assert!(matches!(
            run_scenario(ScenarioName::SurvivalNonconvex, &opts),
            Err(Error::NoViolation("convexity"))
        ));
    }

    #[test]
    fn discussion_passes() {
        let run = run_scenario(ScenarioName::Discussion, &ScenarioOptions::default()).unwrap();
        assert!(run.report.passed, "{:?}", run.report.checks);
    }
}
