use serde::{Deserialize, Serialize};

use super::trajectory::{TimeMode, Trajectory, TrajectoryMeta};
use super::{link_error_at, log_weights, normalize_log, GrowthRule, OpponentModel};
use crate::error::{Error, Result};
use crate::game::{Game, MixedStrategy};

/// Background fitness `C_n` added to every growth rate at step `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BackgroundFitness {
    Constant { c: f64 },
    /// `C_n = c0 + c1 n`
    Affine { c0: f64, c1: f64 },
    /// `C_n = c0 r^n`
    Geometric { c0: f64, r: f64 },
}

impl BackgroundFitness {
    pub fn at(&self, n: usize) -> f64 {
        match *self {
            BackgroundFitness::Constant { c } => c,
            BackgroundFitness::Affine { c0, c1 } => c0 + c1 * n as f64,
            BackgroundFitness::Geometric { c0, r } => c0 * r.powf(n as f64),
        }
    }

    /// Whether `sum_n 1/C_n` diverges.
    pub fn sum_inverse_diverges(&self) -> bool {
        match *self {
            BackgroundFitness::Constant { .. } => true,
            BackgroundFitness::Affine { c1, .. } => c1 >= 0.0,
            BackgroundFitness::Geometric { r, .. } => r.abs() <= 1.0,
        }
    }

    fn validate(&self) -> Result<()> {
        let finite = match *self {
            BackgroundFitness::Constant { c } => c.is_finite(),
            BackgroundFitness::Affine { c0, c1 } => c0.is_finite() && c1.is_finite(),
            BackgroundFitness::Geometric { c0, r } => c0.is_finite() && r.is_finite() && r > 0.0,
        };
        if finite {
            Ok(())
        } else {
            Err(Error::Precondition(format!("invalid background fitness {self:?}")))
        }
    }
}

/// Per-strategy multiplier `ln(C + g_i) - ln(C + g_bar)` written so that it
/// stays accurate for large `C`. An infinite `C` gives zero.
fn log_factors(
    rule: &GrowthRule,
    game: &Game,
    x: &[f64],
    y: &[f64],
    c: f64,
    out: &mut [f64],
) -> Result<()> {
    let u = game.payoff_vector(y)?;
    let mut g = vec![0.0; u.len()];
    let mut gbar = 0.0;
    for i in 0..u.len() {
        if x[i] > 0.0 {
            g[i] = rule.growth(u[i])?;
            gbar += x[i] * g[i];
        }
    }
    if c == f64::INFINITY {
        out.iter_mut().for_each(|o| *o = 0.0);
        return Ok(());
    }
    for i in 0..u.len() {
        if x[i] > 0.0 && !(c + g[i] > 0.0) {
            return Err(Error::BackgroundTooSmall {
                step: None,
                strategy: i,
                value: c + g[i],
            });
        }
    }
    let denom = c + gbar;
    for i in 0..u.len() {
        out[i] = if x[i] > 0.0 {
            ((g[i] - gbar) / denom).ln_1p()
        } else {
            0.0
        };
    }
    Ok(())
}

fn check_rule(rule: &GrowthRule) -> Result<()> {
    if rule.speed.is_unit() {
        Ok(())
    } else {
        Err(Error::Precondition("speed factors apply to continuous time only".into()))
    }
}

/// `x'_i = x_i (C + g_i) / (C + sum_k x_k g_k)`.
pub fn step(
    rule: &GrowthRule,
    game: &Game,
    x: &MixedStrategy,
    y: &MixedStrategy,
    c: f64,
) -> Result<MixedStrategy> {
    check_rule(rule)?;
    if x.len() != game.rows() {
        return Err(Error::dims("focal state", game.rows(), x.len()));
    }
    if c.is_nan() {
        return Err(Error::Precondition("background fitness is NaN".into()));
    }
    let u = game.payoff_vector(y.weights())?;
    let xw = x.weights();
    if c == f64::INFINITY {
        return Ok(x.clone());
    }
    let mut g = vec![0.0; u.len()];
    for i in 0..u.len() {
        if xw[i] > 0.0 {
            g[i] = rule.growth(u[i])?;
            if !(c + g[i] > 0.0) {
                return Err(Error::BackgroundTooSmall {
                    step: None,
                    strategy: i,
                    value: c + g[i],
                });
            }
        }
    }
    let denom = c + xw.iter().zip(&g).map(|(a, b)| a * b).sum::<f64>();
    let next = xw
        .iter()
        .zip(&g)
        .map(|(xi, gi)| if *xi > 0.0 { xi * (c + gi) / denom } else { 0.0 })
        .collect();
    Ok(MixedStrategy::from_normalized(next))
}

/// One-step change of `w = sum_i (p_i - q_i) ln x_i` under [`step`]; equals
/// `sum_i (p_i - q_i) ln(C + g_i)`.
pub fn discrete_w_increment(
    rule: &GrowthRule,
    game: &Game,
    x: &MixedStrategy,
    y: &MixedStrategy,
    c: f64,
    p: &MixedStrategy,
    q: &MixedStrategy,
) -> Result<f64> {
    check_rule(rule)?;
    let n = game.rows();
    for (what, s) in [("focal state", x), ("p", p), ("q", q)] {
        if s.len() != n {
            return Err(Error::dims(what, n, s.len()));
        }
    }
    let mut f = vec![0.0; n];
    log_factors(rule, game, x.weights(), y.weights(), c, &mut f)?;
    Ok((0..n)
        .filter(|&i| p.get(i) != q.get(i))
        .map(|i| (p.get(i) - q.get(i)) * f[i])
        .sum())
}

/// Runs `n_max` steps of the map with `C = C_n` at step `n`, sampling every
/// `sample_every` steps and at the end. Times are step indices. Scripted
/// opponents are read at `t = n`.
pub fn iterate(
    rule: &GrowthRule,
    game: &Game,
    x0: &MixedStrategy,
    opp: &OpponentModel,
    n_max: usize,
    bg: BackgroundFitness,
    sample_every: usize,
) -> Result<Trajectory> {
    check_rule(rule)?;
    bg.validate()?;
    if n_max == 0 {
        return Err(Error::Precondition("n_max must be at least 1".into()));
    }
    if sample_every == 0 {
        return Err(Error::Precondition("sample_every must be at least 1".into()));
    }
    if x0.len() != game.rows() {
        return Err(Error::dims("initial state", game.rows(), x0.len()));
    }
    opp.check(game)?;
    if let OpponentModel::Coupled { rule: rb, .. } = opp {
        check_rule(rb)?;
    }
    let (n, m) = (game.rows(), game.cols());
    let meta = TrajectoryMeta {
        mode: TimeMode::Discrete,
        dt: None,
        sample_every,
        rule: rule.describe(),
        game_digest: game.digest(),
    };
    let mut traj = Trajectory::new(meta, opp.records_opponent());

    let mut zx = log_weights(x0.weights());
    normalize_log(&mut zx);
    let mut zy = match opp {
        OpponentModel::Coupled { y0, .. } => {
            let mut z = log_weights(y0.weights());
            normalize_log(&mut z);
            Some(z)
        }
        _ => None,
    };
    let mut x: Vec<f64> = zx.iter().map(|v| v.exp()).collect();
    let mut y = vec![0.0; m];
    let mut fx = vec![0.0; n];
    let mut fy = vec![0.0; m];

    let current_y = |k: usize, x: &[f64], zy: &Option<Vec<f64>>, y: &mut Vec<f64>| match opp {
        OpponentModel::SelfPlay => y.copy_from_slice(x),
        OpponentModel::Scripted { schedule } => schedule.eval_into(k as f64, y),
        OpponentModel::Coupled { .. } => {
            for (o, v) in y.iter_mut().zip(zy.as_ref().expect("coupled state")) {
                *o = v.exp();
            }
        }
    };

    current_y(0, &x, &zy, &mut y);
    traj.push(0.0, &zx, Some(&y));
    let mut last_recorded = 0;
    for k in 0..n_max {
        let c = bg.at(k);
        let annotate = |e: Error| match e {
            Error::BackgroundTooSmall { strategy, value, .. } => Error::BackgroundTooSmall {
                step: Some(k),
                strategy,
                value,
            },
            other => link_error_at(k as f64, other),
        };
        log_factors(rule, game, &x, &y, c, &mut fx).map_err(annotate)?;
        if let (OpponentModel::Coupled { game: b, rule: rb, .. }, Some(zy)) = (opp, zy.as_ref()) {
            let ycur: Vec<f64> = zy.iter().map(|v| v.exp()).collect();
            log_factors(rb, b, &ycur, &x, c, &mut fy).map_err(annotate)?;
        }
        for (z, f) in zx.iter_mut().zip(&fx) {
            *z += f;
        }
        normalize_log(&mut zx);
        if let Some(zy) = zy.as_mut() {
            for (z, f) in zy.iter_mut().zip(&fy) {
                *z += f;
            }
            normalize_log(zy);
        }
        if zx.iter().any(|v| v.is_nan() || *v == f64::INFINITY) {
            return Err(Error::NonFinite { t: (k + 1) as f64 });
        }
        for (xi, z) in x.iter_mut().zip(&zx) {
            *xi = z.exp();
        }
        current_y(k + 1, &x, &zy, &mut y);
        if (k + 1) % sample_every == 0 {
            traj.push((k + 1) as f64, &zx, Some(&y));
            last_recorded = k + 1;
        }
    }
    if last_recorded != n_max {
        traj.push(n_max as f64, &zx, Some(&y));
    }
    Ok(traj)
}

/// Step of a doubling search over the background fitness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdProbe {
    pub c: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSearch {
    /// First probed `C` that passed, if any.
    pub threshold: Option<f64>,
    pub probes: Vec<ThresholdProbe>,
}

/// Probes `C = c_start, 2 c_start, 4 c_start, ...` up to `c_max` and stops at
/// the first value for which `passes` holds.
pub fn background_threshold_search<F>(c_start: f64, c_max: f64, mut passes: F) -> Result<ThresholdSearch>
where
    F: FnMut(f64) -> Result<bool>,
{
    if !(c_start > 0.0 && c_start.is_finite()) {
        return Err(Error::Precondition(format!("search must start at a positive C, got {c_start}")));
    }
    let mut probes = Vec::new();
    let mut c = c_start;
    while c <= c_max {
        let passed = passes(c)?;
        probes.push(ThresholdProbe { c, passed });
        if passed {
            return Ok(ThresholdSearch {
                threshold: Some(c),
                probes,
            });
        }
        c *= 2.0;
    }
    Ok(ThresholdSearch {
        threshold: None,
        probes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(rows: &[&[f64]]) -> Game {
        Game::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn ms(v: &[f64]) -> MixedStrategy {
        MixedStrategy::new(v.to_vec()).unwrap()
    }

    fn two() -> Game {
        g(&[&[2.0, 2.0], &[1.0, 1.0]])
    }

    #[test]
    fn step_examples() {
        let r = GrowthRule::replicator();
        let flat = g(&[&[3.0, 1.0], &[3.0, 1.0], &[3.0, 1.0]]);
        let x = ms(&[0.2, 0.3, 0.5]);
        assert_eq!(step(&r, &flat, &x, &ms(&[0.5, 0.5]), 0.0).unwrap(), x);

        let half = ms(&[0.5, 0.5]);
        let next = step(&r, &two(), &half, &half, 0.0).unwrap();
        assert!((next.get(0) - 2.0 / 3.0).abs() < 1e-15);
        assert!((next.get(1) - 1.0 / 3.0).abs() < 1e-15);

        let e1 = MixedStrategy::pure(2, 0).unwrap();
        assert_eq!(step(&r, &two(), &e1, &half, 0.0).unwrap(), e1);
        assert_eq!(step(&r, &two(), &half, &half, f64::INFINITY).unwrap(), half);
    }

    #[test]
    fn step_rejects_small_background() {
        let r = GrowthRule::replicator();
        let neg = g(&[&[-1.0, 0.0], &[1.0, 0.0]]);
        let x = MixedStrategy::uniform(2);
        let err = step(&r, &neg, &x, &ms(&[1.0, 0.0]), 0.0).unwrap_err();
        assert!(matches!(err, Error::BackgroundTooSmall { strategy: 0, .. }));
        assert!(step(&r, &neg, &x, &ms(&[1.0, 0.0]), 1.5).is_ok());
    }

    #[test]
    fn w_increment_examples() {
        let r = GrowthRule::replicator();
        let half = ms(&[0.5, 0.5]);
        let e1 = MixedStrategy::pure(2, 0).unwrap();
        let e2 = MixedStrategy::pure(2, 1).unwrap();
        assert_eq!(discrete_w_increment(&r, &two(), &half, &half, 0.0, &e1, &e1).unwrap(), 0.0);
        let d = discrete_w_increment(&r, &two(), &half, &half, 0.0, &e1, &e2).unwrap();
        assert!((d - 2f64.ln()).abs() < 1e-15);
        let d = discrete_w_increment(&r, &two(), &half, &half, 1000.0, &e1, &e2).unwrap();
        assert!((d - 1e-3).abs() < 2e-6);
        assert!((d - (1002f64 / 1001.0).ln()).abs() < 1e-15);
    }

    #[test]
    fn iterate_log_ratio_grows_by_ln2() {
        let r = GrowthRule::replicator();
        let tr = iterate(
            &r,
            &two(),
            &MixedStrategy::uniform(2),
            &OpponentModel::SelfPlay,
            50,
            BackgroundFitness::Constant { c: 0.0 },
            1,
        )
        .unwrap();
        for (k, ls) in tr.log_states.iter().enumerate() {
            let ratio = ls[0] - ls[1];
            assert!((ratio - k as f64 * 2f64.ln()).abs() < 1e-12 * (1.0 + k as f64));
        }
        assert_eq!(tr.times[50], 50.0);
    }

    #[test]
    fn constant_payoffs_stay_put() {
        let flat = g(&[&[1.0, 1.0], &[1.0, 1.0]]);
        let x0 = ms(&[0.25, 0.75]);
        let tr = iterate(
            &GrowthRule::replicator(),
            &flat,
            &x0,
            &OpponentModel::SelfPlay,
            100,
            BackgroundFitness::Affine { c0: 1.0, c1: 1.0 },
            10,
        )
        .unwrap();
        for s in &tr.states {
            assert!((s[0] - 0.25).abs() < 1e-15);
        }
        assert_eq!(tr.len(), 11);
    }

    #[test]
    fn geometric_background_freezes() {
        let tr = iterate(
            &GrowthRule::replicator(),
            &two(),
            &MixedStrategy::uniform(2),
            &OpponentModel::SelfPlay,
            10_000,
            BackgroundFitness::Geometric { c0: 1.0, r: 2.0 },
            1000,
        )
        .unwrap();
        // total gain is at most sum_n 1/(2^n + 1) < 2
        let x2 = tr.final_state()[1];
        assert!(x2 > 0.5 * (-2.0f64).exp());
        assert!(!BackgroundFitness::Geometric { c0: 1.0, r: 2.0 }.sum_inverse_diverges());
        assert!(BackgroundFitness::Affine { c0: 1.0, c1: 1.0 }.sum_inverse_diverges());
        assert!(BackgroundFitness::Constant { c: 5.0 }.sum_inverse_diverges());
    }

    #[test]
    fn iterate_reports_step_of_failure() {
        let neg = g(&[&[-1.0, -1.0], &[0.0, 0.0]]);
        let err = iterate(
            &GrowthRule::replicator(),
            &neg,
            &MixedStrategy::uniform(2),
            &OpponentModel::SelfPlay,
            10,
            BackgroundFitness::Constant { c: 0.0 },
            1,
        )
        .unwrap_err();
        assert!(matches!(err, Error::BackgroundTooSmall { step: Some(0), strategy: 0, .. }));
        assert!(err.to_string().contains("at step 0"));
    }

    #[test]
    fn doubling_search() {
        let s = background_threshold_search(1.0, 1e6, |c| Ok(c > 20.0)).unwrap();
        assert_eq!(s.threshold, Some(32.0));
        assert_eq!(s.probes.len(), 6);
        let s = background_threshold_search(1.0, 10.0, |_| Ok(false)).unwrap();
        assert_eq!(s.threshold, None);
        assert!(background_threshold_search(0.0, 10.0, |_| Ok(true)).is_err());
    }
}
