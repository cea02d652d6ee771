//! Post-processing of trajectories: the `w` function, elimination metrics,
//! finite-horizon verdicts, periodic floors, and the local sign check near the
//! centre of an RPS game.

use serde::{Deserialize, Serialize};

use crate::dynamics::{vector_field, GrowthRule, Trajectory};
use crate::error::{Error, Result};
use crate::game::{Game, MixedStrategy};

pub const DEFAULT_ELIM_THRESHOLD: f64 = 1e-6;
pub const DEFAULT_SURV_THRESHOLD: f64 = 1e-3;

fn check_dim(traj: &Trajectory, s: &MixedStrategy, what: &str) -> Result<()> {
    let n = traj.log_states.first().map_or(0, Vec::len);
    if s.len() != n {
        return Err(Error::dims(what, n, s.len()));
    }
    Ok(())
}

/// `w = sum_i (p_i - q_i) ln x_i` at every sample. Coordinates at exactly
/// zero contribute infinite values of the matching sign.
pub fn w_series(traj: &Trajectory, p: &MixedStrategy, q: &MixedStrategy) -> Result<Vec<f64>> {
    check_dim(traj, p, "p")?;
    check_dim(traj, q, "q")?;
    let d: Vec<(usize, f64)> = (0..p.len())
        .filter(|&i| p.get(i) != q.get(i))
        .map(|i| (i, p.get(i) - q.get(i)))
        .collect();
    Ok(traj
        .log_states
        .iter()
        .map(|z| d.iter().map(|&(i, c)| c * z[i]).sum())
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct EliminationMetrics {
    /// `min_{i: q_i > 0} x_i`
    pub min_support: Vec<f64>,
    /// `prod_i x_i^{q_i}`
    pub product: Vec<f64>,
    pub log_min_support: Vec<f64>,
    pub log_product: Vec<f64>,
}

pub fn elimination_metrics(traj: &Trajectory, q: &MixedStrategy) -> Result<EliminationMetrics> {
    check_dim(traj, q, "q")?;
    let support = q.support();
    let log_min_support: Vec<f64> = traj
        .log_states
        .iter()
        .map(|z| support.iter().map(|&i| z[i]).fold(f64::INFINITY, f64::min))
        .collect();
    let log_product: Vec<f64> = traj
        .log_states
        .iter()
        .map(|z| support.iter().map(|&i| q.get(i) * z[i]).sum())
        .collect();
    Ok(EliminationMetrics {
        min_support: log_min_support.iter().map(|v| v.exp()).collect(),
        product: log_product.iter().map(|v| v.exp()).collect(),
        log_min_support,
        log_product,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    Eliminated,
    Survived,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub metric_final: f64,
    /// Least-squares slope of `ln(min_support)` against sample index over the
    /// last third of the samples.
    pub metric_trend: f64,
    pub witness: String,
    /// `ln(min_support)` at the last sample, finite even when the metric
    /// itself underflows.
    pub log_metric_final: f64,
    /// Smallest value of the metric over the last third.
    pub metric_late_min: f64,
}

/// Least-squares slope of `ys` against `0, 1, 2, ...`.
pub fn ls_slope(ys: &[f64]) -> f64 {
    let n = ys.len() as f64;
    if ys.len() < 2 {
        return 0.0;
    }
    let xm = (n - 1.0) / 2.0;
    let ym = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (k, y) in ys.iter().enumerate() {
        let dx = k as f64 - xm;
        sxy += dx * (y - ym);
        sxx += dx * dx;
    }
    sxy / sxx
}

/// Finite-horizon judgement on whether `q` is being eliminated, based on the
/// min-support metric.
pub fn verdict(
    traj: &Trajectory,
    q: &MixedStrategy,
    elim_threshold: f64,
    surv_threshold: f64,
) -> Result<Verdict> {
    if !(elim_threshold > 0.0 && elim_threshold < surv_threshold) {
        return Err(Error::Precondition(format!(
            "need 0 < elim_threshold < surv_threshold, got {elim_threshold} and {surv_threshold}"
        )));
    }
    let metrics = elimination_metrics(traj, q)?;
    let logs = &metrics.log_min_support;
    let n = logs.len();
    let log_final = *logs.last().unwrap_or(&f64::NAN);
    let metric_final = log_final.exp();
    if n < 10 {
        return Ok(Verdict {
            status: VerdictStatus::Inconclusive,
            metric_final,
            metric_trend: f64::NAN,
            witness: format!("run too short ({n} samples)"),
            log_metric_final: log_final,
            metric_late_min: f64::NAN,
        });
    }
    let late = &logs[2 * n / 3..];
    let late_min = late.iter().copied().fold(f64::INFINITY, f64::min);
    let trend = if late.iter().all(|v| v.is_finite()) {
        ls_slope(late)
    } else if log_final == f64::NEG_INFINITY {
        f64::NEG_INFINITY
    } else {
        f64::NAN
    };
    let (status, witness) = if metric_final < elim_threshold && trend < 0.0 {
        (VerdictStatus::Eliminated, format!("min_support<{elim_threshold:e}"))
    } else if late_min.exp() >= surv_threshold {
        (
            VerdictStatus::Survived,
            format!("min_support>={surv_threshold:e} over last third"),
        )
    } else {
        (VerdictStatus::Inconclusive, "no threshold fired".to_string())
    };
    Ok(Verdict {
        status,
        metric_final,
        metric_trend: trend,
        witness,
        log_metric_final: log_final,
        metric_late_min: late_min.exp(),
    })
}

fn pair_log_product(traj: &Trajectory, (i, j): (usize, usize)) -> Result<Vec<f64>> {
    let n = traj.log_states.first().map_or(0, Vec::len);
    for k in [i, j] {
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, len: n });
        }
    }
    Ok(traj.log_states.iter().map(|z| z[i] + z[j]).collect())
}

/// Minimum of `x_i x_j` over the last full period of a run covering at least
/// three periods.
pub fn periodic_floor(traj: &Trajectory, coords: (usize, usize), period: f64) -> Result<f64> {
    if !(period > 0.0) {
        return Err(Error::Precondition(format!("period must be positive, got {period}")));
    }
    let (t0, t1) = match (traj.times.first(), traj.times.last()) {
        (Some(a), Some(b)) => (*a, *b),
        _ => {
            return Err(Error::InsufficientCoverage {
                covered: 0.0,
                needed: 3.0 * period,
            })
        }
    };
    let tol = 1e-9 * period;
    if t1 - t0 < 3.0 * period - tol {
        return Err(Error::InsufficientCoverage {
            covered: t1 - t0,
            needed: 3.0 * period,
        });
    }
    window_min_product(traj, coords, t1 - period - tol)
}

/// Minimum of `x_i x_j` over samples with `t >= t_from`.
pub fn window_min_product(traj: &Trajectory, coords: (usize, usize), t_from: f64) -> Result<f64> {
    let lp = pair_log_product(traj, coords)?;
    Ok(traj
        .times
        .iter()
        .zip(&lp)
        .filter(|(t, _)| **t >= t_from)
        .map(|(_, v)| v.exp())
        .fold(f64::INFINITY, f64::min))
}

/// Maximum of `x_i x_j` over samples with `t >= t_from`.
pub fn window_max_product(traj: &Trajectory, coords: (usize, usize), t_from: f64) -> Result<f64> {
    let lp = pair_log_product(traj, coords)?;
    Ok(traj
        .times
        .iter()
        .zip(&lp)
        .filter(|(t, _)| **t >= t_from)
        .map(|(_, v)| v.exp())
        .fold(f64::NEG_INFINITY, f64::max))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorCheck {
    pub evaluated: usize,
    pub negative: usize,
    pub fraction_negative: f64,
}

/// Reads `(a, b, c)` off an RPS matrix with rows `(a,c,b), (b,a,c), (c,b,a)`.
pub fn rps_parameters(game: &Game) -> Option<(f64, f64, f64)> {
    if game.rows() != 3 || game.cols() != 3 {
        return None;
    }
    let (a, c, b) = (game.entry(0, 0), game.entry(0, 1), game.entry(0, 2));
    let expected = [[a, c, b], [b, a, c], [c, b, a]];
    for (i, row) in expected.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if game.entry(i, j) != *v {
                return None;
            }
        }
    }
    Some((a, b, c))
}

/// Samples `samples` points `x = (1/3,1/3,1/3) + h` with `0 < |h| <= radius`
/// on a golden-angle spiral and reports how often `d/dt ln(x1 x2 x3)` is
/// negative under `rule` in self-play.
pub fn taylor_sign_check(
    rule: &GrowthRule,
    game: &Game,
    radius: f64,
    samples: usize,
) -> Result<TaylorCheck> {
    let Some((a, b, c)) = rps_parameters(game) else {
        return Err(Error::Precondition("not a 3x3 RPS matrix".into()));
    };
    if !(c < a && a < b) || (a - 0.5 * (b + c)).abs() < 1e-12 {
        return Err(Error::Precondition(format!(
            "degenerate RPS game a = {a}, b = {b}, c = {c}"
        )));
    }
    if !(radius > 0.0 && radius <= 0.05) {
        return Err(Error::Precondition(format!("radius must lie in (0, 0.05], got {radius}")));
    }
    if samples == 0 {
        return Err(Error::Precondition("need at least one sample".into()));
    }
    let s2 = 2f64.sqrt();
    let s6 = 6f64.sqrt();
    let u1 = [1.0 / s2, -1.0 / s2, 0.0];
    let u2 = [1.0 / s6, 1.0 / s6, -2.0 / s6];
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let mut negative = 0;
    for k in 0..samples {
        let r = radius * ((k as f64 + 0.5) / samples as f64).sqrt();
        let th = golden * k as f64;
        let x: Vec<f64> = (0..3)
            .map(|i| 1.0 / 3.0 + r * (th.cos() * u1[i] + th.sin() * u2[i]))
            .collect();
        let x = MixedStrategy::from_normalized(x);
        let v = vector_field(rule, game, &x, &x)?;
        let drift: f64 = v.iter().zip(x.weights()).map(|(d, xi)| d / xi).sum();
        if drift < 0.0 {
            negative += 1;
        }
    }
    Ok(TaylorCheck {
        evaluated: samples,
        negative,
        fraction_negative: negative as f64 / samples as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{integrate, IntegratorSettings, OpponentModel, Schedule};

    fn g(rows: &[&[f64]]) -> Game {
        Game::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn ms(v: &[f64]) -> MixedStrategy {
        MixedStrategy::new(v.to_vec()).unwrap()
    }

    fn discussion() -> Game {
        g(&[&[3.0, 0.0, 0.0], &[0.0, 3.0, 0.0], &[2.0, 2.0, 1.0]])
    }

    fn run(game: &Game, x0: &[f64], t_max: f64, every: usize) -> Trajectory {
        integrate(
            &GrowthRule::replicator(),
            game,
            &ms(x0),
            &OpponentModel::SelfPlay,
            IntegratorSettings {
                dt: 1e-3,
                t_max,
                sample_every: every,
            },
        )
        .unwrap()
    }

    #[test]
    fn w_examples() {
        let two = g(&[&[1.0, 1.0], &[0.0, 0.0]]);
        let tr = run(&two, &[0.5, 0.5], 5.0, 500);
        let q = ms(&[0.5, 0.5]);
        assert!(w_series(&tr, &q, &q).unwrap().iter().all(|w| *w == 0.0));
        let w = w_series(&tr, &ms(&[1.0, 0.0]), &ms(&[0.0, 1.0])).unwrap();
        for k in 1..w.len() {
            let slope = (w[k] - w[k - 1]) / (tr.times[k] - tr.times[k - 1]);
            assert!((slope - 1.0).abs() < 1e-6);
        }

        let tr = run(&discussion(), &[0.4, 0.4, 0.2], 20.0, 100);
        let w = w_series(&tr, &ms(&[0.0, 0.0, 1.0]), &ms(&[0.5, 0.5, 0.0])).unwrap();
        for k in 1..w.len() {
            let slope = (w[k] - w[k - 1]) / (tr.times[k] - tr.times[k - 1]);
            assert!(slope >= 0.5 - 1e-9, "{slope}");
        }
    }

    #[test]
    fn metric_examples() {
        let tr = run(&discussion(), &[0.25, 0.5, 0.25], 0.01, 1);
        let m = elimination_metrics(&tr, &ms(&[0.5, 0.0, 0.5])).unwrap();
        assert!((m.min_support[0] - 0.25).abs() < 1e-15);
        assert!((m.product[0] - 0.25).abs() < 1e-15);
        let m = elimination_metrics(&tr, &MixedStrategy::pure(3, 1).unwrap()).unwrap();
        assert_eq!(m.min_support, tr.states.iter().map(|s| s[1]).collect::<Vec<_>>());

        let vertex = run(&discussion(), &[1.0, 0.0, 0.0], 0.1, 10);
        let m = elimination_metrics(&vertex, &ms(&[0.0, 0.5, 0.5])).unwrap();
        assert!(m.min_support.iter().chain(&m.product).all(|v| *v == 0.0));
    }

    #[test]
    fn verdict_examples() {
        let tr = run(&discussion(), &[0.4, 0.4, 0.2], 200.0, 1000);
        let v = verdict(&tr, &ms(&[0.5, 0.5, 0.0]), 1e-6, 1e-3).unwrap();
        assert_eq!(v.status, VerdictStatus::Eliminated);
        assert!(v.metric_trend < 0.0);

        let flat = g(&[&[1.0, 1.0, 1.0], &[1.0, 1.0, 1.0], &[1.0, 1.0, 1.0]]);
        let u = [1.0 / 3.0; 3];
        let tr = run(&flat, &u, 1.0, 10);
        let v = verdict(&tr, &MixedStrategy::uniform(3), 1e-6, 1e-3).unwrap();
        assert_eq!(v.status, VerdictStatus::Survived);

        let short = run(&flat, &u, 0.005, 1);
        let v = verdict(&short, &MixedStrategy::uniform(3), 1e-6, 1e-3).unwrap();
        assert_eq!(v.status, VerdictStatus::Inconclusive);
        assert!(verdict(&short, &MixedStrategy::uniform(3), 1e-3, 1e-6).is_err());
    }

    #[test]
    fn floor_examples() {
        let flat = g(&[&[1.0, 1.0], &[1.0, 1.0], &[1.0, 1.0]]);
        let tr = integrate(
            &GrowthRule::replicator(),
            &flat,
            &ms(&[0.2, 0.3, 0.5]),
            &OpponentModel::Scripted {
                schedule: Schedule::alternating(2.0).unwrap(),
            },
            IntegratorSettings {
                dt: 0.01,
                t_max: 12.0,
                sample_every: 10,
            },
        )
        .unwrap();
        let f = periodic_floor(&tr, (0, 2), 4.0).unwrap();
        assert!((f - 0.1).abs() < 1e-12);
        assert!(matches!(
            periodic_floor(&tr, (0, 2), 5.0),
            Err(Error::InsufficientCoverage { .. })
        ));
        assert!((window_max_product(&tr, (0, 2), 6.0).unwrap() - 0.1).abs() < 1e-12);
    }

    #[test]
    fn taylor_examples() {
        let r = GrowthRule::replicator();
        let out = g(&[&[1.0, -2.0, 2.0], &[2.0, 1.0, -2.0], &[-2.0, 2.0, 1.0]]);
        assert_eq!(taylor_sign_check(&r, &out, 0.01, 200).unwrap().fraction_negative, 1.0);
        let inward = g(&[&[-1.0, -2.0, 2.0], &[2.0, -1.0, -2.0], &[-2.0, 2.0, -1.0]]);
        assert_eq!(taylor_sign_check(&r, &inward, 0.01, 200).unwrap().fraction_negative, 0.0);

        let center = MixedStrategy::uniform(3);
        let v = vector_field(&r, &out, &center, &center).unwrap();
        assert!(v.iter().all(|d| d.abs() < 1e-15));

        let degenerate = g(&[&[0.0, -1.0, 1.0], &[1.0, 0.0, -1.0], &[-1.0, 1.0, 0.0]]);
        assert!(taylor_sign_check(&r, &degenerate, 0.01, 10).is_err());
        assert!(taylor_sign_check(&r, &discussion(), 0.01, 10).is_err());
        assert!(taylor_sign_check(&r, &out, 0.1, 10).is_err());
    }

    #[test]
    fn slope_of_line() {
        let ys: Vec<f64> = (0..10).map(|k| 3.0 - 0.5 * k as f64).collect();
        assert!((ls_slope(&ys) + 0.5).abs() < 1e-12);
    }
}
