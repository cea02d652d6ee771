use serde::{Deserialize, Serialize};

use super::trajectory::{TimeMode, Trajectory, TrajectoryMeta};
use super::{link_error_at, log_weights, normalize_log, softmax_into, GrowthRule, OpponentModel};
use crate::error::{Error, Result};
use crate::game::{Game, MixedStrategy};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorSettings {
    pub dt: f64,
    pub t_max: f64,
    pub sample_every: usize,
}

impl Default for IntegratorSettings {
    fn default() -> Self {
        IntegratorSettings {
            dt: 1e-3,
            t_max: 200.0,
            sample_every: 100,
        }
    }
}

/// `x_i' = lambda x_i (g_i - sum_k x_k g_k)` with `g_i` the growth rate of
/// row `i` against `y`.
pub fn vector_field(
    rule: &GrowthRule,
    game: &Game,
    x: &MixedStrategy,
    y: &MixedStrategy,
) -> Result<Vec<f64>> {
    if x.len() != game.rows() {
        return Err(Error::dims("focal state", game.rows(), x.len()));
    }
    let u = game.payoff_vector(y.weights())?;
    let xw = x.weights();
    let mut g = vec![0.0; u.len()];
    for i in 0..u.len() {
        if xw[i] > 0.0 {
            g[i] = rule.growth(u[i])?;
        }
    }
    let gbar: f64 = xw.iter().zip(&g).map(|(a, b)| a * b).sum();
    let mean_u: f64 = xw.iter().zip(&u).map(|(a, b)| a * b).sum();
    let lambda = rule.speed.at(mean_u);
    Ok(xw
        .iter()
        .zip(&g)
        .map(|(xi, gi)| if *xi > 0.0 { lambda * xi * (gi - gbar) } else { 0.0 })
        .collect())
}

struct System<'a> {
    rule: &'a GrowthRule,
    game: &'a Game,
    opp: &'a OpponentModel,
    n: usize,
    m: usize,
    x: Vec<f64>,
    y: Vec<f64>,
    u: Vec<f64>,
    g: Vec<f64>,
}

impl<'a> System<'a> {
    fn new(rule: &'a GrowthRule, game: &'a Game, opp: &'a OpponentModel) -> Self {
        let (n, m) = (game.rows(), game.cols());
        System {
            rule,
            game,
            opp,
            n,
            m,
            x: vec![0.0; n],
            y: vec![0.0; m],
            u: vec![0.0; n.max(m)],
            g: vec![0.0; n.max(m)],
        }
    }

    fn dim(&self) -> usize {
        match self.opp {
            OpponentModel::Coupled { .. } => self.n + self.m,
            _ => self.n,
        }
    }

    /// Log-coordinate field: `dz_i = lambda (g_i - g_bar)` on the support.
    fn eval(&mut self, t: f64, z: &[f64], dz: &mut [f64]) -> Result<()> {
        let n = self.n;
        softmax_into(&z[..n], &mut self.x);
        match self.opp {
            OpponentModel::SelfPlay => self.y.copy_from_slice(&self.x),
            OpponentModel::Scripted { schedule } => schedule.eval_into(t, &mut self.y),
            OpponentModel::Coupled { .. } => softmax_into(&z[n..], &mut self.y),
        }
        let (x, y) = (&self.x, &self.y);
        log_field(
            self.rule,
            self.game,
            y,
            x,
            &z[..n],
            &mut self.u[..n],
            &mut self.g[..n],
            &mut dz[..n],
        )
        .map_err(|e| link_error_at(t, e))?;
        if let OpponentModel::Coupled { game: b, rule: rb, .. } = self.opp {
            log_field(
                rb,
                b,
                x,
                y,
                &z[n..],
                &mut self.u[..self.m],
                &mut self.g[..self.m],
                &mut dz[n..],
            )
            .map_err(|e| link_error_at(t, e))?;
        }
        Ok(())
    }
}

#[allow(clippy::too_many_arguments)]
fn log_field(
    rule: &GrowthRule,
    game: &Game,
    against: &[f64],
    own: &[f64],
    z: &[f64],
    u: &mut [f64],
    g: &mut [f64],
    dz: &mut [f64],
) -> Result<()> {
    game.payoff_vector_into(against, u);
    let mut gbar = 0.0;
    let mut mean_u = 0.0;
    for i in 0..z.len() {
        if z[i] > f64::NEG_INFINITY {
            g[i] = rule.growth(u[i])?;
            gbar += own[i] * g[i];
            mean_u += own[i] * u[i];
        }
    }
    let lambda = rule.speed.at(mean_u);
    for i in 0..z.len() {
        dz[i] = if z[i] > f64::NEG_INFINITY {
            lambda * (g[i] - gbar)
        } else {
            0.0
        };
    }
    Ok(())
}

struct Rk4 {
    k: [Vec<f64>; 4],
    tmp: Vec<f64>,
}

impl Rk4 {
    fn new(d: usize) -> Self {
        Rk4 {
            k: std::array::from_fn(|_| vec![0.0; d]),
            tmp: vec![0.0; d],
        }
    }

    fn step(&mut self, sys: &mut System, t: f64, h: f64, z: &mut [f64]) -> Result<()> {
        let [k1, k2, k3, k4] = &mut self.k;
        let tmp = &mut self.tmp;
        sys.eval(t, z, k1)?;
        for i in 0..z.len() {
            tmp[i] = z[i] + 0.5 * h * k1[i];
        }
        sys.eval(t + 0.5 * h, tmp, k2)?;
        for i in 0..z.len() {
            tmp[i] = z[i] + 0.5 * h * k2[i];
        }
        sys.eval(t + 0.5 * h, tmp, k3)?;
        for i in 0..z.len() {
            tmp[i] = z[i] + h * k3[i];
        }
        sys.eval(t + h, tmp, k4)?;
        for i in 0..z.len() {
            z[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        Ok(())
    }
}

/// Fixed-step RK4 in log-coordinates.
///
/// Coordinates that start at zero stay exactly zero. Breakpoints of a scripted
/// opponent become step boundaries. States are sampled every `sample_every`
/// steps and at the final time.
pub fn integrate(
    rule: &GrowthRule,
    game: &Game,
    x0: &MixedStrategy,
    opp: &OpponentModel,
    settings: IntegratorSettings,
) -> Result<Trajectory> {
    let IntegratorSettings {
        dt,
        t_max,
        sample_every,
    } = settings;
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::Precondition(format!("dt must be positive, got {dt}")));
    }
    if !(t_max.is_finite() && t_max >= dt) {
        return Err(Error::Precondition(format!("t_max must be at least dt, got {t_max}")));
    }
    if sample_every == 0 {
        return Err(Error::Precondition("sample_every must be at least 1".into()));
    }
    if x0.len() != game.rows() {
        return Err(Error::dims("initial state", game.rows(), x0.len()));
    }
    opp.check(game)?;

    let mut sys = System::new(rule, game, opp);
    let n = sys.n;
    let mut z = log_weights(x0.weights());
    if let OpponentModel::Coupled { y0, .. } = opp {
        z.extend(log_weights(y0.weights()));
    }
    let support: Vec<bool> = z.iter().map(|v| v.is_finite()).collect();
    let mut rk = Rk4::new(sys.dim());
    let schedule = match opp {
        OpponentModel::Scripted { schedule } => Some(schedule),
        _ => None,
    };

    let meta = TrajectoryMeta {
        mode: TimeMode::Continuous,
        dt: Some(dt),
        sample_every,
        rule: rule.describe(),
        game_digest: game.digest(),
    };
    let mut traj = Trajectory::new(meta, opp.records_opponent());
    let mut y = vec![0.0; game.cols()];
    let record = |traj: &mut Trajectory, t: f64, z: &[f64], y: &mut Vec<f64>| {
        match opp {
            OpponentModel::SelfPlay => {}
            OpponentModel::Scripted { schedule } => schedule.eval_into(t, y),
            OpponentModel::Coupled { .. } => {
                for (o, v) in y.iter_mut().zip(&z[n..]) {
                    *o = v.exp();
                }
            }
        }
        traj.push(t, &z[..n], Some(y));
    };

    normalize_log(&mut z[..n]);
    if n < z.len() {
        normalize_log(&mut z[n..]);
    }
    record(&mut traj, 0.0, &z, &mut y);

    let time_tol = 1e-9 * dt;
    let mut anchor = 0.0;
    let mut k_since = 0u64;
    let mut t = 0.0;
    let mut steps = 0usize;
    let mut last_recorded = 0usize;
    while t_max - t > time_tol {
        let mut target = t_max;
        if let Some(s) = schedule {
            target = target.min(s.next_breakpoint_after(t));
        }
        let nominal = anchor + (k_since + 1) as f64 * dt;
        let (t_next, snapped) = if nominal >= target - time_tol {
            (target, true)
        } else {
            (nominal, false)
        };
        rk.step(&mut sys, t, t_next - t, &mut z)?;
        normalize_log(&mut z[..n]);
        if n < z.len() {
            normalize_log(&mut z[n..]);
        }
        if z
            .iter()
            .zip(&support)
            .any(|(v, &s)| if s { !v.is_finite() } else { *v != f64::NEG_INFINITY })
        {
            return Err(Error::NonFinite { t: t_next });
        }
        t = t_next;
        if snapped {
            anchor = t;
            k_since = 0;
        } else {
            k_since += 1;
        }
        steps += 1;
        if steps.is_multiple_of(sample_every) {
            record(&mut traj, t, &z, &mut y);
            last_recorded = steps;
        }
    }
    if last_recorded != steps {
        record(&mut traj, t, &z, &mut y);
    }
    Ok(traj)
}
