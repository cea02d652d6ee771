//! Selection dynamics in continuous and discrete time.

pub mod continuous;
pub mod discrete;
pub mod rule;
pub mod schedule;
pub mod trajectory;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Game, MixedStrategy};

pub use continuous::{integrate, vector_field, IntegratorSettings};
pub use discrete::{
    background_threshold_search, discrete_w_increment, iterate, step, BackgroundFitness, ThresholdProbe,
    ThresholdSearch,
};
pub use rule::{GrowthKind, GrowthRule, Speed};
pub use schedule::{eval_schedule, Schedule};
pub use trajectory::{TimeMode, Trajectory, TrajectoryMeta};

/// What the focal population plays against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum OpponentModel {
    /// One population matched against itself: `y(t) = x(t)`.
    SelfPlay,
    /// A second population with its own payoffs (rows are its strategies)
    /// and growth rule, evolving on the same clock.
    Coupled {
        game: Game,
        rule: GrowthRule,
        y0: MixedStrategy,
    },
    /// Exogenous periodic path `y(t)`.
    Scripted { schedule: Schedule },
}

impl OpponentModel {
    pub(crate) fn check(&self, game: &Game) -> Result<()> {
        match self {
            OpponentModel::SelfPlay => {
                if !game.is_square() {
                    return Err(Error::Precondition(format!(
                        "self-play needs a square game, got {}x{}",
                        game.rows(),
                        game.cols()
                    )));
                }
            }
            OpponentModel::Coupled { game: b, y0, .. } => {
                if b.rows() != game.cols() || b.cols() != game.rows() {
                    return Err(Error::InvalidGame(format!(
                        "opponent game is {}x{}, expected {}x{}",
                        b.rows(),
                        b.cols(),
                        game.cols(),
                        game.rows()
                    )));
                }
                if y0.len() != game.cols() {
                    return Err(Error::dims("opponent initial state", game.cols(), y0.len()));
                }
            }
            OpponentModel::Scripted { schedule } => {
                if schedule.dim() != game.cols() {
                    return Err(Error::dims("opponent schedule", game.cols(), schedule.dim()));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn records_opponent(&self) -> bool {
        !matches!(self, OpponentModel::SelfPlay)
    }
}

/// `ln x` with `-inf` for exact zeros.
pub(crate) fn log_weights(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|&v| if v > 0.0 { v.ln() } else { f64::NEG_INFINITY })
        .collect()
}

/// Shifts `z` so that `sum exp(z) = 1`, leaving `-inf` entries alone.
pub(crate) fn normalize_log(z: &mut [f64]) {
    let m = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return;
    }
    let s: f64 = z.iter().map(|v| (v - m).exp()).sum();
    let lse = m + s.ln();
    for v in z.iter_mut() {
        *v -= lse;
    }
}

/// Frequencies from unnormalized log-frequencies.
pub(crate) fn softmax_into(z: &[f64], out: &mut [f64]) {
    let m = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut s = 0.0;
    for (o, v) in out.iter_mut().zip(z) {
        *o = (v - m).exp();
        s += *o;
    }
    for o in out.iter_mut() {
        *o /= s;
    }
}

pub(crate) fn link_error_at(t: f64, e: Error) -> Error {
    match e {
        Error::OutOfDomain { u, lo, hi } => Error::LinkDomain { t, u, lo, hi },
        other => other,
    }
}
