use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::MixedStrategy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TimeMode {
    Continuous,
    Discrete,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryMeta {
    pub mode: TimeMode,
    /// Step size of a continuous run.
    pub dt: Option<f64>,
    pub sample_every: usize,
    pub rule: String,
    pub game_digest: String,
}

/// Sampled population states. `log_states` holds `ln x_i` computed without
/// passing through `x_i`, so it stays finite after `x_i` underflows; exact
/// zeros (coordinates off the initial support) are `-inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub log_states: Vec<Vec<f64>>,
    pub opp_states: Option<Vec<Vec<f64>>>,
    pub meta: TrajectoryMeta,
}

impl Trajectory {
    pub(crate) fn new(meta: TrajectoryMeta, with_opponent: bool) -> Self {
        Trajectory {
            times: Vec::new(),
            states: Vec::new(),
            log_states: Vec::new(),
            opp_states: with_opponent.then(Vec::new),
            meta,
        }
    }

    pub(crate) fn push(&mut self, t: f64, log_x: &[f64], y: Option<&[f64]>) {
        self.times.push(t);
        self.states.push(log_x.iter().map(|z| z.exp()).collect());
        self.log_states.push(log_x.to_vec());
        if let (Some(ys), Some(y)) = (self.opp_states.as_mut(), y) {
            ys.push(y.to_vec());
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> &[f64] {
        self.states.last().expect("trajectory has samples")
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory has samples")
    }

    pub fn state(&self, k: usize) -> MixedStrategy {
        MixedStrategy::from_normalized(self.states[k].clone())
    }

    /// Writes `t,x1..xN[,y1..yM]` followed by any `extra` columns, one row per
    /// sample, with 17 significant digits.
    pub fn write_csv<W: Write>(&self, out: W, extra: &[(&str, &[f64])]) -> Result<()> {
        let io = |e: csv::Error| Error::Precondition(format!("csv output failed: {e}"));
        for (name, col) in extra {
            if col.len() != self.len() {
                return Err(Error::dims(format!("column {name}"), self.len(), col.len()));
            }
        }
        let mut w = csv::Writer::from_writer(out);
        let n = self.states.first().map_or(0, Vec::len);
        let mut header = vec!["t".to_string()];
        header.extend((1..=n).map(|i| format!("x{i}")));
        if let Some(ys) = &self.opp_states {
            let m = ys.first().map_or(0, Vec::len);
            header.extend((1..=m).map(|j| format!("y{j}")));
        }
        header.extend(extra.iter().map(|(name, _)| name.to_string()));
        w.write_record(&header).map_err(io)?;
        for k in 0..self.len() {
            let mut row = vec![fmt_num(self.times[k])];
            row.extend(self.states[k].iter().map(|v| fmt_num(*v)));
            if let Some(ys) = &self.opp_states {
                row.extend(ys[k].iter().map(|v| fmt_num(*v)));
            }
            row.extend(extra.iter().map(|(_, col)| fmt_num(col[k])));
            w.write_record(&row).map_err(io)?;
        }
        w.flush()
            .map_err(|e| Error::Precondition(format!("csv output failed: {e}")))?;
        Ok(())
    }
}

/// Full-precision decimal rendering used in CSV output.
pub fn fmt_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}
