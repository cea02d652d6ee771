use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::MixedStrategy;

/// Periodic, piecewise-linear path of opponent mixtures.
///
/// Between consecutive breakpoints the mixture is interpolated linearly; after
/// the last breakpoint it moves linearly back to the first one, reached again
/// at `t = period`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSchedule")]
pub struct Schedule {
    period: f64,
    breakpoints: Vec<(f64, MixedStrategy)>,
}

#[derive(Deserialize)]
struct RawSchedule {
    period: f64,
    breakpoints: Vec<(f64, MixedStrategy)>,
}

impl TryFrom<RawSchedule> for Schedule {
    type Error = Error;
    fn try_from(r: RawSchedule) -> Result<Self> {
        Schedule::new(r.period, r.breakpoints)
    }
}

impl Schedule {
    pub fn new(period: f64, breakpoints: Vec<(f64, MixedStrategy)>) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::Precondition(format!("schedule period must be positive, got {period}")));
        }
        let Some(first) = breakpoints.first() else {
            return Err(Error::Precondition("schedule has no breakpoints".into()));
        };
        if first.0 != 0.0 {
            return Err(Error::Precondition("schedule must start at t = 0".into()));
        }
        let m = first.1.len();
        for w in breakpoints.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::Precondition("schedule times must strictly increase".into()));
            }
        }
        if let Some(bad) = breakpoints.iter().find(|(_, s)| s.len() != m) {
            return Err(Error::dims("schedule breakpoint", m, bad.1.len()));
        }
        let (last_t, last_s) = breakpoints.last().expect("nonempty");
        if *last_t > period {
            return Err(Error::Precondition("breakpoint beyond the period".into()));
        }
        if *last_t == period {
            let gap = last_s
                .weights()
                .iter()
                .zip(first.1.weights())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            if gap > 1e-12 {
                return Err(Error::Precondition("schedule is discontinuous across the wrap".into()));
            }
        }
        Ok(Schedule {
            period,
            breakpoints,
        })
    }

    /// Opponent path that plays `e_1` on `[0, T-1]`, moves linearly to `e_2`
    /// on `[T-1, T]`, plays `e_2` on `[T, 2T-1]` and returns on `[2T-1, 2T]`.
    pub fn alternating(t_half: f64) -> Result<Self> {
        if !(t_half.is_finite() && t_half > 1.0) {
            return Err(Error::Precondition(format!(
                "alternating schedule needs T > 1, got {t_half}"
            )));
        }
        let l = MixedStrategy::pure(2, 0)?;
        let r = MixedStrategy::pure(2, 1)?;
        Schedule::new(
            2.0 * t_half,
            vec![
                (0.0, l.clone()),
                (t_half - 1.0, l),
                (t_half, r.clone()),
                (2.0 * t_half - 1.0, r),
            ],
        )
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn breakpoints(&self) -> &[(f64, MixedStrategy)] {
        &self.breakpoints
    }

    pub fn dim(&self) -> usize {
        self.breakpoints[0].1.len()
    }

    fn phase(&self, t: f64) -> (f64, f64) {
        let cycles = (t / self.period).floor();
        let mut s = t - cycles * self.period;
        if s >= self.period {
            s -= self.period;
        }
        (cycles, s.max(0.0))
    }

    pub(crate) fn eval_into(&self, t: f64, out: &mut [f64]) {
        let (_, s) = self.phase(t);
        let bp = &self.breakpoints;
        let k = bp.partition_point(|(tk, _)| *tk <= s) - 1;
        let (t0, y0) = (&bp[k].0, bp[k].1.weights());
        let (t1, y1) = if k + 1 < bp.len() {
            (bp[k + 1].0, bp[k + 1].1.weights())
        } else {
            (self.period, bp[0].1.weights())
        };
        if s == *t0 || t1 == *t0 {
            out.copy_from_slice(y0);
            return;
        }
        let a = (s - t0) / (t1 - t0);
        for ((o, u), v) in out.iter_mut().zip(y0).zip(y1) {
            *o = u + a * (v - u);
        }
    }

    /// Mixture at time `t >= 0`.
    pub fn eval(&self, t: f64) -> MixedStrategy {
        let mut out = vec![0.0; self.dim()];
        self.eval_into(t.max(0.0), &mut out);
        MixedStrategy::from_normalized(out)
    }

    /// First breakpoint time (in absolute time) strictly after `t`.
    pub fn next_breakpoint_after(&self, t: f64) -> f64 {
        let (cycles, _) = self.phase(t);
        let base = cycles * self.period;
        let tol = 1e-12 * self.period.max(1.0);
        for (tk, _) in &self.breakpoints {
            if base + tk > t + tol {
                return base + tk;
            }
        }
        base + self.period
    }
}

/// Mixture at time `t` of a periodic schedule.
pub fn eval_schedule(s: &Schedule, t: f64) -> MixedStrategy {
    s.eval(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating_examples() {
        let s = Schedule::alternating(10.0).unwrap();
        assert_eq!(eval_schedule(&s, 0.0).weights(), &[1.0, 0.0]);
        assert_eq!(eval_schedule(&s, 9.5).weights(), &[0.5, 0.5]);
        assert_eq!(eval_schedule(&s, 23.0).weights(), &[1.0, 0.0]);
        assert_eq!(eval_schedule(&s, 15.0).weights(), &[0.0, 1.0]);
        assert_eq!(eval_schedule(&s, 19.25).weights(), &[0.25, 0.75]);
        assert_eq!(eval_schedule(&s, 40.0).weights(), &[1.0, 0.0]);
    }

    #[test]
    fn breakpoints_in_absolute_time() {
        let s = Schedule::alternating(10.0).unwrap();
        assert_eq!(s.next_breakpoint_after(0.0), 9.0);
        assert_eq!(s.next_breakpoint_after(9.0), 10.0);
        assert_eq!(s.next_breakpoint_after(19.5), 20.0);
        assert_eq!(s.next_breakpoint_after(20.0), 29.0);
        assert_eq!(s.next_breakpoint_after(55.0), 59.0);
    }

    #[test]
    fn validation() {
        let e = |i| MixedStrategy::pure(2, i).unwrap();
        assert!(Schedule::new(1.0, vec![(0.5, e(0))]).is_err());
        assert!(Schedule::new(1.0, vec![(0.0, e(0)), (0.0, e(1))]).is_err());
        assert!(Schedule::new(1.0, vec![(0.0, e(0)), (1.0, e(1))]).is_err());
        assert!(Schedule::new(1.0, vec![(0.0, e(0)), (1.0, e(0))]).is_ok());
        assert!(Schedule::new(0.0, vec![(0.0, e(0))]).is_err());
        assert!(Schedule::alternating(1.0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = Schedule::alternating(4.0).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        let back: Schedule = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }
}
