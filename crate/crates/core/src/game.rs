//! Finite games seen from the focal player, and mixed strategies over them.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Tolerance used when a mixed strategy is built at an API boundary.
pub const SIMPLEX_TOL: f64 = 1e-12;

/// Payoff matrix of the focal player: rows are its pure strategies, columns
/// are the opponent's.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGame")]
pub struct Game {
    payoff: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    row_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    col_labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct RawGame {
    payoff: Vec<Vec<f64>>,
    #[serde(default)]
    row_labels: Option<Vec<String>>,
    #[serde(default)]
    col_labels: Option<Vec<String>>,
}

impl TryFrom<RawGame> for Game {
    type Error = Error;

    fn try_from(raw: RawGame) -> Result<Self> {
        let game = Game::new(raw.payoff)?;
        game.with_labels(raw.row_labels, raw.col_labels)
    }
}

impl Game {
    pub fn new(payoff: Vec<Vec<f64>>) -> Result<Self> {
        if payoff.is_empty() {
            return Err(Error::InvalidGame("payoff matrix has no rows".into()));
        }
        let m = payoff[0].len();
        if m == 0 {
            return Err(Error::InvalidGame("payoff matrix has no columns".into()));
        }
        for (i, row) in payoff.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidGame(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    m
                )));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::InvalidGame(format!(
                    "entry ({}, {}) is not finite",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(Game {
            payoff,
            row_labels: None,
            col_labels: None,
        })
    }

    pub fn with_labels(
        mut self,
        row_labels: Option<Vec<String>>,
        col_labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if let Some(r) = &row_labels {
            if r.len() != self.rows() {
                return Err(Error::dims("row_labels", self.rows(), r.len()));
            }
        }
        if let Some(c) = &col_labels {
            if c.len() != self.cols() {
                return Err(Error::dims("col_labels", self.cols(), c.len()));
            }
        }
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.payoff.len()
    }

    pub fn cols(&self) -> usize {
        self.payoff[0].len()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.payoff[i][j]
    }

    pub fn payoff(&self) -> &[Vec<f64>] {
        &self.payoff
    }

    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[String]> {
        self.col_labels.as_deref()
    }

    /// Game of the opponent in a two-role symmetric reading: rows are the
    /// opponent's strategies, entries are `A[j][i]`.
    pub fn transpose(&self) -> Game {
        let payoff = (0..self.cols())
            .map(|j| (0..self.rows()).map(|i| self.payoff[i][j]).collect())
            .collect();
        Game {
            payoff,
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }
    }

    /// Smallest and largest entry.
    pub fn payoff_range(&self) -> (f64, f64) {
        self.payoff
            .iter()
            .flatten()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }

    /// Hex SHA-256 of the payoff entries, used to tag trajectories.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.rows() as u64).to_le_bytes());
        h.update((self.cols() as u64).to_le_bytes());
        for v in self.payoff.iter().flatten() {
            h.update(v.to_bits().to_le_bytes());
        }
        hex::encode(h.finalize())
    }

    /// Payoffs of every pure row against `y`.
    pub fn payoff_vector(&self, y: &[f64]) -> Result<Vec<f64>> {
        if y.len() != self.cols() {
            return Err(Error::dims("opponent strategy", self.cols(), y.len()));
        }
        Ok(self.payoff_vector_unchecked(y))
    }

    pub(crate) fn payoff_vector_unchecked(&self, y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.rows()];
        self.payoff_vector_into(y, &mut out);
        out
    }

    pub(crate) fn payoff_vector_into(&self, y: &[f64], out: &mut [f64]) {
        for (o, row) in out.iter_mut().zip(&self.payoff) {
            *o = row.iter().zip(y).map(|(a, w)| a * w).sum();
        }
    }
}

/// A point of the probability simplex over some finite strategy set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct MixedStrategy {
    weights: Vec<f64>,
}

impl TryFrom<Vec<f64>> for MixedStrategy {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        validate_simplex(&v, SIMPLEX_TOL)
    }
}

impl From<MixedStrategy> for Vec<f64> {
    fn from(s: MixedStrategy) -> Vec<f64> {
        s.weights
    }
}

impl MixedStrategy {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        validate_simplex(&weights, SIMPLEX_TOL)
    }

    pub fn pure(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        let mut w = vec![0.0; n];
        w[i] = 1.0;
        Ok(MixedStrategy { weights: w })
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "uniform strategy over an empty set");
        MixedStrategy {
            weights: vec![1.0 / n as f64; n],
        }
    }

    /// Uniform weights on `support`, zero elsewhere.
    pub fn uniform_on(n: usize, support: &[usize]) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::EmptyRestriction);
        }
        let mut w = vec![0.0; n];
        for &i in support {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, len: n });
            }
            w[i] = 1.0 / support.len() as f64;
        }
        Ok(MixedStrategy { weights: w })
    }

    /// Internal constructor for vectors already known to lie on the simplex
    /// up to rounding; rescales by the sum.
    pub(crate) fn from_normalized(mut weights: Vec<f64>) -> Self {
        let s: f64 = weights.iter().sum();
        if s > 0.0 && s != 1.0 {
            weights.iter_mut().for_each(|w| *w /= s);
        }
        MixedStrategy { weights }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.weights[i] > 0.0).collect()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.weights[i]
    }
}

/// Accepts `v` as a mixed strategy if it is nonnegative and sums to one
/// within `tol`. Never renormalizes.
pub fn validate_simplex(v: &[f64], tol: f64) -> Result<MixedStrategy> {
    if v.is_empty() {
        return Err(Error::EmptyRestriction);
    }
    for (index, &value) in v.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFiniteWeight { index });
        }
        if value < 0.0 {
            return Err(Error::NegativeWeight { index, value });
        }
    }
    let sum: f64 = v.iter().sum();
    if (sum - 1.0).abs() > tol {
        return Err(Error::SumDeviation { sum, tol });
    }
    Ok(MixedStrategy { weights: v.to_vec() })
}

/// `U_i(y) = sum_j A[i][j] y_j`, with `i` zero-based.
pub fn payoff_pure(game: &Game, i: usize, y: &MixedStrategy) -> Result<f64> {
    if i >= game.rows() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: game.rows(),
        });
    }
    if y.len() != game.cols() {
        return Err(Error::dims("opponent strategy", game.cols(), y.len()));
    }
    Ok(game.payoff[i]
        .iter()
        .zip(y.weights())
        .map(|(a, w)| a * w)
        .sum())
}

/// `U_p(y) = sum_i p_i U_i(y)`.
pub fn payoff_mixed(game: &Game, p: &MixedStrategy, y: &MixedStrategy) -> Result<f64> {
    if p.len() != game.rows() {
        return Err(Error::dims("focal strategy", game.rows(), p.len()));
    }
    let u = game.payoff_vector(y.weights())?;
    Ok(p.weights().iter().zip(&u).map(|(a, b)| a * b).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn discussion() -> Game {
        Game::new(vec![
            vec![3.0, 0.0, 0.0],
            vec![0.0, 3.0, 0.0],
            vec![2.0, 2.0, 1.0],
        ])
        .unwrap()
    }

    fn ms(v: &[f64]) -> MixedStrategy {
        MixedStrategy::new(v.to_vec()).unwrap()
    }

    #[test]
    fn pure_payoff_examples() {
        let g = discussion();
        assert_eq!(payoff_pure(&g, 2, &ms(&[1.0, 0.0, 0.0])).unwrap(), 2.0);
        for i in 0..3 {
            for j in 0..3 {
                let e = MixedStrategy::pure(3, j).unwrap();
                assert_eq!(payoff_pure(&g, i, &e).unwrap(), g.entry(i, j));
            }
        }
        let surv = Game::new(vec![vec![1.0, 9.0], vec![4.5, 4.5], vec![9.0, 1.0]]).unwrap();
        assert_eq!(payoff_pure(&surv, 1, &ms(&[0.5, 0.5])).unwrap(), 4.5);
    }

    #[test]
    fn pure_payoff_errors() {
        let g = discussion();
        assert!(matches!(
            payoff_pure(&g, 3, &MixedStrategy::uniform(3)),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        ));
        assert!(matches!(
            payoff_pure(&g, 0, &MixedStrategy::uniform(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn mixed_payoff_examples() {
        let g = discussion();
        let v = payoff_mixed(&g, &ms(&[0.5, 0.5, 0.0]), &ms(&[1.0, 0.0, 0.0])).unwrap();
        assert_eq!(v, 1.5);
        let e = MixedStrategy::pure(3, 1).unwrap();
        let y = ms(&[0.2, 0.3, 0.5]);
        assert_eq!(
            payoff_mixed(&g, &e, &y).unwrap(),
            payoff_pure(&g, 1, &y).unwrap()
        );
        let u = MixedStrategy::uniform(3);
        let v = payoff_mixed(&g, &u, &u).unwrap();
        assert!((v - 11.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn simplex_validation() {
        assert!(validate_simplex(&[0.5, 0.5, 0.0], 1e-12).is_ok());
        assert!(matches!(
            validate_simplex(&[0.5, 0.6, 0.0], 1e-12),
            Err(Error::SumDeviation { .. })
        ));
        assert!(matches!(
            validate_simplex(&[1.0 + 1e-13, -1e-13], 1e-12),
            Err(Error::NegativeWeight { index: 1, .. })
        ));
        assert!(matches!(
            validate_simplex(&[f64::NAN, 1.0], 1e-12),
            Err(Error::NonFiniteWeight { index: 0 })
        ));
        assert!(validate_simplex(&[], 1e-12).is_err());
    }

    #[test]
    fn game_validation() {
        assert!(Game::new(vec![]).is_err());
        assert!(Game::new(vec![vec![]]).is_err());
        assert!(Game::new(vec![vec![1.0, 2.0], vec![1.0]]).is_err());
        assert!(Game::new(vec![vec![f64::INFINITY]]).is_err());
        let g = Game::new(vec![vec![1.0, 2.0]]).unwrap();
        assert!(g.clone().with_labels(Some(vec!["a".into()]), None).is_ok());
        assert!(g.with_labels(None, Some(vec!["a".into()])).is_err());
    }

    #[test]
    fn json_round_trip() {
        let src = r#"{"payoff": [[3,0,0],[0,3,0],[2,2,1]], "row_labels": ["A","B","C"]}"#;
        let g: Game = serde_json::from_str(src).unwrap();
        assert_eq!(g, discussion().with_labels(Some(vec!["A".into(), "B".into(), "C".into()]), None).unwrap());
        let back: Game = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.digest(), g.digest());
        assert!(serde_json::from_str::<Game>(r#"{"payoff": [[1,2],[3]]}"#).is_err());
    }

    #[test]
    fn mixed_strategy_serde_validates() {
        let s: MixedStrategy = serde_json::from_str("[0.25, 0.75]").unwrap();
        assert_eq!(s.weights(), &[0.25, 0.75]);
        assert!(serde_json::from_str::<MixedStrategy>("[0.5, 0.6]").is_err());
    }

    #[test]
    fn transpose_swaps_roles() {
        let g = Game::new(vec![vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]]).unwrap();
        let t = g.transpose();
        assert_eq!(t.rows(), 3);
        assert_eq!(t.entry(2, 1), 6.0);
        assert_eq!(t.transpose(), g);
    }
}
