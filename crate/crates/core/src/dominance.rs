//! Strict dominance tests and iterated elimination of dominated strategies.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Game, MixedStrategy};
use crate::lp::{Constraint, LinearProgram, Relation};

/// Margins above this count as strict domination.
pub const STRICT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DominatorKind {
    /// Dominators range over pure strategies only.
    Pure,
    /// Dominators range over mixtures.
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceResult {
    pub dominated: bool,
    pub margin: f64,
    /// Best candidate found; a certificate whenever `dominated` is true.
    pub dominator: Option<MixedStrategy>,
    /// Set when the optimal margin lies within the strictness tolerance of 0.
    pub degenerate: bool,
}

impl DominanceResult {
    fn from_margin(margin: f64, dominator: Option<MixedStrategy>) -> Self {
        DominanceResult {
            dominated: margin > STRICT_TOL,
            margin,
            dominator,
            degenerate: margin.abs() <= STRICT_TOL,
        }
    }
}

fn check_subset(set: &[usize], len: usize) -> Result<()> {
    if set.is_empty() {
        return Err(Error::EmptyRestriction);
    }
    if let Some(&index) = set.iter().find(|&&i| i >= len) {
        return Err(Error::IndexOutOfRange { index, len });
    }
    Ok(())
}

fn column_value(game: &Game, p: &[f64], j: usize) -> f64 {
    p.iter()
        .enumerate()
        .map(|(i, w)| w * game.entry(i, j))
        .sum()
}

/// `min_{j in restrict_j} [U_p(e_j) - U_q(e_j)]`; positive iff `p` strictly
/// dominates `q` against the restricted opponent set.
pub fn strict_margin(
    game: &Game,
    p: &MixedStrategy,
    q: &MixedStrategy,
    restrict_j: &[usize],
) -> Result<f64> {
    if p.len() != game.rows() {
        return Err(Error::dims("dominator", game.rows(), p.len()));
    }
    if q.len() != game.rows() {
        return Err(Error::dims("dominated strategy", game.rows(), q.len()));
    }
    check_subset(restrict_j, game.cols())?;
    Ok(restrict_j
        .iter()
        .map(|&j| column_value(game, p.weights(), j) - column_value(game, q.weights(), j))
        .fold(f64::INFINITY, f64::min))
}

/// Best dominator of `q` supported on `restrict_i`, judged against the
/// opponent strategies in `restrict_j`.
pub fn find_dominator(
    game: &Game,
    q: &MixedStrategy,
    restrict_i: &[usize],
    restrict_j: &[usize],
    kind: DominatorKind,
) -> Result<DominanceResult> {
    if q.len() != game.rows() {
        return Err(Error::dims("dominated strategy", game.rows(), q.len()));
    }
    check_subset(restrict_i, game.rows())?;
    check_subset(restrict_j, game.cols())?;
    match kind {
        DominatorKind::Pure => {
            let mut best: Option<(f64, usize)> = None;
            for &k in restrict_i {
                let e = MixedStrategy::pure(game.rows(), k)?;
                let m = strict_margin(game, &e, q, restrict_j)?;
                if best.is_none_or(|(bm, _)| m > bm) {
                    best = Some((m, k));
                }
            }
            let (margin, k) = best.expect("restriction is nonempty");
            Ok(DominanceResult::from_margin(
                margin,
                Some(MixedStrategy::pure(game.rows(), k)?),
            ))
        }
        DominatorKind::Mixed => mixed_dominator(game, q, restrict_i, restrict_j),
    }
}

fn mixed_dominator(
    game: &Game,
    q: &MixedStrategy,
    restrict_i: &[usize],
    restrict_j: &[usize],
) -> Result<DominanceResult> {
    // Variables: p_k for k in restrict_i, then eps+ and eps-.
    let k = restrict_i.len();
    let mut objective = vec![0.0; k + 2];
    objective[k] = 1.0;
    objective[k + 1] = -1.0;
    let mut constraints = Vec::with_capacity(restrict_j.len() + 1);
    for &j in restrict_j {
        let mut coeffs: Vec<f64> = restrict_i.iter().map(|&i| game.entry(i, j)).collect();
        coeffs.push(-1.0);
        coeffs.push(1.0);
        constraints.push(Constraint {
            coeffs,
            relation: Relation::Ge,
            rhs: column_value(game, q.weights(), j),
        });
    }
    let mut simplex = vec![1.0; k];
    simplex.extend([0.0, 0.0]);
    constraints.push(Constraint {
        coeffs: simplex,
        relation: Relation::Eq,
        rhs: 1.0,
    });
    let sol = LinearProgram {
        objective,
        constraints,
    }
    .maximize()?;

    let mut w = vec![0.0; game.rows()];
    for (idx, &i) in restrict_i.iter().enumerate() {
        w[i] = sol.x[idx].max(0.0);
    }
    let p = MixedStrategy::from_normalized(w);
    let realized = strict_margin(game, &p, q, restrict_j)?;
    let (lo, hi) = game.payoff_range();
    let scale = 1.0 + (hi - lo).abs();
    if (realized - sol.value).abs() > 1e-9 * scale {
        return Err(Error::LpFailure(format!(
            "dominator realizes margin {realized:e}, program reported {:e}",
            sol.value
        )));
    }
    Ok(DominanceResult::from_margin(realized, Some(p)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EliminationMode {
    PureByPure,
    PureByMixed,
}

impl EliminationMode {
    fn dominator_kind(self) -> DominatorKind {
        match self {
            EliminationMode::PureByPure => DominatorKind::Pure,
            EliminationMode::PureByMixed => DominatorKind::Mixed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Focal,
    Opponent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Restriction {
    pub focal: Vec<usize>,
    pub opponent: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Removal {
    /// Index of the round that removed the strategy (1 for the first).
    pub round: usize,
    pub role: Role,
    pub strategy: usize,
    pub certificate: DominanceResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EliminationTrace {
    pub mode: EliminationMode,
    /// `rounds[0]` is the full game; each later entry follows one round.
    pub rounds: Vec<Restriction>,
    pub removals: Vec<Removal>,
}

impl EliminationTrace {
    pub fn survivors(&self) -> &Restriction {
        self.rounds.last().expect("trace holds the initial sets")
    }
}

fn opponent_view<'a>(game: &'a Game, opponent: Option<&'a Game>) -> Result<Option<&'a Game>> {
    match opponent {
        Some(o) => {
            if o.rows() != game.cols() || o.cols() != game.rows() {
                return Err(Error::InvalidGame(format!(
                    "opponent game is {}x{}, expected {}x{}",
                    o.rows(),
                    o.cols(),
                    game.cols(),
                    game.rows()
                )));
            }
            Ok(Some(o))
        }
        None if game.is_square() => Ok(Some(game)),
        None => Ok(None),
    }
}

fn dominated_pures(
    game: &Game,
    own: &[usize],
    other: &[usize],
    kind: DominatorKind,
) -> Result<Vec<(usize, DominanceResult)>> {
    let mut out = Vec::new();
    if own.len() < 2 {
        return Ok(out);
    }
    for &i in own {
        let e = MixedStrategy::pure(game.rows(), i)?;
        let res = find_dominator(game, &e, own, other, kind)?;
        if res.dominated {
            out.push((i, res));
        }
    }
    Ok(out)
}

/// Simultaneous elimination of strictly dominated pure strategies for both
/// roles until nothing more is removed.
///
/// `opponent` is the opponent's payoff matrix with its own strategies as rows.
/// Without it a square game is read as symmetric (the opponent faces the same
/// matrix); for a non-square game the opponent's set is then left intact.
pub fn iterate_elimination(
    game: &Game,
    opponent: Option<&Game>,
    mode: EliminationMode,
) -> Result<EliminationTrace> {
    let opp = opponent_view(game, opponent)?;
    let kind = mode.dominator_kind();
    let mut current = Restriction {
        focal: (0..game.rows()).collect(),
        opponent: (0..game.cols()).collect(),
    };
    let mut trace = EliminationTrace {
        mode,
        rounds: vec![current.clone()],
        removals: Vec::new(),
    };
    loop {
        let round = trace.rounds.len();
        let focal_out = dominated_pures(game, &current.focal, &current.opponent, kind)?;
        let opp_out = match opp {
            Some(o) => dominated_pures(o, &current.opponent, &current.focal, kind)?,
            None => Vec::new(),
        };
        if focal_out.is_empty() && opp_out.is_empty() {
            return Ok(trace);
        }
        let mut next = current.clone();
        next.focal.retain(|i| !focal_out.iter().any(|(k, _)| k == i));
        next.opponent.retain(|j| !opp_out.iter().any(|(k, _)| k == j));
        for (role, list) in [(Role::Focal, focal_out), (Role::Opponent, opp_out)] {
            for (strategy, certificate) in list {
                trace.removals.push(Removal {
                    round,
                    role,
                    strategy,
                    certificate,
                });
            }
        }
        trace.rounds.push(next.clone());
        current = next;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IteratedDominance {
    /// First elimination round at which `q` is strictly dominated, if any.
    pub round: Option<usize>,
    pub result: DominanceResult,
    pub trace: EliminationTrace,
}

/// Whether the mixed strategy `q` is removed by iterated strict dominance
/// where dominators may be mixed.
pub fn is_mixed_iteratively_dominated(
    game: &Game,
    opponent: Option<&Game>,
    q: &MixedStrategy,
) -> Result<IteratedDominance> {
    iterated_query(game, opponent, q, EliminationMode::PureByMixed)
}

/// Same question when only pure strategies may act as dominators.
pub fn is_iteratively_dominated_by_pure(
    game: &Game,
    opponent: Option<&Game>,
    q: &MixedStrategy,
) -> Result<IteratedDominance> {
    iterated_query(game, opponent, q, EliminationMode::PureByPure)
}

fn iterated_query(
    game: &Game,
    opponent: Option<&Game>,
    q: &MixedStrategy,
    mode: EliminationMode,
) -> Result<IteratedDominance> {
    if q.len() != game.rows() {
        return Err(Error::dims("dominated strategy", game.rows(), q.len()));
    }
    let trace = iterate_elimination(game, opponent, mode)?;
    let kind = mode.dominator_kind();
    let mut last = None;
    for (k, r) in trace.rounds.iter().enumerate() {
        let res = find_dominator(game, q, &r.focal, &r.opponent, kind)?;
        if res.dominated {
            return Ok(IteratedDominance {
                round: Some(k + 1),
                result: res,
                trace,
            });
        }
        last = Some(res);
    }
    Ok(IteratedDominance {
        round: None,
        result: last.expect("trace holds the initial sets"),
        trace,
    })
}
