use std::fs;
use std::path::{Path, PathBuf};

use monodyn::dynamics::{BackgroundFitness, GrowthRule, IntegratorSettings, OpponentModel};
use monodyn::{Game, MixedStrategy};
use serde::Deserialize;

use crate::CliError;

/// Matrix given inline, as a full game object, or by path to a JSON game.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GameSource {
    File { file: PathBuf },
    Matrix(Vec<Vec<f64>>),
    Inline(Game),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Continuous,
    Discrete,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IteratorSettings {
    pub n_max: usize,
    #[serde(default = "default_sample_every")]
    pub sample_every: usize,
}

fn default_sample_every() -> usize {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Target {
    /// Dominating strategy for the w-series; optional.
    #[serde(default)]
    pub p: Option<Vec<f64>>,
    pub q: Vec<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    pub traj: Option<PathBuf>,
    pub verdicts: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub game: GameSource,
    pub rule: GrowthRule,
    #[serde(default = "default_opponent")]
    pub opponent: OpponentModel,
    pub mode: Mode,
    pub x0: Vec<f64>,
    #[serde(default)]
    pub integrator: Option<IntegratorSettings>,
    #[serde(default)]
    pub iterator: Option<IteratorSettings>,
    #[serde(default)]
    pub background: Option<BackgroundFitness>,
    #[serde(default)]
    pub targets: Vec<Target>,
    #[serde(default)]
    pub output: Outputs,
}

fn default_opponent() -> OpponentModel {
    OpponentModel::SelfPlay
}

/// Config with the game loaded and every cross-field condition checked.
pub struct Resolved {
    pub game: Game,
    pub x0: MixedStrategy,
    pub targets: Vec<(Option<MixedStrategy>, MixedStrategy)>,
    pub config: RunConfig,
}

fn field(name: &str, e: monodyn::Error) -> CliError {
    CliError::Config(format!("{name}: {e}"))
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("config {}: {e}", path.display())))
    }

    pub fn resolve(self, base: &Path) -> Result<Resolved, CliError> {
        let game = match &self.game {
            GameSource::Matrix(m) => Game::new(m.clone()).map_err(|e| field("game", e))?,
            GameSource::Inline(g) => g.clone(),
            GameSource::File { file } => {
                let path = if file.is_absolute() { file.clone() } else { base.join(file) };
                let text = fs::read_to_string(&path)
                    .map_err(|e| CliError::Config(format!("game: cannot read {}: {e}", path.display())))?;
                read_game(&text).map_err(|e| CliError::Config(format!("game {}: {e}", path.display())))?
            }
        };
        match self.mode {
            Mode::Continuous => {
                if self.iterator.is_some() || self.background.is_some() {
                    return Err(CliError::Config(
                        "iterator/background: only valid in discrete mode".into(),
                    ));
                }
            }
            Mode::Discrete => {
                if self.integrator.is_some() {
                    return Err(CliError::Config("integrator: only valid in continuous mode".into()));
                }
                if self.iterator.is_none() {
                    return Err(CliError::Config("iterator: required in discrete mode".into()));
                }
            }
        }
        let x0 = strategy("x0", &self.x0, game.rows())?;
        let mut targets = Vec::new();
        for (k, t) in self.targets.iter().enumerate() {
            let q = strategy(&format!("targets[{k}].q"), &t.q, game.rows())?;
            let p = match &t.p {
                Some(p) => Some(strategy(&format!("targets[{k}].p"), p, game.rows())?),
                None => None,
            };
            targets.push((p, q));
        }
        Ok(Resolved {
            game,
            x0,
            targets,
            config: self,
        })
    }
}

fn strategy(name: &str, w: &[f64], n: usize) -> Result<MixedStrategy, CliError> {
    if w.len() != n {
        return Err(CliError::Config(format!(
            "{name}: has {} weights but the game has {n} strategies",
            w.len()
        )));
    }
    MixedStrategy::new(w.to_vec()).map_err(|e| field(name, e))
}

/// Accepts a game object or a bare matrix.
pub fn read_game(text: &str) -> Result<Game, String> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Any {
        Matrix(Vec<Vec<f64>>),
        Game(Game),
    }
    match serde_json::from_str::<Any>(text).map_err(|e| e.to_string())? {
        Any::Matrix(m) => Game::new(m).map_err(|e| e.to_string()),
        Any::Game(g) => Ok(g),
    }
}

/// Parses `1,2;3,4` into a matrix.
pub fn parse_matrix(s: &str) -> Result<Game, String> {
    let rows: Result<Vec<Vec<f64>>, _> = s
        .split(';')
        .map(|r| r.split(',').map(|v| v.trim().parse::<f64>()).collect())
        .collect();
    let rows = rows.map_err(|e| format!("bad matrix `{s}`: {e}"))?;
    Game::new(rows).map_err(|e| e.to_string())
}

pub fn parse_weights(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|e| format!("bad weight `{v}`: {e}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_strings() {
        let g = parse_matrix("3,0,0; 0,3,0; 2,2,1").unwrap();
        assert_eq!(g.rows(), 3);
        assert!(parse_matrix("1,2;3").is_err());
        assert!(parse_matrix("1,x").is_err());
    }

    #[test]
    fn config_forms() {
        let cfg: RunConfig = serde_json::from_str(
            r#"{"game": [[1,0],[0,1]], "rule": {"kind": "replicator"}, "mode": "continuous", "x0": [0.5, 0.5]}"#,
        )
        .unwrap();
        let r = cfg.resolve(Path::new(".")).unwrap();
        assert_eq!(r.game.rows(), 2);
        let cfg: RunConfig = serde_json::from_str(
            r#"{"game": {"payoff": [[1,0],[0,1]]}, "rule": {"kind": "replicator"}, "mode": "discrete",
                "x0": [0.5, 0.5]}"#,
        )
        .unwrap();
        assert!(matches!(cfg.resolve(Path::new(".")), Err(CliError::Config(m)) if m.starts_with("iterator")));
    }
}
