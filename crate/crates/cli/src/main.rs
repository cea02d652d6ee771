//! `monodyn` command-line front end.

mod config;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monodyn::diagnostics::{verdict, w_series, Verdict, DEFAULT_ELIM_THRESHOLD, DEFAULT_SURV_THRESHOLD};
use monodyn::dominance::{
    find_dominator, is_iteratively_dominated_by_pure, is_mixed_iteratively_dominated, DominatorKind,
};
use monodyn::dynamics::{integrate, iterate, BackgroundFitness, IntegratorSettings, TimeMode};
use monodyn::experiments::{run_scenario, ScenarioName, ScenarioOptions};
use monodyn::link::{classify_link, discrete_effective_link, rps_direction, Interval, LinkFamily, LinkFunction, RpsMode};
use monodyn::{Game, MixedStrategy};
use serde::Serialize;

use config::{parse_matrix, parse_weights, read_game, Mode, RunConfig};
use output::{emit, report_json, write_traj};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String),
    Lib(monodyn::Error),
    /// A scenario ran but missed an expected outcome.
    Expectation(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Lib(e) if e.is_numerical() => 2,
            CliError::Lib(_) => 1,
            CliError::Expectation(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Lib(e) if e.is_numerical() => write!(f, "numerical failure: {e}"),
            CliError::Lib(e) => write!(f, "error: {e}"),
            CliError::Expectation(m) => write!(f, "expectation failed: {m}"),
        }
    }
}

impl From<monodyn::Error> for CliError {
    fn from(e: monodyn::Error) -> Self {
        CliError::Lib(e)
    }
}

#[derive(Parser)]
#[command(name = "monodyn", version, about = "Monotone selection dynamics and dominated strategies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Overrides {
    /// Continuous horizon.
    #[arg(long)]
    t_max: Option<f64>,
    /// Integrator step.
    #[arg(long)]
    dt: Option<f64>,
    /// Number of discrete steps.
    #[arg(long)]
    n_max: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a configured simulation and judge its targets.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Verdict JSON (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Trajectory CSV.
        #[arg(long)]
        traj: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Test whether a strategy is strictly dominated.
    Dominance {
        /// JSON game file.
        #[arg(long, conflicts_with = "matrix")]
        game: Option<PathBuf>,
        /// Inline matrix, rows separated by `;`.
        #[arg(long)]
        matrix: Option<String>,
        /// Comma-separated weights of the tested strategy.
        #[arg(long)]
        q: String,
        #[arg(long, value_enum, default_value_t = Kind::Mixed)]
        kind: Kind,
        /// Use iterated elimination.
        #[arg(long)]
        iterated: bool,
        /// Opponent's payoffs (rows are its strategies) for iterated runs.
        #[arg(long)]
        opponent: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the dynamics induced by a link on a payoff interval.
    Classify {
        #[arg(long)]
        link: String,
        /// Interval as `lo,hi`.
        #[arg(long, visible_alias = "domain", allow_hyphen_values = true)]
        interval: String,
        /// Classify the discrete map's effective link `ln(C + f)`.
        #[arg(long = "discrete-C", allow_hyphen_values = true)]
        discrete_c: Option<f64>,
        #[arg(long, default_value_t = monodyn::link::DEFAULT_GRID)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Direction of cycling in the RPS game with rows (a,c,b), (b,a,c), (c,b,a).
    RpsDirection {
        /// Parameters as `a,b,c`.
        #[arg(long, allow_hyphen_values = true)]
        abc: String,
        /// Link; the identity when absent.
        #[arg(long)]
        link: Option<String>,
        #[arg(long, value_enum)]
        mode: Option<CycleMode>,
        /// Background fitness for `--mode discrete`.
        #[arg(long = "discrete-C", allow_hyphen_values = true)]
        discrete_c: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and run a catalog scenario.
    Scenario {
        #[arg(value_parser = parse_scenario)]
        name: ScenarioName,
        #[arg(long)]
        link: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        traj: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        overrides: Overrides,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CycleMode {
    Replicator,
    Continuous,
    Discrete,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Pure,
    Mixed,
}

fn parse_scenario(s: &str) -> Result<ScenarioName, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = ScenarioName::ALL.iter().map(|n| n.as_str()).collect();
        format!("unknown scenario `{s}` (expected one of {})", names.join(", "))
    })
}

fn parse_link(s: &str) -> Result<LinkFamily, CliError> {
    s.parse().map_err(|e: monodyn::Error| CliError::Config(format!("--link: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("monodyn: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Simulate {
            config,
            out,
            traj,
            overrides,
        } => simulate(&config, out, traj, &overrides),
        Command::Dominance {
            game,
            matrix,
            q,
            kind,
            iterated,
            opponent,
            out,
        } => {
            let game = load_game(game.as_deref(), matrix.as_deref())?;
            let q = parse_weights(&q).map_err(|e| CliError::Config(format!("--q: {e}")))?;
            if q.len() != game.rows() {
                return Err(CliError::Config(format!(
                    "--q: has {} weights but the game has {} strategies",
                    q.len(),
                    game.rows()
                )));
            }
            let q = MixedStrategy::new(q).map_err(|e| CliError::Config(format!("--q: {e}")))?;
            let text = if iterated {
                let opp = match opponent {
                    Some(p) => Some(load_game(Some(&p), None)?),
                    None => None,
                };
                let r = match kind {
                    Kind::Mixed => is_mixed_iteratively_dominated(&game, opp.as_ref(), &q)?,
                    Kind::Pure => is_iteratively_dominated_by_pure(&game, opp.as_ref(), &q)?,
                };
                report_json(&r)?
            } else {
                let all_i: Vec<usize> = (0..game.rows()).collect();
                let all_j: Vec<usize> = (0..game.cols()).collect();
                let kind = match kind {
                    Kind::Mixed => DominatorKind::Mixed,
                    Kind::Pure => DominatorKind::Pure,
                };
                report_json(&find_dominator(&game, &q, &all_i, &all_j, kind)?)?
            };
            emit(&text, out.as_deref())
        }
        Command::Classify {
            link,
            interval,
            discrete_c,
            grid,
            out,
        } => {
            let family = parse_link(&link)?;
            let domain: Interval = interval.parse().map_err(|e| CliError::Config(format!("--interval: {e}")))?;
            let f = LinkFunction::new(family, domain)?;
            let f = match discrete_c {
                Some(c) => discrete_effective_link(&f, c)?,
                None => f,
            };
            let class = classify_link(&f, grid)?;
            #[derive(Serialize)]
            struct Out<'a> {
                link: String,
                interval: Interval,
                discrete_c: Option<f64>,
                class: &'a monodyn::link::DynamicsClass,
            }
            let text = report_json(&Out {
                link,
                interval: domain,
                discrete_c,
                class: &class,
            })?;
            emit(&text, out.as_deref())
        }
        Command::RpsDirection {
            abc,
            link,
            mode,
            discrete_c,
            out,
        } => {
            let v = parse_weights(&abc).map_err(|e| CliError::Config(format!("--abc: {e}")))?;
            let [a, b, c] = v[..] else {
                return Err(CliError::Config(format!("--abc: expected three numbers, got {}", v.len())));
            };
            let mode = match (mode, discrete_c) {
                (Some(CycleMode::Discrete) | None, Some(background)) => RpsMode::DiscreteFunctional { background },
                (Some(CycleMode::Discrete), None) => {
                    return Err(CliError::Config("--mode discrete needs --discrete-C".into()))
                }
                (Some(_), Some(_)) => {
                    return Err(CliError::Config("--discrete-C is only valid with --mode discrete".into()))
                }
                (Some(CycleMode::Replicator), None) => RpsMode::Replicator,
                (Some(CycleMode::Continuous), None) => RpsMode::ContinuousFunctional,
                (None, None) if link.is_some() => RpsMode::ContinuousFunctional,
                (None, None) => RpsMode::Replicator,
            };
            let f = match &link {
                Some(l) => {
                    let lo = c.min(a).min(b);
                    let hi = c.max(a).max(b);
                    Some(LinkFunction::new(parse_link(l)?, Interval::new(lo, hi)?)?)
                }
                None => None,
            };
            let dir = rps_direction(f.as_ref(), a, b, c, mode)?;
            let text = report_json(&serde_json::json!({
                "a": a, "b": b, "c": c,
                "link": link.unwrap_or_else(|| "identity".into()),
                "mode": mode,
                "direction": dir,
            }))?;
            emit(&text, out.as_deref())
        }
        Command::Scenario {
            name,
            link,
            out,
            traj,
            seed,
            overrides,
        } => {
            let opts = ScenarioOptions {
                link: link.as_deref().map(parse_link).transpose()?,
                seed,
                t_max: overrides.t_max,
                dt: overrides.dt,
                n_max: overrides.n_max,
            };
            let run = run_scenario(name, &opts)?;
            emit(&report_json(&run.report)?, out.as_deref())?;
            if let Some(path) = traj {
                write_traj(&run.trajectory, &path, &[])?;
            }
            if !run.report.passed {
                let failed: Vec<&str> = run
                    .report
                    .certificates
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| c.name.as_str())
                    .chain(run.report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()))
                    .collect();
                return Err(CliError::Expectation(format!("{name}: {}", failed.join(", "))));
            }
            Ok(())
        }
    }
}

fn load_game(file: Option<&Path>, matrix: Option<&str>) -> Result<Game, CliError> {
    match (file, matrix) {
        (Some(p), _) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", p.display())))?;
            read_game(&text).map_err(|e| CliError::Config(format!("game {}: {e}", p.display())))
        }
        (None, Some(m)) => parse_matrix(m).map_err(|e| CliError::Config(format!("--matrix: {e}"))),
        (None, None) => Err(CliError::Config("one of --game or --matrix is required".into())),
    }
}

#[derive(Serialize)]
struct TargetReport {
    p: Option<Vec<f64>>,
    q: Vec<f64>,
    verdict: Verdict,
    /// `w(end) - w(start)` when `p` is given.
    w_gain: Option<f64>,
}

#[derive(Serialize)]
struct SimulationReport {
    game_digest: String,
    rule: String,
    mode: TimeMode,
    samples: usize,
    final_time: f64,
    final_state: Vec<f64>,
    targets: Vec<TargetReport>,
}

fn simulate(path: &Path, out: Option<PathBuf>, traj_path: Option<PathBuf>, ov: &Overrides) -> Result<(), CliError> {
    let base = path.parent().unwrap_or(Path::new("."));
    let cfg = RunConfig::load(path)?;
    let r = cfg.resolve(base)?;
    let cfg = &r.config;
    let traj = match cfg.mode {
        Mode::Continuous => {
            if ov.n_max.is_some() {
                return Err(CliError::Config("--n-max: only valid in discrete mode".into()));
            }
            let mut s = cfg.integrator.unwrap_or_default();
            if let Some(t) = ov.t_max {
                s.t_max = t;
            }
            if let Some(dt) = ov.dt {
                s.dt = dt;
            }
            integrate(&cfg.rule, &r.game, &r.x0, &cfg.opponent, IntegratorSettings { ..s })?
        }
        Mode::Discrete => {
            if ov.t_max.is_some() || ov.dt.is_some() {
                return Err(CliError::Config("--t-max/--dt: only valid in continuous mode".into()));
            }
            let it = cfg.iterator.clone().expect("checked in resolve");
            let n_max = ov.n_max.unwrap_or(it.n_max);
            let bg = cfg.background.unwrap_or(BackgroundFitness::Constant { c: 0.0 });
            iterate(&cfg.rule, &r.game, &r.x0, &cfg.opponent, n_max, bg, it.sample_every)?
        }
    };
    let mut targets = Vec::new();
    let mut w_cols: Vec<(String, Vec<f64>)> = Vec::new();
    for (k, (p, q)) in r.targets.iter().enumerate() {
        let v = verdict(&traj, q, DEFAULT_ELIM_THRESHOLD, DEFAULT_SURV_THRESHOLD)?;
        let w_gain = match p {
            Some(p) => {
                let w = w_series(&traj, p, q)?;
                let gain = w[w.len() - 1] - w[0];
                w_cols.push((format!("w{}", k + 1), w));
                Some(gain)
            }
            None => None,
        };
        targets.push(TargetReport {
            p: p.as_ref().map(|p| p.weights().to_vec()),
            q: q.weights().to_vec(),
            verdict: v,
            w_gain,
        });
    }
    if let Some(tp) = traj_path.or_else(|| cfg.output.traj.as_ref().map(|p| base.join(p))) {
        let extra: Vec<(&str, &[f64])> = w_cols.iter().map(|(n, w)| (n.as_str(), w.as_slice())).collect();
        write_traj(&traj, &tp, &extra)?;
    }
    let report = SimulationReport {
        game_digest: traj.meta.game_digest.clone(),
        rule: traj.meta.rule.clone(),
        mode: traj.meta.mode,
        samples: traj.len(),
        final_time: traj.final_time(),
        final_state: traj.final_state().to_vec(),
        targets,
    };
    let out = out.or_else(|| cfg.output.verdicts.as_ref().map(|p| base.join(p)));
    emit(&report_json(&report)?, out.as_deref())
}
