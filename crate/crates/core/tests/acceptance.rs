//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use monodyn::diagnostics::{elimination_metrics, w_series};
use monodyn::dominance::{find_dominator, strict_margin, DominatorKind};
use monodyn::dynamics::{integrate, step, GrowthRule, IntegratorSettings, OpponentModel, Trajectory};
use monodyn::experiments::{run_scenario, Check, ScenarioName, ScenarioOptions, ScenarioRun};
use monodyn::link::{
    classify_link, discrete_effective_link, rps_direction, DynamicsLabel, Interval, LinkFamily, LinkFunction,
    RpsMode, DEFAULT_GRID,
};
use monodyn::scenarios::{paper_game, PaperGame};
use monodyn::{Game, MixedStrategy};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn fails(checks: &[Check]) -> Vec<String> {
    checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} = {:e} (want {})", c.name, c.value, c.expected))
        .collect()
}

fn scenario(name: ScenarioName) -> Result<ScenarioRun, String> {
    run_scenario(name, &ScenarioOptions::default()).map_err(|e| format!("{name}: {e}"))
}

fn summarize(run: &ScenarioRun) -> Outcome {
    let mut bad = fails(&run.report.checks);
    bad.extend(
        run.report
            .certificates
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("certificate {} slack {:e}", c.name, c.slack)),
    );
    let all: Vec<String> = run
        .report
        .checks
        .iter()
        .map(|c| format!("{}={:.4e}", c.name, c.value))
        .collect();
    if bad.is_empty() {
        Ok(all.join(", "))
    } else {
        Err(bad.join("; "))
    }
}

fn within(elapsed: Duration, limit: f64, msg: String) -> Outcome {
    let secs = elapsed.as_secs_f64();
    if secs < limit {
        Ok(format!("{msg}, {secs:.2}s"))
    } else {
        Err(format!("{msg}, took {secs:.2}s (limit {limit}s)"))
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let game = paper_game(&PaperGame::Discussion);
    let q = MixedStrategy::new(vec![0.5, 0.5, 0.0]).unwrap();
    let p = MixedStrategy::pure(3, 2).unwrap();
    let margin = find_dominator(&game, &q, &[0, 1, 2], &[0, 1, 2], DominatorKind::Mixed)
        .map_err(|e| e.to_string())?
        .margin;
    let traj = integrate(
        &GrowthRule::replicator(),
        &game,
        &MixedStrategy::new(vec![0.4, 0.4, 0.2]).unwrap(),
        &OpponentModel::SelfPlay,
        IntegratorSettings {
            dt: 1e-3,
            t_max: 200.0,
            sample_every: 100,
        },
    )
    .map_err(|e| e.to_string())?;
    let w = w_series(&traj, &p, &q).map_err(|e| e.to_string())?;
    let gain = w[w.len() - 1] - w[0];
    let bound = margin * 200.0 * (1.0 - 1e-3);
    let min_support = *elimination_metrics(&traj, &q).unwrap().min_support.last().unwrap();
    let elapsed = start.elapsed();
    if (margin - 0.5).abs() > 1e-9 || gain < bound || min_support >= 1e-8 {
        return Err(format!("margin {margin}, w gain {gain} (need >= {bound}), min support {min_support:e}"));
    }
    within(elapsed, 2.0, format!("margin {margin}, w gain {gain:.4} >= {bound}, min support {min_support:.3e}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let run = scenario(ScenarioName::SurvivalNonconvex)?;
    let elapsed = start.elapsed();
    let x_m = run.trajectory.final_state()[1];
    summarize(&run)?;
    if x_m <= 0.99 {
        return Err(format!("x_M(final) = {x_m}"));
    }
    within(elapsed, 5.0, format!("x_M(final) = {x_m:.6}"))
}

fn criterion_3() -> Outcome {
    summarize(&scenario(ScenarioName::SurvivalNonconcave)?)
}

fn criterion_4() -> Outcome {
    summarize(&scenario(ScenarioName::Dual4x4)?)
}

fn criterion_5() -> Outcome {
    summarize(&scenario(ScenarioName::Hw4x4)?)
}

fn criterion_6() -> Outcome {
    summarize(&scenario(ScenarioName::Prop4Threshold)?)
}

fn criterion_7() -> Outcome {
    summarize(&scenario(ScenarioName::Prop5Schedules)?)
}

/// All mixtures over `n` strategies whose weights have denominator at most
/// `max_den`.
fn rational_grid(n: usize, max_den: usize) -> Vec<Vec<f64>> {
    fn compositions(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=total {
            prefix.push(k);
            compositions(total - k, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut pts = Vec::new();
    for d in 1..=max_den {
        let mut comps = Vec::new();
        compositions(d, n, &mut Vec::new(), &mut comps);
        for c in comps {
            // skip points already produced by a smaller denominator
            if c.iter().fold(d, |g, &k| gcd(g, k)) == 1 {
                pts.push(c.iter().map(|&k| k as f64 / d as f64).collect());
            }
        }
    }
    pts
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let grid: Vec<MixedStrategy> = rational_grid(4, 20)
        .into_iter()
        .map(|w| MixedStrategy::new(w).unwrap())
        .collect();
    let all = [0usize, 1, 2, 3];
    let (mut disagreements, mut dominated) = (0, 0);
    for _ in 0..500 {
        let rows: Vec<Vec<f64>> = (0..4)
            .map(|_| (0..4).map(|_| rng.gen_range(0..=9) as f64).collect())
            .collect();
        let game = Game::new(rows).unwrap();
        for i in 0..4 {
            let q = MixedStrategy::pure(4, i).unwrap();
            let lp = find_dominator(&game, &q, &all, &all, DominatorKind::Mixed).map_err(|e| e.to_string())?;
            let grid_best = grid
                .iter()
                .map(|p| strict_margin(&game, p, &q, &all).unwrap())
                .fold(f64::NEG_INFINITY, f64::max);
            if lp.margin < grid_best - 1e-9 {
                disagreements += 1;
            }
            if lp.margin > 1e-6 {
                dominated += 1;
                let realized = lp
                    .dominator
                    .as_ref()
                    .map(|p| strict_margin(&game, p, &q, &all).unwrap())
                    .unwrap_or(f64::NEG_INFINITY);
                if (realized - lp.margin).abs() > 1e-9 {
                    disagreements += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let msg = format!("{disagreements} disagreements over 2000 tests ({dominated} dominated, {} grid points)", grid.len());
    if disagreements > 0 {
        return Err(msg);
    }
    within(elapsed, 30.0, msg)
}

fn run_discussion(dt: f64) -> Trajectory {
    integrate(
        &GrowthRule::replicator(),
        &paper_game(&PaperGame::Discussion),
        &MixedStrategy::new(vec![0.5, 0.3, 0.2]).unwrap(),
        &OpponentModel::SelfPlay,
        IntegratorSettings {
            dt,
            t_max: 20.0,
            sample_every: 1000,
        },
    )
    .unwrap()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn criterion_9() -> Outcome {
    let finals: Vec<Vec<f64>> = [4e-3, 2e-3, 1e-3]
        .iter()
        .map(|&dt| run_discussion(dt).final_state().to_vec())
        .collect();
    let ratio = max_diff(&finals[0], &finals[1]) / max_diff(&finals[1], &finals[2]);
    if !(8.0..=24.0).contains(&ratio) {
        return Err(format!("step-halving error ratio {ratio}"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst_sum = 0.0_f64;
    for run in 0..100 {
        let n = rng.gen_range(2..=5);
        let rows: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect()).collect();
        let game = Game::new(rows).unwrap();
        let mut w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
        let zero = rng.gen_range(0..n);
        if n > 2 {
            w[zero] = 0.0;
        }
        let s: f64 = w.iter().sum();
        let x0 = MixedStrategy::new(w.iter().map(|v| v / s).collect()).unwrap();
        let traj = integrate(
            &GrowthRule::replicator(),
            &game,
            &x0,
            &OpponentModel::SelfPlay,
            IntegratorSettings {
                dt: 1e-2,
                t_max: 20.0,
                sample_every: 10,
            },
        )
        .map_err(|e| e.to_string())?;
        for x in &traj.states {
            worst_sum = worst_sum.max((x.iter().sum::<f64>() - 1.0).abs());
            if n > 2 && x[zero] != 0.0 {
                return Err(format!("run {run}: zero coordinate {zero} revived"));
            }
        }
    }
    if worst_sum > 1e-9 {
        return Err(format!("simplex drift {worst_sum:e}"));
    }

    let mut worst_identity = 0.0_f64;
    for _ in 0..10_000 {
        let rows: Vec<Vec<f64>> = (0..3).map(|_| (0..3).map(|_| rng.gen_range(0.0..10.0)).collect()).collect();
        let game = Game::new(rows).unwrap();
        let draw = |rng: &mut ChaCha8Rng| {
            let w: Vec<f64> = (0..3).map(|_| rng.gen_range(0.01..1.0)).collect();
            let s: f64 = w.iter().sum();
            MixedStrategy::new(w.iter().map(|v| v / s).collect()).unwrap()
        };
        let x = draw(&mut rng);
        let y = draw(&mut rng);
        let c = rng.gen_range(0.5..10.0);
        let next = step(&GrowthRule::replicator(), &game, &x, &y, c).map_err(|e| e.to_string())?;
        let g: Vec<f64> = (0..3).map(|i| (0..3).map(|j| game.entry(i, j) * y.get(j)).sum()).collect();
        let gbar: f64 = (0..3).map(|i| x.get(i) * g[i]).sum();
        for i in 0..3 {
            let euler = x.get(i) * (g[i] - gbar) / (c + gbar);
            worst_identity = worst_identity.max((next.get(i) - x.get(i) - euler).abs());
        }
    }
    if worst_identity > 1e-12 {
        return Err(format!("discrete identity off by {worst_identity:e}"));
    }
    Ok(format!(
        "halving ratio {ratio:.2}, simplex drift {worst_sum:.1e}, identity error {worst_identity:.1e}"
    ))
}

fn criterion_10() -> Outcome {
    let iv = |lo, hi| Interval::new(lo, hi).unwrap();
    let label = |family: LinkFamily, lo, hi| {
        classify_link(&LinkFunction::new(family, iv(lo, hi)).unwrap(), DEFAULT_GRID)
            .unwrap()
            .label
    };
    let cases = [
        (label(LinkFamily::identity(), 0.0, 10.0), DynamicsLabel::AggregateMonotonic),
        (label(LinkFamily::Exponential { rate: 1.0 }, 0.0, 3.0), DynamicsLabel::ConvexMonotonic),
        (label(LinkFamily::Sqrt, 1.0, 9.0), DynamicsLabel::ConcaveMonotonic),
    ];
    for (got, want) in cases {
        if got != want {
            return Err(format!("classified {} where {} was expected", got.as_str(), want.as_str()));
        }
    }
    let lin = LinkFunction::new(LinkFamily::identity(), iv(1.0, 9.0)).unwrap();
    let eff = classify_link(&discrete_effective_link(&lin, 0.0).unwrap(), DEFAULT_GRID).unwrap();
    if eff.label != DynamicsLabel::ConcaveMonotonic {
        return Err(format!("ln(u) on [1, 9] classified {}", eff.label.as_str()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..100 {
        let mut v: Vec<f64> = (0..3).map(|_| rng.gen_range(-10.0..10.0)).collect();
        v.sort_by(f64::total_cmp);
        let (c, a, b) = (v[0], v[1], v[2]);
        let f = LinkFunction::new(LinkFamily::identity(), iv(c, b)).unwrap();
        let rep = rps_direction(None, a, b, c, RpsMode::Replicator).unwrap();
        let fun = rps_direction(Some(&f), a, b, c, RpsMode::ContinuousFunctional).unwrap();
        if rep != fun {
            return Err(format!("replicator and linear link disagree at ({a}, {b}, {c})"));
        }
    }
    Ok("labels match, ln(u) concave-monotonic, 100/100 rps agreements".into())
}

fn main() -> ExitCode {
    let criteria: [(usize, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = 0;
    for (k, run) in criteria {
        match run() {
            Ok(msg) => println!("criterion {k:>2}: PASS  {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {k:>2}: FAIL  {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
