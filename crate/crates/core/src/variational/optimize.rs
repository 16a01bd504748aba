use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::ansatz::{ansatz_state, AnsatzSpec, Family};
use crate::circuit::GateKind;
use crate::error::{Error, Result};
use crate::pauli::PauliSum;
use crate::simulator::{expected_value, sampled_with_shots};

/// Default total evaluation budget.
pub const DEFAULT_BUDGET: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    /// Total objective evaluations across all restarts.
    pub budget: usize,
    pub restarts: usize,
    /// Evenly spaced probe angles per coordinate before refinement.
    pub grid: usize,
    /// Golden-section steps per coordinate.
    pub refine: usize,
    /// Shots per term; 0 evaluates exactly.
    pub shots: u64,
    /// A restart stops as soon as its value drops below this.
    pub stop_below: Option<f64>,
    /// Starting point of the first restart. Without it, circuit-shaped
    /// ansatze start from the template's own angles and every other
    /// restart starts from a seeded uniform draw.
    pub initial: Option<Vec<f64>>,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            budget: DEFAULT_BUDGET,
            restarts: 2,
            grid: 6,
            refine: 6,
            shots: 0,
            stop_below: None,
            initial: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationRun {
    /// Angles reduced to `[0, 2π)`, or `[0, 4π)` for controlled rotations.
    pub best_params: Vec<f64>,
    /// Exact energy at `best_params`.
    pub best_value: f64,
    pub evaluations: usize,
    pub accepted: bool,
    pub threshold: f64,
    /// Value after each coordinate sweep of the winning restart.
    pub trace: Vec<f64>,
    pub restart: usize,
}

/// [`minimize_with`] under the default configuration and `budget`.
pub fn minimize(
    objective: &PauliSum,
    spec: &AnsatzSpec,
    delta: f64,
    budget: usize,
    seed: u64,
) -> Result<OptimizationRun> {
    let config = OptimizerConfig {
        budget,
        ..OptimizerConfig::default()
    };
    minimize_with(objective, spec, delta, seed, &config)
}

/// Seeded coordinate descent with a coarse grid and golden-section
/// refinement per angle, over independent restarts.
///
/// Restarts run in parallel on disjoint slices of the budget; the winner
/// is the lowest final value, ties going to the lower restart index.
pub fn minimize_with(
    objective: &PauliSum,
    spec: &AnsatzSpec,
    delta: f64,
    seed: u64,
    config: &OptimizerConfig,
) -> Result<OptimizationRun> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "threshold must be positive, got {delta}"
        )));
    }
    if config.budget == 0 || config.restarts == 0 || config.grid < 2 {
        return Err(Error::InvalidArgument(
            "budget and restarts must be positive and grid at least 2".into(),
        ));
    }
    if spec.n != objective.n() {
        return Err(Error::Dimension {
            expected: objective.n(),
            found: spec.n,
        });
    }
    let template = spec.template()?;
    let periods: Vec<f64> = template
        .parameter_slots()
        .iter()
        .map(|&i| period(template.gates()[i].kind()))
        .collect();
    let p = periods.len();
    let start0 = match (&config.initial, &spec.family) {
        (Some(v), _) if v.len() != p => {
            return Err(Error::InvalidArgument(format!(
                "initial point has {} angles, ansatz has {p}",
                v.len()
            )))
        }
        (Some(v), _) => Some(v.clone()),
        (None, Family::CircuitShaped(_)) => Some(
            template
                .parameter_slots()
                .iter()
                .map(|&i| template.gates()[i].angle().unwrap_or(0.0))
                .collect(),
        ),
        (None, _) => None,
    };
    let restarts = config.restarts.min(config.budget);
    let runs: Vec<Restart> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let share = config.budget / restarts + usize::from(r < config.budget % restarts);
            let start = match (&start0, r) {
                (Some(v), 0) => v
                    .iter()
                    .zip(&periods)
                    .map(|(a, t)| a.rem_euclid(*t))
                    .collect(),
                _ => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(r as u64);
                    periods.iter().map(|&t| rng.random_range(0.0..t)).collect()
                }
            };
            descend(objective, spec, &periods, start, share, seed, r, config)
        })
        .collect::<Result<_>>()?;
    let evaluations = runs.iter().map(|r| r.evaluations).sum();
    let (index, best) = runs
        .into_iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| a.value.total_cmp(&b.value).then(ia.cmp(ib)))
        .expect("at least one restart");
    let best_value = expected_value(&ansatz_state(spec, &best.params)?, objective)?;
    Ok(OptimizationRun {
        best_params: best.params,
        best_value,
        evaluations,
        accepted: best_value < delta,
        threshold: delta,
        trace: best.trace,
        restart: index,
    })
}

struct Restart {
    params: Vec<f64>,
    value: f64,
    evaluations: usize,
    trace: Vec<f64>,
}

struct Evaluator<'a> {
    objective: &'a PauliSum,
    spec: &'a AnsatzSpec,
    shots: u64,
    seed: u64,
    restart: usize,
    used: usize,
    budget: usize,
}

impl Evaluator<'_> {
    fn remaining(&self) -> usize {
        self.budget - self.used
    }

    fn eval(&mut self, params: &[f64]) -> Result<f64> {
        let state = ansatz_state(self.spec, params)?;
        self.used += 1;
        if self.shots == 0 {
            expected_value(&state, self.objective)
        } else {
            let stream = ((self.restart as u64) << 40) ^ self.used as u64;
            let s = self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ stream;
            Ok(sampled_with_shots(&state, self.objective, self.shots, s)?.value)
        }
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Angle period of a parameterised gate's action on states. Controlled
/// rotations pick up a relative sign after `2π`, so they need `4π`.
fn period(kind: GateKind) -> f64 {
    if kind == GateKind::CRY {
        2.0 * TAU
    } else {
        TAU
    }
}

#[allow(clippy::too_many_arguments)]
fn descend(
    objective: &PauliSum,
    spec: &AnsatzSpec,
    periods: &[f64],
    start: Vec<f64>,
    budget: usize,
    seed: u64,
    restart: usize,
    config: &OptimizerConfig,
) -> Result<Restart> {
    let mut ev = Evaluator {
        objective,
        spec,
        shots: config.shots,
        seed,
        restart,
        used: 0,
        budget,
    };
    let mut x = start;
    let mut fx = ev.eval(&x)?;
    let mut trace = vec![fx];
    let done = |v: f64| config.stop_below.is_some_and(|s| v < s);
    let coarse: Vec<f64> = periods.iter().map(|t| t / config.grid as f64).collect();
    let mut width = coarse.clone();
    // The coarse grid runs on the first sweep and again after a sweep that
    // stalls; two stalled sweeps in a row end the restart.
    let mut use_grid = true;
    'sweeps: while !x.is_empty() && !done(fx) {
        let before = fx;
        let cost = config.refine + if use_grid { config.grid - 1 } else { 0 };
        for i in 0..x.len() {
            if ev.remaining() < cost {
                break 'sweeps;
            }
            let step = use_grid.then_some(coarse[i]);
            let (theta, value) = line_search(&mut ev, &mut x, i, fx, width[i], step, config)?;
            let moved = (theta - x[i]).abs();
            width[i] = if moved > 0.8 * width[i] {
                (2.0 * width[i]).min(coarse[i])
            } else {
                (3.0 * moved).max(0.1 * width[i]).clamp(1e-9, coarse[i])
            };
            x[i] = theta.rem_euclid(periods[i]);
            fx = value;
            if done(fx) {
                break 'sweeps;
            }
        }
        trace.push(fx);
        if before - fx > 1e-12 {
            use_grid = false;
        } else if use_grid {
            break;
        } else {
            use_grid = true;
            width.clone_from(&coarse);
        }
    }
    Ok(Restart {
        params: x,
        value: fx,
        evaluations: ev.used,
        trace,
    })
}

/// Best angle for coordinate `i` with the others held fixed: optional
/// coarse grid with spacing `grid_step` over one period, then golden-section search in a bracket of
/// half-width `width` around the best point so far.
fn line_search(
    ev: &mut Evaluator<'_>,
    x: &mut [f64],
    i: usize,
    fx: f64,
    width: f64,
    grid_step: Option<f64>,
    config: &OptimizerConfig,
) -> Result<(f64, f64)> {
    let base = x[i];
    let mut best = (base, fx);
    let mut probe = |theta: f64, best: &mut (f64, f64)| -> Result<f64> {
        x[i] = theta;
        let v = ev.eval(x)?;
        if v < best.1 {
            *best = (theta, v);
        }
        Ok(v)
    };
    if let Some(step) = grid_step {
        for g in 1..config.grid {
            probe(base + g as f64 * step, &mut best)?;
        }
    }
    if config.refine >= 2 {
        let (mut a, mut b) = (best.0 - width, best.0 + width);
        let mut c = b - INV_PHI * (b - a);
        let mut d = a + INV_PHI * (b - a);
        let mut fc = probe(c, &mut best)?;
        let mut fd = probe(d, &mut best)?;
        for _ in 2..config.refine {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - INV_PHI * (b - a);
                fc = probe(c, &mut best)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + INV_PHI * (b - a);
                fd = probe(d, &mut best)?;
            }
        }
    }
    x[i] = base;
    Ok(best)
}
