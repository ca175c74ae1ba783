//! Positive solutions of the Einstein equations by multistart damped Newton.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector};
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::einstein::EinsteinSystem;
use crate::poly::CompiledPoly;
use crate::rational::{recognize, Q};

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum SolveError {
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub grid_points_per_axis: usize,
    pub grid_min: f64,
    pub grid_max: f64,
    pub random_restarts: usize,
    /// Random starts are drawn log-uniformly from this range.
    pub random_min: f64,
    pub random_max: f64,
    pub newton_tol: f64,
    pub max_iters: usize,
    pub dedup_tol: f64,
    /// Converged points with a coordinate outside [min_coordinate, 1/min_coordinate]
    /// are boundary artifacts of clearing denominators and are dropped.
    pub min_coordinate: f64,
    /// Relative spread allowed among the Ricci components of an accepted solution.
    pub ricci_tol: f64,
    pub seed: u64,
    /// Largest denominator tried when recognizing rational solutions.
    pub max_denominator: i64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            grid_points_per_axis: 6,
            grid_min: 0.1,
            grid_max: 3.0,
            random_restarts: 2000,
            random_min: 0.05,
            random_max: 5.0,
            newton_tol: 1e-12,
            max_iters: 200,
            dedup_tol: 1e-6,
            min_coordinate: 1e-6,
            ricci_tol: 1e-8,
            seed: 0,
            max_denominator: 100,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolveError> {
        let bad = |m: &str| Err(SolveError::InvalidConfig(m.to_string()));
        if self.grid_points_per_axis < 2 {
            return bad("grid_points_per_axis must be at least 2");
        }
        if !(self.grid_min > 0.0 && self.grid_max > self.grid_min) {
            return bad("grid range must satisfy 0 < grid_min < grid_max");
        }
        if !(self.random_min > 0.0 && self.random_max > self.random_min) {
            return bad("random range must satisfy 0 < random_min < random_max");
        }
        if !(self.min_coordinate > 0.0 && self.min_coordinate < 1.0) {
            return bad("min_coordinate must lie in (0, 1)");
        }
        if !(self.newton_tol > 0.0 && self.dedup_tol > 0.0 && self.ricci_tol > 0.0) {
            return bad("tolerances must be positive");
        }
        if self.max_iters == 0 {
            return bad("max_iters must be positive");
        }
        if self.max_denominator < 1 {
            return bad("max_denominator must be positive");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RawSolution {
    /// Metric with x₁ = 1.
    pub x: Vec<f64>,
    pub residual: f64,
    pub newton_iters: usize,
    /// Exact coordinates when every component was recognized as a small
    /// rational and the equations vanish there exactly.
    pub exact: Option<Vec<Q>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverDiagnostics {
    pub starts: usize,
    pub converged: usize,
    pub singular_jacobian: usize,
    pub stalled: usize,
    pub max_iters_reached: usize,
    /// Converged to a degenerate point near the boundary of the positive orthant.
    pub boundary: usize,
    pub unique: usize,
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub solutions: Vec<RawSolution>,
    pub diagnostics: SolverDiagnostics,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verification {
    pub residual: f64,
    pub einstein_constant: Option<f64>,
}

enum NewtonResult {
    Converged {
        y: Vec<f64>,
        residual: f64,
        iters: usize,
    },
    Singular,
    Stalled,
    MaxIters,
}

struct Compiled {
    equations: Vec<CompiledPoly>,
    /// jacobian[i][j] = ∂F_i/∂x_{j+2}
    jacobian: Vec<Vec<CompiledPoly>>,
}

impl Compiled {
    fn new(system: &EinsteinSystem) -> Self {
        let n = system.s() - 1;
        let eqs = system.equations();
        Self {
            equations: eqs.iter().map(|p| p.compile()).collect(),
            jacobian: eqs
                .iter()
                .map(|p| (0..n).map(|j| p.derivative(j + 1).compile()).collect())
                .collect(),
        }
    }

    fn full(y: &[f64]) -> Vec<f64> {
        let mut x = Vec::with_capacity(y.len() + 1);
        x.push(1.0);
        x.extend_from_slice(y);
        x
    }

    fn residual_vec(&self, x: &[f64]) -> Vec<f64> {
        self.equations.iter().map(|p| p.eval(x)).collect()
    }

    fn newton(&self, start: Vec<f64>, tol: f64, max_iters: usize) -> NewtonResult {
        let n = start.len();
        let mut y = start;
        let mut f = self.residual_vec(&Self::full(&y));
        let mut res = max_abs(&f);
        for iter in 0..max_iters {
            if res <= tol {
                return NewtonResult::Converged {
                    y,
                    residual: res,
                    iters: iter,
                };
            }
            let x = Self::full(&y);
            let jac = DMatrix::from_fn(n, n, |i, j| self.jacobian[i][j].eval(&x));
            let rhs = DVector::from_iterator(n, f.iter().map(|v| -v));
            let Some(step) = jac.lu().solve(&rhs) else {
                return NewtonResult::Singular;
            };
            if step.iter().any(|v| !v.is_finite()) {
                return NewtonResult::Singular;
            }
            let mut t = 1.0;
            let mut accepted = false;
            for _ in 0..60 {
                let trial: Vec<f64> = y.iter().zip(step.iter()).map(|(a, d)| a + t * d).collect();
                if trial.iter().all(|v| *v > 0.0) {
                    let ft = self.residual_vec(&Self::full(&trial));
                    let rt = max_abs(&ft);
                    if rt < res {
                        y = trial;
                        f = ft;
                        res = rt;
                        accepted = true;
                        break;
                    }
                }
                t *= 0.5;
            }
            if !accepted {
                return if res <= tol {
                    NewtonResult::Converged {
                        y,
                        residual: res,
                        iters: iter,
                    }
                } else {
                    NewtonResult::Stalled
                };
            }
        }
        if res <= tol {
            NewtonResult::Converged {
                y,
                residual: res,
                iters: max_iters,
            }
        } else {
            NewtonResult::MaxIters
        }
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, a| m.max(a.abs()))
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Deterministic start points: the log-spaced grid, then seeded random restarts.
pub fn start_points(n: usize, config: &SolverConfig) -> Vec<Vec<f64>> {
    let g = config.grid_points_per_axis;
    let axis: Vec<f64> = (0..g)
        .map(|i| {
            let t = i as f64 / (g - 1) as f64;
            (config.grid_min.ln() * (1.0 - t) + config.grid_max.ln() * t).exp()
        })
        .collect();
    let mut starts = Vec::new();
    let total = g.checked_pow(n as u32).unwrap_or(usize::MAX);
    for mut idx in 0..total {
        let mut p = Vec::with_capacity(n);
        for _ in 0..n {
            p.push(axis[idx % g]);
            idx /= g;
        }
        starts.push(p);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (lo, hi) = (config.random_min.ln(), config.random_max.ln());
    for _ in 0..config.random_restarts {
        starts.push((0..n).map(|_| rng.gen_range(lo..hi).exp()).collect());
    }
    starts
}

pub fn solve_system(
    system: &EinsteinSystem,
    config: &SolverConfig,
) -> Result<SolveOutcome, SolveError> {
    config.validate()?;
    if system.s() == 1 {
        let sol = RawSolution {
            x: vec![1.0],
            residual: 0.0,
            newton_iters: 0,
            exact: Some(vec![Q::from_integer(1.into())]),
        };
        let diagnostics = SolverDiagnostics {
            starts: 1,
            converged: 1,
            unique: 1,
            ..Default::default()
        };
        return Ok(SolveOutcome {
            solutions: vec![sol],
            diagnostics,
        });
    }
    let compiled = Compiled::new(system);
    let starts = start_points(system.s() - 1, config);
    let results: Vec<NewtonResult> = starts
        .into_par_iter()
        .map(|s| compiled.newton(s, config.newton_tol, config.max_iters))
        .collect();

    let mut diagnostics = SolverDiagnostics {
        starts: results.len(),
        ..Default::default()
    };
    let mut found: Vec<(Vec<f64>, f64, usize)> = Vec::new();
    for r in results {
        match r {
            NewtonResult::Converged { y, residual, iters } => {
                diagnostics.converged += 1;
                let x = Compiled::full(&y);
                if is_interior(system, &x, config) {
                    found.push((x, residual, iters));
                } else {
                    diagnostics.boundary += 1;
                }
            }
            NewtonResult::Singular => diagnostics.singular_jacobian += 1,
            NewtonResult::Stalled => diagnostics.stalled += 1,
            NewtonResult::MaxIters => diagnostics.max_iters_reached += 1,
        }
    }
    found.sort_by(|a, b| lex_cmp(&a.0, &b.0));
    let mut unique: Vec<(Vec<f64>, f64, usize)> = Vec::new();
    for cand in found {
        let dup = unique.iter_mut().find(|u| {
            u.0.iter()
                .zip(&cand.0)
                .all(|(a, b)| (a - b).abs() <= config.dedup_tol)
        });
        match dup {
            Some(u) if cand.1 < u.1 => *u = cand,
            Some(_) => {}
            None => unique.push(cand),
        }
    }
    unique.sort_by(|a, b| lex_cmp(&a.0, &b.0));
    diagnostics.unique = unique.len();
    let solutions = unique
        .into_iter()
        .map(|(x, residual, newton_iters)| {
            let exact = recognize_exact(system, &x, config.max_denominator);
            RawSolution {
                x,
                residual,
                newton_iters,
                exact,
            }
        })
        .collect();
    Ok(SolveOutcome {
        solutions,
        diagnostics,
    })
}

fn is_interior(system: &EinsteinSystem, x: &[f64], config: &SolverConfig) -> bool {
    let (lo, hi) = (config.min_coordinate, 1.0 / config.min_coordinate);
    if x.iter().any(|&v| !(lo..=hi).contains(&v)) {
        return false;
    }
    let Ok(r) = system.ricci_components(x) else {
        return false;
    };
    let scale = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let spread = r.iter().fold(0.0f64, |m, v| m.max((v - r[0]).abs()));
    spread <= config.ricci_tol * scale
}

fn recognize_exact(system: &EinsteinSystem, x: &[f64], max_den: i64) -> Option<Vec<Q>> {
    let xq: Vec<Q> = x
        .iter()
        .map(|&v| recognize(v, max_den, 1e-9))
        .collect::<Option<_>>()?;
    system
        .equations()
        .iter()
        .all(|p| p.eval_q(&xq).is_zero())
        .then_some(xq)
}

/// Residual of the cleared equations at `x` rescaled to x₁ = 1, and the
/// Einstein constant r₁(x) when the residual is within `tol`.
pub fn verify_solution(
    system: &EinsteinSystem,
    x: &[f64],
    tol: f64,
) -> Result<Verification, crate::einstein::EinsteinError> {
    let r = system.ricci_components(x)?;
    let xn: Vec<f64> = x.iter().map(|v| v / x[0]).collect();
    let residual = max_abs(
        &system
            .equations()
            .iter()
            .map(|p| p.eval_f64(&xn))
            .collect::<Vec<_>>(),
    );
    let einstein_constant = (residual <= tol).then_some(r[0]);
    Ok(Verification {
        residual,
        einstein_constant,
    })
}
