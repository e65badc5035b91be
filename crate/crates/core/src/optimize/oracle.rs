//! Brute-force search over unconstrained rank-one POVMs.
//!
//! `M` raw vectors `v_k` are whitened by the frame operator
//! `S = sum_k v_k v_k^dagger`: `e_k = S^{-1/2} v_k` always forms a complete
//! POVM `{e_k e_k^dagger}`. The raw entries are searched with Nelder-Mead from
//! seeded random starts.

use nalgebra::{ComplexField, DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::simplex::{nelder_mead, SimplexOptions};
use crate::ensemble::{xlnx, PyramidEnsemble};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Largest dimension the CLI runs the oracle for without an override.
pub const ORACLE_MAX_DIM: usize = 6;
const SINGULAR_RATIO: f64 = 1e-12;
const MAX_DRAWS_PER_RESTART: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OracleObjective {
    /// Base-`N` mutual information.
    Information,
    /// Average probability that outcome `k` names state `k`.
    Success,
}

#[derive(Debug, Clone)]
pub struct OracleConfig {
    pub n_outcomes: usize,
    pub restarts: usize,
    pub seed: u64,
    pub complex_mode: bool,
    pub objective: OracleObjective,
    pub simplex: SimplexOptions,
    pub execution: Execution,
}

impl OracleConfig {
    /// Information oracle with `N (N + 1) / 2` outcomes.
    pub fn information(dim: usize, restarts: usize, seed: u64) -> Self {
        Self {
            n_outcomes: dim * (dim + 1) / 2,
            restarts,
            seed,
            complex_mode: false,
            objective: OracleObjective::Information,
            simplex: SimplexOptions::default(),
            execution: Execution::default(),
        }
    }

    pub fn success(dim: usize, restarts: usize, seed: u64) -> Self {
        Self {
            n_outcomes: dim,
            objective: OracleObjective::Success,
            ..Self::information(dim, restarts, seed)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub i_best: f64,
    pub n_outcomes: usize,
    pub restarts: usize,
    pub seed: u64,
    pub converged_runs: usize,
    /// Redraws caused by a singular frame operator at a start point.
    pub singular_draws: usize,
}

pub fn accessible_info_oracle(
    ens: &PyramidEnsemble,
    n_outcomes: usize,
    restarts: usize,
    seed: u64,
    complex_mode: bool,
) -> Result<OracleResult> {
    let cfg = OracleConfig {
        n_outcomes,
        complex_mode,
        ..OracleConfig::information(ens.dim(), restarts, seed)
    };
    run_oracle(ens, &cfg)
}

/// Best average success probability found with `N` outcomes.
pub fn max_success_oracle(ens: &PyramidEnsemble, restarts: usize, seed: u64) -> Result<f64> {
    run_oracle(ens, &OracleConfig::success(ens.dim(), restarts, seed)).map(|r| r.i_best)
}

struct Restart {
    value: f64,
    converged: bool,
    singular_draws: usize,
}

pub fn run_oracle(ens: &PyramidEnsemble, cfg: &OracleConfig) -> Result<OracleResult> {
    let dim = ens.dim();
    if cfg.n_outcomes < dim {
        return Err(Error::InvalidArgument(format!(
            "n_outcomes = {} is smaller than the dimension {dim}",
            cfg.n_outcomes
        )));
    }
    if cfg.restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be at least 1".into()));
    }
    let states = ens.states_matrix();
    let runs = cfg.execution.map(cfg.restarts, |r| {
        if cfg.complex_mode {
            search::<Complex64>(&states, cfg, r)
        } else {
            search::<f64>(&states, cfg, r)
        }
    });

    let singular_draws = runs.iter().map(|r| r.singular_draws).sum();
    let ok: Vec<&Restart> = runs.iter().filter(|r| r.value.is_finite()).collect();
    if ok.is_empty() {
        return Err(Error::SingularStart {
            attempts: singular_draws,
        });
    }
    let i_best = ok.iter().map(|r| r.value).fold(f64::NEG_INFINITY, f64::max);
    Ok(OracleResult {
        i_best,
        n_outcomes: cfg.n_outcomes,
        restarts: cfg.restarts,
        seed: cfg.seed,
        converged_runs: ok.iter().filter(|r| r.converged).count(),
        singular_draws,
    })
}

/// Scalar field of the raw frame vectors.
trait FrameScalar: ComplexField<RealField = f64> + Copy {
    const PARAMS: usize;
    fn from_params(p: &[f64]) -> Self;
}

impl FrameScalar for f64 {
    const PARAMS: usize = 1;
    fn from_params(p: &[f64]) -> Self {
        p[0]
    }
}

impl FrameScalar for Complex64 {
    const PARAMS: usize = 2;
    fn from_params(p: &[f64]) -> Self {
        Complex64::new(p[0], p[1])
    }
}

fn search<T: FrameScalar>(states: &DMatrix<f64>, cfg: &OracleConfig, restart: usize) -> Restart {
    let dim = states.nrows();
    let n_params = dim * cfg.n_outcomes * T::PARAMS;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(restart as u64);

    let mut singular_draws = 0;
    let start = loop {
        if singular_draws == MAX_DRAWS_PER_RESTART {
            return Restart {
                value: f64::NAN,
                converged: false,
                singular_draws,
            };
        }
        let x: Vec<f64> = (0..n_params).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if outcome_probs::<T>(&x, dim, cfg.n_outcomes, states).is_some() {
            break x;
        }
        singular_draws += 1;
    };

    let objective = |x: &[f64]| match outcome_probs::<T>(x, dim, cfg.n_outcomes, states) {
        Some(p) => -score(&p, cfg.objective),
        None => f64::INFINITY,
    };
    let r = nelder_mead(objective, &start, &cfg.simplex);
    Restart {
        value: -r.value,
        converged: r.converged,
        singular_draws,
    }
}

/// `p[(k, j)] = |<e_k|psi_j>|^2` for the whitened frame, or `None` when the
/// frame operator is numerically singular.
fn outcome_probs<T: FrameScalar>(
    params: &[f64],
    dim: usize,
    outcomes: usize,
    states: &DMatrix<f64>,
) -> Option<DMatrix<f64>> {
    let raw = DMatrix::<T>::from_fn(dim, outcomes, |i, k| {
        let at = (k * dim + i) * T::PARAMS;
        T::from_params(&params[at..at + T::PARAMS])
    });
    let frame = &raw * raw.adjoint();
    let eig = SymmetricEigen::new(frame);
    let top = eig.eigenvalues.max();
    if top.is_nan() || top <= 0.0 || eig.eigenvalues.min() <= SINGULAR_RATIO * top {
        return None;
    }
    let inv_sqrt = eig.eigenvalues.map(|v| T::from_real(1.0 / v.sqrt()));
    let u = &eig.eigenvectors;
    let whitened = u * DMatrix::from_diagonal(&inv_sqrt) * u.adjoint() * raw;
    let states = states.map(T::from_real);
    let amps = whitened.adjoint() * states;
    Some(amps.map(|a| a.modulus_squared()))
}

fn score(p: &DMatrix<f64>, objective: OracleObjective) -> f64 {
    let states = p.ncols();
    let prior = 1.0 / states as f64;
    match objective {
        OracleObjective::Information => {
            let mut info = 0.0;
            for row in p.row_iter() {
                info -= xlnx(row.sum() * prior);
                info += row.iter().map(|&v| xlnx(v)).sum::<f64>() * prior;
            }
            info / (states as f64).ln()
        }
        OracleObjective::Success => (0..states).map(|k| p[(k, k)]).sum::<f64>() * prior,
    }
}
