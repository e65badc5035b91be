use serde::Serialize;

use super::optimize_ims_default;
use crate::ensemble::{gamma_lower_bound, make_ensemble};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Distance kept from both ends of the open `gamma` interval in sweeps.
pub const GAMMA_CLAMP_MARGIN: f64 = 1e-6;

/// One `(N, gamma)` comparison between the square-root and the
/// information-maximizing measurement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRecord {
    pub dim: usize,
    pub gamma: f64,
    pub i_srm: f64,
    pub i_ims: f64,
    pub delta_i: f64,
    pub s_opt: f64,
    pub lambda_opt: f64,
    pub p_srm: f64,
    pub p_ims: f64,
}

/// Uniform grid in `gamma`, endpoints included. A single step yields
/// `gamma_min` only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub steps: usize,
}

impl GridSpec {
    pub fn new(gamma_min: f64, gamma_max: f64, steps: usize) -> Result<Self> {
        let g = Self {
            gamma_min,
            gamma_max,
            steps,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::InvalidArgument(
                "gamma_steps must be at least 1".into(),
            ));
        }
        if !self.gamma_min.is_finite() || !self.gamma_max.is_finite() {
            return Err(Error::InvalidArgument("gamma bounds must be finite".into()));
        }
        if self.gamma_min > self.gamma_max {
            return Err(Error::InvalidArgument(format!(
                "gamma_min ({}) exceeds gamma_max ({})",
                self.gamma_min, self.gamma_max
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.gamma_min];
        }
        let last = self.steps - 1;
        let span = self.gamma_max - self.gamma_min;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.gamma_max
                } else {
                    self.gamma_min + span * i as f64 / last as f64
                }
            })
            .collect()
    }
}

/// A requested `gamma` that was moved inside the admissible interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClampNote {
    pub dim: usize,
    pub requested: f64,
    pub used: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepOutput {
    pub records: Vec<SweepRecord>,
    pub clamped: Vec<ClampNote>,
}

pub fn compare_point(dim: usize, gamma: f64) -> Result<SweepRecord> {
    let ens = make_ensemble(dim, gamma)?;
    let ims = optimize_ims_default(&ens);
    let p_srm = (ens.comp_edge() + ens.comp_flat()).powi(2);
    Ok(SweepRecord {
        dim,
        gamma,
        i_srm: ims.i_srm,
        i_ims: ims.i_ims,
        delta_i: ims.delta_i,
        s_opt: ims.s_opt,
        lambda_opt: ims.lambda_opt,
        p_srm,
        p_ims: ims.channel(&ens).success_probability(),
    })
}

fn clamp_gamma(dim: usize, gamma: f64) -> f64 {
    let lo = gamma_lower_bound(dim) + GAMMA_CLAMP_MARGIN;
    let hi = 1.0 - GAMMA_CLAMP_MARGIN;
    gamma.clamp(lo, hi)
}

pub fn sweep(dims: &[usize], grid: &GridSpec) -> Result<SweepOutput> {
    sweep_with(dims, grid, Execution::default())
}

/// Records are ordered by `N` ascending, then `gamma` ascending, whatever
/// the execution mode.
pub fn sweep_with(dims: &[usize], grid: &GridSpec, exec: Execution) -> Result<SweepOutput> {
    grid.validate()?;
    if dims.is_empty() {
        return Err(Error::InvalidArgument("dims must not be empty".into()));
    }
    if let Some(&bad) = dims.iter().find(|&&d| d < 2) {
        return Err(Error::Dimension(bad));
    }
    let mut dims = dims.to_vec();
    dims.sort_unstable();
    dims.dedup();

    let gammas = grid.values();
    let mut points = Vec::with_capacity(dims.len() * gammas.len());
    let mut clamped = Vec::new();
    for &dim in &dims {
        for &requested in &gammas {
            let used = clamp_gamma(dim, requested);
            if used != requested {
                clamped.push(ClampNote {
                    dim,
                    requested,
                    used,
                });
            }
            points.push((dim, used));
        }
    }

    let records = exec
        .map(points.len(), |i| compare_point(points[i].0, points[i].1))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepOutput { records, clamped })
}
