//! Information maximization over the symmetric family, brute-force oracles
//! over unconstrained POVMs, and grid sweeps.

mod golden;
mod oracle;
mod simplex;
mod sweep;

pub use golden::golden_section_max;
pub use oracle::run_oracle;
pub use oracle::{
    accessible_info_oracle, max_success_oracle, OracleConfig, OracleObjective, OracleResult,
    ORACLE_MAX_DIM,
};
pub use simplex::{nelder_mead, SimplexOptions, SimplexResult};
pub use sweep::{
    compare_point, sweep, sweep_with, ClampNote, GridSpec, SweepOutput, SweepRecord,
    GAMMA_CLAMP_MARGIN,
};

use serde::Serialize;

use crate::ensemble::PyramidEnsemble;
use crate::information::{channel_at, MutualInformation, SymmetricChannel};
use crate::measurements::{axis_weight, shape_lower_bound};

pub const DEFAULT_GRID_POINTS: usize = 2001;
pub const DEFAULT_SHAPE_TOL: f64 = 1e-10;
/// Grid values closer than this are treated as tied.
const TIE_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImsResult {
    pub s_opt: f64,
    pub lambda_opt: f64,
    pub i_ims: f64,
    pub i_srm: f64,
    pub delta_i: f64,
}

impl ImsResult {
    pub fn channel(&self, ens: &PyramidEnsemble) -> SymmetricChannel {
        channel_at(ens, self.s_opt, self.lambda_opt)
    }
}

fn family_information(ens: &PyramidEnsemble, s: f64) -> f64 {
    channel_at(ens, s, axis_weight(ens.dim(), s)).mutual_information()
}

/// Maximizes the mutual information over the family `s in [-2/N, 0]`: a
/// uniform grid scan locates the best bracket, then golden-section search
/// refines it to width `tol`. Ties on the grid go to the largest `s`.
///
/// Panics if `grid_points < 3` or `tol` is not positive.
pub fn optimize_ims(ens: &PyramidEnsemble, grid_points: usize, tol: f64) -> ImsResult {
    assert!(grid_points >= 3, "grid_points must be at least 3");
    assert!(tol > 0.0, "tol must be positive");
    let dim = ens.dim();
    let lo = shape_lower_bound(dim);
    let last = grid_points - 1;
    let grid = |i: usize| {
        if i == last {
            0.0
        } else {
            lo + (-lo) * i as f64 / last as f64
        }
    };
    let values: Vec<f64> = (0..grid_points)
        .map(|i| family_information(ens, grid(i)))
        .collect();
    let i_srm = values[last];

    let top = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let best = values
        .iter()
        .rposition(|&v| v >= top - TIE_TOL)
        .expect("grid is nonempty");

    let left = grid(best.saturating_sub(1));
    let right = grid((best + 1).min(last));
    let (s_ref, i_ref) = golden_section_max(|s| family_information(ens, s), left, right, tol);

    let (s_opt, i_ims) = if i_ref > values[best] {
        (s_ref, i_ref)
    } else {
        (grid(best), values[best])
    };
    ImsResult {
        s_opt,
        lambda_opt: axis_weight(dim, s_opt),
        i_ims,
        i_srm,
        delta_i: i_ims - i_srm,
    }
}

/// [`optimize_ims`] with the default grid and tolerance.
pub fn optimize_ims_default(ens: &PyramidEnsemble) -> ImsResult {
    optimize_ims(ens, DEFAULT_GRID_POINTS, DEFAULT_SHAPE_TOL)
}
