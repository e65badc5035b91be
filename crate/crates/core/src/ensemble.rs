//! Pyramid ensembles: `N` unit vectors in `N` real dimensions with a common
//! pairwise overlap `gamma`.
//!
//! The states are embedded as `|psi_j> = G^{1/2} |e_j>` where
//! `G = (1 - gamma) I + gamma J` is the Gram matrix. `G` has eigenvalue
//! `1 - gamma` on the complement of the all-ones vector and `1 + (N-1) gamma`
//! along it, so the principal square root is `c I + d J` with
//! `c = sqrt(1 - gamma)` and `c + N d = sqrt(1 + (N-1) gamma)`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PyramidEnsemble {
    dim: usize,
    gamma: f64,
    comp_edge: f64,
    comp_flat: f64,
}

/// Eigenvalues of the average state `rho = G / N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Spectrum {
    /// Eigenvalue along the symmetry axis, `(1 + (N-1) gamma) / N`.
    pub axis_eigenvalue: f64,
    /// Eigenvalue of multiplicity `N - 1`, `(1 - gamma) / N`.
    pub flat_eigenvalue: f64,
}

/// Smallest admissible overlap for `dim` states (exclusive).
pub fn gamma_lower_bound(dim: usize) -> f64 {
    -1.0 / (dim as f64 - 1.0)
}

impl PyramidEnsemble {
    pub fn new(dim: usize, gamma: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Dimension(dim));
        }
        let lower = gamma_lower_bound(dim);
        if !(gamma > lower && gamma < 1.0) {
            return Err(Error::Gamma { dim, gamma, lower });
        }
        let n = dim as f64;
        let comp_edge = (1.0 - gamma).sqrt();
        let comp_flat = ((1.0 + (n - 1.0) * gamma).sqrt() - comp_edge) / n;
        Ok(Self {
            dim,
            gamma,
            comp_edge,
            comp_flat,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Coefficient `c` of each state on its own basis direction.
    pub fn comp_edge(&self) -> f64 {
        self.comp_edge
    }

    /// Coefficient `d` shared by every basis direction.
    pub fn comp_flat(&self) -> f64 {
        self.comp_flat
    }

    /// `c + N d`, the sum of the components of any state. Computed from the
    /// closed form rather than from `c` and `d` to avoid cancellation.
    pub fn component_sum(&self) -> f64 {
        (1.0 + (self.dim as f64 - 1.0) * self.gamma).sqrt()
    }

    pub fn spectrum(&self) -> Spectrum {
        let n = self.dim as f64;
        Spectrum {
            axis_eigenvalue: (1.0 + (n - 1.0) * self.gamma) / n,
            flat_eigenvalue: (1.0 - self.gamma) / n,
        }
    }

    /// Von Neumann entropy of the average state in base-`N` units. For pure
    /// states this is the Holevo quantity of the ensemble.
    pub fn holevo_chi(&self) -> f64 {
        let Spectrum {
            axis_eigenvalue,
            flat_eigenvalue,
        } = self.spectrum();
        let n = self.dim as f64;
        let h = -(xlnx(axis_eigenvalue) + (n - 1.0) * xlnx(flat_eigenvalue));
        h / n.ln()
    }

    /// Squared overlap of every state with the normalized all-ones vector.
    pub fn axis_overlap(&self) -> f64 {
        self.spectrum().axis_eigenvalue
    }

    /// State `j` as an explicit vector.
    pub fn state(&self, j: usize) -> DVector<f64> {
        assert!(
            j < self.dim,
            "state index {j} out of range for N = {}",
            self.dim
        );
        let mut v = DVector::from_element(self.dim, self.comp_flat);
        v[j] += self.comp_edge;
        v
    }

    /// All states as columns of an `N x N` matrix (this is `G^{1/2}`).
    pub fn states_matrix(&self) -> DMatrix<f64> {
        let mut m = DMatrix::from_element(self.dim, self.dim, self.comp_flat);
        for j in 0..self.dim {
            m[(j, j)] += self.comp_edge;
        }
        m
    }
}

pub fn make_ensemble(dim: usize, gamma: f64) -> Result<PyramidEnsemble> {
    PyramidEnsemble::new(dim, gamma)
}

pub(crate) fn xlnx(p: f64) -> f64 {
    if p > 0.0 {
        p * p.ln()
    } else {
        0.0
    }
}
