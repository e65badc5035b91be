//! The symmetric measurement family.
//!
//! Edge outcomes are `phi_k phi_k^T` with `phi_k = e_k + s 1`, plus an axis
//! outcome `lambda 1 1^T / N`. Completeness pins `lambda = 1 - (1 + N s)^2`,
//! which is nonnegative exactly for `s` in `[-2/N, 0]`. At `s = 0` the edges
//! are the basis projectors, which is the square-root measurement of any
//! pyramid ensemble in the canonical embedding.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::ensemble::PyramidEnsemble;
use crate::error::{Error, Result};

/// Tolerance for completeness residual and PSD checks.
pub const POVM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetricPovm {
    dim: usize,
    shape: f64,
    axis_weight: f64,
}

impl SymmetricPovm {
    pub fn new(dim: usize, shape: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Dimension(dim));
        }
        let lower = shape_lower_bound(dim);
        if !(shape >= lower && shape <= 0.0) {
            return Err(Error::Shape { dim, shape, lower });
        }
        Ok(Self {
            dim,
            shape,
            axis_weight: axis_weight(dim, shape),
        })
    }

    pub fn srm(dim: usize) -> Self {
        Self {
            dim,
            shape: 0.0,
            axis_weight: 0.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    pub fn axis_weight(&self) -> f64 {
        self.axis_weight
    }

    /// Cosine of the angle between two (normalized) edge directions.
    pub fn edge_cosine(&self) -> f64 {
        if self.axis_weight == 0.0 {
            return 0.0;
        }
        let off = -self.axis_weight / self.dim as f64;
        off / (1.0 + off)
    }

    /// Explicit `N + 1` elements; the last one is the axis outcome, which is
    /// the zero matrix when `lambda = 0`.
    pub fn to_dense(&self) -> DensePovm {
        let n = self.dim;
        let s = self.shape;
        let mut elements = Vec::with_capacity(n + 1);
        for k in 0..n {
            let mut m = DMatrix::zeros(n, n);
            if s == 0.0 {
                m[(k, k)] = 1.0;
            } else {
                let phi = |i: usize| if i == k { 1.0 + s } else { s };
                for i in 0..n {
                    for j in 0..n {
                        m[(i, j)] = phi(i) * phi(j);
                    }
                }
            }
            elements.push(m);
        }
        elements.push(DMatrix::from_element(n, n, self.axis_weight / n as f64));
        DensePovm { elements }
    }
}

/// `-2/N`, the most negative admissible shape.
pub fn shape_lower_bound(dim: usize) -> f64 {
    -2.0 / dim as f64
}

/// `1 - (1 + N s)^2`, written so that both endpoints are exactly zero.
pub fn axis_weight(dim: usize, shape: f64) -> f64 {
    let ns = dim as f64 * shape;
    (-ns * (2.0 + ns)).max(0.0)
}

pub fn srm(ens: &PyramidEnsemble) -> SymmetricPovm {
    SymmetricPovm::srm(ens.dim())
}

pub fn symmetric_povm(dim: usize, shape: f64) -> Result<SymmetricPovm> {
    SymmetricPovm::new(dim, shape)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensePovm {
    pub elements: Vec<DMatrix<f64>>,
}

impl DensePovm {
    pub fn dim(&self) -> usize {
        self.elements.first().map_or(0, |m| m.nrows())
    }

    pub fn validate(&self) -> ValidationReport {
        validate_povm(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidationReport {
    /// Frobenius norm of `sum(elements) - I`.
    pub completeness_residual: f64,
    /// Smallest eigenvalue over all elements.
    pub min_eigenvalue: f64,
    pub passed: bool,
}

pub fn validate_povm(povm: &DensePovm) -> ValidationReport {
    let n = povm.dim();
    let mut sum = DMatrix::<f64>::zeros(n, n);
    let mut min_eigenvalue = f64::INFINITY;
    for el in &povm.elements {
        sum += el;
        let sym = (el + el.transpose()) * 0.5;
        let lo = SymmetricEigen::new(sym).eigenvalues.min();
        min_eigenvalue = min_eigenvalue.min(lo);
    }
    let completeness_residual = (sum - DMatrix::<f64>::identity(n, n)).norm();
    let passed = completeness_residual <= POVM_TOL && min_eigenvalue >= -POVM_TOL;
    ValidationReport {
        completeness_residual,
        min_eigenvalue,
        passed,
    }
}
