//! Outcome channels and base-`N` mutual information.
//!
//! Every pyramid ensemble measured by a family member gives a channel with
//! only three distinct conditional probabilities. The Born amplitudes of
//! edge outcome `k` given state `j` are `a = (c + d) + s (c + N d)` when
//! `k = j` and `b = d + s (c + N d)` otherwise. The axis outcome has
//! probability `lambda (c + N d)^2 / N` whatever the state.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::ensemble::{xlnx, PyramidEnsemble};
use crate::error::{Error, Result};
use crate::measurements::{DensePovm, SymmetricPovm};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetricChannel {
    pub dim: usize,
    pub p_hit: f64,
    pub p_miss: f64,
    pub p_axis: f64,
}

/// `probs[(k, j)] = p(outcome k | state j)`, `N + 1` rows by `N` columns.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseChannel {
    pub probs: DMatrix<f64>,
}

/// Shannon mutual information between a uniformly drawn state and the
/// outcome, in base-`N` units where `N` is the number of states.
pub trait MutualInformation {
    fn mutual_information(&self) -> f64;
}

pub fn mutual_information<C: MutualInformation + ?Sized>(ch: &C) -> f64 {
    ch.mutual_information()
}

pub fn channel(ens: &PyramidEnsemble, povm: &SymmetricPovm) -> Result<SymmetricChannel> {
    check_dims(ens.dim(), povm.dim())?;
    Ok(channel_at(ens, povm.shape(), povm.axis_weight()))
}

/// Closed-form channel without the domain check on the shape.
pub(crate) fn channel_at(ens: &PyramidEnsemble, shape: f64, axis_weight: f64) -> SymmetricChannel {
    let dim = ens.dim();
    let u = ens.component_sum();
    let d = ens.comp_flat();
    let a = ens.comp_edge() + d + shape * u;
    let b = d + shape * u;
    SymmetricChannel {
        dim,
        p_hit: a * a,
        p_miss: b * b,
        p_axis: axis_weight * u * u / dim as f64,
    }
}

pub fn channel_dense(ens: &PyramidEnsemble, povm: &DensePovm) -> Result<DenseChannel> {
    check_dims(ens.dim(), povm.dim())?;
    let states = ens.states_matrix();
    let mut probs = DMatrix::zeros(povm.elements.len(), ens.dim());
    for (k, el) in povm.elements.iter().enumerate() {
        let applied = el * &states;
        for j in 0..ens.dim() {
            probs[(k, j)] = states.column(j).dot(&applied.column(j));
        }
    }
    Ok(DenseChannel { probs })
}

fn check_dims(ensemble: usize, measurement: usize) -> Result<()> {
    if ensemble != measurement {
        return Err(Error::DimensionMismatch {
            ensemble,
            measurement,
        });
    }
    Ok(())
}

impl SymmetricChannel {
    /// Probability that the edge outcome names the sent state.
    pub fn success_probability(&self) -> f64 {
        self.p_hit
    }

    /// Success probability when an axis outcome is answered with a fixed guess.
    pub fn success_probability_adjusted(&self) -> f64 {
        self.p_hit + self.p_axis / self.dim as f64
    }

    pub fn to_dense(&self) -> DenseChannel {
        let n = self.dim;
        let probs = DMatrix::from_fn(n + 1, n, |k, j| {
            if k == n {
                self.p_axis
            } else if k == j {
                self.p_hit
            } else {
                self.p_miss
            }
        });
        DenseChannel { probs }
    }
}

pub fn success_probability(ch: &SymmetricChannel) -> f64 {
    ch.success_probability()
}

impl MutualInformation for SymmetricChannel {
    fn mutual_information(&self) -> f64 {
        // The axis outcome is state-independent, so its entropy terms cancel
        // between H(outcome) and H(outcome | state).
        let n = self.dim as f64;
        let edge_marginal = (self.p_hit + (n - 1.0) * self.p_miss) / n;
        let i = xlnx(self.p_hit) + (n - 1.0) * xlnx(self.p_miss) - n * xlnx(edge_marginal);
        (i / n.ln()).max(0.0)
    }
}

impl MutualInformation for DenseChannel {
    fn mutual_information(&self) -> f64 {
        let states = self.probs.ncols();
        let prior = 1.0 / states as f64;
        let mut h_out = 0.0;
        let mut h_cond = 0.0;
        for row in self.probs.row_iter() {
            h_out -= xlnx(row.sum() * prior);
            h_cond -= row.iter().map(|&p| xlnx(p)).sum::<f64>() * prior;
        }
        ((h_out - h_cond) / (states as f64).ln()).max(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::make_ensemble;
    use crate::measurements::{shape_lower_bound, srm, symmetric_povm};
    use approx::assert_abs_diff_eq;

    fn ch(dim: usize, gamma: f64, s: f64) -> SymmetricChannel {
        channel(
            &make_ensemble(dim, gamma).unwrap(),
            &symmetric_povm(dim, s).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn closed_form_channels() {
        let c = ch(3, 0.5, 0.0);
        assert_abs_diff_eq!(c.p_hit, 8.0 / 9.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.p_miss, 1.0 / 18.0, epsilon = 1e-15);
        assert_eq!(c.p_axis, 0.0);

        let c = ch(3, 0.0, 0.0);
        assert_eq!((c.p_hit, c.p_miss, c.p_axis), (1.0, 0.0, 0.0));

        let c = ch(3, 0.5, -1.0 / 3.0);
        assert_abs_diff_eq!(c.p_axis, 2.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn dense_channel_examples() {
        let e = make_ensemble(3, 0.5).unwrap();
        let d = channel_dense(&e, &srm(&e).to_dense()).unwrap();
        for j in 0..3 {
            for k in 0..3 {
                let want = if k == j { 8.0 / 9.0 } else { 1.0 / 18.0 };
                assert_abs_diff_eq!(d.probs[(k, j)], want, epsilon = 1e-14);
            }
            assert_eq!(d.probs[(3, j)], 0.0);
        }

        let e = make_ensemble(3, 0.0).unwrap();
        let d = channel_dense(&e, &symmetric_povm(3, -1.0 / 3.0).unwrap().to_dense()).unwrap();
        for j in 0..3 {
            assert_abs_diff_eq!(d.probs[(3, j)], 1.0 / 3.0, epsilon = 1e-15);
        }

        let e = make_ensemble(7, 0.81).unwrap();
        let d = channel_dense(&e, &symmetric_povm(7, -0.13).unwrap().to_dense()).unwrap();
        for col in d.probs.column_iter() {
            assert_abs_diff_eq!(col.sum(), 1.0, epsilon = 1e-10);
            assert!(col.iter().all(|&p| p >= 0.0));
        }
    }

    #[test]
    fn dimension_mismatch() {
        let e = make_ensemble(3, 0.5).unwrap();
        let p = symmetric_povm(4, 0.0).unwrap();
        assert!(matches!(
            channel(&e, &p),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            channel_dense(&e, &p.to_dense()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn information_examples() {
        let perfect = SymmetricChannel {
            dim: 3,
            p_hit: 1.0,
            p_miss: 0.0,
            p_axis: 0.0,
        };
        assert_abs_diff_eq!(perfect.mutual_information(), 1.0, epsilon = 1e-15);

        let uniform = DenseChannel {
            probs: DMatrix::from_element(4, 4, 0.25),
        };
        assert_abs_diff_eq!(uniform.mutual_information(), 0.0, epsilon = 1e-15);

        let want =
            1.0 + (8.0 / 9.0) * (8.0f64 / 9.0).log(3.0) + (1.0 / 9.0) * (1.0f64 / 18.0).log(3.0);
        let c = ch(3, 0.5, 0.0);
        assert_abs_diff_eq!(c.mutual_information(), want, epsilon = 1e-14);
        assert_abs_diff_eq!(c.to_dense().mutual_information(), want, epsilon = 1e-14);
        assert_abs_diff_eq!(want, 0.6123760369, epsilon = 1e-10);
    }

    #[test]
    fn success_probabilities() {
        assert_eq!(success_probability(&ch(3, 0.0, 0.0)), 1.0);
        assert_abs_diff_eq!(
            success_probability(&ch(3, 0.5, 0.0)),
            8.0 / 9.0,
            epsilon = 1e-15
        );
        let c = ch(3, 0.5, -1.0 / 3.0);
        assert_abs_diff_eq!(success_probability(&c), 2.0 / 9.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            c.success_probability_adjusted(),
            2.0 / 9.0 + 2.0 / 9.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn axis_outcome_scales_information() {
        // Dropping the state-independent axis row and renormalizing each
        // column divides the information by 1 - p_axis.
        let c = ch(3, 0.5, -0.2);
        assert!(c.p_axis > 0.0);
        let full = c.to_dense();
        let n = 3;
        let edge = DenseChannel {
            probs: DMatrix::from_fn(n, n, |k, j| full.probs[(k, j)] / (1.0 - c.p_axis)),
        };
        assert_abs_diff_eq!(
            c.mutual_information(),
            (1.0 - c.p_axis) * edge.mutual_information(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn relabeling_invariance() {
        let e = make_ensemble(5, 0.7).unwrap();
        let d = channel_dense(&e, &symmetric_povm(5, -0.15).unwrap().to_dense()).unwrap();
        let perm = [3usize, 0, 4, 1, 2];
        let shuffled = DenseChannel {
            probs: DMatrix::from_fn(6, 5, |k, j| {
                let kk = if k == 5 { 5 } else { perm[k] };
                d.probs[(kk, perm[j])]
            }),
        };
        assert_abs_diff_eq!(
            d.mutual_information(),
            shuffled.mutual_information(),
            epsilon = 1e-14
        );
    }

    proptest::proptest! {
        #[test]
        fn fast_and_dense_paths_agree(dim in 2usize..=20, t in 0.001f64..0.999, u in 0.0f64..=1.0) {
            let lower = crate::ensemble::gamma_lower_bound(dim);
            let gamma = lower + t * (1.0 - lower);
            let e = make_ensemble(dim, gamma).unwrap();
            let p = symmetric_povm(dim, shape_lower_bound(dim) * u).unwrap();
            let fast = channel(&e, &p).unwrap();
            proptest::prop_assert!((fast.p_hit + (dim as f64 - 1.0) * fast.p_miss + fast.p_axis - 1.0).abs() < 1e-12);
            let dense = channel_dense(&e, &p.to_dense()).unwrap();
            let i_fast = fast.mutual_information();
            proptest::prop_assert!((i_fast - dense.mutual_information()).abs() < 1e-12);
            proptest::prop_assert!(i_fast >= 0.0 && i_fast <= e.holevo_chi() + 1e-9);
        }
    }
}
