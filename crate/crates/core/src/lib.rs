//! Mutual information of the square-root measurement versus the
//! information-maximizing measurement for symmetric ("pyramid") ensembles of
//! pure states with a common real overlap.
//!
//! The fast path reduces every family member to a three-value channel and
//! costs O(1) per evaluation; dense matrix forms are provided for
//! validation, and a randomized Nelder-Mead search over unconstrained POVMs
//! serves as an independent accessible-information oracle.

pub mod ensemble;
pub mod error;
pub mod exec;
pub mod information;
pub mod measurements;
pub mod optimize;

pub use ensemble::{make_ensemble, PyramidEnsemble, Spectrum};
pub use error::{Error, Result};
pub use exec::Execution;
pub use information::{
    channel, channel_dense, mutual_information, success_probability, DenseChannel,
    MutualInformation, SymmetricChannel,
};
pub use measurements::{
    srm, symmetric_povm, validate_povm, DensePovm, SymmetricPovm, ValidationReport,
};
pub use optimize::{
    accessible_info_oracle, compare_point, max_success_oracle, optimize_ims, sweep, GridSpec,
    ImsResult, OracleResult, SweepOutput, SweepRecord,
};
