//! Active-sensing measurement model and sparse scatterer recovery.
//!
//! A single matched-filtered snapshot is `x = (A ⊙ A) γ + n`, where `A` is the
//! steering matrix of the physical array and `⊙` the column-wise Kronecker product.
//! Rows of `A ⊙ A` depend only on the sum `d_n + d_m`, so recovery runs on one row per
//! sum co-array element with the duplicated rows folded in exactly.

mod experiment;
mod model;
mod omp;

pub use experiment::{
    run_experiment, ArraySource, ArraySpec, ExperimentConfig, ExperimentReport, GridSpec, SceneSpec, Snr, Spectrum,
    SummaryRow, TrialRecord,
};
pub use model::{
    khatri_rao_dictionary, noise_variance, simulate, simulate_with_rng, steering_matrix, uniform_grid, Measurement,
    MeasurementModel, Scene,
};
pub use omp::{fit_support, omp, rmse, Dictionary, OmpResult};
