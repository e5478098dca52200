//! Deterministic numerical kernels: least squares with t tests, Student-t
//! tail probabilities, standardization, correlation, and seeded random
//! streams. Everything here is a pure function of its inputs.

mod dataset;
mod describe;
mod error;
mod ols;
mod rng;
mod student;

pub use dataset::Dataset;
pub use describe::{max_abs_off_diagonal, mean, pearson_corr_matrix, sample_sd, standardize};
pub use error::StatsError;
pub use ols::{fit_ols, OlsFit, INTERCEPT};
pub use rng::{Dist, RngStream};
pub use student::{p_two_sided, t_critical};
