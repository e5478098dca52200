//! Ordinary least squares with per-term t statistics and two-sided p-values.

use serde::{Deserialize, Serialize};

use super::error::StatsError;
use super::student::{p_two_sided, t_critical};

/// Relative pivot tolerance used to declare a design matrix rank deficient.
const PIVOT_TOL: f64 = 1e-10;

/// Name given to the intercept term when one is included.
pub const INTERCEPT: &str = "(intercept)";

/// A fitted least-squares model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OlsFit {
    pub terms: Vec<String>,
    pub coefficients: Vec<f64>,
    pub standard_errors: Vec<f64>,
    pub t_stats: Vec<f64>,
    pub p_values: Vec<f64>,
    pub residual_sd: f64,
    pub n: usize,
    pub df: usize,
    pub r_squared: f64,
}

impl OlsFit {
    pub fn term_index(&self, name: &str) -> Option<usize> {
        self.terms.iter().position(|t| t == name)
    }

    pub fn coefficient(&self, name: &str) -> Option<f64> {
        self.term_index(name).map(|i| self.coefficients[i])
    }

    pub fn p_value(&self, name: &str) -> Option<f64> {
        self.term_index(name).map(|i| self.p_values[i])
    }

    /// Two-sided t confidence interval for a term at the given level.
    pub fn confidence_interval(&self, name: &str, level: f64) -> Option<(f64, f64)> {
        let i = self.term_index(name)?;
        let half = t_critical(self.df, 1.0 - level) * self.standard_errors[i];
        Some((self.coefficients[i] - half, self.coefficients[i] + half))
    }
}

/// Fits `response` on the named design columns by Householder QR with column
/// pivoting. The intercept, when included, is the first term.
///
/// Inputs must be finite; run [`crate::stats::Dataset::complete_cases`] first
/// when missing values may be present.
pub fn fit_ols(
    design: &[(&str, &[f64])],
    response: &[f64],
    include_intercept: bool,
) -> Result<OlsFit, StatsError> {
    let n = response.len();
    for (name, col) in design {
        if col.len() != n {
            return Err(StatsError::RaggedColumn {
                name: (*name).to_string(),
                got: col.len(),
                expected: n,
            });
        }
    }
    let p = design.len() + usize::from(include_intercept);
    if n <= p {
        return Err(StatsError::TooFewRows { needed: p + 1, got: n });
    }

    let mut terms = Vec::with_capacity(p);
    // Column-major design matrix, intercept first.
    let mut a = Vec::with_capacity(n * p);
    if include_intercept {
        terms.push(INTERCEPT.to_string());
        a.extend(std::iter::repeat_n(1.0, n));
    }
    for (name, col) in design {
        terms.push((*name).to_string());
        a.extend_from_slice(col);
    }
    debug_assert!(
        a.iter().chain(response).all(|v| v.is_finite()),
        "fit_ols requires finite inputs"
    );

    let mut qty = response.to_vec();
    let mut perm: Vec<usize> = (0..p).collect();
    let scale = (0..p)
        .map(|j| col_norm_sq(&a, n, j, 0).sqrt())
        .fold(0.0_f64, f64::max)
        .max(1.0);

    // Householder triangularization with column pivoting; transforms are
    // applied eagerly to the trailing columns and to the response.
    for k in 0..p {
        let pivot = (k..p)
            .max_by(|&i, &j| {
                col_norm_sq(&a, n, i, k)
                    .partial_cmp(&col_norm_sq(&a, n, j, k))
                    .unwrap()
            })
            .unwrap();
        if pivot != k {
            for i in 0..n {
                a.swap(pivot * n + i, k * n + i);
            }
            perm.swap(pivot, k);
        }
        let sub_norm = col_norm_sq(&a, n, k, k).sqrt();
        if sub_norm <= PIVOT_TOL * scale {
            return Err(StatsError::RankDeficient { column: perm[k] });
        }
        let alpha = if a[k * n + k] >= 0.0 { -sub_norm } else { sub_norm };
        // v = x - alpha e1, applied as H = I - 2 vv^T / v^T v.
        let mut v = vec![0.0; n - k];
        v[0] = a[k * n + k] - alpha;
        v[1..].copy_from_slice(&a[k * n + k + 1..k * n + n]);
        let vtv: f64 = v.iter().map(|x| x * x).sum();
        a[k * n + k] = alpha;
        for i in k + 1..n {
            a[k * n + i] = 0.0;
        }
        for j in k + 1..p {
            apply_householder(&mut a[j * n + k..j * n + n], &v, vtv);
        }
        apply_householder(&mut qty[k..], &v, vtv);
    }

    // Back substitution: R z = (Q^T y)[..p], then undo the pivot.
    let mut z = vec![0.0; p];
    for k in (0..p).rev() {
        let mut s = qty[k];
        for j in k + 1..p {
            s -= a[j * n + k] * z[j];
        }
        z[k] = s / a[k * n + k];
    }
    let mut coefficients = vec![0.0; p];
    for j in 0..p {
        coefficients[perm[j]] = z[j];
    }

    let sse: f64 = qty[p..].iter().map(|x| x * x).sum();
    let y_norm = response.iter().map(|x| x * x).sum::<f64>().sqrt();
    if sse.sqrt() <= 1e-12 * y_norm.max(1e-300) {
        return Err(StatsError::ZeroResidualVariance);
    }
    let df = n - p;
    let s2 = sse / df as f64;

    // diag[(X^T X)^-1] from the rows of R^-1.
    let rinv = invert_upper(&a, n, p);
    let mut diag = vec![0.0; p];
    for j in 0..p {
        let d: f64 = (j..p).map(|k| rinv[k * p + j] * rinv[k * p + j]).sum();
        diag[perm[j]] = d;
    }

    let mut standard_errors = Vec::with_capacity(p);
    let mut t_stats = Vec::with_capacity(p);
    let mut p_values = Vec::with_capacity(p);
    for j in 0..p {
        let se = (s2 * diag[j]).sqrt();
        let t = coefficients[j] / se;
        standard_errors.push(se);
        t_stats.push(t);
        p_values.push(p_two_sided(t, df));
    }

    let sst = if include_intercept {
        let mean = response.iter().sum::<f64>() / n as f64;
        response.iter().map(|y| (y - mean) * (y - mean)).sum::<f64>()
    } else {
        response.iter().map(|y| y * y).sum::<f64>()
    };
    let r_squared = if sst > 0.0 {
        (1.0 - sse / sst).clamp(0.0, 1.0)
    } else {
        0.0
    };

    Ok(OlsFit {
        terms,
        coefficients,
        standard_errors,
        t_stats,
        p_values,
        residual_sd: s2.sqrt(),
        n,
        df,
        r_squared,
    })
}

fn col_norm_sq(a: &[f64], n: usize, col: usize, from_row: usize) -> f64 {
    a[col * n + from_row..col * n + n]
        .iter()
        .map(|x| x * x)
        .sum()
}

fn apply_householder(col: &mut [f64], v: &[f64], vtv: f64) {
    let dot: f64 = v.iter().zip(col.iter()).map(|(a, b)| a * b).sum();
    let f = 2.0 * dot / vtv;
    for (c, vi) in col.iter_mut().zip(v) {
        *c -= f * vi;
    }
}

/// Inverse of the upper-triangular p×p block of the factored matrix
/// (column-major with leading dimension n). Returned column-major p×p.
fn invert_upper(a: &[f64], n: usize, p: usize) -> Vec<f64> {
    let r = |i: usize, j: usize| a[j * n + i];
    let mut inv = vec![0.0; p * p];
    for j in (0..p).rev() {
        inv[j * p + j] = 1.0 / r(j, j);
        for i in (0..j).rev() {
            let mut s = 0.0;
            for k in i + 1..=j {
                s += r(i, k) * inv[j * p + k];
            }
            inv[j * p + i] = -s / r(i, i);
        }
    }
    inv
}
