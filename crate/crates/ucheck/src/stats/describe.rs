//! Column summaries: standardization and Pearson correlation.

use super::error::StatsError;

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample standard deviation with divisor `n - 1`.
pub fn sample_sd(values: &[f64]) -> f64 {
    let m = mean(values);
    let ss: f64 = values.iter().map(|v| (v - m) * (v - m)).sum();
    (ss / (values.len() as f64 - 1.0)).sqrt()
}

/// Rescales a column to mean 0 and sample standard deviation 1.
pub fn standardize(column: &[f64]) -> Result<Vec<f64>, StatsError> {
    if column.len() < 2 {
        return Err(StatsError::TooFewRows {
            needed: 2,
            got: column.len(),
        });
    }
    let m = mean(column);
    let sd = sample_sd(column);
    if sd <= 0.0 || sd.is_nan() {
        return Err(StatsError::ZeroVariance);
    }
    Ok(column.iter().map(|v| (v - m) / sd).collect())
}

/// Pearson correlation matrix of the given columns.
///
/// Requires at least 3 rows and positive standard deviation in every column.
pub fn pearson_corr_matrix(columns: &[&[f64]]) -> Result<Vec<Vec<f64>>, StatsError> {
    let k = columns.len();
    let n = columns.first().map(|c| c.len()).unwrap_or(0);
    if n < 3 {
        return Err(StatsError::TooFewRows { needed: 3, got: n });
    }
    let means: Vec<f64> = columns.iter().map(|c| mean(c)).collect();
    let sds: Vec<f64> = columns.iter().map(|c| sample_sd(c)).collect();
    if sds.iter().any(|&s| s <= 0.0 || s.is_nan()) {
        return Err(StatsError::ZeroVariance);
    }
    let mut out = vec![vec![0.0; k]; k];
    for i in 0..k {
        out[i][i] = 1.0;
        for j in i + 1..k {
            let cov: f64 = columns[i]
                .iter()
                .zip(columns[j])
                .map(|(a, b)| (a - means[i]) * (b - means[j]))
                .sum::<f64>()
                / (n as f64 - 1.0);
            let r = (cov / (sds[i] * sds[j])).clamp(-1.0, 1.0);
            out[i][j] = r;
            out[j][i] = r;
        }
    }
    Ok(out)
}

/// Largest absolute off-diagonal entry of a correlation matrix.
pub fn max_abs_off_diagonal(matrix: &[Vec<f64>]) -> f64 {
    let mut best = 0.0_f64;
    for (i, row) in matrix.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if i != j {
                best = best.max(v.abs());
            }
        }
    }
    best
}
