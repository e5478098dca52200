//! Named numeric columns with missing-value markers.

use std::collections::HashMap;
use std::path::Path;

use super::error::StatsError;

/// Token (besides the empty string) that marks a missing cell in CSV input.
const MISSING_TOKEN: &str = "NA";

/// A rectangular table of named numeric columns.
///
/// Missing values are stored as `f64::NAN`; [`Dataset::complete_cases`]
/// filters them out ahead of any fitting.
#[derive(Debug, Clone)]
pub struct Dataset {
    names: Vec<String>,
    cols: Vec<Vec<f64>>,
    index: HashMap<String, usize>,
    n_rows: usize,
}

impl Dataset {
    /// Builds a dataset from `(name, values)` pairs, validating that names are
    /// unique and non-empty and that all columns have equal length.
    pub fn new(columns: Vec<(String, Vec<f64>)>) -> Result<Self, StatsError> {
        let n_rows = columns.first().map(|(_, v)| v.len()).unwrap_or(0);
        let mut names = Vec::with_capacity(columns.len());
        let mut cols = Vec::with_capacity(columns.len());
        let mut index = HashMap::with_capacity(columns.len());
        for (name, values) in columns {
            if name.is_empty() {
                return Err(StatsError::EmptyColumnName);
            }
            if values.len() != n_rows {
                return Err(StatsError::RaggedColumn {
                    name,
                    got: values.len(),
                    expected: n_rows,
                });
            }
            if index.insert(name.clone(), cols.len()).is_some() {
                return Err(StatsError::DuplicateColumn(name));
            }
            names.push(name);
            cols.push(values);
        }
        Ok(Self {
            names,
            cols,
            index,
            n_rows,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    /// Column names in insertion order.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(|s| s.as_str())
    }

    pub fn has_column(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn column(&self, name: &str) -> Result<&[f64], StatsError> {
        self.index
            .get(name)
            .map(|&i| self.cols[i].as_slice())
            .ok_or_else(|| StatsError::UnknownVariable(name.to_string()))
    }

    /// Keeps the rows that have no missing value in any of `vars`; row order
    /// is preserved and all columns are retained.
    pub fn complete_cases(&self, vars: &[&str]) -> Result<Dataset, StatsError> {
        let mut checked = Vec::with_capacity(vars.len());
        for v in vars {
            checked.push(self.column(v)?);
        }
        let keep: Vec<usize> = (0..self.n_rows)
            .filter(|&r| checked.iter().all(|c| !c[r].is_nan()))
            .collect();
        let columns = self
            .names
            .iter()
            .zip(&self.cols)
            .map(|(name, col)| (name.clone(), keep.iter().map(|&r| col[r]).collect()))
            .collect();
        Dataset::new(columns)
    }

    /// Parses the CSV wire format: a header row of unique names, numeric
    /// cells with a decimal point, and the empty string or `NA` for missing.
    pub fn from_csv_str(text: &str) -> Result<Self, StatsError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(StatsError::Csv {
            line: 1,
            msg: "empty input; expected a header row".into(),
        })?;
        let names: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
        let mut cols: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
        for (idx, line) in lines {
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != names.len() {
                return Err(StatsError::Csv {
                    line: lineno,
                    msg: format!("expected {} cells, found {}", names.len(), cells.len()),
                });
            }
            for (c, cell) in cells.iter().enumerate() {
                let cell = cell.trim();
                let value = if cell.is_empty() || cell == MISSING_TOKEN {
                    f64::NAN
                } else {
                    cell.parse::<f64>().map_err(|_| StatsError::Csv {
                        line: lineno,
                        msg: format!("cell `{cell}` is not numeric"),
                    })?
                };
                if value.is_infinite() {
                    return Err(StatsError::Csv {
                        line: lineno,
                        msg: format!("cell `{cell}` is not finite"),
                    });
                }
                cols[c].push(value);
            }
        }
        Dataset::new(names.into_iter().zip(cols).collect())
    }

    pub fn from_csv_path(path: &Path) -> Result<Self, StatsError> {
        let text = std::fs::read_to_string(path).map_err(|e| StatsError::Csv {
            line: 0,
            msg: format!("{}: {e}", path.display()),
        })?;
        Self::from_csv_str(&text)
    }
}
