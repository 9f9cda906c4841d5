use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or inconsistent input; exit code 2.
    #[error("schema error: {0}")]
    Schema(String),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("no direction data to export")]
    EmptyData,
    #[error("the CSV grid needs at least 2 points, got {0}")]
    Grid(usize),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) | CliError::Read { .. } | CliError::Grid(_) => 2,
            _ => 1,
        }
    }
}
