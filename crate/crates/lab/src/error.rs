use std::io;

/// Everything that can stop an experiment. [`LabError::exit_code`] maps each
/// to the process exit status of the `lab` binary.
#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("malformed config: {0}")]
    Config(String),
    #[error("off-curve generator: {0}")]
    OffCurveGenerator(String),
    #[error("correspondence {0} is a subgroup translate")]
    TranslateCorrespondence(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error(transparent)]
    Core(#[from] sumprod::Error),
    #[error("io: {0}")]
    Io(#[from] io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl LabError {
    pub fn exit_code(&self) -> u8 {
        match self {
            LabError::TranslateCorrespondence(_) | LabError::DegenerateInput(_) => 2,
            LabError::Core(sumprod::Error::BudgetExceeded { .. } | sumprod::Error::FactorizationBudgetExceeded(_)) => 3,
            LabError::Config(_) | LabError::OffCurveGenerator(_) => 4,
            _ => 1,
        }
    }

    /// Re-labels a library error raised while interpreting the config.
    pub fn config(e: impl std::fmt::Display) -> Self {
        LabError::Config(e.to_string())
    }
}

pub type LabResult<T> = Result<T, LabError>;
