use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid layout: {0}")]
    Layout(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("malformed tensor network: {0}")]
    Network(String),

    #[error("infeasible dense evaluation: {0}")]
    Feasibility(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("matrix is not unitary (max-norm defect {defect:.3e})")]
    NotUnitary { defect: f64 },

    #[error("no closed form for gate family `{0}`")]
    UnsupportedFamily(String),

    #[error("EPD/EP ratio undefined: EP is zero")]
    UndefinedRatio,

    #[error("invalid permutation: {0}")]
    Permutation(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
