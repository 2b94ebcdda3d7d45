use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("{what} is outside its domain at x = {x}")]
    Domain { what: String, x: f64 },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("overflow evaluating at t = {0}")]
    Overflow(f64),
    #[error("tail envelope does not apply at T = {t} for x = {x}")]
    Envelope { t: f64, x: f64 },
    #[error("root bracket [{lo}, {hi}] has no sign change")]
    Bracket { lo: f64, hi: f64 },
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("incompatible targets: {0} vs {1}")]
    Incompatible(String, String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: impl Into<String>, x: f64) -> Error {
    Error::Domain { what: what.into(), x }
}
