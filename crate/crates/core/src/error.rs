use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The expression is undefined at the requested argument.
    #[error("{op}: argument outside domain ({detail})")]
    Domain { op: &'static str, detail: String },
    /// An index or argument outside the supported range.
    #[error("{op}: out of supported range ({detail})")]
    Range { op: &'static str, detail: String },
    #[error("no sign change on [{lo}, {hi}]: f(lo)={f_lo:e}, f(hi)={f_hi:e}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain { op, detail: detail.into() }
}

pub(crate) fn range(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Range { op, detail: detail.into() }
}
