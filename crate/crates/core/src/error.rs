use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A sample or coordinate pair contained NaN or an infinity.
    #[error("invalid sample: {0}")]
    InvalidSample(String),

    /// Timestamps went backwards or repeated.
    #[error("timestamps must strictly increase: {t} does not follow {previous}")]
    Ordering { previous: f64, t: f64 },

    /// Malformed text: bad header, wrong column count, non-numeric field, bad JSON.
    #[error("{0}")]
    Format(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("invalid synth spec: {0}")]
    Spec(String),

    /// Any of the above, located at a 1-based line of the input text.
    #[error("line {line}: {source}")]
    AtLine { line: usize, source: Box<Error> },

    /// Any of the above, located at a 0-based sample index of a trace.
    #[error("sample {index}: {source}")]
    AtSample { index: usize, source: Box<Error> },
}

impl Error {
    pub(crate) fn at_line(self, line: usize) -> Self {
        Error::AtLine {
            line,
            source: Box::new(self),
        }
    }

    pub(crate) fn at_sample(self, index: usize) -> Self {
        Error::AtSample {
            index,
            source: Box::new(self),
        }
    }

    /// The 1-based input line this error was raised at, if any.
    pub fn line(&self) -> Option<usize> {
        match self {
            Error::AtLine { line, .. } => Some(*line),
            Error::AtSample { source, .. } => source.line(),
            _ => None,
        }
    }

    /// The innermost error with location wrappers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtLine { source, .. } | Error::AtSample { source, .. } => source.root(),
            other => other,
        }
    }
}
