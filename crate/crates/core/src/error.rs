use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ImageError {
    #[error("image dimensions must be non-zero, got {width}x{height}")]
    ZeroDimension { width: usize, height: usize },
    #[error("image of {width}x{height} is too large")]
    TooLarge { width: usize, height: usize },
    #[error("unsupported channel count {0}, expected 1 or 3")]
    UnsupportedChannels(usize),
    #[error("sample buffer has {actual} bytes, expected {expected}")]
    BufferLength { expected: usize, actual: usize },
    #[error("plane is {}x{}, expected {}x{}", actual.0, actual.1, expected.0, expected.1)]
    PlaneMismatch {
        expected: (usize, usize),
        actual: (usize, usize),
    },
    #[error("images differ in shape: {0}")]
    ShapeMismatch(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PnmError {
    #[error("not a binary PGM/PPM file (magic {0:?})")]
    BadMagic(String),
    #[error("malformed header: {0}")]
    Header(String),
    #[error("unsupported maxval {0}, only 255 is accepted")]
    Maxval(u32),
    #[error("truncated pixel data: expected {expected} bytes, found {actual}")]
    Truncated { expected: usize, actual: usize },
    #[error(transparent)]
    Image(#[from] ImageError),
}

/// Parameter validation failures, reported at construction time.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamError {
    #[error("{name} must be finite and > 0, got {value}")]
    NotPositive { name: &'static str, value: f64 },
    #[error("{name} must lie in [0, 255], got {value}")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("radius must be >= 1, got {0}")]
    Radius(usize),
    #[error("output intensities must be pairwise distinct, got v_dr={0}, v_g={1}, v_br={2}")]
    OutputsNotDistinct(u8, u8, u8),
    #[error("alpha must lie in [0, 1], got {0}")]
    Alpha(f64),
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: invalid value for `{key}`: {value:?}")]
    BadValue {
        line: usize,
        key: String,
        value: String,
    },
    #[error(transparent)]
    Param(#[from] ParamError),
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Image(#[from] ImageError),
    #[error("failed to build worker pool: {0}")]
    ThreadPool(String),
}
