use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("grid mismatch: operands live on different grids")]
    GridMismatch,

    #[error("symbol `{name}` is not finite at xi = {xi:?}")]
    SymbolNotFinite { name: String, xi: Vec<f64> },

    #[error("invalid symbol: {0}")]
    Symbol(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A parameter choice violates a hypothesis the construction relies on.
    #[error("{what} ({hypothesis})")]
    Hypothesis { what: String, hypothesis: &'static str },

    #[error("non-finite field value at step {step}")]
    NonFinite { step: usize },

    #[error("Picard iteration did not contract after {iterations} iterations; ratios {ratios:?}")]
    NoContraction { iterations: usize, ratios: Vec<f64> },

    #[error("under-resolved: {0}")]
    Resolution(String),

    #[error("quadrature failed on [{a}, {b}]: estimated error {error:e} after {evaluations} evaluations")]
    Quadrature { a: f64, b: f64, error: f64, evaluations: usize },

    #[error("config line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn hypothesis(what: impl Into<String>, hypothesis: &'static str) -> Self {
        Error::Hypothesis { what: what.into(), hypothesis }
    }
}
