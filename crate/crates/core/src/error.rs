use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension {n} exceeds the supported maximum of {max}")]
    DimensionTooLarge { n: usize, max: usize },
    #[error("index set must be nonempty")]
    EmptyIndexSet,
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("rows have inconsistent lengths: expected {expected}, found {found} in row {row}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("entry ({row}, {col}) is {value}, expected 0 or 1")]
    NotABit { row: usize, col: usize, value: u8 },
    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {vertex}: digraphs are simple")]
    Loop { vertex: usize },
    #[error("code {code} is outside the encoding space of digraphs on {n} vertices")]
    CodeOutOfRange { code: u64, n: usize },
    #[error("diagonal entry {index} is zero; the matrix is not the image of a digraph")]
    ZeroDiagonal { index: usize },
    #[error("n = {n} exceeds the enumeration cap of {cap}")]
    EnumerationCap { n: usize, cap: usize },
    #[error("binomial({n}, {k}) is undefined: k exceeds n")]
    InvalidBinomial { n: u64, k: u64 },
    #[error("series must have at least one coefficient")]
    EmptySeries,
    #[error("cannot divide by a series with zero constant term")]
    ZeroConstantTerm,
    #[error("non-finite value encountered: {0}")]
    NonFinite(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error(
        "Newton iteration did not converge within {iterations} iterations (last iterate {last})"
    )]
    NoConvergence { iterations: usize, last: f64 },
    #[error("derivative magnitude {derivative} too small at x = {x}")]
    FlatDerivative { x: f64, derivative: f64 },
    #[error("root {root} left the bracket ({lo}, {hi})")]
    RootOutOfBracket { root: f64, lo: f64, hi: f64 },
}
