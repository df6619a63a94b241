use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseProbError {
    #[error("empty probability")]
    Empty,
    #[error("malformed number `{0}`")]
    Syntax(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("`{0}` is outside [0, 1]")]
    OutOfRange(String),
}

/// Errors raised while reading or validating channels and cubic graphs.
///
/// `line`/`column` in syntax errors are 1-based file positions; `row`/`column`
/// in value errors are 0-based input/output indices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChannelError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}, column {column}: {source}")]
    Entry {
        line: usize,
        column: usize,
        source: ParseProbError,
    },
    #[error("row {row}, column {column}: probability {value} is outside [0, 1]")]
    EntryOutOfRange { row: usize, column: usize, value: String },
    #[error("row {row} sums to {sum}, expected exactly 1")]
    RowSum { row: usize, sum: String },
    #[error("row {row}: expected {expected} entries, found {found}")]
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("alphabets must be nonempty")]
    EmptyAlphabet,
    #[error("invalid Example 1 parameters: {0}")]
    InvalidExample1(String),
    #[error("invalid cubic graph: {0}")]
    InvalidGraph(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("codebook is empty")]
    EmptyCodebook,
    #[error("codeword {0} appears more than once")]
    DuplicateCodeword(usize),
    #[error("codeword {index} out of range for {num_inputs} inputs")]
    CodewordOutOfRange { index: usize, num_inputs: usize },
    #[error("decoder has {found} entries but the channel has {expected} outputs")]
    DecoderLength { expected: usize, found: usize },
    #[error("decoder maps output {output} to {target}, which is not in the codebook")]
    DecoderOutsideCodebook { output: usize, target: usize },
    #[error("invalid scheme JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("{what} limited to {limit} outputs, channel has {found}")]
    TooManyOutputs {
        what: &'static str,
        limit: usize,
        found: usize,
    },
    #[error("epsilon must be < 1 for the maximum-error graph, got {0}")]
    EpsilonOne(String),
    #[error("exhaustive search limited to {limit} candidate sets, needs {found}")]
    TooManyCandidates { limit: u64, found: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CapacityError {
    #[error("brute force limited to {limit} inputs and outputs, channel is {inputs}x{outputs}")]
    TooLargeForBruteForce {
        limit: usize,
        inputs: usize,
        outputs: usize,
    },
    #[error("{what} limited to {limit}, got {found}")]
    TooLarge {
        what: &'static str,
        limit: usize,
        found: usize,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HardnessError {
    #[error("the reduction requires epsilon < 1/3, got {0}")]
    EpsilonTooLarge(String),
    #[error(transparent)]
    Channel(#[from] ChannelError),
}

/// Umbrella error for callers that mix engines (CLI, bindings).
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Prob(#[from] ParseProbError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
    #[error(transparent)]
    Hardness(#[from] HardnessError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Other(String),
}
