use serde::Serialize;
use thiserror::Error;

/// Every failure the library can report. Variants carry the witness that
/// triggered them so callers (and the CLI) can print something actionable.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {p}^{r} exceeds the 2^20 element limit")]
    FieldTooLarge { p: u64, r: u32 },
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("value {0} is not an element of the field")]
    InvalidElement(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("subspaces live in different ambient spaces ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("subspace is not LCD: it meets its dual in dimension {0}")]
    NotLcd(usize),
    #[error("a subspace code needs at least one codeword")]
    EmptyCode,
    #[error("minimum distance is undefined for a code with a single codeword")]
    DegenerateCode,
    #[error("{pairs} codeword pairs exceed the budget of {budget}")]
    PairBudgetExceeded { pairs: u128, budget: u128 },
    #[error("not an LCD subspace code: C_{i} meets the dual of C_{j}")]
    NotLcdCode { i: usize, j: usize },
    #[error("generator matrix has rank {rank} < {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("relations do not partition X x X: {0}")]
    NotAPartition(String),
    #[error("relation {0} is not symmetric")]
    NotSymmetric(usize),
    #[error("the first relation is not the identity")]
    MissingIdentity,
    #[error("A_{i} A_{j} leaves the span of the relations (disagreement on class {k})")]
    NotClosed { i: usize, j: usize, k: usize },
    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("partition is not equitable: matrix {matrix}, block ({cell_a},{cell_b}) has non-constant {axis} sums")]
    NotEquitable { matrix: usize, cell_a: usize, cell_b: usize, axis: &'static str },
    #[error("quotient entry ({row},{col}) of matrix {matrix} is not integral")]
    NonIntegralQuotient { matrix: usize, row: usize, col: usize },
    #[error("{0} classes exceed the clique-search limit of 20")]
    TooManyClasses(usize),
    #[error("graph is disconnected (vertex {0} unreachable from 0)")]
    Disconnected(usize),
    #[error("graph is not distance-regular: {0}")]
    NotDrg(String),
    #[error("permutation {0} is not a bijection on the points")]
    InvalidPermutation(usize),
    #[error("generator {generator} is not an automorphism: edge ({u},{v}) is not preserved")]
    NotAnAutomorphism { generator: usize, u: usize, v: usize },
    #[error("Gram condition fails at ({row},{col}): expected {expected}, found {found}")]
    GramFailure { row: usize, col: usize, expected: i64, found: i64 },
    #[error("entry {value} at ({row},{col}) is outside the allowed alphabet")]
    BadAlphabet { row: usize, col: usize, value: i64 },
    #[error("{0} is not a perfect square")]
    NotSquareOrder(usize),
    #[error("order {0} exceeds the supported maximum")]
    OrderTooLarge(usize),
    #[error("{0} is not a perfect square")]
    NotPerfectSquare(usize),
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error("matrix {0} is not a regular Hadamard matrix")]
    NotRegular(usize),
    #[error("order 4n^2 requires n even, found n = {0}")]
    OddN(usize),
    #[error("matrix {0} is not of Bush type")]
    NotBushType(usize),
    #[error("product identity fails: {0}")]
    IdentityFails(String),
    #[error("alpha must be nonzero")]
    ZeroAlpha,
    #[error("partition cells have unequal sizes")]
    UnequalCells,
    #[error("p = {p} does not divide p^{k}_({i},{j}) = {value}")]
    DivisibilityFails { p: u64, i: usize, j: usize, k: usize, value: i64 },
    #[error("algebra dimension exceeds {0}")]
    DimensionBlowup(usize),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("invalid channel specification: {0}")]
    InvalidSpec(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        use Error::*;
        match self {
            NotPrime(_) => "NotPrime",
            FieldTooLarge { .. } => "FieldTooLarge",
            InvalidDegree => "InvalidDegree",
            DivisionByZero => "DivisionByZero",
            FieldMismatch => "FieldMismatch",
            InvalidElement(_) => "InvalidElement",
            DimensionMismatch(_) => "DimensionMismatch",
            Overflow(_) => "Overflow",
            AmbientMismatch(..) => "AmbientMismatch",
            InternalInconsistency(_) => "InternalInconsistency",
            NotLcd(_) => "NotLCD",
            EmptyCode => "EmptyCode",
            DegenerateCode => "DegenerateCode",
            PairBudgetExceeded { .. } => "PairBudgetExceeded",
            NotLcdCode { .. } => "NotLCDCode",
            RankDeficient { .. } => "RankDeficient",
            NotAPartition(_) => "NotAPartition",
            NotSymmetric(_) => "NotSymmetric",
            MissingIdentity => "MissingIdentity",
            NotClosed { .. } => "NotClosed",
            IndexOutOfRange { .. } => "IndexOutOfRange",
            NotEquitable { .. } => "NotEquitable",
            NonIntegralQuotient { .. } => "NonIntegralQuotient",
            TooManyClasses(_) => "TooManyClasses",
            Disconnected(_) => "Disconnected",
            NotDrg(_) => "NotDRG",
            InvalidPermutation(_) => "InvalidPermutation",
            NotAnAutomorphism { .. } => "NotAnAutomorphism",
            GramFailure { .. } => "GramFailure",
            BadAlphabet { .. } => "BadAlphabet",
            NotSquareOrder(_) => "NotSquareOrder",
            OrderTooLarge(_) => "OrderTooLarge",
            NotPerfectSquare(_) => "NotPerfectSquare",
            BudgetExhausted { .. } => "BudgetExhausted",
            NotRegular(_) => "NotRegular",
            OddN(_) => "OddN",
            NotBushType(_) => "NotBushType",
            IdentityFails(_) => "IdentityFails",
            ZeroAlpha => "ZeroAlpha",
            UnequalCells => "UnequalCells",
            DivisibilityFails { .. } => "DivisibilityFails",
            DimensionBlowup(_) => "DimensionBlowup",
            HypothesisFailed(_) => "HypothesisFailed",
            InvalidSpec(_) => "InvalidSpec",
            Parse { .. } => "Parse",
            Io(_) => "Io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
