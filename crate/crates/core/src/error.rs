use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("radicands differ: sqrt({0}) vs sqrt({1})")]
    MixedRadicand(u64, u64),

    #[error("invalid radicand {0}: must be a square-free integer >= 2")]
    InvalidRadicand(u64),

    #[error("group elements use different representations")]
    MixedRepresentation,

    #[error("group elements belong to different groups")]
    GroupMismatch,

    #[error("a group needs at least one nonzero generator")]
    TrivialGroup,

    #[error("archimedean groups are limited to rank 2 over {{1, sqrt(d)}}")]
    ArchRankTooLarge,

    #[error("parse error at {pos}: expected {expected}, found {found}")]
    Parse {
        pos: usize,
        expected: String,
        found: String,
    },

    #[error("unknown variable `{name}` at {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("operands live over different fields")]
    SpecMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("series valuations require no ground variables")]
    GroundVarInSeriesContext,

    #[error("variable `{0}` has no series assignment")]
    MissingAssignment(String),

    #[error("argument must be nonzero")]
    ZeroArgument,

    #[error("order undetermined: first {cap} coefficients vanish (possible algebraic relation)")]
    OrdUndetermined { cap: usize },

    #[error("no assigned series has order exactly 1")]
    NoOrd1Witness,

    #[error("operation not supported for {0} valuations")]
    UnsupportedKind(&'static str),

    #[error("rank {0} exceeds the enumeration limit")]
    RankTooLarge(usize),

    #[error("invalid valuation: {0}")]
    InvalidValuation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable error code, used in JSON reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MixedRadicand(..) => "MIXED_RADICAND",
            Error::InvalidRadicand(_) => "INVALID_RADICAND",
            Error::MixedRepresentation => "MIXED_REPRESENTATION",
            Error::GroupMismatch => "GROUP_MISMATCH",
            Error::TrivialGroup => "TRIVIAL_GROUP",
            Error::ArchRankTooLarge => "ARCH_RANK_TOO_LARGE",
            Error::Parse { .. } => "PARSE_ERROR",
            Error::UnknownVariable { .. } => "UNKNOWN_VARIABLE",
            Error::ZeroDenominator => "ZERO_DENOMINATOR",
            Error::SpecMismatch => "SPEC_MISMATCH",
            Error::DivisionByZero => "DIVISION_BY_ZERO",
            Error::InvalidField(_) => "INVALID_FIELD",
            Error::GroundVarInSeriesContext => "GROUND_VAR_IN_SERIES_CONTEXT",
            Error::MissingAssignment(_) => "MISSING_ASSIGNMENT",
            Error::ZeroArgument => "ZERO_ARGUMENT",
            Error::OrdUndetermined { .. } => "ORD_UNDETERMINED",
            Error::NoOrd1Witness => "NO_ORD1_WITNESS",
            Error::UnsupportedKind(_) => "UNSUPPORTED_KIND",
            Error::RankTooLarge(_) => "RANK_TOO_LARGE",
            Error::InvalidValuation(_) => "INVALID_VALUATION",
            Error::InvalidArgument(_) => "INVALID_ARGUMENT",
        }
    }

    /// Byte offset into the parsed text, for errors that have one.
    pub fn position(&self) -> Option<usize> {
        match self {
            Error::Parse { pos, .. } | Error::UnknownVariable { pos, .. } => Some(*pos),
            _ => None,
        }
    }

    pub(crate) fn parse(pos: usize, expected: impl Into<String>, found: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            expected: expected.into(),
            found: found.into(),
        }
    }
}
