//! Error type shared across the crate.

use crate::oracle::Violation;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Width 0 has no columns; nothing is defined for it.
    #[error("width m = 0 is rejected; columns need at least one row")]
    WidthZero,

    /// Widths beyond [`crate::config::MAX_WIDTH`] cannot be represented.
    #[error("width m = {m} exceeds the supported maximum {max}")]
    WidthUnsupported { m: usize, max: usize },

    /// The configured width cap refused an enumeration that grows as `3^m`.
    #[error(
        "width m = {m} exceeds the cap {cap}: the column alphabet grows as 3^m \
         (~{words} words here); raise the cap explicitly to proceed"
    )]
    WidthCap { m: usize, cap: usize, words: u64 },

    /// The census refused a grid larger than the configured vertex cap.
    #[error("grid has {vertices} vertices, above the census cap {cap}")]
    CensusCap { vertices: usize, cap: usize },

    /// The requested explicit grid is not a simple graph.
    #[error("{family} with m = {m}, n = {n} is rejected: {reason}")]
    DegenerateGrid {
        family: &'static str,
        m: usize,
        n: usize,
        reason: String,
    },

    #[error("unknown family '{0}' (expected one of rg, tkc, ms, tnc, tg, kb)")]
    UnknownFamily(String),

    #[error("family {family} does not take a twist parameter")]
    UnexpectedTwist { family: &'static str },

    #[error("family {family} requires a twist parameter p")]
    MissingTwist { family: &'static str },

    #[error("grid length n = 0 is rejected; a grid needs at least one column")]
    LengthZero,

    #[error("word lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("matrix is {matrix_m}/{matrix_kind} but the request needs {want_m}/{want_kind}")]
    MatrixMismatch {
        matrix_m: usize,
        matrix_kind: &'static str,
        want_m: usize,
        want_kind: &'static str,
    },

    /// Level index `s` outside the range admitted by the requested word role.
    /// `hi` is exclusive so an empty range prints as e.g. `0..0`.
    #[error("s = {s} is outside {lo}..{hi}, the valid level range for {role} at m = {m}")]
    LevelRange {
        role: &'static str,
        m: usize,
        s: usize,
        lo: usize,
        hi: usize,
    },

    /// Constructions that only exist at odd widths (negative-level anchor
    /// words, level-connecting columns, the two-component complement pairing).
    #[error("{what} is defined for odd widths only, not m = {m}")]
    OddWidthOnly { what: &'static str, m: usize },

    /// Operation defined only for one word kind (e.g. rotation of a column
    /// word keeps it valid only when the column closes into a ring).
    #[error("{op} is defined for {need} words only")]
    KindMismatch {
        op: &'static str,
        need: &'static str,
    },

    #[error("invalid code matrix: {0}")]
    Invalid(#[from] Violation),

    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    /// A stored matrix file failed its integrity or format checks.
    #[error("matrix file rejected: {0}")]
    Corrupt(String),

    /// An internal invariant failed; indicates a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Coarse classification used by callers that map errors to process exit
    /// codes: bad input (3), resource/range refusals (2), everything else a
    /// verification-level failure (1).
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            WidthZero
            | LengthZero
            | UnknownFamily(_)
            | UnexpectedTwist { .. }
            | MissingTwist { .. }
            | LengthMismatch { .. }
            | LevelRange { .. }
            | OddWidthOnly { .. }
            | KindMismatch { .. }
            | Parse { .. }
            | MatrixMismatch { .. } => ErrorClass::BadInput,
            WidthUnsupported { .. }
            | WidthCap { .. }
            | CensusCap { .. }
            | DegenerateGrid { .. } => ErrorClass::Resource,
            Invalid(_) | Corrupt(_) | Internal(_) | Io(_) | Json(_) => ErrorClass::Verification,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Arguments that can never be satisfied (exit code 3).
    BadInput,
    /// Valid request refused by a resource cap or range rule (exit code 2).
    Resource,
    /// Data failed verification, or an unexpected runtime fault (exit code 1).
    Verification,
}
