use std::fmt;

use thiserror::Error;

/// Errors raised by the in-memory API.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count must be between 1 and {max}, got {got}")]
    VarCount { got: u32, max: u32 },
    #[error("minterm {minterm} is out of range for {vars} variables")]
    MintermOutOfRange { minterm: u64, vars: u32 },
    #[error("implicant widths differ ({left} vs {right} variables)")]
    WidthMismatch { left: u32, right: u32 },
    #[error("minterm list is not strictly ascending at {0}")]
    NotAscending(u64),
    #[error("minterm {0} is listed as both onset and don't-care")]
    Overlap(u64),
    #[error("function has no onset or don't-care minterms")]
    EmptyFunction,
    #[error("letter naming supports at most 26 variables, got {0}")]
    TooManyLetters(u32),
    #[error("oracle refused: {0}")]
    OracleCap(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// What went wrong while parsing a minterm spec or PLA file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    BadVarCount(String),
    NotAscending(u64),
    Duplicate(u64),
    OutOfRange { minterm: u64, vars: u32 },
    DontCareNotInMinterms(u64),
    EmptyOnset,
    MissingInputs,
    OutputCount(String),
    CubeWidth { expected: usize, got: usize },
    BadCubeChar(char),
    UnknownDirective(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::BadVarCount(v) => {
                write!(
                    f,
                    "the number of variables should be greater than 0, got `{v}`"
                )
            }
            ParseErrorKind::NotAscending(m) => {
                write!(f, "the numbers are not in ascending order at {m}")
            }
            ParseErrorKind::Duplicate(m) => write!(f, "duplicate minterm {m}"),
            ParseErrorKind::OutOfRange { minterm, vars } => {
                write!(f, "minterm {minterm} should be smaller than 2^{vars}")
            }
            ParseErrorKind::DontCareNotInMinterms(m) => {
                write!(f, "don't-care {m} is not in the minterm list")
            }
            ParseErrorKind::EmptyOnset => write!(
                f,
                "no onset minterms remain after removing don't-cares (use allow-empty-onset)"
            ),
            ParseErrorKind::MissingInputs => write!(f, "missing `.i` directive"),
            ParseErrorKind::OutputCount(v) => {
                write!(f, "only single-output PLA is supported, got `.o {v}`")
            }
            ParseErrorKind::CubeWidth { expected, got } => {
                write!(f, "cube has {got} characters, expected {expected}")
            }
            ParseErrorKind::BadCubeChar(c) => write!(f, "invalid cube character `{c}`"),
            ParseErrorKind::UnknownDirective(d) => write!(f, "unsupported directive `{d}`"),
        }
    }
}

/// A parse failure with the location it was detected at.
///
/// `line` is 1-based; `column` is a 1-based character offset within that line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
}

impl ParseError {
    pub(crate) fn new(kind: ParseErrorKind, line: usize, column: usize) -> Self {
        ParseError { kind, line, column }
    }
}
