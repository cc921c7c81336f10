use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{value} is outside the carrier of {relation}")]
    Domain { relation: String, value: String },

    #[error("classes belong to different relations ({left} vs {right})")]
    RelationMismatch { left: String, right: String },

    #[error("budget must be at least 1")]
    ZeroBudget,

    #[error("bound must be at least 1")]
    ZeroBound,

    #[error("term universe has {universe_size} elements, above the limit of {limit}")]
    Resource { universe_size: u128, limit: u128 },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A syntax or well-formedness error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(offset: usize, kind: ParseErrorKind) -> Self {
        ParseError { offset, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedEof,
    UnexpectedClose,
    TrailingInput,
    EmptyList,
    ExpectedAtom,
    ExpectedList,
    UnknownConstructor(String),
    UnknownOperator(String),
    Arity {
        head: String,
        expected: String,
        found: usize,
    },
    BadNumber(String),
    Type(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ParseErrorKind::*;
        match self {
            UnexpectedEof => write!(f, "unexpected end of input"),
            UnexpectedClose => write!(f, "unmatched `)`"),
            TrailingInput => write!(f, "trailing input after expression"),
            EmptyList => write!(f, "empty list"),
            ExpectedAtom => write!(f, "expected an atom"),
            ExpectedList => write!(f, "expected a parenthesised form"),
            UnknownConstructor(name) => write!(f, "unknown constructor `{name}`"),
            UnknownOperator(name) => write!(f, "unknown operator `{name}`"),
            Arity {
                head,
                expected,
                found,
            } => write!(
                f,
                "arity error: `{head}` takes {expected} argument(s), found {found}"
            ),
            BadNumber(text) => write!(f, "invalid number `{text}`"),
            Type(msg) => write!(f, "type error: {msg}"),
        }
    }
}
