use core::fmt;

/// What went wrong while reading a word from text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// The leading character is not one of `a`, `b`, `c`, `d`.
    BadCornerLetter(char),
    /// A trailing character is not a digit in `0..=7`.
    BadCopyDigit(char),
    /// The text has the wrong number of characters for the requested level.
    Length { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed word text; `position` is the 0-based character index.
    Parse { position: usize, kind: ParseErrorKind },
    /// Two words of different levels were combined.
    LevelMismatch { left: usize, right: usize },
    /// Level 0 was requested.
    ZeroLevel,
    /// The requested level exceeds the configured cap.
    LevelCap { level: usize, max: usize },
    /// A documented precondition of an operation was violated.
    Precondition(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::BadCornerLetter(c) => write!(f, "expected one of a, b, c, d but found {c:?}"),
            ParseErrorKind::BadCopyDigit(c) => write!(f, "expected a digit 0-7 but found {c:?}"),
            ParseErrorKind::Length { expected, found } => {
                write!(f, "expected {expected} characters but found {found}")
            }
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { position, kind } => write!(f, "invalid word at position {position}: {kind}"),
            Error::LevelMismatch { left, right } => {
                write!(f, "words have different levels ({left} and {right})")
            }
            Error::ZeroLevel => f.write_str("level must be at least 1"),
            Error::LevelCap { level, max } => {
                write!(f, "level {level} exceeds the configured maximum of {max}")
            }
            Error::Precondition(what) => write!(f, "precondition violated: {what}"),
        }
    }
}

impl core::error::Error for Error {}
