use std::fmt;

use thiserror::Error;

use crate::mesh::MeshError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("derivative order {0} is not supported (expected 0, 1 or 2)")]
    InvalidOrder(u8),
    #[error("degenerate interval [{a}, {b}]")]
    DegenerateInterval { a: f64, b: f64 },
    #[error("reference coordinate {0} lies outside [0, 1]")]
    OutsideReference(f64),
    #[error("basis index {0} out of range (expected 0..16)")]
    BasisIndex(usize),
    #[error("element size ({hx}, {hy}) must be positive and finite")]
    InvalidSize { hx: f64, hy: f64 },
    #[error("point {index} has non-finite coordinates")]
    NonFinitePoint { index: usize },
    #[error("unsupported quadrature rule with {0} points (expected 1, 4 or 9)")]
    UnsupportedRule(usize),
    #[error("dof matrix has {found} rows but the mesh has {expected} nodes")]
    DofCount { expected: usize, found: usize },
    #[error("non-finite dof in row {row}")]
    NonFiniteDof { row: usize },
    #[error("non-finite {what} at node {node} ({x}, {y})")]
    NonFiniteNodal { what: &'static str, node: usize, x: f64, y: f64 },
    #[error("non-finite integrand in element {element} at reference point ({xi}, {eta})")]
    NonFiniteIntegrand { element: usize, xi: f64, eta: f64 },
    #[error("refinement level {0} exceeds the supported maximum of {max}", max = crate::integrals::MAX_LEVEL)]
    LevelTooLarge(u32),
    #[error("exact reference value for {0} is not finite")]
    NonFiniteExact(&'static str),
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Failure while reading one of the text formats (mesh, dofs, polynomial).
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(line: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, kind }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParseErrorKind {
    UnexpectedEof { expected: &'static str },
    ExpectedHeader { keyword: &'static str },
    BadCount(String),
    BadNumber(String),
    BadIndex(String),
    NonFinite(String),
    FieldCount { expected: usize, found: usize },
    ExponentTooLarge { max: u32 },
    TrailingContent,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ParseErrorKind::*;
        match self {
            UnexpectedEof { expected } => write!(f, "unexpected end of input, expected {expected}"),
            ExpectedHeader { keyword } => write!(f, "expected `{keyword} <count>` header"),
            BadCount(s) => write!(f, "invalid count `{s}`"),
            BadNumber(s) => write!(f, "invalid number `{s}`"),
            BadIndex(s) => write!(f, "invalid node index `{s}` (indices are 1-based)"),
            NonFinite(s) => write!(f, "non-finite value `{s}`"),
            FieldCount { expected, found } => {
                write!(f, "expected {expected} fields, found {found}")
            }
            ExponentTooLarge { max } => write!(f, "exponent exceeds maximum of {max}"),
            TrailingContent => write!(f, "unexpected content after the last record"),
        }
    }
}
