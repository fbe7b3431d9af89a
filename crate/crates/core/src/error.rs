use thiserror::Error;

use crate::square::Cell;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("order must be at least 1")]
    ZeroOrder,

    #[error("layer count must be at least 1")]
    ZeroLayers,

    #[error("cell {cell} is outside a square of order {n}")]
    CellOutOfRange { cell: Cell, n: usize },

    #[error("entry tuple has {got} entries, expected {expected}")]
    TupleLength { got: usize, expected: usize },

    #[error("symbol {symbol} is outside the symbol set of order {n}")]
    SymbolOutOfRange { symbol: usize, n: usize },

    #[error("cell {0} is already filled")]
    Occupied(Cell),

    #[error("cell {0} is empty")]
    EmptyCell(Cell),

    /// Inserting would repeat a symbol in a row or column of one layer.
    #[error("symbol {symbol} already appears in layer {layer} of the {line} through {cell} (at {conflict})")]
    Latin {
        cell: Cell,
        conflict: Cell,
        layer: usize,
        symbol: usize,
        line: &'static str,
    },

    /// Inserting would create two tuples that agree in two coordinates.
    #[error("tuple at {cell} agrees with the tuple at {conflict} in coordinates {coords:?}")]
    Orthogonality {
        cell: Cell,
        conflict: Cell,
        coords: (usize, usize),
    },

    #[error("square is not valid: {0}")]
    InvalidSquare(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0} is not a prime power")]
    NotPrimePower(usize),

    #[error(
        "{k} mutually orthogonal Latin squares of order {q} cannot come from the field construction (need k <= q - 1)"
    )]
    TooManyLayers { k: usize, q: usize },

    #[error("layer counts differ: {0} vs {1}")]
    LayerMismatch(usize, usize),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A verifier's precondition does not hold for the given square.
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("undefined: {0}")]
    Undefined(String),

    #[error("word space of {words} words exceeds the exact-computation limit of {limit}")]
    ComputeGate { words: u128, limit: u128 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
