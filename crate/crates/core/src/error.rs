use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("universe mismatch: expected a set over {expected} elements, got {found}")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("matrix has {cells} cells, above the enumeration limit of {limit}")]
    SizeLimit { cells: usize, limit: usize },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A factor covers a cell that is 0 in the data. Indices are 0-based;
    /// the message prints them 1-based.
    #[error("factor {} covers cell (object {}, attribute {}) which is 0 in the data", .factor + 1, .row + 1, .col + 1)]
    NotFromBelow {
        factor: usize,
        row: usize,
        col: usize,
    },

    #[error("overlap rate is undefined when no cell is covered")]
    UndefinedRate,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
