use thiserror::Error;

use crate::board::Cell;

/// Errors produced by the board model, solver and strategies.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("pattern already completed at position {position} (inc={inc}, dec={dec})")]
    PatternCompleted { position: usize, inc: usize, dec: usize },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("no legal moves: the board is full")]
    NoLegalMoves,

    #[error("illegal cell {cell}; legal cells are {legal}")]
    IllegalCell { cell: Cell, legal: String },

    #[error("digit {digit} out of range 1..={max}")]
    DigitOutOfRange { digit: u32, max: u32 },

    #[error("boundary word is undefined for the empty state")]
    EmptyWord,

    #[error("malformed boundary word: {0}")]
    MalformedWord(String),

    #[error("word does not fit the board: {0}")]
    WordTooLarge(String),

    #[error("state count {states} exceeds the configured limit {limit}")]
    StateLimit { states: u128, limit: u128 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("the game is already over")]
    GameOver,
}

pub type Result<T, E = GameError> = std::result::Result<T, E>;
