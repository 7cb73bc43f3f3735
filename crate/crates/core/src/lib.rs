//! The Erdős–Szekeres permutation game.
//!
//! Two players take turns appending digits to a permutation. In the
//! avoidance game whoever first creates an increasing run of length `a` or a
//! decreasing run of length `b` loses; in the achievement game they win.
//! Every position is summarized by a staircase shape on an
//! `(a-1) x (b-1)` board, which is what the solver and strategies work on.

pub mod board;
pub mod engine;
pub mod error;
pub mod solver;
pub mod strategy;
pub mod word;

pub use board::{
    apply_cell, cell_of_append, is_legal, legal_cells, perm_to_shape, predecessors, prefix_pairs,
    realize_digit, shaded_cells, Cell, GameConfig, Permutation, PrefixPair, Shape, MAX_PARAM,
};
pub use engine::{
    engine_reply, exhaustive_verify, new_session, play_game, simulate, EndReason, EngineError, GameLog,
    MoveRecord, PlayPolicy, PolicyKind, Session, SessionId, SimulationStats, Status,
};
pub use error::{GameError, Result};
pub use solver::{
    best_moves, census_of, count_loss_states, enumerate_shapes, label_states, label_states_with_limit,
    max_game_length, min_game_length, successors, table_winner, winner_from_start, BestMove, Label,
    LossCensus, Player, ShapeIndexer, StateTable, Variant, DEFAULT_STATE_LIMIT,
};
pub use strategy::{
    achievement_move, avoidance_move, classify, strategy_supported, verify_strategy, Family,
    MidgameClass, StrategyEntry, StrategyError, StrategyMove, StrategyReport,
};
pub use word::{shape_to_word, word_to_shape, BoundaryWord, Letter};
