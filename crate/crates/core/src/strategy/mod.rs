//! Explicit first-player strategies, one move selector per board height.
//!
//! Selectors are pure functions of the current shape. They recover the
//! opponent's last move by looking at the one-move predecessors of the shape
//! that belong to a family player 1 aims for, then answer with the scripted
//! response for that family and move.

mod achievement;
pub mod classify;
mod five;
mod small;
mod verify;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{apply_cell, is_legal, predecessors, Cell, GameConfig, Shape};
use crate::error::GameError;
use crate::solver::Variant;

pub use achievement::{achievement_choice, achievement_move, AchievementChoice};
pub use classify::{classify, matches_family, matching_families, template_shapes, Family, MidgameClass};
pub use five::move_b5;
pub use small::{move_b2, move_b3, move_b4};
pub use verify::{verify_strategy, StrategyEntry, StrategyReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("no strategy for b={b} {variant} (a={a})")]
    NoStrategy { a: u32, b: u32, variant: Variant },

    #[error("off-strategy state {0}")]
    OffStrategy(Shape),

    #[error("the board is full")]
    Full,

    #[error(transparent)]
    Game(#[from] GameError),
}

/// A strategy decision: shade a cell or, in the achievement game, finish a
/// pattern with the given digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StrategyMove {
    Cell(Cell),
    Complete(u32),
}

/// Whether a player-1 strategy is implemented for this game.
pub fn strategy_supported(cfg: &GameConfig, variant: Variant) -> bool {
    let (a, b) = (cfg.a(), cfg.b());
    match variant {
        Variant::Avoidance => (2..=5).contains(&b) && a >= b,
        Variant::Achievement => (2..=6).contains(&b) && a >= b,
    }
}

/// Avoidance-game move for player 1, dispatched on `b`.
pub fn avoidance_move(s: &Shape, cfg: &GameConfig) -> Result<Cell, StrategyError> {
    if !strategy_supported(cfg, Variant::Avoidance) {
        return Err(StrategyError::NoStrategy { a: cfg.a(), b: cfg.b(), variant: Variant::Avoidance });
    }
    match cfg.b() {
        2 => move_b2(s, cfg),
        3 => move_b3(s, cfg),
        4 => move_b4(s, cfg),
        _ => move_b5(s, cfg),
    }
}

fn corner(cfg: &GameConfig) -> Cell {
    Cell::new(cfg.width(), cfg.height())
}

/// Cell `(c, r)` when `c >= 1`.
fn cell_at(c: i64, r: u32) -> Option<Cell> {
    (c >= 1).then(|| Cell::new(c as u32, r))
}

/// Checks shared by every selector: a full board has no move, and a legal
/// bottom-right corner wins on the spot.
fn common_prelude(s: &Shape, cfg: &GameConfig) -> Result<Option<Cell>, StrategyError> {
    if s.is_full(cfg) {
        return Err(StrategyError::Full);
    }
    let corner = corner(cfg);
    Ok(is_legal(s, corner, cfg).then_some(corner))
}

/// Finds the position player 1 left (a predecessor of `s` in a known family),
/// applies the scripted reply, and keeps it only if the result lands in a
/// position `accept` recognises.
fn reply_from_history(
    s: &Shape,
    cfg: &GameConfig,
    reply: impl Fn(&MidgameClass, &Shape, Cell) -> Option<Cell>,
    accept: impl Fn(&Shape) -> bool,
) -> Result<Cell, StrategyError> {
    let mut history: Vec<(Shape, Cell, MidgameClass)> = predecessors(s, cfg)
        .into_iter()
        .map(|(prev, opp)| {
            let class = classify(&prev, cfg);
            (prev, opp, class)
        })
        .filter(|(_, _, class)| class.family != Family::None)
        .collect();
    // Opening positions are unambiguous; try them before template matches.
    history.sort_by_key(|(_, _, class)| class.family != Family::Opening);
    for (prev, opp, class) in history {
        let Some(answer) = reply(&class, &prev, opp) else { continue };
        if let Ok(next) = apply_cell(s, answer, cfg) {
            if next.is_full(cfg) || accept(&next) {
                return Ok(answer);
            }
        }
    }
    Err(StrategyError::OffStrategy(s.clone()))
}
