use super::{cell_at, classify, common_prelude, reply_from_history, Family, StrategyError};
use crate::board::{Cell, GameConfig, Shape};

fn require_b(cfg: &GameConfig, b: u32) -> Result<(), StrategyError> {
    if cfg.b() != b {
        return Err(StrategyError::NoStrategy {
            a: cfg.a(),
            b: cfg.b(),
            variant: crate::solver::Variant::Avoidance,
        });
    }
    Ok(())
}

/// One row: the only legal move is the leftmost open cell.
pub fn move_b2(s: &Shape, cfg: &GameConfig) -> Result<Cell, StrategyError> {
    require_b(cfg, 2)?;
    if s.is_full(cfg) {
        return Err(StrategyError::Full);
    }
    Ok(Cell::new(s.row(1) + 1, 1))
}

/// Two rows: keep `λ = (i, i-1)` after every own move, mirroring the
/// opponent between the rows, and take `(a-1, 2)` as soon as it is legal.
pub fn move_b3(s: &Shape, cfg: &GameConfig) -> Result<Cell, StrategyError> {
    require_b(cfg, 3)?;
    if let Some(win) = common_prelude(s, cfg)? {
        return Ok(win);
    }
    if s.is_empty() {
        return Ok(Cell::new(1, 1));
    }
    reply_from_history(
        s,
        cfg,
        |class, _prev, opp| {
            let i = i64::from(class.k?);
            match (class.family, opp.r) {
                (Family::B3Ladder, 1) => cell_at(i, 2),
                (Family::B3Ladder, 2) => cell_at(i + 1, 1),
                _ => None,
            }
        },
        |next| classify(next, cfg).family == Family::B3Ladder,
    )
}

/// Three rows. Player 1 ends each turn in form 1, `(k, k, k-2)`, or
/// form 2, `(k, k-1, k-1)`, with two scripted endgames once row 1 reaches
/// `a - 2`.
pub fn move_b4(s: &Shape, cfg: &GameConfig) -> Result<Cell, StrategyError> {
    require_b(cfg, 4)?;
    if let Some(win) = common_prelude(s, cfg)? {
        return Ok(win);
    }
    if s.is_empty() {
        return Ok(Cell::new(1, 1));
    }
    let w = i64::from(cfg.width());
    reply_from_history(
        s,
        cfg,
        |class, _prev, opp| {
            let (c, r) = (i64::from(opp.c), opp.r);
            match class.family {
                Family::Opening => cell_at(2, 2),
                Family::B4Form1 => {
                    let k = i64::from(class.k?);
                    if k == w - 1 {
                        // Leaves (a-1, a-2, a-3): the opponent must open the corner.
                        match (c, r) {
                            (c, 1) if c == w => cell_at(w - 2, 3),
                            (c, 3) if c == w - 2 => cell_at(w, 1),
                            _ => None,
                        }
                    } else {
                        match (c, r) {
                            (c, 1) if c == k + 1 => cell_at(k, 3),
                            (c, 2) if c == k + 1 => cell_at(k - 1, 3),
                            (c, 3) if c == k => cell_at(k + 1, 1),
                            (c, 3) if c == k - 1 => cell_at(k + 1, 2),
                            _ => None,
                        }
                    }
                }
                Family::B4Form2 => {
                    let k = i64::from(class.k?);
                    if k == w - 1 {
                        match (c, r) {
                            (c, 1) if c == w => cell_at(w - 1, 2),
                            (c, 2) if c == w - 1 => cell_at(w, 1),
                            _ => None,
                        }
                    } else {
                        match (c, r) {
                            (c, 1) if c == k + 1 => cell_at(k, 3),
                            (c, 2) if c == k => cell_at(k + 1, 2),
                            (c, 3) if c == k => cell_at(k + 1, 1),
                            _ => None,
                        }
                    }
                }
                _ => None,
            }
        },
        |next| {
            matches!(
                classify(next, cfg).family,
                Family::B4Form1 | Family::B4Form2 | Family::EndgameTtt
            )
        },
    )
}
