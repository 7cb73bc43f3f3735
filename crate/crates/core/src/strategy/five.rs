//! Four rows (`b = 5`).
//!
//! Opening: `(1,1)`, then `(2,2)`, then either straight into `S6`/`S3` or
//! through a `3x3` square (when `a - 1` is even) into `S2`/`S3`/`S4`.
//! Midgame: answer every move so the board returns to `S1..S7`. Once row 1
//! has one open cell (two for `S2`, `S3`, `S4`) the answers switch to ones
//! that land in `E1..E3`, where player 1 mirrors the opponent between the
//! two open lines until the corner `(a-1, 4)` becomes legal.

use super::{cell_at, classify, common_prelude, reply_from_history, Family, MidgameClass, StrategyError};
use crate::board::{apply_cell, legal_cells, Cell, GameConfig, Shape};

pub fn move_b5(s: &Shape, cfg: &GameConfig) -> Result<Cell, StrategyError> {
    if cfg.b() != 5 || cfg.a() < 5 {
        return Err(StrategyError::NoStrategy {
            a: cfg.a(),
            b: cfg.b(),
            variant: crate::solver::Variant::Avoidance,
        });
    }
    if let Some(win) = common_prelude(s, cfg)? {
        return Ok(win);
    }
    if s.is_empty() {
        return Ok(Cell::new(1, 1));
    }
    reply_from_history(
        s,
        cfg,
        |class, prev, opp| reply(class, prev, opp, s, cfg),
        |next| classify(next, cfg).family != Family::None,
    )
}

fn reply(class: &MidgameClass, prev: &Shape, opp: Cell, now: &Shape, cfg: &GameConfig) -> Option<Cell> {
    let w = i64::from(cfg.width());
    let (c, r) = (i64::from(opp.c), opp.r);
    if class.family == Family::Opening {
        return opening_reply(prev, c, r, w);
    }
    if class.family.is_endgame() {
        return restore_endgame(now, cfg);
    }
    let k = i64::from(class.k?);
    let open = w - k;
    let odd = open % 2 == 1;
    match class.family {
        Family::S1 => match r {
            1 | 2 => cell_at(k + 1, 2),
            3 => cell_at(k + 1, 1),
            _ => cell_at(k + 1, 3),
        },
        Family::S2 => match r {
            1 => cell_at(k, 4),
            4 => cell_at(k + 1, 1),
            2 if open == 2 => cell_at(w, 2),
            2 => cell_at(k + 2, 1),
            3 if open == 2 => cell_at(w, 1),
            _ => cell_at(k + 2, 2),
        },
        Family::S3 => match (c, r) {
            (_, 1) => cell_at(k - 2, 4),
            (c, 4) if c == k - 2 => cell_at(k + 1, 1),
            (_, 2) => cell_at(k - 1, 4),
            (c, 4) if c == k - 1 => cell_at(k + 1, 2),
            (_, 3) => cell_at(k - 1, 4),
            _ => None,
        },
        Family::S4 => match r {
            1 => cell_at(k, 2),
            2 => cell_at(k + 1, 1),
            3 => cell_at(k - 1, 4),
            _ => cell_at(k, 3),
        },
        Family::S5 if open == 1 => match (c, r) {
            (_, 1) => cell_at(k, 3),
            (c, 3) if c == k => cell_at(w, 1),
            (_, 2) => cell_at(k - 1, 3),
            (c, 3) if c == k - 1 => cell_at(w, 2),
            (_, 4) => cell_at(w, 1),
            _ => None,
        },
        Family::S5 => match (c, r) {
            (_, 1) => cell_at(k - 1, 3),
            (_, 2) => cell_at(k - 1, 4),
            (c, 3) if c == k && odd => cell_at(k + 1, 2),
            (c, 3) if c == k => cell_at(k - 1, 4),
            (c, 3) if c == k - 1 => cell_at(k + 1, 1),
            (_, 4) => cell_at(k + 1, 2),
            _ => None,
        },
        Family::S6 if open == 1 => match r {
            1 | 2 => cell_at(w, 2),
            _ => cell_at(w - 2, 4),
        },
        Family::S6 => match r {
            1 => cell_at(k, 2),
            2 => cell_at(k - 2, 4),
            3 if odd => cell_at(k - 1, 4),
            3 => cell_at(k, 2),
            _ => cell_at(k, 2),
        },
        Family::S7 => {
            let j = i64::from(prev.row(3));
            match (c, r) {
                (_, 1 | 2) if open == 1 => cell_at(w, 2),
                (_, 1) => cell_at(k, 2),
                (_, 2) => cell_at(k + 1, 1),
                (c, 3) if c == k - 1 && odd => cell_at(k - 1, 4),
                (c, 3) if c == k - 1 => cell_at(k - 2, 4),
                (c, 3) => cell_at(c - 1, 4),
                _ => cell_at(j + 1, 3),
            }
        }
        _ => None,
    }
}

fn opening_reply(prev: &Shape, c: i64, r: u32, w: i64) -> Option<Cell> {
    match prev.rows() {
        [1, 0, 0, 0] => cell_at(2, 2),
        [2, 2, 0, 0] => match (c, r) {
            (3, 1) => cell_at(1, 3),
            (1, 3) => cell_at(3, 1),
            (3, 2) if w % 2 == 1 => cell_at(2, 3),
            (2, 3) if w % 2 == 1 => cell_at(3, 2),
            (3, 2) | (2, 3) => cell_at(3, 3),
            _ => None,
        },
        [3, 3, 3, 0] => match (c, r) {
            (4, 1) => cell_at(2, 4),
            (2, 4) => cell_at(4, 1),
            (4, 2) => cell_at(1, 4),
            (1, 4) => cell_at(4, 2),
            (4, 3) => cell_at(3, 4),
            (3, 4) => cell_at(4, 3),
            _ => None,
        },
        _ => None,
    }
}

/// Tit-for-tat inside `E1..E3`: the unique reply that restores an endgame
/// family (smallest cell if several do).
fn restore_endgame(now: &Shape, cfg: &GameConfig) -> Option<Cell> {
    legal_cells(now, cfg).ok()?.into_iter().find(|&cell| {
        apply_cell(now, cell, cfg).is_ok_and(|next| classify(&next, cfg).family.is_endgame())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(rows: &[u32], a: u32) -> (Shape, GameConfig) {
        let cfg = GameConfig::new(a, 5).unwrap();
        (Shape::new(rows.to_vec(), &cfg).unwrap(), cfg)
    }

    #[test]
    fn opening_sequence() {
        let (s, c) = setup(&[0, 0, 0, 0], 7);
        assert_eq!(move_b5(&s, &c).unwrap(), Cell::new(1, 1));
        let (s, c) = setup(&[1, 1, 0, 0], 7);
        assert_eq!(move_b5(&s, &c).unwrap(), Cell::new(2, 2));
        // a - 1 odd: mirror between (3,2) and (2,3).
        let (s, c) = setup(&[3, 3, 0, 0], 6);
        assert_eq!(move_b5(&s, &c).unwrap(), Cell::new(2, 3));
        // a - 1 even: complete the 3x3 square.
        let (s, c) = setup(&[2, 2, 2, 0], 7);
        assert_eq!(move_b5(&s, &c).unwrap(), Cell::new(3, 3));
        let (s, c) = setup(&[3, 2, 0, 0], 7);
        assert_eq!(move_b5(&s, &c).unwrap(), Cell::new(1, 3));
    }

    #[test]
    fn s1_row_four_reply_reaches_s2() {
        // S1 with k=3, a=9: (3,2,2,2), opponent plays (3,4).
        let (s, c) = setup(&[3, 3, 3, 3], 9);
        let reply = move_b5(&s, &c).unwrap();
        assert_eq!(reply.r, 3);
        let next = apply_cell(&s, reply, &c).unwrap();
        assert_eq!(classify(&next, &c).family, Family::S2);
    }

    #[test]
    fn endgame_corner() {
        // E3 (a-1, a-1, 3, 2) with a=7; opponent takes (6,3).
        let (s, c) = setup(&[6, 6, 6, 2], 7);
        assert_eq!(move_b5(&s, &c).unwrap(), Cell::new(6, 4));
    }
}
