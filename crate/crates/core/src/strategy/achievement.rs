use super::{avoidance_move, strategy_supported, StrategyError, StrategyMove};
use crate::board::{legal_cells, Cell, GameConfig, Permutation, Shape};
use crate::solver::Variant;

/// Achievement decision before it is turned into a digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AchievementChoice {
    Cell(Cell),
    /// Play a new maximum, completing `I_a`.
    CompleteMax,
    /// Play a new minimum, completing `J_b`.
    CompleteMin,
}

/// Plays the avoidance strategy of the `(a-1, b-1)` game on the top-left
/// subboard, and completes a pattern as soon as the opponent touches the
/// last row or column.
pub fn achievement_choice(s: &Shape, cfg: &GameConfig) -> Result<AchievementChoice, StrategyError> {
    if !strategy_supported(cfg, Variant::Achievement) {
        return Err(StrategyError::NoStrategy { a: cfg.a(), b: cfg.b(), variant: Variant::Achievement });
    }
    let (max, min) = s.completing_moves(cfg);
    if min {
        return Ok(AchievementChoice::CompleteMin);
    }
    if max {
        return Ok(AchievementChoice::CompleteMax);
    }
    if s.is_empty() {
        return Ok(AchievementChoice::Cell(Cell::new(1, 1)));
    }
    let sub_cfg = GameConfig::new(cfg.a() - 1, cfg.b() - 1)?;
    let sub_rows = s.rows()[..sub_cfg.height() as usize].to_vec();
    let sub = Shape::new(sub_rows, &sub_cfg)?;
    if sub.is_full(&sub_cfg) {
        // Only reachable when the subboard game is lost; any move will do.
        let cells = legal_cells(s, cfg)?;
        return Ok(AchievementChoice::Cell(cells[0]));
    }
    avoidance_move(&sub, &sub_cfg).map(AchievementChoice::Cell)
}

/// As [`achievement_choice`], with completions turned into the digit to play
/// after `transcript`.
pub fn achievement_move(
    s: &Shape,
    cfg: &GameConfig,
    transcript: &Permutation,
) -> Result<StrategyMove, StrategyError> {
    Ok(match achievement_choice(s, cfg)? {
        AchievementChoice::Cell(cell) => StrategyMove::Cell(cell),
        AchievementChoice::CompleteMax => StrategyMove::Complete(transcript.len() as u32 + 1),
        AchievementChoice::CompleteMin => StrategyMove::Complete(1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::perm_to_shape;

    #[test]
    fn opening_on_subboard() {
        let cfg = GameConfig::new(5, 4).unwrap();
        let m = achievement_move(&Shape::empty(&cfg), &cfg, &Permutation::empty()).unwrap();
        assert_eq!(m, StrategyMove::Cell(Cell::new(1, 1)));
    }

    #[test]
    fn b2_second_player_completes_immediately() {
        for a in 2..8 {
            let cfg = GameConfig::new(a, 2).unwrap();
            let p: Permutation = "1".parse().unwrap();
            let s = perm_to_shape(&p, &cfg).unwrap();
            assert_eq!(achievement_move(&s, &cfg, &p).unwrap(), StrategyMove::Complete(1));
        }
    }

    #[test]
    fn opponent_in_last_row_is_punished() {
        let cfg = GameConfig::new(6, 4).unwrap();
        let s = Shape::new(vec![2, 2, 1], &cfg).unwrap();
        let p: Permutation = "2431".parse().unwrap();
        assert_eq!(achievement_move(&s, &cfg, &p).unwrap(), StrategyMove::Complete(1));
        let s = Shape::new(vec![5, 1, 0], &cfg).unwrap();
        let p: Permutation = "234561".parse().unwrap();
        assert_eq!(perm_to_shape(&p, &cfg).unwrap(), s);
        assert_eq!(achievement_move(&s, &cfg, &p).unwrap(), StrategyMove::Complete(7));
    }

    #[test]
    fn unsupported_configs() {
        let cfg = GameConfig::new(7, 7).unwrap();
        assert!(matches!(
            achievement_choice(&Shape::empty(&cfg), &cfg),
            Err(StrategyError::NoStrategy { .. })
        ));
    }
}
