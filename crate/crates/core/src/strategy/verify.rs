use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{achievement_choice, avoidance_move, strategy_supported, AchievementChoice, StrategyError};
use crate::board::{apply_cell, legal_cells, Cell, GameConfig, Shape};
use crate::solver::{StateTable, Variant};

/// One player-1 decision point met while exploring the strategy's game tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyEntry {
    pub shape: Shape,
    pub rank: usize,
    /// `None` for a completing (off-board) move in the achievement game.
    pub played: Option<Cell>,
    /// The prescribed move leads to a next-player-loss shape (or wins outright).
    pub certified: bool,
    /// The selector had no scripted answer and the solver picked the move.
    pub fallback: bool,
}

impl StrategyEntry {
    pub fn to_line(&self) -> String {
        let mv = match self.played {
            Some(cell) => cell.to_string(),
            None => "complete".to_string(),
        };
        format!(
            "shape={} move={} certified={} fallback={}",
            self.shape, mv, self.certified, self.fallback
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyReport {
    pub config: GameConfig,
    pub variant: Variant,
    /// Sorted by shape rank.
    pub entries: Vec<StrategyEntry>,
    /// Game length (moves including the final completing digit) → number of
    /// distinct terminal positions at that length.
    pub leaf_lengths: BTreeMap<u64, u64>,
}

impl StrategyReport {
    pub fn failures(&self) -> usize {
        self.entries.iter().filter(|e| !e.certified).count()
    }

    pub fn fallbacks(&self) -> usize {
        self.entries.iter().filter(|e| e.fallback).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn min_length(&self) -> Option<u64> {
        self.leaf_lengths.keys().next().copied()
    }

    pub fn max_length(&self) -> Option<u64> {
        self.leaf_lengths.keys().next_back().copied()
    }

    /// Line-oriented export, one entry per decision state.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let _ = writeln!(out, "{}", e.to_line());
        }
        out
    }
}

enum Choice {
    Cell(Cell),
    Complete,
}

/// Explores every game in which player 1 follows the strategy and player 2
/// tries every legal cell, certifying each player-1 move against `table`.
pub fn verify_strategy(
    cfg: &GameConfig,
    variant: Variant,
    table: &StateTable,
) -> Result<StrategyReport, StrategyError> {
    if !strategy_supported(cfg, variant) {
        return Err(StrategyError::NoStrategy { a: cfg.a(), b: cfg.b(), variant });
    }
    assert_eq!(table.config(), cfg, "table built for a different board");
    assert_eq!(table.variant(), variant, "table built for a different variant");

    let mut entries: BTreeMap<usize, StrategyEntry> = BTreeMap::new();
    let mut leaves: BTreeMap<u64, HashSet<usize>> = BTreeMap::new();
    let mut seen: HashSet<(usize, u64)> = HashSet::new();
    let mut queue: VecDeque<(Shape, u64)> = VecDeque::new();
    queue.push_back((Shape::empty(cfg), 0));

    while let Some((s, depth)) = queue.pop_front() {
        let rank = table.rank(&s);
        if !seen.insert((rank, depth)) {
            continue;
        }
        if variant == Variant::Avoidance && s.is_full(cfg) {
            // Player 1 is forced off the board.
            leaves.entry(depth + 1).or_default().insert(rank);
            continue;
        }
        let (choice, fallback) = match pick(&s, cfg, variant) {
            Some(choice) => (choice, false),
            None => (solver_fallback(&s, cfg, variant, table), true),
        };
        let (played, certified, next) = match choice {
            Choice::Complete => (None, true, None),
            Choice::Cell(cell) => {
                let next = apply_cell(&s, cell, cfg).expect("strategy returned a legal cell");
                (Some(cell), table.is_loss(&next), Some(next))
            }
        };
        entries.entry(rank).or_insert_with(|| StrategyEntry {
            shape: s.clone(),
            rank,
            played,
            certified,
            fallback,
        });
        let Some(t) = next else {
            leaves.entry(depth + 1).or_default().insert(rank);
            continue;
        };
        let t_rank = table.rank(&t);
        match variant {
            Variant::Avoidance if t.is_full(cfg) => {
                leaves.entry(depth + 2).or_default().insert(t_rank);
                continue;
            }
            Variant::Achievement => {
                let (max, min) = t.completing_moves(cfg);
                if max || min {
                    leaves.entry(depth + 2).or_default().insert(t_rank);
                }
            }
            _ => {}
        }
        if let Ok(cells) = legal_cells(&t, cfg) {
            for x in cells {
                let u = apply_cell(&t, x, cfg).expect("legal cell");
                queue.push_back((u, depth + 2));
            }
        }
    }

    Ok(StrategyReport {
        config: *cfg,
        variant,
        entries: entries.into_values().collect(),
        leaf_lengths: leaves.into_iter().map(|(len, set)| (len, set.len() as u64)).collect(),
    })
}

fn pick(s: &Shape, cfg: &GameConfig, variant: Variant) -> Option<Choice> {
    match variant {
        Variant::Avoidance => {
            let cell = avoidance_move(s, cfg).ok()?;
            legal_cells(s, cfg).ok()?.contains(&cell).then_some(Choice::Cell(cell))
        }
        Variant::Achievement => match achievement_choice(s, cfg).ok()? {
            AchievementChoice::Cell(cell) => {
                legal_cells(s, cfg).ok()?.contains(&cell).then_some(Choice::Cell(cell))
            }
            AchievementChoice::CompleteMax | AchievementChoice::CompleteMin => Some(Choice::Complete),
        },
    }
}

/// Lexicographically smallest legal cell leading to a loss for the opponent,
/// else the smallest legal cell.
fn solver_fallback(s: &Shape, cfg: &GameConfig, variant: Variant, table: &StateTable) -> Choice {
    if variant == Variant::Achievement {
        let (max, min) = s.completing_moves(cfg);
        if max || min {
            return Choice::Complete;
        }
    }
    let cells = legal_cells(s, cfg).expect("nonfull shape has legal cells");
    let winning = cells
        .iter()
        .copied()
        .find(|&cell| apply_cell(s, cell, cfg).is_ok_and(|t| table.is_loss(&t)));
    Choice::Cell(winning.unwrap_or(cells[0]))
}
