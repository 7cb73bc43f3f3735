//! Retrograde win/loss labeling of every staircase shape.
//!
//! Shapes are stored densely, indexed by their colexicographic rank. A move
//! only ever grows rows, which strictly increases the rank, so scanning ranks
//! from the top down labels every successor before its predecessors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::board::{for_each_frontier_cell, legal_cells, Cell, GameConfig, Shape};
use crate::error::{GameError, Result};

/// Tables above this many states are refused unless a larger limit is given.
pub const DEFAULT_STATE_LIMIT: u128 = 50_000_000;
/// Above this many states a warning is logged.
pub const WARN_STATES: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Completing `I_a` or `J_b` loses.
    Avoidance,
    /// Completing `I_a` or `J_b` wins.
    Achievement,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Avoidance => "avoidance",
            Variant::Achievement => "achievement",
        })
    }
}

impl FromStr for Variant {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "avoidance" => Ok(Variant::Avoidance),
            "achievement" => Ok(Variant::Achievement),
            other => Err(GameError::Parse(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Player::One => 1,
            Player::Two => 2,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "player{}", self.number())
    }
}

/// Outcome for the player about to move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    Win,
    Loss,
}

/// Colexicographic ranking of staircases in a `height x width` box.
///
/// Row `r` of `λ` maps to the combinadic entry `s_i = λ_r + i - 1` with
/// `i = height + 1 - r`; the strictly increasing `s_1 < … < s_h` is an
/// `h`-subset of `0..w+h` and the rank is `Σ C(s_i, i)`.
#[derive(Debug, Clone)]
pub struct ShapeIndexer {
    width: u32,
    height: u32,
    binom: Vec<Vec<u64>>,
    total: usize,
}

impl ShapeIndexer {
    pub fn new(cfg: &GameConfig) -> Self {
        let width = cfg.width();
        let height = cfg.height();
        let n_max = (width + height) as usize;
        let mut binom = vec![vec![0u64; height as usize + 1]; n_max + 1];
        for n in 0..=n_max {
            binom[n][0] = 1;
            for k in 1..=(height as usize).min(n) {
                binom[n][k] = binom[n - 1][k - 1].saturating_add(if k < n { binom[n - 1][k] } else { 0 });
            }
        }
        let total = usize::try_from(cfg.state_count()).unwrap_or(usize::MAX);
        ShapeIndexer { width, height, binom, total }
    }

    pub fn len(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    #[inline]
    fn term(&self, row_index: usize, len: u32) -> u64 {
        let i = self.height as usize - row_index;
        self.binom[len as usize + i - 1][i]
    }

    pub fn rank(&self, s: &Shape) -> usize {
        self.rank_rows(s.rows())
    }

    fn rank_rows(&self, rows: &[u32]) -> usize {
        rows.iter().enumerate().map(|(ri, &len)| self.term(ri, len)).sum::<u64>() as usize
    }

    pub fn unrank(&self, rank: usize) -> Shape {
        let mut rows = vec![0u32; self.height as usize];
        self.unrank_into(rank, &mut rows);
        Shape::from_rows_unchecked(rows)
    }

    fn unrank_into(&self, rank: usize, rows: &mut [u32]) {
        let mut rest = rank as u64;
        let mut s = (self.width + self.height) as usize;
        let h = self.height as usize;
        for i in (1..=h).rev() {
            s -= 1;
            while self.binom[s][i] > rest {
                s -= 1;
            }
            rest -= self.binom[s][i];
            // i = h - row_index
            rows[h - i] = (s + 1 - i) as u32;
        }
    }

    /// Rank after shading `(c, r)` in the shape given by `rows`/`rank`.
    #[inline]
    fn successor_rank(&self, rows: &[u32], rank: usize, c: u32, r: u32) -> usize {
        let mut rank = rank as u64;
        for ri in (0..r as usize).rev() {
            if rows[ri] >= c {
                break;
            }
            rank = rank - self.term(ri, rows[ri]) + self.term(ri, c);
        }
        rank as usize
    }
}

/// Yields every shape on the board in decreasing rank order, so a shape
/// never appears before a shape it can move to.
pub fn enumerate_shapes(cfg: &GameConfig, limit: u128) -> Result<impl Iterator<Item = Shape>> {
    check_limit(cfg, limit)?;
    let indexer = ShapeIndexer::new(cfg);
    Ok((0..indexer.len()).rev().map(move |rank| indexer.unrank(rank)))
}

fn check_limit(cfg: &GameConfig, limit: u128) -> Result<()> {
    let states = cfg.state_count();
    if states > limit {
        return Err(GameError::StateLimit { states, limit });
    }
    if states > WARN_STATES {
        log::warn!("({},{}) board has {states} states; labeling will be slow", cfg.a(), cfg.b());
    }
    Ok(())
}

/// Win/loss label of every shape for the player to move.
#[derive(Debug, Clone)]
pub struct StateTable {
    config: GameConfig,
    variant: Variant,
    indexer: ShapeIndexer,
    win: Vec<bool>,
}

impl StateTable {
    pub fn config(&self) -> &GameConfig {
        &self.config
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn indexer(&self) -> &ShapeIndexer {
        &self.indexer
    }

    pub fn len(&self) -> usize {
        self.win.len()
    }

    pub fn is_empty(&self) -> bool {
        self.win.is_empty()
    }

    pub fn label(&self, s: &Shape) -> Label {
        self.label_at(self.indexer.rank(s))
    }

    pub fn label_at(&self, rank: usize) -> Label {
        if self.win[rank] {
            Label::Win
        } else {
            Label::Loss
        }
    }

    pub fn is_loss(&self, s: &Shape) -> bool {
        self.label(s) == Label::Loss
    }

    pub fn rank(&self, s: &Shape) -> usize {
        self.indexer.rank(s)
    }

    pub fn loss_count(&self) -> u64 {
        self.win.iter().filter(|w| !**w).count() as u64
    }

    /// Labels recomputed from the successors' labels; used to check the
    /// fixed point.
    pub fn relabel(&self, s: &Shape) -> Label {
        let rank = self.indexer.rank(s);
        if evaluate(&self.indexer, &self.config, self.variant, s.rows(), rank, &self.win) {
            Label::Win
        } else {
            Label::Loss
        }
    }
}

fn evaluate(
    indexer: &ShapeIndexer,
    cfg: &GameConfig,
    variant: Variant,
    rows: &[u32],
    rank: usize,
    win: &[bool],
) -> bool {
    let w = cfg.width();
    let h = cfg.height() as usize;
    let full = rows.iter().all(|&x| x == w);
    if variant == Variant::Achievement && (rows[0] == w || rows[h - 1] >= 1) {
        return true;
    }
    if full {
        return false;
    }
    if rows[0] == 0 {
        // Only (1,1) from the empty board.
        return !win[indexer.successor_rank(rows, rank, 1, 1)];
    }
    let mut found = false;
    for_each_frontier_cell(rows, w, |c, r| {
        if !found && !win[indexer.successor_rank(rows, rank, c, r)] {
            found = true;
        }
    });
    found
}

pub fn label_states(cfg: &GameConfig, variant: Variant) -> Result<StateTable> {
    label_states_with_limit(cfg, variant, DEFAULT_STATE_LIMIT)
}

pub fn label_states_with_limit(cfg: &GameConfig, variant: Variant, limit: u128) -> Result<StateTable> {
    check_limit(cfg, limit)?;
    let indexer = ShapeIndexer::new(cfg);
    let total = indexer.len();
    let mut win = vec![false; total];
    let mut rows = vec![0u32; cfg.height() as usize];
    for rank in (0..total).rev() {
        indexer.unrank_into(rank, &mut rows);
        win[rank] = evaluate(&indexer, cfg, variant, &rows, rank, &win);
    }
    Ok(StateTable { config: *cfg, variant, indexer, win })
}

pub fn winner_from_start(cfg: &GameConfig, variant: Variant) -> Result<Player> {
    let table = label_states(cfg, variant)?;
    Ok(table_winner(&table))
}

pub fn table_winner(table: &StateTable) -> Player {
    match table.label(&Shape::empty(table.config())) {
        Label::Win => Player::One,
        Label::Loss => Player::Two,
    }
}

/// Number of next-player-loss shapes out of all shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LossCensus {
    pub config: GameConfig,
    pub variant: Variant,
    pub loss_count: u64,
    pub total_states: u64,
}

impl LossCensus {
    pub fn fraction(&self) -> f64 {
        self.loss_count as f64 / self.total_states as f64
    }

    pub fn csv_header() -> &'static str {
        "a,b,variant,loss_count,total,fraction"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{:.4}",
            self.config.a(),
            self.config.b(),
            self.variant,
            self.loss_count,
            self.total_states,
            self.fraction()
        )
    }
}

pub fn count_loss_states(cfg: &GameConfig, variant: Variant) -> Result<LossCensus> {
    let table = label_states(cfg, variant)?;
    Ok(census_of(&table))
}

pub fn census_of(table: &StateTable) -> LossCensus {
    LossCensus {
        config: table.config,
        variant: table.variant,
        loss_count: table.loss_count(),
        total_states: table.len() as u64,
    }
}

/// A winning choice for the player to move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BestMove {
    Cell(Cell),
    /// Achievement only: play the new maximum or minimum that completes a pattern.
    CompleteNow,
}

/// All winning moves from `s`, ordered by successor rank (completing move first).
/// Empty exactly when `s` is a loss for the mover.
pub fn best_moves(s: &Shape, table: &StateTable) -> Vec<BestMove> {
    let cfg = table.config();
    let mut out = Vec::new();
    if table.variant == Variant::Achievement {
        let (max, min) = s.completing_moves(cfg);
        if max || min {
            out.push(BestMove::CompleteNow);
        }
    }
    let Ok(cells) = legal_cells(s, cfg) else {
        return out;
    };
    let rank = table.rank(s);
    let mut winning: Vec<(usize, Cell)> = cells
        .into_iter()
        .map(|cell| (table.indexer.successor_rank(s.rows(), rank, cell.c, cell.r), cell))
        .filter(|(next, _)| !table.win[*next])
        .collect();
    winning.sort();
    out.extend(winning.into_iter().map(|(_, cell)| BestMove::Cell(cell)));
    out
}

/// Legal cells of `s` with the rank of the shape each one leads to.
pub fn successors(s: &Shape, table: &StateTable) -> Vec<(usize, Cell)> {
    let Ok(cells) = legal_cells(s, table.config()) else {
        return Vec::new();
    };
    let rank = table.rank(s);
    cells
        .into_iter()
        .map(|cell| (table.indexer.successor_rank(s.rows(), rank, cell.c, cell.r), cell))
        .collect()
}

/// Longest possible game: every move shades exactly one new cell, then the
/// next player is forced off the board.
pub fn max_game_length(cfg: &GameConfig, limit: u128) -> Result<u64> {
    check_limit(cfg, limit)?;
    let indexer = ShapeIndexer::new(cfg);
    let total = indexer.len();
    let mut longest = vec![0u64; total];
    let mut rows = vec![0u32; cfg.height() as usize];
    for rank in (0..total).rev() {
        indexer.unrank_into(rank, &mut rows);
        let mut best = 0;
        if rows[0] == 0 {
            best = 1 + longest[indexer.successor_rank(&rows, rank, 1, 1)];
        } else {
            for_each_frontier_cell(&rows, cfg.width(), |c, r| {
                best = best.max(1 + longest[indexer.successor_rank(&rows, rank, c, r)]);
            });
        }
        longest[rank] = best;
    }
    Ok(longest[0] + 1)
}

/// Shortest possible game: reach a shape with an off-board move as quickly
/// as possible, then take it.
pub fn min_game_length(cfg: &GameConfig, limit: u128) -> Result<u64> {
    check_limit(cfg, limit)?;
    let indexer = ShapeIndexer::new(cfg);
    let total = indexer.len();
    let mut depth = vec![u64::MAX; total];
    depth[0] = 0;
    let mut best = u64::MAX;
    let mut rows = vec![0u32; cfg.height() as usize];
    // Increasing rank is a topological order of the move graph.
    for rank in 0..total {
        if depth[rank] == u64::MAX {
            continue;
        }
        indexer.unrank_into(rank, &mut rows);
        let s = Shape::from_rows_unchecked(rows.clone());
        let (max, min) = s.completing_moves(cfg);
        if max || min || s.is_full(cfg) {
            best = best.min(depth[rank] + 1);
        }
        let d = depth[rank] + 1;
        if rows[0] == 0 {
            let next = indexer.successor_rank(&rows, rank, 1, 1);
            depth[next] = depth[next].min(d);
        } else {
            for_each_frontier_cell(&rows, cfg.width(), |c, r| {
                let next = indexer.successor_rank(&rows, rank, c, r);
                depth[next] = depth[next].min(d);
            });
        }
    }
    Ok(best)
}
