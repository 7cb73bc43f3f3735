//! Game sessions, engine opponents and simulation drivers.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{
    apply_unchecked, cell_of_append_with, legal_cells, prefix_pairs, realize_digit_with,
    shape_from_pairs, Cell, GameConfig, Permutation, PrefixPair, Shape,
};
use crate::error::GameError;
use crate::solver::{best_moves, label_states, successors, BestMove, Player, StateTable, Variant};
use crate::strategy::{
    achievement_choice, avoidance_move, strategy_supported, verify_strategy, AchievementChoice,
    StrategyError, StrategyReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("{policy} policy unavailable: {reason}")]
    PolicyUnavailable { policy: PolicyKind, reason: String },

    #[error("scripted policy ran out of moves")]
    ScriptExhausted,

    #[error(transparent)]
    Game(#[from] GameError),

    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Process-unique session token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SessionId(u64);

impl SessionId {
    pub fn fresh() -> Self {
        SessionId(NEXT_ID.fetch_add(1, Ordering::Relaxed))
    }
}

impl fmt::Display for SessionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{:x}", self.0)
    }
}

impl FromStr for SessionId {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, GameError> {
        s.strip_prefix('g')
            .and_then(|hex| u64::from_str_radix(hex, 16).ok())
            .map(SessionId)
            .ok_or_else(|| GameError::Parse(format!("bad session id {s:?}")))
    }
}

/// Which pattern ended the game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EndReason {
    #[serde(rename = "I_a")]
    Increasing,
    #[serde(rename = "J_b")]
    Decreasing,
}

impl fmt::Display for EndReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EndReason::Increasing => "I_a",
            EndReason::Decreasing => "J_b",
        })
    }
}

impl FromStr for EndReason {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, GameError> {
        match s {
            "I_a" => Ok(EndReason::Increasing),
            "J_b" => Ok(EndReason::Decreasing),
            _ => Err(GameError::Parse(format!("unknown end reason {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "snake_case")]
pub enum Status {
    InProgress,
    Finished { winner: Player, reason: EndReason },
}

/// One appended digit and the cell it shaded (off the board for the final move).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub player: Player,
    pub digit: u32,
    pub cell: Cell,
}

/// A game in progress: the digit transcript and the staircase it reaches.
#[derive(Debug, Clone)]
pub struct Session {
    id: SessionId,
    config: GameConfig,
    variant: Variant,
    transcript: Permutation,
    pairs: Vec<PrefixPair>,
    shape: Shape,
    moves: Vec<MoveRecord>,
    to_move: Player,
    status: Status,
}

pub fn new_session(cfg: GameConfig, variant: Variant) -> Session {
    Session::new(cfg, variant)
}

impl Session {
    pub fn new(config: GameConfig, variant: Variant) -> Self {
        Session {
            id: SessionId::fresh(),
            config,
            variant,
            transcript: Permutation::empty(),
            pairs: Vec::new(),
            shape: Shape::empty(&config),
            moves: Vec::new(),
            to_move: Player::One,
            status: Status::InProgress,
        }
    }

    /// Plays `digits` in order from an empty board.
    pub fn replay(config: GameConfig, variant: Variant, digits: &[u32]) -> Result<Self, GameError> {
        let mut s = Session::new(config, variant);
        for &m in digits {
            s.play_digit(m)?;
        }
        Ok(s)
    }

    pub fn id(&self) -> SessionId {
        self.id
    }

    pub fn config(&self) -> &GameConfig {
        &self.config
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn transcript(&self) -> &Permutation {
        &self.transcript
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn moves(&self) -> &[MoveRecord] {
        &self.moves
    }

    /// Digits in the order they were played.
    pub fn digits(&self) -> Vec<u32> {
        self.moves.iter().map(|m| m.digit).collect()
    }

    pub fn to_move(&self) -> Player {
        self.to_move
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_finished(&self) -> bool {
        matches!(self.status, Status::Finished { .. })
    }

    pub fn winner(&self) -> Option<Player> {
        match self.status {
            Status::Finished { winner, .. } => Some(winner),
            Status::InProgress => None,
        }
    }

    /// Legal cells for the player to move; empty once the game is over or
    /// the board is full.
    pub fn legal_cells(&self) -> Vec<Cell> {
        if self.is_finished() {
            return Vec::new();
        }
        legal_cells(&self.shape, &self.config).unwrap_or_default()
    }

    /// Each legal cell paired with the smallest digit that shades it.
    pub fn legal_digits(&self) -> Vec<(Cell, u32)> {
        self.legal_cells()
            .into_iter()
            .filter_map(|cell| self.digit_for(cell).map(|m| (cell, m)))
            .collect()
    }

    fn digit_for(&self, cell: Cell) -> Option<u32> {
        realize_digit_with(&self.transcript, &self.pairs, cell)
    }

    /// The cell that appending `m` would shade, possibly off the board.
    pub fn cell_of(&self, m: u32) -> Result<Cell, GameError> {
        cell_of_append_with(&self.transcript, &self.pairs, m)
    }

    /// Appends `m`, bumping existing digits `>= m`.
    pub fn play_digit(&mut self, m: u32) -> Result<MoveRecord, GameError> {
        if self.is_finished() {
            return Err(GameError::GameOver);
        }
        let cell = self.cell_of(m)?;
        let mover = self.to_move;
        self.transcript.append(m)?;
        self.pairs.push(PrefixPair { inc: cell.c, dec: cell.r });
        let record = MoveRecord { player: mover, digit: m, cell };
        self.moves.push(record);
        let reason = if cell.c >= self.config.a() {
            Some(EndReason::Increasing)
        } else if cell.r >= self.config.b() {
            Some(EndReason::Decreasing)
        } else {
            None
        };
        match reason {
            Some(reason) => {
                let winner = match self.variant {
                    Variant::Avoidance => mover.other(),
                    Variant::Achievement => mover,
                };
                self.status = Status::Finished { winner, reason };
            }
            None => {
                self.shape = apply_unchecked(&self.shape, cell);
                self.to_move = mover.other();
            }
        }
        debug_assert!(self.is_finished() || self.coherent());
        Ok(record)
    }

    /// Shades `cell` using the smallest digit that realizes it.
    pub fn play_cell(&mut self, cell: Cell) -> Result<MoveRecord, GameError> {
        if self.is_finished() {
            return Err(GameError::GameOver);
        }
        let legal = legal_cells(&self.shape, &self.config)?;
        if !legal.contains(&cell) {
            return Err(GameError::IllegalCell { cell, legal: crate::board::format_cells(&legal) });
        }
        let m = self.digit_for(cell).expect("every legal cell is realized by some digit");
        self.play_digit(m)
    }

    /// Shape recomputed from the transcript matches the tracked shape.
    pub fn coherent(&self) -> bool {
        prefix_pairs(&self.transcript) == self.pairs
            && shape_from_pairs(&self.pairs, &self.config).is_ok_and(|s| s == self.shape)
    }

    pub fn log(&self) -> Option<GameLog> {
        let Status::Finished { winner, reason } = self.status else {
            return None;
        };
        Some(GameLog {
            config: self.config,
            variant: self.variant,
            moves: self.digits(),
            winner,
            reason,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolicyKind {
    Strategy,
    Solver,
    Random,
    Script,
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolicyKind::Strategy => "strategy",
            PolicyKind::Solver => "solver",
            PolicyKind::Random => "random",
            PolicyKind::Script => "script",
        })
    }
}

impl FromStr for PolicyKind {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, GameError> {
        match s.to_ascii_lowercase().as_str() {
            "strategy" => Ok(PolicyKind::Strategy),
            "solver" => Ok(PolicyKind::Solver),
            "random" => Ok(PolicyKind::Random),
            "script" | "fixed-script" => Ok(PolicyKind::Script),
            _ => Err(GameError::Parse(format!("unknown policy {s:?}"))),
        }
    }
}

/// How an engine picks its moves.
#[derive(Debug, Clone)]
pub enum PlayPolicy {
    /// The explicit strategy; off-strategy positions fall back to the solver
    /// (if a table is supplied) and then to the first legal cell.
    Strategy,
    /// Winning moves from a solved table, smallest successor rank first.
    Solver,
    /// Uniform over legal cells.
    Random(Box<ChaCha8Rng>),
    /// Plays the given digits in order.
    Script(VecDeque<u32>),
}

impl PlayPolicy {
    pub fn random(seed: u64) -> Self {
        PlayPolicy::Random(Box::new(ChaCha8Rng::seed_from_u64(seed)))
    }

    pub fn script(digits: impl IntoIterator<Item = u32>) -> Self {
        PlayPolicy::Script(digits.into_iter().collect())
    }

    pub fn kind(&self) -> PolicyKind {
        match self {
            PlayPolicy::Strategy => PolicyKind::Strategy,
            PlayPolicy::Solver => PolicyKind::Solver,
            PlayPolicy::Random(_) => PolicyKind::Random,
            PlayPolicy::Script(_) => PolicyKind::Script,
        }
    }

    /// Fails if this policy cannot play `cfg`/`variant` with the given table.
    pub fn check(&self, cfg: &GameConfig, variant: Variant, table: Option<&StateTable>) -> Result<(), EngineError> {
        let unavailable = |reason: String| EngineError::PolicyUnavailable { policy: self.kind(), reason };
        match self {
            PlayPolicy::Strategy if !strategy_supported(cfg, variant) => Err(unavailable(format!(
                "no strategy for a={} b={} {variant}",
                cfg.a(),
                cfg.b()
            ))),
            PlayPolicy::Solver => match table {
                None => Err(unavailable("no solved table".into())),
                Some(t) if t.config() != cfg || t.variant() != variant => {
                    Err(unavailable("table was solved for a different game".into()))
                }
                Some(_) => Ok(()),
            },
            _ => Ok(()),
        }
    }
}

/// What the engine wants to do, before it becomes a digit.
enum Pick {
    Cell(Cell),
    CompleteMax,
    CompleteMin,
}

/// Chooses and plays one move for the player to move.
pub fn engine_reply(
    sess: &mut Session,
    policy: &mut PlayPolicy,
    table: Option<&StateTable>,
) -> Result<MoveRecord, EngineError> {
    if sess.is_finished() {
        return Err(GameError::GameOver.into());
    }
    policy.check(sess.config(), sess.variant(), table)?;
    let cfg = *sess.config();
    let variant = sess.variant();
    let shape = sess.shape().clone();
    let n = sess.transcript().len() as u32;

    if let PlayPolicy::Script(queue) = policy {
        let m = queue.pop_front().ok_or(EngineError::ScriptExhausted)?;
        return Ok(sess.play_digit(m)?);
    }

    let (max, min) = shape.completing_moves(&cfg);
    let completion = if min {
        Some(Pick::CompleteMin)
    } else if max {
        Some(Pick::CompleteMax)
    } else {
        None
    };
    let pick = if shape.is_full(&cfg) && variant == Variant::Avoidance {
        // Every digit loses; a new maximum keeps the transcript simple.
        Pick::CompleteMax
    } else if shape.is_full(&cfg) {
        completion.unwrap_or(Pick::CompleteMax)
    } else {
        match policy {
            PlayPolicy::Strategy => strategy_pick(&shape, &cfg, variant, table),
            PlayPolicy::Solver => solver_pick(&shape, table.expect("checked above")),
            PlayPolicy::Random(rng) => {
                let cells = legal_cells(&shape, &cfg)?;
                Pick::Cell(*cells.choose(rng).expect("nonfull board has legal cells"))
            }
            PlayPolicy::Script(_) => unreachable!(),
        }
    };
    let record = match pick {
        Pick::Cell(cell) => sess.play_cell(cell)?,
        Pick::CompleteMax => sess.play_digit(n + 1)?,
        Pick::CompleteMin => sess.play_digit(1)?,
    };
    Ok(record)
}

fn strategy_pick(shape: &Shape, cfg: &GameConfig, variant: Variant, table: Option<&StateTable>) -> Pick {
    let chosen = match variant {
        Variant::Avoidance => avoidance_move(shape, cfg).map(Pick::Cell),
        Variant::Achievement => achievement_choice(shape, cfg).map(|c| match c {
            AchievementChoice::Cell(cell) => Pick::Cell(cell),
            AchievementChoice::CompleteMax => Pick::CompleteMax,
            AchievementChoice::CompleteMin => Pick::CompleteMin,
        }),
    };
    match chosen {
        Ok(Pick::Cell(cell)) if !crate::board::is_legal(shape, cell, cfg) => {
            log::warn!("strategy proposed illegal cell {cell} at {shape}");
        }
        Ok(pick) => return pick,
        Err(e) => log::debug!("strategy fallback at {shape}: {e}"),
    }
    match table {
        Some(t) => solver_pick(shape, t),
        None => Pick::Cell(legal_cells(shape, cfg).expect("nonfull board")[0]),
    }
}

/// First winning move; from a lost position, the legal cell with the
/// smallest successor rank.
fn solver_pick(shape: &Shape, table: &StateTable) -> Pick {
    let cfg = table.config();
    match best_moves(shape, table).first() {
        Some(BestMove::CompleteNow) => {
            if shape.completing_moves(cfg).1 {
                Pick::CompleteMin
            } else {
                Pick::CompleteMax
            }
        }
        Some(BestMove::Cell(cell)) => Pick::Cell(*cell),
        None => {
            let mut next = successors(shape, table);
            next.sort();
            Pick::Cell(next[0].1)
        }
    }
}

/// A finished game in the one-line log format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameLog {
    pub config: GameConfig,
    pub variant: Variant,
    pub moves: Vec<u32>,
    pub winner: Player,
    pub reason: EndReason,
}

impl GameLog {
    pub fn length(&self) -> usize {
        self.moves.len()
    }
}

impl fmt::Display for GameLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let moves: Vec<String> = self.moves.iter().map(u32::to_string).collect();
        write!(
            f,
            "a={} b={} variant={} moves={} winner={} reason={} length={}",
            self.config.a(),
            self.config.b(),
            self.variant,
            moves.join(","),
            self.winner.number(),
            self.reason,
            self.length()
        )
    }
}

impl FromStr for GameLog {
    type Err = GameError;

    /// Parses a log line and checks it by replaying the moves.
    fn from_str(line: &str) -> Result<Self, GameError> {
        let mut fields: BTreeMap<&str, &str> = BTreeMap::new();
        for token in line.split_whitespace() {
            let (k, v) = token
                .split_once('=')
                .ok_or_else(|| GameError::Parse(format!("expected key=value, got {token:?}")))?;
            fields.insert(k, v);
        }
        let get = |k: &str| fields.get(k).copied().ok_or_else(|| GameError::Parse(format!("missing {k}")));
        let num = |k: &str| -> Result<u32, GameError> {
            get(k)?.parse().map_err(|_| GameError::Parse(format!("bad {k}")))
        };
        let config = GameConfig::new(num("a")?, num("b")?)?;
        let variant: Variant = get("variant")?.parse()?;
        let moves = get("moves")?
            .split(',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| GameError::Parse(format!("bad move {t:?}"))))
            .collect::<Result<Vec<u32>, _>>()?;
        let winner = match num("winner")? {
            1 => Player::One,
            2 => Player::Two,
            w => return Err(GameError::Parse(format!("bad winner {w}"))),
        };
        let reason: EndReason = get("reason")?.parse()?;
        if let Ok(len) = num("length") {
            if len as usize != moves.len() {
                return Err(GameError::Parse(format!("length {len} but {} moves", moves.len())));
            }
        }
        let log = GameLog { config, variant, moves, winner, reason };
        let replayed = Session::replay(config, variant, &log.moves)?.log();
        if replayed.as_ref() != Some(&log) {
            return Err(GameError::Parse("moves do not produce the logged result".into()));
        }
        Ok(log)
    }
}

/// Plays one game to the end, `p1` moving first.
pub fn play_game(
    cfg: GameConfig,
    variant: Variant,
    p1: &mut PlayPolicy,
    p2: &mut PlayPolicy,
    table: Option<&StateTable>,
) -> Result<GameLog, EngineError> {
    let mut sess = Session::new(cfg, variant);
    while !sess.is_finished() {
        let policy = match sess.to_move() {
            Player::One => &mut *p1,
            Player::Two => &mut *p2,
        };
        engine_reply(&mut sess, policy, table)?;
    }
    Ok(sess.log().expect("finished"))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulationStats {
    pub games: u64,
    pub min_length: Option<u64>,
    pub max_length: Option<u64>,
    /// Game length → number of games.
    pub histogram: BTreeMap<u64, u64>,
    pub player1_wins: u64,
    pub player2_wins: u64,
}

impl SimulationStats {
    pub fn record(&mut self, log: &GameLog) {
        let len = log.length() as u64;
        self.games += 1;
        self.min_length = Some(self.min_length.map_or(len, |m| m.min(len)));
        self.max_length = Some(self.max_length.map_or(len, |m| m.max(len)));
        *self.histogram.entry(len).or_default() += 1;
        match log.winner {
            Player::One => self.player1_wins += 1,
            Player::Two => self.player2_wins += 1,
        }
    }
}

/// Plays `trials` games; policies keep their state (e.g. random streams)
/// from one game to the next.
pub fn simulate(
    cfg: GameConfig,
    variant: Variant,
    p1: &mut PlayPolicy,
    p2: &mut PlayPolicy,
    trials: u64,
    table: Option<&StateTable>,
) -> Result<SimulationStats, EngineError> {
    let mut stats = SimulationStats::default();
    for _ in 0..trials {
        let log = play_game(cfg, variant, p1, p2, table)?;
        stats.record(&log);
    }
    Ok(stats)
}

/// Solves the game and certifies the player-1 strategy against it.
pub fn exhaustive_verify(cfg: &GameConfig, variant: Variant) -> Result<StrategyReport, EngineError> {
    if !strategy_supported(cfg, variant) {
        return Err(StrategyError::NoStrategy { a: cfg.a(), b: cfg.b(), variant }.into());
    }
    let table = label_states(cfg, variant)?;
    Ok(verify_strategy(cfg, variant, &table)?)
}
