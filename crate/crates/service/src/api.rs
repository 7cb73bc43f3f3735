use std::sync::Arc;

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::Json;
use esgame_core::{
    best_moves, census_of, engine_reply, table_winner, BestMove, Cell, GameConfig, MoveRecord, PlayPolicy, Player,
    Session, Status, Variant,
};
use serde::{Deserialize, Serialize};

use crate::error::ApiError;
use crate::store::{EngineKind, Game};
use crate::AppState;

#[derive(Debug, Deserialize)]
pub struct CreateGame {
    pub a: u32,
    pub b: u32,
    #[serde(default = "default_variant")]
    pub variant: Variant,
    #[serde(default)]
    pub engine: Option<String>,
    #[serde(default)]
    pub engine_player: Option<u8>,
}

fn default_variant() -> Variant {
    Variant::Avoidance
}

#[derive(Debug, Deserialize)]
pub struct MoveRequest {
    pub digit: u32,
}

#[derive(Debug, Deserialize)]
pub struct SolveQuery {
    pub a: u32,
    pub b: u32,
    #[serde(default = "default_variant")]
    pub variant: Variant,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct StatusView {
    pub state: String,
    pub winner: Option<u8>,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MoveView {
    pub player: u8,
    pub digit: u32,
    /// `[c, r]`; off the board for a game-ending move.
    pub cell: [u32; 2],
}

impl From<MoveRecord> for MoveView {
    fn from(m: MoveRecord) -> Self {
        MoveView { player: m.player.number(), digit: m.digit, cell: [m.cell.c, m.cell.r] }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct EngineView {
    pub kind: String,
    pub player: u8,
}

/// Full client-side view of one game.
///
/// `legal_digits[i]` realizes `legal_cells[i]`; any digits past the end of
/// `legal_cells` end the game on the spot.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GameResource {
    pub id: String,
    pub a: u32,
    pub b: u32,
    pub variant: Variant,
    pub to_move: u8,
    /// The permutation built so far.
    pub transcript: Vec<u32>,
    /// Digits in the order they were played.
    pub digits: Vec<u32>,
    pub shape: Vec<u32>,
    pub legal_digits: Vec<u32>,
    pub legal_cells: Vec<[u32; 2]>,
    pub status: StatusView,
    pub engine: Option<EngineView>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moves_applied: Option<Vec<MoveView>>,
}

impl GameResource {
    pub fn of(game: &Game) -> Self {
        let sess = &game.session;
        let cfg = sess.config();
        let pairs = sess.legal_digits();
        let mut legal_digits: Vec<u32> = pairs.iter().map(|&(_, m)| m).collect();
        legal_digits.extend(ending_digits(sess));
        let status = match sess.status() {
            Status::InProgress => StatusView { state: "in_progress".into(), winner: None, reason: None },
            Status::Finished { winner, reason } => StatusView {
                state: "finished".into(),
                winner: Some(winner.number()),
                reason: Some(reason.to_string()),
            },
        };
        GameResource {
            id: sess.id().to_string(),
            a: cfg.a(),
            b: cfg.b(),
            variant: sess.variant(),
            to_move: sess.to_move().number(),
            transcript: sess.transcript().values().to_vec(),
            digits: sess.digits(),
            shape: sess.shape().rows().to_vec(),
            legal_digits,
            legal_cells: pairs.iter().map(|(c, _)| [c.c, c.r]).collect(),
            status,
            engine: game.engine.map(|(kind, player)| EngineView {
                kind: match kind {
                    EngineKind::Strategy => "strategy".into(),
                    EngineKind::Solver => "solver".into(),
                },
                player: player.number(),
            }),
            moves_applied: None,
        }
    }
}

/// Digits that finish the game and are worth offering: every digit on a
/// full board, the completing extremes in the achievement game.
fn ending_digits(sess: &Session) -> Vec<u32> {
    if sess.is_finished() {
        return Vec::new();
    }
    let n = sess.transcript().len() as u32;
    let cfg = sess.config();
    if sess.shape().is_full(cfg) {
        return (1..=n + 1).collect();
    }
    if sess.variant() == Variant::Achievement {
        let (max, min) = sess.shape().completing_moves(cfg);
        let mut out = Vec::new();
        if min {
            out.push(1);
        }
        if max && n + 1 != 1 {
            out.push(n + 1);
        }
        return out;
    }
    Vec::new()
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct HintResponse {
    pub cells: Vec<[u32; 2]>,
    pub digits: Vec<u32>,
    pub losing_position: bool,
    /// Achievement: a completing digit wins immediately.
    pub complete_now: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SolveResponse {
    pub a: u32,
    pub b: u32,
    pub variant: Variant,
    pub winner: String,
    pub states: u64,
    pub loss_states: u64,
}

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> Result<T, ApiError> {
    payload.map(|Json(v)| v).map_err(|e| ApiError::BadRequest(e.body_text()))
}

fn parse_engine(req: &CreateGame) -> Result<Option<(EngineKind, Player)>, ApiError> {
    let kind = match req.engine.as_deref().unwrap_or("none") {
        "none" => return Ok(None),
        "strategy" => EngineKind::Strategy,
        "solver" => EngineKind::Solver,
        other => return Err(ApiError::BadRequest(format!("unknown engine {other:?}"))),
    };
    let player = match req.engine_player.unwrap_or(2) {
        1 => Player::One,
        2 => Player::Two,
        n => return Err(ApiError::BadRequest(format!("engine_player must be 1 or 2, got {n}"))),
    };
    Ok(Some((kind, player)))
}

/// Lets the engine move while it is on turn.
async fn run_engine(state: &AppState, game: &mut Game, applied: &mut Vec<MoveView>) -> Result<(), ApiError> {
    let Some((kind, seat)) = game.engine else { return Ok(()) };
    while !game.session.is_finished() && game.session.to_move() == seat {
        let cfg = *game.session.config();
        let variant = game.session.variant();
        let (mut policy, table) = match kind {
            EngineKind::Solver => (PlayPolicy::Solver, Some(state.tables.get(cfg, variant).await?)),
            // The strategy falls back to the solver off its own lines, when a table is affordable.
            EngineKind::Strategy if state.tables.fits(&cfg) => {
                (PlayPolicy::Strategy, Some(state.tables.get(cfg, variant).await?))
            }
            EngineKind::Strategy => (PlayPolicy::Strategy, None),
        };
        let rec = engine_reply(&mut game.session, &mut policy, table.as_deref())?;
        applied.push(rec.into());
    }
    Ok(())
}

pub async fn create_game(
    State(state): State<Arc<AppState>>,
    payload: Result<Json<CreateGame>, JsonRejection>,
) -> Result<(StatusCode, Json<GameResource>), ApiError> {
    let req = body(payload)?;
    let cfg = GameConfig::new(req.a, req.b)?;
    let engine = parse_engine(&req)?;
    if let Some((kind, _)) = engine {
        match kind {
            EngineKind::Strategy => PlayPolicy::Strategy.check(&cfg, req.variant, None)?,
            EngineKind::Solver if !state.tables.fits(&cfg) => {
                return Err(ApiError::TooLarge(format!(
                    "a={} b={} is too large for the solver engine",
                    cfg.a(),
                    cfg.b()
                )))
            }
            EngineKind::Solver => {}
        }
    }
    let mut game = Game { session: Session::new(cfg, req.variant), engine };
    let mut applied = Vec::new();
    run_engine(&state, &mut game, &mut applied).await?;
    let (_, handle) = state.games.insert(game);
    let game = handle.lock().await;
    let mut resource = GameResource::of(&game);
    resource.moves_applied = Some(applied);
    Ok((StatusCode::CREATED, Json(resource)))
}

pub async fn get_game(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<GameResource>, ApiError> {
    let handle = state.games.get(&id)?;
    let game = handle.lock().await;
    Ok(Json(GameResource::of(&game)))
}

pub async fn play_move(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    payload: Result<Json<MoveRequest>, JsonRejection>,
) -> Result<Json<GameResource>, ApiError> {
    let handle = state.games.get(&id)?;
    let req = body(payload)?;
    let mut game = handle.lock().await;
    if game.session.is_finished() {
        return Err(ApiError::Conflict("the game is already over".into()));
    }
    if let Some((_, seat)) = game.engine {
        if game.session.to_move() == seat {
            return Err(ApiError::Conflict("waiting for the engine to move".into()));
        }
    }
    let mut applied = vec![MoveView::from(game.session.play_digit(req.digit)?)];
    run_engine(&state, &mut game, &mut applied).await?;
    let mut resource = GameResource::of(&game);
    resource.moves_applied = Some(applied);
    Ok(Json(resource))
}

pub async fn hint(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<HintResponse>, ApiError> {
    let handle = state.games.get(&id)?;
    let game = handle.lock().await;
    let sess = &game.session;
    if sess.is_finished() {
        return Err(ApiError::Conflict("the game is already over".into()));
    }
    let table = state.tables.get(*sess.config(), sess.variant()).await?;
    let legal = sess.legal_digits();
    let digit_of = |cell: Cell| legal.iter().find(|(c, _)| *c == cell).map(|&(_, m)| m);
    let mut out = HintResponse { cells: Vec::new(), digits: Vec::new(), losing_position: false, complete_now: false };
    for mv in best_moves(sess.shape(), &table) {
        match mv {
            BestMove::CompleteNow => {
                out.complete_now = true;
                let (_, min) = sess.shape().completing_moves(sess.config());
                out.digits.push(if min { 1 } else { sess.transcript().len() as u32 + 1 });
            }
            BestMove::Cell(cell) => {
                out.cells.push([cell.c, cell.r]);
                out.digits.extend(digit_of(cell));
            }
        }
    }
    out.losing_position = out.cells.is_empty() && !out.complete_now;
    Ok(Json(out))
}

pub async fn solve(
    State(state): State<Arc<AppState>>,
    query: Result<Query<SolveQuery>, QueryRejection>,
) -> Result<Json<SolveResponse>, ApiError> {
    let Query(q) = query.map_err(|e| ApiError::BadRequest(e.body_text()))?;
    let cfg = GameConfig::new(q.a, q.b)?;
    let table = state.tables.get(cfg, q.variant).await?;
    let census = census_of(&table);
    Ok(Json(SolveResponse {
        a: cfg.a(),
        b: cfg.b(),
        variant: q.variant,
        winner: table_winner(&table).to_string(),
        states: census.total_states,
        loss_states: census.loss_count,
    }))
}

pub async fn healthz() -> &'static str {
    "ok"
}
