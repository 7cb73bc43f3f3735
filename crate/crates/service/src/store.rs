use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex as StdMutex, RwLock};

use esgame_core::{label_states_with_limit, GameConfig, Player, Session, SessionId, StateTable, Variant};
use lru::LruCache;
use tokio::sync::{Mutex, OnceCell};

use crate::error::ApiError;

/// Which engine, if any, answers the human.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineKind {
    Strategy,
    Solver,
}

/// A session plus the engine seat configured for it.
#[derive(Debug)]
pub struct Game {
    pub session: Session,
    pub engine: Option<(EngineKind, Player)>,
}

pub type GameHandle = Arc<Mutex<Game>>;

/// In-memory sessions with least-recently-used eviction.
pub struct GameStore {
    games: StdMutex<LruCache<SessionId, GameHandle>>,
}

impl GameStore {
    pub fn new(capacity: usize) -> Self {
        let cap = NonZeroUsize::new(capacity).unwrap_or(NonZeroUsize::MIN);
        GameStore { games: StdMutex::new(LruCache::new(cap)) }
    }

    pub fn insert(&self, game: Game) -> (SessionId, GameHandle) {
        let id = game.session.id();
        let handle = Arc::new(Mutex::new(game));
        let mut games = self.games.lock().expect("store lock poisoned");
        if let Some((evicted, _)) = games.push(id, handle.clone()) {
            if evicted != id {
                log::debug!("evicted game {evicted}");
            }
        }
        (id, handle)
    }

    pub fn get(&self, id: &str) -> Result<GameHandle, ApiError> {
        let key: SessionId = id.parse().map_err(|_| ApiError::NotFound(id.to_string()))?;
        let mut games = self.games.lock().expect("store lock poisoned");
        games.get(&key).cloned().ok_or_else(|| ApiError::NotFound(id.to_string()))
    }

    pub fn len(&self) -> usize {
        self.games.lock().expect("store lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

type TableKey = (GameConfig, Variant);

/// Solved tables, built on first use and shared read-only afterwards.
pub struct TableCache {
    limit: u128,
    tables: RwLock<HashMap<TableKey, Arc<OnceCell<Arc<StateTable>>>>>,
}

impl TableCache {
    pub fn new(limit: u128) -> Self {
        TableCache { limit, tables: RwLock::new(HashMap::new()) }
    }

    pub fn limit(&self) -> u128 {
        self.limit
    }

    pub fn fits(&self, cfg: &GameConfig) -> bool {
        cfg.state_count() <= self.limit
    }

    fn cell(&self, key: TableKey) -> Arc<OnceCell<Arc<StateTable>>> {
        if let Some(cell) = self.tables.read().expect("table lock poisoned").get(&key) {
            return cell.clone();
        }
        self.tables.write().expect("table lock poisoned").entry(key).or_default().clone()
    }

    /// The table for `cfg`/`variant`, solving it on a blocking thread if needed.
    pub async fn get(&self, cfg: GameConfig, variant: Variant) -> Result<Arc<StateTable>, ApiError> {
        if !self.fits(&cfg) {
            return Err(ApiError::TooLarge(format!(
                "a={} b={} has {} states, above the service limit of {}",
                cfg.a(),
                cfg.b(),
                cfg.state_count(),
                self.limit
            )));
        }
        let limit = self.limit;
        let cell = self.cell((cfg, variant));
        let table = cell
            .get_or_try_init(|| async move {
                let built = tokio::task::spawn_blocking(move || label_states_with_limit(&cfg, variant, limit))
                    .await
                    .map_err(|e| ApiError::Internal(e.to_string()))??;
                Ok::<_, ApiError>(Arc::new(built))
            })
            .await?;
        Ok(table.clone())
    }
}
