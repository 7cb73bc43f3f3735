//! HTTP/JSON play API: game sessions, engine replies, hints and solver queries.
//!
//! Sessions live in memory with LRU eviction. Each game is guarded by its own
//! lock so moves on one game are serialized while different games proceed
//! in parallel. Solved tables are built once per `(a, b, variant)` and shared.

pub mod api;
pub mod error;
pub mod store;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::http::HeaderValue;
use axum::routing::{get, post};
use axum::Router;
use thiserror::Error;
use tower_http::cors::{AllowOrigin, CorsLayer};
use tower_http::services::ServeDir;

pub use api::{GameResource, HintResponse, MoveView, SolveResponse, StatusView};
pub use error::ApiError;
pub use store::{EngineKind, Game, GameStore, TableCache};

/// Largest table the service will solve on request.
pub const DEFAULT_SERVICE_STATE_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    /// Prefix for every API route, e.g. `/api`. Empty means the root.
    pub base_path: String,
    /// Maximum number of live sessions before the least recently used is dropped.
    pub capacity: usize,
    pub state_limit: u128,
    /// Directory served for any path outside the API.
    pub static_dir: Option<PathBuf>,
    /// Allowed CORS origin; `None` allows any.
    pub cors_origin: Option<String>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            base_path: String::new(),
            capacity: 1024,
            state_limit: DEFAULT_SERVICE_STATE_LIMIT,
            static_dir: None,
            cors_origin: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("cannot bind {addr}: {source}")]
    Bind { addr: SocketAddr, source: std::io::Error },

    #[error("invalid base path {0:?}: must start with '/'")]
    BasePath(String),

    #[error("invalid CORS origin {0:?}")]
    CorsOrigin(String),

    #[error("server error: {0}")]
    Io(#[from] std::io::Error),
}

pub struct AppState {
    pub games: GameStore,
    pub tables: TableCache,
}

impl AppState {
    pub fn new(config: &ServiceConfig) -> Self {
        AppState { games: GameStore::new(config.capacity), tables: TableCache::new(config.state_limit) }
    }
}

fn normalized_base(base: &str) -> Result<String, ServiceError> {
    let trimmed = base.trim_end_matches('/');
    if trimmed.is_empty() {
        return Ok(String::new());
    }
    if !trimmed.starts_with('/') {
        return Err(ServiceError::BasePath(base.to_string()));
    }
    Ok(trimmed.to_string())
}

/// Builds the full application router.
pub fn router(config: &ServiceConfig) -> Result<Router, ServiceError> {
    let state = Arc::new(AppState::new(config));
    let api = Router::new()
        .route("/games", post(api::create_game))
        .route("/games/{id}", get(api::get_game))
        .route("/games/{id}/moves", post(api::play_move))
        .route("/games/{id}/hint", get(api::hint))
        .route("/solve", get(api::solve))
        .route("/healthz", get(api::healthz))
        .with_state(state);

    let base = normalized_base(&config.base_path)?;
    let mut app = if base.is_empty() { api } else { Router::new().nest(&base, api) };
    if let Some(dir) = &config.static_dir {
        app = app.fallback_service(ServeDir::new(dir).append_index_html_on_directories(true));
    }

    let cors = match &config.cors_origin {
        None => CorsLayer::permissive(),
        Some(origin) => {
            let value = HeaderValue::from_str(origin).map_err(|_| ServiceError::CorsOrigin(origin.clone()))?;
            CorsLayer::permissive().allow_origin(AllowOrigin::exact(value))
        }
    };
    Ok(app.layer(cors))
}

/// Binds `addr` and serves until the process is stopped.
pub async fn serve(config: ServiceConfig, addr: SocketAddr) -> Result<(), ServiceError> {
    let app = router(&config)?;
    let listener = tokio::net::TcpListener::bind(addr).await.map_err(|source| ServiceError::Bind { addr, source })?;
    log::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, app).await?;
    Ok(())
}
