//! Session-scoped HTTP interface for playing against the engine.
//!
//! Sessions live in memory. With a snapshot directory each session is also written to
//! `<dir>/<id>.json` after every change and reloaded at startup; nothing else is durable.

mod error;
mod session;

use std::collections::HashMap;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::HeaderValue;
use axum::routing::{get, post};
use axum::{Json, Router};
use mbtd_core::game::Player;
use mbtd_core::graph::{generate_family, graph_from_json_value, FAMILIES};
use mbtd_core::solver::SolverConfig;
use serde::{Deserialize, Serialize};
use tokio::sync::{Mutex, RwLock};
use tower_http::cors::{AllowOrigin, CorsLayer};
use uuid::Uuid;

pub use error::ApiError;
pub use session::{GameState, Session, Snapshot, ThreatView, WinningSetView};

#[derive(Clone, Debug)]
pub struct ServerOptions {
    pub port: u16,
    pub snapshot_dir: Option<PathBuf>,
    /// Origins allowed by CORS; empty means any origin.
    pub cors_origins: Vec<String>,
    pub solver: SolverConfig,
}

impl Default for ServerOptions {
    fn default() -> Self {
        let mut solver = SolverConfig::default();
        solver.time_budget = Duration::from_secs(30);
        ServerOptions { port: 8080, snapshot_dir: None, cors_origins: Vec::new(), solver }
    }
}

#[derive(Clone)]
pub struct AppState {
    sessions: Arc<RwLock<HashMap<Uuid, Arc<Mutex<Session>>>>>,
    snapshot_dir: Option<PathBuf>,
    solver: SolverConfig,
}

impl AppState {
    /// Creates the state, loading any snapshots found in the snapshot directory.
    pub fn new(opts: &ServerOptions) -> std::io::Result<Self> {
        let mut sessions = HashMap::new();
        if let Some(dir) = &opts.snapshot_dir {
            std::fs::create_dir_all(dir)?;
            for entry in std::fs::read_dir(dir)? {
                let path = entry?.path();
                if path.extension().is_some_and(|e| e == "json") {
                    let text = std::fs::read_to_string(&path)?;
                    let loaded = serde_json::from_str::<Snapshot>(&text)
                        .map_err(|e| e.to_string())
                        .and_then(|s| Session::from_snapshot(s, opts.solver.clone()).map_err(|e| e.to_string()));
                    match loaded {
                        Ok(s) => {
                            sessions.insert(s.id, Arc::new(Mutex::new(s)));
                        }
                        Err(e) => eprintln!("skipping snapshot {}: {e}", path.display()),
                    }
                }
            }
        }
        Ok(AppState { sessions: Arc::new(RwLock::new(sessions)), snapshot_dir: opts.snapshot_dir.clone(), solver: opts.solver.clone() })
    }

    async fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        let unknown = || ApiError::NotFound(format!("no session {id}"));
        let id = Uuid::parse_str(id).map_err(|_| unknown())?;
        self.sessions.read().await.get(&id).cloned().ok_or_else(unknown)
    }

    fn persist(&self, s: &Session) -> Result<(), ApiError> {
        if let Some(dir) = &self.snapshot_dir {
            let text = serde_json::to_string_pretty(&s.snapshot()).map_err(|e| ApiError::Internal(e.to_string()))?;
            std::fs::write(dir.join(format!("{}.json", s.id)), text).map_err(|e| ApiError::Internal(e.to_string()))?;
        }
        Ok(())
    }
}

#[derive(Debug, Deserialize)]
pub struct CreateGame {
    /// A graph in json-edges form; alternative to `generator`.
    pub graph: Option<serde_json::Value>,
    pub generator: Option<String>,
    #[serde(default)]
    pub params: Vec<usize>,
    pub human_role: Player,
    pub first: Player,
}

#[derive(Debug, Deserialize)]
pub struct MoveRequest {
    pub vertex: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Created {
    pub session_id: Uuid,
    pub state: GameState,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EngineMoveView {
    pub vertex: usize,
    pub label: String,
    /// Name of the strategy that chose the move.
    pub source: String,
    pub fallback: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EngineReply {
    #[serde(rename = "move")]
    pub chosen: EngineMoveView,
    pub state: GameState,
}

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> Result<T, ApiError> {
    payload.map(|Json(t)| t).map_err(|e| ApiError::BadRequest(e.body_text()))
}

async fn create_game(State(app): State<AppState>, payload: Result<Json<CreateGame>, JsonRejection>) -> Result<Json<Created>, ApiError> {
    let req = body(payload)?;
    let graph = match (req.graph, req.generator) {
        (Some(g), None) => graph_from_json_value(g),
        (None, Some(name)) => generate_family(&name, &req.params),
        _ => return Err(ApiError::BadRequest("give exactly one of `graph` and `generator`".into())),
    }
    .map_err(|e| ApiError::BadRequest(e.to_string()))?;
    graph.ensure_board_size().map_err(|e| ApiError::BadRequest(e.to_string()))?;
    let session = Session::new(graph, req.human_role, req.first, app.solver.clone());
    app.persist(&session)?;
    let out = Created { session_id: session.id, state: session.view() };
    app.sessions.write().await.insert(session.id, Arc::new(Mutex::new(session)));
    Ok(Json(out))
}

async fn get_game(State(app): State<AppState>, Path(id): Path<String>) -> Result<Json<GameState>, ApiError> {
    let s = app.session(&id).await?;
    let view = s.lock().await.view();
    Ok(Json(view))
}

async fn human_move(
    State(app): State<AppState>,
    Path(id): Path<String>,
    payload: Result<Json<MoveRequest>, JsonRejection>,
) -> Result<Json<GameState>, ApiError> {
    let s = app.session(&id).await?;
    let req = body(payload)?;
    let mut s = s.lock().await;
    s.human_move(req.vertex)?;
    app.persist(&s)?;
    Ok(Json(s.view()))
}

async fn engine_move(State(app): State<AppState>, Path(id): Path<String>) -> Result<Json<EngineReply>, ApiError> {
    let s = app.session(&id).await?;
    // The lock is held across the search so a session has one move in flight.
    let mut guard = s.lock().await;
    let snapshot = guard.clone();
    let m = tokio::task::spawn_blocking(move || snapshot.engine_choice())
        .await
        .map_err(|e| ApiError::Internal(e.to_string()))??;
    guard.apply_engine(&m)?;
    app.persist(&guard)?;
    let chosen = EngineMoveView { vertex: m.vertex, label: guard.game.graph.display_name(m.vertex), source: m.source, fallback: m.fallback };
    Ok(Json(EngineReply { chosen, state: guard.view() }))
}

async fn generators() -> Json<serde_json::Value> {
    Json(serde_json::to_value(FAMILIES).expect("catalog serializes"))
}

fn cors(origins: &[String]) -> CorsLayer {
    let allow = if origins.is_empty() {
        AllowOrigin::any()
    } else {
        AllowOrigin::list(origins.iter().filter_map(|o| HeaderValue::from_str(o).ok()))
    };
    CorsLayer::new().allow_origin(allow).allow_methods(tower_http::cors::Any).allow_headers(tower_http::cors::Any)
}

/// The service's routes.
pub fn router(state: AppState, cors_origins: &[String]) -> Router {
    Router::new()
        .route("/games", post(create_game))
        .route("/games/{id}", get(get_game))
        .route("/games/{id}/moves", post(human_move))
        .route("/games/{id}/engine-move", post(engine_move))
        .route("/generators", get(generators))
        .layer(cors(cors_origins))
        .with_state(state)
}

/// Serves on `0.0.0.0:<port>` until the process is stopped.
pub async fn serve(opts: ServerOptions) -> std::io::Result<()> {
    let app = router(AppState::new(&opts)?, &opts.cors_origins);
    let listener = tokio::net::TcpListener::bind(SocketAddr::from(([0, 0, 0, 0], opts.port))).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, app).await
}
