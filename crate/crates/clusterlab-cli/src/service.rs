//! In-memory session service over HTTP+JSON.
//!
//! Each session holds a seed with bounded undo/redo stacks. Mutations of one
//! session are serialized by its own lock; different sessions proceed in
//! parallel.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use clusterlab::search::{explore_seeds, ExplorationLimits};
use clusterlab::seed::{Seed, SeedDoc};
use clusterlab::ExchangeMatrix;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::presets::{preset_seed, presets};
use crate::render::{graph_json, seed_state, SeedState};

pub const DEFAULT_HISTORY: usize = 1000;
pub const DEFAULT_GRAPH_NODES: usize = 1000;
pub const DEFAULT_GRAPH_DEPTH: usize = 32;
pub const MAX_GRAPH_NODES: usize = 100_000;

struct Session {
    seed: Seed,
    origin: String,
    undo: Vec<Seed>,
    redo: Vec<Seed>,
}

pub struct AppState {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    next_id: AtomicU64,
    history: usize,
}

impl AppState {
    pub fn new(history: usize) -> Self {
        AppState { sessions: RwLock::new(HashMap::new()), next_id: AtomicU64::new(1), history: history.max(1) }
    }

    fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions
            .read()
            .expect("session table lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::not_found(format!("no session {id:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionState {
    pub id: String,
    pub origin: String,
    #[serde(flatten)]
    pub seed: SeedState,
    pub undo_depth: usize,
    pub redo_depth: usize,
}

fn state_of(id: &str, s: &Session) -> SessionState {
    SessionState {
        id: id.to_string(),
        origin: s.origin.clone(),
        seed: seed_state(&s.seed),
        undo_depth: s.undo.len(),
        redo_depth: s.redo.len(),
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn not_found(message: String) -> Self {
        ApiError { status: StatusCode::NOT_FOUND, message }
    }

    fn unprocessable(message: impl Into<String>) -> Self {
        ApiError { status: StatusCode::UNPROCESSABLE_ENTITY, message: message.into() }
    }
}

impl From<clusterlab::Error> for ApiError {
    fn from(e: clusterlab::Error) -> Self {
        ApiError::unprocessable(e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.message }))).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

/// A preset name or a seed document, bare or wrapped, or just a matrix.
#[derive(Deserialize)]
#[serde(untagged)]
enum CreateRequest {
    Preset { preset: String },
    Seed { seed: SeedDoc },
    Doc(SeedDoc),
    Matrix { matrix: Vec<Vec<i64>> },
    Name(String),
}

#[derive(Deserialize)]
struct MutateRequest {
    k: i64,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct GraphQuery {
    max_nodes: Option<usize>,
    max_depth: Option<usize>,
}

#[derive(Serialize)]
struct Created {
    id: String,
    state: SessionState,
}

fn parse_body<T: for<'de> Deserialize<'de>>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::unprocessable(format!("malformed request: {e}")))
}

async fn create_session(State(app): State<Arc<AppState>>, body: Bytes) -> Result<(StatusCode, Json<Created>), ApiError> {
    let (seed, origin) = match parse_body::<CreateRequest>(&body)? {
        CreateRequest::Preset { preset } | CreateRequest::Name(preset) => (preset_seed(&preset)?, preset),
        CreateRequest::Seed { seed } | CreateRequest::Doc(seed) => (Seed::from_doc(&seed)?, "seed".to_string()),
        CreateRequest::Matrix { matrix } => (Seed::initial(ExchangeMatrix::new(matrix)?), "matrix".to_string()),
    };
    let id = app.next_id.fetch_add(1, Ordering::Relaxed).to_string();
    let session = Session { seed, origin, undo: Vec::new(), redo: Vec::new() };
    let state = state_of(&id, &session);
    app.sessions.write().expect("session table lock").insert(id.clone(), Arc::new(Mutex::new(session)));
    Ok((StatusCode::CREATED, Json(Created { id, state })))
}

async fn get_session(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<SessionState> {
    let session = app.get(&id)?;
    let s = session.lock().expect("session lock");
    Ok(Json(state_of(&id, &s)))
}

async fn mutate_session(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<SessionState> {
    let session = app.get(&id)?;
    let req: MutateRequest = parse_body(&body)?;
    let mut s = session.lock().expect("session lock");
    let n = s.seed.n();
    if req.k < 1 || req.k as usize > n {
        return Err(ApiError::unprocessable(format!("k must lie in 1..={n}, got {}", req.k)));
    }
    let next = s.seed.mutate(req.k as usize - 1)?;
    let prev = std::mem::replace(&mut s.seed, next);
    s.undo.push(prev);
    if s.undo.len() > app.history {
        s.undo.remove(0);
    }
    s.redo.clear();
    Ok(Json(state_of(&id, &s)))
}

async fn undo_session(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<SessionState> {
    let session = app.get(&id)?;
    let mut s = session.lock().expect("session lock");
    let prev = s.undo.pop().ok_or_else(|| ApiError::unprocessable("nothing to undo"))?;
    let cur = std::mem::replace(&mut s.seed, prev);
    s.redo.push(cur);
    Ok(Json(state_of(&id, &s)))
}

async fn redo_session(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<SessionState> {
    let session = app.get(&id)?;
    let mut s = session.lock().expect("session lock");
    let next = s.redo.pop().ok_or_else(|| ApiError::unprocessable("nothing to redo"))?;
    let cur = std::mem::replace(&mut s.seed, next);
    s.undo.push(cur);
    Ok(Json(state_of(&id, &s)))
}

/// The exchange graph explored from the current seed, which is node 1.
/// Hitting a limit is reported by `truncated` in a normal reply.
async fn session_graph(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    Query(q): Query<GraphQuery>,
) -> Result<Response, ApiError> {
    let session = app.get(&id)?;
    let nodes = q.max_nodes.unwrap_or(DEFAULT_GRAPH_NODES);
    let depth = q.max_depth.unwrap_or(DEFAULT_GRAPH_DEPTH);
    if nodes > MAX_GRAPH_NODES {
        return Err(ApiError::unprocessable(format!("maxNodes is capped at {MAX_GRAPH_NODES}")));
    }
    let limits = ExplorationLimits::new(nodes, depth)?;
    let seed = session.lock().expect("session lock").seed.clone();
    let explored = tokio::task::spawn_blocking(move || explore_seeds(&seed, limits))
        .await
        .map_err(|e| ApiError::unprocessable(e.to_string()))??;
    Ok(Json(graph_json(&explored.graph)).into_response())
}

async fn list_presets() -> impl IntoResponse {
    Json(presets())
}

pub fn router(app: Arc<AppState>) -> Router {
    Router::new()
        .route("/presets", get(list_presets))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/mutate", post(mutate_session))
        .route("/sessions/{id}/undo", post(undo_session))
        .route("/sessions/{id}/redo", post(redo_session))
        .route("/sessions/{id}/graph", get(session_graph))
        .with_state(app)
}

pub async fn serve(host: &str, port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind((host, port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(Arc::new(AppState::new(DEFAULT_HISTORY)))).await
}
