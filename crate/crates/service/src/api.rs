//! HTTP routes.
//!
//! | method | path                         | body          |
//! |--------|------------------------------|---------------|
//! | GET    | `/strategies`                |               |
//! | GET    | `/spaces`                    |               |
//! | POST   | `/sessions`                  | create        |
//! | GET    | `/sessions/{id}`             |               |
//! | DELETE | `/sessions/{id}`             |               |
//! | POST   | `/sessions/{id}/moves`       | `{"sets":[]}` |
//! | POST   | `/sessions/{id}/preview`     | `{"sets":[]}` |
//! | GET    | `/sessions/{id}/hint`        |               |
//! | GET    | `/sessions/{id}/transcript`  |               |

use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::error::ApiError;
use crate::manager::SessionManager;
use crate::session::{CreateSession, MovePayload};

type Shared = Arc<SessionManager>;
type Reply = Result<Json<Value>, ApiError>;

fn body<T: DeserializeOwned>(b: Result<Json<Value>, JsonRejection>) -> Result<T, ApiError> {
    let Json(v) = b.map_err(|e| ApiError::malformed(e.body_text()))?;
    serde_json::from_value(v).map_err(|e| ApiError::malformed(e.to_string()))
}

/// Engine work runs on the blocking pool so slow strategies do not stall
/// other sessions.
async fn blocking<F>(f: F) -> Reply
where
    F: FnOnce() -> Result<Value, ApiError> + Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::malformed(format!("worker failed: {e}")))?
        .map(Json)
}

async fn create(
    State(m): State<Shared>,
    b: Result<Json<Value>, JsonRejection>,
) -> Result<(StatusCode, Json<Value>), ApiError> {
    let req: CreateSession = body(b)?;
    let v = blocking(move || m.create(req)).await?;
    Ok((StatusCode::CREATED, v))
}

async fn state(State(m): State<Shared>, Path(id): Path<String>) -> Reply {
    blocking(move || m.state(&id)).await
}

async fn apply(State(m): State<Shared>, Path(id): Path<String>, b: Result<Json<Value>, JsonRejection>) -> Reply {
    let p: MovePayload = body(b)?;
    blocking(move || m.apply_move(&id, &p)).await
}

async fn preview(State(m): State<Shared>, Path(id): Path<String>, b: Result<Json<Value>, JsonRejection>) -> Reply {
    let p: MovePayload = body(b)?;
    blocking(move || m.preview(&id, &p)).await
}

async fn hint(State(m): State<Shared>, Path(id): Path<String>) -> Reply {
    blocking(move || m.hint(&id)).await
}

async fn transcript(State(m): State<Shared>, Path(id): Path<String>) -> Reply {
    blocking(move || m.transcript(&id)).await
}

async fn delete(State(m): State<Shared>, Path(id): Path<String>) -> Result<StatusCode, ApiError> {
    m.delete(&id)?;
    Ok(StatusCode::NO_CONTENT)
}

async fn strategies(State(m): State<Shared>) -> Json<Value> {
    Json(m.strategies())
}

async fn spaces(State(m): State<Shared>) -> Json<Value> {
    Json(m.spaces())
}

pub fn router(manager: Shared) -> Router {
    Router::new()
        .route("/strategies", get(strategies))
        .route("/spaces", get(spaces))
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(state).delete(delete))
        .route("/sessions/{id}/moves", post(apply))
        .route("/sessions/{id}/preview", post(preview))
        .route("/sessions/{id}/hint", get(hint))
        .route("/sessions/{id}/transcript", get(transcript))
        .with_state(manager)
}

/// Serves the API until the process is stopped.
pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(Arc::new(SessionManager::default()))).await
}
