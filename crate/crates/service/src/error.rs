use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde_json::{json, Value};

use openopen_core::spaces::{region_to_json, Region};
use openopen_core::Error;

/// Error payload: a machine-readable code, the matching command line exit
/// code, a message and optional structured detail.
#[derive(Clone, Debug, PartialEq)]
pub struct ApiError {
    pub status: StatusCode,
    pub code: &'static str,
    pub exit_code: i32,
    pub message: String,
    pub detail: Option<Value>,
}

impl ApiError {
    pub fn not_found(id: &str) -> Self {
        ApiError {
            status: StatusCode::NOT_FOUND,
            code: "unknown_session",
            exit_code: 2,
            message: format!("no session `{id}`"),
            detail: None,
        }
    }

    pub fn wrong_turn(msg: &str) -> Self {
        ApiError {
            status: StatusCode::CONFLICT,
            code: "wrong_turn",
            exit_code: 3,
            message: msg.to_string(),
            detail: None,
        }
    }

    pub fn unrefined(round: usize, index: usize, u: &Region) -> Self {
        ApiError {
            status: StatusCode::UNPROCESSABLE_ENTITY,
            code: "illegal_move",
            exit_code: 3,
            message: format!("round {round}: no chosen set refines {u}"),
            detail: Some(json!({ "round": round, "unrefinedIndex": index, "unrefined": region_to_json(u) })),
        }
    }

    pub fn malformed(msg: impl Into<String>) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            code: "malformed",
            exit_code: 2,
            message: msg.into(),
            detail: None,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "error": {
                "code": self.code,
                "exitCode": self.exit_code,
                "message": self.message,
                "detail": self.detail,
            }
        })
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Config(_) | Error::Json(_) | Error::Unsupported(_) | Error::CrossSpace(_) => StatusCode::BAD_REQUEST,
            Error::IllegalMove { detail, .. } if detail.contains("turn") || detail.contains("finished") => {
                StatusCode::CONFLICT
            }
            Error::IllegalMove { .. } => StatusCode::UNPROCESSABLE_ENTITY,
            _ => StatusCode::INTERNAL_SERVER_ERROR,
        };
        let detail = match &e {
            Error::IllegalMove { round, player, .. } => Some(json!({ "round": round, "player": player })),
            _ => None,
        };
        ApiError {
            status,
            code: e.code(),
            exit_code: e.exit_code(),
            message: e.to_string(),
            detail,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.to_json())).into_response()
    }
}
