use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde_json::json;

#[derive(Debug)]
pub enum ApiError {
    NotFound(String),
    BadRequest(String),
    IllegalMove { vertex: usize, reason: String, legal_moves: Vec<usize> },
    /// Out of turn, or the game is over.
    Conflict(String),
    Budget(String),
    Internal(String),
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (code, body) = match self {
            ApiError::NotFound(m) => (StatusCode::NOT_FOUND, json!({ "error": "not_found", "detail": m })),
            ApiError::BadRequest(m) => (StatusCode::BAD_REQUEST, json!({ "error": "bad_request", "detail": m })),
            ApiError::IllegalMove { vertex, reason, legal_moves } => (
                StatusCode::BAD_REQUEST,
                json!({ "error": "illegal_move", "vertex": vertex, "detail": reason, "legal_moves": legal_moves }),
            ),
            ApiError::Conflict(m) => (StatusCode::CONFLICT, json!({ "error": "not_your_turn", "detail": m })),
            ApiError::Budget(m) => (StatusCode::SERVICE_UNAVAILABLE, json!({ "error": "budget_exhausted", "detail": m })),
            ApiError::Internal(m) => (StatusCode::INTERNAL_SERVER_ERROR, json!({ "error": "internal", "detail": m })),
        };
        (code, Json(body)).into_response()
    }
}
