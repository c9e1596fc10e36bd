//! HTTP front end for the scale engine. Every request is answered from its
//! body alone; the only shared state is the immutable scale registry.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{header, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde_json::Value;
use sliderule_core::api::{self, ApiError};
use sliderule_core::{Error, ScaleRegistry};
use tower_http::cors::{Any, CorsLayer};

type Shared = Arc<ScaleRegistry>;

pub fn router(registry: ScaleRegistry) -> Router {
    let cors = CorsLayer::new()
        .allow_origin(Any)
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE]);
    Router::new()
        .route("/registry", get(registry_list))
        .route("/rule", post(rule))
        .route("/read", post(read))
        .route("/analyze/{kind}", post(analyze))
        .layer(cors)
        .with_state(Arc::new(registry))
}

/// Serves on `0.0.0.0:port` until the process is stopped.
pub async fn serve(port: u16, registry: ScaleRegistry) -> std::io::Result<()> {
    let addr = SocketAddr::from(([0, 0, 0, 0], port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(registry)).await
}

fn json_response(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn error_response(status: StatusCode, err: &Error) -> Response {
    json_response(status, api::to_json(&ApiError::from(err)))
}

fn body_json(body: &Bytes) -> Result<Value, Error> {
    let text = std::str::from_utf8(body)
        .map_err(|e| Error::BadRequest(format!("body is not UTF-8: {e}")))?;
    api::parse_json(text)
}

async fn registry_list(State(reg): State<Shared>) -> Response {
    json_response(StatusCode::OK, api::to_json(&reg.entries()))
}

async fn rule(State(reg): State<Shared>, body: Bytes) -> Response {
    match body_json(&body).and_then(|v| api::rule(&reg, v)) {
        Ok(out) => json_response(StatusCode::OK, api::to_json(&out)),
        Err(e) => error_response(StatusCode::BAD_REQUEST, &e),
    }
}

async fn read(State(reg): State<Shared>, body: Bytes) -> Response {
    match body_json(&body).and_then(|v| api::read(&reg, v)) {
        Ok(out) => json_response(StatusCode::OK, api::to_json(&out)),
        Err(e) => error_response(StatusCode::BAD_REQUEST, &e),
    }
}

async fn analyze(State(reg): State<Shared>, Path(kind): Path<String>, body: Bytes) -> Response {
    match body_json(&body).and_then(|v| api::analyze(&reg, &kind, v)) {
        Ok(out) => json_response(StatusCode::OK, api::to_json(&out)),
        Err(e) if e.is_input_error() => error_response(StatusCode::BAD_REQUEST, &e),
        Err(e) => error_response(StatusCode::UNPROCESSABLE_ENTITY, &e),
    }
}
