//! Stateless JSON-over-HTTP front end.

use axum::body::Bytes;
use axum::extract::Path;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response as HttpResponse};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde_json::Value;

use crate::api::{self, ApiError, Op, Request};

pub const PORT_ENV: &str = "QUIVERLAB_PORT";
pub const DEFAULT_PORT: u16 = 8080;

fn reply(status: u16, body: Value) -> HttpResponse {
    (StatusCode::from_u16(status).expect("valid status"), Json(body)).into_response()
}

fn failure(e: &ApiError) -> HttpResponse {
    reply(e.status(), api::error_envelope(e))
}

async fn operation(op: Op, body: Bytes) -> HttpResponse {
    let req: Request = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return failure(&ApiError::malformed(e.to_string())),
    };
    // engine calls are CPU bound
    match tokio::task::spawn_blocking(move || api::run(op, &req)).await {
        Ok(Ok(r)) => reply(200, r.envelope()),
        Ok(Err(e)) => failure(&e),
        Err(e) => failure(&ApiError { code: api::ErrorCode::Internal, message: e.to_string(), violations: Vec::new() }),
    }
}

fn catalog_reply(name: Option<&str>) -> HttpResponse {
    match api::catalog_json(name) {
        Ok(v) => reply(200, api::Response { result: v, truncated: false }.envelope()),
        Err(e) => failure(&e),
    }
}

pub fn router() -> Router {
    let mut r = Router::new()
        .route("/api/catalog", get(|| async { catalog_reply(None) }))
        .route("/api/catalog/{name}", get(|Path(name): Path<String>| async move { catalog_reply(Some(&name)) }));
    for name in ["validate", "mutate", "word", "class", "analyze", "symmetric", "variables", "counter"] {
        let op = Op::parse(name).expect("known operation");
        r = r.route(&format!("/api/{name}"), post(move |body: Bytes| operation(op, body)));
    }
    r
}

/// Port from the argument, then the environment, then the default.
pub fn port(arg: Option<u16>) -> u16 {
    arg.or_else(|| std::env::var(PORT_ENV).ok().and_then(|p| p.parse().ok())).unwrap_or(DEFAULT_PORT)
}

pub async fn serve(port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router()).await
}
