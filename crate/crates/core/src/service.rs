//! HTTP interface to a rewrite session.
//!
//! Reads take a shared lock and see one snapshot; writes take the exclusive
//! lock, so history updates are linearizable.

use std::net::SocketAddr;
use std::sync::{Arc, RwLock};

use axum::body::Bytes;
use axum::extract::{Query, State};
use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::document::{self, Document};
use crate::rewrite::{self, RewriteOp};
use crate::session::{Session, SessionError};

pub const DEFAULT_CAP: usize = 500;
pub const DEFAULT_LIMIT: usize = 100;

pub type SharedSession = Arc<RwLock<Session>>;

fn error_body(status: StatusCode, code: &str, message: String, extra: Value) -> Response {
    let mut err = json!({ "code": code, "message": message });
    if let (Value::Object(e), Value::Object(x)) = (&mut err, extra) {
        e.extend(x);
    }
    (status, Json(json!({ "error": err }))).into_response()
}

fn conflict(e: &SessionError) -> Response {
    error_body(StatusCode::CONFLICT, e.code(), e.to_string(), Value::Null)
}

fn presentation_doc(s: &Session) -> Value {
    let mut d = Document::presentation(s.current().clone());
    d.metadata.insert("cursor".into(), s.cursor().to_string());
    d.metadata.insert("historyLength".into(), s.history().len().to_string());
    serde_json::to_value(&d).expect("documents serialize")
}

async fn get_presentation(State(s): State<SharedSession>) -> Json<Value> {
    Json(presentation_doc(&s.read().unwrap()))
}

#[derive(Debug, Deserialize)]
pub struct OpsQuery {
    #[serde(default)]
    offset: usize,
    limit: Option<usize>,
    cap: Option<usize>,
    /// `true` keeps only ops whose guards pass; `false` only those that fail.
    applicable: Option<bool>,
}

async fn get_ops(State(s): State<SharedSession>, Query(q): Query<OpsQuery>) -> Json<Value> {
    let session = s.read().unwrap();
    let p = session.current();
    let cap = q.cap.unwrap_or(DEFAULT_CAP).min(DEFAULT_CAP);
    let limit = q.limit.unwrap_or(DEFAULT_LIMIT);
    let mut listed = Vec::new();
    let mut truncated = false;
    for op in rewrite::candidate_ops(p) {
        let result = rewrite::apply(p, &op);
        if q.applicable.is_some_and(|want| want != result.is_ok()) {
            continue;
        }
        if listed.len() == cap {
            truncated = true;
            break;
        }
        let mut entry = json!({ "op": op, "applicable": result.is_ok() });
        if let Err(e) = result {
            entry["error"] = json!({ "code": e.code(), "message": e.to_string() });
        }
        listed.push(entry);
    }
    let total = listed.len();
    let page: Vec<Value> = listed.into_iter().skip(q.offset).take(limit).collect();
    Json(json!({
        "cursor": session.cursor(),
        "total": total,
        "truncated": truncated,
        "offset": q.offset,
        "limit": limit,
        "ops": page,
    }))
}

/// `POST /apply` takes either a bare op or `{"op": ...}`.
#[derive(Deserialize)]
struct ApplyBody {
    op: RewriteOp,
}

async fn post_apply(State(s): State<SharedSession>, body: Bytes) -> Response {
    let text = match std::str::from_utf8(&body) {
        Ok(t) => t,
        Err(e) => return error_body(StatusCode::BAD_REQUEST, "malformed", e.to_string(), Value::Null),
    };
    let wrapped = serde_json::from_str::<serde_json::Map<String, Value>>(text)
        .is_ok_and(|m| m.contains_key("op") && !m.contains_key("kind"));
    let parsed = if wrapped {
        document::parse_json::<ApplyBody>(text).map(|b| b.op)
    } else {
        document::parse_json::<RewriteOp>(text)
    };
    let op = match parsed {
        Ok(op) => op,
        Err(e) => {
            let extra = json!({ "line": e.line, "column": e.column, "path": e.path });
            return error_body(StatusCode::BAD_REQUEST, "malformed", e.message, extra);
        }
    };
    let mut session = s.write().unwrap();
    match session.apply(op) {
        Ok(diff) => {
            let diff = serde_json::to_value(diff).expect("diffs serialize");
            Json(json!({ "cursor": session.cursor(), "diff": diff, "presentation": presentation_doc(&session) }))
                .into_response()
        }
        Err(e) => conflict(&e),
    }
}

async fn post_undo(State(s): State<SharedSession>) -> Response {
    let mut session = s.write().unwrap();
    match session.undo() {
        Ok(_) => {
            Json(json!({ "cursor": session.cursor(), "presentation": presentation_doc(&session) })).into_response()
        }
        Err(e) => conflict(&e),
    }
}

async fn post_redo(State(s): State<SharedSession>) -> Response {
    let mut session = s.write().unwrap();
    match session.redo() {
        Ok(_) => {
            Json(json!({ "cursor": session.cursor(), "presentation": presentation_doc(&session) })).into_response()
        }
        Err(e) => conflict(&e),
    }
}

async fn get_history(State(s): State<SharedSession>) -> Json<Value> {
    let session = s.read().unwrap();
    let entries: Vec<Value> =
        session.history().iter().enumerate().map(|(i, e)| json!({ "index": i, "op": e.op, "diff": e.diff })).collect();
    Json(json!({ "cursor": session.cursor(), "entries": entries }))
}

async fn preflight() -> StatusCode {
    StatusCode::NO_CONTENT
}

async fn cors(mut res: Response) -> Response {
    let h = res.headers_mut();
    h.insert(header::ACCESS_CONTROL_ALLOW_ORIGIN, HeaderValue::from_static("*"));
    h.insert(header::ACCESS_CONTROL_ALLOW_METHODS, HeaderValue::from_static("GET, POST, OPTIONS"));
    h.insert(header::ACCESS_CONTROL_ALLOW_HEADERS, HeaderValue::from_static("content-type"));
    res
}

pub fn router(session: SharedSession) -> Router {
    Router::new()
        .route("/presentation", get(get_presentation))
        .route("/ops", get(get_ops))
        .route("/apply", post(post_apply).options(preflight))
        .route("/undo", post(post_undo).options(preflight))
        .route("/redo", post(post_redo).options(preflight))
        .route("/history", get(get_history))
        .layer(axum::middleware::map_response(cors))
        .with_state(session)
}

pub async fn serve(session: Session, addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(Arc::new(RwLock::new(session)))).await
}
