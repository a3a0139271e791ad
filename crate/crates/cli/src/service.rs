//! Local HTTP session service consumed by the explorer UI.
//!
//! `POST /sessions`, `GET /sessions/{id}`, `POST /sessions/{id}/mutate {"vertex": k}`,
//! `POST /sessions/{id}/undo`, `POST /sessions/{id}/redo`, `GET /sessions/{id}/audit`,
//! `GET /sessions/{id}/export`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use mutata::{
    apply_sequence, canonical_key, classify, companion_positivity, diagram_of, find_admissible_for, is_admissible,
    mutate_companion, mutate_matrix, Caps, ClassVerdict, Companion, ExchangeMatrix, VerdictKind,
};
use serde_json::{json, Value};

use crate::input;

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    kind: &'static str,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, kind: &'static str, message: impl Into<String>) -> Self {
        ApiError { status, kind, message: message.into() }
    }

    fn unknown(id: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, "UnknownSession", format!("no session {id}"))
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.kind, "message": self.message }))).into_response()
    }
}

type ApiResult = Result<Json<Value>, ApiError>;

struct Step {
    matrix: ExchangeMatrix,
    companion: Option<Companion>,
    /// Rendered once; undo and redo hand back these exact values.
    payload: Value,
}

struct Session {
    id: String,
    path: Vec<usize>,
    history: Vec<Step>,
    cursor: usize,
}

pub struct App {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    caps: Caps,
}

fn badges(v: &ClassVerdict) -> Vec<String> {
    let mut out = Vec::new();
    match &v.kind {
        VerdictKind::FiniteType(l) => out.push(format!("FiniteType({l})")),
        VerdictKind::Affine(l) => out.push(format!("Affine({l})")),
        VerdictKind::MinimalInfinite => out.push("MinimalInfinite".into()),
        VerdictKind::OtherInfinite => out.push("Infinite".into()),
        VerdictKind::Unknown(_) => out.push("Unknown".into()),
        VerdictKind::Rejected => {}
    }
    if v.minimal_infinite == Some(true) && v.kind != VerdictKind::MinimalInfinite {
        out.push("MinimalInfinite".into());
    }
    out
}

fn render_state(
    id: &str,
    cursor: usize,
    path: &[usize],
    b: &ExchangeMatrix,
    companion: Option<&Companion>,
    mutated_admissible: Option<bool>,
    caps: &Caps,
) -> Value {
    let g = diagram_of(b);
    let positivity = companion.map(|a| companion_positivity(b, a));
    let (verdict, badges, classify_error) = match classify(b, caps) {
        Ok(v) => {
            let badges = badges(&v);
            (serde_json::to_value(&v).expect("verdict serializes"), badges, None)
        }
        Err(e) => (Value::Null, vec!["Unclassified".to_string()], Some(e.to_string())),
    };
    json!({
        "id": id,
        "cursor": cursor,
        "path": path,
        "n": b.n(),
        "matrix": b.rows(),
        "diagram": g,
        "companion": companion,
        "admissible": companion.is_some(),
        "mutated_companion_admissible": mutated_admissible,
        "positivity": positivity,
        "badges": badges,
        "verdict": verdict,
        "classify_error": classify_error,
        "canonical_key": canonical_key(&g).ok(),
    })
}

/// Companion after mutating at `k`: the mutated previous companion when it stays admissible,
/// otherwise a fresh search. The flag records whether the mutated companion stayed admissible.
fn next_companion(b: &ExchangeMatrix, prev: Option<&Companion>, k: usize) -> (ExchangeMatrix, Option<Companion>, Option<bool>) {
    let b2 = mutate_matrix(b, k);
    match prev {
        Some(a) => {
            let a2 = mutate_companion(b, a, k);
            let ok = is_admissible(&b2, &a2).map(|r| r.admissible).unwrap_or(false);
            let chosen = if ok { Some(a2) } else { find_admissible_for(&b2) };
            (b2, chosen, Some(ok))
        }
        None => {
            let found = find_admissible_for(&b2);
            (b2, found, None)
        }
    }
}

impl Session {
    fn current(&self) -> &Step {
        &self.history[self.cursor]
    }

    fn mutate(&mut self, k: usize, caps: &Caps) -> Result<Value, ApiError> {
        let cur = self.current();
        let n = cur.matrix.n();
        if k >= n {
            return Err(ApiError::new(StatusCode::BAD_REQUEST, "BadVertex", format!("vertex {k} out of range for {n} vertices")));
        }
        let (b2, a2, flag) = next_companion(&cur.matrix, cur.companion.as_ref(), k);
        self.history.truncate(self.cursor + 1);
        self.path.truncate(self.cursor);
        self.path.push(k);
        self.cursor += 1;
        let payload = render_state(&self.id, self.cursor, &self.path, &b2, a2.as_ref(), flag, caps);
        self.history.push(Step { matrix: b2, companion: a2, payload: payload.clone() });
        Ok(payload)
    }

    /// Recompute every cached step from the seed and compare.
    fn audit(&self) -> Value {
        let seed = &self.history[0].matrix;
        let mut mismatches = Vec::new();
        let mut companion = find_admissible_for(seed);
        if companion != self.history[0].companion {
            mismatches.push(0);
        }
        for t in 1..self.history.len() {
            let k = self.path[t - 1];
            let (b, a, _) = next_companion(&self.history[t - 1].matrix, companion.as_ref(), k);
            let replayed = apply_sequence(seed, &self.path[..t]);
            let step = &self.history[t];
            let diagram_ok = step.payload["diagram"] == serde_json::to_value(diagram_of(&b)).expect("diagram serializes");
            if b != step.matrix || replayed != step.matrix || a != step.companion || !diagram_ok {
                mismatches.push(t);
            }
            companion = a;
        }
        json!({ "ok": mismatches.is_empty(), "checked": self.history.len(), "mismatches": mismatches })
    }
}

impl App {
    pub fn new(caps: Caps) -> Self {
        App { sessions: RwLock::new(HashMap::new()), caps }
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions.read().expect("session table").get(id).cloned().ok_or_else(|| ApiError::unknown(id))
    }
}

fn parse_seed(body: &[u8]) -> Result<ExchangeMatrix, ApiError> {
    let invalid = |m: String| ApiError::new(StatusCode::BAD_REQUEST, "InvalidSeed", m);
    let v: Value = serde_json::from_slice(body).map_err(|e| invalid(format!("invalid JSON: {e}")))?;
    let v = match v {
        Value::Object(mut m) if m.contains_key("diagram") => m.remove("diagram").expect("checked"),
        other => other,
    };
    let loaded = input::seed_from_json(v).map_err(|e| invalid(e.message))?;
    loaded.seed.matrix().map_err(|e| invalid(e.message))
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> T {
    tokio::task::spawn_blocking(f).await.expect("worker task")
}

async fn create(State(app): State<Arc<App>>, body: Bytes) -> Result<(StatusCode, Json<Value>), ApiError> {
    let b = parse_seed(&body)?;
    let id = uuid::Uuid::new_v4().simple().to_string();
    let app2 = app.clone();
    let session = blocking(move || {
        let a = find_admissible_for(&b);
        let payload = render_state(&id, 0, &[], &b, a.as_ref(), None, &app2.caps);
        Session { id, path: Vec::new(), history: vec![Step { matrix: b, companion: a, payload }], cursor: 0 }
    })
    .await;
    let payload = session.current().payload.clone();
    app.sessions.write().expect("session table").insert(session.id.clone(), Arc::new(Mutex::new(session)));
    Ok((StatusCode::CREATED, Json(payload)))
}

async fn state(State(app): State<Arc<App>>, Path(id): Path<String>) -> ApiResult {
    let s = app.session(&id)?;
    let payload = s.lock().expect("session").current().payload.clone();
    Ok(Json(payload))
}

async fn mutate(State(app): State<Arc<App>>, Path(id): Path<String>, body: Bytes) -> ApiResult {
    let s = app.session(&id)?;
    let v: Value = serde_json::from_slice(&body)
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, "BadRequest", format!("invalid JSON: {e}")))?;
    let k = v
        .get("vertex")
        .and_then(Value::as_u64)
        .ok_or_else(|| ApiError::new(StatusCode::BAD_REQUEST, "BadVertex", "expected {\"vertex\": k}"))?;
    let app2 = app.clone();
    // The session lock is held for the whole computation so mutations of one session stay ordered.
    let payload = blocking(move || s.lock().expect("session").mutate(k as usize, &app2.caps)).await?;
    Ok(Json(payload))
}

async fn undo(State(app): State<Arc<App>>, Path(id): Path<String>) -> ApiResult {
    let s = app.session(&id)?;
    let mut s = s.lock().expect("session");
    if s.cursor == 0 {
        return Err(ApiError::new(StatusCode::CONFLICT, "NothingToUndo", "already at the seed"));
    }
    s.cursor -= 1;
    Ok(Json(s.current().payload.clone()))
}

async fn redo(State(app): State<Arc<App>>, Path(id): Path<String>) -> ApiResult {
    let s = app.session(&id)?;
    let mut s = s.lock().expect("session");
    if s.cursor + 1 >= s.history.len() {
        return Err(ApiError::new(StatusCode::CONFLICT, "NothingToRedo", "no undone mutation"));
    }
    s.cursor += 1;
    Ok(Json(s.current().payload.clone()))
}

async fn audit(State(app): State<Arc<App>>, Path(id): Path<String>) -> ApiResult {
    let s = app.session(&id)?;
    Ok(Json(blocking(move || s.lock().expect("session").audit()).await))
}

async fn export(State(app): State<Arc<App>>, Path(id): Path<String>) -> ApiResult {
    let s = app.session(&id)?;
    let s = s.lock().expect("session");
    let seed = &s.history[0].matrix;
    Ok(Json(json!({
        "seed": diagram_of(seed),
        "matrix": seed.rows(),
        "path": s.path[..s.cursor],
        "canonical_key": s.current().payload["canonical_key"],
    })))
}

pub fn router(app: Arc<App>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/:id", get(state))
        .route("/sessions/:id/mutate", post(mutate))
        .route("/sessions/:id/undo", post(undo))
        .route("/sessions/:id/redo", post(redo))
        .route("/sessions/:id/audit", get(audit))
        .route("/sessions/:id/export", get(export))
        .with_state(app)
}

/// Serve on `127.0.0.1:port` until the process is stopped.
pub fn serve(port: u16, caps: Caps) -> std::io::Result<()> {
    let rt = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
    rt.block_on(async move {
        let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
        eprintln!("listening on http://{}", listener.local_addr()?);
        axum::serve(listener, router(Arc::new(App::new(caps)))).await
    })
}
