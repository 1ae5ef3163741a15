//! Local JSON service used by the viewer.

use std::net::SocketAddr;
use std::sync::{Arc, Mutex};

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response as HttpResponse};
use axum::routing::{get, post};
use axum::Router;
use serde::de::DeserializeOwned;
use serde::Serialize;

use offscreen_core::scagnostics::ArchetypeDataset;
use offscreen_core::scenario::io::Response;
use offscreen_core::scenario::{
    gen_task1, gen_task2, gen_task3, task3_plan, Layout, ScenarioError, Task, Trial,
};

use crate::frame::{frame, FrameError, FrameRequest};
use crate::responses::{evaluate, ResponseLog};

pub struct AppState {
    pub seed: u64,
    pub participants: usize,
    pub layout: Layout,
    pub datasets: Vec<ArchetypeDataset>,
    pub log: Mutex<ResponseLog>,
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
    path: Option<String>,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError {
            status,
            message: message.into(),
            path: None,
        }
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    error: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<&'a str>,
}

impl IntoResponse for ApiError {
    fn into_response(self) -> HttpResponse {
        let body = ErrorBody {
            error: &self.message,
            path: self.path.as_deref(),
        };
        json_response(self.status, &body)
    }
}

fn json_response<T: Serialize>(status: StatusCode, v: &T) -> HttpResponse {
    match serde_json::to_vec(v) {
        Ok(bytes) => (status, [(header::CONTENT_TYPE, "application/json")], bytes).into_response(),
        Err(e) => (StatusCode::INTERNAL_SERVER_ERROR, e.to_string()).into_response(),
    }
}

/// Parse a JSON body, reporting the path of the offending field.
pub fn parse_body<T: DeserializeOwned>(body: &[u8]) -> Result<T, ApiError> {
    let de = &mut serde_json::Deserializer::from_slice(body);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        ApiError {
            status: StatusCode::BAD_REQUEST,
            message: e.inner().to_string(),
            path: Some(path),
        }
    })
}

/// One participant's trials in presentation order.
pub fn participant_trials(
    seed: u64,
    layout: &Layout,
    task: Task,
    participant: u32,
    participants: usize,
) -> Result<Vec<Trial>, ScenarioError> {
    if participant as usize >= participants {
        return Err(ScenarioError::Invalid(format!(
            "participant {participant} out of range (0..{participants})"
        )));
    }
    let mut trials = match task {
        Task::T1 => gen_task1(seed, layout, participant)?,
        Task::T2 => gen_task2(seed, layout, participant)?,
        Task::T3 => gen_task3(seed, layout, participant, &task3_plan(seed, participants)?)?,
    };
    trials.sort_by_key(|t| t.order);
    Ok(trials)
}

/// Task and participant encoded in a trial id such as `t2-p07-c13`.
fn parse_trial_id(id: &str) -> Option<(Task, u32)> {
    let mut parts = id.split('-');
    let task = Task::from_number(parts.next()?.strip_prefix('t')?.parse().ok()?)?;
    let participant = parts.next()?.strip_prefix('p')?.parse().ok()?;
    Some((task, participant))
}

async fn post_frame(
    State(st): State<Arc<AppState>>,
    body: Bytes,
) -> Result<HttpResponse, ApiError> {
    let req: FrameRequest = parse_body(&body)?;
    let out = frame(&req, &st.datasets).map_err(|e| match e {
        FrameError::UnknownDataset(_) => ApiError::new(StatusCode::NOT_FOUND, e.to_string()),
        _ => ApiError::new(StatusCode::BAD_REQUEST, e.to_string()),
    })?;
    Ok(json_response(StatusCode::OK, &out))
}

async fn get_trials(
    State(st): State<Arc<AppState>>,
    Path((task, participant)): Path<(String, String)>,
) -> Result<HttpResponse, ApiError> {
    let task = task
        .trim_start_matches(['t', 'T'])
        .parse()
        .ok()
        .and_then(Task::from_number)
        .ok_or_else(|| ApiError::new(StatusCode::BAD_REQUEST, format!("unknown task {task:?}")))?;
    let participant: u32 = participant.parse().map_err(|_| {
        ApiError::new(
            StatusCode::BAD_REQUEST,
            format!("bad participant {participant:?}"),
        )
    })?;
    if participant as usize >= st.participants {
        return Err(ApiError::new(
            StatusCode::NOT_FOUND,
            format!("no participant {participant}"),
        ));
    }
    let trials = participant_trials(st.seed, &st.layout, task, participant, st.participants)
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?;
    Ok(json_response(StatusCode::OK, &trials))
}

async fn post_response(
    State(st): State<Arc<AppState>>,
    body: Bytes,
) -> Result<HttpResponse, ApiError> {
    let r: Response = parse_body(&body)?;
    let not_found = || {
        ApiError::new(
            StatusCode::NOT_FOUND,
            format!("unknown trial {:?}", r.trial_id),
        )
    };
    let (task, participant) = parse_trial_id(&r.trial_id).ok_or_else(not_found)?;
    if participant as usize >= st.participants {
        return Err(not_found());
    }
    let trials = participant_trials(st.seed, &st.layout, task, participant, st.participants)
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?;
    let trial = trials
        .iter()
        .find(|t| t.id == r.trial_id)
        .ok_or_else(not_found)?;
    let outcome = evaluate(trial, &r)
        .map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()))?;
    st.log
        .lock()
        .map_err(|_| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "response log poisoned"))?
        .append(&r)
        .map_err(|e| {
            ApiError::new(
                StatusCode::INTERNAL_SERVER_ERROR,
                format!("response log: {e}"),
            )
        })?;
    Ok(json_response(StatusCode::OK, &outcome))
}

async fn get_dataset(
    State(st): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<HttpResponse, ApiError> {
    let d = id
        .parse::<u32>()
        .ok()
        .and_then(|id| st.datasets.iter().find(|d| d.id == id))
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("no dataset {id:?}")))?;
    Ok(json_response(StatusCode::OK, d))
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/frame", post(post_frame))
        .route("/trials/{task}/{participant}", get(get_trials))
        .route("/responses", post(post_response))
        .route("/datasets/{id}", get(get_dataset))
        .with_state(state)
}

pub async fn serve(addr: SocketAddr, state: Arc<AppState>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
