use std::sync::{Arc, Mutex};

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use offscreen_core::scagnostics::gen_archetypes;
use offscreen_core::scenario::io::Response;
use offscreen_core::scenario::{Layout, Trial};
use offscreen_core::Strategy;
use offscreen_harness::analyze::classify_log;
use offscreen_harness::responses::{read_responses, ResponseLog};
use offscreen_harness::service::{router, AppState};
use offscreen_harness::simulate::{simulate, Respondent};

fn app(log: &std::path::Path) -> axum::Router {
    router(Arc::new(AppState {
        seed: 11,
        participants: 6,
        layout: Layout::default(),
        datasets: gen_archetypes(0),
        log: Mutex::new(ResponseLog::open(log).unwrap()),
    }))
}

async fn call(
    app: &axum::Router,
    method: &str,
    uri: &str,
    body: Option<String>,
) -> (StatusCode, Vec<u8>) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map(Body::from).unwrap_or_else(Body::empty))
        .unwrap();
    let res = app.clone().oneshot(req).await.unwrap();
    let status = res.status();
    (
        status,
        res.into_body().collect().await.unwrap().to_bytes().to_vec(),
    )
}

fn example_frame(strategy: &str) -> String {
    json!({
        "scene": {"data_space": [-960, 0, 2880, 1080], "viewport": [0, 0, 1920, 1080], "screen": [1920, 1080]},
        "border": {"mode": "adaptive", "max_intrusion_px": 35},
        "strategy": strategy,
        "points": [{"x": 2400, "y": 540}, {"x": 2400, "y": 200, "color": "blue", "id": "q"}, {"x": 10, "y": 10}]
    })
    .to_string()
}

#[tokio::test]
async fn frame_reports_intrusion_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(&dir.path().join("log.csv"));
    let (s, a) = call(&app, "POST", "/frame", Some(example_frame("orthographic"))).await;
    assert_eq!(s, StatusCode::OK);
    let (_, b) = call(&app, "POST", "/frame", Some(example_frame("orthographic"))).await;
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(
        v["intrusion"],
        json!({"top": 0.0, "left": 17.5, "bottom": 0.0, "right": 17.5})
    );
    assert_eq!(v["cues"].as_array().unwrap().len(), 2);
    assert_eq!(v["inside"].as_array().unwrap().len(), 1);
    assert_eq!(v["cues"][1]["id"], "q");
    assert_eq!(v["cues"][0]["region"], "right");

    // toggling the strategy keeps the intrusion; only off-median cues move
    let (_, r) = call(&app, "POST", "/frame", Some(example_frame("radial"))).await;
    let r: Value = serde_json::from_slice(&r).unwrap();
    assert_eq!(r["intrusion"], v["intrusion"]);
    assert_eq!(r["cues"][0]["x"], v["cues"][0]["x"]);
    assert_eq!(r["cues"][0]["y"], v["cues"][0]["y"]);
    assert_ne!(r["cues"][1]["y"], v["cues"][1]["y"]);
}

#[tokio::test]
async fn malformed_json_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(&dir.path().join("log.csv"));
    let bad = example_frame("orthographic").replace("[0,0,1920,1080]", "[0,0,\"wide\",1080]");
    let (s, body) = call(&app, "POST", "/frame", Some(bad)).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    let v: Value = serde_json::from_slice(&body).unwrap();
    assert_eq!(v["path"], "scene.viewport[2]");
    let bad = example_frame("orthographic").replace("\"orthographic\"", "\"sideways\"");
    let (s, body) = call(&app, "POST", "/frame", Some(bad)).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert_eq!(
        serde_json::from_slice::<Value>(&body).unwrap()["path"],
        "strategy"
    );
    let (s, _) = call(&app, "POST", "/frame", Some("{".into())).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    let inverted = example_frame("radial").replace("[0,0,1920,1080]", "[1920,0,0,1080]");
    let (s, _) = call(&app, "POST", "/frame", Some(inverted)).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn trials_and_datasets() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(&dir.path().join("log.csv"));
    let (s, body) = call(&app, "GET", "/trials/1/3", None).await;
    assert_eq!(s, StatusCode::OK);
    let trials: Vec<Trial> = serde_json::from_slice(&body).unwrap();
    assert_eq!(trials.len(), 32);
    assert!(trials
        .iter()
        .enumerate()
        .all(|(i, t)| t.order as usize == i && t.participant == 3));
    let (s, body) = call(&app, "GET", "/trials/3/5", None).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(
        serde_json::from_slice::<Vec<Trial>>(&body).unwrap().len(),
        24
    );
    assert_eq!(
        call(&app, "GET", "/trials/4/0", None).await.0,
        StatusCode::BAD_REQUEST
    );
    assert_eq!(
        call(&app, "GET", "/trials/1/6", None).await.0,
        StatusCode::NOT_FOUND
    );

    let (s, body) = call(&app, "GET", "/datasets/6", None).await;
    assert_eq!(s, StatusCode::OK);
    let v: Value = serde_json::from_slice(&body).unwrap();
    assert_eq!(v["name"], "parabola");
    assert_eq!(
        call(&app, "GET", "/datasets/13", None).await.0,
        StatusCode::NOT_FOUND
    );

    let by_id = json!({
        "scene": {"data_space": [-3000, -3000, 3000, 3000], "viewport": [-1, -1, 1, 1], "screen": [800, 800]},
        "border": {"mode": "fixed"}, "strategy": "radial", "dataset_id": 6
    });
    let (s, body) = call(&app, "POST", "/frame", Some(by_id.to_string())).await;
    assert_eq!(s, StatusCode::OK);
    let v: Value = serde_json::from_slice(&body).unwrap();
    let total = v["cues"].as_array().unwrap().len()
        + v["inside"].as_array().unwrap().len()
        + v["errors"].as_array().unwrap().len();
    assert_eq!(total, 250);
}

#[tokio::test]
async fn responses_are_logged_and_reproduced_offline() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("log.csv");
    let app = app(&path);
    let (_, body) = call(&app, "GET", "/trials/1/2", None).await;
    let mut trials: Vec<Trial> = serde_json::from_slice(&body).unwrap();
    let (_, body) = call(&app, "GET", "/trials/2/2", None).await;
    trials.extend(serde_json::from_slice::<Vec<Trial>>(&body).unwrap());
    let sent = simulate(&trials, Respondent::Random, 3).unwrap();
    let mut online = Vec::new();
    for r in &sent {
        let (s, body) = call(
            &app,
            "POST",
            "/responses",
            Some(serde_json::to_string(r).unwrap()),
        )
        .await;
        assert_eq!(s, StatusCode::OK, "{}", String::from_utf8_lossy(&body));
        online.push(serde_json::from_slice::<Value>(&body).unwrap());
    }
    let logged = read_responses(&path).unwrap();
    assert_eq!(logged, sent);
    let offline = classify_log(&trials, &logged).unwrap();
    for ((_, o), v) in offline.iter().zip(&online) {
        assert_eq!(&serde_json::to_value(o).unwrap(), v);
    }

    // rejected responses are not logged
    let mut outside = sent[0].clone();
    outside.click_x = Some(1e6);
    let mut missing = sent[0].clone();
    missing.click_x = None;
    let mut unknown = sent[0].clone();
    unknown.trial_id = "t1-p02-c99".into();
    assert_eq!(
        call(
            &app,
            "POST",
            "/responses",
            Some(serde_json::to_string(&outside).unwrap())
        )
        .await
        .0,
        StatusCode::UNPROCESSABLE_ENTITY
    );
    assert_eq!(
        call(
            &app,
            "POST",
            "/responses",
            Some(serde_json::to_string(&missing).unwrap())
        )
        .await
        .0,
        StatusCode::UNPROCESSABLE_ENTITY
    );
    assert_eq!(
        call(
            &app,
            "POST",
            "/responses",
            Some(serde_json::to_string(&unknown).unwrap())
        )
        .await
        .0,
        StatusCode::NOT_FOUND
    );
    let (s, body) = call(
        &app,
        "POST",
        "/responses",
        Some(r#"{"trial_id": 3}"#.into()),
    )
    .await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert_eq!(
        serde_json::from_slice::<Value>(&body).unwrap()["path"],
        "trial_id"
    );
    assert_eq!(read_responses(&path).unwrap().len(), sent.len());
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_posts_append_whole_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("log.csv");
    let app = app(&path);
    let (_, body) = call(&app, "GET", "/trials/1/0", None).await;
    let trials: Vec<Trial> = serde_json::from_slice(&body).unwrap();
    let sent = simulate(&trials, Respondent::Inverts(Strategy::Orthographic), 0).unwrap();
    let tasks: Vec<_> = sent
        .iter()
        .map(|r| {
            let app = app.clone();
            let body = serde_json::to_string(r).unwrap();
            tokio::spawn(async move { call(&app, "POST", "/responses", Some(body)).await.0 })
        })
        .collect();
    for t in tasks {
        assert_eq!(t.await.unwrap(), StatusCode::OK);
    }
    let mut logged: Vec<Response> = read_responses(&path).unwrap();
    logged.sort_by(|a, b| a.trial_id.cmp(&b.trial_id));
    let mut expected = sent.clone();
    expected.sort_by(|a, b| a.trial_id.cmp(&b.trial_id));
    assert_eq!(logged, expected);
}
