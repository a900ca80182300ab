use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use clusterlab_cli::service::{router, AppState, DEFAULT_HISTORY};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> Router {
    router(Arc::new(AppState::new(DEFAULT_HISTORY)))
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
    let req = match body {
        Some(b) => req.body(Body::from(b.to_string())),
        None => req.body(Body::empty()),
    }
    .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() { Value::Null } else { serde_json::from_slice(&bytes).unwrap() };
    (status, value)
}

async fn create(app: &Router, body: Value) -> String {
    let (status, v) = call(app, "POST", "/sessions", Some(body)).await;
    assert_eq!(status, StatusCode::CREATED, "{v}");
    v["id"].as_str().unwrap().to_string()
}

async fn mutate(app: &Router, id: &str, k: i64) -> (StatusCode, Value) {
    call(app, "POST", &format!("/sessions/{id}/mutate"), Some(json!({ "k": k }))).await
}

fn seed_part(v: &Value) -> Value {
    let mut v = v.clone();
    for key in ["undo_depth", "redo_depth", "word"] {
        v.as_object_mut().unwrap().remove(key);
    }
    v
}

#[tokio::test]
async fn presets_are_listed() {
    let app = app();
    let (status, v) = call(&app, "GET", "/presets", None).await;
    assert_eq!(status, StatusCode::OK);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|p| p["name"].as_str().unwrap()).collect();
    for name in ["markov", "somos4", "a11", "a12", "gr2-m", "sl3-double-wiring", "grid-a-b"] {
        assert!(names.contains(&name), "{name}");
    }
}

#[tokio::test]
async fn mutating_twice_in_one_direction_restores_the_state() {
    let app = app();
    let id = create(&app, json!({ "preset": "markov" })).await;
    let (_, start) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    for k in 1..=3 {
        mutate(&app, &id, k).await;
        let (status, after) = mutate(&app, &id, k).await;
        assert_eq!(status, StatusCode::OK);
        assert_eq!(seed_part(&after), seed_part(&start));
    }
}

#[tokio::test]
async fn a11_returns_after_five_alternating_mutations() {
    let app = app();
    let id = create(&app, json!({ "preset": "a11" })).await;
    let (_, start) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    let mut last = Value::Null;
    for t in 0..5 {
        let (status, v) = mutate(&app, &id, 1 + t % 2).await;
        assert_eq!(status, StatusCode::OK);
        last = v;
    }
    let mut a: Vec<String> = serde_json::from_value(start["cluster"].clone()).unwrap();
    let mut b: Vec<String> = serde_json::from_value(last["cluster"].clone()).unwrap();
    assert_ne!(a, b, "the period swaps the two variables");
    a.sort();
    b.sort();
    assert_eq!(a, b);
    assert_eq!(last["word"], json!([1, 2, 1, 2, 1]));
}

#[tokio::test]
async fn undo_and_redo_are_exact() {
    let app = app();
    let id = create(&app, json!({ "preset": "gr2-6" })).await;
    let mut states = vec![call(&app, "GET", &format!("/sessions/{id}"), None).await.1];
    for k in [1, 2, 3, 1] {
        states.push(mutate(&app, &id, k).await.1);
    }
    for i in (0..4).rev() {
        let (status, v) = call(&app, "POST", &format!("/sessions/{id}/undo"), None).await;
        assert_eq!(status, StatusCode::OK);
        assert_eq!(seed_part(&v), seed_part(&states[i]));
        assert_eq!(v["word"], states[i]["word"]);
    }
    let (status, _) = call(&app, "POST", &format!("/sessions/{id}/undo"), None).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    for state in &states[1..] {
        let (status, v) = call(&app, "POST", &format!("/sessions/{id}/redo"), None).await;
        assert_eq!(status, StatusCode::OK);
        assert_eq!(v["cluster"], state["cluster"]);
        assert_eq!(v["matrix"], state["matrix"]);
    }
    assert_eq!(call(&app, "POST", &format!("/sessions/{id}/redo"), None).await.0, StatusCode::UNPROCESSABLE_ENTITY);
    call(&app, "POST", &format!("/sessions/{id}/undo"), None).await;
    mutate(&app, &id, 2).await;
    assert_eq!(call(&app, "POST", &format!("/sessions/{id}/redo"), None).await.0, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn sl3_double_wiring_exchange_graph_has_fifty_seeds() {
    let app = app();
    let id = create(&app, json!({ "preset": "sl3-double-wiring" })).await;
    let (status, g) = call(&app, "GET", &format!("/sessions/{id}/graph"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(g["nodes"].as_array().unwrap().len(), 50);
    assert_eq!(g["truncated"], json!(false));
    assert_eq!(g["current"], json!(1));
    // each edge appears once from each endpoint
    assert_eq!(g["edges"].as_array().unwrap().len(), 50 * 4);
}

#[tokio::test]
async fn graph_limits_report_truncation() {
    let app = app();
    let id = create(&app, json!({ "preset": "markov" })).await;
    let (status, g) = call(&app, "GET", &format!("/sessions/{id}/graph?maxNodes=20&maxDepth=50"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(g["truncated"], json!(true));
    assert!(g["nodes"].as_array().unwrap().len() <= 20);
    let (status, _) = call(&app, "GET", &format!("/sessions/{id}/graph?maxNodes=10000000"), None).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn sessions_from_matrix_and_seed_documents() {
    let app = app();
    let id = create(&app, json!({ "matrix": [[0, 1], [-1, 0], [1, 0]] })).await;
    let (_, v) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!((v["m"].as_u64(), v["n"].as_u64()), (Some(3), Some(2)));
    assert_eq!(v["coefficients"], json!([[1], [0]]));
    assert_eq!(v["quiver"]["vertices"][2]["frozen"], json!(true));

    let (_, after) = mutate(&app, &id, 1).await;
    let doc = json!({
        "m": 3, "n": 2, "matrix": after["matrix"], "cluster": after["cluster"], "word": after["word"]
    });
    let (status, created) = call(&app, "POST", "/sessions", Some(json!({ "seed": doc }))).await;
    assert_eq!(status, StatusCode::CREATED, "{created}");
    assert_eq!(created["state"]["cluster"], after["cluster"]);
}

#[tokio::test]
async fn bare_preset_names_and_seed_documents_are_accepted() {
    let app = app();
    let id = create(&app, json!("a12")).await;
    let (_, v) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(v["origin"], json!("a12"));
    let doc = json!({ "m": 2, "n": 2, "matrix": [[0, 1], [-1, 0]], "cluster": ["1 * x1^1*x2^0", "1 * x1^0*x2^1"], "word": [] });
    let id = create(&app, doc).await;
    let (_, v) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(v["origin"], json!("seed"));
}

#[tokio::test]
async fn session_state_equals_replaying_its_word_in_the_engine() {
    use clusterlab::seed::MutationWord;
    use clusterlab_cli::presets::preset_seed;
    use clusterlab_cli::render::seed_state;

    let app = app();
    let id = create(&app, json!({ "preset": "grid-2-3" })).await;
    let mut v = Value::Null;
    for k in [1, 4, 2, 6, 3, 3, 5, 1, 2] {
        v = mutate(&app, &id, k).await.1;
    }
    call(&app, "POST", &format!("/sessions/{id}/undo"), None).await;
    let (_, v2) = call(&app, "POST", &format!("/sessions/{id}/redo"), None).await;
    assert_eq!(v, v2);
    let word: Vec<usize> = serde_json::from_value(v["word"].clone()).unwrap();
    let replayed = preset_seed("grid-2-3").unwrap().mutate_word(&MutationWord::from_one_based(&word).unwrap()).unwrap();
    let expected = serde_json::to_value(seed_state(&replayed)).unwrap();
    for (key, value) in expected.as_object().unwrap() {
        assert_eq!(&v[key], value, "{key}");
    }
}

#[tokio::test]
async fn bad_requests_are_rejected() {
    let app = app();
    assert_eq!(call(&app, "GET", "/sessions/nope", None).await.0, StatusCode::NOT_FOUND);
    assert_eq!(mutate(&app, "nope", 1).await.0, StatusCode::NOT_FOUND);
    assert_eq!(call(&app, "GET", "/sessions/nope/graph", None).await.0, StatusCode::NOT_FOUND);

    let (status, v) = call(&app, "POST", "/sessions", Some(json!({ "preset": "nope" }))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(v["error"].is_string());
    let not_skew = json!({ "matrix": [[0, 1], [1, 0]] });
    assert_eq!(call(&app, "POST", "/sessions", Some(not_skew)).await.0, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(call(&app, "POST", "/sessions", Some(json!({ "x": 1 }))).await.0, StatusCode::UNPROCESSABLE_ENTITY);

    let id = create(&app, json!({ "preset": "a12" })).await;
    for k in [0, 3, -1] {
        let (status, v) = mutate(&app, &id, k).await;
        assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY, "k = {k}");
        assert!(v["error"].as_str().unwrap().contains("k must"));
    }
    let req = Request::builder()
        .method("POST")
        .uri(format!("/sessions/{id}/mutate"))
        .body(Body::from("{not json"))
        .unwrap();
    assert_eq!(app.clone().oneshot(req).await.unwrap().status(), StatusCode::UNPROCESSABLE_ENTITY);
    let (_, v) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(v["undo_depth"], json!(0), "failed requests leave the session untouched");
}

#[tokio::test]
async fn sessions_are_independent_under_concurrency() {
    let app = app();
    let a = create(&app, json!({ "preset": "somos4" })).await;
    let b = create(&app, json!({ "preset": "somos4" })).await;
    assert_ne!(a, b);
    let tasks: Vec<_> = (0..20)
        .map(|i| {
            let app = app.clone();
            let id = if i % 2 == 0 { a.clone() } else { b.clone() };
            tokio::spawn(async move { mutate(&app, &id, 1 + (i / 2) % 4).await.0 })
        })
        .collect();
    for t in tasks {
        assert_eq!(t.await.unwrap(), StatusCode::OK);
    }
    for id in [&a, &b] {
        let (_, v) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
        assert_eq!(v["undo_depth"], json!(10));
    }
}
