use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tower::ServiceExt;

use openopen_core::game::{TestFamily, Transcript};
use openopen_core::spaces::Space;
use openopen_service::{router, CreateSession, MovePayload, Role, SessionManager};

fn app() -> Router {
    router(Arc::new(SessionManager::default()))
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json");
    let req = match body {
        Some(b) => req.body(Body::from(b.to_string())).unwrap(),
        None => req.body(Body::empty()).unwrap(),
    };
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let v = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap()
    };
    (status, v)
}

async fn raw(app: &Router, uri: &str, body: &str) -> (StatusCode, Value) {
    let req = Request::builder()
        .method("POST")
        .uri(uri)
        .header("content-type", "application/json")
        .body(Body::from(body.to_string()))
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

fn create_body(role: &str, engine: &str, rounds: usize, seed: u64) -> Value {
    json!({
        "space": "cantor",
        "role": role,
        "engine": engine,
        "roundsN": rounds,
        "testFamily": "depth-2",
        "seed": seed,
    })
}

async fn create(app: &Router, body: Value) -> (String, Value) {
    let (st, v) = call(app, "POST", "/sessions", Some(body)).await;
    assert_eq!(st, StatusCode::CREATED, "{v}");
    (v["id"].as_str().unwrap().to_string(), v)
}

async fn hint(app: &Router, id: &str) -> Value {
    let (st, h) = call(app, "GET", &format!("/sessions/{id}/hint"), None).await;
    assert_eq!(st, StatusCode::OK, "{h}");
    h
}

async fn play_hints(app: &Router, id: &str) -> Value {
    loop {
        let (_, s) = call(app, "GET", &format!("/sessions/{id}"), None).await;
        if s["status"] == "finished" {
            return s;
        }
        let h = hint(app, id).await;
        let (st, v) = call(app, "POST", &format!("/sessions/{id}/moves"), Some(h)).await;
        assert_eq!(st, StatusCode::OK, "{v}");
    }
}

fn assert_legal(v: &Value) {
    let t = Transcript::from_json(v).unwrap();
    t.validate().unwrap();
}

#[tokio::test]
async fn human_player_two_sees_the_whole_space_first() {
    let app = app();
    let (_, s) = create(&app, create_body("PlayerII", "cantor-p1", 6, 1)).await;
    assert_eq!(s["status"], "awaiting-human");
    let rounds = s["transcript"]["rounds"].as_array().unwrap();
    assert_eq!(rounds.len(), 1);
    assert_eq!(rounds[0]["owner"], "I");
    assert_eq!(rounds[0]["sets"], json!([[[]]]));
    assert!(s["measure"]["total"].is_string());
}

#[tokio::test]
async fn human_player_one_starts_with_an_empty_transcript() {
    let app = app();
    let (id, s) = create(&app, create_body("PlayerI", "measure-p2", 2, 3)).await;
    assert_eq!(s["transcript"]["rounds"], json!([]));
    let (st, v) = call(
        &app,
        "POST",
        &format!("/sessions/{id}/moves"),
        Some(json!({"sets": [[[]]]})),
    )
    .await;
    assert_eq!(st, StatusCode::OK, "{v}");
    assert_eq!(v["round"], 1);
    assert_eq!(v["transcript"]["rounds"].as_array().unwrap().len(), 2);
    assert_eq!(v["measure"]["perRound"].as_array().unwrap().len(), 1);
}

#[tokio::test]
async fn bad_create_requests_carry_codes() {
    let app = app();
    let (st, v) = call(
        &app,
        "POST",
        "/sessions",
        Some(create_body("PlayerII", "no-such", 3, 0)),
    )
    .await;
    assert_eq!(st, StatusCode::BAD_REQUEST);
    assert_eq!(v["error"]["code"], "config");
    assert_eq!(v["error"]["exitCode"], 2);
    let mut b = create_body("PlayerII", "cantor-p1", 3, 0);
    b["space"] = json!("klein-bottle");
    assert_eq!(
        call(&app, "POST", "/sessions", Some(b)).await.0,
        StatusCode::BAD_REQUEST
    );
    let mut b = create_body("PlayerII", "cantor-p1", 3, 0);
    b["extra"] = json!(1);
    let (st, v) = call(&app, "POST", "/sessions", Some(b)).await;
    assert_eq!(st, StatusCode::BAD_REQUEST);
    assert_eq!(v["error"]["code"], "malformed");
    // engine must play the other side
    let (st, _) = call(
        &app,
        "POST",
        "/sessions",
        Some(create_body("PlayerI", "cantor-p1", 3, 0)),
    )
    .await;
    assert_eq!(st, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn sessions_with_the_same_seed_behave_identically() {
    let app = app();
    let (a, _) = create(&app, create_body("PlayerII", "random-p1:3", 4, 9)).await;
    let (b, _) = create(&app, create_body("PlayerII", "random-p1:3", 4, 9)).await;
    assert_ne!(a, b);
    let sa = play_hints(&app, &a).await;
    let sb = play_hints(&app, &b).await;
    assert_eq!(sa["transcript"], sb["transcript"]);
}

#[tokio::test]
async fn missing_refinement_is_rejected_by_naming_u() {
    let app = app();
    let (id, _) = create(&app, create_body("PlayerII", "cantor-p1", 3, 0)).await;
    let (st, v) = call(
        &app,
        "POST",
        &format!("/sessions/{id}/moves"),
        Some(json!({"sets": [[[[3, 1]]]]})),
    )
    .await;
    assert_eq!(st, StatusCode::OK, "{v}");
    assert_eq!(v["round"], 1);
    let a1 = &v["transcript"]["rounds"][2]["sets"];
    assert_eq!(a1, &json!([[[[3, 0]]], [[[3, 1]]]]));
    let (st, e) = call(
        &app,
        "POST",
        &format!("/sessions/{id}/moves"),
        Some(json!({"sets": [[[[3, 1]]]]})),
    )
    .await;
    assert_eq!(st, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(e["error"]["code"], "illegal_move");
    assert_eq!(e["error"]["detail"]["unrefined"], json!([[[3, 0]]]));
    assert_eq!(e["error"]["detail"]["round"], 1);
    let (_, s) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(s["round"], 1);
    assert_eq!(s["status"], "awaiting-human");
}

#[tokio::test]
async fn finished_session_certificates_match_an_independent_check() {
    let app = app();
    let (id, _) = create(&app, create_body("PlayerII", "cantor-p1", 4, 5)).await;
    let s = play_hints(&app, &id).await;
    assert_eq!(s["status"], "finished");
    assert_eq!(s["toMove"], Value::Null);
    assert_eq!(s["certificates"].as_array().unwrap().len(), 4);
    let (_, exported) = call(&app, "GET", &format!("/sessions/{id}/transcript"), None).await;
    let t = Transcript::from_json(&exported).unwrap();
    t.validate().unwrap();
    let tf = TestFamily::parse("depth-2", &Space::cantor()).unwrap();
    assert!(t.replay_certificates(&tf).unwrap());
    let mut fresh = t.clone();
    fresh.certify(&tf).unwrap();
    assert_eq!(fresh.to_json()["certificates"], s["certificates"]);
    let (st, e) = call(
        &app,
        "POST",
        &format!("/sessions/{id}/moves"),
        Some(json!({"sets": [[[]]]})),
    )
    .await;
    assert_eq!(st, StatusCode::CONFLICT);
    assert_eq!(e["error"]["code"], "wrong_turn");
    assert_eq!(
        call(&app, "GET", &format!("/sessions/{id}/hint"), None).await.0,
        StatusCode::CONFLICT
    );
}

fn junk(rng: &mut ChaCha8Rng) -> String {
    match rng.gen_range(0..9) {
        0 => "not json".into(),
        1 => "{}".into(),
        2 => json!({"sets": "oops"}).to_string(),
        3 => json!({"sets": [[[[0, 2]]]]}).to_string(),
        4 => json!({"sets": [[[[rng.gen_range(0..4), 1], [rng.gen_range(0..4), 0]]]]}).to_string(),
        5 => json!({"sets": []}).to_string(),
        6 => json!({"sets": [[[["a", 1]]]], "x": 1}).to_string(),
        7 => json!({"sets": [[]]}).to_string(),
        _ => {
            let n = rng.gen_range(1..4);
            let sets: Vec<Value> = (0..n)
                .map(|_| {
                    let c = rng.gen_range(0..6);
                    json!([[[c, rng.gen_range(0..2)]]])
                })
                .collect();
            json!({ "sets": sets }).to_string()
        }
    }
}

#[tokio::test]
async fn fuzzed_payloads_never_break_legality() {
    let app = app();
    let (id, _) = create(&app, create_body("PlayerII", "cantor-p1", 4, 2)).await;
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut accepted = 0;
    for i in 0..100 {
        let (st, v) = raw(&app, &format!("/sessions/{id}/moves"), &junk(&mut rng)).await;
        if st == StatusCode::OK {
            accepted += 1;
        } else {
            assert!(v["error"]["code"].is_string(), "payload {i}: {v}");
            assert!(v["error"]["exitCode"].is_number());
        }
        let (_, t) = call(&app, "GET", &format!("/sessions/{id}/transcript"), None).await;
        assert_legal(&t);
        if i % 10 == 9 {
            let (_, s) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
            if s["status"] == "awaiting-human" {
                let h = hint(&app, &id).await;
                assert_eq!(
                    call(&app, "POST", &format!("/sessions/{id}/moves"), Some(h)).await.0,
                    StatusCode::OK
                );
            }
        }
    }
    let s = play_hints(&app, &id).await;
    assert_legal(&s["transcript"]);
    assert!(accepted <= 4);
}

#[tokio::test]
async fn hints_are_always_accepted() {
    let app = app();
    for (seed, engine, space) in [
        (0, "random-p1:3", "cantor"),
        (1, "random-p1:2", "exp(cantor)"),
        (2, "random-p1:2", "sum(3,cantor)"),
        (3, "cantor-p1", "cantor"),
    ] {
        let mut b = create_body("PlayerII", engine, 3, seed);
        b["space"] = json!(space);
        b["testFamily"] = json!("none");
        let (id, _) = create(&app, b).await;
        let s = play_hints(&app, &id).await;
        assert_legal(&s["transcript"]);
    }
    let (id, _) = create(&app, create_body("PlayerI", "random-p2:1", 3, 4)).await;
    let s = play_hints(&app, &id).await;
    assert_legal(&s["transcript"]);
}

#[tokio::test]
async fn coverage_never_shrinks() {
    let app = app();
    let (id, _) = create(&app, create_body("PlayerII", "random-p1:2", 5, 6)).await;
    let mut prev: Vec<Vec<u64>> = Vec::new();
    loop {
        let (_, s) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
        let cov: Vec<Vec<u64>> = s["coverage"]["byK"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| {
                r["covered"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|x| x.as_u64().unwrap())
                    .collect()
            })
            .collect();
        for (k, old) in prev.iter().enumerate() {
            assert!(old.iter().all(|i| cov[k].contains(i)), "k={k}");
        }
        prev = cov;
        if s["status"] == "finished" {
            break;
        }
        let h = hint(&app, &id).await;
        call(&app, "POST", &format!("/sessions/{id}/moves"), Some(h)).await;
    }
    assert_eq!(prev.len(), 5);
}

#[tokio::test]
async fn preview_reports_new_coverage_without_moving() {
    let app = app();
    let (id, _) = create(&app, create_body("PlayerII", "cantor-p1", 3, 0)).await;
    let (st, p) = call(
        &app,
        "POST",
        &format!("/sessions/{id}/preview"),
        Some(json!({"sets": [[[[0, 1]]]]})),
    )
    .await;
    assert_eq!(st, StatusCode::OK, "{p}");
    assert_eq!(p["legal"], true);
    let newly = p["byK"][0]["newlyCovered"].as_array().unwrap();
    // depth-2 family: 9 cylinders over {0,1}; W_{0↦1} meets the 6 not fixing 0 to 0
    assert_eq!(newly.len(), 6);
    let (_, s) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(s["round"], 0);
    let (st, _) = call(
        &app,
        "POST",
        &format!("/sessions/{id}/preview"),
        Some(json!({"sets": [[[[0, 7]]]]})),
    )
    .await;
    assert_eq!(st, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn unknown_and_deleted_sessions() {
    let app = app();
    let (st, v) = call(&app, "GET", "/sessions/nope", None).await;
    assert_eq!(st, StatusCode::NOT_FOUND);
    assert_eq!(v["error"]["code"], "unknown_session");
    let (id, _) = create(&app, create_body("PlayerII", "cantor-p1", 3, 0)).await;
    assert_eq!(
        call(&app, "DELETE", &format!("/sessions/{id}"), None).await.0,
        StatusCode::NO_CONTENT
    );
    assert_eq!(
        call(&app, "GET", &format!("/sessions/{id}"), None).await.0,
        StatusCode::NOT_FOUND
    );
    assert_eq!(
        call(&app, "DELETE", &format!("/sessions/{id}"), None).await.0,
        StatusCode::NOT_FOUND
    );
}

#[tokio::test]
async fn listings() {
    let app = app();
    let (_, s) = call(&app, "GET", "/strategies", None).await;
    let names: Vec<&str> = s
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"cantor-p1") && names.contains(&"measure-p2"));
    let (_, sp) = call(&app, "GET", "/spaces", None).await;
    assert!(sp.as_array().unwrap().iter().any(|x| x["descriptor"] == "exp(cantor)"));
}

#[tokio::test]
async fn hyperspace_sessions_have_no_measure() {
    let app = app();
    let mut b = create_body("PlayerII", "random-p1:2", 2, 0);
    b["space"] = json!("exp(cantor)");
    b["testFamily"] = json!("vietoris:1:1");
    let (_, s) = create(&app, b).await;
    assert_eq!(s["measure"], Value::Null);
    assert!(!s["coverage"]["tests"].as_array().unwrap().is_empty());
}

#[test]
fn sessions_are_isolated_across_threads() {
    let m = Arc::new(SessionManager::default());
    let handles: Vec<_> = (0..8)
        .map(|i| {
            let m = m.clone();
            std::thread::spawn(move || {
                let s = m
                    .create(CreateSession {
                        space: "cantor".into(),
                        role: Role::PlayerII,
                        engine: "random-p1:2".into(),
                        rounds_n: 3,
                        test_family: "depth:1".into(),
                        seed: i % 2,
                    })
                    .unwrap();
                let id = s["id"].as_str().unwrap().to_string();
                loop {
                    let st = m.state(&id).unwrap();
                    if st["status"] == "finished" {
                        return (i % 2, st["transcript"].clone());
                    }
                    let h = m.hint(&id).unwrap();
                    let p: MovePayload = serde_json::from_value(h).unwrap();
                    m.apply_move(&id, &p).unwrap();
                }
            })
        })
        .collect();
    let results: Vec<(u64, Value)> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    for (seed, t) in &results {
        for (s2, t2) in &results {
            assert_eq!(seed == s2, t == t2);
        }
    }
    assert_eq!(m.len(), 8);
}
