use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use esgame_core::{perm_to_shape, GameConfig, Permutation};
use esgame_service::{router, GameResource, HintResponse, ServiceConfig, SolveResponse};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> Router {
    router(&ServiceConfig::default()).unwrap()
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Vec<u8>) {
    let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
    let req = match body {
        Some(v) => req.body(Body::from(v.to_string())).unwrap(),
        None => req.body(Body::empty()).unwrap(),
    };
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    (status, resp.into_body().collect().await.unwrap().to_bytes().to_vec())
}

async fn create(app: &Router, body: Value) -> GameResource {
    let (status, bytes) = call(app, "POST", "/games", Some(body)).await;
    assert_eq!(status, StatusCode::CREATED, "{}", String::from_utf8_lossy(&bytes));
    serde_json::from_slice(&bytes).unwrap()
}

async fn play(app: &Router, id: &str, digit: u32) -> (StatusCode, Vec<u8>) {
    call(app, "POST", &format!("/games/{id}/moves"), Some(json!({ "digit": digit }))).await
}

/// Recomputes the shape from the transcript, as a client would.
fn check_coherent(g: &GameResource) {
    if g.status.state == "finished" {
        return;
    }
    let cfg = GameConfig::new(g.a, g.b).unwrap();
    let shape = perm_to_shape(&Permutation::new(g.transcript.clone()).unwrap(), &cfg).unwrap();
    assert_eq!(shape.rows(), g.shape.as_slice());
}

#[tokio::test]
async fn engine_second_starts_empty() {
    let app = app();
    let g = create(&app, json!({"a": 6, "b": 5, "variant": "avoidance", "engine": "strategy", "engine_player": 2})).await;
    assert!(g.transcript.is_empty());
    assert_eq!(g.legal_cells, vec![[1, 1]]);
    assert_eq!(g.legal_digits, vec![1]);
    assert_eq!(g.to_move, 1);
}

#[tokio::test]
async fn engine_first_opens_in_the_corner() {
    let app = app();
    let g = create(&app, json!({"a": 6, "b": 5, "variant": "avoidance", "engine": "strategy", "engine_player": 1})).await;
    assert_eq!(g.transcript, vec![1]);
    assert_eq!(g.shape, vec![1, 0, 0, 0]);
    assert_eq!(g.to_move, 2);
}

#[tokio::test]
async fn bad_configs_are_rejected() {
    let app = app();
    let (status, _) = call(&app, "POST", "/games", Some(json!({"a": 1, "b": 5}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = call(&app, "POST", "/games", Some(json!({"a": "x"}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) =
        call(&app, "POST", "/games", Some(json!({"a": 8, "b": 6, "variant": "avoidance", "engine": "strategy"}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn first_move_and_illegal_digit() {
    let app = app();
    let g = create(&app, json!({"a": 6, "b": 5, "variant": "avoidance", "engine": "none"})).await;
    let (status, bytes) = play(&app, &g.id, 1).await;
    assert_eq!(status, StatusCode::OK);
    let g: GameResource = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(g.shape, vec![1, 0, 0, 0]);
    assert_eq!(g.moves_applied.as_ref().unwrap().len(), 1);
    let (status, _) = play(&app, &g.id, 3).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let (status, _) = play(&app, &g.id, 0).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn unknown_ids_are_404() {
    let app = app();
    for uri in ["/games/g999999", "/games/nonsense", "/games/g999999/hint"] {
        assert_eq!(call(&app, "GET", uri, None).await.0, StatusCode::NOT_FOUND, "{uri}");
    }
    assert_eq!(play(&app, "g999999", 1).await.0, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn completing_pattern_ends_game_and_blocks_moves() {
    let app = app();
    // a=3: digits 1, 2, 3 build an increasing run of three.
    let g = create(&app, json!({"a": 3, "b": 4, "variant": "avoidance"})).await;
    play(&app, &g.id, 1).await;
    play(&app, &g.id, 2).await;
    let (_, bytes) = play(&app, &g.id, 3).await;
    let g: GameResource = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(g.status.state, "finished");
    assert_eq!(g.status.winner, Some(2));
    assert_eq!(g.status.reason.as_deref(), Some("I_a"));
    assert!(g.legal_cells.is_empty() && g.legal_digits.is_empty());
    assert_eq!(play(&app, &g.id, 1).await.0, StatusCode::CONFLICT);
}

#[tokio::test]
async fn engine_reply_comes_with_the_human_move() {
    let app = app();
    let mut g = create(&app, json!({"a": 7, "b": 5, "variant": "avoidance", "engine": "strategy", "engine_player": 1})).await;
    // Human plays the first legal digit each turn; the engine must win.
    while g.status.state != "finished" {
        check_coherent(&g);
        assert!(g.legal_cells.len() <= g.legal_digits.len());
        let digit = g.legal_digits[0];
        let (status, bytes) = play(&app, &g.id, digit).await;
        assert_eq!(status, StatusCode::OK, "{}", String::from_utf8_lossy(&bytes));
        g = serde_json::from_slice(&bytes).unwrap();
        let applied = g.moves_applied.clone().unwrap();
        assert_eq!(applied[0].digit, digit);
        assert!(applied.len() <= 2);
    }
    assert_eq!(g.status.winner, Some(1));
    let (status, bytes) = call(&app, "GET", &format!("/games/{}", g.id), None).await;
    assert_eq!(status, StatusCode::OK);
    let fetched: GameResource = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(fetched.transcript, g.transcript);
    assert!(fetched.moves_applied.is_none());
}

#[tokio::test]
async fn achievement_b2_engine_wins_on_its_first_reply() {
    let app = app();
    let g = create(&app, json!({"a": 7, "b": 2, "variant": "achievement", "engine": "strategy", "engine_player": 2})).await;
    let (_, bytes) = play(&app, &g.id, 1).await;
    let g: GameResource = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(g.transcript.len(), 2);
    assert_eq!(g.status.winner, Some(2));
}

#[tokio::test]
async fn hints_come_from_the_solver() {
    let app = app();
    let g = create(&app, json!({"a": 3, "b": 3, "variant": "avoidance"})).await;
    let (status, bytes) = call(&app, "GET", &format!("/games/{}/hint", g.id), None).await;
    assert_eq!(status, StatusCode::OK);
    let h: HintResponse = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(h.cells, vec![[1, 1]]);
    assert_eq!(h.digits, vec![1]);
    assert!(!h.losing_position);

    // After (1,1) the mover faces a loss.
    play(&app, &g.id, 1).await;
    let (_, bytes) = call(&app, "GET", &format!("/games/{}/hint", g.id), None).await;
    let h: HintResponse = serde_json::from_slice(&bytes).unwrap();
    assert!(h.cells.is_empty() && h.losing_position);
}

#[tokio::test]
async fn achievement_offers_completing_digits() {
    let app = app();
    let g = create(&app, json!({"a": 2, "b": 3, "variant": "achievement"})).await;
    // Width 1: any first digit fills row one, so a new maximum completes I_2.
    let (_, bytes) = play(&app, &g.id, 1).await;
    let g: GameResource = serde_json::from_slice(&bytes).unwrap();
    assert!(g.legal_digits.contains(&2));
    let (_, bytes) = call(&app, "GET", &format!("/games/{}/hint", g.id), None).await;
    let h: HintResponse = serde_json::from_slice(&bytes).unwrap();
    assert!(h.complete_now);
}

#[tokio::test]
async fn solve_endpoint() {
    let app = app();
    let (status, bytes) = call(&app, "GET", "/solve?a=5&b=5&variant=avoidance", None).await;
    assert_eq!(status, StatusCode::OK);
    let s: SolveResponse = serde_json::from_slice(&bytes).unwrap();
    assert_eq!((s.winner.as_str(), s.states, s.loss_states), ("player1", 70, 18));
    let (_, bytes) = call(&app, "GET", "/solve?a=7&b=2", None).await;
    let s: SolveResponse = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(s.winner, "player2");
    assert_eq!(call(&app, "GET", "/solve?a=64&b=64", None).await.0, StatusCode::TOO_MANY_REQUESTS);
    assert_eq!(call(&app, "GET", "/solve?a=1&b=4", None).await.0, StatusCode::BAD_REQUEST);
    assert_eq!(call(&app, "GET", "/solve?b=4", None).await.0, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn solver_engine_too_large_is_429() {
    let app = app();
    let (status, _) = call(&app, "POST", "/games", Some(json!({"a": 40, "b": 40, "engine": "solver"}))).await;
    assert_eq!(status, StatusCode::TOO_MANY_REQUESTS);
}

#[tokio::test]
async fn health_and_base_path() {
    let app = app();
    let (status, bytes) = call(&app, "GET", "/healthz", None).await;
    assert_eq!((status, bytes.as_slice()), (StatusCode::OK, b"ok".as_slice()));

    let nested = router(&ServiceConfig { base_path: "/api/".into(), ..Default::default() }).unwrap();
    assert_eq!(call(&nested, "GET", "/api/healthz", None).await.0, StatusCode::OK);
    assert_eq!(call(&nested, "GET", "/healthz", None).await.0, StatusCode::NOT_FOUND);
    assert!(router(&ServiceConfig { base_path: "api".into(), ..Default::default() }).is_err());
}

#[tokio::test]
async fn cors_headers_are_sent() {
    let app = app();
    let req = Request::builder().uri("/healthz").header("origin", "http://localhost:5173").body(Body::empty()).unwrap();
    let resp = app.oneshot(req).await.unwrap();
    assert!(resp.headers().contains_key("access-control-allow-origin"));
}

#[tokio::test]
async fn lru_evicts_the_oldest_game() {
    let app = router(&ServiceConfig { capacity: 2, ..Default::default() }).unwrap();
    let first = create(&app, json!({"a": 4, "b": 4})).await;
    let second = create(&app, json!({"a": 4, "b": 4})).await;
    // Touch the first so the second becomes least recently used.
    assert_eq!(call(&app, "GET", &format!("/games/{}", first.id), None).await.0, StatusCode::OK);
    create(&app, json!({"a": 4, "b": 4})).await;
    assert_eq!(call(&app, "GET", &format!("/games/{}", first.id), None).await.0, StatusCode::OK);
    assert_eq!(call(&app, "GET", &format!("/games/{}", second.id), None).await.0, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn static_dir_is_served() {
    let dir = std::env::temp_dir().join(format!("esgame-static-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("index.html"), "<html>board</html>").unwrap();
    let app = router(&ServiceConfig { static_dir: Some(dir.clone()), base_path: "/api".into(), ..Default::default() })
        .unwrap();
    let (status, bytes) = call(&app, "GET", "/", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(bytes, b"<html>board</html>");
    assert_eq!(call(&app, "GET", "/api/healthz", None).await.0, StatusCode::OK);
    std::fs::remove_dir_all(dir).unwrap();
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_moves_on_one_game_never_interleave() {
    let app = Arc::new(app());
    let g = create(&app, json!({"a": 9, "b": 9})).await;
    // Ten clients race to play digit 1; every accepted move must be applied once, in order.
    let mut tasks = Vec::new();
    for _ in 0..10 {
        let app = app.clone();
        let id = g.id.clone();
        tasks.push(tokio::spawn(async move { play(&app, &id, 1).await.0 }));
    }
    let mut ok = 0;
    for t in tasks {
        match t.await.unwrap() {
            StatusCode::OK => ok += 1,
            StatusCode::CONFLICT => {}
            other => panic!("unexpected {other}"),
        }
    }
    let (_, bytes) = call(&app, "GET", &format!("/games/{}", g.id), None).await;
    let g: GameResource = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(g.transcript.len(), ok);
    if g.status.state != "finished" {
        check_coherent(&g);
    }
}

#[tokio::test(flavor = "multi_thread", worker_threads = 2)]
async fn real_tcp_health_probe() {
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(async move { axum::serve(listener, app()).await.unwrap() });

    use tokio::io::{AsyncReadExt, AsyncWriteExt};
    let mut stream = tokio::net::TcpStream::connect(addr).await.unwrap();
    stream.write_all(b"GET /healthz HTTP/1.1\r\nHost: localhost\r\nConnection: close\r\n\r\n").await.unwrap();
    let mut text = String::new();
    stream.read_to_string(&mut text).await.unwrap();
    assert!(text.starts_with("HTTP/1.1 200"), "{text}");
    assert!(text.ends_with("ok"));
}

#[tokio::test]
async fn serve_reports_a_busy_port() {
    let listener = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    let err = esgame_service::serve(ServiceConfig::default(), addr).await.unwrap_err();
    assert!(err.to_string().contains("cannot bind"), "{err}");
}
