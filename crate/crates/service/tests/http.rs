use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use sliderule_core::ScaleRegistry;
use sliderule_service::router;
use tower::ServiceExt;

async fn call(method: &str, uri: &str, body: &str) -> (StatusCode, String) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(Body::from(body.to_string()))
        .unwrap();
    let resp = router(ScaleRegistry::standard())
        .oneshot(req)
        .await
        .unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

async fn post(uri: &str, body: Value) -> (StatusCode, Value) {
    let (status, text) = call("POST", uri, &body.to_string()).await;
    (status, serde_json::from_str(&text).unwrap())
}

fn q_example() -> Value {
    json!({"name": "Q", "kind": "power", "params": {"alpha": 2}, "length_mm": 250, "x_min": 0, "x_max": 100})
}

#[tokio::test]
async fn registry_lists_named_scales() {
    let (status, first) = call("GET", "/registry", "").await;
    assert_eq!(status, StatusCode::OK);
    let entries: Value = serde_json::from_str(&first).unwrap();
    let names: Vec<&str> = entries
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    for want in ["C", "D", "Q1", "R1", "G1", "G4"] {
        assert!(names.contains(&want), "{want}");
    }
    let (_, second) = call("GET", "/registry", "").await;
    assert_eq!(first, second);
}

#[tokio::test]
async fn rule_returns_svg_and_ticks() {
    let (status, out) = post(
        "/rule",
        json!({"length_mm": 250, "body_top": ["C"], "slide": ["C"], "body_bottom": ["D"]}),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert!(out["svg"].as_str().unwrap().starts_with("<?xml"));
    assert_eq!(out["tick_sets"].as_array().unwrap().len(), 3);
    assert_eq!(out["geometry"]["px_per_mm"], json!(4.0));
}

#[tokio::test]
async fn reciprocal_ratios() {
    let layout = json!({
        "length_mm": 200,
        "body_top": [{"name": "S", "kind": "power", "params": {"alpha": -1}, "unit": 100,
                      "x_min": 0.5, "x_max": 10, "origin": "natural"}]
    });
    let (status, out) = post("/rule", layout).await;
    assert_eq!(status, StatusCode::OK);
    let ticks = out["tick_sets"][0]["ticks"].as_array().unwrap();
    let pos = |v: f64| {
        ticks
            .iter()
            .find(|t| t["value"].as_f64() == Some(v))
            .unwrap()["pos_mm"]
            .as_f64()
            .unwrap()
    };
    let unit = pos(1.0);
    for (v, frac) in [(10.0, 0.1), (5.0, 0.2), (2.0, 0.5)] {
        assert!((pos(v) / unit - frac).abs() < 1e-3);
    }
}

#[tokio::test]
async fn malformed_bodies_are_bad_requests() {
    for (uri, body) in [
        ("/rule", "{not json"),
        ("/rule", r#"{"length_mm": 250}"#),
        (
            "/read",
            r#"{"layout": {"length_mm": 250, "body_top": ["C"]}}"#,
        ),
        ("/analyze/accuracy", r#"{"h": 0.5}"#),
        ("/analyze/volume", "{}"),
    ] {
        let (status, text) = call("POST", uri, body).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{uri} {body}");
        let err: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(err["code"], json!("bad_request"));
        assert!(err["message"].is_string());
    }
}

#[tokio::test]
async fn read_out_of_stacked_scales() {
    let c3 = 250.0 * 3f64.log10();
    let (status, out) = post(
        "/read",
        json!({"layout": {"length_mm": 250, "body_top": ["C"], "body_bottom": ["B"]}, "hairline_mm": c3}),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert!((out[1]["value"].as_f64().unwrap() - 9.0).abs() < 1e-9);

    let (_, out) = post(
        "/read",
        json!({"layout": {"length_mm": 250, "body_top": ["C"], "body_bottom": ["R1"]}, "hairline_mm": 250}),
    )
    .await;
    assert_eq!(out[1]["value"], json!(1.0));

    let (_, out) = post(
        "/read",
        json!({"layout": {"length_mm": 250, "body_top": ["C"], "slide": ["L"]}, "hairline_mm": 0, "slide_offset_mm": 20}),
    )
    .await;
    assert_eq!(out[0]["value"], json!(1.0));
    assert_eq!(out[1]["in_range"], json!(false));
    assert!(out[1].get("value").is_none());
}

#[tokio::test]
async fn analyses() {
    let (status, out) = post("/analyze/accuracy", json!({"scale": q_example(), "h": 0.5})).await;
    assert_eq!(status, StatusCode::OK);
    assert!((out["resolvable_x_bound"].as_f64().unwrap() - 31.54).abs() < 0.02);

    let (status, out) = post(
        "/analyze/triangle",
        json!({"scale": q_example(), "h": 0.5, "a": 32}),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert!((out["angle_high"].as_f64().unwrap() - 71.34).abs() < 0.02);

    let (status, out) = post("/analyze/coincidence", json!({"x_c": 1})).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(out["code"], json!("domain_error"));

    let (status, out) = post("/analyze/alignment", json!({"scale": "Q1", "scale2": "L"})).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(out["code"], json!("incompatible_scales"));
}

#[tokio::test]
async fn responses_do_not_depend_on_order() {
    let requests = [
        ("/analyze/coincidence", json!({})),
        ("/analyze/accuracy", json!({"scale": "Q1", "h": 0.3})),
        (
            "/read",
            json!({"layout": {"length_mm": 250, "body_top": ["C"]}, "hairline_mm": 80}),
        ),
    ];
    let mut forward = Vec::new();
    for (uri, body) in &requests {
        forward.push(call("POST", uri, &body.to_string()).await);
    }
    let mut backward = Vec::new();
    for (uri, body) in requests.iter().rev() {
        backward.push(call("POST", uri, &body.to_string()).await);
    }
    backward.reverse();
    assert_eq!(forward, backward);
}

#[tokio::test]
async fn cors_preflight() {
    let req = Request::builder()
        .method("OPTIONS")
        .uri("/rule")
        .header("origin", "http://localhost:5173")
        .header("access-control-request-method", "POST")
        .body(Body::empty())
        .unwrap();
    let resp = router(ScaleRegistry::standard())
        .oneshot(req)
        .await
        .unwrap();
    assert!(resp.headers().contains_key("access-control-allow-origin"));
}
