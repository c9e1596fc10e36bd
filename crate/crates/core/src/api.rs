//! JSON request handling shared by the command line and the HTTP service, so
//! both produce the same bytes for the same request.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::analysis::{
    alignment_with, coincidence_from_c, coincidence_from_r, resolvable_bound, triangle_range_in,
    AccuracyParams, AlignmentParams, AngleUnit, CoincidencePair,
};
use crate::error::{Error, Result};
use crate::registry::{ScaleRef, ScaleRegistry};
use crate::render::{
    read_hairline, render_rule, Reading, RenderedRule, Rule, RuleLayout, SlideState,
};

/// Length given to registry scales when a request does not name one.
pub const DEFAULT_LENGTH_MM: f64 = 250.0;

pub const ANALYSIS_KINDS: [&str; 4] = ["accuracy", "alignment", "triangle", "coincidence"];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AccuracyRequest {
    scale: ScaleRef,
    h: f64,
    separation_factor: Option<f64>,
    length_mm: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlignmentRequest {
    scale: ScaleRef,
    scale2: ScaleRef,
    rational_bound: Option<u32>,
    rel_tol: Option<f64>,
    length_mm: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TriangleRequest {
    a: f64,
    x_lo: Option<f64>,
    x_hi: Option<f64>,
    scale: Option<ScaleRef>,
    h: Option<f64>,
    separation_factor: Option<f64>,
    angle_unit: Option<AngleUnit>,
    length_mm: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoincidenceRequest {
    #[serde(alias = "x_C")]
    x_c: Option<f64>,
    #[serde(alias = "x_R")]
    x_r: Option<f64>,
}

#[derive(Debug, Serialize)]
struct CoincidenceReport {
    pairs: Vec<CoincidencePair>,
}

/// Body of a hairline read-out request.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReadRequest {
    pub layout: RuleLayout,
    #[serde(default)]
    pub slide_offset_mm: f64,
    pub hairline_mm: f64,
}

fn parse<T: DeserializeOwned>(body: Value) -> Result<T> {
    serde_json::from_value(body).map_err(|e| Error::BadRequest(e.to_string()))
}

fn to_value<T: Serialize>(report: &T) -> Value {
    serde_json::to_value(report).expect("reports serialise")
}

/// Pretty JSON with a trailing newline, the wire format of every report.
pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialise");
    s.push('\n');
    s
}

/// Parses request text, reporting the line and column of syntax errors.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::BadRequest(e.to_string()))
}

fn params(h: f64, factor: Option<f64>) -> Result<AccuracyParams> {
    match factor {
        Some(s) => AccuracyParams::with_factor(h, s),
        None => AccuracyParams::new(h),
    }
}

pub fn analyze(registry: &ScaleRegistry, kind: &str, body: Value) -> Result<Value> {
    match kind {
        "accuracy" => {
            let req: AccuracyRequest = parse(body)?;
            let scale = req
                .scale
                .resolve(registry, req.length_mm.unwrap_or(DEFAULT_LENGTH_MM))?;
            let report = resolvable_bound(&scale, &params(req.h, req.separation_factor)?)?;
            Ok(to_value(&report))
        }
        "alignment" => {
            let req: AlignmentRequest = parse(body)?;
            let length = req.length_mm.unwrap_or(DEFAULT_LENGTH_MM);
            let a = req.scale.resolve(registry, length)?;
            let b = req.scale2.resolve(registry, length)?;
            let mut p = AlignmentParams::default();
            if let Some(bound) = req.rational_bound {
                p.rational_bound = bound;
            }
            if let Some(tol) = req.rel_tol {
                p.rel_tol = tol;
            }
            Ok(to_value(&alignment_with(&a, &b, &p)?))
        }
        "triangle" => {
            let req: TriangleRequest = parse(body)?;
            let (x_lo, x_hi) = triangle_bounds(registry, &req)?;
            let report = triangle_range_in(req.a, x_lo, x_hi, req.angle_unit.unwrap_or_default())?;
            Ok(to_value(&report))
        }
        "coincidence" => {
            let req: CoincidenceRequest = parse(body)?;
            let pairs = match (req.x_c, req.x_r) {
                (Some(_), Some(_)) => {
                    return Err(Error::BadRequest("give x_c or x_r, not both".into()))
                }
                (Some(c), None) => vec![coincidence_from_c(c)?],
                (None, Some(r)) => vec![coincidence_from_r(r)?],
                (None, None) => crate::analysis::coincidence::reference_table(),
            };
            Ok(to_value(&CoincidenceReport { pairs }))
        }
        other => Err(Error::BadRequest(format!(
            "unknown analysis kind {other:?}; expected one of {}",
            ANALYSIS_KINDS.join(", ")
        ))),
    }
}

/// Explicit bounds win; otherwise a scale supplies them, through its legible
/// range when `h` is given.
fn triangle_bounds(registry: &ScaleRegistry, req: &TriangleRequest) -> Result<(f64, f64)> {
    let scale = req
        .scale
        .as_ref()
        .map(|s| s.resolve(registry, req.length_mm.unwrap_or(DEFAULT_LENGTH_MM)))
        .transpose()?;
    let legible = match (&scale, req.h) {
        (Some(s), Some(h)) => {
            let report = resolvable_bound(s, &params(h, req.separation_factor)?)?;
            let range = report.resolvable_range.ok_or_else(|| Error::Domain {
                value: h,
                bound: format!("h small enough for part of {} to be legible", s.name()),
            })?;
            Some(range)
        }
        _ => None,
    };
    let pick =
        |explicit: Option<f64>, from_range: Option<f64>, from_scale: Option<f64>, key: &str| {
            explicit
                .or(from_range)
                .or(from_scale)
                .ok_or_else(|| Error::BadRequest(format!("{key} is required without a scale")))
        };
    let x_lo = pick(
        req.x_lo,
        legible.map(|r| r[0]),
        scale.as_ref().map(|s| s.x_min()),
        "x_lo",
    )?;
    let x_hi = pick(
        req.x_hi,
        legible.map(|r| r[1]),
        scale.as_ref().map(|s| s.x_max()),
        "x_hi",
    )?;
    Ok((x_lo, x_hi))
}

/// Validates a layout and renders it with its tick sets.
pub fn rule(registry: &ScaleRegistry, body: Value) -> Result<RenderedRule> {
    let layout: RuleLayout = parse(body)?;
    Ok(render_rule(&Rule::from_layout(&layout, registry)?))
}

pub fn read(registry: &ScaleRegistry, body: Value) -> Result<Vec<Reading>> {
    let req: ReadRequest = parse(body)?;
    let rule = Rule::from_layout(&req.layout, registry)?;
    read_hairline(
        &rule,
        &SlideState {
            slide_offset_mm: req.slide_offset_mm,
            hairline_mm: req.hairline_mm,
        },
    )
}

/// Machine-readable error body.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApiError {
    pub code: String,
    pub message: String,
    #[serde(default)]
    pub detail: Value,
}

impl From<&Error> for ApiError {
    fn from(e: &Error) -> Self {
        let detail = match e {
            Error::Domain { value, bound } => serde_json::json!({ "value": value, "bound": bound }),
            Error::Range { value, lo, hi } => {
                serde_json::json!({ "value": value, "lo": lo, "hi": hi })
            }
            Error::InvalidExponent(alpha) => serde_json::json!({ "alpha": alpha }),
            Error::TooFewTicks(n) => serde_json::json!({ "ticks": n }),
            _ => Value::Null,
        };
        ApiError {
            code: e.code().to_string(),
            message: e.to_string(),
            detail,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn reg() -> ScaleRegistry {
        ScaleRegistry::standard()
    }

    fn q_example() -> Value {
        json!({"name": "Q", "kind": "power", "params": {"alpha": 2}, "length_mm": 250, "x_min": 0, "x_max": 100})
    }

    #[test]
    fn accuracy_report() {
        let out = analyze(&reg(), "accuracy", json!({"scale": q_example(), "h": 0.5})).unwrap();
        assert!((out["required_u"].as_f64().unwrap() - 0.025).abs() < 1e-12);
        assert!((out["resolvable_x_bound"].as_f64().unwrap() - 31.54).abs() < 0.02);
    }

    #[test]
    fn triangle_from_scale() {
        let out = analyze(
            &reg(),
            "triangle",
            json!({"scale": q_example(), "h": 0.5, "a": 32}),
        )
        .unwrap();
        assert!((out["angle_high"].as_f64().unwrap() - 71.34).abs() < 0.02);
        let out = analyze(
            &reg(),
            "triangle",
            json!({"a": 40, "x_lo": 31.54, "x_hi": 100}),
        )
        .unwrap();
        assert!((out["angle_low"].as_f64().unwrap() - 38.26).abs() < 0.02);
        let err = analyze(&reg(), "triangle", json!({"a": 40})).unwrap_err();
        assert!(err.is_input_error());
    }

    #[test]
    fn coincidence_modes() {
        let out = analyze(&reg(), "coincidence", json!({})).unwrap();
        assert_eq!(out["pairs"].as_array().unwrap().len(), 4);
        let out = analyze(&reg(), "coincidence", json!({"x_C": 10})).unwrap();
        assert_eq!(out["pairs"][0]["x_R"], json!(1.0));
        let err = analyze(&reg(), "coincidence", json!({"x_c": 1})).unwrap_err();
        assert_eq!(err.code(), "domain_error");
    }

    #[test]
    fn alignment_of_registry_scales() {
        let out = analyze(&reg(), "alignment", json!({"scale": "Q1", "scale2": "Q2"})).unwrap();
        assert_eq!(out["T"].as_f64().unwrap(), 50.0 / 7.0);
        assert_eq!(out["equivalent"], json!(false));
        let err = analyze(&reg(), "alignment", json!({"scale": "Q1", "scale2": "C"})).unwrap_err();
        assert_eq!(err.code(), "incompatible_scales");
    }

    #[test]
    fn malformed_requests() {
        for (kind, body) in [
            ("accuracy", json!({"scale": "Q1"})),
            ("accuracy", json!({"scale": "Q1", "h": 0.5, "extra": 1})),
            ("nonsense", json!({})),
            ("coincidence", json!({"x_c": 2, "x_r": 2})),
        ] {
            let err = analyze(&reg(), kind, body).unwrap_err();
            assert_eq!(err.code(), "bad_request", "{kind}");
        }
        assert!(parse_json("{\n  \"a\": ")
            .unwrap_err()
            .to_string()
            .contains("line 2"));
    }

    #[test]
    fn error_bodies() {
        let e = ApiError::from(&Error::Range {
            value: 3.0,
            lo: 1.0,
            hi: 2.0,
        });
        assert_eq!(e.code, "range_error");
        assert_eq!(e.detail["hi"], json!(2.0));
    }

    #[test]
    fn read_request() {
        let out = read(
            &reg(),
            json!({"layout": {"length_mm": 250, "body_top": ["C"], "body_bottom": ["R1"]}, "hairline_mm": 250}),
        )
        .unwrap();
        assert_eq!(out[1].value, Some(1.0));
    }
}
