//! Assembled rules: body and slide scales, SVG output and hairline read-outs.

mod svg;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::registry::{ScaleRef, ScaleRegistry};
use crate::scale::{ScaleSpec, ScaleSpecDoc};
use crate::tickgen::{generate_ticks, TickPolicy, TickSet};

pub use svg::{render_svg, PX_PER_MM};

const LENGTH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Band {
    BodyTop,
    Slide,
    BodyBottom,
}

impl Band {
    pub fn as_str(self) -> &'static str {
        match self {
            Band::BodyTop => "body_top",
            Band::Slide => "slide",
            Band::BodyBottom => "body_bottom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlideState {
    /// Shift of the slide to the right; may be negative.
    #[serde(default)]
    pub slide_offset_mm: f64,
    /// Hairline distance from the left end of the body.
    pub hairline_mm: f64,
}

/// The JSON form of a rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleLayout {
    pub length_mm: f64,
    #[serde(default)]
    pub body_top: Vec<ScaleRef>,
    #[serde(default)]
    pub slide: Vec<ScaleRef>,
    #[serde(default)]
    pub body_bottom: Vec<ScaleRef>,
    #[serde(default = "default_row_height")]
    pub row_height_mm: f64,
    #[serde(default = "default_margins")]
    pub margins_mm: f64,
    #[serde(default)]
    pub policy: TickPolicy,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<SlideState>,
}

fn default_row_height() -> f64 {
    8.0
}

fn default_margins() -> f64 {
    10.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub band: Band,
    pub scale: ScaleSpec,
    pub ticks: TickSet,
}

/// A validated layout with its tick sets.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub length_mm: f64,
    pub row_height_mm: f64,
    pub margins_mm: f64,
    pub policy: TickPolicy,
    pub rows: Vec<Row>,
    pub state: Option<SlideState>,
}

impl Rule {
    pub fn from_layout(layout: &RuleLayout, registry: &ScaleRegistry) -> Result<Rule> {
        let l = layout.length_mm;
        if !(l.is_finite() && l > 0.0) {
            return Err(Error::invalid(format!(
                "length_mm must be positive, got {l}"
            )));
        }
        if !(layout.row_height_mm.is_finite() && layout.row_height_mm > 0.0) {
            return Err(Error::invalid("row_height_mm must be positive"));
        }
        if !(layout.margins_mm.is_finite() && layout.margins_mm >= 0.0) {
            return Err(Error::invalid("margins_mm must not be negative"));
        }
        let bands = [
            (Band::BodyTop, &layout.body_top),
            (Band::Slide, &layout.slide),
            (Band::BodyBottom, &layout.body_bottom),
        ];
        let mut rows = Vec::new();
        for (band, refs) in bands {
            for r in refs {
                let scale = r.resolve(registry, l)?;
                if (scale.length_mm() - l).abs() > LENGTH_TOL * l {
                    return Err(Error::invalid(format!(
                        "scale {} is {} mm long but the rule is {l} mm",
                        scale.name(),
                        scale.length_mm()
                    )));
                }
                let ticks = generate_ticks(&scale, &layout.policy)?;
                rows.push(Row { band, scale, ticks });
            }
        }
        if rows.is_empty() {
            return Err(Error::invalid("layout has no scales"));
        }
        if let Some(state) = layout.state {
            check_state(&state, l)?;
        }
        Ok(Rule {
            length_mm: l,
            row_height_mm: layout.row_height_mm,
            margins_mm: layout.margins_mm,
            policy: layout.policy.clone(),
            rows,
            state: layout.state,
        })
    }

    pub fn tick_sets(&self) -> Vec<&TickSet> {
        self.rows.iter().map(|r| &r.ticks).collect()
    }

    pub fn warnings(&self) -> Vec<String> {
        self.rows
            .iter()
            .flat_map(|r| r.ticks.warnings.iter().cloned())
            .collect()
    }
}

fn check_state(state: &SlideState, length: f64) -> Result<()> {
    if !state.slide_offset_mm.is_finite() {
        return Err(Error::invalid("slide_offset_mm must be finite"));
    }
    let h = state.hairline_mm;
    if !(h.is_finite() && h >= -LENGTH_TOL * length && h <= length * (1.0 + LENGTH_TOL)) {
        return Err(Error::invalid(format!(
            "hairline_mm {h} lies outside the body [0, {length}]"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reading {
    pub scale: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    pub in_range: bool,
}

/// Values under the hairline on every scale, top to bottom. Slide scales are
/// read at the hairline minus the slide offset; right-to-left scales are
/// mirrored as they are drawn.
pub fn read_hairline(rule: &Rule, state: &SlideState) -> Result<Vec<Reading>> {
    check_state(state, rule.length_mm)?;
    Ok(rule
        .rows
        .iter()
        .map(|row| {
            let s = &row.scale;
            let local = match row.band {
                Band::Slide => state.hairline_mm - state.slide_offset_mm,
                _ => state.hairline_mm,
            };
            let value = s.value_at(s.oriented(local)).ok();
            Reading {
                scale: s.name().to_string(),
                value,
                in_range: value.is_some(),
            }
        })
        .collect())
}

/// Row geometry reported next to the SVG.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowGeometry {
    pub scale: String,
    pub band: Band,
    /// Top edge of the row, from the top of the drawing.
    pub y_mm: f64,
    pub spec: ScaleSpecDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Geometry {
    pub length_mm: f64,
    pub row_height_mm: f64,
    pub margins_mm: f64,
    pub px_per_mm: f64,
    pub rows: Vec<RowGeometry>,
}

/// Everything the rule endpoint returns.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RenderedRule {
    pub geometry: Geometry,
    pub tick_sets: Vec<TickSet>,
    pub svg: String,
    pub warnings: Vec<String>,
}

pub fn render_rule(rule: &Rule) -> RenderedRule {
    let rows = rule
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| RowGeometry {
            scale: r.scale.name().to_string(),
            band: r.band,
            y_mm: svg::row_top_mm(rule, i),
            spec: r.scale.clone().into(),
        })
        .collect();
    RenderedRule {
        geometry: Geometry {
            length_mm: rule.length_mm,
            row_height_mm: rule.row_height_mm,
            margins_mm: rule.margins_mm,
            px_per_mm: PX_PER_MM,
            rows,
        },
        tick_sets: rule.rows.iter().map(|r| r.ticks.clone()).collect(),
        svg: render_svg(rule, rule.state.as_ref()),
        warnings: rule.warnings(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layout(json: &str) -> Rule {
        let layout: RuleLayout = serde_json::from_str(json).unwrap();
        Rule::from_layout(&layout, &ScaleRegistry::standard()).unwrap()
    }

    #[test]
    fn c_and_b_read_square() {
        let rule = layout(r#"{"length_mm": 250, "body_top": ["B"], "slide": ["C"]}"#);
        let d = rule.rows[1].scale.position(3.0).unwrap();
        let r = read_hairline(
            &rule,
            &SlideState {
                slide_offset_mm: 0.0,
                hairline_mm: d,
            },
        )
        .unwrap();
        assert_eq!(r[0].scale, "B");
        assert!((r[0].value.unwrap() - 9.0).abs() < 1e-9);
        assert!((r[1].value.unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn hairline_at_zero_reads_origins() {
        let rule = layout(
            r#"{"length_mm": 250, "body_top": ["C", "B"], "slide": ["L", "Q1"], "body_bottom": ["D", "K"]}"#,
        );
        let r = read_hairline(
            &rule,
            &SlideState {
                slide_offset_mm: 0.0,
                hairline_mm: 0.0,
            },
        )
        .unwrap();
        let origins = [1.0, 1.0, 0.0, 0.0, 1.0, 1.0];
        for (reading, want) in r.iter().zip(origins) {
            assert_eq!(reading.value, Some(want), "{}", reading.scale);
        }
    }

    #[test]
    fn slide_reads_shift_with_offset() {
        let rule = layout(r#"{"length_mm": 250, "slide": ["C"], "body_bottom": ["D"]}"#);
        let r = read_hairline(
            &rule,
            &SlideState {
                slide_offset_mm: 100.0,
                hairline_mm: 50.0,
            },
        )
        .unwrap();
        assert_eq!(r[0].value, None);
        assert!(!r[0].in_range);
        assert!(r[1].in_range);
    }

    #[test]
    fn coincidence_stack() {
        let rule = layout(r#"{"length_mm": 250, "body_top": ["C"], "body_bottom": ["R1"]}"#);
        for (c, want) in [(4.0, 1.661), (10.0, 1.0)] {
            let d = rule.rows[0].scale.position(c).unwrap();
            let r = read_hairline(
                &rule,
                &SlideState {
                    slide_offset_mm: 0.0,
                    hairline_mm: d,
                },
            )
            .unwrap();
            assert!((r[1].value.unwrap() - want).abs() < 5e-4, "{r:?}");
        }
    }

    #[test]
    fn rejects_bad_layouts() {
        let reg = ScaleRegistry::standard();
        for json in [
            r#"{"length_mm": 250}"#,
            r#"{"length_mm": 0, "body_top": ["C"]}"#,
            r#"{"length_mm": 250, "body_top": ["nope"]}"#,
            r#"{"length_mm": 250, "body_top": [{"registry": "C", "length_mm": 100}]}"#,
            r#"{"length_mm": 250, "body_top": ["C"], "state": {"hairline_mm": 300}}"#,
        ] {
            let layout: RuleLayout = serde_json::from_str(json).unwrap();
            let err = Rule::from_layout(&layout, &reg).unwrap_err();
            assert!(err.is_input_error(), "{json}: {err}");
        }
    }

    #[test]
    fn geometry_mirrors_rows() {
        let rule = layout(
            r#"{"length_mm": 250, "body_top": ["C"], "slide": ["C"], "body_bottom": ["D"]}"#,
        );
        let out = render_rule(&rule);
        assert_eq!(out.geometry.rows.len(), 3);
        assert_eq!(out.tick_sets.len(), 3);
        assert!(out.geometry.rows[0].y_mm < out.geometry.rows[1].y_mm);
        assert_eq!(out.geometry.rows[2].band, Band::BodyBottom);
    }
}
