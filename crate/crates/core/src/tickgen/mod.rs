//! Tick and label placement.
//!
//! Values are split into decades (or a single segment when the range reaches
//! zero or below). Inside a segment every level uses one 1-2-5 step, the
//! finest one whose marks stay apart: labelled marks by the label clearance,
//! finer levels by `min_gap_mm`.

mod decimal;
mod generate;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use decimal::{Decimal, Step};
pub use generate::generate_ticks;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TickPolicy {
    /// Smallest distance between any two adjacent marks.
    pub min_gap_mm: f64,
    /// Smallest distance between two labelled marks.
    pub min_label_gap_mm: f64,
    pub max_levels: u8,
    /// Label glyph height; a label is taken to be `0.6 * font * chars` wide.
    pub label_font_mm: f64,
    pub special_values: Vec<SpecialMark>,
}

impl Default for TickPolicy {
    fn default() -> Self {
        TickPolicy {
            min_gap_mm: 0.7,
            min_label_gap_mm: 6.0,
            max_levels: 3,
            label_font_mm: 2.5,
            special_values: Vec::new(),
        }
    }
}

impl TickPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.min_gap_mm.is_finite() && self.min_gap_mm > 0.0) {
            return Err(Error::invalid(format!(
                "min_gap_mm must be positive, got {}",
                self.min_gap_mm
            )));
        }
        if !(self.min_label_gap_mm.is_finite() && self.min_label_gap_mm >= self.min_gap_mm) {
            return Err(Error::invalid(format!(
                "min_label_gap_mm must be at least min_gap_mm, got {}",
                self.min_label_gap_mm
            )));
        }
        if !(1..=5).contains(&self.max_levels) {
            return Err(Error::invalid(format!(
                "max_levels must be between 1 and 5, got {}",
                self.max_levels
            )));
        }
        if !(self.label_font_mm.is_finite() && self.label_font_mm > 0.0) {
            return Err(Error::invalid("label_font_mm must be positive"));
        }
        for s in &self.special_values {
            if !s.value.is_finite() {
                return Err(Error::invalid("special value must be finite"));
            }
        }
        Ok(())
    }

    pub fn label_width(&self, text: &str) -> f64 {
        0.6 * self.label_font_mm * text.chars().count() as f64
    }

    /// Distance two labels need between their marks.
    pub fn label_clearance(&self, a: &str, b: &str) -> f64 {
        self.min_label_gap_mm
            .max(0.5 * (self.label_width(a) + self.label_width(b)))
    }
}

/// A constant marked on the scale, such as pi.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecialMark {
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tick {
    pub value: f64,
    /// Distance from the origin mark, before orientation is applied.
    pub pos_mm: f64,
    /// 0 for the most prominent marks.
    pub level: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// Text printed at a position that corresponds to no finite value, such as
/// the infinity end of a reciprocal scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndpointLabel {
    pub pos_mm: f64,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TickSet {
    pub scale_name: String,
    /// Sorted by `pos_mm`.
    pub ticks: Vec<Tick>,
    #[serde(default)]
    pub endpoint_labels: Vec<EndpointLabel>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensestGap {
    /// Values of the two marks, in order of position.
    pub values: [f64; 2],
    pub gap_mm: f64,
}

/// The closest pair of adjacent marks.
pub fn densest_gap(ticks: &[Tick]) -> Result<DensestGap> {
    if ticks.len() < 2 {
        return Err(Error::TooFewTicks(ticks.len()));
    }
    let mut sorted: Vec<&Tick> = ticks.iter().collect();
    sorted.sort_by(|a, b| a.pos_mm.total_cmp(&b.pos_mm));
    let best = sorted
        .windows(2)
        .map(|w| DensestGap {
            values: [w[0].value, w[1].value],
            gap_mm: w[1].pos_mm - w[0].pos_mm,
        })
        .min_by(|a, b| a.gap_mm.total_cmp(&b.gap_mm))
        .expect("at least one pair");
    Ok(best)
}
