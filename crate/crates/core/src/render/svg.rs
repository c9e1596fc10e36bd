use std::fmt::Write;

use super::{Band, Rule, SlideState};

/// SVG user units per millimetre.
pub const PX_PER_MM: f64 = 4.0;

/// Vertical space between body and slide.
const BAND_GAP_MM: f64 = 2.0;
const TICK_HEIGHTS: [f64; 3] = [0.5, 0.35, 0.2];
const FINEST_TICK: f64 = 0.15;

fn tick_height(level: u8) -> f64 {
    TICK_HEIGHTS
        .get(level as usize)
        .copied()
        .unwrap_or(FINEST_TICK)
}

/// Top edge of row `i`, in mm from the top of the drawing.
pub(super) fn row_top_mm(rule: &Rule, i: usize) -> f64 {
    let gaps = rule.rows[..=i]
        .windows(2)
        .filter(|w| w[0].band != w[1].band)
        .count();
    rule.margins_mm + i as f64 * rule.row_height_mm + gaps as f64 * BAND_GAP_MM
}

fn total_height_mm(rule: &Rule) -> f64 {
    row_top_mm(rule, rule.rows.len() - 1) + rule.row_height_mm + rule.margins_mm
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

/// SVG 1.1 drawing of the rule. Ticks sit at `margin + pos * PX_PER_MM`
/// within their band; the slide bands are shifted by the slide offset.
pub fn render_svg(rule: &Rule, state: Option<&SlideState>) -> String {
    let px = PX_PER_MM;
    let offset = state.map_or(0.0, |s| s.slide_offset_mm);
    let has_slide = rule.rows.iter().any(|r| r.band == Band::Slide);
    let shift = if has_slide { offset } else { 0.0 };
    let base_width = (rule.length_mm + 2.0 * rule.margins_mm) * px;
    let x0 = shift.min(0.0) * px;
    let width = base_width + shift.abs() * px;
    let height = total_height_mm(rule) * px;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"{x0} 0 {width} {height}\" font-family=\"sans-serif\">"
    );

    let mut open: Option<Band> = None;
    for (i, row) in rule.rows.iter().enumerate() {
        if open != Some(row.band) {
            if open.is_some() {
                out.push_str("</g>\n");
            }
            match row.band {
                Band::Slide => {
                    let _ = writeln!(
                        out,
                        "<g class=\"slide\" transform=\"translate({},0)\">",
                        offset * px
                    );
                }
                _ => {
                    let _ = writeln!(out, "<g class=\"body\">");
                }
            }
            open = Some(row.band);
        }
        write_row(&mut out, rule, i);
    }
    if open.is_some() {
        out.push_str("</g>\n");
    }

    if let Some(s) = state {
        let x = (rule.margins_mm + s.hairline_mm) * px;
        let _ = writeln!(
            out,
            "<line class=\"hairline\" x1=\"{x}\" y1=\"0\" x2=\"{x}\" y2=\"{height}\" stroke=\"#c00\" stroke-width=\"1\"/>"
        );
    }
    out.push_str("</svg>\n");
    out
}

fn write_row(out: &mut String, rule: &Rule, i: usize) {
    let px = PX_PER_MM;
    let row = &rule.rows[i];
    let scale = &row.scale;
    let h = rule.row_height_mm * px;
    let margin = rule.margins_mm * px;
    let font = rule.policy.label_font_mm * px;
    let from_top = i.is_multiple_of(2);

    let _ = writeln!(
        out,
        "<g class=\"band {}\" data-scale=\"{}\" transform=\"translate(0,{})\">",
        row.band.as_str(),
        escape(scale.name()),
        row_top_mm(rule, i) * px
    );
    let _ = writeln!(
        out,
        "<rect class=\"frame\" x=\"{margin}\" y=\"0\" width=\"{}\" height=\"{h}\" fill=\"none\" stroke=\"#999\" stroke-width=\"0.5\"/>",
        rule.length_mm * px
    );
    let _ = writeln!(
        out,
        "<text class=\"name\" x=\"{}\" y=\"{}\" font-size=\"{font}\" text-anchor=\"end\">{}</text>",
        margin - px,
        h / 2.0 + font / 3.0,
        escape(scale.name())
    );

    // Ticks hang from the top edge on even rows and stand on the bottom edge
    // on odd rows; labels go beyond the tick ends.
    let tick_span = |level: u8| -> (f64, f64) {
        let len = tick_height(level) * h;
        if from_top {
            (0.0, len)
        } else {
            (h, h - len)
        }
    };
    let label_y = |level: u8| -> f64 {
        let (_, end) = tick_span(level);
        if from_top {
            end + font
        } else {
            end - font / 4.0
        }
    };

    for t in &row.ticks.ticks {
        let x = margin + scale.oriented(t.pos_mm) * px;
        let (y1, y2) = tick_span(t.level);
        let _ = writeln!(
            out,
            "<line class=\"tick level-{}\" x1=\"{x}\" y1=\"{y1}\" x2=\"{x}\" y2=\"{y2}\" stroke=\"black\" stroke-width=\"0.6\"/>",
            t.level
        );
        if let Some(label) = &t.label {
            let _ = writeln!(
                out,
                "<text class=\"label\" x=\"{x}\" y=\"{}\" font-size=\"{font}\" text-anchor=\"middle\">{}</text>",
                label_y(t.level),
                escape(label)
            );
        }
    }
    for e in &row.ticks.endpoint_labels {
        let x = margin + scale.oriented(e.pos_mm) * px;
        let _ = writeln!(
            out,
            "<text class=\"label endpoint\" x=\"{x}\" y=\"{}\" font-size=\"{font}\" text-anchor=\"middle\">{}</text>",
            label_y(0),
            escape(&e.text)
        );
    }
    out.push_str("</g>\n");
}
