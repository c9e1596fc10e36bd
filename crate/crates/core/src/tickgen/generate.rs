use std::collections::BTreeMap;

use super::decimal::{Decimal, Step};
use super::{EndpointLabel, Tick, TickPolicy, TickSet};
use crate::error::Result;
use crate::function::ScaleFunction;
use crate::scale::{Origin, ScaleSpec};

/// Upper bound on candidate marks examined for one step.
const MAX_CANDIDATES: usize = 20_000;
const MAX_REFINEMENTS: usize = 80;

#[derive(Debug, Clone)]
struct Draft {
    value: f64,
    decimal: Option<Decimal>,
    pos: f64,
    level: u8,
    label: Option<String>,
    special: bool,
}

impl Draft {
    /// Lower is more important.
    fn rank(&self) -> (u8, u8) {
        (u8::from(!self.special), self.level)
    }
}

struct Segment {
    lo: f64,
    hi: f64,
    anchors: Vec<Decimal>,
}

pub fn generate_ticks(scale: &ScaleSpec, policy: &TickPolicy) -> Result<TickSet> {
    policy.validate()?;
    let mut warnings = Vec::new();

    let mut marks: BTreeMap<Decimal, u8> = BTreeMap::new();
    for seg in segments(scale) {
        for (value, level) in segment_marks(scale, policy, &seg) {
            let entry = marks.entry(value).or_insert(level);
            *entry = (*entry).min(level);
        }
    }

    let mut drafts: Vec<Draft> = marks
        .into_iter()
        .map(|(d, level)| Draft {
            value: d.to_f64(),
            decimal: Some(d),
            pos: position(scale, d.to_f64()),
            level,
            label: (level == 0).then(|| d.to_string()),
            special: false,
        })
        .collect();

    insert_specials(scale, policy, &mut drafts, &mut warnings);
    drafts.sort_by(|a, b| a.pos.total_cmp(&b.pos));
    enforce_gap(&mut drafts, policy.min_gap_mm);
    enforce_label_clearance(&mut drafts, policy);
    label_second_level(&mut drafts, policy);

    if drafts.len() < 2 || drafts.iter().all(|t| t.label.is_none()) {
        warnings.push(format!(
            "range of {} is too compressed to subdivide; only its ends are marked",
            scale.name()
        ));
        drafts = endpoints_only(scale, policy);
    }

    let endpoint_labels = infinity_label(scale, policy, &drafts, &mut warnings);

    Ok(TickSet {
        scale_name: scale.name().to_string(),
        ticks: drafts
            .into_iter()
            .map(|t| Tick {
                value: t.value,
                pos_mm: t.pos,
                level: t.level,
                label: t.label,
            })
            .collect(),
        endpoint_labels,
        warnings,
    })
}

fn position(scale: &ScaleSpec, x: f64) -> f64 {
    scale
        .position_unbounded(x)
        .expect("tick values lie inside the scale range")
}

/// Decades of the range, with everything two decades below the top merged
/// into one segment. Linear scales and ranges reaching below zero form a
/// single segment.
fn segments(scale: &ScaleSpec) -> Vec<Segment> {
    let (lo, hi) = (scale.x_min(), scale.x_max());
    let linear = scale.function().homogeneity_exponent() == Some(1.0);
    if lo < 0.0 || hi <= 0.0 || linear {
        return vec![Segment {
            lo,
            hi,
            anchors: Vec::new(),
        }];
    }
    let top = hi.log10().ceil() as i32;
    let first = if lo > 0.0 {
        lo.log10().floor() as i32
    } else {
        top - 2
    };
    let mut powers: Vec<Decimal> = (first..=top)
        .map(|k| Decimal::new(1, k))
        .filter(|d| scale.contains(d.to_f64()))
        .collect();
    if lo == 0.0 {
        powers.insert(0, Decimal::new(0, 0));
    }
    let mut bounds = vec![lo];
    bounds.extend(
        powers
            .iter()
            .map(|d| d.to_f64())
            .filter(|&p| p > lo && p < hi),
    );
    bounds.push(hi);
    bounds
        .windows(2)
        .map(|w| Segment {
            lo: w[0],
            hi: w[1],
            anchors: powers
                .iter()
                .copied()
                .filter(|d| {
                    let v = d.to_f64();
                    v >= w[0] && v <= w[1]
                })
                .collect(),
        })
        .collect()
}

/// Marks of one segment with their levels.
fn segment_marks(scale: &ScaleSpec, policy: &TickPolicy, seg: &Segment) -> Vec<(Decimal, u8)> {
    let within = |step: Step| -> Option<Vec<Decimal>> {
        let mut pts = step.multiples(seg.lo, seg.hi, MAX_CANDIDATES)?;
        pts.retain(|d| scale.contains(d.to_f64()));
        Some(pts)
    };

    let mut chosen: BTreeMap<Decimal, u8> = seg.anchors.iter().map(|&d| (d, 0)).collect();

    // Level 0: labels must not collide.
    let mut step = Step::covering(seg.hi - seg.lo);
    let mut candidate = step;
    for _ in 0..MAX_REFINEMENTS {
        let Some(pts) = within(candidate) else { break };
        let mut trial = chosen.clone();
        for d in pts {
            trial.entry(d).or_insert(0);
        }
        if !spaced(scale, &trial, |a, b| {
            policy.label_clearance(&a.to_string(), &b.to_string())
        }) {
            break;
        }
        chosen = trial;
        step = candidate;
        candidate = candidate.finer();
    }

    for level in 1..policy.max_levels {
        let mut best = None;
        let mut candidate = step.finer();
        while let Some(ratio) = ratio(step, candidate) {
            if ratio > 10.0 {
                break;
            }
            if step.ratio_to(candidate).is_none() {
                candidate = candidate.finer();
                continue;
            }
            let Some(pts) = within(candidate) else { break };
            let mut trial = chosen.clone();
            for d in pts {
                trial.entry(d).or_insert(level);
            }
            if !spaced(scale, &trial, |_, _| policy.min_gap_mm) {
                break;
            }
            best = Some((candidate, trial));
            candidate = candidate.finer();
        }
        match best {
            Some((s, trial)) => {
                step = s;
                chosen = trial;
            }
            None => break,
        }
    }
    chosen.into_iter().collect()
}

fn ratio(coarse: Step, fine: Step) -> Option<f64> {
    let r = coarse.to_f64() / fine.to_f64();
    r.is_finite().then_some(r)
}

/// Every pair of neighbouring marks is at least `need(a, b)` apart.
fn spaced(
    scale: &ScaleSpec,
    marks: &BTreeMap<Decimal, u8>,
    need: impl Fn(Decimal, Decimal) -> f64,
) -> bool {
    let mut prev: Option<(Decimal, f64)> = None;
    for &d in marks.keys() {
        let pos = position(scale, d.to_f64());
        if let Some((p, ppos)) = prev {
            if (pos - ppos).abs() < need(p, d) {
                return false;
            }
        }
        prev = Some((d, pos));
    }
    true
}

fn format_value(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let digits = (4 - 1 - x.abs().log10().floor() as i32).max(0) as usize;
    let s = format!("{x:.digits$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn insert_specials(
    scale: &ScaleSpec,
    policy: &TickPolicy,
    drafts: &mut Vec<Draft>,
    warnings: &mut Vec<String>,
) {
    for mark in &policy.special_values {
        if !scale.contains(mark.value) {
            warnings.push(format!(
                "special value {} lies outside [{}, {}]",
                mark.value,
                scale.x_min(),
                scale.x_max()
            ));
            continue;
        }
        let pos = position(scale, mark.value);
        let clash = drafts
            .iter()
            .any(|t| t.special && (t.pos - pos).abs() < policy.min_gap_mm);
        if clash {
            warnings.push(format!(
                "special value {} is too close to another special value",
                mark.value
            ));
            continue;
        }
        drafts.retain(|t| t.special || (t.pos - pos).abs() >= policy.min_gap_mm);
        drafts.push(Draft {
            value: mark.value,
            decimal: None,
            pos,
            level: 0,
            label: Some(
                mark.label
                    .clone()
                    .unwrap_or_else(|| format_value(mark.value)),
            ),
            special: true,
        });
    }
}

/// Drops the less important of any two marks closer than `min_gap`.
fn enforce_gap(drafts: &mut Vec<Draft>, min_gap: f64) {
    let mut kept: Vec<Draft> = Vec::with_capacity(drafts.len());
    for t in drafts.drain(..) {
        let mut keep_new = true;
        while let Some(last) = kept.last() {
            if t.pos - last.pos >= min_gap {
                break;
            }
            if t.rank() < last.rank() {
                kept.pop();
            } else {
                keep_new = false;
                break;
            }
        }
        if keep_new {
            kept.push(t);
        }
    }
    *drafts = kept;
}

/// Removes the label of the less important of two labelled marks that are
/// too close; a level-0 mark that loses its label drops to level 1.
fn enforce_label_clearance(drafts: &mut [Draft], policy: &TickPolicy) {
    let mut labelled: Vec<usize> = Vec::new();
    for i in 0..drafts.len() {
        if drafts[i].label.is_none() {
            continue;
        }
        let mut keep_new = true;
        while let Some(&j) = labelled.last() {
            let need = policy.label_clearance(
                drafts[j].label.as_deref().unwrap_or(""),
                drafts[i].label.as_deref().unwrap_or(""),
            );
            if drafts[i].pos - drafts[j].pos >= need {
                break;
            }
            if drafts[i].rank() < drafts[j].rank() {
                unlabel(&mut drafts[j]);
                labelled.pop();
            } else {
                keep_new = false;
                break;
            }
        }
        if keep_new {
            labelled.push(i);
        } else {
            unlabel(&mut drafts[i]);
        }
    }
}

fn unlabel(t: &mut Draft) {
    t.label = None;
    if t.level == 0 && !t.special {
        t.level = 1;
    }
}

/// Labels level-1 marks left to right wherever both neighbouring labels
/// leave room.
fn label_second_level(drafts: &mut [Draft], policy: &TickPolicy) {
    let mut next_labelled: Vec<Option<usize>> = vec![None; drafts.len()];
    let mut next = None;
    for i in (0..drafts.len()).rev() {
        next_labelled[i] = next;
        if drafts[i].label.is_some() {
            next = Some(i);
        }
    }
    let mut last: Option<usize> = None;
    for i in 0..drafts.len() {
        if drafts[i].label.is_some() {
            last = Some(i);
            continue;
        }
        if drafts[i].level != 1 {
            continue;
        }
        let text = drafts[i]
            .decimal
            .map(|d| d.to_string())
            .unwrap_or_else(|| format_value(drafts[i].value));
        let fits = |j: Option<usize>| match j {
            None => true,
            Some(j) => {
                let other = drafts[j].label.as_deref().unwrap_or("");
                (drafts[i].pos - drafts[j].pos).abs() >= policy.label_clearance(other, &text)
            }
        };
        if fits(last) && fits(next_labelled[i]) {
            drafts[i].label = Some(text);
            last = Some(i);
        }
    }
}

fn endpoints_only(scale: &ScaleSpec, policy: &TickPolicy) -> Vec<Draft> {
    let end = |x: f64| Draft {
        value: x,
        decimal: None,
        pos: position(scale, x),
        level: 0,
        label: Some(format_value(x)),
        special: false,
    };
    let mut ends = vec![end(scale.x_min()), end(scale.x_max())];
    ends.sort_by(|a, b| a.pos.total_cmp(&b.pos));
    let gap = ends[1].pos - ends[0].pos;
    let need = policy.label_clearance(
        ends[0].label.as_deref().unwrap_or(""),
        ends[1].label.as_deref().unwrap_or(""),
    );
    if gap < policy.min_gap_mm {
        ends.truncate(1);
    } else if gap < need {
        ends[1].level = 1;
        ends[1].label = None;
    }
    ends
}

/// The natural origin of a reciprocal-type scale stands for infinity.
fn infinity_label(
    scale: &ScaleSpec,
    policy: &TickPolicy,
    drafts: &[Draft],
    warnings: &mut Vec<String>,
) -> Vec<EndpointLabel> {
    let reciprocal = matches!(scale.function(), ScaleFunction::Power { alpha } if *alpha < 0.0);
    if !reciprocal || scale.origin() != Origin::Natural {
        return Vec::new();
    }
    let text = "\u{221e}";
    let blocked = drafts.iter().any(|t| {
        t.label
            .as_deref()
            .is_some_and(|l| t.pos.abs() < policy.label_clearance(l, text))
    });
    if blocked {
        warnings.push("no room for the infinity label at the origin".to_string());
        return Vec::new();
    }
    vec![EndpointLabel {
        pos_mm: 0.0,
        text: text.to_string(),
    }]
}
