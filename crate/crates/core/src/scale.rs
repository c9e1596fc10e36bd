//! Concrete scales: a distance function pinned to a physical length.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::ScaleFunction;
use crate::numeric::bisect_monotone;

/// Relative tolerance (of the scale length) for positions at the scale ends.
pub const POSITION_TOL: f64 = 1e-9;
const VALUE_TOL: f64 = 1e-12;
const BISECT_TOL: f64 = 1e-12;

/// Which physical end of the strip carries the origin mark.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    #[default]
    LeftToRight,
    RightToLeft,
}

/// Where the origin mark (position 0) sits in f-space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    /// At `f = 0`: `log 1`, `0^alpha`, horizon height 0, or the `inf` end of a
    /// reciprocal scale.
    Natural,
    /// At the end of the value range where `f` is smallest.
    RangeEnd,
}

impl Origin {
    /// Natural where `f` vanishes somewhere sensible, range end for the
    /// reciprocal and log-log families.
    pub fn default_for(function: &ScaleFunction) -> Self {
        match function {
            ScaleFunction::Power { alpha } if *alpha < 0.0 => Origin::RangeEnd,
            f if f.has_natural_zero() => Origin::Natural,
            _ => Origin::RangeEnd,
        }
    }
}

/// A scale with validated, mutually consistent geometry:
/// `length = unit * zoom * (f(far end) - offset)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ScaleSpecDoc", into = "ScaleSpecDoc")]
pub struct ScaleSpec {
    name: String,
    function: ScaleFunction,
    length_mm: f64,
    unit_mm: f64,
    zoom: f64,
    x_min: f64,
    x_max: f64,
    units_label: String,
    orientation: Orientation,
    origin: Origin,
    offset: f64,
}

impl ScaleSpec {
    pub fn builder(name: impl Into<String>, function: ScaleFunction) -> ScaleBuilder {
        ScaleBuilder {
            name: name.into(),
            function,
            length_mm: None,
            unit_mm: None,
            zoom: 1.0,
            x_min: None,
            x_max: None,
            units_label: String::new(),
            orientation: Orientation::LeftToRight,
            origin: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn function(&self) -> &ScaleFunction {
        &self.function
    }

    pub fn length_mm(&self) -> f64 {
        self.length_mm
    }

    pub fn unit_mm(&self) -> f64 {
        self.unit_mm
    }

    pub fn zoom(&self) -> f64 {
        self.zoom
    }

    /// `unit * zoom`, the length of one f-unit on the strip.
    pub fn effective_unit(&self) -> f64 {
        self.unit_mm * self.zoom
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn units_label(&self) -> &str {
        &self.units_label
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    /// The f-value sitting at position 0.
    pub fn origin_offset(&self) -> f64 {
        self.offset
    }

    /// The value printed at position 0 (infinite for a reciprocal scale with
    /// a natural origin).
    pub fn origin_value(&self) -> f64 {
        match self.origin {
            Origin::RangeEnd => self.near_end(),
            Origin::Natural => self.function.inverse(self.offset).unwrap_or(f64::INFINITY),
        }
    }

    /// Range end closest to the origin.
    pub fn near_end(&self) -> f64 {
        if self.function.is_increasing() {
            self.x_min
        } else {
            self.x_max
        }
    }

    /// Range end at the far side of the strip.
    pub fn far_end(&self) -> f64 {
        if self.function.is_increasing() {
            self.x_max
        } else {
            self.x_min
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let slack = VALUE_TOL * self.x_min.abs().max(self.x_max.abs()).max(1.0);
        x >= self.x_min - slack && x <= self.x_max + slack
    }

    /// Distance of `x` from the origin mark, in mm.
    pub fn position(&self, x: f64) -> Result<f64> {
        if !self.contains(x) {
            return Err(Error::Range {
                value: x,
                lo: self.x_min,
                hi: self.x_max,
            });
        }
        self.position_unbounded(x)
    }

    /// Like [`position`](Self::position) but only checks the function domain,
    /// so values beyond the printed range can be located too.
    pub fn position_unbounded(&self, x: f64) -> Result<f64> {
        Ok(self.effective_unit() * (self.function.evaluate(x)? - self.offset))
    }

    /// The value under distance `d` from the origin, inverting the distance
    /// function in closed form where possible.
    pub fn value_at(&self, d: f64) -> Result<f64> {
        let tol = POSITION_TOL * self.length_mm;
        if !(d >= -tol && d <= self.length_mm + tol) {
            return Err(Error::Range {
                value: d,
                lo: 0.0,
                hi: self.length_mm,
            });
        }
        let target = self.offset + d.clamp(0.0, self.length_mm) / self.effective_unit();
        if let Some(x) = self.function.inverse(target) {
            return Ok(x);
        }
        self.value_at_bisection(target)
    }

    fn value_at_bisection(&self, target: f64) -> Result<f64> {
        let f = self.function;
        bisect_monotone(
            |x| f.evaluate_unchecked(x),
            target,
            self.x_min,
            self.x_max,
            BISECT_TOL,
        )
        .ok_or(Error::Range {
            value: target,
            lo: self.x_min,
            hi: self.x_max,
        })
    }

    /// Physical x-coordinate (mm from the left edge of the strip) of distance `d`.
    pub fn oriented(&self, d: f64) -> f64 {
        match self.orientation {
            Orientation::LeftToRight => d,
            Orientation::RightToLeft => self.length_mm - d,
        }
    }

    /// Same unit and range under another zoom factor. Every position, and the
    /// length, is multiplied by `zoom / self.zoom()`.
    pub fn with_zoom(&self, zoom: f64) -> Result<ScaleSpec> {
        if !(zoom.is_finite() && zoom > 0.0) {
            return Err(Error::invalid(format!("zoom must be positive, got {zoom}")));
        }
        let mut out = self.clone();
        out.length_mm = self.length_mm * zoom / self.zoom;
        out.zoom = zoom;
        Ok(out)
    }
}

/// If every position on `b` is a fixed multiple of the matching position on
/// `a`, returns that multiple.
pub fn zoom_related(a: &ScaleSpec, b: &ScaleSpec) -> Option<f64> {
    if a.function != b.function {
        return None;
    }
    let scale = a.offset.abs().max(b.offset.abs()).max(1.0);
    if (a.offset - b.offset).abs() > VALUE_TOL * scale {
        return None;
    }
    Some(b.effective_unit() / a.effective_unit())
}

pub struct ScaleBuilder {
    name: String,
    function: ScaleFunction,
    length_mm: Option<f64>,
    unit_mm: Option<f64>,
    zoom: f64,
    x_min: Option<f64>,
    x_max: Option<f64>,
    units_label: String,
    orientation: Orientation,
    origin: Option<Origin>,
}

impl ScaleBuilder {
    pub fn length_mm(mut self, length: f64) -> Self {
        self.length_mm = Some(length);
        self
    }

    pub fn unit_mm(mut self, unit: f64) -> Self {
        self.unit_mm = Some(unit);
        self
    }

    pub fn zoom(mut self, zoom: f64) -> Self {
        self.zoom = zoom;
        self
    }

    pub fn range(mut self, x_min: f64, x_max: f64) -> Self {
        self.x_min = Some(x_min);
        self.x_max = Some(x_max);
        self
    }

    pub fn x_min(mut self, x_min: f64) -> Self {
        self.x_min = Some(x_min);
        self
    }

    pub fn x_max(mut self, x_max: f64) -> Self {
        self.x_max = Some(x_max);
        self
    }

    pub fn units_label(mut self, label: impl Into<String>) -> Self {
        self.units_label = label.into();
        self
    }

    pub fn orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn origin(mut self, origin: Origin) -> Self {
        self.origin = Some(origin);
        self
    }

    /// Resolves the geometry. Either the unit or both range ends must be
    /// known; the missing far end is derived from the unit.
    pub fn build(self) -> Result<ScaleSpec> {
        let f = self.function;
        f.validate()?;
        let name = self.name;
        if name.trim().is_empty() {
            return Err(Error::invalid("scale name is empty"));
        }
        let length = self
            .length_mm
            .ok_or_else(|| Error::invalid(format!("{name}: length_mm is required")))?;
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::invalid(format!(
                "{name}: length_mm must be positive"
            )));
        }
        if !(self.zoom.is_finite() && self.zoom > 0.0) {
            return Err(Error::invalid(format!("{name}: zoom must be positive")));
        }
        if let Some(u) = self.unit_mm {
            if !(u.is_finite() && u > 0.0) {
                return Err(Error::invalid(format!("{name}: unit must be positive")));
            }
        }
        let origin = self.origin.unwrap_or_else(|| Origin::default_for(&f));
        if origin == Origin::Natural && !f.has_natural_zero() {
            return Err(Error::invalid(format!(
                "{name}: this function has no natural origin"
            )));
        }

        let increasing = f.is_increasing();
        let (near, far) = if increasing {
            (self.x_min, self.x_max)
        } else {
            (self.x_max, self.x_min)
        };
        let near = match (near, origin) {
            (Some(v), _) => v,
            (None, Origin::Natural) => f
                .inverse(0.0)
                .filter(|v| v.is_finite() && f.domain().contains(*v))
                .ok_or_else(|| {
                    Error::invalid(format!("{name}: range end at the origin is required"))
                })?,
            (None, Origin::RangeEnd) => {
                return Err(Error::invalid(format!(
                    "{name}: range end at the origin is required"
                )))
            }
        };
        let f_near = f.evaluate(near)?;
        let offset = match origin {
            Origin::Natural => 0.0,
            Origin::RangeEnd => f_near,
        };
        if f_near - offset < -VALUE_TOL * offset.abs().max(1.0) {
            return Err(Error::invalid(format!(
                "{name}: range end {near} lies on the far side of the origin"
            )));
        }

        let (unit, far) = match (self.unit_mm, far) {
            (Some(u), far) => {
                let f_far = offset + length / (u * self.zoom);
                let derived = f.inverse(f_far).filter(|v| v.is_finite()).ok_or_else(|| {
                    Error::invalid(format!(
                        "{name}: unit {u} places the far end beyond the function's range"
                    ))
                })?;
                if let Some(given) = far {
                    let pos = u * self.zoom * (f.evaluate(given)? - offset);
                    if (pos - length).abs() > POSITION_TOL * length {
                        return Err(Error::invalid(format!(
                            "{name}: unit {u} puts {given} at {pos} mm, not at length {length} mm"
                        )));
                    }
                    (u, given)
                } else {
                    (u, derived)
                }
            }
            (None, Some(far)) => {
                let span = f.evaluate(far)? - offset;
                if span.is_nan() || span <= 0.0 {
                    return Err(Error::invalid(format!(
                        "{name}: empty range, far end {far} is at the origin"
                    )));
                }
                (length / (self.zoom * span), far)
            }
            (None, None) => {
                return Err(Error::invalid(format!(
                    "{name}: either unit or both range ends are required"
                )))
            }
        };
        let (x_min, x_max) = if increasing { (near, far) } else { (far, near) };
        if x_min.is_nan() || x_max.is_nan() || x_min >= x_max {
            return Err(Error::invalid(format!(
                "{name}: x_min {x_min} must be below x_max {x_max}"
            )));
        }
        let domain = f.domain();
        for v in [x_min, x_max] {
            if !domain.contains(v) {
                return Err(Error::invalid(format!(
                    "{name}: range end {v} outside the domain {domain}"
                )));
            }
        }
        Ok(ScaleSpec {
            name,
            function: f,
            length_mm: length,
            unit_mm: unit,
            zoom: self.zoom,
            x_min,
            x_max,
            units_label: self.units_label,
            orientation: self.orientation,
            origin,
            offset,
        })
    }
}

/// Function parameters in the JSON form of a scale.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<f64>,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionKind {
    Log,
    Power,
    Horizon,
    Loglog,
    Equidistant,
}

/// The JSON document form of a [`ScaleSpec`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaleSpecDoc {
    pub name: String,
    pub kind: FunctionKind,
    #[serde(default)]
    pub params: FunctionParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length_mm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<f64>,
    #[serde(default = "one")]
    pub zoom: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_max: Option<f64>,
    #[serde(default)]
    pub units_label: String,
    #[serde(default)]
    pub orientation: Orientation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<Origin>,
}

fn one() -> f64 {
    1.0
}

impl ScaleSpecDoc {
    pub fn function(&self) -> Result<ScaleFunction> {
        let p = &self.params;
        let need = |v: Option<f64>, key: &str| {
            v.ok_or_else(|| Error::invalid(format!("{}: params.{key} is required", self.name)))
        };
        Ok(match self.kind {
            FunctionKind::Log => ScaleFunction::Log {
                base: p.base.unwrap_or(10.0),
            },
            FunctionKind::Power => ScaleFunction::Power {
                alpha: need(p.alpha, "alpha")?,
            },
            FunctionKind::Horizon => ScaleFunction::Horizon {
                radius: p.radius.unwrap_or(crate::function::EARTH_RADIUS_KM),
            },
            FunctionKind::Loglog => ScaleFunction::LogLog {
                base: p.base.unwrap_or(std::f64::consts::E),
            },
            FunctionKind::Equidistant => ScaleFunction::Equidistant,
        })
    }

    /// Builds the scale, letting a surrounding layout supply the length.
    pub fn build_with_length(&self, default_length: Option<f64>) -> Result<ScaleSpec> {
        let mut b = ScaleSpec::builder(self.name.clone(), self.function()?)
            .zoom(self.zoom)
            .units_label(self.units_label.clone())
            .orientation(self.orientation);
        if let Some(l) = self.length_mm.or(default_length) {
            b = b.length_mm(l);
        }
        if let Some(u) = self.unit {
            b = b.unit_mm(u);
        }
        if let Some(v) = self.x_min {
            b = b.x_min(v);
        }
        if let Some(v) = self.x_max {
            b = b.x_max(v);
        }
        if let Some(o) = self.origin {
            b = b.origin(o);
        }
        b.build()
    }
}

impl TryFrom<ScaleSpecDoc> for ScaleSpec {
    type Error = Error;

    fn try_from(doc: ScaleSpecDoc) -> Result<Self> {
        doc.build_with_length(None)
    }
}

impl From<ScaleSpec> for ScaleSpecDoc {
    fn from(s: ScaleSpec) -> Self {
        let (kind, params) = match s.function {
            ScaleFunction::Log { base } => (
                FunctionKind::Log,
                FunctionParams {
                    base: Some(base),
                    ..Default::default()
                },
            ),
            ScaleFunction::Power { alpha } => (
                FunctionKind::Power,
                FunctionParams {
                    alpha: Some(alpha),
                    ..Default::default()
                },
            ),
            ScaleFunction::Horizon { radius } => (
                FunctionKind::Horizon,
                FunctionParams {
                    radius: Some(radius),
                    ..Default::default()
                },
            ),
            ScaleFunction::LogLog { base } => (
                FunctionKind::Loglog,
                FunctionParams {
                    base: Some(base),
                    ..Default::default()
                },
            ),
            ScaleFunction::Equidistant => (FunctionKind::Equidistant, FunctionParams::default()),
        };
        ScaleSpecDoc {
            name: s.name,
            kind,
            params,
            length_mm: Some(s.length_mm),
            unit: Some(s.unit_mm),
            zoom: s.zoom,
            x_min: Some(s.x_min),
            x_max: Some(s.x_max),
            units_label: s.units_label,
            orientation: s.orientation,
            origin: Some(s.origin),
        }
    }
}
