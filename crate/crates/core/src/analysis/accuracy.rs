//! Legibility of neighbouring marks.
//!
//! Two values `x` and `s*x` (with `s = 1.01` for two significant digits) can
//! be told apart when their marks are at least `h` mm apart:
//! `u * |f(s*x) - f(x)| >= h`. For `f = x^alpha` the separation is
//! `u * |s^alpha - 1| * x^alpha`, which is monotone in `x`, so only one end of
//! the range can be illegible and it has a closed-form limit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, RangeEnd, Result};
use crate::function::ScaleFunction;
use crate::numeric::bisect_predicate;
use crate::scale::ScaleSpec;

pub const DEFAULT_SEPARATION_FACTOR: f64 = 1.01;

const SAMPLES: usize = 4096;
/// Rounding slack when comparing a separation against `h`.
const LEGIBILITY_RTOL: f64 = 1e-12;
const BOUNDARY_TOL: f64 = 1e-13;

fn default_separation_factor() -> f64 {
    DEFAULT_SEPARATION_FACTOR
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AccuracyParams {
    /// Smallest mark separation the eye resolves, in mm.
    pub h: f64,
    #[serde(default = "default_separation_factor")]
    pub separation_factor: f64,
}

impl AccuracyParams {
    pub fn new(h: f64) -> Result<Self> {
        Self::with_factor(h, DEFAULT_SEPARATION_FACTOR)
    }

    pub fn with_factor(h: f64, separation_factor: f64) -> Result<Self> {
        let p = AccuracyParams {
            h,
            separation_factor,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h.is_finite() && self.h >= 0.0) {
            return Err(Error::domain(self.h, "h >= 0"));
        }
        if !(self.separation_factor.is_finite() && self.separation_factor > 1.0) {
            return Err(Error::domain(
                self.separation_factor,
                "separation_factor > 1",
            ));
        }
        Ok(())
    }

    /// `|s^alpha - 1|`
    fn power_gain(&self, alpha: f64) -> f64 {
        (self.separation_factor.powf(alpha) - 1.0).abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AccuracyMethod {
    /// `x^alpha` root formula.
    ClosedForm,
    /// Logarithmic scales: the separation is the same everywhere.
    ConstantSeparation,
    /// Sampling plus bisection on the separation itself.
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracyReport {
    pub scale: String,
    /// Some part of the range is legible.
    pub feasible: bool,
    /// The end of the range where legibility runs out first.
    pub binding_end: RangeEnd,
    /// Unit (mm per f-unit, before zoom) that makes the binding value legible.
    /// The binding value is the legibility limit clipped to the range, so for
    /// a feasible scale whose range reaches the limit this is the scale's own
    /// unit. `None` when no finite unit separates the binding marks.
    pub required_u: Option<f64>,
    /// Smallest (or, on decreasing-separation scales, largest) legible value.
    pub resolvable_x_bound: Option<f64>,
    /// The legible part of `[x_min, x_max]`.
    pub resolvable_range: Option<[f64; 2]>,
    pub method: AccuracyMethod,
}

/// Minimal unit for which `x` and `s*x` on an `x^alpha` scale are `h` apart.
/// `binding_x` is the low range end for `alpha > 0`, the high end otherwise.
pub fn required_unit(alpha: f64, params: &AccuracyParams, binding_x: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha == 0.0 {
        return Err(Error::InvalidExponent(alpha));
    }
    params.validate()?;
    if !(binding_x.is_finite() && binding_x > 0.0) {
        return Err(Error::domain(binding_x, "binding x > 0"));
    }
    Ok(params.h / (params.power_gain(alpha) * binding_x.powf(alpha)))
}

/// Mark separation in mm between `x` and `s*x`.
pub fn separation(scale: &ScaleSpec, params: &AccuracyParams, x: f64) -> Result<f64> {
    let f = scale.function();
    let near = f.evaluate(x)?;
    let far = f.evaluate(params.separation_factor * x)?;
    Ok(scale.effective_unit() * (far - near).abs())
}

/// Whether `x` can be told apart from `s*x` on this scale. Valid for every
/// distance function.
pub fn check_accuracy(scale: &ScaleSpec, params: &AccuracyParams, x: f64) -> Result<bool> {
    params.validate()?;
    Ok(legible(separation(scale, params, x)?, params.h))
}

fn legible(separation: f64, h: f64) -> bool {
    separation >= h * (1.0 - LEGIBILITY_RTOL)
}

/// The legibility limit `f^-1(h / (|s^alpha - 1| * u))` of a homogeneous
/// scale, computed through the scale's own inverse.
pub fn resolvable_limit_via_inverse(scale: &ScaleSpec, params: &AccuracyParams) -> Result<f64> {
    let alpha = homogeneous_alpha(scale)?;
    let arg = params.h / (params.power_gain(alpha) * scale.effective_unit());
    scale
        .function()
        .inverse(arg)
        .ok_or_else(|| Error::domain(arg, "argument in the image of f"))
}

/// The legibility limit of a homogeneous scale as an `alpha`-th root.
pub fn resolvable_limit_closed_form(scale: &ScaleSpec, params: &AccuracyParams) -> Result<f64> {
    let alpha = homogeneous_alpha(scale)?;
    let arg = params.h / (params.power_gain(alpha) * scale.effective_unit());
    Ok(arg.powf(1.0 / alpha))
}

fn homogeneous_alpha(scale: &ScaleSpec) -> Result<f64> {
    scale.function().homogeneity_exponent().ok_or_else(|| {
        Error::IncompatibleScales(format!(
            "{}: legibility limit formula needs a homogeneous x^alpha scale",
            scale.name()
        ))
    })
}

/// Finds which part of the scale's range is legible.
pub fn resolvable_bound(scale: &ScaleSpec, params: &AccuracyParams) -> Result<AccuracyReport> {
    params.validate()?;
    if let ScaleFunction::Log { base } = *scale.function() {
        return Ok(constant_report(scale, params, base));
    }
    match scale.function().homogeneity_exponent() {
        Some(alpha) if scale.x_min() > 0.0 || (scale.x_min() == 0.0 && alpha > 0.0) => {
            closed_form_report(scale, params)
        }
        _ => numeric_report(scale, params),
    }
}

fn closed_form_report(scale: &ScaleSpec, params: &AccuracyParams) -> Result<AccuracyReport> {
    let alpha = homogeneous_alpha(scale)?;
    let limit = resolvable_limit_closed_form(scale, params)?;
    let (lo, hi) = (scale.x_min(), scale.x_max());
    let (binding_end, feasible, range) = if alpha > 0.0 {
        let start = limit.max(lo);
        (RangeEnd::Min, start <= hi, [start, hi])
    } else {
        let end = limit.min(hi);
        (RangeEnd::Max, end >= lo, [lo, end])
    };
    let binding_x = limit.clamp(lo, hi);
    let required_u = if params.h == 0.0 {
        0.0
    } else if binding_x == limit {
        // The limit was derived from this unit.
        scale.unit_mm()
    } else if binding_x > 0.0 {
        required_unit(alpha, params, binding_x)? / scale.zoom()
    } else {
        f64::INFINITY
    };
    Ok(AccuracyReport {
        scale: scale.name().to_string(),
        feasible,
        binding_end,
        required_u: required_u.is_finite().then_some(required_u),
        resolvable_x_bound: limit.is_finite().then_some(limit),
        resolvable_range: feasible.then_some(range),
        method: AccuracyMethod::ClosedForm,
    })
}

fn constant_report(scale: &ScaleSpec, params: &AccuracyParams, base: f64) -> AccuracyReport {
    let per_unit = (params.separation_factor.ln() / base.ln()).abs();
    let feasible = legible(scale.effective_unit() * per_unit, params.h);
    AccuracyReport {
        scale: scale.name().to_string(),
        feasible,
        binding_end: RangeEnd::Min,
        required_u: Some(params.h / (scale.zoom() * per_unit)),
        resolvable_x_bound: feasible.then_some(scale.x_min()),
        resolvable_range: feasible.then_some([scale.x_min(), scale.x_max()]),
        method: AccuracyMethod::ConstantSeparation,
    }
}

fn numeric_report(scale: &ScaleSpec, params: &AccuracyParams) -> Result<AccuracyReport> {
    let (lo, hi) = (scale.x_min(), scale.x_max());
    let legible = |x: f64| separation(scale, params, x).is_ok_and(|s| legible(s, params.h));
    let geometric = lo > 0.0;
    let sample = |i: usize| {
        let t = i as f64 / (SAMPLES - 1) as f64;
        if i == SAMPLES - 1 {
            hi
        } else if geometric {
            lo * (hi / lo).powf(t)
        } else {
            lo + (hi - lo) * t
        }
    };
    let xs: Vec<f64> = (0..SAMPLES).map(sample).collect();
    let flags: Vec<bool> = xs.iter().map(|&x| legible(x)).collect();
    let first = flags.iter().position(|&b| b);
    let last = flags.iter().rposition(|&b| b);

    let sep_at = |x: f64| separation(scale, params, x).unwrap_or(0.0);
    let name = scale.name().to_string();
    let (Some(first), Some(last)) = (first, last) else {
        let binding_end = if sep_at(lo) <= sep_at(hi) {
            RangeEnd::Min
        } else {
            RangeEnd::Max
        };
        let bx = if binding_end == RangeEnd::Min { lo } else { hi };
        return Ok(AccuracyReport {
            scale: name,
            feasible: false,
            binding_end,
            required_u: required_unit_general(scale, params, bx),
            resolvable_x_bound: None,
            resolvable_range: None,
            method: AccuracyMethod::Numeric,
        });
    };
    let start = if first == 0 {
        lo
    } else {
        bisect_predicate(legible, xs[first - 1], xs[first], BOUNDARY_TOL)
    };
    let end = if last == SAMPLES - 1 {
        hi
    } else {
        bisect_predicate(legible, xs[last], xs[last + 1], BOUNDARY_TOL)
    };
    let binding_end = if first > 0 {
        RangeEnd::Min
    } else if last < SAMPLES - 1 {
        RangeEnd::Max
    } else if sep_at(lo) <= sep_at(hi) {
        RangeEnd::Min
    } else {
        RangeEnd::Max
    };
    let bound = match binding_end {
        RangeEnd::Min => start,
        RangeEnd::Max => end,
    };
    Ok(AccuracyReport {
        scale: name,
        feasible: true,
        binding_end,
        required_u: required_unit_general(scale, params, bound),
        resolvable_x_bound: Some(bound),
        resolvable_range: Some([start, end]),
        method: AccuracyMethod::Numeric,
    })
}

fn required_unit_general(scale: &ScaleSpec, params: &AccuracyParams, x: f64) -> Option<f64> {
    if params.h == 0.0 {
        return Some(0.0);
    }
    let f = scale.function();
    let gap = (f.evaluate(params.separation_factor * x).ok()? - f.evaluate(x).ok()?).abs();
    let u = params.h / (scale.zoom() * gap);
    u.is_finite().then_some(u)
}
