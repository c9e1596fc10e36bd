//! Alignment of two `x^alpha` scales of the same length.
//!
//! With `L = u1 * M1^alpha = u2 * M2^alpha` (M the far-end values) the marks
//! `x1` and `x2` coincide exactly when `x2 = T * x1` with `T = M2 / M1`, and
//! the units satisfy `u1 = u2 * T^alpha`.

use serde::{Deserialize, Serialize};

use super::rational::{easy_rational, RationalWitness, DEFAULT_MAX_TERM, DEFAULT_REL_TOL};
use crate::error::{Error, Result};
use crate::scale::ScaleSpec;

const LENGTH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlignmentParams {
    /// Largest numerator or denominator still considered "easy".
    #[serde(default = "default_max_term")]
    pub rational_bound: u32,
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
}

fn default_max_term() -> u32 {
    DEFAULT_MAX_TERM
}

fn default_rel_tol() -> f64 {
    DEFAULT_REL_TOL
}

impl Default for AlignmentParams {
    fn default() -> Self {
        AlignmentParams {
            rational_bound: DEFAULT_MAX_TERM,
            rel_tol: DEFAULT_REL_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignmentReport {
    pub scale1: String,
    pub scale2: String,
    pub alpha: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub aligned_pair_rule: String,
    /// `u1 / u2`, equal to `T^alpha`.
    pub unit_ratio: f64,
    /// The scales do each other's job: `T` is a power of ten times an easy
    /// fraction.
    pub equivalent: bool,
    pub rational_witness: Option<RationalWitness>,
    pub scale1_range: [f64; 2],
    pub scale2_range: [f64; 2],
}

pub fn alignment(a: &ScaleSpec, b: &ScaleSpec) -> Result<AlignmentReport> {
    alignment_with(a, b, &AlignmentParams::default())
}

pub fn alignment_with(
    a: &ScaleSpec,
    b: &ScaleSpec,
    params: &AlignmentParams,
) -> Result<AlignmentReport> {
    let alpha_of = |s: &ScaleSpec| {
        s.function().homogeneity_exponent().ok_or_else(|| {
            Error::IncompatibleScales(format!("{} is not an x^alpha scale", s.name()))
        })
    };
    let alpha = alpha_of(a)?;
    let alpha2 = alpha_of(b)?;
    if alpha != alpha2 {
        return Err(Error::IncompatibleScales(format!(
            "exponents differ: {} has alpha {alpha}, {} has alpha {alpha2}",
            a.name(),
            b.name()
        )));
    }
    let (la, lb) = (a.length_mm(), b.length_mm());
    if (la - lb).abs() > LENGTH_TOL * la.max(lb) {
        return Err(Error::IncompatibleScales(format!(
            "lengths differ: {la} mm vs {lb} mm"
        )));
    }
    for s in [a, b] {
        if s.origin_offset() != 0.0 {
            return Err(Error::IncompatibleScales(format!(
                "{} does not start at f = 0",
                s.name()
            )));
        }
    }
    let t = b.far_end() / a.far_end();
    let witness = easy_rational(t, params.rational_bound, params.rel_tol);
    Ok(AlignmentReport {
        scale1: a.name().to_string(),
        scale2: b.name().to_string(),
        alpha,
        t,
        aligned_pair_rule: "x2 = T * x1".to_string(),
        unit_ratio: a.effective_unit() / b.effective_unit(),
        equivalent: witness.is_some(),
        rational_witness: witness,
        scale1_range: [a.x_min(), a.x_max()],
        scale2_range: [b.x_min(), b.x_max()],
    })
}

fn in_range(x: f64, range: [f64; 2]) -> bool {
    let slack = 1e-12 * range[0].abs().max(range[1].abs()).max(1.0);
    x >= range[0] - slack && x <= range[1] + slack
}

/// The value on the second scale sitting directly at `x1` on the first.
pub fn aligned_value(report: &AlignmentReport, x1: f64) -> Result<f64> {
    let range_err = |value: f64, r: [f64; 2]| Error::Range {
        value,
        lo: r[0],
        hi: r[1],
    };
    if !in_range(x1, report.scale1_range) {
        return Err(range_err(x1, report.scale1_range));
    }
    let x2 = report.t * x1;
    if !in_range(x2, report.scale2_range) {
        return Err(range_err(x2, report.scale2_range));
    }
    Ok(x2)
}
