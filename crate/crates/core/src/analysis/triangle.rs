//! Which right triangles `c = sqrt(a^2 + b^2)` fit on one quadratic scale.
//!
//! For a given leg `a` on a scale that resolves `[x_lo, x_hi]`, the other leg
//! is limited to `b in [tau1 * a, tau2 * a]` where `tau1 = x_lo / a` keeps `b`
//! readable and `tau2 = sqrt((x_hi / a)^2 - 1)` keeps the hypotenuse on the
//! scale.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleUnit {
    #[default]
    Degrees,
    Radians,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangleReport {
    pub a: f64,
    pub x_lo: f64,
    pub x_hi: f64,
    /// Some triangle with leg `a` fits.
    pub feasible: bool,
    pub tau1: f64,
    pub tau2: f64,
    /// `arctan(tau1)`, the smallest angle opposite the other leg.
    pub angle_low: f64,
    /// `arctan(tau2)`.
    pub angle_high: f64,
    pub angle_unit: AngleUnit,
    /// `[a * tau1, a * tau2]`
    pub b_interval: Option<[f64; 2]>,
    /// `[a * sqrt(1 + tau1^2), a * sqrt(1 + tau2^2)]`
    pub c_interval: Option<[f64; 2]>,
}

pub fn triangle_range(a: f64, x_lo: f64, x_hi: f64) -> Result<TriangleReport> {
    triangle_range_in(a, x_lo, x_hi, AngleUnit::Degrees)
}

pub fn triangle_range_in(a: f64, x_lo: f64, x_hi: f64, unit: AngleUnit) -> Result<TriangleReport> {
    if !(x_lo.is_finite() && x_hi.is_finite() && x_lo > 0.0 && x_lo < x_hi) {
        return Err(Error::domain(x_lo, format!("0 < x_lo < x_hi = {x_hi}")));
    }
    if !(a >= x_lo && a <= x_hi) {
        return Err(Error::Range {
            value: a,
            lo: x_lo,
            hi: x_hi,
        });
    }
    let tau1 = x_lo / a;
    let ratio = x_hi / a;
    let tau2 = (ratio * ratio - 1.0).max(0.0).sqrt();
    let angle = |tau: f64| match unit {
        AngleUnit::Degrees => tau.atan().to_degrees(),
        AngleUnit::Radians => tau.atan(),
    };
    let feasible = tau1 < tau2;
    let hyp = |tau: f64| a * (1.0 + tau * tau).sqrt();
    Ok(TriangleReport {
        a,
        x_lo,
        x_hi,
        feasible,
        tau1,
        tau2,
        angle_low: angle(tau1),
        angle_high: angle(tau2),
        angle_unit: unit,
        b_interval: feasible.then_some([a * tau1, a * tau2]),
        c_interval: feasible.then(|| [hyp(tau1), hyp(tau2)]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const X_LO: f64 = 31.54;

    #[test]
    fn leg_forty() {
        let r = triangle_range(40.0, X_LO, 100.0).unwrap();
        assert!(r.feasible);
        assert!((r.tau1 - 0.7886).abs() < 5e-4, "{}", r.tau1);
        assert!((r.angle_low - 38.26).abs() < 0.02, "{}", r.angle_low);
        assert!((r.tau2 - 2.291).abs() < 2e-3, "{}", r.tau2);
        assert!((r.angle_high - 66.42).abs() < 0.02, "{}", r.angle_high);
        let b = r.b_interval.unwrap();
        assert!(
            (b[0] - 31.54).abs() < 0.02 && (b[1] - 91.64).abs() < 0.02,
            "{b:?}"
        );
        let c = r.c_interval.unwrap();
        assert!((c[1] - 100.0).abs() < 1e-9);
    }

    #[test]
    fn leg_thirty_two() {
        let r = triangle_range(32.0, X_LO, 100.0).unwrap();
        assert!((r.tau2 - 2.961).abs() < 2e-3, "{}", r.tau2);
        assert!((r.angle_high - 71.34).abs() < 0.02, "{}", r.angle_high);
    }

    #[test]
    fn leg_at_top_is_empty() {
        let r = triangle_range(100.0, X_LO, 100.0).unwrap();
        assert!(!r.feasible);
        assert_eq!(r.tau2, 0.0);
        assert_eq!(r.b_interval, None);
    }

    #[test]
    fn radians() {
        let r = triangle_range_in(40.0, X_LO, 100.0, AngleUnit::Radians).unwrap();
        assert!((r.angle_high.to_degrees() - 66.42).abs() < 0.02);
    }

    #[test]
    fn leg_off_scale() {
        assert!(matches!(
            triangle_range(20.0, X_LO, 100.0),
            Err(Error::Range { .. })
        ));
        assert!(triangle_range(120.0, X_LO, 100.0).is_err());
        assert!(triangle_range(50.0, 100.0, 31.0).is_err());
    }

    #[test]
    fn intervals_stay_on_scale() {
        for i in 0..200 {
            let a = X_LO + (100.0 - X_LO) * i as f64 / 199.0;
            let r = triangle_range(a, X_LO, 100.0).unwrap();
            assert!(r.tau1 < (1.0 + r.tau1 * r.tau1).sqrt());
            assert!(r.tau2 < (1.0 + r.tau2 * r.tau2).sqrt());
            if let (Some(b), Some(c)) = (r.b_interval, r.c_interval) {
                assert!(r.angle_low < r.angle_high);
                for v in b.iter().chain(c.iter()) {
                    assert!(*v >= X_LO - 1e-9 && *v <= 100.0 + 1e-9, "a={a}: {v}");
                }
            }
        }
    }
}
