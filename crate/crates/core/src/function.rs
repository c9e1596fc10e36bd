//! Distance functions that define the geometry of a scale.
//!
//! A value `x` is drawn at distance `u * c * f(x)` from the origin mark, where
//! `f` is one of the strictly monotone functions below.

use std::f64::consts::{E, FRAC_PI_2};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mean Earth radius used by metric horizon scales, in kilometres.
pub const EARTH_RADIUS_KM: f64 = 6371.0;
/// Mean Earth radius used by imperial horizon scales, in miles.
pub const EARTH_RADIUS_MI: f64 = 3959.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScaleFunction {
    /// `log_base(x)`; C and D use base 10.
    Log { base: f64 },
    /// `x^alpha`; alpha = 2 is the quadratic scale, alpha = -1 the reciprocal.
    Power { alpha: f64 },
    /// `R * arccos(R / (R + x))`, the surface distance to the horizon seen
    /// from height `x` above a sphere of radius `R` (same length unit).
    Horizon { radius: f64 },
    /// `log10(log_base(x))`; with base e this is the LL3 scale.
    LogLog { base: f64 },
    /// `x`, a plain ruler.
    Equidistant,
}

/// The interval on which a distance function is defined and strictly monotone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub lo: f64,
    pub lo_inclusive: bool,
    pub hi: f64,
}

impl Domain {
    pub fn contains(&self, x: f64) -> bool {
        if x.is_nan() {
            return false;
        }
        let above = if self.lo_inclusive {
            x >= self.lo
        } else {
            x > self.lo
        };
        above && x < self.hi
    }

    fn describe_lower(&self) -> String {
        if self.lo_inclusive {
            format!("x >= {}", self.lo)
        } else {
            format!("x > {}", self.lo)
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_inclusive { '[' } else { '(' };
        write!(f, "{open}{}, {})", self.lo, self.hi)
    }
}

impl ScaleFunction {
    pub fn reciprocal() -> Self {
        ScaleFunction::Power { alpha: -1.0 }
    }

    pub fn horizon_km() -> Self {
        ScaleFunction::Horizon {
            radius: EARTH_RADIUS_KM,
        }
    }

    pub fn ll3() -> Self {
        ScaleFunction::LogLog { base: E }
    }

    /// Checks the parameters of the function itself.
    pub fn validate(&self) -> Result<()> {
        match *self {
            ScaleFunction::Log { base } => {
                if !(base.is_finite() && base > 0.0 && base != 1.0) {
                    return Err(Error::invalid(format!(
                        "log base must be positive and != 1, got {base}"
                    )));
                }
            }
            ScaleFunction::Power { alpha } => {
                if !alpha.is_finite() || alpha == 0.0 {
                    return Err(Error::InvalidExponent(alpha));
                }
            }
            ScaleFunction::Horizon { radius } => {
                if !(radius.is_finite() && radius > 0.0) {
                    return Err(Error::invalid(format!(
                        "horizon radius must be positive, got {radius}"
                    )));
                }
            }
            ScaleFunction::LogLog { base } => {
                if !(base.is_finite() && base > 1.0) {
                    return Err(Error::invalid(format!(
                        "log-log base must be > 1, got {base}"
                    )));
                }
            }
            ScaleFunction::Equidistant => {}
        }
        Ok(())
    }

    pub fn domain(&self) -> Domain {
        let positive = Domain {
            lo: 0.0,
            lo_inclusive: false,
            hi: f64::INFINITY,
        };
        let non_negative = Domain {
            lo_inclusive: true,
            ..positive
        };
        match *self {
            ScaleFunction::Log { .. } => positive,
            ScaleFunction::Power { alpha } if alpha > 0.0 => non_negative,
            ScaleFunction::Power { .. } => positive,
            ScaleFunction::Horizon { .. } => non_negative,
            ScaleFunction::LogLog { .. } => Domain {
                lo: 1.0,
                lo_inclusive: false,
                hi: f64::INFINITY,
            },
            ScaleFunction::Equidistant => Domain {
                lo: f64::NEG_INFINITY,
                lo_inclusive: false,
                hi: f64::INFINITY,
            },
        }
    }

    pub fn is_increasing(&self) -> bool {
        match *self {
            ScaleFunction::Log { base } => base > 1.0,
            ScaleFunction::Power { alpha } => alpha > 0.0,
            ScaleFunction::Horizon { .. }
            | ScaleFunction::LogLog { .. }
            | ScaleFunction::Equidistant => true,
        }
    }

    /// The exponent `alpha` if `f(c x) = c^alpha f(x)` holds for all `c`.
    pub fn homogeneity_exponent(&self) -> Option<f64> {
        match *self {
            ScaleFunction::Power { alpha } => Some(alpha),
            ScaleFunction::Equidistant => Some(1.0),
            _ => None,
        }
    }

    /// Whether `f` attains (or tends to) zero somewhere on its domain, so that
    /// the origin mark can sit at `f = 0`.
    pub fn has_natural_zero(&self) -> bool {
        !matches!(self, ScaleFunction::LogLog { .. })
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        let domain = self.domain();
        if !domain.contains(x) {
            return Err(Error::domain(x, domain.describe_lower()));
        }
        Ok(self.evaluate_unchecked(x))
    }

    pub(crate) fn evaluate_unchecked(&self, x: f64) -> f64 {
        match *self {
            ScaleFunction::Log { base } => log_base(x, base),
            ScaleFunction::Power { alpha } => power(x, alpha),
            // atan form of acos(R / (R + x)); no cancellation for x << R.
            ScaleFunction::Horizon { radius } => {
                radius * (x * (2.0 * radius + x)).sqrt().atan2(radius)
            }
            ScaleFunction::LogLog { base } => log_base(x, base).log10(),
            ScaleFunction::Equidistant => x,
        }
    }

    /// Closed-form inverse of `f`. Returns `None` when `y` is not in the
    /// image of the function.
    pub fn inverse(&self, y: f64) -> Option<f64> {
        if y.is_nan() {
            return None;
        }
        match *self {
            ScaleFunction::Log { base } => Some(exp_base(y, base)),
            ScaleFunction::Power { alpha } => {
                if alpha > 0.0 {
                    (y >= 0.0).then(|| root(y, alpha))
                } else if y > 0.0 {
                    Some(root(y, alpha))
                } else if y == 0.0 {
                    Some(f64::INFINITY)
                } else {
                    None
                }
            }
            ScaleFunction::Horizon { radius } => {
                let angle = y / radius;
                (0.0..FRAC_PI_2).contains(&angle).then(|| {
                    // R (1/cos t - 1) = 2 R sin^2(t/2) / cos t
                    let half = (angle / 2.0).sin();
                    2.0 * radius * half * half / angle.cos()
                })
            }
            ScaleFunction::LogLog { base } => Some(exp_base(exp_base(y, 10.0), base)),
            ScaleFunction::Equidistant => Some(y),
        }
    }

    /// Least upper bound of `f` on its domain, if finite.
    pub fn supremum(&self) -> Option<f64> {
        match *self {
            ScaleFunction::Horizon { radius } => Some(radius * FRAC_PI_2),
            _ => None,
        }
    }
}

fn log_base(x: f64, base: f64) -> f64 {
    if base == 10.0 {
        x.log10()
    } else if base == 2.0 {
        x.log2()
    } else if base == E {
        x.ln()
    } else {
        x.ln() / base.ln()
    }
}

fn exp_base(y: f64, base: f64) -> f64 {
    if base == E {
        y.exp()
    } else if base == 2.0 {
        y.exp2()
    } else {
        base.powf(y)
    }
}

fn power(x: f64, alpha: f64) -> f64 {
    if alpha.fract() == 0.0 && alpha.abs() <= 16.0 {
        let n = alpha as i32;
        if n == -1 {
            1.0 / x
        } else {
            x.powi(n)
        }
    } else {
        x.powf(alpha)
    }
}

fn root(y: f64, alpha: f64) -> f64 {
    if alpha == 1.0 {
        y
    } else if alpha == -1.0 {
        1.0 / y
    } else if alpha == 2.0 {
        y.sqrt()
    } else if alpha == 3.0 {
        y.cbrt()
    } else {
        y.powf(1.0 / alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_of_two() {
        assert_eq!(ScaleFunction::reciprocal().evaluate(2.0).unwrap(), 0.5);
    }

    #[test]
    fn log_of_one_is_zero() {
        let f = ScaleFunction::Log { base: 10.0 };
        assert_eq!(f.evaluate(1.0).unwrap(), 0.0);
    }

    #[test]
    fn horizon_at_hundred_metres() {
        // R*acos(R/(R+x)) computed in extended precision (mpmath, 50 digits):
        // 35.69570469337401...
        let f = ScaleFunction::horizon_km();
        let got = f.evaluate(0.1).unwrap();
        assert!((got - 35.695_704_693_374_02).abs() < 1e-13 * got, "{got}");
    }

    #[test]
    fn horizon_small_height_matches_series() {
        // f(x) ~ sqrt(2 R x) (1 - 5 x / (12 R)) for x << R.
        let f = ScaleFunction::horizon_km();
        for &x in &[1e-10, 1e-7, 1e-4, 1e-3, 1e-2] {
            let series =
                (2.0 * EARTH_RADIUS_KM * x).sqrt() * (1.0 - 5.0 * x / (12.0 * EARTH_RADIUS_KM));
            let got = f.evaluate(x).unwrap();
            let tol = 1e-13 + (x / EARTH_RADIUS_KM).powi(2);
            assert!(
                ((got - series) / series).abs() < tol,
                "x={x}: {got} vs {series}"
            );
        }
    }

    #[test]
    fn horizon_round_trip_near_zero() {
        let f = ScaleFunction::horizon_km();
        for &x in &[1e-12, 1e-9, 1e-6, 1e-3, 1.0, 1e3, 1e6] {
            let back = f.inverse(f.evaluate(x).unwrap()).unwrap();
            assert!(((back - x) / x).abs() < 1e-13, "x={x}: {back}");
        }
    }

    #[test]
    fn horizon_is_bounded_and_starts_at_zero() {
        let f = ScaleFunction::horizon_km();
        assert_eq!(f.evaluate(0.0).unwrap(), 0.0);
        let sup = f.supremum().unwrap();
        assert!(f.evaluate(1e12).unwrap() < sup);
        assert!(f.evaluate(-1.0).is_err());
    }

    #[test]
    fn domain_errors_name_the_bound() {
        let err = ScaleFunction::Log { base: 10.0 }.evaluate(0.0).unwrap_err();
        assert!(err.to_string().contains("x > 0"), "{err}");
        let err = ScaleFunction::ll3().evaluate(1.0).unwrap_err();
        assert!(err.to_string().contains("x > 1"), "{err}");
        assert!(ScaleFunction::reciprocal().evaluate(0.0).is_err());
        assert!(ScaleFunction::Power { alpha: 2.0 }.evaluate(0.0).is_ok());
    }

    #[test]
    fn power_one_is_equidistant() {
        let p = ScaleFunction::Power { alpha: 1.0 };
        for x in [0.0, 0.3, 7.0, 1234.5] {
            assert_eq!(
                p.evaluate(x).unwrap(),
                ScaleFunction::Equidistant.evaluate(x).unwrap()
            );
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(ScaleFunction::Power { alpha: 0.0 }.validate().is_err());
        assert!(ScaleFunction::Log { base: 1.0 }.validate().is_err());
        assert!(ScaleFunction::LogLog { base: 0.5 }.validate().is_err());
        assert!(ScaleFunction::Horizon { radius: -1.0 }.validate().is_err());
    }

    #[test]
    fn inverse_outside_image() {
        assert_eq!(
            ScaleFunction::horizon_km().inverse(EARTH_RADIUS_KM * 2.0),
            None
        );
        assert_eq!(ScaleFunction::Power { alpha: 2.0 }.inverse(-1.0), None);
        assert_eq!(
            ScaleFunction::reciprocal().inverse(0.0),
            Some(f64::INFINITY)
        );
    }
}
