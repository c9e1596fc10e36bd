//! Detection of "easy" ratios such as 2, 5, 10 or 2.5.

use serde::{Deserialize, Serialize};

pub const DEFAULT_MAX_TERM: u32 = 10;
pub const DEFAULT_REL_TOL: f64 = 1e-6;

/// `value = p / q * 10^exponent` with small `p` and `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalWitness {
    pub p: u32,
    pub q: u32,
    pub exponent: i32,
}

impl RationalWitness {
    pub fn value(&self) -> f64 {
        self.p as f64 / self.q as f64 * 10f64.powi(self.exponent)
    }
}

/// Splits `value` into a mantissa in `[1, 10)` and a power of ten.
fn decade_split(value: f64) -> (f64, i32) {
    let mut exponent = value.log10().floor() as i32;
    let mut mantissa = value / 10f64.powi(exponent);
    if mantissa >= 10.0 {
        mantissa /= 10.0;
        exponent += 1;
    } else if mantissa < 1.0 {
        mantissa *= 10.0;
        exponent -= 1;
    }
    (mantissa, exponent)
}

/// Returns a witness if the decimal mantissa of `value` (in `[1, 10)`) is
/// within `rel_tol` of a fraction whose numerator and denominator are at most
/// `max_term`.
pub fn easy_rational(value: f64, max_term: u32, rel_tol: f64) -> Option<RationalWitness> {
    if !(value.is_finite() && value > 0.0) {
        return None;
    }
    let (mantissa, exponent) = decade_split(value);
    convergent_within(mantissa, max_term as u64, rel_tol).map(|(p, q)| RationalWitness {
        p: p as u32,
        q: q as u32,
        exponent,
    })
}

/// First continued-fraction convergent of `x` within `rel_tol`, as long as
/// its terms stay at most `max`.
fn convergent_within(x: f64, max: u64, rel_tol: f64) -> Option<(u64, u64)> {
    // h_n = a_n h_{n-1} + h_{n-2}, same recurrence for k.
    let (mut h_prev, mut h) = (0u64, 1u64);
    let (mut k_prev, mut k) = (1u64, 0u64);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        if a > max as f64 {
            return None;
        }
        let a = a as u64;
        (h_prev, h) = (h, a * h + h_prev);
        (k_prev, k) = (k, a * k + k_prev);
        if h > max || k > max {
            return None;
        }
        if h > 0 && (h as f64 / k as f64 - x).abs() <= rel_tol * x {
            return Some((h, k));
        }
        let frac = rest - a as f64;
        if frac <= f64::EPSILON {
            return None;
        }
        rest = 1.0 / frac;
    }
    None
}
