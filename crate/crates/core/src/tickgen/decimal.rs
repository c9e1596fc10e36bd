//! Exact decimal tick values, so that 0.3 is "0.3" and not 0.30000000000000004.

use std::cmp::Ordering;
use std::fmt;

/// `mantissa * 10^exp`, normalised so the mantissa has no trailing zeros.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Decimal {
    mantissa: i64,
    exp: i32,
}

impl Decimal {
    pub fn new(mantissa: i64, exp: i32) -> Self {
        if mantissa == 0 {
            return Decimal {
                mantissa: 0,
                exp: 0,
            };
        }
        let (mut m, mut e) = (mantissa, exp);
        while m % 10 == 0 {
            m /= 10;
            e += 1;
        }
        Decimal {
            mantissa: m,
            exp: e,
        }
    }

    pub fn to_f64(self) -> f64 {
        let m = self.mantissa as f64;
        if self.exp >= 0 {
            m * 10f64.powi(self.exp)
        } else {
            // Division by an exact power of ten rounds correctly.
            m / 10f64.powi(-self.exp)
        }
    }

    /// Number of characters of the printed label.
    pub fn label_len(self) -> usize {
        self.to_string().chars().count()
    }
}

impl Ord for Decimal {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.min(other.exp);
        let scale = |d: &Decimal| d.mantissa as i128 * 10i128.pow((d.exp - e) as u32);
        scale(self).cmp(&scale(other))
    }
}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.mantissa < 0 { "-" } else { "" };
        let digits = self.mantissa.unsigned_abs().to_string();
        if self.exp >= 0 {
            return write!(f, "{sign}{digits}{}", "0".repeat(self.exp as usize));
        }
        let frac = (-self.exp) as usize;
        if digits.len() > frac {
            let (int, dec) = digits.split_at(digits.len() - frac);
            write!(f, "{sign}{int}.{dec}")
        } else {
            write!(f, "{sign}0.{}{digits}", "0".repeat(frac - digits.len()))
        }
    }
}

/// A tick spacing `digit * 10^exp` with `digit` in {1, 2, 5}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub digit: u8,
    pub exp: i32,
}

impl Step {
    pub fn to_f64(self) -> f64 {
        Decimal::new(self.digit as i64, self.exp).to_f64()
    }

    /// Smallest step of the 1-2-5 ladder that is at least `span`.
    pub fn covering(span: f64) -> Self {
        let mut exp = span.log10().floor() as i32;
        loop {
            for digit in [1u8, 2, 5] {
                let s = Step { digit, exp };
                if s.to_f64() >= span {
                    return s;
                }
            }
            exp += 1;
        }
    }

    /// Next finer step on the ladder: 5 -> 2 -> 1 -> 0.5 ...
    pub fn finer(self) -> Self {
        match self.digit {
            5 => Step { digit: 2, ..self },
            2 => Step { digit: 1, ..self },
            _ => Step {
                digit: 5,
                exp: self.exp - 1,
            },
        }
    }

    /// `self / other` if it is a whole number.
    pub fn ratio_to(self, finer: Step) -> Option<u32> {
        let e = self.exp.min(finer.exp);
        let a = self.digit as u64 * 10u64.checked_pow((self.exp - e) as u32)?;
        let b = finer.digit as u64 * 10u64.checked_pow((finer.exp - e) as u32)?;
        a.is_multiple_of(b).then(|| (a / b) as u32)
    }

    /// All multiples of this step within `[lo, hi]`, or `None` if there are
    /// more than `limit` of them.
    pub fn multiples(self, lo: f64, hi: f64, limit: usize) -> Option<Vec<Decimal>> {
        let s = self.to_f64();
        let first = (lo / s - 1e-9).ceil();
        let last = (hi / s + 1e-9).floor();
        if !(first.is_finite() && last.is_finite()) {
            return None;
        }
        if last < first {
            return Some(Vec::new());
        }
        if last - first > limit as f64 || first.abs() > 1e15 || last.abs() > 1e15 {
            return None;
        }
        let (first, last) = (first as i64, last as i64);
        (first..=last)
            .map(|k| {
                k.checked_mul(self.digit as i64)
                    .map(|m| Decimal::new(m, self.exp))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(Decimal::new(3, -1).to_string(), "0.3");
        assert_eq!(Decimal::new(15, -1).to_string(), "1.5");
        assert_eq!(Decimal::new(5, -3).to_string(), "0.005");
        assert_eq!(Decimal::new(2, 3).to_string(), "2000");
        assert_eq!(Decimal::new(-25, -1).to_string(), "-2.5");
        assert_eq!(Decimal::new(100, -2).to_string(), "1");
        assert_eq!(Decimal::new(0, -4).to_string(), "0");
    }

    #[test]
    fn exact_values() {
        assert_eq!(Decimal::new(3, -1).to_f64(), 0.3);
        assert_eq!(Decimal::new(7, -2).to_f64(), 0.07);
        assert_eq!(Decimal::new(12, 2).to_f64(), 1200.0);
    }

    #[test]
    fn ordering() {
        assert!(Decimal::new(15, -1) < Decimal::new(2, 0));
        assert!(Decimal::new(-1, 0) < Decimal::new(0, 0));
        assert_eq!(Decimal::new(10, 0), Decimal::new(1, 1));
    }

    #[test]
    fn ladder() {
        assert_eq!(Step::covering(0.08), Step { digit: 1, exp: -1 });
        assert_eq!(Step::covering(9.0), Step { digit: 1, exp: 1 });
        assert_eq!(Step::covering(10.0), Step { digit: 1, exp: 1 });
        assert_eq!(Step::covering(68.46), Step { digit: 1, exp: 2 });
        assert_eq!(Step::covering(3.0), Step { digit: 5, exp: 0 });
        let s = Step { digit: 1, exp: 0 };
        assert_eq!(s.finer(), Step { digit: 5, exp: -1 });
        assert_eq!(s.finer().finer(), Step { digit: 2, exp: -1 });
        assert_eq!(
            Step { digit: 5, exp: 0 }.ratio_to(Step { digit: 2, exp: 0 }),
            None
        );
        assert_eq!(
            Step { digit: 5, exp: 0 }.ratio_to(Step { digit: 5, exp: -1 }),
            Some(10)
        );
    }

    #[test]
    fn multiples_in_range() {
        let m = Step { digit: 2, exp: -1 }
            .multiples(0.95, 1.61, 100)
            .unwrap();
        let text: Vec<_> = m.iter().map(|d| d.to_string()).collect();
        assert_eq!(text, ["1", "1.2", "1.4", "1.6"]);
        assert!(Step { digit: 1, exp: -6 }
            .multiples(0.0, 1.0, 1000)
            .is_none());
    }
}
