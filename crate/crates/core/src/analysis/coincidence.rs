//! Values under one hairline on C and on a reciprocal R scale whose 1 sits
//! over C's 10, both drawn with the same unit: `log10(x_C) = 1 / x_R`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// C-scale values of the reference coincidence table.
pub const REFERENCE_XC: [f64; 4] = [1.496, 4.000, 4.976, 10.000];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoincidencePair {
    #[serde(rename = "x_C")]
    pub x_c: f64,
    #[serde(rename = "x_R")]
    pub x_r: f64,
}

/// `x_R = 1 / log10(x_C)`, i.e. the logarithm of 10 to base `x_C`.
pub fn coincidence_from_c(x_c: f64) -> Result<CoincidencePair> {
    if !(x_c.is_finite() && x_c > 1.0) {
        return Err(Error::domain(x_c, "x_C > 1"));
    }
    Ok(CoincidencePair {
        x_c,
        x_r: 1.0 / x_c.log10(),
    })
}

/// `x_C = 10^(1 / x_R)`
pub fn coincidence_from_r(x_r: f64) -> Result<CoincidencePair> {
    if !(x_r.is_finite() && x_r > 0.0) {
        return Err(Error::domain(x_r, "x_R > 0"));
    }
    Ok(CoincidencePair {
        x_c: 10f64.powf(1.0 / x_r),
        x_r,
    })
}

pub fn reference_table() -> Vec<CoincidencePair> {
    REFERENCE_XC
        .iter()
        .map(|&x| coincidence_from_c(x).expect("reference values exceed 1"))
        .collect()
}
