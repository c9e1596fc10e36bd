//! Root finding for monotone functions.

const MAX_ITER: usize = 300;

/// Finds `x` in `[lo, hi]` with `f(x) = target`, assuming `f` is monotone
/// (either direction) on the bracket. Stops once the bracket width is below
/// `rel_tol` relative to its magnitude.
///
/// Returns `None` if `target` is not bracketed by `f(lo)` and `f(hi)`.
pub fn bisect_monotone<F>(f: F, target: f64, lo: f64, hi: f64, rel_tol: f64) -> Option<f64>
where
    F: Fn(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return None;
    }
    let (mut lo, mut hi) = (lo, hi);
    let mut g_lo = f(lo) - target;
    let g_hi = f(hi) - target;
    if g_lo == 0.0 {
        return Some(lo);
    }
    if g_hi == 0.0 {
        return Some(hi);
    }
    if g_lo.signum() == g_hi.signum() || g_lo.is_nan() || g_hi.is_nan() {
        return None;
    }
    for _ in 0..MAX_ITER {
        let mid = lo + 0.5 * (hi - lo);
        if hi - lo <= rel_tol * lo.abs().max(hi.abs()) || mid == lo || mid == hi {
            break;
        }
        let g_mid = f(mid) - target;
        if g_mid == 0.0 {
            return Some(mid);
        }
        if g_mid.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    Some(lo + 0.5 * (hi - lo))
}

/// Finds the boundary between `false` and `true` of a predicate that flips
/// exactly once on `[lo, hi]`. `pred(lo) != pred(hi)` is required.
pub(crate) fn bisect_predicate<P>(pred: P, lo: f64, hi: f64, rel_tol: f64) -> f64
where
    P: Fn(f64) -> bool,
{
    let p_lo = pred(lo);
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..MAX_ITER {
        let mid = lo + 0.5 * (hi - lo);
        if hi - lo <= rel_tol * lo.abs().max(hi.abs()) || mid == lo || mid == hi {
            break;
        }
        if pred(mid) == p_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // The side where the predicate has already flipped.
    if pred(lo) == p_lo {
        hi
    } else {
        lo
    }
}
