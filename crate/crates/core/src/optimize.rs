//! Deterministic bracketed scalar maximization.

use crate::error::{Error, Result};
use crate::special::sqrt;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
    /// The best point sits on (or within tolerance of) a bracket end, so no
    /// interior maximum was found.
    pub at_boundary: bool,
    pub evaluations: usize,
}

/// Maximize `f` on `[lo, hi]`.
///
/// A uniform pre-scan of `scan` points picks the best cell, then golden
/// section search narrows it until the bracket is below `rel_tol · |x|`
/// (absolute `rel_tol` near zero).
pub fn maximize<F>(mut f: F, lo: f64, hi: f64, scan: usize, rel_tol: f64) -> Result<Maximum>
where
    F: FnMut(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidRange("maximizer needs finite lo < hi"));
    }
    if rel_tol.is_nan() || rel_tol <= 0.0 {
        return Err(Error::InvalidRange("tolerance must be positive"));
    }
    let scan = scan.max(3);
    let step = (hi - lo) / (scan - 1) as f64;
    let at = |i: usize| {
        if i + 1 == scan {
            hi
        } else {
            lo + step * i as f64
        }
    };
    let mut evaluations = 0;
    let mut best = (0, f64::NEG_INFINITY);
    for i in 0..scan {
        let v = f(at(i));
        evaluations += 1;
        if v > best.1 {
            best = (i, v);
        }
    }
    if !best.1.is_finite() {
        return Err(Error::NotConverged(
            "objective is not finite on the scan".into(),
        ));
    }
    let (mut a, mut b) = (at(best.0.saturating_sub(1)), at((best.0 + 1).min(scan - 1)));

    let inv_phi = (sqrt(5.0) - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    evaluations += 2;
    while b - a > rel_tol * (0.5 * (a + b)).abs().max(f64::MIN_POSITIVE) {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        evaluations += 1;
        if evaluations > 10_000 {
            return Err(Error::NotConverged("golden section did not shrink".into()));
        }
    }
    let (mut x, mut value) = if fc >= fd { (c, fc) } else { (d, fd) };
    for edge in [lo, hi] {
        if best.1 > value && at(best.0) == edge {
            x = edge;
            value = best.1;
        }
    }
    let margin = 10.0 * rel_tol * x.abs().max(f64::MIN_POSITIVE);
    let at_boundary = x - lo <= margin || hi - x <= margin;
    Ok(Maximum {
        x,
        value,
        at_boundary,
        evaluations,
    })
}
