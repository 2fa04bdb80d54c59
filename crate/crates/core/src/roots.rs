//! Bracketed scalar root finding and small polynomial helpers.

use crate::{Error, Result};

/// Bisection on `[lo, hi]` down to adjacent floating-point values (or until
/// `g` vanishes exactly). `g(lo)` and `g(hi)` must differ in sign.
pub fn bisect<G>(mut g: G, lo: f64, hi: f64) -> Result<f64>
where
    G: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = (lo, hi);
    let ga = g(a)?;
    let gb = g(b)?;
    if ga == 0.0 {
        return Ok(a);
    }
    if gb == 0.0 {
        return Ok(b);
    }
    if ga.signum() == gb.signum() || ga.is_nan() || gb.is_nan() {
        return Err(Error::BadBracket { lo, hi });
    }
    let sa = ga.signum();
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let gm = g(m)?;
        if gm == 0.0 {
            return Ok(m);
        }
        if gm.signum() == sa {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Horner evaluation; `coeffs[i]` multiplies `x^i`.
pub fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Golden-section search for the minimum of a unimodal `g` on `[lo, hi]`.
/// Returns `(argmin, min)`.
pub fn golden_min<G>(mut g: G, lo: f64, hi: f64, tol: f64) -> (f64, f64)
where
    G: FnMut(f64) -> f64,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut gc = g(c);
    let mut gd = g(d);
    while (b - a).abs() > tol {
        if gc < gd {
            b = d;
            d = c;
            gd = gc;
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + inv_phi * (b - a);
            gd = g(d);
        }
    }
    if gc < gd {
        (c, gc)
    } else {
        (d, gd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_sqrt2() {
        let r = bisect(|x| Ok(x * x - 2.0), 1.0, 2.0).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn bisect_rejects_same_sign() {
        assert!(matches!(bisect(|x| Ok(x * x + 1.0), -1.0, 1.0), Err(Error::BadBracket { .. })));
    }

    #[test]
    fn horner_matches_direct() {
        let c = [1.0, -2.0, 0.5, 3.0];
        let x = 1.7f64;
        let direct = 1.0 - 2.0 * x + 0.5 * x * x + 3.0 * x.powi(3);
        assert!((poly_eval(&c, x) - direct).abs() < 1e-12);
    }

    #[test]
    fn golden_finds_parabola_minimum() {
        let (x, v) = golden_min(|x| (x - 0.3).powi(2) + 1.0, -1.0, 2.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-6);
        assert!((v - 1.0).abs() < 1e-15);
    }
}
