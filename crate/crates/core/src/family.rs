//! Closed-form constructions: closing ratios, vertex parametrizations of the
//! triangle and quadrilateral families, their polar polygons, and the
//! hyperbolas carrying the polar vertices.
//!
//! Vertex ordinates are evaluated as a ratio `num/den` and turned into a
//! homogeneous point, so a vertex running off to infinity is represented
//! exactly. Each ordinate has two algebraically equal forms that cancel at
//! different parameters; the one with less cancellation is used.

use crate::constants::PENTAGON_SEXTIC;
use crate::engine::{solve_closure_radius, FamilyConfig, Orbit};
use crate::geom::{Conic, ParabolaStd, ProjPoint};
use crate::roots::{bisect, poly_eval};
use crate::{Error, Result};

fn s2() -> f64 {
    2f64.sqrt()
}

fn s5() -> f64 {
    5f64.sqrt()
}

/// Closing ratio `r/f` of the parabola family with `n` sides.
pub fn closure_ratio(n: usize) -> Result<f64> {
    match n {
        3 => Ok(2.0 * (s2() - 1.0)),
        4 => Ok(2.0 * (s5() - 2.0).sqrt()),
        5 => bisect(|x| Ok(poly_eval(&PENTAGON_SEXTIC, x)), 0.99, 0.999),
        6 => Ok(solve_closure_radius(1.0, 6, None)?.r),
        _ => Err(Error::Unsupported(format!("closed-form closure ratio for N={n}"))),
    }
}

/// A ratio `num/den` together with the magnitudes of the terms that were
/// summed to form each part.
#[derive(Debug, Clone, Copy)]
struct Ratio {
    num: f64,
    den: f64,
    num_scale: f64,
    den_scale: f64,
}

impl Ratio {
    /// Fraction of the term magnitudes that survives cancellation.
    fn retention(&self) -> f64 {
        (self.num.abs() + self.den.abs()) / (self.num_scale + self.den_scale)
    }
}

fn better(a: Ratio, b: Ratio) -> (f64, f64) {
    let pick = if a.retention() >= b.retention() { a } else { b };
    (pick.num, pick.den)
}

/// Point of tangency intersection for parabola points with ordinates
/// `na/da` and `nb/db`.
pub(crate) fn tangent_meet(f: f64, a: (f64, f64), b: (f64, f64)) -> ProjPoint {
    let (na, da) = a;
    let (nb, db) = b;
    ProjPoint::new(-na * nb, 2.0 * f * (na * db + nb * da), 4.0 * f * da * db)
}

fn check_param(f: f64, y1: f64) -> Result<ParabolaStd> {
    if !y1.is_finite() {
        return Err(Error::InvalidInput(format!("parameter must be finite, got {y1}")));
    }
    ParabolaStd::new(f)
}

fn orbit_from_ratios(n: usize, f: f64, y1: f64, ys: &[(f64, f64)]) -> Result<Orbit> {
    let par = ParabolaStd::new(f)?;
    let family = FamilyConfig::new(n, f, closure_ratio(n)? * f)?;
    let vertices = ys.iter().map(|(num, den)| par.point_at_ratio(*num, *den)).collect();
    let polar_vertices = (0..n).map(|i| tangent_meet(f, ys[i], ys[(i + 1) % n])).collect();
    Ok(Orbit {
        family,
        y1,
        vertices,
        polar_vertices,
    })
}

/// Ordinates of the closed triangle through `P(y1)`, as `(num, den)` pairs.
fn triangle_ordinates(f: f64, y1: f64) -> [(f64, f64); 3] {
    let (f2, y2) = (f * f, y1 * y1);
    let delta = (y2 * y2 + 8.0 * f2 * y2 + 16.0 * (8.0 * s2() - 11.0) * f2 * f2).sqrt();
    // den = y1² − r², r² = (12 − 8√2) f²
    let den = y2 + (8.0 * s2() - 12.0) * f2;
    let den_scale = y2 + (12.0 - 8.0 * s2()) * f2;
    let m = y2 - (8.0 * s2() - 4.0) * f2;
    let m_scale = y2 + (8.0 * s2() - 4.0) * f2;
    let k = 2.0 * (s2() - 1.0) * f;
    let second = better(
        Ratio {
            num: -k * (4.0 * f * y1 + delta),
            den,
            num_scale: k * (4.0 * f * y1.abs() + delta),
            den_scale,
        },
        Ratio {
            num: -k * m,
            den: delta - 4.0 * f * y1,
            num_scale: k * m_scale,
            den_scale: delta + 4.0 * f * y1.abs(),
        },
    );
    let third = better(
        Ratio {
            num: k * (delta - 4.0 * f * y1),
            den,
            num_scale: k * (delta + 4.0 * f * y1.abs()),
            den_scale,
        },
        Ratio {
            num: k * m,
            den: delta + 4.0 * f * y1,
            num_scale: k * m_scale,
            den_scale: delta + 4.0 * f * y1.abs(),
        },
    );
    [(y1, 1.0), second, third]
}

/// Closed triangle of the `N = 3` family starting at `P(y1)`, vertices in
/// counterclockwise order, with its polar triangle.
pub fn triangle_orbit(f: f64, y1: f64) -> Result<Orbit> {
    check_param(f, y1)?;
    orbit_from_ratios(3, f, y1, &triangle_ordinates(f, y1))
}

/// Polar triangle of the `N = 3` family from its explicit rational
/// parametrization. Vertex `i` is the pole of side `P_i P_{i+1}`.
pub fn polar_triangle(f: f64, y1: f64) -> Result<Vec<ProjPoint>> {
    check_param(f, y1)?;
    let (f2, y2) = (f * f, y1 * y1);
    let delta = (y2 * y2 + 8.0 * f2 * y2 + 16.0 * (8.0 * s2() - 11.0) * f2 * f2).sqrt();
    let k = 1.0 + s2();
    let den3 = (3.0 + 2.0 * s2()) * y2 - 4.0 * f2;
    if den3.abs() < 1e-12 * ((3.0 + 2.0 * s2()) * y2 + 4.0 * f2) {
        return Err(Error::SingularParameter(y1));
    }
    let den = 2.0 * den3;
    let cubic = k * y1 * y2 - 4.0 * k * f2 * y1;
    let q1 = ProjPoint::finite(
        k * (4.0 * f * y1 + delta) * y1 / den,
        k * (cubic - 2.0 * delta * f) / den,
    );
    let q2 = ProjPoint::finite(
        k * (4.0 * f * y1 - delta) * y1 / den,
        k * (cubic + 2.0 * delta * f) / den,
    );
    let q3 = ProjPoint::finite(
        k * (5.0 - 3.0 * s2()) * ((1.0 + 2.0 * s2()) * y2 - 28.0 * f2) * f / (7.0 * den3),
        -k * 8.0 * f2 * y1 / den3,
    );
    // q1 lies between P1 and P2, q3 between P2 and P3, q2 between P3 and P1.
    Ok(vec![q1, q3, q2])
}

/// Ordinates of the closed quadrilateral through `P(y1)`.
fn quad_ordinates(f: f64, y1: f64) -> [(f64, f64); 4] {
    let (f2, y2) = (f * f, y1 * y1);
    let q = (s5() - 2.0).sqrt();
    let r2 = 4.0 * (s5() - 2.0) * f2;
    let delta = (y2 * y2 + 8.0 * f2 * y2 + 16.0 * (9.0 - 4.0 * s5()) * f2 * f2).sqrt();
    let lin = 4.0 * f * y1 * (3.0 - s5());
    let lin_abs = lin.abs();
    let c = (4.0 * s5() - 8.0) * f;
    let second = better(
        Ratio {
            num: (2.0 * q * delta + lin) * f,
            den: r2 - y2,
            num_scale: (2.0 * q * delta + lin_abs) * f,
            den_scale: r2 + y2,
        },
        Ratio {
            num: c * (r2 - y2),
            den: 2.0 * q * delta - lin,
            num_scale: c * (r2 + y2),
            den_scale: 2.0 * q * delta + lin_abs,
        },
    );
    let fourth = better(
        Ratio {
            num: -(2.0 * q * delta - lin) * f,
            den: r2 - y2,
            num_scale: (2.0 * q * delta + lin_abs) * f,
            den_scale: r2 + y2,
        },
        Ratio {
            num: c * (y2 - r2),
            den: 2.0 * q * delta + lin,
            num_scale: c * (r2 + y2),
            den_scale: 2.0 * q * delta + lin_abs,
        },
    );
    let third = (4.0 * (2.0 - s5()) * f2, y1);
    [(y1, 1.0), second, third, fourth]
}

/// Closed quadrilateral of the `N = 4` family starting at `P(y1)`.
pub fn quad_orbit(f: f64, y1: f64) -> Result<Orbit> {
    check_param(f, y1)?;
    orbit_from_ratios(4, f, y1, &quad_ordinates(f, y1))
}

/// Polar quadrilateral of the `N = 4` family: vertex `i` is the meet of the
/// parabola tangents at `P_i` and `P_{i+1}`.
pub fn polar_quad(f: f64, y1: f64) -> Result<Vec<ProjPoint>> {
    Ok(quad_orbit(f, y1)?.polar_vertices)
}

/// Hyperbola through the polar vertices of the `N = 3` or `N = 4` family.
pub fn polar_hyperbola(n: usize, f: f64) -> Result<Conic> {
    ParabolaStd::new(f)?;
    let f2 = f * f;
    match n {
        // (√2 + 3/2)(x − f)² − y²/2 − 2f² = 0
        3 => {
            let k = s2() + 1.5;
            Ok(Conic::new(k, 0.0, -0.5, -2.0 * k * f, 0.0, k * f2 - 2.0 * f2))
        }
        // (x − f)²/(4(√5 − 2)f²) − y²/(4f²) − 1 = 0, scaled by 4f²
        4 => {
            let k = 1.0 / (s5() - 2.0);
            Ok(Conic::new(k, 0.0, -1.0, -2.0 * k * f, 0.0, k * f2 - 4.0 * f2))
        }
        _ => Err(Error::Unsupported(format!("polar hyperbola for N={n}"))),
    }
}
