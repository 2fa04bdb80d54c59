//! Bicentric polygon families between two nested circles, the `d = r_b`
//! closing ratios, and the polar-image bridge to conic-inscribed families.
//!
//! Frame: circumcenter `O` at the origin, incenter `O'` at `(d, 0)`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::constants::{BICENTRIC_HEXAGON, BICENTRIC_PENTAGON, BICENTRIC_QUAD, BICENTRIC_TRIANGLE};
use crate::engine::{closure_defect, iterate, Branch};
use crate::geom::{classify_conic, pole_point, CircleSpec, Conic, ConicClass, Line, ProjPoint, Vec2, DEFAULT_TOL};
use crate::roots::{bisect, poly_eval};
use crate::{Error, Result};

/// Start angle used when measuring the closure defect.
const DEFECT_START: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BicentricConfig {
    pub n: usize,
    /// `R_b`
    pub circumradius: f64,
    /// `r_b`
    pub inradius: f64,
    /// `|O − O'|`
    pub offset: f64,
}

impl BicentricConfig {
    pub fn new(n: usize, circumradius: f64, inradius: f64, offset: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!("N must be at least 3, got {n}")));
        }
        if !(circumradius > 0.0 && inradius > 0.0 && offset >= 0.0) {
            return Err(Error::InvalidInput("radii must be positive and the offset nonnegative".into()));
        }
        if offset + inradius >= circumradius {
            return Err(Error::InvalidInput(format!(
                "incircle (r={inradius}, d={offset}) is not nested in the circumcircle (R={circumradius})"
            )));
        }
        Ok(Self {
            n,
            circumradius,
            inradius,
            offset,
        })
    }

    /// Closing family with `d = k·r_b`.
    pub fn closing(n: usize, circumradius: f64, k: f64) -> Result<Self> {
        let r = solve_bicentric_inradius(n, circumradius, k)?;
        Self::new(n, circumradius, r, k * r)
    }

    pub fn circumcircle(&self) -> CircleSpec {
        CircleSpec {
            center: Vec2::zeros(),
            radius: self.circumradius,
        }
    }

    pub fn incircle(&self) -> CircleSpec {
        CircleSpec {
            center: Vec2::new(self.offset, 0.0),
            radius: self.inradius,
        }
    }

    pub fn with_inradius(&self, inradius: f64) -> Result<Self> {
        Self::new(self.n, self.circumradius, inradius, self.offset)
    }

    fn start(&self, t: f64) -> ProjPoint {
        ProjPoint::finite(self.circumradius * t.cos(), self.circumradius * t.sin())
    }

    /// Closure defect of the transverse started at angle `t`.
    pub fn closure_defect(&self, t: f64) -> Result<f64> {
        closure_defect(&self.circumcircle().conic(), &self.incircle(), self.start(t), self.n)
    }
}

/// Inradius closing the `n`-gon family with circumradius `R` and offset `d = k·r`.
pub fn solve_bicentric_inradius(n: usize, circumradius: f64, k: f64) -> Result<f64> {
    if n < 3 || !(k >= 0.0) {
        return Err(Error::InvalidInput(format!("need N ≥ 3 and k ≥ 0, got N={n}, k={k}")));
    }
    let big = circumradius;
    let defect = |r: f64| {
        let cfg = BicentricConfig::new(n, big, r, k * r)?;
        cfg.closure_defect(DEFECT_START)
    };
    let hi = big / (1.0 + k) * (1.0 - 1e-9);
    bisect(defect, 1e-3 * big, hi)
}

/// `r_b/R_b` closing the family with `d = r_b`, found by bisection on the
/// geometric closure defect.
pub fn bicentric_closure_ratio(n: usize) -> Result<f64> {
    if !(3..=6).contains(&n) {
        return Err(Error::Unsupported(format!("bicentric d = r closure for N={n}")));
    }
    solve_bicentric_inradius(n, 1.0, 1.0)
}

/// Polynomial in `ρ = r_b/R_b` whose root in (0, 1/2) is the `d = r_b` closing ratio.
pub fn closure_polynomial(n: usize) -> Result<&'static [f64]> {
    match n {
        3 => Ok(&BICENTRIC_TRIANGLE),
        4 => Ok(&BICENTRIC_QUAD),
        5 => Ok(&BICENTRIC_PENTAGON),
        6 => Ok(&BICENTRIC_HEXAGON),
        _ => Err(Error::Unsupported(format!("closure polynomial for N={n}"))),
    }
}

/// Root of [`closure_polynomial`] in `[0.3, 0.5]`.
pub fn closure_polynomial_root(n: usize) -> Result<f64> {
    let p = closure_polynomial(n)?;
    bisect(|x| Ok(poly_eval(p, x)), 0.3, 0.5)
}

/// Euler's offset `√(R(R − 2r))` for closing triangles.
pub fn euler_offset(circumradius: f64, inradius: f64) -> f64 {
    (circumradius * (circumradius - 2.0 * inradius)).max(0.0).sqrt()
}

/// The `n` vertices of the transverse from `R(cos t, sin t)`, without a
/// closure check.
pub fn bicentric_chain(cfg: &BicentricConfig, t: f64) -> Result<Vec<Vec2>> {
    let pts = iterate(&cfg.circumcircle().conic(), &cfg.incircle(), cfg.start(t), Branch::Ccw, cfg.n)?;
    pts[..cfg.n]
        .iter()
        .map(|p| p.to_cartesian().ok_or(Error::UnboundedInput))
        .collect()
}

/// Closed polygon of the family through `R(cos t, sin t)`, counterclockwise.
pub fn bicentric_orbit(cfg: &BicentricConfig, t: f64) -> Result<Vec<Vec2>> {
    let defect = cfg.closure_defect(t)?;
    if defect.abs() > 1e-9 {
        return Err(Error::ClosureViolation(defect));
    }
    bicentric_chain(cfg, t)
}

/// Signed distances from `O` to the side lines, positive when `O` and the
/// incenter are on the same side.
pub fn pedal_distances(cfg: &BicentricConfig, vertices: &[Vec2]) -> Vec<f64> {
    let n = vertices.len();
    let c = cfg.incircle().center;
    (0..n)
        .map(|i| {
            let line = Line::through(&ProjPoint::from_vec2(vertices[i]), &ProjPoint::from_vec2(vertices[(i + 1) % n]));
            let at_o = line.signed_distance_to(Vec2::zeros());
            let at_c = line.signed_distance_to(c);
            if at_c >= 0.0 {
                at_o
            } else {
                -at_o
            }
        })
        .collect()
}

/// `Σ dᵢ` over the closed polygon at `t`, with signed distances. For
/// `d ≤ r_b` every term is nonnegative and this is the plain distance sum.
pub fn pedal_distance_sum(cfg: &BicentricConfig, t: f64) -> Result<f64> {
    let v = bicentric_orbit(cfg, t)?;
    Ok(pedal_distances(cfg, &v).iter().sum())
}

/// Conic carrying the polar polygons and the caustic they circumscribe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarImage {
    pub outer: Conic,
    pub caustic: CircleSpec,
    pub class: ConicClass,
}

/// Polar reciprocal of the incircle with respect to the circumcircle; the
/// circumcircle is the caustic of the polar family.
pub fn polar_image_family(cfg: &BicentricConfig) -> Result<PolarImage> {
    let outer = cfg.circumcircle().conic().reciprocal_of(&cfg.incircle().conic())?;
    Ok(PolarImage {
        outer,
        caustic: cfg.circumcircle(),
        class: classify_conic(&outer, DEFAULT_TOL),
    })
}

/// Poles of the sides of a polygon with respect to the circumcircle: vertex
/// `i` is the pole of side `V_i V_{i+1}`.
pub fn polar_polygon(cfg: &BicentricConfig, vertices: &[Vec2]) -> Result<Vec<ProjPoint>> {
    let circ = cfg.circumcircle().conic();
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let side = Line::through(&ProjPoint::from_vec2(vertices[i]), &ProjPoint::from_vec2(vertices[(i + 1) % n]));
            pole_point(&circ, &side)
        })
        .collect()
}

/// Focal distance `R_b²/(2r_b)` of the polar parabola when `d = r_b`.
pub fn polar_parabola_focal_distance(cfg: &BicentricConfig) -> f64 {
    cfg.circumradius * cfg.circumradius / (2.0 * cfg.inradius)
}

/// Translation taking the `d = r_b` polar parabola (focus `O`, vertex
/// `(f, 0)`, opening toward `−x`) to the canonical frame.
pub fn to_canonical(cfg: &BicentricConfig, p: Vec2) -> Vec2 {
    p - Vec2::new(polar_parabola_focal_distance(cfg), 0.0)
}

/// Evenly spaced start angles in `[0, 2π)` with a fixed offset.
pub fn angle_grid(count: usize) -> Vec<f64> {
    (0..count).map(|i| 0.01 + TAU * i as f64 / count as f64).collect()
}
