//! Poncelet transverse iteration between an outer conic and a circular
//! caustic, closure detection, and the bisection search for closing radii.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::geom::{
    conic_features, intersect_line_conic, pole_point, tangent_lines_from, CircleSpec, Conic, ConicClass,
    Line, ParabolaStd, ProjPoint, Vec2,
};
use crate::roots::bisect;
use crate::{Error, Result};

/// Largest wrapped arc-parameter gap between the returning vertex and the
/// start for an orbit to count as closed.
pub const CLOSURE_TOL: f64 = 1e-8;

/// Half-width, relative to `f`, of the parameter neighborhoods excised around
/// singular starting points.
pub const SINGULAR_EPS: f64 = 1e-6;

/// Parameter used as the start of the closure-defect transverse.
const DEFECT_START: f64 = 0.3;

/// Orientation of a transverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// Caustic center on the left of the travel direction.
    Ccw,
    Cw,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Ccw => 1.0,
            Branch::Cw => -1.0,
        }
    }
}

/// One parabola-inscribed family: the canonical parabola with focal distance
/// `f` and the caustic circle of radius `r` centered at its focus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyConfig {
    pub n: usize,
    pub f: f64,
    pub r: f64,
    pub outer: Conic,
    pub caustic: CircleSpec,
}

impl FamilyConfig {
    pub fn new(n: usize, f: f64, r: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!("N must be at least 3, got {n}")));
        }
        let par = ParabolaStd::new(f)?;
        if !(r > 0.0 && r < f) {
            return Err(Error::InvalidInput(format!("caustic radius must lie in (0, f), got {r}")));
        }
        Ok(Self {
            n,
            f,
            r,
            outer: par.conic(),
            caustic: CircleSpec::new(par.focus(), r)?,
        })
    }

    /// The family whose caustic radius closes after `n` steps.
    pub fn closing(n: usize, f: f64) -> Result<Self> {
        let ratio = if n <= 6 {
            crate::family::closure_ratio(n)?
        } else {
            solve_closure_radius(1.0, n, None)?.r
        };
        Self::new(n, f, ratio * f)
    }

    pub fn parabola(&self) -> ParabolaStd {
        ParabolaStd { f: self.f }
    }

    /// Same family with the caustic radius scaled by `1 + rel`.
    pub fn perturbed(&self, rel: f64) -> Result<Self> {
        Self::new(self.n, self.f, self.r * (1.0 + rel))
    }
}

/// Position of a transverse together with the chord it arrived on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransverseState {
    pub current: ProjPoint,
    pub incoming: Option<Line>,
    pub step_index: usize,
}

impl TransverseState {
    pub fn start(p: ProjPoint) -> Self {
        Self { current: p, incoming: None, step_index: 0 }
    }
}

/// Second intersection of the tangent chord from `p` selected by `branch`.
pub fn transverse_step(outer: &Conic, caustic: &CircleSpec, p: &ProjPoint, branch: Branch) -> Result<ProjPoint> {
    let line = oriented_tangent(outer, caustic, p, branch)?;
    other_intersection(outer, &line, p)
}

/// Advance one step. The first step follows `branch`; later steps take the
/// tangent that is not the incoming chord, which stays well defined through
/// points at infinity.
pub fn advance(outer: &Conic, caustic: &CircleSpec, state: &TransverseState, branch: Branch) -> Result<TransverseState> {
    let p = &state.current;
    let line = match &state.incoming {
        None => oriented_tangent(outer, caustic, p, branch)?,
        Some(prev) => {
            let lines = tangent_lines_from(&caustic.conic(), p)?;
            lines
                .into_iter()
                .max_by(|a, b| line_separation(a, prev).total_cmp(&line_separation(b, prev)))
                .ok_or(Error::NoTangent)?
        }
    };
    let next = other_intersection(outer, &line, p)?;
    Ok(TransverseState {
        current: next,
        incoming: Some(line),
        step_index: state.step_index + 1,
    })
}

/// `steps + 1` points of the transverse starting at `start`.
pub fn iterate(outer: &Conic, caustic: &CircleSpec, start: ProjPoint, branch: Branch, steps: usize) -> Result<Vec<ProjPoint>> {
    let mut state = TransverseState::start(start);
    let mut pts = Vec::with_capacity(steps + 1);
    pts.push(start);
    for _ in 0..steps {
        state = advance(outer, caustic, &state, branch)?;
        pts.push(state.current);
    }
    Ok(pts)
}

fn line_separation(a: &Line, b: &Line) -> f64 {
    let (u, v) = (a.coords().normalize(), b.coords().normalize());
    u.cross(&v).norm()
}

fn oriented_tangent(outer: &Conic, caustic: &CircleSpec, p: &ProjPoint, branch: Branch) -> Result<Line> {
    let lines = tangent_lines_from(&caustic.conic(), p)?;
    if lines.is_empty() {
        return Err(Error::NoTangent);
    }
    let origin = oriented_coords(outer, p)?;
    let c = caustic.center;
    let best = lines
        .into_iter()
        .map(|l| {
            let t = pole_point(&caustic.conic(), &l).and_then(|t| t.to_cartesian().ok_or(Error::NoTangent));
            (l, t)
        })
        .filter_map(|(l, t)| t.ok().map(|t| (l, t)))
        .max_by(|(_, t1), (_, t2)| {
            let s1 = branch.sign() * orientation(&origin, t1, &c);
            let s2 = branch.sign() * orientation(&origin, t2, &c);
            s1.total_cmp(&s2)
        })
        .ok_or(Error::NoTangent)?;
    Ok(best.0)
}

/// Homogeneous coordinates with a sign convention that makes the orientation
/// determinant meaningful: finite points get `w = 1`, points at infinity of a
/// parabola point along its opening direction.
fn oriented_coords(outer: &Conic, p: &ProjPoint) -> Result<nalgebra::Vector3<f64>> {
    match p.to_cartesian() {
        Some(q) => Ok(nalgebra::Vector3::new(q.x, q.y, 1.0)),
        None => {
            let feats = conic_features(outer)?;
            if feats.class != ConicClass::Parabola {
                return Err(Error::InvalidInput("orientation at infinity needs a parabolic outer conic".into()));
            }
            let a = feats.axis.expect("parabola has an axis");
            let d = Vec2::new(p.x, p.y).normalize();
            let d = if d.dot(&a) >= 0.0 { d } else { -d };
            Ok(nalgebra::Vector3::new(d.x, d.y, 0.0))
        }
    }
}

/// `det[p, t, c]`: positive when `c` lies left of the direction from `p` to `t`.
fn orientation(p: &nalgebra::Vector3<f64>, t: &Vec2, c: &Vec2) -> f64 {
    let t3 = nalgebra::Vector3::new(t.x, t.y, 1.0);
    let c3 = nalgebra::Vector3::new(c.x, c.y, 1.0);
    nalgebra::Matrix3::from_rows(&[p.transpose(), t3.transpose(), c3.transpose()]).determinant()
}

/// Intersection of `line` with `outer` other than `p`, by deflating the known root.
fn other_intersection(outer: &Conic, line: &Line, p: &ProjPoint) -> Result<ProjPoint> {
    let hits = intersect_line_conic(outer, line)?;
    if hits.is_empty() {
        return Err(Error::DegenerateChord);
    }
    // Deflation: with the chord restricted to a 2D basis, the quadratic's known
    // root (s0 : t0) fixes the other one through Vieta's relations.
    let m = outer.matrix() / outer.max_abs();
    let l = line.coords().normalize();
    let k = l.iamin();
    let mut e = nalgebra::Vector3::zeros();
    e[k] = 1.0;
    let u = l.cross(&e).normalize();
    let v = l.cross(&u);
    let pc = p.coords().normalize();
    let (s0, t0) = (u.dot(&pc), v.dot(&pc));
    let alpha = u.dot(&(m * u));
    let beta = u.dot(&(m * v));
    let gamma = v.dot(&(m * v));
    let (s1, t1) = if t0.abs() >= s0.abs() {
        (-(2.0 * beta * t0 + alpha * s0), alpha * t0)
    } else {
        (gamma * s0, -(2.0 * beta * s0 + gamma * t0))
    };
    let q = ProjPoint::from_coords(u * s1 + v * t1);
    if !q.coords().iter().all(|c| c.is_finite()) || q.coords().norm() == 0.0 || q.projective_distance(p) < 1e-13 {
        return Err(Error::DegenerateChord);
    }
    Ok(q)
}

/// Arc parameter along an outer conic, increasing counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ArcParam {
    /// `φ = 2·atan(s / 2f)` with `s` the signed offset across the axis; `π` at infinity.
    Parabola { vertex: Vec2, normal: Vec2, f: f64 },
    /// Eccentric angle.
    Ellipse { center: Vec2, e1: Vec2, e2: Vec2, a: f64, b: f64 },
}

impl ArcParam {
    pub fn for_conic(outer: &Conic) -> Result<Self> {
        let feats = conic_features(outer)?;
        match feats.class {
            ConicClass::Parabola => {
                let a = feats.axis.expect("parabola axis");
                Ok(ArcParam::Parabola {
                    vertex: feats.vertices[0],
                    normal: Vec2::new(a.y, -a.x),
                    f: feats.focal_distance.expect("parabola focal distance"),
                })
            }
            ConicClass::Ellipse | ConicClass::Circle => {
                let e1 = feats.axis.expect("ellipse axis");
                let (a, b) = feats.semi_axes.expect("ellipse semi-axes");
                Ok(ArcParam::Ellipse {
                    center: feats.center.expect("ellipse center"),
                    e1,
                    e2: Vec2::new(-e1.y, e1.x),
                    a,
                    b,
                })
            }
            other => Err(Error::Unsupported(format!("arc parameter on a {other} outer conic"))),
        }
    }

    pub fn phi(&self, p: &ProjPoint) -> f64 {
        match *self {
            ArcParam::Parabola { vertex, normal, f } => match p.to_cartesian() {
                Some(q) => 2.0 * ((q - vertex).dot(&normal) / (2.0 * f)).atan(),
                None => PI,
            },
            ArcParam::Ellipse { center, e1, e2, a, b } => match p.to_cartesian() {
                Some(q) => {
                    let d = q - center;
                    (d.dot(&e2) / b).atan2(d.dot(&e1) / a)
                }
                None => f64::NAN,
            },
        }
    }
}

fn wrap_positive(x: f64) -> f64 {
    x.rem_euclid(TAU)
}

fn wrap_signed(x: f64) -> f64 {
    let w = x.rem_euclid(TAU);
    if w > PI {
        w - TAU
    } else {
        w
    }
}

/// Total counterclockwise arc-parameter advance of `n` steps minus one full
/// turn, in radians. Zero exactly when the transverse closes with winding one.
pub fn closure_defect(outer: &Conic, caustic: &CircleSpec, start: ProjPoint, n: usize) -> Result<f64> {
    let arc = ArcParam::for_conic(outer)?;
    let pts = iterate(outer, caustic, start, Branch::Ccw, n)?;
    let total: f64 = pts.windows(2).map(|w| wrap_positive(arc.phi(&w[1]) - arc.phi(&w[0]))).sum();
    Ok(total - TAU)
}

/// Default bracket for the closing ratio `r/f`.
pub fn closure_bracket(n: usize) -> Result<(f64, f64)> {
    match n {
        3 => Ok((0.7, 0.9)),
        4 => Ok((0.95, 0.99)),
        5 => Ok((0.99, 0.999)),
        6 => Ok((0.999, 0.9999)),
        n if n >= 7 => {
            let prev = solve_closure_radius(1.0, n - 1, None)?.r;
            Ok((prev, 1.0 - 1e-15))
        }
        _ => Err(Error::Unsupported(format!("closure for N={n}"))),
    }
}

/// Closing caustic radius with the bracket it was found in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosureSolution {
    pub n: usize,
    pub f: f64,
    pub r: f64,
    /// Bracket on `r/f`.
    pub bracket: (f64, f64),
    pub defect: f64,
}

/// Caustic radius closing the parabola family after `n` steps, by bisection
/// on the closure defect. `bracket` is on the ratio `r/f`.
pub fn solve_closure_radius(f: f64, n: usize, bracket: Option<(f64, f64)>) -> Result<ClosureSolution> {
    let par = ParabolaStd::new(f)?;
    let (lo, hi) = match bracket {
        Some(b) => b,
        None => closure_bracket(n)?,
    };
    if !(lo > 0.0 && hi < 1.0 && lo < hi) {
        return Err(Error::BadBracket { lo, hi });
    }
    let outer = par.conic();
    let start = par.point_at(DEFECT_START * f);
    let defect = |ratio: f64| -> Result<f64> {
        let caustic = CircleSpec::new(par.focus(), ratio * f)?;
        closure_defect(&outer, &caustic, start, n)
    };
    let ratio = bisect(defect, lo, hi).map_err(|e| match e {
        Error::BadBracket { .. } => Error::BadBracket { lo, hi },
        other => other,
    })?;
    Ok(ClosureSolution {
        n,
        f,
        r: ratio * f,
        bracket: (lo, hi),
        defect: defect(ratio)?,
    })
}

/// One polygon of a family, with its polar polygon with respect to the outer
/// conic. Polar vertex `i` is the pole of side `P_i P_{i+1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Orbit {
    pub family: FamilyConfig,
    pub y1: f64,
    pub vertices: Vec<ProjPoint>,
    pub polar_vertices: Vec<ProjPoint>,
}

impl Orbit {
    /// Finite vertices as Cartesian points, or `None` if any is at infinity.
    pub fn cartesian(&self) -> Option<Vec<Vec2>> {
        self.vertices.iter().map(ProjPoint::to_cartesian).collect()
    }

    pub fn polar_cartesian(&self) -> Option<Vec<Vec2>> {
        self.polar_vertices.iter().map(ProjPoint::to_cartesian).collect()
    }
}

/// Excluded parameter interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gap {
    pub lo: f64,
    pub hi: f64,
}

impl Gap {
    pub fn contains(&self, y: f64) -> bool {
        y > self.lo && y < self.hi
    }
}

/// Orbits over a parameter list, with the excised neighborhoods.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySweep {
    pub orbits: Vec<Orbit>,
    pub gaps: Vec<Gap>,
}

/// Poles of the sides of a polygon with respect to `outer`.
pub fn polar_polygon(outer: &Conic, vertices: &[ProjPoint]) -> Result<Vec<ProjPoint>> {
    let n = vertices.len();
    (0..n)
        .map(|i| pole_point(outer, &Line::through(&vertices[i], &vertices[(i + 1) % n])))
        .collect()
}

/// Starting parameters whose transverse passes through the point at infinity
/// of the parabola, sorted ascending.
pub fn singular_parameters(cfg: &FamilyConfig) -> Result<Vec<f64>> {
    let inf = ProjPoint::at_infinity(1.0, 0.0);
    let pts = iterate(&cfg.outer, &cfg.caustic, inf, Branch::Cw, cfg.n - 1)?;
    let mut ys: Vec<f64> = pts.iter().skip(1).filter_map(|p| p.to_cartesian().map(|q| q.y)).collect();
    ys.sort_by(f64::total_cmp);
    ys.dedup_by(|a, b| (*a - *b).abs() < 1e-12 * cfg.f);
    Ok(ys)
}

/// The transverse from `P(y1)` without any closure requirement: `n` vertices
/// plus the polar polygon built on them, and the closure defect of the chain.
pub fn open_chain(cfg: &FamilyConfig, y1: f64) -> Result<(Orbit, f64)> {
    let start = cfg.parabola().point_at(y1);
    let pts = iterate(&cfg.outer, &cfg.caustic, start, Branch::Ccw, cfg.n)?;
    let arc = ArcParam::for_conic(&cfg.outer)?;
    let total: f64 = pts.windows(2).map(|w| wrap_positive(arc.phi(&w[1]) - arc.phi(&w[0]))).sum();
    let vertices = pts[..cfg.n].to_vec();
    let polar_vertices = polar_polygon(&cfg.outer, &vertices)?;
    Ok((
        Orbit {
            family: *cfg,
            y1,
            vertices,
            polar_vertices,
        },
        total - TAU,
    ))
}

/// The closed orbit starting at `P(y1)`.
pub fn orbit_at(cfg: &FamilyConfig, y1: f64) -> Result<Orbit> {
    let (orbit, _) = open_chain(cfg, y1)?;
    let start = cfg.parabola().point_at(y1);
    let last = iterate(&cfg.outer, &cfg.caustic, start, Branch::Ccw, cfg.n)?[cfg.n];
    let arc = ArcParam::for_conic(&cfg.outer)?;
    let gap = wrap_signed(arc.phi(&last) - arc.phi(&start));
    if gap.abs() > CLOSURE_TOL {
        return Err(Error::ClosureViolation(gap));
    }
    Ok(orbit)
}

/// Whether `y` lies in the excised neighborhood of a singular parameter.
pub fn is_singular(singular: &[f64], y: f64, f: f64) -> bool {
    singular.iter().any(|s| (y - s).abs() < SINGULAR_EPS * f)
}

/// Closed orbits for every parameter outside the singular neighborhoods.
pub fn generate_family(cfg: &FamilyConfig, params: &[f64]) -> Result<FamilySweep> {
    let singular = singular_parameters(cfg)?;
    let eps = SINGULAR_EPS * cfg.f;
    let (lo, hi) = params
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(*y), b.max(*y)));
    let gaps = singular
        .iter()
        .filter(|s| **s + eps >= lo && **s - eps <= hi)
        .map(|s| Gap { lo: s - eps, hi: s + eps })
        .collect();
    let mut ys: Vec<f64> = params.iter().copied().filter(|y| !is_singular(&singular, *y, cfg.f)).collect();
    ys.sort_by(f64::total_cmp);
    let orbits = ys.iter().map(|y| orbit_at(cfg, *y)).collect::<Result<Vec<_>>>()?;
    Ok(FamilySweep { orbits, gaps })
}
