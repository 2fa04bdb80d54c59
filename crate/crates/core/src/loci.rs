//! Loci of centers and centroids over a family sweep: tracing, line, circle
//! and conic fits, implicit-curve residuals and bounding strips.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix2, Matrix3, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::centers::{centroid, triangle_center, CenterId, CentroidKind};
use crate::constants::ImplicitCurve;
use crate::engine::{is_singular, orbit_at, singular_parameters, FamilyConfig, Gap, Orbit, SINGULAR_EPS};
use crate::geom::{classify_conic, conic_features_tol, Conic, ConicClass, ConicFeatures, Line, ProjPoint, Vec2};
use crate::roots::golden_min;
use crate::{Error, Result};

/// Angular tolerance for calling a fitted line parallel to the directrix.
pub const VERTICAL_TOL: f64 = 1e-9;

/// Relative tolerance used to classify fitted conics.
pub const FIT_CLASS_TOL: f64 = 1e-7;

/// What is traced over the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Target {
    Center(CenterId),
    Centroid(CentroidKind),
    /// Meet of the two diagonals of a quadrilateral.
    DiagonalMeet,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Center(c) => write!(f, "{c}"),
            Target::Centroid(c) => write!(f, "{c}"),
            Target::DiagonalMeet => f.write_str("W"),
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("w") {
            return Ok(Target::DiagonalMeet);
        }
        if t.starts_with(['C', 'c']) {
            return t.parse().map(Target::Centroid);
        }
        t.parse().map(Target::Center)
    }
}

/// Evenly spaced starting ordinates `y1/f ∈ [lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub count: usize,
    pub lo: f64,
    pub hi: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            count: 400,
            lo: -8.0,
            hi: 8.0,
        }
    }
}

impl GridSpec {
    pub fn new(count: usize, lo: f64, hi: f64) -> Result<Self> {
        if count < 2 || !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidInput(format!("bad grid: {count} points on [{lo}, {hi}]")));
        }
        Ok(Self { count, lo, hi })
    }

    /// Grid ordinates for focal distance `f`.
    pub fn params(&self, f: f64) -> Vec<f64> {
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count).map(|i| f * (self.lo + step * i as f64)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub y1: f64,
    pub point: ProjPoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocusTrace {
    pub family: FamilyConfig,
    pub target: Target,
    pub polar: bool,
    pub samples: Vec<Sample>,
    pub gaps: Vec<Gap>,
}

impl LocusTrace {
    /// Finite sample points.
    pub fn points(&self) -> Vec<Vec2> {
        self.samples.iter().filter_map(|s| s.point.to_cartesian()).collect()
    }
}

/// Target point of one polygon.
pub fn target_point(polygon: &[ProjPoint], target: Target) -> Result<ProjPoint> {
    match target {
        Target::Center(id) => triangle_center(polygon, id),
        Target::Centroid(kind) => centroid(polygon, kind),
        Target::DiagonalMeet => {
            if polygon.len() != 4 {
                return Err(Error::InvalidInput(format!("W needs a quadrilateral, got {} vertices", polygon.len())));
            }
            let a = Line::through(&polygon[0], &polygon[2]);
            let b = Line::through(&polygon[1], &polygon[3]);
            Ok(a.meet(&b).normalized())
        }
    }
}

fn check_target(cfg: &FamilyConfig, target: Target) -> Result<()> {
    match target {
        Target::Center(id) if cfg.n != 3 => Err(Error::Unsupported(format!("{id} on N={} polygons", cfg.n))),
        Target::DiagonalMeet if cfg.n != 4 => Err(Error::Unsupported(format!("W on N={} polygons", cfg.n))),
        _ => Ok(()),
    }
}

fn orbit_target(orbit: &Orbit, target: Target, polar: bool) -> Result<ProjPoint> {
    let polygon = if polar { &orbit.polar_vertices } else { &orbit.vertices };
    target_point(polygon, target)
}

/// Target point of the orbit starting at `P(y1)`.
pub fn locus_point(cfg: &FamilyConfig, target: Target, polar: bool, y1: f64) -> Result<ProjPoint> {
    check_target(cfg, target)?;
    orbit_target(&orbit_at(cfg, y1)?, target, polar)
}

/// Whether a per-polygon failure just drops the sample.
fn skippable(e: &Error) -> bool {
    matches!(
        e,
        Error::UndefinedCenter(_) | Error::DegenerateTriangle | Error::DegeneratePolygon | Error::UnboundedInput
    )
}

/// Samples the target over the grid, skipping singular neighborhoods and
/// polygons on which the target is undefined.
pub fn trace_locus(cfg: &FamilyConfig, target: Target, polar: bool, grid: &GridSpec) -> Result<LocusTrace> {
    check_target(cfg, target)?;
    let singular = singular_parameters(cfg)?;
    let mut params = grid.params(cfg.f);
    params.sort_by(f64::total_cmp);
    let (lo, hi) = (params[0], params[params.len() - 1]);
    let eps = SINGULAR_EPS * cfg.f;
    let gaps: Vec<Gap> = singular
        .iter()
        .filter(|s| **s + eps >= lo && **s - eps <= hi)
        .map(|s| Gap { lo: s - eps, hi: s + eps })
        .collect();
    let mut samples = Vec::with_capacity(params.len());
    for y1 in params {
        if is_singular(&singular, y1, cfg.f) {
            continue;
        }
        match orbit_target(&orbit_at(cfg, y1)?, target, polar) {
            Ok(point) => samples.push(Sample { y1, point }),
            Err(e) if skippable(&e) => {}
            Err(e) => return Err(e),
        }
    }
    if samples.is_empty() {
        return Err(Error::EmptyTrace);
    }
    Ok(LocusTrace {
        family: *cfg,
        target,
        polar,
        samples,
        gaps,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitModel {
    Line,
    Circle,
    Conic,
    None,
}

impl fmt::Display for FitModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FitModel::Line => "line",
            FitModel::Circle => "circle",
            FitModel::Conic => "conic",
            FitModel::None => "none",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Strip {
    pub x_min: f64,
    pub x_max: f64,
}

impl Strip {
    pub fn of(points: &[Vec2]) -> Self {
        let (x_min, x_max) = points
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.x), b.max(p.x)));
        Self { x_min, x_max }
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }
}

/// Coefficients are unit-norm: `[a, b, c]` for the line `ax + by + c = 0`,
/// `[cx, cy, radius]` for a circle, and `[A, B, C, D, E, F]` for a conic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model: FitModel,
    pub coefficients: Vec<f64>,
    pub rms_residual: f64,
    pub features: Option<ConicFeatures>,
    pub strip: Strip,
    /// Line fits only: parallel to the directrix.
    pub vertical: bool,
}

impl FitResult {
    pub fn line(&self) -> Option<Line> {
        (self.model == FitModel::Line).then(|| Line::new(self.coefficients[0], self.coefficients[1], self.coefficients[2]))
    }

    pub fn conic(&self) -> Option<Conic> {
        (self.model == FitModel::Conic).then(|| {
            let k = &self.coefficients;
            Conic::new(k[0], k[1], k[2], k[3], k[4], k[5])
        })
    }
}

fn rms(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v * v, c + 1));
    (sum / count.max(1) as f64).sqrt()
}

/// Mean and max-abs scale of the centered points.
fn normalization(points: &[Vec2]) -> (Vec2, f64) {
    let mean = points.iter().sum::<Vec2>() / points.len() as f64;
    let scale = points.iter().map(|p| (p - mean).amax()).fold(0.0, f64::max);
    (mean, scale)
}

/// Total-least-squares line.
pub fn fit_line(points: &[Vec2]) -> Result<FitResult> {
    if points.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: points.len(),
        });
    }
    let (mean, scale) = normalization(points);
    if scale == 0.0 {
        return Err(Error::DegenerateFit);
    }
    if points.len() == 2 {
        let d = (points[1] - points[0]).normalize();
        let normal = Vec2::new(-d.y, d.x);
        return Ok(line_result(points, normal, -normal.dot(&points[0]), 0.0));
    }
    let mut cov = Matrix2::zeros();
    for p in points {
        let d = (p - mean) / scale;
        cov += d * d.transpose();
    }
    let eig = SymmetricEigen::new(cov);
    let i = if eig.eigenvalues[0] <= eig.eigenvalues[1] { 0 } else { 1 };
    let normal: Vec2 = eig.eigenvectors.column(i).into();
    let c = -normal.dot(&mean);
    let rms_residual = rms(points.iter().map(|p| normal.dot(p) + c));
    Ok(line_result(points, normal, c, rms_residual))
}

fn line_result(points: &[Vec2], normal: Vec2, c: f64, rms_residual: f64) -> FitResult {
    let (normal, c) = if normal.x < 0.0 || (normal.x == 0.0 && normal.y < 0.0) {
        (-normal, -c)
    } else {
        (normal, c)
    };
    FitResult {
        model: FitModel::Line,
        coefficients: vec![normal.x, normal.y, c],
        rms_residual,
        features: None,
        strip: Strip::of(points),
        vertical: normal.y.abs() < VERTICAL_TOL,
    }
}

/// Right singular vector of the smallest singular value, and whether the
/// null space is more than one-dimensional.
fn null_vector(design: &DMatrix<f64>) -> Result<(Vec<f64>, bool)> {
    let svd = design.clone().svd(false, true);
    let vt = svd.v_t.ok_or(Error::DegenerateFit)?;
    let sv = &svd.singular_values;
    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|a, b| sv[*a].total_cmp(&sv[*b]));
    let smax = sv[order[order.len() - 1]];
    if smax == 0.0 {
        return Err(Error::DegenerateFit);
    }
    let deficient = sv[order[1]] <= 1e-10 * smax;
    Ok((vt.row(order[0]).iter().copied().collect(), deficient))
}

/// Algebraic circle fit; collinear samples fall back to a line.
pub fn fit_circle(points: &[Vec2]) -> Result<FitResult> {
    if points.len() < 3 {
        return Err(Error::TooFewSamples {
            needed: 3,
            got: points.len(),
        });
    }
    let (mean, scale) = normalization(points);
    if scale == 0.0 {
        return Err(Error::DegenerateFit);
    }
    let design = DMatrix::from_fn(points.len(), 4, |i, j| {
        let u = (points[i] - mean) / scale;
        match j {
            0 => u.norm_squared(),
            1 => u.x,
            2 => u.y,
            _ => 1.0,
        }
    });
    let (k, _) = null_vector(&design)?;
    let lin = Vec2::new(k[1], k[2]).norm().max(k[3].abs());
    if k[0].abs() <= 1e-9 * lin {
        return fit_line(points);
    }
    let cu = Vec2::new(-k[1], -k[2]) / (2.0 * k[0]);
    let r2 = cu.norm_squared() - k[3] / k[0];
    if !(r2 > 0.0) {
        return Err(Error::DegenerateFit);
    }
    let center = mean + cu * scale;
    let radius = r2.sqrt() * scale;
    let rms_residual = rms(points.iter().map(|p| (p - center).norm() - radius));
    let features = ConicFeatures {
        class: ConicClass::Circle,
        center: Some(center),
        foci: vec![center],
        vertices: Vec::new(),
        axis: None,
        directrix: None,
        focal_distance: None,
        radius: Some(radius),
        semi_axes: Some((radius, radius)),
    };
    Ok(FitResult {
        model: FitModel::Circle,
        coefficients: vec![center.x, center.y, radius],
        rms_residual,
        features: Some(features),
        strip: Strip::of(points),
        vertical: false,
    })
}

/// First-order geometric distance `|Q(p)| / |∇Q(p)|`.
pub fn sampson_distance(c: &Conic, p: Vec2) -> f64 {
    let g = c.gradient_xy(p.x, p.y).norm();
    let v = c.eval_xy(p.x, p.y).abs();
    if g == 0.0 {
        if v == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        v / g
    }
}

/// Least-squares algebraic conic; residual is the RMS Sampson distance.
pub fn fit_conic(points: &[Vec2]) -> Result<FitResult> {
    if points.len() < 6 {
        return Err(Error::TooFewSamples {
            needed: 6,
            got: points.len(),
        });
    }
    let (mean, _) = normalization(points);
    let sx = points.iter().map(|p| (p.x - mean.x).abs()).fold(0.0, f64::max);
    let sy = points.iter().map(|p| (p.y - mean.y).abs()).fold(0.0, f64::max);
    if sx == 0.0 || sy == 0.0 {
        return Err(Error::DegenerateFit);
    }
    let design = DMatrix::from_fn(points.len(), 6, |i, j| {
        let u = Vec2::new((points[i].x - mean.x) / sx, (points[i].y - mean.y) / sy);
        match j {
            0 => u.x * u.x,
            1 => u.x * u.y,
            2 => u.y * u.y,
            3 => u.x,
            4 => u.y,
            _ => 1.0,
        }
    });
    let (k, deficient) = null_vector(&design)?;
    if deficient {
        return Err(Error::DegenerateFit);
    }
    let local = Conic::new(k[0], k[1], k[2], k[3], k[4], k[5]);
    let t = Matrix3::new(1.0 / sx, 0.0, -mean.x / sx, 0.0, 1.0 / sy, -mean.y / sy, 0.0, 0.0, 1.0);
    let m = t.transpose() * local.matrix() * t;
    let conic = Conic::from_matrix(&m);
    let norm = conic.coefficients().iter().map(|v| v * v).sum::<f64>().sqrt();
    let conic = Conic::from_coefficients(conic.coefficients().map(|v| v / norm));
    let rms_residual = rms(points.iter().map(|p| sampson_distance(&conic, *p)));
    let features = if classify_conic(&conic, FIT_CLASS_TOL).is_degenerate() {
        None
    } else {
        conic_features_tol(&conic, FIT_CLASS_TOL).ok()
    };
    Ok(FitResult {
        model: FitModel::Conic,
        coefficients: conic.coefficients().to_vec(),
        rms_residual,
        features,
        strip: Strip::of(points),
        vertical: false,
    })
}

/// Tries line, circle and conic in turn and returns the first whose RMS
/// residual is below `tol`, or the conic fit marked `None` when none passes.
/// Every attempted fit is returned alongside.
pub fn fit_auto(points: &[Vec2], tol: f64) -> Result<(FitResult, Vec<FitResult>)> {
    let mut tried = Vec::new();
    for fit in [fit_line, fit_circle, fit_conic] {
        match fit(points) {
            Ok(r) => {
                let pass = r.rms_residual < tol;
                tried.push(r.clone());
                if pass {
                    return Ok((r, tried));
                }
            }
            Err(Error::TooFewSamples { .. } | Error::DegenerateFit) => {}
            Err(e) => return Err(e),
        }
    }
    let mut best = tried.last().cloned().ok_or(Error::DegenerateFit)?;
    best.model = FitModel::None;
    Ok((best, tried))
}

/// Value and gradient of an implicit curve at `(x, y)` for focal distance `f`.
pub fn implicit_eval(curve: &ImplicitCurve, f: f64, x: f64, y: f64) -> (f64, Vec2) {
    let root = curve.surd.sqrt();
    let pw = |b: f64, e: i32| if e <= 0 { 1.0 } else { b.powi(e) };
    let (mut v, mut g) = (0.0, Vec2::zeros());
    for t in curve.terms {
        let c = (t.a * root + t.b) * pw(f, t.fp);
        v += c * pw(x, t.xp) * pw(y, t.yp);
        if t.xp > 0 {
            g.x += c * t.xp as f64 * pw(x, t.xp - 1) * pw(y, t.yp);
        }
        if t.yp > 0 {
            g.y += c * t.yp as f64 * pw(x, t.xp) * pw(y, t.yp - 1);
        }
    }
    (v, g)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImplicitResidual {
    /// Largest `|F| / |∇F|` over unflagged samples.
    pub max: f64,
    /// Per-sample `|F| / |∇F|`; `None` where the gradient vanishes.
    pub per_sample: Vec<Option<f64>>,
    pub flagged: usize,
}

/// Normalized residual of the sample points against an implicit curve.
pub fn implicit_residual(points: &[Vec2], curve: &ImplicitCurve, f: f64) -> ImplicitResidual {
    let per_sample: Vec<Option<f64>> = points
        .iter()
        .map(|p| {
            let (v, g) = implicit_eval(curve, f, p.x, p.y);
            let gn = g.norm();
            (gn > 0.0 && gn.is_finite()).then(|| v.abs() / gn)
        })
        .collect();
    let flagged = per_sample.iter().filter(|s| s.is_none()).count();
    let max = per_sample.iter().flatten().fold(0.0, |a: f64, b| a.max(*b));
    ImplicitResidual {
        max,
        per_sample,
        flagged,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StripReport {
    pub width: f64,
    pub bounds: Strip,
}

/// Spread of the sample abscissae.
pub fn strip_width(points: &[Vec2]) -> StripReport {
    let bounds = Strip::of(points);
    StripReport {
        width: bounds.width(),
        bounds,
    }
}

/// Sharpens the extremes of sampled `x(y1)` values by golden-section search
/// between the neighbors of each extreme sample, clipped to the gap edges.
/// `samples` must be sorted by `y1`.
pub fn refine_extremes<F>(samples: &[(f64, f64)], gaps: &[Gap], mut eval: F, tol: f64) -> Result<StripReport>
where
    F: FnMut(f64) -> Option<f64>,
{
    if samples.len() < 3 {
        return Err(Error::TooFewSamples {
            needed: 3,
            got: samples.len(),
        });
    }
    let mut refine = |sign: f64| -> f64 {
        let (i, _) = samples
            .iter()
            .enumerate()
            .min_by(|a, b| (sign * a.1 .1).total_cmp(&(sign * b.1 .1)))
            .expect("nonempty");
        let y = samples[i].0;
        let mut lo = samples[i.saturating_sub(1)].0;
        let mut hi = samples[(i + 1).min(samples.len() - 1)].0;
        for g in gaps {
            if g.hi <= y && g.hi > lo {
                lo = g.hi;
            }
            if g.lo >= y && g.lo < hi {
                hi = g.lo;
            }
        }
        let (_, best) = golden_min(|t| eval(t).map_or(f64::INFINITY, |x| sign * x), lo, hi, tol);
        sign * (sign * samples[i].1).min(best)
    };
    let x_min = refine(1.0);
    let x_max = refine(-1.0);
    let bounds = Strip { x_min, x_max };
    Ok(StripReport {
        width: bounds.width(),
        bounds,
    })
}

/// [`strip_width`] of a trace, refined with [`refine_extremes`].
pub fn refined_strip(trace: &LocusTrace) -> Result<StripReport> {
    let xs: Vec<(f64, f64)> = trace
        .samples
        .iter()
        .filter_map(|s| s.point.to_cartesian().map(|p| (s.y1, p.x)))
        .collect();
    let cfg = &trace.family;
    let eval = |y1: f64| {
        locus_point(cfg, trace.target, trace.polar, y1)
            .ok()
            .and_then(|p| p.to_cartesian())
            .map(|p| p.x)
    };
    refine_extremes(&xs, &trace.gaps, eval, 1e-13 * cfg.f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn target_parsing() {
        assert_eq!("X26".parse::<Target>().unwrap(), Target::Center(CenterId::X26));
        assert_eq!("c1".parse::<Target>().unwrap(), Target::Centroid(CentroidKind::C1));
        assert_eq!("W".parse::<Target>().unwrap(), Target::DiagonalMeet);
        assert!("X7".parse::<Target>().is_err());
        assert_eq!(Target::DiagonalMeet.to_string(), "W");
    }

    #[test]
    fn grid_endpoints() {
        let g = GridSpec::default().params(2.0);
        assert_eq!(g.len(), 400);
        assert_eq!(g[0], -16.0);
        assert_eq!(g[399], 16.0);
        assert!(GridSpec::new(1, 0.0, 1.0).is_err());
    }

    #[test]
    fn two_points_give_exact_line() {
        let fit = fit_line(&[Vec2::new(1.0, 2.0), Vec2::new(3.0, 5.0)]).unwrap();
        assert_eq!(fit.rms_residual, 0.0);
        let l = fit.line().unwrap();
        assert!(l.distance_to(Vec2::new(5.0, 8.0)) < 1e-12);
        assert!(!fit.vertical);
    }

    #[test]
    fn vertical_line_detected() {
        let pts: Vec<Vec2> = (0..10).map(|i| Vec2::new(2.5, i as f64)).collect();
        let fit = fit_line(&pts).unwrap();
        assert!(fit.vertical);
        assert_relative_eq!(-fit.coefficients[2] / fit.coefficients[0], 2.5, epsilon = 1e-14);
    }

    #[test]
    fn unit_circle_fit() {
        let pts: Vec<Vec2> = (0..12).map(|i| Vec2::new((i as f64).cos(), (i as f64).sin())).collect();
        let fit = fit_circle(&pts).unwrap();
        assert_eq!(fit.model, FitModel::Circle);
        assert!(fit.coefficients[0].abs() < 1e-12 && fit.coefficients[1].abs() < 1e-12);
        assert_relative_eq!(fit.coefficients[2], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn collinear_circle_fit_falls_back_to_line() {
        let pts: Vec<Vec2> = (0..8).map(|i| Vec2::new(i as f64, 2.0 * i as f64 + 1.0)).collect();
        assert_eq!(fit_circle(&pts).unwrap().model, FitModel::Line);
    }

    #[test]
    fn conic_fit_recovers_parabola() {
        let pts: Vec<Vec2> = (-10..=10).map(|i| {
            let y = i as f64 * 0.7;
            Vec2::new(3.0 - y * y / 2.0, y)
        })
        .collect();
        let fit = fit_conic(&pts).unwrap();
        let feats = fit.features.unwrap();
        assert_eq!(feats.class, ConicClass::Parabola);
        assert_relative_eq!(feats.focal_distance.unwrap(), 0.5, epsilon = 1e-10);
        assert_relative_eq!(feats.vertices[0].x, 3.0, epsilon = 1e-10);
        assert!(fit.rms_residual < 1e-12);
    }

    #[test]
    fn conic_fit_of_line_is_degenerate() {
        let pts: Vec<Vec2> = (0..10).map(|i| Vec2::new(i as f64, 1.0)).collect();
        assert_eq!(fit_conic(&pts), Err(Error::DegenerateFit));
        assert!(matches!(fit_conic(&pts[..3]), Err(Error::TooFewSamples { needed: 6, got: 3 })));
    }

    #[test]
    fn auto_fit_picks_simplest_model() {
        let pts: Vec<Vec2> = (0..12).map(|i| Vec2::new(1.0 + 2.0 * (i as f64).cos(), 2.0 * (i as f64).sin())).collect();
        let (best, tried) = fit_auto(&pts, 1e-9).unwrap();
        assert_eq!(best.model, FitModel::Circle);
        assert_eq!(tried.len(), 2);
    }

    #[test]
    fn implicit_gradient_matches_differences() {
        use crate::constants::X10_POLAR_QUARTIC;
        let (x, y, h) = (0.3, 0.7, 1e-6);
        let (_, g) = implicit_eval(&X10_POLAR_QUARTIC, 1.3, x, y);
        let fx = (implicit_eval(&X10_POLAR_QUARTIC, 1.3, x + h, y).0 - implicit_eval(&X10_POLAR_QUARTIC, 1.3, x - h, y).0) / (2.0 * h);
        let fy = (implicit_eval(&X10_POLAR_QUARTIC, 1.3, x, y + h).0 - implicit_eval(&X10_POLAR_QUARTIC, 1.3, x, y - h).0) / (2.0 * h);
        assert_relative_eq!(g.x, fx, max_relative = 1e-6);
        assert_relative_eq!(g.y, fy, max_relative = 1e-6);
    }

    #[test]
    fn trace_skips_singular_neighborhoods() {
        let cfg = FamilyConfig::closing(3, 1.0).unwrap();
        let r = cfg.r;
        let grid = GridSpec::new(3, -r, r).unwrap();
        let trace = trace_locus(&cfg, Target::Center(CenterId::X2), false, &grid).unwrap();
        assert_eq!(trace.samples.len(), 1);
        assert_eq!(trace.gaps.len(), 2);
        for s in &trace.samples {
            assert!(trace.gaps.iter().all(|g| !g.contains(s.y1)));
        }
    }

    #[test]
    fn empty_trace() {
        let cfg = FamilyConfig::closing(3, 1.0).unwrap();
        let grid = GridSpec::new(2, cfg.r, cfg.r + 1e-7).unwrap();
        assert_eq!(trace_locus(&cfg, Target::Center(CenterId::X2), false, &grid), Err(Error::EmptyTrace));
    }

    #[test]
    fn target_family_mismatch() {
        let cfg = FamilyConfig::closing(4, 1.0).unwrap();
        let grid = GridSpec::default();
        assert!(matches!(trace_locus(&cfg, Target::Center(CenterId::X2), false, &grid), Err(Error::Unsupported(_))));
    }

    #[test]
    fn barycenter_locus_is_coaxial_parabola() {
        let cfg = FamilyConfig::closing(3, 1.0).unwrap();
        let trace = trace_locus(&cfg, Target::Center(CenterId::X2), false, &GridSpec::default()).unwrap();
        let fit = fit_conic(&trace.points()).unwrap();
        let feats = fit.features.unwrap();
        assert_eq!(feats.class, ConicClass::Parabola);
        assert_relative_eq!(feats.focal_distance.unwrap(), 1.0 / 3.0, epsilon = 1e-9);
        assert!(feats.foci[0].y.abs() < 1e-9);
        assert!(feats.axis.unwrap().y.abs() < 1e-8);
        assert_relative_eq!(feats.vertices[0].x, 2.0 * (1.0 - 2.0 * 2f64.sqrt()) / 3.0, epsilon = 1e-6);
    }
}
