//! Checks over the families: conserved quantities, stationary
//! points, collinearity, Euler-line incidence, locus fits, and the suite
//! runner that aggregates them into a report.

use serde::{Deserialize, Serialize};

use crate::bicentric::{
    angle_grid, bicentric_chain, bicentric_closure_ratio, bicentric_orbit, closure_polynomial_root, pedal_distances,
    polar_image_family, polar_parabola_focal_distance, polar_polygon as bicentric_polar, BicentricConfig,
};
use crate::centers::{triangle_center, CenterId, CentroidKind};
use crate::constants::{ImplicitCurve, C1_POLAR_DECIC, PENTAGON_SEXTIC, X10_POLAR_QUARTIC, X1_POLAR_QUARTIC};
use crate::engine::{
    closure_defect, is_singular, open_chain, orbit_at, singular_parameters, FamilyConfig, Gap, Orbit, SINGULAR_EPS,
};
use crate::family::{polar_hyperbola, quad_orbit, triangle_orbit};
use crate::geom::{conic_features, ConicClass, Line, ProjPoint, Vec2};
use crate::loci::{
    fit_circle, fit_conic, fit_line, implicit_residual, refine_extremes, sampson_distance, target_point, FitModel,
    GridSpec, StripReport, Target,
};
use crate::roots::{bisect, poly_eval};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Per-check tolerances. Lengths are in units of `f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Closed-form incidences, stationary points, line fits.
    pub incidence: f64,
    /// Values known to six digits.
    pub table: f64,
    /// Fitted conic features and implicit quartic residuals.
    pub fit: f64,
    /// Degree-ten residual.
    pub decic: f64,
    /// Polar vertices on the polar hyperbola.
    pub hyperbola: f64,
    pub collinear: f64,
    /// Relative variation of conserved sums.
    pub conserved: f64,
    /// Bicentric closing ratios.
    pub bicentric: f64,
    /// Closed-form orbits against engine iteration.
    pub engine_match: f64,
    /// Fits that must fail (and conjecture residuals).
    pub nonconic: f64,
    /// Relative error of strip widths.
    pub strip: f64,
    /// Line fits over the linear-loci sweep.
    pub linear_loci: f64,
    /// Fitted parabola axis tilt.
    pub tilt: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            incidence: 1e-9,
            table: 1e-6,
            fit: 1e-6,
            decic: 1e-5,
            hyperbola: 1e-8,
            collinear: 1e-10,
            conserved: 1e-9,
            bicentric: 1e-5,
            engine_match: 1e-8,
            nonconic: 1e-7,
            strip: 0.1,
            linear_loci: 1e-8,
            tilt: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    pub f: f64,
    /// Parameter samples per sweep.
    pub samples: usize,
    /// Sweep range of `y1/f`.
    pub range: (f64, f64),
    /// Parameters for the closed-form against engine comparison.
    pub engine_samples: usize,
    /// Relative change of every caustic (and incircle) radius. Families
    /// are then followed as open chains, so closure-dependent checks fail.
    pub perturbation: Option<f64>,
    pub tolerances: Tolerances,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            f: 1.0,
            samples: 200,
            range: (-8.0, 8.0),
            engine_samples: 50,
            perturbation: None,
            tolerances: Tolerances::default(),
        }
    }
}

impl SuiteConfig {
    /// Default configuration with every radius scaled by `1 + rel`.
    pub fn negative_control(rel: f64) -> Self {
        Self {
            perturbation: Some(rel),
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckClass {
    Theorem,
    Conjecture,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub paper_ref: String,
    pub pass: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub class: CheckClass,
    /// The check asserts a quantity is invariant over a family.
    pub invariance: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureEvidence {
    pub supported: usize,
    pub unsupported: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub conjecture_evidence: ConjectureEvidence,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl SuiteReport {
    fn new(checks: Vec<CheckRecord>) -> Self {
        let theorem = |pass: bool| {
            checks
                .iter()
                .filter(|c| c.class == CheckClass::Theorem && c.pass == pass)
                .count()
        };
        let conj = |pass: bool| {
            checks
                .iter()
                .filter(|c| c.class == CheckClass::Conjecture && c.pass == pass)
                .count()
        };
        let summary = Summary {
            passed: theorem(true),
            failed: theorem(false),
            conjecture_evidence: ConjectureEvidence {
                supported: conj(true),
                unsupported: conj(false),
            },
        };
        Self {
            schema_version: SCHEMA_VERSION,
            checks,
            summary,
        }
    }

    /// All theorem checks passed.
    pub fn ok(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub name: String,
    pub family: String,
    pub samples: usize,
    pub max_abs_deviation: f64,
    pub mean_value: Vec2,
    pub pass: bool,
    pub tolerance: f64,
}

/// Spread of a point set about its mean.
pub fn stationarity_check(name: &str, family: &str, points: &[Vec2], tolerance: f64) -> InvariantReport {
    let mean = if points.is_empty() {
        Vec2::new(f64::NAN, f64::NAN)
    } else {
        points.iter().sum::<Vec2>() / points.len() as f64
    };
    let max_abs_deviation = points.iter().map(|p| (p - mean).norm()).fold(0.0, f64::max);
    InvariantReport {
        name: name.to_owned(),
        family: family.to_owned(),
        samples: points.len(),
        max_abs_deviation,
        mean_value: mean,
        pass: !points.is_empty() && max_abs_deviation < tolerance,
        tolerance,
    }
}

/// `|det[p − r, q − r]|` over the squared largest pairwise distance.
pub fn collinearity_check(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> Result<f64> {
    let (Some(p), Some(q), Some(r)) = (p.to_cartesian(), q.to_cartesian(), r.to_cartesian()) else {
        return Err(Error::UnboundedInput);
    };
    let scale = (p - q).norm().max((q - r).norm()).max((r - p).norm());
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok((p - r).perp(&(q - r)).abs() / (scale * scale))
}

/// Distance from the focus `(−f, 0)` to the line through the barycenter and
/// circumcenter of a triangle.
pub fn euler_line_through_focus(triangle: &[ProjPoint], f: f64) -> Result<f64> {
    let g = triangle_center(triangle, CenterId::X2)?;
    let o = triangle_center(triangle, CenterId::X3)?;
    if g.projective_distance(&o) < 1e-14 {
        return Err(Error::DegenerateTriangle);
    }
    Ok(Line::through(&g, &o).distance_to(Vec2::new(-f, 0.0)))
}

/// Unsigned angle at each vertex between its two neighbors.
pub fn vertex_angles(polygon: &[Vec2]) -> Vec<f64> {
    let n = polygon.len();
    (0..n)
        .map(|i| {
            let a = polygon[(i + n - 1) % n] - polygon[i];
            let b = polygon[(i + 1) % n] - polygon[i];
            a.perp(&b).abs().atan2(a.dot(&b))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfAngleSum {
    pub value: f64,
    /// Index of the vertex on the far branch of a hyperbola, if any.
    pub distal: Option<usize>,
}

/// `Σ sin(θᵢ/2)` over a polygon inscribed in a conic with a focus at `focus`.
///
/// `hyperbola_center` is given for hyperbolas: a vertex is on the branch
/// around `focus` iff it lies on the focus side of the center. When one
/// vertex `k` is on the other branch, its neighbors contribute
/// `cos(θ/2)` and `k` itself `−sin(θ_k/2)`.
pub fn conserved_half_angle_sum(polygon: &[ProjPoint], hyperbola_center: Option<Vec2>, focus: Vec2) -> Result<HalfAngleSum> {
    let pts: Vec<Vec2> = polygon
        .iter()
        .map(|p| p.to_cartesian().ok_or(Error::UnboundedInput))
        .collect::<Result<_>>()?;
    let n = pts.len();
    let theta = vertex_angles(&pts);
    let distal: Vec<usize> = match hyperbola_center {
        Some(c) => (0..n).filter(|i| (pts[*i] - c).dot(&(focus - c)) <= 0.0).collect(),
        None => Vec::new(),
    };
    let half_sin = |i: usize| (theta[i] / 2.0).sin();
    let half_cos = |i: usize| (theta[i] / 2.0).cos();
    match distal[..] {
        [] => Ok(HalfAngleSum {
            value: (0..n).map(half_sin).sum(),
            distal: None,
        }),
        [k] => {
            let (prev, next) = ((k + n - 1) % n, (k + 1) % n);
            let value = (0..n)
                .map(|i| {
                    if i == k {
                        -half_sin(i)
                    } else if i == prev || i == next {
                        half_cos(i)
                    } else {
                        half_sin(i)
                    }
                })
                .sum();
            Ok(HalfAngleSum { value, distal: Some(k) })
        }
        _ => Err(Error::InvalidInput(format!("{} vertices on the far branch", distal.len()))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationEntry {
    /// `d / r_b`
    pub ratio: f64,
    pub expected: ConicClass,
    pub found: ConicClass,
    pub rms_residual: f64,
    pub samples: usize,
}

fn classify_points(points: &[Vec2], line_tol: f64) -> Result<(ConicClass, f64)> {
    let line = fit_line(points)?;
    let scale = points.iter().map(|p| p.amax()).fold(1.0, f64::max);
    if line.rms_residual < line_tol * scale {
        return Ok((ConicClass::SingleLine, line.rms_residual));
    }
    let fit = fit_conic(points)?;
    let class = fit.features.as_ref().map_or(ConicClass::Empty, |f| f.class);
    Ok((class, fit.rms_residual))
}

/// Orthocenter loci of the triangles inscribed in the polar image of
/// bicentric triangle families with `d/r_b ∈ {0.8, 1, 1.2}`. A line is
/// reported as [`ConicClass::SingleLine`].
pub fn x4_classification_sweep() -> Result<Vec<ClassificationEntry>> {
    let cfg = SuiteConfig::default();
    x4_sweep(&Ctx::new(&cfg))
}

fn x4_sweep(ctx: &Ctx) -> Result<Vec<ClassificationEntry>> {
    [
        (0.8, ConicClass::Ellipse),
        (1.0, ConicClass::SingleLine),
        (1.2, ConicClass::Hyperbola),
    ]
    .into_iter()
    .map(|(k, expected)| {
        let cfg = ctx.bicentric(3, k)?;
        let mut pts = Vec::new();
        for t in angle_grid(ctx.cfg.samples) {
            let poly = ctx.bicentric_polygon(&cfg, t)?;
            let polar = bicentric_polar(&cfg, &poly)?;
            match triangle_center(&polar, CenterId::X4) {
                Ok(p) => pts.extend(p.to_cartesian()),
                Err(e) if skippable(&e) => {}
                Err(e) => return Err(e),
            }
        }
        let (found, rms_residual) = classify_points(&pts, ctx.cfg.tolerances.incidence)?;
        Ok(ClassificationEntry {
            ratio: k,
            expected,
            found,
            rms_residual,
            samples: pts.len(),
        })
    })
    .collect()
}

fn skippable(e: &Error) -> bool {
    matches!(
        e,
        Error::UndefinedCenter(_) | Error::DegenerateTriangle | Error::DegeneratePolygon | Error::UnboundedInput
    )
}

fn s2() -> f64 {
    2f64.sqrt()
}

fn s5() -> f64 {
    5f64.sqrt()
}

/// Families as the suite sees them, perturbed or not.
struct Ctx<'a> {
    cfg: &'a SuiteConfig,
}

struct Trace {
    samples: Vec<(f64, Vec2)>,
    gaps: Vec<Gap>,
}

impl Trace {
    fn points(&self) -> Vec<Vec2> {
        self.samples.iter().map(|s| s.1).collect()
    }
}

impl<'a> Ctx<'a> {
    fn new(cfg: &'a SuiteConfig) -> Self {
        Self { cfg }
    }

    fn family(&self, n: usize) -> Result<FamilyConfig> {
        let c = FamilyConfig::closing(n, self.cfg.f)?;
        match self.cfg.perturbation {
            Some(p) => c.perturbed(p),
            None => Ok(c),
        }
    }

    fn orbit(&self, fam: &FamilyConfig, y1: f64) -> Result<Orbit> {
        match self.cfg.perturbation {
            Some(_) => open_chain(fam, y1).map(|(o, _)| o),
            None => orbit_at(fam, y1),
        }
    }

    fn params(&self, fam: &FamilyConfig, count: usize) -> Result<(Vec<f64>, Vec<Gap>)> {
        let grid = GridSpec::new(count, self.cfg.range.0, self.cfg.range.1)?;
        let singular = singular_parameters(fam)?;
        let eps = SINGULAR_EPS * fam.f;
        let ys: Vec<f64> = grid.params(fam.f).into_iter().filter(|y| !is_singular(&singular, *y, fam.f)).collect();
        let gaps = singular.iter().map(|s| Gap { lo: s - eps, hi: s + eps }).collect();
        Ok((ys, gaps))
    }

    fn point(&self, fam: &FamilyConfig, target: Target, polar: bool, y1: f64) -> Result<Option<Vec2>> {
        let orbit = self.orbit(fam, y1)?;
        let polygon = if polar { &orbit.polar_vertices } else { &orbit.vertices };
        match target_point(polygon, target) {
            Ok(p) => Ok(p.to_cartesian()),
            Err(e) if skippable(&e) => Ok(None),
            Err(e) => Err(e),
        }
    }

    fn trace(&self, fam: &FamilyConfig, target: Target, polar: bool) -> Result<Trace> {
        let (ys, gaps) = self.params(fam, self.cfg.samples)?;
        let mut samples = Vec::with_capacity(ys.len());
        for y in ys {
            if let Some(p) = self.point(fam, target, polar, y)? {
                samples.push((y, p));
            }
        }
        if samples.is_empty() {
            return Err(Error::EmptyTrace);
        }
        Ok(Trace { samples, gaps })
    }

    fn strip(&self, fam: &FamilyConfig, target: Target, polar: bool) -> Result<(Trace, StripReport)> {
        let trace = self.trace(fam, target, polar)?;
        let xs: Vec<(f64, f64)> = trace.samples.iter().map(|(y, p)| (*y, p.x)).collect();
        let eval = |y: f64| self.point(fam, target, polar, y).ok().flatten().map(|p| p.x);
        let strip = refine_extremes(&xs, &trace.gaps, eval, 1e-13 * fam.f)?;
        Ok((trace, strip))
    }

    fn bicentric(&self, n: usize, k: f64) -> Result<BicentricConfig> {
        let c = BicentricConfig::closing(n, 1.0, k)?;
        match self.cfg.perturbation {
            Some(p) => c.with_inradius(c.inradius * (1.0 + p)),
            None => Ok(c),
        }
    }

    fn bicentric_polygon(&self, cfg: &BicentricConfig, t: f64) -> Result<Vec<Vec2>> {
        match self.cfg.perturbation {
            Some(_) => bicentric_chain(cfg, t),
            None => bicentric_orbit(cfg, t),
        }
    }
}

/// Result of one check before it is turned into a record.
struct Outcome {
    deviation: f64,
    samples: usize,
    /// Overrides `deviation < tolerance`.
    pass: Option<bool>,
    detail: Option<String>,
}

impl Outcome {
    fn new(deviation: f64, samples: usize) -> Self {
        Self {
            deviation,
            samples,
            pass: None,
            detail: None,
        }
    }

    fn detail(mut self, d: String) -> Self {
        self.detail = Some(d);
        self
    }
}

type Runner = Box<dyn Fn(&Ctx) -> Result<Outcome>>;

struct CheckDef {
    name: String,
    claim: &'static str,
    class: CheckClass,
    invariance: bool,
    tolerance: f64,
    run: Runner,
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |a, b| if b.is_nan() { f64::NAN } else { a.max(b) })
}

fn vertical_line_outcome(points: &[Vec2], expected_x: Option<f64>, f: f64) -> Result<Outcome> {
    let fit = fit_line(points)?;
    let k = &fit.coefficients;
    let x = -k[2] / k[0];
    let tilt = k[1].abs();
    let offset = expected_x.map_or(0.0, |e| (x - e).abs() / f);
    Ok(Outcome::new(max_of([fit.rms_residual / f, tilt, offset]), points.len())
        .detail(format!("x = {x:.15}, rms = {:.3e}, tilt = {tilt:.3e}", fit.rms_residual)))
}

/// Vertex and focal distance of a parabola coaxial with the outer parabola
/// and opening the same way; optionally the focus.
fn coaxial_parabola_outcome(points: &[Vec2], vertex: f64, focal: f64, focus: Option<f64>, f: f64, tilt_tol: f64) -> Result<Outcome> {
    let fit = fit_conic(points)?;
    let feats = fit.features.ok_or(Error::DegenerateFit)?;
    if feats.class != ConicClass::Parabola {
        return Ok(Outcome {
            pass: Some(false),
            ..Outcome::new(f64::INFINITY, points.len()).detail(format!("classified as {}", feats.class))
        });
    }
    let axis = feats.axis.ok_or(Error::DegenerateFit)?;
    let v = feats.vertices[0];
    let fc = feats.foci[0];
    let fd = feats.focal_distance.unwrap_or(f64::NAN);
    let tilt = axis.y.abs();
    let mut devs = vec![(v.x - vertex * f).abs() / f, v.y.abs() / f, (fd - focal * f).abs() / f];
    if let Some(x) = focus {
        devs.push((fc.x - x * f).abs() / f);
    }
    let wrong_way = axis.x > 0.0;
    let deviation = max_of(devs);
    Ok(Outcome {
        pass: Some(!wrong_way && tilt < tilt_tol && deviation.is_finite()),
        ..Outcome::new(deviation, points.len()).detail(format!(
            "vertex ({:.12}, {:.1e}), focus ({:.12}, {:.1e}), focal distance {fd:.12}, tilt {tilt:.1e}, rms {:.1e}",
            v.x, v.y, fc.x, fc.y, fit.rms_residual
        ))
    })
}

fn stationary_outcome(name: &str, points: &[Vec2], expected: Vec2, f: f64, tol: f64) -> Outcome {
    let rep = stationarity_check(name, "polar", points, tol * f);
    let dev = rep.max_abs_deviation.max((rep.mean_value - expected * f).norm()) / f;
    Outcome::new(dev, rep.samples).detail(format!("mean ({:.15}, {:.3e})", rep.mean_value.x, rep.mean_value.y))
}

fn implicit_outcome(points: &[Vec2], curve: &ImplicitCurve, f: f64) -> Outcome {
    let res = implicit_residual(points, curve, f);
    Outcome::new(res.max / f, points.len()).detail(format!("{} flagged samples", res.flagged))
}

/// Relative spread of a sequence of values.
fn relative_variation(values: &[f64]) -> f64 {
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(*v), b.max(*v)));
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    (hi - lo) / mean.abs()
}

fn point_mismatch(a: &ProjPoint, b: &ProjPoint) -> f64 {
    match (a.to_cartesian(), b.to_cartesian()) {
        (Some(p), Some(q)) => (p - q).norm() / p.norm().max(1.0),
        _ => a.projective_distance(b),
    }
}

fn check(
    name: impl Into<String>,
    claim: &'static str,
    tolerance: f64,
    invariance: bool,
    run: impl Fn(&Ctx) -> Result<Outcome> + 'static,
) -> CheckDef {
    CheckDef {
        name: name.into(),
        claim,
        class: CheckClass::Theorem,
        invariance,
        tolerance,
        run: Box::new(run),
    }
}

fn conjecture(name: impl Into<String>, claim: &'static str, tolerance: f64, run: impl Fn(&Ctx) -> Result<Outcome> + 'static) -> CheckDef {
    CheckDef {
        class: CheckClass::Conjecture,
        ..check(name, claim, tolerance, false, run)
    }
}

fn center(k: CenterId) -> Target {
    Target::Center(k)
}

fn closure_checks(t: &Tolerances, out: &mut Vec<CheckDef>) {
    let exact: [(usize, f64, f64); 4] = [
        (3, 2.0 * (s2() - 1.0), t.incidence),
        (4, 2.0 * (s5() - 2.0).sqrt(), t.incidence),
        (5, 0.995219, t.table),
        (6, 0.999183, t.table),
    ];
    for (n, expected, tol) in exact {
        out.push(check(format!("closure_ratio_n{n}"), "caustic radius closing the N-gon family", tol, true, move |ctx| {
            let ratio = crate::engine::solve_closure_radius(1.0, n, None)?.r;
            let fam = ctx.family(n)?;
            let defect = max_of(
                [-3.0, -0.7, 0.3, 1.9]
                    .iter()
                    .map(|y| closure_defect(&fam.outer, &fam.caustic, fam.parabola().point_at(y * fam.f), n).map(f64::abs))
                    .collect::<Result<Vec<_>>>()?,
            );
            Ok(Outcome::new((ratio - expected).abs().max(defect), 4).detail(format!("r/f = {ratio:.15}, defect {defect:.3e}")))
        }));
    }
    out.push(check("closure_ratio_n5_sextic", "pentagon closure sextic", t.incidence, false, |_| {
        let root = bisect(|x| Ok(poly_eval(&PENTAGON_SEXTIC, x)), 0.99, 0.999)?;
        let ratio = crate::engine::solve_closure_radius(1.0, 5, None)?.r;
        Ok(Outcome::new((root - ratio).abs(), 1).detail(format!("sextic root {root:.15}")))
    }));
}

fn n3_checks(t: &Tolerances, out: &mut Vec<CheckDef>) {
    out.push(check("x4_line", "orthocenter locus is a line parallel to the directrix", t.incidence, true, |ctx| {
        let fam = ctx.family(3)?;
        let pts = ctx.trace(&fam, center(CenterId::X4), false)?.points();
        let xs: Vec<f64> = pts.iter().map(|p| p.x).collect();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let sd = (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / xs.len() as f64).sqrt();
        let dev = sd.max((mean - (5.0 - 2.0 * s2()) * fam.f).abs()) / fam.f;
        Ok(Outcome::new(dev, pts.len()).detail(format!("mean x {mean:.15}, stdev {sd:.3e}")))
    }));
    let parabolas: [(CenterId, &str, f64, f64, Option<f64>); 3] = [
        (CenterId::X2, "barycenter locus is a coaxial parabola", 2.0 * (1.0 - 2.0 * s2()) / 3.0, 1.0 / 3.0, None),
        (CenterId::X3, "circumcenter locus is a coaxial parabola", -(2.0 * s2() + 3.0) / 2.0, (3.0 - 2.0 * s2()) / 2.0, None),
        (CenterId::X10, "Spieker center locus is a coaxial parabola", 1.5 - 2.0 * s2(), 0.5, Some(1.0 - 2.0 * s2())),
    ];
    for (id, claim, vertex, focal, focus) in parabolas {
        let tilt = t.tilt;
        out.push(check(format!("{}_parabola", id.to_string().to_lowercase()), claim, t.fit, true, move |ctx| {
            let fam = ctx.family(3)?;
            let pts = ctx.trace(&fam, center(id), false)?.points();
            coaxial_parabola_outcome(&pts, vertex, focal, focus, fam.f, tilt)
        }));
    }
    out.push(check("polar_hyperbola_n3", "polar triangles are inscribed in a hyperbola", t.hyperbola, true, |ctx| {
        let fam = ctx.family(3)?;
        let h = polar_hyperbola(3, fam.f)?;
        let (ys, _) = ctx.params(&fam, ctx.cfg.samples)?;
        let mut devs = Vec::new();
        for y in ys {
            for q in ctx.orbit(&fam, y)?.polar_vertices {
                if let Some(p) = q.to_cartesian() {
                    devs.push(sampson_distance(&h, p) / fam.f);
                }
            }
        }
        Ok(Outcome::new(max_of(devs.iter().copied()), devs.len()))
    }));
    let quartics: [(CenterId, &str, ImplicitCurve, f64); 2] = [
        (CenterId::X1, "polar incenter locus lies on a quartic", X1_POLAR_QUARTIC, 850.0),
        (CenterId::X10, "polar Spieker center locus lies on a quartic", X10_POLAR_QUARTIC, 1700.0),
    ];
    for (id, claim, curve, inv_width) in quartics {
        let stem = id.to_string().to_lowercase();
        out.push(check(format!("{stem}_polar_quartic"), claim, t.fit, true, move |ctx| {
            let fam = ctx.family(3)?;
            Ok(implicit_outcome(&ctx.trace(&fam, center(id), true)?.points(), &curve, fam.f))
        }));
        let nonconic = t.nonconic;
        out.push(check(format!("{stem}_polar_not_line"), "visually straight locus is not a line", nonconic, false, move |ctx| {
            let fam = ctx.family(3)?;
            let pts = ctx.trace(&fam, center(id), true)?.points();
            let fit = fit_line(&pts)?;
            let rms = fit.rms_residual / fam.f;
            Ok(Outcome {
                pass: Some(rms > nonconic),
                ..Outcome::new(rms, pts.len()).detail("line fit residual must exceed the tolerance".into())
            })
        }));
        let strip_tol = t.strip;
        let bounds_tol = t.fit;
        out.push(check(format!("{stem}_polar_strip"), "locus lies in a thin vertical strip", strip_tol, false, move |ctx| {
            let fam = ctx.family(3)?;
            let (trace, strip) = ctx.strip(&fam, center(id), true)?;
            let rel = (strip.width * inv_width / fam.f - 1.0).abs();
            let mut pass = rel < strip_tol;
            let mut detail = format!("width f/{:.1}", fam.f / strip.width);
            if id == CenterId::X10 {
                let lo = (s2() - 1.0 + (10.0 - 7.0 * s2()).sqrt() / 2.0) * fam.f;
                let hi = (s2() - 2f64.powf(-0.25)) * fam.f;
                let off = (strip.bounds.x_min - lo).abs().max((strip.bounds.x_max - hi).abs()) / fam.f;
                pass &= off < bounds_tol;
                detail += &format!(", bounds off by {off:.3e}");
            }
            Ok(Outcome {
                pass: Some(pass),
                ..Outcome::new(rel, trace.samples.len()).detail(detail)
            })
        }));
    }
    let lines: [(CenterId, &str, f64); 3] = [
        (CenterId::X2, "polar barycenter locus is a vertical line", (2.0 * s2() - 1.0) / 3.0),
        (CenterId::X3, "polar circumcenter locus is a vertical line", s2() - 1.0),
        (CenterId::X6, "polar symmedian point locus is a vertical line", 5.0 - 3.0 * s2()),
    ];
    for (id, claim, x) in lines {
        out.push(check(format!("{}_polar_line", id.to_string().to_lowercase()), claim, t.incidence, true, move |ctx| {
            let fam = ctx.family(3)?;
            vertical_line_outcome(&ctx.trace(&fam, center(id), true)?.points(), Some(x * fam.f), fam.f)
        }));
    }
    out.push(check("euler_line_focus", "polar Euler line passes through the focus", t.incidence, true, |ctx| {
        let fam = ctx.family(3)?;
        let (ys, _) = ctx.params(&fam, ctx.cfg.samples)?;
        let mut devs = Vec::new();
        for y in ys {
            match euler_line_through_focus(&ctx.orbit(&fam, y)?.polar_vertices, fam.f) {
                Ok(d) => devs.push(d / fam.f),
                Err(e) if skippable(&e) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(Outcome::new(max_of(devs.iter().copied()), devs.len()))
    }));
    let stationary: [(CenterId, &str, f64); 4] = [
        (CenterId::X26, "polar X26 is stationary at the focus", -1.0),
        (CenterId::X68, "polar X68 is stationary at the left hyperbola vertex", 3.0 - 2.0 * s2()),
        (CenterId::X110, "polar X110 is stationary at the right hyperbola vertex", 2.0 * s2() - 1.0),
        (CenterId::X161, "polar X161 is stationary at the left end of the caustic", 1.0 - 2.0 * s2()),
    ];
    for (id, claim, x) in stationary {
        let tol = t.incidence;
        let name = format!("{}_polar_stationary", id.to_string().to_lowercase());
        out.push(check(name.clone(), claim, tol, true, move |ctx| {
            let fam = ctx.family(3)?;
            let pts = ctx.trace(&fam, center(id), true)?.points();
            Ok(stationary_outcome(&name, &pts, Vec2::new(x, 0.0), fam.f, tol))
        }));
    }
    out.push(check("x99_polar_circle", "polar Steiner point locus is a circle", t.fit, true, |ctx| {
        let fam = ctx.family(3)?;
        let pts = ctx.trace(&fam, center(CenterId::X99), true)?.points();
        let fit = fit_circle(&pts)?;
        if fit.model != FitModel::Circle {
            return Ok(Outcome::new(f64::INFINITY, pts.len()).detail("collinear samples".into()));
        }
        let k = &fit.coefficients;
        let f = fam.f;
        let (cx, r) = ((6.0 * s2() - 7.0) * f, 2.0 * (17.0 - 12.0 * s2()).sqrt() * f);
        let touch = (k[0] + k[2] - (2.0 * s2() - 1.0) * f).abs();
        let dev = max_of([(k[0] - cx).abs(), k[1].abs(), (k[2] - r).abs(), touch, fit.rms_residual]) / f;
        Ok(Outcome::new(dev, pts.len()).detail(format!("center ({:.15}, {:.1e}), radius {:.15}", k[0], k[1], k[2])))
    }));
    out.push(check("polar_linear_loci", "many polar centers sweep vertical lines", t.linear_loci, true, |ctx| {
        let fam = ctx.family(3)?;
        let mut devs = Vec::new();
        let mut count = 0;
        for k in [2, 3, 4, 5, 6, 20] {
            let pts = ctx.trace(&fam, center(CenterId::from_k(k)?), true)?.points();
            count += pts.len();
            devs.push(vertical_line_outcome(&pts, None, fam.f)?.deviation);
        }
        Ok(Outcome::new(max_of(devs), count))
    }));
}

fn n4_checks(t: &Tolerances, out: &mut Vec<CheckDef>) {
    for polar in [false, true] {
        let suffix = if polar { "_polar" } else { "" };
        let tol = t.incidence;
        let name = format!("w{suffix}_stationary");
        out.push(check(name.clone(), "diagonals meet at a stationary point", tol, true, move |ctx| {
            let fam = ctx.family(4)?;
            let pts = ctx.trace(&fam, Target::DiagonalMeet, polar)?.points();
            Ok(stationary_outcome(&name, &pts, Vec2::new(2.0 - s5(), 0.0), fam.f, tol))
        }));
        // Holds for every quadrilateral, so no perturbation can break it.
        out.push(check(format!("collinear{suffix}_c0_c2_w"), "vertex centroid, area centroid and W are collinear", t.collinear, false, move |ctx| {
            let fam = ctx.family(4)?;
            let (ys, _) = ctx.params(&fam, ctx.cfg.samples)?;
            let mut devs = Vec::new();
            for y in ys {
                let o = ctx.orbit(&fam, y)?;
                let poly = if polar { &o.polar_vertices } else { &o.vertices };
                let pts: Result<Vec<ProjPoint>> = [
                    Target::Centroid(CentroidKind::C0),
                    Target::Centroid(CentroidKind::C2),
                    Target::DiagonalMeet,
                ]
                .iter()
                .map(|t| target_point(poly, *t))
                .collect();
                match pts {
                    Ok(p) => devs.push(collinearity_check(&p[0], &p[1], &p[2])?),
                    Err(e) if skippable(&e) => {}
                    Err(e) => return Err(e),
                }
            }
            Ok(Outcome::new(max_of(devs.iter().copied()), devs.len()))
        }));
    }
    let table: [(CentroidKind, &str, f64, f64); 3] = [
        (CentroidKind::C0, "vertex centroid locus is a coaxial parabola", -1.0, 0.25),
        (CentroidKind::C1, "perimeter centroid locus is a coaxial parabola", (s5() - 5.0) / 2.0, 0.5),
        (CentroidKind::C2, "area centroid locus is a coaxial parabola", s5() / 3.0 - 2.0, 1.0 / 3.0),
    ];
    for (kind, claim, vertex, focal) in table {
        let tilt = t.tilt;
        out.push(check(format!("{}_parabola_n4", kind.to_string().to_lowercase()), claim, t.fit, true, move |ctx| {
            let fam = ctx.family(4)?;
            let pts = ctx.trace(&fam, Target::Centroid(kind), false)?.points();
            coaxial_parabola_outcome(&pts, vertex, focal, None, fam.f, tilt)
        }));
    }
    out.push(check("polar_hyperbola_n4", "polar quadrilaterals are inscribed in a hyperbola", t.fit, true, |ctx| {
        let fam = ctx.family(4)?;
        let f = fam.f;
        let h = polar_hyperbola(4, f)?;
        let feats = conic_features(&h)?;
        let c = 2.0 * (s5() - 1.0).sqrt();
        let focus_dev = (feats.foci[0] - Vec2::new((1.0 - c) * f, 0.0))
            .norm()
            .max((feats.foci[1] - Vec2::new((1.0 + c) * f, 0.0)).norm());
        let (ys, _) = ctx.params(&fam, ctx.cfg.samples)?;
        let mut devs = vec![focus_dev / f];
        for y in ys {
            for q in ctx.orbit(&fam, y)?.polar_vertices {
                if let Some(p) = q.to_cartesian() {
                    devs.push(sampson_distance(&h, p) / f);
                }
            }
        }
        Ok(Outcome::new(max_of(devs.iter().copied()), devs.len()))
    }));
    let lines: [(CentroidKind, &str, f64); 2] = [
        (CentroidKind::C0, "polar vertex centroid locus is a vertical line", (3.0 - s5()) / 2.0),
        (CentroidKind::C2, "polar area centroid locus is a vertical line", (4.0 - s5()) / 3.0),
    ];
    for (kind, claim, x) in lines {
        out.push(check(format!("{}_polar_line_n4", kind.to_string().to_lowercase()), claim, t.incidence, true, move |ctx| {
            let fam = ctx.family(4)?;
            vertical_line_outcome(&ctx.trace(&fam, Target::Centroid(kind), true)?.points(), Some(x * fam.f), fam.f)
        }));
    }
    out.push(check("c1_polar_decic", "polar perimeter centroid locus lies on a degree-ten curve", t.decic, true, |ctx| {
        let fam = ctx.family(4)?;
        Ok(implicit_outcome(
            &ctx.trace(&fam, Target::Centroid(CentroidKind::C1), true)?.points(),
            &C1_POLAR_DECIC,
            fam.f,
        ))
    }));
    let (strip_tol, bounds_tol) = (t.strip, t.fit);
    out.push(check("c1_polar_strip", "polar perimeter centroid locus lies in a thin strip", strip_tol, false, move |ctx| {
        let fam = ctx.family(4)?;
        let f = fam.f;
        let (trace, strip) = ctx.strip(&fam, Target::Centroid(CentroidKind::C1), true)?;
        let rel = (strip.width * 25.0 / f - 1.0).abs();
        let (s10, s2, s5) = (10f64.sqrt(), s2(), s5());
        let lo = (5.0 + s2 - s10 - s5) / 2.0 * f;
        let hi = (s10 - s5 - 2.0 * s2 + 3.0) / 2.0 * f;
        let off = (strip.bounds.x_min - lo).abs().max((strip.bounds.x_max - hi).abs()) / f;
        Ok(Outcome {
            pass: Some(rel < strip_tol && off < bounds_tol),
            ..Outcome::new(rel, trace.samples.len()).detail(format!("width f/{:.2}, bounds off by {off:.3e}", f / strip.width))
        })
    }));
}

fn engine_checks(t: &Tolerances, out: &mut Vec<CheckDef>) {
    for n in [3usize, 4] {
        out.push(check(format!("closed_form_engine_n{n}"), "closed-form orbits agree with tangent iteration", t.engine_match, true, move |ctx| {
            let fam = ctx.family(n)?;
            let (ys, _) = ctx.params(&fam, ctx.cfg.engine_samples)?;
            let mut devs = Vec::new();
            for y in &ys {
                let closed = if n == 3 { triangle_orbit(fam.f, *y)? } else { quad_orbit(fam.f, *y)? };
                let engine = ctx.orbit(&fam, *y)?;
                for (a, b) in closed.vertices.iter().zip(&engine.vertices) {
                    devs.push(point_mismatch(a, b));
                }
                for (a, b) in closed.polar_vertices.iter().zip(&engine.polar_vertices) {
                    devs.push(point_mismatch(a, b));
                }
            }
            Ok(Outcome::new(max_of(devs), ys.len()))
        }));
    }
}

fn bicentric_checks(t: &Tolerances, out: &mut Vec<CheckDef>) {
    let table = [0.414214, 0.485868, 0.49761, 0.499591];
    for (n, expected) in (3..=6).zip(table) {
        out.push(check(format!("bicentric_ratio_n{n}"), "bicentric closing ratios with d = r", t.bicentric, true, move |ctx| {
            let geo = bicentric_closure_ratio(n)?;
            let poly = closure_polynomial_root(n)?;
            let cfg = ctx.bicentric(n, 1.0)?;
            let defect = cfg.closure_defect(0.4)?.abs();
            let dev = max_of([(geo - expected).abs(), (geo - poly).abs(), defect]);
            Ok(Outcome::new(dev, 1).detail(format!("geometric {geo:.12}, polynomial {poly:.12}, defect {defect:.1e}")))
        }));
    }
    for n in 3..=6 {
        out.push(check(format!("pedal_sum_n{n}"), "sum of distances from the circumcenter to the sides is invariant", t.conserved, true, move |ctx| {
            let cfg = ctx.bicentric(n, 1.0)?;
            let sums: Vec<f64> = angle_grid(ctx.cfg.samples)
                .into_iter()
                .map(|a| Ok(pedal_distances(&cfg, &ctx.bicentric_polygon(&cfg, a)?).iter().sum()))
                .collect::<Result<_>>()?;
            Ok(Outcome::new(relative_variation(&sums), sums.len()))
        }));
    }
    let classes: [(f64, &str); 3] = [(0.8, "ellipse"), (1.0, "parabola"), (1.2, "hyperbola")];
    for (k, class) in classes {
        out.push(check(format!("half_angle_sum_{class}"), "polar family conserves the half-angle sine sum", t.conserved, true, move |ctx| {
            let cfg = ctx.bicentric(3, k)?;
            let img = polar_image_family(&cfg)?;
            let center = match img.class {
                ConicClass::Hyperbola => conic_features(&img.outer)?.center,
                _ => None,
            };
            let (mut sums, mut eq_err, mut distal) = (Vec::new(), 0.0f64, 0);
            for a in angle_grid(ctx.cfg.samples) {
                let poly = ctx.bicentric_polygon(&cfg, a)?;
                let polar = bicentric_polar(&cfg, &poly)?;
                let s = match conserved_half_angle_sum(&polar, center, Vec2::zeros()) {
                    Ok(s) => s,
                    Err(Error::UnboundedInput) => continue,
                    Err(e) => return Err(e),
                };
                distal += usize::from(s.distal.is_some());
                let pedal: f64 = pedal_distances(&cfg, &poly).iter().sum::<f64>() / cfg.circumradius;
                eq_err = eq_err.max((s.value - pedal).abs());
                sums.push(s.value);
            }
            let dev = relative_variation(&sums).max(eq_err);
            Ok(Outcome::new(dev, sums.len()).detail(format!("{distal} samples with a far-branch vertex")))
        }));
    }
    out.push(check("polar_image_parabola", "polar image of the d = r bicentric family is a parabola", t.incidence, true, |ctx| {
        let rb = s2() - 1.0;
        let cfg = ctx.bicentric(3, 1.0)?;
        let img = polar_image_family(&cfg)?;
        if img.class != ConicClass::Parabola {
            return Ok(Outcome::new(f64::INFINITY, 1).detail(format!("classified as {}", img.class)));
        }
        let feats = conic_features(&img.outer)?;
        let f = feats.focal_distance.unwrap_or(f64::NAN);
        let dev = max_of([
            (f - (s2() + 1.0) / 2.0).abs(),
            (img.caustic.radius / f - 2.0 * (s2() - 1.0)).abs(),
            (f - polar_parabola_focal_distance(&cfg)).abs(),
            feats.foci[0].norm(),
            (cfg.inradius - rb).abs(),
        ]);
        Ok(Outcome::new(dev, 1).detail(format!("focal distance {f:.15}")))
    }));
    out.push(check("polar_image_classification", "polar image is an ellipse, parabola or hyperbola by offset", 0.0, false, |_| {
        let mut found = Vec::new();
        for (k, want) in [(0.8, ConicClass::Ellipse), (1.0, ConicClass::Parabola), (1.2, ConicClass::Hyperbola)] {
            let cfg = BicentricConfig::closing(3, 1.0, k)?;
            found.push((want, polar_image_family(&cfg)?.class));
        }
        let pass = found.iter().all(|(a, b)| a == b);
        Ok(Outcome {
            pass: Some(pass),
            ..Outcome::new(if pass { 0.0 } else { 1.0 }, 3)
                .detail(found.iter().map(|(_, b)| b.to_string()).collect::<Vec<_>>().join(", "))
        })
    }));
    out.push(check("x4_classification_sweep", "orthocenter locus is an ellipse, line or hyperbola by offset", 0.0, false, |ctx| {
        let entries = x4_sweep(ctx)?;
        let pass = entries.iter().all(|e| e.expected == e.found);
        let samples = entries.iter().map(|e| e.samples).sum();
        let detail = entries
            .iter()
            .map(|e| format!("{}: {}", e.ratio, e.found))
            .collect::<Vec<_>>()
            .join(", ");
        Ok(Outcome {
            pass: Some(pass),
            ..Outcome::new(if pass { 0.0 } else { 1.0 }, samples).detail(detail)
        })
    }));
}

fn conjecture_checks(t: &Tolerances, out: &mut Vec<CheckDef>) {
    for n in [5usize, 6] {
        for kind in [CentroidKind::C0, CentroidKind::C1, CentroidKind::C2] {
            let (tol, tilt) = (t.nonconic, t.tilt);
            out.push(conjecture(
                format!("conjecture_n{n}_{}_parabola", kind.to_string().to_lowercase()),
                "centroid loci are coaxial parabolas for every N",
                tol,
                move |ctx| {
                    let fam = ctx.family(n)?;
                    let pts = ctx.trace(&fam, Target::Centroid(kind), false)?.points();
                    let fit = fit_conic(&pts)?;
                    let feats = fit.features.ok_or(Error::DegenerateFit)?;
                    let tilt_dev = feats.axis.map_or(f64::INFINITY, |a| a.y.abs());
                    let pass = feats.class == ConicClass::Parabola && tilt_dev < tilt && fit.rms_residual < tol * fam.f;
                    Ok(Outcome {
                        pass: Some(pass),
                        ..Outcome::new(fit.rms_residual / fam.f, pts.len())
                            .detail(format!("{}, tilt {tilt_dev:.1e}", feats.class))
                    })
                },
            ));
        }
        for kind in [CentroidKind::C0, CentroidKind::C2] {
            out.push(conjecture(
                format!("conjecture_n{n}_{}_polar_line", kind.to_string().to_lowercase()),
                "polar vertex and area centroid loci are vertical lines",
                t.linear_loci,
                move |ctx| {
                    let fam = ctx.family(n)?;
                    vertical_line_outcome(&ctx.trace(&fam, Target::Centroid(kind), true)?.points(), None, fam.f)
                },
            ));
        }
        let tol = t.nonconic;
        out.push(conjecture(
            format!("conjecture_n{n}_c1_polar_nonconic"),
            "polar perimeter centroid locus is not a conic",
            tol,
            move |ctx| {
                let fam = ctx.family(n)?;
                let pts = ctx.trace(&fam, Target::Centroid(CentroidKind::C1), true)?.points();
                let line = fit_line(&pts)?.rms_residual / fam.f;
                let conic = match fit_conic(&pts) {
                    Ok(c) => c.rms_residual / fam.f,
                    Err(Error::DegenerateFit) => 0.0,
                    Err(e) => return Err(e),
                };
                let worst = line.min(conic);
                Ok(Outcome {
                    pass: Some(worst > tol),
                    ..Outcome::new(worst, pts.len()).detail(format!("line rms {line:.3e}, conic rms {conic:.3e}"))
                })
            },
        ));
    }
}

fn all_checks(t: &Tolerances) -> Vec<CheckDef> {
    let mut out = Vec::new();
    closure_checks(t, &mut out);
    n3_checks(t, &mut out);
    n4_checks(t, &mut out);
    engine_checks(t, &mut out);
    bicentric_checks(t, &mut out);
    conjecture_checks(t, &mut out);
    out
}

/// Names of every check, in run order.
pub fn check_names() -> Vec<String> {
    all_checks(&Tolerances::default()).into_iter().map(|c| c.name).collect()
}

/// Runs every check.
pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    run_suite_filtered(config, |_| true)
}

/// Runs the checks whose names pass `keep`. A check that errors is recorded
/// as failed with the error in its detail.
pub fn run_suite_filtered(config: &SuiteConfig, keep: impl Fn(&str) -> bool) -> SuiteReport {
    let ctx = Ctx::new(config);
    let records = all_checks(&config.tolerances)
        .into_iter()
        .filter(|c| keep(&c.name))
        .map(|c| {
            let (pass, max_deviation, samples, detail) = match (c.run)(&ctx) {
                Ok(o) => (
                    o.pass.unwrap_or(o.deviation < c.tolerance),
                    o.deviation,
                    o.samples,
                    o.detail,
                ),
                Err(e) => (false, f64::INFINITY, 0, Some(format!("error: {e}"))),
            };
            CheckRecord {
                name: c.name,
                paper_ref: c.claim.to_owned(),
                pass,
                max_deviation,
                tolerance: c.tolerance,
                samples,
                class: c.class,
                invariance: c.invariance,
                detail,
            }
        })
        .collect();
    SuiteReport::new(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn collinearity_of_random_points_fails() {
        let d = collinearity_check(
            &ProjPoint::finite(0.3, 1.7),
            &ProjPoint::finite(-2.1, 0.4),
            &ProjPoint::finite(1.1, -0.9),
        )
        .unwrap();
        assert!(d > 1e-3);
        let on = collinearity_check(
            &ProjPoint::finite(0.0, 1.0),
            &ProjPoint::finite(1.0, 3.0),
            &ProjPoint::finite(-2.0, -3.0),
        )
        .unwrap();
        assert!(on < 1e-15);
    }

    #[test]
    fn centroids_and_diagonal_meet_collinear_for_any_quadrilateral() {
        let quad = [
            ProjPoint::finite(0.0, 0.0),
            ProjPoint::finite(3.1, -0.4),
            ProjPoint::finite(2.2, 1.9),
            ProjPoint::finite(-0.7, 2.6),
        ];
        let p: Vec<ProjPoint> = [
            Target::Centroid(CentroidKind::C0),
            Target::Centroid(CentroidKind::C2),
            Target::DiagonalMeet,
        ]
        .iter()
        .map(|t| target_point(&quad, *t).unwrap())
        .collect();
        assert!(collinearity_check(&p[0], &p[1], &p[2]).unwrap() < 1e-14);
    }

    #[test]
    fn regular_polygon_half_angle_sum() {
        for n in 3..=7 {
            let r = (PI / n as f64).cos();
            let cfg = BicentricConfig::new(n, 1.0, r, 0.0).unwrap();
            let poly = bicentric_orbit(&cfg, 0.2).unwrap();
            let polar = bicentric_polar(&cfg, &poly).unwrap();
            let s = conserved_half_angle_sum(&polar, None, Vec2::zeros()).unwrap();
            assert_relative_eq!(s.value, n as f64 * r, epsilon = 1e-12);
        }
    }

    #[test]
    fn symmetric_polar_triangle_euler_line_is_axis() {
        let t = crate::family::polar_triangle(1.0, 0.0).unwrap();
        assert!(euler_line_through_focus(&t, 1.0).unwrap() < 1e-15);
    }

    #[test]
    fn stationarity_reports_mean() {
        let pts = [Vec2::new(1.0, 2.0), Vec2::new(1.0, 2.0)];
        let rep = stationarity_check("p", "fixed", &pts, 1e-9);
        assert!(rep.pass);
        assert_eq!(rep.mean_value, Vec2::new(1.0, 2.0));
        assert!(!stationarity_check("e", "empty", &[], 1e-9).pass);
    }

    #[test]
    fn vertex_angles_of_square() {
        let sq = [Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(1.0, 1.0), Vec2::new(0.0, 1.0)];
        for a in vertex_angles(&sq) {
            assert_relative_eq!(a, PI / 2.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn hyperbola_family_has_far_branch_samples() {
        let cfg = BicentricConfig::closing(3, 1.0, 1.2).unwrap();
        let img = polar_image_family(&cfg).unwrap();
        let center = conic_features(&img.outer).unwrap().center;
        let mut distal = 0;
        for a in angle_grid(200) {
            let poly = bicentric_orbit(&cfg, a).unwrap();
            let polar = bicentric_polar(&cfg, &poly).unwrap();
            if let Ok(s) = conserved_half_angle_sum(&polar, center, Vec2::zeros()) {
                distal += usize::from(s.distal.is_some());
            }
        }
        assert!(distal > 0);
    }

    #[test]
    fn filter_selects_single_check() {
        let names = check_names();
        let x99: Vec<&String> = names.iter().filter(|n| n.starts_with("x99")).collect();
        assert_eq!(x99, ["x99_polar_circle"]);
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
    }

    #[test]
    fn classification_sweep() {
        for e in x4_classification_sweep().unwrap() {
            assert_eq!(e.expected, e.found, "d/r = {}", e.ratio);
        }
    }
}
