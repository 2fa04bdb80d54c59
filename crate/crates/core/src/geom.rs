//! Projective plane primitives: homogeneous points and lines, general conics,
//! pole/polar, tangency and line/conic intersection.
//!
//! Everything is homogeneous. A point with `w == 0` is a point at infinity and
//! is a perfectly valid input to every operation here; the Poncelet iteration
//! on a parabola passes through such points whenever a chord runs parallel to
//! the axis.

use nalgebra::{Matrix2, Matrix3, SymmetricEigen, Vector2, Vector3};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Cartesian point or vector in the affine plane.
pub type Vec2 = Vector2<f64>;

/// Relative tolerance for geometric predicates.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Below this ratio of `|w|` to the largest coordinate a point is treated as
/// lying on the line at infinity.
const INFINITY_TOL: f64 = 1e-14;

/// Relative determinant threshold below which a conic is considered singular.
const SINGULAR_DET_TOL: f64 = 1e-14;

/// Homogeneous point `(x : y : w)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjPoint {
    pub x: f64,
    pub y: f64,
    pub w: f64,
}

impl ProjPoint {
    pub fn new(x: f64, y: f64, w: f64) -> Self {
        Self { x, y, w }
    }

    pub fn finite(x: f64, y: f64) -> Self {
        Self { x, y, w: 1.0 }
    }

    pub fn from_vec2(p: Vec2) -> Self {
        Self::finite(p.x, p.y)
    }

    /// The point at infinity in direction `(dx, dy)`.
    pub fn at_infinity(dx: f64, dy: f64) -> Self {
        Self { x: dx, y: dy, w: 0.0 }
    }

    pub fn coords(&self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.w)
    }

    pub fn from_coords(v: Vector3<f64>) -> Self {
        Self::new(v.x, v.y, v.z)
    }

    /// Unit-norm representative, sign fixed so the largest-magnitude coordinate is positive.
    pub fn normalized(&self) -> Self {
        Self::from_coords(canonical_sign(self.coords().normalize()))
    }

    pub fn is_at_infinity(&self) -> bool {
        self.w.abs() <= INFINITY_TOL * self.x.abs().max(self.y.abs())
    }

    /// Cartesian coordinates, or `None` for a point at infinity.
    pub fn to_cartesian(&self) -> Option<Vec2> {
        if self.is_at_infinity() {
            None
        } else {
            Some(Vec2::new(self.x / self.w, self.y / self.w))
        }
    }

    /// Sine of the angle between the two coordinate triples; zero iff proportional.
    pub fn projective_distance(&self, other: &ProjPoint) -> f64 {
        let a = self.coords();
        let b = other.coords();
        a.cross(&b).norm() / (a.norm() * b.norm())
    }

    pub fn approx_eq(&self, other: &ProjPoint, rel_tol: f64) -> bool {
        self.projective_distance(other) <= rel_tol
    }
}

/// Line `l0·x + l1·y + l2·w = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub l0: f64,
    pub l1: f64,
    pub l2: f64,
}

impl Line {
    pub fn new(l0: f64, l1: f64, l2: f64) -> Self {
        Self { l0, l1, l2 }
    }

    pub fn at_infinity() -> Self {
        Self::new(0.0, 0.0, 1.0)
    }

    /// The vertical line `x = c`.
    pub fn vertical(c: f64) -> Self {
        Self::new(1.0, 0.0, -c)
    }

    pub fn coords(&self) -> Vector3<f64> {
        Vector3::new(self.l0, self.l1, self.l2)
    }

    pub fn from_coords(v: Vector3<f64>) -> Self {
        Self::new(v.x, v.y, v.z)
    }

    /// Line joining two points.
    pub fn through(p: &ProjPoint, q: &ProjPoint) -> Self {
        Self::from_coords(p.coords().cross(&q.coords()))
    }

    /// Common point of two lines (at infinity when parallel).
    pub fn meet(&self, other: &Line) -> ProjPoint {
        ProjPoint::from_coords(self.coords().cross(&other.coords()))
    }

    pub fn eval(&self, p: &ProjPoint) -> f64 {
        self.coords().dot(&p.coords())
    }

    pub fn is_at_infinity(&self) -> bool {
        self.l0.abs().max(self.l1.abs()) <= INFINITY_TOL * self.l2.abs()
    }

    /// Scaled so that `(l0, l1)` is a unit normal.
    pub fn normalized(&self) -> Self {
        let n = self.l0.hypot(self.l1);
        Self::new(self.l0 / n, self.l1 / n, self.l2 / n)
    }

    /// Unsigned Euclidean distance from a finite point.
    pub fn distance_to(&self, p: Vec2) -> f64 {
        self.signed_distance_to(p).abs()
    }

    /// Signed distance; positive on the side the normal `(l0, l1)` points to.
    pub fn signed_distance_to(&self, p: Vec2) -> f64 {
        (self.l0 * p.x + self.l1 * p.y + self.l2) / self.l0.hypot(self.l1)
    }

    /// Unit direction vector along the line.
    pub fn direction(&self) -> Vec2 {
        Vec2::new(-self.l1, self.l0).normalize()
    }

    pub fn contains(&self, p: &ProjPoint, rel_tol: f64) -> bool {
        self.eval(p).abs() <= rel_tol * self.coords().norm() * p.coords().norm()
    }

    pub fn approx_eq(&self, other: &Line, rel_tol: f64) -> bool {
        let a = self.coords();
        let b = other.coords();
        a.cross(&b).norm() <= rel_tol * a.norm() * b.norm()
    }
}

/// Conic `A x² + B xy + C y² + D x + E y + F = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Conic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl Conic {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Self {
        Self { a, b, c, d, e, f }
    }

    pub fn from_coefficients(k: [f64; 6]) -> Self {
        Self::new(k[0], k[1], k[2], k[3], k[4], k[5])
    }

    pub fn coefficients(&self) -> [f64; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    /// Symmetric matrix `M` with `pᵀ M p = 0` for points on the conic.
    pub fn matrix(&self) -> Matrix3<f64> {
        Matrix3::new(
            self.a,
            self.b / 2.0,
            self.d / 2.0,
            self.b / 2.0,
            self.c,
            self.e / 2.0,
            self.d / 2.0,
            self.e / 2.0,
            self.f,
        )
    }

    pub fn from_matrix(m: &Matrix3<f64>) -> Self {
        Self::new(
            m[(0, 0)],
            m[(0, 1)] + m[(1, 0)],
            m[(1, 1)],
            m[(0, 2)] + m[(2, 0)],
            m[(1, 2)] + m[(2, 1)],
            m[(2, 2)],
        )
    }

    pub fn max_abs(&self) -> f64 {
        self.coefficients().iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Scaled to unit max-abs coefficient with the first nonzero coefficient positive.
    pub fn normalized(&self) -> Self {
        let k = self.coefficients();
        let scale = self.max_abs();
        let lead = k.iter().copied().find(|v| v.abs() > 1e-14 * scale).unwrap_or(1.0);
        let s = scale.copysign(lead);
        Self::from_coefficients(k.map(|v| v / s))
    }

    pub fn approx_eq(&self, other: &Conic, tol: f64) -> bool {
        let a = self.normalized().coefficients();
        let b = other.normalized().coefficients();
        a.iter().zip(b.iter()).all(|(x, y)| (x - y).abs() <= tol)
    }

    /// Quadratic form value at a homogeneous point.
    pub fn eval(&self, p: &ProjPoint) -> f64 {
        let v = p.coords();
        v.dot(&(self.matrix() * v))
    }

    pub fn eval_xy(&self, x: f64, y: f64) -> f64 {
        self.a * x * x + self.b * x * y + self.c * y * y + self.d * x + self.e * y + self.f
    }

    pub fn gradient_xy(&self, x: f64, y: f64) -> Vec2 {
        Vec2::new(
            2.0 * self.a * x + self.b * y + self.d,
            self.b * x + 2.0 * self.c * y + self.e,
        )
    }

    /// `B² − 4AC`.
    pub fn discriminant(&self) -> f64 {
        self.b * self.b - 4.0 * self.a * self.c
    }

    pub fn contains(&self, p: &ProjPoint, rel_tol: f64) -> bool {
        let v = p.coords();
        self.eval(p).abs() <= rel_tol * self.max_abs() * v.norm_squared()
    }

    pub fn is_degenerate(&self) -> bool {
        let m = self.normalized().matrix();
        m.determinant().abs() < SINGULAR_DET_TOL
    }

    fn require_nondegenerate(&self) -> Result<Matrix3<f64>> {
        if self.is_degenerate() {
            return Err(Error::DegenerateConic);
        }
        Ok(self.matrix())
    }

    /// Image of the conic under `p ↦ T p` for an invertible projective map `T`.
    pub fn transformed(&self, t: &Matrix3<f64>) -> Result<Conic> {
        let inv = t.try_inverse().ok_or(Error::DegenerateConic)?;
        Ok(Conic::from_matrix(&(inv.transpose() * self.matrix() * inv)))
    }

    /// Conic whose points are the poles, with respect to `self`, of the
    /// tangent lines of `other` (polar reciprocation).
    pub fn reciprocal_of(&self, other: &Conic) -> Result<Conic> {
        let m = self.require_nondegenerate()?;
        let k = other.require_nondegenerate()?;
        let kinv = k.try_inverse().ok_or(Error::DegenerateConic)?;
        Ok(Conic::from_matrix(&(m * kinv * m)))
    }
}

/// Circle given by center and radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleSpec {
    pub center: Vec2,
    pub radius: f64,
}

impl CircleSpec {
    pub fn new(center: Vec2, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidInput(format!("circle radius must be positive, got {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn conic(&self) -> Conic {
        let (cx, cy, r) = (self.center.x, self.center.y, self.radius);
        Conic::new(1.0, 0.0, 1.0, -2.0 * cx, -2.0 * cy, cx * cx + cy * cy - r * r)
    }

    pub fn point_at(&self, angle: f64) -> Vec2 {
        self.center + self.radius * Vec2::new(angle.cos(), angle.sin())
    }
}

/// The canonical parabola `x = −y²/(4f)`: vertex at the origin, focus at
/// `(−f, 0)`, directrix `x = f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParabolaStd {
    pub f: f64,
}

impl ParabolaStd {
    pub fn new(f: f64) -> Result<Self> {
        if !(f > 0.0) || !f.is_finite() {
            return Err(Error::InvalidInput(format!("focal distance must be positive, got {f}")));
        }
        Ok(Self { f })
    }

    /// `y² + 4f x = 0`.
    pub fn conic(&self) -> Conic {
        Conic::new(0.0, 0.0, 1.0, 4.0 * self.f, 0.0, 0.0)
    }

    pub fn focus(&self) -> Vec2 {
        Vec2::new(-self.f, 0.0)
    }

    pub fn vertex(&self) -> Vec2 {
        Vec2::zeros()
    }

    pub fn directrix(&self) -> Line {
        Line::vertical(self.f)
    }

    /// Point of the parabola with ordinate `y`.
    pub fn point_at(&self, y: f64) -> ProjPoint {
        ProjPoint::finite(-y * y / (4.0 * self.f), y)
    }

    /// Point with ordinate `num/den`, kept homogeneous so that `den = 0` gives
    /// the point at infinity `(1 : 0 : 0)`.
    pub fn point_at_ratio(&self, num: f64, den: f64) -> ProjPoint {
        ProjPoint::new(-num * num, 4.0 * self.f * num * den, 4.0 * self.f * den * den)
    }

    /// Tangent line at the point with ordinate `y`: `2f x + y·Y − y²/2 = 0`.
    pub fn tangent_at(&self, y: f64) -> Line {
        Line::new(2.0 * self.f, y, -y * y / 2.0)
    }
}

/// Type of a conic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConicClass {
    Ellipse,
    Circle,
    Parabola,
    Hyperbola,
    LinePair,
    SingleLine,
    Point,
    Empty,
}

impl ConicClass {
    pub fn is_degenerate(self) -> bool {
        matches!(self, Self::LinePair | Self::SingleLine | Self::Point | Self::Empty)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ellipse => "ellipse",
            Self::Circle => "circle",
            Self::Parabola => "parabola",
            Self::Hyperbola => "hyperbola",
            Self::LinePair => "line_pair",
            Self::SingleLine => "single_line",
            Self::Point => "point",
            Self::Empty => "empty",
        }
    }
}

impl std::fmt::Display for ConicClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Metric features of a nondegenerate conic. Fields that do not apply to the
/// class are `None` or empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConicFeatures {
    pub class: ConicClass,
    pub center: Option<Vec2>,
    pub foci: Vec<Vec2>,
    pub vertices: Vec<Vec2>,
    /// Unit direction of the focal axis. For a parabola it points from the vertex to the focus.
    pub axis: Option<Vec2>,
    pub directrix: Option<Line>,
    pub focal_distance: Option<f64>,
    pub radius: Option<f64>,
    /// `(a, b)`: transverse/major and conjugate/minor semi-axes.
    pub semi_axes: Option<(f64, f64)>,
}

/// One point of a line/conic intersection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Intersection {
    pub point: ProjPoint,
    pub multiplicity: u8,
}

/// Polar of `p` with respect to `c`; the tangent at `p` when `p` lies on `c`.
pub fn polar_line(c: &Conic, p: &ProjPoint) -> Result<Line> {
    let m = c.require_nondegenerate()?;
    Ok(Line::from_coords(m * p.coords()))
}

/// Pole of `l` with respect to `c`.
pub fn pole_point(c: &Conic, l: &Line) -> Result<ProjPoint> {
    let m = c.require_nondegenerate()?;
    // The adjugate is proportional to the inverse and avoids dividing by a small determinant.
    let adj = adjugate(&m);
    Ok(ProjPoint::from_coords(adj * l.coords()))
}

/// Lines through `p` tangent to `c`: two for an exterior point, one when `p`
/// lies on `c`, none when `p` is interior.
pub fn tangent_lines_from(c: &Conic, p: &ProjPoint) -> Result<Vec<Line>> {
    let m = c.require_nondegenerate()?;
    let dual = adjugate(&(m / c.max_abs()));
    let (u, v) = complement_basis(&p.coords());
    let alpha = u.dot(&(dual * u));
    let beta = u.dot(&(dual * v));
    let gamma = v.dot(&(dual * v));
    Ok(solve_binary_quadratic(alpha, beta, gamma, DEFAULT_TOL)
        .into_iter()
        .map(|(s, t, _)| Line::from_coords(u * s + v * t))
        .collect())
}

/// Points common to `l` and `c`; a tangent contact is reported once with
/// multiplicity 2.
pub fn intersect_line_conic(c: &Conic, l: &Line) -> Result<Vec<Intersection>> {
    let m = c.matrix() / c.max_abs();
    let (u, v) = complement_basis(&l.coords());
    let alpha = u.dot(&(m * u));
    let beta = u.dot(&(m * v));
    let gamma = v.dot(&(m * v));
    let scale = alpha.abs().max(beta.abs()).max(gamma.abs());
    if scale <= 1e-13 {
        return Err(Error::ContainedLine);
    }
    Ok(solve_binary_quadratic(alpha, beta, gamma, DEFAULT_TOL)
        .into_iter()
        .map(|(s, t, mult)| Intersection {
            point: ProjPoint::from_coords(u * s + v * t),
            multiplicity: mult,
        })
        .collect())
}

/// Classify by the discriminant `B² − 4AC` and the rank of the conic matrix.
/// Coefficients are normalized first, so `tol` is relative.
pub fn classify_conic(c: &Conic, tol: f64) -> ConicClass {
    let n = c.normalized();
    let m = n.matrix();
    let sv = m.singular_values();
    let smax = sv.max();
    let rank = sv.iter().filter(|s| **s > tol * smax).count();
    let delta = n.discriminant();
    match rank {
        3 => {
            if delta.abs() < tol {
                ConicClass::Parabola
            } else if delta < 0.0 {
                if (n.a + n.c) * m.determinant() >= 0.0 {
                    ConicClass::Empty
                } else if (n.a - n.c).abs() < tol && n.b.abs() < tol {
                    ConicClass::Circle
                } else {
                    ConicClass::Ellipse
                }
            } else {
                ConicClass::Hyperbola
            }
        }
        2 => {
            if delta > tol {
                ConicClass::LinePair
            } else if delta < -tol {
                ConicClass::Point
            } else {
                // Parallel pair: real iff the sum of the two diagonal cofactors is negative.
                let k = (n.a * n.f - n.d * n.d / 4.0) + (n.c * n.f - n.e * n.e / 4.0);
                if k < 0.0 {
                    ConicClass::LinePair
                } else {
                    ConicClass::Empty
                }
            }
        }
        1 => ConicClass::SingleLine,
        _ => ConicClass::Empty,
    }
}

/// Foci, vertices, axes and related metric data of a nondegenerate real conic.
pub fn conic_features(c: &Conic) -> Result<ConicFeatures> {
    conic_features_tol(c, DEFAULT_TOL)
}

/// [`conic_features`] with an explicit classification tolerance. A conic
/// classified as a parabola is treated as one exactly: the smaller
/// eigenvalue of its quadratic part is dropped.
pub fn conic_features_tol(c: &Conic, tol: f64) -> Result<ConicFeatures> {
    let class = classify_conic(c, tol);
    if class.is_degenerate() {
        return Err(Error::NoFeatures(class));
    }
    let n = c.normalized();
    let quad = Matrix2::new(n.a, n.b / 2.0, n.b / 2.0, n.c);
    let eig = SymmetricEigen::new(quad);
    let lin = Vec2::new(n.d, n.e);

    if class == ConicClass::Parabola {
        let (big, small) = if eig.eigenvalues[0].abs() >= eig.eigenvalues[1].abs() {
            (0, 1)
        } else {
            (1, 0)
        };
        let lambda = eig.eigenvalues[big];
        let normal: Vec2 = eig.eigenvectors.column(big).into();
        let along: Vec2 = eig.eigenvectors.column(small).into();
        let du = lin.dot(&along);
        let dv = lin.dot(&normal);
        // λ v² + du·u + dv·v + F = 0 in the rotated frame (u along the axis).
        let v0 = -dv / (2.0 * lambda);
        let u0 = -(lambda * v0 * v0 + dv * v0 + n.f) / du;
        let vertex = along * u0 + normal * v0;
        let open = along * (-lambda / du).signum();
        let focal = du.abs() / (4.0 * lambda.abs());
        let focus = vertex + open * focal;
        let foot = vertex - open * focal;
        let directrix = Line::new(open.x, open.y, -open.dot(&foot));
        return Ok(ConicFeatures {
            class,
            center: None,
            foci: vec![focus],
            vertices: vec![vertex],
            axis: Some(open),
            directrix: Some(directrix),
            focal_distance: Some(focal),
            radius: None,
            semi_axes: None,
        });
    }

    let center = Matrix2::new(2.0 * n.a, n.b, n.b, 2.0 * n.c)
        .lu()
        .solve(&(-lin))
        .ok_or(Error::NoFeatures(class))?;
    let f0 = n.f + lin.dot(&center) / 2.0;
    if f0.abs() < 1e-14 {
        return Err(Error::NoFeatures(class));
    }
    let l = eig.eigenvalues;
    let e0: Vec2 = eig.eigenvectors.column(0).into();
    let e1: Vec2 = eig.eigenvectors.column(1).into();
    let sq0 = -f0 / l[0];
    let sq1 = -f0 / l[1];

    let mut feats = ConicFeatures {
        class,
        center: Some(center),
        foci: Vec::new(),
        vertices: Vec::new(),
        axis: None,
        directrix: None,
        focal_distance: None,
        radius: None,
        semi_axes: None,
    };
    match class {
        ConicClass::Ellipse | ConicClass::Circle => {
            let (a2, b2, major) = if sq0 >= sq1 { (sq0, sq1, e0) } else { (sq1, sq0, e1) };
            let (a, b) = (a2.sqrt(), b2.sqrt());
            let ecc = (a2 - b2).max(0.0).sqrt();
            feats.semi_axes = Some((a, b));
            feats.axis = Some(major);
            feats.foci = vec![center - major * ecc, center + major * ecc];
            feats.vertices = vec![center - major * a, center + major * a];
            if class == ConicClass::Circle {
                feats.radius = Some((a + b) / 2.0);
                feats.foci = vec![center];
            }
        }
        ConicClass::Hyperbola => {
            let (a2, b2, transverse) = if sq0 > 0.0 { (sq0, -sq1, e0) } else { (sq1, -sq0, e1) };
            let (a, b) = (a2.sqrt(), b2.sqrt());
            let ecc = (a2 + b2).sqrt();
            feats.semi_axes = Some((a, b));
            feats.axis = Some(transverse);
            feats.foci = vec![center - transverse * ecc, center + transverse * ecc];
            feats.vertices = vec![center - transverse * a, center + transverse * a];
        }
        _ => unreachable!("degenerate classes rejected above"),
    }
    sort_points(&mut feats.foci);
    sort_points(&mut feats.vertices);
    Ok(feats)
}

fn sort_points(pts: &mut [Vec2]) {
    pts.sort_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)));
}

pub(crate) fn adjugate(m: &Matrix3<f64>) -> Matrix3<f64> {
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| m[(r0, c0)] * m[(r1, c1)] - m[(r0, c1)] * m[(r1, c0)];
    Matrix3::new(
        c(1, 2, 1, 2),
        -c(0, 2, 1, 2),
        c(0, 1, 1, 2),
        -c(1, 2, 0, 2),
        c(0, 2, 0, 2),
        -c(0, 1, 0, 2),
        c(1, 2, 0, 1),
        -c(0, 2, 0, 1),
        c(0, 1, 0, 1),
    )
}

fn canonical_sign(v: Vector3<f64>) -> Vector3<f64> {
    let i = v.iamax();
    if v[i] < 0.0 {
        -v
    } else {
        v
    }
}

/// Orthonormal basis of the plane orthogonal to `v` in R³.
fn complement_basis(v: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let n = v.normalize();
    let k = n.iamin();
    let mut e = Vector3::zeros();
    e[k] = 1.0;
    let u = n.cross(&e).normalize();
    let w = n.cross(&u);
    (u, w)
}

/// Roots `(s : t)` of `α s² + 2β st + γ t² = 0` with multiplicities.
fn solve_binary_quadratic(alpha: f64, beta: f64, gamma: f64, tol: f64) -> Vec<(f64, f64, u8)> {
    let disc = beta * beta - alpha * gamma;
    let scale = beta * beta + (alpha * gamma).abs();
    if disc.abs() <= tol * scale {
        // Double root: the null direction of [[α, β], [β, γ]].
        let r = if alpha.abs() >= gamma.abs() { (-beta, alpha) } else { (gamma, -beta) };
        let r = if r.0 == 0.0 && r.1 == 0.0 { (1.0, 0.0) } else { r };
        return vec![(r.0, r.1, 2)];
    }
    if disc < 0.0 {
        return Vec::new();
    }
    let q = -(beta + disc.sqrt().copysign(beta));
    if q == 0.0 {
        // β = 0 and αγ = 0 is covered by the double-root branch; here αγ < 0 with β = 0.
        let s = (-gamma / alpha).sqrt();
        return vec![(s, 1.0, 1), (-s, 1.0, 1)];
    }
    vec![(q, alpha, 1), (gamma, q, 1)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_circle() -> Conic {
        CircleSpec::new(Vec2::zeros(), 1.0).unwrap().conic()
    }

    #[test]
    fn focus_polar_is_directrix() {
        let par = ParabolaStd::new(1.0).unwrap();
        let l = polar_line(&par.conic(), &ProjPoint::finite(-1.0, 0.0)).unwrap();
        assert!(l.approx_eq(&Line::vertical(1.0), 1e-15));
    }

    #[test]
    fn circle_polar_is_inversion_distance() {
        let l = polar_line(&unit_circle(), &ProjPoint::finite(2.0, 0.0)).unwrap();
        assert!(l.approx_eq(&Line::vertical(0.5), 1e-15));
    }

    #[test]
    fn polar_of_point_on_parabola_is_tangent() {
        let par = ParabolaStd::new(1.0).unwrap();
        let p = ProjPoint::finite(-0.25, 1.0);
        let l = polar_line(&par.conic(), &p).unwrap();
        assert!(l.contains(&p, 1e-15));
        let hits = intersect_line_conic(&par.conic(), &l).unwrap();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].multiplicity, 2);
        assert!(hits[0].point.approx_eq(&p, 1e-9));
    }

    #[test]
    fn pole_of_tangent_line_through_inversion() {
        let rb = 2f64.sqrt() - 1.0;
        let p = pole_point(&unit_circle(), &Line::vertical(2.0 * rb)).unwrap();
        let c = p.to_cartesian().unwrap();
        assert_relative_eq!(c.x, 1.0 / (2.0 * rb), epsilon = 1e-14);
        assert_relative_eq!(c.y, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn pole_of_line_at_infinity_is_axis_direction() {
        let par = ParabolaStd::new(1.0).unwrap();
        let p = pole_point(&par.conic(), &Line::at_infinity()).unwrap();
        assert!(p.is_at_infinity());
        assert!(p.approx_eq(&ProjPoint::at_infinity(1.0, 0.0), 1e-15));
    }

    #[test]
    fn tangents_from_exterior_point_of_unit_circle() {
        let p = ProjPoint::finite(2.0, 0.0);
        let lines = tangent_lines_from(&unit_circle(), &p).unwrap();
        assert_eq!(lines.len(), 2);
        let mut angles: Vec<f64> = lines
            .iter()
            .map(|l| {
                assert!(l.contains(&p, 1e-14));
                let d = l.direction();
                (d.y / d.x).atan().to_degrees()
            })
            .collect();
        angles.sort_by(f64::total_cmp);
        assert_relative_eq!(angles[0], -30.0, epsilon = 1e-10);
        assert_relative_eq!(angles[1], 30.0, epsilon = 1e-10);
    }

    #[test]
    fn tangent_from_point_on_circle_and_inside() {
        let lines = tangent_lines_from(&unit_circle(), &ProjPoint::finite(1.0, 0.0)).unwrap();
        assert_eq!(lines.len(), 1);
        assert!(lines[0].approx_eq(&Line::vertical(1.0), 1e-12));
        assert!(tangent_lines_from(&unit_circle(), &ProjPoint::finite(0.2, 0.1)).unwrap().is_empty());
    }

    #[test]
    fn tangents_from_parabola_point_to_focal_circle() {
        let r = 0.828427;
        let circle = CircleSpec::new(Vec2::new(-1.0, 0.0), r).unwrap();
        let p = ParabolaStd::new(1.0).unwrap().point_at(2.0);
        let lines = tangent_lines_from(&circle.conic(), &p).unwrap();
        assert_eq!(lines.len(), 2);
        for l in &lines {
            assert_relative_eq!(l.distance_to(circle.center), r, epsilon = 1e-12);
        }
    }

    #[test]
    fn tangents_from_point_at_infinity() {
        let circle = CircleSpec::new(Vec2::new(-1.0, 0.0), 0.5).unwrap();
        let lines = tangent_lines_from(&circle.conic(), &ProjPoint::at_infinity(1.0, 0.0)).unwrap();
        assert_eq!(lines.len(), 2);
        let mut ys: Vec<f64> = lines.iter().map(|l| -l.l2 / l.l1).collect();
        ys.sort_by(f64::total_cmp);
        assert_relative_eq!(ys[0], -0.5, epsilon = 1e-14);
        assert_relative_eq!(ys[1], 0.5, epsilon = 1e-14);
    }

    #[test]
    fn vertical_line_meets_parabola_twice() {
        let par = ParabolaStd::new(1.0).unwrap().conic();
        let hits = intersect_line_conic(&par, &Line::vertical(-1.0)).unwrap();
        let mut ys: Vec<f64> = hits.iter().map(|h| h.point.to_cartesian().unwrap().y).collect();
        ys.sort_by(f64::total_cmp);
        assert_relative_eq!(ys[0], -2.0, epsilon = 1e-14);
        assert_relative_eq!(ys[1], 2.0, epsilon = 1e-14);
        assert!(intersect_line_conic(&par, &Line::vertical(1.0)).unwrap().is_empty());
    }

    #[test]
    fn horizontal_line_meets_parabola_at_infinity() {
        let par = ParabolaStd::new(1.0).unwrap().conic();
        let hits = intersect_line_conic(&par, &Line::new(0.0, 1.0, -2.0)).unwrap();
        assert_eq!(hits.len(), 2);
        assert!(hits.iter().any(|h| h.point.is_at_infinity()));
        assert!(hits.iter().any(|h| h.point.approx_eq(&ProjPoint::finite(-1.0, 2.0), 1e-14)));
    }

    #[test]
    fn line_inside_degenerate_conic() {
        let pair = Conic::new(0.0, 1.0, 0.0, 0.0, 0.0, 0.0); // xy = 0
        assert!(matches!(intersect_line_conic(&pair, &Line::new(1.0, 0.0, 0.0)), Err(Error::ContainedLine)));
    }

    #[test]
    fn classification_examples() {
        let s2 = 2f64.sqrt();
        assert_eq!(classify_conic(&ParabolaStd::new(1.0).unwrap().conic(), DEFAULT_TOL), ConicClass::Parabola);
        // (√2+3/2)(x−1)² − y²/2 − 2 = 0
        let k = s2 + 1.5;
        let h = Conic::new(k, 0.0, -0.5, -2.0 * k, 0.0, k - 2.0);
        assert_eq!(classify_conic(&h, DEFAULT_TOL), ConicClass::Hyperbola);
        let c = Conic::new(1.0, 0.0, 1.0, -2.0, 0.0, 0.0);
        assert_eq!(classify_conic(&c, DEFAULT_TOL), ConicClass::Circle);
        assert_eq!(classify_conic(&Conic::new(1.0, 0.0, 4.0, 0.0, 0.0, -1.0), DEFAULT_TOL), ConicClass::Ellipse);
        assert_eq!(classify_conic(&Conic::new(1.0, 0.0, 1.0, 0.0, 0.0, 1.0), DEFAULT_TOL), ConicClass::Empty);
        assert_eq!(classify_conic(&Conic::new(0.0, 1.0, 0.0, 0.0, 0.0, 0.0), DEFAULT_TOL), ConicClass::LinePair);
        assert_eq!(classify_conic(&Conic::new(0.0, 0.0, 1.0, 0.0, 0.0, -1.0), DEFAULT_TOL), ConicClass::LinePair);
        assert_eq!(classify_conic(&Conic::new(0.0, 0.0, 1.0, 0.0, 0.0, 1.0), DEFAULT_TOL), ConicClass::Empty);
        assert_eq!(classify_conic(&Conic::new(1.0, 0.0, 1.0, 0.0, 0.0, 0.0), DEFAULT_TOL), ConicClass::Point);
        assert_eq!(classify_conic(&Conic::new(1.0, 0.0, 0.0, 0.0, 0.0, 0.0), DEFAULT_TOL), ConicClass::SingleLine);
    }

    #[test]
    fn canonical_parabola_features_are_exact() {
        for f in [0.25, 1.0, 3.5] {
            let par = ParabolaStd::new(f).unwrap();
            let feats = conic_features(&par.conic()).unwrap();
            assert_eq!(feats.class, ConicClass::Parabola);
            assert!((feats.foci[0] - Vec2::new(-f, 0.0)).norm() < 1e-12 * f);
            assert!(feats.vertices[0].norm() < 1e-12 * f);
            assert!((feats.focal_distance.unwrap() - f).abs() < 1e-12 * f);
            assert!(feats.directrix.unwrap().approx_eq(&Line::vertical(f), 1e-12));
        }
    }

    #[test]
    fn hyperbola_and_circle_features() {
        let s2 = 2f64.sqrt();
        let k = s2 + 1.5;
        let h = Conic::new(k, 0.0, -0.5, -2.0 * k, 0.0, k - 2.0);
        let feats = conic_features(&h).unwrap();
        assert!((feats.center.unwrap() - Vec2::new(1.0, 0.0)).norm() < 1e-12);
        assert_relative_eq!(feats.vertices[0].x, 3.0 - 2.0 * s2, epsilon = 1e-12);
        assert_relative_eq!(feats.vertices[1].x, 2.0 * s2 - 1.0, epsilon = 1e-12);

        let c = conic_features(&Conic::new(1.0, 0.0, 1.0, -2.0, 0.0, 0.0)).unwrap();
        assert!((c.center.unwrap() - Vec2::new(1.0, 0.0)).norm() < 1e-14);
        assert_relative_eq!(c.radius.unwrap(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn degenerate_conic_has_no_features_or_polars() {
        let pair = Conic::new(1.0, 0.0, -1.0, 0.0, 0.0, 0.0);
        assert!(matches!(conic_features(&pair), Err(Error::NoFeatures(ConicClass::LinePair))));
        assert!(matches!(polar_line(&pair, &ProjPoint::finite(1.0, 2.0)), Err(Error::DegenerateConic)));
    }

    #[test]
    fn reciprocal_of_circle_about_center_is_concentric_circle() {
        let big = CircleSpec::new(Vec2::zeros(), 2.0).unwrap().conic();
        let small = CircleSpec::new(Vec2::zeros(), 1.0).unwrap().conic();
        let rec = big.reciprocal_of(&small).unwrap();
        let feats = conic_features(&rec).unwrap();
        assert_relative_eq!(feats.radius.unwrap(), 4.0, epsilon = 1e-12);
    }
}
