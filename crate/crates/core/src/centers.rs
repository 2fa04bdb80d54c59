//! Triangle centers from barycentric weights, and vertex/perimeter/area
//! centroids of polygons.
//!
//! Weights are evaluated in a local frame (centroid at the origin, longest
//! side of unit length). Angle-dependent quantities use the dot products
//! `S_A = (B − A)·(C − A)` etc. rather than differences of squared sides.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::geom::{ProjPoint, Vec2};
use crate::{Error, Result};

/// Triangles whose condition estimate exceeds this are flagged.
pub const CONDITION_FLAG: f64 = 1e6;

/// Supported Kimberling centers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CenterId {
    X1,
    X2,
    X3,
    X4,
    X5,
    X6,
    X10,
    X20,
    X26,
    X68,
    X99,
    X110,
    X161,
}

impl CenterId {
    pub const ALL: [CenterId; 13] = [
        CenterId::X1,
        CenterId::X2,
        CenterId::X3,
        CenterId::X4,
        CenterId::X5,
        CenterId::X6,
        CenterId::X10,
        CenterId::X20,
        CenterId::X26,
        CenterId::X68,
        CenterId::X99,
        CenterId::X110,
        CenterId::X161,
    ];

    pub fn k(self) -> u32 {
        match self {
            CenterId::X1 => 1,
            CenterId::X2 => 2,
            CenterId::X3 => 3,
            CenterId::X4 => 4,
            CenterId::X5 => 5,
            CenterId::X6 => 6,
            CenterId::X10 => 10,
            CenterId::X20 => 20,
            CenterId::X26 => 26,
            CenterId::X68 => 68,
            CenterId::X99 => 99,
            CenterId::X110 => 110,
            CenterId::X161 => 161,
        }
    }

    pub fn from_k(k: u32) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.k() == k)
            .ok_or_else(|| Error::Unsupported(format!("triangle center X{k}")))
    }
}

impl fmt::Display for CenterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}", self.k())
    }
}

impl FromStr for CenterId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s.trim().trim_start_matches(['X', 'x']);
        let k = digits
            .parse::<u32>()
            .map_err(|_| Error::Unsupported(format!("triangle center {s:?}")))?;
        Self::from_k(k)
    }
}

/// Polygon centroids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CentroidKind {
    /// Mean of the vertices.
    C0,
    /// Centroid of the boundary, edges weighted by length.
    C1,
    /// Centroid of the enclosed region.
    C2,
}

impl fmt::Display for CentroidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CentroidKind::C0 => "C0",
            CentroidKind::C1 => "C1",
            CentroidKind::C2 => "C2",
        };
        f.write_str(s)
    }
}

impl FromStr for CentroidKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "C0" | "c0" => Ok(CentroidKind::C0),
            "C1" | "c1" => Ok(CentroidKind::C1),
            "C2" | "c2" => Ok(CentroidKind::C2),
            other => Err(Error::Unsupported(format!("centroid {other:?}"))),
        }
    }
}

fn finite_vertices(vertices: &[ProjPoint]) -> Result<Vec<Vec2>> {
    vertices
        .iter()
        .map(|p| p.to_cartesian().ok_or(Error::UnboundedInput))
        .collect()
}

/// Triangle in the local frame with its side data.
struct Local {
    origin: Vec2,
    scale: f64,
    v: [Vec2; 3],
    /// Squared side lengths opposite each vertex.
    sq: [f64; 3],
    /// `S_A, S_B, S_C`.
    s: [f64; 3],
    /// Twice the unsigned area.
    area2: f64,
}

impl Local {
    fn new(a: Vec2, b: Vec2, c: Vec2) -> Result<Self> {
        let origin = (a + b + c) / 3.0;
        let scale = (b - c).norm().max((c - a).norm()).max((a - b).norm());
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::DegenerateTriangle);
        }
        let v = [(a - origin) / scale, (b - origin) / scale, (c - origin) / scale];
        let sq = [
            (v[1] - v[2]).norm_squared(),
            (v[2] - v[0]).norm_squared(),
            (v[0] - v[1]).norm_squared(),
        ];
        let s = [
            (v[1] - v[0]).dot(&(v[2] - v[0])),
            (v[0] - v[1]).dot(&(v[2] - v[1])),
            (v[0] - v[2]).dot(&(v[1] - v[2])),
        ];
        let area2 = (v[1] - v[0]).perp(&(v[2] - v[0])).abs();
        if area2 < 1e-14 {
            return Err(Error::DegenerateTriangle);
        }
        Ok(Self {
            origin,
            scale,
            v,
            sq,
            s,
            area2,
        })
    }

    fn side(&self, i: usize) -> f64 {
        self.sq[i].sqrt()
    }

    fn cos(&self, i: usize) -> f64 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        self.s[i] / (self.side(j) * self.side(k))
    }

    fn cos2(&self, i: usize) -> f64 {
        let c = self.cos(i);
        2.0 * c * c - 1.0
    }

    /// Barycentric weight of vertex `i`.
    fn weight(&self, id: CenterId, i: usize) -> f64 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let (a, b, c) = (self.side(i), self.side(j), self.side(k));
        let (a2, b2, c2) = (self.sq[i], self.sq[j], self.sq[k]);
        match id {
            CenterId::X1 => a,
            CenterId::X2 => 1.0,
            CenterId::X3 => a2 * self.s[i],
            CenterId::X4 => self.s[j] * self.s[k],
            CenterId::X5 => self.area2 * self.area2 + self.s[j] * self.s[k],
            CenterId::X6 => a2,
            CenterId::X10 => b + c,
            CenterId::X20 => 3.0 * a2 * a2 - 2.0 * a2 * (b2 + c2) - (b2 - c2) * (b2 - c2),
            CenterId::X26 => a2 * (b2 * self.cos2(j) + c2 * self.cos2(k) - a2 * self.cos2(i)),
            CenterId::X68 => a * self.cos(i) * self.cos2(j) * self.cos2(k),
            CenterId::X99 => (c2 - a2) * (a2 - b2),
            CenterId::X110 => a2 * (c2 - a2) * (a2 - b2),
            CenterId::X161 => {
                let (ca, cb, cc) = (self.cos(i), self.cos(j), self.cos(k));
                a2 * (-a * self.cos2(i) * cb * cc + b * self.cos2(j) * ca * cc + c * self.cos2(k) * ca * cb)
            }
        }
    }

    fn to_global(&self, p: Vec2) -> Vec2 {
        self.origin + p * self.scale
    }
}

/// `maxside² / (2·area)`; grows without bound as the triangle flattens.
pub fn triangle_condition(vertices: &[ProjPoint]) -> Result<f64> {
    let v = triangle_vertices(vertices)?;
    let l = Local::new(v[0], v[1], v[2])?;
    Ok(1.0 / l.area2)
}

fn triangle_vertices(vertices: &[ProjPoint]) -> Result<[Vec2; 3]> {
    if vertices.len() != 3 {
        return Err(Error::InvalidInput(format!("a triangle needs 3 vertices, got {}", vertices.len())));
    }
    let v = finite_vertices(vertices)?;
    Ok([v[0], v[1], v[2]])
}

/// Cartesian triangle center from its barycentric weights.
pub fn triangle_center_xy(a: Vec2, b: Vec2, c: Vec2, id: CenterId) -> Result<Vec2> {
    let l = Local::new(a, b, c)?;
    let w = [l.weight(id, 0), l.weight(id, 1), l.weight(id, 2)];
    let total: f64 = w.iter().sum();
    let mag: f64 = w.iter().map(|x| x.abs()).sum();
    // Local side lengths are at most 1, so weights of a well-defined center are not all tiny.
    if !(total.abs() > 1e-12 * mag) || mag < 1e-10 || !total.is_finite() {
        return Err(Error::UndefinedCenter(id.k()));
    }
    let p = (l.v[0] * w[0] + l.v[1] * w[1] + l.v[2] * w[2]) / total;
    Ok(l.to_global(p))
}

pub fn triangle_center(vertices: &[ProjPoint], id: CenterId) -> Result<ProjPoint> {
    let [a, b, c] = triangle_vertices(vertices)?;
    Ok(ProjPoint::from_vec2(triangle_center_xy(a, b, c, id)?))
}

/// Polygon centroid of the given kind.
pub fn centroid(polygon: &[ProjPoint], kind: CentroidKind) -> Result<ProjPoint> {
    if polygon.len() < 3 {
        return Err(Error::InvalidInput(format!("a polygon needs at least 3 vertices, got {}", polygon.len())));
    }
    let pts = finite_vertices(polygon)?;
    Ok(ProjPoint::from_vec2(centroid_xy(&pts, kind)?))
}

pub fn centroid_xy(pts: &[Vec2], kind: CentroidKind) -> Result<Vec2> {
    let n = pts.len();
    let origin = pts.iter().sum::<Vec2>() / n as f64;
    let local: Vec<Vec2> = pts.iter().map(|p| p - origin).collect();
    let edges = (0..n).map(|i| (local[i], local[(i + 1) % n]));
    let c = match kind {
        CentroidKind::C0 => Vec2::zeros(),
        CentroidKind::C1 => {
            let (mut len, mut acc) = (0.0, Vec2::zeros());
            for (p, q) in edges {
                let l = (q - p).norm();
                len += l;
                acc += (p + q) * (l / 2.0);
            }
            if len == 0.0 {
                return Err(Error::DegeneratePolygon);
            }
            acc / len
        }
        CentroidKind::C2 => {
            let (mut area2, mut acc) = (0.0, Vec2::zeros());
            let scale: f64 = local.iter().map(|p| p.norm_squared()).fold(0.0, f64::max);
            for (p, q) in edges {
                let cr = p.perp(&q);
                area2 += cr;
                acc += (p + q) * cr;
            }
            if area2.abs() <= 1e-14 * scale {
                return Err(Error::DegeneratePolygon);
            }
            acc / (3.0 * area2)
        }
    };
    Ok(origin + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn pts(v: &[(f64, f64)]) -> Vec<ProjPoint> {
        v.iter().map(|(x, y)| ProjPoint::finite(*x, *y)).collect()
    }

    fn xy(p: ProjPoint) -> Vec2 {
        p.to_cartesian().unwrap()
    }

    fn meet(p1: Vec2, p2: Vec2, q1: Vec2, q2: Vec2) -> Vec2 {
        let l = crate::geom::Line::through(&ProjPoint::from_vec2(p1), &ProjPoint::from_vec2(p2));
        let m = crate::geom::Line::through(&ProjPoint::from_vec2(q1), &ProjPoint::from_vec2(q2));
        l.meet(&m).to_cartesian().unwrap()
    }

    fn dist_to_line(p: Vec2, a: Vec2, b: Vec2) -> f64 {
        (b - a).perp(&(p - a)).abs() / (b - a).norm()
    }

    fn foot(p: Vec2, a: Vec2, b: Vec2) -> Vec2 {
        let d = (b - a).normalize();
        a + d * (p - a).dot(&d)
    }

    fn reflect(p: Vec2, a: Vec2, b: Vec2) -> Vec2 {
        2.0 * foot(p, a, b) - p
    }

    fn circumcenter(a: Vec2, b: Vec2, c: Vec2) -> Vec2 {
        let m1 = (a + b) / 2.0;
        let m2 = (b + c) / 2.0;
        let n1 = m1 + Vec2::new(-(b - a).y, (b - a).x);
        let n2 = m2 + Vec2::new(-(c - b).y, (c - b).x);
        meet(m1, n1, m2, n2)
    }

    fn orthocenter(a: Vec2, b: Vec2, c: Vec2) -> Vec2 {
        meet(a, foot(a, b, c), b, foot(b, c, a))
    }

    fn incenter(a: Vec2, b: Vec2, c: Vec2) -> Vec2 {
        let bis = |p: Vec2, q: Vec2, r: Vec2| p + (q - p).normalize() + (r - p).normalize();
        meet(a, bis(a, b, c), b, bis(b, c, a))
    }

    /// Barycentric coordinates of `p`, normalized to sum 1.
    fn bary(p: Vec2, a: Vec2, b: Vec2, c: Vec2) -> [f64; 3] {
        let t = (b - a).perp(&(c - a));
        [(b - p).perp(&(c - p)) / t, (c - p).perp(&(a - p)) / t, (a - p).perp(&(b - p)) / t]
    }

    fn from_bary(w: [f64; 3], a: Vec2, b: Vec2, c: Vec2) -> Vec2 {
        (a * w[0] + b * w[1] + c * w[2]) / (w[0] + w[1] + w[2])
    }

    const REF: [(f64, f64); 3] = [(0.3, 0.1), (4.1, -0.4), (1.2, 2.9)];

    fn reference() -> (Vec2, Vec2, Vec2) {
        (Vec2::new(REF[0].0, REF[0].1), Vec2::new(REF[1].0, REF[1].1), Vec2::new(REF[2].0, REF[2].1))
    }

    fn center(id: CenterId) -> Vec2 {
        let (a, b, c) = reference();
        triangle_center_xy(a, b, c, id).unwrap()
    }

    #[test]
    fn equilateral_centers_coincide_with_centroid() {
        let h = 3f64.sqrt() / 2.0;
        let tri = pts(&[(0.0, 0.0), (1.0, 0.0), (0.5, h)]);
        let g = Vec2::new(0.5, h / 3.0);
        for id in CenterId::ALL {
            match triangle_center(&tri, id) {
                Ok(p) => assert!((xy(p) - g).norm() < 1e-12, "{id}"),
                Err(Error::UndefinedCenter(k)) => assert!(k == 99 || k == 110, "{id}"),
                Err(e) => panic!("{id}: {e}"),
            }
        }
    }

    #[test]
    fn orthocenter_of_right_triangle_is_right_angle_vertex() {
        let p = triangle_center(&pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]), CenterId::X4).unwrap();
        assert!(xy(p).norm() < 1e-15);
    }

    #[test]
    fn incenter_of_3_4_5_triangle() {
        let p = triangle_center(&pts(&[(0.0, 0.0), (4.0, 0.0), (0.0, 3.0)]), CenterId::X1).unwrap();
        assert!((xy(p) - Vec2::new(1.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn classical_centers_match_constructions() {
        let (a, b, c) = reference();
        assert!((center(CenterId::X1) - incenter(a, b, c)).norm() < 1e-12);
        assert!((center(CenterId::X2) - (a + b + c) / 3.0).norm() < 1e-14);
        let o = circumcenter(a, b, c);
        let h = orthocenter(a, b, c);
        assert!((center(CenterId::X3) - o).norm() < 1e-12);
        assert!((center(CenterId::X4) - h).norm() < 1e-12);
        assert!((center(CenterId::X5) - (o + h) / 2.0).norm() < 1e-12);
        assert!((center(CenterId::X20) - (2.0 * o - h)).norm() < 1e-12);
        let x10 = incenter((b + c) / 2.0, (c + a) / 2.0, (a + b) / 2.0);
        assert!((center(CenterId::X10) - x10).norm() < 1e-12);
    }

    #[test]
    fn symmedian_point_has_distances_proportional_to_sides() {
        let (a, b, c) = reference();
        let k = center(CenterId::X6);
        let ratios = [
            dist_to_line(k, b, c) / (b - c).norm(),
            dist_to_line(k, c, a) / (c - a).norm(),
            dist_to_line(k, a, b) / (a - b).norm(),
        ];
        assert_relative_eq!(ratios[0], ratios[1], max_relative = 1e-12);
        assert_relative_eq!(ratios[1], ratios[2], max_relative = 1e-12);
    }

    #[test]
    fn x26_is_circumcenter_of_tangential_triangle() {
        let (a, b, c) = reference();
        let o = circumcenter(a, b, c);
        let r2 = (a - o).norm_squared();
        let pole = |p: Vec2, q: Vec2| {
            let m = (p + q) / 2.0 - o;
            o + m * (r2 / m.norm_squared())
        };
        let t = circumcenter(pole(b, c), pole(c, a), pole(a, b));
        assert!((center(CenterId::X26) - t).norm() < 1e-10);
    }

    #[test]
    fn x68_is_perspector_of_reflected_orthic_triangle() {
        let (a, b, c) = reference();
        let x5 = center(CenterId::X5);
        let ha = 2.0 * x5 - foot(a, b, c);
        let hb = 2.0 * x5 - foot(b, c, a);
        let p = meet(a, ha, b, hb);
        let hc = 2.0 * x5 - foot(c, a, b);
        assert!(dist_to_line(p, c, hc) < 1e-10);
        assert!((center(CenterId::X68) - p).norm() < 1e-10);
    }

    #[test]
    fn x99_lies_on_circumcircle_and_steiner_ellipse() {
        let (a, b, c) = reference();
        let p = center(CenterId::X99);
        let o = circumcenter(a, b, c);
        assert_relative_eq!((p - o).norm(), (a - o).norm(), max_relative = 1e-12);
        let [u, v, w] = bary(p, a, b, c);
        assert!((u * v + v * w + w * u).abs() < 1e-12);
    }

    #[test]
    fn x110_reflections_lie_on_euler_line() {
        let (a, b, c) = reference();
        let p = center(CenterId::X110);
        let o = circumcenter(a, b, c);
        let h = orthocenter(a, b, c);
        assert_relative_eq!((p - o).norm(), (a - o).norm(), max_relative = 1e-12);
        for (q, r) in [(b, c), (c, a), (a, b)] {
            assert!(dist_to_line(reflect(p, q, r), o, h) < 1e-10);
        }
    }

    #[test]
    fn x161_is_ceva_conjugate_of_x68_and_x6() {
        let (a, b, c) = reference();
        let p = center(CenterId::X68);
        // Cevian triangle of X68.
        let pa = meet(a, p, b, c);
        let pb = meet(b, p, c, a);
        let pc = meet(c, p, a, b);
        // Anticevian triangle of X6, from its barycentrics a² : b² : c².
        let (a2, b2, c2) = ((b - c).norm_squared(), (c - a).norm_squared(), (a - b).norm_squared());
        let qa = from_bary([-a2, b2, c2], a, b, c);
        let qb = from_bary([a2, -b2, c2], a, b, c);
        let qc = from_bary([a2, b2, -c2], a, b, c);
        let x = meet(pa, qa, pb, qb);
        assert!(dist_to_line(x, pc, qc) < 1e-9);
        assert!((center(CenterId::X161) - x).norm() < 1e-9);
    }

    #[test]
    fn degenerate_and_unbounded_inputs() {
        assert!(matches!(
            triangle_center(&pts(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]), CenterId::X3),
            Err(Error::DegenerateTriangle)
        ));
        let mut tri = pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        tri[2] = ProjPoint::at_infinity(1.0, 0.0);
        assert!(matches!(triangle_center(&tri, CenterId::X2), Err(Error::UnboundedInput)));
    }

    #[test]
    fn condition_grows_for_flat_triangles() {
        let good = triangle_condition(&pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])).unwrap();
        let flat = triangle_condition(&pts(&[(0.0, 0.0), (1.0, 0.0), (0.5, 1e-7)])).unwrap();
        assert!(good < 10.0);
        assert!(flat > CONDITION_FLAG);
    }

    #[test]
    fn unit_square_centroids() {
        let sq = pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        for kind in [CentroidKind::C0, CentroidKind::C1, CentroidKind::C2] {
            assert!((xy(centroid(&sq, kind).unwrap()) - Vec2::new(0.5, 0.5)).norm() < 1e-15);
        }
    }

    #[test]
    fn right_triangle_centroids() {
        let tri = pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        let third = Vec2::new(1.0 / 3.0, 1.0 / 3.0);
        assert!((xy(centroid(&tri, CentroidKind::C0).unwrap()) - third).norm() < 1e-15);
        assert!((xy(centroid(&tri, CentroidKind::C2).unwrap()) - third).norm() < 1e-15);
        let spieker = xy(triangle_center(&tri, CenterId::X10).unwrap());
        assert!((xy(centroid(&tri, CentroidKind::C1).unwrap()) - spieker).norm() < 1e-15);
    }

    #[test]
    fn zero_area_polygon_has_no_area_centroid() {
        let poly = pts(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
        assert!(matches!(centroid(&poly, CentroidKind::C2), Err(Error::DegeneratePolygon)));
    }

    #[test]
    fn parse_ids() {
        assert_eq!("X26".parse::<CenterId>().unwrap(), CenterId::X26);
        assert_eq!("x161".parse::<CenterId>().unwrap(), CenterId::X161);
        assert!("X7".parse::<CenterId>().is_err());
        assert_eq!("C1".parse::<CentroidKind>().unwrap(), CentroidKind::C1);
    }

    fn triangle() -> impl Strategy<Value = [Vec2; 3]> {
        prop::array::uniform3((-5.0..5.0f64, -5.0..5.0f64))
            .prop_map(|v| v.map(|(x, y)| Vec2::new(x, y)))
            .prop_filter("well conditioned", |v| {
                let area2 = (v[1] - v[0]).perp(&(v[2] - v[0])).abs();
                let sq = |p: Vec2, q: Vec2| (p - q).norm_squared();
                let (a2, b2, c2) = (sq(v[1], v[2]), sq(v[2], v[0]), sq(v[0], v[1]));
                let m = a2.max(b2).max(c2);
                area2 > 0.05 * m && (a2 - b2).abs() > 0.05 * m && (b2 - c2).abs() > 0.05 * m && (c2 - a2).abs() > 0.05 * m
            })
    }

    proptest! {
        #[test]
        fn centers_commute_with_similarities(v in triangle(), angle in 0.0..6.3f64, s in 0.2..5.0f64, tx in -3.0..3.0f64, ty in -3.0..3.0f64) {
            let rot = nalgebra::Rotation2::new(angle);
            let map = |p: Vec2| rot * p * s + Vec2::new(tx, ty);
            for id in CenterId::ALL {
                let (Ok(p), Ok(q)) = (
                    triangle_center_xy(v[0], v[1], v[2], id),
                    triangle_center_xy(map(v[0]), map(v[1]), map(v[2]), id),
                ) else { continue };
                let scale = 1.0 + map(p).norm();
                prop_assert!((map(p) - q).norm() < 1e-9 * scale, "{}", id);
            }
            for kind in [CentroidKind::C0, CentroidKind::C1, CentroidKind::C2] {
                let p = centroid_xy(&v, kind).unwrap();
                let q = centroid_xy(&v.map(map), kind).unwrap();
                prop_assert!((map(p) - q).norm() < 1e-10 * (1.0 + q.norm()));
            }
        }

        #[test]
        fn triangle_centroids_are_x2_and_x10(v in triangle()) {
            let c0 = centroid_xy(&v, CentroidKind::C0).unwrap();
            let c1 = centroid_xy(&v, CentroidKind::C1).unwrap();
            prop_assert!((c0 - triangle_center_xy(v[0], v[1], v[2], CenterId::X2).unwrap()).norm() < 1e-12);
            prop_assert!((c1 - triangle_center_xy(v[0], v[1], v[2], CenterId::X10).unwrap()).norm() < 1e-12);
        }
    }
}
