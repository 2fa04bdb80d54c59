//! Static SVG figures of traces over the parabola and its caustic.

use std::fmt::Write as _;

use poncelet_core::loci::{FitModel, FitResult};
use poncelet_core::{Conic, Vec2};

use crate::tracefile::{FamilyLine, TraceFile};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 0.08;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];
/// Cells per side of the marching-squares grid used for conic overlays.
const CONTOUR_CELLS: usize = 240;

/// A trace with the label shown in the legend.
pub struct Layer<'a> {
    pub label: String,
    pub trace: &'a TraceFile,
}

/// World-to-pixel map with equal scales on both axes.
#[derive(Debug, Clone, Copy)]
struct View {
    min: Vec2,
    max: Vec2,
    scale: f64,
    origin: Vec2,
}

impl View {
    fn fit(min: Vec2, max: Vec2) -> Self {
        let mut span = max - min;
        let floor = 1e-3 * (1.0 + min.amax().max(max.amax()));
        span.x = span.x.max(floor);
        span.y = span.y.max(floor);
        let mid = (min + max) / 2.0;
        let half = span * (0.5 + MARGIN);
        let scale = (WIDTH / (2.0 * half.x)).min(HEIGHT / (2.0 * half.y));
        let half = Vec2::new(WIDTH, HEIGHT) / (2.0 * scale);
        Self {
            min: mid - half,
            max: mid + half,
            scale,
            origin: mid,
        }
    }

    fn px(&self, p: Vec2) -> (f64, f64) {
        (
            WIDTH / 2.0 + (p.x - self.origin.x) * self.scale,
            HEIGHT / 2.0 - (p.y - self.origin.y) * self.scale,
        )
    }
}

fn bounds(layers: &[Layer], family: Option<FamilyLine>) -> Option<(Vec2, Vec2)> {
    let mut pts: Vec<Vec2> = layers.iter().flat_map(|l| l.trace.points()).collect();
    if let Some(fam) = family {
        let c = Vec2::new(-fam.f, 0.0);
        pts.push(c - Vec2::repeat(fam.r));
        pts.push(c + Vec2::repeat(fam.r));
    }
    let first = *pts.first()?;
    Some(pts.iter().fold((first, first), |(lo, hi), p| (lo.inf(p), hi.sup(p))))
}

fn polyline(out: &mut String, view: &View, pts: impl Iterator<Item = Vec2>, style: &str) {
    let coords: Vec<String> = pts
        .map(|p| {
            let (x, y) = view.px(p);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(out, r#"<polyline fill="none" {style} points="{}"/>"#, coords.join(" "));
}

fn parabola(out: &mut String, view: &View, f: f64) {
    let steps = 400;
    let pts = (0..=steps).map(|i| {
        let y = view.min.y + (view.max.y - view.min.y) * i as f64 / steps as f64;
        Vec2::new(-y * y / (4.0 * f), y)
    });
    polyline(out, view, pts, r##"stroke="#444" stroke-width="1.5""##);
}

fn circle(out: &mut String, view: &View, center: Vec2, radius: f64, style: &str) {
    let (x, y) = view.px(center);
    let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{:.3}" fill="none" {style}/>"#, radius * view.scale);
}

/// Part of the line `ax + by + c = 0` inside the view.
fn line(out: &mut String, view: &View, k: &[f64], style: &str) {
    let (a, b, c) = (k[0], k[1], k[2]);
    let pts: Vec<Vec2> = if b.abs() > a.abs() {
        [view.min.x, view.max.x].iter().map(|&x| Vec2::new(x, -(a * x + c) / b)).collect()
    } else {
        [view.min.y, view.max.y].iter().map(|&y| Vec2::new(-(b * y + c) / a, y)).collect()
    };
    polyline(out, view, pts.into_iter(), style);
}

/// Zero set of a conic over the view as one path of short segments.
fn conic(out: &mut String, view: &View, conic: &Conic, style: &str) {
    let nx = CONTOUR_CELLS;
    let ny = (CONTOUR_CELLS as f64 * HEIGHT / WIDTH).round() as usize;
    let at = |i: usize, j: usize| {
        Vec2::new(
            view.min.x + (view.max.x - view.min.x) * i as f64 / nx as f64,
            view.min.y + (view.max.y - view.min.y) * j as f64 / ny as f64,
        )
    };
    let val = |p: Vec2| conic.eval_xy(p.x, p.y);
    let mut d = String::new();
    for j in 0..ny {
        for i in 0..nx {
            let corners = [at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)];
            let v = corners.map(val);
            let mut hits = Vec::with_capacity(4);
            for e in 0..4 {
                let (p, q) = (corners[e], corners[(e + 1) % 4]);
                let (vp, vq) = (v[e], v[(e + 1) % 4]);
                if (vp < 0.0) != (vq < 0.0) {
                    hits.push(p + (q - p) * (vp / (vp - vq)));
                }
            }
            for pair in hits.chunks_exact(2) {
                let (x0, y0) = view.px(pair[0]);
                let (x1, y1) = view.px(pair[1]);
                let _ = write!(d, "M{x0:.3},{y0:.3}L{x1:.3},{y1:.3}");
            }
        }
    }
    let _ = writeln!(out, r#"<path fill="none" {style} d="{d}"/>"#);
}

fn overlay(out: &mut String, view: &View, fit: &FitResult) {
    let style = r##"stroke="#000" stroke-width="1" stroke-dasharray="6 4""##;
    let k = &fit.coefficients;
    match fit.model {
        FitModel::Line if k.len() == 3 => line(out, view, k, style),
        FitModel::Circle if k.len() == 3 => circle(out, view, Vec2::new(k[0], k[1]), k[2], style),
        FitModel::Conic if k.len() == 6 => conic(out, view, &Conic::new(k[0], k[1], k[2], k[3], k[4], k[5]), style),
        _ => {}
    }
}

/// Whether a trace collapses to a single point at plotting resolution.
fn stationary(trace: &TraceFile) -> Option<Vec2> {
    let pts = trace.points();
    let first = *pts.first()?;
    let spread = pts.iter().map(|p| (p - first).norm()).fold(0.0, f64::max);
    (spread <= 1e-9 * (1.0 + first.norm())).then_some(first)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Renders the layers. The parabola and caustic come from the first layer
/// carrying a family line, or from `fallback_f` (parabola only) when none does.
pub fn render(layers: &[Layer], fits: &[FitResult], fallback_f: f64) -> Option<String> {
    let family = layers.iter().find_map(|l| l.trace.family);
    let (min, max) = bounds(layers, family)?;
    let view = View::fit(min, max);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, "<!-- generator: poncelet {} -->", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    parabola(&mut s, &view, family.map_or(fallback_f, |fam| fam.f));
    if let Some(fam) = family {
        circle(&mut s, &view, Vec2::new(-fam.f, 0.0), fam.r, r##"stroke="#888" stroke-width="1""##);
    }
    for fit in fits {
        overlay(&mut s, &view, fit);
    }
    for (i, layer) in layers.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        if let Some(p) = stationary(layer.trace) {
            let (x, y) = view.px(p);
            let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="{color}"/>"#);
        } else {
            for seg in layer.trace.segments() {
                let style = format!(r#"stroke="{color}" stroke-width="1.5""#);
                polyline(&mut s, &view, seg.iter().map(|r| Vec2::new(r.x, r.y)), &style);
            }
        }
        let _ = writeln!(
            s,
            r#"<text x="12" y="{}" font-family="sans-serif" font-size="14" fill="{color}">{}</text>"#,
            22 + 18 * i,
            escape(&layer.label)
        );
    }
    s.push_str("</svg>\n");
    Some(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tracefile::Row;

    fn trace(rows: &[(f64, f64, f64)]) -> TraceFile {
        TraceFile {
            rows: rows.iter().map(|&(y1, x, y)| Row { y1, x, y }).collect(),
            family: Some(FamilyLine { n: 3, f: 1.0, r: 0.8 }),
            ..TraceFile::default()
        }
    }

    #[test]
    fn single_point_trace_is_a_dot() {
        let t = trace(&[(0.0, -1.0, 0.0), (1.0, -1.0, 0.0)]);
        let svg = render(&[Layer { label: "X26".into(), trace: &t }], &[], 1.0).unwrap();
        assert!(svg.contains(r#"r="4""#));
    }

    #[test]
    fn output_is_deterministic() {
        let t = trace(&[(0.0, 0.0, 0.0), (1.0, 1.0, 0.5), (2.0, 2.0, 2.0)]);
        let fit = poncelet_core::loci::fit_line(&t.points()).unwrap();
        let a = render(&[Layer { label: "a".into(), trace: &t }], std::slice::from_ref(&fit), 1.0).unwrap();
        let b = render(&[Layer { label: "a".into(), trace: &t }], &[fit], 1.0).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
    }

    #[test]
    fn empty_input_renders_nothing() {
        let t = TraceFile::default();
        assert!(render(&[Layer { label: "e".into(), trace: &t }], &[], 1.0).is_none());
    }
}
