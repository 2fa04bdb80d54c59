use approx::assert_relative_eq;
use poncelet_core::centers::{CenterId, CentroidKind};
use poncelet_core::constants::{C1_POLAR_DECIC, X10_POLAR_QUARTIC, X1_POLAR_QUARTIC};
use poncelet_core::engine::FamilyConfig;
use poncelet_core::loci::*;
use poncelet_core::verify::collinearity_check;
use poncelet_core::{ConicClass, Vec2};

fn s2() -> f64 {
    2f64.sqrt()
}

fn trace(n: usize, f: f64, target: &str, polar: bool) -> LocusTrace {
    let cfg = FamilyConfig::closing(n, f).unwrap();
    trace_locus(&cfg, target.parse().unwrap(), polar, &GridSpec::default()).unwrap()
}

#[test]
fn samples_sorted_and_outside_gaps() {
    let t = trace(3, 1.0, "X2", false);
    assert!(t.samples.windows(2).all(|w| w[0].y1 < w[1].y1));
    for s in &t.samples {
        assert!(t.gaps.iter().all(|g| !g.contains(s.y1)));
    }
}

#[test]
fn polar_x26_sits_at_focus() {
    for f in [1.0, 2.5] {
        let t = trace(3, f, "X26", true);
        assert_eq!(t.samples.len(), 400);
        for p in t.points() {
            assert!((p - Vec2::new(-f, 0.0)).norm() < 1e-9 * f);
        }
    }
}

#[test]
fn orthocenter_line_fit() {
    for f in [1.0, 0.4] {
        let fit = fit_line(&trace(3, f, "X4", false).points()).unwrap();
        assert!(fit.vertical);
        assert!(fit.rms_residual < 1e-9 * f);
        assert_relative_eq!(-fit.coefficients[2] / fit.coefficients[0], (5.0 - 2.0 * s2()) * f, epsilon = 1e-9 * f);
        assert_eq!(fit.model, FitModel::Line);
    }
}

#[test]
fn quadrilateral_centroids_and_diagonal_meet() {
    let cfg = FamilyConfig::closing(4, 1.0).unwrap();
    let grid = GridSpec::new(60, -5.0, 5.0).unwrap();
    let c0 = trace_locus(&cfg, Target::Centroid(CentroidKind::C0), false, &grid).unwrap();
    let c2 = trace_locus(&cfg, Target::Centroid(CentroidKind::C2), false, &grid).unwrap();
    let w = trace_locus(&cfg, Target::DiagonalMeet, false, &grid).unwrap();
    assert_eq!(c0.samples.len(), w.samples.len());
    for ((a, b), c) in c0.samples.iter().zip(&c2.samples).zip(&w.samples) {
        assert_eq!(a.y1, c.y1);
        assert!(collinearity_check(&a.point, &b.point, &c.point).unwrap() < 1e-10);
    }
}

#[test]
fn polar_c0_line_n4() {
    let fit = fit_line(&trace(4, 1.0, "C0", true).points()).unwrap();
    assert!(fit.vertical);
    assert_relative_eq!(-fit.coefficients[2] / fit.coefficients[0], (3.0 - 5f64.sqrt()) / 2.0, epsilon = 1e-9);
}

#[test]
fn steiner_point_circle() {
    let fit = fit_circle(&trace(3, 1.0, "X99", true).points()).unwrap();
    assert_eq!(fit.model, FitModel::Circle);
    let [cx, cy, r] = [fit.coefficients[0], fit.coefficients[1], fit.coefficients[2]];
    assert_relative_eq!(cx, 6.0 * s2() - 7.0, epsilon = 1e-8);
    assert!(cy.abs() < 1e-8);
    assert_relative_eq!(r, 2.0 * (17.0 - 12.0 * s2()).sqrt(), epsilon = 1e-8);
    assert!(fit.rms_residual < 1e-8);
    assert!((cx + r - (2.0 * s2() - 1.0)).abs() < 1e-8);
}

#[test]
fn perimeter_centroid_parabola_n4() {
    let fit = fit_conic(&trace(4, 1.0, "C1", false).points()).unwrap();
    let feats = fit.features.unwrap();
    assert_eq!(feats.class, ConicClass::Parabola);
    assert_relative_eq!(feats.focal_distance.unwrap(), 0.5, epsilon = 1e-9);
    assert_relative_eq!(feats.vertices[0].x, (5f64.sqrt() - 5.0) / 2.0, epsilon = 1e-9);
}

#[test]
fn spieker_parabola_focus_on_caustic() {
    let cfg = FamilyConfig::closing(3, 1.0).unwrap();
    let fit = fit_conic(&trace(3, 1.0, "X10", false).points()).unwrap();
    let focus = fit.features.unwrap().foci[0];
    assert_relative_eq!(focus.x, -cfg.f - cfg.r, epsilon = 1e-9);
}

#[test]
fn implicit_curves_and_honesty() {
    let x1 = trace(3, 1.0, "X1", true);
    assert!(implicit_residual(&x1.points(), &X1_POLAR_QUARTIC, 1.0).max < 1e-6);
    assert!(fit_line(&x1.points()).unwrap().rms_residual > 1e-7);
    // The quartic belongs to the incenter, not to the Spieker center.
    assert!(implicit_residual(&x1.points(), &X10_POLAR_QUARTIC, 1.0).max > 1e-4);
    let c1 = trace(4, 1.0, "C1", true);
    assert!(implicit_residual(&c1.points(), &C1_POLAR_DECIC, 1.0).max < 1e-5);
}

#[test]
fn implicit_curves_scale_with_f() {
    let t = trace(3, 3.0, "X10", true);
    assert!(implicit_residual(&t.points(), &X10_POLAR_QUARTIC, 3.0).max < 1e-6 * 3.0);
}

#[test]
fn strips() {
    let x1 = trace(3, 1.0, "X1", true);
    let w = refined_strip(&x1).unwrap().width;
    assert!((w * 850.0 - 1.0).abs() < 0.1);
    let x10 = refined_strip(&trace(3, 1.0, "X10", true)).unwrap();
    assert_relative_eq!(x10.bounds.x_min, s2() - 1.0 + (10.0 - 7.0 * s2()).sqrt() / 2.0, epsilon = 1e-6);
    assert_relative_eq!(x10.bounds.x_max, s2() - 2f64.powf(-0.25), epsilon = 1e-6);
    let raw = strip_width(&trace(3, 1.0, "X10", true).points());
    assert!(raw.width <= x10.width);
}

#[test]
fn polar_x110_is_not_a_triangle_center_of_equilateral() {
    // Undefined centers drop samples instead of failing the trace.
    let t = trace(3, 1.0, "X110", true);
    assert!(!t.samples.is_empty());
    assert!(t.samples.len() <= 400);
    assert_eq!(t.target, Target::Center(CenterId::X110));
}
