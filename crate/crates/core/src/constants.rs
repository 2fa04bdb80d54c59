//! Implicit locus curves and closure polynomials, stored term by term.
//!
//! Curve coefficients have the form `a·√s + b`. Every term is homogeneous of
//! total degree equal to the curve degree once the power of `f` is included,
//! so each curve is valid for any focal distance.

/// One monomial `(a·√s + b)·f^fp·x^xp·y^yp`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurdTerm {
    pub a: f64,
    pub b: f64,
    pub fp: i32,
    pub xp: i32,
    pub yp: i32,
}

const fn t(a: f64, b: f64, fp: i32, xp: i32, yp: i32) -> SurdTerm {
    SurdTerm { a, b, fp, xp, yp }
}

/// An implicit curve `Σ terms = 0` with coefficients in `Q(√surd)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImplicitCurve {
    pub name: &'static str,
    pub surd: f64,
    pub degree: i32,
    pub terms: &'static [SurdTerm],
}

/// Quartic carrying the polar incenter locus (N = 3).
pub const X1_POLAR_QUARTIC: ImplicitCurve = ImplicitCurve {
    name: "x1_polar_quartic",
    surd: 2.0,
    degree: 4,
    terms: &[
        t(-5.0, -6.0, 0, 2, 2),
        t(4.0, 2.0, 2, 2, 0),
        t(10.0, 12.0, 1, 1, 2),
        t(8.0, 4.0, 3, 1, 0),
        t(3.0, -16.0, 2, 0, 2),
        t(0.0, -14.0, 4, 0, 0),
    ],
};

/// Quartic carrying the polar Spieker center locus (N = 3).
pub const X10_POLAR_QUARTIC: ImplicitCurve = ImplicitCurve {
    name: "x10_polar_quartic",
    surd: 2.0,
    degree: 4,
    terms: &[
        t(44.0, 64.0, 0, 4, 0),
        t(-12.0, -20.0, 0, 2, 2),
        t(-148.0, -200.0, 1, 3, 0),
        t(16.0, 8.0, 1, 1, 2),
        t(105.0, 168.0, 2, 2, 0),
        t(-36.0, -32.0, 3, 1, 0),
        t(-1.0, -4.0, 2, 0, 2),
        t(0.0, 7.0, 4, 0, 0),
    ],
};

/// Degree-ten curve carrying the polar perimeter-centroid locus (N = 4).
pub const C1_POLAR_DECIC: ImplicitCurve = ImplicitCurve {
    name: "c1_polar_decic",
    surd: 5.0,
    degree: 10,
    terms: &[
        t(-1457008.0, -3257968.0, 1, 7, 2),
        t(122156.0, 273148.0, 2, 4, 4),
        t(465164.0, 1040132.0, 2, 6, 2),
        t(-96506.0, -215698.0, 6, 2, 2),
        t(-119256.0, -266664.0, 3, 3, 4),
        t(505052.0, 1129268.0, 5, 3, 2),
        t(8564.0, 19204.0, 7, 1, 2),
        t(-881712.0, -1971568.0, 0, 10, 0),
        t(43955.0, 98289.0, 4, 2, 4),
        t(24568.0, 54936.0, 1, 5, 4),
        t(-7250.0, -16210.0, 5, 1, 4),
        t(-1274930.0, -2850838.0, 4, 4, 2),
        t(1235568.0, 2762832.0, 3, 5, 2),
        t(4457696.0, 9967712.0, 1, 9, 0),
        t(-7787152.0, -17412608.0, 2, 8, 0),
        t(5470456.0, 12232344.0, 3, 7, 0),
        t(-755997.0, -1690535.0, 4, 6, 0),
        t(-812098.0, -1815898.0, 5, 5, 0),
        t(330322.0, 738968.0, 6, 4, 0),
        t(448.0, 1002.0, 6, 0, 4),
        t(-228.0, -672.0, 8, 0, 2),
        t(-7300.0, -16956.0, 7, 3, 0),
        t(2750.0, 7150.0, 9, 1, 0),
        t(-16145.0, -36103.0, 8, 2, 0),
        t(-84196.0, -188268.0, 0, 6, 4),
        t(544928.0, 1218496.0, 0, 8, 2),
        t(0.0, -726.0, 10, 0, 0),
    ],
};

/// Pentagon closure sextic in `x = r/f`, ascending powers:
/// `x⁶ + 12x⁵ − 28x⁴ + 32x³ + 112x² − 64x − 64`.
pub const PENTAGON_SEXTIC: [f64; 7] = [-64.0, -64.0, 112.0, 32.0, -28.0, 12.0, 1.0];

/// Bicentric `d = r` closure polynomials in `ρ = r_b/R_b`, ascending powers.
pub const BICENTRIC_TRIANGLE: [f64; 3] = [-1.0, 2.0, 1.0];
pub const BICENTRIC_QUAD: [f64; 5] = [-1.0, 0.0, 4.0, 0.0, 1.0];
/// Pentagon sextic with the constant term as required by the geometric root
/// (`ρ⁶ + 6ρ⁵ − 7ρ⁴ + 4ρ³ + 7ρ² − 2ρ − 1`).
pub const BICENTRIC_PENTAGON: [f64; 7] = [-1.0, -2.0, 7.0, 4.0, -7.0, 6.0, 1.0];
/// Variant with constant term `+1`; it has no root in (0, 1/2).
pub const BICENTRIC_PENTAGON_PLUS_ONE: [f64; 7] = [1.0, -2.0, 7.0, 4.0, -7.0, 6.0, 1.0];
/// `ρ⁸ + 24ρ⁶ − 22ρ⁴ + 16ρ² − 3`.
pub const BICENTRIC_HEXAGON: [f64; 9] = [-3.0, 0.0, 16.0, 0.0, -22.0, 0.0, 24.0, 0.0, 1.0];
