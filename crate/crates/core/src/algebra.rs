//! The [`Quad`] value type and the four multiplication tables.
//!
//! A quad is `u = x + αy + βz + γt` where the units obey one of four
//! commutative tables:
//!
//! | kind       | α²  | β²  | γ²  | αβ  | αγ  | βγ  |
//! |------------|-----|-----|-----|-----|-----|-----|
//! | circular   | −1  | −1  | 1   | −γ  | β   | α   |
//! | hyperbolic | 1   | 1   | 1   | γ   | β   | α   |
//! | planar     | β   | −1  | −β  | γ   | −1  | −α  |
//! | polar      | β   | 1   | β   | γ   | 1   | α   |

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{QuadError, Result};

/// Default singularity tolerance, relative to the modulus.
pub const DEFAULT_TOL: f64 = 1e-12;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Selects one of the four multiplication tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Circular,
    Hyperbolic,
    Planar,
    Polar,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::Circular, Kind::Hyperbolic, Kind::Planar, Kind::Polar];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Circular => "circular",
            Kind::Hyperbolic => "hyperbolic",
            Kind::Planar => "planar",
            Kind::Polar => "polar",
        }
    }

    /// Sharp bound `k` in `|uv| ≤ k |u||v|`.
    pub fn product_bound(self) -> f64 {
        match self {
            Kind::Circular | Kind::Planar => std::f64::consts::SQRT_2,
            Kind::Hyperbolic | Kind::Polar => 2.0,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = QuadError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "circular" => Ok(Kind::Circular),
            "hyperbolic" => Ok(Kind::Hyperbolic),
            "planar" => Ok(Kind::Planar),
            "polar" => Ok(Kind::Polar),
            other => Err(QuadError::InvalidInput(format!("unknown kind '{other}'"))),
        }
    }
}

/// A four-component number of a given [`Kind`].
///
/// Components are always finite when built through the public constructors.
/// Equality is componentwise and requires identical kinds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QuadRepr", into = "QuadRepr")]
pub struct Quad {
    kind: Kind,
    c: [f64; 4],
}

#[derive(Serialize, Deserialize)]
struct QuadRepr {
    kind: Kind,
    x: f64,
    y: f64,
    z: f64,
    t: f64,
}

impl TryFrom<QuadRepr> for Quad {
    type Error = QuadError;

    fn try_from(r: QuadRepr) -> Result<Self> {
        Quad::new(r.kind, r.x, r.y, r.z, r.t)
    }
}

impl From<Quad> for QuadRepr {
    fn from(q: Quad) -> Self {
        QuadRepr {
            kind: q.kind,
            x: q.c[0],
            y: q.c[1],
            z: q.c[2],
            t: q.c[3],
        }
    }
}

impl Quad {
    pub fn new(kind: Kind, x: f64, y: f64, z: f64, t: f64) -> Result<Self> {
        Self::from_array(kind, [x, y, z, t])
    }

    pub fn from_array(kind: Kind, c: [f64; 4]) -> Result<Self> {
        if c.iter().all(|v| v.is_finite()) {
            Ok(Quad { kind, c })
        } else {
            Err(QuadError::NonFinite)
        }
    }

    /// Unchecked constructor for results of internal arithmetic.
    pub(crate) const fn raw(kind: Kind, c: [f64; 4]) -> Self {
        Quad { kind, c }
    }

    pub const fn zero(kind: Kind) -> Self {
        Quad::raw(kind, [0.0; 4])
    }

    pub const fn one(kind: Kind) -> Self {
        Quad::raw(kind, [1.0, 0.0, 0.0, 0.0])
    }

    /// The real number `r` embedded in the algebra.
    ///
    /// # Panics
    /// If `r` is not finite.
    pub fn real(kind: Kind, r: f64) -> Self {
        assert!(r.is_finite(), "real part must be finite");
        Quad::raw(kind, [r, 0.0, 0.0, 0.0])
    }

    /// Basis element `1, α, β, γ` for `index = 0..4`.
    ///
    /// # Panics
    /// If `index > 3`.
    pub fn unit(kind: Kind, index: usize) -> Self {
        let mut c = [0.0; 4];
        c[index] = 1.0;
        Quad::raw(kind, c)
    }

    pub fn alpha(kind: Kind) -> Self {
        Quad::unit(kind, 1)
    }

    pub fn beta(kind: Kind) -> Self {
        Quad::unit(kind, 2)
    }

    pub fn gamma(kind: Kind) -> Self {
        Quad::unit(kind, 3)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn x(&self) -> f64 {
        self.c[0]
    }

    pub fn y(&self) -> f64 {
        self.c[1]
    }

    pub fn z(&self) -> f64 {
        self.c[2]
    }

    pub fn t(&self) -> f64 {
        self.c[3]
    }

    pub fn to_array(&self) -> [f64; 4] {
        self.c
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|v| v.is_finite())
    }

    /// Same components reinterpreted under another kind.
    pub fn with_kind(&self, kind: Kind) -> Self {
        Quad::raw(kind, self.c)
    }

    pub fn scale(&self, s: f64) -> Self {
        Quad::raw(self.kind, self.c.map(|v| v * s))
    }

    /// Euclidean length of the difference, ignoring kinds.
    pub fn distance(&self, other: &Quad) -> f64 {
        (0..4)
            .map(|i| (self.c[i] - other.c[i]).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Largest componentwise absolute difference, ignoring kinds.
    pub fn max_abs_diff(&self, other: &Quad) -> f64 {
        (0..4)
            .map(|i| (self.c[i] - other.c[i]).abs())
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z, t] = self.c;
        write!(f, "{x} + {y}α + {z}β + {t}γ ({})", self.kind)
    }
}

fn same_kind(u: &Quad, v: &Quad) -> Result<Kind> {
    if u.kind == v.kind {
        Ok(u.kind)
    } else {
        Err(QuadError::KindMismatch {
            left: u.kind,
            right: v.kind,
        })
    }
}

pub fn add(u: &Quad, v: &Quad) -> Result<Quad> {
    let k = same_kind(u, v)?;
    Ok(Quad::raw(k, std::array::from_fn(|i| u.c[i] + v.c[i])))
}

pub fn sub(u: &Quad, v: &Quad) -> Result<Quad> {
    let k = same_kind(u, v)?;
    Ok(Quad::raw(k, std::array::from_fn(|i| u.c[i] - v.c[i])))
}

/// Product from the kind's explicit component formulas.
pub fn mul(u: &Quad, v: &Quad) -> Result<Quad> {
    let k = same_kind(u, v)?;
    Ok(Quad::raw(k, mul_components(k, u.c, v.c)))
}

pub(crate) fn mul_components(kind: Kind, a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    let [x, y, z, t] = a;
    let [xp, yp, zp, tp] = b;
    match kind {
        Kind::Circular => [
            (x * xp - y * yp) + (t * tp - z * zp),
            (x * yp + y * xp) + (z * tp + t * zp),
            (x * zp + z * xp) + (y * tp + t * yp),
            (x * tp + t * xp) - (y * zp + z * yp),
        ],
        Kind::Hyperbolic => [
            (x * xp + y * yp) + (z * zp + t * tp),
            (x * yp + y * xp) + (z * tp + t * zp),
            (x * zp + z * xp) + (y * tp + t * yp),
            (x * tp + t * xp) + (y * zp + z * yp),
        ],
        Kind::Planar => [
            (x * xp - z * zp) - (y * tp + t * yp),
            (x * yp + y * xp) - (z * tp + t * zp),
            (x * zp + z * xp) + (y * yp - t * tp),
            (x * tp + t * xp) + (y * zp + z * yp),
        ],
        Kind::Polar => [
            (x * xp + z * zp) + (y * tp + t * yp),
            (x * yp + y * xp) + (z * tp + t * zp),
            (x * zp + z * xp) + (y * yp + t * tp),
            (x * tp + t * xp) + (y * zp + z * yp),
        ],
    }
}

impl Add for Quad {
    type Output = Quad;

    /// # Panics
    /// On mismatched kinds; use [`add`] for a fallible version.
    fn add(self, rhs: Quad) -> Quad {
        add(&self, &rhs).expect("quad kinds must match")
    }
}

impl Sub for Quad {
    type Output = Quad;

    fn sub(self, rhs: Quad) -> Quad {
        sub(&self, &rhs).expect("quad kinds must match")
    }
}

impl Mul for Quad {
    type Output = Quad;

    fn mul(self, rhs: Quad) -> Quad {
        mul(&self, &rhs).expect("quad kinds must match")
    }
}

impl Mul<f64> for Quad {
    type Output = Quad;

    fn mul(self, rhs: f64) -> Quad {
        self.scale(rhs)
    }
}

impl Div<f64> for Quad {
    type Output = Quad;

    fn div(self, rhs: f64) -> Quad {
        self.scale(1.0 / rhs)
    }
}

impl Neg for Quad {
    type Output = Quad;

    fn neg(self) -> Quad {
        self.scale(-1.0)
    }
}

/// Euclidean length `d = (x²+y²+z²+t²)^{1/2}`.
pub fn modulus(u: &Quad) -> f64 {
    u.c.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Planar-angle radii `(ρ₊, ρ₋)` for circular and planar quads.
///
/// Returns `None` for the other kinds.
pub fn radii(u: &Quad) -> Option<(f64, f64)> {
    let [x, y, z, t] = u.c;
    match u.kind {
        Kind::Circular => Some(((x + t).hypot(y + z), (x - t).hypot(y - z))),
        Kind::Planar => {
            let a = (y - t) * FRAC_1_SQRT_2;
            let b = (y + t) * FRAC_1_SQRT_2;
            Some(((x + a).hypot(z + b), (x - a).hypot(b - z)))
        }
        _ => None,
    }
}

/// The multiplicative norm `ν` and, where real, the amplitude `ν^{1/4}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Amplitude {
    /// `ρ⁴` for circular and planar quads, signed `ν` otherwise.
    pub nu: f64,
    /// `ν^{1/4}` when `ν ≥ 0`.
    pub amplitude: Option<f64>,
}

pub fn amplitude(u: &Quad) -> Amplitude {
    let [x, y, z, t] = u.c;
    let nu = match u.kind {
        Kind::Circular | Kind::Planar => {
            let (rp, rm) = radii(u).expect("radii defined for circular/planar");
            (rp * rm).powi(2)
        }
        Kind::Hyperbolic => (x + y + z + t) * (x - y + z - t) * (x + y - z - t) * (x - y - z + t),
        Kind::Polar => {
            let mu2 = (x - z).powi(2) + (y - t).powi(2);
            (x + y + z + t) * (x - y + z - t) * mu2
        }
    };
    let amplitude = match u.kind {
        Kind::Circular | Kind::Planar => {
            let (rp, rm) = radii(u).expect("radii defined for circular/planar");
            Some((rp * rm).sqrt())
        }
        _ if nu >= 0.0 => Some(nu.sqrt().sqrt()),
        _ => None,
    };
    Amplitude { nu, amplitude }
}

/// Proximity of a quad to the kind's nodal sets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularityReport {
    pub singular: bool,
    pub nodal_sets: Vec<String>,
    pub margin: f64,
}

/// Nodal residuals `(name, |residual|)` for each nodal condition of the kind.
fn nodal_residuals(u: &Quad) -> Vec<(&'static str, f64)> {
    let [x, y, z, t] = u.c;
    match u.kind {
        Kind::Circular | Kind::Planar => {
            let (rp, rm) = radii(u).expect("radii defined for circular/planar");
            vec![("rho_plus", rp), ("rho_minus", rm)]
        }
        Kind::Hyperbolic => vec![
            ("s", (x + y + z + t).abs()),
            ("s1", (x - y + z - t).abs()),
            ("s2", (x + y - z - t).abs()),
            ("s3", (x - y - z + t).abs()),
        ],
        Kind::Polar => vec![
            ("v_plus", (x + y + z + t).abs()),
            ("v_minus", (x - y + z - t).abs()),
            ("mu_plus", (x - z).hypot(y - t)),
        ],
    }
}

/// Lists every nodal condition whose residual, normalized by `max(d, tol)`, is at most `tol`.
pub fn singularity(u: &Quad, tol: f64) -> SingularityReport {
    let scale = modulus(u).max(tol);
    let mut margin = f64::INFINITY;
    let mut nodal_sets = Vec::new();
    for (name, r) in nodal_residuals(u) {
        let m = r / scale;
        margin = margin.min(m);
        if m <= tol {
            nodal_sets.push(name.to_string());
        }
    }
    SingularityReport {
        singular: margin <= tol,
        nodal_sets,
        margin,
    }
}

/// Closed-form inverse with the default tolerance.
pub fn inverse(u: &Quad) -> Result<Quad> {
    inverse_with_tol(u, DEFAULT_TOL)
}

pub fn inverse_with_tol(u: &Quad, tol: f64) -> Result<Quad> {
    let report = singularity(u, tol);
    if report.singular {
        return Err(QuadError::Singular {
            nodal_sets: report.nodal_sets,
        });
    }
    let [x, y, z, t] = u.c;
    let (x2, y2, z2, t2) = (x * x, y * y, z * z, t * t);
    let c = match u.kind {
        Kind::Circular => {
            let r4 = amplitude(u).nu;
            [
                (x * (x2 + y2 + z2 - t2) - 2.0 * y * z * t) / r4,
                (y * (-x2 - y2 + z2 - t2) + 2.0 * x * z * t) / r4,
                (z * (-x2 + y2 - z2 - t2) + 2.0 * x * y * t) / r4,
                (t * (-x2 + y2 + z2 + t2) - 2.0 * x * y * z) / r4,
            ]
        }
        Kind::Hyperbolic => {
            let nu = amplitude(u).nu;
            [
                (x * (x2 - y2 - z2 - t2) + 2.0 * y * z * t) / nu,
                (y * (-x2 + y2 - z2 - t2) + 2.0 * x * z * t) / nu,
                (z * (-x2 - y2 + z2 - t2) + 2.0 * x * y * t) / nu,
                (t * (-x2 - y2 - z2 + t2) + 2.0 * x * y * z) / nu,
            ]
        }
        Kind::Planar => {
            let r4 = amplitude(u).nu;
            [
                (x * (x2 + z2) - z * (y2 - t2) + 2.0 * x * y * t) / r4,
                -(y * (x2 - z2) + t * (y2 + t2) + 2.0 * x * z * t) / r4,
                (-z * (x2 + z2) + x * (y2 - t2) + 2.0 * z * y * t) / r4,
                -(t * (x2 - z2) + y * (y2 + t2) - 2.0 * x * y * z) / r4,
            ]
        }
        Kind::Polar => {
            let vp = x + y + z + t;
            let vm = x - y + z - t;
            let (v1, w1) = (x - z, y - t);
            let mu2 = v1 * v1 + w1 * w1;
            let (p, m) = (0.25 / vp, 0.25 / vm);
            let (a, b) = (0.5 * v1 / mu2, 0.5 * w1 / mu2);
            [p + m + a, p - m - b, p + m - a, p - m + b]
        }
    };
    Quad::from_array(u.kind, c)
}

/// Integer power by binary exponentiation with the default tolerance.
pub fn pow_int(u: &Quad, m: i64) -> Result<Quad> {
    pow_int_with_tol(u, m, DEFAULT_TOL)
}

pub fn pow_int_with_tol(u: &Quad, m: i64, tol: f64) -> Result<Quad> {
    let mut base = if m < 0 { inverse_with_tol(u, tol)? } else { *u };
    let mut e = m.unsigned_abs();
    let mut acc = Quad::one(u.kind);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base;
        }
        e >>= 1;
        if e > 0 {
            base = base * base;
        }
    }
    Ok(acc)
}

/// Orthogonal divisor-of-zero families: each family maps two free parameter
/// triples to a pair of nonzero quads whose product vanishes.
pub fn zero_divisor_pair(
    kind: Kind,
    family: usize,
    p: [f64; 3],
    q: [f64; 3],
) -> Option<(Quad, Quad)> {
    let s = FRAC_1_SQRT_2;
    let [a, b, e] = p;
    let [c, d, _] = q;
    let pair = match (kind, family) {
        (Kind::Circular, 0) => ([a, b, b, a], [c, d, -d, -c]),
        (Kind::Hyperbolic, 0) => ([a, b, e, -a - b - e], [c, c, c, c]),
        (Kind::Hyperbolic, 1) => ([a, b, e, a - b + e], [c, -c, c, -c]),
        (Kind::Hyperbolic, 2) => ([a, b, e, a + b - e], [c, c, -c, -c]),
        (Kind::Hyperbolic, 3) => ([a, b, e, -a + b + e], [c, -c, -c, c]),
        (Kind::Hyperbolic, 4) => ([a, -a, b, -b], [c, c, d, d]),
        (Kind::Hyperbolic, 5) => ([a, b, -a, -b], [c, d, c, d]),
        (Kind::Hyperbolic, 6) => ([a, b, -b, -a], [c, d, d, c]),
        (Kind::Planar, 0) => (
            [a, (a + b) * s, b, -(a - b) * s],
            [c, -(c + d) * s, d, (c - d) * s],
        ),
        (Kind::Polar, 0) => ([a, b, e, -a - b - e], [c, c, c, c]),
        (Kind::Polar, 1) => ([a, b, e, a - b + e], [c, -c, c, -c]),
        (Kind::Polar, 2) => ([a, b, a, b], [c, d, -c, -d]),
        _ => return None,
    };
    Some((Quad::raw(kind, pair.0), Quad::raw(kind, pair.1)))
}

/// Number of divisor-of-zero families exposed by [`zero_divisor_pair`].
pub fn zero_divisor_family_count(kind: Kind) -> usize {
    match kind {
        Kind::Circular | Kind::Planar => 1,
        Kind::Hyperbolic => 7,
        Kind::Polar => 3,
    }
}
