//! Power series, analyticity checks, loop integrals and residues.

use std::f64::consts::{FRAC_PI_4, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{inverse, modulus, pow_int, Kind, Quad};
use crate::canonical::{channel_unit, from_channels_lossy, from_frame, to_channels, to_frame};
use crate::elementary::exp;
use crate::error::{QuadError, Result};
use crate::parallel::Exec;

/// Default number of samples on a circle loop.
pub const DEFAULT_SAMPLES: usize = 4096;
/// Default first-order finite-difference step.
pub const DEFAULT_H1: f64 = 1e-5;
/// Default second-order finite-difference step.
pub const DEFAULT_H2: f64 = 1e-4;
/// Distance below which a point counts as lying on a polygon.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Coefficients `a₀ … a_L` of `Σ a_l u^l`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesSpec {
    kind: Kind,
    coeffs: Vec<Quad>,
}

impl SeriesSpec {
    pub fn new(coeffs: Vec<Quad>) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| QuadError::InvalidInput("empty series".into()))?;
        let kind = first.kind();
        if let Some(bad) = coeffs.iter().find(|c| c.kind() != kind) {
            return Err(QuadError::KindMismatch {
                left: kind,
                right: bad.kind(),
            });
        }
        Ok(Self { kind, coeffs })
    }

    /// Series with real coefficients.
    pub fn from_reals(kind: Kind, coeffs: &[f64]) -> Result<Self> {
        Self::new(
            coeffs
                .iter()
                .map(|&a| Quad::from_array(kind, [a, 0.0, 0.0, 0.0]))
                .collect::<Result<_>>()?,
        )
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn coeffs(&self) -> &[Quad] {
        &self.coeffs
    }
}

fn check_kind(expected: Kind, u: &Quad) -> Result<()> {
    if u.kind() == expected {
        Ok(())
    } else {
        Err(QuadError::KindMismatch {
            left: expected,
            right: u.kind(),
        })
    }
}

/// Horner evaluation.
pub fn eval_series(s: &SeriesSpec, u: &Quad) -> Result<Quad> {
    check_kind(s.kind, u)?;
    let mut acc = Quad::zero(s.kind);
    for a in s.coeffs.iter().rev() {
        acc = acc * *u + *a;
    }
    Ok(acc)
}

/// Evaluation channel by channel, with each channel an independent series.
pub fn eval_series_canonical(s: &SeriesSpec, u: &Quad) -> Result<Quad> {
    check_kind(s.kind, u)?;
    let w = to_channels(u);
    let coeffs: Vec<Vec<Complex64>> = s.coeffs.iter().map(to_channels).collect();
    let out: Vec<Complex64> = (0..w.len())
        .map(|ch| {
            coeffs
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, a| acc * w[ch] + a[ch])
        })
        .collect();
    Ok(from_channels_lossy(s.kind, &out))
}

/// Tail-ratio estimates of the convergence radii.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceBounds {
    /// Bound on the modulus `d` below which the series converges.
    pub global: f64,
    /// One radius per channel: `|W₊| < c₁` style bounds.
    pub canonical: Vec<f64>,
}

fn tail_min(mags: &[f64]) -> Option<f64> {
    let ratios = mags.len() - 1;
    let window = ratios.min(3.max(ratios / 4));
    let mut best = f64::INFINITY;
    for l in ratios - window..ratios {
        if mags[l + 1] == 0.0 {
            if mags[l] != 0.0 {
                continue;
            }
            return None;
        }
        best = best.min(mags[l] / mags[l + 1]);
    }
    Some(best)
}

pub fn convergence_bounds(s: &SeriesSpec) -> Result<ConvergenceBounds> {
    if s.coeffs.len() < 2 {
        return Err(QuadError::DegenerateSeries(
            "need at least two coefficients".into(),
        ));
    }
    let mags: Vec<f64> = s.coeffs.iter().map(modulus).collect();
    if mags.last() == Some(&0.0) {
        return Err(QuadError::DegenerateSeries(
            "trailing coefficient vanishes".into(),
        ));
    }
    let global = tail_min(&mags)
        .ok_or_else(|| QuadError::DegenerateSeries("trailing coefficients vanish".into()))?
        / s.kind.product_bound();

    let chans: Vec<Vec<Complex64>> = s.coeffs.iter().map(to_channels).collect();
    let canonical = (0..chans[0].len())
        .map(|ch| {
            let m: Vec<f64> = chans.iter().map(|c| c[ch].norm()).collect();
            tail_min(&m).unwrap_or(f64::INFINITY)
        })
        .collect();
    Ok(ConvergenceBounds { global, canonical })
}

fn partial(f: &impl Fn(&Quad) -> Quad, u: &Quad, k: usize, h: f64) -> [f64; 4] {
    let mut p = u.to_array();
    let mut m = u.to_array();
    p[k] += h;
    m[k] -= h;
    let fp = f(&Quad::raw(u.kind(), p)).to_array();
    let fm = f(&Quad::raw(u.kind(), m)).to_array();
    std::array::from_fn(|i| (fp[i] - fm[i]) / (2.0 * h))
}

fn max_violation(a: &Quad, b: &Quad) -> f64 {
    a.max_abs_diff(b)
}

/// Largest violation of `∂f/∂x_k = (∂f/∂x) e_k`, over all components and `k = 1..3`.
///
/// These are the twelve first-order relations that characterize differentiable
/// functions of one quad variable.
pub fn check_analytic(f: impl Fn(&Quad) -> Quad, u0: &Quad, h: f64) -> f64 {
    let k = u0.kind();
    let d0 = Quad::raw(k, partial(&f, u0, 0, h));
    (1..4)
        .map(|j| {
            let dj = Quad::raw(k, partial(&f, u0, j, h));
            max_violation(&dj, &(d0 * Quad::unit(k, j)))
        })
        .fold(0.0, f64::max)
}

fn second_partial(f: &impl Fn(&Quad) -> Quad, u: &Quad, i: usize, j: usize, h: f64) -> [f64; 4] {
    let at = |di: f64, dj: f64| {
        let mut c = u.to_array();
        c[i] += di;
        c[j] += dj;
        f(&Quad::raw(u.kind(), c)).to_array()
    };
    if i == j {
        let (p, z, m) = (at(h, 0.0), f(u).to_array(), at(-h, 0.0));
        std::array::from_fn(|n| (p[n] - 2.0 * z[n] + m[n]) / (h * h))
    } else {
        let (pp, pm, mp, mm) = (at(h, h), at(h, -h), at(-h, h), at(-h, -h));
        std::array::from_fn(|n| (pp[n] - pm[n] - mp[n] + mm[n]) / (4.0 * h * h))
    }
}

/// Largest violation of `∂²f/∂x_i∂x_j = (∂²f/∂x²) e_i e_j` over all components.
///
/// Includes the per-kind Laplace, wave and mixed-derivative equations for
/// each of the four component functions.
pub fn check_second_order(f: impl Fn(&Quad) -> Quad, u0: &Quad, h: f64) -> f64 {
    let k = u0.kind();
    let d00 = Quad::raw(k, second_partial(&f, u0, 0, 0, h));
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in i..4 {
            if i == 0 && j == 0 {
                continue;
            }
            let dij = Quad::raw(k, second_partial(&f, u0, i, j, h));
            worst = worst.max(max_violation(
                &dij,
                &(d00 * Quad::unit(k, i) * Quad::unit(k, j)),
            ));
        }
    }
    worst
}

/// The two distinguished planes of the orthonormal frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Plane {
    /// Frame coordinates 1 and 2.
    Plus,
    /// Frame coordinates 3 and 4.
    Minus,
}

impl Plane {
    fn axes(self) -> (usize, usize) {
        match self {
            Plane::Plus => (0, 1),
            Plane::Minus => (2, 3),
        }
    }
}

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

fn default_angle() -> f64 {
    FRAC_PI_4
}

/// Circle traced in one plane while the other plane's projection stays fixed.
///
/// In frame coordinates the moving pair is `center + r·sinψ (cos θ, sin θ)` for
/// [`Plane::Plus`] (or `r·cosψ` for [`Plane::Minus`]); the other pair is offset
/// from the center by the complementary radius at `fixed_angle`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleSpec {
    pub plane: Plane,
    pub center: Quad,
    pub radius: f64,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_angle")]
    pub psi: f64,
    #[serde(default = "default_angle")]
    pub fixed_angle: f64,
}

impl CircleSpec {
    pub fn new(plane: Plane, center: Quad, radius: f64) -> Self {
        Self {
            plane,
            center,
            radius,
            samples: DEFAULT_SAMPLES,
            psi: FRAC_PI_4,
            fixed_angle: FRAC_PI_4,
        }
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    fn radii(&self) -> (f64, f64) {
        let (moving, fixed) = (self.radius * self.psi.sin(), self.radius * self.psi.cos());
        match self.plane {
            Plane::Plus => (moving, fixed),
            Plane::Minus => (fixed, moving),
        }
    }

    /// Point and tangent at parameter `theta`.
    pub fn point(&self, theta: f64) -> (Quad, Quad) {
        let kind = self.center.kind();
        let (rm, rf) = self.radii();
        let (mov, fix) = match self.plane {
            Plane::Plus => (Plane::Plus.axes(), Plane::Minus.axes()),
            Plane::Minus => (Plane::Minus.axes(), Plane::Plus.axes()),
        };
        let (s, c) = theta.sin_cos();
        let (fs, fc) = self.fixed_angle.sin_cos();
        let mut p = to_frame(&self.center);
        p[mov.0] += rm * c;
        p[mov.1] += rm * s;
        p[fix.0] += rf * fc;
        p[fix.1] += rf * fs;
        let mut d = [0.0; 4];
        d[mov.0] = -rm * s;
        d[mov.1] = rm * c;
        (from_frame(kind, p), from_frame(kind, d))
    }

    pub fn points(&self) -> Vec<Quad> {
        let n = self.samples;
        let mut pts: Vec<Quad> = (0..n)
            .map(|i| self.point(TAU * i as f64 / n as f64).0)
            .collect();
        pts.push(pts[0]);
        pts
    }
}

/// A closed integration contour.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Loop {
    /// Vertices of a closed polyline; the first and last vertex coincide.
    Polyline(Vec<Quad>),
    Circle(CircleSpec),
}

impl Loop {
    pub fn kind(&self) -> Option<Kind> {
        match self {
            Loop::Polyline(p) => p.first().map(Quad::kind),
            Loop::Circle(c) => Some(c.center.kind()),
        }
    }

    pub fn validate(&self) -> Result<Kind> {
        match self {
            Loop::Polyline(p) => {
                if p.len() < 9 {
                    return Err(QuadError::InvalidInput(
                        "a loop needs at least 8 samples".into(),
                    ));
                }
                let kind = p[0].kind();
                if let Some(bad) = p.iter().find(|q| q.kind() != kind) {
                    return Err(QuadError::KindMismatch {
                        left: kind,
                        right: bad.kind(),
                    });
                }
                if p[0] != p[p.len() - 1] {
                    return Err(QuadError::InvalidInput(
                        "polyline loop must be closed".into(),
                    ));
                }
                Ok(kind)
            }
            Loop::Circle(c) => {
                if c.samples < 8 {
                    return Err(QuadError::InvalidInput(
                        "a loop needs at least 8 samples".into(),
                    ));
                }
                if !(c.radius > 0.0 && c.radius.is_finite()) {
                    return Err(QuadError::InvalidInput("radius must be positive".into()));
                }
                Ok(c.center.kind())
            }
        }
    }

    /// Vertices of the loop, closed.
    pub fn vertices(&self) -> Vec<Quad> {
        match self {
            Loop::Polyline(p) => p.clone(),
            Loop::Circle(c) => c.points(),
        }
    }
}

/// Inserts `n − 1` evenly spaced points inside every segment.
pub fn subdivide(points: &[Quad], n: usize) -> Vec<Quad> {
    let n = n.max(1);
    let mut out = Vec::with_capacity((points.len().saturating_sub(1)) * n + 1);
    for w in points.windows(2) {
        let step = (w[1] - w[0]).scale(1.0 / n as f64);
        for i in 0..n {
            out.push(w[0] + step.scale(i as f64));
        }
    }
    if let Some(last) = points.last() {
        out.push(*last);
    }
    out
}

fn eval_all<F>(f: &F, pts: &[Quad], exec: Exec) -> Result<Vec<Quad>>
where
    F: Fn(&Quad) -> Result<Quad> + Sync + Send,
{
    let vals = exec.map_range(pts.len(), |i| {
        f(&pts[i]).map_err(|_| QuadError::SingularOnPath { index: i })
    });
    let vals: Vec<Quad> = vals.into_iter().collect::<Result<_>>()?;
    if let Some(i) = vals.iter().position(|v| !v.is_finite()) {
        return Err(QuadError::SingularOnPath { index: i });
    }
    Ok(vals)
}

/// Trapezoidal `∫ f(u) du` along an open polyline.
pub fn integrate_path<F>(f: F, points: &[Quad], exec: Exec) -> Result<Quad>
where
    F: Fn(&Quad) -> Result<Quad> + Sync + Send,
{
    let kind = points
        .first()
        .ok_or_else(|| QuadError::InvalidInput("empty path".into()))?
        .kind();
    if let Some(bad) = points.iter().find(|q| q.kind() != kind) {
        return Err(QuadError::KindMismatch {
            left: kind,
            right: bad.kind(),
        });
    }
    let vals = eval_all(&f, points, exec)?;
    let mut acc = Quad::zero(kind);
    for i in 0..points.len() - 1 {
        acc = acc + (vals[i] + vals[i + 1]).scale(0.5) * (points[i + 1] - points[i]);
    }
    Ok(acc)
}

/// `∮ f(u) du` using the default execution strategy.
pub fn integrate_loop<F>(f: F, lp: &Loop) -> Result<Quad>
where
    F: Fn(&Quad) -> Result<Quad> + Sync + Send,
{
    integrate_loop_with(f, lp, Exec::default())
}

/// `∮ f(u) du`.
///
/// Circles use the parametric trapezoid rule, which converges spectrally for
/// smooth periodic integrands; polylines use the segment trapezoid rule.
/// Samples may be evaluated in parallel but are always summed in order.
pub fn integrate_loop_with<F>(f: F, lp: &Loop, exec: Exec) -> Result<Quad>
where
    F: Fn(&Quad) -> Result<Quad> + Sync + Send,
{
    let kind = lp.validate()?;
    match lp {
        Loop::Polyline(p) => integrate_path(f, p, exec),
        Loop::Circle(c) => {
            let n = c.samples;
            let terms = exec.map_range(n, |i| {
                let (u, du) = c.point(TAU * i as f64 / n as f64);
                match f(&u) {
                    Ok(v) if v.is_finite() => Ok(v * du),
                    _ => Err(QuadError::SingularOnPath { index: i }),
                }
            });
            let mut acc = Quad::zero(kind);
            for t in terms {
                acc = acc + t?;
            }
            Ok(acc.scale(TAU / n as f64))
        }
    }
}

/// A point and a closed polygon in the plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindingQuery {
    pub point: [f64; 2],
    pub polygon: Vec<[f64; 2]>,
}

fn segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let s = if len2 == 0.0 {
        0.0
    } else {
        (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0)
    };
    (p[0] - a[0] - s * dx).hypot(p[1] - a[1] - s * dy)
}

/// 1 if the point is inside the polygon (even–odd rule), 0 otherwise.
pub fn winding(q: &WindingQuery) -> Result<u32> {
    let poly = &q.polygon;
    let n = poly.len();
    if n < 2 {
        return Err(QuadError::InvalidInput(
            "polygon needs at least two vertices".into(),
        ));
    }
    let p = q.point;
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        if segment_distance(p, a, b) < BOUNDARY_TOL {
            return Err(QuadError::OnBoundary);
        }
        if (a[1] > p[1]) != (b[1] > p[1]) {
            let x = a[0] + (p[1] - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
            if p[0] < x {
                inside = !inside;
            }
        }
    }
    Ok(inside as u32)
}

/// `∮ du/(u−u₀)` around a pole enclosed in the given plane, if the kind has one.
pub fn residue_unit(kind: Kind, plane: Plane) -> Option<Quad> {
    let i = Complex64::new(0.0, TAU);
    match (kind, plane) {
        (Kind::Circular | Kind::Planar, Plane::Plus) => Some(channel_unit(kind, 0, i)),
        (Kind::Circular | Kind::Planar, Plane::Minus) => Some(channel_unit(kind, 1, i)),
        (Kind::Polar, Plane::Plus) => Some(channel_unit(kind, 2, i)),
        _ => None,
    }
}

fn project(u: &Quad, plane: Plane) -> [f64; 2] {
    let f = to_frame(u);
    let (a, b) = plane.axes();
    [f[a], f[b]]
}

/// `∮ Σ a_j/(u−u_j) du` predicted from the winding of each projection.
pub fn residue_prediction(poles: &[(Quad, Quad)], lp: &Loop) -> Result<Quad> {
    let kind = lp.validate()?;
    let verts = lp.vertices();
    let mut acc = Quad::zero(kind);
    for plane in [Plane::Plus, Plane::Minus] {
        let Some(unit) = residue_unit(kind, plane) else {
            continue;
        };
        let polygon: Vec<[f64; 2]> = verts[..verts.len() - 1]
            .iter()
            .map(|v| project(v, plane))
            .collect();
        for (u, a) in poles {
            check_kind(kind, u)?;
            check_kind(kind, a)?;
            let int = winding(&WindingQuery {
                point: project(u, plane),
                polygon: polygon.clone(),
            })?;
            if int == 1 {
                acc = acc + unit * *a;
            }
        }
    }
    Ok(acc)
}

/// Built-in integrands with closed-form loop integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Integrand {
    /// `1/(u − p)`.
    Pole { pole: Quad },
    /// `1/(u − p)^m`, `m ≥ 1`.
    PoleM { pole: Quad, m: u32 },
    /// `(u − p)²`.
    Square { pole: Quad },
    /// `exp(u)/(u − p)`.
    Exp { pole: Quad },
}

impl Integrand {
    pub fn eval(&self, u: &Quad) -> Result<Quad> {
        match *self {
            Integrand::Pole { pole } => inverse(&(*u - pole)),
            Integrand::PoleM { pole, m } => pow_int(&(*u - pole), -(m as i64)),
            Integrand::Square { pole } => Ok((*u - pole) * (*u - pole)),
            Integrand::Exp { pole } => Ok(exp(u) * inverse(&(*u - pole))?),
        }
    }

    /// Closed-form value of the loop integral.
    pub fn prediction(&self, lp: &Loop) -> Result<Quad> {
        let kind = lp.validate()?;
        match *self {
            Integrand::Pole { pole } | Integrand::PoleM { pole, m: 1 } => {
                residue_prediction(&[(pole, Quad::one(kind))], lp)
            }
            Integrand::PoleM { .. } | Integrand::Square { .. } => Ok(Quad::zero(kind)),
            Integrand::Exp { pole } => residue_prediction(&[(pole, exp(&pole))], lp),
        }
    }
}
