//! Exponential, logarithm, real powers, circular and hyperbolic functions,
//! and the four-dimensional cosexponential functions.
//!
//! Every function is assembled from closed-form factors along the units,
//! in the fixed order `x`, `αy`, `βz`, `γt`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{mul_components, Kind, Quad};
use crate::canonical::{exp_form, map_channels, normalize_angle};
use crate::error::Result;

/// The two cosexponential families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CosexpFamily {
    /// `f₄ₖ`, built on `cos(x/√2)` and `cosh(x/√2)`; `f⁗ = −f`.
    PlanarF,
    /// `g₄ₖ`, built on `cos x` and `cosh x`; `g⁗ = g`.
    PolarG,
}

impl CosexpFamily {
    pub fn prefix(self) -> &'static str {
        match self {
            CosexpFamily::PlanarF => "f",
            CosexpFamily::PolarG => "g",
        }
    }
}

/// One member `f₄ₖ` or `g₄ₖ`, `k ∈ 0..4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CosexpKind {
    pub family: CosexpFamily,
    pub index: usize,
}

impl CosexpKind {
    pub fn new(family: CosexpFamily, index: usize) -> Self {
        assert!(index < 4, "cosexp index must be below 4");
        Self { family, index }
    }

    pub fn is_even(self) -> bool {
        self.index.is_multiple_of(2)
    }
}

/// All four members of a family at `x`.
pub fn cosexp_all(family: CosexpFamily, x: f64) -> [f64; 4] {
    match family {
        CosexpFamily::PlanarF => {
            let a = x * FRAC_1_SQRT_2;
            let (s, c) = a.sin_cos();
            let (sh, ch) = (a.sinh(), a.cosh());
            [
                c * ch,
                (s * ch + c * sh) * FRAC_1_SQRT_2,
                s * sh,
                (s * ch - c * sh) * FRAC_1_SQRT_2,
            ]
        }
        CosexpFamily::PolarG => {
            let (s, c) = x.sin_cos();
            let (sh, ch) = (x.sinh(), x.cosh());
            [
                0.5 * (ch + c),
                0.5 * (sh + s),
                0.5 * (ch - c),
                0.5 * (sh - s),
            ]
        }
    }
}

pub fn cosexp(kind: CosexpKind, x: f64) -> f64 {
    cosexp_all(kind.family, x)[kind.index]
}

/// Truncated Maclaurin series `Σ_{m<terms} (±1)^m x^{4m+k}/(4m+k)!`.
pub fn cosexp_series(kind: CosexpKind, x: f64, terms: usize) -> f64 {
    let sign = match kind.family {
        CosexpFamily::PlanarF => -1.0,
        CosexpFamily::PolarG => 1.0,
    };
    let mut term = 1.0;
    for n in 1..=kind.index {
        term *= x / n as f64;
    }
    let mut sum = 0.0;
    let mut n = kind.index;
    for _ in 0..terms {
        sum += term;
        for _ in 0..4 {
            n += 1;
            term *= x / n as f64;
        }
        term *= sign;
    }
    sum
}

fn q(kind: Kind, c: [f64; 4]) -> Quad {
    Quad::raw(kind, c)
}

fn times(a: &Quad, b: &Quad) -> Quad {
    q(
        a.kind(),
        mul_components(a.kind(), a.to_array(), b.to_array()),
    )
}

/// `exp(e·v)` for the unit `e` with index `unit ∈ 1..4`.
fn exp_unit(kind: Kind, unit: usize, v: f64) -> Quad {
    let along = |c: f64, s: f64| {
        let mut a = [c, 0.0, 0.0, 0.0];
        a[unit] = s;
        q(kind, a)
    };
    match (kind, unit) {
        (Kind::Circular, 1 | 2) => along(v.cos(), v.sin()),
        (Kind::Circular, _) | (Kind::Hyperbolic, _) => along(v.cosh(), v.sinh()),
        (Kind::Planar, 2) => along(v.cos(), v.sin()),
        (Kind::Planar, 1) => q(kind, cosexp_all(CosexpFamily::PlanarF, v)),
        (Kind::Planar, _) => {
            let f = cosexp_all(CosexpFamily::PlanarF, v);
            q(kind, [f[0], f[3], -f[2], f[1]])
        }
        (Kind::Polar, 2) => along(v.cosh(), v.sinh()),
        (Kind::Polar, 1) => q(kind, cosexp_all(CosexpFamily::PolarG, v)),
        (Kind::Polar, _) => {
            let g = cosexp_all(CosexpFamily::PolarG, v);
            q(kind, [g[0], g[3], g[2], g[1]])
        }
    }
}

pub fn exp(u: &Quad) -> Quad {
    let k = u.kind();
    let [x, y, z, t] = u.to_array();
    let mut acc = exp_unit(k, 1, y);
    acc = times(&acc, &exp_unit(k, 2, z));
    acc = times(&acc, &exp_unit(k, 3, t));
    acc.scale(x.exp())
}

/// Principal logarithm, taken channelwise with arguments in `[0, 2π)`.
pub fn log(u: &Quad) -> Result<Quad> {
    exp_form(u)?;
    Ok(map_channels(u, |w| {
        Complex64::new(w.norm().ln(), normalize_angle(w.arg()))
    }))
}

/// `exp(n · ln u)`, evaluated channel by channel so large logarithms do not
/// lose precision in the exponential.
pub fn pow_real(u: &Quad, n: f64) -> Result<Quad> {
    exp_form(u)?;
    Ok(map_channels(u, |w| {
        let l = Complex64::new(w.norm().ln(), normalize_angle(w.arg())) * n;
        l.exp()
    }))
}

#[derive(Clone, Copy, PartialEq)]
enum Family {
    Trig,
    Hyp,
}

/// `(cos, sin)` or `(cosh, sinh)` of `e·v` for unit index `unit ∈ 1..4`.
fn unit_pair(kind: Kind, unit: usize, v: f64, fam: Family) -> (Quad, Quad) {
    let scalar = |c: f64| q(kind, [c, 0.0, 0.0, 0.0]);
    let along = |s: f64| {
        let mut a = [0.0; 4];
        a[unit] = s;
        q(kind, a)
    };
    // `squares_to_one`: e² = 1, so cos(ev) = cos v; otherwise e² = −1 swaps trig and hyperbolic.
    let simple = |squares_to_one: bool| {
        let trig =
            (squares_to_one && fam == Family::Trig) || (!squares_to_one && fam == Family::Hyp);
        if trig {
            (scalar(v.cos()), along(v.sin()))
        } else {
            (scalar(v.cosh()), along(v.sinh()))
        }
    };
    let sgn = if fam == Family::Trig { -1.0 } else { 1.0 };
    match (kind, unit) {
        (Kind::Hyperbolic, _) | (Kind::Polar, 2) | (Kind::Circular, 3) => simple(true),
        (Kind::Circular, _) | (Kind::Planar, 2) => simple(false),
        (Kind::Planar, 1) => {
            let f = cosexp_all(CosexpFamily::PlanarF, v);
            (
                q(kind, [f[0], 0.0, sgn * f[2], 0.0]),
                q(kind, [0.0, f[1], 0.0, sgn * f[3]]),
            )
        }
        (Kind::Planar, _) => {
            let f = cosexp_all(CosexpFamily::PlanarF, v);
            (
                q(kind, [f[0], 0.0, -sgn * f[2], 0.0]),
                q(kind, [0.0, sgn * f[3], 0.0, f[1]]),
            )
        }
        (Kind::Polar, 1) => {
            let g = cosexp_all(CosexpFamily::PolarG, v);
            (
                q(kind, [g[0], 0.0, sgn * g[2], 0.0]),
                q(kind, [0.0, g[1], 0.0, sgn * g[3]]),
            )
        }
        (Kind::Polar, _) => {
            let g = cosexp_all(CosexpFamily::PolarG, v);
            (
                q(kind, [g[0], 0.0, sgn * g[2], 0.0]),
                q(kind, [0.0, sgn * g[3], 0.0, g[1]]),
            )
        }
    }
}

fn trig_pair(u: &Quad, fam: Family) -> (Quad, Quad) {
    let k = u.kind();
    let c = u.to_array();
    let (mut cc, mut ss) = match fam {
        Family::Trig => (
            q(k, [c[0].cos(), 0.0, 0.0, 0.0]),
            q(k, [c[0].sin(), 0.0, 0.0, 0.0]),
        ),
        Family::Hyp => (
            q(k, [c[0].cosh(), 0.0, 0.0, 0.0]),
            q(k, [c[0].sinh(), 0.0, 0.0, 0.0]),
        ),
    };
    for (unit, &v) in c.iter().enumerate().skip(1) {
        let (cu, su) = unit_pair(k, unit, v, fam);
        let (a, b) = (times(&cc, &cu), times(&ss, &su));
        let next_c = match fam {
            Family::Trig => a - b,
            Family::Hyp => a + b,
        };
        ss = times(&ss, &cu) + times(&cc, &su);
        cc = next_c;
    }
    (cc, ss)
}

pub fn cos(u: &Quad) -> Quad {
    trig_pair(u, Family::Trig).0
}

pub fn sin(u: &Quad) -> Quad {
    trig_pair(u, Family::Trig).1
}

pub fn cosh(u: &Quad) -> Quad {
    trig_pair(u, Family::Hyp).0
}

pub fn sinh(u: &Quad) -> Quad {
    trig_pair(u, Family::Hyp).1
}
