//! Monic polynomials: evaluation, factorization into linear factors and
//! enumeration of the alternative factorizations.
//!
//! Factorization runs in the channel decomposition, where a polynomial over
//! the algebra splits into independent complex (or real) polynomials. Every
//! choice of one root per channel gives a root in the algebra, which is why a
//! degree-`m` polynomial generally has many factorizations.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{inverse, Kind, Quad};
use crate::canonical::{
    channel_kinds, from_channels, from_channels_lossy, to_channels, ChannelKind,
};
use crate::error::{QuadError, Result};

/// Durand–Kerner iteration cap.
pub const MAX_ITERATIONS: usize = 500;
/// Durand–Kerner step tolerance, relative to `1 + |z|`.
pub const ROOT_TOL: f64 = 1e-12;
/// Default cap on enumerated factorizations.
pub const DEFAULT_ENUMERATION_CAP: usize = 100;

const REAL_CLEAN_TOL: f64 = 1e-7;

/// `u^m + a₁u^{m−1} + … + a_m`, stored leading coefficient first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Poly {
    kind: Kind,
    coeffs: Vec<Quad>,
}

impl Poly {
    /// Requires a leading coefficient of exactly one.
    pub fn new(coeffs: Vec<Quad>) -> Result<Self> {
        let lead = coeffs
            .first()
            .ok_or_else(|| QuadError::InvalidInput("empty polynomial".into()))?;
        let kind = lead.kind();
        if let Some(bad) = coeffs.iter().find(|c| c.kind() != kind) {
            return Err(QuadError::KindMismatch {
                left: kind,
                right: bad.kind(),
            });
        }
        if *lead != Quad::one(kind) {
            return Err(QuadError::InvalidInput("polynomial must be monic".into()));
        }
        Ok(Self { kind, coeffs })
    }

    /// Divides through by the leading coefficient, which must be invertible.
    pub fn normalized(coeffs: Vec<Quad>) -> Result<Self> {
        let lead = *coeffs
            .first()
            .ok_or_else(|| QuadError::InvalidInput("empty polynomial".into()))?;
        let inv = inverse(&lead)?;
        let kind = lead.kind();
        let mut scaled: Vec<Quad> = coeffs
            .iter()
            .map(|c| {
                if c.kind() == kind {
                    Ok(*c * inv)
                } else {
                    Err(QuadError::KindMismatch {
                        left: kind,
                        right: c.kind(),
                    })
                }
            })
            .collect::<Result<_>>()?;
        scaled[0] = Quad::one(kind);
        Self::new(scaled)
    }

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

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Quad] {
        &self.coeffs
    }
}

/// Horner evaluation.
pub fn eval_poly(p: &Poly, u: &Quad) -> Result<Quad> {
    if u.kind() != p.kind {
        return Err(QuadError::KindMismatch {
            left: p.kind,
            right: u.kind(),
        });
    }
    Ok(p.coeffs
        .iter()
        .fold(Quad::zero(p.kind), |acc, a| acc * *u + *a))
}

/// A root given by its channel values.
///
/// When a real channel carries a non-real value the root has no
/// representation in the algebra; it then belongs to a real quadratic factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub kind: Kind,
    /// `[re, im]` per channel.
    pub channels: Vec<[f64; 2]>,
}

impl Root {
    fn from_complex(kind: Kind, ch: &[Complex64]) -> Self {
        Self {
            kind,
            channels: ch.iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn channel_values(&self) -> Vec<Complex64> {
        self.channels
            .iter()
            .map(|c| Complex64::new(c[0], c[1]))
            .collect()
    }

    pub fn is_representable(&self) -> bool {
        channel_kinds(self.kind)
            .iter()
            .zip(&self.channels)
            .all(|(k, c)| *k == ChannelKind::Complex || c[1] == 0.0)
    }

    pub fn to_quad(&self) -> Option<Quad> {
        if self.is_representable() {
            from_channels(self.kind, &self.channel_values()).ok()
        } else {
            None
        }
    }
}

/// One complete set of roots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Factorization {
    pub kind: Kind,
    pub roots: Vec<Root>,
    /// Largest channel residual `|P_c(w)|` over all roots and channels.
    pub residual: f64,
}

/// A factor of a real-structured factorization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Factor {
    /// `u − r`.
    Linear { root: Quad },
    /// `u² − s·u + p`.
    Quadratic { s: Quad, p: Quad },
}

fn channel_polys(p: &Poly) -> Vec<Vec<Complex64>> {
    let chans: Vec<Vec<Complex64>> = p.coeffs.iter().map(to_channels).collect();
    (0..chans[0].len())
        .map(|ch| chans.iter().map(|c| c[ch]).collect())
        .collect()
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter()
        .fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
}

/// All roots of a monic complex polynomial (leading coefficient first).
///
/// Starting points sit on a circle of radius `1 + max|cᵢ|` with a fixed phase
/// offset, so the result is deterministic.
pub fn durand_kerner(c: &[Complex64], component: usize) -> Result<Vec<Complex64>> {
    let m = c.len() - 1;
    if m == 0 {
        return Ok(Vec::new());
    }
    let r = 1.0 + c[1..].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..m)
        .map(|k| Complex64::from_polar(r, TAU * k as f64 / m as f64 + 0.4))
        .collect();
    let scale = 1.0 + c.iter().map(|a| a.norm()).fold(0.0, f64::max);
    for _ in 0..MAX_ITERATIONS {
        let mut worst: f64 = 0.0;
        for k in 0..m {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..m {
                if j != k {
                    denom *= z[k] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-300, 0.0);
            }
            let step = horner(c, z[k]) / denom;
            z[k] -= step;
            worst = worst.max(step.norm() / (1.0 + z[k].norm()));
        }
        if worst <= ROOT_TOL {
            return Ok(z);
        }
    }
    let residual = z
        .iter()
        .map(|w| horner(c, *w).norm() / (1.0 + w.norm()).powi(m as i32))
        .fold(0.0, f64::max);
    if residual <= 1e-10 * scale && z.iter().all(|w| w.is_finite()) {
        Ok(z)
    } else {
        Err(QuadError::NoConvergence { component })
    }
}

fn cmp_f(a: f64, b: f64) -> Ordering {
    a.partial_cmp(&b).unwrap_or(Ordering::Equal)
}

/// Sorted roots of every channel polynomial.
fn channel_roots(p: &Poly) -> Result<Vec<Vec<Complex64>>> {
    if p.degree() == 0 {
        return Err(QuadError::InvalidInput(
            "degree must be at least one".into(),
        ));
    }
    let kinds = channel_kinds(p.kind);
    channel_polys(p)
        .iter()
        .enumerate()
        .map(|(ch, c)| {
            let mut roots = durand_kerner(c, ch)?;
            if kinds[ch] == ChannelKind::Real {
                for z in roots.iter_mut() {
                    if z.im.abs() <= REAL_CLEAN_TOL * (1.0 + z.norm()) {
                        z.im = 0.0;
                    }
                }
                roots.sort_by(|a, b| {
                    (a.im != 0.0)
                        .cmp(&(b.im != 0.0))
                        .then(cmp_f(a.re, b.re))
                        .then(cmp_f(b.im, a.im))
                });
            } else {
                roots.sort_by(|a, b| cmp_f(a.re, b.re).then(cmp_f(a.im, b.im)));
            }
            Ok(roots)
        })
        .collect()
}

fn assemble(
    p: &Poly,
    polys: &[Vec<Complex64>],
    roots: &[Vec<Complex64>],
    perms: &[Vec<usize>],
) -> Factorization {
    let m = p.degree();
    let mut residual: f64 = 0.0;
    let roots = (0..m)
        .map(|i| {
            let ch: Vec<Complex64> = (0..roots.len()).map(|c| roots[c][perms[c][i]]).collect();
            for (c, w) in ch.iter().enumerate() {
                residual = residual.max(horner(&polys[c], *w).norm());
            }
            Root::from_complex(p.kind, &ch)
        })
        .collect();
    Factorization {
        kind: p.kind,
        roots,
        residual,
    }
}

/// Factorization with the canonical pairing: the `p`-th sorted root of every channel.
pub fn factor(p: &Poly) -> Result<Factorization> {
    let roots = channel_roots(p)?;
    let ident: Vec<Vec<usize>> = vec![(0..p.degree()).collect(); roots.len()];
    Ok(assemble(p, &channel_polys(p), &roots, &ident))
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn same_value(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= REAL_CLEAN_TOL * (1.0 + a.norm().max(b.norm()))
}

/// Groups roots into real linear and quadratic factors.
///
/// Returns `None` when some non-representable root has no partner that makes
/// the quadratic factor real in every real channel.
pub fn real_factors(f: &Factorization) -> Option<Vec<Factor>> {
    let kinds = channel_kinds(f.kind);
    let vals: Vec<Vec<Complex64>> = f.roots.iter().map(Root::channel_values).collect();
    let compatible = |a: &[Complex64], b: &[Complex64]| {
        kinds.iter().enumerate().all(|(c, k)| {
            *k == ChannelKind::Complex
                || (a[c].im == 0.0 && b[c].im == 0.0)
                || same_value(a[c], b[c].conj())
        })
    };
    let mut used = vec![false; vals.len()];
    let mut out = Vec::new();
    for i in 0..vals.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        if f.roots[i].is_representable() {
            out.push(Factor::Linear {
                root: f.roots[i].to_quad()?,
            });
            continue;
        }
        let j = (i + 1..vals.len()).find(|&j| {
            !used[j] && !f.roots[j].is_representable() && compatible(&vals[i], &vals[j])
        })?;
        used[j] = true;
        let sum: Vec<Complex64> = (0..kinds.len()).map(|c| vals[i][c] + vals[j][c]).collect();
        let prod: Vec<Complex64> = (0..kinds.len()).map(|c| vals[i][c] * vals[j][c]).collect();
        out.push(Factor::Quadratic {
            s: from_channels_lossy(f.kind, &sum),
            p: from_channels_lossy(f.kind, &prod),
        });
    }
    Some(out)
}

fn root_key(r: &Root) -> Vec<i64> {
    r.channels
        .iter()
        .flat_map(|c| c.map(|v| (v * 1e8).round() as i64))
        .collect()
}

/// Distinct factorizations over all pairings of channel roots, canonical first.
///
/// Pairings that cannot be grouped into real factors are skipped.
pub fn enumerate_factorizations(p: &Poly, cap: usize) -> Result<Vec<Factorization>> {
    let roots = channel_roots(p)?;
    let polys = channel_polys(p);
    let m = p.degree();
    let nch = roots.len();
    let mut perms: Vec<Vec<usize>> = vec![(0..m).collect(); nch];
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    loop {
        let f = assemble(p, &polys, &roots, &perms);
        if real_factors(&f).is_some() {
            let mut key: Vec<Vec<i64>> = f.roots.iter().map(root_key).collect();
            key.sort();
            if seen.insert(key) {
                out.push(f);
                if out.len() >= cap {
                    break;
                }
            }
        }
        // Odometer over the permutations of channels 1..nch.
        let mut c = nch - 1;
        loop {
            if c == 0 {
                return Ok(out);
            }
            if next_permutation(&mut perms[c]) {
                break;
            }
            c -= 1;
        }
    }
    Ok(out)
}

fn poly_mul(a: &[Quad], b: &[Quad]) -> Vec<Quad> {
    let kind = a[0].kind();
    let mut out = vec![Quad::zero(kind); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j] + *x * *y;
        }
    }
    out
}

/// Expands the product of linear and quadratic factors.
pub fn expand(kind: Kind, factors: &[Factor]) -> Poly {
    let one = Quad::one(kind);
    let coeffs = factors.iter().fold(vec![one], |acc, f| match *f {
        Factor::Linear { root } => poly_mul(&acc, &[one, -root]),
        Factor::Quadratic { s, p } => poly_mul(&acc, &[one, -s, p]),
    });
    Poly { kind, coeffs }
}

/// `∏ (u − u_p)`, grouping conjugate roots into real quadratic factors.
pub fn reconstruct(f: &Factorization) -> Result<Poly> {
    let factors = real_factors(f).ok_or_else(|| {
        QuadError::InvalidInput("roots cannot be grouped into real factors".into())
    })?;
    Ok(expand(f.kind, &factors))
}

/// `∏ (u − r)` for roots in the algebra.
pub fn from_roots(kind: Kind, roots: &[Quad]) -> Poly {
    let factors: Vec<Factor> = roots.iter().map(|r| Factor::Linear { root: *r }).collect();
    expand(kind, &factors)
}
