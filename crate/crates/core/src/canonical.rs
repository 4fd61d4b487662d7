//! Canonical coordinates, the channel decomposition, and exponential/trigonometric forms.
//!
//! Each algebra is isomorphic to a direct sum of real and complex lines.
//! The *channels* of a quad are its images in those lines:
//!
//! * circular, planar: two complex channels `W₊`, `W₋`
//! * hyperbolic: four real channels `s, s′, s″, s‴`
//! * polar: two real channels `v₊, v₋` and one complex channel `v₁ + iṽ₁`
//!
//! Multiplication is channelwise, which makes the channels the natural
//! oracle for every identity in the crate. Canonical coordinates are the
//! channels up to fixed scale factors.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI, SQRT_2, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{modulus, Kind, Quad, DEFAULT_TOL};
use crate::elementary::exp;
use crate::error::{QuadError, Result};

/// Canonical coordinates of one quad.
///
/// Component order per kind:
/// circular and planar `(ξ, υ, τ, ζ)`, hyperbolic `(s, s′, s″, s‴)`,
/// polar `(v₊, v₋, v₁, ṽ₁)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalCoords {
    pub kind: Kind,
    pub c: [f64; 4],
}

/// Names of the canonical components, in storage order.
pub fn component_names(kind: Kind) -> [&'static str; 4] {
    match kind {
        Kind::Circular | Kind::Planar => ["xi", "upsilon", "tau", "zeta"],
        Kind::Hyperbolic => ["s", "s1", "s2", "s3"],
        Kind::Polar => ["v_plus", "v_minus", "v1", "v1_tilde"],
    }
}

pub fn to_canonical(u: &Quad) -> CanonicalCoords {
    let [x, y, z, t] = u.to_array();
    let h = FRAC_1_SQRT_2;
    let c = match u.kind() {
        Kind::Circular => [(x + t) * h, (y + z) * h, (x - t) * h, (y - z) * h],
        Kind::Planar => [
            x * h + 0.5 * (y - t),
            z * h + 0.5 * (y + t),
            x * h - 0.5 * (y - t),
            -z * h + 0.5 * (y + t),
        ],
        Kind::Hyperbolic => [x + y + z + t, x - y + z - t, x + y - z - t, x - y - z + t],
        Kind::Polar => [x + y + z + t, x - y + z - t, x - z, y - t],
    };
    CanonicalCoords { kind: u.kind(), c }
}

pub fn from_canonical(cc: &CanonicalCoords) -> Quad {
    let h = FRAC_1_SQRT_2;
    let [a, b, c, d] = cc.c;
    let q = match cc.kind {
        Kind::Circular => [(a + c) * h, (b + d) * h, (b - d) * h, (a - c) * h],
        Kind::Planar => {
            let ymt = a - c;
            let ypt = b + d;
            [
                (a + c) * h,
                0.5 * (ymt + ypt),
                (b - d) * h,
                0.5 * (ypt - ymt),
            ]
        }
        Kind::Hyperbolic => [
            0.25 * (a + b + c + d),
            0.25 * (a - b + c - d),
            0.25 * (a + b - c - d),
            0.25 * (a - b - c + d),
        ],
        Kind::Polar => {
            let (sum, dif) = (0.5 * (a + b), 0.5 * (a - b));
            [
                0.5 * (sum + c),
                0.5 * (dif + d),
                0.5 * (sum - c),
                0.5 * (dif - d),
            ]
        }
    };
    Quad::raw(cc.kind, q)
}

/// Decoupled product in canonical coordinates.
pub fn canonical_mul(p: &CanonicalCoords, q: &CanonicalCoords) -> Result<CanonicalCoords> {
    if p.kind != q.kind {
        return Err(QuadError::KindMismatch {
            left: p.kind,
            right: q.kind,
        });
    }
    let [a, b, c, d] = p.c;
    let [e, f, g, h] = q.c;
    let c = match p.kind {
        Kind::Circular | Kind::Planar => [
            SQRT_2 * (a * e - b * f),
            SQRT_2 * (a * f + b * e),
            SQRT_2 * (c * g - d * h),
            SQRT_2 * (c * h + d * g),
        ],
        Kind::Hyperbolic => [a * e, b * f, c * g, d * h],
        Kind::Polar => [a * e, b * f, c * g - d * h, c * h + d * g],
    };
    Ok(CanonicalCoords { kind: p.kind, c })
}

/// Canonical base `(e₁, ẽ₁, e₂, ẽ₂)`, `(e, e′, e″, e‴)` or `(e₊, e₋, e₁, ẽ₁)`.
pub fn canonical_basis(kind: Kind) -> [Quad; 4] {
    let q = |c: [f64; 4]| Quad::raw(kind, c);
    let r = 0.5 * FRAC_1_SQRT_2;
    match kind {
        Kind::Circular => [
            q([0.5, 0.0, 0.0, 0.5]),
            q([0.0, 0.5, 0.5, 0.0]),
            q([0.5, 0.0, 0.0, -0.5]),
            q([0.0, 0.5, -0.5, 0.0]),
        ],
        Kind::Planar => [
            q([0.5, r, 0.0, -r]),
            q([0.0, r, 0.5, r]),
            q([0.5, -r, 0.0, r]),
            q([0.0, r, -0.5, r]),
        ],
        Kind::Hyperbolic => [
            q([0.25, 0.25, 0.25, 0.25]),
            q([0.25, -0.25, 0.25, -0.25]),
            q([0.25, 0.25, -0.25, -0.25]),
            q([0.25, -0.25, -0.25, 0.25]),
        ],
        Kind::Polar => [
            q([0.25, 0.25, 0.25, 0.25]),
            q([0.25, -0.25, 0.25, -0.25]),
            q([0.5, 0.0, -0.5, 0.0]),
            q([0.0, 0.5, 0.0, -0.5]),
        ],
    }
}

/// Whether a channel is a real or a complex line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    Real,
    Complex,
}

pub fn channel_kinds(kind: Kind) -> &'static [ChannelKind] {
    use ChannelKind::*;
    match kind {
        Kind::Circular | Kind::Planar => &[Complex, Complex],
        Kind::Hyperbolic => &[Real, Real, Real, Real],
        Kind::Polar => &[Real, Real, Complex],
    }
}

/// Images of `u` in the kind's real and complex lines.
pub fn to_channels(u: &Quad) -> Vec<Complex64> {
    let [x, y, z, t] = u.to_array();
    let h = FRAC_1_SQRT_2;
    let c = Complex64::new;
    match u.kind() {
        Kind::Circular => vec![c(x + t, y + z), c(x - t, y - z)],
        Kind::Planar => {
            let (a, b) = ((y - t) * h, (y + t) * h);
            vec![c(x + a, z + b), c(x - a, b - z)]
        }
        Kind::Hyperbolic => [x + y + z + t, x - y + z - t, x + y - z - t, x - y - z + t]
            .iter()
            .map(|v| c(*v, 0.0))
            .collect(),
        Kind::Polar => vec![
            c(x + y + z + t, 0.0),
            c(x - y + z - t, 0.0),
            c(x - z, y - t),
        ],
    }
}

/// Assembles a quad from channel values, discarding imaginary parts of real channels.
pub(crate) fn from_channels_lossy(kind: Kind, ch: &[Complex64]) -> Quad {
    match kind {
        Kind::Circular => {
            let (p, m) = (ch[0], ch[1]);
            Quad::raw(
                kind,
                [
                    0.5 * (p.re + m.re),
                    0.5 * (p.im + m.im),
                    0.5 * (p.im - m.im),
                    0.5 * (p.re - m.re),
                ],
            )
        }
        Kind::Planar => {
            let (p, m) = (ch[0], ch[1]);
            let ymt = (p.re - m.re) * FRAC_1_SQRT_2;
            let ypt = (p.im + m.im) * FRAC_1_SQRT_2;
            Quad::raw(
                kind,
                [
                    0.5 * (p.re + m.re),
                    0.5 * (ymt + ypt),
                    0.5 * (p.im - m.im),
                    0.5 * (ypt - ymt),
                ],
            )
        }
        Kind::Hyperbolic => from_canonical(&CanonicalCoords {
            kind,
            c: [ch[0].re, ch[1].re, ch[2].re, ch[3].re],
        }),
        Kind::Polar => from_canonical(&CanonicalCoords {
            kind,
            c: [ch[0].re, ch[1].re, ch[2].re, ch[2].im],
        }),
    }
}

/// Inverse of [`to_channels`].
///
/// Fails when a real channel carries an imaginary part above `1e-9` relative.
pub fn from_channels(kind: Kind, ch: &[Complex64]) -> Result<Quad> {
    let kinds = channel_kinds(kind);
    if ch.len() != kinds.len() {
        return Err(QuadError::InvalidInput(format!(
            "{kind} needs {} channels, got {}",
            kinds.len(),
            ch.len()
        )));
    }
    for (v, k) in ch.iter().zip(kinds) {
        if *k == ChannelKind::Real && v.im.abs() > 1e-9 * (1.0 + v.re.abs()) {
            return Err(QuadError::Domain(
                "real channel has a nonzero imaginary part".into(),
            ));
        }
    }
    let q = from_channels_lossy(kind, ch);
    Quad::from_array(kind, q.to_array())
}

/// Applies `f` to every channel; `f` must map real lines to real values.
pub fn map_channels(u: &Quad, f: impl Fn(Complex64) -> Complex64) -> Quad {
    let ch: Vec<_> = to_channels(u).into_iter().map(f).collect();
    from_channels_lossy(u.kind(), &ch)
}

/// The quad whose channels vanish except channel `index`, which equals `value`.
pub fn channel_unit(kind: Kind, index: usize, value: Complex64) -> Quad {
    let mut ch = vec![Complex64::new(0.0, 0.0); channel_kinds(kind).len()];
    ch[index] = value;
    from_channels_lossy(kind, &ch)
}

/// Orthonormal frame adapted to the channel planes.
///
/// Circular and planar use `(ξ, υ, τ, ζ)`; hyperbolic `(s, s′, s″, s‴)/2`;
/// polar `((x−z)/√2, (y−t)/√2, v₊/2, v₋/2)` so that the first pair spans the complex channel.
pub fn to_frame(u: &Quad) -> [f64; 4] {
    let c = to_canonical(u).c;
    match u.kind() {
        Kind::Circular | Kind::Planar => c,
        Kind::Hyperbolic => c.map(|v| 0.5 * v),
        Kind::Polar => [
            c[2] * FRAC_1_SQRT_2,
            c[3] * FRAC_1_SQRT_2,
            0.5 * c[0],
            0.5 * c[1],
        ],
    }
}

pub fn from_frame(kind: Kind, f: [f64; 4]) -> Quad {
    let c = match kind {
        Kind::Circular | Kind::Planar => f,
        Kind::Hyperbolic => f.map(|v| 2.0 * v),
        Kind::Polar => [2.0 * f[2], 2.0 * f[3], f[0] * SQRT_2, f[1] * SQRT_2],
    };
    from_canonical(&CanonicalCoords { kind, c })
}

/// Maps an angle to `[0, 2π)`.
pub fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Amplitude plus angle chart of one quad.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ExpForm {
    Circular {
        rho: f64,
        phi: f64,
        chi: f64,
        psi: f64,
    },
    Hyperbolic {
        mu: f64,
        y1: f64,
        z1: f64,
        t1: f64,
    },
    Planar {
        rho: f64,
        phi: f64,
        chi: f64,
        psi: f64,
    },
    Polar {
        rho: f64,
        theta_plus: f64,
        theta_minus: f64,
        phi: f64,
    },
}

impl ExpForm {
    pub fn kind(&self) -> Kind {
        match self {
            ExpForm::Circular { .. } => Kind::Circular,
            ExpForm::Hyperbolic { .. } => Kind::Hyperbolic,
            ExpForm::Planar { .. } => Kind::Planar,
            ExpForm::Polar { .. } => Kind::Polar,
        }
    }
}

fn require_positive(value: f64, scale: f64, what: &str) -> Result<()> {
    if value > DEFAULT_TOL * scale.max(DEFAULT_TOL) {
        Ok(())
    } else {
        Err(QuadError::Domain(format!("{what} must be positive")))
    }
}

/// Checks the exponential-form domain and returns the channels.
fn domain_channels(u: &Quad) -> Result<Vec<Complex64>> {
    let d = modulus(u);
    let ch = to_channels(u);
    match u.kind() {
        Kind::Circular | Kind::Planar => {
            require_positive(ch[0].norm(), d, "rho_plus")?;
            require_positive(ch[1].norm(), d, "rho_minus")?;
        }
        Kind::Hyperbolic => {
            for (v, name) in ch.iter().zip(["s", "s1", "s2", "s3"]) {
                require_positive(v.re, d, name)?;
            }
        }
        Kind::Polar => {
            require_positive(ch[0].re, d, "v_plus")?;
            require_positive(ch[1].re, d, "v_minus")?;
            require_positive(ch[2].norm(), d, "mu_plus")?;
        }
    }
    Ok(ch)
}

pub fn exp_form(u: &Quad) -> Result<ExpForm> {
    let ch = domain_channels(u)?;
    Ok(match u.kind() {
        Kind::Circular | Kind::Planar => {
            let (rp, rm) = (ch[0].norm(), ch[1].norm());
            let rho = (rp * rm).sqrt();
            let phi = normalize_angle(ch[0].arg());
            let chi = normalize_angle(ch[1].arg());
            let psi = rp.atan2(rm);
            if u.kind() == Kind::Circular {
                ExpForm::Circular { rho, phi, chi, psi }
            } else {
                ExpForm::Planar { rho, phi, chi, psi }
            }
        }
        Kind::Hyperbolic => {
            let [s0, s1, s2, s3] = [ch[0].re, ch[1].re, ch[2].re, ch[3].re];
            ExpForm::Hyperbolic {
                mu: (s0 * s1 * s2 * s3).sqrt().sqrt(),
                y1: 0.25 * ((s0 * s2) / (s1 * s3)).ln(),
                z1: 0.25 * ((s0 * s1) / (s2 * s3)).ln(),
                t1: 0.25 * ((s0 * s3) / (s1 * s2)).ln(),
            }
        }
        Kind::Polar => {
            let (vp, vm, w) = (ch[0].re, ch[1].re, ch[2]);
            let mu = w.norm();
            ExpForm::Polar {
                rho: (vp * vm).sqrt().sqrt() * mu.sqrt(),
                theta_plus: (SQRT_2 * mu).atan2(vp),
                theta_minus: (SQRT_2 * mu).atan2(vm),
                phi: normalize_angle(w.arg()),
            }
        }
    })
}

/// Exponent `ln u − ln(amplitude)` of the exponential form.
pub(crate) fn exp_form_exponent(f: &ExpForm) -> Quad {
    let h = FRAC_1_SQRT_2;
    let q = |k, c| Quad::raw(k, c);
    match *f {
        ExpForm::Circular { phi, chi, psi, .. } => q(
            Kind::Circular,
            [
                0.0,
                0.5 * (phi + chi),
                0.5 * (phi - chi),
                0.5 * psi.tan().ln(),
            ],
        ),
        ExpForm::Planar { phi, chi, psi, .. } => {
            let l = psi.tan().ln();
            let a = 0.5 * h * (phi + chi);
            q(
                Kind::Planar,
                [0.0, a + 0.5 * h * l, 0.5 * (phi - chi), a - 0.5 * h * l],
            )
        }
        ExpForm::Hyperbolic { y1, z1, t1, .. } => q(Kind::Hyperbolic, [0.0, y1, z1, t1]),
        ExpForm::Polar {
            theta_plus,
            theta_minus,
            phi,
            ..
        } => {
            let lp = 0.25 * (SQRT_2 / theta_plus.tan()).ln();
            let lm = 0.25 * (SQRT_2 / theta_minus.tan()).ln();
            let k = Kind::Polar;
            q(k, [0.0, lp, lp, lp]) - q(k, [0.0, lm, -lm, lm])
                + q(k, [0.0, 0.5 * phi, 0.0, -0.5 * phi])
        }
    }
}

fn exp_form_amplitude(f: &ExpForm) -> f64 {
    match *f {
        ExpForm::Circular { rho, .. }
        | ExpForm::Planar { rho, .. }
        | ExpForm::Polar { rho, .. } => rho,
        ExpForm::Hyperbolic { mu, .. } => mu,
    }
}

/// `amplitude · exp(angle combination)`.
pub fn from_exp_form(f: &ExpForm) -> Quad {
    exp(&exp_form_exponent(f)).scale(exp_form_amplitude(f))
}

/// Modulus plus angle chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TrigForm {
    Circular {
        d: f64,
        phi: f64,
        chi: f64,
        psi: f64,
    },
    /// `s = 2d cosψ cosφ, s′ = 2d cosψ sinφ, s″ = 2d sinψ cosχ, s‴ = 2d sinψ sinχ`.
    Hyperbolic {
        d: f64,
        phi: f64,
        chi: f64,
        psi: f64,
    },
    Planar {
        d: f64,
        phi: f64,
        chi: f64,
        psi: f64,
    },
    /// Polar angles plus the alternative `(θ, λ)` view.
    Polar {
        d: f64,
        theta_plus: f64,
        theta_minus: f64,
        phi: f64,
        theta: f64,
        lambda: f64,
    },
}

pub fn trig_form(u: &Quad) -> Result<TrigForm> {
    let ch = domain_channels(u)?;
    let d = modulus(u);
    let e = exp_form(u)?;
    Ok(match e {
        ExpForm::Circular { phi, chi, psi, .. } => TrigForm::Circular { d, phi, chi, psi },
        ExpForm::Planar { phi, chi, psi, .. } => TrigForm::Planar { d, phi, chi, psi },
        ExpForm::Hyperbolic { .. } => {
            let [s0, s1, s2, s3] = [ch[0].re, ch[1].re, ch[2].re, ch[3].re];
            TrigForm::Hyperbolic {
                d,
                phi: s1.atan2(s0),
                chi: s3.atan2(s2),
                psi: s2.hypot(s3).atan2(s0.hypot(s1)),
            }
        }
        ExpForm::Polar {
            theta_plus,
            theta_minus,
            phi,
            ..
        } => {
            let (vp, vm, mu) = (ch[0].re, ch[1].re, ch[2].norm());
            TrigForm::Polar {
                d,
                theta_plus,
                theta_minus,
                phi,
                theta: (SQRT_2 * mu / (2.0 * d)).clamp(-1.0, 1.0).acos(),
                lambda: vm.atan2(vp),
            }
        }
    })
}

/// Rebuilds the quad from its trigonometric form.
pub fn from_trig_form(f: &TrigForm) -> Quad {
    let h = FRAC_1_SQRT_2;
    match *f {
        TrigForm::Circular { d, phi, chi, psi } => {
            let k = Kind::Circular;
            let a = psi - FRAC_PI_4;
            let lead = Quad::raw(k, [d * a.cos(), 0.0, 0.0, d * a.sin()]);
            lead * exp(&Quad::raw(
                k,
                [0.0, 0.5 * (phi + chi), 0.5 * (phi - chi), 0.0],
            ))
        }
        TrigForm::Planar { d, phi, chi, psi } => {
            let k = Kind::Planar;
            let a = psi - FRAC_PI_4;
            let s = d * a.sin() * h;
            let lead = Quad::raw(k, [d * a.cos(), s, 0.0, -s]);
            let p = 0.5 * h * (phi + chi);
            lead * exp(&Quad::raw(k, [0.0, p, 0.5 * (phi - chi), p]))
        }
        TrigForm::Hyperbolic { d, phi, chi, psi } => {
            let mu = d
                * (2.0 * psi).sin().sqrt()
                * (2.0 * phi).sin().sqrt().sqrt()
                * (2.0 * chi).sin().sqrt().sqrt();
            let y1 = 0.25 * (1.0 / (phi.tan() * chi.tan())).ln();
            let z1 = 0.25 * ((2.0 * phi).sin() / (psi.tan().powi(2) * (2.0 * chi).sin())).ln();
            let t1 = 0.25 * (chi.tan() / phi.tan()).ln();
            exp(&Quad::raw(Kind::Hyperbolic, [0.0, y1, z1, t1])).scale(mu)
        }
        TrigForm::Polar {
            d,
            theta_plus,
            theta_minus,
            phi,
            ..
        } => {
            let k = Kind::Polar;
            let (cp, cm) = (1.0 / theta_plus.tan(), 1.0 / theta_minus.tan());
            let scale = d * SQRT_2 / (1.0 + cp * cp + cm * cm).sqrt();
            let [ep, em, e1, _] = canonical_basis(k);
            let lead = e1 + ep.scale(SQRT_2 * cp) + em.scale(SQRT_2 * cm);
            (lead * exp(&Quad::raw(k, [0.0, 0.5 * phi, 0.0, -0.5 * phi]))).scale(scale)
        }
    }
}

/// Polar trigonometric form in the `(θ, λ)` chart.
pub fn polar_from_theta_lambda(d: f64, theta: f64, lambda: f64, phi: f64) -> Quad {
    let k = Kind::Polar;
    let [ep, em, e1, _] = canonical_basis(k);
    let lead = e1.scale(theta.cos())
        + ep.scale(SQRT_2 * theta.sin() * lambda.cos())
        + em.scale(SQRT_2 * theta.sin() * lambda.sin());
    (lead * exp(&Quad::raw(k, [0.0, 0.5 * phi, 0.0, -0.5 * phi]))).scale(d * SQRT_2)
}

/// Lattice of logarithm periods: adding any integer combination of these to
/// `ln u` leaves `exp` unchanged.
pub fn log_periods(kind: Kind) -> Vec<Quad> {
    let i = Complex64::new(0.0, TAU);
    match kind {
        Kind::Hyperbolic => Vec::new(),
        Kind::Circular | Kind::Planar => vec![channel_unit(kind, 0, i), channel_unit(kind, 1, i)],
        Kind::Polar => vec![channel_unit(kind, 2, i)],
    }
}

/// Angle `a` reduced to `(-π, π]`, used for comparisons modulo 2π.
pub fn wrap_pi(a: f64) -> f64 {
    let r = normalize_angle(a + PI) - PI;
    if r <= -PI {
        r + TAU
    } else {
        r
    }
}
