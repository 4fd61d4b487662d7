#![allow(dead_code)]

use quadfield::algebra::modulus;
use quadfield::{Kind, Quad};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn quad(kind: Kind, c: [f64; 4]) -> Quad {
    Quad::from_array(kind, c).unwrap()
}

pub fn random_quad(r: &mut impl Rng, kind: Kind, half_width: f64) -> Quad {
    quad(
        kind,
        std::array::from_fn(|_| r.random_range(-half_width..=half_width)),
    )
}

/// Truncated `Σ uⁿ/n!`, built only from multiplication.
pub fn series_exp(u: &Quad, terms: usize) -> Quad {
    let mut term = Quad::one(u.kind());
    let mut sum = term;
    for n in 1..terms {
        term = (term * *u).scale(1.0 / n as f64);
        sum = sum + term;
    }
    sum
}

/// Truncated series of `cos`, `sin`, `cosh`, `sinh` as `(even_alt, odd_alt, even, odd)`.
pub fn series_trig(u: &Quad, terms: usize) -> [Quad; 4] {
    let k = u.kind();
    let mut acc = [Quad::zero(k); 4];
    let mut term = Quad::one(k);
    for n in 0..2 * terms {
        if n > 0 {
            term = (term * *u).scale(1.0 / n as f64);
        }
        let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if n % 2 == 0 {
            acc[0] = acc[0] + term.scale(sign);
            acc[2] = acc[2] + term;
        } else {
            acc[1] = acc[1] + term.scale(sign);
            acc[3] = acc[3] + term;
        }
    }
    acc
}

pub fn rel_diff(a: &Quad, b: &Quad) -> f64 {
    a.distance(b) / modulus(b).max(1.0)
}
