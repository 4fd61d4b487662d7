//! Real 4×4 matrix representation and its block diagonalization.
//!
//! Row `j` of `represent(u)` holds the components of `u·e_j`, so that
//! `represent(uv) = represent(u)·represent(v)`.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::Matrix4;

use crate::algebra::{Kind, Quad};

pub fn represent(u: &Quad) -> Matrix4<f64> {
    let [x, y, z, t] = u.to_array();
    match u.kind() {
        Kind::Circular => Matrix4::new(
            x, y, z, t, //
            -y, x, t, -z, //
            -z, t, x, -y, //
            t, z, y, x,
        ),
        Kind::Hyperbolic => Matrix4::new(
            x, y, z, t, //
            y, x, t, z, //
            z, t, x, y, //
            t, z, y, x,
        ),
        Kind::Planar => Matrix4::new(
            x, y, z, t, //
            -t, x, y, z, //
            -z, -t, x, y, //
            -y, -z, -t, x,
        ),
        Kind::Polar => Matrix4::new(
            x, y, z, t, //
            t, x, y, z, //
            z, t, x, y, //
            y, z, t, x,
        ),
    }
}

/// Determinant by LU decomposition with partial pivoting.
pub fn determinant(m: &Matrix4<f64>) -> f64 {
    m.lu().determinant()
}

/// The fixed orthogonal change of basis `T` for each kind.
pub fn transform_matrix(kind: Kind) -> Matrix4<f64> {
    let r = FRAC_1_SQRT_2;
    match kind {
        Kind::Circular => Matrix4::new(
            r, 0.0, 0.0, r, //
            0.0, r, r, 0.0, //
            r, 0.0, 0.0, -r, //
            0.0, r, -r, 0.0,
        ),
        Kind::Planar => Matrix4::new(
            r, 0.5, 0.0, -0.5, //
            0.0, 0.5, r, 0.5, //
            r, -0.5, 0.0, 0.5, //
            0.0, 0.5, -r, 0.5,
        ),
        Kind::Hyperbolic => Matrix4::new(
            0.5, 0.5, 0.5, 0.5, //
            0.5, -0.5, 0.5, -0.5, //
            0.5, 0.5, -0.5, -0.5, //
            0.5, -0.5, -0.5, 0.5,
        ),
        Kind::Polar => Matrix4::new(
            0.5, 0.5, 0.5, 0.5, //
            0.5, -0.5, 0.5, -0.5, //
            r, 0.0, -r, 0.0, //
            0.0, r, 0.0, -r,
        ),
    }
}

/// `T · represent(u) · Tᵀ`; `T` is orthogonal, so `Tᵀ = T⁻¹`.
pub fn block_diagonalize(u: &Quad) -> Matrix4<f64> {
    let t = transform_matrix(u.kind());
    t * represent(u) * t.transpose()
}

/// Indices `(row, col)` allowed to be nonzero in the block-diagonal form.
pub fn block_pattern(kind: Kind) -> Vec<(usize, usize)> {
    match kind {
        Kind::Hyperbolic => (0..4).map(|i| (i, i)).collect(),
        Kind::Polar => vec![(0, 0), (1, 1), (2, 2), (2, 3), (3, 2), (3, 3)],
        Kind::Circular | Kind::Planar => {
            vec![
                (0, 0),
                (0, 1),
                (1, 0),
                (1, 1),
                (2, 2),
                (2, 3),
                (3, 2),
                (3, 3),
            ]
        }
    }
}

/// Largest magnitude outside the kind's block pattern.
pub fn off_block_max(kind: Kind, m: &Matrix4<f64>) -> f64 {
    let keep = block_pattern(kind);
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if !keep.contains(&(i, j)) {
                worst = worst.max(m[(i, j)].abs());
            }
        }
    }
    worst
}
