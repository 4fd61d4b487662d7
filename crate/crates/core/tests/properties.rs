//! Property-based tests for the algebraic and analytic invariants.

mod common;

use common::{rel_diff, series_exp, series_trig};
use proptest::prelude::*;
use quadfield::algebra::{amplitude, inverse, modulus, pow_int, singularity};
use quadfield::calculus::{eval_series, eval_series_canonical, SeriesSpec};
use quadfield::canonical::{
    canonical_mul, exp_form, from_canonical, from_exp_form, from_frame, from_trig_form,
    log_periods, to_canonical, to_frame, trig_form,
};
use quadfield::elementary::{cos, cosh, exp, log, pow_real, sin, sinh};
use quadfield::matrix_rep::{block_diagonalize, determinant, off_block_max, represent};
use quadfield::polynomial::{eval_poly, factor, real_factors, reconstruct, Poly};
use quadfield::{Kind, Quad};

fn kind() -> impl Strategy<Value = Kind> {
    prop::sample::select(Kind::ALL.to_vec())
}

fn comps(w: f64) -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(-w..w)
}

fn quad_pair(w: f64) -> impl Strategy<Value = (Quad, Quad)> {
    (kind(), comps(w), comps(w)).prop_map(|(k, a, b)| {
        (
            Quad::from_array(k, a).unwrap(),
            Quad::from_array(k, b).unwrap(),
        )
    })
}

fn quad_triple(w: f64) -> impl Strategy<Value = (Quad, Quad, Quad)> {
    (kind(), comps(w), comps(w), comps(w)).prop_map(|(k, a, b, c)| {
        (
            Quad::from_array(k, a).unwrap(),
            Quad::from_array(k, b).unwrap(),
            Quad::from_array(k, c).unwrap(),
        )
    })
}

fn any_quad(w: f64) -> impl Strategy<Value = Quad> {
    (kind(), comps(w)).prop_map(|(k, a)| Quad::from_array(k, a).unwrap())
}

/// Quads at least `1e-2` (relative) away from every nodal set.
fn regular_quad(w: f64) -> impl Strategy<Value = Quad> {
    any_quad(w).prop_filter("near a nodal set", |u| singularity(u, 1e-12).margin > 1e-2)
}

/// Quads inside the exponential-form domain, away from its boundary.
fn form_quad(w: f64) -> impl Strategy<Value = Quad> {
    regular_quad(w).prop_filter("outside the exponential-form domain", |u| {
        exp_form(u).is_ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn multiplication_commutes_exactly((u, v) in quad_pair(2.0)) {
        prop_assert_eq!((u * v).to_array(), (v * u).to_array());
    }

    #[test]
    fn multiplication_associates_and_distributes((u, v, w) in quad_triple(2.0)) {
        let scale = modulus(&u) * modulus(&v) * modulus(&w) + 1e-300;
        prop_assert!(((u * v) * w).distance(&(u * (v * w))) <= 1e-12 * scale.max(1.0));
        prop_assert!((u * (v + w)).distance(&(u * v + u * w)) <= 1e-12 * (modulus(&u) * (modulus(&v) + modulus(&w))).max(1.0));
    }

    #[test]
    fn modulus_product_bound((u, v) in quad_pair(3.0)) {
        prop_assert!(modulus(&(u * v)) <= u.kind().product_bound() * modulus(&u) * modulus(&v));
    }

    #[test]
    fn amplitude_is_multiplicative((u, v) in quad_pair(2.0)) {
        let (a, b, ab) = (amplitude(&u).nu, amplitude(&v).nu, amplitude(&(u * v)).nu);
        prop_assert!((ab - a * b).abs() <= 1e-10 * (modulus(&u) * modulus(&v)).powi(4).max(1.0));
    }

    #[test]
    fn inverse_is_two_sided(u in regular_quad(2.0)) {
        let inv = inverse(&u).unwrap();
        prop_assert!((u * inv).distance(&Quad::one(u.kind())) <= 1e-10);
        prop_assert!((inv * u).distance(&Quad::one(u.kind())) <= 1e-10);
    }

    #[test]
    fn negative_powers_invert_positive_powers(u in regular_quad(1.5), m in 1i64..5) {
        let p = pow_int(&u, m).unwrap();
        let n = pow_int(&u, -m).unwrap();
        prop_assert!((p * n).distance(&Quad::one(u.kind())) <= 1e-8);
    }

    #[test]
    fn canonical_round_trip_and_product((u, v) in quad_pair(2.0)) {
        prop_assert!(from_canonical(&to_canonical(&u)).distance(&u) <= 1e-14 * modulus(&u).max(1.0));
        let split = canonical_mul(&to_canonical(&u), &to_canonical(&v)).unwrap();
        let direct = to_canonical(&(u * v));
        let err = (0..4).map(|i| (split.c[i] - direct.c[i]).abs()).fold(0.0, f64::max);
        prop_assert!(err <= 1e-12 * (modulus(&u) * modulus(&v)).max(1.0));
    }

    #[test]
    fn frame_is_an_isometry(u in any_quad(3.0)) {
        let f = to_frame(&u);
        let norm = f.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assert!((norm - modulus(&u)).abs() <= 1e-14 * modulus(&u).max(1.0));
        prop_assert!(from_frame(u.kind(), f).distance(&u) <= 1e-14 * modulus(&u).max(1.0));
    }

    #[test]
    fn circular_planar_canonical_isometry(c in comps(3.0), planar in any::<bool>()) {
        let k = if planar { Kind::Planar } else { Kind::Circular };
        let u = Quad::from_array(k, c).unwrap();
        let cc = to_canonical(&u).c;
        let n2: f64 = cc.iter().map(|v| v * v).sum();
        prop_assert!((n2 - modulus(&u).powi(2)).abs() <= 1e-13 * n2.max(1.0));
    }

    #[test]
    fn represent_is_a_homomorphism((u, v) in quad_pair(2.0)) {
        let lhs = represent(&(u * v));
        let rhs = represent(&u) * represent(&v);
        prop_assert!((lhs - rhs).amax() <= 1e-12 * (modulus(&u) * modulus(&v)).max(1.0));
        prop_assert!((represent(&(u + v)) - represent(&u) - represent(&v)).amax() <= 1e-15 * (modulus(&u) + modulus(&v)).max(1.0));
    }

    #[test]
    fn determinant_matches_nu(u in any_quad(2.0)) {
        let nu = amplitude(&u).nu;
        prop_assert!((determinant(&represent(&u)) - nu).abs() <= 1e-9 * modulus(&u).powi(4).max(1e-300));
    }

    #[test]
    fn block_diagonal_pattern(u in any_quad(2.0)) {
        prop_assert!(off_block_max(u.kind(), &block_diagonalize(&u)) <= 1e-12 * modulus(&u).max(1.0));
    }

    #[test]
    fn exp_matches_series(u in any_quad(1.0)) {
        prop_assert!(rel_diff(&exp(&u), &series_exp(&u, 40)) <= 1e-10);
    }

    #[test]
    fn exp_addition_theorem((u, v) in quad_pair(0.5)) {
        prop_assert!(rel_diff(&exp(&(u + v)), &(exp(&u) * exp(&v))) <= 1e-9);
    }

    #[test]
    fn trig_and_hyperbolic_match_series(u in any_quad(1.0)) {
        let [c, s, ch, sh] = series_trig(&u, 30);
        prop_assert!(rel_diff(&cos(&u), &c) <= 1e-9);
        prop_assert!(rel_diff(&sin(&u), &s) <= 1e-9);
        prop_assert!(rel_diff(&cosh(&u), &ch) <= 1e-9);
        prop_assert!(rel_diff(&sinh(&u), &sh) <= 1e-9);
    }

    #[test]
    fn pythagorean_identities(u in any_quad(1.0)) {
        let one = Quad::one(u.kind());
        let (c, s) = (cos(&u), sin(&u));
        prop_assert!(rel_diff(&(c * c + s * s), &one) <= 1e-9);
        let (ch, sh) = (cosh(&u), sinh(&u));
        prop_assert!(rel_diff(&(ch * ch - sh * sh), &one) <= 1e-9);
    }

    #[test]
    fn trig_addition_theorems((u, v) in quad_pair(0.7)) {
        let lhs = cos(&(u + v));
        let rhs = cos(&u) * cos(&v) - sin(&u) * sin(&v);
        prop_assert!(rel_diff(&lhs, &rhs) <= 1e-9);
        let lhs = sinh(&(u + v));
        let rhs = sinh(&u) * cosh(&v) + cosh(&u) * sinh(&v);
        prop_assert!(rel_diff(&lhs, &rhs) <= 1e-9);
    }

    #[test]
    fn exp_of_log_is_identity(u in form_quad(2.0)) {
        prop_assert!(exp(&log(&u).unwrap()).distance(&u) <= 1e-10 * modulus(&u));
    }

    #[test]
    fn log_of_product_up_to_periods((u, v) in (form_quad(2.0), form_quad(2.0)).prop_filter("kinds differ", |(u, v)| u.kind() == v.kind())) {
        let Ok(luv) = log(&(u * v)) else { return Ok(()) };
        let diff = luv - log(&u).unwrap() - log(&v).unwrap();
        let periods = log_periods(u.kind());
        // Reduce the difference by integer multiples of each period.
        let mut rest = diff;
        for p in &periods {
            let n = (rest.to_array().iter().zip(p.to_array()).map(|(a, b)| a * b).sum::<f64>()
                / p.to_array().iter().map(|b| b * b).sum::<f64>())
                .round();
            rest = rest - p.scale(n);
        }
        prop_assert!(modulus(&rest) <= 1e-9, "residual {}", rest);
    }

    #[test]
    fn pow_real_agrees_with_pow_int(u in form_quad(1.5), m in 1i64..4) {
        let a = pow_real(&u, m as f64).unwrap();
        let b = pow_int(&u, m).unwrap();
        prop_assert!(a.distance(&b) <= 1e-9 * modulus(&b).max(1.0));
    }

    #[test]
    fn exp_form_round_trip(u in form_quad(2.0)) {
        let f = exp_form(&u).unwrap();
        prop_assert!(from_exp_form(&f).distance(&u) <= 1e-10 * modulus(&u));
        let t = trig_form(&u).unwrap();
        prop_assert!(from_trig_form(&t).distance(&u) <= 1e-10 * modulus(&u));
    }

    #[test]
    fn exp_form_json_round_trip(u in form_quad(2.0)) {
        let f = exp_form(&u).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<quadfield::canonical::ExpForm>(&s).unwrap(), f);
    }

    #[test]
    fn quad_json_round_trip(u in any_quad(1e6)) {
        let s = serde_json::to_string(&u).unwrap();
        prop_assert_eq!(serde_json::from_str::<Quad>(&s).unwrap(), u);
    }

    #[test]
    fn series_evaluation_paths_agree(k in kind(), coeffs in prop::collection::vec(comps(1.0), 1..12), c in comps(0.4)) {
        let spec = SeriesSpec::new(coeffs.into_iter().map(|a| Quad::from_array(k, a).unwrap()).collect()).unwrap();
        let u = Quad::from_array(k, c).unwrap();
        let a = eval_series(&spec, &u).unwrap();
        let b = eval_series_canonical(&spec, &u).unwrap();
        prop_assert!(rel_diff(&a, &b) <= 1e-10);
    }

    #[test]
    fn factorization_reconstructs(k in kind(), coeffs in prop::collection::vec(comps(0.5), 1..6)) {
        let mut all = vec![Quad::one(k)];
        all.extend(coeffs.into_iter().map(|a| Quad::from_array(k, a).unwrap()));
        let p = Poly::new(all).unwrap();
        let f = factor(&p).unwrap();
        let back = reconstruct(&f).unwrap();
        for (a, b) in back.coeffs().iter().zip(p.coeffs()) {
            prop_assert!(a.distance(b) <= 1e-7 * (1.0 + modulus(b)));
        }
        for r in f.roots.iter().filter_map(|r| r.to_quad()) {
            prop_assert!(modulus(&eval_poly(&p, &r).unwrap()) <= 1e-7);
        }
        prop_assert!(real_factors(&f).is_some());
    }
}
