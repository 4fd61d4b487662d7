use std::process::{Command, Output};

use quadfield::canonical::ExpForm;
use quadfield::polynomial::{Factor, Root};
use quadfield::{Kind, Quad};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadfield"))
        .args(args)
        .env_remove("QUADFIELD_TOL")
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .trim_end()
        .to_string()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn error_json(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    assert_eq!(text.trim_end().lines().count(), 1, "{text}");
    serde_json::from_str(text.trim_end()).unwrap()
}

#[test]
fn eval_product_of_units() {
    assert_eq!(
        stdout(&["eval", "--kind", "circular", "--op", "mul", "--a", "0,1,0,0", "--b", "0,0,1,0"]),
        "0,0,0,-1"
    );
    assert_eq!(
        stdout(&["eval", "--kind", "polar", "--op", "mul", "--a", "0,1,0,0", "--b", "0,0,0,1"]),
        "1,0,0,0"
    );
    assert_eq!(
        stdout(&[
            "eval",
            "--kind",
            "hyperbolic",
            "--op",
            "amplitude",
            "--a",
            "2,0,0,0"
        ]),
        "16,2"
    );
    assert_eq!(
        stdout(&["eval", "--kind", "circular", "--op", "modulus", "--a", "3,4,0,0"]),
        "5"
    );
}

#[test]
fn eval_accepts_negative_components_and_json_quads() {
    let a = r#"{"kind":"planar","x":0.5,"y":-1.25,"z":0.0,"t":2.0}"#;
    let via_json = stdout(&[
        "eval", "--kind", "planar", "--op", "exp", "--a", a, "--format", "json",
    ]);
    let via_csv = stdout(&[
        "eval",
        "--kind",
        "planar",
        "--op",
        "exp",
        "--a",
        "0.5,-1.25,0,2",
        "--format",
        "json",
    ]);
    assert_eq!(via_json, via_csv);
    let q: Quad = serde_json::from_str(&via_json).unwrap();
    assert_eq!(
        q,
        quadfield::elementary::exp(&Quad::new(Kind::Planar, 0.5, -1.25, 0.0, 2.0).unwrap())
    );
}

#[test]
fn json_quads_round_trip_bit_for_bit() {
    let out = stdout(&[
        "eval",
        "--kind",
        "circular",
        "--op",
        "div",
        "--a",
        "0.3,0.7,-0.1,1e-3",
        "--b",
        "2,0.1,0.3,0.5",
        "--format",
        "json",
    ]);
    let again = stdout(&[
        "eval", "--kind", "circular", "--op", "add", "--a", &out, "--b", "0,0,0,0", "--format",
        "json",
    ]);
    assert_eq!(out, again);
}

#[test]
fn cosexp_table_matches_closed_forms() {
    let text = stdout(&[
        "cosexp", "--family", "g", "--from", "0", "--to", "1", "--step", "1", "--format", "csv",
    ]);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0], "0,1,0,0,0");
    let got: Vec<f64> = rows[1].split(',').map(|v| v.parse().unwrap()).collect();
    let (ch, c, sh, s) = (1f64.cosh(), 1f64.cos(), 1f64.sinh(), 1f64.sin());
    let want = [
        1.0,
        (ch + c) / 2.0,
        (sh + s) / 2.0,
        (ch - c) / 2.0,
        (sh - s) / 2.0,
    ];
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() <= 5e-9 * w.abs().max(1.0), "{g} vs {w}");
    }
    assert!((got[4] - 0.16686510).abs() < 1e-8);
}

#[test]
fn cosexp_digits_and_json() {
    let text = stdout(&[
        "cosexp", "--family", "f", "--from", "-1", "--to", "1", "--step", "0.5", "--digits", "4",
    ]);
    assert_eq!(text.lines().count(), 5);
    for line in text.lines() {
        for v in line.split(',') {
            let mantissa = v
                .trim_start_matches('-')
                .split('e')
                .next()
                .unwrap()
                .replace('.', "");
            assert!(mantissa.trim_start_matches('0').len() <= 4, "{v}");
        }
    }
    let rows = json(&[
        "cosexp", "--family", "f", "--from", "0", "--to", "2", "--step", "1", "--format", "json",
    ]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2]["x"], 2.0);
    let f = quadfield::elementary::cosexp_all(quadfield::elementary::CosexpFamily::PlanarF, 2.0);
    assert_eq!(rows[2]["f41"].as_f64().unwrap(), f[1]);
}

#[test]
fn hyperbolic_factorizations_are_enumerated() {
    let v = json(&[
        "factor",
        "--kind",
        "hyperbolic",
        "--coeffs",
        "[1,0,-1]",
        "--enumerate",
        "10",
    ]);
    assert_eq!(v["count"], 8);
    let polar = json(&[
        "factor",
        "--kind",
        "polar",
        "--coeffs",
        "[1,0,-1]",
        "--enumerate",
        "10",
    ]);
    assert_eq!(polar["count"], 4);
}

#[test]
fn factors_expand_back_to_the_polynomial() {
    let v = json(&[
        "factor",
        "--kind",
        "polar",
        "--coeffs",
        "[1,-0.5,[0,1,0,0],0.25]",
    ]);
    let entry = &v["factorizations"][0];
    let roots: Vec<Root> = serde_json::from_value(entry["roots"].clone()).unwrap();
    assert_eq!(roots.len(), 3);
    let factors: Vec<Factor> = serde_json::from_value(entry["factors"].clone()).unwrap();
    let back = json(&["factor", "--expand", &entry["factors"].to_string()]);
    let coeffs: Vec<Quad> = serde_json::from_value(back["coeffs"].clone()).unwrap();
    let want = [
        [1.0, 0.0, 0.0, 0.0],
        [-0.5, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.25, 0.0, 0.0, 0.0],
    ];
    for (c, w) in coeffs.iter().zip(want) {
        assert!(
            c.distance(&Quad::from_array(Kind::Polar, w).unwrap()) < 1e-9,
            "{c}"
        );
    }
    assert!(!factors.is_empty());
}

#[test]
fn exponential_forms_round_trip() {
    for (kind, u) in [
        ("circular", "0.3,-0.4,1.2,0.1"),
        ("planar", "0.5,1,0.7,0.1"),
        ("polar", "0.5,1,0.7,0.1"),
        ("hyperbolic", "2,0.3,0.2,0.1"),
    ] {
        let form = stdout(&["expform", "--kind", kind, "--u", u]);
        let parsed: ExpForm = serde_json::from_str(&form).unwrap();
        assert_eq!(serde_json::to_string(&parsed).unwrap(), form);
        let q: Quad = serde_json::from_str(&stdout(&["expform", "--inverse", &form])).unwrap();
        let want: Vec<f64> = u.split(',').map(|v| v.parse().unwrap()).collect();
        assert!(
            q.to_array()
                .iter()
                .zip(&want)
                .all(|(a, b)| (a - b).abs() < 1e-12),
            "{kind}"
        );

        let trig = stdout(&["expform", "--kind", kind, "--u", u, "--trig"]);
        let q: Quad =
            serde_json::from_str(&stdout(&["expform", "--trig", "--inverse", &trig])).unwrap();
        assert!(
            q.to_array()
                .iter()
                .zip(&want)
                .all(|(a, b)| (a - b).abs() < 1e-12),
            "{kind} trig"
        );
    }
}

#[test]
fn integrate_reports_result_and_prediction() {
    let lp = r#"{"circle":{"plane":"plus","center":{"kind":"circular","x":0,"y":0,"z":0,"t":0},"radius":1}}"#;
    let v = json(&[
        "integrate",
        "--loop",
        lp,
        "--integrand",
        "pole",
        "--pole",
        "0,0,0,0",
    ]);
    let result: Quad = serde_json::from_value(v["result"].clone()).unwrap();
    let pi = std::f64::consts::PI;
    assert!(result.distance(&Quad::new(Kind::Circular, 0.0, pi, pi, 0.0).unwrap()) < 1e-6);
    assert!(v["max_error"].as_f64().unwrap() < 1e-6);
    let seq = json(&[
        "integrate",
        "--loop",
        lp,
        "--integrand",
        "exp",
        "--pole",
        "0.1,0,0,0",
        "--exec",
        "sequential",
    ]);
    let par = json(&[
        "integrate",
        "--loop",
        lp,
        "--integrand",
        "exp",
        "--pole",
        "0.1,0,0,0",
        "--exec",
        "parallel",
    ]);
    assert_eq!(seq, par);
}

#[test]
fn integrate_reads_loops_from_files() {
    let path = std::env::temp_dir().join(format!("quadfield-loop-{}.json", std::process::id()));
    let verts: Vec<Quad> = (0..=16)
        .map(|i| {
            let a = std::f64::consts::TAU * (i % 16) as f64 / 16.0;
            Quad::new(Kind::Hyperbolic, 3.0 + a.cos(), a.sin(), 0.0, 0.0).unwrap()
        })
        .collect();
    std::fs::write(&path, serde_json::json!({ "polyline": verts }).to_string()).unwrap();
    let arg = format!("@{}", path.display());
    let v = json(&[
        "integrate",
        "--loop",
        &arg,
        "--integrand",
        "square",
        "--pole",
        "0,0,0,0",
    ]);
    std::fs::remove_file(&path).unwrap();
    assert!(v["max_error"].as_f64().unwrap() < 1e-12);
}

#[test]
fn matrix_views() {
    let rows = stdout(&[
        "matrix",
        "--kind",
        "hyperbolic",
        "--u",
        "1,2,3,4",
        "--block",
    ]);
    let diag: Vec<Vec<f64>> = rows
        .lines()
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    let want = [10.0, -2.0, -4.0, 0.0];
    for (i, row) in diag.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let w = if i == j { want[i] } else { 0.0 };
            assert!((v - w).abs() < 1e-12);
        }
    }
    let v = json(&[
        "matrix", "--kind", "circular", "--u", "1,0,0,1", "--format", "json",
    ]);
    assert!(v["determinant"].as_f64().unwrap().abs() < 1e-15);
}

#[test]
fn domain_errors_exit_with_two() {
    let out = run(&[
        "eval", "--kind", "circular", "--op", "inv", "--a", "1,0,0,1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_json(&out)["error"], "singular_value");
    let out = run(&[
        "eval",
        "--kind",
        "hyperbolic",
        "--op",
        "log",
        "--a",
        "-1,0,0,0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_json(&out)["error"], "domain_error");
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_with_one() {
    for args in [
        &["eval", "--kind", "bogus", "--op", "mul", "--a", "1,0,0,0"][..],
        &["eval", "--kind", "circular", "--op", "mul", "--a", "1,0,0"],
        &[
            "eval", "--kind", "circular", "--op", "mul", "--a", "1,0,0,0",
        ],
        &["factor", "--kind", "circular", "--coeffs", "[2,0,1]"],
        &[
            "cosexp", "--family", "g", "--from", "1", "--to", "0", "--step", "1",
        ],
        &["nonsense"],
    ] {
        assert_eq!(run(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn help_and_version_exit_with_zero() {
    for flag in ["--help", "--version"] {
        let out = run(&[flag]);
        assert_eq!(out.status.code(), Some(0));
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn tolerance_comes_from_the_environment() {
    let args = [
        "eval",
        "--kind",
        "circular",
        "--op",
        "inv",
        "--a",
        "1,0.1,0,0.95",
    ];
    assert_eq!(run(&args).status.code(), Some(0));
    let loose = Command::new(env!("CARGO_BIN_EXE_quadfield"))
        .args(args)
        .env("QUADFIELD_TOL", "0.5")
        .output()
        .unwrap();
    assert_eq!(loose.status.code(), Some(2));
    let bad = Command::new(env!("CARGO_BIN_EXE_quadfield"))
        .args(args)
        .env("QUADFIELD_TOL", "abc")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "factor",
        "--kind",
        "hyperbolic",
        "--coeffs",
        "[1,0.3,-1.2,0.1]",
        "--enumerate",
        "20",
    ];
    assert_eq!(stdout(&args), stdout(&args));
}
