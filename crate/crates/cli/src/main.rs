mod format;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use quadfield::algebra::{amplitude, inverse_with_tol, modulus, pow_int_with_tol, singularity};
use quadfield::calculus::{integrate_loop_with, Integrand, Loop};
use quadfield::canonical::{
    exp_form, from_exp_form, from_trig_form, to_canonical, trig_form, ExpForm, TrigForm,
};
use quadfield::elementary::{cos, cosexp_all, cosh, exp, log, pow_real, sin, sinh, CosexpFamily};
use quadfield::matrix_rep::{block_diagonalize, determinant, represent};
use quadfield::polynomial::{enumerate_factorizations, expand, factor, real_factors, Factor, Poly};
use quadfield::{Exec, Kind, Quad, QuadError, DEFAULT_TOL};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

const TOL_VAR: &str = "QUADFIELD_TOL";

#[derive(Parser)]
#[command(
    name = "quadfield",
    version,
    about = "Arithmetic and analysis for four-dimensional commutative numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Exp,
    Log,
    Pow,
    Cos,
    Sin,
    Cosh,
    Sinh,
    Amplitude,
    Modulus,
    Singularity,
    Canonical,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    F,
    G,
}

#[derive(Clone, Copy, ValueEnum)]
enum IntegrandName {
    Pole,
    PoleM,
    Square,
    Exp,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExecArg {
    Sequential,
    Parallel,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an operation on one or two quads given as x,y,z,t or JSON.
    Eval {
        #[arg(long)]
        kind: Kind,
        #[arg(long)]
        op: Op,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        /// Exponent for `pow`; integers use repeated squaring.
        #[arg(long, allow_hyphen_values = true)]
        n: Option<f64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, default_value_t = 9)]
        digits: usize,
    },
    /// Exponential (or trigonometric) form of a quad, or the quad of a form.
    Expform {
        #[arg(long, required_unless_present = "inverse")]
        kind: Option<Kind>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "inverse")]
        u: Option<String>,
        #[arg(long)]
        trig: bool,
        /// A form as emitted by this command; prints the quad it describes.
        #[arg(long, conflicts_with_all = ["kind", "u"])]
        inverse: Option<String>,
    },
    /// Roots and real factors of a monic polynomial.
    Factor {
        #[arg(long, required_unless_present = "expand")]
        kind: Option<Kind>,
        /// JSON array, leading coefficient first: numbers, [x,y,z,t] arrays or quad objects.
        #[arg(long, required_unless_present = "expand")]
        coeffs: Option<String>,
        /// List up to this many distinct factorizations.
        #[arg(long)]
        enumerate: Option<usize>,
        /// A JSON factor list; prints the expanded coefficients.
        #[arg(long, conflicts_with_all = ["kind", "coeffs", "enumerate"])]
        expand: Option<String>,
    },
    /// Loop integral of a built-in integrand with its predicted value.
    Integrate {
        /// Loop as JSON, or @path to a JSON file.
        #[arg(long = "loop")]
        lp: String,
        #[arg(long, value_enum)]
        integrand: IntegrandName,
        #[arg(long, allow_hyphen_values = true)]
        pole: String,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, value_enum, default_value = "parallel")]
        exec: ExecArg,
    },
    /// Table of the cosexponential functions.
    Cosexp {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        step: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, default_value_t = 9)]
        digits: usize,
    },
    /// Real 4×4 representation, optionally block diagonalized.
    Matrix {
        #[arg(long)]
        kind: Kind,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long)]
        block: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, default_value_t = 9)]
        digits: usize,
    },
}

enum Failure {
    Usage(String),
    Quad(QuadError),
}

impl From<QuadError> for Failure {
    fn from(e: QuadError) -> Self {
        Failure::Quad(e)
    }
}

type Out = Result<String, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn tolerance() -> Result<f64, Failure> {
    match std::env::var(TOL_VAR) {
        Ok(s) => s
            .parse::<f64>()
            .ok()
            .filter(|t| t.is_finite() && *t >= 0.0)
            .ok_or_else(|| {
                usage(format!(
                    "{TOL_VAR} must be a non-negative number, got {s:?}"
                ))
            }),
        Err(_) => Ok(DEFAULT_TOL),
    }
}

/// Reads `@path` as file contents, anything else verbatim.
fn payload(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))
        }
        None => Ok(arg.to_string()),
    }
}

fn json_arg<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(&payload(arg)?).map_err(|e| usage(format!("invalid {what} JSON: {e}")))
}

fn parse_quad(kind: Kind, arg: &str) -> Result<Quad, Failure> {
    let text = payload(arg)?;
    let text = text.trim();
    if text.starts_with('{') {
        let q: Quad = json_arg(text, "quad")?;
        if q.kind() != kind {
            return Err(QuadError::KindMismatch {
                left: kind,
                right: q.kind(),
            }
            .into());
        }
        return Ok(q);
    }
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| usage(format!("invalid quad {text:?}: {e}")))?;
    let c: [f64; 4] = parts
        .try_into()
        .map_err(|_| usage(format!("a quad needs four components, got {text:?}")))?;
    Ok(Quad::from_array(kind, c)?)
}

fn parse_coeff(kind: Kind, v: &Value) -> Result<Quad, Failure> {
    match v {
        Value::Number(n) => Ok(Quad::real(
            kind,
            n.as_f64()
                .ok_or_else(|| usage("coefficient out of range"))?,
        )),
        Value::Array(_) => {
            let c: [f64; 4] = serde_json::from_value(v.clone())
                .map_err(|e| usage(format!("invalid coefficient: {e}")))?;
            Ok(Quad::from_array(kind, c)?)
        }
        Value::Object(_) => {
            let q: Quad = serde_json::from_value(v.clone())
                .map_err(|e| usage(format!("invalid coefficient: {e}")))?;
            if q.kind() != kind {
                return Err(QuadError::KindMismatch {
                    left: kind,
                    right: q.kind(),
                }
                .into());
            }
            Ok(q)
        }
        _ => Err(usage(
            "coefficients must be numbers, [x,y,z,t] arrays or quad objects",
        )),
    }
}

fn emit_quad(u: &Quad, format: Format, digits: usize) -> String {
    match format {
        Format::Json => serde_json::to_string(u).expect("quads serialize"),
        Format::Csv => format::row(&u.to_array(), digits),
        Format::Text => {
            let [x, y, z, t] = u.to_array().map(|v| format::sig(v, digits));
            format!("{x} + {y}α + {z}β + {t}γ ({})", u.kind())
        }
    }
}

fn emit_scalars(names: &[&str], values: &[f64], format: Format, digits: usize) -> String {
    match format {
        Format::Json => {
            let map: serde_json::Map<String, Value> = names
                .iter()
                .zip(values)
                .map(|(n, v)| (n.to_string(), json!(v)))
                .collect();
            Value::Object(map).to_string()
        }
        Format::Csv => format::row(values, digits),
        Format::Text => names
            .iter()
            .zip(values)
            .map(|(n, v)| format!("{n} = {}", format::sig(*v, digits)))
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

#[allow(clippy::too_many_arguments)]
fn run_eval(
    kind: Kind,
    op: Op,
    a: &str,
    b: Option<&str>,
    n: Option<f64>,
    format: Format,
    digits: usize,
) -> Out {
    let tol = tolerance()?;
    let u = parse_quad(kind, a)?;
    let second = || -> Result<Quad, Failure> {
        parse_quad(kind, b.ok_or_else(|| usage("this operation needs --b"))?)
    };
    let value = match op {
        Op::Add => u + second()?,
        Op::Sub => u - second()?,
        Op::Mul => u * second()?,
        Op::Div => u * inverse_with_tol(&second()?, tol)?,
        Op::Inv => inverse_with_tol(&u, tol)?,
        Op::Exp => exp(&u),
        Op::Log => log(&u)?,
        Op::Pow => {
            let n = n.ok_or_else(|| usage("pow needs --n"))?;
            if n.fract() == 0.0 && n.abs() < 9.0e15 {
                pow_int_with_tol(&u, n as i64, tol)?
            } else {
                pow_real(&u, n)?
            }
        }
        Op::Cos => cos(&u),
        Op::Sin => sin(&u),
        Op::Cosh => cosh(&u),
        Op::Sinh => sinh(&u),
        Op::Amplitude => {
            let amp = amplitude(&u);
            let root = amp.amplitude.unwrap_or(f64::NAN);
            return Ok(emit_scalars(
                &["nu", "amplitude"],
                &[amp.nu, root],
                format,
                digits,
            ));
        }
        Op::Modulus => return Ok(emit_scalars(&["modulus"], &[modulus(&u)], format, digits)),
        Op::Singularity => {
            let report = singularity(&u, tol);
            return Ok(match format {
                Format::Json => serde_json::to_string(&report).expect("reports serialize"),
                _ => format!(
                    "{},{},{}",
                    report.singular,
                    format::sig(report.margin, digits),
                    report.nodal_sets.join(";")
                ),
            });
        }
        Op::Canonical => {
            let c = to_canonical(&u);
            return Ok(match format {
                Format::Json => serde_json::to_string(&c).expect("coordinates serialize"),
                _ => format::row(&c.c, digits),
            });
        }
    };
    Ok(emit_quad(&value, format, digits))
}

fn run_expform(kind: Option<Kind>, u: Option<&str>, trig: bool, inverse: Option<&str>) -> Out {
    if let Some(form) = inverse {
        let q = if trig {
            from_trig_form(&json_arg::<TrigForm>(form, "trigonometric form")?)
        } else {
            from_exp_form(&json_arg::<ExpForm>(form, "exponential form")?)
        };
        return Ok(serde_json::to_string(&q).expect("quads serialize"));
    }
    let (kind, u) = kind
        .zip(u)
        .ok_or_else(|| usage("expform needs --kind and --u"))?;
    let u = parse_quad(kind, u)?;
    Ok(if trig {
        serde_json::to_string(&trig_form(&u)?).expect("forms serialize")
    } else {
        serde_json::to_string(&exp_form(&u)?).expect("forms serialize")
    })
}

fn run_factor(
    kind: Option<Kind>,
    coeffs: Option<&str>,
    enumerate: Option<usize>,
    expand_arg: Option<&str>,
) -> Out {
    if let Some(list) = expand_arg {
        let factors: Vec<Factor> = json_arg(list, "factor list")?;
        let kind = match factors.first() {
            Some(Factor::Linear { root }) => root.kind(),
            Some(Factor::Quadratic { s, .. }) => s.kind(),
            None => return Err(usage("the factor list is empty")),
        };
        let poly = expand(kind, &factors);
        return Ok(json!({ "kind": kind, "coeffs": poly.coeffs() }).to_string());
    }
    let (kind, coeffs) = kind
        .zip(coeffs)
        .ok_or_else(|| usage("factor needs --kind and --coeffs"))?;
    let raw: Vec<Value> = json_arg(coeffs, "coefficient array")?;
    let coeffs = raw
        .iter()
        .map(|v| parse_coeff(kind, v))
        .collect::<Result<Vec<_>, _>>()?;
    let poly = Poly::new(coeffs)?;
    let found = match enumerate {
        Some(cap) => enumerate_factorizations(&poly, cap)?,
        None => vec![factor(&poly)?],
    };
    let entries: Vec<Value> = found
        .iter()
        .map(|f| {
            json!({
                "roots": f.roots,
                "residual": f.residual,
                "factors": real_factors(f),
            })
        })
        .collect();
    Ok(json!({ "kind": kind, "count": entries.len(), "factorizations": entries }).to_string())
}

fn run_integrate(lp: &str, name: IntegrandName, pole: &str, m: u32, exec: ExecArg) -> Out {
    let lp: Loop = json_arg(lp, "loop")?;
    let kind = lp.validate()?;
    let pole = parse_quad(kind, pole)?;
    let f = match name {
        IntegrandName::Pole => Integrand::Pole { pole },
        IntegrandName::PoleM if m == 0 => return Err(usage("--m must be at least 1")),
        IntegrandName::PoleM => Integrand::PoleM { pole, m },
        IntegrandName::Square => Integrand::Square { pole },
        IntegrandName::Exp => Integrand::Exp { pole },
    };
    let exec = match exec {
        ExecArg::Sequential => Exec::Sequential,
        ExecArg::Parallel => Exec::Parallel,
    };
    let result = integrate_loop_with(|u| f.eval(u), &lp, exec)?;
    let prediction = f.prediction(&lp)?;
    let error = result.max_abs_diff(&prediction);
    Ok(
        json!({ "integrand": f, "result": result, "prediction": prediction, "max_error": error })
            .to_string(),
    )
}

fn run_cosexp(family: Family, from: f64, to: f64, step: f64, format: Format, digits: usize) -> Out {
    if !(step > 0.0 && from.is_finite() && to.is_finite()) || to < from {
        return Err(usage("need finite --from ≤ --to and a positive --step"));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    if count > 10_000_000 {
        return Err(usage("the table would exceed 10⁷ rows"));
    }
    let fam = match family {
        Family::F => CosexpFamily::PlanarF,
        Family::G => CosexpFamily::PolarG,
    };
    let rows: Vec<(f64, [f64; 4])> = Exec::default().map_range(count, |i| {
        let x = from + step * i as f64;
        (x, cosexp_all(fam, x))
    });
    Ok(match format {
        Format::Json => {
            let p = fam.prefix();
            let out: Vec<Value> = rows
                .iter()
                .map(|(x, v)| json!({ "x": x, format!("{p}40"): v[0], format!("{p}41"): v[1], format!("{p}42"): v[2], format!("{p}43"): v[3] }))
                .collect();
            Value::Array(out).to_string()
        }
        _ => rows
            .iter()
            .map(|(x, v)| format::row(&[*x, v[0], v[1], v[2], v[3]], digits))
            .collect::<Vec<_>>()
            .join("\n"),
    })
}

fn run_matrix(kind: Kind, u: &str, block: bool, format: Format, digits: usize) -> Out {
    let u = parse_quad(kind, u)?;
    let m = if block {
        block_diagonalize(&u)
    } else {
        represent(&u)
    };
    let rows: Vec<[f64; 4]> = (0..4).map(|i| std::array::from_fn(|j| m[(i, j)])).collect();
    Ok(match format {
        Format::Json => {
            json!({ "kind": kind, "block": block, "rows": rows, "determinant": determinant(&m) })
                .to_string()
        }
        _ => rows
            .iter()
            .map(|r| format::row(r, digits))
            .collect::<Vec<_>>()
            .join("\n"),
    })
}

fn run(cli: Cli) -> Out {
    match cli.command {
        Command::Eval {
            kind,
            op,
            a,
            b,
            n,
            format,
            digits,
        } => run_eval(kind, op, &a, b.as_deref(), n, format, digits),
        Command::Expform {
            kind,
            u,
            trig,
            inverse,
        } => run_expform(kind, u.as_deref(), trig, inverse.as_deref()),
        Command::Factor {
            kind,
            coeffs,
            enumerate,
            expand,
        } => run_factor(kind, coeffs.as_deref(), enumerate, expand.as_deref()),
        Command::Integrate {
            lp,
            integrand,
            pole,
            m,
            exec,
        } => run_integrate(&lp, integrand, &pole, m, exec),
        Command::Cosexp {
            family,
            from,
            to,
            step,
            format,
            digits,
        } => run_cosexp(family, from, to, step, format, digits),
        Command::Matrix {
            kind,
            u,
            block,
            format,
            digits,
        } => run_matrix(kind, &u, block, format, digits),
    }
}

fn error_line(code: &str, message: &str) -> String {
    json!({ "error": code, "message": message }).to_string()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("{}", error_line("usage", &msg));
            ExitCode::from(1)
        }
        Err(Failure::Quad(e)) => {
            eprintln!("{}", error_line(e.code(), &e.to_string()));
            ExitCode::from(if e.is_domain() { 2 } else { 1 })
        }
    }
}
