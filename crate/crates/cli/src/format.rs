//! Decimal formatting for CSV and text output.

/// Formats `v` with at most `digits` significant digits, trimming trailing zeros.
///
/// Values between 1e-5 and 10^digits print in positional notation; others use
/// an exponent. Zero (of either sign) prints as `0`.
pub fn sig(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(format!("{v:.decimals$}"))
    } else {
        format!("{}e{exp}", trim(mantissa.to_string()))
    }
}

fn trim(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.into()
    }
}

pub fn row(values: &[f64], digits: usize) -> String {
    values
        .iter()
        .map(|v| sig(*v, digits))
        .collect::<Vec<_>>()
        .join(",")
}
