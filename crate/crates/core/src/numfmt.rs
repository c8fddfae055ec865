//! Number formatting shared by reports, the CLI and DOT output.

use crate::linalg::ComplexScalar;

/// Scientific notation with 12 significant digits, e.g. `7.07106781187e-1`.
pub fn sci12(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

/// `a+bi` with both parts in [`sci12`] form.
pub fn complex_sci12(z: ComplexScalar) -> String {
    join_complex(sci12(z.re), z.im, sci12(z.im.abs()))
}

/// Shortest form with at most 6 significant digits, `%g`-style.
pub fn g6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let s = format!("{x:.5e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

/// `a+bi` with both parts in [`g6`] form.
pub fn complex_g6(z: ComplexScalar) -> String {
    join_complex(g6(z.re), z.im, g6(z.im.abs()))
}

fn join_complex(re: String, im: f64, im_abs: String) -> String {
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{re}{sign}{im_abs}i")
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
