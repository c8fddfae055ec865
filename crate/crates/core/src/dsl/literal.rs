//! Complex literals: `a`, `bi`, `a+bi`, `a-bi`, where each real part is a
//! decimal (optional sign, fraction and exponent) or the shorthand
//! `1/sqrt2`. A bare `i` stands for `1i`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::linalg::ComplexScalar;

const SQRT2_SHORTHAND: &str = "1/sqrt2";

struct Term {
    value: f64,
    imaginary: bool,
}

/// Length in bytes of the decimal prefix of `s` (no sign).
fn decimal_len(s: &[u8]) -> usize {
    let mut n = 0;
    let digits = |s: &[u8], mut n: usize| {
        while n < s.len() && s[n].is_ascii_digit() {
            n += 1;
        }
        n
    };
    n = digits(s, n);
    let int_digits = n;
    if n < s.len() && s[n] == b'.' {
        let after = digits(s, n + 1);
        if int_digits == 0 && after == n + 1 {
            return 0;
        }
        n = after;
    } else if int_digits == 0 {
        return 0;
    }
    if n < s.len() && (s[n] == b'e' || s[n] == b'E') {
        let mut m = n + 1;
        if m < s.len() && (s[m] == b'+' || s[m] == b'-') {
            m += 1;
        }
        let end = digits(s, m);
        if end > m {
            n = end;
        }
    }
    n
}

/// Parses one signed term from the front of `s`.
fn term(s: &str, sign_required: bool) -> Option<(Term, &str)> {
    let (negative, rest) = match s.as_bytes().first()? {
        b'+' => (false, &s[1..]),
        b'-' => (true, &s[1..]),
        _ if sign_required => return None,
        _ => (false, s),
    };
    let (magnitude, rest) = if let Some(r) = rest.strip_prefix(SQRT2_SHORTHAND) {
        (FRAC_1_SQRT_2, r)
    } else {
        let n = decimal_len(rest.as_bytes());
        if n == 0 {
            if rest.starts_with('i') {
                (1.0, rest)
            } else {
                return None;
            }
        } else {
            (rest[..n].parse::<f64>().ok()?, &rest[n..])
        }
    };
    if !magnitude.is_finite() {
        return None;
    }
    let value = if negative { -magnitude } else { magnitude };
    match rest.strip_prefix('i') {
        Some(r) => Some((
            Term {
                value,
                imaginary: true,
            },
            r,
        )),
        None => Some((
            Term {
                value,
                imaginary: false,
            },
            rest,
        )),
    }
}

/// Parses a complex literal. Whitespace is allowed only around the sign
/// joining the two parts.
pub fn parse_complex(text: &str) -> Option<ComplexScalar> {
    let text = text.trim();
    let chars: Vec<char> = text.chars().collect();
    for (i, w) in chars.windows(2).enumerate() {
        if !w[0].is_whitespace() && w[1].is_whitespace() {
            let next = chars[i + 1..].iter().find(|c| !c.is_whitespace());
            let joins_sign = matches!(w[0], '+' | '-') || matches!(next, Some('+' | '-'));
            if !joins_sign {
                return None;
            }
        }
    }
    let compact: String = chars.into_iter().filter(|c| !c.is_whitespace()).collect();
    let (first, rest) = term(&compact, false)?;
    if rest.is_empty() {
        return Some(if first.imaginary {
            ComplexScalar::new(0.0, first.value)
        } else {
            ComplexScalar::new(first.value, 0.0)
        });
    }
    if first.imaginary {
        return None;
    }
    let (second, rest) = term(rest, true)?;
    if !second.imaginary || !rest.is_empty() {
        return None;
    }
    Some(ComplexScalar::new(first.value, second.value))
}

/// Inverse of [`parse_complex`] up to the sign of zero parts.
pub fn format_complex(z: ComplexScalar) -> String {
    match (z.re == 0.0, z.im == 0.0) {
        (_, true) => format!("{:?}", z.re),
        (true, false) => format!("{:?}i", z.im),
        (false, false) => {
            let sign = if z.im < 0.0 { '-' } else { '+' };
            format!("{:?}{sign}{:?}i", z.re, z.im.abs())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Option<ComplexScalar> {
        Some(ComplexScalar::new(re, im))
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn accepted_forms() {
        assert_eq!(parse_complex("1"), c(1.0, 0.0));
        assert_eq!(parse_complex("-2.5"), c(-2.5, 0.0));
        assert_eq!(parse_complex(".5"), c(0.5, 0.0));
        assert_eq!(parse_complex("3."), c(3.0, 0.0));
        assert_eq!(parse_complex("2i"), c(0.0, 2.0));
        assert_eq!(parse_complex("-i"), c(0.0, -1.0));
        assert_eq!(parse_complex("i"), c(0.0, 1.0));
        assert_eq!(parse_complex("1+2i"), c(1.0, 2.0));
        assert_eq!(parse_complex("1-2i"), c(1.0, -2.0));
        assert_eq!(parse_complex("1 - i"), c(1.0, -1.0));
        assert_eq!(parse_complex("1e-3+2E2i"), c(1e-3, 200.0));
        assert_eq!(parse_complex("1/sqrt2"), c(FRAC_1_SQRT_2, 0.0));
        assert_eq!(parse_complex("-1/sqrt2"), c(-FRAC_1_SQRT_2, 0.0));
        assert_eq!(parse_complex("0.5-1/sqrt2i"), c(0.5, -FRAC_1_SQRT_2));
        assert_eq!(FRAC_1_SQRT_2, 0.7071067811865476);
    }

    #[test]
    fn rejected_forms() {
        for bad in [
            "", "+", "-", ".", "e5", "1e", "abc", "1+2", "2i+1", "1+2i3", "1++2i", "ii", "1 2",
            "nan", "inf", "1e999", "1/sqrt3", "1+-2i",
        ] {
            assert_eq!(parse_complex(bad), None, "{bad:?}");
        }
    }

    #[test]
    fn signed_exponent_binds_to_the_number() {
        assert_eq!(parse_complex("1e+2i"), c(0.0, 100.0));
        assert_eq!(parse_complex("1e+2+1e-2i"), c(100.0, 0.01));
    }

    proptest! {
        #[test]
        fn format_then_parse_is_identity(re in -1e6f64..1e6, im in -1e6f64..1e6) {
            let z = ComplexScalar::new(re, im);
            prop_assert_eq!(parse_complex(&format_complex(z)), Some(z));
        }

        #[test]
        fn never_panics(s in "\\PC{0,16}") {
            let _ = parse_complex(&s);
        }
    }
}
