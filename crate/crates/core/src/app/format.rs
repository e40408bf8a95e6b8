/// `%g`-style rendering with `digits` significant digits: fixed notation for
/// moderate magnitudes, scientific otherwise, trailing zeros trimmed.
pub fn sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        return format!("{}e{exp}", trim(mantissa));
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim(&format!("{x:.decimals$}")).to_string()
}

/// [`sig`] at the default six digits.
pub fn sig6(x: f64) -> String {
    sig(x, 6)
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        for (x, want) in [
            (0.908456789, "0.908457"),
            (123456.7, "123457"),
            (1234567.0, "1.23457e6"),
            (0.00001234567, "1.23457e-5"),
            (0.0001234567, "0.000123457"),
            (2.5, "2.5"),
            (-1.0, "-1"),
            (0.0, "0"),
            (9.9999996, "10"),
        ] {
            assert_eq!(sig6(x), want, "{x}");
        }
    }
}
