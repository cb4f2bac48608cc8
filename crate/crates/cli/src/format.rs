//! Number formatting for text and CSV output: 12 significant digits.

const DIGITS: i32 = 12;

/// `%.12g`-style formatting; JSON output keeps full precision instead.
pub fn sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // the exponent of the rounded value decides the notation, as in %g
    let scientific = format!("{x:.prec$e}", prec = (DIGITS - 1) as usize);
    let (mantissa, exponent) = scientific.split_once('e').expect("scientific format");
    let exp: i32 = exponent.parse().expect("integer exponent");
    if (-5..DIGITS).contains(&exp) {
        let decimals = (DIGITS - 1 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}"))
    } else {
        format!("{}e{}", trim_fraction(mantissa), exponent)
    }
}

fn trim_fraction(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}
