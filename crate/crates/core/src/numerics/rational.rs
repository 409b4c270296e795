use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den` reduced. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Only reachable for astronomically large values.
        x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
    })
}

/// Integer part (floor) of a rational that fits in `i64`.
pub fn rat_floor(x: &Rational) -> i64 {
    x.floor()
        .to_integer()
        .to_i64()
        .expect("rational floor exceeds i64")
}

/// `num/den`, or just `num` for integers.
pub fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Twelve significant digits, trailing zeros trimmed. Negative zero prints as `0`.
pub fn fmt_f64(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 || x.abs() < 1e-300 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&magnitude) {
        return format!("{:.11e}", x);
    }
    let decimals = (11 - magnitude).max(0) as usize;
    let mut s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_on_construction() {
        let x = ratio(28, 36);
        assert_eq!(x, ratio(7, 9));
        assert_eq!(fmt_rational(&x), "7/9");
        assert_eq!(fmt_rational(&ratio(-6, -3)), "2");
        assert_eq!(fmt_rational(&ratio(3, -4)), "-3/4");
    }

    #[test]
    fn floor_of_negative() {
        assert_eq!(rat_floor(&ratio(-1, 3)), -1);
        assert_eq!(rat_floor(&ratio(25, 9)), 2);
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_f64(2.0), "2");
        assert_eq!(fmt_f64(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_f64(26.0 / 9.0), "2.88888888889");
        assert_eq!(fmt_f64(-1e-17), "-1.00000000000e-17");
        assert_eq!(fmt_f64(-0.0), "0");
        assert_eq!(fmt_f64(123456.0), "123456");
    }
}
