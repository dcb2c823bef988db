//! Decimal scientific rendering at the output boundary.
//!
//! All interior arithmetic is exact; these helpers round once, to a caller
//! chosen number of significant digits, with ties rounded up. Trailing
//! zeros in the mantissa are kept ("8.240E21"), so renderings are stable
//! enough to compare as strings.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

fn format_mantissa(digits: &[u8], exp: i64) -> String {
    let mut out = String::with_capacity(digits.len() + 6);
    out.push((b'0' + digits[0]) as char);
    if digits.len() > 1 {
        out.push('.');
        for &d in &digits[1..] {
            out.push((b'0' + d) as char);
        }
    }
    out.push('E');
    out.push_str(&exp.to_string());
    out
}

/// `n` to `sig` significant digits in the form `d.dddEe`.
pub fn sci_biguint(n: &BigUint, sig: usize) -> String {
    assert!(sig >= 1);
    if n.is_zero() {
        return "0".into();
    }
    let text = n.to_string();
    let mut exp = text.len() as i64 - 1;
    let mut digits: Vec<u8> = text.bytes().map(|b| b - b'0').collect();
    if digits.len() > sig {
        // half-up: the first dropped digit decides
        let round_up = digits[sig] >= 5;
        digits.truncate(sig);
        if round_up {
            let mut i = sig;
            loop {
                if i == 0 {
                    digits.insert(0, 1);
                    digits.truncate(sig);
                    exp += 1;
                    break;
                }
                i -= 1;
                if digits[i] == 9 {
                    digits[i] = 0;
                } else {
                    digits[i] += 1;
                    break;
                }
            }
        }
    } else {
        digits.resize(sig, 0);
    }
    format_mantissa(&digits, exp)
}

/// Nonnegative rational to `sig` significant digits, exactly rounded.
pub fn sci_ratio(r: &BigRational, sig: usize) -> String {
    assert!(sig >= 1);
    assert!(!r.is_negative(), "only nonnegative values are rendered");
    if r.is_zero() {
        return "0".into();
    }
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    // r lies in [10^(d-1), 10^(d+1)) where d = digits(num) - digits(den)
    let d = num.to_string().len() as i64 - den.to_string().len() as i64;
    let ten = BigUint::from(10u32);
    let ge_pow10 = |e: i64| -> bool {
        if e >= 0 {
            *num >= den * ten.pow(e as u32)
        } else {
            num * ten.pow((-e) as u32) >= *den
        }
    };
    let mut exp = if ge_pow10(d) { d } else { d - 1 };
    // scale so the integer part carries exactly `sig` digits
    let k = sig as i64 - 1 - exp;
    let (scaled_num, scaled_den) = if k >= 0 {
        (num * ten.pow(k as u32), den.clone())
    } else {
        (num.clone(), den * ten.pow((-k) as u32))
    };
    let mut q = &scaled_num / &scaled_den;
    let rem = &scaled_num % &scaled_den;
    if &rem * 2u32 >= scaled_den {
        q += 1u32;
    }
    if q == ten.pow(sig as u32) {
        q = ten.pow(sig as u32 - 1);
        exp += 1;
    }
    let digits: Vec<u8> = q.to_string().bytes().map(|b| b - b'0').collect();
    debug_assert_eq!(digits.len(), sig);
    format_mantissa(&digits, exp)
}

trait IsNegative {
    fn is_negative(&self) -> bool;
}

impl IsNegative for BigRational {
    fn is_negative(&self) -> bool {
        use num_traits::Signed;
        Signed::is_negative(self)
    }
}

/// A positive float in the same `d.dddEe` form.
pub fn sci_f64(x: f64, sig: usize) -> String {
    assert!(sig >= 1 && x > 0.0 && x.is_finite());
    format!("{:.*e}", sig - 1, x).replacen('e', "E", 1)
}

/// `(mantissa, exponent)` pair in the same form, without re-normalizing.
pub fn sci_parts(mantissa: f64, exponent: i64, sig: usize) -> String {
    format!("{:.*}E{}", sig.saturating_sub(1), mantissa, exponent)
}
