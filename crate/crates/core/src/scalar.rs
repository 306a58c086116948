//! Numeric modes shared by the coefficient algebra.
//!
//! Every identity-style computation runs over [`Rational`] or [`ComplexRational`]
//! so that equalities are decided exactly; scanning and sampling paths use
//! `f64` / [`Complex64`].

use std::fmt::Debug;
use std::ops::Neg;

use num::bigint::BigInt;
use num::complex::Complex64;
use num::traits::{Num, ToPrimitive};
use num::{BigRational, Complex, Signed, Zero};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Exact Gaussian-rational scalar, used wherever δ, η, ρ are complex.
pub type ComplexRational = Complex<BigRational>;

/// A coefficient field usable by the series and functional code.
pub trait Scalar: Num + Clone + Neg<Output = Self> + Debug + Send + Sync {
    /// The value `num / den` in this field.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    /// Complex conjugate (identity for real fields).
    fn conj(&self) -> Self;

    /// `|z|²` as an element of the field.
    fn abs_sq(&self) -> Self {
        self.clone() * self.conj()
    }

    /// Lossy conversion used for reports and float comparisons.
    fn to_c64(&self) -> Complex64;

    fn modulus(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Whether `|z| <= 1`; exact for rational fields, `1e-12` slack for floats.
    fn in_closed_unit_disk(&self) -> bool;

    /// `Some(r)` when the value is real, `None` otherwise.
    fn real_part_if_real(&self) -> Option<f64>;
}

impl Scalar for Rational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }

    fn in_closed_unit_disk(&self) -> bool {
        self.abs() <= BigRational::from_integer(1.into())
    }

    fn real_part_if_real(&self) -> Option<f64> {
        Some(rational_to_f64(self))
    }
}

impl Scalar for ComplexRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(Rational::from_ratio(num, den), Rational::zero())
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn in_closed_unit_disk(&self) -> bool {
        self.norm_sqr() <= BigRational::from_integer(1.into())
    }

    fn real_part_if_real(&self) -> Option<f64> {
        self.im.is_zero().then(|| rational_to_f64(&self.re))
    }
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn conj(&self) -> Self {
        *self
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }

    fn in_closed_unit_disk(&self) -> bool {
        self.abs() <= 1.0 + 1e-12
    }

    fn real_part_if_real(&self) -> Option<f64> {
        Some(*self)
    }
}

impl Scalar for Complex64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn in_closed_unit_disk(&self) -> bool {
        self.norm() <= 1.0 + 1e-12
    }

    fn real_part_if_real(&self) -> Option<f64> {
        (self.im.abs() <= 1e-12).then_some(self.re)
    }
}

/// Nearest-ish `f64` of an exact rational, robust to huge numerators/denominators.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    r.to_f64().unwrap_or(f64::NAN)
}

/// Shorthand for an exact rational `num / den`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

/// Shorthand for an exact Gaussian rational with integer-ratio parts.
pub fn cq(re: Rational, im: Rational) -> ComplexRational {
    Complex::new(re, im)
}

/// `"p/q"` rendering used in machine-readable reports.
pub fn rational_string(r: &Rational) -> String {
    if r.denom() == &BigInt::from(1) {
        format!("{}/1", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rational value of a terminating decimal or `p/q` literal.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (sign, body) = match text.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|ch| ch.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let denom = num::pow(BigInt::from(10), frac_part.len());
    Some(BigRational::new(numer * sign, denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rational_accepts_fractions_and_decimals() {
        assert_eq!(parse_rational("1/3"), Some(q(1, 3)));
        assert_eq!(parse_rational("-0.25"), Some(q(-1, 4)));
        assert_eq!(parse_rational("4"), Some(q(4, 1)));
        assert_eq!(parse_rational(".5"), Some(q(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("1e3"), None);
    }

    #[test]
    fn rational_strings_always_carry_a_denominator() {
        assert_eq!(rational_string(&q(1, 9)), "1/9");
        assert_eq!(rational_string(&q(-4, 2)), "-2/1");
    }

    #[test]
    fn unit_disk_membership_is_exact_for_rationals() {
        let z = cq(q(3, 5), q(4, 5));
        assert!(z.in_closed_unit_disk());
        let w = cq(q(3, 5), q(4, 5) + q(1, 1_000_000_000));
        assert!(!w.in_closed_unit_disk());
    }
}
