//! Scalar fields used throughout: exact rationals, real and complex floats.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A field the geometry code can run over.
///
/// Exact fields compare against zero exactly; inexact ones use a relative
/// tolerance supplied by the caller.
pub trait Field:
    Num + Clone + Debug + Display + PartialEq + std::ops::Neg<Output = Self> + Send + Sync + 'static
{
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    /// Absolute value as a float, used for pivoting and tolerances.
    fn magnitude(&self) -> f64;
    fn to_complex(&self) -> Complex64;
    fn as_rational(&self) -> Option<BigRational>;
    /// Nearest field element to a complex value (real part for real fields).
    fn from_complex(z: Complex64) -> Self;
    /// Square root inside the field, if one exists.
    fn sqrt_opt(&self) -> Option<Self>;

    /// Zero test: exact for exact fields, `|self| <= tol * scale` otherwise.
    fn is_negligible(&self, scale: f64, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tol * scale
        }
    }

    /// Default relative tolerance for elimination over inexact fields.
    fn elimination_tol() -> f64 {
        if Self::EXACT {
            0.0
        } else {
            1e-11
        }
    }
}

impl Field for BigRational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn magnitude(&self) -> f64 {
        rational_to_f64(&self.abs())
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
    fn as_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
    fn from_complex(z: Complex64) -> Self {
        BigRational::from_float(z.re).unwrap_or_else(BigRational::zero)
    }
    fn sqrt_opt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(BigRational::new(n, d))
        } else {
            None
        }
    }
}

impl Field for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rational(r: &BigRational) -> Self {
        rational_to_f64(r)
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
    fn as_rational(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }
    fn from_complex(z: Complex64) -> Self {
        z.re
    }
    fn sqrt_opt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
}

impl Field for f32 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f32
    }
    fn from_rational(r: &BigRational) -> Self {
        rational_to_f64(r) as f32
    }
    fn magnitude(&self) -> f64 {
        self.abs() as f64
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self as f64, 0.0)
    }
    fn as_rational(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }
    fn from_complex(z: Complex64) -> Self {
        z.re as f32
    }
    fn sqrt_opt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
    fn elimination_tol() -> f64 {
        1e-5
    }
}

impl Field for Complex64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(rational_to_f64(r), 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn as_rational(&self) -> Option<BigRational> {
        if self.im == 0.0 {
            BigRational::from_float(self.re)
        } else {
            None
        }
    }
    fn from_complex(z: Complex64) -> Self {
        z
    }
    fn sqrt_opt(&self) -> Option<Self> {
        Some(self.sqrt())
    }
}

/// Converts a rational to the nearest-ish double, staying finite for huge
/// numerators and denominators.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() && (v != 0.0 || r.is_zero()) {
            return v;
        }
    }
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = nb - db;
    let scaled = if shift > 0 {
        BigRational::new(r.numer().clone(), r.denom() << (shift as usize))
    } else {
        BigRational::new(r.numer() << ((-shift) as usize), r.denom().clone())
    };
    scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift.clamp(-100_000, 100_000) as i32)
}

/// Parses `"3"`, `"-3/7"` or a decimal such as `"0.125"`/`"1e-3"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Ok(n) = BigInt::from_str(s) {
        return Ok(BigRational::from_integer(n));
    }
    parse_decimal(s).ok_or_else(|| Error::Parse(format!("not a number: {s:?}")))
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut n = BigInt::from_str_radix(if digits.is_empty() { "0" } else { &digits }, 10).ok()?;
    if neg {
        n = -n;
    }
    let e = exp - frac_part.len() as i64;
    if e.unsigned_abs() > 10_000 {
        return None;
    }
    let p = num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize);
    Some(if e >= 0 {
        BigRational::from_integer(n * p)
    } else {
        BigRational::new(n, p)
    })
}

/// `"p/q"` or `"p"`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Clears denominators and removes the content, returning a primitive
/// integer vector. The zero vector stays zero.
pub fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Divides a slice of exact values by its largest magnitude, then converts to
/// floats. Survives coefficients far outside the double range.
pub fn normalized_floats<T: Field>(v: &[T]) -> Vec<f64> {
    match v.iter().map(|x| x.as_rational()).collect::<Option<Vec<_>>>() {
        Some(rs) => {
            let max = rs.iter().map(|r| r.abs()).max();
            match max {
                Some(m) if !m.is_zero() => rs.iter().map(|r| rational_to_f64(&(r / &m))).collect(),
                _ => vec![0.0; v.len()],
            }
        }
        None => v.iter().map(|x| x.to_complex().re).collect(),
    }
}

/// Like [`normalized_floats`] but keeps complex values.
pub fn normalized_complex<T: Field>(v: &[T]) -> Vec<Complex64> {
    if T::EXACT {
        normalized_floats(v).into_iter().map(|x| Complex64::new(x, 0.0)).collect()
    } else {
        let c: Vec<Complex64> = v.iter().map(|x| x.to_complex()).collect();
        let m = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if m == 0.0 {
            c
        } else {
            c.into_iter().map(|z| z / m).collect()
        }
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_i64(n)
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("-3/7").unwrap(), ratio(-3, 7));
        assert_eq!(parse_rational("6/-4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("12").unwrap(), rat(12));
        assert_eq!(parse_rational("0.125").unwrap(), ratio(1, 8));
        assert_eq!(parse_rational("-2.5e2").unwrap(), rat(-250));
        assert_eq!(parse_rational("1e-3").unwrap(), ratio(1, 1000));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn lowest_terms() {
        let r = parse_rational("10/-4").unwrap();
        assert_eq!(r.numer(), &BigInt::from(-5));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&r), "-5/2");
    }

    #[test]
    fn huge_to_float() {
        let big = BigRational::new(BigInt::from(3) << 2000usize, BigInt::from(1) << 1999usize);
        assert!((rational_to_f64(&big) - 6.0).abs() < 1e-12);
    }

    #[test]
    fn exact_sqrt() {
        assert_eq!(ratio(9, 4).sqrt_opt(), Some(ratio(3, 2)));
        assert_eq!(rat(2).sqrt_opt(), None);
        assert_eq!(rat(-4).sqrt_opt(), None);
    }

    #[test]
    fn primitive() {
        let v = primitive_integer(&[ratio(1, 2), ratio(-3, 4), rat(0)]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
    }

    #[test]
    fn float_roundtrip_via_decimal() {
        let x = 0.1f64 + 0.2;
        let r = parse_rational(&format!("{x:?}")).unwrap();
        assert_eq!(rational_to_f64(&r), x);
    }
}
