//! The coefficient field abstraction.
//!
//! Everything symbolic in this crate is generic over [`Scalar`]. The
//! verification suites run over [`BigRational`](num_rational::BigRational),
//! where every identity is checked with exact equality; `f64` and `f32`
//! are supported for quick floating exploration of the same formulas.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// A field usable as polynomial coefficients.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Num
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// `true` when arithmetic never rounds.
    const EXACT: bool;

    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("integer fits the scalar type")
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::int(num) / Self::int(den)
    }

    /// The value as an `i64` when it is (exactly, for exact types) an integer.
    fn as_integer(&self) -> Option<i64> {
        let f = self.to_f64()?;
        if !f.is_finite() || f.abs() > 9.0e15 {
            return None;
        }
        let r = f.round();
        (Self::int(r as i64) == *self).then_some(r as i64)
    }

    /// A positive factor that may be divided out of a coefficient list
    /// without changing any signs. For rationals this is the content
    /// (gcd of numerators over lcm of denominators).
    fn positive_content(coeffs: &[Self]) -> Self {
        coeffs
            .iter()
            .rev()
            .find(|c| !c.is_zero())
            .map(|c| c.abs())
            .unwrap_or_else(Self::one)
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `Σ c_i x^i` rounded to `f64`, coefficients lowest power first.
    fn horner_f64(coeffs: &[Self], x: f64) -> f64 {
        coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64_lossy())
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn as_integer(&self) -> Option<i64> {
        if self.is_integer() {
            self.to_integer().to_i64()
        } else {
            None
        }
    }

    fn positive_content(coeffs: &[Self]) -> Self {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in coeffs.iter().filter(|c| !c.is_zero()) {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            BigRational::one()
        } else {
            BigRational::new(num_gcd, den_lcm)
        }
    }

    /// Exact value at the rational `x`, rounded once; avoids the cancellation
    /// of floating Horner on high-degree polynomials.
    fn horner_f64(coeffs: &[Self], x: f64) -> f64 {
        let Some(xq) = BigRational::from_float(x) else {
            return f64::NAN;
        };
        let Some(last) = coeffs.len().checked_sub(1) else {
            return 0.0;
        };
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let scaled = |c: &BigRational| c.numer() * (&den / c.denom());
        let (u, v) = (xq.numer(), xq.denom());
        // Σ a_i u^i v^(d−i), with a_i = c_i · den
        let mut acc = scaled(&coeffs[last]);
        let mut vp = BigInt::one();
        for c in coeffs[..last].iter().rev() {
            vp *= v;
            acc = acc * u + scaled(c) * &vp;
        }
        BigRational::new(acc, den * vp).to_f64_lossy()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
}

impl Scalar for f32 {
    const EXACT: bool = false;
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Formats a rational as `"p/q"` (always with a denominator).
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::ratio(n, d)
    }

    #[test]
    fn exact_horner_rounds_once() {
        let c = [q(-1, 1), q(0, 1), q(1, 3)];
        assert_eq!(BigRational::horner_f64(&c, 3.0), 2.0);
        assert_eq!(BigRational::horner_f64(&[], 3.0), 0.0);
        // (x − 1)^20 at 1 + 2^-10 is 2^-200; floating Horner cancels to noise
        let p = crate::algebra::Polynomial::from_ints(&[-1, 1]).pow(20);
        let x = 1.0 + 2f64.powi(-10);
        assert_eq!(BigRational::horner_f64(p.coeffs(), x), 2f64.powi(-200));
        let floating: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64_lossy()).collect();
        assert!((f64::horner_f64(&floating, x) / 2f64.powi(-200) - 1.0).abs() > 1.0);
    }

    #[test]
    fn rational_integer_detection() {
        assert_eq!(q(6, 3).as_integer(), Some(2));
        assert_eq!(q(7, 3).as_integer(), None);
        assert_eq!(3.0_f64.as_integer(), Some(3));
        assert_eq!(3.5_f64.as_integer(), None);
    }

    #[test]
    fn content_is_positive_and_exact() {
        let c = BigRational::positive_content(&[q(-4, 3), q(2, 9), BigRational::zero()]);
        assert_eq!(c, q(2, 9));
        assert_eq!(f64::positive_content(&[1.0, -4.0]), 4.0);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("7/3"), Some(q(7, 3)));
        assert_eq!(parse_rational("-2"), Some(q(-2, 1)));
        assert_eq!(parse_rational(" 4/-6 "), Some(q(-2, 3)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("0.5"), None);
        assert_eq!(format_rational(&q(3, 1)), "3/1");
    }
}
