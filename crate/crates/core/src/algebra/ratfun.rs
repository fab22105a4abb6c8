//! Reduced quotients of polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
///
/// With this normalization two rational functions are equal exactly when
/// their numerators and denominators agree coefficient-wise, so the
/// derived `PartialEq` is the mathematical equality.
#[derive(Clone, PartialEq, Debug)]
pub struct RationalFunction<T> {
    num: Polynomial<T>,
    den: Polynomial<T>,
}

impl<T: Scalar> RationalFunction<T> {
    pub fn new(num: Polynomial<T>, den: Polynomial<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den)?;
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        let inv = T::one() / den.leading().cloned().expect("nonzero");
        Ok(Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(p: Polynomial<T>) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: T) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(T::int(n))
    }

    /// The function `x`.
    pub fn x() -> Self {
        Self::from_poly(Polynomial::x())
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn num(&self) -> &Polynomial<T> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial<T>> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<T> {
        if self.is_polynomial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn powi(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let e = e.unsigned_abs();
        // num and den stay coprime under powers
        Ok(Self {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Quotient rule, reduced.
    pub fn derivative(&self) -> Self {
        if self.is_polynomial() {
            return Self::from_poly(self.num.derivative());
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den).expect("nonzero denominator")
    }

    pub fn eval(&self, x: &T) -> Result<T> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole(x.to_f64_lossy()));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> Result<f64> {
        let d = self.den.eval_f64(x);
        if d == 0.0 {
            return Err(Error::Pole(x));
        }
        Ok(self.num.eval_f64(x) / d)
    }

    fn combine(&self, rhs: &Self, sub: bool) -> Self {
        if self.den == rhs.den {
            let n = if sub {
                &self.num - &rhs.num
            } else {
                &self.num + &rhs.num
            };
            return Self::new(n, self.den.clone()).expect("nonzero denominator");
        }
        let a = &self.num * &rhs.den;
        let b = &rhs.num * &self.den;
        let n = if sub { &a - &b } else { &a + &b };
        Self::new(n, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl<T: Scalar> From<Polynomial<T>> for RationalFunction<T> {
    fn from(p: Polynomial<T>) -> Self {
        Self::from_poly(p)
    }
}

impl<T: Scalar> Zero for RationalFunction<T> {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}

impl<T: Scalar> One for RationalFunction<T> {
    fn one() -> Self {
        RationalFunction::one()
    }
}

impl<'a, T: Scalar> Add<&'a RationalFunction<T>> for &'a RationalFunction<T> {
    type Output = RationalFunction<T>;
    fn add(self, rhs: &'a RationalFunction<T>) -> RationalFunction<T> {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        self.combine(rhs, false)
    }
}

impl<'a, T: Scalar> Sub<&'a RationalFunction<T>> for &'a RationalFunction<T> {
    type Output = RationalFunction<T>;
    fn sub(self, rhs: &'a RationalFunction<T>) -> RationalFunction<T> {
        if rhs.is_zero() {
            return self.clone();
        }
        self.combine(rhs, true)
    }
}

impl<'a, T: Scalar> Mul<&'a RationalFunction<T>> for &'a RationalFunction<T> {
    type Output = RationalFunction<T>;
    fn mul(self, rhs: &'a RationalFunction<T>) -> RationalFunction<T> {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominator")
    }
}

impl<T: Scalar> Neg for &RationalFunction<T> {
    type Output = RationalFunction<T>;
    fn neg(self) -> RationalFunction<T> {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<T: Scalar> Neg for RationalFunction<T> {
    type Output = RationalFunction<T>;
    fn neg(self) -> RationalFunction<T> {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr<RationalFunction<T>> for RationalFunction<T> {
            type Output = RationalFunction<T>;
            fn $m(self, rhs: RationalFunction<T>) -> RationalFunction<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> fmt::Display for RationalFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Polynomial<T>| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = Polynomial<BigRational>;
    type R = RationalFunction<BigRational>;

    fn p(c: &[i64]) -> P {
        P::from_ints(c)
    }

    fn r(n: &[i64], d: &[i64]) -> R {
        R::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn sum_of_reciprocals() {
        assert_eq!(&r(&[1], &[0, 1]) + &r(&[1], &[0, 1]), r(&[2], &[0, 1]));
    }

    #[test]
    fn derivative_of_reciprocal() {
        assert_eq!(r(&[1], &[0, 1]).derivative(), r(&[-1], &[0, 0, 1]));
    }

    #[test]
    fn cancellation_normalizes() {
        let a = r(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(a, R::from_poly(p(&[1, 1])));
        assert!(a.is_polynomial());
        let b = r(&[2], &[4, 2]);
        assert_eq!(b.num(), &p(&[1]));
        assert_eq!(b.den(), &p(&[2, 1]));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(R::new(p(&[1]), P::zero()), Err(Error::DivisionByZero));
        assert!(R::one().div(&R::zero()).is_err());
        assert!(R::zero().recip().is_err());
    }

    #[test]
    fn powers_and_eval() {
        let a = r(&[1], &[2, 1]);
        assert_eq!(a.powi(-2).unwrap(), R::from_poly(p(&[4, 4, 1])));
        assert_eq!(
            a.eval(&BigRational::int(0)).unwrap(),
            BigRational::ratio(1, 2)
        );
        assert!(a.eval(&BigRational::int(-2)).is_err());
        assert_eq!(a.eval_f64(2.0).unwrap(), 0.25);
    }

    #[test]
    fn display() {
        assert_eq!(r(&[1], &[2, 1]).to_string(), "1/(x + 2)");
        assert_eq!(r(&[3, 1], &[0, 1]).to_string(), "(x + 3)/x");
    }
}
