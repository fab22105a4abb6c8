//! Linear differential operators with rational-function coefficients.

use std::fmt;

use crate::algebra::{Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::quasirational::QuasiRational;
use crate::scalar::Scalar;

/// `Σ_j coeffs[j] · d^j/dx^j`, trailing zero coefficients trimmed.
#[derive(Clone, PartialEq, Debug)]
pub struct DiffOperator<T> {
    coeffs: Vec<RationalFunction<T>>,
}

impl<T: Scalar> DiffOperator<T> {
    pub fn new(mut coeffs: Vec<RationalFunction<T>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Second-order operator `p y'' + q y' + r y`.
    pub fn second_order(
        p: RationalFunction<T>,
        q: RationalFunction<T>,
        r: RationalFunction<T>,
    ) -> Self {
        Self::new(vec![r, q, p])
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn identity() -> Self {
        Self::multiplication(RationalFunction::one())
    }

    /// `d/dx`.
    pub fn derivation() -> Self {
        Self::new(vec![RationalFunction::zero(), RationalFunction::one()])
    }

    /// Multiplication by `f`.
    pub fn multiplication(f: RationalFunction<T>) -> Self {
        Self::new(vec![f])
    }

    pub fn scalar(c: T) -> Self {
        Self::multiplication(RationalFunction::constant(c))
    }

    /// `b·d/dx − b·w`; its kernel is spanned by `exp(∫w)`.
    pub fn first_order(b: &RationalFunction<T>, w: &RationalFunction<T>) -> Self {
        Self::new(vec![-(b * w), b.clone()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[RationalFunction<T>] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> RationalFunction<T> {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    pub fn leading(&self) -> Option<&RationalFunction<T>> {
        self.coeffs.last()
    }

    /// `(p, q, r)` of a second-order operator.
    pub fn pqr(
        &self,
    ) -> Result<(
        RationalFunction<T>,
        RationalFunction<T>,
        RationalFunction<T>,
    )> {
        if self.order() != Some(2) {
            return Err(Error::WrongOrder {
                expected: 2,
                found: self.order(),
            });
        }
        Ok((self.coeff(2), self.coeff(1), self.coeff(0)))
    }

    pub fn apply(&self, f: &QuasiRational<T>) -> QuasiRational<T> {
        if f.is_zero() || self.is_zero() {
            return QuasiRational::zero();
        }
        let parts = f.derivative_parts(self.coeffs.len() - 1);
        let sum = self
            .coeffs
            .iter()
            .zip(&parts)
            .filter(|(c, _)| !c.is_zero())
            .fold(RationalFunction::zero(), |acc, (c, g)| &acc + &(c * g));
        QuasiRational::new(f.alpha().clone(), f.beta().clone(), sum)
    }

    /// Applies to a polynomial; the result is rational in general and
    /// `as_polynomial` on it tells whether it is in fact polynomial.
    pub fn apply_poly(&self, y: &Polynomial<T>) -> RationalFunction<T> {
        let mut d = y.clone();
        let mut acc = RationalFunction::zero();
        for c in &self.coeffs {
            if !c.is_zero() && !d.is_zero() {
                acc = &acc + &(c * &RationalFunction::from_poly(d.clone()));
            }
            d = d.derivative();
        }
        acc
    }

    /// `self ∘ other` by the Leibniz rule
    /// `D^i ∘ t = Σ_l C(i,l) t^(l) D^(i-l)`.
    pub fn compose(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let n = self.coeffs.len() - 1;
        let m = other.coeffs.len() - 1;
        let mut out = vec![RationalFunction::zero(); n + m + 1];
        // derivs[j][l] = l-th derivative of other.coeffs[j]
        let derivs: Vec<Vec<RationalFunction<T>>> = other
            .coeffs
            .iter()
            .map(|t| {
                let mut v = vec![t.clone()];
                for l in 0..n {
                    let d = v[l].derivative();
                    v.push(d);
                }
                v
            })
            .collect();
        for (i, s) in self.coeffs.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let mut binom = T::one();
            for l in 0..=i {
                let c = s.scale(&binom);
                for (j, dj) in derivs.iter().enumerate() {
                    if dj[l].is_zero() {
                        continue;
                    }
                    let k = i - l + j;
                    out[k] = &out[k] + &(&c * &dj[l]);
                }
                binom = binom * T::int((i - l) as i64) / T::int(l as i64 + 1);
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|j| &self.coeff(j) + &other.coeff(j)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|j| &self.coeff(j) - &other.coeff(j)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Left multiplication `f · self`.
    pub fn scale_by(&self, f: &RationalFunction<T>) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * f).collect())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    /// `self + c·I`.
    pub fn add_scalar(&self, c: &T) -> Self {
        self.add(&Self::scalar(c.clone()))
    }

    /// `μ⁻¹ ∘ self ∘ μ`.
    pub fn gauge_conjugate(&self, mu: &RationalFunction<T>) -> Result<Self> {
        let inv = mu.recip()?;
        Ok(Self::multiplication(inv).compose(&self.compose(&Self::multiplication(mu.clone()))))
    }
}

impl<T: Scalar> fmt::Display for DiffOperator<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => format!("[{c}]"),
                1 => format!("[{c}]*D"),
                _ => format!("[{c}]*D^{j}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
