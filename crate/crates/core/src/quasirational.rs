//! Closed-form calculus for functions `x^α · e^(βx) · R(x)`.
//!
//! Products, quotients, derivatives and Wronskians of such functions stay in
//! the class, and their logarithmic derivatives are rational. Eigenfunctions
//! of factorizations, Sturm-Liouville densities and weights all live here.

use std::fmt;

use num_traits::One;

use crate::algebra::{isolate_real_roots, sturm_root_count, Bound, Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `x^alpha · e^(beta·x) · rat(x)` in canonical form.
///
/// Any power of `x` dividing the numerator or denominator of `rat` is moved
/// into `alpha`, so both have a nonzero constant term. The zero function is
/// `alpha = beta = 0, rat = 0`. Under this normalization the derived
/// `PartialEq` is mathematical equality.
#[derive(Clone, PartialEq, Debug)]
pub struct QuasiRational<T> {
    alpha: T,
    beta: T,
    rat: RationalFunction<T>,
}

impl<T: Scalar> QuasiRational<T> {
    pub fn new(alpha: T, beta: T, rat: RationalFunction<T>) -> Self {
        if rat.is_zero() {
            return Self::zero();
        }
        let a = rat.num().x_valuation();
        let b = rat.den().x_valuation();
        if a == 0 && b == 0 {
            return Self { alpha, beta, rat };
        }
        let num = rat.num().unshift(a);
        let den = rat.den().unshift(b);
        let shift = T::int(a as i64) - T::int(b as i64);
        Self {
            alpha: alpha + shift,
            beta,
            rat: RationalFunction::new(num, den).expect("nonzero denominator"),
        }
    }

    pub fn zero() -> Self {
        Self {
            alpha: T::zero(),
            beta: T::zero(),
            rat: RationalFunction::zero(),
        }
    }

    pub fn one() -> Self {
        Self::from_ratfun(RationalFunction::one())
    }

    pub fn constant(c: T) -> Self {
        Self::from_ratfun(RationalFunction::constant(c))
    }

    pub fn from_ratfun(rat: RationalFunction<T>) -> Self {
        Self::new(T::zero(), T::zero(), rat)
    }

    pub fn from_poly(p: Polynomial<T>) -> Self {
        Self::from_ratfun(RationalFunction::from_poly(p))
    }

    /// `x^alpha`.
    pub fn power(alpha: T) -> Self {
        Self::new(alpha, T::zero(), RationalFunction::one())
    }

    /// `e^(beta·x)`.
    pub fn exp(beta: T) -> Self {
        Self::new(T::zero(), beta, RationalFunction::one())
    }

    pub fn alpha(&self) -> &T {
        &self.alpha
    }

    pub fn beta(&self) -> &T {
        &self.beta
    }

    pub fn rat(&self) -> &RationalFunction<T> {
        &self.rat
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::new(
            self.alpha.clone() + other.alpha.clone(),
            self.beta.clone() + other.beta.clone(),
            &self.rat * &other.rat,
        )
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new(
            self.alpha.clone() - other.alpha.clone(),
            self.beta.clone() - other.beta.clone(),
            self.rat.div(&other.rat)?,
        ))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().div(self)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.alpha.clone(), self.beta.clone(), self.rat.scale(c))
    }

    pub fn mul_ratfun(&self, r: &RationalFunction<T>) -> Self {
        Self::new(self.alpha.clone(), self.beta.clone(), &self.rat * r)
    }

    pub fn powi(&self, e: i32) -> Result<Self> {
        if self.is_zero() {
            return if e > 0 {
                Ok(Self::zero())
            } else {
                Err(Error::DivisionByZero)
            };
        }
        let n = T::int(e as i64);
        Ok(Self::new(
            self.alpha.clone() * n.clone(),
            self.beta.clone() * n,
            self.rat.powi(e)?,
        ))
    }

    /// `α/x + β` as a rational function.
    fn exponent_log_derivative(&self) -> RationalFunction<T> {
        let a = RationalFunction::new(Polynomial::constant(self.alpha.clone()), Polynomial::x())
            .expect("nonzero denominator");
        &a + &RationalFunction::constant(self.beta.clone())
    }

    /// Rational parts `R_0..=R_n` of the derivatives: `f^(j) = x^α e^(βx) R_j`
    /// with the same `α`, `β` as `self`.
    pub fn derivative_parts(&self, n: usize) -> Vec<RationalFunction<T>> {
        let shift = self.exponent_log_derivative();
        let mut parts = Vec::with_capacity(n + 1);
        parts.push(self.rat.clone());
        for j in 0..n {
            let r = &parts[j];
            let next = &r.derivative() + &(&shift * r);
            parts.push(next);
        }
        parts
    }

    pub fn derivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let parts = self.derivative_parts(1);
        Self::new(self.alpha.clone(), self.beta.clone(), parts[1].clone())
    }

    /// `f'/f = α/x + β + R'/R`.
    pub fn log_derivative(&self) -> Result<RationalFunction<T>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("log-derivative of zero"));
        }
        Ok(&self.exponent_log_derivative() + &self.rat.derivative().div(&self.rat)?)
    }

    /// The rational function `g` with `self = x^alpha e^(beta x) g`, when it exists.
    pub fn rational_part_relative(&self, alpha: &T, beta: &T) -> Option<RationalFunction<T>> {
        if self.is_zero() {
            return Some(RationalFunction::zero());
        }
        if self.beta != *beta {
            return None;
        }
        let d = (self.alpha.clone() - alpha.clone()).as_integer()?;
        let xpow = if d >= 0 {
            RationalFunction::from_poly(Polynomial::monomial(T::one(), d as usize))
        } else {
            RationalFunction::new(
                Polynomial::one(),
                Polynomial::monomial(T::one(), (-d) as usize),
            )
            .expect("nonzero denominator")
        };
        Some(&self.rat * &xpow)
    }

    /// `Some` when the function is rational (`β = 0`, `α` an integer).
    pub fn as_rational(&self) -> Option<RationalFunction<T>> {
        self.rational_part_relative(&T::zero(), &T::zero())
    }

    pub fn as_polynomial(&self) -> Option<Polynomial<T>> {
        self.as_rational()?.as_polynomial().cloned()
    }

    pub fn is_polynomial(&self) -> bool {
        self.as_polynomial().is_some()
    }

    /// `Some(c)` when `self = c · other` for a nonzero constant `c`.
    pub fn proportionality(&self, other: &Self) -> Option<T> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        self.div(other).ok()?.as_rational()?.as_constant()
    }

    /// Floating evaluation `x^α e^(βx) R(x)`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if self.is_zero() {
            return Ok(0.0);
        }
        let r = self.rat.eval_f64(x)?;
        let xa = match self.alpha.as_integer() {
            Some(0) => 1.0,
            Some(n) if x == 0.0 && n < 0 => return Err(Error::Pole(x)),
            Some(n) => x.powi(n as i32),
            None if x <= 0.0 => return Err(Error::NegativeArgument(x)),
            None => x.powf(self.alpha.to_f64_lossy()),
        };
        Ok(xa * (self.beta.to_f64_lossy() * x).exp() * r)
    }

    /// `true` if the function is strictly positive on the open interval.
    /// Non-integer `α` requires the interval to lie in `(0, ∞)`.
    pub fn positive_on(&self, lo: &Bound<T>, hi: &Bound<T>) -> Result<bool> {
        if self.is_zero() {
            return Ok(false);
        }
        let lo_nonneg = match lo {
            Bound::Finite(a) => !a.is_negative(),
            _ => false,
        };
        let mut factor = &self.rat.num().clone() * self.rat.den();
        match self.alpha.as_integer() {
            Some(n) if n != 0 && !lo_nonneg => factor = factor.shift(1),
            Some(_) => {}
            None if !lo_nonneg => return Ok(false),
            None => {}
        }
        if sturm_root_count(&factor, lo, hi)? > 0 {
            return Ok(false);
        }
        // no sign changes inside: one interior sample decides
        let probe = match (lo, hi) {
            (Bound::Finite(a), Bound::Finite(b)) => (a.clone() + b.clone()) / T::int(2),
            (Bound::Finite(a), _) => a.clone() + T::one(),
            (_, Bound::Finite(b)) => b.clone() - T::one(),
            _ => T::one(),
        };
        let r = self.rat.eval(&probe)?;
        let sx = match self.alpha.as_integer() {
            Some(n) if n % 2 != 0 && probe.is_negative() => -T::one(),
            _ => T::one(),
        };
        Ok((r * sx).is_positive())
    }

    /// The quasi-rational `F` with `F'/F = g`, normalized with monic factors.
    ///
    /// `g` must have a polynomial part of degree ≤ 0 and only simple poles;
    /// the residue at `0` may be any rational, the residues elsewhere must be
    /// integers. Every log-derivative arising from the Laguerre operators and
    /// their Darboux partners is of this form.
    pub fn exp_integral(g: &RationalFunction<T>) -> Result<Self> {
        let (quot, rem) = g.num().divmod(g.den())?;
        let beta = quot
            .as_constant()
            .ok_or_else(|| Error::Unsupported(format!("polynomial part of degree > 0 in {g}")))?;
        let den = g.den();
        if rem.is_zero() {
            return Ok(Self::exp(beta));
        }
        if !den.is_squarefree()? {
            return Err(Error::Unsupported(format!("repeated pole in {g}")));
        }
        let dprime = den.derivative();
        let (alpha, d1) = if den.coeff(0).is_zero() {
            (rem.coeff(0) / dprime.coeff(0), den.unshift(1))
        } else {
            (T::zero(), den.clone())
        };
        let mut rat = RationalFunction::one();
        if d1.degree() > Some(0) {
            // residue at a root r of d1 is rem(r)/den'(r) = S(r), S = rem/den' mod d1
            let (_, inv, _) = dprime.rem(&d1)?.ext_gcd(&d1)?;
            let s = (&rem * &inv).rem(&d1)?;
            for (c, factor) in residue_classes(&s, &d1)? {
                let e = c
                    .as_integer()
                    .ok_or_else(|| Error::Unsupported(format!("non-integer residue {c} in {g}")))?;
                let part = RationalFunction::from_poly(factor).powi(e as i32)?;
                rat = &rat * &part;
            }
        }
        let f = Self::new(alpha, beta, rat);
        if f.log_derivative()? != *g {
            return Err(Error::Unsupported(format!(
                "residue decomposition failed for {g}"
            )));
        }
        Ok(f)
    }
}

/// Splits the roots of the squarefree `d` by the value of `s` there.
/// Returns `(value, monic factor of d whose roots take that value)`; every
/// value must be an integer.
fn residue_classes<T: Scalar>(
    s: &Polynomial<T>,
    d: &Polynomial<T>,
) -> Result<Vec<(T, Polynomial<T>)>> {
    if let Some(c) = s.as_constant() {
        return Ok(vec![(c, d.monic())]);
    }
    let mu = minimal_polynomial(s, d)?;
    let roots = isolate_real_roots(&mu, &T::ratio(1, 4))?;
    let mut values = Vec::new();
    for r in &roots {
        let lo = r.lo.to_f64_lossy().floor() as i64;
        let hi = r.hi.to_f64_lossy().ceil() as i64;
        if let Some(c) = (lo..=hi).map(T::int).find(|c| mu.eval(c).is_zero()) {
            values.push(c);
        }
    }
    if values.len() != mu.degree().unwrap_or(0) {
        return Err(Error::Unsupported("residues are not all integers".into()));
    }
    values
        .into_iter()
        .map(|c| {
            let shifted = s - &Polynomial::constant(c.clone());
            Ok((c, shifted.gcd(d)?))
        })
        .collect()
}

/// Minimal polynomial of multiplication by `s` in `Q[x]/(d)`.
fn minimal_polynomial<T: Scalar>(s: &Polynomial<T>, d: &Polynomial<T>) -> Result<Polynomial<T>> {
    let n = d.degree().unwrap_or(0);
    // echelon rows: (reduced vector, pivot, combination of powers)
    let mut rows: Vec<(Vec<T>, usize, Vec<T>)> = Vec::new();
    let mut power = Polynomial::one();
    for i in 0..=n {
        let mut v: Vec<T> = (0..n).map(|j| power.coeff(j)).collect();
        let mut combo = vec![T::zero(); i + 1];
        combo[i] = T::one();
        for (row, pivot, rc) in &rows {
            let f = v[*pivot].clone() / row[*pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (a, b) in v.iter_mut().zip(row) {
                *a = a.clone() - f.clone() * b.clone();
            }
            for (a, b) in combo.iter_mut().zip(rc) {
                *a = a.clone() - f.clone() * b.clone();
            }
        }
        match v.iter().position(|c| !c.is_zero()) {
            None => return Ok(Polynomial::new(combo).monic()),
            Some(p) => rows.push((v, p, combo)),
        }
        power = (&power * s).rem(d)?;
    }
    Err(Error::Unsupported(
        "minimal polynomial search exceeded the degree bound".into(),
    ))
}

/// Determinant by cofactor expansion along the first column.
pub(crate) fn det_cofactor<T: Scalar>(m: &[Vec<RationalFunction<T>>]) -> RationalFunction<T> {
    let n = m.len();
    match n {
        0 => RationalFunction::one(),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = RationalFunction::zero();
            for i in 0..n {
                if m[i][0].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<_>> = m
                    .iter()
                    .enumerate()
                    .filter(|(r, _)| *r != i)
                    .map(|(_, row)| row[1..].to_vec())
                    .collect();
                let term = &m[i][0] * &det_cofactor(&minor);
                acc = if i % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

/// Wronskian `W(f_1, …, f_n) = det[f_i^(j)]`.
///
/// Each `f_i` contributes its own `x^α_i e^(β_i x)` to every term of the
/// expansion, so those factors are pulled out and the determinant is taken
/// over the rational parts.
pub fn wronskian<T: Scalar>(fs: &[QuasiRational<T>]) -> Result<QuasiRational<T>> {
    let n = fs.len();
    if n == 0 || n > 6 {
        return Err(Error::Domain(format!(
            "Wronskian of {n} functions (need 1..=6)"
        )));
    }
    wronskian_rows(fs, &(0..n).collect::<Vec<_>>())
}

/// `det[f_i^(orders[j])]` for an arbitrary list of derivative orders.
pub(crate) fn wronskian_rows<T: Scalar>(
    fs: &[QuasiRational<T>],
    orders: &[usize],
) -> Result<QuasiRational<T>> {
    if fs.iter().any(|f| f.is_zero()) {
        return Ok(QuasiRational::zero());
    }
    let top = orders.iter().copied().max().unwrap_or(0);
    let cols: Vec<Vec<RationalFunction<T>>> = fs.iter().map(|f| f.derivative_parts(top)).collect();
    let matrix: Vec<Vec<RationalFunction<T>>> = orders
        .iter()
        .map(|&j| cols.iter().map(|c| c[j].clone()).collect())
        .collect();
    let alpha = fs.iter().fold(T::zero(), |a, f| a + f.alpha.clone());
    let beta = fs.iter().fold(T::zero(), |a, f| a + f.beta.clone());
    Ok(QuasiRational::new(alpha, beta, det_cofactor(&matrix)))
}

impl<T: Scalar> fmt::Display for QuasiRational<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if !self.alpha.is_zero() {
            if self.alpha.is_one() {
                parts.push("x".to_string());
            } else {
                parts.push(format!("x^({})", self.alpha));
            }
        }
        if !self.beta.is_zero() {
            if self.beta.is_one() {
                parts.push("e^x".to_string());
            } else {
                parts.push(format!("e^({}*x)", self.beta));
            }
        }
        let r = self.rat.to_string();
        if parts.is_empty() {
            return write!(f, "{r}");
        }
        if !self.rat.is_one() {
            if self.rat.as_constant().is_some() && r.starts_with('-') {
                return write!(f, "-{}", parts.join("*"));
            }
            parts.push(format!("({r})"));
        }
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;
    type P = Polynomial<Q>;
    type R = RationalFunction<Q>;
    type QR = QuasiRational<Q>;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    fn p(c: &[i64]) -> P {
        P::from_ints(c)
    }

    fn r(n: &[i64], d: &[i64]) -> R {
        R::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn exponents_cancel() {
        let f = QR::new(q(1, 2), q(1, 1), R::one());
        let g = QR::new(q(1, 2), q(-1, 1), R::one());
        assert_eq!(f.mul(&g), QR::from_poly(p(&[0, 1])));
    }

    #[test]
    fn canonical_form_moves_powers_of_x() {
        let f = QR::from_ratfun(r(&[0, 0, 2, 1], &[1]));
        assert_eq!(f.alpha(), &q(2, 1));
        assert_eq!(f.rat(), &R::from_poly(p(&[2, 1])));
        let g = QR::from_ratfun(r(&[1], &[0, 2]));
        assert_eq!(g.alpha(), &q(-1, 1));
        assert_eq!(g.rat(), &R::constant(q(1, 2)));
    }

    #[test]
    fn seed_times_exponential() {
        let phi3 = QR::new(q(0, 1), q(1, 1), R::from_poly(p(&[2, 1])));
        let g = QR::new(q(-2, 1), q(-1, 1), R::one());
        let prod = phi3.mul(&g);
        assert_eq!(prod, QR::new(q(-2, 1), q(0, 1), R::from_poly(p(&[2, 1]))));
        assert_eq!(phi3.div(&phi3).unwrap(), QR::one());
        assert!(phi3.div(&QR::zero()).is_err());
    }

    #[test]
    fn derivatives() {
        assert_eq!(QR::exp(q(1, 1)).derivative(), QR::exp(q(1, 1)));
        let k = q(2, 3);
        assert_eq!(
            QR::power(k.clone()).derivative(),
            QR::power(&k - q(1, 1)).scale(&k)
        );
        let f = QR::new(q(0, 1), q(1, 1), R::from_poly(p(&[2, 1])));
        assert_eq!(
            f.derivative(),
            QR::new(q(0, 1), q(1, 1), R::from_poly(p(&[3, 1])))
        );
    }

    #[test]
    fn log_derivatives() {
        assert_eq!(QR::exp(q(1, 1)).log_derivative().unwrap(), R::one());
        assert_eq!(
            QR::power(q(-2, 1)).log_derivative().unwrap(),
            r(&[-2], &[0, 1])
        );
        let f = QR::new(q(0, 1), q(1, 1), R::from_poly(p(&[2, 1])));
        assert_eq!(f.log_derivative().unwrap(), r(&[3, 1], &[2, 1]));
        assert!(QR::zero().log_derivative().is_err());
    }

    #[test]
    fn wronskian_examples() {
        let f = QR::new(q(1, 2), q(1, 1), R::from_poly(p(&[1, 1])));
        assert_eq!(wronskian(std::slice::from_ref(&f)).unwrap(), f);
        let one = QR::one();
        let x = QR::from_poly(p(&[0, 1]));
        assert_eq!(wronskian(&[one, x]).unwrap(), QR::one());
        let e = QR::exp(q(1, 1));
        let xe = QR::new(q(1, 1), q(1, 1), R::one());
        assert_eq!(wronskian(&[e, xe]).unwrap(), QR::exp(q(2, 1)));
        assert!(wronskian::<Q>(&[]).is_err());
    }

    #[test]
    fn wronskian_antisymmetry_and_dependence() {
        let f = QR::new(q(1, 3), q(1, 1), R::from_poly(p(&[1, 2])));
        let g = QR::new(q(0, 1), q(-1, 1), r(&[1], &[3, 1]));
        let h = QR::from_poly(p(&[1, 0, 1]));
        let w = wronskian(&[f.clone(), g.clone(), h.clone()]).unwrap();
        let ws = wronskian(&[g.clone(), f.clone(), h.clone()]).unwrap();
        assert_eq!(ws, w.scale(&q(-1, 1)));
        assert!(wronskian(&[f.clone(), f.scale(&q(2, 1))])
            .unwrap()
            .is_zero());
    }

    #[test]
    fn evaluation() {
        assert_eq!(QR::from_poly(p(&[0, 1])).eval(2.0).unwrap(), 2.0);
        assert_eq!(QR::exp(q(1, 1)).eval(0.0).unwrap(), 1.0);
        assert_eq!(QR::power(q(1, 2)).eval(4.0).unwrap(), 2.0);
        assert!(QR::power(q(1, 2)).eval(-1.0).is_err());
        assert!(QR::from_ratfun(r(&[1], &[1, 1])).eval(-1.0).is_err());
    }

    #[test]
    fn proportionality() {
        let f = QR::new(q(1, 2), q(1, 1), R::from_poly(p(&[1, 1])));
        assert_eq!(f.scale(&q(-3, 1)).proportionality(&f), Some(q(-3, 1)));
        assert_eq!(f.proportionality(&f.mul(&QR::power(q(1, 1)))), None);
        assert_eq!(f.proportionality(&QR::zero()), None);
    }

    #[test]
    fn exp_integral_of_laguerre_density() {
        // q/p for x y'' + (k+1-x) y' with k = 1/2
        let g = r(&[3, -2], &[0, 2]);
        let f = QR::exp_integral(&g).unwrap();
        assert_eq!(f, QR::new(q(3, 2), q(-1, 1), R::one()));
    }

    #[test]
    fn exp_integral_with_mixed_residues() {
        // d/dx log( x^(1/3) e^(2x) (x+1)^2 / ((x-2)(x^2+1)) )
        let target = QR::new(
            q(1, 3),
            q(2, 1),
            R::new(p(&[1, 2, 1]), &p(&[-2, 1]) * &p(&[1, 0, 1])).unwrap(),
        );
        let g = target.log_derivative().unwrap();
        let f = QR::exp_integral(&g).unwrap();
        assert_eq!(f.proportionality(&target), Some(q(1, 1)));
    }

    #[test]
    fn exp_integral_rejects_unsupported() {
        // polynomial part x
        assert!(QR::exp_integral(&R::from_poly(p(&[0, 1]))).is_err());
        // residue 1/2 at x = -1
        assert!(QR::exp_integral(&r(&[1], &[2, 2])).is_err());
        // double pole
        assert!(QR::exp_integral(&r(&[1], &[1, 2, 1])).is_err());
    }

    #[test]
    fn positivity() {
        let w = QR::new(q(1, 2), q(-1, 1), r(&[1], &[1, 2, 1]));
        let zero = Bound::Finite(q(0, 1));
        assert!(w.positive_on(&zero, &Bound::PosInf).unwrap());
        let bad = QR::new(q(1, 2), q(-1, 1), r(&[1], &[-1, 1]));
        assert!(!bad.positive_on(&zero, &Bound::PosInf).unwrap());
        assert!(!w
            .scale(&q(-1, 1))
            .positive_on(&zero, &Bound::PosInf)
            .unwrap());
    }

    #[test]
    fn display() {
        let f = QR::new(q(-2, 1), q(1, 1), R::from_poly(p(&[2, 1])));
        assert_eq!(f.to_string(), "x^(-2)*e^x*(x + 2)");
        assert_eq!(QR::power(q(-2, 1)).to_string(), "x^(-2)");
        assert_eq!(QR::constant(q(-1, 1)).to_string(), "-1");
    }
}
