//! Rational factorizations `T − λ0 = B A` of second-order operators and the
//! partner operator `T̂ = A B + λ0`.

mod crum;
mod invariance;

pub use crum::{
    crum_chain, permutability_check, wronskian_operator, CrumChain, CrumSeed, IntertwinerRelation,
    Permutability,
};
pub use invariance::{covariance_check, gauge_constraint_check, shape_invariance_check};

use crate::algebra::{Bound, Polynomial, RationalFunction};
use crate::diffop::DiffOperator;
use crate::error::{Error, Result};
use crate::quasirational::QuasiRational;
use crate::scalar::Scalar;

/// A verified rational factorization of `t` at `lambda0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<T> {
    pub t: DiffOperator<T>,
    pub lambda0: T,
    /// Seed eigenfunction, `t(φ) = λ0 φ`.
    pub phi: QuasiRational<T>,
    /// Gauge; `A = b (d/dx − w)`.
    pub b: RationalFunction<T>,
    /// `φ'/φ`.
    pub w: RationalFunction<T>,
    pub a_op: DiffOperator<T>,
    pub b_op: DiffOperator<T>,
    pub bhat: RationalFunction<T>,
    pub what: RationalFunction<T>,
    pub that: DiffOperator<T>,
    /// Partner eigenfunction, spanning the kernel of `B`.
    pub phihat: QuasiRational<T>,
}

/// `p (w' + w²) + q w + r = λ0`, exactly.
pub fn riccati_check<T: Scalar>(
    t: &DiffOperator<T>,
    w: &RationalFunction<T>,
    lambda0: &T,
) -> Result<bool> {
    let (p, q, r) = t.pqr()?;
    let lhs = &(&(&p * &(&w.derivative() + &(w * w))) + &(&q * w)) + &r;
    Ok(lhs == RationalFunction::constant(lambda0.clone()))
}

/// Builds the factorization of `t` with respect to the seed `phi` and gauge
/// `b`; without a gauge the denominator of `w = φ'/φ` is used. Every bundle
/// invariant is checked before returning.
pub fn factorize<T: Scalar>(
    t: &DiffOperator<T>,
    phi: &QuasiRational<T>,
    b: Option<&RationalFunction<T>>,
    lambda0: &T,
) -> Result<Factorization<T>> {
    let (p, q, _) = t.pqr()?;
    let w = phi.log_derivative()?;
    if !riccati_check(t, &w, lambda0)? {
        return Err(Error::Riccati(lambda0.to_string()));
    }
    let b = match b {
        Some(b) => b.clone(),
        None => RationalFunction::from_poly(w.den().clone()),
    };
    if b.is_zero() {
        return Err(Error::ZeroGauge);
    }
    let bhat = p.div(&b)?;
    let blog = b.derivative().div(&b)?;
    let what = &(&(-&w) - &q.div(&p)?) + &blog;
    let a_op = DiffOperator::first_order(&b, &w);
    let b_op = DiffOperator::first_order(&bhat, &what);
    let that = a_op.compose(&b_op).add_scalar(lambda0);

    let density = QuasiRational::exp_integral(&q.div(&p)?)?;
    let phihat = density.mul_ratfun(&b.recip()?).mul(phi).recip()?;

    let check = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::Invariant(what.to_string()))
        }
    };
    check(
        b_op.compose(&a_op) == t.add_scalar(&-lambda0.clone()),
        "B A + lambda0 = T",
    )?;
    check(a_op.apply(phi).is_zero(), "A(phi) = 0")?;
    check(b_op.apply(&phihat).is_zero(), "B(phihat) = 0")?;
    check(&bhat * &b == p, "bhat b = p")?;
    let qhat = &(&q + &p.derivative()) - &(&p * &blog).scale(&T::int(2));
    check(
        that.coeff(2) == p && that.coeff(1) == qhat,
        "partner coefficients",
    )?;

    Ok(Factorization {
        t: t.clone(),
        lambda0: lambda0.clone(),
        phi: phi.clone(),
        b,
        w,
        a_op,
        b_op,
        bhat,
        what,
        that,
        phihat,
    })
}

/// `T̂ A = A T` and `B T̂ = T B`.
pub fn intertwine_check<T: Scalar>(f: &Factorization<T>) -> bool {
    f.that.compose(&f.a_op) == f.a_op.compose(&f.t)
        && f.b_op.compose(&f.that) == f.t.compose(&f.b_op)
}

/// `Ŵ = p W / b²`.
pub fn partner_weight<T: Scalar>(
    f: &Factorization<T>,
    weight: &QuasiRational<T>,
) -> Result<QuasiRational<T>> {
    let p = f.t.coeff(2);
    Ok(weight.mul_ratfun(&p.div(&(&f.b * &f.b))?))
}

/// Predicted squared norm `(λ0 − λj)·‖y_j‖²` of `A(y_j)` under `Ŵ`.
pub fn norm_transfer<T: Scalar>(f: &Factorization<T>, norm_j: f64, lambda_j: &T) -> Result<f64> {
    if f.lambda0 < *lambda_j {
        return Err(Error::Domain(format!(
            "norm transfer needs lambda0 >= lambda_j ({} < {lambda_j})",
            f.lambda0
        )));
    }
    Ok((f.lambda0.clone() - lambda_j.clone()).to_f64_lossy() * norm_j)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    StateDeleting,
    StateAdding,
    Isospectral,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Self::StateDeleting => "state-deleting",
            Self::StateAdding => "state-adding",
            Self::Isospectral => "isospectral",
        }
    }
}

/// Classifies by polynomiality of `φ` and `φ̂`. A polynomial seed counts as
/// state-deleting only when it is proportional to `first_eigenpoly`.
pub fn classify<T: Scalar>(
    f: &Factorization<T>,
    first_eigenpoly: Option<&Polynomial<T>>,
) -> Result<Classification> {
    let phi_poly = f.phi.as_polynomial();
    let phihat_poly = f.phihat.is_polynomial();
    match (phi_poly, phihat_poly) {
        (Some(_), true) => Err(Error::AmbiguousClassification(format!(
            "phi = {}, phihat = {}",
            f.phi, f.phihat
        ))),
        (Some(phi), false) => {
            let y1 = first_eigenpoly.ok_or(Error::GroundStateUnknown)?;
            let proportional = QuasiRational::from_poly(phi.clone())
                .proportionality(&QuasiRational::from_poly(y1.clone()))
                .is_some();
            if proportional {
                Ok(Classification::StateDeleting)
            } else {
                Err(Error::NotGroundState(format!(
                    "phi = {phi}, first eigenpolynomial = {y1}"
                )))
            }
        }
        (None, true) => Ok(Classification::StateAdding),
        (None, false) => Ok(Classification::Isospectral),
    }
}

/// Sturm-Liouville data of a second-order operator: `P = exp ∫ q/p`,
/// `W = P/p`, `R = −r W`, with positivity of `W` checked on the interval.
#[derive(Clone, Debug, PartialEq)]
pub struct SLData<T> {
    pub density: QuasiRational<T>,
    pub weight: QuasiRational<T>,
    pub r_weight: QuasiRational<T>,
    pub interval: (Bound<T>, Bound<T>),
    pub weight_positive: bool,
}

pub fn sl_data<T: Scalar>(t: &DiffOperator<T>, lo: Bound<T>, hi: Bound<T>) -> Result<SLData<T>> {
    let (p, q, r) = t.pqr()?;
    let density = QuasiRational::exp_integral(&q.div(&p)?)?;
    let weight = density.mul_ratfun(&p.recip()?);
    let r_weight = weight.mul_ratfun(&(-&r));
    let weight_positive = weight.positive_on(&lo, &hi)?;
    Ok(SLData {
        density,
        weight,
        r_weight,
        interval: (lo, hi),
        weight_positive,
    })
}

/// Common factor of the images `A(y_j)` of the first six polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeAudit<T> {
    /// Monic gcd of the numerators; `1` for a primitive gauge.
    pub common_factor: Polynomial<T>,
    /// Whether every image was a polynomial.
    pub all_polynomial: bool,
}

/// Reports a nontrivial common factor among transformed eigenpolynomials;
/// nothing is rescaled.
pub fn primitivity_audit<T: Scalar>(
    f: &Factorization<T>,
    eigenpolys: &[Polynomial<T>],
) -> Result<GaugeAudit<T>> {
    let mut common: Option<Polynomial<T>> = None;
    let mut all_polynomial = true;
    for y in eigenpolys.iter().take(6) {
        let img = f.a_op.apply_poly(y);
        if img.is_zero() {
            continue;
        }
        all_polynomial &= img.is_polynomial();
        common = Some(match common {
            None => img.num().monic(),
            Some(c) => c.gcd(img.num())?,
        });
    }
    Ok(GaugeAudit {
        common_factor: common.unwrap_or_else(Polynomial::one),
        all_polynomial,
    })
}
