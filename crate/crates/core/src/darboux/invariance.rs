//! Shape invariance, the gauge constraint and covariance of seed families.

use super::Factorization;
use crate::algebra::RationalFunction;
use crate::diffop::DiffOperator;
use crate::error::{Error, Result};
use crate::quasirational::QuasiRational;
use crate::scalar::Scalar;

/// `T_{h(k)} = A_k B_k + λ_k` for every `k` in `ks`. A factorization that
/// fails to build counts as a failure.
pub fn shape_invariance_check<T, Op, H, Lam, Fact>(
    t_of: Op,
    h: H,
    lam_of: Lam,
    fact: Fact,
    ks: &[T],
) -> bool
where
    T: Scalar,
    Op: Fn(&T) -> DiffOperator<T>,
    H: Fn(&T) -> T,
    Lam: Fn(&T) -> T,
    Fact: Fn(&T) -> Result<Factorization<T>>,
{
    ks.iter().all(|k| match fact(k) {
        Ok(f) => t_of(&h(k)) == f.a_op.compose(&f.b_op).add_scalar(&lam_of(k)),
        Err(_) => false,
    })
}

/// `p P_k / P_{h(k)} = b_k²` in log-derivative form:
/// `p'/p + (q_k − q_{h(k)})/p = 2 b_k'/b_k`.
pub fn gauge_constraint_check<T: Scalar>(
    p: &RationalFunction<T>,
    qk: &RationalFunction<T>,
    qhk: &RationalFunction<T>,
    bk: &RationalFunction<T>,
) -> Result<bool> {
    let lhs = &p.derivative().div(p)? + &(qk - qhk).div(p)?;
    let rhs = bk.derivative().div(bk)?.scale(&T::int(2));
    Ok(lhs == rhs)
}

/// `Some(c)` when `A_k(φ_k) = c φ_{h(k)}`, `None` when not proportional;
/// an error when `A_k` annihilates `φ_k`.
pub fn covariance_check<T: Scalar>(
    ak: &DiffOperator<T>,
    phik: &QuasiRational<T>,
    phihk: &QuasiRational<T>,
) -> Result<Option<T>> {
    let image = ak.apply(phik);
    if image.is_zero() {
        return Err(Error::DegenerateSeed("A_k annihilates phi_k".into()));
    }
    Ok(image.proportionality(phihk))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::darboux::factorize;
    use crate::laguerre::{laguerre_operator, SeedFamily, SeedSpec};
    use num_rational::BigRational;

    type Q = BigRational;
    type R = RationalFunction<Q>;
    type QR = QuasiRational<Q>;

    fn q(n: i64) -> Q {
        Q::int(n)
    }

    fn classical(k: &Q) -> Result<Factorization<Q>> {
        factorize(&laguerre_operator(k), &QR::one(), None, &q(0))
    }

    #[test]
    fn classical_shape_invariance() {
        let ks = [Q::ratio(1, 2), q(1), q(3)];
        let h = |k: &Q| k + q(1);
        assert!(shape_invariance_check(
            laguerre_operator,
            h,
            |_| q(1),
            classical,
            &ks
        ));
        assert!(!shape_invariance_check(
            laguerre_operator,
            h,
            |_| q(2),
            classical,
            &ks
        ));
    }

    #[test]
    fn classical_gauge_constraint() {
        let x = R::x();
        for k in [q(1), Q::ratio(5, 2)] {
            let qk = laguerre_operator(&k).coeff(1);
            let qhk = laguerre_operator(&(k.clone() + q(1))).coeff(1);
            assert!(gauge_constraint_check(&x, &qk, &qhk, &R::one()).unwrap());
            assert!(!gauge_constraint_check(
                &x,
                &qk,
                &qhk,
                &R::from_poly(crate::algebra::Polynomial::from_ints(&[1, 1]))
            )
            .unwrap());
        }
    }

    #[test]
    fn covariance() {
        let d = DiffOperator::derivation();
        let phi3 = |k: i64| SeedSpec::new(SeedFamily::Phi3, q(k), 1).seed().unwrap().0;
        assert_eq!(
            covariance_check(&d, &phi3(1), &phi3(2)).unwrap(),
            Some(q(1))
        );
        let phi2 = |k: i64| SeedSpec::new(SeedFamily::Phi2, q(k), 1).seed().unwrap().0;
        assert_eq!(
            covariance_check(&d, &phi2(3), &phi2(4)).unwrap(),
            Some(q(-2))
        );
        assert_eq!(covariance_check(&d, &phi3(1), &phi2(4)).unwrap(), None);
        assert!(covariance_check(&d, &QR::one(), &QR::one()).is_err());
    }
}
