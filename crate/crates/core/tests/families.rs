//! Cross-module checks: the exceptional families produced by the generic
//! Darboux engine agree with the closed forms, and quadrature confirms the
//! resulting weights.

use xdarboux::algebra::Bound;
use xdarboux::darboux::{
    classify, factorize, norm_transfer, partner_weight, primitivity_audit, sl_data, Classification,
};
use xdarboux::laguerre::{classical_norm, identity_suite, laguerre, laguerre_operator};
use xdarboux::quadrature::{certified_inner_product, gauss_laguerre, weighted_inner_product};
use xdarboux::xlaguerre::{k_identity_sweep, XFamily, XVariant};
use xdarboux::{Error, Poly, QuasiRat, RatFn, Rational, Scalar};

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn engine_factorization(variant: XVariant, k: &Rational, m: u32) -> xdarboux::Factorization {
    let spec = XFamily::formal(variant, k.clone(), m).classical_seed();
    let (phi, lam) = spec.seed().unwrap();
    factorize(
        &laguerre_operator(&spec.k),
        &phi,
        Some(&spec.natural_gauge()),
        &lam,
    )
    .unwrap()
}

#[test]
fn engine_partner_is_the_exceptional_operator() {
    for variant in [XVariant::TypeI, XVariant::TypeII] {
        for m in 0..=3u32 {
            let k = q(2 * m as i64 + 3, 2);
            let f = engine_factorization(variant, &k, m);
            let fam = XFamily::new(variant, k.clone(), m).unwrap();
            assert_eq!(f.that, fam.operator(), "{variant:?} m={m}");
            assert_eq!(f.a_op, fam.classical_intertwiner());
            assert_eq!(f.b_op, fam.classical_partner());
            assert_eq!(classify(&f, None).unwrap(), Classification::Isospectral);
        }
    }
}

#[test]
fn engine_weights_match_closed_forms() {
    for variant in [XVariant::TypeI, XVariant::TypeII] {
        for m in 1..=2u32 {
            let k = q(2 * m as i64 + 5, 2);
            let f = engine_factorization(variant, &k, m);
            let w = sl_data(&f.t, Bound::Finite(q(0, 1)), Bound::PosInf)
                .unwrap()
                .weight;
            let what = partner_weight(&f, &w).unwrap();
            let fam = XFamily::new(variant, k, m).unwrap();
            let c = what
                .proportionality(&fam.weight().unwrap())
                .expect("proportional weights");
            assert!(c > q(0, 1));
            let direct = sl_data(&f.that, Bound::Finite(q(0, 1)), Bound::PosInf).unwrap();
            assert!(direct.weight_positive);
            assert!(direct
                .weight
                .proportionality(&what)
                .is_some_and(|c| c > q(0, 1)));
        }
    }
}

#[test]
fn norm_transfer_predicts_exceptional_norms() {
    // X_n = -A(L_{n-m}^(k-1)); the factor -1 does not change the squared norm
    let (k, m) = (q(1, 1), 1u32);
    let f = engine_factorization(XVariant::TypeI, &k, m);
    let fam = XFamily::new(XVariant::TypeI, k.clone(), m).unwrap();
    let kc = &k - q(1, 1);
    for j in 0..5u32 {
        let predicted =
            norm_transfer(&f, classical_norm(j, &kc).unwrap(), &q(-(j as i64), 1)).unwrap();
        let closed = fam.norm(j + m).unwrap();
        assert!(
            (predicted - closed).abs() < 1e-12 * closed,
            "j={j}: {predicted} vs {closed}"
        );
    }
    assert!((norm_transfer(&f, 1.0, &q(-1, 1)).unwrap() - 3.0).abs() < 1e-15);
}

#[test]
fn quadrature_examples() {
    let fam = XFamily::new(XVariant::TypeI, q(1, 1), 1).unwrap();
    let w = fam.weight().unwrap();
    let x1 = fam.polynomial(1).unwrap();
    let x2 = fam.polynomial(2).unwrap();
    assert_eq!(x1, Poly::from_ints(&[2, 1]));
    let n11 = certified_inner_product(&x1, &x1, &w, 16).unwrap();
    assert!((n11.value - 2.0).abs() < 1e-8);
    let n12 = weighted_inner_product(&x1, &x2, &w, 128).unwrap();
    assert!(n12.abs() < 1e-8);
    let one = Poly::one();
    assert!(
        (weighted_inner_product(&one, &one, &QuasiRat::exp(q(-1, 1)), 4).unwrap() - 1.0).abs()
            < 1e-14
    );
    let rule = gauss_laguerre(0.0, 4).unwrap();
    assert!((rule.integrate(|x| x) - 1.0).abs() < 1e-12);
}

#[test]
fn generic_engine_runs_in_floating_point() {
    // the same factorization over f64: exact comparisons become approximate
    // only through rounding, and the classical case has none
    let k = 1.5f64;
    let t = laguerre_operator(&k);
    let f = factorize(
        &t,
        &xdarboux::quasirational::QuasiRational::one(),
        None,
        &0.0,
    )
    .unwrap();
    assert_eq!(f.that, laguerre_operator(&(k + 1.0)).add_scalar(&-1.0));
    let l3 = laguerre(3, &0.5f32);
    // 35/16 − 35/8 + 7/4 − 1/6 = −29/48
    assert!((l3.eval(&1.0) + 29.0 / 48.0).abs() < 1e-6);
}

#[test]
fn identity_sweeps_in_k() {
    // X_n is polynomial in k of degree at most 2m; the residual of the
    // eigen-relation numerator stays below 4m + 2, so 4m + 3 samples certify it
    for m in 1..=2u32 {
        for variant in [XVariant::TypeI, XVariant::TypeII] {
            let ok = k_identity_sweep(
                |k: &Rational| {
                    let f = XFamily::formal(variant, k.clone(), m);
                    let op = f.operator();
                    (m..=m + 3).all(|n| {
                        let y = f.polynomial(n).unwrap();
                        op.apply_poly(&y) == RatFn::from_poly(y.scale(&q(m as i64 - n as i64, 1)))
                    })
                },
                (4 * m + 2) as usize,
                |k: &Rational| {
                    XFamily::formal(variant, k.clone(), m)
                        .weight_denominator()
                        .eval(&q(0, 1))
                        == q(0, 1)
                },
            );
            assert!(ok, "{variant:?} m={m}");
        }
    }
}

#[test]
fn classical_identity_suite_and_audit() {
    for k in [q(1, 1), q(-1, 2), q(7, 3)] {
        assert!(identity_suite(&k, 12).passed());
    }
    let fam = XFamily::new(XVariant::TypeI, q(5, 2), 2).unwrap();
    let f = engine_factorization(XVariant::TypeI, &q(5, 2), 2);
    let ys: Vec<Poly> = (0..6).map(|j| laguerre(j, &q(3, 2))).collect();
    let audit = primitivity_audit(&f, &ys).unwrap();
    assert!(audit.all_polynomial);
    assert!(audit.common_factor.is_one());
    assert_eq!(
        fam.polynomial(2).unwrap(),
        -f.a_op.apply_poly(&ys[0]).as_polynomial().unwrap().clone()
    );
}

#[test]
fn invalid_families_are_refused() {
    assert!(matches!(
        XFamily::new(XVariant::TypeII, q(1, 1), 2),
        Err(Error::InvalidParameters(_))
    ));
    assert!(matches!(
        XFamily::new(XVariant::TypeI, q(-3, 2), 0),
        Err(Error::InvalidParameters(_))
    ));
    let formal = XFamily::formal(XVariant::TypeII, q(1, 2), 2);
    assert!(formal.weight().is_err());
    assert!(XFamily::new(XVariant::TypeII, q(5, 2), 2).is_ok());
}
