//! Randomized invariants of the exact algebra, checked against independent
//! oracles (known roots, floating finite differences, direct evaluation).

use proptest::prelude::*;
use xdarboux::algebra::{isolate_real_roots, sturm_root_count, Bound};
use xdarboux::darboux::riccati_check;
use xdarboux::laguerre::{laguerre_operator, SeedFamily, SeedSpec};
use xdarboux::{Operator, Poly, QuasiRat, RatFn, Rational, Scalar};

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..=6, 0..6).prop_map(|c| Poly::from_ints(&c))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rational::ratio(n, d))
}

fn ratfun() -> impl Strategy<Value = RatFn> {
    (small_poly(), small_poly()).prop_filter_map("zero denominator", |(n, d)| RatFn::new(n, d).ok())
}

fn quasi() -> impl Strategy<Value = QuasiRat> {
    (small_rational(), -2i64..=2, ratfun())
        .prop_map(|(a, b, r)| QuasiRat::new(a, Rational::int(b), r))
}

fn tiny_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-3i64..=3, 0..3).prop_map(|c| Poly::from_ints(&c))
}

/// Coefficients n(x)/(x − a)^e keep compositions small enough to stay fast.
fn coefficient() -> impl Strategy<Value = RatFn> {
    (tiny_poly(), -2i64..=2, 0u32..=1)
        .prop_map(|(n, a, e)| RatFn::new(n, Poly::from_ints(&[-a, 1]).pow(e)).unwrap())
}

fn operator() -> impl Strategy<Value = Operator> {
    prop::collection::vec(coefficient(), 1..4).prop_map(Operator::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn product_rule(a in small_poly(), b in small_poly()) {
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn division_reconstructs(a in small_poly(), b in small_poly()) {
        prop_assume!(!b.is_zero());
        let (quot, rem) = a.divmod(&b).unwrap();
        prop_assert_eq!(&(&quot * &b) + &rem, a);
        prop_assert!(rem.degree() < b.degree());
    }

    #[test]
    fn gcd_divides_both(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let (ac, bc) = (&a * &c, &b * &c);
        let g = ac.gcd(&bc).unwrap();
        prop_assert!(ac.rem(&g).unwrap().is_zero());
        prop_assert!(bc.rem(&g).unwrap().is_zero());
        prop_assert!(g.rem(&c.monic()).unwrap().is_zero());
    }

    #[test]
    fn sturm_matches_known_roots(roots in prop::collection::btree_set(-20i64..=20, 1..6), lo in -25i64..=0, hi in 1i64..=25, twice in any::<bool>()) {
        // roots r/2 with optional multiplicity two; oracle counts them directly
        let mut p = Poly::one();
        for &r in &roots {
            let f = Poly::new(vec![Rational::ratio(-r, 2), Rational::int(1)]);
            p = &p * &f;
            if twice {
                p = &p * &f;
            }
        }
        let (lo_q, hi_q) = (Rational::ratio(2 * lo + 1, 4), Rational::ratio(2 * hi + 1, 4));
        let expect = roots.iter().filter(|&&r| Rational::ratio(r, 2) > lo_q && Rational::ratio(r, 2) < hi_q).count();
        prop_assert_eq!(sturm_root_count(&p, &Bound::Finite(lo_q), &Bound::Finite(hi_q)).unwrap(), expect);
        prop_assert_eq!(sturm_root_count(&p, &Bound::NegInf, &Bound::PosInf).unwrap(), roots.len());
        let iso = isolate_real_roots(&p, &Rational::ratio(1, 64)).unwrap();
        prop_assert_eq!(iso.len(), roots.len());
        for (iv, &r) in iso.iter().zip(&roots) {
            let root = Rational::ratio(r, 2);
            prop_assert!(iv.lo <= root && root <= iv.hi);
        }
    }

    #[test]
    fn isolation_of_irrational_roots(c in 2i64..40) {
        // x^2 - c: roots ±√c
        let p = Poly::from_ints(&[-c, 0, 1]);
        let width = Rational::ratio(1, 1 << 30);
        let iso = isolate_real_roots(&p, &width).unwrap();
        prop_assert_eq!(iso.len(), 2);
        let s = (c as f64).sqrt();
        prop_assert!((iso[1].midpoint().to_f64_lossy() - s).abs() < 1e-8);
        prop_assert!((iso[0].midpoint().to_f64_lossy() + s).abs() < 1e-8);
        prop_assert!(iso.iter().all(|iv| iv.certifies(&p)));
    }

    #[test]
    fn log_derivative_is_additive(f in quasi(), g in quasi()) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let lhs = f.mul(&g).log_derivative().unwrap();
        let rhs = &f.log_derivative().unwrap() + &g.log_derivative().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_matches_finite_difference(f in quasi(), x in 0.5f64..3.0) {
        prop_assume!(!f.is_zero());
        let d = f.derivative();
        let Ok(dx) = d.eval(x) else {
            return Ok(());
        };
        // central differences at h and h/2, Richardson-extrapolated; their
        // disagreement bounds the truncation error near poles
        let central = |h: f64| -> Option<f64> {
            let (p, m) = (f.eval(x + h).ok()?, f.eval(x - h).ok()?);
            (p.is_finite() && m.is_finite()).then(|| (p - m) / (2.0 * h))
        };
        let (Some(d1), Some(d2)) = (central(1e-4), central(5e-5)) else {
            return Ok(());
        };
        prop_assume!(dx.is_finite() && dx.abs() < 1e6);
        let fd = (4.0 * d2 - d1) / 3.0;
        let tol = 1e-6 * (1.0 + dx.abs()) + (d2 - d1).abs();
        prop_assert!((fd - dx).abs() <= tol, "fd {} vs {}", fd, dx);
    }

    #[test]
    fn composition_is_associative(a in operator(), b in operator(), c in operator()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn composition_agrees_with_application(a in operator(), b in operator(), f in quasi()) {
        prop_assert_eq!(a.compose(&b).apply(&f), a.apply(&b.apply(&f)));
    }

    #[test]
    fn exp_integral_inverts_log_derivative(f in quasi()) {
        prop_assume!(!f.is_zero());
        let g = f.log_derivative().unwrap();
        if let Ok(h) = QuasiRat::exp_integral(&g) {
            prop_assert!(h.proportionality(&f).is_some());
        }
    }

    #[test]
    fn seeds_satisfy_riccati(n in -8i64..=40, d in 1i64..=6, m in 0u32..=4, fam in 0usize..4) {
        let k = Rational::ratio(n, d);
        let spec = SeedSpec::new(SeedFamily::ALL[fam], k.clone(), m);
        if let Ok((phi, lam)) = spec.seed() {
            let w = phi.log_derivative().unwrap();
            prop_assert!(riccati_check(&laguerre_operator(&k), &w, &lam).unwrap());
        }
    }
}

#[test]
fn exp_integral_recovers_polynomial_products() {
    // x^(3/2) e^(-x) (x+1)^2 (x-3)
    let f = QuasiRat::new(
        Rational::ratio(3, 2),
        Rational::int(-1),
        RatFn::from_poly(&Poly::from_ints(&[1, 1]).pow(2) * &Poly::from_ints(&[-3, 1])),
    );
    let h = QuasiRat::exp_integral(&f.log_derivative().unwrap()).unwrap();
    assert!(h.proportionality(&f).is_some());
}
