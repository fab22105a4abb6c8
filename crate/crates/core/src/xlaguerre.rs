//! Exceptional `X_m` Laguerre polynomials of types I and II: polynomials,
//! operators, weights, norms and the shape-invariant ladder.

use crate::algebra::{
    isolate_real_roots, sturm_root_count, Bound, Polynomial, RationalFunction, RootInterval,
};
use crate::diffop::DiffOperator;
use crate::error::{Error, Result};
use crate::laguerre::{
    laguerre, laguerre_operator, IdentityFailure, IdentityReport, SeedFamily, SeedSpec,
};
use crate::quadrature::gamma_fn;
use crate::quasirational::QuasiRational;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum XVariant {
    TypeI,
    TypeII,
}

impl XVariant {
    pub fn name(self) -> &'static str {
        match self {
            Self::TypeI => "type1",
            Self::TypeII => "type2",
        }
    }
}

/// `ξ_{k,m}(x) = L_m^(k)(−x)`.
pub fn xi<T: Scalar>(k: &T, m: i64) -> Polynomial<T> {
    laguerre(m, k).reflect()
}

/// `η_{k,m}(x) = L_m^(−k)(x)`.
pub fn eta<T: Scalar>(k: &T, m: i64) -> Polynomial<T> {
    laguerre(m, &(-k.clone()))
}

fn ratio<T: Scalar>(num: Polynomial<T>, den: Polynomial<T>) -> RationalFunction<T> {
    RationalFunction::new(num, den).expect("nonzero Laguerre denominator")
}

/// `ρ_{k,m} = ξ'_{k,m}/ξ_{k,m}`, computed through `ξ_{k+1,m−1}/ξ_{k,m}`.
pub fn rho<T: Scalar>(k: &T, m: i64) -> RationalFunction<T> {
    ratio(xi(&(k.clone() + T::one()), m - 1), xi(k, m))
}

/// `σ_{k,m} = −η'_{k,m}/η_{k,m}`, computed through `η_{k−1,m−1}/η_{k,m}`.
pub fn sigma<T: Scalar>(k: &T, m: i64) -> RationalFunction<T> {
    ratio(eta(&(k.clone() - T::one()), m - 1), eta(k, m))
}

/// An exceptional family `(variant, k, m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct XFamily<T> {
    variant: XVariant,
    k: T,
    m: u32,
}

/// Nonnegative real roots of the weight denominator, with certificates.
pub fn weight_denominator_roots<T: Scalar>(
    variant: XVariant,
    k: &T,
    m: u32,
) -> Result<Vec<RootInterval<T>>> {
    let d = weight_denominator(variant, k, m as i64);
    let width = T::ratio(1, 1 << 20);
    Ok(isolate_real_roots(&d, &width)?
        .into_iter()
        .filter(|r| r.hi >= T::zero())
        .collect())
}

fn weight_denominator<T: Scalar>(variant: XVariant, k: &T, m: i64) -> Polynomial<T> {
    match variant {
        XVariant::TypeI => xi(&(k.clone() - T::one()), m),
        XVariant::TypeII => eta(&(k.clone() + T::one()), m),
    }
}

impl<T: Scalar> XFamily<T> {
    /// Validated family: type I needs `k > −1`, type II `k > m`, and the
    /// weight denominator must have no roots on `[0, ∞)`.
    pub fn new(variant: XVariant, k: T, m: u32) -> Result<Self> {
        let fam = Self::formal(variant, k, m);
        let k = &fam.k;
        let range_ok = match variant {
            XVariant::TypeI => *k > -T::one(),
            XVariant::TypeII => *k > T::int(m as i64),
        };
        let d = weight_denominator(variant, k, m as i64);
        let positive_roots = sturm_root_count(&d, &Bound::Finite(T::zero()), &Bound::PosInf)?;
        let root_at_zero = d.eval(&T::zero()).is_zero();
        if range_ok && positive_roots == 0 && !root_at_zero {
            return Ok(fam);
        }
        let bound = match variant {
            XVariant::TypeI => "k > -1".to_string(),
            XVariant::TypeII => format!("k > m = {m}"),
        };
        let roots: Vec<String> = weight_denominator_roots(variant, k, m)?
            .iter()
            .map(|r| {
                if r.is_exact() {
                    format!("x = {}", r.lo)
                } else {
                    format!("x in [{}, {}]", r.lo, r.hi)
                }
            })
            .collect();
        let detail = if roots.is_empty() {
            "weight denominator has no root on [0, inf)".to_string()
        } else {
            format!("weight denominator vanishes at {}", roots.join(", "))
        };
        Err(Error::InvalidParameters(format!(
            "{} family with k = {k}, m = {m}: requires {bound}; {detail}",
            variant.name()
        )))
    }

    /// A family without range or positivity validation, for exact identities
    /// that hold for every `k`. Weights and norms of such a family may be
    /// meaningless.
    pub fn formal(variant: XVariant, k: T, m: u32) -> Self {
        Self { variant, k, m }
    }

    pub fn variant(&self) -> XVariant {
        self.variant
    }

    pub fn k(&self) -> &T {
        &self.k
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    fn mi(&self) -> i64 {
        self.m as i64
    }

    fn shifted(&self, dk: i64) -> Self {
        Self::formal(self.variant, self.k.clone() + T::int(dk), self.m)
    }

    /// Polynomial denominator of the weight: `ξ_{k−1,m}` or `η_{k+1,m}`.
    pub fn weight_denominator(&self) -> Polynomial<T> {
        weight_denominator(self.variant, &self.k, self.mi())
    }

    /// `X_n` for `n ≥ m`, from the two-term formula.
    pub fn polynomial(&self, n: u32) -> Result<Polynomial<T>> {
        let (k, m) = (&self.k, self.mi());
        if n < self.m {
            return Err(Error::InvalidParameters(format!(
                "exceptional index n = {n} is below m = {m}"
            )));
        }
        let j = n as i64 - m;
        let one = T::one();
        Ok(match self.variant {
            XVariant::TypeI => {
                let km1 = k.clone() - one;
                &(&xi(k, m) * &laguerre(j, &km1)) + &(&xi(&km1, m) * &laguerre(j - 1, k))
            }
            XVariant::TypeII => {
                let k1 = k.clone() + one.clone();
                let k2 = k.clone() + T::int(2);
                let first = &(&eta(&k1, m) * &laguerre(j - 1, &k2)).shift(1);
                let c = T::int(m) - k.clone() - one;
                first + &(&eta(&k2, m) * &laguerre(j, &k1)).scale(&c)
            }
        })
    }

    /// `𝓛^I_{k,m}` or `𝓛^II_{k,m}`.
    pub fn operator(&self) -> DiffOperator<T> {
        let (k, m) = (&self.k, self.mi());
        let x = RationalFunction::x();
        let base =
            RationalFunction::from_poly(Polynomial::new(vec![k.clone() + T::one(), -T::one()]));
        match self.variant {
            XVariant::TypeI => {
                let r = rho(&(k.clone() - T::one()), m);
                let q = &base - &(&x * &r).scale(&T::int(2));
                let c = &RationalFunction::int(m) - &r.scale(&(k.clone() * T::int(2)));
                DiffOperator::second_order(x, q, c)
            }
            XVariant::TypeII => {
                let s = &(&x * &sigma(&(k.clone() + T::one()), m)).scale(&T::int(2));
                let q = &base + s;
                let c = &RationalFunction::int(-m) - s;
                DiffOperator::second_order(x, q, c)
            }
        }
    }

    /// `x^k e^(−x) / D(x)²` with `D` the weight denominator.
    pub fn weight(&self) -> Result<QuasiRational<T>> {
        let d = self.weight_denominator();
        if d.eval(&T::zero()).is_zero()
            || sturm_root_count(&d, &Bound::Finite(T::zero()), &Bound::PosInf)? > 0
        {
            return Err(Error::InvalidParameters(format!(
                "weight denominator {d} vanishes on [0, inf) for k = {}, m = {}",
                self.k, self.m
            )));
        }
        let rat = ratio(Polynomial::one(), &d * &d);
        Ok(QuasiRational::new(self.k.clone(), -T::one(), rat))
    }

    /// Closed-form `∫_0^∞ X_n² W dx`.
    pub fn norm(&self, n: u32) -> Result<f64> {
        if n < self.m {
            return Err(Error::InvalidParameters(format!(
                "exceptional index n = {n} is below m = {}",
                self.m
            )));
        }
        let k = self.k.to_f64_lossy();
        let (n, m) = (n as f64, self.m as f64);
        let fact = gamma_fn(n - m + 1.0)?;
        match self.variant {
            XVariant::TypeI if self.m == 0 => Ok(gamma_fn(k + n + 1.0)? / fact),
            XVariant::TypeI => Ok((k + n) * gamma_fn(k + n - m)? / fact),
            XVariant::TypeII => Ok((1.0 + k + n - 2.0 * m) * gamma_fn(2.0 + k + n - m)? / fact),
        }
    }

    /// The first-order intertwiner from the classical operator:
    /// `A^I_{k−1,m} = ξ_{k−1,m} D − ξ_{k,m}` with gauge `ξ_{k−1,m}`, or
    /// `A^II_{k+1,m} = x η_{k+1,m} D + (k+1−m) η_{k+2,m}` with gauge `x η_{k+1,m}`.
    pub fn classical_intertwiner(&self) -> DiffOperator<T> {
        let (k, m) = (&self.k, self.mi());
        let (b, lower) = match self.variant {
            XVariant::TypeI => (xi(&(k.clone() - T::one()), m), -xi(k, m)),
            XVariant::TypeII => {
                let c = k.clone() + T::one() - T::int(m);
                (
                    eta(&(k.clone() + T::one()), m).shift(1),
                    eta(&(k.clone() + T::int(2)), m).scale(&c),
                )
            }
        };
        let b = RationalFunction::from_poly(b);
        let w = ratio(-lower, b.num().clone());
        DiffOperator::first_order(&b, &w)
    }

    /// The partner of [`Self::classical_intertwiner`]:
    /// `B^I_{k−1,m} = (x D + k)/ξ_{k−1,m}` or `B^II_{k+1,m} = (D − 1)/η_{k+1,m}`.
    pub fn classical_partner(&self) -> DiffOperator<T> {
        let (k, m) = (&self.k, self.mi());
        match self.variant {
            XVariant::TypeI => {
                let inv = ratio(Polynomial::one(), xi(&(k.clone() - T::one()), m));
                DiffOperator::new(vec![inv.scale(k), &RationalFunction::x() * &inv])
            }
            XVariant::TypeII => {
                let inv = ratio(Polynomial::one(), eta(&(k.clone() + T::one()), m));
                DiffOperator::new(vec![-&inv, inv])
            }
        }
    }

    /// The classical index `k'` and constant `c` with
    /// `B A = 𝓛_{k'} − c` and `A B = 𝓛^{I/II}_{k,m} − c`.
    pub fn classical_bracket(&self) -> (T, T) {
        let (k, m) = (self.k.clone(), T::int(self.mi()));
        match self.variant {
            XVariant::TypeI => (k.clone() - T::one(), k + m),
            XVariant::TypeII => (k.clone() + T::one(), k + T::one() - m),
        }
    }

    /// The classical operator `𝓛_{k'}` of [`Self::classical_bracket`].
    pub fn classical_operator(&self) -> DiffOperator<T> {
        laguerre_operator(&self.classical_bracket().0)
    }

    /// The classical seed whose factorization produces this family:
    /// `φ3` of `𝓛_{k−1}` for type I, `φ2` of `𝓛_{k+1}` for type II.
    pub fn classical_seed(&self) -> SeedSpec<T> {
        let family = match self.variant {
            XVariant::TypeI => SeedFamily::Phi3,
            XVariant::TypeII => SeedFamily::Phi2,
        };
        SeedSpec::new(family, self.classical_bracket().0, self.m)
    }

    /// `X_n = −A(L_{n−m}^{(k')})`, the intertwiner route to the polynomials.
    pub fn build_by_darboux(&self, n: u32) -> Result<Polynomial<T>> {
        if n < self.m {
            return Err(Error::InvalidParameters(format!(
                "exceptional index n = {n} is below m = {}",
                self.m
            )));
        }
        let (kc, _) = self.classical_bracket();
        let y = laguerre(n as i64 - self.mi(), &kc);
        let img = self.classical_intertwiner().apply_poly(&y);
        img.as_polynomial().map(|p| -p).ok_or_else(|| {
            Error::Invariant(format!(
                "intertwiner image of L_{} is not polynomial",
                n - self.m
            ))
        })
    }

    /// Shape-invariant lowering operator `Â_{k,m}`, checked against its
    /// kernel (`ξ_{k,m}` or `η_{k+2,m}`).
    pub fn lowering(&self) -> Result<DiffOperator<T>> {
        let (k, m) = (&self.k, self.mi());
        let (op, kernel) = match self.variant {
            XVariant::TypeI => {
                let b = ratio(xi(k, m), xi(&(k.clone() - T::one()), m));
                (DiffOperator::first_order(&b, &rho(k, m)), xi(k, m))
            }
            XVariant::TypeII => {
                let k1 = k.clone() + T::one();
                let k2 = k.clone() + T::int(2);
                let b = ratio(eta(&k2, m), eta(&k1, m));
                (DiffOperator::first_order(&b, &-sigma(&k2, m)), eta(&k2, m))
            }
        };
        if !op.apply_poly(&kernel).is_zero() {
            return Err(Error::Invariant(
                "lowering operator does not annihilate its kernel".into(),
            ));
        }
        Ok(op)
    }

    /// Shape-invariant raising operator `B̂_{k,m}`, checked against its
    /// kernel `e^x x^(−1−k) ξ_{k−1,m}` or `e^x x^(−1−k) η_{k+1,m}`.
    pub fn raising(&self) -> Result<DiffOperator<T>> {
        let (k, m) = (&self.k, self.mi());
        let one = T::one();
        let x = RationalFunction::x();
        let (op, kernel_poly) = match self.variant {
            XVariant::TypeI => {
                let km1 = k.clone() - one.clone();
                let c = ratio(xi(&km1, m), xi(k, m));
                let first = DiffOperator::new(vec![c.scale(&(one + k.clone())), &x * &c]);
                (first.sub(&DiffOperator::multiplication(x)), xi(&km1, m))
            }
            XVariant::TypeII => {
                let k1 = k.clone() + one.clone();
                let k2 = k.clone() + T::int(2);
                let c = ratio(eta(&k1, m), eta(&k2, m));
                let base =
                    RationalFunction::from_poly(Polynomial::new(vec![one + k.clone(), -T::one()]));
                let first = DiffOperator::new(vec![&base * &c, &x * &c]);
                let extra = &ratio(eta(k, m - 1), eta(&k2, m)) * &x;
                (first.add(&DiffOperator::multiplication(extra)), eta(&k1, m))
            }
        };
        let kernel = QuasiRational::new(
            -(k.clone() + T::one()),
            T::one(),
            RationalFunction::from_poly(kernel_poly),
        );
        if !op.apply(&kernel).is_zero() {
            return Err(Error::Invariant(
                "raising operator does not annihilate its kernel".into(),
            ));
        }
        Ok(op)
    }

    /// The family at `k + 1`, the target of the lowering operator.
    pub fn next(&self) -> Self {
        self.shifted(1)
    }

    /// Every exact identity of the family for `m ≤ n ≤ nmax`: eigen-relation,
    /// agreement with the intertwiner construction, intertwining and bracket
    /// relations with the classical operator, and the shape-invariant ladder.
    pub fn identity_suite(&self, nmax: u32) -> IdentityReport {
        self.identity_suite_with_fault(nmax, false)
    }

    /// [`Self::identity_suite`] with the eigenvalue sign flipped when
    /// `flip_eigenvalue_sign` is set; a mutation check for the suite itself.
    pub fn identity_suite_with_fault(
        &self,
        nmax: u32,
        flip_eigenvalue_sign: bool,
    ) -> IdentityReport {
        let mut report = IdentityReport::default();
        let k = self.k.to_string();
        let mut check = |identity: &'static str, n: i64, ok: bool| {
            report.checked += 1;
            if !ok {
                report.failures.push(IdentityFailure {
                    identity,
                    n,
                    k: k.clone(),
                });
            }
        };
        let op = self.operator();
        let (a, b) = (self.classical_intertwiner(), self.classical_partner());
        let classical = self.classical_operator();
        let c = self.classical_bracket().1;
        check("intertwining", -1, a.compose(&classical) == op.compose(&a));
        check("bracket BA", -1, b.compose(&a).add_scalar(&c) == classical);
        check("bracket AB", -1, a.compose(&b).add_scalar(&c) == op);
        let next = self.next();
        let ladder = match (self.lowering(), self.raising()) {
            (Ok(lo), Ok(hi)) => Some((lo, hi)),
            _ => None,
        };
        check("ladder kernels", -1, ladder.is_some());
        if let Some((lo, hi)) = &ladder {
            check("ladder BA", -1, hi.compose(lo) == op);
            check(
                "ladder AB",
                -1,
                lo.compose(hi).add_scalar(&T::one()) == next.operator(),
            );
        }
        for n in self.m..=nmax.max(self.m.saturating_sub(1)) {
            let ni = n as i64;
            let (Ok(y), Ok(y_next)) = (self.polynomial(n), next.polynomial(n)) else {
                check("polynomial", ni, false);
                continue;
            };
            let lam = if flip_eigenvalue_sign {
                T::int(ni - self.mi())
            } else {
                T::int(self.mi() - ni)
            };
            check(
                "eigen-relation",
                ni,
                op.apply_poly(&y) == RationalFunction::from_poly(y.scale(&lam)),
            );
            check(
                "darboux construction",
                ni,
                self.build_by_darboux(n).ok().as_ref() == Some(&y),
            );
            if let Some((lo, hi)) = &ladder {
                let expect = if n > self.m {
                    -next
                        .polynomial(n - 1)
                        .unwrap_or_else(|_| Polynomial::zero())
                } else {
                    Polynomial::zero()
                };
                check(
                    "lowering",
                    ni,
                    lo.apply_poly(&y) == RationalFunction::from_poly(expect),
                );
                let raised = self
                    .polynomial(n + 1)
                    .map(|p| p.scale(&T::int(ni + 1 - self.mi())));
                check(
                    "raising",
                    ni,
                    raised.is_ok_and(|p| hi.apply_poly(&y_next) == RationalFunction::from_poly(p)),
                );
            }
        }
        report
    }
}

/// Runs `check` at `degree_in_k + 1` distinct rational `k` (the values
/// `j + 1/3`, `j = 0, 1, …`, skipping those rejected by `excluded`). When the
/// checked identity is polynomial in `k` of at most that degree, passing all
/// of them certifies it for every `k`.
pub fn k_identity_sweep<T, C, E>(check: C, degree_in_k: usize, excluded: E) -> bool
where
    T: Scalar,
    C: Fn(&T) -> bool,
    E: Fn(&T) -> bool,
{
    let mut tested = 0;
    let mut j = 0i64;
    while tested <= degree_in_k {
        let k = T::ratio(3 * j + 1, 3);
        j += 1;
        if excluded(&k) {
            continue;
        }
        if !check(&k) {
            return false;
        }
        tested += 1;
    }
    true
}
