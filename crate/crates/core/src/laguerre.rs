//! Classical associated Laguerre polynomials, their operator and the four
//! quasi-rational seed families.

use crate::algebra::{Polynomial, RationalFunction};
use crate::diffop::DiffOperator;
use crate::error::{Error, Result};
use crate::quadrature::gamma_fn;
use crate::quasirational::QuasiRational;
use crate::scalar::Scalar;

/// `L_n^(k)(x)` by the three-term recurrence
/// `n L_n + (x − 2n − k + 1) L_{n−1} + (n + k − 1) L_{n−2} = 0`.
/// Negative `n` gives the zero polynomial.
pub fn laguerre<T: Scalar>(n: i64, k: &T) -> Polynomial<T> {
    laguerre_table(n, k).pop().unwrap_or_else(Polynomial::zero)
}

/// `[L_0^(k), …, L_n^(k)]`; empty for negative `n`.
pub fn laguerre_table<T: Scalar>(n: i64, k: &T) -> Vec<Polynomial<T>> {
    if n < 0 {
        return Vec::new();
    }
    let mut out: Vec<Polynomial<T>> = Vec::with_capacity(n as usize + 1);
    out.push(Polynomial::one());
    for j in 1..=n {
        let jj = T::int(j);
        let lin = Polynomial::new(vec![T::one() - T::int(2 * j) - k.clone(), T::one()]);
        let prev = &out[(j - 1) as usize];
        let mut next = &lin * prev;
        if j >= 2 {
            let c = jj.clone() + k.clone() - T::one();
            next = &next + &out[(j - 2) as usize].scale(&c);
        }
        out.push(next.scale(&(-T::one() / jj)));
    }
    out
}

/// `𝓛_k(y) = x y'' + (k + 1 − x) y'`.
pub fn laguerre_operator<T: Scalar>(k: &T) -> DiffOperator<T> {
    DiffOperator::second_order(
        RationalFunction::x(),
        RationalFunction::from_poly(Polynomial::new(vec![k.clone() + T::one(), -T::one()])),
        RationalFunction::zero(),
    )
}

/// The classical factorization `𝓛_k = B_k A_k` with `A_k = d/dx`.
pub fn classical_lowering<T: Scalar>() -> DiffOperator<T> {
    DiffOperator::derivation()
}

/// `B_k(y) = x y' + (k + 1 − x) y`.
pub fn classical_raising<T: Scalar>(k: &T) -> DiffOperator<T> {
    DiffOperator::new(vec![
        RationalFunction::from_poly(Polynomial::new(vec![k.clone() + T::one(), -T::one()])),
        RationalFunction::x(),
    ])
}

/// The four quasi-rational seed families of `𝓛_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeedFamily {
    /// `L_m^(k)(x)`, eigenvalue `−m`.
    Phi1,
    /// `x^(−k) L_m^(−k)(x)`, eigenvalue `k − m`.
    Phi2,
    /// `e^x L_m^(k)(−x)`, eigenvalue `k + 1 + m`.
    Phi3,
    /// `x^(−k) e^x L_m^(−k)(−x)`, eigenvalue `m + 1`.
    Phi4,
}

impl SeedFamily {
    pub const ALL: [SeedFamily; 4] = [Self::Phi1, Self::Phi2, Self::Phi3, Self::Phi4];

    pub fn name(self) -> &'static str {
        match self {
            Self::Phi1 => "phi1",
            Self::Phi2 => "phi2",
            Self::Phi3 => "phi3",
            Self::Phi4 => "phi4",
        }
    }
}

impl std::str::FromStr for SeedFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "phi1" | "1" => Ok(Self::Phi1),
            "phi2" | "2" => Ok(Self::Phi2),
            "phi3" | "3" => Ok(Self::Phi3),
            "phi4" | "4" => Ok(Self::Phi4),
            other => Err(Error::InvalidParameters(format!(
                "unknown seed family {other:?}"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeedSpec<T> {
    pub family: SeedFamily,
    pub k: T,
    pub m: u32,
}

impl<T: Scalar> SeedSpec<T> {
    pub fn new(family: SeedFamily, k: T, m: u32) -> Self {
        Self { family, k, m }
    }

    /// The polynomial factor of the seed.
    fn polynomial_factor(&self) -> Polynomial<T> {
        let m = self.m as i64;
        match self.family {
            SeedFamily::Phi1 => laguerre(m, &self.k),
            SeedFamily::Phi2 => laguerre(m, &(-self.k.clone())),
            SeedFamily::Phi3 => laguerre(m, &self.k).reflect(),
            SeedFamily::Phi4 => laguerre(m, &(-self.k.clone())).reflect(),
        }
    }

    /// `(φ, λ0)` with `𝓛_k(φ) = λ0 φ`.
    pub fn seed(&self) -> Result<(QuasiRational<T>, T)> {
        let m = T::int(self.m as i64);
        let k = self.k.clone();
        if self.family == SeedFamily::Phi2 {
            if let Some(ki) = k.as_integer() {
                if ki >= 0 && ki <= self.m as i64 {
                    return Err(Error::DegenerateSeed(format!(
                        "phi2 needs k not a nonnegative integer <= m (k = {k}, m = {})",
                        self.m
                    )));
                }
            }
        }
        let poly = self.polynomial_factor();
        if poly.is_zero() {
            return Err(Error::DegenerateSeed(format!(
                "zero polynomial factor for {self:?}"
            )));
        }
        let rat = RationalFunction::from_poly(poly);
        let (alpha, beta, lambda0) = match self.family {
            SeedFamily::Phi1 => (T::zero(), T::zero(), -m),
            SeedFamily::Phi2 => (-k.clone(), T::zero(), k - m),
            SeedFamily::Phi3 => (T::zero(), T::one(), k + T::one() + m),
            SeedFamily::Phi4 => (-k, T::one(), m + T::one()),
        };
        Ok((QuasiRational::new(alpha, beta, rat), lambda0))
    }

    /// The gauge under which each family produces polynomial partner data:
    /// `1`, `x L_m^(−k)(x)`, `L_m^(k)(−x)`, `x L_m^(−k)(−x)`.
    pub fn natural_gauge(&self) -> RationalFunction<T> {
        let poly = self.polynomial_factor();
        match self.family {
            SeedFamily::Phi1 => RationalFunction::one(),
            SeedFamily::Phi3 => RationalFunction::from_poly(poly),
            SeedFamily::Phi2 | SeedFamily::Phi4 => RationalFunction::from_poly(poly.shift(1)),
        }
    }
}

/// One failed check from an identity suite; `n` is −1 for identities
/// between operators rather than polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityFailure {
    pub identity: &'static str,
    pub n: i64,
    pub k: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct IdentityReport {
    pub checked: usize,
    pub failures: Vec<IdentityFailure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verifies, for `0 ≤ n ≤ nmax`, the derivative identity
/// `L_n^(k)' = −L_{n−1}^(k+1)`, the contiguity identity
/// `L_n^(k) = L_n^(k+1) − L_{n−1}^(k+1)`, the recurrence residual and the
/// eigen-relation `𝓛_k L_n^(k) = −n L_n^(k)`.
pub fn identity_suite<T: Scalar>(k: &T, nmax: u32) -> IdentityReport {
    identity_suite_with_fault(k, nmax, false)
}

/// [`identity_suite`] with the sign of the derivative identity flipped when
/// `flip_derivative_sign` is set; a mutation check for the suite itself.
pub fn identity_suite_with_fault<T: Scalar>(
    k: &T,
    nmax: u32,
    flip_derivative_sign: bool,
) -> IdentityReport {
    let nmax = nmax.min(30) as i64;
    let k1 = k.clone() + T::one();
    let lk = laguerre_table(nmax, k);
    let lk1 = laguerre_table(nmax, &k1);
    let get = |t: &Vec<Polynomial<T>>, n: i64| {
        if n < 0 {
            Polynomial::zero()
        } else {
            t[n as usize].clone()
        }
    };
    let op = laguerre_operator(k);
    let sign = if flip_derivative_sign {
        T::one()
    } else {
        -T::one()
    };
    let mut report = IdentityReport::default();
    let mut check = |identity: &'static str, n: i64, ok: bool| {
        report.checked += 1;
        if !ok {
            report.failures.push(IdentityFailure {
                identity,
                n,
                k: k.to_string(),
            });
        }
    };
    for n in 0..=nmax {
        let ln = get(&lk, n);
        check(
            "derivative",
            n,
            ln.derivative() == get(&lk1, n - 1).scale(&sign),
        );
        check("contiguity", n, ln == &get(&lk1, n) - &get(&lk1, n - 1));
        let lin = Polynomial::new(vec![T::one() - T::int(2 * n) - k.clone(), T::one()]);
        let residual = &(&ln.scale(&T::int(n)) + &(&lin * &get(&lk, n - 1)))
            + &get(&lk, n - 2).scale(&(T::int(n) + k.clone() - T::one()));
        check("recurrence", n, residual.is_zero());
        let eig = op.apply_poly(&ln);
        check(
            "eigen-relation",
            n,
            eig == RationalFunction::from_poly(ln.scale(&T::int(-n))),
        );
    }
    report
}

/// `∫_0^∞ (L_n^(k))² x^k e^(−x) dx = Γ(n + k + 1)/n!`.
pub fn classical_norm<T: Scalar>(n: u32, k: &T) -> Result<f64> {
    let k = k.to_f64_lossy();
    if k <= -1.0 {
        return Err(Error::InvalidParameters(format!(
            "classical norm needs k > -1, got {k}"
        )));
    }
    Ok(gamma_fn(n as f64 + k + 1.0)? / gamma_fn(n as f64 + 1.0)?)
}
