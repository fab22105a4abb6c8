//! Generalized Gauss-Laguerre quadrature, the Gamma function and inner
//! products against weights `x^α e^(−x) R(x)`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use crate::algebra::{sturm_root_count, Bound, Polynomial};
use crate::error::{Error, Result};
use crate::quasirational::QuasiRational;
use crate::scalar::Scalar;

pub const MAX_NODES: usize = 512;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(z: f64) -> f64 {
    LANCZOS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS[0], |acc, (i, c)| acc + c / (z + i as f64 + 1.0))
}

/// `Γ(x)` for `x > 0`.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain(format!("gamma_fn needs x > 0, got {x}")));
    }
    if x < 0.5 {
        return Ok(gamma_fn(x + 1.0)? / x);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    // t^(z+1/2) split in two halves so it stays finite wherever Γ does
    let half = t.powf((z + 0.5) / 2.0);
    Ok((2.0 * PI).sqrt() * half * (-t).exp() * half * lanczos_sum(z))
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain(format!("ln_gamma needs x > 0, got {x}")));
    }
    if x < 0.5 {
        return Ok(ln_gamma(x + 1.0)? - x.ln());
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln())
}

/// Nodes and weights of the `N`-point rule for `∫_0^∞ f(x) x^α e^(−x) dx`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    pub alpha: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// `(Σ w f, Σ |w f|)`.
    fn integrate_with_scale(&self, f: impl Fn(f64) -> Result<f64>) -> Result<(f64, f64)> {
        let mut sum = 0.0;
        let mut abs = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            if w == 0.0 {
                continue;
            }
            let t = w * f(x)?;
            sum += t;
            abs += t.abs();
        }
        Ok((sum, abs))
    }
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `e` (`e[i]` couples rows `i` and `i+1`) by implicit-shift QL.
fn tridiagonal_eigenvalues(mut d: Vec<f64>, off: &[f64]) -> Result<Vec<f64>> {
    let n = d.len();
    let mut e = off.to_vec();
    e.push(0.0);
    const MAX_SWEEPS: usize = 60;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_SWEEPS {
                return Err(Error::NonConvergence(format!(
                    "tridiagonal QL iteration stalled on eigenvalue {l} of {n}"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.total_cmp(b));
    Ok(d)
}

/// Orthonormal recurrence at `x`: returns `(p̃_N/p̃_N', p̃_0² / Σ_{j<N} p̃_j²)`
/// with running rescaling against overflow.
fn recurrence_at(x: f64, n: usize, alpha: f64) -> (f64, f64) {
    let diag = |j: usize| 2.0 * j as f64 + alpha + 1.0;
    let off = |j: usize| (j as f64 * (j as f64 + alpha)).sqrt();
    let (mut p_prev, mut p) = (0.0f64, 1.0f64);
    let (mut dp_prev, mut dp) = (0.0f64, 0.0f64);
    let mut p0 = 1.0f64;
    let mut sum = 0.0f64;
    for j in 0..n {
        sum += p * p;
        let b_next = off(j + 1);
        let b_cur = off(j);
        let p_next = ((x - diag(j)) * p - b_cur * p_prev) / b_next;
        let dp_next = (p + (x - diag(j)) * dp - b_cur * dp_prev) / b_next;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
        let big = p.abs().max(p_prev.abs()).max(dp.abs()).max(sum);
        if big > 1e150 {
            let s = 1e-150;
            p *= s;
            p_prev *= s;
            dp *= s;
            dp_prev *= s;
            sum *= s * s;
            p0 *= s;
        }
    }
    let ratio = if dp != 0.0 { p / dp } else { 0.0 };
    (ratio, p0 * p0 / sum)
}

fn build_rule(alpha: f64, n: usize) -> Result<QuadratureRule> {
    let diag: Vec<f64> = (0..n).map(|i| 2.0 * i as f64 + alpha + 1.0).collect();
    let off: Vec<f64> = (1..n)
        .map(|i| (i as f64 * (i as f64 + alpha)).sqrt())
        .collect();
    let eig = tridiagonal_eigenvalues(diag, &off)?;
    let mass = gamma_fn(alpha + 1.0)?;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for &x0 in &eig {
        let mut x = x0;
        // Newton on p̃_N; accepted only while the correction stays small
        for _ in 0..3 {
            let (step, _) = recurrence_at(x, n, alpha);
            if !step.is_finite() || step.abs() > 1e-6 * x.abs().max(1e-300) {
                break;
            }
            x -= step;
            if step.abs() <= f64::EPSILON * x.abs() {
                break;
            }
        }
        let (_, v0sq) = recurrence_at(x, n, alpha);
        nodes.push(x);
        weights.push(mass * v0sq);
    }
    if nodes.windows(2).any(|w| w[0] >= w[1]) || nodes.first().is_some_and(|&x| x <= 0.0) {
        return Err(Error::NonConvergence(format!(
            "Gauss-Laguerre nodes for alpha = {alpha}, N = {n} are not strictly increasing and positive"
        )));
    }
    Ok(QuadratureRule {
        alpha,
        nodes,
        weights,
    })
}

type RuleCache = RwLock<HashMap<(u64, usize), Arc<QuadratureRule>>>;

fn cache() -> &'static RuleCache {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `N`-point generalized Gauss-Laguerre rule for weight `x^α e^(−x)`,
/// `α > −1`, `1 ≤ N ≤ 512`. Nodes are eigenvalues of the Jacobi matrix;
/// weights are `Γ(α+1)` times the squared first component of the
/// normalized eigenvectors, taken from the three-term recurrence. Rules are
/// cached per `(α, N)`. For large `N` the weights of the outermost nodes can
/// underflow to zero.
pub fn gauss_laguerre(alpha: f64, n: usize) -> Result<Arc<QuadratureRule>> {
    if alpha.is_nan() || alpha <= -1.0 || !alpha.is_finite() {
        return Err(Error::InvalidParameters(format!(
            "Gauss-Laguerre needs alpha > -1, got {alpha}"
        )));
    }
    if n == 0 || n > MAX_NODES {
        return Err(Error::InvalidParameters(format!(
            "Gauss-Laguerre needs 1 <= N <= {MAX_NODES}, got {n}"
        )));
    }
    let key = (alpha.to_bits(), n);
    if let Some(rule) = cache().read().expect("rule cache poisoned").get(&key) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(build_rule(alpha, n)?);
    cache()
        .write()
        .expect("rule cache poisoned")
        .insert(key, rule.clone());
    Ok(rule)
}

/// Rejects weights not of the form `x^α e^(−x) R(x)` with `α > −1` and `R`
/// free of poles on `[0, ∞)`.
fn check_weight<T: Scalar>(weight: &QuasiRational<T>) -> Result<f64> {
    if *weight.beta() != -T::one() {
        return Err(Error::Unsupported(format!(
            "weight must carry e^(-x), found exponent {}",
            weight.beta()
        )));
    }
    let alpha = weight.alpha().to_f64_lossy();
    if alpha.is_nan() || alpha <= -1.0 {
        return Err(Error::InvalidParameters(format!(
            "weight exponent alpha = {alpha} must exceed -1"
        )));
    }
    let den = weight.rat().den();
    if den.eval(&T::zero()).is_zero()
        || sturm_root_count(den, &Bound::Finite(T::zero()), &Bound::PosInf)? > 0
    {
        return Err(Error::Unsupported(
            "weight denominator vanishes on [0, inf)".into(),
        ));
    }
    Ok(alpha)
}

/// `Σ w_i f(x_i) g(x_i) R(x_i)` over the `N`-point rule for `x^α e^(−x)`.
pub fn weighted_inner_product<T: Scalar>(
    f: &Polynomial<T>,
    g: &Polynomial<T>,
    weight: &QuasiRational<T>,
    n: usize,
) -> Result<f64> {
    Ok(inner_product_with_scale(f, g, weight, n)?.0)
}

fn inner_product_with_scale<T: Scalar>(
    f: &Polynomial<T>,
    g: &Polynomial<T>,
    weight: &QuasiRational<T>,
    n: usize,
) -> Result<(f64, f64)> {
    let alpha = check_weight(weight)?;
    let rule = gauss_laguerre(alpha, n)?;
    let r = weight.rat();
    rule.integrate_with_scale(|x| Ok(f.eval_f64(x) * g.eval_f64(x) * r.eval_f64(x)?))
}

/// A quadrature value with its node-doubling certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct CertifiedValue {
    pub value: f64,
    /// Node count of the reported value.
    pub nodes: usize,
    /// `|I_N − I_{N/2}|` relative to `Σ |w f g R|` at `N`.
    pub relative_change: f64,
}

pub const CERTIFICATE_TOLERANCE: f64 = 1e-9;

/// Doubles the node count from `start` until two successive values agree to
/// [`CERTIFICATE_TOLERANCE`]; fails with `NonConvergence` past 512 nodes.
pub fn certified_inner_product<T: Scalar>(
    f: &Polynomial<T>,
    g: &Polynomial<T>,
    weight: &QuasiRational<T>,
    start: usize,
) -> Result<CertifiedValue> {
    let mut n = start.clamp(1, MAX_NODES / 2);
    let (mut prev, _) = inner_product_with_scale(f, g, weight, n)?;
    while 2 * n <= MAX_NODES {
        n *= 2;
        let (cur, scale) = inner_product_with_scale(f, g, weight, n)?;
        let relative_change = if scale == 0.0 {
            0.0
        } else {
            (cur - prev).abs() / scale
        };
        if relative_change <= CERTIFICATE_TOLERANCE {
            return Ok(CertifiedValue {
                value: cur,
                nodes: n,
                relative_change,
            });
        }
        prev = cur;
    }
    Err(Error::NonConvergence(format!(
        "quadrature did not settle below {CERTIFICATE_TOLERANCE:e} within {MAX_NODES} nodes"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RationalFunction;
    use num_rational::BigRational;

    type Q = BigRational;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn gamma_values() {
        assert!(rel(gamma_fn(1.0).unwrap(), 1.0) < 1e-14);
        assert!(rel(gamma_fn(5.0).unwrap(), 24.0) < 1e-14);
        assert!(rel(gamma_fn(0.5).unwrap(), PI.sqrt()) < 1e-14);
        assert!(rel(gamma_fn(0.1).unwrap(), 9.513_507_698_668_732) < 1e-13);
        assert!(gamma_fn(170.5).unwrap().is_finite());
        assert!(gamma_fn(0.0).is_err());
        assert!(gamma_fn(-1.5).is_err());
    }

    #[test]
    fn gamma_recurrence_on_grid() {
        let mut x = 0.05;
        while x < 49.0 {
            let lhs = gamma_fn(x + 1.0).unwrap();
            assert!(rel(lhs, x * gamma_fn(x).unwrap()) < 1e-12, "x = {x}");
            assert!(
                (ln_gamma(x).unwrap() - gamma_fn(x).unwrap().ln()).abs()
                    < 1e-12 * (1.0 + ln_gamma(x).unwrap().abs())
            );
            x += 0.37;
        }
    }

    #[test]
    fn small_rules() {
        let r = gauss_laguerre(0.0, 1).unwrap();
        assert!((r.nodes[0] - 1.0).abs() < 1e-15 && (r.weights[0] - 1.0).abs() < 1e-15);
        let r = gauss_laguerre(0.0, 2).unwrap();
        let s = 2f64.sqrt();
        assert!((r.nodes[0] - (2.0 - s)).abs() < 1e-14);
        assert!((r.nodes[1] - (2.0 + s)).abs() < 1e-14);
        assert!((r.weights[0] - (2.0 + s) / 4.0).abs() < 1e-14);
        let r = gauss_laguerre(0.0, 4).unwrap();
        assert!((r.integrate(|x| x) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn weights_sum_to_mass() {
        for alpha in [0.0, 0.5, 2.5, -0.5] {
            for n in [3, 40, 200] {
                let r = gauss_laguerre(alpha, n).unwrap();
                let total: f64 = r.weights.iter().sum();
                assert!(
                    rel(total, gamma_fn(alpha + 1.0).unwrap()) < 1e-12,
                    "alpha {alpha} N {n}"
                );
                assert!(r.weights.iter().all(|&w| w >= 0.0));
            }
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(gauss_laguerre(-1.0, 4).is_err());
        assert!(gauss_laguerre(0.0, 0).is_err());
        assert!(gauss_laguerre(0.0, 513).is_err());
    }

    #[test]
    fn inner_products() {
        let one = Polynomial::<Q>::one();
        let w = QuasiRational::exp(Q::int(-1));
        assert!((weighted_inner_product(&one, &one, &w, 8).unwrap() - 1.0).abs() < 1e-14);
        // x^(1/2) e^(-x)/(x+1)^2 needs doubling before it settles
        let w = QuasiRational::new(
            Q::ratio(1, 2),
            Q::int(-1),
            RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[1, 2, 1])).unwrap(),
        );
        let c = certified_inner_product(&one, &one, &w, 8).unwrap();
        assert!(c.relative_change <= CERTIFICATE_TOLERANCE);
        assert!(c.nodes > 8);
        let bad = QuasiRational::new(
            Q::int(0),
            Q::int(-1),
            RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[-1, 1])).unwrap(),
        );
        assert!(weighted_inner_product(&one, &one, &bad, 8).is_err());
        assert!(weighted_inner_product(&one, &one, &QuasiRational::exp(Q::int(1)), 8).is_err());
        assert!(weighted_inner_product(
            &one,
            &one,
            &QuasiRational::new(Q::int(-1), Q::int(-1), RationalFunction::one()),
            8
        )
        .is_err());
    }
}
