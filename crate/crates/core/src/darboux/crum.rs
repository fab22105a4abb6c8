//! Iterated factorizations and the Wronskian form of the composed intertwiner.

use super::{factorize, Factorization};
use crate::algebra::RationalFunction;
use crate::diffop::DiffOperator;
use crate::error::{Error, Result};
use crate::quasirational::{wronskian_rows, QuasiRational};
use crate::scalar::Scalar;

pub const MAX_CHAIN: usize = 3;

/// One link of a chain: a seed of the original operator, its eigenvalue and
/// an optional gauge for the step at which it is used.
#[derive(Clone, Debug, PartialEq)]
pub struct CrumSeed<T> {
    pub phi: QuasiRational<T>,
    pub lambda: T,
    pub gauge: Option<RationalFunction<T>>,
}

impl<T: Scalar> CrumSeed<T> {
    pub fn new(phi: QuasiRational<T>, lambda: T) -> Self {
        Self {
            phi,
            lambda,
            gauge: None,
        }
    }

    pub fn with_gauge(mut self, gauge: RationalFunction<T>) -> Self {
        self.gauge = Some(gauge);
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrumChain<T> {
    /// Final operator `T_n`.
    pub operator: DiffOperator<T>,
    /// `𝒜 = A_n ⋯ A_1`.
    pub intertwiner: DiffOperator<T>,
    /// `ℬ = B_1 ⋯ B_n`.
    pub adjoint: DiffOperator<T>,
    pub steps: Vec<Factorization<T>>,
}

/// Factorizes `t` successively with the images `A_{j−1}⋯A_1(φ_j)` of the
/// seeds. Checks `𝒜(φ_j) = 0`, `𝒜 T = T_n 𝒜` and `ℬ 𝒜 = Π (T − λ_j)`.
pub fn crum_chain<T: Scalar>(t: &DiffOperator<T>, seeds: &[CrumSeed<T>]) -> Result<CrumChain<T>> {
    if seeds.is_empty() || seeds.len() > MAX_CHAIN {
        return Err(Error::InvalidParameters(format!(
            "Crum chains take 1..={MAX_CHAIN} seeds, got {}",
            seeds.len()
        )));
    }
    let mut current = t.clone();
    let mut intertwiner = DiffOperator::identity();
    let mut adjoint = DiffOperator::identity();
    let mut product = DiffOperator::identity();
    let mut steps: Vec<Factorization<T>> = Vec::with_capacity(seeds.len());
    for (j, s) in seeds.iter().enumerate() {
        let image = intertwiner.apply(&s.phi);
        if image.is_zero() {
            return Err(Error::DegenerateSeed(format!(
                "image of seed {} vanishes",
                j + 1
            )));
        }
        let f = factorize(&current, &image, s.gauge.as_ref(), &s.lambda)?;
        intertwiner = f.a_op.compose(&intertwiner);
        adjoint = adjoint.compose(&f.b_op);
        product = product.compose(&t.add_scalar(&-s.lambda.clone()));
        current = f.that.clone();
        steps.push(f);
    }
    for (j, s) in seeds.iter().enumerate() {
        if !intertwiner.apply(&s.phi).is_zero() {
            return Err(Error::Invariant(format!(
                "composed intertwiner does not annihilate seed {}",
                j + 1
            )));
        }
    }
    if intertwiner.compose(t) != current.compose(&intertwiner) {
        return Err(Error::Invariant("A T = T_n A fails for the chain".into()));
    }
    if adjoint.compose(&intertwiner) != product {
        return Err(Error::Invariant(
            "B A differs from the product of (T - lambda_j)".into(),
        ));
    }
    Ok(CrumChain {
        operator: current,
        intertwiner,
        adjoint,
        steps,
    })
}

/// The monic operator `y ↦ W(φ_1, …, φ_n, y) / W(φ_1, …, φ_n)`.
pub fn wronskian_operator<T: Scalar>(phis: &[QuasiRational<T>]) -> Result<DiffOperator<T>> {
    let n = phis.len();
    if n == 0 || n > 5 {
        return Err(Error::Domain(format!(
            "Wronskian operator of {n} functions (need 1..=5)"
        )));
    }
    let w = wronskian_rows(phis, &(0..n).collect::<Vec<_>>())?;
    if w.is_zero() {
        return Err(Error::DegenerateSeed("seeds are linearly dependent".into()));
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let rows: Vec<usize> = (0..=n).filter(|&i| i != j).collect();
        let minor = wronskian_rows(phis, &rows)?;
        let c = minor
            .div(&w)?
            .as_rational()
            .ok_or_else(|| Error::Invariant("Wronskian minor ratio is not rational".into()))?;
        coeffs.push(if (n + j).is_multiple_of(2) { c } else { -c });
    }
    Ok(DiffOperator::new(coeffs))
}

/// How the two composed intertwiners of a swapped pair relate.
#[derive(Clone, Debug, PartialEq)]
pub enum IntertwinerRelation<T> {
    Identical,
    Negated,
    /// `𝒜_1 = μ 𝒜_2` for a non-constant or non-unit `μ`.
    GaugeRelated(RationalFunction<T>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Permutability<T> {
    /// `μ⁻¹ T_n^(1) μ = T_n^(2)` with `μ = lead(𝒜_1)/lead(𝒜_2)`.
    pub operators_agree: bool,
    pub intertwiner: IntertwinerRelation<T>,
    pub first: CrumChain<T>,
    pub swapped: CrumChain<T>,
}

/// Runs the two-seed chain in both orders with default gauges at every
/// step and compares the results after gauge normalization.
pub fn permutability_check<T: Scalar>(
    t: &DiffOperator<T>,
    s1: &CrumSeed<T>,
    s2: &CrumSeed<T>,
) -> Result<Permutability<T>> {
    let strip = |s: &CrumSeed<T>| CrumSeed::new(s.phi.clone(), s.lambda.clone());
    let first = crum_chain(t, &[strip(s1), strip(s2)])?;
    let swapped = crum_chain(t, &[strip(s2), strip(s1)])?;
    let lead = |c: &CrumChain<T>| {
        c.intertwiner
            .leading()
            .cloned()
            .expect("nonzero intertwiner")
    };
    let mu = lead(&first).div(&lead(&swapped))?;
    let operators_agree = first.operator.gauge_conjugate(&mu)? == swapped.operator;
    let intertwiner = if first.intertwiner == swapped.intertwiner {
        IntertwinerRelation::Identical
    } else if first.intertwiner == swapped.intertwiner.neg() {
        IntertwinerRelation::Negated
    } else {
        IntertwinerRelation::GaugeRelated(mu)
    };
    Ok(Permutability {
        operators_agree,
        intertwiner,
        first,
        swapped,
    })
}
