//! Sturm sequences: exact counting and isolation of real roots.

use std::cmp::Ordering;

use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An endpoint on the extended real line.
#[derive(Clone, Debug, PartialEq)]
pub enum Bound<T> {
    NegInf,
    Finite(T),
    PosInf,
}

impl<T: Scalar> Bound<T> {
    fn less_than(&self, other: &Self) -> bool {
        match (self, other) {
            (Bound::NegInf, Bound::NegInf) | (Bound::PosInf, _) | (_, Bound::NegInf) => false,
            (Bound::NegInf, _) | (_, Bound::PosInf) => true,
            (Bound::Finite(a), Bound::Finite(b)) => a < b,
        }
    }
}

impl<T> From<T> for Bound<T> {
    fn from(v: T) -> Self {
        Bound::Finite(v)
    }
}

fn sign<T: Scalar>(v: &T) -> i8 {
    match v.partial_cmp(&T::zero()) {
        Some(Ordering::Greater) => 1,
        Some(Ordering::Less) => -1,
        _ => 0,
    }
}

/// The Sturm sequence of the squarefree part of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain<T> {
    seq: Vec<Polynomial<T>>,
}

impl<T: Scalar> SturmChain<T> {
    pub fn new(p: &Polynomial<T>) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial("Sturm chain"));
        }
        let p0 = p.squarefree_part()?;
        let mut seq = vec![p0.clone()];
        if p0.degree() > Some(0) {
            seq.push(p0.derivative().primitive());
            loop {
                let n = seq.len();
                let r = seq[n - 2].rem(&seq[n - 1])?;
                if r.is_zero() {
                    break;
                }
                // positive rescaling keeps every sign intact
                seq.push(-(r.primitive()));
            }
        }
        Ok(Self { seq })
    }

    /// The squarefree polynomial at the head of the chain.
    pub fn head(&self) -> &Polynomial<T> {
        &self.seq[0]
    }

    fn sign_at(p: &Polynomial<T>, at: &Bound<T>) -> i8 {
        match at {
            Bound::Finite(x) => sign(&p.eval(x)),
            Bound::PosInf => sign(p.leading().expect("nonzero chain member")),
            Bound::NegInf => {
                let s = sign(p.leading().expect("nonzero chain member"));
                if p.degree().unwrap_or(0) % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
        }
    }

    /// Sign variations of the chain at a point, zeros dropped.
    pub fn variations(&self, at: &Bound<T>) -> usize {
        let signs: Vec<i8> = self
            .seq
            .iter()
            .map(|p| Self::sign_at(p, at))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`.
    pub fn count(&self, lo: &Bound<T>, hi: &Bound<T>) -> Result<usize> {
        if !lo.less_than(hi) {
            return Err(Error::Domain("Sturm count needs lo < hi".into()));
        }
        // V(lo) - V(hi) counts roots in (lo, hi]
        let mut c = self.variations(lo) - self.variations(hi);
        if let Bound::Finite(h) = hi {
            if self.seq[0].eval(h).is_zero() {
                c -= 1;
            }
        }
        Ok(c)
    }

    fn variations_at(&self, x: &T) -> usize {
        self.variations(&Bound::Finite(x.clone()))
    }
}

/// Exact count of distinct real roots of `p` in `(lo, hi)`.
pub fn sturm_root_count<T: Scalar>(
    p: &Polynomial<T>,
    lo: &Bound<T>,
    hi: &Bound<T>,
) -> Result<usize> {
    SturmChain::new(p)?.count(lo, hi)
}

/// A closed interval `[lo, hi]` with rational endpoints containing exactly one
/// real root. `lo == hi` marks a root found exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct RootInterval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> RootInterval<T> {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> T {
        (self.lo.clone() + self.hi.clone()) / T::int(2)
    }

    /// `true` if `p` vanishes at an exact root, or changes sign strictly
    /// between the endpoints.
    pub fn certifies(&self, p: &Polynomial<T>) -> bool {
        if self.is_exact() {
            p.eval(&self.lo).is_zero()
        } else {
            sign(&p.eval(&self.lo)) * sign(&p.eval(&self.hi)) < 0
        }
    }
}

/// A power of two strictly above the modulus of every root (Cauchy bound).
pub fn root_bound<T: Scalar>(p: &Polynomial<T>) -> T {
    let lc = p.leading().cloned().unwrap_or_else(T::one).abs();
    let m = p
        .coeffs()
        .iter()
        .map(|c| c.abs() / lc.clone())
        .fold(T::zero(), |a, b| if b > a { b } else { a });
    let cauchy = T::one() + m;
    let mut b = T::one();
    while b <= cauchy {
        b = b * T::int(2);
    }
    b
}

/// Isolates every real root of `p` and refines each isolating interval to
/// width at most `width`.
pub fn isolate_real_roots<T: Scalar>(p: &Polynomial<T>, width: &T) -> Result<Vec<RootInterval<T>>> {
    let chain = SturmChain::new(p)?;
    let q = chain.head().clone();
    if q.degree() == Some(0) {
        return Ok(Vec::new());
    }
    if q.degree() == Some(1) {
        let r = -(q.coeff(0) / q.coeff(1));
        return Ok(vec![RootInterval {
            lo: r.clone(),
            hi: r,
        }]);
    }
    let b = root_bound(&q);
    let a = -b.clone();
    let total = chain.variations_at(&a) - chain.variations_at(&b);
    let mut out = Vec::new();
    isolate(&chain, &q, a, b, total, width, &mut out);
    Ok(out)
}

/// Roots in the half-open interval `(a, b]`, `c` of them.
fn isolate<T: Scalar>(
    chain: &SturmChain<T>,
    q: &Polynomial<T>,
    a: T,
    b: T,
    c: usize,
    width: &T,
    out: &mut Vec<RootInterval<T>>,
) {
    match c {
        0 => {}
        1 if q.eval(&b).is_zero() => out.push(RootInterval {
            lo: b.clone(),
            hi: b,
        }),
        1 => out.push(refine(chain, q, a, b, width)),
        _ => {
            let m = (a.clone() + b.clone()) / T::int(2);
            let left = chain.variations_at(&a) - chain.variations_at(&m);
            isolate(chain, q, a, m.clone(), left, width, out);
            isolate(chain, q, m, b, c - left, width, out);
        }
    }
}

/// Shrinks `(a, b)` holding exactly one root (not at `b`) by bisection.
/// `a` itself may be a neighbouring root; zero-dropping makes `V(a)` equal
/// `V(a+)`, so `V(a) - V(m)` still counts the roots in `(a, m]`.
fn refine<T: Scalar>(
    chain: &SturmChain<T>,
    q: &Polynomial<T>,
    mut a: T,
    mut b: T,
    width: &T,
) -> RootInterval<T> {
    while b.clone() - a.clone() > *width || q.eval(&a).is_zero() {
        let m = (a.clone() + b.clone()) / T::int(2);
        if q.eval(&m).is_zero() {
            return RootInterval {
                lo: m.clone(),
                hi: m,
            };
        }
        if chain.variations_at(&a) - chain.variations_at(&m) == 1 {
            b = m;
        } else {
            a = m;
        }
    }
    RootInterval { lo: a, hi: b }
}
