//! Parameter parsing and a uniform view of classical and exceptional families.

use serde::{Deserialize, Serialize};
use xdarboux::laguerre::{classical_norm, laguerre};
use xdarboux::xlaguerre::{XFamily, XVariant};
use xdarboux::{format_rational, parse_rational, Family, Poly, QuasiRat, RatFn, Rational, Scalar};

use crate::args::{FamilyArgs, Variant};
use crate::error::{CliError, CliResult};

/// Parses `k` as an exact rational; decimal literals are refused.
pub fn parse_k(s: &str) -> CliResult<Rational> {
    parse_rational(s)
        .ok_or_else(|| CliError::Invalid(format!("k must be a rational literal p/q, got `{s}`")))
}

/// Parses `a..b`, `a..=b` or `n` as an inclusive range.
pub fn parse_range(s: &str) -> CliResult<(u32, u32)> {
    let bad = || CliError::Invalid(format!("degree range must be `a..b` or `n`, got `{s}`"));
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if a > b {
        return Err(CliError::Invalid(format!(
            "degree range `{s}` requires a ≤ b"
        )));
    }
    Ok((a, b))
}

/// Parses `lo:hi:steps` into `steps + 1` equally spaced points.
pub fn parse_grid(s: &str) -> CliResult<Vec<f64>> {
    let bad = || CliError::Invalid(format!("grid must be `lo:hi:steps`, got `{s}`"));
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, steps] = parts.as_slice() else {
        return Err(bad());
    };
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let steps: usize = steps.trim().parse().map_err(|_| bad())?;
    if !lo.is_finite() || !hi.is_finite() || lo > hi || steps == 0 {
        return Err(CliError::Invalid(format!(
            "grid `{s}` requires finite lo ≤ hi and steps ≥ 1"
        )));
    }
    Ok((0..=steps)
        .map(|i| {
            if i == steps {
                hi
            } else {
                lo + (hi - lo) * i as f64 / steps as f64
            }
        })
        .collect())
}

/// Serialized family identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub variant: String,
    pub k: String,
    pub m: u32,
}

/// A validated classical or exceptional family.
#[derive(Clone, Debug)]
pub enum JobFamily {
    Classical(Rational),
    Exceptional(Family),
}

impl JobFamily {
    pub fn new(variant: Variant, k: Rational, m: Option<u32>) -> CliResult<Self> {
        match variant {
            Variant::Classical => {
                if m.is_some_and(|m| m != 0) {
                    return Err(CliError::Invalid("the classical family has m = 0".into()));
                }
                if k <= Rational::int(-1) {
                    return Err(CliError::Invalid(format!(
                        "classical family with k = {k}: requires k > -1"
                    )));
                }
                Ok(Self::Classical(k))
            }
            Variant::Type1 | Variant::Type2 => {
                let m = m.ok_or_else(|| {
                    CliError::Invalid(format!("--m is required for {}", variant.name()))
                })?;
                let xv = if variant == Variant::Type1 {
                    XVariant::TypeI
                } else {
                    XVariant::TypeII
                };
                Ok(Self::Exceptional(XFamily::new(xv, k, m)?))
            }
        }
    }

    pub fn from_args(a: &FamilyArgs) -> CliResult<Self> {
        Self::new(a.variant, parse_k(&a.k)?, a.m)
    }

    pub fn variant(&self) -> Variant {
        match self {
            Self::Classical(_) => Variant::Classical,
            Self::Exceptional(f) => match f.variant() {
                XVariant::TypeI => Variant::Type1,
                XVariant::TypeII => Variant::Type2,
            },
        }
    }

    pub fn k(&self) -> &Rational {
        match self {
            Self::Classical(k) => k,
            Self::Exceptional(f) => f.k(),
        }
    }

    /// Lowest degree present: `0` or `m`.
    pub fn min_n(&self) -> u32 {
        match self {
            Self::Classical(_) => 0,
            Self::Exceptional(f) => f.m(),
        }
    }

    pub fn record(&self) -> FamilyRecord {
        FamilyRecord {
            variant: self.variant().name().into(),
            k: format_rational(self.k()),
            m: self.min_n(),
        }
    }

    /// Resolves `--n`, defaulting to six consecutive degrees from the lowest.
    pub fn degrees(&self, n: Option<&str>) -> CliResult<Vec<u32>> {
        let (a, b) = match n {
            Some(s) => parse_range(s)?,
            None => (self.min_n(), self.min_n() + 5),
        };
        if a < self.min_n() {
            return Err(CliError::Invalid(format!(
                "degree range requires n ≥ m = {}",
                self.min_n()
            )));
        }
        Ok((a..=b).collect())
    }

    pub fn polynomial(&self, n: u32) -> CliResult<Poly> {
        match self {
            Self::Classical(k) => Ok(laguerre(n as i64, k)),
            Self::Exceptional(f) => Ok(f.polynomial(n)?),
        }
    }

    pub fn weight(&self) -> CliResult<QuasiRat> {
        match self {
            Self::Classical(k) => Ok(QuasiRat::new(k.clone(), Rational::int(-1), RatFn::one())),
            Self::Exceptional(f) => Ok(f.weight()?),
        }
    }

    pub fn norm(&self, n: u32) -> CliResult<f64> {
        match self {
            Self::Classical(k) => Ok(classical_norm(n, k)?),
            Self::Exceptional(f) => Ok(f.norm(n)?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_is_exact_only() {
        assert_eq!(parse_k("3/6").unwrap(), Rational::ratio(1, 2));
        assert_eq!(parse_k("-2").unwrap(), Rational::int(-2));
        assert!(parse_k("0.5").is_err() && parse_k("1e3").is_err() && parse_k("1/0").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..4").unwrap(), (1, 4));
        assert_eq!(parse_range("1..=4").unwrap(), (1, 4));
        assert_eq!(parse_range("7").unwrap(), (7, 7));
        assert!(
            parse_range("4..1").is_err()
                && parse_range("a..b").is_err()
                && parse_range("-1..2").is_err()
        );
    }

    #[test]
    fn grids() {
        assert_eq!(
            parse_grid("0:1:4").unwrap(),
            vec![0.0, 0.25, 0.5, 0.75, 1.0]
        );
        assert_eq!(parse_grid("-1:-1:1").unwrap(), vec![-1.0, -1.0]);
        for bad in ["0:1", "1:0:3", "0:1:0", "0:inf:2", "x:1:2"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn families() {
        let f = JobFamily::new(Variant::Type1, Rational::int(1), Some(1)).unwrap();
        assert_eq!(
            f.record(),
            FamilyRecord {
                variant: "type1".into(),
                k: "1/1".into(),
                m: 1
            }
        );
        assert_eq!(f.degrees(None).unwrap(), (1..=6).collect::<Vec<_>>());
        assert!(f.degrees(Some("0..3")).is_err());
        assert_eq!(f.polynomial(1).unwrap(), Poly::from_ints(&[2, 1]));
        assert!(JobFamily::new(Variant::Type2, Rational::int(1), None).is_err());
        assert!(JobFamily::new(Variant::Classical, Rational::int(-1), None).is_err());
        assert!(JobFamily::new(Variant::Classical, Rational::int(0), Some(2)).is_err());
        let c = JobFamily::new(Variant::Classical, Rational::int(1), None).unwrap();
        assert!((c.norm(3).unwrap() - 4.0).abs() < 1e-12);
    }
}
