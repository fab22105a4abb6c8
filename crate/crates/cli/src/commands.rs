//! The six subcommands. Each returns its serialized body and, separately, a
//! failure that should set the exit code after the body is written.

use serde::{Deserialize, Serialize};
use xdarboux::algebra::isolate_real_roots;
use xdarboux::darboux::{classify, factorize, intertwine_check, Classification};
use xdarboux::laguerre::{
    identity_suite_with_fault, laguerre, laguerre_operator, SeedFamily, SeedSpec,
};
use xdarboux::quadrature::certified_inner_product;
use xdarboux::xlaguerre::XFamily;
use xdarboux::{format_rational, parse_rational, Operator, Poly, Rational, Scalar};

use crate::args::{
    EvalArgs, FactorizeArgs, Format, NormsArgs, TableArgs, Variant, VerifyArgs, ZerosArgs,
};
use crate::error::{CliError, CliResult};
use crate::family::{parse_grid, parse_k, parse_range, FamilyRecord, JobFamily};
use crate::output::{to_csv, to_json};

/// Serialized output plus an optional failure to report after writing it.
#[derive(Debug)]
pub struct Completed {
    pub body: String,
    pub failure: Option<CliError>,
}

impl Completed {
    fn ok(body: String) -> Self {
        Self {
            body,
            failure: None,
        }
    }
}

/// Relative tolerance for quadrature norms and scaled Gram entries.
pub const NORM_TOLERANCE: f64 = 1e-8;
/// Node count at which certified quadrature starts doubling.
pub const QUADRATURE_START: usize = 16;

// ---------------------------------------------------------------- table

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialRecord {
    pub n: u32,
    /// `[numerator, denominator]` pairs, lowest power first.
    pub coeffs: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub family: FamilyRecord,
    pub polynomials: Vec<PolynomialRecord>,
}

impl PolynomialRecord {
    pub fn new(n: u32, p: &Poly) -> Self {
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| [c.numer().to_string(), c.denom().to_string()])
            .collect();
        Self { n, coeffs }
    }

    /// Re-parses the exact coefficients.
    pub fn polynomial(&self) -> CliResult<Poly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|[num, den]| {
                parse_rational(&format!("{num}/{den}"))
                    .ok_or_else(|| CliError::Invalid(format!("bad coefficient {num}/{den}")))
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(Poly::new(coeffs))
    }
}

pub fn table(args: &TableArgs) -> CliResult<Completed> {
    let fam = JobFamily::from_args(&args.family)?;
    let mut polynomials = Vec::new();
    for n in fam.degrees(args.family.n.as_deref())? {
        polynomials.push(PolynomialRecord::new(n, &fam.polynomial(n)?));
    }
    let table = Table {
        family: fam.record(),
        polynomials,
    };
    let body = match args.output.format {
        Format::Json => to_json(&table)?,
        Format::Csv => {
            let header = ["n", "power", "num", "den"].map(String::from);
            let rows = table.polynomials.iter().flat_map(|p| {
                p.coeffs.iter().enumerate().map(move |(j, [num, den])| {
                    vec![p.n.to_string(), j.to_string(), num.clone(), den.clone()]
                })
            });
            to_csv(&header, rows)?
        }
    };
    Ok(Completed::ok(body))
}

// ---------------------------------------------------------------- eval

#[derive(Clone, Debug, Serialize)]
struct EvalColumn {
    n: u32,
    values: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
struct EvalReport {
    family: FamilyRecord,
    x: Vec<f64>,
    columns: Vec<EvalColumn>,
}

/// Evaluates exactly at the rational value of `x`, then rounds once.
fn eval_exact(p: &Poly, x: f64) -> f64 {
    match Rational::from_float(x) {
        Some(q) => p.eval(&q).to_f64_lossy(),
        None => f64::NAN,
    }
}

pub fn eval(args: &EvalArgs) -> CliResult<Completed> {
    let fam = JobFamily::from_args(&args.family)?;
    let xs = parse_grid(&args.grid)?;
    let mut columns = Vec::new();
    for n in fam.degrees(args.family.n.as_deref())? {
        let p = fam.polynomial(n)?;
        columns.push(EvalColumn {
            n,
            values: xs.iter().map(|&x| eval_exact(&p, x)).collect(),
        });
    }
    let body = match args.output.format {
        Format::Json => to_json(&EvalReport {
            family: fam.record(),
            x: xs,
            columns,
        })?,
        Format::Csv => {
            let header: Vec<String> = std::iter::once("x".to_string())
                .chain(columns.iter().map(|c| format!("P_{}(x)", c.n)))
                .collect();
            let rows = xs.iter().enumerate().map(|(i, x)| {
                std::iter::once(format!("{x:.16e}"))
                    .chain(columns.iter().map(|c| format!("{:.16e}", c.values[i])))
                    .collect::<Vec<_>>()
            });
            to_csv(&header, rows)?
        }
    };
    Ok(Completed::ok(body))
}

// ---------------------------------------------------------------- verify

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureRecord {
    pub identity: String,
    /// Degree, absent for identities between operators.
    pub n: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupReport {
    pub family: FamilyRecord,
    /// Seed family for classical factorization checks.
    pub seed: Option<String>,
    pub checked: usize,
    pub passed: bool,
    pub failures: Vec<FailureRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checked: usize,
    pub failed: usize,
    pub groups: Vec<GroupReport>,
}

fn group(
    family: FamilyRecord,
    seed: Option<String>,
    checks: Vec<(&str, Option<i64>, bool)>,
) -> GroupReport {
    let failures: Vec<FailureRecord> = checks
        .iter()
        .filter(|c| !c.2)
        .map(|(id, n, _)| FailureRecord {
            identity: id.to_string(),
            n: *n,
        })
        .collect();
    GroupReport {
        family,
        seed,
        checked: checks.len(),
        passed: failures.is_empty(),
        failures,
    }
}

fn from_identity_report(
    family: FamilyRecord,
    r: &xdarboux::laguerre::IdentityReport,
) -> GroupReport {
    let failures: Vec<FailureRecord> = r
        .failures
        .iter()
        .map(|f| FailureRecord {
            identity: f.identity.to_string(),
            n: (f.n >= 0).then_some(f.n),
        })
        .collect();
    GroupReport {
        family,
        seed: None,
        checked: r.checked,
        passed: failures.is_empty(),
        failures,
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

/// Checks every seed family of `𝓛_k` for `m ≤ 2`: the factorization
/// invariants, intertwining, and the expected classification (`φ1` deletes
/// the ground state at `m = 0` and is refused above it, `φ2` and `φ3` are
/// isospectral, `φ4` adds a state).
fn classical_factorization_groups(k: &Rational) -> Vec<GroupReport> {
    let t = laguerre_operator(k);
    let ground = Poly::one();
    let mut out = Vec::new();
    for family in SeedFamily::ALL {
        for m in 0..=2u32 {
            let spec = SeedSpec::new(family, k.clone(), m);
            let Ok((phi, lam)) = spec.seed() else {
                continue;
            };
            let record = FamilyRecord {
                variant: "classical".into(),
                k: format_rational(k),
                m,
            };
            let mut checks = Vec::new();
            match factorize(&t, &phi, Some(&spec.natural_gauge()), &lam) {
                Ok(f) => {
                    checks.push(("factorization", None, true));
                    checks.push(("intertwining", None, intertwine_check(&f)));
                    let got = classify(&f, Some(&ground));
                    let ok = match (family, m) {
                        (SeedFamily::Phi1, 0) => got == Ok(Classification::StateDeleting),
                        (SeedFamily::Phi1, _) => {
                            matches!(got, Err(xdarboux::Error::NotGroundState(_)))
                        }
                        (SeedFamily::Phi2 | SeedFamily::Phi3, _) => {
                            got == Ok(Classification::Isospectral)
                        }
                        (SeedFamily::Phi4, _) => got == Ok(Classification::StateAdding),
                    };
                    checks.push(("classification", None, ok));
                }
                Err(_) => checks.push(("factorization", None, false)),
            }
            out.push(group(record, Some(family.name().into()), checks));
        }
    }
    out
}

/// Checks that factorizing the classical seed reproduces the family.
fn engine_group(f: &XFamily<Rational>, record: FamilyRecord) -> GroupReport {
    let spec = f.classical_seed();
    let mut checks = Vec::new();
    let fact = spec.seed().and_then(|(phi, lam)| {
        factorize(
            &laguerre_operator(&spec.k),
            &phi,
            Some(&spec.natural_gauge()),
            &lam,
        )
    });
    match fact {
        Ok(fact) => {
            checks.push(("engine partner operator", None, fact.that == f.operator()));
            checks.push((
                "engine intertwiner",
                None,
                fact.a_op == f.classical_intertwiner(),
            ));
            checks.push((
                "engine partner intertwiner",
                None,
                fact.b_op == f.classical_partner(),
            ));
        }
        Err(_) => checks.push(("engine factorization", None, false)),
    }
    group(record, Some(spec.family.name().into()), checks)
}

fn default_ks(variant: Variant, m: u32) -> Vec<Rational> {
    let m = m as i64;
    match variant {
        Variant::Classical => vec![q(0, 1), q(1, 2), q(1, 1), q(7, 3), q(4, 1)],
        Variant::Type1 => vec![q(1, 2), q(1, 1), q(7, 3), q(4, 1)],
        Variant::Type2 => vec![q(2 * m + 1, 2), q(m + 2, 1), q(3 * m + 7, 3)],
    }
}

pub fn verify(args: &VerifyArgs) -> CliResult<Completed> {
    let k = args.k.as_deref().map(parse_k).transpose()?;
    let nmax = args.n.as_deref().map(parse_range).transpose()?.map(|r| r.1);
    let mut groups = Vec::new();
    if args.variant == Variant::Classical {
        if args.m.is_some_and(|m| m != 0) {
            return Err(CliError::Invalid("the classical family has m = 0".into()));
        }
        for k in k.map_or_else(|| default_ks(Variant::Classical, 0), |k| vec![k]) {
            let fam = JobFamily::new(Variant::Classical, k.clone(), None)?;
            let report = identity_suite_with_fault(&k, nmax.unwrap_or(12), args.inject_fault);
            groups.push(from_identity_report(fam.record(), &report));
            groups.extend(classical_factorization_groups(&k));
        }
    } else {
        let ms: Vec<u32> = args.m.map_or_else(|| (0..=2).collect(), |m| vec![m]);
        for m in ms {
            for k in k
                .clone()
                .map_or_else(|| default_ks(args.variant, m), |k| vec![k])
            {
                let fam = JobFamily::new(args.variant, k, Some(m))?;
                let JobFamily::Exceptional(f) = &fam else {
                    unreachable!("exceptional variant")
                };
                let report = f.identity_suite_with_fault(nmax.unwrap_or(m + 8), args.inject_fault);
                groups.push(from_identity_report(fam.record(), &report));
                groups.push(engine_group(f, fam.record()));
            }
        }
    }
    let checked = groups.iter().map(|g| g.checked).sum();
    let failed = groups.iter().map(|g| g.failures.len()).sum();
    let report = VerifyReport {
        passed: failed == 0,
        checked,
        failed,
        groups,
    };
    let failure = report.groups.iter().find_map(|g| {
        g.failures.first().map(|f| {
            let at = f.n.map(|n| format!(" n={n}")).unwrap_or_default();
            let seed = g
                .seed
                .as_ref()
                .map(|s| format!(" seed={s}"))
                .unwrap_or_default();
            CliError::Verification(format!(
                "first failing identity: {} ({} k={} m={}{seed}{at})",
                f.identity, g.family.variant, g.family.k, g.family.m
            ))
        })
    });
    let body = match args.output.format {
        Format::Json => to_json(&report)?,
        Format::Csv => {
            let header = ["variant", "k", "m", "seed", "identity", "n", "result"].map(String::from);
            let mut rows = Vec::new();
            for g in &report.groups {
                let base = vec![
                    g.family.variant.clone(),
                    g.family.k.clone(),
                    g.family.m.to_string(),
                ];
                let seed = g.seed.clone().unwrap_or_default();
                if g.failures.is_empty() {
                    let summary = format!("all {} checks", g.checked);
                    rows.push(
                        [
                            base.clone(),
                            vec![seed.clone(), summary, String::new(), "pass".into()],
                        ]
                        .concat(),
                    );
                }
                for f in &g.failures {
                    let n = f.n.map(|n| n.to_string()).unwrap_or_default();
                    rows.push(
                        [
                            base.clone(),
                            vec![seed.clone(), f.identity.clone(), n, "fail".into()],
                        ]
                        .concat(),
                    );
                }
            }
            to_csv(&header, rows)?
        }
    };
    Ok(Completed { body, failure })
}

// ---------------------------------------------------------------- norms

#[derive(Clone, Debug, Serialize)]
pub struct NormRow {
    pub n: u32,
    pub closed_form: f64,
    pub quadrature: Option<f64>,
    pub relative_error: Option<f64>,
    pub nodes: Option<usize>,
    /// Relative change of the last node doubling.
    pub certificate: Option<f64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GramEntry {
    pub i: u32,
    pub j: u32,
    pub value: f64,
    /// `|value| / sqrt(h_i h_j)`.
    pub scaled: f64,
    pub nodes: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormsReport {
    pub family: FamilyRecord,
    pub tolerance: f64,
    pub rows: Vec<NormRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<GramEntry>>,
}

pub fn norms(args: &NormsArgs) -> CliResult<Completed> {
    let fam = JobFamily::from_args(&args.family)?;
    let weight = fam.weight()?;
    let degrees = fam.degrees(args.family.n.as_deref())?;
    let polys = degrees
        .iter()
        .map(|&n| fam.polynomial(n))
        .collect::<CliResult<Vec<_>>>()?;
    let mut rows = Vec::new();
    let mut failure = None;
    let mut note = |e: CliError| {
        // non-convergence outranks a tolerance miss
        if failure
            .as_ref()
            .is_none_or(|f: &CliError| e.exit_code() > f.exit_code())
        {
            failure = Some(e);
        }
    };
    let mut closed = Vec::new();
    for (&n, p) in degrees.iter().zip(&polys) {
        let h = fam.norm(n)?;
        closed.push(h);
        let mut row = NormRow {
            n,
            closed_form: h,
            quadrature: None,
            relative_error: None,
            nodes: None,
            certificate: None,
            error: None,
        };
        match certified_inner_product(p, p, &weight, QUADRATURE_START) {
            Ok(v) => {
                let rel = (v.value - h).abs() / h.abs();
                if rel.is_nan() || rel > NORM_TOLERANCE {
                    note(CliError::Verification(format!(
                        "n = {n}: relative error {rel:.3e} exceeds {NORM_TOLERANCE:e}"
                    )));
                }
                row.quadrature = Some(v.value);
                row.relative_error = Some(rel);
                row.nodes = Some(v.nodes);
                row.certificate = Some(v.relative_change);
            }
            Err(e) => {
                row.error = Some(e.to_string());
                note(CliError::from(e));
            }
        }
        rows.push(row);
    }
    let gram = if args.gram {
        let mut entries = Vec::new();
        for a in 0..degrees.len() {
            for b in a + 1..degrees.len() {
                let (i, j) = (degrees[a], degrees[b]);
                match certified_inner_product(&polys[a], &polys[b], &weight, QUADRATURE_START) {
                    Ok(v) => {
                        let scaled = v.value.abs() / (closed[a] * closed[b]).sqrt();
                        if scaled.is_nan() || scaled > NORM_TOLERANCE {
                            note(CliError::Verification(format!(
                                "<X_{i}, X_{j}> scaled {scaled:.3e} exceeds {NORM_TOLERANCE:e}"
                            )));
                        }
                        entries.push(GramEntry {
                            i,
                            j,
                            value: v.value,
                            scaled,
                            nodes: v.nodes,
                        });
                    }
                    Err(e) => note(CliError::from(e)),
                }
            }
        }
        Some(entries)
    } else {
        None
    };
    let report = NormsReport {
        family: fam.record(),
        tolerance: NORM_TOLERANCE,
        rows,
        gram,
    };
    let body = match args.output.format {
        Format::Json => to_json(&report)?,
        Format::Csv => {
            let header = [
                "kind",
                "i",
                "j",
                "closed_form",
                "quadrature",
                "relative_error",
                "nodes",
                "certificate",
                "error",
            ]
            .map(String::from);
            let f = |v: Option<f64>| v.map(|v| format!("{v:.16e}")).unwrap_or_default();
            let mut out: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        "norm".into(),
                        r.n.to_string(),
                        r.n.to_string(),
                        f(Some(r.closed_form)),
                        f(r.quadrature),
                        f(r.relative_error),
                        r.nodes.map(|n| n.to_string()).unwrap_or_default(),
                        f(r.certificate),
                        r.error.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            for g in report.gram.iter().flatten() {
                out.push(vec![
                    "gram".into(),
                    g.i.to_string(),
                    g.j.to_string(),
                    f(Some(0.0)),
                    f(Some(g.value)),
                    f(Some(g.scaled)),
                    g.nodes.to_string(),
                    String::new(),
                    String::new(),
                ]);
            }
            to_csv(&header, out)?
        }
    };
    Ok(Completed { body, failure })
}

// ---------------------------------------------------------------- factorize

#[derive(Clone, Debug, Serialize)]
pub struct OperatorRecord {
    pub p: String,
    pub q: String,
    pub r: String,
}

impl OperatorRecord {
    fn new(t: &Operator) -> Self {
        Self {
            p: t.coeff(2).to_string(),
            q: t.coeff(1).to_string(),
            r: t.coeff(0).to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationReport {
    pub k: String,
    pub m: u32,
    pub seed: String,
    pub operator: OperatorRecord,
    pub lambda0: String,
    pub phi: String,
    pub w: String,
    pub b: String,
    pub bhat: String,
    pub what: String,
    pub partner: OperatorRecord,
    pub phihat: String,
    pub classification: String,
}

pub fn factorize_cmd(args: &FactorizeArgs) -> CliResult<Completed> {
    let k = parse_k(&args.k)?;
    let spec = SeedSpec::new(args.seed, k.clone(), args.m);
    let (phi, lam) = spec.seed()?;
    let t = laguerre_operator(&k);
    let f = factorize(&t, &phi, Some(&spec.natural_gauge()), &lam)?;
    let ground = laguerre(0, &k);
    let classification = classify(&f, Some(&ground))?;
    let report = FactorizationReport {
        k: format_rational(&k),
        m: args.m,
        seed: args.seed.name().into(),
        operator: OperatorRecord::new(&t),
        lambda0: format_rational(&f.lambda0),
        phi: f.phi.to_string(),
        w: f.w.to_string(),
        b: f.b.to_string(),
        bhat: f.bhat.to_string(),
        what: f.what.to_string(),
        partner: OperatorRecord::new(&f.that),
        phihat: f.phihat.to_string(),
        classification: classification.name().into(),
    };
    let body = match args.output.format {
        Format::Json => to_json(&report)?,
        Format::Csv => {
            let header = ["field", "value"].map(String::from);
            let r = &report;
            let rows = [
                ("k", r.k.clone()),
                ("m", r.m.to_string()),
                ("seed", r.seed.clone()),
                ("T.p", r.operator.p.clone()),
                ("T.q", r.operator.q.clone()),
                ("T.r", r.operator.r.clone()),
                ("lambda0", r.lambda0.clone()),
                ("phi", r.phi.clone()),
                ("w", r.w.clone()),
                ("b", r.b.clone()),
                ("bhat", r.bhat.clone()),
                ("what", r.what.clone()),
                ("That.p", r.partner.p.clone()),
                ("That.q", r.partner.q.clone()),
                ("That.r", r.partner.r.clone()),
                ("phihat", r.phihat.clone()),
                ("classification", r.classification.clone()),
            ]
            .map(|(a, b)| vec![a.to_string(), b]);
            to_csv(&header, rows)?
        }
    };
    Ok(Completed::ok(body))
}

// ---------------------------------------------------------------- zeros

#[derive(Clone, Debug, Serialize)]
pub struct ZeroRecord {
    pub lo: String,
    pub hi: String,
    pub approx: f64,
    /// `exact` when the polynomial vanishes at `lo = hi`, else `sign-change`.
    pub certificate: String,
    pub sign_lo: i8,
    pub sign_hi: i8,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZerosRow {
    pub n: u32,
    pub polynomial: String,
    pub zeros: Vec<ZeroRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZerosReport {
    pub family: FamilyRecord,
    /// Upper bound on every interval width.
    pub width: String,
    pub rows: Vec<ZerosRow>,
}

fn sign(v: &Rational) -> i8 {
    match v.cmp(&Rational::int(0)) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

/// Largest interval width emitted: `2^-34 < 1e-10`.
pub fn zero_width() -> Rational {
    Rational::ratio(1, 1 << 34)
}

pub fn zeros(args: &ZerosArgs) -> CliResult<Completed> {
    let fam = JobFamily::from_args(&args.family)?;
    let width = zero_width();
    let mut rows = Vec::new();
    for n in fam.degrees(args.family.n.as_deref())? {
        let p = fam.polynomial(n)?;
        let mut zeros = Vec::new();
        if p.degree().is_some_and(|d| d > 0) {
            // certificates refer to the squarefree part, whose roots are all simple
            let sf = p.squarefree_part()?;
            for iv in isolate_real_roots(&p, &width)? {
                if !iv.certifies(&sf) {
                    return Err(CliError::Verification(format!(
                        "interval [{}, {}] of X_{n} fails its certificate",
                        iv.lo, iv.hi
                    )));
                }
                zeros.push(ZeroRecord {
                    lo: format_rational(&iv.lo),
                    hi: format_rational(&iv.hi),
                    approx: iv.midpoint().to_f64_lossy(),
                    certificate: if iv.is_exact() {
                        "exact".into()
                    } else {
                        "sign-change".into()
                    },
                    sign_lo: sign(&sf.eval(&iv.lo)),
                    sign_hi: sign(&sf.eval(&iv.hi)),
                });
            }
        }
        rows.push(ZerosRow {
            n,
            polynomial: p.to_string(),
            zeros,
        });
    }
    let report = ZerosReport {
        family: fam.record(),
        width: format_rational(&width),
        rows,
    };
    let body = match args.output.format {
        Format::Json => to_json(&report)?,
        Format::Csv => {
            let header = [
                "n",
                "lo",
                "hi",
                "approx",
                "certificate",
                "sign_lo",
                "sign_hi",
            ]
            .map(String::from);
            let out = report.rows.iter().flat_map(|r| {
                r.zeros.iter().map(move |z| {
                    vec![
                        r.n.to_string(),
                        z.lo.clone(),
                        z.hi.clone(),
                        format!("{:.16e}", z.approx),
                        z.certificate.clone(),
                        z.sign_lo.to_string(),
                        z.sign_hi.to_string(),
                    ]
                })
            });
            to_csv(&header, out)?
        }
    };
    Ok(Completed::ok(body))
}
