use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use qpos::generating::{
    cprime_closed, cprime_definitional, dprime_definitional, dprime_via_relation, family_series,
    gauss_product, heine_chain_check, special_forms, t2_series, triangular_indicator,
    SPECIAL_PARAMS,
};
use qpos::oracle::oracle_vs_series;
use qpos::positivity::{
    self, c23_case_against, c23_term, c41_decomposition_check, c41_needs_split, circle_bound_check,
    circle_count, f_checks, keysum_scan, lemma52_decomposition_check, lemma_a_coeff,
    negative_indices, scan_series, t2_direct, ConjectureTarget, Parity, ScanReport,
};
use qpos::{first_mismatch, Family, FamilyParams, Series, SeriesKind, Sign};

use crate::args::{
    ExpandArgs, FamilyArg, Identity, OracleArgs, OracleKind, Preset, ScanArgs, VerifyArgs,
};

/// Enumeration beyond this target is impractically slow.
pub const ORACLE_LIMIT: u32 = 60;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<qpos::Error> for CliError {
    fn from(e: qpos::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn family(f: FamilyArg) -> Family {
    match f {
        FamilyArg::C => Family::C,
        FamilyArg::D => Family::D,
    }
}

fn label(family: Family, p: FamilyParams) -> String {
    format!("{family:?}'({},{})", p.k, p.m)
}

fn decimal(s: &Series) -> Vec<String> {
    s.coeffs().iter().map(BigInt::to_string).collect()
}

#[derive(Debug, Serialize)]
pub struct ExpandReport {
    pub series: String,
    pub kind: SeriesKind,
    pub k: u32,
    pub m: u32,
    pub order: usize,
    pub coefficients: Vec<String>,
}

pub fn expand(args: &ExpandArgs) -> Result<ExpandReport, CliError> {
    let p = FamilyParams::new(args.k, args.m)?;
    let kind = SeriesKind::new(family(args.family), !args.unsigned);
    let s = family_series(kind, p, args.order);
    Ok(ExpandReport {
        series: label(kind.family(), p),
        kind,
        k: p.k,
        m: p.m,
        order: args.order,
        coefficients: decimal(&s),
    })
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn pass(label: impl Into<String>) -> Self {
        Check {
            label: label.into(),
            passed: true,
            detail: None,
        }
    }

    pub fn fail(label: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            label: label.into(),
            passed: false,
            detail: Some(detail.into()),
        }
    }

    fn compare(label: impl Into<String>, a: &Series, b: &Series) -> Self {
        match first_mismatch(a, b) {
            None => Check::pass(label),
            Some(m) => Check::fail(
                label,
                format!(
                    "first difference at q^{}: {} vs {}",
                    m.index, m.left, m.right
                ),
            ),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub identity: String,
    pub order: usize,
    pub verdict: &'static str,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn new(identity: &str, order: usize, checks: Vec<Check>) -> Self {
        let verdict = if checks.iter().all(|c| c.passed) {
            "equal"
        } else {
            "mismatch"
        };
        VerifyReport {
            identity: identity.to_string(),
            order,
            verdict,
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "equal"
    }
}

/// Grid of parameters: the given pair, or every pair up to `max`.
fn grid(k: Option<u32>, m: Option<u32>, max: u32) -> Result<Vec<FamilyParams>, CliError> {
    let ks: Vec<u32> = k.map_or_else(|| (1..=max).collect(), |k| vec![k]);
    let ms: Vec<u32> = m.map_or_else(|| (1..=max).collect(), |m| vec![m]);
    let mut out = Vec::new();
    for &k in &ks {
        for &m in &ms {
            out.push(FamilyParams::new(k, m)?);
        }
    }
    Ok(out)
}

fn identity_name(id: Identity) -> &'static str {
    match id {
        Identity::ThmC => "thmC",
        Identity::ThmD => "thmD",
        Identity::Special => "special",
        Identity::Heine => "heine",
        Identity::Lemma51 => "lemma51",
        Identity::Lemma52 => "lemma52",
        Identity::C23cases => "c23cases",
        Identity::C41decomp => "c41decomp",
        Identity::Gauss => "gauss",
        Identity::Keysum => "keysum",
        Identity::Circle => "circle",
        Identity::Fcalc => "fcalc",
    }
}

pub fn verify(args: &VerifyArgs) -> Result<VerifyReport, CliError> {
    let name = identity_name(args.identity);
    let (order, checks) = match args.identity {
        Identity::ThmC => {
            let order = args.order.unwrap_or(300);
            let checks = grid(args.k, args.m, 6)?
                .par_iter()
                .map(|&p| {
                    Check::compare(
                        format!("C'({},{}) defining sum = closed form", p.k, p.m),
                        &cprime_definitional(p, order),
                        &cprime_closed(p, order),
                    )
                })
                .collect();
            (order, checks)
        }
        Identity::ThmD => {
            let order = args.order.unwrap_or(300);
            let checks = grid(args.k, args.m, 4)?
                .par_iter()
                .map(|&p| {
                    let lbl = format!("D'({},{}) relation = defining sum", p.k, p.m);
                    match dprime_via_relation(p, order) {
                        Ok(via) => Check::compare(lbl, &via, &dprime_definitional(p, order)),
                        Err(e) => Check::fail(lbl, e.to_string()),
                    }
                })
                .collect();
            (order, checks)
        }
        Identity::Special => {
            let order = args.order.unwrap_or(300);
            let pairs: Vec<(u32, u32)> = match (args.k, args.m) {
                (None, None) => SPECIAL_PARAMS.to_vec(),
                (Some(k), Some(m)) if SPECIAL_PARAMS.contains(&(k, m)) => vec![(k, m)],
                _ => {
                    return Err(CliError::Usage(format!(
                        "special forms exist only for (k,m) in {SPECIAL_PARAMS:?}"
                    )))
                }
            };
            let mut checks = Vec::new();
            for (k, m) in pairs {
                let p = FamilyParams::new(k, m)?;
                let base = cprime_definitional(p, order);
                for form in special_forms(p, order) {
                    checks.push(Check::compare(
                        format!("C'({k},{m}) = {}", form.name),
                        &form.series,
                        &base,
                    ));
                }
            }
            (order, checks)
        }
        Identity::Heine => {
            let order = args.order.unwrap_or(100);
            let p = FamilyParams::new(args.k.unwrap_or(2), args.m.unwrap_or(3))?;
            let r = heine_chain_check(p, order);
            let checks = r
                .lines
                .windows(2)
                .enumerate()
                .map(|(i, pair)| {
                    let lbl = format!("{} = {}", pair[0], pair[1]);
                    match &r.first_disagreement {
                        Some(d) if d.line == i => {
                            Check::fail(lbl, format!("q^{}: {} vs {}", d.index, d.left, d.right))
                        }
                        Some(d) if d.line < i => Check::fail(lbl, "not reached"),
                        _ => Check::pass(lbl),
                    }
                })
                .collect();
            (order, checks)
        }
        Identity::Lemma51 => {
            let order = args.order.unwrap_or(1000);
            let nmax = args.nmax.unwrap_or(10) as usize;
            let checks = (0..=nmax)
                .into_par_iter()
                .flat_map_iter(|n| (0..=5usize).map(move |a| (n, a)))
                .map(|(n, a)| {
                    let mut s = Series::monomial(a, order);
                    s.div_binomial(Sign::Plus, 1);
                    s.div_binomial(Sign::Minus, 2 * n + 3);
                    let lbl = format!("coefficients of q^{a}/((1+q)(1-q^{}))", 2 * n + 3);
                    let bad = (0..=order).find(|&t| {
                        BigInt::from(lemma_a_coeff(n as u64, a as u64, t as u64)) != s.coeffs()[t]
                    });
                    match bad {
                        None => Check::pass(lbl),
                        Some(t) => Check::fail(
                            lbl,
                            format!(
                                "q^{t}: formula {} vs expansion {}",
                                lemma_a_coeff(n as u64, a as u64, t as u64),
                                s.coeffs()[t]
                            ),
                        ),
                    }
                })
                .collect();
            (order, checks)
        }
        Identity::Lemma52 => {
            let order = args.order.unwrap_or(300);
            let nmax = args.nmax.unwrap_or(20) as usize;
            let checks = (0..=nmax)
                .into_par_iter()
                .map(|n| {
                    let lbl = format!("partial fractions, n={n}");
                    match lemma52_decomposition_check(n, order) {
                        None => Check::pass(lbl),
                        Some(m) => {
                            Check::fail(lbl, format!("q^{}: {} vs {}", m.index, m.left, m.right))
                        }
                    }
                })
                .collect();
            (order, checks)
        }
        Identity::C23cases => {
            let order = args.order.unwrap_or(400);
            let nmax = args.nmax.unwrap_or(20) as u64;
            let checks = (0..=nmax)
                .into_par_iter()
                .map(|n| {
                    let lbl = format!("1 - T1 - T2 - T3 >= 0, n={n}");
                    let expanded = c23_term(n as usize, order);
                    for t in 1..=order as u64 {
                        match c23_case_against(n, t, &expanded) {
                            Ok(v) if v >= 0 => {}
                            Ok(v) => return Check::fail(lbl, format!("value {v} at q^{t}")),
                            Err(e) => return Check::fail(lbl, e.to_string()),
                        }
                    }
                    Check::pass(lbl)
                })
                .collect();
            (order, checks)
        }
        Identity::C41decomp => {
            let order = args.order.unwrap_or(300);
            let nmax = args.nmax.unwrap_or(30) as usize;
            let checks = (0..=nmax)
                .into_par_iter()
                .map(|n| {
                    if n >= 2 && c41_needs_split(n) {
                        let lbl = format!("two-term split, n={n}");
                        match c41_decomposition_check(n, order) {
                            Ok(c) if c.passed() => Check::pass(lbl),
                            Ok(c) => Check::fail(lbl, format!("{c:?}")),
                            Err(e) => Check::fail(lbl, e.to_string()),
                        }
                    } else {
                        let lbl = format!("divisible case nonnegative, n={n}");
                        if positivity::c41_divisible_case_nonnegative(n, order) {
                            Check::pass(lbl)
                        } else {
                            Check::fail(lbl, "negative coefficient")
                        }
                    }
                })
                .collect();
            (order, checks)
        }
        Identity::Gauss => {
            let order = args.order.unwrap_or(2000);
            let tri = triangular_indicator(order);
            let t2 = t2_series(order);
            let direct: Vec<BigInt> = (0..=order as u64)
                .map(|n| BigInt::from(t2_direct(n).t2))
                .collect();
            let direct = Series::from_coeffs(direct)?;
            let checks = vec![
                Check::compare(
                    "Gauss product = triangular indicator",
                    &gauss_product(order),
                    &tri,
                ),
                Check::compare("t2 series = indicator squared", &t2, &tri.mul(&tri)),
                Check::compare("t2 series = direct count", &t2, &direct),
            ];
            (order, checks)
        }
        Identity::Keysum => {
            let order = args.order.unwrap_or(5000);
            let mut checks = Vec::new();
            let scan = keysum_scan(order);
            let lbl = format!("t2(N) + t2(N-2) + ... <= N+1 for N <= {order}");
            checks.push(match scan.iter().find(|k| !k.holds) {
                None => Check::pass(lbl),
                Some(k) => Check::fail(lbl, format!("N={}: {} > {}", k.n, k.sum, k.bound)),
            });
            let lbl = "even margin > 0 beyond 90".to_string();
            checks.push(
                match scan
                    .iter()
                    .find(|k| k.n % 2 == 0 && k.n > 90 && k.margin() <= 0)
                {
                    None => Check::pass(lbl),
                    Some(k) => Check::fail(lbl, format!("N={} margin {}", k.n, k.margin())),
                },
            );
            let d21 = dprime_via_relation(FamilyParams::new(2, 1)?, order)?;
            let margins: Vec<BigInt> = scan.iter().map(|k| BigInt::from(k.margin())).collect();
            checks.push(Check::compare(
                "margin = D'(2,1) coefficient",
                &Series::from_coeffs(margins)?,
                &d21,
            ));
            (order, checks)
        }
        Identity::Circle => {
            let order = args.order.unwrap_or(500);
            let table = positivity::t2_table(16 * order + 20);
            let mut checks: Vec<Check> = [Parity::Even, Parity::Odd]
                .into_par_iter()
                .map(|parity| {
                    let lbl = format!("{parity:?} circle points = t2 partial sums");
                    for n in 0..=order as u64 {
                        let top = parity.top(n);
                        let sum: u64 = (0..=top / 2).map(|j| table[(top - 2 * j) as usize]).sum();
                        let count = circle_count(n, parity);
                        if count != sum {
                            return Check::fail(lbl, format!("N={n}: {count} vs {sum}"));
                        }
                    }
                    Check::pass(lbl)
                })
                .collect();
            let lbl = "points <= pi N/2 + 65 pi/16 + 2 sqrt(2N + 1/4)";
            checks.push(
                match (0..=order as u64)
                    .map(circle_bound_check)
                    .find(|b| !b.holds)
                {
                    None => Check::pass(lbl),
                    Some(b) => Check::fail(lbl, format!("N={}: {} > {}", b.n, b.count, b.bound)),
                },
            );
            (order, checks)
        }
        Identity::Fcalc => {
            let r = f_checks();
            let flag = |ok: bool, lbl: &str, detail: String| {
                if ok {
                    Check::pass(lbl)
                } else {
                    Check::fail(lbl, detail)
                }
            };
            let checks = vec![
                flag(r.f_at_90_ok, "f(90) = 0.0141", format!("{}", r.f_at_90)),
                flag(
                    r.slope_constant_ok,
                    "2 - pi/2 - 4/11 = 0.06556",
                    format!("{}", r.slope_constant),
                ),
                flag(
                    r.f_prime_positive_from_15,
                    "f' > 0 on 15..=200",
                    String::new(),
                ),
                flag(r.f_second_positive, "f'' > 0 on 0..=200", String::new()),
            ];
            (0, checks)
        }
    };
    Ok(VerifyReport::new(name, order, checks))
}

/// Families with a proof of positivity: a negative coefficient here is a
/// verification failure.
pub fn proven_positive(family: Family, p: FamilyParams) -> bool {
    match family {
        Family::C => matches!(
            (p.k, p.m),
            (1, 1) | (2, 1) | (3, 1) | (2, 2) | (2, 3) | (4, 1)
        ),
        Family::D => (p.k, p.m) == (2, 1),
    }
}

#[derive(Debug, Serialize)]
pub struct ScanEntry {
    pub series: String,
    pub k: u32,
    pub m: u32,
    pub proven_positive: bool,
    #[serde(flatten)]
    pub report: ScanReport,
    pub largest_negative: Option<usize>,
    #[serde(skip)]
    pub coefficients: Series,
}

#[derive(Debug, Serialize)]
pub struct ScanOutput {
    pub preset: Option<String>,
    pub order: usize,
    pub scans: Vec<ScanEntry>,
}

impl ScanOutput {
    pub fn passed(&self) -> bool {
        self.scans
            .iter()
            .all(|s| !s.proven_positive || s.report.is_nonnegative())
    }
}

fn preset_targets(args: &ScanArgs, preset: Preset) -> Result<Vec<ConjectureTarget>, CliError> {
    Ok(match preset {
        Preset::Ck1 => match args.k {
            Some(k) => vec![ConjectureTarget::Ck1 { k }],
            None => (1..=10).map(|k| ConjectureTarget::Ck1 { k }).collect(),
        },
        Preset::C24 => vec![ConjectureTarget::C24],
        Preset::C2m => vec![ConjectureTarget::C2m {
            m: args.m.unwrap_or(5),
        }],
        Preset::D22 => vec![ConjectureTarget::D22],
        Preset::D23 => vec![ConjectureTarget::D23],
        Preset::Dkm => match (args.k, args.m) {
            (Some(k), Some(m)) if k > m => vec![ConjectureTarget::Dkm { k, m }],
            (Some(_), Some(_)) => {
                return Err(CliError::Usage(
                    "dkm preset needs --k greater than --m".into(),
                ))
            }
            (None, None) => (2..=4)
                .flat_map(|k| (1..k).map(move |m| ConjectureTarget::Dkm { k, m }))
                .collect(),
            _ => {
                return Err(CliError::Usage(
                    "dkm preset takes both --k and --m or neither".into(),
                ))
            }
        },
    })
}

pub fn scan(args: &ScanArgs) -> Result<ScanOutput, CliError> {
    let (preset, jobs): (Option<String>, Vec<(Family, FamilyParams)>) =
        match (args.preset, args.family) {
            (Some(preset), _) => {
                let targets = preset_targets(args, preset)?;
                let jobs = targets
                    .iter()
                    .map(|t| t.family())
                    .collect::<Result<Vec<_>, _>>()?;
                let name = format!("{preset:?}").to_lowercase();
                (Some(name), jobs)
            }
            (None, Some(f)) => {
                let (Some(k), Some(m)) = (args.k, args.m) else {
                    return Err(CliError::Usage("scan --family needs --k and --m".into()));
                };
                (None, vec![(family(f), FamilyParams::new(k, m)?)])
            }
            (None, None) => return Err(CliError::Usage("scan needs --family or --preset".into())),
        };
    let order = args.order;
    let scans = jobs
        .par_iter()
        .map(|&(fam, p)| {
            let s = scan_series(fam, p, order)?;
            let report = negative_indices(&s);
            Ok(ScanEntry {
                series: label(fam, p),
                k: p.k,
                m: p.m,
                proven_positive: proven_positive(fam, p),
                largest_negative: report.largest_negative(),
                report,
                coefficients: s,
            })
        })
        .collect::<Result<Vec<_>, qpos::Error>>()?;
    Ok(ScanOutput {
        preset,
        order,
        scans,
    })
}

#[derive(Debug, Serialize)]
pub struct OracleRow {
    pub n: u32,
    pub even_weight: u64,
    pub odd_weight: u64,
    pub enumerated: i64,
    pub series: String,
}

#[derive(Debug, Serialize)]
pub struct OracleOutput {
    pub series: String,
    pub kind: SeriesKind,
    pub nmax: u32,
    pub verdict: &'static str,
    pub rows: Vec<OracleRow>,
    pub first_mismatch: Option<qpos::oracle::OracleMismatch>,
}

pub fn oracle(args: &OracleArgs) -> Result<OracleOutput, CliError> {
    if args.nmax > ORACLE_LIMIT {
        return Err(CliError::Usage(format!(
            "--nmax {} exceeds the enumeration limit {ORACLE_LIMIT}",
            args.nmax
        )));
    }
    let p = FamilyParams::new(args.k, args.m)?;
    let kind = SeriesKind::new(family(args.family), args.kind == OracleKind::Signed);
    let report = oracle_vs_series(kind, p, args.nmax);
    let series = family_series(kind, p, args.nmax as usize);
    let rows = report
        .counts
        .iter()
        .enumerate()
        .map(|(n, c)| OracleRow {
            n: n as u32,
            even_weight: c.even_weight,
            odd_weight: c.odd_weight,
            enumerated: if kind.is_signed() {
                c.difference()
            } else {
                c.total() as i64
            },
            series: series.coeffs()[n].to_string(),
        })
        .collect();
    Ok(OracleOutput {
        series: label(kind.family(), p),
        kind,
        nmax: args.nmax,
        verdict: if report.matches() {
            "match"
        } else {
            "mismatch"
        },
        rows,
        first_mismatch: report.first_mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verify_args(identity: Identity, order: Option<usize>) -> VerifyArgs {
        VerifyArgs {
            identity,
            k: None,
            m: None,
            order,
            nmax: None,
        }
    }

    #[test]
    fn expand_c21() {
        let r = expand(&ExpandArgs {
            family: FamilyArg::C,
            k: 2,
            m: 1,
            order: 10,
            unsigned: false,
        })
        .unwrap();
        let expect: Vec<String> = (0..=10).map(|n| n.to_string()).collect();
        assert_eq!(r.coefficients, expect);
    }

    #[test]
    fn expand_rejects_zero_params() {
        let r = expand(&ExpandArgs {
            family: FamilyArg::D,
            k: 0,
            m: 1,
            order: 10,
            unsigned: false,
        });
        assert!(matches!(r, Err(CliError::Usage(_))));
    }

    #[test]
    fn every_identity_verifies_at_small_order() {
        for id in [
            Identity::ThmC,
            Identity::ThmD,
            Identity::Special,
            Identity::Heine,
            Identity::Lemma51,
            Identity::Lemma52,
            Identity::C23cases,
            Identity::C41decomp,
            Identity::Gauss,
            Identity::Keysum,
            Identity::Circle,
            Identity::Fcalc,
        ] {
            let r = verify(&verify_args(id, Some(60))).unwrap();
            assert!(r.passed(), "{id:?}: {:?}", r.checks);
            assert!(!r.checks.is_empty());
        }
    }

    #[test]
    fn special_rejects_other_params() {
        let mut a = verify_args(Identity::Special, Some(20));
        a.k = Some(5);
        a.m = Some(5);
        assert!(matches!(verify(&a), Err(CliError::Usage(_))));
    }

    #[test]
    fn proven_positive_table() {
        let p = |k, m| FamilyParams::new(k, m).unwrap();
        assert!(proven_positive(Family::C, p(4, 1)));
        assert!(!proven_positive(Family::C, p(2, 5)));
        assert!(proven_positive(Family::D, p(2, 1)));
        assert!(!proven_positive(Family::D, p(2, 3)));
    }

    #[test]
    fn dkm_preset_needs_k_above_m() {
        let args = ScanArgs {
            family: None,
            preset: Some(Preset::Dkm),
            k: Some(2),
            m: Some(3),
            order: 50,
        };
        assert!(matches!(scan(&args), Err(CliError::Usage(_))));
    }
}
