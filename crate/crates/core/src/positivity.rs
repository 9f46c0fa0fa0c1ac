//! Sign scans and the coefficient-level arguments behind the positivity
//! results.
//!
//! Series comparisons are exact. Only the lattice-point bound and the
//! calculus checks on the comparison function use `f64`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fps::{Series, Sign};
use crate::generating::{cprime_closed, dprime_via_relation, FamilyParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    NonnegativeSoFar,
    Oscillating,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub scanned_to: usize,
    pub negative_indices: Vec<usize>,
    pub classification: Classification,
}

impl ScanReport {
    pub fn largest_negative(&self) -> Option<usize> {
        self.negative_indices.last().copied()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.classification == Classification::NonnegativeSoFar
    }
}

pub fn negative_indices(s: &Series) -> ScanReport {
    let negative_indices = s.negative_indices();
    let classification = if negative_indices.is_empty() {
        Classification::NonnegativeSoFar
    } else {
        Classification::Oscillating
    };
    ScanReport {
        scanned_to: s.order(),
        negative_indices,
        classification,
    }
}

// Coefficient lemmas for the C'(2,3) argument.

fn parity_sign(e: u64) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Coefficient of `q^target` in `q^shift / ((1+q)(1-q^{2n+3}))`:
/// `(-1)^{target-shift}` when `floor((target-shift)/(2n+3))` is even, else 0.
/// Targets below the shift give 0.
pub fn lemma_a_coeff(n: u64, shift: u64, target: u64) -> i64 {
    if target < shift {
        return 0;
    }
    let d = target - shift;
    if (d / (2 * n + 3)).is_multiple_of(2) {
        parity_sign(d)
    } else {
        0
    }
}

/// `q^shift / ((1+q)(1-q^{period}))` expanded as a series.
fn alternating_over(shift: usize, period: usize, order: usize) -> Series {
    let mut s = Series::monomial(shift, order);
    s.div_binomial(Sign::Plus, 1);
    s.div_binomial(Sign::Minus, period);
    s
}

/// `q^3 (1-q^{2n+2})(1-q^{2n+4}) / ((1-q)(1-q^{2n+3})(1-q^{2n+5}))`.
pub fn c23_term(n: usize, order: usize) -> Series {
    let mut s = Series::monomial(3, order);
    s.mul_binomial(Sign::Minus, 2 * n + 2);
    s.mul_binomial(Sign::Minus, 2 * n + 4);
    s.div_binomial(Sign::Minus, 1);
    s.div_binomial(Sign::Minus, 2 * n + 3);
    s.div_binomial(Sign::Minus, 2 * n + 5);
    s
}

/// The four-term partial fraction form of [`c23_term`]:
/// `q/(1-q) - q^2/((1+q)(1-q^{2n+3})) - q/(1-q^{2n+5}) - q^3/((1+q)(1-q^{2n+5}))`.
pub fn c23_partial_fractions(n: usize, order: usize) -> Series {
    let mut first = Series::monomial(1, order);
    first.div_binomial(Sign::Minus, 1);
    let mut third = Series::monomial(1, order);
    third.div_binomial(Sign::Minus, 2 * n + 5);
    first
        .sub(&alternating_over(2, 2 * n + 3, order))
        .sub(&third)
        .sub(&alternating_over(3, 2 * n + 5, order))
}

pub fn lemma52_decomposition_check(n: usize, order: usize) -> Option<crate::Mismatch> {
    crate::first_mismatch(&c23_term(n, order), &c23_partial_fractions(n, order))
}

/// The three correction terms of the coefficient `1 - T1 - T2 - T3` of
/// `q^target` in [`c23_term`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CaseTerms {
    pub t1: i64,
    pub t2: i64,
    pub t3: i64,
}

impl CaseTerms {
    pub fn new(n: u64, target: u64) -> Self {
        let t1 = if target >= 2 && ((target - 2) / (2 * n + 3)).is_multiple_of(2) {
            parity_sign(target)
        } else {
            0
        };
        let t2 = if target >= 3 && ((target - 3) / (2 * n + 5)).is_multiple_of(2) {
            -parity_sign(target)
        } else {
            0
        };
        let t3 = i64::from(target % (2 * n + 5) == 1);
        CaseTerms { t1, t2, t3 }
    }

    pub fn value(&self) -> i64 {
        1 - self.t1 - self.t2 - self.t3
    }
}

/// Evaluates `1 - T1 - T2 - T3` and checks it against the expansion
/// coefficient of [`c23_term`]. Requires `target >= 1`.
pub fn c23_case_coefficient(n: u64, target: u64) -> Result<i64> {
    let direct = c23_term(n as usize, target as usize);
    c23_case_against(n, target, &direct)
}

/// As [`c23_case_coefficient`], reusing an already expanded term.
pub fn c23_case_against(n: u64, target: u64, expanded: &Series) -> Result<i64> {
    if target == 0 {
        return Err(Error::OutOfRange("case formula needs N >= 1".into()));
    }
    let formula = CaseTerms::new(n, target).value();
    let direct = expanded
        .coeff(target as usize)
        .ok_or_else(|| Error::OutOfRange(format!("expansion stops before q^{target}")))?;
    if BigInt::from(formula) != *direct {
        return Err(Error::CaseMismatch {
            n,
            index: target,
            formula,
            direct: direct.to_string(),
        });
    }
    Ok(formula)
}

// Decomposition for the C'(4,1) argument.

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct C41Check {
    pub n: usize,
    pub equal: bool,
    pub first_summand_nonnegative: bool,
    pub second_summand_nonnegative: bool,
}

impl C41Check {
    pub fn passed(&self) -> bool {
        self.equal && self.first_summand_nonnegative && self.second_summand_nonnegative
    }
}

/// Whether `n` falls in the residue class needing the two-term split, i.e.
/// 3 divides neither `2n+3` nor `2n+5`.
pub fn c41_needs_split(n: usize) -> bool {
    !(2 * n + 3).is_multiple_of(3) && !(2 * n + 5).is_multiple_of(3)
}

/// Checks
/// `(1-q^{2n+3})(1-q^{2n+5}) / ((1-q)(1-q^3)(1-q^5))`
/// ` = (1-q^{2n+5})/((1-q)(1-q^5)) * (1-q^{2n-2})/(1-q^3) + q^{2n-2} (1-q^{2n+5})/((1-q)(1-q^3))`
/// and that both summands have nonnegative coefficients.
pub fn c41_decomposition_check(n: usize, order: usize) -> Result<C41Check> {
    if n < 2 || !c41_needs_split(n) {
        return Err(Error::OutOfRange(format!(
            "n = {n} is not in the split residue class (need n >= 2, 3 | 2n+1)"
        )));
    }
    let mut whole = Series::one(order);
    whole.mul_binomial(Sign::Minus, 2 * n + 3);
    whole.mul_binomial(Sign::Minus, 2 * n + 5);
    for d in [1, 3, 5] {
        whole.div_binomial(Sign::Minus, d);
    }

    let mut first = Series::one(order);
    first.mul_binomial(Sign::Minus, 2 * n + 5);
    first.mul_binomial(Sign::Minus, 2 * n - 2);
    for d in [1, 5, 3] {
        first.div_binomial(Sign::Minus, d);
    }

    let mut second = Series::monomial(2 * n - 2, order);
    second.mul_binomial(Sign::Minus, 2 * n + 5);
    second.div_binomial(Sign::Minus, 1);
    second.div_binomial(Sign::Minus, 3);

    Ok(C41Check {
        n,
        equal: whole == first.add(&second),
        first_summand_nonnegative: first.negative_indices().is_empty(),
        second_summand_nonnegative: second.negative_indices().is_empty(),
    })
}

/// Nonnegativity of `(1-q^{2n+3})(1-q^{2n+5}) / ((1-q)(1-q^3)(1-q^5))`
/// for a residue class where 3 divides one of the numerator exponents.
pub fn c41_divisible_case_nonnegative(n: usize, order: usize) -> bool {
    let mut whole = Series::one(order);
    whole.mul_binomial(Sign::Minus, 2 * n + 3);
    whole.mul_binomial(Sign::Minus, 2 * n + 5);
    for d in [1, 3, 5] {
        whole.div_binomial(Sign::Minus, d);
    }
    whole.negative_indices().is_empty()
}

// Sums of two triangular numbers and the lattice-point argument.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleCount {
    pub n: u64,
    pub t2: u64,
}

fn is_triangular(v: u64) -> bool {
    // v = x(x+1)/2 iff 8v+1 is an odd square
    let d = 8 * v + 1;
    let r = d.isqrt();
    r * r == d
}

/// Counts ordered pairs `(a, b)` of triangular numbers with `a + b = n`.
pub fn t2_direct(n: u64) -> TriangleCount {
    let t2 = (0u64..)
        .map(|x| x * (x + 1) / 2)
        .take_while(|&t| t <= n)
        .filter(|&t| is_triangular(n - t))
        .count() as u64;
    TriangleCount { n, t2 }
}

/// `t2(0..=max)` from all pairs of triangular numbers.
pub fn t2_table(max: usize) -> Vec<u64> {
    let tri: Vec<usize> = (0..)
        .map(|x: usize| x * (x + 1) / 2)
        .take_while(|&t| t <= max)
        .collect();
    let mut out = vec![0u64; max + 1];
    for &a in &tri {
        for &b in tri.iter().take_while(|&&b| a + b <= max) {
            out[a + b] += 1;
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KeySum {
    pub n: u64,
    /// `t2(N) + t2(N-2) + t2(N-4) + ...`
    pub sum: u64,
    pub bound: u64,
    pub holds: bool,
}

impl KeySum {
    /// `N + 1 - S(N)`, which equals the coefficient of `q^N` in `D'(2,1)`.
    pub fn margin(&self) -> i64 {
        self.bound as i64 - self.sum as i64
    }
}

pub fn keysum_check(n: u64) -> KeySum {
    let sum = (0..=n / 2).map(|j| t2_direct(n - 2 * j).t2).sum();
    KeySum {
        n,
        sum,
        bound: n + 1,
        holds: sum <= n + 1,
    }
}

/// [`keysum_check`] for every `N <= max`, sharing one `t2` table.
pub fn keysum_scan(max: usize) -> Vec<KeySum> {
    let t2 = t2_table(max);
    let mut partial = [0u64; 2];
    (0..=max)
        .map(|n| {
            partial[n % 2] += t2[n];
            let sum = partial[n % 2];
            KeySum {
                n: n as u64,
                sum,
                bound: n as u64 + 1,
                holds: sum <= n as u64 + 1,
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// `(radius squared, residue mod 16)` of the circle for `N`.
    pub fn circle(self, n: u64) -> (u64, u64) {
        match self {
            Parity::Even => (16 * n + 2, 2),
            Parity::Odd => (16 * n + 10, 10),
        }
    }

    /// The `z` whose triangular sums the circle collects: `2N` or `2N+1`.
    pub fn top(self, n: u64) -> u64 {
        match self {
            Parity::Even => 2 * n,
            Parity::Odd => 2 * n + 1,
        }
    }
}

/// Calls `visit` for each pair of positive odd integers `(u, v)` with
/// `u^2 + v^2 <= R` and `u^2 + v^2 ≡ r (mod 16)`.
pub fn for_each_circle_point(n: u64, parity: Parity, mut visit: impl FnMut(u64, u64)) {
    let (radius2, residue) = parity.circle(n);
    let mut u = 1u64;
    while u * u < radius2 {
        let mut v = 1u64;
        while u * u + v * v <= radius2 {
            if (u * u + v * v) % 16 == residue {
                visit(u, v);
            }
            v += 2;
        }
        u += 2;
    }
}

pub fn circle_count(n: u64, parity: Parity) -> u64 {
    let mut count = 0;
    for_each_circle_point(n, parity, |_, _| count += 1);
    count
}

/// `pi N / 2 + 65 pi / 16 + 2 sqrt(2N + 1/4)`.
pub fn circle_bound(n: u64) -> f64 {
    let x = n as f64;
    PI * x / 2.0 + 65.0 * PI / 16.0 + 2.0 * (2.0 * x + 0.25).sqrt()
}

pub const BOUND_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CircleBound {
    pub n: u64,
    pub count: u64,
    pub bound: f64,
    pub holds: bool,
}

pub fn circle_bound_check(n: u64) -> CircleBound {
    let count = circle_count(n, Parity::Even);
    let bound = circle_bound(n);
    CircleBound {
        n,
        count,
        bound,
        holds: count as f64 <= bound + BOUND_TOLERANCE,
    }
}

/// `f(x) = (2x+1) - pi x / 2 - 65 pi / 16 - 2 sqrt(2x + 1/4)`.
pub fn f(x: f64) -> f64 {
    (2.0 * x + 1.0) - PI * x / 2.0 - 65.0 * PI / 16.0 - 2.0 * (2.0 * x + 0.25).sqrt()
}

pub fn f_prime(x: f64) -> f64 {
    2.0 - PI / 2.0 - 2.0 * (2.0 * x + 0.25).powf(-0.5)
}

pub fn f_second(x: f64) -> f64 {
    2.0 * (2.0 * x + 0.25).powf(-1.5)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CalcCheck {
    pub x: f64,
    pub f: f64,
    pub f_prime: f64,
    pub f_second: f64,
}

impl CalcCheck {
    pub fn at(x: f64) -> Self {
        CalcCheck {
            x,
            f: f(x),
            f_prime: f_prime(x),
            f_second: f_second(x),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CalcReport {
    pub f_at_90: f64,
    /// `2 - pi/2 - 4/11`, the value of `f'(15)`.
    pub slope_constant: f64,
    pub f_at_90_ok: bool,
    pub slope_constant_ok: bool,
    pub f_prime_positive_from_15: bool,
    pub f_second_positive: bool,
    pub samples: Vec<CalcCheck>,
}

impl CalcReport {
    pub fn passed(&self) -> bool {
        self.f_at_90_ok
            && self.slope_constant_ok
            && self.f_prime_positive_from_15
            && self.f_second_positive
    }
}

pub const F90_EXPECTED: f64 = 0.0141;
pub const F90_TOLERANCE: f64 = 0.0005;
pub const SLOPE_EXPECTED: f64 = 0.06556;
pub const SLOPE_TOLERANCE: f64 = 0.00005;

pub fn f_checks() -> CalcReport {
    let samples: Vec<CalcCheck> = (0..=200).map(|x| CalcCheck::at(x as f64)).collect();
    let f_at_90 = f(90.0);
    let slope_constant = 2.0 - PI / 2.0 - 4.0 / 11.0;
    CalcReport {
        f_at_90,
        slope_constant,
        f_at_90_ok: (f_at_90 - F90_EXPECTED).abs() <= F90_TOLERANCE,
        slope_constant_ok: (slope_constant - SLOPE_EXPECTED).abs() <= SLOPE_TOLERANCE,
        f_prime_positive_from_15: samples[15..].iter().all(|c| c.f_prime > 0.0),
        f_second_positive: samples.iter().all(|c| c.f_second > 0.0),
        samples,
    }
}

// Conjecture scans.

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "target", rename_all = "lowercase")]
pub enum ConjectureTarget {
    /// `C'(k,1)` for a given `k`.
    Ck1 {
        k: u32,
    },
    C24,
    /// `C'(2,m)`.
    C2m {
        m: u32,
    },
    D22,
    D23,
    /// `D'(k,m)`, expected eventually positive when `k > m`.
    Dkm {
        k: u32,
        m: u32,
    },
}

impl ConjectureTarget {
    pub fn family(self) -> Result<(crate::Family, FamilyParams)> {
        use crate::Family::{C, D};
        let (fam, k, m) = match self {
            ConjectureTarget::Ck1 { k } => (C, k, 1),
            ConjectureTarget::C24 => (C, 2, 4),
            ConjectureTarget::C2m { m } => (C, 2, m),
            ConjectureTarget::D22 => (D, 2, 2),
            ConjectureTarget::D23 => (D, 2, 3),
            ConjectureTarget::Dkm { k, m } => (D, k, m),
        };
        Ok((fam, FamilyParams::new(k, m)?))
    }

    pub fn label(self) -> String {
        match self.family() {
            Ok((fam, p)) => format!("{:?}'({},{})", fam, p.k, p.m),
            Err(_) => format!("{self:?}"),
        }
    }
}

/// Signed series for a family, through the cheaper transformed routes.
pub fn scan_series(family: crate::Family, p: FamilyParams, order: usize) -> Result<Series> {
    match family {
        crate::Family::C => Ok(cprime_closed(p, order)),
        crate::Family::D => dprime_via_relation(p, order),
    }
}

pub fn conjecture_scan(target: ConjectureTarget, order: usize) -> Result<ScanReport> {
    let (family, p) = target.family()?;
    Ok(negative_indices(&scan_series(family, p, order)?))
}

/// Runs independent scans on a pool of `threads` workers; results come back
/// in input order whatever the thread count.
pub fn run_scans(
    targets: &[ConjectureTarget],
    order: usize,
    threads: usize,
) -> Result<Vec<(ConjectureTarget, ScanReport)>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::OutOfRange(e.to_string()))?;
    pool.install(|| {
        targets
            .par_iter()
            .map(|&t| conjecture_scan(t, order).map(|r| (t, r)))
            .collect()
    })
}

/// Converts a coefficient to `f64` for display; exact comparisons never go
/// through this.
pub fn approx(c: &BigInt) -> f64 {
    if c.is_zero() {
        0.0
    } else {
        c.to_f64().unwrap_or(f64::NAN)
    }
}
