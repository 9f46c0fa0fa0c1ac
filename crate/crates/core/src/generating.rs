//! Generating functions for the signed two-color partition families.
//!
//! `C'(k,m,n)` counts two-color partitions with an odd smallest part and
//! `D'(k,m,n)` those with an even blue smallest part, each weighted by the
//! parity of their even parts. Every series is built in at least two
//! independent ways so the routes can be checked against each other.
//!
//! Outer sums are cut using the minimal degree of each term: `m(2n+1)` for
//! the C family, `m(2n+2)` for the D family and `m+n` for the closed form.
//! Terms beyond the cut vanish modulo `q^{N+1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fps::{Series, Sign};

/// The pair `(k, m)` indexing a family; both are positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FamilyParams {
    pub k: u32,
    pub m: u32,
}

impl FamilyParams {
    pub fn new(k: u32, m: u32) -> Result<Self> {
        if k == 0 || m == 0 {
            return Err(Error::InvalidFamily { k, m });
        }
        Ok(FamilyParams { k, m })
    }

    fn ku(self) -> usize {
        self.k as usize
    }

    fn mu(self) -> usize {
        self.m as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    C,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeriesKind {
    CSigned,
    CUnsigned,
    DSigned,
    DUnsigned,
}

impl SeriesKind {
    pub fn family(self) -> Family {
        match self {
            SeriesKind::CSigned | SeriesKind::CUnsigned => Family::C,
            SeriesKind::DSigned | SeriesKind::DUnsigned => Family::D,
        }
    }

    pub fn is_signed(self) -> bool {
        matches!(self, SeriesKind::CSigned | SeriesKind::DSigned)
    }

    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::CSigned => "C-signed",
            SeriesKind::CUnsigned => "C-unsigned",
            SeriesKind::DSigned => "D-signed",
            SeriesKind::DUnsigned => "D-unsigned",
        }
    }

    pub fn new(family: Family, signed: bool) -> Self {
        match (family, signed) {
            (Family::C, true) => SeriesKind::CSigned,
            (Family::C, false) => SeriesKind::CUnsigned,
            (Family::D, true) => SeriesKind::DSigned,
            (Family::D, false) => SeriesKind::DUnsigned,
        }
    }
}

/// Multiplies by `(1 + factor*q^e)` for `e = start, start+2, ...` up to the order.
fn mul_step2_inf(s: &mut Series, start: usize, factor: Sign) {
    let order = s.order();
    let mut e = start;
    while e <= order {
        s.mul_binomial(factor, e);
        e += 2;
    }
}

fn mul_step2(s: &mut Series, start: usize, count: usize, factor: Sign) {
    for j in 0..count {
        s.mul_binomial(factor, start + 2 * j);
    }
}

fn div_step2_inf(s: &mut Series, start: usize) {
    let order = s.order();
    let mut e = start;
    while e <= order {
        s.div_binomial(Sign::Minus, e);
        e += 2;
    }
}

fn div_step2(s: &mut Series, start: usize, count: usize) {
    for j in 0..count {
        s.div_binomial(Sign::Minus, start + 2 * j);
    }
}

/// Shared skeleton of both defining sums:
/// `sum_n q^{m(2n+base)} (q^{2n+num_a}, q^{2n+num_b}; q^2)_inf / (q^{2n+den}; q^2)_inf^2`.
///
/// The quotients for consecutive `n` differ by four binomials, so they are
/// computed from the largest contributing `n` downwards.
fn defining_sum(
    order: usize,
    m: usize,
    base: usize,
    num_a: usize,
    num_b: usize,
    den: usize,
    numerator: Sign,
) -> Series {
    let mut total = Series::zero(order);
    let lead = |n: usize| m * (2 * n + base);
    if lead(0) > order {
        return total;
    }
    let top = (0..).take_while(|&n| lead(n) <= order).last().unwrap_or(0);

    let mut quotient = Series::one(order);
    mul_step2_inf(&mut quotient, 2 * top + num_a, numerator);
    mul_step2_inf(&mut quotient, 2 * top + num_b, numerator);
    div_step2_inf(&mut quotient, 2 * top + den);
    div_step2_inf(&mut quotient, 2 * top + den);

    let mut n = top;
    loop {
        total = total.add(&quotient.shift(lead(n)));
        if n == 0 {
            break;
        }
        n -= 1;
        quotient.mul_binomial(numerator, 2 * n + num_a);
        quotient.mul_binomial(numerator, 2 * n + num_b);
        quotient.div_binomial(Sign::Minus, 2 * n + den);
        quotient.div_binomial(Sign::Minus, 2 * n + den);
    }
    total
}

/// `sum_n q^{m(2n+1)} (q^{2n+2}, q^{2n+2k}; q^2)_inf / (q^{2n+1}; q^2)_inf^2`.
pub fn cprime_definitional(p: FamilyParams, order: usize) -> Series {
    defining_sum(order, p.mu(), 1, 2, 2 * p.ku(), 1, Sign::Minus)
}

/// `sum_n q^{m(2n+2)} (q^{2n+4}, q^{2n+2+2k}; q^2)_inf / (q^{2n+3}; q^2)_inf^2`.
pub fn dprime_definitional(p: FamilyParams, order: usize) -> Series {
    defining_sum(order, p.mu(), 2, 4, 2 + 2 * p.ku(), 3, Sign::Minus)
}

/// Total counts `|C(k,m,n)|` or `|D(k,m,n)|`: the defining sums with the
/// numerator arguments negated.
pub fn unsigned_series(kind: SeriesKind, p: FamilyParams, order: usize) -> Result<Series> {
    match kind {
        SeriesKind::CUnsigned => Ok(defining_sum(order, p.mu(), 1, 2, 2 * p.ku(), 1, Sign::Plus)),
        SeriesKind::DUnsigned => Ok(defining_sum(
            order,
            p.mu(),
            2,
            4,
            2 + 2 * p.ku(),
            3,
            Sign::Plus,
        )),
        signed => Err(Error::SignedKind(signed.name())),
    }
}

/// Any of the four generating functions by kind; signed kinds use the
/// defining sums.
pub fn family_series(kind: SeriesKind, p: FamilyParams, order: usize) -> Series {
    match kind {
        SeriesKind::CSigned => cprime_definitional(p, order),
        SeriesKind::DSigned => dprime_definitional(p, order),
        unsigned => unsigned_series(unsigned, p, order).expect("unsigned kind"),
    }
}

/// Transformed form of the C' series:
///
/// for `m >= k`: `q^m/(q;q^2)_{k-1} sum_n q^n (q^{2n+2};q^2)_{m-1} / (q^{2n+2k-1};q^2)_{m-k+1}`,
/// for `m < k`: `q^m/(q;q^2)_{k-1} sum_n q^n (q^{2n+2};q^2)_{m-1} (q^{2n+2m+1};q^2)_{k-m-1}`.
pub fn cprime_closed(p: FamilyParams, order: usize) -> Series {
    let (k, m) = (p.ku(), p.mu());
    if m > order {
        return Series::zero(order);
    }
    let inner_order = order - m;
    let mut sum = Series::zero(inner_order);
    for n in 0..=inner_order {
        let mut term = Series::monomial(n, inner_order);
        mul_step2(&mut term, 2 * n + 2, m - 1, Sign::Minus);
        if m >= k {
            div_step2(&mut term, 2 * n + 2 * k - 1, m - k + 1);
        } else {
            mul_step2(&mut term, 2 * n + 2 * m + 1, k - m - 1, Sign::Minus);
        }
        sum = sum.add(&term);
    }
    div_step2(&mut sum, 1, k - 1);
    // q^m times a series of order N - m is exact to order N
    let coeffs: Vec<_> = std::iter::repeat_n(num_bigint::BigInt::default(), m)
        .chain(sum.into_coeffs())
        .collect();
    Series::from_coeffs(coeffs).expect("non-empty")
}

/// `(q^2, q^{2k}; q^2)_inf / (q; q^2)_inf^2`, the correction term relating
/// the two families.
pub fn relation_product(k: u32, order: usize) -> Series {
    let mut s = Series::one(order);
    mul_step2_inf(&mut s, 2, Sign::Minus);
    mul_step2_inf(&mut s, 2 * k as usize, Sign::Minus);
    div_step2_inf(&mut s, 1);
    div_step2_inf(&mut s, 1);
    s
}

/// D' obtained from C' as `q^{-m} C' - (q^2, q^{2k}; q^2)_inf / (q; q^2)_inf^2`.
///
/// The division by `q^m` is an exact shift; a nonzero coefficient below
/// `q^m` in the C' series is reported as an error.
pub fn dprime_via_relation(p: FamilyParams, order: usize) -> Result<Series> {
    let c = cprime_closed(p, order + p.mu());
    let lowered = c.unshift(p.mu())?;
    Ok(lowered.sub(&relation_product(p.k, order)))
}

/// Indicator series of the triangular numbers `x(x+1)/2`.
pub fn triangular_indicator(order: usize) -> Series {
    let terms: Vec<(usize, i64)> = (0..)
        .map(|x: usize| x * (x + 1) / 2)
        .take_while(|&t| t <= order)
        .map(|t| (t, 1))
        .collect();
    Series::from_terms(&terms, order)
}

/// `(q^2; q^2)_inf / (q; q^2)_inf`, which equals the triangular indicator.
pub fn gauss_product(order: usize) -> Series {
    let mut s = Series::one(order);
    mul_step2_inf(&mut s, 2, Sign::Minus);
    div_step2_inf(&mut s, 1);
    s
}

/// Generating function of `t2(n)`, the number of ordered representations of
/// `n` as a sum of two triangular numbers, as the square of the Gauss product.
pub fn t2_series(order: usize) -> Series {
    let mut s = Series::one(order);
    mul_step2_inf(&mut s, 2, Sign::Minus);
    mul_step2_inf(&mut s, 2, Sign::Minus);
    div_step2_inf(&mut s, 1);
    div_step2_inf(&mut s, 1);
    s
}

/// A named, independently assembled simplification of a C' series.
#[derive(Clone, Debug)]
pub struct SpecialForm {
    pub name: &'static str,
    pub series: Series,
}

/// Hand-simplified forms known for `(k,m)` in `{(1,1), (2,1), (2,2), (3,1)}`.
/// Returns an empty list for other parameters.
pub fn special_forms(p: FamilyParams, order: usize) -> Vec<SpecialForm> {
    use crate::fps::geometric;
    let poly = |terms: &[(usize, i64)]| Series::from_terms(terms, order);
    match (p.k, p.m) {
        (1, 1) => {
            // sum_n q^{n+1} / (1 - q^{2n+1})
            let mut s = Series::zero(order);
            for n in 0..order {
                s = s.add(&geometric(2 * n + 1, order).shift(n + 1));
            }
            vec![SpecialForm {
                name: "sum q^(n+1)/(1-q^(2n+1))",
                series: s,
            }]
        }
        (2, 1) => {
            // q/(1-q)^2
            let s = geometric(1, order).mul(&geometric(1, order)).shift(1);
            vec![SpecialForm {
                name: "q/(1-q)^2",
                series: s,
            }]
        }
        (2, 2) => {
            let one_minus_q = geometric(1, order);
            let mut first = Series::zero(order);
            for n in 0..order {
                let num = poly(&[(n + 2, 1), (3 * n + 4, -1)]);
                first = first.add(&num.mul(&one_minus_q).mul(&geometric(2 * n + 3, order)));
            }
            let mut tail = Series::zero(order);
            for n in 0..order {
                tail = tail.add(&geometric(2 * n + 3, order).shift(3 * n + 4));
            }
            let second = one_minus_q.mul(&one_minus_q).shift(2).sub(&tail);
            vec![
                SpecialForm {
                    name: "sum q^(n+2)(1-q^(2n+2))/((1-q)(1-q^(2n+3)))",
                    series: first,
                },
                SpecialForm {
                    name: "q^2/(1-q)^2 - sum q^(3n+4)/(1-q^(2n+3))",
                    series: second,
                },
            ]
        }
        (3, 1) => {
            let denom = geometric(1, order).mul(&geometric(3, order));
            let mut first = Series::zero(order);
            for n in 0..order {
                let num = poly(&[(n + 1, 1), (3 * n + 4, -1)]);
                first = first.add(&num);
            }
            let first = first.mul(&denom);
            let second = poly(&[(1, 1), (2, 1), (3, 1), (4, -1)])
                .mul(&denom)
                .mul(&geometric(3, order));
            vec![
                SpecialForm {
                    name: "sum q^(n+1)(1-q^(2n+3))/((1-q)(1-q^3))",
                    series: first,
                },
                SpecialForm {
                    name: "q(1+q+q^2-q^3)/((1-q)(1-q^3)^2)",
                    series: second,
                },
            ]
        }
        _ => Vec::new(),
    }
}

/// Parameters with a hand-simplified form.
pub const SPECIAL_PARAMS: [(u32, u32); 4] = [(1, 1), (2, 1), (2, 2), (3, 1)];

/// `2phi1(a, b; c; base, z)` where every parameter is a plain power of `q`:
/// `sum_n (a, b; base)_n / (base, c; base)_n z^n`, truncated at `order`.
///
/// Parameters are exponents, so `a = q^a_exp`. The term ratio is applied
/// incrementally, which needs `c_exp >= 1` and `base_exp >= 1`; the sum is
/// cut once `n * z_exp` exceeds the order. Requires `z_exp >= 1`.
pub fn phi21_monomial(
    a_exp: usize,
    b_exp: usize,
    c_exp: usize,
    base_exp: usize,
    z_exp: usize,
    order: usize,
) -> Series {
    assert!(z_exp >= 1 && c_exp >= 1 && base_exp >= 1);
    let mut term = Series::one(order);
    let mut total = Series::zero(order);
    let mut n = 0;
    loop {
        total = total.add(&term);
        if (n + 1) * z_exp > order {
            break;
        }
        term.mul_binomial(Sign::Minus, a_exp + n * base_exp);
        term.mul_binomial(Sign::Minus, b_exp + n * base_exp);
        term.div_binomial(Sign::Minus, base_exp + n * base_exp);
        term.div_binomial(Sign::Minus, c_exp + n * base_exp);
        term = term.shift(z_exp);
        n += 1;
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainMismatch {
    /// Index of the first line of the disagreeing pair (0-based).
    pub line: usize,
    pub index: usize,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct HeineReport {
    pub params: FamilyParams,
    pub order: usize,
    pub lines: Vec<&'static str>,
    pub first_disagreement: Option<ChainMismatch>,
}

impl HeineReport {
    pub fn all_equal(&self) -> bool {
        self.first_disagreement.is_none()
    }
}

/// Evaluates each step of the transformation chain that turns the defining
/// C' sum into its closed form (Heine's first transformation specialised to
/// `a = b = q`, `c = q^{2k}`, `z = q^{2m}`, base `q^2`), each line computed
/// on its own, and reports the first adjacent pair that differs.
pub fn heine_chain_check(p: FamilyParams, order: usize) -> HeineReport {
    let lines = heine_lines(p, order);
    let names = lines.iter().map(|(n, _)| *n).collect();
    let mut first = None;
    for (i, pair) in lines.windows(2).enumerate() {
        if let Some(mm) = crate::first_mismatch(&pair[0].1, &pair[1].1) {
            first = Some(ChainMismatch {
                line: i,
                index: mm.index,
                left: mm.left,
                right: mm.right,
            });
            break;
        }
    }
    HeineReport {
        params: p,
        order,
        lines: names,
        first_disagreement: first,
    }
}

fn heine_lines(p: FamilyParams, order: usize) -> Vec<(&'static str, Series)> {
    let (k, m) = (p.ku(), p.mu());
    let mut out = Vec::with_capacity(7);

    out.push(("defining sum", cprime_definitional(p, order)));

    // q^m (q^2,q^{2k};q^2)_inf/(q;q^2)_inf^2 * sum_n q^{2mn} (q;q^2)_n^2/(q^2,q^{2k};q^2)_n
    let prefactor = relation_product(p.k, order).shift(m);
    let mut inner = Series::zero(order);
    for n in (0..).take_while(|n| 2 * m * n <= order) {
        let mut t = Series::monomial(2 * m * n, order);
        mul_step2(&mut t, 1, n, Sign::Minus);
        mul_step2(&mut t, 1, n, Sign::Minus);
        div_step2(&mut t, 2, n);
        div_step2(&mut t, 2 * k, n);
        inner = inner.add(&t);
    }
    out.push(("factored infinite products", prefactor.mul(&inner)));

    // the same sum as 2phi1(q, q; q^{2k}; q^2, q^{2m})
    let phi = phi21_monomial(1, 1, 2 * k, 2, 2 * m, order);
    out.push(("2phi1(q,q;q^2k;q^2,q^2m)", prefactor.mul(&phi)));

    // after the transformation:
    // (q, q^{2m+1}; q^2)_inf / (q^{2k}, q^{2m}; q^2)_inf * 2phi1(q^{2k-1}, q^{2m}; q^{2m+1}; q^2, q)
    let mut ratio = Series::one(order);
    mul_step2_inf(&mut ratio, 1, Sign::Minus);
    mul_step2_inf(&mut ratio, 2 * m + 1, Sign::Minus);
    div_step2_inf(&mut ratio, 2 * k);
    div_step2_inf(&mut ratio, 2 * m);
    let transformed_prefactor = prefactor.mul(&ratio);
    let phi_t = phi21_monomial(2 * k - 1, 2 * m, 2 * m + 1, 2, 1, order);
    out.push(("Heine transform", transformed_prefactor.mul(&phi_t)));

    // transformed 2phi1 written out term by term
    let mut explicit = Series::zero(order);
    for n in 0..=order {
        let mut t = Series::monomial(n, order);
        mul_step2(&mut t, 2 * k - 1, n, Sign::Minus);
        mul_step2(&mut t, 2 * m, n, Sign::Minus);
        div_step2(&mut t, 2, n);
        div_step2(&mut t, 2 * m + 1, n);
        explicit = explicit.add(&t);
    }
    out.push((
        "expanded transformed sum",
        transformed_prefactor.mul(&explicit),
    ));

    // q^m (q^{2k-1};q^2)_inf/(q;q^2)_inf * sum_n q^n (q^{2n+2},q^{2n+2m+1};q^2)_inf/(q^{2n+2k-1},q^{2n+2m};q^2)_inf
    let mut lead = Series::monomial(m, order);
    mul_step2_inf(&mut lead, 2 * k - 1, Sign::Minus);
    div_step2_inf(&mut lead, 1);
    let mut sum = Series::zero(order);
    for n in 0..=order {
        let mut t = Series::monomial(n, order);
        mul_step2_inf(&mut t, 2 * n + 2, Sign::Minus);
        mul_step2_inf(&mut t, 2 * n + 2 * m + 1, Sign::Minus);
        div_step2_inf(&mut t, 2 * n + 2 * k - 1);
        div_step2_inf(&mut t, 2 * n + 2 * m);
        sum = sum.add(&t);
    }
    out.push(("absorbed products", lead.mul(&sum)));

    out.push(("closed form", cprime_closed(p, order)));
    out
}
