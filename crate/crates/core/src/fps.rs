//! Truncated formal power series in `q` with exact integer coefficients.
//!
//! A [`Series`] of order `N` stores the coefficients of `q^0..=q^N` and is
//! exact modulo `q^{N+1}`. Binary operations produce a result whose order is
//! the smaller of the two operand orders.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<BigInt>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, order)
    }

    /// `q^exp` truncated at `order`; zero when `exp > order`.
    pub fn monomial(exp: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = BigInt::one();
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(Series { coeffs })
    }

    /// Convenience constructor for small literal series. Panics on an empty slice.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        Series {
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    /// Builds the polynomial `sum c * q^e` from sparse terms, truncated at `order`.
    pub fn from_terms(terms: &[(usize, i64)], order: usize) -> Self {
        let mut s = Self::zero(order);
        for &(e, c) in terms {
            if e <= order {
                s.coeffs[e] += c;
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^i`, or `None` past the truncation order.
    pub fn coeff(&self, i: usize) -> Option<&BigInt> {
        self.coeffs.get(i)
    }

    /// Restricts to a lower order. Asking for a higher order than available is
    /// a logic error and panics, since the missing coefficients are unknown.
    pub fn truncate(&self, order: usize) -> Series {
        assert!(
            order <= self.order(),
            "cannot extend a series of order {} to {}",
            self.order(),
            order
        );
        Series {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        Series {
            coeffs: (0..=order)
                .map(|i| &self.coeffs[i] + &other.coeffs[i])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        Series {
            coeffs: (0..=order)
                .map(|i| &self.coeffs[i] - &other.coeffs[i])
                .collect(),
        }
    }

    pub fn neg(&self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Schoolbook Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let mut out = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }

    /// Multiplicative inverse modulo `q^{N+1}`; the constant term must be `±1`.
    pub fn invert(&self) -> Result<Series> {
        let c0 = &self.coeffs[0];
        if !(c0.is_one() || (-c0).is_one()) {
            return Err(Error::NonUnitConstant(c0.to_string()));
        }
        let negate = c0.is_negative();
        let order = self.order();
        let mut out: Vec<BigInt> = Vec::with_capacity(order + 1);
        out.push(c0.clone());
        for n in 1..=order {
            let mut acc = BigInt::zero();
            for i in 1..=n {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    acc += a * &out[n - i];
                }
            }
            // b_n = -c0^{-1} * acc and c0^{-1} = c0
            out.push(if negate { acc } else { -acc });
        }
        Ok(Series { coeffs: out })
    }

    /// Multiplies by `q^a`; the top `a` coefficients leave the window.
    pub fn shift(&self, a: usize) -> Series {
        let order = self.order();
        let mut out = vec![BigInt::zero(); order + 1];
        if a <= order {
            out[a..].clone_from_slice(&self.coeffs[..=order - a]);
        }
        Series { coeffs: out }
    }

    /// Exact division by `q^a`. The result has order `N - a` and the lowest
    /// `a` coefficients must all vanish.
    pub fn unshift(&self, a: usize) -> Result<Series> {
        if let Some((index, value)) = self
            .coeffs
            .iter()
            .take(a)
            .enumerate()
            .find(|(_, c)| !c.is_zero())
        {
            return Err(Error::NonzeroLowWindow {
                shift: a,
                index,
                value: value.to_string(),
            });
        }
        if a > self.order() {
            return Err(Error::OutOfRange(format!(
                "shift {a} exceeds order {}",
                self.order()
            )));
        }
        Ok(Series {
            coeffs: self.coeffs[a..].to_vec(),
        })
    }

    /// In place multiplication by `(1 + sign * q^exp)`.
    pub fn mul_binomial(&mut self, sign: Sign, exp: usize) {
        let order = self.order();
        if exp == 0 {
            match sign {
                Sign::Plus => self.coeffs.iter_mut().for_each(|c| *c *= 2),
                Sign::Minus => self.coeffs.iter_mut().for_each(|c| c.set_zero()),
            }
            return;
        }
        if exp > order {
            return;
        }
        for i in (exp..=order).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            let src = &lo[i - exp];
            if src.is_zero() {
                continue;
            }
            match sign {
                Sign::Plus => hi[0] += src,
                Sign::Minus => hi[0] -= src,
            }
        }
    }

    /// In place exact division by `(1 + sign * q^exp)` with `exp >= 1`.
    pub fn div_binomial(&mut self, sign: Sign, exp: usize) {
        assert!(exp >= 1, "division by a binomial with zero exponent");
        let order = self.order();
        for i in exp..=order {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            let src = &lo[i - exp];
            if src.is_zero() {
                continue;
            }
            match sign {
                Sign::Plus => hi[0] -= src,
                Sign::Minus => hi[0] += src,
            }
        }
    }

    pub fn pow(&self, n: u32) -> Series {
        let mut acc = Series::one(self.order());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Indices of the strictly negative coefficients, ascending.
    pub fn negative_indices(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_negative())
            .map(|(i, _)| i)
            .collect()
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "; O(q^{})]", self.order() + 1)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{mag}*q^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Series> for &Series {
            type Output = Series;
            fn $method(self, rhs: &Series) -> Series {
                Series::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series::neg(self)
    }
}

/// Sign of the Pochhammer argument `±q^s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// The sign appearing inside the factor `(1 - a q^j)`.
    fn factor_sign(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PochCount {
    Finite(u64),
    Infinite,
}

/// `(±q^start; q^step)_count`, i.e. the product of `(1 ∓ q^{start + step*j})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PochSpec {
    pub sign: Sign,
    pub start: u64,
    pub step: u64,
    pub count: PochCount,
}

impl PochSpec {
    pub fn finite(start: u64, step: u64, count: u64) -> Self {
        PochSpec {
            sign: Sign::Plus,
            start,
            step,
            count: PochCount::Finite(count),
        }
    }

    pub fn infinite(start: u64, step: u64) -> Self {
        PochSpec {
            sign: Sign::Plus,
            start,
            step,
            count: PochCount::Infinite,
        }
    }

    /// Same product with argument `-q^start`.
    pub fn negated(self) -> Self {
        PochSpec {
            sign: match self.sign {
                Sign::Plus => Sign::Minus,
                Sign::Minus => Sign::Plus,
            },
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.step == 0 {
            return Err(Error::InvalidPoch("step must be at least 1"));
        }
        if self.count == PochCount::Infinite && self.start == 0 {
            return Err(Error::InvalidPoch(
                "infinite product must start at exponent >= 1",
            ));
        }
        Ok(())
    }

    /// Exponents of the factors that are not `1` modulo `q^{order+1}`.
    /// A zero exponent is always kept since `(1 ∓ 1)` is never the identity.
    pub fn exponents(&self, order: usize) -> impl Iterator<Item = u64> + '_ {
        let limit = match self.count {
            PochCount::Finite(n) => n,
            PochCount::Infinite => u64::MAX,
        };
        let start = self.start;
        let step = self.step;
        (0..limit)
            .map(move |j| start + step * j)
            .take_while(move |&e| e <= order as u64)
    }

    /// Divides `target` in place by this product. Every factor must have a
    /// positive exponent.
    pub fn divide_into(&self, target: &mut Series) -> Result<()> {
        self.validate()?;
        if self.start == 0 && self.count != PochCount::Finite(0) {
            return Err(Error::InvalidPoch(
                "cannot divide by a factor with exponent 0",
            ));
        }
        let order = target.order();
        let sign = self.sign.factor_sign();
        for e in self.exponents(order) {
            target.div_binomial(sign, e as usize);
        }
        Ok(())
    }

    pub fn multiply_into(&self, target: &mut Series) -> Result<()> {
        self.validate()?;
        let order = target.order();
        let sign = self.sign.factor_sign();
        for e in self.exponents(order) {
            target.mul_binomial(sign, e as usize);
        }
        Ok(())
    }
}

/// Expands a q-Pochhammer product modulo `q^{order+1}`.
pub fn poch(spec: PochSpec, order: usize) -> Result<Series> {
    let mut s = Series::one(order);
    spec.multiply_into(&mut s)?;
    Ok(s)
}

/// `1/(1 - q^d)`: ones at every multiple of `d`.
pub fn geometric(d: usize, order: usize) -> Series {
    assert!(d >= 1, "geometric series needs d >= 1");
    let mut s = Series::zero(order);
    for i in (0..=order).step_by(d) {
        s.coeffs[i] = BigInt::one();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(c: &[i64]) -> Series {
        Series::from_i64s(c)
    }

    #[test]
    fn add_examples() {
        assert_eq!(s(&[1, 1]).add(&s(&[1, -1])), s(&[2, 0]));
        let a = s(&[3, -4, 5, 6]);
        assert_eq!(a.add(&Series::zero(3)), a);
        assert_eq!(&s(&[1, 0, -1, 0]) + &s(&[0, 0, 1, 0]), Series::one(3));
        assert_eq!(s(&[1, 2, 3]).add(&s(&[1])).order(), 0);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&s(&[1, 1, 0, 0]) * &s(&[1, -1, 0, 0]), s(&[1, 0, -1, 0]));
        assert_eq!(
            s(&[1, -1, 0, 0, 0]).mul(&s(&[1, 0, -1, 0, 0])),
            s(&[1, -1, -1, 1, 0])
        );
        let a = s(&[7, 0, -2, 9]);
        assert_eq!(a.mul(&Series::one(3)), a);
    }

    #[test]
    fn mul_does_not_overflow() {
        let big = Series::from_coeffs(vec![BigInt::from(u64::MAX); 4]).unwrap();
        let sq = big.mul(&big);
        let expect = BigInt::from(u64::MAX) * BigInt::from(u64::MAX) * 4;
        assert_eq!(sq.coeff(3), Some(&expect));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(s(&[1, -1, 0, 0, 0]).invert().unwrap(), s(&[1; 5]));
        assert_eq!(s(&[1, 1, 0, 0, 0]).invert().unwrap(), s(&[1, -1, 1, -1, 1]));
        let a = poch(PochSpec::finite(1, 2, 3), 20).unwrap();
        assert_eq!(a.mul(&a.invert().unwrap()), Series::one(20));
        let neg = s(&[-1, 2, 0, 3]);
        assert_eq!(neg.mul(&neg.invert().unwrap()), Series::one(3));
    }

    #[test]
    fn invert_rejects_non_unit() {
        assert!(matches!(
            s(&[2, 1]).invert(),
            Err(Error::NonUnitConstant(_))
        ));
        assert!(s(&[0, 1]).invert().is_err());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(Series::one(5).shift(3), Series::monomial(3, 5));
        let a = s(&[1, 2, 3, 4]);
        assert_eq!(a.shift(0), a);
        assert_eq!(a.shift(2), s(&[0, 0, 1, 2]));
        assert_eq!(a.shift(9), Series::zero(3));
    }

    #[test]
    fn unshift_checks_low_window() {
        let a = s(&[0, 0, 5, 6]);
        assert_eq!(a.unshift(2).unwrap(), s(&[5, 6]));
        assert!(matches!(
            s(&[0, 1, 2]).unshift(2),
            Err(Error::NonzeroLowWindow { index: 1, .. })
        ));
    }

    #[test]
    fn poch_examples() {
        assert_eq!(
            poch(PochSpec::finite(1, 1, 2), 5).unwrap(),
            s(&[1, -1, -1, 1, 0, 0])
        );
        // (q;q^2)_inf at order 5 is (1-q)(1-q^3)(1-q^5) truncated
        let by_hand = s(&[1, -1, 0, 0, 0, 0])
            .mul(&s(&[1, 0, 0, -1, 0, 0]))
            .mul(&s(&[1, 0, 0, 0, 0, -1]));
        let inf = poch(PochSpec::infinite(1, 2), 5).unwrap();
        assert_eq!(inf, by_hand);
        assert_eq!(inf, s(&[1, -1, 0, -1, 1, -1]));
        assert_eq!(poch(PochSpec::finite(3, 2, 0), 7).unwrap(), Series::one(7));
    }

    #[test]
    fn poch_rejects_bad_specs() {
        assert!(poch(PochSpec::infinite(0, 1), 5).is_err());
        assert!(poch(PochSpec::infinite(0, 1).negated(), 5).is_err());
        assert!(poch(PochSpec::finite(1, 0, 3), 5).is_err());
        // (1;q)_2 is legitimately zero
        assert!(poch(PochSpec::finite(0, 1, 2), 5).unwrap().is_zero());
    }

    #[test]
    fn divide_into_undoes_poch() {
        let spec = PochSpec::infinite(1, 2);
        let mut p = poch(spec, 30).unwrap();
        spec.divide_into(&mut p).unwrap();
        assert_eq!(p, Series::one(30));
        let mut one = Series::one(5);
        assert!(PochSpec::finite(0, 1, 2).divide_into(&mut one).is_err());
    }

    #[test]
    fn negated_poch_is_plus_product() {
        // (-q;q)_2 = (1+q)(1+q^2)
        assert_eq!(
            poch(PochSpec::finite(1, 1, 2).negated(), 4).unwrap(),
            s(&[1, 1, 1, 1, 0])
        );
    }

    #[test]
    fn geometric_examples() {
        assert_eq!(geometric(1, 4), s(&[1; 5]));
        let g = geometric(3, 10);
        assert_eq!(g.coeff(6), Some(&BigInt::one()));
        assert_eq!(g.coeff(7), Some(&BigInt::zero()));
        for d in 1..6 {
            let t = geometric(d, 10).mul(&Series::from_terms(&[(0, 1), (d, -1)], 10));
            assert_eq!(t, Series::one(10));
        }
    }

    #[test]
    fn binomial_division_inverts_multiplication() {
        let mut a = s(&[3, 1, 4, 1, 5, 9, 2, 6]);
        let orig = a.clone();
        a.mul_binomial(Sign::Minus, 3);
        a.div_binomial(Sign::Minus, 3);
        assert_eq!(a, orig);
        a.mul_binomial(Sign::Plus, 2);
        a.div_binomial(Sign::Plus, 2);
        assert_eq!(a, orig);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(s(&[1, -1, 0, 2]).to_string(), "1 - q + 2*q^3 + O(q^4)");
        assert_eq!(Series::zero(1).to_string(), "0 + O(q^2)");
    }

    fn series_strategy(max_order: usize) -> impl Strategy<Value = Series> {
        prop::collection::vec(-50i64..50, 1..=max_order + 1).prop_map(|v| Series::from_i64s(&v))
    }

    fn unit_series(max_order: usize) -> impl Strategy<Value = Series> {
        (
            prop::bool::ANY,
            prop::collection::vec(-20i64..20, 0..=max_order),
        )
            .prop_map(|(neg, mut v)| {
                v.insert(0, if neg { -1 } else { 1 });
                Series::from_i64s(&v)
            })
    }

    proptest! {
        #[test]
        fn truncation_commutes_with_ops(a in series_strategy(30), b in series_strategy(30), cut in 0usize..30) {
            let order = a.order().min(b.order());
            let cut = cut.min(order);
            let (ta, tb) = (a.truncate(cut), b.truncate(cut));
            prop_assert_eq!(a.mul(&b).truncate(cut), ta.mul(&tb));
            prop_assert_eq!(a.add(&b).truncate(cut), ta.add(&tb));
            prop_assert_eq!(a.sub(&b).truncate(cut), ta.sub(&tb));
        }

        #[test]
        fn invert_round_trip(a in unit_series(40)) {
            let inv = a.invert().unwrap();
            prop_assert_eq!(a.mul(&inv), Series::one(a.order()));
            prop_assert_eq!(a.invert().unwrap().truncate(a.order() / 2), a.truncate(a.order() / 2).invert().unwrap());
        }

        #[test]
        fn poch_splits(start in 0u64..6, step in 1u64..4, n in 0u64..6, m in 0u64..6, neg in prop::bool::ANY) {
            let order = 40;
            let whole = PochSpec { sign: if neg { Sign::Minus } else { Sign::Plus }, ..PochSpec::finite(start, step, n + m) };
            let head = PochSpec { count: PochCount::Finite(m), ..whole };
            let tail = PochSpec { start: start + m * step, count: PochCount::Finite(n), ..whole };
            prop_assert_eq!(
                poch(whole, order).unwrap(),
                poch(head, order).unwrap().mul(&poch(tail, order).unwrap())
            );
        }

        #[test]
        fn infinite_poch_is_stable(start in 1u64..8, step in 1u64..4, order in 0usize..60) {
            let spec = PochSpec::infinite(start, step);
            prop_assert_eq!(
                poch(spec, 2 * order).unwrap().truncate(order),
                poch(spec, order).unwrap()
            );
            // (a;q)_inf = (a;q)_n (aq^n;q)_inf
            let n = 3;
            let head = poch(PochSpec::finite(start, step, n), order).unwrap();
            let tail = poch(PochSpec::infinite(start + n * step, step), order).unwrap();
            prop_assert_eq!(head.mul(&tail), poch(spec, order).unwrap());
        }

        #[test]
        fn shift_moves_coefficients(a in series_strategy(30), shift in 0usize..35) {
            let b = a.shift(shift);
            for n in shift..=a.order() {
                prop_assert_eq!(b.coeff(n), a.coeff(n - shift));
            }
        }
    }
}
