//! Brute-force enumeration of the two-color partition classes behind the
//! C' and D' series.
//!
//! Membership rules follow the generating functions. For the C class with
//! odd smallest part `s`: at least `m` blue copies of `s`, any odd parts
//! `>= s` in either color (green copies of `s` included), distinct blue even
//! parts `>= s + 2k - 1` and distinct green even parts `> s`. For the D class
//! with even smallest part `s`: exactly `m` copies of `s`, all blue, odd parts
//! `> s` in either color, distinct blue even parts `>= s + 2k` and distinct
//! green even parts `> s`.
//!
//! Enumeration is plain exhaustion over part multiplicities, so it scales
//! badly; targets up to about 60 are practical.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::generating::{family_series, Family, FamilyParams, SeriesKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Color {
    Blue,
    Green,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Part {
    pub value: u32,
    pub color: Color,
    pub multiplicity: u32,
}

/// Canonical order: larger values first, blue before green at equal value.
fn canonical(a: &Part, b: &Part) -> Ordering {
    b.value.cmp(&a.value).then(a.color.cmp(&b.color))
}

/// A two-color partition stored as distinct `(value, color)` pairs with
/// positive multiplicities in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwoColorPartition {
    parts: Vec<Part>,
}

impl TwoColorPartition {
    /// Merges repeated `(value, color)` entries and drops zero multiplicities.
    pub fn new(parts: impl IntoIterator<Item = Part>) -> Self {
        let mut merged: Vec<Part> = Vec::new();
        let mut all: Vec<Part> = parts.into_iter().filter(|p| p.multiplicity > 0).collect();
        all.sort_by(canonical);
        for p in all {
            match merged.last_mut() {
                Some(last) if last.value == p.value && last.color == p.color => {
                    last.multiplicity += p.multiplicity
                }
                _ => merged.push(p),
            }
        }
        TwoColorPartition { parts: merged }
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn total(&self) -> u64 {
        self.parts
            .iter()
            .map(|p| p.value as u64 * p.multiplicity as u64)
            .sum()
    }

    pub fn smallest(&self) -> Option<u32> {
        self.parts.last().map(|p| p.value)
    }

    pub fn multiplicity(&self, value: u32, color: Color) -> u32 {
        self.parts
            .iter()
            .find(|p| p.value == value && p.color == color)
            .map_or(0, |p| p.multiplicity)
    }

    /// Number of even parts counted with multiplicity.
    pub fn even_parts(&self) -> u32 {
        self.even_parts_above(0)
    }

    pub fn even_parts_above(&self, floor: u32) -> u32 {
        self.parts
            .iter()
            .filter(|p| p.value % 2 == 0 && p.value > floor)
            .map(|p| p.multiplicity)
            .sum()
    }
}

impl fmt::Display for TwoColorPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for p in &self.parts {
            let c = match p.color {
                Color::Blue => 'b',
                Color::Green => 'g',
            };
            for _ in 0..p.multiplicity {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "{}{}", p.value, c)?;
            }
        }
        write!(f, "}}")
    }
}

/// Numbers of members whose parity statistic is even and odd.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WeightedCounts {
    pub even_weight: u64,
    pub odd_weight: u64,
}

impl WeightedCounts {
    pub fn difference(&self) -> i64 {
        self.even_weight as i64 - self.odd_weight as i64
    }

    pub fn total(&self) -> u64 {
        self.even_weight + self.odd_weight
    }
}

/// A part type available to the enumerator: `limit` of `None` is unbounded.
#[derive(Clone, Copy)]
struct Slot {
    value: u32,
    color: Color,
    limit: Option<u32>,
}

/// Slots for a fixed smallest part, listed in canonical order.
fn slots(family: Family, p: FamilyParams, s: u32, n: u32) -> Vec<Slot> {
    let (blue_even_floor, odd_floor, green_even_floor) = match family {
        Family::C => (s + 2 * p.k - 1, s, s + 1),
        Family::D => (s + 2 * p.k, s + 1, s + 2),
    };
    let mut out = Vec::new();
    for v in (1..=n).rev() {
        let odd = v % 2 == 1;
        if odd && v >= odd_floor {
            out.push(Slot {
                value: v,
                color: Color::Blue,
                limit: None,
            });
            out.push(Slot {
                value: v,
                color: Color::Green,
                limit: None,
            });
            continue;
        }
        if !odd {
            if v >= blue_even_floor {
                out.push(Slot {
                    value: v,
                    color: Color::Blue,
                    limit: Some(1),
                });
            }
            if v >= green_even_floor {
                out.push(Slot {
                    value: v,
                    color: Color::Green,
                    limit: Some(1),
                });
            }
        }
    }
    out
}

fn walk(slots: &[Slot], remaining: u32, chosen: &mut Vec<Part>, visit: &mut dyn FnMut(&[Part])) {
    if remaining == 0 {
        visit(chosen);
        return;
    }
    let Some((slot, rest)) = slots.split_first() else {
        return;
    };
    let most = remaining / slot.value;
    let most = slot.limit.map_or(most, |l| l.min(most));
    for mult in (1..=most).rev() {
        chosen.push(Part {
            value: slot.value,
            color: slot.color,
            multiplicity: mult,
        });
        walk(rest, remaining - mult * slot.value, chosen, visit);
        chosen.pop();
    }
    walk(rest, remaining, chosen, visit);
}

/// Visits every member of the class for `n`, passing the partition parts and
/// the smallest part.
fn for_each_member(family: Family, p: FamilyParams, n: u32, mut visit: impl FnMut(&[Part], u32)) {
    let first = match family {
        Family::C => 1,
        Family::D => 2,
    };
    for s in (first..=n).step_by(2) {
        let forced = p.m * s;
        if forced > n {
            break;
        }
        let slots = slots(family, p, s, n);
        let mut chosen = Vec::new();
        walk(&slots, n - forced, &mut chosen, &mut |parts| {
            let mut all = parts.to_vec();
            all.push(Part {
                value: s,
                color: Color::Blue,
                multiplicity: p.m,
            });
            visit(&all, s);
        });
    }
}

pub fn enumerate_c(p: FamilyParams, n: u32) -> Vec<TwoColorPartition> {
    let mut out = Vec::new();
    for_each_member(Family::C, p, n, |parts, _| {
        out.push(TwoColorPartition::new(parts.iter().copied()))
    });
    out
}

pub fn enumerate_d(p: FamilyParams, n: u32) -> Vec<TwoColorPartition> {
    let mut out = Vec::new();
    for_each_member(Family::D, p, n, |parts, _| {
        out.push(TwoColorPartition::new(parts.iter().copied()))
    });
    out
}

fn weighted(family: Family, p: FamilyParams, n: u32) -> WeightedCounts {
    let mut counts = WeightedCounts::default();
    for_each_member(family, p, n, |parts, s| {
        let floor = match family {
            Family::C => 0,
            Family::D => s,
        };
        let evens: u32 = parts
            .iter()
            .filter(|q| q.value % 2 == 0 && q.value > floor)
            .map(|q| q.multiplicity)
            .sum();
        if evens.is_multiple_of(2) {
            counts.even_weight += 1;
        } else {
            counts.odd_weight += 1;
        }
    });
    counts
}

/// Splits the C class by the parity of the number of even parts.
pub fn weighted_counts_c(p: FamilyParams, n: u32) -> WeightedCounts {
    weighted(Family::C, p, n)
}

/// Splits the D class by the parity of the number of even parts strictly
/// larger than the smallest part.
pub fn weighted_counts_d(p: FamilyParams, n: u32) -> WeightedCounts {
    weighted(Family::D, p, n)
}

pub fn weighted_counts(family: Family, p: FamilyParams, n: u32) -> WeightedCounts {
    weighted(family, p, n)
}

/// Checks the C membership rules directly on a partition of `n`.
pub fn is_member_c(p: FamilyParams, pi: &TwoColorPartition) -> bool {
    let Some(s) = pi.smallest() else {
        return false;
    };
    if s % 2 == 0 || pi.multiplicity(s, Color::Blue) < p.m {
        return false;
    }
    pi.parts().iter().all(|q| {
        if q.value % 2 == 1 {
            return true;
        }
        let floor = match q.color {
            Color::Blue => s + 2 * p.k - 1,
            Color::Green => s + 1,
        };
        q.multiplicity == 1 && q.value >= floor
    })
}

/// Checks the D membership rules directly on a partition of `n`.
pub fn is_member_d(p: FamilyParams, pi: &TwoColorPartition) -> bool {
    let Some(s) = pi.smallest() else {
        return false;
    };
    if s % 2 == 1 || pi.multiplicity(s, Color::Blue) != p.m || pi.multiplicity(s, Color::Green) != 0
    {
        return false;
    }
    pi.parts().iter().all(|q| {
        if q.value == s || q.value % 2 == 1 {
            return true;
        }
        let floor = match q.color {
            Color::Blue => s + 2 * p.k,
            Color::Green => s + 2,
        };
        q.multiplicity == 1 && q.value >= floor
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleMismatch {
    pub n: u32,
    pub enumerated: i64,
    pub series: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub kind: SeriesKind,
    pub params: FamilyParams,
    pub nmax: u32,
    /// Per-target counts from enumeration, index = n.
    pub counts: Vec<WeightedCounts>,
    pub first_mismatch: Option<OracleMismatch>,
}

impl OracleReport {
    pub fn matches(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Enumerates every target `0..=nmax` and compares against the series of the
/// given kind: weighted differences for signed kinds, totals for unsigned.
pub fn oracle_vs_series(kind: SeriesKind, p: FamilyParams, nmax: u32) -> OracleReport {
    let series = family_series(kind, p, nmax as usize);
    let counts: Vec<WeightedCounts> = (0..=nmax)
        .into_par_iter()
        .map(|n| weighted(kind.family(), p, n))
        .collect();
    let first_mismatch = counts.iter().enumerate().find_map(|(n, c)| {
        let value = if kind.is_signed() {
            c.difference()
        } else {
            c.total() as i64
        };
        let expected = &series.coeffs()[n];
        (BigInt::from(value) != *expected).then(|| OracleMismatch {
            n: n as u32,
            enumerated: value,
            series: expected.to_string(),
        })
    });
    OracleReport {
        kind,
        params: p,
        nmax,
        counts,
        first_mismatch,
    }
}
