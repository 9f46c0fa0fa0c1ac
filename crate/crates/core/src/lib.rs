//! Exact q-series toolkit for signed two-color partition generating functions.
//!
//! - [`fps`]: truncated power series over big integers and q-Pochhammer products
//! - [`generating`]: the C' and D' families, their transformed forms and `t2`
//! - [`oracle`]: brute-force enumeration of the underlying partitions
//! - [`positivity`]: negative-coefficient scans and coefficient-level lemma checks

pub mod error;
pub mod fps;
pub mod generating;
pub mod oracle;
pub mod positivity;

pub use error::{Error, Result};
pub use fps::{geometric, poch, PochCount, PochSpec, Series, Sign};
pub use generating::{Family, FamilyParams, SeriesKind};
pub use positivity::{Classification, ScanReport};

use serde::Serialize;

/// First coefficient where two series differ, with both values in decimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub index: usize,
    pub left: String,
    pub right: String,
}

/// Compares two series up to the smaller of their orders.
pub fn first_mismatch(a: &Series, b: &Series) -> Option<Mismatch> {
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .position(|(x, y)| x != y)
        .map(|index| Mismatch {
            index,
            left: a.coeffs()[index].to_string(),
            right: b.coeffs()[index].to_string(),
        })
}
