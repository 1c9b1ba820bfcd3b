//! Eta-quotient expansion: products of factors `(q^a; q^a)_inf^e`.
//!
//! Every factor is expanded through Euler's pentagonal number theorem,
//!
//! ```text
//! (q^a;q^a)_inf = sum_k (-1)^k q^{a k(3k-1)/2},  k over all integers,
//! ```
//!
//! so a single factor is a sparse series with `O(sqrt(N/a))` terms. Positive
//! exponents multiply the sparse factor in; negative exponents divide by it,
//! which runs the `O(N sqrt(N/a))` linear recurrence in [`crate::series`].
//! This is what makes residue-ring coefficient tables reachable at orders in
//! the millions.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::series::{Ring, TruncatedSeries};

/// One factor `(q^step; q^step)_inf ^ exponent` of an eta quotient.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EtaFactor {
    pub step: u32,
    pub exponent: i32,
}

/// Errors from eta-quotient construction and parsing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EtaError {
    ZeroStep,
    ZeroExponent,
    Parse(String),
}

impl fmt::Display for EtaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EtaError::ZeroStep => write!(f, "eta factor step must be positive"),
            EtaError::ZeroExponent => write!(f, "eta factor exponent must be nonzero"),
            EtaError::Parse(s) => write!(f, "malformed eta-quotient text: {s}"),
        }
    }
}

impl core::error::Error for EtaError {}

/// A product of eta factors, kept in canonical form: factors sorted by step,
/// duplicate steps merged, zero exponents dropped. The empty product is the
/// constant series `1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EtaQuotientSpec {
    factors: Vec<EtaFactor>,
}

impl EtaQuotientSpec {
    pub fn new(factors: &[EtaFactor]) -> Result<Self, EtaError> {
        let mut merged: Vec<EtaFactor> = Vec::new();
        for &f in factors {
            if f.step == 0 {
                return Err(EtaError::ZeroStep);
            }
            if f.exponent == 0 {
                return Err(EtaError::ZeroExponent);
            }
            match merged.iter_mut().find(|g| g.step == f.step) {
                Some(g) => g.exponent += f.exponent,
                None => merged.push(f),
            }
        }
        merged.retain(|f| f.exponent != 0);
        merged.sort_by_key(|f| f.step);
        Ok(EtaQuotientSpec { factors: merged })
    }

    /// Generating spec of `ped`: `(q^4;q^4)_inf / (q;q)_inf`.
    pub fn ped() -> Self {
        Self::new(&[EtaFactor { step: 4, exponent: 1 }, EtaFactor { step: 1, exponent: -1 }])
            .unwrap()
    }

    /// Generating spec of `ped_{-2}`: `(q^4;q^4)_inf^2 / (q;q)_inf^2`.
    pub fn ped2() -> Self {
        Self::new(&[EtaFactor { step: 4, exponent: 2 }, EtaFactor { step: 1, exponent: -2 }])
            .unwrap()
    }

    pub fn factors(&self) -> &[EtaFactor] {
        &self.factors
    }

    /// Canonical text form, e.g. `eta(1)^-1*eta(4)^1`; the empty product is
    /// `1`. This string keys the coefficient cache header.
    pub fn canonical_text(&self) -> String {
        if self.factors.is_empty() {
            return String::from("1");
        }
        let mut out = String::new();
        for (i, f) in self.factors.iter().enumerate() {
            if i > 0 {
                out.push('*');
            }
            let _ = write!(out, "eta({})^{}", f.step, f.exponent);
        }
        out
    }

    /// Parse the canonical text form back into a spec.
    pub fn parse(text: &str) -> Result<Self, EtaError> {
        let text = text.trim();
        if text == "1" {
            return Self::new(&[]);
        }
        let mut factors = Vec::new();
        for part in text.split('*') {
            let body = part
                .strip_prefix("eta(")
                .ok_or_else(|| EtaError::Parse(String::from(part)))?;
            let (step_s, rest) =
                body.split_once(")^").ok_or_else(|| EtaError::Parse(String::from(part)))?;
            let step: u32 =
                step_s.parse().map_err(|_| EtaError::Parse(String::from(part)))?;
            let exponent: i32 =
                rest.parse().map_err(|_| EtaError::Parse(String::from(part)))?;
            factors.push(EtaFactor { step, exponent });
        }
        Self::new(&factors)
    }

    /// Expand the quotient to the given truncation order.
    ///
    /// Numerator factors are multiplied in first (sparse products), then each
    /// denominator factor is divided out via the pentagonal recurrence.
    pub fn expand(&self, order: usize, ring: Ring) -> TruncatedSeries {
        let mut acc = TruncatedSeries::one(ring, order);
        for f in &self.factors {
            if f.exponent > 0 {
                let base = pentagonal_series(f.step, order, ring);
                for _ in 0..f.exponent {
                    acc = acc.mul(&base).expect("same ring and order");
                }
            }
        }
        for f in &self.factors {
            if f.exponent < 0 {
                let base = pentagonal_series(f.step, order, ring);
                for _ in 0..(-f.exponent) {
                    acc = acc.divide(&base).expect("pentagonal series has unit constant");
                }
            }
        }
        acc
    }
}

/// Sparse support of `(q^step;q^step)_inf`: pairs `(a*g_k, (-1)^k)` with
/// `g_k` the generalized pentagonal numbers, including the constant `(0, 1)`.
pub(crate) fn pentagonal_terms(step: u32, order: usize) -> Vec<(usize, i64)> {
    let step = step as usize;
    let mut terms = Vec::new();
    terms.push((0usize, 1i64));
    let mut j = 1usize;
    loop {
        let g1 = step * (j * (3 * j - 1) / 2);
        if g1 > order {
            break;
        }
        let sign = if j % 2 == 1 { -1 } else { 1 };
        terms.push((g1, sign));
        let g2 = step * (j * (3 * j + 1) / 2);
        if g2 <= order {
            terms.push((g2, sign));
        }
        j += 1;
    }
    terms
}

fn pentagonal_series(step: u32, order: usize, ring: Ring) -> TruncatedSeries {
    TruncatedSeries::from_terms(ring, order, &pentagonal_terms(step, order))
}

/// Truncation of `(q^a;q^a)_inf ^ e` at the given order.
pub fn euler_product(step: u32, exponent: i32, order: usize, ring: Ring) -> Result<TruncatedSeries, EtaError> {
    let spec = EtaQuotientSpec::new(&[EtaFactor { step, exponent }])?;
    Ok(spec.expand(order, ring))
}

/// Coefficient table of `ped(n)` for `n <= order`.
pub fn ped_series(order: usize, ring: Ring) -> TruncatedSeries {
    EtaQuotientSpec::ped().expand(order, ring)
}

/// Coefficient table of `ped_{-2}(n)` for `n <= order`.
pub fn ped2_series(order: usize, ring: Ring) -> TruncatedSeries {
    EtaQuotientSpec::ped2().expand(order, ring)
}
