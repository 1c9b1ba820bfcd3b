//! Theta series over square-exponent supports, the two product identities
//! relating them to eta quotients, and the mod-8 reduction chains that
//! reproduce `ped` and `ped_{-2}` from them.
//!
//! Two identities anchor everything here (both machine-checkable to any
//! truncation order):
//!
//! ```text
//! (q;q)_inf^2 / (q^2;q^2)_inf         = sum_{n in Z} (-1)^n q^{n^2}
//! q (q^16;q^16)_inf^2 / (q^8;q^8)_inf = sum_{n>=0} q^{(2n+1)^2}
//! ```
//!
//! The one-sided odd-square sum (weight 1 per odd square) and the two-sided
//! sum (weight 2) are deliberately distinct [`ThetaKind`] variants: the
//! reduction chains need the one-sided form while the convolution counts
//! `a(n), b(n), c(n)` need the two-sided form, and conflating them is a
//! silent factor-of-two bug.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::eta::euler_product;
use crate::series::{Ring, SeriesError, TruncatedSeries};

/// The theta series used by the reduction chains.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ThetaKind {
    /// `sum_{n in Z} (-1)^n q^{n^2} = 1 - 2q + 2q^4 - 2q^9 + ...`
    SignedSquares,
    /// `sum_{n >= 0} q^{(2n+1)^2}`: each odd square with weight 1.
    OddSquaresOneSided,
    /// `sum_{n in Z} q^{(2n+1)^2}`: each odd square with weight 2.
    OddSquaresTwoSided,
    /// `sum_{n in Z} q^{a n^2}` for `a` in {4, 8, 16}.
    EvenLattice(u32),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ThetaError {
    /// `EvenLattice` step outside {4, 8, 16}.
    UnsupportedLattice(u32),
}

impl fmt::Display for ThetaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaError::UnsupportedLattice(a) => {
                write!(f, "even lattice step {a} not in {{4, 8, 16}}")
            }
        }
    }
}

impl core::error::Error for ThetaError {}

/// Sparse truncation of the requested theta series.
pub fn theta_series(
    kind: ThetaKind,
    order: usize,
    ring: Ring,
) -> Result<TruncatedSeries, ThetaError> {
    let mut terms: Vec<(usize, i64)> = Vec::new();
    match kind {
        ThetaKind::SignedSquares => {
            terms.push((0, 1));
            let mut n = 1usize;
            while n * n <= order {
                terms.push((n * n, if n % 2 == 1 { -2 } else { 2 }));
                n += 1;
            }
        }
        ThetaKind::OddSquaresOneSided | ThetaKind::OddSquaresTwoSided => {
            let w = if kind == ThetaKind::OddSquaresOneSided { 1 } else { 2 };
            let mut x = 1usize;
            while x * x <= order {
                terms.push((x * x, w));
                x += 2;
            }
        }
        ThetaKind::EvenLattice(a) => {
            if !matches!(a, 4 | 8 | 16) {
                return Err(ThetaError::UnsupportedLattice(a));
            }
            let a = a as usize;
            terms.push((0, 1));
            let mut n = 1usize;
            while a * n * n <= order {
                terms.push((a * n * n, 2));
                n += 1;
            }
        }
    }
    Ok(TruncatedSeries::from_terms(ring, order, &terms))
}

/// Which product identity a report refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IdentityId {
    /// `(q;q)^2/(q^2;q^2) == SignedSquares`
    SignedSquares,
    /// `q (q^16;q^16)^2/(q^8;q^8) == OddSquaresOneSided`
    OddSquares,
}

impl IdentityId {
    pub fn name(self) -> &'static str {
        match self {
            IdentityId::SignedSquares => "signed-squares",
            IdentityId::OddSquares => "odd-squares",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IdentityStatus {
    Match,
    Mismatch { first_index: usize },
}

/// Outcome of checking one identity to a given order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub order: usize,
    pub status: IdentityStatus,
}

fn first_mismatch(a: &TruncatedSeries, b: &TruncatedSeries) -> IdentityStatus {
    let (ca, cb) = (a.exact_coeffs().unwrap(), b.exact_coeffs().unwrap());
    match ca.iter().zip(cb).position(|(x, y)| x != y) {
        None => IdentityStatus::Match,
        Some(i) => IdentityStatus::Mismatch { first_index: i },
    }
}

/// Check `(q;q)_inf^2 / (q^2;q^2)_inf == SignedSquares` coefficient-exactly
/// to the given order.
///
/// Evaluated as the unit-multiple form `(q;q)^2 == SignedSquares * (q^2;q^2)`,
/// equivalent in the truncated ring since `(q^2;q^2)` has unit constant
/// term; this keeps both sides sparse products at any order.
pub fn verify_signed_squares_identity(order: usize) -> IdentityReport {
    let e1 = euler_product(1, 1, order, Ring::Exact).unwrap();
    let lhs = e1.mul(&e1).unwrap();
    let theta = theta_series(ThetaKind::SignedSquares, order, Ring::Exact).unwrap();
    let e2 = euler_product(2, 1, order, Ring::Exact).unwrap();
    let rhs = theta.mul(&e2).unwrap();
    IdentityReport { id: IdentityId::SignedSquares, order, status: first_mismatch(&lhs, &rhs) }
}

/// Check `q (q^16;q^16)_inf^2 / (q^8;q^8)_inf == OddSquaresOneSided`
/// coefficient-exactly to the given order, in the same unit-multiple form.
pub fn verify_odd_squares_identity(order: usize) -> IdentityReport {
    let e16 = euler_product(16, 1, order, Ring::Exact).unwrap();
    let lhs = e16.mul(&e16).unwrap().shift_up(1);
    let theta = theta_series(ThetaKind::OddSquaresOneSided, order, Ring::Exact).unwrap();
    let e8 = euler_product(8, 1, order, Ring::Exact).unwrap();
    let rhs = theta.mul(&e8).unwrap();
    IdentityReport { id: IdentityId::OddSquares, order, status: first_mismatch(&lhs, &rhs) }
}

/// Mod-8 reduction chain for `ped`, literal route.
///
/// Computes `OddSquaresOneSided * (1 + 2 sum_{n>=1} (-1)^n q^{16 n^2})^{-1}`
/// mod 8 at series order `8*count + 1`, demands the result be supported on
/// exponents `8n+1` only, and returns the re-indexed series whose coefficient
/// `n` is `ped(n) mod 8`.
pub fn ped_mod8_theta_chain(count: usize) -> Result<TruncatedSeries, SeriesError> {
    let order = 8 * count + 1;
    let odd = theta_series(ThetaKind::OddSquaresOneSided, order, Ring::Mod8).unwrap();
    let mut inner: Vec<(usize, i64)> = vec![(0, 1)];
    let mut n = 1usize;
    while 16 * n * n <= order {
        inner.push((16 * n * n, if n % 2 == 1 { -2 } else { 2 }));
        n += 1;
    }
    let inner = TruncatedSeries::from_terms(Ring::Mod8, order, &inner);
    let chain = odd.mul(&inner.inverse()?)?;
    chain.extract_progression(8, 1)
}

/// Mod-8 reduction chain for `ped_{-2}`.
///
/// Computes `(L4 + 2 L8 - 2 L16) * OddSquaresOneSided` mod 8 (the integral
/// rearrangement of the half-weight lattice combination against the
/// two-sided odd-square sum), demands support on `4n+1`, and returns the
/// series whose coefficient `n` is `ped_{-2}(n) mod 8`.
pub fn ped2_mod8_theta_chain(count: usize) -> Result<TruncatedSeries, SeriesError> {
    let order = 4 * count + 1;
    let l4 = theta_series(ThetaKind::EvenLattice(4), order, Ring::Mod8).unwrap();
    let l8 = theta_series(ThetaKind::EvenLattice(8), order, Ring::Mod8).unwrap();
    let l16 = theta_series(ThetaKind::EvenLattice(16), order, Ring::Mod8).unwrap();
    let combo = l4.add(&l8.scalar_mul(2))?.sub(&l16.scalar_mul(2))?;
    let odd = theta_series(ThetaKind::OddSquaresOneSided, order, Ring::Mod8).unwrap();
    let chain = combo.mul(&odd)?;
    chain.extract_progression(4, 1)
}

/// `ped(n) mod 8` for all `n <= n_max`, built by scattering the sparse
/// product
///
/// ```text
/// (1 - 2 sum (-1)^n q^{16n^2} + 4 sum q^{32n^2}) * sum_{n>=0} q^{(2n+1)^2}
/// ```
///
/// over exponents `8n+1`. Costs one update per contributing pair of squares,
/// so it stays fast at orders where the pentagonal recurrence does not; the
/// two routes are asserted equal on long prefixes in the test suites.
pub fn ped_mod8_from_squares(n_max: usize) -> TruncatedSeries {
    let limit = 8 * n_max + 1;
    // lattice factor: exponent 0 weight 1, 16n^2 weight -2(-1)^n, 32n^2 weight 4
    let mut lattice: Vec<(usize, u8)> = vec![(0, 1)];
    let mut n = 1usize;
    while 16 * n * n <= limit {
        lattice.push((16 * n * n, if n % 2 == 1 { 2 } else { 6 }));
        n += 1;
    }
    n = 1;
    while 32 * n * n <= limit {
        lattice.push((32 * n * n, 4));
        n += 1;
    }
    lattice.sort_unstable();

    let mut tbl = vec![0u8; n_max + 1];
    let mut x = 1usize;
    while x * x <= limit {
        let s = x * x;
        for &(t, w) in lattice.iter().take_while(|&&(t, _)| s + t <= limit) {
            // s is an odd square and t == 0 (mod 8), so s + t == 1 (mod 8)
            let idx = (s + t - 1) / 8;
            tbl[idx] = (tbl[idx] + w) & 7;
        }
        x += 2;
    }
    TruncatedSeries::from_residues(Ring::Mod8, tbl).unwrap()
}

/// `ped_{-2}(n) mod 8` for all `n <= n_max`, scattered from the sparse
/// product `(L4 + 2 L8 - 2 L16) * OddSquaresOneSided` over exponents `4n+1`.
///
/// The `4n^2` and `16n^2` supports overlap at `16b^2`; the merged weight
/// there is `2 - 4 = -2`.
pub fn ped2_mod8_from_squares(n_max: usize) -> TruncatedSeries {
    let limit = 4 * n_max + 1;
    let mut lattice: Vec<(usize, u8)> = vec![(0, 1)];
    let mut n = 1usize;
    while 4 * n * n <= limit {
        if n % 2 == 1 {
            lattice.push((4 * n * n, 2));
        }
        n += 1;
    }
    n = 1;
    while 16 * n * n <= limit {
        lattice.push((16 * n * n, 6));
        n += 1;
    }
    n = 1;
    while 8 * n * n <= limit {
        lattice.push((8 * n * n, 4));
        n += 1;
    }
    lattice.sort_unstable();

    let mut tbl = vec![0u8; n_max + 1];
    let mut x = 1usize;
    while x * x <= limit {
        let s = x * x;
        for &(t, w) in lattice.iter().take_while(|&&(t, _)| s + t <= limit) {
            let idx = (s + t - 1) / 4;
            tbl[idx] = (tbl[idx] + w) & 7;
        }
        x += 2;
    }
    TruncatedSeries::from_residues(Ring::Mod8, tbl).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eta::{ped2_series, ped_series};

    #[test]
    fn theta_sparse_streams() {
        let s = theta_series(ThetaKind::SignedSquares, 9, Ring::Exact).unwrap();
        assert_eq!(
            s,
            TruncatedSeries::from_terms(Ring::Exact, 9, &[(0, 1), (1, -2), (4, 2), (9, -2)])
        );
        let o = theta_series(ThetaKind::OddSquaresOneSided, 25, Ring::Exact).unwrap();
        assert_eq!(o, TruncatedSeries::from_terms(Ring::Exact, 25, &[(1, 1), (9, 1), (25, 1)]));
        let t = theta_series(ThetaKind::OddSquaresTwoSided, 25, Ring::Exact).unwrap();
        assert_eq!(t, o.scalar_mul(2));
        let l = theta_series(ThetaKind::EvenLattice(8), 32, Ring::Exact).unwrap();
        assert_eq!(l, TruncatedSeries::from_terms(Ring::Exact, 32, &[(0, 1), (8, 2), (32, 2)]));
        assert_eq!(
            theta_series(ThetaKind::EvenLattice(6), 10, Ring::Exact),
            Err(ThetaError::UnsupportedLattice(6))
        );
    }

    #[test]
    fn signed_squares_identity_small_orders() {
        for order in [0, 1, 100] {
            let rep = verify_signed_squares_identity(order);
            assert_eq!(rep.status, IdentityStatus::Match, "order {order}");
        }
    }

    #[test]
    fn odd_squares_identity_small_orders() {
        for order in [0, 9, 200] {
            let rep = verify_odd_squares_identity(order);
            assert_eq!(rep.status, IdentityStatus::Match, "order {order}");
        }
    }

    #[test]
    fn identity_checker_reports_first_mismatch() {
        let a = theta_series(ThetaKind::SignedSquares, 10, Ring::Exact).unwrap();
        let b = a.clone();
        assert_eq!(first_mismatch(&a, &b), IdentityStatus::Match);
        let c = TruncatedSeries::from_terms(Ring::Exact, 10, &[(0, 1), (1, -2), (4, 1)]);
        assert_eq!(first_mismatch(&a, &c), IdentityStatus::Mismatch { first_index: 4 });
    }

    #[test]
    fn literal_inverse_route_matches_unit_multiple_form() {
        // the rearranged checker is equivalent to dividing out the unit
        let order = 400;
        let e1 = euler_product(1, 1, order, Ring::Exact).unwrap();
        let e2 = euler_product(2, 1, order, Ring::Exact).unwrap();
        let literal = e1.mul(&e1).unwrap().mul(&e2.inverse().unwrap()).unwrap();
        let theta = theta_series(ThetaKind::SignedSquares, order, Ring::Exact).unwrap();
        assert_eq!(literal, theta);
    }

    #[test]
    fn ped_chain_reproduces_ped_mod8() {
        let count = 500;
        let chain = ped_mod8_theta_chain(count).unwrap();
        let direct = ped_series(count, Ring::Mod8);
        assert_eq!(chain, direct);
    }

    #[test]
    fn ped2_chain_reproduces_ped2_mod8() {
        let count = 500;
        let chain = ped2_mod8_theta_chain(count).unwrap();
        let direct = ped2_series(count, Ring::Mod8);
        assert_eq!(chain, direct);
    }

    #[test]
    fn square_scatter_routes_match_chains() {
        assert_eq!(ped_mod8_from_squares(800), ped_mod8_theta_chain(800).unwrap());
        assert_eq!(ped2_mod8_from_squares(800), ped2_mod8_theta_chain(800).unwrap());
    }
}
