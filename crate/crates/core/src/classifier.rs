//! Five-case classification of `ped_{-2}(n) mod 8` from the squarefree
//! decomposition of `4n+1`, and the theta-convolution counts that bridge the
//! classification to the series.
//!
//! Writing `4n+1 = N^2 M` with `M` squarefree:
//!
//! 1. `M = 1`                                  -> `ped_{-2}(n)` odd
//! 2. `M = p`, `ord_p(4n+1) == 1 (mod 4)`      -> `== 2 (mod 4)`
//! 3. `M = p`, `ord_p(4n+1) == 3 (mod 8)`      -> `== 4 (mod 8)`
//! 4. `M = p1 p2`, both `p_i == 1 (mod 4)` with `ord_{p_i} == 1 (mod 4)`
//!                                             -> `== 4 (mod 8)`
//! 5. all other cases                          -> `== 0 (mod 8)`
//!
//! The classifier is validated against the series oracle (`ped2_series`
//! reduced mod 8) on large sweeps in the test suites; in particular the
//! sweep pins down the edge `M = p` with `ord == 5 (mod 8)` (e.g.
//! `4n+1 = 5^5`), which lands in case 2, and `ord == 7 (mod 8)`, which
//! falls through to case 5.

use alloc::vec::Vec;
use core::fmt;

use crate::quadform::{factorize, rep_count_enumerate, FactorError};
use crate::series::ResidueSource;

/// The four residue classes mod 8 that `ped_{-2}` attains.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum ResidueClass {
    Odd,
    TwoMod4,
    FourMod8,
    ZeroMod8,
}

impl ResidueClass {
    /// Classify an actual residue mod 8.
    pub fn of_residue_mod8(r: u8) -> ResidueClass {
        match r % 8 {
            r if r % 2 == 1 => ResidueClass::Odd,
            2 | 6 => ResidueClass::TwoMod4,
            4 => ResidueClass::FourMod8,
            _ => ResidueClass::ZeroMod8,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ResidueClass::Odd => "Odd",
            ResidueClass::TwoMod4 => "TwoMod4",
            ResidueClass::FourMod8 => "FourMod8",
            ResidueClass::ZeroMod8 => "ZeroMod8",
        }
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Classify `ped_{-2}(n) mod 8` from the factorization of `4n+1`.
///
/// Fails only when `4n+1` would exceed the factorization bound.
pub fn classify(n: u64) -> Result<ResidueClass, FactorError> {
    let m = n
        .checked_mul(4)
        .and_then(|x| x.checked_add(1))
        .ok_or(FactorError::TooLarge(u64::MAX))?;
    let f = factorize(m)?;
    // primes dividing the squarefree part M are exactly those with odd ord
    let odd: Vec<(u64, u32)> =
        f.factors().iter().copied().filter(|&(_, e)| e % 2 == 1).collect();
    Ok(match odd.as_slice() {
        [] => ResidueClass::Odd,
        [(_, e)] => {
            if e % 4 == 1 {
                ResidueClass::TwoMod4
            } else if e % 8 == 3 {
                ResidueClass::FourMod8
            } else {
                ResidueClass::ZeroMod8
            }
        }
        [(p1, e1), (p2, e2)] => {
            if p1 % 4 == 1 && p2 % 4 == 1 && e1 % 4 == 1 && e2 % 4 == 1 {
                ResidueClass::FourMod8
            } else {
                ResidueClass::ZeroMod8
            }
        }
        _ => ResidueClass::ZeroMod8,
    })
}

/// The counts `a(n), b(n), c(n)`: representations of `4n+1` by
/// `x^2 + 4y^2`, `x^2 + 8y^2`, `x^2 + 16y^2` (signs and zero included; `x`
/// is automatically odd since `4n+1` is odd).
///
/// Equivalently the coefficients of `q^{4n+1}` in the two-sided odd-square
/// theta multiplied by `EvenLattice(4)`, `EvenLattice(8)`, `EvenLattice(16)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ThetaConvolutionTriple {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

pub fn theta_triple(n: u64) -> ThetaConvolutionTriple {
    let m = 4 * n + 1;
    ThetaConvolutionTriple {
        a: rep_count_enumerate(m, 4),
        b: rep_count_enumerate(m, 8),
        c: rep_count_enumerate(m, 16),
    }
}

/// Apply the residue criteria to a convolution triple:
/// `a/2` odd -> Odd; `a/2 + b - c == 2 (mod 4)` -> TwoMod4;
/// `== 4 (mod 8)` -> FourMod8; otherwise ZeroMod8.
pub fn criteria_from_triple(t: ThetaConvolutionTriple) -> ResidueClass {
    debug_assert!(t.a % 2 == 0, "two-sided odd-square count is even");
    let half_a = (t.a / 2) as i64;
    if half_a % 2 == 1 {
        return ResidueClass::Odd;
    }
    let v = half_a + t.b as i64 - t.c as i64;
    if v.rem_euclid(4) == 2 {
        ResidueClass::TwoMod4
    } else if v.rem_euclid(8) == 4 {
        ResidueClass::FourMod8
    } else {
        ResidueClass::ZeroMod8
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleSweepStatus {
    AllMatch,
    Mismatch { n: u64, classified: ResidueClass, series_residue: u8 },
}

/// Outcome of sweeping the factorization classifier against a series table.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OracleSweepReport {
    pub n_max: u64,
    pub checked: u64,
    pub status: OracleSweepStatus,
    /// Filled in by the (std) driver; the core has no clock.
    pub wall_time_ms: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleSweepError {
    /// Source covers fewer coefficients than the sweep needs.
    SeriesTooShort { required: u64, available: u64 },
    /// Source cannot answer residues mod 8.
    UnsupportedModulus,
    Factor(FactorError),
}

impl fmt::Display for OracleSweepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleSweepError::SeriesTooShort { required, available } => write!(
                f,
                "series too short: order {required} required, {available} available"
            ),
            OracleSweepError::UnsupportedModulus => {
                write!(f, "source cannot answer residues mod 8")
            }
            OracleSweepError::Factor(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for OracleSweepError {}

/// Sweep `classify(n)` against the residue classes of an actual
/// `ped_{-2}` mod-8 table for all `n <= n_max`, reporting the first
/// disagreement if any.
pub fn verify_classifier_against_series(
    n_max: u64,
    source: &impl ResidueSource,
) -> Result<OracleSweepReport, OracleSweepError> {
    if !source.supports_modulus(8) {
        return Err(OracleSweepError::UnsupportedModulus);
    }
    if n_max > source.max_index() {
        return Err(OracleSweepError::SeriesTooShort {
            required: n_max,
            available: source.max_index(),
        });
    }
    let mut checked = 0u64;
    let mut status = OracleSweepStatus::AllMatch;
    for n in 0..=n_max {
        let classified = classify(n).map_err(OracleSweepError::Factor)?;
        let residue = source.residue_mod(n, 8);
        checked += 1;
        if classified != ResidueClass::of_residue_mod8(residue) {
            status = OracleSweepStatus::Mismatch { n, classified, series_residue: residue };
            break;
        }
    }
    Ok(OracleSweepReport { n_max, checked, status, wall_time_ms: None })
}
