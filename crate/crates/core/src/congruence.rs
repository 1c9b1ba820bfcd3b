//! Arithmetic-progression congruence families for `ped` and `ped_{-2}`, and
//! finite-range verification sweeps against precomputed coefficient tables.
//!
//! A family is a parameterized claim `target(argument(p, r, alpha, n)) == 0
//! (mod m)` for all `n >= 0` and `alpha` in range. The argument maps are the
//! small zoo of exponent shapes below; admissible residues `r` are generated
//! from `(p, map)` rather than supplied, so sweeps cannot silently check the
//! wrong progression.
//!
//! Verification is read-only over any [`ResidueSource`] (usually a
//! [`TruncatedSeries`] in a residue ring). The sweep fails fast when the
//! source is too short for the requested range, and reports the
//! lexicographically first violating `(alpha, r, n)` tuple if any exists.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use crate::quadform::is_prime;
pub use crate::series::ResidueSource;

/// Which partition function a family constrains.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Target {
    Ped,
    Ped2,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Ped => "ped",
            Target::Ped2 => "ped2",
        }
    }
}

/// The argument shapes appearing in the verified families.
///
/// With `d` the divisor (8 for `ped` maps, 4 for `ped2` maps), every
/// non-linear map sends `(p, r, alpha, n)` to an integer `A` with
/// `d*A + 1 = p^k (d*p*n + r)` for the map's odd exponent `k`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArgumentMap {
    /// `p^{2a+2} n + (r p^{2a+1} - 1)/8`; valid for `p == 7 (mod 8)`,
    /// `rp == 1 (mod 8)`.
    PedMod8,
    /// `p^{2a+2} n + (r p^{2a-1} + 1)/8`, `a >= 1`: a rejected variant of
    /// [`ArgumentMap::PedMod8`] kept so sweeps can demonstrate its failure;
    /// under the same predicates its numerator is `== 2 (mod 8)`, so it
    /// never divides.
    PedMod8Alt,
    /// `p^{2a} n + (r p^{2a-1} - 1)/8`, `a >= 1`; valid for `p == 5 (mod 8)`
    /// or `p == 3 (mod 4)`, `rp == 1 (mod 8)`.
    PedMod4,
    /// `p^{2a+2} n + (r p^{2a+1} - 1)/4`; valid for `p == 3 (mod 4)`,
    /// `rp == 1 (mod 4)`.
    Ped2OddPower,
    /// `p^{8a+8} n + (r p^{8a+7} - 1)/4`; valid for `p == 1 (mod 4)`,
    /// `rp == 1 (mod 4)`.
    Ped2SeventhPower,
    /// `p^{2a+3} n + (r p^{2a+2} - 1)/4`; valid for odd `p`, `r == 1 (mod 4)`.
    Ped2OddPowerShifted,
    /// `step * n + offset`; no `(p, r, alpha)` parameters.
    Linear { step: u64, offset: u64 },
}

impl ArgumentMap {
    /// Smallest alpha the map is defined for.
    pub fn min_alpha(self) -> u32 {
        match self {
            ArgumentMap::PedMod8Alt | ArgumentMap::PedMod4 => 1,
            _ => 0,
        }
    }

    fn uses_prime(self) -> bool {
        !matches!(self, ArgumentMap::Linear { .. })
    }

    /// `(range multiplier, unit modulus)` for admissible-r generation:
    /// `1 <= r < range_mult * p` with the residue condition mod `unit_mod`.
    fn r_shape(self) -> (u64, u64) {
        match self {
            ArgumentMap::PedMod8 | ArgumentMap::PedMod8Alt | ArgumentMap::PedMod4 => (8, 8),
            _ => (4, 4),
        }
    }

    fn prime_condition_holds(self, p: u64) -> bool {
        match self {
            ArgumentMap::PedMod8 | ArgumentMap::PedMod8Alt => p % 8 == 7,
            ArgumentMap::PedMod4 => p % 8 == 5 || p % 4 == 3,
            ArgumentMap::Ped2OddPower => p % 4 == 3,
            ArgumentMap::Ped2SeventhPower => p % 4 == 1,
            ArgumentMap::Ped2OddPowerShifted => p % 2 == 1,
            ArgumentMap::Linear { .. } => true,
        }
    }

    fn prime_condition_text(self) -> &'static str {
        match self {
            ArgumentMap::PedMod8 | ArgumentMap::PedMod8Alt => "p == 7 (mod 8)",
            ArgumentMap::PedMod4 => "p == 5 (mod 8) or p == 3 (mod 4)",
            ArgumentMap::Ped2OddPower => "p == 3 (mod 4)",
            ArgumentMap::Ped2SeventhPower => "p == 1 (mod 4)",
            ArgumentMap::Ped2OddPowerShifted => "p odd",
            ArgumentMap::Linear { .. } => "",
        }
    }

    fn r_condition_holds(self, p: u64, r: u64) -> bool {
        if r == 0 || (self.uses_prime() && r % p == 0) {
            return false;
        }
        match self {
            ArgumentMap::PedMod8 | ArgumentMap::PedMod8Alt | ArgumentMap::PedMod4 => {
                (r % 8) * (p % 8) % 8 == 1
            }
            ArgumentMap::Ped2OddPower | ArgumentMap::Ped2SeventhPower => {
                (r % 4) * (p % 4) % 4 == 1
            }
            ArgumentMap::Ped2OddPowerShifted => r % 4 == 1,
            ArgumentMap::Linear { .. } => true,
        }
    }

    fn r_condition_text(self) -> &'static str {
        match self {
            ArgumentMap::PedMod8 | ArgumentMap::PedMod8Alt | ArgumentMap::PedMod4 => {
                "gcd(r,p) = 1 and rp == 1 (mod 8)"
            }
            ArgumentMap::Ped2OddPower | ArgumentMap::Ped2SeventhPower => {
                "gcd(r,p) = 1 and rp == 1 (mod 4)"
            }
            ArgumentMap::Ped2OddPowerShifted => "gcd(r,p) = 1 and r == 1 (mod 4)",
            ArgumentMap::Linear { .. } => "",
        }
    }

    /// `(multiplier exponent, offset exponent, offset sign, divisor)`:
    /// argument = `p^me * n + (r * p^oe + os) / d`.
    fn shape(self, alpha: u32) -> (u32, u32, i64, u64) {
        let a = alpha;
        match self {
            ArgumentMap::PedMod8 => (2 * a + 2, 2 * a + 1, -1, 8),
            ArgumentMap::PedMod8Alt => (2 * a + 2, 2 * a - 1, 1, 8),
            ArgumentMap::PedMod4 => (2 * a, 2 * a - 1, -1, 8),
            ArgumentMap::Ped2OddPower => (2 * a + 2, 2 * a + 1, -1, 4),
            ArgumentMap::Ped2SeventhPower => (8 * a + 8, 8 * a + 7, -1, 4),
            ArgumentMap::Ped2OddPowerShifted => (2 * a + 3, 2 * a + 2, -1, 4),
            ArgumentMap::Linear { .. } => unreachable!("linear maps have no prime shape"),
        }
    }
}

/// Errors from the scalar argument maps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ArgumentError {
    /// A parameter predicate is violated (usage error).
    InvalidParameter(String),
    /// The offset numerator is not divisible by the map divisor. Unreachable
    /// for the corrected maps when the predicates hold; the expected outcome
    /// for [`ArgumentMap::PedMod8Alt`].
    NotDivisible { remainder: u64 },
    /// Argument exceeds `u64`.
    Overflow,
}

impl fmt::Display for ArgumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArgumentError::InvalidParameter(s) => write!(f, "invalid parameter: {s}"),
            ArgumentError::NotDivisible { remainder } => {
                write!(f, "offset numerator not divisible (remainder {remainder})")
            }
            ArgumentError::Overflow => write!(f, "argument exceeds u64"),
        }
    }
}

impl core::error::Error for ArgumentError {}

fn checked_pow(p: u64, e: u32) -> Option<u128> {
    let mut acc = 1u128;
    for _ in 0..e {
        acc = acc.checked_mul(p as u128)?;
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc)
}

/// `(multiplier, offset)` of the progression `multiplier * n + offset` for
/// one `(map, p, r, alpha)` tuple.
fn progression(map: ArgumentMap, p: u64, r: u64, alpha: u32) -> Result<(u128, u128), ArgumentError> {
    if let ArgumentMap::Linear { step, offset } = map {
        return Ok((step as u128, offset as u128));
    }
    if !map.prime_condition_holds(p) || !is_prime(p) {
        return Err(ArgumentError::InvalidParameter(format!(
            "p = {p} must be prime with {}",
            map.prime_condition_text()
        )));
    }
    if alpha < map.min_alpha() {
        return Err(ArgumentError::InvalidParameter(format!(
            "alpha must be >= {}",
            map.min_alpha()
        )));
    }
    if !map.r_condition_holds(p, r) {
        return Err(ArgumentError::InvalidParameter(format!(
            "r = {r} must satisfy {}",
            map.r_condition_text()
        )));
    }
    let (me, oe, os, d) = map.shape(alpha);
    let mult = checked_pow(p, me).ok_or(ArgumentError::Overflow)?;
    let pk = checked_pow(p, oe).ok_or(ArgumentError::Overflow)?;
    let numer = (r as u128)
        .checked_mul(pk)
        .and_then(|x| x.checked_add_signed(os as i128))
        .ok_or(ArgumentError::Overflow)?;
    let rem = numer % d as u128;
    if rem != 0 {
        return Err(ArgumentError::NotDivisible { remainder: rem as u64 });
    }
    Ok((mult, numer / d as u128))
}

fn argument(map: ArgumentMap, p: u64, r: u64, alpha: u32, n: u64) -> Result<u64, ArgumentError> {
    let (mult, offset) = progression(map, p, r, alpha)?;
    let arg = mult
        .checked_mul(n as u128)
        .and_then(|x| x.checked_add(offset))
        .ok_or(ArgumentError::Overflow)?;
    u64::try_from(arg).map_err(|_| ArgumentError::Overflow)
}

/// Progression argument of the mod-8 `ped` family:
/// `8 * result + 1 == p^{2 alpha + 1} * (8 p n + r)`.
pub fn ped_mod8_argument(p: u64, r: u64, alpha: u32, n: u64) -> Result<u64, ArgumentError> {
    argument(ArgumentMap::PedMod8, p, r, alpha, n)
}

/// The rejected alternate exponent form of [`ped_mod8_argument`]; expected
/// to fail with [`ArgumentError::NotDivisible`] under the same predicates.
pub fn ped_mod8_alt_argument(p: u64, r: u64, alpha: u32, n: u64) -> Result<u64, ArgumentError> {
    argument(ArgumentMap::PedMod8Alt, p, r, alpha, n)
}

/// Progression argument of the mod-4 `ped` family:
/// `8 * result + 1 == p^{2 alpha - 1} * (8 p n + r)`, `alpha >= 1`.
pub fn ped_mod4_argument(p: u64, r: u64, alpha: u32, n: u64) -> Result<u64, ArgumentError> {
    argument(ArgumentMap::PedMod4, p, r, alpha, n)
}

/// Which `ped_{-2}` family case applies, keyed by the prime's residue class.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Ped2Case {
    /// `p == 3 (mod 4)`: exponent `2 alpha + 1`.
    ThreeMod4,
    /// `p == 1 (mod 4)`: exponent `8 alpha + 7`.
    OneMod4,
}

/// Progression argument of the mod-8 `ped_{-2}` families:
/// `4 * result + 1 == p^{2 alpha + 1} (4 p n + r)` for [`Ped2Case::ThreeMod4`],
/// `== p^{8 alpha + 7} (4 p n + r)` for [`Ped2Case::OneMod4`].
pub fn ped2_argument(
    p: u64,
    r: u64,
    alpha: u32,
    n: u64,
    case: Ped2Case,
) -> Result<u64, ArgumentError> {
    let map = match case {
        Ped2Case::ThreeMod4 => ArgumentMap::Ped2OddPower,
        Ped2Case::OneMod4 => ArgumentMap::Ped2SeventhPower,
    };
    argument(map, p, r, alpha, n)
}

/// All residues `r` in the canonical range satisfying the map's conditions
/// for the given prime: `1 <= r < 8p` (`ped` maps) or `1 <= r < 4p` (`ped2`
/// maps). Empty for linear maps.
pub fn admissible_r(map: ArgumentMap, p: u64) -> Vec<u64> {
    if !map.uses_prime() {
        return Vec::new();
    }
    let (range_mult, _) = map.r_shape();
    (1..range_mult * p).filter(|&r| map.r_condition_holds(p, r)).collect()
}

/// How the sweep residues are chosen.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RSelection {
    /// Generate every admissible `r` in the canonical range.
    Admissible,
    /// Use exactly these residues (validated against the map predicates).
    Explicit(Vec<u64>),
    /// The map takes no residue parameter.
    NotApplicable,
}

/// A verifiable congruence family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CongruenceFamily {
    pub id: String,
    pub target: Target,
    pub modulus: u8,
    pub map: ArgumentMap,
    pub prime: Option<u64>,
    pub residues: RSelection,
}

impl CongruenceFamily {
    /// `ped(p^{2a+2} n + (r p^{2a+1} - 1)/8) == 0 (mod 8)` for primes
    /// `p == 7 (mod 8)`.
    pub fn ped_mod8(p: u64, residues: RSelection) -> Self {
        CongruenceFamily {
            id: format!("ped-mod8-p{p}"),
            target: Target::Ped,
            modulus: 8,
            map: ArgumentMap::PedMod8,
            prime: Some(p),
            residues,
        }
    }

    /// `ped(p^{2a} n + (r p^{2a-1} - 1)/8) == 0 (mod 4)` for primes
    /// `p == 5 (mod 8)` or `p == 3 (mod 4)`, `a >= 1`.
    pub fn ped_mod4(p: u64, residues: RSelection) -> Self {
        CongruenceFamily {
            id: format!("ped-mod4-p{p}"),
            target: Target::Ped,
            modulus: 4,
            map: ArgumentMap::PedMod4,
            prime: Some(p),
            residues,
        }
    }

    /// `ped2(p^{2a+2} n + (r p^{2a+1} - 1)/4) == 0 (mod 8)` for primes
    /// `p == 3 (mod 4)`.
    pub fn ped2_mod8_odd_power(p: u64, residues: RSelection) -> Self {
        CongruenceFamily {
            id: format!("ped2-mod8-i-p{p}"),
            target: Target::Ped2,
            modulus: 8,
            map: ArgumentMap::Ped2OddPower,
            prime: Some(p),
            residues,
        }
    }

    /// `ped2(p^{8a+8} n + (r p^{8a+7} - 1)/4) == 0 (mod 8)` for primes
    /// `p == 1 (mod 4)`.
    pub fn ped2_mod8_seventh_power(p: u64, residues: RSelection) -> Self {
        CongruenceFamily {
            id: format!("ped2-mod8-ii-p{p}"),
            target: Target::Ped2,
            modulus: 8,
            map: ArgumentMap::Ped2SeventhPower,
            prime: Some(p),
            residues,
        }
    }

    /// `ped2(3^{2a+2} n + (11 * 3^{2a+1} - 1)/4) == 0 (mod 3)`.
    pub fn ped2_mod3_first() -> Self {
        CongruenceFamily {
            id: String::from("ped2-mod3-a"),
            target: Target::Ped2,
            modulus: 3,
            map: ArgumentMap::Ped2OddPower,
            prime: Some(3),
            residues: RSelection::Explicit(vec![11]),
        }
    }

    /// `ped2(3^{2a+3} n + (5 * 3^{2a+2} - 1)/4) == 0 (mod 3)`.
    pub fn ped2_mod3_second() -> Self {
        CongruenceFamily {
            id: String::from("ped2-mod3-b"),
            target: Target::Ped2,
            modulus: 3,
            map: ArgumentMap::Ped2OddPowerShifted,
            prime: Some(3),
            residues: RSelection::Explicit(vec![5]),
        }
    }

    /// `ped2(9n + 8) == 0 (mod 24)`.
    pub fn ped2_mod24_linear() -> Self {
        CongruenceFamily {
            id: String::from("ped2-mod24"),
            target: Target::Ped2,
            modulus: 24,
            map: ArgumentMap::Linear { step: 9, offset: 8 },
            prime: None,
            residues: RSelection::NotApplicable,
        }
    }
}

/// Range of `n` swept per `(alpha, r)` tuple.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SweepBound {
    /// Sweep `n = 0..=n_max` for every tuple.
    NMax(u64),
    /// For each tuple, sweep every `n` whose argument stays `<= max_arg`.
    MaxArgument(u64),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Counterexample {
    pub alpha: u32,
    pub r: u64,
    pub n: u64,
    pub argument: u64,
    pub residue: u8,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SweepStatus {
    AllHold,
    Counterexample(Counterexample),
}

/// Outcome of one family sweep.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport {
    pub family_id: String,
    pub target: Target,
    pub modulus: u8,
    pub alpha_min: u32,
    pub alpha_max: u32,
    pub bound: SweepBound,
    pub r_values: Vec<u64>,
    pub checked: u64,
    pub max_argument_checked: u64,
    pub status: SweepStatus,
    /// Filled in by the (std) driver; the core has no clock.
    pub wall_time_ms: Option<u64>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum VerifyError {
    InvalidFamily(String),
    /// The source must cover coefficients up to `required`.
    SeriesTooShort { required: u64, available: u64 },
    UnsupportedModulus { modulus: u8 },
    Argument(ArgumentError),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::InvalidFamily(s) => write!(f, "invalid family: {s}"),
            VerifyError::SeriesTooShort { required, available } => write!(
                f,
                "series too short: order {required} required, {available} available"
            ),
            VerifyError::UnsupportedModulus { modulus } => {
                write!(f, "source cannot answer residues mod {modulus}")
            }
            VerifyError::Argument(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for VerifyError {}

impl From<ArgumentError> for VerifyError {
    fn from(e: ArgumentError) -> Self {
        VerifyError::Argument(e)
    }
}

fn resolve_residues(family: &CongruenceFamily) -> Result<(u64, Vec<u64>), VerifyError> {
    if !family.map.uses_prime() {
        return Ok((0, vec![0]));
    }
    let p = family
        .prime
        .ok_or_else(|| VerifyError::InvalidFamily(String::from("family requires a prime p")))?;
    if !is_prime(p) || !family.map.prime_condition_holds(p) {
        return Err(VerifyError::InvalidFamily(format!(
            "p = {p} must be prime with {}",
            family.map.prime_condition_text()
        )));
    }
    let rs = match &family.residues {
        RSelection::Admissible => admissible_r(family.map, p),
        RSelection::Explicit(rs) => {
            for &r in rs {
                if !family.map.r_condition_holds(p, r) {
                    return Err(VerifyError::InvalidFamily(format!(
                        "r = {r} must satisfy {}",
                        family.map.r_condition_text()
                    )));
                }
            }
            rs.clone()
        }
        RSelection::NotApplicable => {
            return Err(VerifyError::InvalidFamily(String::from(
                "family map requires residues r",
            )))
        }
    };
    if rs.is_empty() {
        return Err(VerifyError::InvalidFamily(format!("no admissible r for p = {p}")));
    }
    Ok((p, rs))
}

/// Largest argument the sweep will touch; the order a coefficient table must
/// reach before [`verify_family`] will run.
fn check_alpha_range(family: &CongruenceFamily, alpha_max: u32) -> Result<(), VerifyError> {
    let min = family.map.min_alpha();
    if alpha_max < min {
        return Err(VerifyError::InvalidFamily(format!(
            "alpha_max = {alpha_max} is below the map minimum alpha {min}"
        )));
    }
    Ok(())
}

pub fn required_order(
    family: &CongruenceFamily,
    alpha_max: u32,
    bound: SweepBound,
) -> Result<u64, VerifyError> {
    check_alpha_range(family, alpha_max)?;
    match bound {
        SweepBound::MaxArgument(a) => Ok(a),
        SweepBound::NMax(n_max) => {
            let (p, rs) = resolve_residues(family)?;
            let mut max_arg = 0u64;
            for alpha in family.map.min_alpha()..=alpha_max {
                for &r in &rs {
                    let arg = argument(family.map, p, r, alpha, n_max)?;
                    max_arg = max_arg.max(arg);
                }
            }
            Ok(max_arg)
        }
    }
}

/// Number of `(alpha, r, n)` tuples the sweep will check; lets drivers
/// budget lazily evaluated sources before committing.
pub fn estimated_checks(
    family: &CongruenceFamily,
    alpha_max: u32,
    bound: SweepBound,
) -> Result<u128, VerifyError> {
    check_alpha_range(family, alpha_max)?;
    let (p, rs) = resolve_residues(family)?;
    let mut total = 0u128;
    for alpha in family.map.min_alpha()..=alpha_max {
        for &r in &rs {
            let (mult, offset) = progression(family.map, p, r, alpha)?;
            let n_hi = match bound {
                SweepBound::NMax(n_max) => n_max,
                SweepBound::MaxArgument(a) => {
                    if offset > a as u128 {
                        continue;
                    }
                    ((a as u128 - offset) / mult) as u64
                }
            };
            total += n_hi as u128 + 1;
        }
        if matches!(family.map, ArgumentMap::Linear { .. }) {
            break;
        }
    }
    Ok(total)
}

/// Sweep the family over `alpha in [min_alpha, alpha_max]`, all selected
/// residues, and the `n` range given by `bound`, checking
/// `target(argument) == 0 (mod modulus)` against the source.
pub fn verify_family(
    family: &CongruenceFamily,
    alpha_max: u32,
    bound: SweepBound,
    source: &impl ResidueSource,
) -> Result<VerificationReport, VerifyError> {
    if !source.supports_modulus(family.modulus) {
        return Err(VerifyError::UnsupportedModulus { modulus: family.modulus });
    }
    check_alpha_range(family, alpha_max)?;
    let required = required_order(family, alpha_max, bound)?;
    if required > source.max_index() {
        return Err(VerifyError::SeriesTooShort {
            required,
            available: source.max_index(),
        });
    }

    let (p, rs) = resolve_residues(family)?;
    let alpha_min = family.map.min_alpha();
    let mut checked = 0u64;
    let mut max_arg = 0u64;
    let mut status = SweepStatus::AllHold;

    'sweep: for alpha in alpha_min..=alpha_max {
        for &r in &rs {
            let (mult, offset) = progression(family.map, p, r, alpha)?;
            let n_hi = match bound {
                SweepBound::NMax(n_max) => n_max,
                SweepBound::MaxArgument(a) => {
                    if offset > a as u128 {
                        continue;
                    }
                    ((a as u128 - offset) / mult) as u64
                }
            };
            for n in 0..=n_hi {
                let arg = (mult * n as u128 + offset) as u64;
                let residue = source.residue_mod(arg, family.modulus);
                checked += 1;
                max_arg = max_arg.max(arg);
                if residue != 0 {
                    status = SweepStatus::Counterexample(Counterexample {
                        alpha,
                        r,
                        n,
                        argument: arg,
                        residue,
                    });
                    break 'sweep;
                }
            }
        }
        if matches!(family.map, ArgumentMap::Linear { .. }) {
            // linear maps have no alpha dependence; one pass suffices
            break;
        }
    }

    Ok(VerificationReport {
        family_id: family.id.clone(),
        target: family.target,
        modulus: family.modulus,
        alpha_min,
        alpha_max,
        bound,
        r_values: if family.map.uses_prime() { rs } else { Vec::new() },
        checked,
        max_argument_checked: max_arg,
        status,
        wall_time_ms: None,
    })
}

/// Outcome of probing the rejected alternate exponent form for one `r`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AltProbeOutcome {
    /// The offset numerator fails divisibility (the expected outcome).
    NotDivisible { remainder: u64 },
    /// Divisible, but the congruence fails at this tuple.
    Counterexample { n: u64, argument: u64, residue: u8 },
    /// Divisible and the congruence held over the probed range.
    Holds { n_checked: u64 },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AltExponentProbe {
    pub p: u64,
    pub alpha: u32,
    pub r: u64,
    pub outcome: AltProbeOutcome,
}

/// Run the rejected alternate exponent map for every admissible `r` at the
/// given `alpha`, recording how each instance fails (or holds).
pub fn probe_alt_exponent(
    p: u64,
    alpha: u32,
    n_max: u64,
    source: &impl ResidueSource,
) -> Result<Vec<AltExponentProbe>, VerifyError> {
    if !source.supports_modulus(8) {
        return Err(VerifyError::UnsupportedModulus { modulus: 8 });
    }
    if !is_prime(p) || p % 8 != 7 {
        return Err(VerifyError::InvalidFamily(format!(
            "p = {p} must be prime with p == 7 (mod 8)"
        )));
    }
    let mut probes = Vec::new();
    for r in admissible_r(ArgumentMap::PedMod8Alt, p) {
        let outcome = match progression(ArgumentMap::PedMod8Alt, p, r, alpha) {
            Err(ArgumentError::NotDivisible { remainder }) => {
                AltProbeOutcome::NotDivisible { remainder }
            }
            Err(e) => return Err(e.into()),
            Ok((mult, offset)) => {
                let mut found = None;
                for n in 0..=n_max {
                    let arg = mult * n as u128 + offset;
                    let arg = u64::try_from(arg).map_err(|_| ArgumentError::Overflow)?;
                    if arg > source.max_index() {
                        return Err(VerifyError::SeriesTooShort {
                            required: arg,
                            available: source.max_index(),
                        });
                    }
                    let residue = source.residue_mod(arg, 8);
                    if residue != 0 {
                        found = Some(AltProbeOutcome::Counterexample { n, argument: arg, residue });
                        break;
                    }
                }
                found.unwrap_or(AltProbeOutcome::Holds { n_checked: n_max })
            }
        };
        probes.push(AltExponentProbe { p, alpha, r, outcome });
    }
    Ok(probes)
}

/// Violations of the parity laws for `ped_{-2}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParityViolation {
    /// `ped_{-2}(n)` odd but `n` is not of the form `k(k+1)`.
    OddNotPronic { n: u64, residue: u8 },
    /// `ped_{-2}(n)` not a multiple of 4 but `n` is not a sum of two
    /// triangular numbers.
    NotTriangularSum { n: u64, residue: u8 },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParityStatus {
    AllHold,
    Violation(ParityViolation),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ParityReport {
    pub n_max: u64,
    pub checked: u64,
    pub status: ParityStatus,
    pub wall_time_ms: Option<u64>,
}

/// Check, for all `n <= n_max`: `ped_{-2}(n)` odd implies `n` pronic, and
/// `ped_{-2}(n) != 0 (mod 4)` implies `n` is a sum of two triangular
/// numbers. Triangular-sum membership is decided by direct enumeration.
pub fn verify_parity_laws(
    n_max: u64,
    source: &impl ResidueSource,
) -> Result<ParityReport, VerifyError> {
    if !source.supports_modulus(4) {
        return Err(VerifyError::UnsupportedModulus { modulus: 4 });
    }
    if n_max > source.max_index() {
        return Err(VerifyError::SeriesTooShort { required: n_max, available: source.max_index() });
    }

    let triangulars: Vec<u64> = (0u64..)
        .map(|k| k * (k + 1) / 2)
        .take_while(|&t| t <= n_max)
        .collect();
    let mut tri_sum = vec![false; n_max as usize + 1];
    for (i, &a) in triangulars.iter().enumerate() {
        for &b in &triangulars[i..] {
            if a + b > n_max {
                break;
            }
            tri_sum[(a + b) as usize] = true;
        }
    }

    let is_pronic = |n: u64| {
        let m = 4 * n + 1;
        m.isqrt().pow(2) == m
    };

    let mut checked = 0u64;
    let mut status = ParityStatus::AllHold;
    for n in 0..=n_max {
        let residue = source.residue_mod(n, 4);
        checked += 1;
        if residue % 2 == 1 && !is_pronic(n) {
            status = ParityStatus::Violation(ParityViolation::OddNotPronic { n, residue });
            break;
        }
        if residue % 4 != 0 && !tri_sum[n as usize] {
            status = ParityStatus::Violation(ParityViolation::NotTriangularSum { n, residue });
            break;
        }
    }

    Ok(ParityReport { n_max, checked, status, wall_time_ms: None })
}
