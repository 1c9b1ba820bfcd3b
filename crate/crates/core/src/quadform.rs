//! Integer factorization and representation counts for the binary quadratic
//! forms `x^2 + b y^2`, `b` in {1, 2, 4, 8, 16}.
//!
//! Factorization handles inputs up to `2^63`: trial division by a 2-3-5
//! wheel below `2^20`, then deterministic Miller-Rabin, then Brent-cycle
//! Pollard rho on whatever composite remains. Everything stays in native
//! 64-bit words (128-bit intermediates for modular products).
//!
//! Representation counts come in two independent routes (lattice-point
//! enumeration by integer square root, and the divisor formulas driven by
//! the prime residue profile mod 8), and the test suites hold them equal.

use alloc::vec::Vec;
use core::fmt;

/// Largest input `factorize` accepts.
pub const MAX_FACTOR_INPUT: u64 = 1 << 63;

const TRIAL_BOUND: u64 = 1 << 20;

/// Errors from factorization-backed operations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FactorError {
    /// Input 0 has no factorization.
    Zero,
    /// Input exceeds [`MAX_FACTOR_INPUT`].
    TooLarge(u64),
}

impl fmt::Display for FactorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorError::Zero => write!(f, "0 has no prime factorization"),
            FactorError::TooLarge(n) => {
                write!(f, "input {n} exceeds the 2^63 factorization bound")
            }
        }
    }
}

impl core::error::Error for FactorError {}

/// Complete prime factorization of a positive integer, primes ascending.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs, sorted by prime.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Exponent of `p` in `n` (0 when `p` does not divide `n`).
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin primality test, valid for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    // this base set is deterministic for n < 3.3 * 10^24
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Brent-cycle Pollard rho; returns a nontrivial factor of odd composite `n`.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let mut x = 2u64;
        let mut y = 2u64;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut ys = y;
        let mut r = 1u64;
        // n <= 2^63 and c stays tiny, so s + c cannot overflow u64
        let step = |v: u64| (mulmod(v, v, n) + c) % n;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k = 0u64;
            while k < r && g == 1 {
                ys = y;
                let batch = 128.min(r - k);
                for _ in 0..batch {
                    y = step(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += batch;
            }
            r *= 2;
        }
        if g == n {
            // backtrack one step at a time
            g = 1;
            while g == 1 {
                ys = step(ys);
                g = gcd(x.abs_diff(ys), n);
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn factor_recursive(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_recursive(d, out);
    factor_recursive(n / d, out);
}

/// Complete prime factorization; `n = 1` yields the empty product.
pub fn factorize(n: u64) -> Result<Factorization, FactorError> {
    if n == 0 {
        return Err(FactorError::Zero);
    }
    if n > MAX_FACTOR_INPUT {
        return Err(FactorError::TooLarge(n));
    }
    let input = n;
    let mut n = n;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0u32;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    push(5, &mut n);
    let mut p = 7u64;
    const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut w = 0usize;
    while p < TRIAL_BOUND && p * p <= n {
        push(p, &mut n);
        p += WHEEL[w];
        w = (w + 1) % 8;
    }
    if n > 1 {
        if p * p > n {
            factors.push((n, 1));
        } else {
            let mut rest = Vec::new();
            factor_recursive(n, &mut rest);
            rest.sort_unstable();
            let mut i = 0;
            while i < rest.len() {
                let p = rest[i];
                let e = rest[i..].iter().take_while(|&&q| q == p).count();
                factors.push((p, e as u32));
                i += e;
            }
        }
    }
    factors.sort_unstable_by_key(|&(p, _)| p);
    debug_assert_eq!(
        factors.iter().fold(1u64, |acc, &(p, e)| acc * p.pow(e)),
        input
    );
    Ok(Factorization { n: input, factors })
}

/// The unique `(root, squarefree)` with `n = root^2 * squarefree`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SquarefreeDecomposition {
    pub n: u64,
    pub root: u64,
    pub squarefree: u64,
}

pub fn squarefree_decompose(n: u64) -> Result<SquarefreeDecomposition, FactorError> {
    let f = factorize(n)?;
    let mut root = 1u64;
    let mut squarefree = 1u64;
    for &(p, e) in f.factors() {
        root *= p.pow(e / 2);
        if e % 2 == 1 {
            squarefree *= p;
        }
    }
    Ok(SquarefreeDecomposition { n, root, squarefree })
}

/// Prime exponents of a factorization grouped by the prime's residue mod 8.
///
/// `alphas`/`betas`/`gammas`/`deltas` hold exponents of primes congruent to
/// 1, 3, 5, 7 mod 8 respectively; the exponent of 2 is kept separately.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ResidueProfile {
    pub alphas: Vec<u32>,
    pub betas: Vec<u32>,
    pub gammas: Vec<u32>,
    pub deltas: Vec<u32>,
    pub two: u32,
}

pub fn residue_profile(f: &Factorization) -> ResidueProfile {
    let mut prof = ResidueProfile::default();
    for &(p, e) in f.factors() {
        if p == 2 {
            prof.two = e;
        } else {
            match p % 8 {
                1 => prof.alphas.push(e),
                3 => prof.betas.push(e),
                5 => prof.gammas.push(e),
                _ => prof.deltas.push(e),
            }
        }
    }
    prof
}

/// Count integer pairs `(x, y)` with `n = x^2 + b y^2`, both signs and zero
/// included. Enumerates `y` and tests `n - b y^2` by integer square root; no
/// floating point involved.
pub fn rep_count_enumerate(n: u64, b: u32) -> u64 {
    let b = b as u64;
    let mut count = 0u64;
    let mut y = 0u64;
    while b * y * y <= n {
        let r = n - b * y * y;
        let x = r.isqrt();
        if x * x == r {
            count += (if x == 0 { 1 } else { 2 }) * (if y == 0 { 1 } else { 2 });
        }
        y += 1;
    }
    count
}

/// Errors from the closed-form representation counts.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RepFormulaError {
    /// `x^2 + y^2` formula requires odd input.
    EvenInput(u64),
    /// `x^2 + 2y^2` formula requires input congruent to 1 mod 8.
    WrongResidue(u64),
    Factor(FactorError),
}

impl fmt::Display for RepFormulaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepFormulaError::EvenInput(n) => write!(f, "{n} is even; formula needs odd input"),
            RepFormulaError::WrongResidue(n) => {
                write!(f, "{n} is not congruent to 1 mod 8")
            }
            RepFormulaError::Factor(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for RepFormulaError {}

impl From<FactorError> for RepFormulaError {
    fn from(e: FactorError) -> Self {
        RepFormulaError::Factor(e)
    }
}

/// `#{(x,y) : n = x^2 + y^2}` for odd `n` by the divisor formula: zero when
/// any prime `== 3 (mod 4)` divides `n` to an odd power, else
/// `4 * prod (e_p + 1)` over primes `p == 1 (mod 4)`.
pub fn rep_count_x2_y2(n: u64) -> Result<u64, RepFormulaError> {
    if n % 2 == 0 {
        return Err(RepFormulaError::EvenInput(n));
    }
    let f = factorize(n)?;
    let mut prod = 4u64;
    for &(p, e) in f.factors() {
        match p % 4 {
            1 => prod *= e as u64 + 1,
            _ => {
                if e % 2 == 1 {
                    return Ok(0);
                }
            }
        }
    }
    Ok(prod)
}

/// `#{(x,y) : n = x^2 + 2y^2}` for `n == 1 (mod 8)`: zero when any prime
/// `== 5 or 7 (mod 8)` divides `n` to an odd power, else
/// `2 * prod (e_p + 1)` over primes `p == 1 or 3 (mod 8)`.
pub fn rep_count_x2_2y2(n: u64) -> Result<u64, RepFormulaError> {
    if n % 8 != 1 {
        return Err(RepFormulaError::WrongResidue(n));
    }
    let f = factorize(n)?;
    let mut prod = 2u64;
    for &(p, e) in f.factors() {
        match p % 8 {
            1 | 3 => prod *= e as u64 + 1,
            _ => {
                if e % 2 == 1 {
                    return Ok(0);
                }
            }
        }
    }
    Ok(prod)
}
