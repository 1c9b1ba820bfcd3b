//! Property tests over the series engine, factorization, and argument maps.

use num_bigint::BigInt;
use proptest::collection::vec as pvec;
use proptest::prelude::*;

use pedq_core::congruence::{
    admissible_r, ped2_argument, ped_mod4_argument, ped_mod8_argument, ArgumentMap, Ped2Case,
};
use pedq_core::eta::euler_product;
use pedq_core::quadform::{
    factorize, is_prime, rep_count_enumerate, rep_count_x2_2y2, rep_count_x2_y2,
    residue_profile, squarefree_decompose,
};
use pedq_core::series::{Ring, TruncatedSeries};
use pedq_core::{classify, criteria_from_triple, theta_triple};

fn exact_series(order: usize, coeffs: &[i64]) -> TruncatedSeries {
    let terms: Vec<(usize, i64)> = coeffs.iter().copied().enumerate().collect();
    TruncatedSeries::from_terms(Ring::Exact, order, &terms)
}

fn residue_rings() -> impl Strategy<Value = Ring> {
    prop::sample::select(vec![Ring::Mod2, Ring::Mod4, Ring::Mod8, Ring::Mod3, Ring::Mod12, Ring::Mod24])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mul_commutes_and_associates(
        a in pvec(-50i64..=50, 1..=48),
        b in pvec(-50i64..=50, 1..=48),
        c in pvec(-50i64..=50, 1..=48),
    ) {
        let order = a.len().max(b.len()).max(c.len()) - 1;
        let pad = |v: &[i64]| exact_series(order, v);
        let (f, g, h) = (pad(&a), pad(&b), pad(&c));
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        let left = f.mul(&g).unwrap().mul(&h).unwrap();
        let right = f.mul(&g.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn residue_mul_matches_exact_reduction(
        a in pvec(-50i64..=50, 1..=40),
        b in pvec(-50i64..=50, 1..=40),
        ring in residue_rings(),
    ) {
        let order = a.len().max(b.len()) - 1;
        let m = ring.modulus().unwrap();
        let exact = exact_series(order, &a).mul(&exact_series(order, &b)).unwrap();
        let terms_a: Vec<(usize, i64)> = a.iter().copied().enumerate().collect();
        let terms_b: Vec<(usize, i64)> = b.iter().copied().enumerate().collect();
        let fa = TruncatedSeries::from_terms(ring, order, &terms_a);
        let fb = TruncatedSeries::from_terms(ring, order, &terms_b);
        let reduced = fa.mul(&fb).unwrap();
        for n in 0..=order {
            prop_assert_eq!(reduced.residues().unwrap()[n], exact.coeff_mod(n, m).unwrap());
        }
    }

    #[test]
    fn inverse_round_trips(
        mut coeffs in pvec(-9i64..=9, 1..=40),
        unit_neg in any::<bool>(),
        ring in residue_rings(),
    ) {
        let order = coeffs.len() - 1;
        coeffs[0] = if unit_neg { -1 } else { 1 };
        let f = exact_series(order, &coeffs);
        let inv = f.inverse().unwrap();
        prop_assert_eq!(f.mul(&inv).unwrap(), TruncatedSeries::one(Ring::Exact, order));

        // same coefficients reduced: constant +-1 is a unit in every ring
        let terms: Vec<(usize, i64)> = coeffs.iter().copied().enumerate().collect();
        let fr = TruncatedSeries::from_terms(ring, order, &terms);
        let invr = fr.inverse().unwrap();
        prop_assert_eq!(fr.mul(&invr).unwrap(), TruncatedSeries::one(ring, order));
    }

    #[test]
    fn divide_inverts_mul(
        a in pvec(-50i64..=50, 1..=40),
        mut b in pvec(-50i64..=50, 1..=40),
    ) {
        let order = a.len().max(b.len()) - 1;
        b[0] = 1;
        let f = exact_series(order, &a);
        let g = exact_series(order, &b);
        prop_assert_eq!(f.mul(&g).unwrap().divide(&g).unwrap(), f);
    }

    #[test]
    fn pentagonal_matches_naive_product(
        a in 1u32..=6,
        e in prop::sample::select(vec![-2i32, -1, 1, 2]),
        order in 1usize..=120,
    ) {
        let fast = euler_product(a, e, order, Ring::Exact).unwrap();
        let naive = naive_euler(a as usize, e, order);
        prop_assert_eq!(fast.exact_coeffs().unwrap(), &naive[..]);
    }

    #[test]
    fn factorize_reconstructs_input(n in 1u64..=1_000_000_000_000u64) {
        let f = factorize(n).unwrap();
        let mut acc = 1u64;
        for &(p, e) in f.factors() {
            prop_assert!(is_prime(p));
            acc *= p.pow(e);
        }
        prop_assert_eq!(acc, n);
        // primes strictly ascending
        prop_assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn squarefree_decomposition_invariants(n in 1u64..=100_000_000u64) {
        let d = squarefree_decompose(n).unwrap();
        prop_assert_eq!(d.root * d.root * d.squarefree, n);
        let sf = factorize(d.squarefree).unwrap();
        prop_assert!(sf.factors().iter().all(|&(_, e)| e == 1));
    }

    #[test]
    fn residue_profile_regroups_the_factorization(n in 1u64..=10_000_000u64) {
        let f = factorize(n).unwrap();
        let prof = residue_profile(&f);
        // every odd-prime exponent lands in exactly one bucket, keyed by the
        // prime's residue class mod 8
        let mut expected: Vec<(u64, u32)> = Vec::new();
        for &(p, e) in f.factors() {
            if p == 2 {
                prop_assert_eq!(prof.two, e);
            } else {
                expected.push((p % 8, e));
            }
        }
        let buckets = [(1u64, &prof.alphas), (3, &prof.betas), (5, &prof.gammas), (7, &prof.deltas)];
        for (cls, bucket) in buckets {
            let want: Vec<u32> =
                expected.iter().filter(|&&(c, _)| c == cls).map(|&(_, e)| e).collect();
            prop_assert_eq!(bucket.clone(), want, "class {} mod 8", cls);
        }
        if f.exponent_of(2) == 0 {
            prop_assert_eq!(prof.two, 0);
        }
    }

    #[test]
    fn rep_formulas_match_enumeration(n in 0u64..=30_000u64) {
        let odd = 2 * n + 1;
        prop_assert_eq!(rep_count_x2_y2(odd).unwrap(), rep_count_enumerate(odd, 1));
        let one_mod8 = 8 * n + 1;
        prop_assert_eq!(rep_count_x2_2y2(one_mod8).unwrap(), rep_count_enumerate(one_mod8, 2));
    }

    #[test]
    fn classifier_agrees_with_criteria(n in 0u64..=100_000u64) {
        prop_assert_eq!(criteria_from_triple(theta_triple(n)), classify(n).unwrap());
    }

    #[test]
    fn ped_mod8_argument_factored_form(
        p in prop::sample::select(vec![7u64, 23, 31, 47]),
        idx in 0usize..6,
        alpha in 0u32..=2,
        n in 0u64..=10_000,
    ) {
        let rs = admissible_r(ArgumentMap::PedMod8, p);
        let r = rs[idx % rs.len()];
        let arg = ped_mod8_argument(p, r, alpha, n).unwrap();
        let lhs = BigInt::from(8) * arg + 1;
        let rhs = BigInt::from(p).pow(2 * alpha + 1) * (BigInt::from(8) * p * n + r);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ped_mod4_argument_factored_form(
        p in prop::sample::select(vec![3u64, 5, 11, 13, 19, 29]),
        idx in 0usize..8,
        alpha in 1u32..=3,
        n in 0u64..=10_000,
    ) {
        let rs = admissible_r(ArgumentMap::PedMod4, p);
        let r = rs[idx % rs.len()];
        let arg = ped_mod4_argument(p, r, alpha, n).unwrap();
        let lhs = BigInt::from(8) * arg + 1;
        let rhs = BigInt::from(p).pow(2 * alpha - 1) * (BigInt::from(8) * p * n + r);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ped2_argument_factored_form(
        case_one in any::<bool>(),
        idx in 0usize..8,
        alpha in 0u32..=1,
        n in 0u64..=5_000,
    ) {
        let (p, case, exp) = if case_one {
            (5u64, Ped2Case::OneMod4, 8 * alpha + 7)
        } else {
            (7u64, Ped2Case::ThreeMod4, 2 * alpha + 1)
        };
        let map = match case {
            Ped2Case::OneMod4 => ArgumentMap::Ped2SeventhPower,
            Ped2Case::ThreeMod4 => ArgumentMap::Ped2OddPower,
        };
        let rs = admissible_r(map, p);
        let r = rs[idx % rs.len()];
        let arg = ped2_argument(p, r, alpha, n, case).unwrap();
        let lhs = BigInt::from(4) * arg + 1;
        let rhs = BigInt::from(p).pow(exp) * (BigInt::from(4) * p * n + r);
        prop_assert_eq!(lhs, rhs);
    }
}

/// Independent oracle: expand `(q^a;q^a)^e` by multiplying dense binomials
/// and schoolbook inversion, no pentagonal shortcut.
fn naive_euler(a: usize, e: i32, order: usize) -> Vec<BigInt> {
    let mut base = vec![BigInt::ZERO; order + 1];
    base[0] = BigInt::from(1);
    let mut m = 1usize;
    while a * m <= order {
        for i in (a * m..=order).rev() {
            let v = base[i - a * m].clone();
            base[i] -= v;
        }
        m += 1;
    }
    let positive = dense_pow(&base, e.unsigned_abs() as usize, order);
    if e > 0 {
        positive
    } else {
        dense_inverse(&positive, order)
    }
}

fn dense_mul(a: &[BigInt], b: &[BigInt], order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::ZERO; order + 1];
    for i in 0..=order {
        if a[i] == BigInt::ZERO {
            continue;
        }
        for j in 0..=order - i {
            if b[j] != BigInt::ZERO {
                out[i + j] += &a[i] * &b[j];
            }
        }
    }
    out
}

fn dense_pow(a: &[BigInt], e: usize, order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::ZERO; order + 1];
    out[0] = BigInt::from(1);
    for _ in 0..e {
        out = dense_mul(&out, a, order);
    }
    out
}

fn dense_inverse(a: &[BigInt], order: usize) -> Vec<BigInt> {
    assert_eq!(a[0], BigInt::from(1));
    let mut inv = vec![BigInt::ZERO; order + 1];
    inv[0] = BigInt::from(1);
    for n in 1..=order {
        let mut acc = BigInt::ZERO;
        for i in 1..=n {
            if a[i] != BigInt::ZERO {
                acc += &a[i] * &inv[n - i];
            }
        }
        inv[n] = -acc;
    }
    inv
}
