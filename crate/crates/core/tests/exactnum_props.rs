//! Exact signs against an independent 64-digit interval evaluation.

use std::cmp::Ordering;

use accp_core::exactnum::{cmp_sqrt3, quad_sign, sqrt2_convergents, BigRational, QuadRat};
use num_bigint::{BigInt, Sign};
use num_traits::{One, Pow, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DIGITS: u32 = 64;

/// `⌊√n · 10^DIGITS⌋`, so `√n ∈ [r, r+1] / 10^DIGITS`.
fn root_floor(n: u32) -> BigInt {
    (BigInt::from(n) * BigInt::from(10).pow(2 * DIGITS)).sqrt()
}

/// Integer interval `[lo, hi]` containing `c·√n·10^DIGITS`.
fn scaled_root(c: &BigInt, r: &BigInt) -> (BigInt, BigInt) {
    let a = c * r;
    let b = c * (r + 1);
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// `Some(sign)` when the interval excludes zero.
fn interval_sign(lo: &BigInt, hi: &BigInt) -> Option<Ordering> {
    if lo.sign() == Sign::Plus {
        Some(Ordering::Greater)
    } else if hi.sign() == Sign::Minus {
        Some(Ordering::Less)
    } else {
        None
    }
}

/// Sign of `a + b√2 − k√3` with all terms brought over the common
/// denominator `da·db·dk`.
fn oracle(x: &QuadRat, k: &BigRational) -> Option<Ordering> {
    if x.is_zero() && k.is_zero() {
        return Some(Ordering::Equal);
    }
    let (s2, s3) = (root_floor(2), root_floor(3));
    let scale = BigInt::from(10).pow(DIGITS);
    let (da, db, dk) = (x.a.denom(), x.b.denom(), k.denom());
    let a = x.a.numer() * db * dk * &scale;
    let b = x.b.numer() * da * dk;
    let c = -(k.numer() * da * db);
    let (blo, bhi) = scaled_root(&b, &s2);
    let (clo, chi) = scaled_root(&c, &s3);
    interval_sign(&(&a + blo + clo), &(&a + bhi + chi))
}

fn random_rational(rng: &mut ChaCha8Rng, num_bits: u32) -> BigRational {
    let n: BigInt = BigInt::from(rng.gen_range(0..=(1u128 << num_bits.min(100))))
        * if rng.gen_bool(0.5) { 1 } else { -1 };
    let d: BigInt = BigInt::from(rng.gen_range(1u64..=1_000_000));
    BigRational::new(n, d)
}

/// Half the inputs are near-cancelling `±(p − q√2)·t` built from convergents.
fn random_quad(rng: &mut ChaCha8Rng, convergents: &[(BigInt, BigInt)]) -> QuadRat {
    if rng.gen_bool(0.5) {
        let (p, q) = &convergents[rng.gen_range(0..convergents.len())];
        let t = BigRational::new(
            rng.gen_range(1i64..1000).into(),
            rng.gen_range(1i64..1000).into(),
        );
        let sgn = if rng.gen_bool(0.5) {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        QuadRat::new(
            BigRational::from_integer(p * &sgn) * &t,
            BigRational::from_integer(-(q * &sgn)) * &t,
        )
    } else {
        QuadRat::new(random_rational(rng, 67), random_rational(rng, 67))
    }
}

fn convergent_pairs() -> Vec<(BigInt, BigInt)> {
    sqrt2_convergents(30)
        .into_iter()
        .map(|c| (c.p, c.q))
        .collect()
}

#[test]
fn quad_sign_matches_interval_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let conv = convergent_pairs();
    let mut undecided = 0;
    for _ in 0..10_000 {
        let x = random_quad(&mut rng, &conv);
        match oracle(&x, &BigRational::zero()) {
            Some(s) => assert_eq!(quad_sign(&x), s, "{x}"),
            None => undecided += 1,
        }
    }
    assert_eq!(undecided, 0);
}

#[test]
fn cmp_sqrt3_matches_interval_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let conv = convergent_pairs();
    let mut undecided = 0;
    for i in 0..10_000 {
        let x = random_quad(&mut rng, &conv);
        // every fourth k is close to x/√3
        let k = if i % 4 == 0 {
            let approx = x.to_decimal(30).parse::<f64>().unwrap_or(0.0) / 3f64.sqrt();
            BigRational::from_float(approx).unwrap_or_else(BigRational::zero)
        } else {
            random_rational(&mut rng, 40)
        };
        let got = cmp_sqrt3(&x, &k);
        if !(x.is_zero() && k.is_zero()) {
            assert_ne!(got, Ordering::Equal, "{x} vs {k}·√3");
        }
        match oracle(&x, &k) {
            Some(s) => assert_eq!(got, s, "{x} vs {k}·√3"),
            None => undecided += 1,
        }
    }
    assert_eq!(undecided, 0);
}

#[test]
fn convergent_errors_shrink_and_determinants_are_units() {
    let cs = sqrt2_convergents(40);
    for w in cs.windows(2) {
        assert!(w[0].error().abs() > w[1].error().abs());
        let det = &w[0].p * &w[1].q - &w[1].p * &w[0].q;
        assert!(det.abs().is_one());
    }
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-10_000i64..10_000, 1i64..1000).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn quad() -> impl Strategy<Value = QuadRat> {
    (small_rational(), small_rational()).prop_map(|(a, b)| QuadRat::new(a, b))
}

proptest! {
    #[test]
    fn field_axioms(x in quad(), y in quad(), z in quad()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inv().unwrap(), QuadRat::one());
        }
    }

    #[test]
    fn rationals_stay_reduced(a in small_rational(), b in small_rational(), c in small_rational()) {
        use num_integer::Integer;
        for r in [&a + &b, &a * &b, (&a - &c) * &b] {
            prop_assert!(r.numer().gcd(r.denom()).is_one());
            prop_assert!(r.denom().is_positive());
        }
    }

    #[test]
    fn order_is_translation_invariant(x in quad(), y in quad(), z in quad()) {
        prop_assert_eq!(x.cmp(&y), (&x + &z).cmp(&(&y + &z)));
        prop_assert_eq!(x.cmp(&y), quad_sign(&(&x - &y)));
    }
}
