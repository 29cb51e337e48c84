use accp_core::algebra::{frobenius_root, AlgebraElem, ExponentGroup};
use accp_core::exactnum::BigRational;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn elem(p: u64, terms: Vec<(i64, i64, i64)>) -> AlgebraElem {
    AlgebraElem::from_terms(
        p,
        terms
            .into_iter()
            .map(|(n, d, c)| (BigRational::new(n.into(), d.into()), c)),
    )
    .unwrap()
}

fn terms() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    prop::collection::vec((-12i64..12, 1i64..5, 0i64..5), 0..5)
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(p in prime(), a in terms(), b in terms(), c in terms()) {
        let (f, g, h) = (elem(p, a), elem(p, b), elem(p, c));
        prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
        prop_assert_eq!(f.add(&g).unwrap().add(&h).unwrap(), f.add(&g.add(&h).unwrap()).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
        prop_assert_eq!(f.mul(&g.add(&h).unwrap()).unwrap(), f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap());
        prop_assert!(f.sub(&f).unwrap().is_zero());
        prop_assert_eq!(f.mul(&AlgebraElem::one(p).unwrap()).unwrap(), f.clone());
    }

    #[test]
    fn degree_and_order_add(p in prime(), a in terms(), b in terms()) {
        let (f, g) = (elem(p, a), elem(p, b));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let fg = f.mul(&g).unwrap();
        prop_assert_eq!(fg.deg().unwrap(), &(f.deg().unwrap() + g.deg().unwrap()));
        prop_assert_eq!(fg.ord().unwrap(), &(f.ord().unwrap() + g.ord().unwrap()));
    }

    #[test]
    fn text_roundtrip(p in prime(), a in terms()) {
        let f = elem(p, a);
        prop_assert_eq!(AlgebraElem::parse(&f.to_string(), p).unwrap(), f);
    }
}

/// Exponents `n/p^j` lie in `ℤ[1/p]`, so every such `f` has a root.
#[test]
fn frobenius_roots_on_two_hundred_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for i in 0..200 {
        let p = [2u64, 3, 5][i % 3];
        let group = ExponentGroup::Localization { m: BigInt::from(p) };
        let n_terms = rng.gen_range(1..6);
        let terms: Vec<(BigRational, i64)> = (0..n_terms)
            .map(|_| {
                let den = BigInt::from(p).pow(rng.gen_range(0..4));
                (
                    BigRational::new(rng.gen_range(-30i64..30).into(), den),
                    rng.gen_range(1..p as i64),
                )
            })
            .collect();
        let f = AlgebraElem::from_terms(p, terms).unwrap();
        let c = frobenius_root(&f, &group).unwrap();
        // independent re-multiplication, p factors
        let mut power = AlgebraElem::one(p).unwrap();
        for _ in 0..p {
            power = power.mul(&c.root).unwrap();
        }
        assert_eq!(power, f);
        assert!(c.verified);
        assert_eq!(c.root.terms().len(), f.terms().len());
    }
}
