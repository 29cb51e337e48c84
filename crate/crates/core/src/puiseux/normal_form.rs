use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{PuiseuxError, PuiseuxFamily};
use crate::exactnum::BigRational;

/// `q = n₀ + Σ nᵢ/pᵢ` with `0 ≤ nᵢ < pᵢ`; `digits` maps 1-based `i` to the
/// nonzero `nᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum NormalForm {
    #[serde(rename_all = "camelCase")]
    Member {
        #[serde(with = "crate::serde_util::int")]
        n0: BigInt,
        digits: BTreeMap<usize, u64>,
        primes: Vec<u64>,
    },
    NotMember {
        reason: String,
    },
}

impl NormalForm {
    /// `n₀ + Σ nᵢ/pᵢ`.
    pub fn value(&self) -> Option<BigRational> {
        match self {
            NormalForm::Member { n0, digits, primes } => Some(
                digits
                    .iter()
                    .map(|(&i, &d)| BigRational::new(d.into(), primes[i - 1].into()))
                    .fold(BigRational::from_integer(n0.clone()), |a, b| a + b),
            ),
            NormalForm::NotMember { .. } => None,
        }
    }
}

/// Digit extraction in `⟨1/p₁, 1/p₂, …⟩` for a sparse prime family.
///
/// Each `pᵢ` dividing the reduced denominator of `q` fixes `nᵢ` modulo `pᵢ`;
/// the remainder must be a nonnegative integer. The family primes are
/// extended until they exceed the denominator.
pub fn normal_form_p(family: &PuiseuxFamily, q: &BigRational) -> Result<NormalForm, PuiseuxError> {
    let PuiseuxFamily::SparsePrimes { .. } = family else {
        return Err(PuiseuxError::Unsupported(family.to_string()));
    };
    family.validate()?;
    if q.is_negative() {
        return Ok(NormalForm::NotMember {
            reason: "negative".into(),
        });
    }
    let mut rest = q.denom().clone();
    let mut primes = Vec::new();
    let mut digits = BTreeMap::new();
    let mut count = 0;
    while !rest.is_one() {
        count += 1;
        let p = *family.primes(count)?.last().expect("count ≥ 1");
        primes.push(p);
        let pb = BigInt::from(p);
        if pb > rest {
            return Ok(NormalForm::NotMember {
                reason: format!("denominator factor {rest} is not a product of family primes"),
            });
        }
        let (quot, rem) = rest.div_rem(&pb);
        if !rem.is_zero() {
            continue;
        }
        if (&quot % &pb).is_zero() {
            return Ok(NormalForm::NotMember {
                reason: format!("{p}^2 divides the denominator"),
            });
        }
        rest = quot;
        // q·p = a/d' with d = p·d'; the digit is a·d'^{-1} mod p
        let d_rest = q.denom() / &pb;
        let inv = d_rest.mod_floor(&pb).modpow(&(&pb - 2u32), &pb);
        let digit = (q.numer() * inv).mod_floor(&pb);
        digits.insert(count, digit.to_u64().expect("below p"));
    }
    // keep the truncation honest: the reciprocal sum over the primes used stays below 1/3
    let sum: BigRational = primes
        .iter()
        .map(|&p| BigRational::new(1.into(), p.into()))
        .sum();
    if sum >= BigRational::new(1.into(), 3.into()) {
        return Err(PuiseuxError::ReciprocalSumTooLarge(primes.len()));
    }
    let frac: BigRational = digits
        .iter()
        .map(|(&i, &d)| BigRational::new(d.into(), primes[i - 1].into()))
        .sum();
    let n0 = q - frac;
    debug_assert!(n0.is_integer());
    let n0 = n0.to_integer();
    if n0.is_negative() {
        return Ok(NormalForm::NotMember {
            reason: format!("integer part {n0} is negative"),
        });
    }
    Ok(NormalForm::Member { n0, digits, primes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn fam() -> PuiseuxFamily {
        PuiseuxFamily::sparse_default()
    }

    #[test]
    fn examples() {
        let nf = normal_form_p(&fam(), &(rat(1, 7) + rat(1, 29))).unwrap();
        match &nf {
            NormalForm::Member { n0, digits, .. } => {
                assert!(n0.is_zero());
                assert_eq!(*digits, BTreeMap::from([(1, 1), (2, 1)]));
            }
            _ => panic!("{nf:?}"),
        }
        let nf = normal_form_p(&fam(), &rat(3, 1)).unwrap();
        assert_eq!(
            nf,
            NormalForm::Member {
                n0: 3.into(),
                digits: BTreeMap::new(),
                primes: vec![]
            }
        );
        assert!(matches!(
            normal_form_p(&fam(), &rat(1, 2)).unwrap(),
            NormalForm::NotMember { .. }
        ));
    }

    #[test]
    fn negative_integer_part() {
        // digits 6 and 28 leave n₀ = −1
        let q = rat(6, 7) + rat(28, 29) - rat(1, 1);
        assert!(matches!(
            normal_form_p(&fam(), &q).unwrap(),
            NormalForm::NotMember { .. }
        ));
        assert!(matches!(
            normal_form_p(&fam(), &rat(1, 49)).unwrap(),
            NormalForm::NotMember { .. }
        ));
    }

    #[test]
    fn roundtrip() {
        let q = rat(5, 1) + rat(3, 7) + rat(100, 127);
        let nf = normal_form_p(&fam(), &q).unwrap();
        assert_eq!(nf.value().unwrap(), q);
    }
}
