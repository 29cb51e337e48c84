use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{generators, CertTerm, PuiseuxError, PuiseuxFamily, RationalCertificate};
use crate::exactnum::BigRational;
use crate::primes::first_primes;
use crate::report::{all_passed, Check};

/// `b_n − b_{n+1}` written over the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalChainStep {
    pub index: usize,
    #[serde(with = "crate::serde_util::rational")]
    pub witness: BigRational,
    pub certificate: RationalCertificate,
}

/// A strictly ascending chain of principal ideals `b₁ + M ⊊ b₂ + M ⊊ …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ChainCertificate {
    pub family: PuiseuxFamily,
    #[serde(with = "crate::serde_util::rational_vec")]
    pub ideals: Vec<BigRational>,
    pub ideal_certificates: Vec<RationalCertificate>,
    pub steps: Vec<RationalChainStep>,
    pub checks: Vec<Check>,
}

impl ChainCertificate {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

fn term(gens: &[BigRational], index: usize, count: &BigInt) -> Result<CertTerm, PuiseuxError> {
    Ok(CertTerm {
        index,
        generator: gens[index].clone(),
        count: count
            .to_u64()
            .ok_or_else(|| PuiseuxError::Unsupported("coefficient beyond 64 bits".into()))?,
    })
}

/// Ideals `b_1 … b_N` with exact step identities:
///
/// * Grams: `b_n = 1/2ⁿ = p_{n+1}·(1/(2ⁿp_{n+1}))`, step `p_{n+2}·(1/(2^{n+1}p_{n+2}))`;
/// * PrimeGap: `b_n = 1/p_n + 1/p_{n+1}`, step `(p_{n+2} − p_n)·(1/(p_n p_{n+2}))`;
/// * Geometric `q = a/b`: `b_n = a·qⁿ`, step `(b − a)·q^{n+1}`.
pub fn chain_certificate(
    family: &PuiseuxFamily,
    n: usize,
) -> Result<ChainCertificate, PuiseuxError> {
    if n < 2 {
        return Err(PuiseuxError::TooFewGenerators { min: 2, got: n });
    }
    // ideal b_k (1-based k) and step k use generators up to index k+1 (0-based)
    let gens = generators(family, n + 2)?;
    let big = |x: u64| BigInt::from(x);
    let (ideal_terms, step_terms): (Vec<Vec<CertTerm>>, Vec<Vec<CertTerm>>) = match family {
        PuiseuxFamily::Grams => {
            // 1-based odd prime p_k is primes[k-1]
            let p = family.primes(n + 2)?;
            let ideals = (1..=n)
                .map(|k| Ok(vec![term(&gens, k, &big(p[k]))?]))
                .collect::<Result<_, PuiseuxError>>()?;
            let steps = (1..n)
                .map(|k| Ok(vec![term(&gens, k + 1, &big(p[k + 1]))?]))
                .collect::<Result<_, PuiseuxError>>()?;
            (ideals, steps)
        }
        PuiseuxFamily::PrimeGap => {
            let p = first_primes(n + 4);
            let ideals = (1..=n)
                .map(|k| {
                    Ok(vec![
                        term(&gens, k - 1, &big(p[k + 1]))?,
                        term(&gens, k, &big(p[k + 2]))?,
                    ])
                })
                .collect::<Result<_, PuiseuxError>>()?;
            let steps = (1..n)
                .map(|k| Ok(vec![term(&gens, k - 1, &big(p[k + 1] - p[k - 1]))?]))
                .collect::<Result<_, PuiseuxError>>()?;
            (ideals, steps)
        }
        PuiseuxFamily::Geometric { q } => {
            let (a, b) = (q.numer().clone(), q.denom().clone());
            let ideals = (1..=n)
                .map(|k| Ok(vec![term(&gens, k, &a)?]))
                .collect::<Result<_, PuiseuxError>>()?;
            let steps = (1..n)
                .map(|k| Ok(vec![term(&gens, k + 1, &(&b - &a))?]))
                .collect::<Result<_, PuiseuxError>>()?;
            (ideals, steps)
        }
        other => return Err(PuiseuxError::Unsupported(other.to_string())),
    };

    let value = |terms: &[CertTerm]| -> BigRational {
        terms
            .iter()
            .map(|t| &t.generator * BigRational::from_integer(t.count.into()))
            .sum()
    };
    let ideals: Vec<BigRational> = ideal_terms.iter().map(|t| value(t)).collect();
    let ideal_certificates = ideal_terms
        .into_iter()
        .zip(&ideals)
        .map(|(t, b)| RationalCertificate::new(b.clone(), t))
        .collect::<Result<Vec<_>, _>>()?;
    let steps = step_terms
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            let witness = value(&t);
            Ok(RationalChainStep {
                index: i + 1,
                certificate: RationalCertificate::new(witness.clone(), t)?,
                witness,
            })
        })
        .collect::<Result<Vec<_>, PuiseuxError>>()?;

    let mut checks = vec![
        Check::new(
            "b[n] - b[n+1] equals the witness",
            steps
                .iter()
                .all(|s| ideals[s.index - 1].clone() - &ideals[s.index] == s.witness),
        ),
        Check::new(
            "every witness is positive",
            steps.iter().all(|s| s.witness.is_positive()),
        ),
        Check::new(
            "certificates re-sum",
            ideal_certificates.iter().all(RationalCertificate::verify)
                && steps.iter().all(|s| s.certificate.verify()),
        ),
    ];
    if let PuiseuxFamily::Grams = family {
        let halves = ideals
            .iter()
            .enumerate()
            .all(|(i, b)| *b == BigRational::new(1.into(), BigInt::from(1) << (i + 1)));
        checks.push(Check::new("b[n] = 1/2^n", halves));
    }
    Ok(ChainCertificate {
        family: family.clone(),
        ideals,
        ideal_certificates,
        steps,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn grams_identity() {
        let c = chain_certificate(&PuiseuxFamily::Grams, 3).unwrap();
        assert_eq!(c.ideals, vec![rat(1, 2), rat(1, 4), rat(1, 8)]);
        let s = &c.steps[0];
        assert_eq!(s.witness, rat(1, 4));
        assert_eq!(s.certificate.terms[0].generator, rat(1, 28));
        assert_eq!(s.certificate.terms[0].count, 7);
        assert!(c.passed());
    }

    #[test]
    fn prime_gap_identity() {
        let c = chain_certificate(&PuiseuxFamily::PrimeGap, 3).unwrap();
        assert_eq!(c.ideals[0], rat(1, 2) + rat(1, 3));
        assert_eq!(c.ideals[1], rat(1, 3) + rat(1, 5));
        let s = &c.steps[0];
        assert_eq!(s.witness, rat(3, 10));
        assert_eq!(
            (
                s.certificate.terms[0].generator.clone(),
                s.certificate.terms[0].count
            ),
            (rat(1, 10), 3)
        );
        assert!(c.passed());
    }

    #[test]
    fn geometric_identity() {
        let f = PuiseuxFamily::geometric(rat(2, 3)).unwrap();
        let c = chain_certificate(&f, 3).unwrap();
        assert_eq!(c.ideals[0], rat(4, 3));
        assert_eq!(c.steps[0].witness, rat(4, 9));
        assert_eq!(c.steps[0].certificate.terms[0].count, 1);
        assert!(c.passed());
    }

    #[test]
    fn unsupported_and_short() {
        assert!(chain_certificate(&PuiseuxFamily::ReciprocalPrimes, 3).is_err());
        assert!(chain_certificate(&PuiseuxFamily::Grams, 1).is_err());
    }
}
