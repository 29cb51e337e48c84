//! Puiseux monoids: submonoids of `(ℚ≥0, +)` given by closed-form generator
//! families.
//!
//! The families are infinitely generated, so every search here runs over the
//! first `N` generators. Membership in such a truncation is decided exactly
//! by clearing denominators and solving a bounded knapsack.

mod beta;
mod chain;
mod normal_form;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exactnum::{rat_int, BigRational};
use crate::primes::{first_primes, next_prime_after};

pub use beta::{beta_generators, Beta, BetaElem, BetaMonoidTruncation, BetaTupleMode};
pub use chain::{chain_certificate, ChainCertificate, RationalChainStep};
pub use normal_form::{normal_form_p, NormalForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PuiseuxError {
    #[error("need at least {min} generators, got {got}")]
    TooFewGenerators { min: usize, got: usize },
    #[error("geometric ratio must satisfy 0 < q < 1 with 1/q not an integer, got {0}")]
    BadRatio(BigRational),
    #[error("custom generators must be positive and distinct")]
    BadCustom,
    #[error("custom family has only {0} generators")]
    CustomExhausted(usize),
    #[error("sparse prime base must be at least 2")]
    BadBase,
    #[error("prime {0} is out of range")]
    PrimeOverflow(String),
    #[error("reciprocal sum of the first {0} family primes is not below 1/3")]
    ReciprocalSumTooLarge(usize),
    #[error("target must be nonnegative")]
    NegativeTarget,
    #[error("{0} is not supported for this operation")]
    Unsupported(String),
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("beta must be an irrational element of Q(sqrt2) greater than 1")]
    BadBeta,
    #[error("search exceeded {0} states")]
    Budget(usize),
    #[error("certificate does not sum to its target")]
    CertificateMismatch,
}

/// Generator families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PuiseuxFamily {
    /// `1/(2^{n−1}·p_n)`, `p_n` the n-th odd prime, `n ≥ 1`.
    Grams,
    /// `1/(p_n·p_{n+2})` over all primes, `n ≥ 1`.
    PrimeGap,
    /// `qⁿ`, `n ≥ 0`.
    Geometric {
        #[serde(with = "crate::serde_util::rational")]
        q: BigRational,
    },
    /// `1/p` over all primes.
    ReciprocalPrimes,
    /// `1/p_n` with `p_n` the least prime above `baseⁿ`.
    SparsePrimes { base: u64 },
    Custom {
        #[serde(with = "crate::serde_util::rational_vec")]
        generators: Vec<BigRational>,
    },
}

impl PuiseuxFamily {
    pub fn geometric(q: BigRational) -> Result<Self, PuiseuxError> {
        let f = PuiseuxFamily::Geometric { q };
        f.validate()?;
        Ok(f)
    }

    pub fn sparse_default() -> Self {
        PuiseuxFamily::SparsePrimes { base: 5 }
    }

    pub fn validate(&self) -> Result<(), PuiseuxError> {
        match self {
            PuiseuxFamily::Geometric { q } => {
                if !q.is_positive() || *q >= BigRational::one() || q.numer().is_one() {
                    return Err(PuiseuxError::BadRatio(q.clone()));
                }
            }
            PuiseuxFamily::SparsePrimes { base } if *base < 2 => return Err(PuiseuxError::BadBase),
            PuiseuxFamily::Custom { generators } => {
                let distinct: BTreeSet<&BigRational> = generators.iter().collect();
                if generators.iter().any(|g| !g.is_positive()) || distinct.len() != generators.len()
                {
                    return Err(PuiseuxError::BadCustom);
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// The prime sequence underlying the family, where there is one.
    pub fn primes(&self, count: usize) -> Result<Vec<u64>, PuiseuxError> {
        match self {
            PuiseuxFamily::Grams => Ok(first_primes(count + 1)[1..].to_vec()),
            PuiseuxFamily::PrimeGap | PuiseuxFamily::ReciprocalPrimes => Ok(first_primes(count)),
            PuiseuxFamily::SparsePrimes { base } => (1..=count as u32)
                .map(|n| {
                    base.checked_pow(n)
                        .filter(|b| *b < u64::MAX / 2)
                        .map(next_prime_after)
                        .ok_or_else(|| PuiseuxError::PrimeOverflow(format!("{base}^{n}")))
                })
                .collect(),
            other => Err(PuiseuxError::Unsupported(other.to_string())),
        }
    }

    /// Closed-form description of the atom set, for families where it is known.
    pub fn closed_form_atoms(&self) -> Option<&'static str> {
        match self {
            PuiseuxFamily::Grams => Some("{ 1/(2^(n-1) p_n) : n >= 1 }, p_n the n-th odd prime"),
            PuiseuxFamily::PrimeGap => Some("{ 1/(p_n p_(n+2)) : n >= 1 }, p_n the n-th prime"),
            PuiseuxFamily::Geometric { .. } => Some("{ q^n : n >= 0 }"),
            PuiseuxFamily::ReciprocalPrimes => Some("{ 1/p : p prime }"),
            PuiseuxFamily::SparsePrimes { .. } => Some("{ 1/p_n : n >= 1 }"),
            PuiseuxFamily::Custom { .. } => None,
        }
    }
}

impl fmt::Display for PuiseuxFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PuiseuxFamily::Grams => write!(f, "grams"),
            PuiseuxFamily::PrimeGap => write!(f, "prime-gap"),
            PuiseuxFamily::Geometric { q } => write!(f, "geometric:{q}"),
            PuiseuxFamily::ReciprocalPrimes => write!(f, "reciprocal-primes"),
            PuiseuxFamily::SparsePrimes { base } => write!(f, "sparse-primes:{base}"),
            PuiseuxFamily::Custom { generators } => {
                write!(f, "custom:")?;
                for (i, g) in generators.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for PuiseuxFamily {
    type Err = PuiseuxError;

    /// `grams`, `prime-gap`, `geometric:2/3`, `reciprocal-primes`,
    /// `sparse-primes[:base]`, `custom:1/2,1/3`.
    fn from_str(s: &str) -> Result<Self, PuiseuxError> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (s.trim(), None),
        };
        let unknown = || PuiseuxError::UnknownFamily(s.to_string());
        let family = match (name, arg) {
            ("grams", None) => PuiseuxFamily::Grams,
            ("prime-gap", None) => PuiseuxFamily::PrimeGap,
            ("reciprocal-primes", None) => PuiseuxFamily::ReciprocalPrimes,
            ("geometric", Some(q)) => PuiseuxFamily::Geometric {
                q: q.parse().map_err(|_| unknown())?,
            },
            ("sparse-primes", None) => PuiseuxFamily::sparse_default(),
            ("sparse-primes", Some(b)) => PuiseuxFamily::SparsePrimes {
                base: b.parse().map_err(|_| unknown())?,
            },
            ("custom", Some(list)) => PuiseuxFamily::Custom {
                generators: list
                    .split(',')
                    .map(|g| g.trim().parse().map_err(|_| unknown()))
                    .collect::<Result<_, _>>()?,
            },
            _ => return Err(unknown()),
        };
        family.validate()?;
        Ok(family)
    }
}

fn unit_fraction(d: BigInt) -> BigRational {
    BigRational::new(BigInt::one(), d)
}

/// The first `n` generators in canonical order.
pub fn generators(family: &PuiseuxFamily, n: usize) -> Result<Vec<BigRational>, PuiseuxError> {
    family.validate()?;
    if n == 0 {
        return Err(PuiseuxError::TooFewGenerators { min: 1, got: 0 });
    }
    Ok(match family {
        PuiseuxFamily::Grams => family
            .primes(n)?
            .into_iter()
            .enumerate()
            .map(|(i, p)| unit_fraction((BigInt::one() << i) * p))
            .collect(),
        PuiseuxFamily::PrimeGap => {
            let p = first_primes(n + 2);
            (0..n)
                .map(|i| unit_fraction(BigInt::from(p[i]) * p[i + 2]))
                .collect()
        }
        PuiseuxFamily::Geometric { q } => {
            let mut out = Vec::with_capacity(n);
            let mut x = BigRational::one();
            for _ in 0..n {
                out.push(x.clone());
                x *= q;
            }
            out
        }
        PuiseuxFamily::ReciprocalPrimes => first_primes(n)
            .into_iter()
            .map(|p| unit_fraction(p.into()))
            .collect(),
        PuiseuxFamily::SparsePrimes { .. } => {
            let primes = family.primes(n)?;
            let sum: BigRational = primes.iter().map(|&p| unit_fraction(p.into())).sum();
            if sum >= BigRational::new(1.into(), 3.into()) {
                return Err(PuiseuxError::ReciprocalSumTooLarge(n));
            }
            primes
                .into_iter()
                .map(|p| unit_fraction(p.into()))
                .collect()
        }
        PuiseuxFamily::Custom { generators } => {
            if n > generators.len() {
                return Err(PuiseuxError::CustomExhausted(generators.len()));
            }
            generators[..n].to_vec()
        }
    })
}

/// One summand `count·generator` of a certificate; `index` is 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertTerm {
    pub index: usize,
    #[serde(with = "crate::serde_util::rational")]
    pub generator: BigRational,
    pub count: u64,
}

/// `target = Σ count·generator`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalCertificate {
    #[serde(with = "crate::serde_util::rational")]
    pub target: BigRational,
    pub terms: Vec<CertTerm>,
}

impl RationalCertificate {
    pub fn new(target: BigRational, terms: Vec<CertTerm>) -> Result<Self, PuiseuxError> {
        let c = RationalCertificate {
            target,
            terms: terms.into_iter().filter(|t| t.count > 0).collect(),
        };
        if c.verify() {
            Ok(c)
        } else {
            Err(PuiseuxError::CertificateMismatch)
        }
    }

    pub fn verify(&self) -> bool {
        let sum: BigRational = self
            .terms
            .iter()
            .map(|t| &t.generator * rat_int(t.count))
            .sum();
        sum == self.target
    }

    pub fn length(&self) -> u64 {
        self.terms.iter().map(|t| t.count).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum RationalMembership {
    Found {
        certificate: RationalCertificate,
    },
    /// Not in the submonoid generated by the first `generators` generators.
    NotFound {
        generators: usize,
    },
}

impl RationalMembership {
    pub fn certificate(&self) -> Option<&RationalCertificate> {
        match self {
            RationalMembership::Found { certificate } => Some(certificate),
            RationalMembership::NotFound { .. } => None,
        }
    }
}

/// Generators and target scaled by the lcm of all denominators.
struct Knapsack {
    weights: Vec<BigInt>,
    suffix_gcd: Vec<BigInt>,
}

impl Knapsack {
    fn new(gens: &[BigRational], target: &BigRational) -> (Self, BigInt) {
        let l = gens
            .iter()
            .chain(std::iter::once(target))
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scale = |x: &BigRational| (x * rat_int(l.clone())).to_integer();
        let weights: Vec<BigInt> = gens.iter().map(scale).collect();
        let mut suffix_gcd = vec![BigInt::zero(); weights.len() + 1];
        for i in (0..weights.len()).rev() {
            suffix_gcd[i] = suffix_gcd[i + 1].gcd(&weights[i]);
        }
        (
            Knapsack {
                weights,
                suffix_gcd,
            },
            scale(target),
        )
    }

    fn feasible(&self, level: usize, r: &BigInt) -> bool {
        let g = &self.suffix_gcd[level];
        if g.is_zero() {
            r.is_zero()
        } else {
            (r % g).is_zero()
        }
    }

    fn find(&self, level: usize, r: &BigInt, coeffs: &mut Vec<BigInt>) -> bool {
        if level == self.weights.len() {
            return r.is_zero();
        }
        if !self.feasible(level, r) {
            return false;
        }
        let w = &self.weights[level];
        let mut c = r / w;
        loop {
            coeffs[level] = c.clone();
            if self.find(level + 1, &(r - &c * w), coeffs) {
                return true;
            }
            if c.is_zero() {
                break;
            }
            c -= 1;
        }
        coeffs[level] = BigInt::zero();
        false
    }

    fn lengths(
        &self,
        level: usize,
        r: &BigInt,
        memo: &mut HashMap<(usize, BigInt), BTreeSet<u64>>,
        budget: usize,
    ) -> Result<BTreeSet<u64>, PuiseuxError> {
        if level == self.weights.len() {
            return Ok(if r.is_zero() {
                BTreeSet::from([0])
            } else {
                BTreeSet::new()
            });
        }
        if !self.feasible(level, r) {
            return Ok(BTreeSet::new());
        }
        if let Some(s) = memo.get(&(level, r.clone())) {
            return Ok(s.clone());
        }
        if memo.len() >= budget {
            return Err(PuiseuxError::Budget(budget));
        }
        let w = &self.weights[level];
        let cap = (r / w).to_u64().ok_or(PuiseuxError::Budget(budget))?;
        let mut out = BTreeSet::new();
        for c in 0..=cap {
            let rest = self.lengths(level + 1, &(r - w * c), memo, budget)?;
            out.extend(rest.into_iter().map(|l| l + c));
        }
        memo.insert((level, r.clone()), out.clone());
        Ok(out)
    }
}

fn certificate_from(
    gens: &[BigRational],
    target: &BigRational,
    coeffs: &[BigInt],
    indices: &[usize],
) -> Result<RationalCertificate, PuiseuxError> {
    let terms = coeffs
        .iter()
        .zip(indices)
        .filter(|(c, _)| c.is_positive())
        .map(|(c, &i)| {
            Ok(CertTerm {
                index: i,
                generator: gens[i].clone(),
                count: c.to_u64().ok_or(PuiseuxError::Budget(usize::MAX))?,
            })
        })
        .collect::<Result<Vec<_>, PuiseuxError>>()?;
    RationalCertificate::new(target.clone(), terms)
}

fn search_subset(
    gens: &[BigRational],
    indices: &[usize],
    target: &BigRational,
) -> Result<Option<RationalCertificate>, PuiseuxError> {
    if target.is_negative() {
        return Err(PuiseuxError::NegativeTarget);
    }
    let sub: Vec<BigRational> = indices.iter().map(|&i| gens[i].clone()).collect();
    let (ks, t) = Knapsack::new(&sub, target);
    let mut coeffs = vec![BigInt::zero(); sub.len()];
    if ks.find(0, &t, &mut coeffs) {
        Ok(Some(certificate_from(gens, target, &coeffs, indices)?))
    } else {
        Ok(None)
    }
}

/// Decides `q ∈ ⟨g₁, …, g_N⟩`. Each coefficient is at most `⌊q/gᵢ⌋`, so the
/// search is exhaustive.
pub fn member_truncated(
    family: &PuiseuxFamily,
    n: usize,
    q: &BigRational,
) -> Result<RationalMembership, PuiseuxError> {
    let gens = generators(family, n)?;
    let all: Vec<usize> = (0..n).collect();
    Ok(match search_subset(&gens, &all, q)? {
        Some(certificate) => RationalMembership::Found { certificate },
        None => RationalMembership::NotFound { generators: n },
    })
}

/// Default cap on memoized states in [`length_set`].
pub const LENGTH_SET_BUDGET: usize = 1_000_000;

/// Set of factorization lengths of `q` in an explicit finitely generated
/// Puiseux monoid, taken over all ℕ₀-combinations of `gens`.
pub fn length_set_of(gens: &[BigRational], q: &BigRational) -> Result<BTreeSet<u64>, PuiseuxError> {
    if q.is_negative() {
        return Err(PuiseuxError::NegativeTarget);
    }
    let (ks, t) = Knapsack::new(gens, q);
    ks.lengths(0, &t, &mut HashMap::new(), LENGTH_SET_BUDGET)
}

/// Length set of `q` in the truncation `⟨g₁, …, g_N⟩` of a family.
pub fn length_set(
    family: &PuiseuxFamily,
    n: usize,
    q: &BigRational,
) -> Result<BTreeSet<u64>, PuiseuxError> {
    length_set_of(&generators(family, n)?, q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AtomEntry {
    pub index: usize,
    #[serde(with = "crate::serde_util::rational")]
    pub generator: BigRational,
    pub is_atom: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<RationalCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AtomFamilyReport {
    pub family: PuiseuxFamily,
    /// Known atom set of the full monoid; absent for custom families.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<String>,
    /// Number of generators the spot check covers.
    pub truncation: usize,
    pub entries: Vec<AtomEntry>,
    /// Every checked generator is an atom of the truncated monoid.
    pub spot_check_passed: bool,
}

/// Known atom set plus an exact check that none of the first `n` generators
/// is a combination of the others among the first `n`.
pub fn atoms_family(family: &PuiseuxFamily, n: usize) -> Result<AtomFamilyReport, PuiseuxError> {
    let gens = generators(family, n)?;
    let entries = (0..n)
        .map(|i| {
            let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            let certificate = search_subset(&gens, &others, &gens[i])?;
            Ok(AtomEntry {
                index: i,
                generator: gens[i].clone(),
                is_atom: certificate.is_none(),
                certificate,
            })
        })
        .collect::<Result<Vec<_>, PuiseuxError>>()?;
    let spot_check_passed = entries.iter().all(|e| e.is_atom);
    Ok(AtomFamilyReport {
        family: family.clone(),
        closed_form: family.closed_form_atoms().map(str::to_string),
        truncation: n,
        entries,
        spot_check_passed,
    })
}
