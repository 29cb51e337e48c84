use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{PuiseuxError, PuiseuxFamily};
use crate::exactnum::{rat_int, BigRational, QuadRat};

/// An irrational `β > 1` in ℚ(√2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Beta(QuadRat);

impl Beta {
    pub fn new(value: QuadRat) -> Result<Self, PuiseuxError> {
        if value.is_rational() || value <= QuadRat::one() {
            return Err(PuiseuxError::BadBeta);
        }
        Ok(Beta(value))
    }

    pub fn value(&self) -> &QuadRat {
        &self.0
    }
}

impl Default for Beta {
    /// `β = √2`.
    fn default() -> Self {
        Beta(QuadRat::sqrt2())
    }
}

impl TryFrom<String> for Beta {
    type Error = PuiseuxError;
    fn try_from(s: String) -> Result<Self, PuiseuxError> {
        Beta::new(s.parse().map_err(|_| PuiseuxError::BadBeta)?)
    }
}

impl From<Beta> for String {
    fn from(b: Beta) -> String {
        b.0.to_string()
    }
}

impl fmt::Display for Beta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `k·β + q`. Since `β` is irrational the pair `(k, q)` is determined by the
/// value; ordering compares values exactly.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BetaElem {
    pub k: u64,
    #[serde(with = "crate::serde_util::rational")]
    pub q: BigRational,
    pub beta: Beta,
}

impl BetaElem {
    pub fn new(k: u64, q: BigRational, beta: Beta) -> Self {
        BetaElem { k, q, beta }
    }

    pub fn zero(beta: Beta) -> Self {
        BetaElem::new(0, BigRational::zero(), beta)
    }

    pub fn value(&self) -> QuadRat {
        &self.beta.0.scale(&rat_int(self.k)) + &QuadRat::rational(self.q.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.k == 0 && self.q.is_zero()
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        self.value().to_decimal(digits)
    }
}

impl PartialEq for BetaElem {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for BetaElem {}

impl Ord for BetaElem {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.beta == other.beta {
            // with a common irrational β equal values force equal pairs
            if self.k == other.k {
                return self.q.cmp(&other.q);
            }
        }
        self.value().cmp(&other.value())
    }
}

impl PartialOrd for BetaElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &BetaElem {
    type Output = BetaElem;
    fn add(self, rhs: &BetaElem) -> BetaElem {
        assert_eq!(self.beta, rhs.beta, "adding elements over different beta");
        BetaElem::new(self.k + rhs.k, &self.q + &rhs.q, self.beta.clone())
    }
}

impl fmt::Display for BetaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.q.is_zero()) {
            (0, _) => write!(f, "{}", self.q),
            (k, true) => write!(f, "{k}*beta"),
            (k, false) if self.q.is_negative() => write!(f, "{k}*beta - {}", -&self.q),
            (k, false) => write!(f, "{k}*beta + {}", self.q),
        }
    }
}

/// Which index tuples generate the set `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BetaTupleMode {
    /// Tuples `(1, 2, …, ℓ)` only.
    Prefixes,
    /// Every nonempty subset of `{1, …, N}`.
    AllSubsets,
}

/// Truncated generating set `A ∪ B` of the rank-2 monoid inside `ℕ₀β + ℚ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BetaMonoidTruncation {
    pub beta: Beta,
    pub primes: Vec<u64>,
    pub mode: BetaTupleMode,
    /// Sums of distinct `1/p_j` with exactly one summand doubled.
    pub a: Vec<BetaElem>,
    /// `β` and `β − Σ_{i ≤ ℓ} 1/p_i`.
    pub b: Vec<BetaElem>,
    /// Rank of the generated group, computed from the `(k, q)` coordinates.
    pub rank: usize,
}

const MAX_SUBSET_N: usize = 16;

pub fn beta_generators(
    family: &PuiseuxFamily,
    beta: &Beta,
    n: usize,
    mode: BetaTupleMode,
) -> Result<BetaMonoidTruncation, PuiseuxError> {
    let PuiseuxFamily::SparsePrimes { .. } = family else {
        return Err(PuiseuxError::Unsupported(family.to_string()));
    };
    if n == 0 {
        return Err(PuiseuxError::TooFewGenerators { min: 1, got: 0 });
    }
    // generators() also enforces the reciprocal-sum bound
    let recips = super::generators(family, n)?;
    let primes = family.primes(n)?;
    let elem = |k: u64, q: BigRational| BetaElem::new(k, q, beta.clone());

    let tuples: Vec<Vec<usize>> = match mode {
        BetaTupleMode::Prefixes => (1..=n).map(|l| (0..l).collect()).collect(),
        BetaTupleMode::AllSubsets => {
            if n > MAX_SUBSET_N {
                return Err(PuiseuxError::Budget(1 << MAX_SUBSET_N));
            }
            (1u32..(1 << n))
                .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
                .collect()
        }
    };
    let mut a = Vec::new();
    for t in &tuples {
        let sum: BigRational = t.iter().map(|&i| recips[i].clone()).sum();
        for &k in t {
            a.push(elem(0, &sum + &recips[k]));
        }
    }
    let mut b = vec![elem(1, BigRational::zero())];
    let mut partial = BigRational::zero();
    for r in &recips {
        partial += r;
        b.push(elem(1, -partial.clone()));
    }

    let coords: Vec<(BigRational, BigRational)> = a
        .iter()
        .chain(&b)
        .map(|e| (rat_int(e.k), e.q.clone()))
        .collect();
    let rank = if coords.iter().all(|(k, q)| k.is_zero() && q.is_zero()) {
        0
    } else if coords
        .iter()
        .all(|(k, q)| coords.iter().all(|(k2, q2)| (k * q2 - q * k2).is_zero()))
    {
        1
    } else {
        2
    };
    Ok(BetaMonoidTruncation {
        beta: beta.clone(),
        primes,
        mode,
        a,
        b,
        rank,
    })
}

impl BetaMonoidTruncation {
    /// All generators are positive reals, so the monoid is reduced.
    pub fn all_positive(&self) -> bool {
        self.a
            .iter()
            .chain(&self.b)
            .all(|e| e.value().sign().is_gt())
    }
}
