use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{AlgebraElem, AlgebraError};
use crate::exactnum::BigRational;
use crate::groups::{classify_fg, classify_q_subgroup, FgGroupPresentation, QSubgroupDescriptor};
use crate::primes::{is_prime, primes_up_to};
use crate::puiseux::length_set_of;

/// Exponent group of a group algebra over `F_p`, as a subgroup of ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExponentGroup {
    Integers,
    /// `ℤ[1/m]`.
    Localization {
        #[serde(with = "crate::serde_util::int")]
        m: BigInt,
    },
    Rationals,
}

impl ExponentGroup {
    pub fn contains(&self, e: &BigRational) -> bool {
        match self {
            ExponentGroup::Integers => e.is_integer(),
            ExponentGroup::Localization { m } => {
                let mut d = e.denom().clone();
                loop {
                    let g = d.gcd(m);
                    if g.is_one() {
                        return d.is_one();
                    }
                    d /= g;
                }
            }
            ExponentGroup::Rationals => true,
        }
    }

    /// Whether `e/p` lies in the group.
    pub fn divisible_by(&self, e: &BigRational, p: u64) -> bool {
        self.contains(&(e / BigRational::from_integer(p.into())))
    }
}

impl fmt::Display for ExponentGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentGroup::Integers => write!(f, "Z"),
            ExponentGroup::Localization { m } => write!(f, "Z[1/{m}]"),
            ExponentGroup::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for ExponentGroup {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, AlgebraError> {
        let t = s.trim();
        match t {
            "Z" | "z" => Ok(ExponentGroup::Integers),
            "Q" | "q" => Ok(ExponentGroup::Rationals),
            _ => {
                let m = t
                    .strip_prefix("Z[1/")
                    .and_then(|r| r.strip_suffix(']'))
                    .and_then(|m| m.parse::<BigInt>().ok())
                    .filter(|m| *m > BigInt::one())
                    .ok_or_else(|| AlgebraError::Parse(s.to_string()))?;
                Ok(ExponentGroup::Localization { m })
            }
        }
    }
}

/// `f = g^p` in `F_p[G]` with `G` p-divisible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FrobeniusCertificate {
    pub p: u64,
    pub group: ExponentGroup,
    pub f: AlgebraElem,
    pub root: AlgebraElem,
    /// `root^p` re-multiplied equals `f`.
    pub verified: bool,
    /// Units of `F_p[G]` for torsion-free `G` are the monomials.
    pub f_is_unit: bool,
    /// `f` is zero, a unit, or `root · root^{p−1}` with a nonunit `root`.
    pub not_irreducible: bool,
}

/// Halves every exponent by `p`; coefficients are kept since `α^p = α` in `F_p`.
pub fn frobenius_root(
    f: &AlgebraElem,
    group: &ExponentGroup,
) -> Result<FrobeniusCertificate, AlgebraError> {
    let p = f.modulus();
    let pr = BigRational::from_integer(p.into());
    let mut terms = Vec::with_capacity(f.terms().len());
    for (e, c) in f.terms() {
        if !group.contains(e) {
            return Err(AlgebraError::NotInGroup {
                exponent: e.to_string(),
                group: group.to_string(),
            });
        }
        if !group.divisible_by(e, p) {
            return Err(AlgebraError::NotDivisible {
                exponent: e.to_string(),
                p,
                group: group.to_string(),
            });
        }
        terms.push((e / &pr, *c as i64));
    }
    let root = AlgebraElem::from_terms(p, terms)?;
    let verified = root.pow(p) == *f;
    Ok(FrobeniusCertificate {
        p,
        group: group.clone(),
        f: f.clone(),
        f_is_unit: f.is_monomial(),
        not_irreducible: verified,
        root,
        verified,
    })
}

/// A field, described by what the classification needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FieldDescriptor {
    /// `0` or a prime.
    pub characteristic: u64,
    pub algebraic_over_prime_field: bool,
}

impl FieldDescriptor {
    /// `F_p` or an algebraic extension of it.
    pub fn finite_char(p: u64) -> Self {
        FieldDescriptor {
            characteristic: p,
            algebraic_over_prime_field: true,
        }
    }

    pub fn rationals() -> Self {
        FieldDescriptor {
            characteristic: 0,
            algebraic_over_prime_field: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GroupDescriptor {
    FinitelyGenerated(FgGroupPresentation),
    RankOne(QSubgroupDescriptor),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GroupAlgebraClassification {
    pub field: FieldDescriptor,
    pub group: GroupDescriptor,
    pub field_condition: bool,
    pub torsion_free: bool,
    pub infinite_cyclic: bool,
    pub hereditarily_atomic: bool,
    pub reason: String,
}

/// `R[G]` is hereditarily atomic iff `R` is algebraic over some `F_p` and
/// `G ≅ ℤ`.
pub fn classify_group_algebra(
    field: FieldDescriptor,
    group: &GroupDescriptor,
) -> Result<GroupAlgebraClassification, AlgebraError> {
    let c = field.characteristic;
    if c != 0 && !is_prime(c) {
        return Err(AlgebraError::BadCharacteristic(c));
    }
    let field_condition = c != 0 && field.algebraic_over_prime_field;
    let (torsion_free, infinite_cyclic) = match group {
        GroupDescriptor::FinitelyGenerated(pres) => {
            let cl = classify_fg(pres);
            if cl.rank == 0 && cl.invariant_factors.is_empty() {
                return Err(AlgebraError::TrivialGroup);
            }
            let tf = cl.invariant_factors.is_empty();
            (tf, tf && cl.rank == 1)
        }
        GroupDescriptor::RankOne(desc) => (true, classify_q_subgroup(desc).stabilizes),
    };
    let hereditarily_atomic = field_condition && infinite_cyclic;
    let reason = if hereditarily_atomic {
        "Laurent polynomials over an algebraic extension of F_p".to_string()
    } else if !torsion_free {
        "torsion element g gives (x - 1)(x^((n-1)g) + ... + 1) = 0, so the ring is not a domain"
            .to_string()
    } else if !field_condition {
        match (c, infinite_cyclic) {
            (0, true) => "characteristic 0: contains the non-atomic subring Z + xQ[x]".to_string(),
            (_, true) => {
                "transcendental t: contains the non-atomic subring F_p[t] + xF_p(t)[x]".to_string()
            }
            _ => "field is not algebraic over a prime field of positive characteristic".to_string(),
        }
    } else {
        "torsion-free group that is not cyclic is not hereditarily atomic".to_string()
    };
    Ok(GroupAlgebraClassification {
        field,
        group: group.clone(),
        field_condition,
        torsion_free,
        infinite_cyclic,
        hereditarily_atomic,
        reason,
    })
}

/// `x = (x^{1/q})^q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QFactorization {
    pub q: u64,
    pub root: AlgebraElem,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LengthDemo {
    pub bound: u64,
    pub p: u64,
    pub factorizations: Vec<QFactorization>,
    /// Lengths of `x` realized by the factorizations above.
    pub lengths_of_x: Vec<u64>,
    /// Length set of `1` in `⟨1/q : q ≤ bound prime⟩`.
    pub monoid_length_set_of_one: Vec<u64>,
    /// Length set of each generator `1/q`.
    pub atom_length_sets: Vec<(u64, Vec<u64>)>,
    pub passed: bool,
}

pub fn length_demo(bound: u64, p: u64) -> Result<LengthDemo, AlgebraError> {
    if bound < 2 {
        return Err(AlgebraError::BoundTooSmall(bound));
    }
    let x = AlgebraElem::x_pow(p, BigRational::one())?;
    let qs = primes_up_to(bound);
    let factorizations = qs
        .iter()
        .map(|&q| {
            let root = AlgebraElem::x_pow(p, BigRational::new(1.into(), q.into()))?;
            Ok(QFactorization {
                q,
                verified: root.pow(q) == x,
                root,
            })
        })
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    let gens: Vec<BigRational> = qs
        .iter()
        .map(|&q| BigRational::new(1.into(), q.into()))
        .collect();
    let monoid_length_set_of_one: Vec<u64> = length_set_of(&gens, &BigRational::one())?
        .into_iter()
        .collect();
    let atom_length_sets = qs
        .iter()
        .zip(&gens)
        .map(|(&q, g)| Ok((q, length_set_of(&gens, g)?.into_iter().collect())))
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    let passed = factorizations.iter().all(|f| f.verified)
        && monoid_length_set_of_one == qs
        && atom_length_sets
            .iter()
            .all(|(_, l): &(u64, Vec<u64>)| l == &[1]);
    Ok(LengthDemo {
        bound,
        p,
        lengths_of_x: qs,
        factorizations,
        monoid_length_set_of_one,
        atom_length_sets,
        passed,
    })
}

/// `q = ((n/(n+1))·q)·((n+1)/n)` with the least `n` making both factors
/// exceed 1, namely `n = ⌊1/(q−1)⌋ + 1`.
pub fn rational_ge1_split(q: &BigRational) -> Result<(BigRational, BigRational), AlgebraError> {
    if *q <= BigRational::one() {
        return Err(AlgebraError::NotGreaterThanOne(q.to_string()));
    }
    let n: BigInt = (BigRational::one() / (q - BigRational::one()))
        .floor()
        .to_integer()
        + 1;
    let ratio = BigRational::new(n.clone() + 1, n);
    Ok((q / &ratio, ratio))
}
