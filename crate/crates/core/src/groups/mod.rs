//! Hereditary atomicity of abelian groups.
//!
//! An abelian group `G` with torsion subgroup `T` is hereditarily atomic, and
//! equivalently hereditary ACCP, exactly when `G/T` is cyclic. Finitely
//! generated groups are classified through the Smith normal form of a
//! relation matrix; rank-1 torsion-free groups are given as ascending unions
//! `⋃ (1/dₙ)ℤ` of cyclic groups.

mod snf;
mod witness;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::BigRational;

pub use snf::{smith_normal_form, IntMatrix, Snf};
pub use witness::{
    witness_rank1_noncyclic, witness_rank2, GroupElem, Rank1Witness, Rank2Witness, SplitIdentity,
    TorsionSpec, WitnessMonoid,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("matrix rows have different lengths")]
    Ragged,
    #[error("cannot multiply a {left:?} matrix by a {right:?} matrix")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("a presentation needs at least one generator")]
    NoGenerators,
    #[error("relations have {found} columns but there are {expected} generators")]
    RelationWidth { expected: usize, found: usize },
    #[error("bad denominator chain: {0}")]
    BadChain(String),
    #[error("the denominator chain stabilizes, so the group is cyclic and no witness exists")]
    Stabilizing,
    #[error("bad torsion data: {0}")]
    BadTorsion(String),
    #[error("witness needs at least {min} terms, got {got}")]
    TooFewTerms { min: usize, got: usize },
}

/// `G = ℤ^m / im(A)` where the rows of `A` are relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation")]
pub struct FgGroupPresentation {
    generators: usize,
    relations: IntMatrix,
}

#[derive(Deserialize)]
struct RawPresentation {
    generators: usize,
    relations: IntMatrix,
}

impl TryFrom<RawPresentation> for FgGroupPresentation {
    type Error = GroupError;
    fn try_from(r: RawPresentation) -> Result<Self, GroupError> {
        FgGroupPresentation::new(r.generators, r.relations)
    }
}

impl FgGroupPresentation {
    pub fn new(generators: usize, relations: IntMatrix) -> Result<Self, GroupError> {
        if generators == 0 {
            return Err(GroupError::NoGenerators);
        }
        let relations = if relations.rows() == 0 {
            IntMatrix::zeros(0, generators)
        } else if relations.cols() != generators {
            return Err(GroupError::RelationWidth {
                expected: generators,
                found: relations.cols(),
            });
        } else {
            relations
        };
        Ok(FgGroupPresentation {
            generators,
            relations,
        })
    }

    /// Uses the column count of `relations`.
    pub fn from_relations(relations: IntMatrix) -> Result<Self, GroupError> {
        FgGroupPresentation::new(relations.cols(), relations)
    }

    /// `ℤ^r`.
    pub fn free(rank: usize) -> Result<Self, GroupError> {
        FgGroupPresentation::new(rank, IntMatrix::zeros(0, rank))
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FgClassification {
    pub rank: usize,
    /// Diagonal entries of the Smith form greater than 1.
    #[serde(with = "crate::serde_util::int_vec")]
    pub invariant_factors: Vec<BigInt>,
    #[serde(with = "crate::serde_util::int")]
    pub torsion_order: BigInt,
    pub hereditarily_atomic: bool,
    #[serde(rename = "hereditaryACCP")]
    pub hereditary_accp: bool,
    pub snf: Snf,
    pub snf_verified: bool,
}

/// `G/T ≅ ℤ^rank`, so `G` is hereditarily atomic iff `rank ≤ 1`.
pub fn classify_fg(pres: &FgGroupPresentation) -> FgClassification {
    let snf = smith_normal_form(&pres.relations);
    let diag = snf.diagonal();
    let nonzero = diag.iter().filter(|x| !x.is_zero()).count();
    let rank = pres.generators - nonzero;
    let invariant_factors: Vec<BigInt> = diag.into_iter().filter(|x| *x > BigInt::one()).collect();
    let torsion_order = invariant_factors.iter().product();
    let snf_verified = snf.verify(&pres.relations);
    let ha = rank <= 1;
    FgClassification {
        rank,
        invariant_factors,
        torsion_order,
        hereditarily_atomic: ha,
        hereditary_accp: ha,
        snf,
        snf_verified,
    }
}

/// How the denominator chain continues after its listed prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ChainRule {
    /// `d_{n+1} = d_n`.
    Stable,
    /// `d_{n+1} = b·d_n`.
    Multiply {
        #[serde(with = "crate::serde_util::int")]
        factor: BigInt,
    },
    /// `d_{n+1} = (n+1)·d_n`.
    Index,
}

/// The subgroup `⋃ (1/dₙ)ℤ` of ℚ for a divisibility chain `d₁ | d₂ | …`.
///
/// Text form: `1,2,4` (stable after the last term), `1,2,4,...*2`,
/// `1,2,6,...*n`, or `1,2,4,8,...` where the rule is read off the prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDescriptor")]
pub struct QSubgroupDescriptor {
    #[serde(with = "crate::serde_util::int_vec")]
    prefix: Vec<BigInt>,
    rule: ChainRule,
}

#[derive(Deserialize)]
struct RawDescriptor {
    #[serde(with = "crate::serde_util::int_vec")]
    prefix: Vec<BigInt>,
    rule: ChainRule,
}

impl TryFrom<RawDescriptor> for QSubgroupDescriptor {
    type Error = GroupError;
    fn try_from(r: RawDescriptor) -> Result<Self, GroupError> {
        QSubgroupDescriptor::new(r.prefix, r.rule)
    }
}

impl QSubgroupDescriptor {
    pub fn new(prefix: Vec<BigInt>, rule: ChainRule) -> Result<Self, GroupError> {
        if prefix.is_empty() {
            return Err(GroupError::BadChain("empty chain".into()));
        }
        if prefix.iter().any(|d| !d.is_positive()) {
            return Err(GroupError::BadChain("terms must be positive".into()));
        }
        if let Some(w) = prefix.windows(2).find(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(GroupError::BadChain(format!(
                "{} does not divide {}",
                w[0], w[1]
            )));
        }
        if let ChainRule::Multiply { factor } = &rule {
            if !factor.is_positive() {
                return Err(GroupError::BadChain("factor must be positive".into()));
            }
        }
        Ok(QSubgroupDescriptor { prefix, rule })
    }

    pub fn from_i64(prefix: &[i64], rule: ChainRule) -> Result<Self, GroupError> {
        QSubgroupDescriptor::new(prefix.iter().map(|&d| d.into()).collect(), rule)
    }

    /// `1, b, b², …`.
    pub fn powers(b: i64) -> Result<Self, GroupError> {
        QSubgroupDescriptor::from_i64(&[1], ChainRule::Multiply { factor: b.into() })
    }

    pub fn prefix(&self) -> &[BigInt] {
        &self.prefix
    }

    pub fn rule(&self) -> &ChainRule {
        &self.rule
    }

    /// `d_n`, 1-based.
    pub fn term(&self, n: usize) -> BigInt {
        assert!(n >= 1, "chain terms are 1-based");
        let k = self.prefix.len();
        if n <= k {
            return self.prefix[n - 1].clone();
        }
        let last = &self.prefix[k - 1];
        match &self.rule {
            ChainRule::Stable => last.clone(),
            ChainRule::Multiply { factor } => last * factor.pow((n - k) as u32),
            ChainRule::Index => (k + 1..=n).fold(last.clone(), |acc, i| acc * i),
        }
    }

    /// Whether `(1/dₙ)ℤ` is eventually constant.
    pub fn stabilizes(&self) -> bool {
        match &self.rule {
            ChainRule::Stable => true,
            ChainRule::Multiply { factor } => factor.is_one(),
            ChainRule::Index => false,
        }
    }

    /// The first `count` terms of the strictly ascending subsequence, or
    /// fewer when the chain stabilizes first.
    pub fn strict_terms(&self, count: usize) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = Vec::new();
        for d in &self.prefix {
            if out.len() == count {
                return out;
            }
            if out.last() != Some(d) {
                out.push(d.clone());
            }
        }
        if self.stabilizes() {
            return out;
        }
        let mut n = self.prefix.len();
        while out.len() < count {
            n += 1;
            let d = self.term(n);
            if out.last() != Some(&d) {
                out.push(d);
            }
        }
        out
    }
}

impl fmt::Display for QSubgroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self.prefix.iter().map(ToString::to_string).collect();
        write!(f, "{}", xs.join(","))?;
        match &self.rule {
            ChainRule::Stable => Ok(()),
            ChainRule::Multiply { factor } => write!(f, ",...*{factor}"),
            ChainRule::Index => write!(f, ",...*n"),
        }
    }
}

impl FromStr for QSubgroupDescriptor {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let parts: Vec<&str> = s
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .collect();
        let (terms, tail) = match parts.split_last() {
            Some((last, rest)) if last.starts_with("...") || *last == "…" => (rest, Some(*last)),
            _ => (&parts[..], None),
        };
        let prefix = terms
            .iter()
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| GroupError::BadChain(format!("not an integer: {t}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let rule = match tail {
            None => ChainRule::Stable,
            Some(t) => match t.trim_start_matches("...").trim_start_matches('…') {
                "" => infer_rule(&prefix)?,
                "*n" => ChainRule::Index,
                r => {
                    let factor = r
                        .strip_prefix('*')
                        .and_then(|x| x.parse::<BigInt>().ok())
                        .ok_or_else(|| GroupError::BadChain(format!("unknown rule {t}")))?;
                    ChainRule::Multiply { factor }
                }
            },
        };
        QSubgroupDescriptor::new(prefix, rule)
    }
}

/// Index rule when every ratio `d_{k+1}/d_k` equals `k+1`, otherwise the
/// last ratio repeated.
fn infer_rule(prefix: &[BigInt]) -> Result<ChainRule, GroupError> {
    if prefix.len() < 2 {
        return Err(GroupError::BadChain(
            "\"...\" needs at least two terms".into(),
        ));
    }
    if prefix.iter().any(|d| !d.is_positive()) {
        return Err(GroupError::BadChain("terms must be positive".into()));
    }
    let ratios: Vec<Option<BigInt>> = prefix
        .windows(2)
        .map(|w| w[1].is_multiple_of(&w[0]).then(|| &w[1] / &w[0]))
        .collect();
    if ratios.iter().any(Option::is_none) {
        return Err(GroupError::BadChain("not a divisibility chain".into()));
    }
    let ratios: Vec<BigInt> = ratios.into_iter().flatten().collect();
    if prefix.len() >= 3
        && ratios
            .iter()
            .enumerate()
            .all(|(k, r)| *r == BigInt::from(k + 2))
    {
        return Ok(ChainRule::Index);
    }
    Ok(ChainRule::Multiply {
        factor: ratios.last().expect("len ≥ 2").clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct QClassification {
    pub descriptor: QSubgroupDescriptor,
    pub stabilizes: bool,
    /// `1/d` for the final term when the group is cyclic.
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "opt_rational"
    )]
    pub generator: Option<BigRational>,
    pub rank: usize,
    pub hereditarily_atomic: bool,
    #[serde(rename = "hereditaryACCP")]
    pub hereditary_accp: bool,
}

mod opt_rational {
    use super::BigRational;
    use crate::serde_util::Rat;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        x.clone().map(Rat).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Ok(Option::<Rat>::deserialize(d)?.map(|r| r.0))
    }
}

/// A rank-1 torsion-free group is cyclic iff its denominator chain stabilizes.
pub fn classify_q_subgroup(desc: &QSubgroupDescriptor) -> QClassification {
    let stabilizes = desc.stabilizes();
    let generator = stabilizes.then(|| {
        let last = desc.prefix.last().expect("nonempty");
        BigRational::new(BigInt::one(), last.clone())
    });
    QClassification {
        descriptor: desc.clone(),
        stabilizes,
        generator,
        rank: 1,
        hereditarily_atomic: stabilizes,
        hereditary_accp: stabilizes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fg(rows: &[&[i64]]) -> FgClassification {
        classify_fg(
            &FgGroupPresentation::from_relations(IntMatrix::from_i64(rows).unwrap()).unwrap(),
        )
    }

    #[test]
    fn finitely_generated_examples() {
        let z = fg(&[&[0]]);
        assert_eq!((z.rank, z.hereditarily_atomic), (1, true));
        let z2 = classify_fg(&FgGroupPresentation::free(2).unwrap());
        assert_eq!((z2.rank, z2.hereditarily_atomic), (2, false));
        let mixed = fg(&[&[0, 0], &[0, 2]]);
        assert_eq!(mixed.rank, 1);
        assert_eq!(mixed.invariant_factors, vec![BigInt::from(2)]);
        assert!(mixed.hereditarily_atomic);
        let z6 = fg(&[&[6]]);
        assert_eq!((z6.rank, z6.torsion_order.clone()), (0, BigInt::from(6)));
        assert!(z6.hereditary_accp);
        let trivial = fg(&[&[1, 0], &[0, 1]]);
        assert_eq!((trivial.rank, trivial.invariant_factors.len()), (0, 0));
        for c in [&z, &z2, &mixed, &z6, &trivial] {
            assert_eq!(c.hereditarily_atomic, c.hereditary_accp);
            assert!(c.snf_verified);
        }
    }

    #[test]
    fn presentation_validation() {
        assert!(FgGroupPresentation::free(0).is_err());
        let m = IntMatrix::from_i64(&[&[1, 2]]).unwrap();
        assert!(FgGroupPresentation::new(3, m).is_err());
        let p: FgGroupPresentation =
            serde_json::from_str(r#"{"generators":2,"relations":[]}"#).unwrap();
        assert_eq!(classify_fg(&p).rank, 2);
        assert!(serde_json::from_str::<FgGroupPresentation>(
            r#"{"generators":1,"relations":[[1,2]]}"#
        )
        .is_err());
    }

    #[test]
    fn chain_examples() {
        let halves: QSubgroupDescriptor = "1,2,4,8,...".parse().unwrap();
        assert_eq!(halves.rule(), &ChainRule::Multiply { factor: 2.into() });
        assert!(!classify_q_subgroup(&halves).hereditarily_atomic);
        let six: QSubgroupDescriptor = "1,6,6,6".parse().unwrap();
        let c = classify_q_subgroup(&six);
        assert!(c.hereditarily_atomic && c.hereditary_accp);
        assert_eq!(c.generator, Some(BigRational::new(1.into(), 6.into())));
        let fact: QSubgroupDescriptor = "1,2,6,24,...".parse().unwrap();
        assert_eq!(fact.rule(), &ChainRule::Index);
        assert_eq!(fact.term(5), BigInt::from(120));
        assert!(!classify_q_subgroup(&fact).hereditarily_atomic);
    }

    #[test]
    fn chain_parsing() {
        let d: QSubgroupDescriptor = "1,6,...*6".parse().unwrap();
        assert_eq!(d.term(4), BigInt::from(216));
        assert_eq!(d.to_string(), "1,6,...*6");
        assert_eq!(d.to_string().parse::<QSubgroupDescriptor>().unwrap(), d);
        assert!("1,3,4".parse::<QSubgroupDescriptor>().is_err());
        assert!("0,1".parse::<QSubgroupDescriptor>().is_err());
        assert!("1,...".parse::<QSubgroupDescriptor>().is_err());
        assert!("1,...*0".parse::<QSubgroupDescriptor>().is_err());
        assert!("1,...*1"
            .parse::<QSubgroupDescriptor>()
            .unwrap()
            .stabilizes());
    }

    #[test]
    fn strict_terms_skip_repeats() {
        let d: QSubgroupDescriptor = "1,2,2,4,...*2".parse().unwrap();
        let want: Vec<BigInt> = [1, 2, 4, 8, 16].iter().map(|&x| x.into()).collect();
        assert_eq!(d.strict_terms(5), want);
        let s: QSubgroupDescriptor = "1,3,3".parse().unwrap();
        assert_eq!(s.strict_terms(5).len(), 2);
    }
}
