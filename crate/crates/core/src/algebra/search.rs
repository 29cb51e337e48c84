use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{AlgebraElem, AlgebraError};
use crate::exactnum::BigRational;
use crate::puiseux::{generators, PuiseuxFamily};

/// Attached to every search report.
pub const TRUNCATION_CAVEAT: &str =
    "Only factorizations with exponents in the listed truncated monoid were searched; \
the result says nothing about irreducibility in the untruncated monoid algebra.";

/// Cap on the number of exponents `k/L ≤ deg f` tracked for the truncation.
const SUPPORT_CAP: usize = 1_000_000;

/// Exponent monoid the search is confined to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExponentTruncation {
    /// `ℕ₀`.
    Naturals,
    /// `⟨g₁, …, g_N⟩` of a Puiseux family.
    Puiseux { family: PuiseuxFamily, n: usize },
}

impl ExponentTruncation {
    pub fn generators(&self) -> Result<Vec<BigRational>, AlgebraError> {
        Ok(match self {
            ExponentTruncation::Naturals => vec![BigRational::one()],
            ExponentTruncation::Puiseux { family, n } => generators(family, *n)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SearchStatus {
    /// No factorization into two nonunits with exponents in the truncation.
    IrreducibleWithinBound,
    Factored {
        g: AlgebraElem,
        h: AlgebraElem,
        verified: bool,
    },
    Inconclusive {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchReport {
    pub f: AlgebraElem,
    pub truncation: ExponentTruncation,
    #[serde(with = "crate::serde_util::rational_vec")]
    pub generators: Vec<BigRational>,
    /// Number of truncation exponents in `[0, deg f]`.
    pub support_size: usize,
    pub candidates_tried: u64,
    pub budget: u64,
    pub result: SearchStatus,
    pub caveat: String,
}

/// Elements of the truncation in `[0, bound]`, as numerators over `l`.
fn support(gens: &[BigRational], l: &BigInt, bound: &BigRational) -> Option<Vec<bool>> {
    let top = (bound * BigRational::from_integer(l.clone()))
        .to_integer()
        .to_usize()?;
    if top >= SUPPORT_CAP {
        return None;
    }
    let steps: Vec<usize> = gens
        .iter()
        .filter_map(|g| {
            (g * BigRational::from_integer(l.clone()))
                .to_integer()
                .to_usize()
        })
        .filter(|&s| s > 0)
        .collect();
    let mut reach = vec![false; top + 1];
    reach[0] = true;
    for k in 1..=top {
        reach[k] = steps.iter().any(|&s| s <= k && reach[k - s]);
    }
    Some(reach)
}

/// Searches `f = g·h` with `g` monic, both nonconstant, exponents of `g` and
/// `h` in the truncation; `budget` caps the number of `g` tried.
pub fn irreducible_search_bounded(
    f: &AlgebraElem,
    truncation: &ExponentTruncation,
    budget: u64,
) -> Result<SearchReport, AlgebraError> {
    let gens = truncation.generators()?;
    let p = f.modulus();
    let report = |support_size, tried, result| SearchReport {
        f: f.clone(),
        truncation: truncation.clone(),
        generators: gens.clone(),
        support_size,
        candidates_tried: tried,
        budget,
        result,
        caveat: TRUNCATION_CAVEAT.to_string(),
    };
    let (Some(deg), Some(ord)) = (f.deg().cloned(), f.ord().cloned()) else {
        return Ok(report(
            0,
            0,
            SearchStatus::Inconclusive {
                reason: "f is zero".into(),
            },
        ));
    };
    let l = gens
        .iter()
        .chain(f.terms().iter().map(|(e, _)| e))
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let lr = BigRational::from_integer(l.clone());
    let index = |e: &BigRational| (e * &lr).to_integer().to_usize();
    let Some(reach) = (!deg.is_zero() || ord.is_zero())
        .then(|| support(&gens, &l, &deg))
        .flatten()
    else {
        return Ok(report(
            0,
            0,
            SearchStatus::Inconclusive {
                reason: "exponent range too large to tabulate".into(),
            },
        ));
    };
    for (e, _) in f.terms() {
        if index(e).is_none_or(|k| !reach[k]) {
            return Err(AlgebraError::OutsideTruncation(e.to_string()));
        }
    }
    if f.is_constant() {
        return Ok(report(
            1,
            0,
            SearchStatus::Inconclusive {
                reason: "f is a unit".into(),
            },
        ));
    }
    let cand: Vec<usize> = (0..reach.len()).filter(|&k| reach[k]).collect();
    let member: BTreeSet<usize> = cand.iter().copied().collect();
    let exp = |k: usize| BigRational::new(BigInt::from(k), l.clone());
    let (dk, ok) = (index(&deg).expect("checked"), index(&ord).expect("checked"));

    let mut tried = 0u64;
    for &d in cand
        .iter()
        .filter(|&&d| d > 0 && d < dk && member.contains(&(dk - d)))
    {
        // lower exponents of g; the least one must leave room for ord h ≥ 0
        let lower: Vec<usize> = cand.iter().copied().filter(|&k| k < d).collect();
        let mut coeffs = vec![0u64; lower.len()];
        loop {
            let ord_g = lower
                .iter()
                .zip(&coeffs)
                .find(|(_, c)| **c != 0)
                .map_or(d, |(k, _)| *k);
            if ord_g <= ok && member.contains(&(ok - ord_g)) {
                if tried == budget {
                    return Ok(report(
                        cand.len(),
                        tried,
                        SearchStatus::Inconclusive {
                            reason: format!("budget of {budget} candidate divisors exhausted"),
                        },
                    ));
                }
                tried += 1;
                let terms = std::iter::once((exp(d), 1i64)).chain(
                    lower
                        .iter()
                        .zip(&coeffs)
                        .filter(|(_, c)| **c != 0)
                        .map(|(k, c)| (exp(*k), *c as i64)),
                );
                let g = AlgebraElem::from_terms(p, terms)?;
                if let Some(h) = divide(f, &g, &member, &lr) {
                    if !h.is_constant() {
                        let verified = g.mul(&h)? == *f;
                        return Ok(report(
                            cand.len(),
                            tried,
                            SearchStatus::Factored { g, h, verified },
                        ));
                    }
                }
            }
            let Some(i) = coeffs.iter().position(|&c| c + 1 < p) else {
                break;
            };
            coeffs[i] += 1;
            for c in &mut coeffs[..i] {
                *c = 0;
            }
        }
    }
    Ok(report(
        cand.len(),
        tried,
        SearchStatus::IrreducibleWithinBound,
    ))
}

/// Exact quotient `f / g` for monic `g` with quotient exponents in `member`.
fn divide(
    f: &AlgebraElem,
    g: &AlgebraElem,
    member: &BTreeSet<usize>,
    lr: &BigRational,
) -> Option<AlgebraElem> {
    let p = f.modulus();
    let dg = g.deg()?.clone();
    let mut r = f.clone();
    let mut h = AlgebraElem::zero(p).ok()?;
    while let Some(dr) = r.deg().cloned() {
        let e = &dr - &dg;
        let k = (&e * lr).to_integer().to_usize()?;
        if !(&e * lr).is_integer() || !member.contains(&k) {
            return None;
        }
        let c = r.leading_coefficient()?;
        let term = AlgebraElem::monomial(p, c.value() as i64, e).ok()?;
        h = h.add(&term).ok()?;
        r = r.sub(&g.mul(&term).ok()?).ok()?;
    }
    Some(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str, p: u64) -> AlgebraElem {
        AlgebraElem::parse(s, p).unwrap()
    }

    #[test]
    fn polynomial_examples() {
        let r = irreducible_search_bounded(&el("1 + x", 2), &ExponentTruncation::Naturals, 1000)
            .unwrap();
        assert_eq!(r.result, SearchStatus::IrreducibleWithinBound);
        assert_eq!(r.caveat, TRUNCATION_CAVEAT);
        let r = irreducible_search_bounded(&el("1 + x^2", 2), &ExponentTruncation::Naturals, 1000)
            .unwrap();
        let SearchStatus::Factored { g, h, verified } = r.result else {
            panic!("{:?}", r.result)
        };
        assert!(verified);
        assert_eq!((g, h), (el("1 + x", 2), el("1 + x", 2)));
        let r =
            irreducible_search_bounded(&el("1 + x + x^2", 2), &ExponentTruncation::Naturals, 1000)
                .unwrap();
        assert_eq!(r.result, SearchStatus::IrreducibleWithinBound);
    }

    #[test]
    fn grams_truncation_splits_x() {
        let t = ExponentTruncation::Puiseux {
            family: PuiseuxFamily::Grams,
            n: 2,
        };
        let r = irreducible_search_bounded(&el("x", 2), &t, 1000).unwrap();
        let SearchStatus::Factored { g, h, verified } = &r.result else {
            panic!("{:?}", r.result)
        };
        assert!(*verified);
        assert!(g.is_monomial() && h.is_monomial());
        assert!(r.support_size > 2);
    }

    #[test]
    fn budget_and_errors() {
        let r = irreducible_search_bounded(
            &el("1 + x + x^2 + x^3 + x^5", 3),
            &ExponentTruncation::Naturals,
            1,
        )
        .unwrap();
        assert!(matches!(r.result, SearchStatus::Inconclusive { .. }));
        assert!(
            irreducible_search_bounded(&el("x^(1/2)", 2), &ExponentTruncation::Naturals, 10)
                .is_err()
        );
        let r = irreducible_search_bounded(&el("1", 2), &ExponentTruncation::Naturals, 10).unwrap();
        assert!(matches!(r.result, SearchStatus::Inconclusive { .. }));
    }
}
