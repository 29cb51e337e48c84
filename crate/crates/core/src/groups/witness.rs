use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{GroupError, QSubgroupDescriptor};
use crate::exactnum::BigRational;
use crate::lattice::{lex_cone, LatticePoint, LexCone, LexConeReport};
use crate::report::{all_passed, Check};

/// A non-atomic submonoid of a group that is not hereditarily atomic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessMonoid {
    LexCone(Rank2Witness),
    Splitting(Rank1Witness),
}

impl WitnessMonoid {
    pub fn passed(&self) -> bool {
        match self {
            WitnessMonoid::LexCone(w) => w.passed(),
            WitnessMonoid::Splitting(w) => w.passed(),
        }
    }
}

/// `M = (ℕu + ℤv) ∪ ℕ₀v` realized in ℤ².
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rank2Witness {
    pub cone: LexCone,
    pub u: LatticePoint,
    pub v: LatticePoint,
    pub report: LexConeReport,
    pub checks: Vec<Check>,
}

impl Rank2Witness {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

const BOX: i64 = 6;

/// `u = (1,0)`, `v = (0,1)`; `mirror` swaps their roles.
pub fn witness_rank2(mirror: bool) -> Rank2Witness {
    let base = lex_cone(2).expect("dimension 2");
    let cone = if mirror { base.mirrored() } else { base };
    let report = cone.report();
    let (u, v) = (cone.witness(), cone.atom());

    let members: Vec<LatticePoint> = (-BOX..=BOX)
        .flat_map(|x| (-BOX..=BOX).map(move |y| LatticePoint::from_i64(&[x, y])))
        .filter(|p| !p.is_zero() && cone.contains(p))
        .collect();
    let nonzero_member = |p: &LatticePoint| !p.is_zero() && cone.contains(p);
    let divides_all = members.iter().all(|p| cone.divides(&v, p));
    // inside the box: v admits no split into two nonzero members, every other member splits off v
    let v_unsplit = members.iter().all(|a| !nonzero_member(&v.sub(a)));
    let others_split = members
        .iter()
        .filter(|p| **p != v)
        .all(|p| nonzero_member(&p.sub(&v)));

    let checks = vec![
        Check::new(
            "v is the only reported atom",
            report.atoms == vec![v.clone()],
        ),
        Check::with_detail(
            "v divides every nonzero member",
            divides_all,
            format!("members in [-{BOX},{BOX}]^2"),
        ),
        Check::new("v does not split in the box", v_unsplit),
        Check::new("every other member in the box splits off v", others_split),
        Check::new("u lies in M", report.witness_in_monoid),
        Check::new("u is not a sum of atoms", !report.witness_factorable),
        Check::new("M is not atomic", !report.atomic),
    ];
    Rank2Witness {
        cone,
        u,
        v,
        report,
        checks,
    }
}

/// Finite abelian group `⊕ ℤ/mⱼ` and the torsion terms `t₁, t₂, …` in it;
/// terms past the list are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionSpec {
    pub moduli: Vec<u64>,
    pub terms: Vec<Vec<u64>>,
}

impl TorsionSpec {
    fn validate(&self) -> Result<(), GroupError> {
        if self.moduli.contains(&0) {
            return Err(GroupError::BadTorsion("moduli must be positive".into()));
        }
        if let Some(t) = self.terms.iter().find(|t| t.len() != self.moduli.len()) {
            return Err(GroupError::BadTorsion(format!(
                "term {t:?} has {} components, expected {}",
                t.len(),
                self.moduli.len()
            )));
        }
        Ok(())
    }

    fn term(&self, n: usize) -> Vec<u64> {
        let t = self
            .terms
            .get(n - 1)
            .cloned()
            .unwrap_or_else(|| vec![0; self.moduli.len()]);
        t.iter().zip(&self.moduli).map(|(x, m)| x % m).collect()
    }
}

/// Element of `ℚ ⊕ (⊕ ℤ/mⱼ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupElem {
    #[serde(with = "crate::serde_util::rational")]
    pub q: BigRational,
    pub torsion: Vec<u64>,
}

impl GroupElem {
    fn add(&self, other: &GroupElem, moduli: &[u64]) -> GroupElem {
        GroupElem {
            q: &self.q + &other.q,
            torsion: self
                .torsion
                .iter()
                .zip(&other.torsion)
                .zip(moduli)
                .map(|((a, b), m)| ((*a as u128 + *b as u128) % *m as u128) as u64)
                .collect(),
        }
    }

    fn scale(&self, k: &BigInt, moduli: &[u64]) -> GroupElem {
        GroupElem {
            q: &self.q * BigRational::from_integer(k.clone()),
            torsion: self
                .torsion
                .iter()
                .zip(moduli)
                .map(|(a, m)| {
                    (BigInt::from(*a) * k)
                        .mod_floor(&BigInt::from(*m))
                        .to_u64()
                        .expect("below modulus")
                })
                .collect(),
        }
    }

    /// Least `k ≥ 1` with `k·x` having zero torsion part.
    fn torsion_order(&self, moduli: &[u64]) -> u64 {
        self.torsion
            .iter()
            .zip(moduli)
            .map(|(a, m)| m / a.gcd(m))
            .fold(1, |acc, o| acc.lcm(&o))
    }
}

/// `s_n = b·s_{n+1} + t_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitIdentity {
    pub n: usize,
    pub s: GroupElem,
    #[serde(with = "crate::serde_util::int")]
    pub b: BigInt,
    pub next: GroupElem,
    pub t: GroupElem,
}

/// `M = ⟨sₙ, tₙ⟩` for a non-cyclic rank-1 group: every `sₙ` splits as
/// `b_{n+1}·s_{n+1} + tₙ` with `b_{n+1} ≥ 2` and every `tₙ` is a unit, so
/// `M` has no atoms while `−s₁ ∉ M` keeps it from being a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Rank1Witness {
    pub descriptor: QSubgroupDescriptor,
    #[serde(with = "crate::serde_util::int_vec")]
    pub denominators: Vec<BigInt>,
    pub moduli: Vec<u64>,
    pub identities: Vec<SplitIdentity>,
    pub checks: Vec<Check>,
}

impl Rank1Witness {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

const SPOT_MULTIPLES: i64 = 5;
const SPOT_COEFF: i64 = 4;
const SPOT_GENERATORS: usize = 4;

/// Emits the first `terms` splitting identities. The torsion parts of the
/// `sₙ` are solved backwards from `s_{terms+1} = (1/d, 0)`.
pub fn witness_rank1_noncyclic(
    desc: &QSubgroupDescriptor,
    terms: usize,
    torsion: Option<&TorsionSpec>,
) -> Result<Rank1Witness, GroupError> {
    if desc.stabilizes() {
        return Err(GroupError::Stabilizing);
    }
    if terms == 0 {
        return Err(GroupError::TooFewTerms { min: 1, got: 0 });
    }
    let spec = torsion.cloned().unwrap_or_default();
    spec.validate()?;
    let moduli = spec.moduli.clone();
    let denominators = desc.strict_terms(terms + 1);

    let zero_t = vec![0u64; moduli.len()];
    let mut s: Vec<GroupElem> = vec![
        GroupElem {
            q: BigRational::new(1.into(), denominators[terms].clone()),
            torsion: zero_t.clone(),
        };
        terms + 1
    ];
    let ts: Vec<GroupElem> = (1..=terms)
        .map(|n| GroupElem {
            q: BigRational::zero(),
            torsion: spec.term(n),
        })
        .collect();
    let bs: Vec<BigInt> = denominators.windows(2).map(|w| &w[1] / &w[0]).collect();
    for n in (0..terms).rev() {
        let torsion = s[n + 1].scale(&bs[n], &moduli).add(&ts[n], &moduli).torsion;
        s[n] = GroupElem {
            q: BigRational::new(1.into(), denominators[n].clone()),
            torsion,
        };
    }
    let identities: Vec<SplitIdentity> = (0..terms)
        .map(|i| SplitIdentity {
            n: i + 1,
            s: s[i].clone(),
            b: bs[i].clone(),
            next: s[i + 1].clone(),
            t: ts[i].clone(),
        })
        .collect();

    let reevaluate = identities
        .iter()
        .all(|id| id.next.scale(&id.b, &moduli).add(&id.t, &moduli) == id.s);
    let units = ts.iter().all(|t| {
        let k = t.torsion_order(&moduli);
        t.q.is_zero() && t.scale(&BigInt::from(k), &moduli).torsion == zero_t
    });
    let spot = spot_check_not_invertible(&s);
    let checks = vec![
        Check::new("every multiplier b is at least 2", bs.iter().all(|b| *b >= BigInt::from(2))),
        Check::new("splitting identities re-evaluate exactly", reevaluate),
        Check::new("every t_n is torsion, hence a unit of M", units),
        Check::new("every s_n has positive rational part", s.iter().all(|x| x.q.is_positive())),
        Check::with_detail(
            "N*s_1 is not in -M",
            spot,
            format!(
                "N <= {SPOT_MULTIPLES}, coefficients <= {SPOT_COEFF} on the first {SPOT_GENERATORS} s_n"
            ),
        ),
    ];
    Ok(Rank1Witness {
        descriptor: desc.clone(),
        denominators,
        moduli,
        identities,
        checks,
    })
}

/// Bounded search for `−N·s₁ = Σ cₙsₙ + (torsion)`; torsion terms carry no
/// rational part, so only the rational parts are compared.
fn spot_check_not_invertible(s: &[GroupElem]) -> bool {
    let gens: Vec<&BigRational> = s.iter().take(SPOT_GENERATORS).map(|x| &x.q).collect();
    let mut coeffs = vec![0i64; gens.len()];
    loop {
        let sum: BigRational = coeffs
            .iter()
            .zip(&gens)
            .map(|(c, g)| *g * BigRational::from_integer((*c).into()))
            .sum();
        for n in 1..=SPOT_MULTIPLES {
            if sum == -(gens[0] * BigRational::from_integer(n.into())) {
                return false;
            }
        }
        let Some(i) = coeffs.iter().position(|&c| c < SPOT_COEFF) else {
            return true;
        };
        coeffs[i] += 1;
        for c in &mut coeffs[..i] {
            *c = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn lex_witness() {
        let w = witness_rank2(false);
        assert_eq!(w.v, LatticePoint::from_i64(&[0, 1]));
        assert_eq!(w.u, LatticePoint::from_i64(&[1, 0]));
        assert!(w.passed(), "{:?}", w.checks);
        let m = witness_rank2(true);
        assert_eq!(m.v, LatticePoint::from_i64(&[1, 0]));
        assert_eq!(m.u, LatticePoint::from_i64(&[0, 1]));
        assert!(m.passed());
    }

    #[test]
    fn dyadic_identities() {
        let w = witness_rank1_noncyclic(&QSubgroupDescriptor::powers(2).unwrap(), 4, None).unwrap();
        assert!(w.passed(), "{:?}", w.checks);
        let id = &w.identities[2];
        assert_eq!(
            (id.s.q.clone(), id.b.clone(), id.next.q.clone()),
            (rat(1, 4), 2.into(), rat(1, 8))
        );
    }

    #[test]
    fn sixths() {
        let d: QSubgroupDescriptor = "1,6,36,...".parse().unwrap();
        let w = witness_rank1_noncyclic(&d, 3, None).unwrap();
        assert!(w.identities.iter().all(|i| i.b == BigInt::from(6)));
        assert!(w.passed());
    }

    #[test]
    fn stabilizing_rejected() {
        let d: QSubgroupDescriptor = "1,6,6".parse().unwrap();
        assert_eq!(
            witness_rank1_noncyclic(&d, 3, None),
            Err(GroupError::Stabilizing)
        );
    }

    #[test]
    fn with_torsion() {
        let spec = TorsionSpec {
            moduli: vec![2, 3],
            terms: vec![vec![1, 0], vec![0, 2], vec![1, 1]],
        };
        let w = witness_rank1_noncyclic(&QSubgroupDescriptor::powers(2).unwrap(), 4, Some(&spec))
            .unwrap();
        assert!(w.passed(), "{:?}", w.checks);
        assert_eq!(w.identities[0].t.torsion, vec![1, 0]);
        let bad = TorsionSpec {
            moduli: vec![2],
            terms: vec![vec![1, 1]],
        };
        assert!(
            witness_rank1_noncyclic(&QSubgroupDescriptor::powers(2).unwrap(), 2, Some(&bad))
                .is_err()
        );
    }
}
