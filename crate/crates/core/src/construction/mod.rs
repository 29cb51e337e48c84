//! A rank-2 lattice monoid that is atomic, hereditarily so on its stage
//! submonoids, and still fails ACCP.
//!
//! The points `a₀, a₁, …` are chosen near the axis `L₀ = ℝ·(1, √2)` and below
//! the tangent line `L: y = √2x + √3`, with multipliers `m_{2k}` pushing the
//! even points just across `L`. Every quantity is exact: coordinates are
//! integers, projections live in ℚ(√2), and the single √3 comparison is done
//! by squaring.

mod figure;
mod line;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactnum::{cmp_sqrt3, rat, rat_int, BigRational, QuadRat, SurdSum};
use crate::lattice::{
    atoms_certified, cone_member_2d, AtomReport, LatticeError, LatticeMonoid, LatticePoint,
    LinearFunctional, MembershipCertificate, Vec2,
};
use crate::report::{all_passed, Check};

pub use figure::{export_figure, FigureExport};
pub use line::{find_near_axis_point, min_multiple_into_upper, spread_bound, TangentLineConfig};

#[derive(Debug, thiserror::Error)]
pub enum ConstructionError {
    #[error("threshold must be positive")]
    NonPositiveThreshold,
    #[error("point {0} is not strictly above the axis")]
    NonPositiveProjection(LatticePoint),
    #[error("state has no points")]
    EmptyState,
    #[error("construction invariant violated: {0}")]
    ConditionViolated(String),
    #[error("stage 0 carries no chain")]
    StageZero,
    #[error("malformed state: {0}")]
    Malformed(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Points `a₀ … a_{2n}`, multipliers `m₀, m₂, …, m_{2n}` and the bounds
/// `ℓ₀ … ℓ_n`, where `ℓ_k` is the bound computed from `a₀ … a_{2k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConstructionState {
    pub stage: usize,
    pub points: Vec<LatticePoint>,
    #[serde(with = "crate::serde_util::int_vec")]
    pub multipliers: Vec<BigInt>,
    #[serde(with = "crate::serde_util::int_vec")]
    pub spread_bounds: Vec<BigInt>,
}

impl ConstructionState {
    /// Stage 0: `a₀ = (0, 1)`.
    pub fn initial() -> Result<Self, ConstructionError> {
        let a0 = LatticePoint::from_i64(&[0, 1]);
        let m0 = min_multiple_into_upper(&a0)?;
        let l0 = spread_bound(std::slice::from_ref(&a0))?;
        Ok(ConstructionState {
            stage: 0,
            points: vec![a0],
            multipliers: vec![m0],
            spread_bounds: vec![l0],
        })
    }

    fn check_shape(&self) -> Result<(), ConstructionError> {
        let n = self.stage;
        if self.points.len() != 2 * n + 1
            || self.multipliers.len() != n + 1
            || self.spread_bounds.len() != n + 1
        {
            return Err(ConstructionError::Malformed(format!(
                "stage {n} needs {} points, {} multipliers and {} bounds",
                2 * n + 1,
                n + 1,
                n + 1
            )));
        }
        if let Some(p) = self.points.iter().find(|p| p.dim() != 2) {
            return Err(ConstructionError::Malformed(format!("{p} is not planar")));
        }
        Ok(())
    }

    /// `a_i`.
    pub fn point(&self, i: usize) -> &LatticePoint {
        &self.points[i]
    }

    /// `m_{2k}`.
    pub fn multiplier(&self, k: usize) -> &BigInt {
        &self.multipliers[k]
    }

    /// `M_{2k} = ⟨a₀, …, a_{2k}⟩`.
    pub fn monoid(&self, k: usize) -> Result<LatticeMonoid, ConstructionError> {
        Ok(LatticeMonoid::new(2, self.points[..=2 * k].to_vec())?)
    }

    /// Advances from stage `n` to `n + 1`.
    pub fn extend(&mut self) -> Result<(), ConstructionError> {
        let line = TangentLineConfig;
        let n = self.stage;
        let a = &self.points[2 * n];
        let m = &self.multipliers[n];
        let ell = &self.spread_bounds[n];
        // ½·(m·π̃_u(a) − √3)
        let threshold = SurdSum::new(
            line.pi_u(a).scale(&BigRational::new(m.clone(), 2.into())),
            rat(-1, 2),
        );
        let ma = a.scale(m);
        let pv_floor =
            SurdSum::sqrt3_multiple(rat_int(ell.clone())).max(SurdSum::from(line.pi_v(&ma).abs()));
        let next = find_near_axis_point(&threshold, &pv_floor)?;
        let m_next = min_multiple_into_upper(&next)?;
        let odd = ma.sub(&next.scale(&m_next));
        self.points.push(odd);
        self.points.push(next);
        self.multipliers.push(m_next);
        self.stage += 1;
        let ell_next = spread_bound(&self.points)?;
        self.spread_bounds.push(ell_next);
        Ok(())
    }
}

/// Runs the construction for `stages` steps, checking every invariant after
/// each step.
pub fn construct(stages: usize) -> Result<ConstructionState, ConstructionError> {
    let mut state = ConstructionState::initial()?;
    ensure(&verify_conditions(&state)?)?;
    for _ in 0..stages {
        state.extend()?;
        ensure(&verify_conditions(&state)?)?;
    }
    Ok(state)
}

fn ensure(checks: &[Check]) -> Result<(), ConstructionError> {
    match checks.iter().find(|c| !c.passed) {
        Some(c) => Err(ConstructionError::ConditionViolated(c.name.clone())),
        None => Ok(()),
    }
}

/// Exact re-verification of the defining invariants of a state.
pub fn verify_conditions(state: &ConstructionState) -> Result<Vec<Check>, ConstructionError> {
    state.check_shape()?;
    let line = TangentLineConfig;
    let n = state.stage;
    let pts = &state.points;
    let pu: Vec<QuadRat> = pts.iter().map(|p| line.pi_u(p)).collect();

    let identity = (0..n).all(|k| {
        pts[2 * k + 1]
            == pts[2 * k]
                .scale(&state.multipliers[k])
                .sub(&pts[2 * k + 2].scale(&state.multipliers[k + 1]))
    });
    let minimal = (0..=n).all(|k| {
        let x = &pu[2 * k];
        let m = &state.multipliers[k];
        let over = |m: &BigInt| cmp_sqrt3(&x.scale(&rat_int(m.clone())), &BigRational::one());
        over(m) == Ordering::Greater && over(&(m - 1)) == Ordering::Less
    });
    let decreasing = pu.windows(2).all(|w| w[1] < w[0]) && pu.iter().all(|x| x.sign().is_gt());
    let off_line = pts.iter().all(|p| line.side_of_line(p) != Ordering::Equal);
    let big_multipliers = state.multipliers.iter().all(|m| *m >= BigInt::from(2));
    let odd_far = (0..n).all(|k| {
        let ell = SurdSum::sqrt3_multiple(rat_int(state.spread_bounds[k].clone()));
        ell.cmp_quad(&line.pi_v(&pts[2 * k + 1]).abs()) == Ordering::Less
    });
    let even_far = (0..n).all(|k| {
        let ell = SurdSum::sqrt3_multiple(rat_int(state.spread_bounds[k].clone()));
        let prev = line.pi_v(&pts[2 * k].scale(&state.multipliers[k])).abs();
        let v = line.pi_v(&pts[2 * k + 2]).abs();
        ell.cmp_quad(&v) == Ordering::Less && prev < v
    });
    let bounds_ok = (0..=n).all(|k| {
        let head = &pts[..=2 * k];
        spread_bound(head).is_ok_and(|l| l == state.spread_bounds[k])
    });
    let below_line = (1..=n).all(|k| line.side_of_line(&pts[2 * k]) == Ordering::Less);
    let upper_axis = pts.iter().all(|p| line.in_axis_upper(p));

    Ok(vec![
        Check::new(
            "odd points: a[2k+1] = m[2k]*a[2k] - m[2k+2]*a[2k+2]",
            identity,
        ),
        Check::new(
            "each m[2k] is the least multiple reaching the far side of L",
            minimal,
        ),
        Check::new(
            "distances to the axis strictly decrease and stay positive",
            decreasing,
        ),
        Check::new("no point lies on L", off_line),
        Check::new("every multiplier is at least 2", big_multipliers),
        Check::new("|pi_v(a[2k+1])| exceeds l[k]*sqrt3", odd_far),
        Check::new(
            "|pi_v(a[2k+2])| exceeds l[k]*sqrt3 and |pi_v(m[2k]*a[2k])|",
            even_far,
        ),
        Check::new("each l[k] is the least bound for a[0..=2k]", bounds_ok),
        Check::new("even points after a[0] lie strictly below L", below_line),
        Check::new(
            "all points lie on the closed upper side of the axis",
            upper_axis,
        ),
    ])
}

/// Atom verification of one stage monoid `M_{2k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StageAtomReport {
    pub stage: usize,
    pub generators: Vec<LatticePoint>,
    /// Exact premises of the geometric argument at this stage.
    pub geometric_checks: Vec<Check>,
    /// Per-generator verdict of the geometric argument.
    pub geometric_atoms: Vec<bool>,
    /// Per-generator verdict of the bounded enumeration.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<Vec<AtomReport>>,
    pub passed: bool,
}

impl StageAtomReport {
    /// Generators that some check failed to confirm as atoms, with any
    /// factorization found.
    pub fn failures(&self) -> Vec<(usize, Option<&MembershipCertificate>)> {
        (0..self.generators.len())
            .filter_map(|i| {
                let enumerated = self.enumeration.as_ref().map(|e| &e[i]);
                let geo = self.geometric_atoms[i];
                let en = enumerated.is_none_or(|a| a.is_atom);
                (!geo || !en).then(|| (i, enumerated.and_then(|a| a.certificate.as_ref())))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AtomVerification {
    pub stages: Vec<StageAtomReport>,
    pub passed: bool,
}

fn vec2(p: &LatticePoint) -> Vec2 {
    Vec2::from(p)
}

/// Coordinates of `g` in the real basis `{p, q}`, if it is one.
fn coords_in_basis(
    g: &LatticePoint,
    p: &LatticePoint,
    q: &LatticePoint,
) -> Option<(BigRational, BigRational)> {
    let det = p.x() * q.y() - p.y() * q.x();
    if det.is_zero() {
        return None;
    }
    let x = BigRational::new(g.x() * q.y() - g.y() * q.x(), det.clone());
    let y = BigRational::new(p.x() * g.y() - p.y() * g.x(), det);
    Some((x, y))
}

fn is_natural(x: &BigRational) -> bool {
    x.is_integer() && !x.numer().sign().eq(&num_bigint::Sign::Minus)
}

fn stage_one_geometry(state: &ConstructionState) -> (Vec<Check>, Vec<bool>) {
    let pts = &state.points[..3];
    let (m0, m2) = (&state.multipliers[0], &state.multipliers[1]);
    let mut checks = Vec::new();
    let basis02 = coords_in_basis(&pts[1], &pts[0], &pts[2]);
    checks.push(Check::new(
        "a[1] = m[0]*a[0] - m[2]*a[2] in the real basis {a[0], a[2]}",
        basis02 == Some((rat_int(m0.clone()), -rat_int(m2.clone()))),
    ));
    let basis12 = coords_in_basis(&pts[0], &pts[1], &pts[2]);
    checks.push(Check::new(
        "a[0] = a[1]/m[0] + (m[2]/m[0])*a[2] with m[0] >= 2",
        *m0 >= BigInt::from(2)
            && basis12
                == Some((
                    BigRational::new(BigInt::one(), m0.clone()),
                    BigRational::new(m2.clone(), m0.clone()),
                )),
    ));
    // g ∈ ⟨p, q⟩ for a real basis {p, q} iff its coordinates are natural numbers
    let atoms = (0..3)
        .map(|i| {
            let others: Vec<&LatticePoint> = (0..3).filter(|&j| j != i).map(|j| &pts[j]).collect();
            match coords_in_basis(&pts[i], others[0], others[1]) {
                Some((x, y)) => !(is_natural(&x) && is_natural(&y)),
                None => false,
            }
        })
        .collect();
    (checks, atoms)
}

fn later_stage_geometry(
    state: &ConstructionState,
    k: usize,
    prev: &[bool],
) -> (Vec<Check>, Vec<bool>) {
    let line = TangentLineConfig;
    let pts = &state.points;
    let old: Vec<Vec2> = pts[..2 * k - 1].iter().map(vec2).collect();
    let odd = &pts[2 * k - 1];
    let even = &pts[2 * k];
    let mut checks = Vec::new();

    let mut with_even = old.clone();
    with_even.push(vec2(even));
    let odd_outside = !cone_member_2d(&with_even, &vec2(odd));
    let mut with_odd = old.clone();
    with_odd.push(vec2(odd));
    let even_outside = !cone_member_2d(&with_odd, &vec2(even));
    checks.push(Check::new(
        format!(
            "a[{}] outside cone(M[{}] + a[{}])",
            2 * k - 1,
            2 * k - 2,
            2 * k
        ),
        odd_outside,
    ));
    checks.push(Check::new(
        format!(
            "a[{}] outside cone(M[{}] + a[{}])",
            2 * k,
            2 * k - 2,
            2 * k - 1
        ),
        even_outside,
    ));

    let shifted_outside = |w: &LatticePoint| {
        pts[..2 * k - 1]
            .iter()
            .all(|a| !cone_member_2d(&old, &vec2(&w.add(a))))
    };
    checks.push(Check::new(
        format!(
            "a[{}] + a[i] outside cone(M[{}]) for all old i",
            2 * k,
            2 * k - 2
        ),
        shifted_outside(even),
    ));
    checks.push(Check::new(
        format!(
            "a[{}] + a[i] outside cone(M[{}]) for all old i",
            2 * k - 1,
            2 * k - 2
        ),
        shifted_outside(odd),
    ));

    let ell = SurdSum::sqrt3_multiple(rat_int(state.spread_bounds[k - 1].clone()));
    let head = &pts[..2 * k - 1];
    let min_u = head.iter().map(|p| line.pi_u(p)).min().expect("nonempty");
    let max_v = head
        .iter()
        .map(|p| line.pi_v(p).abs())
        .max()
        .expect("nonempty");
    // ℓ·min π̃_u > 4·max |π̃_v|, the factor √3 cancelling on both sides
    let ell_scaled = &min_u * &QuadRat::rational(rat_int(state.spread_bounds[k - 1].clone()));
    checks.push(Check::new(
        format!("l[{}] separates the old points", k - 1),
        ell_scaled > max_v.scale(&rat(4, 1)),
    ));
    let prev_v = line
        .pi_v(&pts[2 * k - 2].scale(&state.multipliers[k - 1]))
        .abs();
    let even_v = line.pi_v(even).abs();
    checks.push(Check::new(
        format!(
            "|pi_v(a[{}])| beyond l and |pi_v(m*a[{}])|",
            2 * k,
            2 * k - 2
        ),
        ell.cmp_quad(&even_v) == Ordering::Less && prev_v < even_v,
    ));
    checks.push(Check::new(
        format!("|pi_v(a[{}])| beyond l", 2 * k - 1),
        ell.cmp_quad(&line.pi_v(odd).abs()) == Ordering::Less,
    ));
    checks.push(Check::new(
        format!("a[{}] = m*a[{}] - m*a[{}]", 2 * k - 1, 2 * k - 2, 2 * k),
        *odd == pts[2 * k - 2]
            .scale(&state.multipliers[k - 1])
            .sub(&even.scale(&state.multipliers[k])),
    ));
    let pu: Vec<QuadRat> = pts[..=2 * k].iter().map(|p| line.pi_u(p)).collect();
    checks.push(Check::new(
        "axis distances strictly decrease",
        pu.windows(2).all(|w| w[1] < w[0]) && pu.iter().all(|x| x.sign().is_gt()),
    ));

    let premises = all_passed(&checks[2..]);
    let mut atoms: Vec<bool> = prev.iter().map(|&a| a && premises).collect();
    atoms.push(odd_outside);
    atoms.push(even_outside);
    (checks, atoms)
}

/// Confirms that every generator of `M_{2k}` is an atom for `k ≤ up_to`
/// through the geometric argument, and additionally for `k ≤ enumerate_up_to`
/// through exhaustive enumeration bounded by the positive functional `π̃_u`.
///
/// Enumeration cost grows with the ratio of the largest to the smallest
/// `π̃_u`, which explodes after stage 2.
pub fn verify_atoms(
    state: &ConstructionState,
    up_to: usize,
    enumerate_up_to: usize,
) -> Result<AtomVerification, ConstructionError> {
    state.check_shape()?;
    let up_to = up_to.min(state.stage);
    let mut stages = Vec::with_capacity(up_to + 1);
    let mut prev: Vec<bool> = Vec::new();
    for k in 0..=up_to {
        let generators = state.points[..=2 * k].to_vec();
        let (geometric_checks, geometric_atoms) = match k {
            0 => (Vec::new(), vec![!generators[0].is_zero()]),
            1 => stage_one_geometry(state),
            _ => later_stage_geometry(state, k, &prev),
        };
        let enumeration = if k <= enumerate_up_to {
            Some(atoms_certified(
                &state.monoid(k)?,
                &LinearFunctional::pi_u(),
            )?)
        } else {
            None
        };
        let passed = all_passed(&geometric_checks)
            && geometric_atoms.iter().all(|&a| a)
            && enumeration.iter().flatten().all(|a| a.is_atom);
        prev = geometric_atoms.clone();
        stages.push(StageAtomReport {
            stage: k,
            generators,
            geometric_checks,
            geometric_atoms,
            enumeration,
            passed,
        });
    }
    let passed = stages.iter().all(|s| s.passed);
    Ok(AtomVerification { stages, passed })
}

/// One strict step `b_{k+1} | b_k` of the chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ChainStep {
    pub index: usize,
    /// `b_k − b_{k+1}`, which equals `a_{2k+1}`.
    pub witness: LatticePoint,
    pub certificate: MembershipCertificate,
}

/// Principal ideals `b_k + M` with `b_k = m_{2k}·a_{2k}`, strictly ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AccpFailureChain {
    pub ideals: Vec<LatticePoint>,
    pub ideal_certificates: Vec<MembershipCertificate>,
    pub steps: Vec<ChainStep>,
    pub checks: Vec<Check>,
}

impl AccpFailureChain {
    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

pub fn accp_chain(state: &ConstructionState) -> Result<AccpFailureChain, ConstructionError> {
    state.check_shape()?;
    let n = state.stage;
    if n == 0 {
        return Err(ConstructionError::StageZero);
    }
    let line = TangentLineConfig;
    let gens = state.points.clone();
    let ideals: Vec<LatticePoint> = (0..=n)
        .map(|k| state.points[2 * k].scale(&state.multipliers[k]))
        .collect();
    let ideal_certificates = (0..=n)
        .map(|k| {
            let m: u64 = (&state.multipliers[k]).try_into().map_err(|_| {
                ConstructionError::Malformed(format!("multiplier m[{}] exceeds 64 bits", 2 * k))
            })?;
            Ok(MembershipCertificate::new(
                ideals[k].clone(),
                gens.clone(),
                BTreeMap::from([(2 * k, m)]),
            )?)
        })
        .collect::<Result<Vec<_>, ConstructionError>>()?;
    let steps = (0..n)
        .map(|k| {
            let witness = ideals[k].sub(&ideals[k + 1]);
            let certificate = MembershipCertificate::new(
                witness.clone(),
                gens.clone(),
                BTreeMap::from([(2 * k + 1, 1)]),
            )?;
            Ok(ChainStep {
                index: k,
                witness,
                certificate,
            })
        })
        .collect::<Result<Vec<_>, ConstructionError>>()?;
    let checks = vec![
        Check::new(
            "b[k] = b[k+1] + a[2k+1]",
            steps
                .iter()
                .all(|s| ideals[s.index] == ideals[s.index + 1].add(&s.witness)),
        ),
        Check::new(
            "every witness has pi_u > 0, so it is a nonzero non-unit",
            steps.iter().all(|s| line.pi_u(&s.witness).sign().is_gt()),
        ),
        Check::new(
            "all generators have pi_u > 0, so the monoid is reduced",
            gens.iter().all(|g| line.pi_u(g).sign().is_gt()),
        ),
        Check::new(
            "certificates re-sum",
            ideal_certificates.iter().all(|c| c.verify())
                && steps.iter().all(|s| s.certificate.verify()),
        ),
    ];
    Ok(AccpFailureChain {
        ideals,
        ideal_certificates,
        steps,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> LatticePoint {
        LatticePoint::from_i64(&[x, y])
    }

    #[test]
    fn stage_zero_and_one() {
        let s0 = construct(0).unwrap();
        assert_eq!(s0.points, vec![pt(0, 1)]);
        assert_eq!(s0.multipliers, vec![BigInt::from(2)]);
        assert_eq!(s0.spread_bounds, vec![BigInt::from(6)]);

        let s1 = construct(1).unwrap();
        assert_eq!(s1.points, vec![pt(0, 1), pt(125, 177), pt(-5, -7)]);
        assert_eq!(s1.multipliers, vec![BigInt::from(2), BigInt::from(25)]);
        assert_eq!(
            s1.points[2].scale(&s1.multipliers[1]).add(&s1.points[1]),
            pt(0, 2)
        );
    }

    #[test]
    fn stage_two_matches_reference() {
        let s = construct(2).unwrap();
        assert_eq!(
            s.points[3],
            LatticePoint::from_i64(&[-941094125, -1330908075])
        );
        assert_eq!(s.points[4], pt(13860, 19601));
        assert_eq!(s.multipliers[2], BigInt::from(67900));
        assert_eq!(s.spread_bounds[1], BigInt::from(21125));
    }

    #[test]
    fn stage_one_chain() {
        let s = construct(1).unwrap();
        let c = accp_chain(&s).unwrap();
        assert_eq!(c.ideals, vec![pt(0, 2), pt(-125, -175)]);
        assert_eq!(c.steps[0].witness, pt(125, 177));
        assert!(c.passed());
        assert!(matches!(
            accp_chain(&construct(0).unwrap()),
            Err(ConstructionError::StageZero)
        ));
    }

    #[test]
    fn atoms_stage_zero_and_one() {
        let s = construct(1).unwrap();
        let r = verify_atoms(&s, 1, 1).unwrap();
        assert!(r.passed);
        assert_eq!(r.stages[0].generators, vec![pt(0, 1)]);
        assert_eq!(r.stages[1].geometric_atoms, vec![true; 3]);
    }

    #[test]
    fn planted_non_atom_is_caught() {
        let mut s = construct(1).unwrap();
        s.points[1] = s.points[0].add(&s.points[2]);
        let r = verify_atoms(&s, 1, 1).unwrap();
        assert!(!r.passed);
        let failures = r.stages[1].failures();
        assert_eq!(failures.len(), 1);
        let (i, cert) = failures[0];
        assert_eq!(i, 1);
        assert_eq!(cert.unwrap().coefficients, BTreeMap::from([(0, 1), (2, 1)]));
    }

    #[test]
    fn shifted_odd_point_breaks_the_identities() {
        // (125,178) is still an atom, but the defining identities fail
        let mut s = construct(1).unwrap();
        s.points[1] = s.points[0].add(&s.points[1]);
        let r = verify_atoms(&s, 1, 1).unwrap();
        assert!(!r.passed);
        assert!(r.stages[1]
            .enumeration
            .as_ref()
            .unwrap()
            .iter()
            .all(|a| a.is_atom));
        assert!(!all_passed(&r.stages[1].geometric_checks));
        assert!(!all_passed(&verify_conditions(&s).unwrap()));
    }

    #[test]
    fn malformed_state_is_rejected() {
        let mut s = construct(1).unwrap();
        s.points.pop();
        assert!(matches!(
            verify_conditions(&s),
            Err(ConstructionError::Malformed(_))
        ));
    }
}
