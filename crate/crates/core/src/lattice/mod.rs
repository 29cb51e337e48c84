//! Finitely generated submonoids of ℤ^d.
//!
//! Membership in a general lattice monoid is only semi-decided here: searches
//! are exhaustive up to a coefficient bound. A linear functional that is
//! strictly positive on every generator turns the bound into a proof, which is
//! what [`positive_bound`] provides and what [`atoms_certified`] relies on.

mod cone;
mod lex;
mod search;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactnum::{rat_int, BigRational, QuadRat};

pub use cone::{cone_member_2d, Cone2D, Vec2};
pub use lex::{lex_cone, LexCone, LexConeReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension must be at least {min}, got {got}")]
    DimensionTooSmall { min: usize, got: usize },
    #[error("generator {0} is zero")]
    ZeroGenerator(usize),
    #[error("generators {0} and {1} coincide")]
    DuplicateGenerator(usize, usize),
    #[error("functional is not strictly positive on generator {0}")]
    Unbounded(usize),
    #[error("coefficient bound does not fit in 64 bits")]
    BoundOverflow,
    #[error("certificate does not sum to its target")]
    CertificateMismatch,
    #[error("cone input must be nonempty")]
    EmptyCone,
}

/// A point of ℤ^d.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(#[serde(with = "crate::serde_util::int_vec")] pub Vec<BigInt>);

impl LatticePoint {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticePoint(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticePoint(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        LatticePoint(vec![BigInt::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut p = LatticePoint::zero(dim);
        p.0[i] = BigInt::from(1);
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &BigInt) -> LatticePoint {
        LatticePoint(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> LatticePoint {
        LatticePoint(self.0.iter().map(|a| -a).collect())
    }

    /// Appends `extra` zero coordinates.
    pub fn padded(&self, extra: usize) -> LatticePoint {
        let mut c = self.0.clone();
        c.extend(std::iter::repeat_n(BigInt::zero(), extra));
        LatticePoint(c)
    }

    pub fn x(&self) -> &BigInt {
        &self.0[0]
    }

    pub fn y(&self) -> &BigInt {
        &self.0[1]
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A linear form `x ↦ Σ wᵢ·xᵢ` with weights in ℚ(√2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFunctional(pub Vec<QuadRat>);

impl LinearFunctional {
    /// `(x, y) ↦ y − √2·x`.
    pub fn pi_u() -> Self {
        LinearFunctional(vec![-QuadRat::sqrt2(), QuadRat::one()])
    }

    /// `(x, y) ↦ x + √2·y`.
    pub fn pi_v() -> Self {
        LinearFunctional(vec![QuadRat::one(), QuadRat::sqrt2()])
    }

    /// Sum of coordinates.
    pub fn coordinate_sum(dim: usize) -> Self {
        LinearFunctional(vec![QuadRat::one(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn eval(&self, p: &LatticePoint) -> QuadRat {
        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        for (w, c) in self.0.iter().zip(p.coords()) {
            let c = rat_int(c.clone());
            a += &w.a * &c;
            b += &w.b * &c;
        }
        QuadRat::new(a, b)
    }
}

/// The monoid `⟨generators⟩ ⊆ ℤ^dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMonoid")]
pub struct LatticeMonoid {
    dim: usize,
    generators: Vec<LatticePoint>,
}

#[derive(Deserialize)]
struct RawMonoid {
    dim: usize,
    generators: Vec<LatticePoint>,
}

impl TryFrom<RawMonoid> for LatticeMonoid {
    type Error = LatticeError;
    fn try_from(raw: RawMonoid) -> Result<Self, LatticeError> {
        LatticeMonoid::new(raw.dim, raw.generators)
    }
}

impl LatticeMonoid {
    pub fn new(dim: usize, generators: Vec<LatticePoint>) -> Result<Self, LatticeError> {
        if dim == 0 {
            return Err(LatticeError::DimensionTooSmall { min: 1, got: 0 });
        }
        for (i, g) in generators.iter().enumerate() {
            if g.dim() != dim {
                return Err(LatticeError::DimensionMismatch {
                    expected: dim,
                    found: g.dim(),
                });
            }
            if g.is_zero() {
                return Err(LatticeError::ZeroGenerator(i));
            }
            if let Some(j) = generators[..i].iter().position(|h| h == g) {
                return Err(LatticeError::DuplicateGenerator(j, i));
            }
        }
        Ok(LatticeMonoid { dim, generators })
    }

    /// Convenience constructor from small integer vectors; infers the dimension.
    pub fn from_i64(gens: &[&[i64]]) -> Result<Self, LatticeError> {
        let dim = gens.first().map_or(0, |g| g.len());
        LatticeMonoid::new(
            dim,
            gens.iter().map(|g| LatticePoint::from_i64(g)).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[LatticePoint] {
        &self.generators
    }

    /// The monoid generated by all generators except the one at `skip`.
    pub fn without(&self, skip: usize) -> LatticeMonoid {
        let generators = self
            .generators
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, g)| g.clone())
            .collect();
        LatticeMonoid {
            dim: self.dim,
            generators,
        }
    }

    /// Rank of the difference group, i.e. the rank of the generator matrix.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigRational>> = self
            .generators
            .iter()
            .map(|g| g.coords().iter().map(|c| rat_int(c.clone())).collect())
            .collect();
        search::rational_rank(rows, self.dim)
    }

    fn check_dim(&self, p: &LatticePoint) -> Result<(), LatticeError> {
        if p.dim() != self.dim {
            return Err(LatticeError::DimensionMismatch {
                expected: self.dim,
                found: p.dim(),
            });
        }
        Ok(())
    }
}

/// Explicit coefficients `cᵢ` with `Σ cᵢ·gᵢ = target`.
///
/// Keys of `coefficients` index into `generators`; zero coefficients are
/// omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipCertificate {
    pub target: LatticePoint,
    pub generators: Vec<LatticePoint>,
    pub coefficients: BTreeMap<usize, u64>,
}

impl MembershipCertificate {
    /// Builds a certificate, refusing one that does not re-sum to `target`.
    pub fn new(
        target: LatticePoint,
        generators: Vec<LatticePoint>,
        coefficients: BTreeMap<usize, u64>,
    ) -> Result<Self, LatticeError> {
        let cert = MembershipCertificate {
            target,
            generators,
            coefficients: coefficients.into_iter().filter(|&(_, c)| c > 0).collect(),
        };
        if cert.verify() {
            Ok(cert)
        } else {
            Err(LatticeError::CertificateMismatch)
        }
    }

    pub fn verify(&self) -> bool {
        let dim = self.target.dim();
        let mut sum = LatticePoint::zero(dim);
        for (&i, &c) in &self.coefficients {
            let Some(g) = self.generators.get(i) else {
                return false;
            };
            if g.dim() != dim {
                return false;
            }
            sum = sum.add(&g.scale(&BigInt::from(c)));
        }
        sum == self.target
    }

    /// Total number of generators used, counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.coefficients.values().sum()
    }
}

/// Outcome of a bounded membership search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum Membership {
    Found {
        certificate: MembershipCertificate,
    },
    /// No representation with every coefficient at most `bound`.
    NotFound {
        bound: u64,
    },
}

impl Membership {
    pub fn is_found(&self) -> bool {
        matches!(self, Membership::Found { .. })
    }

    pub fn certificate(&self) -> Option<&MembershipCertificate> {
        match self {
            Membership::Found { certificate } => Some(certificate),
            Membership::NotFound { .. } => None,
        }
    }
}

/// Exhaustive search for `target ∈ ⟨M⟩` with every coefficient at most `bound`.
pub fn member_bounded(
    m: &LatticeMonoid,
    target: &LatticePoint,
    bound: u64,
) -> Result<Membership, LatticeError> {
    m.check_dim(target)?;
    Ok(search::search(m, target, bound, None))
}

/// Like [`member_bounded`] but additionally prunes with a functional that is
/// strictly positive on every generator.
pub fn member_with_functional(
    m: &LatticeMonoid,
    target: &LatticePoint,
    bound: u64,
    functional: &LinearFunctional,
) -> Result<Membership, LatticeError> {
    m.check_dim(target)?;
    check_functional(m, functional)?;
    Ok(search::search(m, target, bound, Some(functional)))
}

fn check_functional(m: &LatticeMonoid, f: &LinearFunctional) -> Result<Vec<QuadRat>, LatticeError> {
    if f.dim() != m.dim() {
        return Err(LatticeError::DimensionMismatch {
            expected: m.dim(),
            found: f.dim(),
        });
    }
    m.generators()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let v = f.eval(g);
            if v.sign().is_gt() {
                Ok(v)
            } else {
                Err(LatticeError::Unbounded(i))
            }
        })
        .collect()
}

/// Coefficient bound `⌈f(target) / minᵢ f(gᵢ)⌉` valid for every representation
/// of `target`, given that `f` is strictly positive on all generators.
pub fn positive_bound(
    m: &LatticeMonoid,
    target: &LatticePoint,
    functional: &LinearFunctional,
) -> Result<u64, LatticeError> {
    m.check_dim(target)?;
    let values = check_functional(m, functional)?;
    let Some(min) = values.into_iter().min() else {
        return Ok(0);
    };
    let ratio = functional
        .eval(target)
        .checked_div(&min)
        .expect("minimum is positive");
    let c = ratio.ceil();
    if c.is_negative() {
        return Ok(0);
    }
    c.to_u64().ok_or(LatticeError::BoundOverflow)
}

/// Atom decision for one generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AtomReport {
    pub index: usize,
    pub point: LatticePoint,
    pub is_atom: bool,
    /// Bound used by the conclusive search.
    pub bound: u64,
    /// Representation by the other generators, present exactly when not an atom.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<MembershipCertificate>,
}

/// Decides for every generator whether it lies in the monoid generated by the
/// others. Conclusive because `functional` is strictly positive on the
/// generators, which also makes the monoid reduced.
pub fn atoms_certified(
    m: &LatticeMonoid,
    functional: &LinearFunctional,
) -> Result<Vec<AtomReport>, LatticeError> {
    check_functional(m, functional)?;
    (0..m.generators().len())
        .into_par_iter()
        .map(|i| {
            let g = &m.generators()[i];
            let others = m.without(i);
            if others.generators().is_empty() {
                return Ok(AtomReport {
                    index: i,
                    point: g.clone(),
                    is_atom: true,
                    bound: 0,
                    certificate: None,
                });
            }
            let bound = positive_bound(&others, g, functional)?;
            let outcome = search::search(&others, g, bound, Some(functional));
            let certificate = outcome.certificate().map(|c| {
                // re-index into the full generator list
                let coefficients = c
                    .coefficients
                    .iter()
                    .map(|(&j, &k)| (if j >= i { j + 1 } else { j }, k))
                    .collect();
                MembershipCertificate::new(g.clone(), m.generators().to_vec(), coefficients)
                    .expect("re-indexing preserves the sum")
            });
            Ok(AtomReport {
                index: i,
                point: g.clone(),
                is_atom: certificate.is_none(),
                bound,
                certificate,
            })
        })
        .collect()
}

/// Which vector stands for `y_n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZaksConvention {
    /// `f_n = (−n, 1, 1, 0, …, −1, …)` as displayed.
    #[default]
    Displayed,
    /// Exponent vector of `y_n = uv/(wⁿxₙ)` in the order `(u, v, w, x₁, …)`:
    /// `(1, 1, −n, 0, …, −1, …)`.
    Quotient,
}

/// Generators of the Zaks monoid restricted to indices `1..=k`, as vectors in
/// ℤ^{3+k}: `e₁, e₂, e₃`, then `e_{n+3}` and `f_n = (−n, 1, 1, 0, …, −1, …)`
/// with the `−1` in position `n+3`.
pub fn zaks_truncation(k: usize) -> Result<LatticeMonoid, LatticeError> {
    zaks_truncation_with(k, ZaksConvention::Displayed)
}

pub fn zaks_truncation_with(
    k: usize,
    convention: ZaksConvention,
) -> Result<LatticeMonoid, LatticeError> {
    if k == 0 {
        return Err(LatticeError::DimensionTooSmall { min: 1, got: 0 });
    }
    let dim = 3 + k;
    let mut gens: Vec<LatticePoint> = (0..3).map(|i| LatticePoint::unit(dim, i)).collect();
    gens.extend((1..=k).map(|n| LatticePoint::unit(dim, n + 2)));
    let shift = match convention {
        ZaksConvention::Displayed => 0,
        ZaksConvention::Quotient => 2,
    };
    for n in 1..=k {
        let mut f = LatticePoint::zero(dim);
        f.0[shift] = BigInt::from(-(n as i64));
        f.0[(shift + 1) % 3] = BigInt::from(1);
        f.0[(shift + 2) % 3] = BigInt::from(1);
        f.0[n + 2] = BigInt::from(-1);
        gens.push(f);
    }
    LatticeMonoid::new(dim, gens)
}

/// `M × ℕ₀^extra`: generators padded with zeros plus the new unit vectors.
pub fn product_with_n0(m: &LatticeMonoid, extra: usize) -> LatticeMonoid {
    let dim = m.dim() + extra;
    let mut gens: Vec<LatticePoint> = m.generators().iter().map(|g| g.padded(extra)).collect();
    gens.extend((m.dim()..dim).map(|i| LatticePoint::unit(dim, i)));
    LatticeMonoid::new(dim, gens).expect("padding keeps generators distinct and nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[i64]) -> LatticePoint {
        LatticePoint::from_i64(c)
    }

    #[test]
    fn member_bounded_examples() {
        let m = LatticeMonoid::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        let r = member_bounded(&m, &pt(&[2, 3]), 5).unwrap();
        let cert = r.certificate().unwrap();
        assert_eq!(cert.coefficients, BTreeMap::from([(0, 2), (1, 3)]));

        let m = LatticeMonoid::from_i64(&[&[2, 1], &[1, 2]]).unwrap();
        assert_eq!(
            member_bounded(&m, &pt(&[1, 1]), 3).unwrap(),
            Membership::NotFound { bound: 3 }
        );

        let r = member_bounded(&m, &pt(&[0, 0]), 0).unwrap();
        assert!(r.certificate().unwrap().coefficients.is_empty());
    }

    #[test]
    fn member_bounded_respects_bound() {
        let m = LatticeMonoid::from_i64(&[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert!(!member_bounded(&m, &pt(&[5, 0]), 4).unwrap().is_found());
        assert!(member_bounded(&m, &pt(&[5, 0]), 5).unwrap().is_found());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let m = LatticeMonoid::from_i64(&[&[1, 0]]).unwrap();
        assert!(matches!(
            member_bounded(&m, &pt(&[1, 0, 0]), 1),
            Err(LatticeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn monoid_validation() {
        assert_eq!(
            LatticeMonoid::from_i64(&[&[1, 0], &[0, 0]]),
            Err(LatticeError::ZeroGenerator(1))
        );
        assert_eq!(
            LatticeMonoid::from_i64(&[&[1, 0], &[1, 0]]),
            Err(LatticeError::DuplicateGenerator(0, 1))
        );
        let m: Result<LatticeMonoid, _> =
            serde_json::from_str(r#"{"dim":2,"generators":[[1,0],[1,0]]}"#);
        assert!(m.is_err());
    }

    #[test]
    fn positive_bound_examples() {
        let m = LatticeMonoid::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        let f = LinearFunctional::coordinate_sum(2);
        assert_eq!(positive_bound(&m, &pt(&[3, 4]), &f).unwrap(), 7);

        let stage1 = LatticeMonoid::from_i64(&[&[0, 1], &[125, 177], &[-5, -7]]).unwrap();
        // ⌈2/(5√2 − 7)⌉ = ⌈28.14…⌉
        assert_eq!(
            positive_bound(&stage1, &pt(&[0, 2]), &LinearFunctional::pi_u()).unwrap(),
            29
        );

        let bad = LatticeMonoid::from_i64(&[&[1, 0], &[-1, -1]]).unwrap();
        assert_eq!(
            positive_bound(&bad, &pt(&[1, 0]), &f),
            Err(LatticeError::Unbounded(1))
        );
    }

    #[test]
    fn atoms_certified_examples() {
        let m = LatticeMonoid::from_i64(&[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let f = LinearFunctional::coordinate_sum(2);
        let r = atoms_certified(&m, &f).unwrap();
        assert!(r[0].is_atom && r[1].is_atom && !r[2].is_atom);
        assert_eq!(
            r[2].certificate.as_ref().unwrap().coefficients,
            BTreeMap::from([(0, 1), (1, 1)])
        );

        let basis = LatticeMonoid::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        assert!(atoms_certified(&basis, &f)
            .unwrap()
            .iter()
            .all(|a| a.is_atom));

        let stage1 = LatticeMonoid::from_i64(&[&[0, 1], &[125, 177], &[-5, -7]]).unwrap();
        let r = atoms_certified(&stage1, &LinearFunctional::pi_u()).unwrap();
        assert!(r.iter().all(|a| a.is_atom));
    }

    #[test]
    fn zaks_quotient_convention() {
        let z = zaks_truncation_with(2, ZaksConvention::Quotient).unwrap();
        assert_eq!(z.generators()[6], pt(&[1, 1, -2, 0, -1]));
        assert_eq!(z.rank(), 5);
    }

    #[test]
    fn zaks_examples() {
        let z1 = zaks_truncation(1).unwrap();
        assert_eq!(z1.dim(), 4);
        let expected: Vec<LatticePoint> = [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [-1, 1, 1, -1],
        ]
        .iter()
        .map(|c| pt(c))
        .collect();
        assert_eq!(z1.generators(), expected.as_slice());

        let z2 = zaks_truncation(2).unwrap();
        assert!(z2.generators().contains(&pt(&[-2, 1, 1, 0, -1])));
        for k in 1..6 {
            assert_eq!(zaks_truncation(k).unwrap().rank(), 3 + k);
        }
        assert!(zaks_truncation(0).is_err());
    }

    #[test]
    fn product_examples() {
        let m = LatticeMonoid::from_i64(&[&[0, 1]]).unwrap();
        let p = product_with_n0(&m, 1);
        assert_eq!(p.generators(), &[pt(&[0, 1, 0]), pt(&[0, 0, 1])]);
        assert_eq!(product_with_n0(&m, 0), m);
    }

    #[test]
    fn product_atoms_are_padded_atoms_plus_units() {
        let m = LatticeMonoid::from_i64(&[&[1, 0], &[0, 1], &[1, 1], &[2, 1]]).unwrap();
        let f2 = LinearFunctional::coordinate_sum(2);
        let f4 = LinearFunctional::coordinate_sum(4);
        let base: Vec<LatticePoint> = atoms_certified(&m, &f2)
            .unwrap()
            .into_iter()
            .filter(|a| a.is_atom)
            .map(|a| a.point.padded(2))
            .collect();
        let prod = product_with_n0(&m, 2);
        let atoms: Vec<LatticePoint> = atoms_certified(&prod, &f4)
            .unwrap()
            .into_iter()
            .filter(|a| a.is_atom)
            .map(|a| a.point)
            .collect();
        let mut expected = base;
        expected.push(pt(&[0, 0, 1, 0]));
        expected.push(pt(&[0, 0, 0, 1]));
        assert_eq!(atoms, expected);
    }

    #[test]
    fn certificate_json_shape() {
        let m = LatticeMonoid::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        let cert = member_bounded(&m, &pt(&[2, 3]), 5)
            .unwrap()
            .certificate()
            .cloned()
            .unwrap();
        let v = serde_json::to_value(&cert).unwrap();
        assert_eq!(v["target"], serde_json::json!([2, 3]));
        assert_eq!(v["generators"], serde_json::json!([[1, 0], [0, 1]]));
        assert_eq!(v["coefficients"], serde_json::json!({"0": 2, "1": 3}));
        let back: MembershipCertificate = serde_json::from_value(v).unwrap();
        assert_eq!(back, cert);
        let mv = serde_json::to_value(&m).unwrap();
        assert_eq!(
            mv,
            serde_json::json!({"dim": 2, "generators": [[1, 0], [0, 1]]})
        );
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let gens = vec![pt(&[1, 0]), pt(&[0, 1])];
        assert_eq!(
            MembershipCertificate::new(pt(&[2, 2]), gens, BTreeMap::from([(0, 2), (1, 3)])),
            Err(LatticeError::CertificateMismatch)
        );
    }
}
