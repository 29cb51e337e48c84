use serde::{Deserialize, Serialize};

use super::{LatticeError, LatticePoint};
use num_bigint::Sign;
use num_traits::Zero;

/// The nonnegative cone of ℤ^d under a lexicographic order.
///
/// `priority[0]` is the most significant coordinate. The cone is not finitely
/// generated, so it is represented by its membership predicate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexCone {
    pub dim: usize,
    pub priority: Vec<usize>,
}

/// Summary of why the lex cone is not atomic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LexConeReport {
    pub dim: usize,
    pub priority: Vec<usize>,
    pub atoms: Vec<LatticePoint>,
    pub witness: LatticePoint,
    pub witness_in_monoid: bool,
    /// Whether the witness lies in the submonoid generated by the atoms.
    pub witness_factorable: bool,
    pub atomic: bool,
}

/// Standard lex cone: coordinate 0 most significant.
pub fn lex_cone(dim: usize) -> Result<LexCone, LatticeError> {
    LexCone::new((0..dim).collect())
}

impl LexCone {
    pub fn new(priority: Vec<usize>) -> Result<Self, LatticeError> {
        let dim = priority.len();
        if dim < 2 {
            return Err(LatticeError::DimensionTooSmall { min: 2, got: dim });
        }
        let mut seen = vec![false; dim];
        for &p in &priority {
            if p >= dim || seen[p] {
                return Err(LatticeError::DimensionMismatch {
                    expected: dim,
                    found: p,
                });
            }
            seen[p] = true;
        }
        Ok(LexCone { dim, priority })
    }

    /// Same cone with the priority order reversed.
    pub fn mirrored(&self) -> LexCone {
        let mut priority = self.priority.clone();
        priority.reverse();
        LexCone {
            dim: self.dim,
            priority,
        }
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        if p.dim() != self.dim {
            return false;
        }
        self.priority
            .iter()
            .map(|&i| p.0[i].sign())
            .find(|s| *s != Sign::NoSign)
            .is_none_or(|s| s == Sign::Plus)
    }

    /// The unique atom: the unit vector of the least significant coordinate.
    pub fn atom(&self) -> LatticePoint {
        LatticePoint::unit(self.dim, *self.priority.last().expect("dim ≥ 2"))
    }

    /// A nonzero element with no factorization into atoms.
    pub fn witness(&self) -> LatticePoint {
        LatticePoint::unit(self.dim, self.priority[0])
    }

    /// `p ∈ ℕ₀·atom`, the submonoid generated by the atoms.
    pub fn in_atomic_span(&self, p: &LatticePoint) -> bool {
        let last = *self.priority.last().expect("dim ≥ 2");
        p.dim() == self.dim
            && p.0
                .iter()
                .enumerate()
                .all(|(i, c)| i == last || c.is_zero())
            && p.0[last].sign() != Sign::Minus
    }

    /// `x − y ∈ M`.
    pub fn divides(&self, y: &LatticePoint, x: &LatticePoint) -> bool {
        self.contains(&x.sub(y))
    }

    /// An element is an atom iff it is nonzero, in the cone, and not the sum of
    /// two nonzero members. Every member outside `ℕ₀·atom` is `(p − atom) + atom`
    /// with both summands nonzero members, and `atom` itself cannot split.
    pub fn is_atom(&self, p: &LatticePoint) -> bool {
        *p == self.atom()
    }

    pub fn report(&self) -> LexConeReport {
        let witness = self.witness();
        LexConeReport {
            dim: self.dim,
            priority: self.priority.clone(),
            atoms: vec![self.atom()],
            witness_in_monoid: self.contains(&witness),
            witness_factorable: self.in_atomic_span(&witness),
            witness,
            atomic: false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[i64]) -> LatticePoint {
        LatticePoint::from_i64(c)
    }

    #[test]
    fn plane_membership() {
        let m = lex_cone(2).unwrap();
        assert!(m.contains(&pt(&[0, 5])));
        assert!(!m.contains(&pt(&[0, -1])));
        assert!(m.contains(&pt(&[1, -100])));
        assert!(m.contains(&pt(&[0, 0])));
    }

    #[test]
    fn atoms_and_witness() {
        let m = lex_cone(2).unwrap();
        let r = m.report();
        assert_eq!(r.atoms, vec![pt(&[0, 1])]);
        assert_eq!(r.witness, pt(&[1, 0]));
        assert!(r.witness_in_monoid && !r.witness_factorable && !r.atomic);
    }

    #[test]
    fn atom_cannot_split_in_a_box() {
        let m = lex_cone(2).unwrap();
        let a = m.atom();
        for x in -6..=6 {
            for y in -6..=6 {
                let p = pt(&[x, y]);
                let q = a.sub(&p);
                if !p.is_zero() && !q.is_zero() {
                    assert!(!(m.contains(&p) && m.contains(&q)), "{p} + {q}");
                }
            }
        }
    }

    #[test]
    fn mirror_swaps_roles() {
        let m = lex_cone(2).unwrap().mirrored();
        assert_eq!(m.atom(), pt(&[1, 0]));
        assert_eq!(m.witness(), pt(&[0, 1]));
        assert!(m.contains(&pt(&[-100, 1])));
        assert!(!m.contains(&pt(&[1, -1])));
    }

    #[test]
    fn higher_dimension() {
        let m = lex_cone(3).unwrap();
        assert_eq!(m.atom(), pt(&[0, 0, 1]));
        assert!(m.contains(&pt(&[0, 1, -7])));
        assert!(lex_cone(1).is_err());
        assert!(LexCone::new(vec![0, 0]).is_err());
    }
}
