use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;

use super::ConstructionError;
use crate::exactnum::{cmp_sqrt3, rat, rat_int, BigRational, QuadRat, Sqrt2Convergents, SurdSum};
use crate::lattice::LatticePoint;
use crate::report::Check;

/// The line `L: y = √2·x + √3` together with the axis `L₀ = ℝ·(1, √2)`.
///
/// Both projections are scaled by `√3`: the signed distance of `w` to `L₀`
/// is `π̃_u(w)/√3`, and `w ∈ L⁺` exactly when `π̃_u(w) ≥ √3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TangentLineConfig;

impl TangentLineConfig {
    /// `y − √2·x`.
    pub fn pi_u(&self, w: &LatticePoint) -> QuadRat {
        QuadRat::new(rat_int(w.y().clone()), -rat_int(w.x().clone()))
    }

    /// `x + √2·y`.
    pub fn pi_v(&self, w: &LatticePoint) -> QuadRat {
        QuadRat::new(rat_int(w.x().clone()), rat_int(w.y().clone()))
    }

    /// Position of `w` relative to `L`: `Greater` on the far side from the
    /// origin, `Less` on the origin side. Never `Equal` for lattice points.
    pub fn side_of_line(&self, w: &LatticePoint) -> Ordering {
        cmp_sqrt3(&self.pi_u(w), &BigRational::one())
    }

    pub fn in_upper(&self, w: &LatticePoint) -> bool {
        self.side_of_line(w) != Ordering::Less
    }

    pub fn in_lower(&self, w: &LatticePoint) -> bool {
        self.side_of_line(w) != Ordering::Greater
    }

    /// Closed half-plane `L₀⁺` on the same side of the axis as `L`.
    pub fn in_axis_upper(&self, w: &LatticePoint) -> bool {
        self.pi_u(w).sign() != Ordering::Less
    }

    /// Exact checks of the geometric facts the construction depends on.
    pub fn audit(&self) -> Vec<Check> {
        // distance from the origin to y = kx + c is |c|/√(1+k²); here c² = 3 = 1 + k²
        let tangent = rat(3, 1) == rat(1, 1) + QuadRat::sqrt2().square().a;
        // foot of the perpendicular is (−√2, 1)/√3
        let foot = (-QuadRat::sqrt2()).sign() == Ordering::Less;
        let slope = QuadRat::sqrt2().sign() == Ordering::Greater;
        let lattice_free = (-40i64..=40)
            .flat_map(|x| (-40i64..=40).map(move |y| (x, y)))
            .all(|(x, y)| self.side_of_line(&LatticePoint::from_i64(&[x, y])) != Ordering::Equal);
        vec![
            Check::new("line is tangent to the unit circle", tangent),
            Check::new("tangent point lies in the second quadrant", foot),
            Check::new("slope is positive", slope),
            Check::with_detail(
                "no lattice point on the line",
                lattice_free,
                "exact sweep of [-40,40]^2; in general y - sqrt2*x = sqrt3 would make sqrt3 rational in Q(sqrt2)",
            ),
        ]
    }
}

/// First `±(q, p)` over the √2-convergents `p/q` with `0 < π̃_u < threshold`,
/// `|π̃_v| > pv_floor` and lying strictly on the origin side of `L`.
pub fn find_near_axis_point(
    threshold: &SurdSum,
    pv_floor: &SurdSum,
) -> Result<LatticePoint, ConstructionError> {
    if threshold.sign() != Ordering::Greater {
        return Err(ConstructionError::NonPositiveThreshold);
    }
    let line = TangentLineConfig;
    for c in Sqrt2Convergents::default() {
        let mut w = LatticePoint::new(vec![c.q.clone(), c.p.clone()]);
        if line.pi_u(&w).sign() == Ordering::Less {
            w = w.neg();
        }
        let pu = line.pi_u(&w);
        if pu.is_zero() || threshold.cmp_quad(&pu) != Ordering::Greater {
            continue;
        }
        if pv_floor.cmp_quad(&line.pi_v(&w).abs()) != Ordering::Less {
            continue;
        }
        if line.side_of_line(&w) == Ordering::Less {
            return Ok(w);
        }
    }
    unreachable!("convergent iterator is infinite")
}

/// Least `m ≥ 1` with `m·a ∈ L⁺`.
pub fn min_multiple_into_upper(a: &LatticePoint) -> Result<BigInt, ConstructionError> {
    let x = TangentLineConfig.pi_u(a);
    if x.sign() != Ordering::Greater {
        return Err(ConstructionError::NonPositiveProjection(a.clone()));
    }
    let reaches = |m: &BigInt| {
        cmp_sqrt3(&x.scale(&rat_int(m.clone())), &BigRational::one()) != Ordering::Less
    };
    // m ≈ √(3/x²)
    let approx = QuadRat::rational(rat(3, 1))
        .checked_div(&x.square())
        .expect("x is nonzero")
        .floor();
    let mut m = approx.sqrt().max(BigInt::one());
    while !reaches(&m) {
        m += 1;
    }
    while m > BigInt::one() && reaches(&(&m - 1)) {
        m -= 1;
    }
    Ok(m)
}

/// Least integer `ℓ` with `ℓ·min π̃_u(aᵢ) > 4·max |π̃_v(aᵢ)|`.
pub fn spread_bound(points: &[LatticePoint]) -> Result<BigInt, ConstructionError> {
    let line = TangentLineConfig;
    let min_u = points
        .iter()
        .map(|p| line.pi_u(p))
        .min()
        .ok_or(ConstructionError::EmptyState)?;
    if min_u.sign() != Ordering::Greater {
        return Err(ConstructionError::NonPositiveProjection(
            points
                .iter()
                .find(|p| line.pi_u(p) == min_u)
                .cloned()
                .expect("minimum is attained"),
        ));
    }
    let max_v = points
        .iter()
        .map(|p| line.pi_v(p).abs())
        .max()
        .expect("nonempty");
    let ratio = max_v
        .scale(&rat(4, 1))
        .checked_div(&min_u)
        .expect("positive minimum");
    Ok(ratio.floor() + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> LatticePoint {
        LatticePoint::from_i64(&[x, y])
    }

    fn half_gap(m: i64, a: &LatticePoint) -> SurdSum {
        SurdSum::new(TangentLineConfig.pi_u(a).scale(&rat(m, 2)), rat(-1, 2))
    }

    #[test]
    fn audit_passes() {
        assert!(TangentLineConfig.audit().iter().all(|c| c.passed));
    }

    #[test]
    fn near_axis_examples() {
        let t = half_gap(2, &pt(0, 1));
        let zero = SurdSum::from(QuadRat::zero());
        assert_eq!(find_near_axis_point(&t, &zero).unwrap(), pt(-5, -7));
        let fifth = SurdSum::from(QuadRat::rational(rat(1, 5)));
        assert_eq!(find_near_axis_point(&fifth, &zero).unwrap(), pt(2, 3));
        let floor = SurdSum::from(TangentLineConfig.pi_v(&pt(-5, -7)).abs());
        assert_eq!(find_near_axis_point(&t, &floor).unwrap(), pt(12, 17));
        assert!(matches!(
            find_near_axis_point(&zero, &zero),
            Err(ConstructionError::NonPositiveThreshold)
        ));
    }

    #[test]
    fn min_multiple_examples() {
        assert_eq!(min_multiple_into_upper(&pt(0, 1)).unwrap(), BigInt::from(2));
        assert_eq!(
            min_multiple_into_upper(&pt(-5, -7)).unwrap(),
            BigInt::from(25)
        );
        assert!(min_multiple_into_upper(&pt(1, 1)).is_err());
    }

    #[test]
    fn spread_bound_examples() {
        assert_eq!(spread_bound(&[pt(0, 1)]).unwrap(), BigInt::from(6));
        let stage1 = [pt(0, 1), pt(125, 177), pt(-5, -7)];
        assert_eq!(spread_bound(&stage1).unwrap(), BigInt::from(21125));
    }
}
