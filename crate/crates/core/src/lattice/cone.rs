use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::LatticePoint;
use crate::exactnum::{rat_int, QuadRat};

/// A vector of ℚ(√2)².
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vec2 {
    #[serde(with = "crate::serde_util::quad")]
    pub x: QuadRat,
    #[serde(with = "crate::serde_util::quad")]
    pub y: QuadRat,
}

impl Vec2 {
    pub fn new(x: QuadRat, y: QuadRat) -> Self {
        Vec2 { x, y }
    }

    pub fn from_i64(x: i64, y: i64) -> Self {
        Vec2::new(QuadRat::from_ints(x, 0), QuadRat::from_ints(y, 0))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn cross(&self, o: &Vec2) -> QuadRat {
        &(&self.x * &o.y) - &(&self.y * &o.x)
    }

    pub fn dot(&self, o: &Vec2) -> QuadRat {
        &(&self.x * &o.x) + &(&self.y * &o.y)
    }

    pub fn norm_sq(&self) -> QuadRat {
        self.dot(self)
    }

    /// 0 for angles in [0, π), 1 for [π, 2π).
    fn half(&self) -> u8 {
        let ys = self.y.sign();
        if ys.is_gt() || (ys.is_eq() && self.x.sign().is_gt()) {
            0
        } else {
            1
        }
    }

    fn angle_cmp(&self, o: &Vec2) -> Ordering {
        self.half()
            .cmp(&o.half())
            .then_with(|| o.cross(self).sign())
    }

    fn same_direction(&self, o: &Vec2) -> bool {
        self.cross(o).is_zero() && self.dot(o).sign().is_gt()
    }
}

impl From<&LatticePoint> for Vec2 {
    fn from(p: &LatticePoint) -> Self {
        Vec2::new(
            QuadRat::rational(rat_int(p.x().clone())),
            QuadRat::rational(rat_int(p.y().clone())),
        )
    }
}

/// Shape of the conic hull of a finite subset of the plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Cone2D {
    Origin,
    Ray {
        dir: Vec2,
    },
    /// Pointed cone swept counterclockwise from `start` to `end` (angle < π).
    Wedge {
        start: Vec2,
        end: Vec2,
    },
    /// `{w : cross(boundary, w) ≥ 0}`.
    HalfPlane {
        boundary: Vec2,
    },
    Line {
        dir: Vec2,
    },
    Plane,
}

impl Cone2D {
    /// Conic hull of `gens`; zero vectors are ignored.
    pub fn hull(gens: &[Vec2]) -> Cone2D {
        let mut dirs: Vec<Vec2> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        dirs.sort_by(|a, b| a.angle_cmp(b).then_with(|| a.norm_sq().cmp(&b.norm_sq())));
        // sorted by length within a direction, so the first survivor is the shortest
        dirs.dedup_by(|b, a| a.same_direction(b));
        match dirs.len() {
            0 => return Cone2D::Origin,
            1 => {
                return Cone2D::Ray {
                    dir: dirs.remove(0),
                }
            }
            _ => {}
        }
        let k = dirs.len();
        let mut straight = Vec::new();
        for i in 0..k {
            let (a, b) = (&dirs[i], &dirs[(i + 1) % k]);
            match a.cross(b).sign() {
                Ordering::Less => {
                    return Cone2D::Wedge {
                        start: b.clone(),
                        end: a.clone(),
                    }
                }
                Ordering::Equal => straight.push(i),
                Ordering::Greater => {}
            }
        }
        match straight.len() {
            0 => Cone2D::Plane,
            1 => Cone2D::HalfPlane {
                boundary: dirs[(straight[0] + 1) % k].clone(),
            },
            _ => Cone2D::Line {
                dir: dirs[0].clone(),
            },
        }
    }

    pub fn contains(&self, w: &Vec2) -> bool {
        if w.is_zero() {
            return true;
        }
        match self {
            Cone2D::Origin => false,
            Cone2D::Ray { dir } => dir.same_direction(w),
            Cone2D::Wedge { start, end } => {
                !start.cross(w).sign().is_lt() && !w.cross(end).sign().is_lt()
            }
            Cone2D::HalfPlane { boundary } => !boundary.cross(w).sign().is_lt(),
            Cone2D::Line { dir } => dir.cross(w).is_zero(),
            Cone2D::Plane => true,
        }
    }
}

/// Exact test of `w ∈ cone_ℝ(gens)`.
pub fn cone_member_2d(gens: &[Vec2], w: &Vec2) -> bool {
    Cone2D::hull(gens).contains(w)
}
