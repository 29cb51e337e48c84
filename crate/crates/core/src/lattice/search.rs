use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{LatticeMonoid, LatticePoint, LinearFunctional, Membership, MembershipCertificate};
use crate::exactnum::{rat_int, BigRational, QuadRat};

/// Rank of a list of rational row vectors of length `ncols`.
pub(crate) fn rational_rank(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> usize {
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &pivot;
                for c in col..ncols {
                    let delta = &f * &rows[rank][c];
                    rows[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solves `Σ xⱼ·colsⱼ = rhs` for linearly independent columns.
/// Returns `None` when `rhs` is outside their span.
fn solve_independent(cols: &[&LatticePoint], rhs: &LatticePoint) -> Option<Vec<BigRational>> {
    let k = cols.len();
    let d = rhs.dim();
    // augmented d × (k+1)
    let mut m: Vec<Vec<BigRational>> = (0..d)
        .map(|r| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| rat_int(c.0[r].clone())).collect();
            row.push(rat_int(rhs.0[r].clone()));
            row
        })
        .collect();
    let mut pivots = Vec::with_capacity(k);
    let mut row = 0;
    for col in 0..k {
        let p = (row..d).find(|&r| !m[r][col].is_zero())?;
        m.swap(row, p);
        let pivot = m[row][col].clone();
        for c in col..=k {
            m[row][c] = &m[row][c] / &pivot;
        }
        for r in 0..d {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=k {
                    let delta = &f * &m[row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(row);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| m[r][k].clone()).collect())
}

struct Searcher<'a> {
    gens: Vec<&'a LatticePoint>,
    order: Vec<usize>,
    values: Option<Vec<QuadRat>>,
    functional: Option<&'a LinearFunctional>,
    tail_independent: Vec<bool>,
    bound: u64,
    coeffs: Vec<u64>,
}

impl Searcher<'_> {
    fn dfs(&mut self, level: usize, residual: &LatticePoint) -> bool {
        let n = self.gens.len();
        if level == n {
            return residual.is_zero();
        }
        let fr = self.functional.map(|f| f.eval(residual));
        if let Some(fr) = &fr {
            match fr.sign() {
                Ordering::Less => return false,
                Ordering::Equal => return residual.is_zero(),
                Ordering::Greater => {}
            }
        }
        if self.tail_independent[level] {
            return self.solve_tail(level, residual);
        }
        let g = self.gens[level];
        let mut cap = self.bound;
        if let (Some(fr), Some(values)) = (&fr, &self.values) {
            let q = fr.checked_div(&values[level]).expect("positive").floor();
            cap = cap.min(q.to_u64().unwrap_or(u64::MAX));
        }
        let mut c = cap;
        loop {
            let next = residual.sub(&g.scale(&BigInt::from(c)));
            self.coeffs[level] = c;
            if self.dfs(level + 1, &next) {
                return true;
            }
            if c == 0 {
                break;
            }
            c -= 1;
        }
        self.coeffs[level] = 0;
        false
    }

    fn solve_tail(&mut self, level: usize, residual: &LatticePoint) -> bool {
        let Some(x) = solve_independent(&self.gens[level..], residual) else {
            return false;
        };
        let bound = BigInt::from(self.bound);
        let mut out = Vec::with_capacity(x.len());
        for v in x {
            if !v.denom().is_one() || v.is_negative() || v.numer() > &bound {
                return false;
            }
            out.push(v.numer().to_u64().expect("at most bound"));
        }
        self.coeffs[level..].copy_from_slice(&out);
        true
    }
}

pub(crate) fn search(
    m: &LatticeMonoid,
    target: &LatticePoint,
    bound: u64,
    functional: Option<&LinearFunctional>,
) -> Membership {
    let n = m.generators().len();
    let mut order: Vec<usize> = (0..n).collect();
    let values = functional.map(|f| {
        let vals: Vec<QuadRat> = m.generators().iter().map(|g| f.eval(g)).collect();
        // largest value first: its coefficient range is the smallest
        order.sort_by(|&i, &j| vals[j].cmp(&vals[i]).then(i.cmp(&j)));
        order.iter().map(|&i| vals[i].clone()).collect::<Vec<_>>()
    });
    let gens: Vec<&LatticePoint> = order.iter().map(|&i| &m.generators()[i]).collect();
    let tail_independent = (0..n)
        .map(|s| {
            let tail = &gens[s..];
            tail.len() <= m.dim()
                && rational_rank(
                    tail.iter()
                        .map(|g| g.0.iter().map(|c| rat_int(c.clone())).collect())
                        .collect(),
                    m.dim(),
                ) == tail.len()
        })
        .collect();
    let mut s = Searcher {
        gens,
        order,
        values,
        functional,
        tail_independent,
        bound,
        coeffs: vec![0; n],
    };
    if s.dfs(0, target) {
        let coefficients: BTreeMap<usize, u64> = s
            .order
            .iter()
            .zip(&s.coeffs)
            .filter(|&(_, &c)| c > 0)
            .map(|(&i, &c)| (i, c))
            .collect();
        let certificate =
            MembershipCertificate::new(target.clone(), m.generators().to_vec(), coefficients)
                .expect("search only accepts exact representations");
        Membership::Found { certificate }
    } else {
        Membership::NotFound { bound }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![vec![rat_int(1), rat_int(2)], vec![rat_int(2), rat_int(4)]];
        assert_eq!(rational_rank(rows, 2), 1);
    }

    #[test]
    fn solve_rejects_out_of_span() {
        let a = LatticePoint::from_i64(&[1, 1, 0]);
        assert!(solve_independent(&[&a], &LatticePoint::from_i64(&[1, 0, 0])).is_none());
        let x = solve_independent(&[&a], &LatticePoint::from_i64(&[3, 3, 0])).unwrap();
        assert_eq!(x, vec![rat_int(3)]);
    }
}
