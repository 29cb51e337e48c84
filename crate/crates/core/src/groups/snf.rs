use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::GroupError;
use crate::serde_util::Int;

/// Dense integer matrix; serialized as an array of rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(data: Vec<Vec<BigInt>>) -> Result<Self, GroupError> {
        let cols = data.first().map_or(0, Vec::len);
        if data.iter().any(|r| r.len() != cols) {
            return Err(GroupError::Ragged);
        }
        Ok(IntMatrix {
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, GroupError> {
        IntMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| x.into()).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn diag(entries: &[BigInt], rows: usize, cols: usize) -> Self {
        let mut m = IntMatrix::zeros(rows, cols);
        for (i, e) in entries.iter().enumerate().take(rows.min(cols)) {
            m.data[i][i] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn data(&self) -> &[Vec<BigInt>] {
        &self.data
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, GroupError> {
        if self.cols != other.rows {
            return Err(GroupError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += &self.data[i][k] * &other.data[k][j];
                }
            }
        }
        Ok(out)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.data[i][j].is_zero()))
    }

    /// Fraction-free (Bareiss) elimination; `None` for non-square input.
    pub fn determinant(&self) -> Option<BigInt> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(BigInt::one());
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(i) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Some(BigInt::zero());
                };
                a.swap(i, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Some(sign * &a[n - 1][n - 1])
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.data.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.data {
            r.swap(i, j);
        }
    }

    /// row[dst] += c·row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = c * &self.data[src][j];
            self.data[dst][j] += v;
        }
    }

    /// col[dst] += c·col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        for r in &mut self.data {
            let v = c * &r[src];
            r[dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i] {
            *x = -&*x;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .data
            .iter()
            .map(|r| {
                let xs: Vec<String> = r.iter().map(ToString::to_string).collect();
                format!("[{}]", xs.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Int>> = self
            .data
            .iter()
            .map(|r| r.iter().cloned().map(Int).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<Int>> = Vec::deserialize(d)?;
        IntMatrix::new(
            rows.into_iter()
                .map(|r| r.into_iter().map(|i| i.0).collect())
                .collect(),
        )
        .map_err(serde::de::Error::custom)
    }
}

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`,
/// diagonal entries nonnegative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.data[i][i].clone())
            .collect()
    }

    /// Re-multiplies and re-checks every claimed property against `a`.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let Ok(ua) = self.u.mul(a) else { return false };
        let Ok(uav) = ua.mul(&self.v) else {
            return false;
        };
        let unit = |m: &IntMatrix| m.determinant().is_some_and(|d| d.abs().is_one());
        let diag = self.diagonal();
        let divides = diag.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            }
        });
        uav == self.d
            && self.d.is_diagonal()
            && unit(&self.u)
            && unit(&self.v)
            && divides
            && diag.iter().all(|x| !x.is_negative())
    }
}

fn min_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = &d.data[i][j];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d.data[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_pivot(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let p = d.data[t][t].clone();
            for i in t + 1..m {
                let q = -d.data[i][t].div_floor(&p);
                if !q.is_zero() {
                    d.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                }
            }
            for j in t + 1..n {
                let q = -d.data[t][j].div_floor(&p);
                if !q.is_zero() {
                    d.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                }
            }
            // a nonzero remainder is smaller than the pivot: move it in and repeat
            if let Some(i) = (t + 1..m).find(|&i| !d.data[i][t].is_zero()) {
                d.swap_rows(t, i);
                u.swap_rows(t, i);
                continue;
            }
            if let Some(j) = (t + 1..n).find(|&j| !d.data[t][j].is_zero()) {
                d.swap_cols(t, j);
                v.swap_cols(t, j);
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.data[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d.data[t][t].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { u, d, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(rows: &[&[i64]], diag: &[i64]) {
        let a = IntMatrix::from_i64(rows).unwrap();
        let s = smith_normal_form(&a);
        assert!(s.verify(&a), "{a}");
        let want: Vec<BigInt> = diag.iter().map(|&x| x.into()).collect();
        assert_eq!(s.diagonal(), want, "{a}");
    }

    #[test]
    fn examples() {
        check(&[&[2, 0], &[0, 3]], &[1, 6]);
        check(&[&[0]], &[0]);
        check(&[&[1, 0], &[0, 1]], &[1, 1]);
        check(&[&[0, 0], &[0, 2]], &[2, 0]);
        check(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]], &[2, 6, 12]);
        check(&[&[6, 4]], &[2]);
        check(&[&[6], &[4], &[9]], &[1]);
    }

    #[test]
    fn determinants() {
        let a = IntMatrix::from_i64(&[&[2, -3, 1], &[2, 0, -1], &[1, 4, 5]]).unwrap();
        assert_eq!(a.determinant(), Some(49.into()));
        let z = IntMatrix::from_i64(&[&[0, 1], &[0, 2]]).unwrap();
        assert_eq!(z.determinant(), Some(0.into()));
        let s = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(s.determinant(), Some((-1).into()));
    }

    #[test]
    fn ragged_rejected() {
        assert!(IntMatrix::from_i64(&[&[1, 2], &[3]]).is_err());
        assert!(serde_json::from_str::<IntMatrix>("[[1],[2,3]]").is_err());
        let m: IntMatrix = serde_json::from_str("[[1,2],[3,4]]").unwrap();
        assert_eq!(serde_json::to_string(&m).unwrap(), "[[1,2],[3,4]]");
    }
}
