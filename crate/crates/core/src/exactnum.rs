//! Exact arithmetic in ℚ(√2), comparisons against rational multiples of √3,
//! and the continued-fraction convergents of √2.
//!
//! Everything here is decided with integer arithmetic. Floating point never
//! participates in a sign decision; decimal renderings are produced from exact
//! floors.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational;

/// Builds a rational from two machine integers.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds an integral rational.
pub fn rat_int<T: Into<BigInt>>(n: T) -> BigRational {
    BigRational::from_integer(n.into())
}

fn sign_of(x: &BigRational) -> Ordering {
    x.numer().sign().cmp_zero()
}

trait SignExt {
    fn cmp_zero(self) -> Ordering;
}

impl SignExt for Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

/// The real number `a + b·√2` with rational parts.
///
/// Since √2 is irrational the pair `(a, b)` is unique, so structural equality
/// is numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QuadRat {
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadRat {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadRat { a, b }
    }

    pub fn from_ints<A: Into<BigInt>, B: Into<BigInt>>(a: A, b: B) -> Self {
        QuadRat::new(rat_int(a), rat_int(b))
    }

    pub fn rational(a: BigRational) -> Self {
        QuadRat::new(a, BigRational::zero())
    }

    pub fn zero() -> Self {
        QuadRat::default()
    }

    pub fn one() -> Self {
        QuadRat::rational(BigRational::one())
    }

    pub fn sqrt2() -> Self {
        QuadRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a − b·√2`.
    pub fn conj(&self) -> Self {
        QuadRat::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a² − 2b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - rat_int(2) * &self.b * &self.b
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        QuadRat::new(&self.a * k, &self.b * k)
    }

    pub fn sign(&self) -> Ordering {
        quad_sign(self)
    }

    pub fn abs(&self) -> Self {
        if self.sign() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QuadRat::new(&self.a / &n, -&self.b / &n))
    }

    pub fn checked_div(&self, rhs: &QuadRat) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    /// Exact `⌊a + b√2⌋`.
    pub fn floor(&self) -> BigInt {
        // Approximate b·√2 by b·s/N with s = ⌊N√2⌋ and N large enough that the
        // error is below 1/4, then correct the guess with exact sign tests.
        let n: BigInt = self.b.numer().abs() * 4 + 4;
        let s: BigInt = (&n * &n * 2u32).sqrt();
        let approx = &self.a + &self.b * BigRational::new(s, n);
        let mut guess = approx.floor().to_integer();
        while (self - &QuadRat::rational(BigRational::from_integer(guess.clone()))).sign()
            == Ordering::Less
        {
            guess -= 1;
        }
        loop {
            let next = BigRational::from_integer(&guess + 1);
            if (self - &QuadRat::rational(next)).sign() == Ordering::Less {
                break;
            }
            guess += 1;
        }
        guess
    }

    /// Exact `⌈a + b√2⌉`.
    pub fn ceil(&self) -> BigInt {
        -(-self.clone()).floor()
    }

    /// Decimal rendering truncated (rounded toward −∞) to `digits` places.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = self
            .scale(&BigRational::from_integer(scale.clone()))
            .floor();
        format_fixed(&scaled, &scale, digits)
    }

    /// Floating-point approximation, for plotting only.
    pub fn to_f64(&self) -> f64 {
        self.to_decimal(17).parse().unwrap_or(f64::NAN)
    }
}

fn format_fixed(scaled: &BigInt, scale: &BigInt, digits: usize) -> String {
    let (q, r): (BigInt, BigInt) = scaled.div_mod_floor(scale);
    if digits == 0 {
        return q.to_string();
    }
    // q + r/scale with 0 ≤ r < scale; render as a signed fixed-point string.
    if q.is_negative() && !r.is_zero() {
        let (q1, r1): (BigInt, BigInt) = (-(&q + 1u32), scale - &r);
        format!("-{}.{:0>width$}", q1, r1.to_string(), width = digits)
    } else {
        format!("{}.{:0>width$}", q, r.to_string(), width = digits)
    }
}

/// Sign of the real number `a + b·√2`, decided by comparing `a²` with `2b²`.
pub fn quad_sign(x: &QuadRat) -> Ordering {
    let sa = sign_of(&x.a);
    let sb = sign_of(&x.b);
    match (sa, sb) {
        (_, Ordering::Equal) => sa,
        (Ordering::Equal, _) => sb,
        _ if sa == sb => sa,
        _ => {
            let a2 = &x.a * &x.a;
            let b2 = rat_int(2) * &x.b * &x.b;
            // a² ≠ 2b² because √2 is irrational
            if a2 > b2 {
                sa
            } else {
                sb
            }
        }
    }
}

/// Sign of `x − k·√3` for `x ∈ ℚ(√2)` and rational `k`.
///
/// Returns `Equal` only when both `x` and `k` vanish, since √3 ∉ ℚ(√2).
pub fn cmp_sqrt3(x: &QuadRat, k: &BigRational) -> Ordering {
    let sx = quad_sign(x);
    let sk = sign_of(k);
    if sk == Ordering::Equal {
        return sx;
    }
    if sx == Ordering::Equal {
        return sk.reverse();
    }
    if sx != sk {
        return sx;
    }
    // same sign: compare |x| with |k|√3 through x² − 3k²
    let diff = x.square() - QuadRat::rational(rat_int(3) * k * k);
    let s = quad_sign(&diff);
    debug_assert_ne!(s, Ordering::Equal);
    if sx == Ordering::Greater {
        s
    } else {
        s.reverse()
    }
}

impl Ord for QuadRat {
    fn cmp(&self, other: &Self) -> Ordering {
        quad_sign(&(self - other))
    }
}

impl PartialOrd for QuadRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a QuadRat> for &'a QuadRat {
    type Output = QuadRat;
    fn add(self, rhs: &QuadRat) -> QuadRat {
        QuadRat::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub<&'a QuadRat> for &'a QuadRat {
    type Output = QuadRat;
    fn sub(self, rhs: &QuadRat) -> QuadRat {
        QuadRat::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul<&'a QuadRat> for &'a QuadRat {
    type Output = QuadRat;
    fn mul(self, rhs: &QuadRat) -> QuadRat {
        QuadRat::new(
            &self.a * &rhs.a + rat_int(2) * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QuadRat> for QuadRat {
            type Output = QuadRat;
            fn $m(self, rhs: QuadRat) -> QuadRat {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QuadRat> for QuadRat {
            type Output = QuadRat;
            fn $m(self, rhs: &QuadRat) -> QuadRat {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat::new(-self.a, -self.b)
    }
}

impl Neg for &QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        -self.clone()
    }
}

impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{} - {}*sqrt2", self.a, -self.b.clone())
        } else {
            write!(f, "{} + {}*sqrt2", self.a, self.b)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{0}` as a + b*sqrt2")]
pub struct ParseQuadError(pub String);

impl FromStr for QuadRat {
    type Err = ParseQuadError;

    /// Accepts `a`, `b*sqrt2`, `sqrt2`, `a + b*sqrt2` and `a - b*sqrt2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseQuadError(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        // split into signed summands
        let mut parts = Vec::new();
        let mut start = 0;
        for (i, c) in compact.char_indices() {
            if (c == '+' || c == '-') && i > start && !compact[..i].ends_with('/') {
                parts.push(&compact[start..i]);
                start = i;
            }
        }
        parts.push(&compact[start..]);
        let mut out = QuadRat::zero();
        for part in parts {
            let part = part.strip_prefix('+').unwrap_or(part);
            if let Some(coef) = part.strip_suffix("sqrt2") {
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                let c = match coef {
                    "" => BigRational::one(),
                    "-" => -BigRational::one(),
                    _ => coef.parse::<BigRational>().map_err(|_| err())?,
                };
                out.b += c;
            } else {
                out.a += part.parse::<BigRational>().map_err(|_| err())?;
            }
        }
        Ok(out)
    }
}

/// A number `q + c·√3` with `q ∈ ℚ(√2)` and rational `c`.
///
/// Only the operations the construction needs are provided: additive
/// structure, rational scaling, and exact comparison.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SurdSum {
    pub quad: QuadRat,
    pub sqrt3: BigRational,
}

impl SurdSum {
    pub fn new(quad: QuadRat, sqrt3: BigRational) -> Self {
        SurdSum { quad, sqrt3 }
    }

    /// `k·√3`.
    pub fn sqrt3_multiple(k: BigRational) -> Self {
        SurdSum::new(QuadRat::zero(), k)
    }

    pub fn sign(&self) -> Ordering {
        cmp_sqrt3(&self.quad, &-self.sqrt3.clone())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        SurdSum::new(self.quad.scale(k), &self.sqrt3 * k)
    }

    /// Compares a number of ℚ(√2) against `self`.
    pub fn cmp_quad(&self, x: &QuadRat) -> Ordering {
        // sign(x − q − c√3)
        cmp_sqrt3(&(x - &self.quad), &self.sqrt3).reverse()
    }

    pub fn max(self, other: SurdSum) -> SurdSum {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl From<QuadRat> for SurdSum {
    fn from(quad: QuadRat) -> Self {
        SurdSum::new(quad, BigRational::zero())
    }
}

impl Ord for SurdSum {
    fn cmp(&self, other: &Self) -> Ordering {
        SurdSum::new(&self.quad - &other.quad, &self.sqrt3 - &other.sqrt3).sign()
    }
}

impl PartialOrd for SurdSum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sqrt3.is_negative() {
            write!(f, "{} - {}*sqrt3", self.quad, -self.sqrt3.clone())
        } else {
            write!(f, "{} + {}*sqrt3", self.quad, self.sqrt3)
        }
    }
}

/// A continued-fraction convergent `p/q` of √2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub p: BigInt,
    pub q: BigInt,
    pub index: usize,
}

impl Convergent {
    /// `p − q√2`.
    pub fn error(&self) -> QuadRat {
        QuadRat::new(rat_int(self.p.clone()), -rat_int(self.q.clone()))
    }
}

/// Endless iterator over the convergents of √2 = [1; 2, 2, 2, …].
#[derive(Clone, Debug)]
pub struct Sqrt2Convergents {
    prev: (BigInt, BigInt),
    cur: (BigInt, BigInt),
    index: usize,
}

impl Default for Sqrt2Convergents {
    fn default() -> Self {
        Sqrt2Convergents {
            prev: (BigInt::one(), BigInt::zero()),
            cur: (BigInt::one(), BigInt::one()),
            index: 0,
        }
    }
}

impl Iterator for Sqrt2Convergents {
    type Item = Convergent;

    fn next(&mut self) -> Option<Convergent> {
        let out = Convergent {
            p: self.cur.0.clone(),
            q: self.cur.1.clone(),
            index: self.index,
        };
        let p = &self.cur.0 * 2 + &self.prev.0;
        let q = &self.cur.1 * 2 + &self.prev.1;
        self.prev = std::mem::replace(&mut self.cur, (p, q));
        self.index += 1;
        Some(out)
    }
}

/// The first `count` convergents of √2.
pub fn sqrt2_convergents(count: usize) -> Vec<Convergent> {
    Sqrt2Convergents::default().take(count).collect()
}

/// Renders a rational with `digits` decimal places (rounded toward −∞).
pub fn rational_to_decimal(x: &BigRational, digits: usize) -> String {
    QuadRat::rational(x.clone()).to_decimal(digits)
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => rational_to_decimal(x, 17).parse().unwrap_or(f64::NAN),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> QuadRat {
        QuadRat::from_ints(a, b)
    }

    #[test]
    fn quad_sign_examples() {
        assert_eq!(quad_sign(&q(3, -2)), Ordering::Greater);
        assert_eq!(quad_sign(&q(7, -5)), Ordering::Less);
        assert_eq!(quad_sign(&q(0, 0)), Ordering::Equal);
        assert_eq!(quad_sign(&q(-3, 2)), Ordering::Less);
        assert_eq!(quad_sign(&q(0, -1)), Ordering::Less);
    }

    #[test]
    fn cmp_sqrt3_examples() {
        assert_eq!(cmp_sqrt3(&q(2, 0), &rat(1, 1)), Ordering::Greater);
        assert_eq!(cmp_sqrt3(&q(0, 1), &rat(1, 1)), Ordering::Less);
        assert_eq!(cmp_sqrt3(&q(7, -5), &rat(0, 1)), quad_sign(&q(7, -5)));
        assert_eq!(cmp_sqrt3(&q(-2, 0), &rat(-1, 1)), Ordering::Less);
        assert_eq!(cmp_sqrt3(&q(-1, 0), &rat(-1, 1)), Ordering::Greater);
        assert_eq!(cmp_sqrt3(&q(0, 0), &rat(0, 1)), Ordering::Equal);
        assert_eq!(cmp_sqrt3(&q(0, 0), &rat(1, 2)), Ordering::Less);
    }

    #[test]
    fn convergent_examples() {
        let c: Vec<_> = sqrt2_convergents(6)
            .into_iter()
            .map(|c| (c.p.to_i64().unwrap(), c.q.to_i64().unwrap()))
            .collect();
        assert_eq!(
            c,
            vec![(1, 1), (3, 2), (7, 5), (17, 12), (41, 29), (99, 70)]
        );
        assert_eq!(sqrt2_convergents(1).len(), 1);
    }

    #[test]
    fn floor_and_decimal() {
        assert_eq!(q(0, 1).floor(), BigInt::from(1));
        assert_eq!(q(0, -1).floor(), BigInt::from(-2));
        assert_eq!(q(3, -2).floor(), BigInt::from(0));
        assert_eq!(q(7, -5).ceil(), BigInt::from(0));
        assert_eq!(q(0, 1).to_decimal(6), "1.414213");
        assert_eq!(q(0, -1).to_decimal(3), "-1.415");
        assert_eq!(q(5, 0).to_decimal(2), "5.00");
    }

    #[test]
    fn inverse_and_division() {
        let x = q(7, -5);
        let inv = x.inv().unwrap();
        assert_eq!(&x * &inv, QuadRat::one());
        assert!(QuadRat::zero().inv().is_none());
    }

    #[test]
    fn parse_and_display() {
        for s in [
            "3 - 2*sqrt2",
            "1/2 + 3/4*sqrt2",
            "0 + 1*sqrt2",
            "-7 + 0*sqrt2",
        ] {
            let x: QuadRat = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!("sqrt2".parse::<QuadRat>().unwrap(), QuadRat::sqrt2());
        assert_eq!("1+sqrt2".parse::<QuadRat>().unwrap(), q(1, 1));
        assert_eq!("-sqrt2".parse::<QuadRat>().unwrap(), q(0, -1));
        assert!("1 + x".parse::<QuadRat>().is_err());
    }

    #[test]
    fn surd_sum_ordering() {
        // (2 − √3)/2 ≈ 0.134
        let t = SurdSum::new(q(1, 0), rat(-1, 2));
        assert_eq!(t.cmp_quad(&q(3, -2)), Ordering::Less); // 0.1716 > t
        assert_eq!(t.cmp_quad(&q(-7, 5)), Ordering::Greater); // 0.0711 < t
        let six_sqrt3 = SurdSum::sqrt3_multiple(rat(6, 1));
        let two_sqrt2 = SurdSum::from(q(0, 2));
        assert_eq!(six_sqrt3.clone().max(two_sqrt2), six_sqrt3);
    }
}
