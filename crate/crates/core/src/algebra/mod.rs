//! Monoid algebras `F_p[x; M]` with exponents in a totally ordered monoid.
//!
//! Elements are kept in canonical form: exponents strictly decreasing, no zero
//! coefficients. Text form is `c*x^(a/b) + …`, printed with ascending
//! exponents.

mod classify;
mod search;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exactnum::BigRational;
use crate::primes::is_prime;
use crate::puiseux::{BetaElem, PuiseuxError};

pub use classify::{
    classify_group_algebra, frobenius_root, length_demo, rational_ge1_split, ExponentGroup,
    FieldDescriptor, FrobeniusCertificate, GroupAlgebraClassification, GroupDescriptor, LengthDemo,
    QFactorization,
};
pub use search::{
    irreducible_search_bounded, ExponentTruncation, SearchReport, SearchStatus, TRUNCATION_CAVEAT,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operands live over F_{left} and F_{right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("exponent {exponent} is not in {group}")]
    NotInGroup { exponent: String, group: String },
    #[error("exponent {exponent} is not divisible by {p} in {group}")]
    NotDivisible {
        exponent: String,
        p: u64,
        group: String,
    },
    #[error("the group is trivial")]
    TrivialGroup,
    #[error("characteristic {0} is neither 0 nor prime")]
    BadCharacteristic(u64),
    #[error("{0} is not greater than 1")]
    NotGreaterThanOne(String),
    #[error("bound must be at least 2, got {0}")]
    BoundTooSmall(u64),
    #[error("exponent {0} is outside the truncated monoid")]
    OutsideTruncation(String),
    #[error(transparent)]
    Puiseux(#[from] PuiseuxError),
    #[error(transparent)]
    Group(#[from] crate::groups::GroupError),
}

/// An element of `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeFieldElem {
    value: u64,
    p: u64,
}

impl PrimeFieldElem {
    pub fn new(value: i64, p: u64) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(PrimeFieldElem {
            value: value.rem_euclid(p as i64) as u64,
            p,
        })
    }

    fn raw(value: u64, p: u64) -> Self {
        PrimeFieldElem {
            value: value % p,
            p,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn add(self, o: Self) -> Self {
        PrimeFieldElem::raw(
            ((self.value as u128 + o.value as u128) % self.p as u128) as u64,
            self.p,
        )
    }

    pub fn mul(self, o: Self) -> Self {
        PrimeFieldElem::raw(
            ((self.value as u128 * o.value as u128) % self.p as u128) as u64,
            self.p,
        )
    }

    pub fn neg(self) -> Self {
        PrimeFieldElem::raw(self.p - self.value, self.p)
    }

    pub fn pow(self, mut e: u64) -> Self {
        let (mut b, mut r) = (self, PrimeFieldElem::raw(1, self.p));
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(b);
            }
            b = b.mul(b);
            e >>= 1;
        }
        r
    }

    /// Fermat inverse; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        (!self.is_zero()).then(|| self.pow(self.p - 2))
    }
}

/// A totally ordered, cancellative exponent monoid.
pub trait Exponent: Clone + Ord + fmt::Debug {
    fn plus(&self, other: &Self) -> Self;
    /// The identity of the monoid this exponent lives in.
    fn zero_like(&self) -> Self;
    fn is_zero_exp(&self) -> bool;
    /// Text between `x^(` and `)`.
    fn render(&self) -> String;
}

impl Exponent for BigRational {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn is_zero_exp(&self) -> bool {
        self.is_zero()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Exponent for BetaElem {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn zero_like(&self) -> Self {
        BetaElem::zero(self.beta.clone())
    }
    fn is_zero_exp(&self) -> bool {
        self.is_zero()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

/// `Σ cᵢ x^{eᵢ}` over `F_p`, exponents strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElem<E: Exponent = BigRational> {
    p: u64,
    terms: Vec<(E, u64)>,
}

impl<E: Exponent> AlgebraElem<E> {
    pub fn zero(p: u64) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(AlgebraElem {
            p,
            terms: Vec::new(),
        })
    }

    /// Canonicalizes arbitrary `(exponent, coefficient)` pairs.
    pub fn from_terms(
        p: u64,
        terms: impl IntoIterator<Item = (E, i64)>,
    ) -> Result<Self, AlgebraError> {
        AlgebraElem::<E>::zero(p)?;
        let mut acc: BTreeMap<E, u64> = BTreeMap::new();
        for (e, c) in terms {
            let c = c.rem_euclid(p as i64) as u64;
            let slot = acc.entry(e).or_insert(0);
            *slot = (*slot + c) % p;
        }
        Ok(Self::from_map(p, acc))
    }

    pub fn monomial(p: u64, coeff: i64, exponent: E) -> Result<Self, AlgebraError> {
        AlgebraElem::from_terms(p, [(exponent, coeff)])
    }

    fn from_map(p: u64, acc: BTreeMap<E, u64>) -> Self {
        AlgebraElem {
            p,
            terms: acc.into_iter().rev().filter(|(_, c)| *c != 0).collect(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Terms with strictly decreasing exponents.
    pub fn terms(&self) -> &[(E, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// A single term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_zero_exp()
    }

    pub fn deg(&self) -> Option<&E> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn ord(&self) -> Option<&E> {
        self.terms.last().map(|t| &t.0)
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.p != other.p {
            return Err(AlgebraError::ModulusMismatch {
                left: self.p,
                right: other.p,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut acc: BTreeMap<E, u64> = BTreeMap::new();
        for (e, c) in self.terms.iter().chain(&other.terms) {
            let slot = acc.entry(e.clone()).or_insert(0);
            *slot = (*slot + c) % self.p;
        }
        Ok(Self::from_map(self.p, acc))
    }

    pub fn neg(&self) -> Self {
        AlgebraElem {
            p: self.p,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), (self.p - c) % self.p))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let p = self.p as u128;
        let mut acc: BTreeMap<E, u64> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let slot = acc.entry(e1.plus(e2)).or_insert(0);
                *slot = ((*slot as u128 + *c1 as u128 * *c2 as u128) % p) as u64;
            }
        }
        Ok(Self::from_map(self.p, acc))
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, mut n: u64) -> Self {
        let one_exp = match self.terms.first() {
            Some((e, _)) => e.zero_like(),
            // 0^0 = 1 needs an exponent we do not have; 0^n = 0 otherwise
            None => return self.clone(),
        };
        let mut result = AlgebraElem {
            p: self.p,
            terms: vec![(one_exp, 1)],
        };
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base).expect("same modulus");
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).expect("same modulus");
            }
        }
        result
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: PrimeFieldElem) -> Self {
        let acc = self
            .terms
            .iter()
            .map(|(e, x)| (e.clone(), PrimeFieldElem::raw(*x, self.p).mul(c).value()))
            .collect();
        Self::from_map(self.p, acc)
    }

    pub fn leading_coefficient(&self) -> Option<PrimeFieldElem> {
        self.terms
            .first()
            .map(|(_, c)| PrimeFieldElem::raw(*c, self.p))
    }
}

impl AlgebraElem<BigRational> {
    pub fn one(p: u64) -> Result<Self, AlgebraError> {
        AlgebraElem::monomial(p, 1, BigRational::zero())
    }

    /// `x^e`.
    pub fn x_pow(p: u64, e: BigRational) -> Result<Self, AlgebraError> {
        AlgebraElem::monomial(p, 1, e)
    }

    pub fn parse(s: &str, p: u64) -> Result<Self, AlgebraError> {
        let terms = parse_terms(s)?;
        AlgebraElem::from_terms(
            p,
            terms
                .into_iter()
                .map(|(e, c)| (e, c.mod_floor(&BigInt::from(p)).to_i64().expect("below p"))),
        )
    }
}

impl<E: Exponent> fmt::Display for AlgebraElem<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let exp = e.render();
                if e.is_zero_exp() {
                    c.to_string()
                } else {
                    let x = if exp == "1" {
                        "x".to_string()
                    } else if exp.chars().all(|ch| ch.is_ascii_digit()) {
                        format!("x^{exp}")
                    } else {
                        format!("x^({exp})")
                    };
                    if *c == 1 {
                        x
                    } else {
                        format!("{c}*{x}")
                    }
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Splits on top-level `+`/`-` and reads `c`, `c*x`, `x^k`, `c*x^(a/b)`.
fn parse_terms(s: &str) -> Result<Vec<(BigRational, BigInt)>, AlgebraError> {
    let err = || AlgebraError::Parse(s.to_string());
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err());
    }
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut negative = false;
    for ch in compact.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if (ch == '+' || ch == '-') && depth == 0 && !cur.ends_with('^') {
            if !cur.is_empty() {
                pieces.push((negative, std::mem::take(&mut cur)));
            } else if ch == '+' || !pieces.is_empty() {
                return Err(err());
            }
            negative = ch == '-';
            continue;
        }
        cur.push(ch);
    }
    if depth != 0 || cur.is_empty() {
        return Err(err());
    }
    pieces.push((negative, cur));

    let mut out = Vec::new();
    for (neg, piece) in pieces {
        let (coeff_str, x_part) = match piece.find('x') {
            Some(i) => (&piece[..i], Some(&piece[i + 1..])),
            None => (&piece[..], None),
        };
        let coeff_str = coeff_str.strip_suffix('*').unwrap_or(coeff_str);
        let coeff: BigInt = if coeff_str.is_empty() {
            if x_part.is_none() {
                return Err(err());
            }
            BigInt::one()
        } else {
            coeff_str.parse().map_err(|_| err())?
        };
        let exp = match x_part {
            None => BigRational::zero(),
            Some("") => BigRational::one(),
            Some(rest) => {
                let e = rest.strip_prefix('^').ok_or_else(err)?;
                let e = e
                    .strip_prefix('(')
                    .and_then(|e| e.strip_suffix(')'))
                    .unwrap_or(e);
                parse_rational(e).ok_or_else(err)?
            }
        };
        out.push((exp, if neg { -coeff } else { coeff }));
    }
    Ok(out)
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (BigInt, BigInt) = (a.parse().ok()?, b.parse().ok()?);
            (!b.is_zero()).then(|| BigRational::new(a, b))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl FromStr for AlgebraElem<BigRational> {
    type Err = AlgebraError;
    /// `"<poly> mod <p>"`.
    fn from_str(s: &str) -> Result<Self, AlgebraError> {
        let (poly, p) = s
            .rsplit_once(" mod ")
            .ok_or_else(|| AlgebraError::Parse(s.to_string()))?;
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| AlgebraError::Parse(s.to_string()))?;
        AlgebraElem::parse(poly, p)
    }
}

#[derive(Serialize, Deserialize)]
struct ElemRepr {
    p: u64,
    f: String,
}

impl Serialize for AlgebraElem<BigRational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ElemRepr {
            p: self.p,
            f: self.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraElem<BigRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ElemRepr::deserialize(d)?;
        AlgebraElem::parse(&r.f, r.p).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::puiseux::Beta;

    fn el(s: &str, p: u64) -> AlgebraElem {
        AlgebraElem::parse(s, p).unwrap()
    }

    #[test]
    fn ring_examples() {
        let f = el("1 + x", 2);
        assert_eq!(f.mul(&f).unwrap(), el("1 + x^2", 2));
        assert_eq!(f.mul(&AlgebraElem::one(2).unwrap()).unwrap(), f);
        let h = el("x^(1/2)", 3);
        assert_eq!(h.mul(&h).unwrap(), el("x", 3));
        assert!(f.add(&el("1", 3)).is_err());
    }

    #[test]
    fn canonical_form_and_printing() {
        let f = el("x^3 + 2 + 4*x^3 - x^(1/2)", 5);
        assert_eq!(f.to_string(), "2 + 4*x^(1/2)");
        assert_eq!(f.deg(), Some(&rat(1, 2)));
        assert_eq!(f.ord(), Some(&rat(0, 1)));
        assert_eq!(el("2*x^(-3/4) + x", 3).to_string(), "2*x^(-3/4) + x");
        assert_eq!(el(&f.to_string(), 5), f);
        assert!(el("x + 1", 2).add(&el("x + 1", 2)).unwrap().is_zero());
        assert_eq!(
            AlgebraElem::<BigRational>::zero(7).unwrap().to_string(),
            "0"
        );
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "x^", "x^(1/2", "1 ++ x", "y", "x^(1/0)", "+x"] {
            assert!(AlgebraElem::parse(bad, 2).is_err(), "{bad}");
        }
        assert!(AlgebraElem::parse("x", 4).is_err());
        assert_eq!(el("-x", 3).to_string(), "2*x");
    }

    #[test]
    fn serde_roundtrip() {
        let f = el("1 + 2*x^(1/3)", 3);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"p":3,"f":"1 + 2*x^(1/3)"}"#);
        assert_eq!(serde_json::from_str::<AlgebraElem>(&s).unwrap(), f);
        let g: AlgebraElem = "x + 1 mod 2".parse().unwrap();
        assert_eq!(g.modulus(), 2);
    }

    #[test]
    fn beta_exponents() {
        let b = Beta::default();
        let e = |k, q| BetaElem::new(k, q, b.clone());
        let f = AlgebraElem::from_terms(2, [(e(0, rat(0, 1)), 1), (e(1, rat(-1, 2)), 1)]).unwrap();
        let sq = f.mul(&f).unwrap();
        assert_eq!(sq.terms().len(), 2);
        assert_eq!(sq.deg(), Some(&e(2, rat(-1, 1))));
        assert_eq!(f.pow(2), sq);
    }

    #[test]
    fn prime_field() {
        let a = PrimeFieldElem::new(-1, 7).unwrap();
        assert_eq!(a.value(), 6);
        assert_eq!(a.mul(a.inv().unwrap()).value(), 1);
        assert!(PrimeFieldElem::new(1, 9).is_err());
    }
}
