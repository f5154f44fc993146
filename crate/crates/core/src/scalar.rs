//! The coefficient ring `Q[P]/(P^2 - 1)`.
//!
//! A [`SuperScalar`] `a + P*b` stores `a` as the body and `b` as the soul.
//! Multiplicities written in the `m - P*n` convention convert with a sign flip
//! on the soul, see [`SuperScalar::from_minus_pair`].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number used throughout the engine.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integral [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// An element `body + P*soul` of `Q[P]` with `P^2 = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SuperScalar {
    pub body: Rational,
    pub soul: Rational,
}

impl SuperScalar {
    pub fn new(body: Rational, soul: Rational) -> Self {
        Self { body, soul }
    }

    pub fn from_ints(body: i64, soul: i64) -> Self {
        Self::new(rat(body), rat(soul))
    }

    pub fn from_rational(body: Rational) -> Self {
        Self::new(body, Rational::zero())
    }

    /// The parity element `P`.
    pub fn pi() -> Self {
        Self::from_ints(0, 1)
    }

    /// Builds `m - P*n`, the convention used for supercycle multiplicities.
    pub fn from_minus_pair(m: Rational, n: Rational) -> Self {
        Self::new(m, -n)
    }

    /// The idempotent `(1 + P)/2`.
    pub fn e_plus() -> Self {
        Self::new(frac(1, 2), frac(1, 2))
    }

    /// The idempotent `(1 - P)/2`.
    pub fn e_minus() -> Self {
        Self::new(frac(1, 2), frac(-1, 2))
    }

    /// `a - P*b`; the ring involution swapping the two eigenlines of `P`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.body.clone(), -self.soul.clone())
    }

    /// `a^2 - b^2`, so that `x * conjugate(x) = norm(x)`.
    pub fn norm(&self) -> Rational {
        &self.body * &self.body - &self.soul * &self.soul
    }

    pub fn is_invertible(&self) -> bool {
        !self.norm().is_zero()
    }

    /// `(a - P*b) / (a^2 - b^2)`.
    pub fn invert(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::NotInvertible(self.to_string()));
        }
        Ok(Self::new(&self.body / &n, -(&self.soul / &n)))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(&self.body * k, &self.soul * k)
    }

    /// True when both components are integers, i.e. the value lies in `Z[P]`.
    pub fn is_integral(&self) -> bool {
        self.body.is_integer() && self.soul.is_integer()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Zero for SuperScalar {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.body.is_zero() && self.soul.is_zero()
    }
}

impl One for SuperScalar {
    fn one() -> Self {
        Self::from_ints(1, 0)
    }
}

impl From<Rational> for SuperScalar {
    fn from(body: Rational) -> Self {
        Self::from_rational(body)
    }
}

impl From<i64> for SuperScalar {
    fn from(body: i64) -> Self {
        Self::from_ints(body, 0)
    }
}

impl<'a> Add<&'a SuperScalar> for &'a SuperScalar {
    type Output = SuperScalar;
    fn add(self, rhs: &SuperScalar) -> SuperScalar {
        SuperScalar::new(&self.body + &rhs.body, &self.soul + &rhs.soul)
    }
}

impl<'a> Sub<&'a SuperScalar> for &'a SuperScalar {
    type Output = SuperScalar;
    fn sub(self, rhs: &SuperScalar) -> SuperScalar {
        SuperScalar::new(&self.body - &rhs.body, &self.soul - &rhs.soul)
    }
}

impl<'a> Mul<&'a SuperScalar> for &'a SuperScalar {
    type Output = SuperScalar;
    // (a + Pb)(a' + Pb') = (aa' + bb') + P(ab' + a'b)
    fn mul(self, rhs: &SuperScalar) -> SuperScalar {
        SuperScalar::new(
            &self.body * &rhs.body + &self.soul * &rhs.soul,
            &self.body * &rhs.soul + &rhs.body * &self.soul,
        )
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<SuperScalar> for SuperScalar {
            type Output = SuperScalar;
            fn $m(self, rhs: SuperScalar) -> SuperScalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a SuperScalar> for SuperScalar {
            type Output = SuperScalar;
            fn $m(self, rhs: &SuperScalar) -> SuperScalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<SuperScalar> for &'a SuperScalar {
            type Output = SuperScalar;
            fn $m(self, rhs: SuperScalar) -> SuperScalar { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl AddAssign<&SuperScalar> for SuperScalar {
    fn add_assign(&mut self, rhs: &SuperScalar) {
        self.body += &rhs.body;
        self.soul += &rhs.soul;
    }
}

impl SubAssign<&SuperScalar> for SuperScalar {
    fn sub_assign(&mut self, rhs: &SuperScalar) {
        self.body -= &rhs.body;
        self.soul -= &rhs.soul;
    }
}

impl MulAssign<&SuperScalar> for SuperScalar {
    fn mul_assign(&mut self, rhs: &SuperScalar) {
        *self = &*self * rhs;
    }
}

impl Neg for SuperScalar {
    type Output = SuperScalar;
    fn neg(self) -> SuperScalar {
        SuperScalar::new(-self.body, -self.soul)
    }
}

impl Neg for &SuperScalar {
    type Output = SuperScalar;
    fn neg(self) -> SuperScalar {
        SuperScalar::new(-&self.body, -&self.soul)
    }
}

/// Renders as `A + B*P`, parenthesising a fractional soul: `1/2 - (3/4)*P`.
impl fmt::Display for SuperScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.soul.is_negative() { '-' } else { '+' };
        let mag = self.soul.abs();
        if mag.is_integer() {
            write!(f, "{} {} {}*P", self.body, sign, mag)
        } else {
            write!(f, "{} {} ({})*P", self.body, sign, mag)
        }
    }
}

impl FromStr for SuperScalar {
    type Err = Error;

    /// Accepts sums of terms such as `4 - 2*P`, `1/2 + (3/4)*P`, `-P`, `7`.
    fn from_str(s: &str) -> Result<Self> {
        let text: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let bad = |why: &str| Error::Parse(format!("{why} in {s:?}"));
        let mut out = SuperScalar::zero();
        let mut i = 0;
        while i < text.len() {
            let mut negative = false;
            if text[i] == '+' || text[i] == '-' {
                negative = text[i] == '-';
                i += 1;
            } else if i > 0 {
                return Err(bad("expected '+' or '-'"));
            }
            let coeff = if i < text.len() && text[i] == '(' {
                let close = text[i..]
                    .iter()
                    .position(|&c| c == ')')
                    .ok_or_else(|| bad("unbalanced '('"))?;
                let inner: String = text[i + 1..i + close].iter().collect();
                i += close + 1;
                Some(parse_rational(&inner)?)
            } else {
                let start = i;
                while i < text.len() && (text[i].is_ascii_digit() || text[i] == '/') {
                    i += 1;
                }
                if start == i {
                    None
                } else {
                    Some(parse_rational(&text[start..i].iter().collect::<String>())?)
                }
            };
            let is_pi = if i < text.len() && text[i] == '*' {
                if text.get(i + 1) != Some(&'P') {
                    return Err(bad("expected 'P' after '*'"));
                }
                i += 2;
                true
            } else if coeff.is_none() && text.get(i) == Some(&'P') {
                i += 1;
                true
            } else {
                false
            };
            let mut c = match coeff {
                Some(c) => c,
                None if is_pi => Rational::one(),
                None => return Err(bad("missing term")),
            };
            if negative {
                c = -c;
            }
            if is_pi {
                out.soul += c;
            } else {
                out.body += c;
            }
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarJson {
    body: RationalJson,
    soul: RationalJson,
}

/// A rational on the wire: `"p/q"` strings, with bare integers accepted on input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalJson(pub Rational);

impl Serialize for RationalJson {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for RationalJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Str(String),
            Int(i64),
        }
        match Repr::deserialize(d)? {
            Repr::Str(s) => parse_rational(&s)
                .map(RationalJson)
                .map_err(serde::de::Error::custom),
            Repr::Int(n) => Ok(RationalJson(rat(n))),
        }
    }
}

impl Serialize for SuperScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarJson {
            body: RationalJson(self.body.clone()),
            soul: RationalJson(self.soul.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SuperScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Json(ScalarJson),
            Text(String),
            Int(i64),
        }
        match Repr::deserialize(d)? {
            Repr::Json(j) => Ok(SuperScalar::new(j.body.0, j.soul.0)),
            Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
            Repr::Int(n) => Ok(SuperScalar::from_ints(n, 0)),
        }
    }
}

/// Serde adapter for plain [`Rational`] fields (`#[serde(with = "...")]`).
pub mod rational_serde {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalJson(r.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        RationalJson::deserialize(d).map(|r| r.0)
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod rational_vec_serde {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &[Rational],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| RationalJson(r.clone())))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<RationalJson>::deserialize(d).map(|v| v.into_iter().map(|r| r.0).collect())
    }
}
