//! Exact arithmetic in `Z[tau]` and `Q[tau]`, where `tau` is the golden ratio.
//!
//! `tau` satisfies `tau^2 = tau + 1`; its Galois conjugate is `sigma = 1 - tau`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element `a + b*tau` of `Z[tau]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GoldenInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl GoldenInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        GoldenInt { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        GoldenInt::default()
    }

    pub fn one() -> Self {
        GoldenInt::new(1, 0)
    }

    pub fn tau() -> Self {
        GoldenInt::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `a + b*tau -> (a + b) - b*tau`.
    pub fn conj(&self) -> Self {
        GoldenInt { a: &self.a + &self.b, b: -&self.b }
    }

    /// Field norm `(a + b tau)(a + b sigma) = a^2 + ab - b^2`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    /// Units of `Z[tau]` are exactly the elements of norm `+-1`.
    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }

    /// Sign of the real value under `tau -> (1 + sqrt 5)/2`.
    pub fn signum(&self) -> Ordering {
        // a + b*tau = (2a + b + b*sqrt5)/2
        let s = BigInt::from(2) * &self.a + &self.b;
        sign_with_sqrt5(&s, &self.b)
    }

    pub fn to_f64(&self) -> f64 {
        let tau = (1.0 + 5f64.sqrt()) / 2.0;
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * tau
    }

    fn content(&self) -> BigInt {
        self.a.gcd(&self.b)
    }
}

/// Sign of `s + t*sqrt(5)` for integers `s`, `t`.
fn sign_with_sqrt5(s: &BigInt, t: &BigInt) -> Ordering {
    let zero = BigInt::zero();
    match (s.cmp(&zero), t.cmp(&zero)) {
        (Ordering::Equal, o) | (o, Ordering::Equal) => o,
        (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less, Ordering::Less) => Ordering::Less,
        (Ordering::Greater, Ordering::Less) => (s * s).cmp(&(BigInt::from(5) * t * t)),
        (Ordering::Less, Ordering::Greater) => (BigInt::from(5) * t * t).cmp(&(s * s)),
    }
}

impl Add for &GoldenInt {
    type Output = GoldenInt;
    fn add(self, rhs: &GoldenInt) -> GoldenInt {
        GoldenInt { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub for &GoldenInt {
    type Output = GoldenInt;
    fn sub(self, rhs: &GoldenInt) -> GoldenInt {
        GoldenInt { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Mul for &GoldenInt {
    type Output = GoldenInt;
    fn mul(self, rhs: &GoldenInt) -> GoldenInt {
        let bd = &self.b * &rhs.b;
        GoldenInt { a: &self.a * &rhs.a + &bd, b: &self.a * &rhs.b + &self.b * &rhs.a + bd }
    }
}

impl Neg for &GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        GoldenInt { a: -&self.a, b: -&self.b }
    }
}

/// Element `(a + b*tau)/den` of `Q[tau]`, kept in canonical form:
/// `den > 0` and `gcd(a, b, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GoldenRatRepr", into = "GoldenRatRepr")]
pub struct GoldenRat {
    num: GoldenInt,
    den: BigInt,
}

impl GoldenRat {
    /// Builds `(a + b*tau)/den`. Panics if `den` is zero; see [`GoldenRat::try_new`].
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Self::try_new(a, b, den).expect("zero denominator")
    }

    pub fn try_new(a: impl Into<BigInt>, b: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(GoldenInt::new(a, b), den))
    }

    fn canonical(num: GoldenInt, den: BigInt) -> Self {
        if num.is_zero() {
            return GoldenRat { num, den: BigInt::one() };
        }
        let mut g = num.content().gcd(&den);
        if den.is_negative() {
            g = -g;
        }
        if g.is_one() {
            return GoldenRat { num, den };
        }
        GoldenRat { num: GoldenInt { a: num.a / &g, b: num.b / &g }, den: den / g }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        GoldenRat { num: GoldenInt::new(n, 0), den: BigInt::one() }
    }

    pub fn from_ratio(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        Self::new(p, 0, q)
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::canonical(GoldenInt::new(r.numer().clone(), 0), r.denom().clone())
    }

    pub fn from_golden_int(x: GoldenInt) -> Self {
        GoldenRat { num: x, den: BigInt::one() }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn tau() -> Self {
        GoldenRat { num: GoldenInt::tau(), den: BigInt::one() }
    }

    pub fn sigma() -> Self {
        GoldenRat { num: GoldenInt::new(1, -1), den: BigInt::one() }
    }

    pub fn a(&self) -> &BigInt {
        &self.num.a
    }

    pub fn b(&self) -> &BigInt {
        &self.num.b
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn numer(&self) -> &GoldenInt {
        &self.num
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.a.is_one() && self.num.b.is_zero()
    }

    /// True when the value lies in `Q`.
    pub fn is_rational(&self) -> bool {
        self.num.b.is_zero()
    }

    /// True when the value lies in `Z[tau]`.
    pub fn is_golden_integer(&self) -> bool {
        self.den.is_one()
    }

    /// True when the value lies in `Z`.
    pub fn is_integer(&self) -> bool {
        self.den.is_one() && self.num.b.is_zero()
    }

    /// Rational and `tau` components as exact rationals.
    pub fn parts(&self) -> (BigRational, BigRational) {
        (BigRational::new(self.num.a.clone(), self.den.clone()), BigRational::new(self.num.b.clone(), self.den.clone()))
    }

    /// The value as a rational, if it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| BigRational::new(self.num.a.clone(), self.den.clone()))
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.num.a.to_i64()
        } else {
            None
        }
    }

    /// Galois conjugation `tau <-> sigma`.
    pub fn conj(&self) -> Self {
        GoldenRat { num: self.num.conj(), den: self.den.clone() }
    }

    pub fn signum(&self) -> Ordering {
        self.num.signum()
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse via `1/x = conj(x)/N(x)`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.num.norm();
        let c = self.num.conj();
        Ok(Self::canonical(GoldenInt { a: c.a * &self.den, b: c.b * &self.den }, n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = GoldenRat::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Splits `x = gamma * (p + q*tau)` with `gamma > 0` rational and
    /// `(p, q)` coprime integers. Zero yields `(0, 0, 0)`.
    pub fn primitive_split(&self) -> (BigRational, BigInt, BigInt) {
        if self.is_zero() {
            return (BigRational::zero(), BigInt::zero(), BigInt::zero());
        }
        let g = self.num.content();
        (BigRational::new(g.clone(), self.den.clone()), &self.num.a / &g, &self.num.b / &g)
    }

    pub fn to_f64(&self) -> f64 {
        // Divide componentwise so large numerators with large denominators stay finite.
        let tau = (1.0 + 5f64.sqrt()) / 2.0;
        let (p, q) = self.parts();
        ratio_to_f64(&p) + ratio_to_f64(&q) * tau
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let shift = r.denom().bits().saturating_sub(60);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// `tau^k` for any integer `k`.
pub fn tau_pow(k: i64) -> GoldenRat {
    GoldenRat::tau().pow(k).expect("tau is invertible")
}

/// Componentwise Galois conjugation.
pub fn galois_conj(x: &GoldenRat) -> GoldenRat {
    x.conj()
}

impl Default for GoldenRat {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for GoldenRat {
    fn from(n: i64) -> Self {
        GoldenRat::from_int(n)
    }
}

impl From<GoldenInt> for GoldenRat {
    fn from(x: GoldenInt) -> Self {
        GoldenRat::from_golden_int(x)
    }
}

impl PartialOrd for GoldenRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenRat {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        // sign(a*den' - a'*den + (b*den' - b'*den) tau)
        let a = &self.num.a * &other.den - &other.num.a * &self.den;
        let b = &self.num.b * &other.den - &other.num.b * &self.den;
        GoldenInt { a, b }.signum()
    }
}

impl Add for &GoldenRat {
    type Output = GoldenRat;
    fn add(self, rhs: &GoldenRat) -> GoldenRat {
        if self.den == rhs.den {
            return GoldenRat::canonical(&self.num + &rhs.num, self.den.clone());
        }
        let a = &self.num.a * &rhs.den + &rhs.num.a * &self.den;
        let b = &self.num.b * &rhs.den + &rhs.num.b * &self.den;
        GoldenRat::canonical(GoldenInt { a, b }, &self.den * &rhs.den)
    }
}

impl Sub for &GoldenRat {
    type Output = GoldenRat;
    fn sub(self, rhs: &GoldenRat) -> GoldenRat {
        self + &(-rhs)
    }
}

impl Mul for &GoldenRat {
    type Output = GoldenRat;
    fn mul(self, rhs: &GoldenRat) -> GoldenRat {
        if self.is_zero() || rhs.is_zero() {
            return GoldenRat::zero();
        }
        GoldenRat::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero, like integer division.
impl Div for &GoldenRat {
    type Output = GoldenRat;
    fn div(self, rhs: &GoldenRat) -> GoldenRat {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &GoldenRat {
    type Output = GoldenRat;
    fn neg(self) -> GoldenRat {
        GoldenRat { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for GoldenRat {
    type Output = GoldenRat;
    fn neg(self) -> GoldenRat {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GoldenRat {
            type Output = GoldenRat;
            fn $m(self, rhs: GoldenRat) -> GoldenRat {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&GoldenRat> for GoldenRat {
            type Output = GoldenRat;
            fn $m(self, rhs: &GoldenRat) -> GoldenRat {
                (&self).$m(rhs)
            }
        }
        impl $tr<GoldenRat> for &GoldenRat {
            type Output = GoldenRat;
            fn $m(self, rhs: GoldenRat) -> GoldenRat {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GoldenRat> for GoldenRat {
    fn add_assign(&mut self, rhs: &GoldenRat) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&GoldenRat> for GoldenRat {
    fn sub_assign(&mut self, rhs: &GoldenRat) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&GoldenRat> for GoldenRat {
    fn mul_assign(&mut self, rhs: &GoldenRat) {
        *self = &*self * rhs;
    }
}

impl Sum for GoldenRat {
    fn sum<I: Iterator<Item = GoldenRat>>(iter: I) -> Self {
        iter.fold(GoldenRat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a GoldenRat> for GoldenRat {
    fn sum<I: Iterator<Item = &'a GoldenRat>>(iter: I) -> Self {
        iter.fold(GoldenRat::zero(), |acc, x| acc + x)
    }
}

impl Product for GoldenRat {
    fn product<I: Iterator<Item = GoldenRat>>(iter: I) -> Self {
        iter.fold(GoldenRat::one(), |acc, x| acc * x)
    }
}

/// Display form `a+b*tau`, with `(...)/den` when the denominator is not 1.
impl fmt::Display for GoldenRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (&self.num.a, &self.num.b);
        let body = if b.is_zero() {
            a.to_string()
        } else {
            let t = if b.is_one() {
                "tau".to_string()
            } else if (-b).is_one() {
                "-tau".to_string()
            } else {
                format!("{b}*tau")
            };
            if a.is_zero() {
                t
            } else if b.is_negative() {
                format!("{a}{t}")
            } else {
                format!("{a}+{t}")
            }
        };
        if self.den.is_one() {
            f.write_str(&body)
        } else if b.is_zero() || a.is_zero() {
            write!(f, "{body}/{}", self.den)
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

impl FromStr for GoldenRat {
    type Err = Error;

    /// Parses arithmetic expressions over integers, `tau` and `sigma`
    /// (`τ`, `σ` and `phi` are accepted too), e.g. `(4/5)*(3-tau)`.
    fn from_str(s: &str) -> Result<Self> {
        parse::parse(s)
    }
}

#[derive(Serialize, Deserialize)]
struct GoldenRatRepr {
    #[serde(with = "bigint_json")]
    a: BigInt,
    #[serde(with = "bigint_json")]
    b: BigInt,
    #[serde(with = "bigint_json")]
    den: BigInt,
}

impl From<GoldenRat> for GoldenRatRepr {
    fn from(x: GoldenRat) -> Self {
        GoldenRatRepr { a: x.num.a, b: x.num.b, den: x.den }
    }
}

impl TryFrom<GoldenRatRepr> for GoldenRat {
    type Error = Error;
    fn try_from(r: GoldenRatRepr) -> Result<Self> {
        GoldenRat::try_new(r.a, r.b, r.den)
    }
}

/// JSON integers when they fit in 64 bits, decimal strings otherwise.
mod bigint_json {
    use std::fmt;

    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match x.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&x.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        d.deserialize_any(BigIntVisitor)
    }

    struct BigIntVisitor;

    impl Visitor<'_> for BigIntVisitor {
        type Value = BigInt;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("an integer or a decimal integer string")
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
            Ok(v.into())
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
            Ok(v.into())
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
            v.trim().parse().map_err(E::custom)
        }
    }
}

mod parse {
    use num_bigint::BigInt;

    use super::GoldenRat;
    use crate::error::{Error, Result};

    #[derive(Debug, Clone, PartialEq)]
    enum Tok {
        Num(BigInt),
        Tau,
        Sigma,
        Op(char),
    }

    pub fn parse(input: &str) -> Result<GoldenRat> {
        let err = |reason: &str| Error::Parse { input: input.to_string(), reason: reason.into() };
        let toks = lex(input).map_err(|r| err(&r))?;
        if toks.is_empty() {
            return Err(err("empty expression"));
        }
        let mut p = Parser { toks, pos: 0 };
        let v = p.expr().map_err(|r| err(&r))?;
        if p.pos != p.toks.len() {
            return Err(err("trailing input"));
        }
        Ok(v)
    }

    fn lex(s: &str) -> std::result::Result<Vec<Tok>, String> {
        let mut out = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Tok::Num(digits.parse().map_err(|e| format!("{e}"))?));
            } else if c.is_alphabetic() {
                let start = i;
                while i < chars.len() && chars[i].is_alphabetic() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                match word.to_lowercase().as_str() {
                    "tau" | "τ" | "phi" | "t" => out.push(Tok::Tau),
                    "sigma" | "σ" | "s" => out.push(Tok::Sigma),
                    other => return Err(format!("unknown symbol `{other}`")),
                }
            } else if "+-*/()".contains(c) {
                out.push(Tok::Op(c));
                i += 1;
            } else if c == '−' {
                out.push(Tok::Op('-'));
                i += 1;
            } else {
                return Err(format!("unexpected character `{c}`"));
            }
        }
        Ok(out)
    }

    struct Parser {
        toks: Vec<Tok>,
        pos: usize,
    }

    impl Parser {
        fn peek(&self) -> Option<&Tok> {
            self.toks.get(self.pos)
        }

        fn eat(&mut self, c: char) -> bool {
            if self.peek() == Some(&Tok::Op(c)) {
                self.pos += 1;
                true
            } else {
                false
            }
        }

        fn expr(&mut self) -> std::result::Result<GoldenRat, String> {
            let mut v = self.term()?;
            loop {
                if self.eat('+') {
                    v = v + self.term()?;
                } else if self.eat('-') {
                    v = v - self.term()?;
                } else {
                    return Ok(v);
                }
            }
        }

        fn term(&mut self) -> std::result::Result<GoldenRat, String> {
            let mut v = self.unary()?;
            loop {
                if self.eat('*') {
                    v = v * self.unary()?;
                } else if self.eat('/') {
                    let d = self.unary()?;
                    v = v.checked_div(&d).map_err(|e| e.to_string())?;
                } else if matches!(self.peek(), Some(Tok::Tau | Tok::Sigma) | Some(Tok::Op('('))) {
                    // implicit multiplication: `2tau`, `(4/5)(3-tau)`
                    v = v * self.unary()?;
                } else {
                    return Ok(v);
                }
            }
        }

        fn unary(&mut self) -> std::result::Result<GoldenRat, String> {
            if self.eat('-') {
                return Ok(-self.unary()?);
            }
            if self.eat('+') {
                return self.unary();
            }
            self.atom()
        }

        fn atom(&mut self) -> std::result::Result<GoldenRat, String> {
            let tok = self.peek().cloned().ok_or("unexpected end of input")?;
            self.pos += 1;
            match tok {
                Tok::Num(n) => Ok(GoldenRat::from_int(n)),
                Tok::Tau => Ok(GoldenRat::tau()),
                Tok::Sigma => Ok(GoldenRat::sigma()),
                Tok::Op('(') => {
                    let v = self.expr()?;
                    if !self.eat(')') {
                        return Err("missing `)`".into());
                    }
                    Ok(v)
                }
                Tok::Op(c) => Err(format!("unexpected `{c}`")),
            }
        }
    }
}
