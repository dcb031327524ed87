//! Exact scalars: rationals extended Q-linearly by named formal symbols.
//!
//! A [`Scalar`] is `r + Σ c_i · t_i` with `r, c_i ∈ Q` and `t_i` formal
//! symbols standing for transcendental weight coordinates. Products of
//! symbols are not representable; every quantity the calculus needs is
//! affine-linear in the inputs.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"n"` into a reduced rational.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|e| format!("bad numerator in `{s}`: {e}"))?;
    let d = BigInt::from_str(d).map_err(|e| format!("bad denominator in `{s}`: {e}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rational::new(n, d))
}

/// Lowest-terms string form, `"n"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Integer classification of a scalar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntegerClass {
    Integer(BigInt),
    RationalNonInteger,
    Symbolic,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar {
    rat: Rational,
    // no zero coefficients
    sym: BTreeMap<String, Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar {
            rat: r,
            sym: BTreeMap::new(),
        }
    }

    /// The formal symbol `name` with coefficient 1.
    pub fn symbol(name: &str) -> Self {
        let mut sym = BTreeMap::new();
        sym.insert(name.to_string(), Rational::one());
        Scalar {
            rat: Rational::zero(),
            sym,
        }
    }

    /// Builds from parts, dropping zero coefficients.
    pub fn from_parts(rat: Rational, sym: impl IntoIterator<Item = (String, Rational)>) -> Self {
        let mut s = Scalar::from_rational(rat);
        for (k, v) in sym {
            s.add_symbol(&k, &v);
        }
        s
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rat
    }

    pub fn symbolic_part(&self) -> &BTreeMap<String, Rational> {
        &self.sym
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.sym.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.sym.is_empty()
    }

    /// The rational value, if there is no symbolic part.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.sym.is_empty().then_some(&self.rat)
    }

    fn add_symbol(&mut self, name: &str, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.sym.entry(name.to_string()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.sym.remove(name);
        }
    }

    /// Multiplication by a rational.
    pub fn scale(&self, k: &Rational) -> Scalar {
        if k.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            rat: &self.rat * k,
            sym: self.sym.iter().map(|(n, c)| (n.clone(), c * k)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Scalar {
        self.scale(&int(k))
    }

    /// Division by a nonzero rational.
    pub fn div_rational(&self, k: &Rational) -> Result<Scalar> {
        if k.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.scale(&k.recip()))
    }

    pub fn classify_integer(&self) -> IntegerClass {
        if !self.sym.is_empty() {
            IntegerClass::Symbolic
        } else if self.rat.is_integer() {
            IntegerClass::Integer(self.rat.to_integer())
        } else {
            IntegerClass::RationalNonInteger
        }
    }

    pub fn is_integer(&self) -> bool {
        matches!(self.classify_integer(), IntegerClass::Integer(_))
    }

    /// `self ∈ Z_{≥k}`. A scalar with a symbolic part is never an integer.
    pub fn is_integer_at_least(&self, k: i64) -> bool {
        match self.classify_integer() {
            IntegerClass::Integer(n) => n >= BigInt::from(k),
            _ => false,
        }
    }

    /// Sign of a rational scalar; `None` if symbolic.
    pub fn rational_sign(&self) -> Option<std::cmp::Ordering> {
        self.as_rational().map(|r| r.cmp(&Rational::zero()))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.rat += &rhs.rat;
        for (k, v) in &rhs.sym {
            self.add_symbol(k, v);
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.rat -= &rhs.rat;
        for (k, v) in &rhs.sym {
            self.add_symbol(k, &-v);
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, rhs: Scalar) -> Scalar {
        self -= &rhs;
        self
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.scale(&-Rational::one())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sym.is_empty() {
            return write!(f, "{}", format_rational(&self.rat));
        }
        let mut first = true;
        for (name, c) in &self.sym {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if a.is_one() {
                write!(f, "{name}")?;
            } else if a.is_integer() {
                write!(f, "{}{name}", a.numer())?;
            } else {
                write!(f, "({}){name}", format_rational(&a))?;
            }
            first = false;
        }
        if !self.rat.is_zero() {
            let sign = if self.rat.is_negative() { "-" } else { "+" };
            write!(f, " {sign} {}", format_rational(&self.rat.abs()))?;
        }
        Ok(())
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let len = if self.sym.is_empty() { 1 } else { 2 };
        let mut map = serializer.serialize_map(Some(len))?;
        map.serialize_entry("rat", &format_rational(&self.rat))?;
        if !self.sym.is_empty() {
            let sym: BTreeMap<&str, String> = self
                .sym
                .iter()
                .map(|(k, v)| (k.as_str(), format_rational(v)))
                .collect();
            map.serialize_entry("sym", &sym)?;
        }
        map.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Int(i64),
    Str(String),
    Obj {
        #[serde(default)]
        rat: Option<String>,
        #[serde(default)]
        sym: BTreeMap<String, String>,
    },
}

impl<'de> Deserialize<'de> for Scalar {
    /// Accepts the canonical object form, a rational string, or a JSON integer.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match RawScalar::deserialize(deserializer)? {
            RawScalar::Int(n) => Ok(Scalar::from_int(n)),
            RawScalar::Str(s) => parse_rational(&s).map(Scalar::from).map_err(de::Error::custom),
            RawScalar::Obj { rat, sym } => {
                let r = match rat {
                    Some(s) => parse_rational(&s).map_err(de::Error::custom)?,
                    None => Rational::zero(),
                };
                let mut parts = Vec::with_capacity(sym.len());
                for (k, v) in sym {
                    parts.push((k, parse_rational(&v).map_err(de::Error::custom)?));
                }
                Ok(Scalar::from_parts(r, parts))
            }
        }
    }
}

/// Serde adapter for a bare rational encoded as `"p/q"`.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(int(n)),
            Raw::Str(s) => parse_rational(&s).map_err(de::Error::custom),
        }
    }
}
